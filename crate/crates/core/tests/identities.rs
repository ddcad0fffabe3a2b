use proptest::prelude::*;

use parcelforge::ground::{Instance, Matrix, OrientedGraph, Side};
use parcelforge::parcels::{SetOp, Tier};
use parcelforge::verify::{find, verify_subject, Params, Subject};
use parcelforge::Error;

fn small_graph() -> impl Strategy<Value = Instance> {
    (
        1usize..=4,
        prop_oneof![Just(Side::Vertex), Just(Side::Cycle)],
    )
        .prop_flat_map(|(v, side)| {
            prop::collection::vec((0..v, 0..v), 1..=5)
                .prop_map(move |e| Instance::from_graph("g", OrientedGraph::new(v, e), side))
        })
}

fn small_gfp() -> impl Strategy<Value = Instance> {
    (prop::sample::select(vec![2u32, 3]), 1usize..=2, 1usize..=5).prop_flat_map(
        |(p, rows, cols)| {
            prop::collection::vec(prop::collection::vec(0..p as i64, cols), rows)
                .prop_map(move |r| Instance::from_gfp_matrix("m", p, Matrix::new(cols, r)).unwrap())
        },
    )
}

fn instance() -> impl Strategy<Value = Instance> {
    prop_oneof![small_graph(), small_gfp()]
}

/// Runs a check; only "does not apply here" outcomes are tolerated.
fn holds(inst: &Instance, id: &str, p: &Params) -> Result<(), TestCaseError> {
    let s = Subject::new(inst.clone()).unwrap();
    match verify_subject(&s, find(id).unwrap(), p) {
        Ok(r) => {
            let bad: Vec<_> = r
                .aux
                .iter()
                .filter(|a| !a.holds)
                .map(|a| a.name.clone())
                .collect();
            prop_assert!(r.equal, "{id} {p}: {} vs {}", r.lhs, r.rhs);
            prop_assert!(bad.is_empty(), "{id} {p}: auxiliary {bad:?}");
            Ok(())
        }
        Err(Error::NotApplicable(_) | Error::Incompatible { .. }) => Ok(()),
        Err(e) => Err(TestCaseError::fail(format!("{id} {p}: {e}"))),
    }
}

fn q_for(inst: &Instance, q: u32) -> u32 {
    match inst.prime() {
        Some(p) => p,
        None => q,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pair_families_hold(inst in instance(), sigma in 2u32..=9, q in 2u32..=5, a in -3i64..=3, b in -3i64..=3) {
        let q = q_for(&inst, q);
        let p = Params::default().sigma(sigma).q(q);
        for id in ["thm3.1", "thm3.3", "thm4.2", "thm4.7", "cor4.8", "prop4.9", "thm7.3"] {
            holds(&inst, id, &p)?;
        }
        for id in ["thm4.16a", "thm4.16b", "thm4.16c", "thm4.16d", "thm4.16e"] {
            holds(&inst, id, &p)?;
        }
        if a.rem_euclid(sigma as i64) != 0 && b.rem_euclid(sigma as i64) != 0 {
            holds(&inst, "thm4.1", &p.clone().alpha_beta(a, b))?;
        }
        if sigma % 2 == 0 {
            holds(&inst, "thm4.13", &p)?;
        }
    }

    #[test]
    fn sign_cases_hold(inst in instance(), q in 2u32..=5, op in prop::sample::select(SetOp::ALL.to_vec())) {
        let q = q_for(&inst, q);
        let p = Params::default().q(q);
        for id in ["cor3.2", "cor3.4", "cor3.5", "cor4.3", "cor4.10", "cor4.11", "cor4.12", "thm7.1", "cor7.2", "lemma2.1", "lemma2.2", "eq1"] {
            holds(&inst, id, &p)?;
        }
        holds(&inst, "cor4.17", &p.op(op))?;
    }

    #[test]
    fn brute_force_confirms_small_cells(inst in small_graph(), sigma in 2u32..=6, q in 2u32..=3) {
        let p = Params::default().sigma(sigma).q(q).tier(Tier::BruteForce);
        for id in ["thm3.1", "thm4.2", "thm4.16b"] {
            holds(&inst, id, &p)?;
        }
    }

    #[test]
    fn binary_and_ternary_specials(inst in instance(), sigma in 3u32..=8) {
        for id in ["cor4.15", "cor5.3", "cor5.4", "cor5.5", "rem6.p2", "lemma1.4"] {
            holds(&inst, id, &Params::default())?;
        }
        holds(&inst, "cor4.4", &Params::default().sigma(sigma))?;
        holds(&inst, "thm5.2", &Params::default().sigma(sigma))?;
        holds(&inst, "thm5.6", &Params::default().m(2))?;
        for id in ["cor3.6", "cor4.6", "cor4.18", "cor6.2"] {
            holds(&inst, id, &Params::default())?;
        }
    }

    #[test]
    fn triples_hold(inst in small_graph(), sigma in 1u32..=6, q in 2u32..=4) {
        holds(&inst, "thm5.1", &Params::default().sigma(sigma).q(q))?;
    }

    #[test]
    fn each_residue_alone(inst in small_graph(), k in 0usize..4) {
        // ρ given explicitly runs just that embedding
        let rho = [1i64, 5, 7, 11][k];
        holds(&inst, "thm4.7", &Params::default().sigma(12).q(3).rho(rho))?;
    }
}

#[test]
fn rho_must_be_coprime() {
    let inst = Instance::from_graph(
        "t",
        OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]),
        Side::Cycle,
    );
    let s = Subject::new(inst).unwrap();
    let r = verify_subject(
        &s,
        find("thm3.1").unwrap(),
        &Params::default().sigma(6).q(2).rho(2),
    );
    assert!(matches!(r, Err(Error::Params(_))));
}
