use proptest::prelude::*;

use parcelforge::ground::matroid::full_mask;
use parcelforge::ground::{Instance, Matrix, Matroid, OrientedGraph, Side};
use parcelforge::group_flow::{enumerate_flows, support, Group};
use parcelforge::parcels::{census, Family, Modulus, SetOp, Tier};
use parcelforge::poly::{rank_gen_poly, rank_gen_poly_dc, rank_gen_poly_subsets};

fn graph() -> impl Strategy<Value = OrientedGraph> {
    (1usize..=5).prop_flat_map(|v| {
        prop::collection::vec((0..v, 0..v), 1..=7).prop_map(move |e| OrientedGraph::new(v, e))
    })
}

fn gfp_matrix() -> impl Strategy<Value = Instance> {
    (
        prop::sample::select(vec![2u32, 3, 5]),
        1usize..=3,
        1usize..=6,
    )
        .prop_flat_map(|(p, rows, cols)| {
            prop::collection::vec(prop::collection::vec(0..p as i64, cols), rows).prop_map(
                move |r| Instance::from_gfp_matrix("random", p, Matrix::new(cols, r)).unwrap(),
            )
        })
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Vertex), Just(Side::Cycle)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_a_matroid_rank(g in graph(), s in side(), a in any::<u64>(), b in any::<u64>()) {
        let m = Matroid::from_instance(&Instance::from_graph("g", g, s));
        let full = m.full();
        let (a, b) = (a & full, b & full);
        prop_assert!(m.rank_of(a) <= a.count_ones() as usize);
        prop_assert!(m.rank_of(a & b) <= m.rank_of(a));
        prop_assert!(m.rank_of(a) + m.rank_of(b) >= m.rank_of(a | b) + m.rank_of(a & b));
    }

    #[test]
    fn graph_sides_are_dual(g in graph()) {
        let v = Matroid::from_instance(&Instance::from_graph("g", g.clone(), Side::Vertex));
        let c = Matroid::from_instance(&Instance::from_graph("g", g, Side::Cycle));
        prop_assert_eq!(v.rank() + c.rank(), v.ground_size());
        for mask in 0..=full_mask(v.ground_size()) {
            prop_assert_eq!(c.rank_of(mask), v.dual_rank_of(mask));
        }
        prop_assert_eq!(rank_gen_poly(&c).unwrap(), rank_gen_poly(&v).unwrap().swap());
    }

    #[test]
    fn orthogonal_dual_swaps_rank_polynomial(inst in gfp_matrix()) {
        let m = Matroid::from_instance(&inst);
        let d = Matroid::from_instance(&inst.orthogonal_dual().unwrap());
        prop_assert_eq!(m.rank() + d.rank(), m.ground_size());
        prop_assert_eq!(rank_gen_poly(&d).unwrap(), rank_gen_poly(&m).unwrap().swap());
    }

    #[test]
    fn fundamental_cycles_span_all_cycles(g in graph()) {
        let fund = Instance::from_graph("g", g.clone(), Side::Cycle);
        let all = Instance::from_tu_matrix("all", g.all_cycles_matrix(), true).unwrap();
        let (a, b) = (Matroid::from_instance(&fund), Matroid::from_instance(&all));
        for mask in 0..=full_mask(a.ground_size()) {
            prop_assert_eq!(a.rank_of(mask), b.rank_of(mask));
        }
        for q in [2u32, 3, 4] {
            let fa = enumerate_flows(&fund, &Group::cyclic(q)).unwrap().len();
            let fb = enumerate_flows(&all, &Group::cyclic(q)).unwrap().len();
            prop_assert_eq!(fa, fb);
        }
    }

    #[test]
    fn minimal_flow_supports_are_cocircuits(g in graph(), s in side(), q in 2u32..=4) {
        let inst = Instance::from_graph("g", g, s);
        let supports: std::collections::BTreeSet<u64> = enumerate_flows(&inst, &Group::cyclic(q))
            .unwrap()
            .iter()
            .map(|h| support(h))
            .filter(|&m| m != 0)
            .collect();
        let minimal: Vec<u64> = supports
            .iter()
            .copied()
            .filter(|&a| !supports.iter().any(|&b| b != a && b & a == b))
            .collect();
        let dual = Matroid::from_instance(&inst.orthogonal_dual().unwrap());
        prop_assert_eq!(minimal, dual.circuits().unwrap());
    }

    #[test]
    fn rank_polynomial_three_ways(g in graph(), s in side()) {
        let m = Matroid::from_instance(&Instance::from_graph("g", g, s));
        let a = rank_gen_poly_subsets(&m).unwrap();
        prop_assert_eq!(&a, &rank_gen_poly_dc(&m).unwrap());
        prop_assert_eq!(&a, &rank_gen_poly(&m).unwrap());
    }

    /// Pair censuses of a unimodular instance only see the group order.
    #[test]
    fn cyclic_and_elementary_groups_agree(g in graph(), s in side(), op in prop::sample::select(SetOp::ALL.to_vec())) {
        let inst = Instance::from_graph("g", g, s);
        let z4 = Group::cyclic(4);
        let v4 = Group::gfp(2, 2);
        for fam in [
            Family::hamming(Modulus::Infinite),
            Family::support(1, -1, Modulus::Infinite),
            Family::setop(op, Modulus::Finite(3)),
        ] {
            let a = census(&inst, &z4, &fam, Tier::Factored).unwrap();
            let b = census(&inst, &v4, &fam, Tier::Factored).unwrap();
            prop_assert!(a.same_counts(&b), "{}", fam.label());
        }
    }
}

#[test]
fn gf2_rank_differs_from_rational_rank() {
    // columns (1,1,0), (0,1,1), (1,0,1): dependent mod 2 only
    let rows = vec![vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]];
    let gf2 = Instance::from_gfp_matrix("m", 2, Matrix::new(3, rows.clone())).unwrap();
    let gf3 = Instance::from_gfp_matrix("m", 3, Matrix::new(3, rows)).unwrap();
    assert_eq!(gf2.rank, 2);
    assert_eq!(gf3.rank, 3);
}
