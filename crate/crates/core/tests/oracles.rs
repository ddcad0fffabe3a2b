use std::collections::BTreeMap;

use num_bigint::BigInt;

use parcelforge::cyclotomic::{cyclotomic_poly, CycElem};
use parcelforge::ground::{Instance, Matrix, Matroid, OrientedGraph, Side};
use parcelforge::group_flow::{enumerate_flows, Group};
use parcelforge::parcels::{
    bicycle_dimension, census, prop25_census, quadratic_flow_sum, Family, Modulus, Prop25Table,
    SetOp, Tier,
};
use parcelforge::poly::{char_poly, chromatic_poly, flow_poly, rank_gen_poly, tutte, LaurentPoly};
use parcelforge::verify::{builtin, find, verify_subject, Params, Quantity, Subject};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn poly(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(coeffs)
}

fn triangle(side: Side) -> Instance {
    Instance::from_graph(
        "t",
        OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]),
        side,
    )
}

/// Pairs `(f, f − h)` counted directly: every function against every flow.
fn pair_bins(
    inst: &Instance,
    q: u32,
    stat: impl Fn(u32, u32) -> i64,
    modulus: i64,
) -> BTreeMap<i64, u128> {
    let g = Group::cyclic(q);
    let flows = enumerate_flows(inst, &g).unwrap();
    let n = inst.ground_size() as u32;
    let mut out = BTreeMap::new();
    for code in 0..q.pow(n) {
        let f: Vec<u32> = (0..n).map(|e| code / q.pow(e) % q).collect();
        for h in &flows {
            let k: i64 = f.iter().zip(h).map(|(&a, &b)| stat(a, g.sub(a, b))).sum();
            *out.entry(k.rem_euclid(modulus)).or_insert(0) += 1;
        }
    }
    out
}

#[test]
fn k4_polynomials() {
    let g = OrientedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let m = Matroid::from_instance(&Instance::from_graph("k4", g.clone(), Side::Vertex));
    let t = tutte(&m).unwrap();
    let want = [
        (3, 0, 1),
        (2, 0, 3),
        (1, 0, 2),
        (1, 1, 4),
        (0, 1, 2),
        (0, 2, 3),
        (0, 3, 1),
    ];
    for (x, y, c) in want {
        assert_eq!(t.coeff(x, y), big(c), "x^{x} y^{y}");
    }
    assert_eq!(t.terms().count(), want.len());
    // q(q−1)(q−2)(q−3) and (q−1)(q−2)(q−3)
    assert_eq!(chromatic_poly(&g).unwrap(), poly(&[0, -6, 11, -6, 1]));
    assert_eq!(flow_poly(&g).unwrap(), poly(&[-6, 11, -6, 1]));
}

#[test]
fn fano_characteristic_polynomial() {
    let m = Matroid::from_instance(&builtin("fano").unwrap());
    // (λ−1)(λ−2)(λ−4)
    assert_eq!(char_poly(&m).unwrap(), poly(&[-8, 14, -7, 1]));
}

#[test]
fn triangle_rank_polynomials() {
    let v = rank_gen_poly(&Matroid::from_instance(&triangle(Side::Vertex))).unwrap();
    assert_eq!(v.eval_int(2, 5), big(4 + 6 + 3 + 5));
    let c = rank_gen_poly(&Matroid::from_instance(&triangle(Side::Cycle))).unwrap();
    // λ + 3 + 3x + x²
    assert_eq!(c.eval_int(3, 1), big(10));
    assert_eq!(c.eval_int(-1, -2), big(0));
}

#[test]
fn hamming_census_against_direct_count() {
    let inst = triangle(Side::Cycle);
    for (q, sigma) in [(2u32, 2i64), (3, 3), (4, 5)] {
        let direct = pair_bins(&inst, q, |a, b| i64::from(a != b), sigma);
        let c = census(
            &inst,
            &Group::cyclic(q),
            &Family::hamming(Modulus::Finite(sigma as u32)),
            Tier::Factored,
        )
        .unwrap();
        assert_eq!(c.bins, direct, "q={q}");
    }
    let c = census(
        &inst,
        &Group::cyclic(2),
        &Family::hamming(Modulus::Finite(2)),
        Tier::BruteForce,
    )
    .unwrap();
    assert_eq!(c.bins, BTreeMap::from([(0, 8), (1, 8)]));
}

#[test]
fn setop_census_against_direct_count() {
    let inst = builtin("k23-vertex").unwrap();
    for op in SetOp::ALL {
        let direct = pair_bins(&inst, 2, |a, b| i64::from(op.apply(a != 0, b != 0)), 3);
        let c = census(
            &inst,
            &Group::cyclic(2),
            &Family::setop(op, Modulus::Finite(3)),
            Tier::Factored,
        )
        .unwrap();
        assert_eq!(c.bins, direct, "{op}");
    }
}

#[test]
fn nowhere_zero_pairs_on_triangle() {
    let c = census(
        &triangle(Side::Cycle),
        &Group::cyclic(3),
        &Family::hamming_nonzero(Modulus::Finite(1)),
        Tier::BruteForce,
    )
    .unwrap();
    assert_eq!(c.bins, BTreeMap::from([(0, 10)]));
}

#[test]
fn triple_total() {
    let c = census(
        &triangle(Side::Cycle),
        &Group::cyclic(2),
        &Family::tuple(2, Modulus::Finite(4)),
        Tier::BruteForce,
    )
    .unwrap();
    assert_eq!(c.total(), 32);
}

#[test]
fn parity_parcels_on_triangle() {
    // vertex side of the triangle is U_{2,3}; χ(3) = 2
    let c = prop25_census(
        &triangle(Side::Vertex),
        3,
        Prop25Table::Diagonal,
        Tier::BruteForce,
    )
    .unwrap();
    assert_eq!(c.get(1) as i64 - c.get(-1) as i64, 6);
    // a tree: free matroid, (q−1)^|E|
    let path = Instance::from_graph(
        "p",
        OrientedGraph::new(4, vec![(0, 1), (1, 2), (2, 3)]),
        Side::Vertex,
    );
    let c = prop25_census(&path, 5, Prop25Table::Diagonal, Tier::Factored).unwrap();
    assert_eq!(c.get(1) as i64 - c.get(-1) as i64, 64);
}

#[test]
fn bicycle_examples() {
    let id =
        Instance::from_gfp_matrix("i", 3, Matrix::new(2, vec![vec![1, 0], vec![0, 1]])).unwrap();
    let ones = Instance::from_gfp_matrix("o", 3, Matrix::new(3, vec![vec![1, 1, 1]])).unwrap();
    for (inst, d) in [(id, 0), (ones, 1)] {
        assert_eq!(bicycle_dimension(&inst).unwrap(), d);
        let s = quadratic_flow_sum(&inst).unwrap();
        assert_eq!(&s * &s.conj(), CycElem::from_int(3, 9));
    }
}

#[test]
fn twelfth_cyclotomic_polynomial() {
    assert_eq!(cyclotomic_poly(12), poly(&[1, 0, -1, 0, 1]));
}

#[test]
fn hamming_identity_on_triangle() {
    let s = Subject::new(triangle(Side::Cycle)).unwrap();
    let r = verify_subject(
        &s,
        find("thm3.1").unwrap(),
        &Params::default().sigma(2).q(2).tier(Tier::BruteForce),
    )
    .unwrap();
    assert!(r.passed());
    assert_eq!(r.lhs, Quantity::Cyc(CycElem::from_int(2, 0)));
}

#[test]
fn exceptional_cells_report_constants() {
    let s = Subject::new(builtin("fano").unwrap()).unwrap();
    let r = verify_subject(
        &s,
        find("thm4.2").unwrap(),
        &Params::default().sigma(2).q(4),
    )
    .unwrap();
    assert!(r.passed());
    assert!(r.exceptional.is_some());
    assert_eq!(
        r.lhs,
        Quantity::Cyc(CycElem::from_int(2, BigInt::from(4).pow(7)))
    );
}
