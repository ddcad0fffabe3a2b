//! Finite abelian coefficient groups and flows over them.
//!
//! A group is a product of cyclic coordinates `Z_{m_1} × … × Z_{m_k}`;
//! elements are encoded as a single `u32` index in big-endian mixed radix,
//! which also fixes the total order used for canonical output.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::CycElem;
use crate::error::{Error, Result};
use crate::ground::graph::OrientedGraph;
use crate::ground::instance::{Instance, Representation};
use crate::ground::linalg::{self, is_prime, Matrix, Scalars};
use crate::ground::matroid::{full_mask, mask_elements, Mask, Matroid};
use crate::poly::char_poly_subsets;

/// Default cap on coefficient tuples imaged by one enumeration.
pub const DEFAULT_BUDGET: u128 = 1 << 24;
/// Largest group order handled.
pub const ORDER_MAX: u64 = 1 << 20;

/// Enumeration budget, overridable with `PARCELFORGE_BUDGET`.
pub fn budget() -> u128 {
    std::env::var("PARCELFORGE_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

pub fn check_budget(what: impl fmt::Display, needed: Option<u128>) -> Result<()> {
    let b = budget();
    match needed {
        Some(n) if n <= b => Ok(()),
        Some(n) => Err(Error::BudgetExceeded {
            needed: format!("{n} {what}"),
            budget: b,
        }),
        None => Err(Error::BudgetExceeded {
            needed: format!("more than 2^128 {what}"),
            budget: b,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    Gfp { p: u32, d: u32 },
    Product(Box<GroupSpec>, u32),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(q) => write!(f, "cyclic:{q}"),
            GroupSpec::Gfp { p, d } => write!(f, "gfp:{p}:{d}"),
            GroupSpec::Product(b, m) => write!(f, "product:{b}:{m}"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidGroup {
            spec: s.to_string(),
            message: m,
        };
        let num = |t: &str, what: &str| -> Result<u32> {
            t.parse::<u32>()
                .map_err(|_| bad(format!("{what} `{t}` is not a nonnegative integer")))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            ["cyclic", q] => {
                let q = num(q, "order")?;
                if q == 0 {
                    return Err(bad("order must be at least 1".into()));
                }
                GroupSpec::Cyclic(q)
            }
            ["gfp", p, d] => {
                let (p, d) = (num(p, "p")?, num(d, "d")?);
                if !is_prime(p as u64) {
                    return Err(bad(format!("{p} is not prime")));
                }
                if d == 0 {
                    return Err(bad("dimension must be at least 1".into()));
                }
                GroupSpec::Gfp { p, d }
            }
            ["product", ..] if parts.len() >= 3 => {
                let (base, m) = s["product:".len()..].rsplit_once(':').expect("has a colon");
                let m = num(m, "power")?;
                if m == 0 {
                    return Err(bad("power must be at least 1".into()));
                }
                GroupSpec::Product(Box::new(base.parse()?), m)
            }
            _ => return Err(bad("expected cyclic:q, gfp:p:d or product:<base>:m".into())),
        };
        Group::new(spec.clone())?;
        Ok(spec)
    }
}

impl GroupSpec {
    fn moduli(&self) -> Vec<u32> {
        match self {
            GroupSpec::Cyclic(q) => vec![*q],
            GroupSpec::Gfp { p, d } => vec![*p; *d as usize],
            GroupSpec::Product(b, m) => {
                let base = b.moduli();
                (0..*m).flat_map(|_| base.iter().copied()).collect()
            }
        }
    }

    /// The prime `p` when every coordinate is a GF(p) vector coordinate.
    fn field_prime(&self) -> Option<u32> {
        match self {
            GroupSpec::Cyclic(_) => None,
            GroupSpec::Gfp { p, .. } => Some(*p),
            GroupSpec::Product(b, _) => b.field_prime(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Group {
    spec: GroupSpec,
    moduli: Vec<u32>,
    order: u32,
    add_table: Option<Vec<u32>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Group> {
        let moduli = spec.moduli();
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &m| {
                acc.checked_mul(m as u64).filter(|&v| v <= ORDER_MAX)
            })
            .ok_or_else(|| Error::InvalidGroup {
                spec: spec.to_string(),
                message: format!("order exceeds {ORDER_MAX}"),
            })? as u32;
        let mut g = Group {
            spec,
            moduli,
            order,
            add_table: None,
        };
        if order <= 256 {
            let q = order as usize;
            let mut t = vec![0; q * q];
            for a in 0..order {
                for b in 0..order {
                    t[a as usize * q + b as usize] = g.add_slow(a, b);
                }
            }
            g.add_table = Some(t);
        }
        Ok(g)
    }

    pub fn parse(s: &str) -> Result<Group> {
        Group::new(s.parse()?)
    }

    pub fn cyclic(q: u32) -> Group {
        Group::new(GroupSpec::Cyclic(q)).expect("valid cyclic group")
    }

    pub fn gfp(p: u32, d: u32) -> Group {
        Group::new(GroupSpec::Gfp { p, d }).expect("valid prime-field group")
    }

    /// `A^m`: elements are m-tuples of elements of `self`.
    pub fn power(&self, m: u32) -> Result<Group> {
        Group::new(GroupSpec::Product(Box::new(self.spec.clone()), m))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn coords(&self, a: u32) -> Vec<u32> {
        let mut out = vec![0; self.moduli.len()];
        let mut v = a;
        for (o, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *o = v % m;
            v /= m;
        }
        out
    }

    pub fn from_coords(&self, c: &[u32]) -> u32 {
        c.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &m)| acc * m + x % m)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let s: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        self.from_coords(&s)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add_table {
            Some(t) => t[a as usize * self.order as usize + b as usize],
            None => self.add_slow(a, b),
        }
    }

    /// Integer multiple `c·a`.
    pub fn scalar(&self, c: i64, a: u32) -> u32 {
        let s: Vec<u32> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((c.rem_euclid(m as i64) as u64 * x as u64) % m as u64) as u32)
            .collect();
        self.from_coords(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.scalar(-1, a)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Split an element of `A^m` (this group) into its `m` components,
    /// each an element of the base group of order `base_order`.
    pub fn split(&self, a: u32, m: u32, base_order: u32) -> Vec<u32> {
        let mut out = vec![0; m as usize];
        let mut v = a;
        for o in out.iter_mut().rev() {
            *o = v % base_order;
            v /= base_order;
        }
        out
    }

    pub fn compatible(&self, inst: &Instance) -> Result<()> {
        let ok = match (&inst.representation, self.spec.field_prime()) {
            (Representation::Graph { .. } | Representation::IntTu, _) => true,
            (Representation::Gfp(p), Some(fp)) => *p == fp,
            (Representation::Gfp(_), None) => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Incompatible {
                group: self.spec.to_string(),
                representation: inst.representation.label(),
            })
        }
    }
}

/// Function `E → A`, one element index per ground-set element.
pub type FunctionVector = Vec<u32>;

pub fn support(f: &[u32]) -> Mask {
    f.iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .fold(0, |m, (e, _)| m | (1 << e))
}

pub fn kernel_size(f: &[u32]) -> usize {
    f.iter().filter(|&&v| v == 0).count()
}

/// Generating rows with the same row module: reduced echelon form with
/// unit pivots (over Z for TU matrices, over GF(p) otherwise).
fn generating_rows(inst: &Instance) -> Result<Matrix> {
    Ok(linalg::rref(&inst.matrix, inst.scalars)?.0)
}

/// All flows of `inst` over `group`, in increasing lexicographic order.
pub fn enumerate_flows(inst: &Instance, group: &Group) -> Result<Vec<FunctionVector>> {
    group.compatible(inst)?;
    let gens = generating_rows(inst)?;
    let rows = gens.row_count() as u32;
    check_budget(
        "coefficient tuples",
        (group.order() as u128).checked_pow(rows),
    )?;
    let n = inst.ground_size();
    // flows coordinate by coordinate
    let mut per_coord: Vec<Vec<Vec<u32>>> = Vec::new();
    for &m in group.moduli() {
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut digits = vec![0u32; rows as usize];
        let mut cur = vec![0u32; n];
        let reduced: Vec<Vec<u32>> = gens
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v.rem_euclid(m as i64) as u32).collect())
            .collect();
        loop {
            seen.insert(cur.clone());
            // odometer step: adding row i once per digit change keeps
            // `cur` equal to Σ digits_i · row_i
            let mut i = 0;
            loop {
                if i == rows as usize {
                    break;
                }
                for (c, &r) in cur.iter_mut().zip(&reduced[i]) {
                    *c = (*c + r) % m;
                }
                digits[i] += 1;
                if digits[i] < m {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == rows as usize {
                break;
            }
        }
        per_coord.push(seen.into_iter().collect());
    }
    let mut flows: Vec<Vec<u32>> = vec![vec![0; n]];
    for (ci, set) in per_coord.iter().enumerate() {
        let m = group.moduli()[ci];
        let mut next = Vec::with_capacity(flows.len() * set.len());
        for f in &flows {
            for s in set {
                next.push(f.iter().zip(s).map(|(&a, &b)| a * m + b).collect());
            }
        }
        flows = next;
    }
    flows.sort();
    let expected = (group.order() as u128).checked_pow(inst.rank as u32);
    if Some(flows.len() as u128) != expected {
        return Err(Error::Internal(format!(
            "found {} flows, expected {}^{}",
            flows.len(),
            group.order(),
            inst.rank
        )));
    }
    Ok(flows)
}

/// Flow-membership test by the orthogonal dual: `f` is a flow iff every
/// row of the dual annihilates it, coordinate by coordinate.
#[derive(Debug, Clone)]
pub struct FlowTest {
    dual: Matrix,
    group: Group,
}

impl FlowTest {
    pub fn new(inst: &Instance, group: &Group) -> Result<FlowTest> {
        group.compatible(inst)?;
        Ok(FlowTest {
            dual: inst.orthogonal_dual()?.matrix,
            group: group.clone(),
        })
    }

    pub fn is_flow(&self, f: &[u32]) -> bool {
        let coords: Vec<Vec<u32>> = f.iter().map(|&a| self.group.coords(a)).collect();
        for (ci, &m) in self.group.moduli().iter().enumerate() {
            for row in &self.dual.rows {
                let s = row
                    .iter()
                    .zip(&coords)
                    .map(|(&c, x)| c.rem_euclid(m as i64) * x[ci] as i64)
                    .sum::<i64>();
                if s.rem_euclid(m as i64) != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Number of flows by kernel size.
pub fn kernel_census(inst: &Instance, group: &Group) -> Result<BTreeMap<usize, u128>> {
    let mut out = BTreeMap::new();
    for f in enumerate_flows(inst, group)? {
        *out.entry(kernel_size(&f)).or_default() += 1;
    }
    Ok(out)
}

/// `Σ_h Π_e w(h(e))` over all flows `h`.
pub fn weighted_profile_census(
    inst: &Instance,
    group: &Group,
    sigma: u32,
    w: impl Fn(u32) -> CycElem,
) -> Result<CycElem> {
    let weights: Vec<CycElem> = (0..group.order()).map(&w).collect();
    let mut total = CycElem::zero(sigma);
    for f in enumerate_flows(inst, group)? {
        // multiply by value multiplicities: Π_a w(a)^{count(a)}
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for &a in &f {
            *counts.entry(a).or_default() += 1;
        }
        let term = counts.iter().fold(CycElem::one(sigma), |acc, (&a, &k)| {
            &acc * &weights[a as usize].pow(k)
        });
        total = &total + &term;
    }
    Ok(total)
}

/// Whether the kernel of every flow is a flat.
pub fn closure_of_kernel_property(inst: &Instance, group: &Group) -> Result<bool> {
    let m = Matroid::from_instance(inst);
    let full = full_mask(inst.ground_size());
    Ok(enumerate_flows(inst, group)?
        .iter()
        .all(|f| m.is_flat(full & !support(f))))
}

/// The three equivalent descriptions of a GF(2)-affine subset, each
/// computed on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineCriteria {
    /// Some linear functional is 1 on every column of `B`.
    pub functional: bool,
    /// Every circuit inside `B` has even size.
    pub even_circuits: bool,
    /// `χ(M|B; 2) = 1`.
    pub char_value_one: bool,
}

pub fn binary_affine_criteria(inst: &Instance, b: Mask) -> Result<AffineCriteria> {
    if inst.prime() != Some(2) {
        return Err(Error::NotApplicable(
            "affine test needs a GF(2) matrix".into(),
        ));
    }
    let cols: Vec<usize> = mask_elements(b).collect();
    // ℓ·c_e = 1 solvable iff appending the all-ones row keeps the rank
    let sub = inst.matrix.select_columns(&cols);
    let mut aug = sub.clone();
    aug.rows.push(vec![1; cols.len()]);
    let functional = linalg::rank(&aug, Scalars::Prime(2)) == linalg::rank(&sub, Scalars::Prime(2));

    let restricted = Matroid::from_columns(
        2,
        cols.iter()
            .map(|&j| {
                inst.matrix
                    .column(j)
                    .into_iter()
                    .map(|v| v as u64)
                    .collect()
            })
            .collect(),
    );
    let even_circuits = restricted
        .circuits()?
        .iter()
        .all(|c| c.count_ones() % 2 == 0);
    let chi = char_poly_subsets(&restricted)?
        .eval_int(2)
        .expect("polynomial");
    Ok(AffineCriteria {
        functional,
        even_circuits,
        char_value_one: chi == BigInt::one(),
    })
}

/// Common verdict of the three criteria; disagreement is an internal error.
pub fn is_binary_affine(inst: &Instance, b: Mask) -> Result<bool> {
    let c = binary_affine_criteria(inst, b)?;
    if c.functional == c.even_circuits && c.even_circuits == c.char_value_one {
        Ok(c.functional)
    } else {
        Err(Error::Internal(format!("affine criteria disagree: {c:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportClass {
    /// Every vertex of the support subgraph has even degree.
    pub even_subgraph: bool,
    /// The support is a disjoint union of minimal cutsets.
    pub cut_union: bool,
}

/// Classify the support of a binary function on the edges of `g`.
pub fn graph_support_property(g: &OrientedGraph, h: &[u32]) -> SupportClass {
    let s = support(h);
    SupportClass {
        even_subgraph: g.is_even_subgraph(s),
        cut_union: g.is_cut_union(s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::instance::Side;
    use proptest::prelude::*;

    fn tri(side: Side) -> Instance {
        Instance::from_graph(
            "tri",
            OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]),
            side,
        )
    }

    fn fano() -> Instance {
        Instance::from_gfp_matrix(
            "fano",
            2,
            Matrix::new(
                7,
                vec![
                    vec![1, 0, 0, 1, 1, 0, 1],
                    vec![0, 1, 0, 1, 0, 1, 1],
                    vec![0, 0, 1, 0, 1, 1, 1],
                ],
            ),
        )
        .unwrap()
    }

    #[test]
    fn parse_groups() {
        assert_eq!(Group::parse("cyclic:6").unwrap().order(), 6);
        assert_eq!(Group::parse("gfp:3:2").unwrap().order(), 9);
        let p = Group::parse("product:gfp:2:1:3").unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.spec().to_string(), "product:gfp:2:1:3");
        assert_eq!(Group::parse("product:cyclic:3:2").unwrap().order(), 9);
        for bad in [
            "cyclic:0",
            "gfp:4:1",
            "gfp:3:0",
            "ring:3",
            "cyclic:x",
            "product:cyclic:2:0",
        ] {
            assert!(
                matches!(Group::parse(bad), Err(Error::InvalidGroup { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn arithmetic() {
        let g = Group::parse("gfp:3:2").unwrap();
        let a = g.from_coords(&[1, 2]);
        let b = g.from_coords(&[2, 2]);
        assert_eq!(g.coords(g.add(a, b)), vec![0, 1]);
        assert_eq!(g.coords(g.neg(a)), vec![2, 1]);
        assert_eq!(g.sub(a, a), 0);
        let z4 = Group::cyclic(4);
        assert_eq!(z4.scalar(-1, 1), 3);
        let pw = z4.power(2).unwrap();
        assert_eq!(pw.split(pw.from_coords(&[3, 1]), 2, 4), vec![3, 1]);
    }

    #[test]
    fn compatibility() {
        let f = fano();
        assert!(Group::cyclic(2).compatible(&f).is_err());
        assert!(Group::gfp(3, 1).compatible(&f).is_err());
        assert!(Group::gfp(2, 2).compatible(&f).is_ok());
        assert!(Group::cyclic(6).compatible(&tri(Side::Cycle)).is_ok());
    }

    #[test]
    fn triangle_flows() {
        let t = tri(Side::Cycle);
        let f2 = enumerate_flows(&t, &Group::cyclic(2)).unwrap();
        assert_eq!(f2, vec![vec![0, 0, 0], vec![1, 1, 1]]);
        let f3 = enumerate_flows(&t, &Group::cyclic(3)).unwrap();
        assert_eq!(f3.len(), 3);
        assert!(f3.iter().all(|f| f.iter().all(|&v| v == f[0])));
        let census = kernel_census(&t, &Group::cyclic(3)).unwrap();
        assert_eq!(census, BTreeMap::from([(0, 2), (3, 1)]));
        let one = kernel_census(&t, &Group::cyclic(1)).unwrap();
        assert_eq!(one, BTreeMap::from([(3, 1)]));
    }

    #[test]
    fn tree_has_only_zero_flow() {
        let tree = Instance::from_graph(
            "tree",
            OrientedGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]),
            Side::Cycle,
        );
        for g in ["cyclic:5", "gfp:2:3", "product:cyclic:3:2"] {
            assert_eq!(
                enumerate_flows(&tree, &Group::parse(g).unwrap()).unwrap(),
                vec![vec![0; 3]]
            );
        }
        assert!(closure_of_kernel_property(&tree, &Group::cyclic(3)).unwrap());
    }

    #[test]
    fn weighted_census() {
        let t = tri(Side::Cycle);
        let z2 = Group::cyclic(2);
        let v = weighted_profile_census(&t, &z2, 2, |a| CycElem::omega_pow(2, a as i64)).unwrap();
        assert!(v.is_zero());
        let ones = weighted_profile_census(&t, &Group::cyclic(5), 1, |_| CycElem::one(1)).unwrap();
        assert_eq!(ones, CycElem::from_int(1, 5));
    }

    #[test]
    fn fano_flows_and_kernels() {
        let f = fano();
        let flows = enumerate_flows(&f, &Group::gfp(2, 1)).unwrap();
        assert_eq!(flows.len(), 8);
        assert!(closure_of_kernel_property(&f, &Group::gfp(2, 1)).unwrap());
        assert_eq!(enumerate_flows(&f, &Group::gfp(2, 2)).unwrap().len(), 64);
    }

    #[test]
    fn affine_subsets() {
        let f = fano();
        assert!(is_binary_affine(&f, 0).unwrap());
        // columns 0,1,3 form a circuit of size 3
        assert!(!is_binary_affine(&f, 0b1011).unwrap());
        let n = f.matrix.cols;
        let m = Matroid::from_instance(&f);
        let c4 = m
            .circuits()
            .unwrap()
            .into_iter()
            .find(|c| c.count_ones() == 4)
            .unwrap();
        assert!(is_binary_affine(&f, c4).unwrap());
        for b in 0..(1u64 << n) {
            is_binary_affine(&f, b).unwrap();
        }
        assert!(is_binary_affine(&tri(Side::Cycle), 1).is_err());
    }

    #[test]
    fn support_classes() {
        let t = OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        let c = graph_support_property(&t, &[0, 0, 0]);
        assert!(c.even_subgraph && c.cut_union);
        let c = graph_support_property(&t, &[1, 1, 1]);
        assert!(c.even_subgraph && !c.cut_union);
        let path = OrientedGraph::new(3, vec![(0, 1), (1, 2)]);
        let c = graph_support_property(&path, &[1, 0]);
        assert!(!c.even_subgraph && c.cut_union);
    }

    #[test]
    fn dual_annihilator_agrees_with_enumeration() {
        let k4 = OrientedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        for side in [Side::Vertex, Side::Cycle] {
            let inst = Instance::from_graph("k4", k4.clone(), side);
            for g in ["cyclic:2", "cyclic:3", "cyclic:4", "gfp:2:2"] {
                let g = Group::parse(g).unwrap();
                let flows: HashSet<Vec<u32>> =
                    enumerate_flows(&inst, &g).unwrap().into_iter().collect();
                let test = FlowTest::new(&inst, &g).unwrap();
                let q = g.order();
                let mut f = vec![0u32; 6];
                let mut count = 0;
                loop {
                    assert_eq!(test.is_flow(&f), flows.contains(&f));
                    count += 1;
                    let mut i = 0;
                    while i < 6 {
                        f[i] += 1;
                        if f[i] < q {
                            break;
                        }
                        f[i] = 0;
                        i += 1;
                    }
                    if i == 6 {
                        break;
                    }
                }
                assert_eq!(count, q.pow(6));
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let k4 = OrientedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let inst = Instance::from_graph("k4", k4, Side::Cycle);
        let big = Group::cyclic(1 << 12);
        assert!(matches!(
            enumerate_flows(&inst, &big),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn flows_form_a_group(seed in 0usize..6, q in 2u32..5) {
            let graphs = [
                OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]),
                OrientedGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
                OrientedGraph::new(3, vec![(0, 1), (1, 0), (1, 2), (2, 2)]),
            ];
            let side = if seed % 2 == 0 { Side::Vertex } else { Side::Cycle };
            let inst = Instance::from_graph("g", graphs[seed / 2].clone(), side);
            let g = Group::cyclic(q);
            let flows = enumerate_flows(&inst, &g).unwrap();
            let set: HashSet<_> = flows.iter().cloned().collect();
            prop_assert_eq!(flows.len() as u128, (q as u128).pow(inst.rank as u32));
            for a in &flows {
                let neg: Vec<u32> = a.iter().map(|&x| g.neg(x)).collect();
                prop_assert!(set.contains(&neg));
                for b in &flows {
                    let s: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| g.add(x, y)).collect();
                    prop_assert!(set.contains(&s));
                }
            }
        }
    }
}
