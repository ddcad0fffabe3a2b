//! Parcel censuses: tuples of functions with flow-valued differences,
//! binned by an additive per-edge statistic.
//!
//! Tier 1 enumerates every function tuple and keeps those whose
//! differences pass the dual-annihilator flow test. Tier 2 enumerates flow
//! tuples and multiplies per-edge generating polynomials over the tuples
//! of values associated with each flow value.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cyclotomic::CycElem;
use crate::error::{Error, Result};
use crate::ground::instance::Instance;
use crate::ground::linalg::{self, mod_inverse, Scalars};
use crate::group_flow::{check_budget, enumerate_flows, support, FlowTest, Group};
use crate::poly::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulus {
    Finite(u32),
    /// Keep the raw integer statistic.
    Infinite,
}

impl Modulus {
    pub fn reduce(self, k: i64) -> i64 {
        match self {
            Modulus::Finite(s) => k.rem_euclid(s as i64),
            Modulus::Infinite => k,
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(s) => write!(f, "{s}"),
            Modulus::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetOp {
    Union,
    Intersection,
    SymmetricDifference,
    /// `(E∖A) ∩ (E∖B)`.
    Sheffer,
    /// `(E∖A) ∪ B`.
    Implication,
}

impl SetOp {
    pub const ALL: [SetOp; 5] = [
        SetOp::Union,
        SetOp::Intersection,
        SetOp::SymmetricDifference,
        SetOp::Sheffer,
        SetOp::Implication,
    ];

    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            SetOp::Union => a || b,
            SetOp::Intersection => a && b,
            SetOp::SymmetricDifference => a != b,
            SetOp::Sheffer => !a && !b,
            SetOp::Implication => !a || b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SetOp::Union => "union",
            SetOp::Intersection => "intersection",
            SetOp::SymmetricDifference => "symdiff",
            SetOp::Sheffer => "sheffer",
            SetOp::Implication => "implication",
        }
    }
}

impl fmt::Display for SetOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SetOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<SetOp> {
        SetOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| {
                Error::Params(format!(
                    "unknown set operation `{s}` (union, intersection, symdiff, sheffer, implication)"
                ))
            })
    }
}

/// Weight table for the odd-q characteristic-polynomial parcels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prop25Table {
    /// `γ(0,0)=0`, `γ(a,a)=1` for `a≠0`, otherwise `−1` iff `Rem(a+b,q)` is even.
    Diagonal,
    /// The parity rule applied to every pair other than `(0,0)`, diagonal included.
    ParityOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// `[b₁ ≠ b₂]`.
    Hamming,
    /// `α[b₁≠0] + β[b₂≠0]`.
    Support {
        alpha: i64,
        beta: i64,
    },
    SetOp(SetOp),
    /// `b₁·b₂` in GF(p).
    InnerProduct,
    /// `Σ_j [b_j ≠ 0]`.
    TupleSupport,
    /// Parity count of edges with weight −1; `(0,0)` edges are excluded.
    Prop25(Prop25Table),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub stat: Statistic,
    /// Number of functions in a tuple (`m + 1`).
    pub arity: usize,
    /// Functions take values in the nonzero elements only.
    pub nonzero: bool,
    pub modulus: Modulus,
}

impl Family {
    pub fn hamming(modulus: Modulus) -> Family {
        Family {
            stat: Statistic::Hamming,
            arity: 2,
            nonzero: false,
            modulus,
        }
    }

    pub fn hamming_nonzero(modulus: Modulus) -> Family {
        Family {
            nonzero: true,
            ..Family::hamming(modulus)
        }
    }

    pub fn support(alpha: i64, beta: i64, modulus: Modulus) -> Family {
        Family {
            stat: Statistic::Support { alpha, beta },
            arity: 2,
            nonzero: false,
            modulus,
        }
    }

    pub fn setop(op: SetOp, modulus: Modulus) -> Family {
        Family {
            stat: Statistic::SetOp(op),
            arity: 2,
            nonzero: false,
            modulus,
        }
    }

    pub fn inner_product(p: u32) -> Family {
        Family {
            stat: Statistic::InnerProduct,
            arity: 2,
            nonzero: false,
            modulus: Modulus::Finite(p),
        }
    }

    pub fn tuple(m: usize, modulus: Modulus) -> Family {
        Family {
            stat: Statistic::TupleSupport,
            arity: m + 1,
            nonzero: false,
            modulus,
        }
    }

    pub fn prop25(table: Prop25Table) -> Family {
        Family {
            stat: Statistic::Prop25(table),
            arity: 2,
            nonzero: false,
            modulus: Modulus::Finite(2),
        }
    }

    pub fn label(&self) -> String {
        let base = match self.stat {
            Statistic::Hamming if self.nonzero => "hamming-nonzero".to_string(),
            Statistic::Hamming => "hamming".to_string(),
            Statistic::Support { alpha, beta } => format!("support({alpha},{beta})"),
            Statistic::SetOp(op) => format!("setop({})", op.name()),
            Statistic::InnerProduct => "inner-product".to_string(),
            Statistic::TupleSupport => format!("tuple({})", self.arity - 1),
            Statistic::Prop25(Prop25Table::Diagonal) => "prop25".to_string(),
            Statistic::Prop25(Prop25Table::ParityOnly) => "prop25-parity-only".to_string(),
        };
        base
    }

    fn validate(&self, group: &Group) -> Result<()> {
        match self.stat {
            Statistic::InnerProduct => {
                let m = group.moduli();
                if m.len() != 1 || !crate::ground::linalg::is_prime(m[0] as u64) {
                    return Err(Error::Params(
                        "inner products need a prime-order cyclic coefficient group".into(),
                    ));
                }
                if self.modulus != Modulus::Finite(m[0]) {
                    return Err(Error::Params("inner-product modulus must be p".into()));
                }
            }
            Statistic::Prop25(_) => {
                let q = group.order();
                if group.moduli().len() != 1 || q % 2 == 0 || q < 3 {
                    return Err(Error::Params(format!(
                        "the parity weight table needs Z_q with q odd and at least 3, got {}",
                        group.spec()
                    )));
                }
            }
            _ => {}
        }
        if self.arity < 2 {
            return Err(Error::Params("tuples need at least two functions".into()));
        }
        if let Modulus::Finite(0) = self.modulus {
            return Err(Error::Params("modulus must be positive".into()));
        }
        Ok(())
    }

    /// Statistic contributed by one edge carrying values `b`, or `None` when
    /// the values are excluded.
    fn edge_stat(&self, group: &Group, b: &[u32]) -> Option<i64> {
        if self.nonzero && b.iter().any(|&v| v == 0) {
            return None;
        }
        let nz = |v: u32| i64::from(v != 0);
        Some(match self.stat {
            Statistic::Hamming => i64::from(b[0] != b[1]),
            Statistic::Support { alpha, beta } => alpha * nz(b[0]) + beta * nz(b[1]),
            Statistic::SetOp(op) => i64::from(op.apply(b[0] != 0, b[1] != 0)),
            Statistic::InnerProduct => {
                let p = group.order() as i64;
                (b[0] as i64 * b[1] as i64) % p
            }
            Statistic::TupleSupport => b.iter().map(|&v| nz(v)).sum(),
            Statistic::Prop25(table) => {
                if b[0] == 0 && b[1] == 0 {
                    return None;
                }
                if table == Prop25Table::Diagonal && b[0] == b[1] {
                    0
                } else {
                    let q = group.order();
                    i64::from(((b[0] + b[1]) % q) % 2 == 0)
                }
            }
        })
    }

    fn values(&self, group: &Group) -> Vec<u32> {
        let start = u32::from(self.nonzero);
        (start..group.order()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub family: String,
    pub modulus: Modulus,
    pub bins: BTreeMap<i64, u128>,
    pub tier: u8,
    pub universe: u128,
}

impl Census {
    pub fn get(&self, k: i64) -> u128 {
        self.bins.get(&self.modulus.reduce(k)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u128 {
        self.bins.values().sum()
    }

    /// `Σ_k count(k) ω^(ρk)` in `Z[ω_σ]`.
    pub fn root_sum(&self, sigma: u32, rho: i64) -> CycElem {
        let mut coeffs = vec![BigInt::from(0); sigma as usize];
        for (&k, &c) in &self.bins {
            coeffs[(k * rho).rem_euclid(sigma as i64) as usize] += BigInt::from(c);
        }
        CycElem::from_circulant(sigma, &coeffs)
    }

    pub fn laurent(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&k, &c) in &self.bins {
            p.add_term(k, BigInt::from(c));
        }
        p
    }

    /// Same bins and universe, ignoring the tier and label.
    pub fn same_counts(&self, other: &Census) -> bool {
        self.modulus == other.modulus && self.bins == other.bins && self.universe == other.universe
    }

    pub fn to_json(&self) -> Value {
        let sigma = match self.modulus {
            Modulus::Finite(s) => json!(s),
            Modulus::Infinite => json!("inf"),
        };
        let bins: serde_json::Map<String, Value> = self
            .bins
            .iter()
            .map(|(k, c)| (k.to_string(), Value::String(c.to_string())))
            .collect();
        json!({
            "family": self.family,
            "sigma": sigma,
            "bins": bins,
            "tier": self.tier,
            "universe": self.universe.to_string(),
        })
    }
}

/// Sparse polynomial in a formal root-of-unity marker `ζ`, reduced by the
/// modulus after each product.
type BinPoly = BTreeMap<i64, u128>;

fn bin_mul(a: &BinPoly, b: &BinPoly, modulus: Modulus) -> BinPoly {
    let mut out = BinPoly::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            *out.entry(modulus.reduce(i + j)).or_default() += x * y;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn bin_add(mut a: BinPoly, b: &BinPoly) -> BinPoly {
    for (&k, &v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    BruteForce,
    Factored,
}

fn universe_bound(inst: &Instance, group: &Group, family: &Family) -> Result<u128> {
    let q = group.order() as u128;
    let e = inst.ground_size() as u32;
    let m = (family.arity - 1) as u32;
    q.checked_pow(e + m * inst.rank as u32)
        .ok_or(Error::Overflow("tuple universe"))
}

fn finish(
    family: &Family,
    bins: BinPoly,
    tier: u8,
    inst: &Instance,
    group: &Group,
) -> Result<Census> {
    let total: u128 = bins.values().sum();
    let universe = match family.stat {
        Statistic::Prop25(_) => universe_bound(inst, group, family)?,
        _ => total,
    };
    let mut bins = bins;
    let mut modulus = family.modulus;
    if let Statistic::Prop25(_) = family.stat {
        // keys are now the weights themselves
        modulus = Modulus::Infinite;
        // bins: 0 ↦ weight 1, 1 ↦ weight −1, and the excluded pairs weigh 0
        let even = bins.remove(&0).unwrap_or(0);
        let odd = bins.remove(&1).unwrap_or(0);
        bins.insert(1, even);
        bins.insert(-1, odd);
        bins.insert(0, universe - even - odd);
        bins.retain(|_, v| *v != 0);
    }
    Ok(Census {
        family: family.label(),
        modulus,
        bins,
        tier,
        universe,
    })
}

/// Tier 2: flow tuples times per-edge generating polynomials.
pub fn census_factored(inst: &Instance, group: &Group, family: &Family) -> Result<Census> {
    family.validate(group)?;
    universe_bound(inst, group, family)?;
    let m = (family.arity - 1) as u32;
    let tuple_group = if m == 1 {
        group.clone()
    } else {
        group.power(m)?
    };
    let flows = enumerate_flows(inst, &tuple_group)?;
    let allowed = family.values(group);
    let q = group.order();
    // one generating polynomial per value of A^m
    let edge_polys: Vec<BinPoly> = (0..tuple_group.order())
        .map(|a| {
            let h = tuple_group.split(a, m, q);
            let mut poly = BinPoly::new();
            for &b1 in &allowed {
                let mut b = vec![b1];
                for j in 0..m as usize {
                    b.push(group.sub(b[j], h[j]));
                }
                if family.nonzero && b.iter().any(|&v| v == 0) {
                    continue;
                }
                if let Some(s) = family.edge_stat(group, &b) {
                    *poly.entry(family.modulus.reduce(s)).or_default() += 1;
                }
            }
            poly
        })
        .collect();
    let modulus = family.modulus;
    let one: BinPoly = BTreeMap::from([(0, 1)]);
    let bins = flows
        .par_iter()
        .map(|h| {
            h.iter().fold(one.clone(), |acc, &a| {
                bin_mul(&acc, &edge_polys[a as usize], modulus)
            })
        })
        .reduce(BinPoly::new, |a, b| bin_add(a, &b));
    let mut bins = bins;
    bins.retain(|_, v| *v != 0);
    finish(family, bins, 2, inst, group)
}

/// All functions `E → B` as value vectors, in odometer order.
fn all_functions(values: &[u32], n: usize) -> Vec<Vec<u32>> {
    let k = values.len();
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut f = vec![0u32; n];
            for slot in f.iter_mut().rev() {
                *slot = values[idx % k];
                idx /= k;
            }
            f
        })
        .collect()
}

struct BruteForce<'a> {
    funcs: Vec<Vec<u32>>,
    /// `is_flow` for every function `E → A`, indexed in base `q`.
    flow_table: Vec<bool>,
    group: &'a Group,
    family: &'a Family,
}

impl BruteForce<'_> {
    fn index(&self, f: &[u32]) -> usize {
        let q = self.group.order() as usize;
        f.iter().fold(0usize, |acc, &v| acc * q + v as usize)
    }

    fn extend(&self, tuple: &mut Vec<usize>, bins: &mut BinPoly) {
        if tuple.len() == self.family.arity {
            let mut s = 0i64;
            let mut b = vec![0u32; tuple.len()];
            for e in 0..self.funcs[0].len() {
                for (j, &fi) in tuple.iter().enumerate() {
                    b[j] = self.funcs[fi][e];
                }
                match self.family.edge_stat(self.group, &b) {
                    Some(v) => s += v,
                    None => return,
                }
            }
            *bins.entry(self.family.modulus.reduce(s)).or_default() += 1;
            return;
        }
        let prev = &self.funcs[*tuple.last().expect("nonempty tuple")];
        for (fi, f) in self.funcs.iter().enumerate() {
            let diff: Vec<u32> = prev
                .iter()
                .zip(f)
                .map(|(&a, &c)| self.group.sub(a, c))
                .collect();
            if self.flow_table[self.index(&diff)] {
                tuple.push(fi);
                self.extend(tuple, bins);
                tuple.pop();
            }
        }
    }
}

/// Tier 1: every tuple of functions, filtered by the flow test.
pub fn census_brute_force(inst: &Instance, group: &Group, family: &Family) -> Result<Census> {
    family.validate(group)?;
    let n = inst.ground_size();
    let values = family.values(group);
    check_budget(
        "function tuples",
        (values.len() as u128).checked_pow((family.arity * n) as u32),
    )?;
    check_budget("functions", (group.order() as u128).checked_pow(n as u32))?;
    let test = FlowTest::new(inst, group)?;
    let engine = BruteForce {
        funcs: all_functions(&values, n),
        flow_table: all_functions(&(0..group.order()).collect::<Vec<_>>(), n)
            .par_iter()
            .map(|f| test.is_flow(f))
            .collect(),
        group,
        family,
    };
    let bins = (0..engine.funcs.len())
        .into_par_iter()
        .map(|first| {
            let mut bins = BinPoly::new();
            engine.extend(&mut vec![first], &mut bins);
            bins
        })
        .reduce(BinPoly::new, |a, b| bin_add(a, &b));
    finish(family, bins, 1, inst, group)
}

pub fn census(inst: &Instance, group: &Group, family: &Family, tier: Tier) -> Result<Census> {
    match tier {
        Tier::BruteForce => census_brute_force(inst, group, family),
        Tier::Factored => census_factored(inst, group, family),
    }
}

pub fn hamming_census(
    inst: &Instance,
    group: &Group,
    modulus: Modulus,
    nonzero: bool,
) -> Result<Census> {
    let f = if nonzero {
        Family::hamming_nonzero(modulus)
    } else {
        Family::hamming(modulus)
    };
    census_factored(inst, group, &f)
}

pub fn support_census(
    inst: &Instance,
    group: &Group,
    alpha: i64,
    beta: i64,
    modulus: Modulus,
) -> Result<Census> {
    census_factored(inst, group, &Family::support(alpha, beta, modulus))
}

pub fn setop_census(inst: &Instance, group: &Group, op: SetOp, modulus: Modulus) -> Result<Census> {
    census_factored(inst, group, &Family::setop(op, modulus))
}

pub fn inner_product_census(inst: &Instance, p: u32) -> Result<Census> {
    census_factored(inst, &Group::gfp(p, 1), &Family::inner_product(p))
}

pub fn tuple_census(inst: &Instance, group: &Group, m: usize, modulus: Modulus) -> Result<Census> {
    census_factored(inst, group, &Family::tuple(m, modulus))
}

/// The three parity parcels for `G`, counted over pairs whose difference
/// is a flow of the orthogonal dual `H`. Bins: `1`, `−1`, `0`.
pub fn prop25_census(inst: &Instance, q: u32, table: Prop25Table, tier: Tier) -> Result<Census> {
    if !inst.is_unimodular() {
        return Err(Error::NotApplicable(
            "the parity parcels need a graph or TU matrix".into(),
        ));
    }
    if q % 2 == 0 {
        return Err(Error::Params(format!(
            "the parity weight table is only defined for odd q (got {q})"
        )));
    }
    let dual = inst.orthogonal_dual()?;
    census(&dual, &Group::cyclic(q), &Family::prop25(table), tier)
}

/// Flows binned by support size.
pub fn flow_weight_census(
    inst: &Instance,
    group: &Group,
    modulus: Modulus,
    tier: Tier,
) -> Result<Census> {
    let mut bins = BinPoly::new();
    match tier {
        Tier::Factored => {
            for h in enumerate_flows(inst, group)? {
                *bins
                    .entry(modulus.reduce(support(&h).count_ones() as i64))
                    .or_default() += 1;
            }
        }
        Tier::BruteForce => {
            let n = inst.ground_size();
            check_budget("functions", (group.order() as u128).checked_pow(n as u32))?;
            let test = FlowTest::new(inst, group)?;
            for f in all_functions(&(0..group.order()).collect::<Vec<_>>(), n) {
                if test.is_flow(&f) {
                    *bins
                        .entry(modulus.reduce(support(&f).count_ones() as i64))
                        .or_default() += 1;
                }
            }
        }
    }
    let universe = bins.values().sum();
    Ok(Census {
        family: "flow-weight".into(),
        modulus,
        bins,
        tier: if tier == Tier::BruteForce { 1 } else { 2 },
        universe,
    })
}

/// `Σ_k |M_{1,−1}(k,∞)| X^k`.
pub fn support_diff_enumerator(inst: &Instance, group: &Group) -> Result<LaurentPoly> {
    Ok(support_census(inst, group, 1, -1, Modulus::Infinite)?.laurent())
}

/// `Σ_k |H(k,∞)| X^k`; over GF(p) this is the weight enumerator of the
/// code spanned by the rows.
pub fn flow_weight_enumerator(inst: &Instance, group: &Group) -> Result<LaurentPoly> {
    Ok(flow_weight_census(inst, group, Modulus::Infinite, Tier::Factored)?.laurent())
}

fn require_odd_prime(p: u32) -> Result<()> {
    if p == 2 || !linalg::is_prime(p as u64) {
        return Err(Error::Params(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// `Ω = Σ_b ω^(b²) = 1 + 2 Σ_{b square} ω^b` in `Z[ω_p]`.
pub fn gauss_sum(p: u32) -> Result<CycElem> {
    require_odd_prime(p)?;
    let mut squares = vec![false; p as usize];
    for b in 1..p as u64 {
        squares[(b * b % p as u64) as usize] = true;
    }
    let mut out = CycElem::one(p);
    for (b, &sq) in squares.iter().enumerate() {
        if sq {
            out = &out + &CycElem::omega_pow(p, b as i64).scale(&BigInt::from(2));
        }
    }
    Ok(out)
}

fn gfp_prime(inst: &Instance) -> Result<u32> {
    inst.prime()
        .ok_or_else(|| Error::NotApplicable("needs a GF(p) matrix".into()))
}

/// `Σ_h ω^⟨h,h⟩` over the flows of a GF(p) matrix, `ω` a p-th root.
pub fn quadratic_flow_sum(inst: &Instance) -> Result<CycElem> {
    let p = gfp_prime(inst)?;
    quadratic_sum_scaled(inst, p, 1)
}

/// `Σ_h ω^(c⟨h,h⟩)` with the exponent computed in GF(p).
pub fn quadratic_sum_scaled(inst: &Instance, p: u32, c: i64) -> Result<CycElem> {
    let mut coeffs = vec![BigInt::from(0); p as usize];
    for h in enumerate_flows(inst, &Group::gfp(p, 1))? {
        let ip: i64 = h.iter().map(|&v| v as i64 * v as i64).sum::<i64>() % p as i64;
        coeffs[(c * ip).rem_euclid(p as i64) as usize] += 1;
    }
    Ok(CycElem::from_circulant(p, &coeffs))
}

/// `Ω^|E| Σ_h ω^(−⟨h,h⟩/4)`, the division by 4 done in GF(p).
pub fn inner_product_flow_side(inst: &Instance, p: u32) -> Result<CycElem> {
    require_odd_prime(p)?;
    let inv4 = mod_inverse(4, p as i64).expect("4 is invertible mod an odd prime");
    let sum = quadratic_sum_scaled(inst, p, -inv4)?;
    Ok(&gauss_sum(p)?.pow(inst.ground_size() as u32) * &sum)
}

/// Dimension of (row space) ∩ (row space)^⊥ over GF(p).
pub fn bicycle_dimension(inst: &Instance) -> Result<usize> {
    let p = gfp_prime(inst)?;
    let (basis, _) = linalg::rref(&inst.matrix, inst.scalars)?;
    let gram = linalg::product_with_transpose(&basis, &basis, Scalars::Prime(p));
    let gram = crate::ground::linalg::Matrix::new(basis.row_count(), gram);
    Ok(basis.row_count() - linalg::rank(&gram, Scalars::Prime(p)))
}
