//! The identity registry. Right-hand sides go through the homogeneous
//! flow-census form `Σ_h a0^|ker h| a1^|supp h|`, which needs no division;
//! the closed forms with rational coordinates are checked as auxiliary
//! equations wherever their denominators are nonzero.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cut_pairs::graph_side_outcome;
use super::{Outcome, Params, Quantity, Subject};
use crate::cyclotomic::{coprime_residues, CycElem};
use crate::error::{Error, Result};
use crate::ground::matroid::full_mask;
use crate::ground::{Instance, Mask, Matroid, Side};
use crate::group_flow::{
    binary_affine_criteria, closure_of_kernel_property, enumerate_flows, graph_support_property,
    kernel_census, support, weighted_profile_census, Group,
};
use crate::parcels::{
    bicycle_dimension, census, flow_weight_census, gauss_sum, inner_product_flow_side,
    prop25_census, quadratic_flow_sum, Census, Family, Modulus, Prop25Table, SetOp, Tier,
};
use crate::poly::invariants::char_poly_from_rank_poly;
use crate::poly::{
    char_poly_subsets, char_value, crapo_tutte_convolution, eval_flow_form, flow_census_poly,
    rank_gen_poly, LaurentPoly, Ring,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Runs against an instance.
    Instance,
    /// Independent of any instance.
    Global,
}

type Pre = fn(&Subject, &Params) -> Result<()>;
type Run = fn(&Subject, &Params) -> Result<Outcome>;
type GlobalRun = fn(&Params) -> Result<Outcome>;

#[derive(Clone, Copy)]
enum Runner {
    Instance {
        pre: Pre,
        run: Run,
        grid: fn(&Subject) -> Vec<Params>,
    },
    Global {
        run: GlobalRun,
        grid: fn() -> Vec<Params>,
    },
}

/// Rough amount of enumeration a cell needs, used to skip oversized cells.
#[derive(Debug, Clone, Copy)]
enum Work {
    Light,
    /// `q^(k·r)` flow tuples times `|E|`.
    Flows(u32),
    /// Flows over `GF(2)^m`.
    BinaryPower,
    /// All `2^|E|` subsets.
    Subsets,
    /// All `4^|E|` subset pairs.
    SubsetPairs,
    /// Tier-1 enumeration of all function triples.
    Brute,
}

pub struct TheoremCheck {
    pub id: &'static str,
    pub summary: &'static str,
    /// Parameters the check reads.
    pub params: &'static [&'static str],
    pub scope: Scope,
    runner: Runner,
    work: Work,
}

impl TheoremCheck {
    pub fn run_on(&self, subj: Option<&Subject>, p: &Params) -> Result<Outcome> {
        match (self.runner, subj) {
            (Runner::Instance { pre, run, .. }, Some(s)) => {
                pre(s, p)?;
                run(s, p)
            }
            (Runner::Instance { .. }, None) => {
                Err(Error::Params(format!("{} needs an instance", self.id)))
            }
            (Runner::Global { run, .. }, _) => run(p),
        }
    }

    /// Applicable grid cells for this instance (or the global grid).
    pub fn grid_for(&self, subj: Option<&Subject>) -> Vec<Params> {
        match (self.runner, subj) {
            (Runner::Instance { pre, grid, .. }, Some(s)) => {
                grid(s).into_iter().filter(|p| pre(s, p).is_ok()).collect()
            }
            (Runner::Instance { .. }, None) => Vec::new(),
            (Runner::Global { grid, .. }, _) => grid(),
        }
    }

    pub fn cost_for(&self, subj: Option<&Subject>, p: &Params) -> u128 {
        let Some(s) = subj else { return 1 };
        let q = p.q.or(p.p).unwrap_or(2) as u128;
        let n = s.n;
        let r = s.r;
        let sat = |b: u128, e: u32| b.checked_pow(e).unwrap_or(u128::MAX);
        match self.work {
            Work::Light => 1,
            Work::Flows(k) => sat(q, k * r).saturating_mul(n.max(1) as u128),
            Work::BinaryPower => sat(2, p.m.unwrap_or(2) * r).saturating_mul(n.max(1) as u128),
            Work::Subsets => sat(2, n),
            Work::SubsetPairs => sat(4, n),
            Work::Brute => sat(q, 3 * n),
        }
    }

    pub fn is_global(&self) -> bool {
        self.scope == Scope::Global
    }
}

pub fn registry() -> &'static [TheoremCheck] {
    static R: OnceLock<Vec<TheoremCheck>> = OnceLock::new();
    R.get_or_init(build)
}

pub fn find(id: &str) -> Option<&'static TheoremCheck> {
    registry().iter().find(|c| c.id == id)
}

// ---------------------------------------------------------------------------
// helpers

#[derive(Clone, Copy)]
struct Zw {
    sigma: u32,
    rho: i64,
}

impl Zw {
    fn int(self, n: impl Into<BigInt>) -> CycElem {
        CycElem::from_int(self.sigma, n)
    }
    /// `w^k` with `w = ω^ρ`.
    fn w(self, k: i64) -> CycElem {
        CycElem::omega_pow(self.sigma, self.rho * k)
    }
}

fn big(n: impl Into<BigInt>) -> BigInt {
    n.into()
}

fn sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn sub<T: Ring>(a: &T, b: &T) -> T {
    a.ring_add(&b.ring_scale(&BigInt::from(-1)))
}

/// `Σ_h a0^|h⁻¹(0)| a1^(|E|−|h⁻¹(0)|)` over the flows of a group of order `q`.
fn flow_form<T: Ring>(s: &Subject, q: u32, a0: &T, a1: &T) -> T {
    eval_flow_form(&s.rpoly, s.r, s.n, &BigInt::from(q), &sub(a0, a1), a1)
}

/// `ld^r xd^(|E|−r) R(ln/ld, xn/xd)`.
fn cleared<T: Ring>(s: &Subject, ln: &T, ld: &T, xn: &T, xd: &T) -> T {
    s.rpoly.eval_cleared(s.r, s.n, ln, ld, xn, xd)
}

fn req<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Params(format!("missing parameter {name}")))
}

fn fixed<T: Copy + PartialEq + std::fmt::Display>(v: Option<T>, want: T, name: &str) -> Result<T> {
    match v {
        Some(x) if x != want => Err(Error::Params(format!(
            "this identity fixes {name} = {want} (got {x})"
        ))),
        _ => Ok(want),
    }
}

fn sigma_of(p: &Params, min: u32) -> Result<u32> {
    let s = req(p.sigma, "sigma")?;
    if s < min {
        return Err(Error::Params(format!("sigma must be at least {min}")));
    }
    Ok(s)
}

fn na(msg: impl Into<String>) -> Error {
    Error::NotApplicable(msg.into())
}

fn default_group(inst: &Instance, q: u32) -> Result<Group> {
    if q < 2 {
        return Err(Error::Params(format!(
            "group order must be at least 2, got {q}"
        )));
    }
    match inst.prime() {
        None => Ok(Group::cyclic(q)),
        Some(pr) => {
            let (mut d, mut o) = (0u32, 1u64);
            while o < q as u64 {
                o *= pr as u64;
                d += 1;
            }
            if o == q as u64 {
                Ok(Group::gfp(pr, d))
            } else {
                Err(na(format!(
                    "a GF({pr}) matrix needs a group of order a power of {pr}, got {q}"
                )))
            }
        }
    }
}

/// Coefficient group and its order.
fn group_q(s: &Subject, p: &Params) -> Result<(Group, u32)> {
    let g = match (&p.group, p.q) {
        (Some(spec), _) => Group::new(spec.clone())?,
        (None, Some(q)) => default_group(&s.inst, q)?,
        (None, None) => return Err(Error::Params("missing parameter q (or a group)".into())),
    };
    if let Some(q) = p.q {
        if q != g.order() {
            return Err(Error::Params(format!(
                "q = {q} but the group {} has order {}",
                g.spec(),
                g.order()
            )));
        }
    }
    g.compatible(&s.inst)?;
    let q = g.order();
    Ok((g, q))
}

fn with_q(p: &Params, q: u32) -> Result<Params> {
    fixed(p.q, q, "q")?;
    Ok(Params {
        q: Some(q),
        ..p.clone()
    })
}

fn tier_of(p: &Params) -> Tier {
    p.tier.unwrap_or(Tier::Factored)
}

fn count(s: &Subject, g: &Group, fam: Family, p: &Params) -> Result<Census> {
    census(&s.inst, g, &fam, tier_of(p))
}

fn bin(c: &Census, k: i64) -> BigInt {
    BigInt::from(c.get(k))
}

fn rhos(p: &Params, sigma: u32) -> Result<Vec<i64>> {
    if let Some(r) = p.rho {
        if r.gcd(&(sigma as i64)) != 1 {
            return Err(Error::Params(format!(
                "rho = {r} is not coprime to sigma = {sigma}"
            )));
        }
        return Ok(vec![r]);
    }
    Ok(if sigma <= 2 {
        vec![1]
    } else {
        coprime_residues(sigma).into_iter().map(i64::from).collect()
    })
}

/// Runs `f` for the requested ρ (or all ρ coprime to σ); extra residues
/// become auxiliary equations of the first.
fn galois(p: &Params, sigma: u32, f: impl Fn(Zw) -> Result<Outcome>) -> Result<Outcome> {
    let rs = rhos(p, sigma)?;
    let mut main = f(Zw { sigma, rho: rs[0] })?;
    for &rho in &rs[1..] {
        let o = f(Zw { sigma, rho })?;
        main.aux(format!("rho={rho}"), o.holds());
    }
    Ok(main)
}

/// Main equation against `rhs`, or against the constant `a0^|E|` when
/// the per-edge sum `a1` vanishes (every nonzero flow contributes 0).
fn with_exception(s: &Subject, lhs: CycElem, a0: &CycElem, a1: &CycElem, rhs: CycElem) -> Outcome {
    if a1.is_zero() {
        let constant = a0.pow(s.n);
        let mut o = Outcome::cyc(lhs, constant.clone());
        o.exceptional = Some(format!(
            "nonzero differences weigh 0; the sum collapses to ({a0})^|E|"
        ));
        o.aux("flow-census form gives the constant", rhs == constant);
        o
    } else {
        Outcome::cyc(lhs, rhs)
    }
}

fn binary_view(inst: &Instance) -> Result<Instance> {
    match inst.prime() {
        Some(2) => Ok(inst.clone()),
        None => Instance::from_gfp_matrix(inst.name.clone(), 2, inst.matrix.clone()),
        Some(p) => Err(na(format!("a GF({p}) matrix is not binary"))),
    }
}

fn chi(s: &Subject, l: i64) -> Result<BigInt> {
    char_value(&s.matroid, l)
}

fn dual_chi(s: &Subject, l: i64) -> Result<BigInt> {
    char_value(&Matroid::from_instance(&s.inst.orthogonal_dual()?), l)
}

fn laurent_of(bins: impl IntoIterator<Item = (i64, u128)>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (k, c) in bins {
        p.add_term(k, BigInt::from(c));
    }
    p
}

// preconditions

fn any(_: &Subject, _: &Params) -> Result<()> {
    Ok(())
}

fn need_group(s: &Subject, p: &Params) -> Result<()> {
    group_q(s, p).map(|_| ())
}

fn need_binary(s: &Subject) -> Result<()> {
    if s.inst.is_binary() {
        Ok(())
    } else {
        Err(na("needs a binary instance"))
    }
}

fn need_ternary(s: &Subject) -> Result<()> {
    if s.inst.is_ternary() {
        Ok(())
    } else {
        Err(na("needs a ternary instance"))
    }
}

fn binary_q2(s: &Subject, p: &Params) -> Result<()> {
    need_binary(s)?;
    group_q(s, &with_q(p, 2)?).map(|_| ())
}

fn ternary_q3(s: &Subject, p: &Params) -> Result<()> {
    need_ternary(s)?;
    group_q(s, &with_q(p, 3)?).map(|_| ())
}

fn group_not_q(bad: u32) -> impl Fn(&Subject, &Params) -> Result<()> {
    move |s, p| {
        let (_, q) = group_q(s, p)?;
        if q == bad {
            Err(na(format!("excluded for q = {bad}")))
        } else {
            Ok(())
        }
    }
}

// grids

fn sq(sigmas: &[u32], qs: &[u32]) -> Vec<Params> {
    let mut out = Vec::new();
    for &s in sigmas {
        for &q in qs {
            out.push(Params::default().sigma(s).q(q));
        }
    }
    out
}

fn qs(qs: &[u32]) -> Vec<Params> {
    qs.iter().map(|&q| Params::default().q(q)).collect()
}

fn sigmas(ss: &[u32]) -> Vec<Params> {
    ss.iter().map(|&s| Params::default().sigma(s)).collect()
}

fn one() -> Vec<Params> {
    vec![Params::default()]
}

const Q4: [u32; 4] = [2, 3, 4, 5];
const SIGMA_12: [u32; 11] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

// ---------------------------------------------------------------------------
// ground and polynomial identities

fn kernels_are_flats(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, _) = group_q(s, p)?;
    let closed = closure_of_kernel_property(&s.inst, &g)?;
    let mut o = Outcome::new(Quantity::Flag(closed), Quantity::Flag(true));
    // minimal nonempty supports are the cocircuits
    let supports: BTreeSet<Mask> = enumerate_flows(&s.inst, &g)?
        .iter()
        .map(|h| support(h))
        .filter(|&m| m != 0)
        .collect();
    let minimal: BTreeSet<Mask> = supports
        .iter()
        .copied()
        .filter(|&a| !supports.iter().any(|&b| b != a && b & a == b))
        .collect();
    let dual = Matroid::from_instance(&s.inst.orthogonal_dual()?);
    let cocircuits: BTreeSet<Mask> = dual.circuits()?.into_iter().collect();
    o.aux("minimal supports are the cocircuits", minimal == cocircuits);
    Ok(o)
}

fn affine_criteria(s: &Subject, _: &Params) -> Result<Outcome> {
    let b = binary_view(&s.inst)?;
    let mut agree = 0u64;
    for mask in 0..=full_mask(s.n as usize) {
        let c = binary_affine_criteria(&b, mask)?;
        if c.functional == c.even_circuits && c.even_circuits == c.char_value_one {
            agree += 1;
        }
    }
    Ok(Outcome::int(big(agree), big(1u64) << s.n))
}

fn graph_binary_supports(s: &Subject, _: &Params) -> Result<Outcome> {
    let g = s.inst.graph().ok_or_else(|| na("needs a graph"))?;
    let side = s.inst.side().expect("graph instance");
    let flows = enumerate_flows(&s.inst, &Group::cyclic(2))?;
    let holds = |m: Mask| match side {
        Side::Cycle => g.is_even_subgraph(m),
        Side::Vertex => g.is_cut_union(m),
    };
    let matching = (0..=full_mask(s.n as usize)).filter(|&m| holds(m)).count();
    let mut o = Outcome::int(big(flows.len()), big(matching));
    let every = flows.iter().all(|h| {
        let c = graph_support_property(g, h);
        match side {
            Side::Cycle => c.even_subgraph,
            Side::Vertex => c.cut_union,
        }
    });
    o.aux("every flow support has the property", every);
    Ok(o)
}

fn char_from_rank(s: &Subject, _: &Params) -> Result<Outcome> {
    let direct = char_poly_subsets(&s.matroid)?;
    let from_r = char_poly_from_rank_poly(&s.rpoly, s.r);
    let mut o = Outcome::new(Quantity::Poly(direct), Quantity::Poly(from_r));
    let dual = rank_gen_poly(&Matroid::from_instance(&s.inst.orthogonal_dual()?))?;
    o.aux("R(M^perp; l, x) = R(M; x, l)", dual == s.rpoly.swap());
    Ok(o)
}

fn convolution(s: &Subject, p: &Params) -> Result<Outcome> {
    let q = req(p.q, "q")?;
    // kernel-size form Σ_B q^(r−rk B) (x−1)^|B|, valid for any q
    let rhs = flow_form(s, q, &x_var(), &LaurentPoly::constant(1));
    Ok(Outcome::new(
        Quantity::Poly(crapo_tutte_convolution(&s.matroid, q as u64)?),
        Quantity::Poly(rhs),
    ))
}

fn flow_census(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let kc = kernel_census(&s.inst, &g)?;
    let lhs = laurent_of(kc.into_iter().map(|(k, c)| (k as i64, c)));
    let rhs = flow_census_poly(&s.matroid, q as u64)?;
    let mut o = Outcome::new(Quantity::Poly(lhs), Quantity::Poly(rhs.clone()));
    o.aux(
        "sum over flats",
        crapo_tutte_convolution(&s.matroid, q as u64)? == rhs,
    );
    Ok(o)
}

fn tier_agreement(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, _) = group_q(s, p)?;
    let m = Modulus::Finite(sigma_of(p, 1)?);
    let mut fams = vec![
        Family::hamming(m),
        Family::hamming_nonzero(m),
        Family::support(1, 2, m),
        Family::tuple(2, m),
    ];
    fams.extend(SetOp::ALL.iter().map(|&op| Family::setop(op, m)));
    let mut agree = 0usize;
    let mut o_aux = Vec::new();
    for f in &fams {
        let a = census(&s.inst, &g, f, Tier::BruteForce)?;
        let b = census(&s.inst, &g, f, Tier::Factored)?;
        if a.same_counts(&b) {
            agree += 1;
        } else {
            o_aux.push(f.label());
        }
    }
    let mut o = Outcome::int(big(agree), big(fams.len())).with_tier(1);
    for l in o_aux {
        o.aux(format!("tiers differ for {l}"), false);
    }
    Ok(o)
}

fn parity_parcels(s: &Subject, p: &Params) -> Result<Outcome> {
    let q = req(p.q, "q")?;
    let c = prop25_census(&s.inst, q, Prop25Table::Diagonal, tier_of(p))?;
    let lhs = bin(&c, 1) - bin(&c, -1);
    let rhs = big(q).pow(s.n - s.r) * chi(s, q as i64)?;
    let mut o = Outcome::int(lhs, rhs).with_tier(c.tier);
    let universe = (q as u128).checked_pow(2 * s.n);
    if tier_of(p) == Tier::Factored && universe.is_some_and(|u| u <= 1 << 20) {
        let b = prop25_census(&s.inst, q, Prop25Table::Diagonal, Tier::BruteForce)?;
        o.aux("brute-force census agrees", b.same_counts(&c));
    }
    Ok(o)
}

fn odd_q(s: &Subject, p: &Params) -> Result<()> {
    let q = req(p.q, "q")?;
    if !s.inst.is_unimodular() {
        return Err(na("needs a graph or TU matrix"));
    }
    if q % 2 == 0 || q < 3 {
        return Err(na("needs odd q >= 3"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Hamming-distance parcels

fn hamming(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let sigma = sigma_of(p, 2)?;
    let c = count(s, &g, Family::hamming(Modulus::Finite(sigma)), p)?;
    let qn = big(q).pow(s.n);
    galois(p, sigma, |z| {
        let lhs = c.root_sum(sigma, z.rho);
        let w = z.w(1);
        let rhs = flow_form(s, q, &z.int(q), &w.scale(&big(q)));
        let mut o = Outcome::cyc(lhs.clone(), rhs).with_tier(c.tier);
        let one_minus = &z.int(1) - &w;
        let lit = cleared(s, &w.scale(&big(q)), &one_minus, &one_minus, &w).scale(&qn);
        o.aux("closed form", lhs == lit);
        Ok(o)
    })
}

fn hamming_sign(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = Params {
        sigma: Some(fixed(p.sigma, 2, "sigma")?),
        ..p.clone()
    };
    let (g, q) = group_q(s, &p)?;
    let c = count(s, &g, Family::hamming(Modulus::Finite(2)), &p)?;
    let lhs = bin(&c, 0) - bin(&c, 1);
    let rhs = flow_form(s, q, &big(q), &-big(q));
    let mut o = Outcome::int(lhs.clone(), rhs).with_tier(c.tier);
    let lit = sign((s.n - s.r) as i64)
        * big(q).pow(s.n)
        * cleared(s, &-big(q), &big(2), &big(-2), &big(1));
    o.aux("closed form", lhs == lit);
    Ok(o)
}

fn hamming_nonzero(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let sigma = sigma_of(p, 1)?;
    let c = count(s, &g, Family::hamming_nonzero(Modulus::Finite(sigma)), p)?;
    galois(p, sigma, |z| {
        let lhs = c.root_sum(sigma, z.rho);
        let w = z.w(1);
        let a0 = z.int(q - 1);
        let a1 = w.scale(&big(q as i64 - 2));
        let rhs = flow_form(s, q, &a0, &a1);
        if q == 2 {
            // a single pair of nowhere-zero functions
            let mut o = Outcome::cyc(lhs, z.int(1)).with_tier(c.tier);
            o.exceptional = Some("q = 2: one pair, Hamming distance 0".into());
            o.aux("flow-census form gives 1", rhs == z.int(1));
            return Ok(o);
        }
        let mut o = Outcome::cyc(lhs.clone(), rhs).with_tier(c.tier);
        let d = &(&(&z.int(1) - &w).scale(&big(q)) + &w.scale(&big(2))) - &z.int(1);
        let lit = cleared(s, &w.scale(&big(q as i64 * (q as i64 - 2))), &d, &d, &a1);
        o.aux("closed form", lhs == lit);
        Ok(o)
    })
}

fn nowhere_zero_pairs(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let q = q as i64;
    let c = count(s, &g, Family::hamming_nonzero(Modulus::Finite(1)), p)?;
    let lhs = big(c.total());
    let rhs = flow_form(s, q as u32, &big(q - 1), &big(q - 2));
    let mut o = Outcome::int(lhs.clone(), rhs).with_tier(c.tier);
    o.aux(
        "closed form",
        lhs == cleared(s, &big(q * (q - 2)), &big(1), &big(1), &big(q - 2)),
    );
    Ok(o)
}

fn nowhere_zero_sign(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let qi = q as i64;
    let c = count(s, &g, Family::hamming_nonzero(Modulus::Finite(2)), p)?;
    let lhs = bin(&c, 0) - bin(&c, 1);
    let rhs = flow_form(s, q, &big(qi - 1), &big(2 - qi));
    let mut o = Outcome::int(lhs.clone(), rhs).with_tier(c.tier);
    let e_r = sign((s.n - s.r) as i64);
    let lit = &e_r
        * cleared(
            s,
            &big(-qi * (qi - 2)),
            &big(2 * qi - 3),
            &big(3 - 2 * qi),
            &big(qi - 2),
        );
    o.aux("closed form", lhs == lit);
    if q == 3 && s.inst.is_ternary() {
        let three_r = big(3).pow(s.r);
        o.aux("3^r chi(M^perp; 3)", lhs == &three_r * dual_chi(s, 3)?);
        o.aux(
            "(-1)^(|E|-r) 3^r R(-1,-3)",
            lhs == e_r * three_r * s.rpoly.eval_int(-1, -3),
        );
    }
    Ok(o)
}

fn nowhere_zero_sixth(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 3)?;
    let (g, _) = group_q(s, &p)?;
    let c = count(s, &g, Family::hamming_nonzero(Modulus::Finite(6)), &p)?;
    galois(&p, 6, |z| {
        let lhs = c.root_sum(6, z.rho);
        let w = z.w(1);
        let rhs = flow_form(s, 3, &z.int(2), &w);
        let mut o = Outcome::cyc(lhs.clone(), rhs).with_tier(c.tier);
        // i√3 = 2ω − 1
        let s3 = &w.scale(&big(2)) - &z.int(1);
        // 2 − w = −(i√3) w
        let lit = &(&w.pow(s.n) * &(-&s3).pow(s.r)) * &cleared(s, &s3, &z.int(1), &-&s3, &z.int(1));
        o.aux("closed form", lhs == lit);
        Ok(o)
    })
}

// ---------------------------------------------------------------------------
// support-size parcels

struct SupportRun {
    census: Census,
    q: u32,
    sigma: u32,
    alpha: i64,
    beta: i64,
}

fn support_run(s: &Subject, p: &Params, alpha: i64, beta: i64, sigma: u32) -> Result<SupportRun> {
    let (g, q) = group_q(s, p)?;
    let census = count(
        s,
        &g,
        Family::support(alpha, beta, Modulus::Finite(sigma)),
        p,
    )?;
    Ok(SupportRun {
        census,
        q,
        sigma,
        alpha,
        beta,
    })
}

impl SupportRun {
    fn sums(&self, z: Zw) -> (CycElem, CycElem) {
        let q = self.q as i64;
        let ab = z.w(self.alpha + self.beta);
        let a0 = &z.int(1) + &ab.scale(&big(q - 1));
        let a1 = &(&z.w(self.alpha) + &z.w(self.beta)) + &ab.scale(&big(q - 2));
        (a0, a1)
    }

    fn outcome(&self, s: &Subject, z: Zw) -> Outcome {
        let (a0, a1) = self.sums(z);
        let lhs = self.census.root_sum(self.sigma, z.rho);
        let rhs = flow_form(s, self.q, &a0, &a1);
        let mut o = with_exception(s, lhs.clone(), &a0, &a1, rhs).with_tier(self.census.tier);
        let d = &(&z.int(1) - &z.w(self.alpha)) * &(&z.int(1) - &z.w(self.beta));
        if !a1.is_zero() && !d.is_zero() {
            let lit = cleared(s, &a1.scale(&big(self.q)), &d, &d, &a1);
            o.aux("closed form", lhs == lit);
        }
        o
    }

    fn m(&self, k: i64) -> BigInt {
        bin(&self.census, k)
    }
}

fn support_general(s: &Subject, p: &Params) -> Result<Outcome> {
    let sigma = sigma_of(p, 2)?;
    let (a, b) = (req(p.alpha, "alpha")?, req(p.beta, "beta")?);
    let run = support_run(s, p, a, b, sigma)?;
    galois(p, sigma, |z| Ok(run.outcome(s, z)))
}

fn alpha_beta_nonzero(s: &Subject, p: &Params) -> Result<()> {
    let sigma = sigma_of(p, 2)? as i64;
    let (a, b) = (req(p.alpha, "alpha")?, req(p.beta, "beta")?);
    if a.rem_euclid(sigma) == 0 || b.rem_euclid(sigma) == 0 {
        return Err(na("alpha and beta must be nonzero mod sigma"));
    }
    need_group(s, p)
}

fn support_sum(s: &Subject, p: &Params) -> Result<Outcome> {
    let sigma = sigma_of(p, 2)?;
    let run = support_run(s, p, 1, 1, sigma)?;
    galois(p, sigma, |z| Ok(run.outcome(s, z)))
}

fn support_sum_sign(s: &Subject, p: &Params) -> Result<Outcome> {
    fixed(p.sigma, 2, "sigma")?;
    let run = support_run(s, p, 1, 1, 2)?;
    let q = run.q as i64;
    let lhs = run.m(0) - run.m(1);
    let rhs = flow_form(s, run.q, &big(q), &big(q - 4));
    let mut o = Outcome::int(lhs.clone(), rhs).with_tier(run.census.tier);
    o.aux(
        "closed form",
        lhs == cleared(s, &big(q * (q - 4)), &big(4), &big(4), &big(q - 4)),
    );
    if q == 2 && s.inst.is_binary() {
        let scale = big(2).pow(s.n + s.r);
        o.aux("2^(|E|+r) chi(M^perp; 2)", lhs == &scale * dual_chi(s, 2)?);
        o.aux(
            "(-1)^(|E|-r) 2^(|E|+r) R(-1,-2)",
            lhs == sign((s.n - s.r) as i64) * scale * s.rpoly.eval_int(-1, -2),
        );
    }
    Ok(o)
}

fn binary_support_sum(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 2)?;
    let sigma = sigma_of(&p, 2)?;
    let run = support_run(s, &p, 1, 1, sigma)?;
    galois(&p, sigma, |z| {
        let mut o = run.outcome(s, z);
        let w = z.w(1);
        let d = (&w - &z.int(1)).pow(2);
        let lit = cleared(s, &w.scale(&big(4)), &d, &d, &w.scale(&big(2)));
        o.aux("closed form in cos", o.lhs == Quantity::Cyc(lit));
        Ok(o)
    })
}

fn binary_support_sum_small(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 2)?;
    let sigma = req(p.sigma, "sigma")?;
    if ![3, 4, 6].contains(&sigma) {
        return Err(Error::Params("sigma must be 3, 4 or 6".into()));
    }
    let run = support_run(s, &p, 1, 1, sigma)?;
    galois(&p, sigma, |z| {
        let mut o = run.outcome(s, z);
        let w = z.w(1);
        let sr = sign(s.r as i64);
        let int = |v: BigInt| z.int(v);
        let lit = match sigma {
            3 => &w.pow(s.n) * &int(&sr * cleared(s, &big(-4), &big(3), &big(-3), &big(2))),
            4 => &w.scale(&big(2)).pow(s.n) * &int(chi(s, 2)?),
            _ => &w.pow(s.n) * &int(&sr * cleared(s, &big(-4), &big(1), &big(-1), &big(2))),
        };
        o.aux("closed form", o.lhs == Quantity::Cyc(lit));
        if sigma == 4 {
            let r_form = &w.scale(&big(2)).pow(s.n) * &int(sr * s.rpoly.eval_int(-2, -1));
            o.aux("(-1)^r (2w)^|E| R(-2,-1)", o.lhs == Quantity::Cyc(r_form));
        }
        Ok(o)
    })
}

fn ternary_support_sum(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 3)?;
    fixed(p.sigma, 3, "sigma")?;
    let run = support_run(s, &p, 1, 1, 3)?;
    galois(&p, 3, |z| {
        let mut o = run.outcome(s, z);
        let w = z.w(1);
        let wm1 = &w - &z.int(1);
        // √3 e^{±5πι/6} = ω^{±1} − 1
        let lit = &wm1.pow(s.n + s.r) * &s.rpoly.eval(&(&z.w(2) - &z.int(1)), &wm1);
        o.aux("closed form", o.lhs == Quantity::Cyc(lit));
        Ok(o)
    })
}

fn support_diff(s: &Subject, p: &Params) -> Result<Outcome> {
    let sigma = sigma_of(p, 2)?;
    let run = support_run(s, p, 1, -1, sigma)?;
    galois(p, sigma, |z| {
        let mut o = run.outcome(s, z);
        let w = z.w(1);
        let two_cos = &w + &z.w(-1);
        let a1 = &(&two_cos - &z.int(2)) + &z.int(run.q);
        let d = &z.int(2) - &two_cos;
        if !a1.is_zero() {
            let lit = cleared(s, &a1.scale(&big(run.q)), &d, &d, &a1);
            o.aux("closed form in cos", o.lhs == Quantity::Cyc(lit));
        }
        Ok(o)
    })
}

fn support_diff_real(s: &Subject, p: &Params) -> Result<Outcome> {
    let sigma = sigma_of(p, 2)?;
    let run = support_run(s, p, 1, -1, sigma)?;
    galois(p, sigma, |z| {
        let base = run.outcome(s, z);
        let (Quantity::Cyc(l), Quantity::Cyc(r)) = (&base.lhs, &base.rhs) else {
            unreachable!()
        };
        // twice the cosine sum against twice the (real) right-hand side
        let mut o = Outcome::cyc(l + &l.conj(), r.scale(&big(2))).with_tier(base.tier);
        o.exceptional = base.exceptional.clone();
        o.aux("sine sum vanishes", *l == l.conj());
        Ok(o)
    })
}

fn support_diff_symmetry(s: &Subject, p: &Params) -> Result<Outcome> {
    let sigma = sigma_of(p, 2)?;
    let run = support_run(s, p, 1, -1, sigma)?;
    let k = sigma as i64;
    let lhs = laurent_of((0..k).map(|i| (i, run.census.get(i))));
    let rhs = laurent_of((0..k).map(|i| (i, run.census.get(k - i))));
    Ok(Outcome::new(Quantity::Poly(lhs), Quantity::Poly(rhs)).with_tier(run.census.tier))
}

/// Real parcel combinations for σ = 3, 4, 6: `(a0, a1) = (q, q + 2cos θ − 2)`.
fn support_diff_rational(s: &Subject, p: &Params, sigma: u32) -> Result<Outcome> {
    fixed(p.sigma, sigma, "sigma")?;
    let run = support_run(s, p, 1, -1, sigma)?;
    let q = run.q as i64;
    let m = |k| run.m(k);
    let (lhs, a1, d, pairs): (BigInt, i64, i64, Vec<(i64, i64)>) = match sigma {
        3 => (m(0) - m(1), q - 3, 3, vec![(1, 2)]),
        4 => (m(0) - m(2), q - 2, 2, vec![(1, 3)]),
        _ => (m(0) + m(1) - m(2) - m(3), q - 1, 1, vec![(1, 5), (2, 4)]),
    };
    let rhs = flow_form(s, run.q, &big(q), &big(a1));
    let mut o = Outcome::int(lhs.clone(), rhs).with_tier(run.census.tier);
    for (a, b) in pairs {
        o.aux(format!("|M({a})| = |M({b})|"), m(a) == m(b));
    }
    o.aux(
        "closed form",
        lhs == cleared(s, &big(q * a1), &big(d), &big(d), &big(a1)),
    );
    if sigma == 3 && q == 2 && s.inst.is_binary() {
        let lit = sign((s.n - s.r) as i64) * cleared(s, &big(-2), &big(3), &big(-3), &big(1));
        o.aux("(-1)^(|E|-r) 3^r R(-2/3,-3)", lhs == lit);
    }
    Ok(o)
}

fn support_diff_third(s: &Subject, p: &Params) -> Result<Outcome> {
    support_diff_rational(s, p, 3)
}
fn support_diff_quarter(s: &Subject, p: &Params) -> Result<Outcome> {
    support_diff_rational(s, p, 4)
}
fn support_diff_sixth(s: &Subject, p: &Params) -> Result<Outcome> {
    support_diff_rational(s, p, 6)
}

fn tau_of(p: &Params) -> Result<u32> {
    let sigma = sigma_of(p, 2)?;
    if sigma % 2 == 1 {
        return Err(Error::Params("sigma must be even (sigma = 2 tau)".into()));
    }
    Ok(sigma / 2)
}

fn support_half_turn(s: &Subject, p: &Params) -> Result<Outcome> {
    let tau = tau_of(p)?;
    let run = support_run(s, p, 1, tau as i64 - 1, 2 * tau)?;
    galois(p, 2 * tau, |z| {
        let mut o = run.outcome(s, z);
        let (_, a1) = run.sums(z);
        // 2ι sin θ = w − w⁻¹
        let st = &z.w(1) - &z.w(-1);
        let expected = &(&st + &z.int(2)) - &z.int(run.q);
        o.aux("edge sum is 2i sin + 2 - q", a1 == expected);
        let neg = -&st;
        if !st.is_zero() && !a1.is_zero() {
            let lit = cleared(s, &a1.scale(&big(run.q)), &neg, &neg, &a1);
            o.aux("closed form in sin", o.lhs == Quantity::Cyc(lit));
        }
        Ok(o)
    })
}

fn binary_half_turn(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 2)?;
    let tau = tau_of(&p)?;
    let run = support_run(s, &p, 1, tau as i64 - 1, 2 * tau)?;
    let chi2 = chi(s, 2)?;
    let r_form = sign(s.r as i64) * s.rpoly.eval_int(-2, -1);
    galois(&p, 2 * tau, |z| {
        let mut o = run.outcome(s, z);
        let st = (&z.w(1) - &z.w(-1)).pow(s.n);
        o.aux(
            "(2i sin)^|E| chi(M;2)",
            o.lhs == Quantity::Cyc(st.scale(&chi2)),
        );
        o.aux(
            "(-1)^r (2i sin)^|E| R(-2,-1)",
            o.lhs == Quantity::Cyc(st.scale(&r_form)),
        );
        Ok(o)
    })
}

fn binary_mod4(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 2)?;
    fixed(p.sigma, 4, "sigma")?;
    let run = support_run(s, &p, 1, 1, 4)?;
    let e = s.n as i64;
    let lhs = run.m(e) - run.m(e + 2);
    let chi2 = chi(s, 2)?;
    let mut o = Outcome::int(lhs.clone(), big(2).pow(s.n) * &chi2).with_tier(run.census.tier);
    o.aux("|M(E+1)| = |M(E+3)|", run.m(e + 1) == run.m(e + 3));
    // through the cyclotomic sum: w^(−|E|) Σ w^k |M(k)| must be the integer above
    let z = Zw { sigma: 4, rho: 1 };
    let (a0, a1) = run.sums(z);
    let shifted = &z.w(-e) * &flow_form(s, 2, &a0, &a1);
    o.aux("flow-census form", shifted == z.int(lhs.clone()));
    let affine =
        crate::group_flow::is_binary_affine(&binary_view(&s.inst)?, full_mask(s.n as usize))?;
    o.aux("nonzero exactly when affine", (!lhs.is_zero()) == affine);
    Ok(o)
}

fn setop_sums(z: Zw, op: SetOp, q: u32) -> (CycElem, CycElem) {
    let q = q as i64;
    let w = z.w(1);
    let one = z.int(1);
    let qw = w.scale(&big(q));
    let one_qm1w = &one + &w.scale(&big(q - 1));
    match op {
        SetOp::Union => (one_qm1w, qw),
        SetOp::Intersection => (one_qm1w, &z.int(2) + &w.scale(&big(q - 2))),
        SetOp::SymmetricDifference => (z.int(q), &w.scale(&big(2)) + &z.int(q - 2)),
        SetOp::Sheffer => (&w + &z.int(q - 1), z.int(q)),
        SetOp::Implication => (qw, one_qm1w),
    }
}

fn setop_generic(s: &Subject, p: &Params, op: SetOp) -> Result<Outcome> {
    fixed(p.op, op, "op")?;
    let sigma = sigma_of(p, 2)?;
    let (g, q) = group_q(s, p)?;
    let c = count(s, &g, Family::setop(op, Modulus::Finite(sigma)), p)?;
    galois(p, sigma, |z| {
        let (a0, a1) = setop_sums(z, op, q);
        let lhs = c.root_sum(sigma, z.rho);
        let rhs = flow_form(s, q, &a0, &a1);
        let mut o = with_exception(s, lhs.clone(), &a0, &a1, rhs).with_tier(c.tier);
        let w = z.w(1);
        let qq = big(q);
        let wm1 = &w - &z.int(1);
        let lit = match op {
            SetOp::Union => {
                let d = &z.int(1) - &w;
                Some(cleared(s, &w.scale(&(&qq * &qq)), &d, &d, &w.scale(&qq)))
            }
            SetOp::Sheffer => Some(cleared(s, &z.int(&qq * &qq), &wm1, &wm1, &z.int(q))),
            SetOp::Intersection | SetOp::Implication if !a1.is_zero() => {
                Some(cleared(s, &a1.scale(&qq), &wm1, &wm1, &a1))
            }
            SetOp::SymmetricDifference if !a1.is_zero() => {
                let d = &z.int(2) - &w.scale(&big(2));
                Some(cleared(s, &a1.scale(&qq), &d, &d, &a1))
            }
            _ => None,
        };
        if let Some(lit) = lit {
            o.aux("closed form", lhs == lit);
        }
        Ok(o)
    })
}

fn setop_union(s: &Subject, p: &Params) -> Result<Outcome> {
    setop_generic(s, p, SetOp::Union)
}
fn setop_intersection(s: &Subject, p: &Params) -> Result<Outcome> {
    setop_generic(s, p, SetOp::Intersection)
}
fn setop_symdiff(s: &Subject, p: &Params) -> Result<Outcome> {
    setop_generic(s, p, SetOp::SymmetricDifference)
}
fn setop_sheffer(s: &Subject, p: &Params) -> Result<Outcome> {
    setop_generic(s, p, SetOp::Sheffer)
}
fn setop_implication(s: &Subject, p: &Params) -> Result<Outcome> {
    setop_generic(s, p, SetOp::Implication)
}

fn setop_sign(s: &Subject, p: &Params) -> Result<Outcome> {
    fixed(p.sigma, 2, "sigma")?;
    let op = req(p.op, "op")?;
    let (g, q) = group_q(s, p)?;
    let c = count(s, &g, Family::setop(op, Modulus::Finite(2)), p)?;
    let z = Zw { sigma: 2, rho: 1 };
    let (a0, a1) = setop_sums(z, op, q);
    let lhs = bin(&c, 0) - bin(&c, 1);
    let lhs_c = z.int(lhs.clone());
    let rhs = flow_form(s, q, &a0, &a1);
    let mut o = with_exception(s, lhs_c.clone(), &a0, &a1, rhs).with_tier(c.tier);
    let qi = q as i64;
    let (e, r) = (s.n as i64, s.r as i64);
    let lit = match op {
        SetOp::Union => Some(sign(e + r) * cleared(s, &big(-qi * qi), &big(2), &big(-2), &big(qi))),
        SetOp::Sheffer => Some(sign(r) * cleared(s, &big(-qi * qi), &big(2), &big(-2), &big(qi))),
        SetOp::Intersection if qi != 4 => {
            Some(sign(r) * cleared(s, &big(-qi * (4 - qi)), &big(2), &big(-2), &big(4 - qi)))
        }
        SetOp::SymmetricDifference if qi != 4 => Some(cleared(
            s,
            &big(qi * (qi - 4)),
            &big(4),
            &big(4),
            &big(qi - 4),
        )),
        SetOp::Implication if qi != 2 => {
            Some(sign(e) * cleared(s, &big(qi * (qi - 2)), &big(2), &big(2), &big(qi - 2)))
        }
        _ => None,
    };
    if let Some(lit) = lit {
        o.aux("closed form", lhs == lit);
    }
    Ok(o)
}

fn implication_ternary(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 3)?;
    fixed(p.sigma, 3, "sigma")?;
    let (g, _) = group_q(s, &p)?;
    let c = count(
        s,
        &g,
        Family::setop(SetOp::Implication, Modulus::Finite(3)),
        &p,
    )?;
    galois(&p, 3, |z| {
        let (a0, a1) = setop_sums(z, SetOp::Implication, 3);
        let lhs = c.root_sum(3, z.rho);
        let mut o = Outcome::cyc(lhs.clone(), flow_form(s, 3, &a0, &a1)).with_tier(c.tier);
        // √3^|E| e^{3|E|πι/6} = (1+2w)^|E|, e^{πι/3} = −w², 3e^{−πι/3} = −3w
        let w = z.w(1);
        let mw2 = -&z.w(2);
        let pre = &(&z.int(1) + &w.scale(&big(2))).pow(s.n) * &mw2.pow(s.r);
        let lit = &pre * &s.rpoly.eval(&w.scale(&big(-3)), &mw2);
        o.aux("closed form", lhs == lit);
        Ok(o)
    })
}

fn graph_pairs(s: &Subject, _: &Params) -> Result<Outcome> {
    let g = s.inst.graph().ok_or_else(|| na("needs a graph"))?;
    let side = s.inst.side().expect("graph");
    let mut o = graph_side_outcome(g, side)?;
    let other = graph_side_outcome(g, side.opposite())?;
    o.aux("other side", other.holds());
    Ok(o)
}

fn need_small_graph(s: &Subject, _: &Params) -> Result<()> {
    if s.inst.graph().is_none() {
        return Err(na("needs a graph"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// tuples

/// Per-edge sum for a pair of flow values `(h1, h2)` over triples.
fn triple_weight(z: Zw, g: &Group, q: u32, h1: u32, h2: u32) -> CycElem {
    let q = q as i64;
    let (w, w2, w3) = (z.w(1), z.w(2), z.w(3));
    let mixed = &(&w + &w2) + &w3.scale(&big(q - 2));
    match (h1 == 0, h2 == 0) {
        (true, true) => &z.int(1) + &w3.scale(&big(q - 1)),
        (true, false) | (false, true) => mixed,
        // a + b = 0 merges two of the three exceptional triples
        (false, false) if g.add(h1, h2) == 0 => mixed,
        (false, false) => &w2.scale(&big(3)) + &w3.scale(&big(q - 3)),
    }
}

fn triples(s: &Subject, p: &Params) -> Result<Outcome> {
    let sigma = sigma_of(p, 1)?;
    let (g, q) = group_q(s, p)?;
    let c = count(s, &g, Family::tuple(2, Modulus::Finite(sigma)), p)?;
    let g2 = g.power(2)?;
    galois(p, sigma, |z| {
        let lhs = c.root_sum(sigma, z.rho);
        let rhs = weighted_profile_census(&s.inst, &g2, sigma, |a| {
            let h = g2.split(a, 2, q);
            triple_weight(z, &g, q, h[0], h[1])
        })?;
        Ok(Outcome::cyc(lhs, rhs).with_tier(c.tier))
    })
}

struct BinaryTriples {
    census: Census,
}

fn binary_triples(s: &Subject, p: &Params, sigma: u32) -> Result<BinaryTriples> {
    let p = with_q(p, 2)?;
    let (g, _) = group_q(s, &p)?;
    Ok(BinaryTriples {
        census: count(s, &g, Family::tuple(2, Modulus::Finite(sigma)), &p)?,
    })
}

impl BinaryTriples {
    fn sum(&self, s: &Subject, z: Zw) -> (CycElem, CycElem) {
        let lhs = self.census.root_sum(z.sigma, z.rho);
        let a0 = &z.int(1) + &z.w(3);
        let a1 = &z.w(1) + &z.w(2);
        (lhs, flow_form(s, 4, &a0, &a1))
    }

    fn t(&self, k: i64) -> BigInt {
        bin(&self.census, k)
    }
}

fn binary_triples_general(s: &Subject, p: &Params) -> Result<Outcome> {
    let sigma = sigma_of(p, 3)?;
    let bt = binary_triples(s, p, sigma)?;
    galois(p, sigma, |z| {
        let (lhs, rhs) = bt.sum(s, z);
        let mut o = Outcome::cyc(lhs.clone(), rhs).with_tier(bt.census.tier);
        let w = z.w(1);
        let d = (&w - &z.int(1)).pow(2);
        let lit = &(&z.int(1) + &w).pow(s.n) * &cleared(s, &w.scale(&big(4)), &d, &d, &w);
        o.aux("closed form in cos", lhs == lit);
        Ok(o)
    })
}

fn binary_triples_third(s: &Subject, p: &Params) -> Result<Outcome> {
    fixed(p.sigma, 3, "sigma")?;
    let bt = binary_triples(s, p, 3)?;
    let lhs = big(2) * bt.t(0) - bt.t(1) - bt.t(2);
    let z = Zw { sigma: 3, rho: 1 };
    let (l, f) = bt.sum(s, z);
    let twice_re = &f + &f.conj();
    let rhs = twice_re
        .as_integer()
        .cloned()
        .ok_or_else(|| Error::Internal("real part is not an integer".into()))?;
    let mut o = Outcome::int(lhs.clone(), rhs).with_tier(bt.census.tier);
    o.aux("root sum equals flow-census form", l == f);
    let lit = 2 * sign((s.n - s.r) as i64) * cleared(s, &big(-4), &big(3), &big(-3), &big(1));
    o.aux("closed form", lhs == lit);
    Ok(o)
}

fn binary_triples_quarter(s: &Subject, p: &Params) -> Result<Outcome> {
    fixed(p.sigma, 4, "sigma")?;
    let bt = binary_triples(s, p, 4)?;
    let pre = sign((s.n - s.r) as i64) * big(2).pow(s.r) * s.rpoly.eval_int(-2, -2);
    galois(p, 4, |z| {
        let (lhs, rhs) = bt.sum(s, z);
        let mut o = Outcome::cyc(lhs.clone(), rhs).with_tier(bt.census.tier);
        let lit = (&z.int(1) - &z.w(1)).pow(s.n).scale(&pre);
        o.aux("closed form", lhs == lit);
        Ok(o)
    })
}

fn binary_triples_sixth(s: &Subject, p: &Params) -> Result<Outcome> {
    fixed(p.sigma, 6, "sigma")?;
    let bt = binary_triples(s, p, 6)?;
    let chi4 = chi(s, 4)?;
    let t = |k| bt.t(k);
    let half = big(-3).pow(s.n / 2) * &chi4;
    let lhs = t(0) + t(1) - t(3) - t(4);
    let mut o = Outcome::int(lhs, half.clone()).with_tier(bt.census.tier);
    if s.n % 2 == 0 {
        o.aux(
            "T1 + T2 - T4 - T5 = 0",
            (t(1) + t(2) - t(4) - t(5)).is_zero(),
        );
    } else {
        o.aux(
            "T1 + T2 - T4 - T5 = 2 (-3)^((|E|-1)/2) chi",
            t(1) + t(2) - t(4) - t(5) == 2 * &half,
        );
        o.aux(
            "2 T0 + T1 - T2 - 2 T3 - T4 + T5 = 0",
            (big(2) * t(0) + t(1) - t(2) - big(2) * t(3) - t(4) + t(5)).is_zero(),
        );
    }
    for rho in rhos(p, 6)? {
        let z = Zw { sigma: 6, rho };
        let (l, f) = bt.sum(s, z);
        // ι√3 = 2w − 1
        let lit = (&z.w(1).scale(&big(2)) - &z.int(1)).pow(s.n).scale(&chi4);
        o.aux(format!("rho={rho} root sum"), l == f && l == lit);
    }
    Ok(o)
}

fn nowhere_zero_power(s: &Subject, p: &Params) -> Result<Outcome> {
    let p = with_q(p, 2)?;
    let m = p.m.unwrap_or(2);
    if m < 2 {
        return Err(Error::Params("m must be at least 2".into()));
    }
    let sigma = 2 * m + 2;
    let (g, _) = group_q(s, &p)?;
    let c = count(s, &g, Family::tuple(m as usize, Modulus::Finite(sigma)), &p)?;
    let chi_m = chi(s, 1i64 << m)?;
    let gm = Group::gfp(2, m);
    let mut o = None;
    for rho in rhos(&p, sigma)? {
        let z = Zw { sigma, rho };
        let lhs = c.root_sum(sigma, rho);
        let profile = weighted_profile_census(&s.inst, &gm, sigma, |a| {
            let bits = gm.coords(a);
            if bits.iter().all(|&b| b == 0) {
                return &z.int(1) + &z.w(m as i64 + 1);
            }
            // weight of (a1+…+am, a2+…+am, …, am, 0)
            let mut acc = 0u32;
            let mut wt = 0i64;
            for &b in bits.iter().rev() {
                acc ^= b;
                wt += acc as i64;
            }
            &z.w(wt) + &z.w(m as i64 + 1 - wt)
        })?;
        let here = lhs == profile;
        match o.as_mut() {
            None => {
                let mut first = Outcome::new(
                    Quantity::Flag(!lhs.is_zero()),
                    Quantity::Flag(!chi_m.is_zero()),
                )
                .with_tier(c.tier);
                first.aux(format!("rho={rho} weighted flow sum"), here);
                o = Some(first);
            }
            Some(first) => {
                first.aux(format!("rho={rho} weighted flow sum"), here);
                first.aux(
                    format!("rho={rho} nonzero"),
                    (!lhs.is_zero()) == (!chi_m.is_zero()),
                );
            }
        }
    }
    Ok(o.expect("at least one rho"))
}

// ---------------------------------------------------------------------------
// inner products

fn prime_of(s: &Subject, p: &Params) -> Result<u32> {
    match (s.inst.prime(), p.p) {
        (Some(a), Some(b)) if a != b => Err(na(format!("instance is over GF({a}), not GF({b})"))),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Err(Error::Params("missing parameter p".into())),
    }
}

fn odd_prime(s: &Subject, p: &Params) -> Result<()> {
    let pr = prime_of(s, p)?;
    if pr == 2 || !crate::ground::linalg::is_prime(pr as u64) {
        return Err(na("needs an odd prime"));
    }
    Ok(())
}

fn inner_product(s: &Subject, p: &Params) -> Result<Outcome> {
    let pr = prime_of(s, p)?;
    let c = count(s, &Group::gfp(pr, 1), Family::inner_product(pr), p)?;
    let side = inner_product_flow_side(&s.inst, pr)?;
    galois(p, pr, |z| {
        Ok(Outcome::cyc(c.root_sum(pr, z.rho), side.galois(z.rho)).with_tier(c.tier))
    })
}

fn inner_product_ternary(s: &Subject, p: &Params) -> Result<Outcome> {
    fixed(p.p, 3, "p")?;
    let c = count(s, &Group::gfp(3, 1), Family::inner_product(3), p)?;
    let side = inner_product_flow_side(&s.inst, 3)?;
    galois(p, 3, |z| {
        let lhs = c.root_sum(3, z.rho);
        let w = z.w(1);
        let omega = &z.int(1) + &w.scale(&big(2));
        let a1 = &omega * &z.w(-1);
        let mut o = Outcome::cyc(lhs.clone(), flow_form(s, 3, &omega, &a1)).with_tier(c.tier);
        let wm1 = &w - &z.int(1);
        let lit = &(&omega.pow(s.n) * &z.w(-(s.n as i64))) * &wm1.pow(s.r);
        let lit = &lit * &s.rpoly.eval(&(&z.w(2) - &z.int(1)), &wm1);
        o.aux("closed form", lhs == lit);
        o.aux("quadratic flow sum", lhs == side.galois(z.rho));
        Ok(o)
    })
}

fn ternary(s: &Subject, p: &Params) -> Result<()> {
    need_ternary(s)?;
    if let Some(pr) = p.p {
        if pr != 3 {
            return Err(na("needs p = 3"));
        }
    }
    Ok(())
}

fn inner_product_binary(s: &Subject, p: &Params) -> Result<Outcome> {
    let g = Group::gfp(2, 1);
    let ip = count(s, &g, Family::inner_product(2), p)?;
    let cap = count(
        s,
        &g,
        Family::setop(SetOp::Intersection, Modulus::Finite(2)),
        p,
    )?;
    let mut o = Outcome::new(Quantity::Poly(ip.laurent()), Quantity::Poly(cap.laurent()))
        .with_tier(ip.tier);
    let diff = bin(&ip, 0) - bin(&ip, 1);
    let two_e = big(2).pow(s.n);
    o.aux("2^|E| chi(M;2)", diff == &two_e * chi(s, 2)?);
    o.aux(
        "(-1)^r 2^|E| R(-2,-1)",
        diff == sign(s.r as i64) * two_e * s.rpoly.eval_int(-2, -1),
    );
    Ok(o)
}

fn binary_only(s: &Subject, p: &Params) -> Result<()> {
    need_binary(s)?;
    if p.p.is_some_and(|x| x != 2) {
        return Err(na("needs p = 2"));
    }
    Ok(())
}

fn gauss_norm(p: &Params) -> Result<Outcome> {
    let pr = req(p.p, "p")?;
    let om = gauss_sum(pr)?;
    let mut o = Outcome::cyc(&om * &om.conj(), CycElem::from_int(pr, pr));
    // Legendre-symbol form
    let mut legendre = CycElem::zero(pr);
    for a in 1..pr as i64 {
        let l = if (1..pr as i64).any(|b| b * b % pr as i64 == a) {
            1
        } else {
            -1
        };
        legendre = &legendre + &CycElem::omega_pow(pr, a).scale(&big(l));
    }
    o.aux("Legendre-symbol sum", om == legendre);
    Ok(o)
}

fn bicycle(s: &Subject, _: &Params) -> Result<Outcome> {
    let pr = s.inst.prime().ok_or_else(|| na("needs a GF(p) matrix"))?;
    let sum = quadratic_flow_sum(&s.inst)?;
    let d = bicycle_dimension(&s.inst)? as u32;
    Ok(Outcome::cyc(
        &sum * &sum.conj(),
        CycElem::from_int(pr, big(pr).pow(s.r + d)),
    ))
}

fn gfp_odd(s: &Subject, _: &Params) -> Result<()> {
    match s.inst.prime() {
        Some(p) if p != 2 => Ok(()),
        _ => Err(na("needs a matrix over GF(p), p odd")),
    }
}

// ---------------------------------------------------------------------------
// enumerators

fn x_var() -> LaurentPoly {
    LaurentPoly::var()
}

fn support_diff_enum(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let c = count(s, &g, Family::support(1, -1, Modulus::Infinite), p)?;
    let lhs = c.laurent();
    let d = LaurentPoly::from_coeffs(&[]);
    let d =
        &(&(&d + &x_var()) + &LaurentPoly::monomial(-1, BigInt::one())) - &LaurentPoly::constant(2);
    let a1 = &d + &LaurentPoly::constant(q);
    let a0 = LaurentPoly::constant(q);
    let rhs = flow_form(s, q, &a0, &a1);
    let mut o = Outcome::new(Quantity::Poly(lhs.clone()), Quantity::Poly(rhs)).with_tier(c.tier);
    let neg = -&d;
    let lit = cleared(s, &a1.ring_scale(&big(q)), &neg, &neg, &a1);
    o.aux("closed form", lhs == lit);
    Ok(o)
}

fn transformed(inst: &Instance) -> Instance {
    let n = inst.ground_size();
    let perm: Vec<usize> = (0..n).rev().collect();
    let mut t = inst.permute_columns(&perm);
    for j in (0..n).step_by(2) {
        t = t.flip_column(j);
    }
    t
}

fn enumerator_invariance(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let t = transformed(&s.inst);
    let fam = Family::support(1, -1, Modulus::Infinite);
    let a = census(&t, &g, &fam, tier_of(p))?;
    let b = count(s, &g, fam, p)?;
    let mut o =
        Outcome::new(Quantity::Poly(a.laurent()), Quantity::Poly(b.laurent())).with_tier(b.tier);
    // R, and hence the enumerator, only sees the matroid
    let rt = rank_gen_poly(&Matroid::from_instance(&t))?;
    o.aux("rank generating polynomial unchanged", rt == s.rpoly);
    let ha = census(&t, &g, &Family::hamming(Modulus::Infinite), tier_of(p))?;
    let hb = count(s, &g, Family::hamming(Modulus::Infinite), p)?;
    o.aux("Hamming census unchanged", ha.same_counts(&hb));
    let _ = q;
    Ok(o)
}

fn flow_weights(s: &Subject, p: &Params) -> Result<Outcome> {
    let (g, q) = group_q(s, p)?;
    let sigma = sigma_of(p, 2)?;
    let c = flow_weight_census(&s.inst, &g, Modulus::Finite(sigma), tier_of(p))?;
    let mut o = galois(p, sigma, |z| {
        let lhs = c.root_sum(sigma, z.rho);
        let w = z.w(1);
        let rhs = flow_form(s, q, &z.int(1), &w);
        let mut o = Outcome::cyc(lhs.clone(), rhs).with_tier(c.tier);
        let d = &z.int(1) - &w;
        o.aux(
            "closed form",
            lhs == cleared(s, &w.scale(&big(q)), &d, &d, &w),
        );
        Ok(o)
    })?;
    let wc = flow_weight_census(&s.inst, &g, Modulus::Infinite, tier_of(p))?.laurent();
    let x = x_var();
    let one = LaurentPoly::constant(1);
    let one_minus = &one - &x;
    o.aux(
        "enumerator: flow-census form",
        wc == flow_form(s, q, &one, &x),
    );
    o.aux(
        "enumerator: closed form",
        wc == cleared(s, &x.ring_scale(&big(q)), &one_minus, &one_minus, &x),
    );
    Ok(o)
}

// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn inst(
    id: &'static str,
    summary: &'static str,
    params: &'static [&'static str],
    pre: Pre,
    run: Run,
    grid: fn(&Subject) -> Vec<Params>,
    work: Work,
) -> TheoremCheck {
    TheoremCheck {
        id,
        summary,
        params,
        scope: Scope::Instance,
        runner: Runner::Instance { pre, run, grid },
        work,
    }
}

fn small(limit: u32) -> impl Fn(&Subject) -> bool {
    move |s| s.n <= limit
}

fn build() -> Vec<TheoremCheck> {
    use Work::*;
    let setop_grid: fn(&Subject) -> Vec<Params> = |_| sq(&[2, 3, 4, 5, 6, 8, 12], &Q4);
    vec![
        inst(
            "lemma1.3",
            "kernels of flows are flats; minimal supports are cocircuits",
            &["q"],
            need_group,
            kernels_are_flats,
            |_| qs(&[2, 3, 4]),
            Flows(1),
        ),
        inst(
            "lemma1.4",
            "three GF(2)-affine criteria agree on every subset",
            &[],
            |s, _| {
                need_binary(s)?;
                if small(10)(s) {
                    Ok(())
                } else {
                    Err(na("more than 10 elements"))
                }
            },
            affine_criteria,
            |_| one(),
            Subsets,
        ),
        inst(
            "lemma1.5",
            "binary flows of a graph are even subgraphs, binary tensions are cut unions",
            &[],
            need_small_graph,
            graph_binary_supports,
            |_| one(),
            Subsets,
        ),
        inst(
            "eq1",
            "characteristic polynomial from R, and R under duality",
            &[],
            any,
            char_from_rank,
            |_| one(),
            Light,
        ),
        inst(
            "lemma2.1",
            "sum over flats of chi(M/U) x^|U| against (x-1)^r R(q/(x-1), x-1)",
            &["q"],
            |_, p| req(p.q, "q").map(|_| ()),
            convolution,
            |_| qs(&Q4),
            Light,
        ),
        inst(
            "lemma2.2",
            "flows counted by kernel size against the rank generating polynomial",
            &["q"],
            need_group,
            flow_census,
            |_| qs(&Q4),
            Flows(1),
        ),
        inst(
            "lemma2.4",
            "pairwise censuses by brute force against the flow-factored count",
            &["q", "sigma"],
            need_group,
            tier_agreement,
            |_| sq(&[3], &[2, 3]),
            Brute,
        ),
        inst(
            "prop2.5",
            "parity parcels: |P(1)| - |P(-1)| = q^(|E|-r) chi(M;q)",
            &["q"],
            odd_q,
            parity_parcels,
            |_| qs(&[3, 5]),
            Flows(1),
        ),
        inst(
            "thm3.1",
            "Hamming-distance parcels",
            &["sigma", "q"],
            need_group,
            hamming,
            |_| sq(&[2, 3, 4, 6], &[2, 3, 4]),
            Flows(1),
        ),
        inst(
            "cor3.2",
            "Hamming-distance parcels, sigma = 2",
            &["q"],
            need_group,
            hamming_sign,
            |_| qs(&[2, 3, 4, 5]),
            Flows(1),
        ),
        inst(
            "thm3.3",
            "Hamming-distance parcels of nowhere-zero pairs",
            &["sigma", "q"],
            need_group,
            hamming_nonzero,
            |_| sq(&[1, 2, 3, 4, 6], &Q4),
            Flows(1),
        ),
        inst(
            "cor3.4",
            "number of nowhere-zero pairs with flow difference",
            &["q"],
            group_not_q_2,
            nowhere_zero_pairs,
            |_| qs(&[3, 4, 5]),
            Flows(1),
        ),
        inst(
            "cor3.5",
            "nowhere-zero pairs by parity of Hamming distance",
            &["q"],
            group_not_q_2,
            nowhere_zero_sign,
            |_| qs(&[3, 4, 5]),
            Flows(1),
        ),
        inst(
            "cor3.6",
            "nowhere-zero GF(3) pairs, sigma = 6",
            &[],
            ternary_q3,
            nowhere_zero_sixth,
            |_| one(),
            Flows(1),
        ),
        inst(
            "thm4.1",
            "weighted support-size parcels alpha|supp f| + beta|supp g|",
            &["sigma", "q", "alpha", "beta"],
            alpha_beta_nonzero,
            support_general,
            |_| {
                let mut out = Vec::new();
                for sigma in [2u32, 3, 4, 5, 6, 8, 12] {
                    for (a, b) in [(1, 1), (1, -1), (1, 2), (2, 3), (3, -2)] {
                        for q in Q4 {
                            out.push(Params::default().sigma(sigma).q(q).alpha_beta(a, b));
                        }
                    }
                }
                out
            },
            Flows(1),
        ),
        inst(
            "thm4.2",
            "support-sum parcels |supp f| + |supp g|",
            &["sigma", "q"],
            need_group,
            support_sum,
            |_| sq(&SIGMA_12, &Q4),
            Flows(1),
        ),
        inst(
            "cor4.3",
            "support-sum parcels, sigma = 2",
            &["q"],
            group_not_q_4,
            support_sum_sign,
            |_| qs(&[2, 3, 5]),
            Flows(1),
        ),
        inst(
            "cor4.4",
            "binary support-sum parcels, any sigma",
            &["sigma"],
            binary_q2,
            binary_support_sum,
            |_| sigmas(&SIGMA_12),
            Flows(1),
        ),
        inst(
            "cor4.5",
            "binary support-sum parcels, sigma = 3, 4, 6",
            &["sigma"],
            binary_q2,
            binary_support_sum_small,
            |_| sigmas(&[3, 4, 6]),
            Flows(1),
        ),
        inst(
            "cor4.6",
            "ternary support-sum parcels, sigma = 3",
            &[],
            ternary_q3,
            ternary_support_sum,
            |_| one(),
            Flows(1),
        ),
        inst(
            "thm4.7",
            "support-difference parcels |supp f| - |supp g|",
            &["sigma", "q"],
            need_group,
            support_diff,
            |_| sq(&SIGMA_12, &Q4),
            Flows(1),
        ),
        inst(
            "cor4.8",
            "support-difference parcels: cosine sum and vanishing sine sum",
            &["sigma", "q"],
            need_group,
            support_diff_real,
            |_| sq(&SIGMA_12, &Q4),
            Flows(1),
        ),
        inst(
            "prop4.9",
            "support-difference parcels are symmetric under k -> sigma - k",
            &["sigma", "q"],
            need_group,
            support_diff_symmetry,
            |_| sq(&SIGMA_12, &[2, 3, 4]),
            Flows(1),
        ),
        inst(
            "cor4.10",
            "support-difference parcels, sigma = 3",
            &["q"],
            group_not_q_3,
            support_diff_third,
            |_| qs(&[2, 4, 5]),
            Flows(1),
        ),
        inst(
            "cor4.11",
            "support-difference parcels, sigma = 4",
            &["q"],
            group_not_q_2,
            support_diff_quarter,
            |_| qs(&[3, 4, 5]),
            Flows(1),
        ),
        inst(
            "cor4.12",
            "support-difference parcels, sigma = 6",
            &["q"],
            need_group,
            support_diff_sixth,
            |_| qs(&Q4),
            Flows(1),
        ),
        inst(
            "thm4.13",
            "parcels |supp f| + (tau-1)|supp g| mod 2 tau",
            &["sigma", "q"],
            need_group,
            support_half_turn,
            |_| sq(&[2, 4, 6, 8, 10, 12], &Q4),
            Flows(1),
        ),
        inst(
            "cor4.14",
            "binary parcels |A| + (tau-1)|B| mod 2 tau",
            &["sigma"],
            binary_q2,
            binary_half_turn,
            |_| sigmas(&[2, 4, 6, 8, 10, 12]),
            Flows(1),
        ),
        inst(
            "cor4.15",
            "binary support-sum parcels mod 4 shifted by |E|",
            &[],
            binary_q2,
            binary_mod4,
            |_| one(),
            Flows(1),
        ),
        inst(
            "thm4.16a",
            "union parcels",
            &["sigma", "q"],
            need_group,
            setop_union,
            setop_grid,
            Flows(1),
        ),
        inst(
            "thm4.16b",
            "intersection parcels",
            &["sigma", "q"],
            need_group,
            setop_intersection,
            setop_grid,
            Flows(1),
        ),
        inst(
            "thm4.16c",
            "symmetric-difference parcels",
            &["sigma", "q"],
            need_group,
            setop_symdiff,
            setop_grid,
            Flows(1),
        ),
        inst(
            "thm4.16d",
            "Sheffer-stroke parcels",
            &["sigma", "q"],
            need_group,
            setop_sheffer,
            setop_grid,
            Flows(1),
        ),
        inst(
            "thm4.16e",
            "implication parcels",
            &["sigma", "q"],
            need_group,
            setop_implication,
            setop_grid,
            Flows(1),
        ),
        inst(
            "cor4.17",
            "set-operation parcels, sigma = 2",
            &["op", "q"],
            need_group,
            setop_sign,
            |_| {
                let mut out = Vec::new();
                for op in SetOp::ALL {
                    for q in Q4 {
                        out.push(Params::default().op(op).q(q));
                    }
                }
                out
            },
            Flows(1),
        ),
        inst(
            "cor4.18",
            "ternary implication parcels, sigma = 3",
            &[],
            ternary_q3,
            implication_ternary,
            |_| one(),
            Flows(1),
        ),
        inst(
            "thm1.1",
            "graph subset pairs differing by cut unions or cycle unions, mod 4",
            &[],
            need_small_graph,
            graph_pairs,
            |_| one(),
            SubsetPairs,
        ),
        inst(
            "thm5.1",
            "support-sum parcels of triples",
            &["sigma", "q"],
            need_group,
            triples,
            |_| sq(&[1, 2, 3, 4, 6], &Q4),
            Flows(2),
        ),
        inst(
            "thm5.2",
            "binary triples, any sigma >= 3",
            &["sigma"],
            binary_q2,
            binary_triples_general,
            |_| sigmas(&[3, 4, 5, 6, 8, 12]),
            BinaryPower,
        ),
        inst(
            "cor5.3",
            "binary triples, sigma = 3",
            &[],
            binary_q2,
            binary_triples_third,
            |_| one(),
            BinaryPower,
        ),
        inst(
            "cor5.4",
            "binary triples, sigma = 4",
            &[],
            binary_q2,
            binary_triples_quarter,
            |_| one(),
            BinaryPower,
        ),
        inst(
            "cor5.5",
            "binary triples, sigma = 6, and chi(M;4)",
            &[],
            binary_q2,
            binary_triples_sixth,
            |_| one(),
            BinaryPower,
        ),
        inst(
            "thm5.6",
            "binary (m+1)-tuples mod 2m+2: nonzero exactly when chi(M;2^m) is",
            &["m"],
            binary_q2,
            nowhere_zero_power,
            |_| vec![Params::default().m(2), Params::default().m(3)],
            BinaryPower,
        ),
        inst(
            "thm6.1",
            "inner-product parcels over GF(p)",
            &["p"],
            odd_prime,
            inner_product,
            |s| match s.inst.prime() {
                Some(p) => vec![Params::default().p(p)],
                None => vec![Params::default().p(3), Params::default().p(5)],
            },
            Flows(1),
        ),
        inst(
            "cor6.2",
            "inner-product parcels over GF(3)",
            &[],
            ternary,
            inner_product_ternary,
            |_| one(),
            Flows(1),
        ),
        inst(
            "rem6.p2",
            "inner-product parcels over GF(2) are the intersection parcels",
            &[],
            binary_only,
            inner_product_binary,
            |_| one(),
            Flows(1),
        ),
        TheoremCheck {
            id: "gauss",
            summary: "the quadratic Gauss sum has norm p",
            params: &["p"],
            scope: Scope::Global,
            runner: Runner::Global {
                run: gauss_norm,
                grid: || {
                    [3u32, 5, 7, 11, 13]
                        .iter()
                        .map(|&p| Params::default().p(p))
                        .collect()
                },
            },
            work: Light,
        },
        inst(
            "bicycle",
            "|sum over flows of w^<h,h>|^2 = p^(r+d)",
            &[],
            gfp_odd,
            bicycle,
            |_| one(),
            Flows(1),
        ),
        inst(
            "thm7.1",
            "support-difference enumerator as a Laurent polynomial",
            &["q"],
            need_group,
            support_diff_enum,
            |_| qs(&Q4),
            Flows(1),
        ),
        inst(
            "cor7.2",
            "enumerators are unchanged by reordering and re-signing columns",
            &["q"],
            need_group,
            enumerator_invariance,
            |_| qs(&[2, 3, 4]),
            Flows(1),
        ),
        inst(
            "thm7.3",
            "flows by support size: root sums and the weight enumerator",
            &["sigma", "q"],
            need_group,
            flow_weights,
            |_| sq(&[2, 3, 4, 6], &Q4),
            Flows(1),
        ),
    ]
}

fn group_not_q_2(s: &Subject, p: &Params) -> Result<()> {
    group_not_q(2)(s, p)
}
fn group_not_q_3(s: &Subject, p: &Params) -> Result<()> {
    group_not_q(3)(s, p)
}
fn group_not_q_4(s: &Subject, p: &Params) -> Result<()> {
    group_not_q(4)(s, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::builtin;

    const EXPECTED: [&str; 51] = [
        "lemma1.3", "lemma1.4", "lemma1.5", "eq1", "lemma2.1", "lemma2.2", "lemma2.4", "prop2.5",
        "thm3.1", "cor3.2", "thm3.3", "cor3.4", "cor3.5", "cor3.6", "thm4.1", "thm4.2", "cor4.3",
        "cor4.4", "cor4.5", "cor4.6", "thm4.7", "cor4.8", "prop4.9", "cor4.10", "cor4.11",
        "cor4.12", "thm4.13", "cor4.14", "cor4.15", "thm4.16a", "thm4.16b", "thm4.16c", "thm4.16d",
        "thm4.16e", "cor4.17", "cor4.18", "thm1.1", "thm5.1", "thm5.2", "cor5.3", "cor5.4",
        "cor5.5", "thm5.6", "thm6.1", "cor6.2", "rem6.p2", "gauss", "bicycle", "thm7.1", "cor7.2",
        "thm7.3",
    ];

    #[test]
    fn registry_is_complete() {
        let ids: BTreeSet<&str> = registry().iter().map(|c| c.id).collect();
        let want: BTreeSet<&str> = EXPECTED.iter().copied().collect();
        assert_eq!(ids, want);
        assert_eq!(ids.len(), registry().len(), "duplicate ids");
    }

    fn run(id: &str, inst: &str, p: Params) -> Outcome {
        let s = Subject::new(builtin(inst).unwrap()).unwrap();
        find(id).unwrap().run_on(Some(&s), &p).unwrap()
    }

    #[test]
    fn hamming_triangle_q2() {
        let o = run("thm3.1", "triangle-cycle", Params::default().sigma(2).q(2));
        assert!(o.holds());
        assert_eq!(o.lhs, Quantity::Cyc(CycElem::from_int(2, 0)));
    }

    #[test]
    fn nowhere_zero_triangle_q3() {
        let o = run("cor3.4", "triangle-cycle", Params::default().q(3));
        assert!(o.holds());
        assert_eq!(o.lhs, Quantity::Int(big(10)));
    }

    #[test]
    fn exceptional_support_sum() {
        let o = run("thm4.2", "k4-vertex", Params::default().sigma(2).q(4));
        assert!(o.exceptional.is_some());
        assert_eq!(o.lhs, Quantity::Cyc(CycElem::from_int(2, big(4).pow(6))));
        assert!(o.holds());
        for (sigma, q, c) in [(2u32, 4u32, 4u32), (3, 3, 3), (4, 2, 2)] {
            let o = run(
                "thm4.7",
                "triangle-cycle",
                Params::default().sigma(sigma).q(q),
            );
            assert!(o.exceptional.is_some(), "sigma {sigma} q {q}");
            assert_eq!(
                o.rhs,
                Quantity::Cyc(CycElem::from_int(sigma, big(c).pow(3)))
            );
            assert!(o.holds());
        }
    }

    #[test]
    fn fixed_params_are_enforced() {
        let s = Subject::new(builtin("triangle-cycle").unwrap()).unwrap();
        let c = find("cor3.2").unwrap();
        assert!(c
            .run_on(Some(&s), &Params::default().sigma(3).q(2))
            .is_err());
        let c = find("cor4.3").unwrap();
        assert!(matches!(
            c.run_on(Some(&s), &Params::default().q(4)),
            Err(Error::NotApplicable(_))
        ));
    }
}
