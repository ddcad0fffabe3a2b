use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Minimal commutative ring interface used to evaluate polynomials in
/// integers, cyclotomic integers and Laurent polynomials alike.
pub trait Ring: Clone {
    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_scale(&self, k: &BigInt) -> Self;

    fn ring_pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.ring_mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.ring_mul(&base);
            }
        }
        acc
    }

    /// `self^0, …, self^n`.
    fn ring_powers(&self, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.ring_one());
        for i in 0..n {
            let next = out[i].ring_mul(self);
            out.push(next);
        }
        out
    }
}

impl Ring for BigInt {
    fn ring_zero(&self) -> Self {
        BigInt::zero()
    }
    fn ring_one(&self) -> Self {
        BigInt::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, k: &BigInt) -> Self {
        self * k
    }
}

fn insert_term<K: Ord>(map: &mut BTreeMap<K, BigInt>, k: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(k);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// Polynomial in two variables `λ` and `x` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(l: u32, x: u32, c: BigInt) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(l, x, c);
        p
    }

    pub fn add_term(&mut self, l: u32, x: u32, c: BigInt) {
        insert_term(&mut self.terms, (l, x), c);
    }

    pub fn coeff(&self, l: u32, x: u32) -> BigInt {
        self.terms.get(&(l, x)).cloned().unwrap_or_default()
    }

    /// Terms `((λ-exp, x-exp), coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exchange the roles of the two variables.
    pub fn swap(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(l, x), c) in &self.terms {
            out.add_term(x, l, c.clone());
        }
        out
    }

    /// Substitute `λ ↦ λ + a`, `x ↦ x + b`.
    pub fn shift(&self, a: i64, b: i64) -> BiPoly {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let bi = binomial_row(i);
            let bj = binomial_row(j);
            for (s, cs) in bi.iter().enumerate() {
                let fa = cs * num_traits::pow(a.clone(), i as usize - s);
                for (t, ct) in bj.iter().enumerate() {
                    let fb = ct * num_traits::pow(b.clone(), j as usize - t);
                    out.add_term(s as u32, t as u32, c * &fa * fb);
                }
            }
        }
        out
    }

    pub fn eval<T: Ring>(&self, l: &T, x: &T) -> T {
        let max_l = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_x = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let lp = l.ring_powers(max_l);
        let xp = x.ring_powers(max_x);
        let mut acc = l.ring_zero();
        for (&(i, j), c) in &self.terms {
            acc = acc.ring_add(&lp[i as usize].ring_mul(&xp[j as usize]).ring_scale(c));
        }
        acc
    }

    pub fn eval_int(&self, l: i64, x: i64) -> BigInt {
        self.eval(&BigInt::from(l), &BigInt::from(x))
    }

    /// `Σ c_ij λn^i λd^(r−i) xn^j xd^(n−r−j)`: the value at
    /// `(λn/λd, xn/xd)` with the denominators cleared by `λd^r xd^(n−r)`.
    /// Needs every λ-degree ≤ `r` and x-degree ≤ `n − r`.
    pub fn eval_cleared<T: Ring>(&self, r: u32, n: u32, ln: &T, ld: &T, xn: &T, xd: &T) -> T {
        let lnp = ln.ring_powers(r as usize);
        let ldp = ld.ring_powers(r as usize);
        let xnp = xn.ring_powers((n - r) as usize);
        let xdp = xd.ring_powers((n - r) as usize);
        let mut acc = ln.ring_zero();
        for (&(i, j), c) in &self.terms {
            let t = lnp[i as usize]
                .ring_mul(&ldp[(r - i) as usize])
                .ring_mul(&xnp[j as usize])
                .ring_mul(&xdp[(n - r - j) as usize])
                .ring_scale(c);
            acc = acc.ring_add(&t);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|(&(l, x), c)| json!({"l": l, "x": x, "c": c.to_string()})).collect::<Vec<_>>()
        })
    }

    pub fn from_json(v: &Value) -> Result<BiPoly> {
        let bad = |m: &str| Error::Parse(format!("polynomial: {m}"));
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut p = BiPoly::zero();
        for t in terms {
            let l = t
                .get("l")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("bad l"))?;
            let x = t
                .get("x")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("bad x"))?;
            let c: BigInt = t
                .get("c")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad c"))?;
            p.add_term(l as u32, x as u32, c);
        }
        Ok(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(l, x), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let mut parts = Vec::new();
            if !a.is_one() || (l == 0 && x == 0) {
                parts.push(a.to_string());
            }
            for (name, e) in [("l", l), ("x", x)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Laurent polynomial in one variable; `UniPoly` is the special case with
/// nonnegative exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(0, c.into())
    }

    pub fn monomial(k: i64, c: BigInt) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(k, c);
        p
    }

    /// The variable `X`.
    pub fn var() -> Self {
        LaurentPoly::monomial(1, BigInt::one())
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(k as i64, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: BigInt) {
        insert_term(&mut self.terms, k, c);
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval_int(&self, x: i64) -> Option<BigInt> {
        let xb = BigInt::from(x);
        let mut acc = BigInt::zero();
        for (&k, c) in &self.terms {
            if k < 0 {
                return None;
            }
            acc += c * num_traits::pow(xb.clone(), k as usize);
        }
        Some(acc)
    }

    /// `X ↦ X⁻¹`.
    pub fn reflect(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Dense coefficients from degree 0 when every exponent is nonnegative.
    pub fn dense(&self) -> Option<Vec<BigInt>> {
        if self.min_degree().is_some_and(|k| k < 0) {
            return None;
        }
        let n = self.degree().map_or(0, |d| d + 1) as usize;
        let mut out = vec![BigInt::zero(); n];
        for (&k, c) in &self.terms {
            out[k as usize] = c.clone();
        }
        Some(out)
    }

    /// Exact division by a monic-up-to-sign divisor; `None` if it leaves a
    /// remainder or the divisor's leading coefficient does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let dd = d.degree()?;
        let lead = d.coeff(dd);
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero();
        let dmin = d.min_degree()?;
        while let Some(rd) = rem.degree() {
            if rd - dd < rem.min_degree()? - dmin {
                return None;
            }
            let c = rem.coeff(rd);
            if !(&c % &lead).is_zero() {
                return None;
            }
            let t = LaurentPoly::monomial(rd - dd, c / &lead);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Some(quo)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|(&k, c)| json!({"x": k, "c": c.to_string()})).collect::<Vec<_>>()
        })
    }
}

pub type UniPoly = LaurentPoly;

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Ring for LaurentPoly {
    fn ring_zero(&self) -> Self {
        LaurentPoly::zero()
    }
    fn ring_one(&self) -> Self {
        LaurentPoly::constant(1)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, k: &BigInt) -> Self {
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, c * k);
        }
        out
    }
}
