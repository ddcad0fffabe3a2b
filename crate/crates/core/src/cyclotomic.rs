//! Exact arithmetic in `Z[ω]`, `ω` a primitive σ-th root of unity.
//!
//! Elements are stored in the power basis `1, ω, …, ω^(φ(σ)−1)` modulo the
//! cyclotomic polynomial `Φ_σ`, so equality is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Ring, UniPoly};

/// `Φ_σ(x)`, by dividing `x^σ − 1` by `Φ_d` for the proper divisors `d`.
pub fn cyclotomic_poly(sigma: u32) -> UniPoly {
    assert!(sigma >= 1, "cyclotomic order must be positive");
    let mut p = LaurentPoly::monomial(sigma as i64, BigInt::one());
    p.add_term(0, BigInt::from(-1));
    for d in 1..sigma {
        if sigma % d == 0 {
            p = p
                .div_exact(&cyclotomic_poly(d))
                .expect("Φ_d divides x^σ − 1");
        }
    }
    p
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u32
}

/// Units of `Z/σ`: the exponents ρ for which `ω^ρ` is again primitive.
pub fn coprime_residues(sigma: u32) -> Vec<u32> {
    (1..=sigma.max(1))
        .filter(|&k| k.gcd(&sigma) == 1)
        .map(|k| k % sigma.max(1))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

#[derive(Debug)]
pub struct CycRing {
    sigma: u32,
    phi: usize,
    /// `x^k mod Φ_σ` for `0 ≤ k < σ`, each of length `phi`.
    powers: Vec<Vec<BigInt>>,
}

fn ring(sigma: u32) -> Arc<CycRing> {
    static RINGS: OnceLock<Mutex<HashMap<u32, Arc<CycRing>>>> = OnceLock::new();
    let rings = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = rings.lock().expect("ring cache poisoned");
    map.entry(sigma)
        .or_insert_with(|| {
            let phi_poly = cyclotomic_poly(sigma).dense().expect("polynomial");
            let phi = phi_poly.len() - 1;
            // x^phi = −Σ_{k<phi} c_k x^k  (Φ is monic)
            let mut powers = Vec::with_capacity(sigma as usize);
            let mut cur = vec![BigInt::zero(); phi];
            cur[0] = BigInt::one();
            for _ in 0..sigma {
                powers.push(cur.clone());
                let top = cur[phi - 1].clone();
                let mut next = vec![BigInt::zero(); phi];
                for k in (1..phi).rev() {
                    next[k] = cur[k - 1].clone();
                }
                if !top.is_zero() {
                    for (k, c) in phi_poly[..phi].iter().enumerate() {
                        next[k] -= &top * c;
                    }
                }
                cur = next;
            }
            Arc::new(CycRing { sigma, phi, powers })
        })
        .clone()
}

#[derive(Clone)]
pub struct CycElem {
    ring: Arc<CycRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring.sigma == other.ring.sigma && self.coeffs == other.coeffs
    }
}

impl Eq for CycElem {}

impl std::hash::Hash for CycElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.sigma.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem[σ={}]({})", self.ring.sigma, self)
    }
}

impl CycElem {
    pub fn zero(sigma: u32) -> Self {
        let ring = ring(sigma);
        CycElem {
            coeffs: vec![BigInt::zero(); ring.phi],
            ring,
        }
    }

    pub fn from_int(sigma: u32, n: impl Into<BigInt>) -> Self {
        let mut z = CycElem::zero(sigma);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(sigma: u32) -> Self {
        CycElem::from_int(sigma, 1)
    }

    /// `ω^k` for any integer `k`.
    pub fn omega_pow(sigma: u32, k: i64) -> Self {
        let ring = ring(sigma);
        let idx = k.rem_euclid(sigma as i64) as usize;
        CycElem {
            coeffs: ring.powers[idx].clone(),
            ring,
        }
    }

    pub fn omega(sigma: u32) -> Self {
        CycElem::omega_pow(sigma, 1)
    }

    /// `Σ c_k ω^k` for an arbitrary-length coefficient list.
    pub fn from_circulant(sigma: u32, coeffs: &[BigInt]) -> Self {
        let ring = ring(sigma);
        let mut out = vec![BigInt::zero(); ring.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&ring.powers[k % sigma as usize]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        CycElem { ring, coeffs: out }
    }

    pub fn from_coeffs(sigma: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        let ring = ring(sigma);
        if coeffs.len() != ring.phi {
            return Err(Error::Params(format!(
                "expected {} coefficients for σ={sigma}, got {}",
                ring.phi,
                coeffs.len()
            )));
        }
        Ok(CycElem { ring, coeffs })
    }

    pub fn sigma(&self) -> u32 {
        self.ring.sigma
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &CycElem) -> Result<()> {
        if self.ring.sigma != other.ring.sigma {
            Err(Error::SigmaMismatch(self.ring.sigma, other.ring.sigma))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        Ok(CycElem {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &CycElem) -> Result<CycElem> {
        self.check(other)?;
        let phi = self.ring.phi;
        let mut wide = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut out = vec![BigInt::zero(); phi];
        for (k, c) in wide.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                out[k] += c;
            } else {
                for (o, p) in out
                    .iter_mut()
                    .zip(&self.ring.powers[k % self.ring.sigma as usize])
                {
                    if !p.is_zero() {
                        *o += &c * p;
                    }
                }
            }
        }
        Ok(CycElem {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    pub fn scale(&self, k: &BigInt) -> CycElem {
        CycElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> CycElem {
        self.ring_pow(e)
    }

    /// Integer power; a negative exponent is accepted for `±ω^j`, the
    /// only units of this form the library ever inverts.
    pub fn pow_i(&self, e: i64) -> Result<CycElem> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let inv = self
            .root_of_unity_inverse()
            .ok_or_else(|| Error::Params(format!("{self} has no inverse of the form ±ω^j")))?;
        Ok(inv.pow((-e) as u32))
    }

    fn root_of_unity_inverse(&self) -> Option<CycElem> {
        let sigma = self.ring.sigma;
        for j in 0..sigma as i64 {
            let w = CycElem::omega_pow(sigma, j);
            if &w == self {
                return Some(CycElem::omega_pow(sigma, -j));
            }
            if -&w == *self {
                return Some(-&CycElem::omega_pow(sigma, -j));
            }
        }
        None
    }

    /// Image under the ring automorphism `ω ↦ ω^ρ`.
    pub fn galois(&self, rho: i64) -> CycElem {
        let sigma = self.ring.sigma;
        let mut out = CycElem::zero(sigma);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = CycElem::omega_pow(sigma, k as i64 * rho);
            for (o, p) in out.coeffs.iter_mut().zip(&w.coeffs) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        out
    }

    /// Complex conjugate, `ω ↦ ω^(σ−1)`.
    pub fn conj(&self) -> CycElem {
        self.galois(-1)
    }

    pub fn galois_conjugates(&self) -> Vec<CycElem> {
        coprime_residues(self.ring.sigma)
            .into_iter()
            .map(|r| self.galois(r as i64))
            .collect()
    }

    /// Numerical value with `ω = e^(2πiρ/σ)`. Diagnostics only.
    pub fn embed_complex(&self, rho: i64) -> Complex64 {
        let sigma = self.ring.sigma as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * (rho as f64) * (k as f64) / sigma;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sigma": self.ring.sigma,
            "coeffs": self.coeffs.iter().map(|c| {
                c.to_i64().map_or_else(|| Value::String(c.to_string()), Value::from)
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<CycElem> {
        let bad = |m: &str| Error::Parse(format!("cyclotomic element: {m}"));
        let sigma = v
            .get("sigma")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("bad sigma"))?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("bad coeffs"))?
            .iter()
            .map(|c| match c {
                Value::Number(n) => n.as_i64().map(BigInt::from),
                Value::String(s) => s.parse().ok(),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("bad coefficient"))?;
        CycElem::from_coeffs(sigma as u32, coeffs)
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
                (1, true) => write!(f, "w")?,
                (1, false) => write!(f, "{a}w")?,
                (_, true) => write!(f, "w^{k}")?,
                (_, false) => write!(f, "{a}w^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycElem {
    type Output = CycElem;
    fn add(self, rhs: &CycElem) -> CycElem {
        self.try_add(rhs).expect("cyclotomic orders differ")
    }
}

impl Sub for &CycElem {
    type Output = CycElem;
    fn sub(self, rhs: &CycElem) -> CycElem {
        self.try_add(&-rhs).expect("cyclotomic orders differ")
    }
}

impl Mul for &CycElem {
    type Output = CycElem;
    fn mul(self, rhs: &CycElem) -> CycElem {
        self.try_mul(rhs).expect("cyclotomic orders differ")
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CycElem {
    type Output = CycElem;
    fn add(self, rhs: CycElem) -> CycElem {
        &self + &rhs
    }
}

impl Sub for CycElem {
    type Output = CycElem;
    fn sub(self, rhs: CycElem) -> CycElem {
        &self - &rhs
    }
}

impl Mul for CycElem {
    type Output = CycElem;
    fn mul(self, rhs: CycElem) -> CycElem {
        &self * &rhs
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

impl Ring for CycElem {
    fn ring_zero(&self) -> Self {
        CycElem::zero(self.ring.sigma)
    }
    fn ring_one(&self) -> Self {
        CycElem::one(self.ring.sigma)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, k: &BigInt) -> Self {
        self.scale(k)
    }
}
