//! Executable identity checks. Each registry entry counts a parcel
//! combination directly and compares it, exactly, with the value obtained
//! from the rank generating polynomial.

mod corpus;
mod cut_pairs;
mod registry;

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cyclotomic::CycElem;
use crate::error::{Error, Result};
use crate::ground::{Instance, Matroid};
use crate::group_flow::GroupSpec;
use crate::parcels::{SetOp, Tier};
use crate::poly::{rank_gen_poly, BiPoly, LaurentPoly};

pub use corpus::{builtin, builtin_names, corpus};
pub use cut_pairs::{cut_pair_parcels, verify_theorem_1_1};
pub use registry::{find, registry, Scope, TheoremCheck};

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Cyc(CycElem),
    Int(BigInt),
    Poly(LaurentPoly),
    Flag(bool),
}

impl Quantity {
    pub fn to_json(&self) -> Value {
        match self {
            Quantity::Cyc(c) => json!({"cyclotomic": c.to_json(), "text": c.to_string()}),
            Quantity::Int(n) => json!({"integer": n.to_string()}),
            Quantity::Poly(p) => json!({"polynomial": p.to_json(), "text": p.to_string()}),
            Quantity::Flag(b) => json!({"flag": b}),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Cyc(c) => write!(f, "{c}"),
            Quantity::Int(n) => write!(f, "{n}"),
            Quantity::Poly(p) => write!(f, "{p}"),
            Quantity::Flag(b) => write!(f, "{b}"),
        }
    }
}

/// A secondary equation checked alongside the main one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aux {
    pub name: String,
    pub holds: bool,
}

/// What a check computes before timing and labelling.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub aux: Vec<Aux>,
    pub exceptional: Option<String>,
    pub tier: u8,
}

impl Outcome {
    pub fn new(lhs: Quantity, rhs: Quantity) -> Outcome {
        Outcome {
            lhs,
            rhs,
            aux: Vec::new(),
            exceptional: None,
            tier: 2,
        }
    }

    pub fn cyc(lhs: CycElem, rhs: CycElem) -> Outcome {
        Outcome::new(Quantity::Cyc(lhs), Quantity::Cyc(rhs))
    }

    pub fn int(lhs: BigInt, rhs: BigInt) -> Outcome {
        Outcome::new(Quantity::Int(lhs), Quantity::Int(rhs))
    }

    pub fn aux(&mut self, name: impl Into<String>, holds: bool) {
        self.aux.push(Aux {
            name: name.into(),
            holds,
        });
    }

    pub fn with_tier(mut self, tier: u8) -> Outcome {
        self.tier = tier;
        self
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.aux.iter().all(|a| a.holds)
    }
}

/// Parameters of a check. Unset values take the check's default or are
/// fixed by the identity itself.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub sigma: Option<u32>,
    /// `None` runs every residue coprime to σ.
    pub rho: Option<i64>,
    pub q: Option<u32>,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    pub m: Option<u32>,
    pub op: Option<SetOp>,
    pub p: Option<u32>,
    pub group: Option<GroupSpec>,
    pub tier: Option<Tier>,
}

impl Params {
    pub fn sigma(mut self, s: u32) -> Self {
        self.sigma = Some(s);
        self
    }
    pub fn rho(mut self, r: i64) -> Self {
        self.rho = Some(r);
        self
    }
    pub fn q(mut self, q: u32) -> Self {
        self.q = Some(q);
        self
    }
    pub fn alpha_beta(mut self, a: i64, b: i64) -> Self {
        self.alpha = Some(a);
        self.beta = Some(b);
        self
    }
    pub fn m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }
    pub fn op(mut self, op: SetOp) -> Self {
        self.op = Some(op);
        self
    }
    pub fn p(mut self, p: u32) -> Self {
        self.p = Some(p);
        self
    }
    pub fn tier(mut self, t: Tier) -> Self {
        self.tier = Some(t);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut o = serde_json::Map::new();
        if let Some(v) = self.sigma {
            o.insert("sigma".into(), v.into());
        }
        if let Some(v) = self.rho {
            o.insert("rho".into(), v.into());
        }
        if let Some(v) = self.q {
            o.insert("q".into(), v.into());
        }
        if let Some(v) = self.alpha {
            o.insert("alpha".into(), v.into());
        }
        if let Some(v) = self.beta {
            o.insert("beta".into(), v.into());
        }
        if let Some(v) = self.m {
            o.insert("m".into(), v.into());
        }
        if let Some(v) = self.op {
            o.insert("op".into(), v.name().into());
        }
        if let Some(v) = self.p {
            o.insert("p".into(), v.into());
        }
        if let Some(v) = &self.group {
            o.insert("group".into(), v.to_string().into());
        }
        if let Some(t) = self.tier {
            o.insert("tier".into(), tier_number(t).into());
        }
        Value::Object(o)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Value::Object(o) = self.to_json() else {
            unreachable!()
        };
        let parts: Vec<String> = o
            .iter()
            .map(|(k, v)| {
                format!(
                    "{k}={}",
                    v.as_str().map_or_else(|| v.to_string(), String::from)
                )
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

pub(crate) fn tier_number(t: Tier) -> u8 {
    match t {
        Tier::BruteForce => 1,
        Tier::Factored => 2,
    }
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub theorem: String,
    pub instance: String,
    pub params: Params,
    pub lhs: Quantity,
    pub rhs: Quantity,
    /// Exact equality of the two sides.
    pub equal: bool,
    pub aux: Vec<Aux>,
    pub exceptional: Option<String>,
    pub tier: u8,
    pub elapsed: Duration,
}

impl IdentityReport {
    fn from_outcome(
        theorem: &str,
        instance: &str,
        params: &Params,
        o: Outcome,
        t0: Instant,
    ) -> Self {
        IdentityReport {
            theorem: theorem.to_string(),
            instance: instance.to_string(),
            params: params.clone(),
            equal: o.lhs == o.rhs,
            lhs: o.lhs,
            rhs: o.rhs,
            aux: o.aux,
            exceptional: o.exceptional,
            tier: o.tier,
            elapsed: t0.elapsed(),
        }
    }

    /// Main equation and every auxiliary equation hold.
    pub fn passed(&self) -> bool {
        self.equal && self.aux.iter().all(|a| a.holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "instance": self.instance,
            "params": self.params.to_json(),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal,
            "passed": self.passed(),
            "aux": self.aux.iter().map(|a| json!({"name": a.name, "holds": a.holds})).collect::<Vec<_>>(),
            "exceptional": self.exceptional,
            "tier": self.tier,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}

/// An instance together with the matroid data every check needs.
pub struct Subject {
    pub inst: Instance,
    pub matroid: Matroid,
    pub rpoly: BiPoly,
    pub r: u32,
    pub n: u32,
}

impl Subject {
    pub fn new(inst: Instance) -> Result<Subject> {
        let matroid = Matroid::from_instance(&inst);
        let rpoly = rank_gen_poly(&matroid)?;
        Ok(Subject {
            r: inst.rank as u32,
            n: inst.ground_size() as u32,
            inst,
            matroid,
            rpoly,
        })
    }
}

pub fn verify(inst: &Instance, check: &TheoremCheck, params: &Params) -> Result<IdentityReport> {
    match check.scope {
        Scope::Global => verify_global(check, params),
        Scope::Instance => verify_subject(&Subject::new(inst.clone())?, check, params),
    }
}

pub fn verify_subject(
    subj: &Subject,
    check: &TheoremCheck,
    params: &Params,
) -> Result<IdentityReport> {
    let t0 = Instant::now();
    let o = check.run_on(Some(subj), params)?;
    Ok(IdentityReport::from_outcome(
        check.id,
        &subj.inst.name,
        params,
        o,
        t0,
    ))
}

/// Checks that do not depend on an instance.
pub fn verify_global(check: &TheoremCheck, params: &Params) -> Result<IdentityReport> {
    let t0 = Instant::now();
    let o = check.run_on(None, params)?;
    Ok(IdentityReport::from_outcome(check.id, "-", params, o, t0))
}

#[derive(Debug, Clone)]
pub enum CellStatus {
    Passed,
    Failed,
    /// The check itself could not run; counts as a failure.
    Error(String),
    Skipped(String),
}

/// One `(theorem, instance, params)` cell of a verify-all run.
#[derive(Debug, Clone)]
pub struct Cell {
    pub theorem: String,
    pub instance: String,
    pub params: Params,
    pub status: CellStatus,
    pub report: Option<IdentityReport>,
}

impl Cell {
    pub fn to_json(&self) -> Value {
        let (status, reason) = match &self.status {
            CellStatus::Passed => ("passed", None),
            CellStatus::Failed => ("failed", None),
            CellStatus::Error(r) => ("error", Some(r.clone())),
            CellStatus::Skipped(r) => ("skipped", Some(r.clone())),
        };
        json!({
            "theorem": self.theorem,
            "instance": self.instance,
            "params": self.params.to_json(),
            "status": status,
            "reason": reason,
            "report": self.report.as_ref().map(IdentityReport::to_json),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyAllOptions {
    /// Cells whose estimated work exceeds this are skipped.
    pub cost_cap: u128,
    /// Restrict to these theorem ids.
    pub theorems: Option<Vec<String>>,
}

impl Default for VerifyAllOptions {
    fn default() -> Self {
        VerifyAllOptions {
            cost_cap: 1 << 20,
            theorems: None,
        }
    }
}

/// Run every registry entry over its parameter grid on every instance.
/// Cells run in parallel; the result is ordered by theorem id (registry
/// order), instance and grid position.
pub fn verify_all(instances: &[Instance], opts: &VerifyAllOptions) -> Result<Vec<Cell>> {
    let subjects: Vec<Subject> = instances
        .par_iter()
        .map(|i| Subject::new(i.clone()))
        .collect::<Result<_>>()?;
    let checks: Vec<&TheoremCheck> = registry()
        .iter()
        .filter(|c| {
            opts.theorems
                .as_ref()
                .map_or(true, |t| t.iter().any(|id| id == c.id))
        })
        .collect();
    if let Some(t) = &opts.theorems {
        if let Some(bad) = t.iter().find(|id| find(id).is_none()) {
            return Err(Error::Params(format!("unknown theorem id `{bad}`")));
        }
    }

    let mut jobs: Vec<(&TheoremCheck, Option<&Subject>, Params)> = Vec::new();
    for check in checks {
        match check.scope {
            Scope::Global => {
                for p in check.grid_for(None) {
                    jobs.push((check, None, p));
                }
            }
            Scope::Instance => {
                for s in &subjects {
                    for p in check.grid_for(Some(s)) {
                        jobs.push((check, Some(s), p));
                    }
                }
            }
        }
    }

    Ok(jobs
        .into_par_iter()
        .map(|(check, subj, params)| run_cell(check, subj, params, opts.cost_cap))
        .collect())
}

fn run_cell(check: &TheoremCheck, subj: Option<&Subject>, params: Params, cap: u128) -> Cell {
    let instance = subj.map_or_else(|| "-".to_string(), |s| s.inst.name.clone());
    let skipped = |reason: String| Cell {
        theorem: check.id.to_string(),
        instance: instance.clone(),
        params: params.clone(),
        status: CellStatus::Skipped(reason),
        report: None,
    };
    let cost = check.cost_for(subj, &params);
    if cost > cap {
        return skipped(format!("estimated work {cost} exceeds cap {cap}"));
    }
    let t0 = Instant::now();
    match check.run_on(subj, &params) {
        Ok(o) => {
            let report = IdentityReport::from_outcome(check.id, &instance, &params, o, t0);
            Cell {
                theorem: check.id.to_string(),
                instance: instance.clone(),
                params: params.clone(),
                status: if report.passed() {
                    CellStatus::Passed
                } else {
                    CellStatus::Failed
                },
                report: Some(report),
            }
        }
        Err(e @ (Error::BudgetExceeded { .. } | Error::SizeCap { .. } | Error::Overflow(_))) => {
            skipped(e.to_string())
        }
        Err(e @ (Error::NotApplicable(_) | Error::Incompatible { .. })) => skipped(e.to_string()),
        Err(e) => Cell {
            theorem: check.id.to_string(),
            instance: instance.clone(),
            params: params.clone(),
            status: CellStatus::Error(e.to_string()),
            report: None,
        },
    }
}
