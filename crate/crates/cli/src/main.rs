//! `parcelforge` command-line front end. JSON goes to stdout, a short
//! summary to stderr. Exit codes: 0 ok, 1 identity violated, 2 usage or
//! input error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parcelforge::ground::{parse_instance_with, Instance, Matroid, ParseOptions};
use parcelforge::group_flow::{enumerate_flows, kernel_census, Group, GroupSpec};
use parcelforge::parcels::{
    census, flow_weight_enumerator, prop25_census, support_diff_enumerator, Family, Modulus,
    Prop25Table, SetOp, Tier,
};
use parcelforge::poly::{char_poly, rank_gen_poly, tutte};
use parcelforge::verify::{
    builtin, builtin_names, corpus, find, registry, verify, verify_all, verify_global, CellStatus,
    Params, VerifyAllOptions,
};
use parcelforge::Error;

#[derive(Parser)]
#[command(
    name = "parcelforge",
    version,
    about = "Flow parcels, rank polynomials and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct InstanceArg {
    /// `builtin:NAME` or a path to an instance JSON file.
    #[arg(long)]
    instance: String,
    /// Accept integer matrices too large for the exhaustive TU check.
    #[arg(long)]
    trust_tu: bool,
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    sigma: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<i64>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<i64>,
    #[arg(long)]
    m: Option<u32>,
    /// union, intersection, symdiff, sheffer or implication.
    #[arg(long)]
    op: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    /// cyclic:q, gfp:p:d or product:gfp:p:1:m.
    #[arg(long)]
    group: Option<String>,
    /// 1 = brute force, 2 = flow-factored.
    #[arg(long)]
    tier: Option<u8>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Hamming,
    HammingNonzero,
    Support,
    Setop,
    InnerProduct,
    Tuple,
    Parity,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumeratorKind {
    SupportDiff,
    FlowWeight,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank generating polynomial and Tutte polynomial.
    Rankpoly(InstanceArg),
    /// Characteristic polynomial.
    Charpoly(InstanceArg),
    /// Flows over a group, counted by kernel size.
    Flows {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        group: String,
        /// Also list every flow.
        #[arg(long)]
        list: bool,
    },
    /// Parcel census of a pair (or tuple) family.
    Census {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, value_enum)]
        family: FamilyKind,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Laurent-polynomial enumerators.
    Enumerator {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, value_enum)]
        kind: EnumeratorKind,
        #[arg(long)]
        group: String,
    },
    /// Check one identity on one instance.
    Verify {
        /// Omit for instance-free checks such as `gauss`.
        #[arg(long)]
        instance: Option<String>,
        #[arg(long)]
        trust_tu: bool,
        #[arg(long)]
        theorem: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check every identity over its parameter grid on a corpus.
    VerifyAll {
        /// `builtin`, or a directory of instance JSON files.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        /// Restrict to these identity ids (repeatable).
        #[arg(long)]
        theorem: Vec<String>,
        /// Skip cells whose estimated enumeration exceeds this.
        #[arg(long, default_value_t = 1 << 20)]
        cost_cap: u128,
    },
    /// List built-in instances and registered identities.
    Corpus,
}

enum Failure {
    Usage(String),
    Violated,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn load(arg: &str, trust_tu: bool) -> CliResult<Instance> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| Failure::Usage(format!("cannot read {arg}: {e}")))?;
    let mut inst = parse_instance_with(&text, ParseOptions { trust_tu })?;
    if inst.name.is_empty() {
        inst.name = arg.to_string();
    }
    Ok(inst)
}

fn load_arg(a: &InstanceArg) -> CliResult<Instance> {
    load(&a.instance, a.trust_tu)
}

fn tier(t: Option<u8>) -> CliResult<Option<Tier>> {
    match t {
        None => Ok(None),
        Some(1) => Ok(Some(Tier::BruteForce)),
        Some(2) => Ok(Some(Tier::Factored)),
        Some(k) => Err(Failure::Usage(format!("--tier must be 1 or 2, got {k}"))),
    }
}

fn params(a: &ParamArgs) -> CliResult<Params> {
    Ok(Params {
        sigma: a.sigma,
        rho: a.rho,
        q: a.q,
        alpha: a.alpha,
        beta: a.beta,
        m: a.m,
        op: a.op.as_deref().map(str::parse::<SetOp>).transpose()?,
        p: a.p,
        group: a
            .group
            .as_deref()
            .map(str::parse::<GroupSpec>)
            .transpose()?,
        tier: tier(a.tier)?,
    })
}

fn emit(v: &Value) {
    // a closed pipe (`| head`) is not an error worth a panic
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"));
}

fn group_for(inst: &Instance, spec: &str) -> CliResult<Group> {
    let g = Group::parse(spec)?;
    g.compatible(inst)?;
    Ok(g)
}

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Rankpoly(a) => {
            let inst = load_arg(&a)?;
            let m = Matroid::from_instance(&inst);
            let r = rank_gen_poly(&m)?;
            let t = tutte(&m)?;
            eprintln!("{}: |E| = {}, r = {}", inst.name, m.ground_size(), m.rank());
            eprintln!("T(x, y) = {t}");
            emit(&json!({
                "instance": inst.name,
                "ground_size": m.ground_size(),
                "rank": m.rank(),
                "rank_generating_polynomial": r.to_json(),
                "tutte": t.to_json(),
                "tutte_text": t.to_string(),
            }));
        }
        Cmd::Charpoly(a) => {
            let inst = load_arg(&a)?;
            let m = Matroid::from_instance(&inst);
            let c = char_poly(&m)?;
            eprintln!("{}: chi(l) = {c}", inst.name);
            emit(&json!({
                "instance": inst.name,
                "characteristic_polynomial": c.to_json(),
                "text": c.to_string(),
            }));
        }
        Cmd::Flows { inst, group, list } => {
            let inst = load_arg(&inst)?;
            let g = group_for(&inst, &group)?;
            let kc = kernel_census(&inst, &g)?;
            let total: u128 = kc.values().sum();
            eprintln!("{}: {total} flows over {}", inst.name, g.spec());
            let mut out = json!({
                "instance": inst.name,
                "group": g.spec().to_string(),
                "count": total.to_string(),
                "by_kernel_size": kc.iter().map(|(k, c)| (k.to_string(), Value::String(c.to_string()))).collect::<serde_json::Map<_, _>>(),
            });
            if list {
                let flows = enumerate_flows(&inst, &g)?;
                out["flows"] = json!(flows);
            }
            emit(&out);
        }
        Cmd::Census {
            inst,
            family,
            params: pa,
        } => {
            let inst = load_arg(&inst)?;
            let p = params(&pa)?;
            let modulus = p.sigma.map_or(Modulus::Infinite, Modulus::Finite);
            let t = p.tier.unwrap_or(Tier::Factored);
            let c = if let FamilyKind::Parity = family {
                prop25_census(&inst, need(p.q, "q")?, Prop25Table::Diagonal, t)?
            } else {
                let (g, fam) = match family {
                    FamilyKind::InnerProduct => {
                        let pr = need(p.p, "p")?;
                        (Group::gfp(pr, 1), Family::inner_product(pr))
                    }
                    _ => {
                        let g = group_for(&inst, &need(pa.group.clone(), "group")?)?;
                        let fam = match family {
                            FamilyKind::Hamming => Family::hamming(modulus),
                            FamilyKind::HammingNonzero => Family::hamming_nonzero(modulus),
                            FamilyKind::Support => Family::support(
                                need(p.alpha, "alpha")?,
                                need(p.beta, "beta")?,
                                modulus,
                            ),
                            FamilyKind::Setop => Family::setop(need(p.op, "op")?, modulus),
                            FamilyKind::Tuple => Family::tuple(p.m.unwrap_or(2) as usize, modulus),
                            _ => unreachable!(),
                        };
                        (g, fam)
                    }
                };
                census(&inst, &g, &fam, t)?
            };
            eprintln!("{}: {} over {} bins", inst.name, c.family, c.bins.len());
            emit(&json!({"instance": inst.name, "census": c.to_json()}));
        }
        Cmd::Enumerator { inst, kind, group } => {
            let inst = load_arg(&inst)?;
            let g = group_for(&inst, &group)?;
            let e = match kind {
                EnumeratorKind::SupportDiff => support_diff_enumerator(&inst, &g)?,
                EnumeratorKind::FlowWeight => flow_weight_enumerator(&inst, &g)?,
            };
            eprintln!("{}: {e}", inst.name);
            emit(&json!({
                "instance": inst.name,
                "group": g.spec().to_string(),
                "enumerator": e.to_json(),
                "text": e.to_string(),
            }));
        }
        Cmd::Verify {
            instance,
            trust_tu,
            theorem,
            params: pa,
        } => {
            let check = find(&theorem).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown identity `{theorem}`; see `parcelforge corpus`"
                ))
            })?;
            let p = params(&pa)?;
            let report = match (&instance, check.is_global()) {
                (_, true) => verify_global(check, &p)?,
                (Some(i), false) => verify(&load(i, trust_tu)?, check, &p)?,
                (None, false) => return Err(Failure::Usage(format!("{theorem} needs --instance"))),
            };
            emit(&report.to_json());
            eprintln!(
                "{} on {}: {} (lhs {}, rhs {})",
                report.theorem,
                report.instance,
                if report.passed() { "holds" } else { "VIOLATED" },
                report.lhs,
                report.rhs
            );
            for a in report.aux.iter().filter(|a| !a.holds) {
                eprintln!("  auxiliary check failed: {}", a.name);
            }
            if !report.passed() {
                return Err(Failure::Violated);
            }
        }
        Cmd::VerifyAll {
            corpus: source,
            theorem,
            cost_cap,
        } => {
            let instances = if source == "builtin" {
                corpus()
            } else {
                let mut paths: Vec<_> = std::fs::read_dir(&source)
                    .map_err(|e| Failure::Usage(format!("cannot read {source}: {e}")))?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect();
                paths.sort();
                paths
                    .iter()
                    .map(|p| load(&p.to_string_lossy(), false))
                    .collect::<CliResult<Vec<_>>>()?
            };
            let opts = VerifyAllOptions {
                cost_cap,
                theorems: (!theorem.is_empty()).then_some(theorem),
            };
            let cells = verify_all(&instances, &opts)?;
            let (mut passed, mut failed, mut skipped) = (0, 0, 0);
            for c in &cells {
                match &c.status {
                    CellStatus::Passed => passed += 1,
                    CellStatus::Skipped(_) => skipped += 1,
                    CellStatus::Failed | CellStatus::Error(_) => {
                        failed += 1;
                        eprintln!("FAIL {} {} {}", c.theorem, c.instance, c.params);
                    }
                }
            }
            emit(&json!({
                "passed": passed,
                "failed": failed,
                "skipped": skipped,
                "cells": cells.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            }));
            eprintln!("{passed} passed, {failed} failed, {skipped} skipped");
            if failed > 0 {
                return Err(Failure::Violated);
            }
        }
        Cmd::Corpus => {
            let instances: Vec<Value> = builtin_names()
                .iter()
                .map(|n| {
                    let i = builtin(n).expect("built-in");
                    json!({
                        "name": n,
                        "representation": i.representation.label(),
                        "ground_size": i.ground_size(),
                        "rank": i.rank,
                    })
                })
                .collect();
            let ids: Vec<Value> = registry()
                .iter()
                .map(|c| json!({"id": c.id, "summary": c.summary, "params": c.params}))
                .collect();
            eprintln!("{} instances, {} identities", instances.len(), ids.len());
            emit(&json!({"instances": instances, "identities": ids}));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violated) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
