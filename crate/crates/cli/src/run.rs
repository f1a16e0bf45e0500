use std::process::ExitCode;

use serde_json::{json, Value};
use staircase_core::decompose;
use staircase_core::discrete::{self, DiscreteIdeal};
use staircase_core::oracle::{self, GridSpec};
use staircase_core::qe::{self, json::point_to_json};
use staircase_core::rational::{frac, int};
use staircase_core::socle::{self, SocleEntry, SocleTable};
use staircase_core::{order, Downset, Face, Instance};

use crate::input::{self, CliError, CliResult};
use crate::{plot, Cli, Command, Grid};

fn emit(cli: &Cli, text: String) -> CliResult<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json(cli: &Cli, v: &Value) -> CliResult<()> {
    emit(
        cli,
        serde_json::to_string_pretty(v).expect("values serialize"),
    )
}

fn faces_json(fs: impl IntoIterator<Item = Face>) -> Value {
    json!(fs.into_iter().map(|f| f.one_based()).collect::<Vec<_>>())
}

fn entry_json(tau: Face, sigma: Face, e: &SocleEntry) -> Value {
    json!({ "key": Face::pair_key(tau, sigma), "degrees": e.degrees, "cosets": e.cosets })
}

fn downset(cmd: &str, inst: &Instance) -> CliResult<Downset> {
    match inst {
        Instance::Downset(d) => Ok(d.clone()),
        other => Err(CliError::Usage(format!(
            "{cmd} needs a downset, got {}",
            other.kind()
        ))),
    }
}

/// A single entry when both faces are given, the whole table when neither is.
fn table_or_entry(
    table: impl FnOnce() -> staircase_core::Result<SocleTable>,
    one: impl FnOnce(Face, Face) -> staircase_core::Result<SocleEntry>,
    a: Option<Face>,
    b: Option<Face>,
    names: (&str, &str),
) -> CliResult<Value> {
    match (a, b) {
        (Some(a), Some(b)) => Ok(entry_json(a, b, &one(a, b)?)),
        (None, None) => Ok(table()?.to_json()),
        _ => Err(CliError::Usage(format!(
            "give both --{} and --{}, or neither",
            names.0, names.1
        ))),
    }
}

fn grid(g: &Grid, n: usize) -> CliResult<GridSpec> {
    let step = match &g.grid_step {
        Some(s) => input::rational_arg("--grid-step", s)?,
        None if n <= 2 => frac(1, 4),
        None => frac(1, 2),
    };
    let probe = match &g.probe {
        Some(s) => input::rational_arg("--probe", s)?,
        None => step.clone() / int(256),
    };
    let (lo, hi) = match &g.bbox {
        Some(s) => input::bbox(s, n)?,
        None => (vec![int(-3); n], vec![int(3); n]),
    };
    GridSpec::new(lo, hi, step, probe).map_err(|e| CliError::Arg {
        what: "grid".into(),
        msg: e.to_string(),
    })
}

fn seed() -> CliResult<u64> {
    match std::env::var("STAIRCASE_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Arg {
            what: "STAIRCASE_SEED".into(),
            msg: format!("{s:?} is not an unsigned integer"),
        }),
        Err(_) => Ok(0),
    }
}

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    if let Some(l) = cli.cell_limit {
        qe::set_cell_limit(l);
    }
    match &cli.command {
        Command::Validate { input } => {
            let inst = input::read_instance(input)?;
            emit_json(
                cli,
                &json!({
                    "valid": true,
                    "kind": inst.kind(),
                    "dim": inst.dim(),
                    "cells": inst.carrier().cells.len(),
                }),
            )?;
        }
        Command::Shape { input, point } => {
            let inst = input::read_instance(input)?;
            let d = downset("shape", &inst)?;
            let p = input::point("--point", point, d.dim())?;
            let s = order::shape_at(&d, &p)?;
            emit_json(
                cli,
                &json!({
                    "point": point_to_json(&p),
                    "faces": faces_json(s.faces.iter().copied()),
                    "minimal": faces_json(s.minimal()),
                }),
            )?;
        }
        Command::Boundary { input, sigma, xi } => {
            let inst = input::read_instance(input)?;
            let n = inst.dim();
            let face = match (sigma, xi) {
                (Some(s), None) => input::face("--sigma", s, n)?,
                (None, Some(x)) => input::face("--xi", x, n)?,
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --sigma or --xi".into(),
                    ))
                }
            };
            let out = match &inst {
                Instance::Downset(d) => order::upper_boundary(d, face)?.into_carrier(),
                Instance::Upset(u) => order::lower_boundary(u, face)?.carrier().clone(),
                Instance::Interval(i) => socle::boundary_degrees(i, face)?,
            };
            emit_json(cli, &json!(out))?;
        }
        Command::Frontier { input } => {
            let inst = input::read_instance(input)?;
            let d = downset("frontier", &inst)?;
            emit_json(cli, &json!(order::frontier(&d)?))?;
        }
        Command::Socle {
            input,
            faces,
            closed,
        } => {
            let inst = input::read_instance(input)?;
            let n = inst.dim();
            let m = inst.to_interval();
            let tau = input::opt_face("--tau", faces.tau.as_ref(), n)?;
            let sigma = input::opt_face("--sigma", faces.sigma.as_ref(), n)?;
            let v = if *closed {
                match (tau, sigma) {
                    (None, None) => socle::closed_socle_table(&m)?.to_json(),
                    (Some(t), None) => entry_json(t, t, &socle::socle(&m, t, t)?),
                    _ => return Err(CliError::Usage("--closed takes at most --tau".into())),
                }
            } else {
                table_or_entry(
                    || socle::socle_table(&m),
                    |t, s| socle::socle(&m, t, s),
                    tau,
                    sigma,
                    ("tau", "sigma"),
                )?
            };
            emit_json(cli, &v)?;
        }
        Command::Ass { input } => {
            let inst = input::read_instance(input)?;
            emit_json(
                cli,
                &faces_json(socle::associated_faces(&inst.to_interval())?),
            )?;
        }
        Command::Top { input, rho, xi } => {
            let inst = input::read_instance(input)?;
            let n = inst.dim();
            let m = inst.to_interval();
            let rho = input::opt_face("--rho", rho.as_ref(), n)?;
            let xi = input::opt_face("--xi", xi.as_ref(), n)?;
            let v = table_or_entry(
                || socle::top_table(&m),
                |r, x| socle::top(&m, r, x),
                rho,
                xi,
                ("rho", "xi"),
            )?;
            emit_json(cli, &v)?;
        }
        Command::Att { input } => {
            let inst = input::read_instance(input)?;
            emit_json(
                cli,
                &faces_json(socle::attached_faces(&inst.to_interval())?),
            )?;
        }
        Command::DecomposePrimary { input } => {
            let inst = input::read_instance(input)?;
            let dec = decompose::primary_decomposition(&inst.to_interval())?;
            let mut v = dec.to_json();
            let coprimary = dec
                .components
                .iter()
                .map(|(t, c)| decompose::is_coprimary(&c.carrier, *t))
                .collect::<staircase_core::Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            v["checks"]["coprimary"] = json!(coprimary);
            v["checks"]["minimality"] = decompose::verify_minimality(&dec)?.to_json();
            emit_json(cli, &v)?;
        }
        Command::DecomposeIrreducible { input } => {
            let inst = input::read_instance(input)?;
            let m = inst.to_interval();
            let fam = decompose::irreducible_family(&socle::socle_table(&m)?);
            let rec = decompose::reconstruct(&fam, &m)?;
            if let Some(p) = rec.difference_witness(m.carrier())? {
                return Err(staircase_core::Error::CheckFailed {
                    what: "irreducible reconstruction".into(),
                    witness: Some(staircase_core::rational::format_point(&p)),
                }
                .into());
            }
            let mut v = fam.to_json();
            v["checks"] = json!({ "reconstruct": true });
            emit_json(cli, &v)?;
        }
        Command::DenseCheck { input, family } => {
            let inst = input::read_instance(input)?;
            let m = inst.to_interval();
            let fam =
                SocleTable::from_json(&input::read_json(family)?, inst.dim()).map_err(|e| {
                    CliError::Arg {
                        what: family.display().to_string(),
                        msg: e.to_string(),
                    }
                })?;
            let d = socle::is_dense_family(&fam, &socle::socle_table(&m)?)?;
            emit_json(cli, &d.to_json())?;
        }
        Command::Fringe { input } => {
            let inst = input::read_instance(input)?;
            let fr = decompose::fringe_presentation(&inst.to_interval())?;
            emit_json(cli, &fr.to_json())?;
        }
        Command::Dual { input } => {
            let inst = input::read_instance(input)?;
            emit_json(cli, &inst.dual().to_json())?;
        }
        Command::DiscreteDecompose { input } => {
            let v = input::read_json(input)?;
            let ideal = DiscreteIdeal::from_json(&v).map_err(|e| CliError::Arg {
                what: input.display().to_string(),
                msg: e.to_string(),
            })?;
            let d = discrete::discrete_primary_decomposition(&ideal);
            emit_json(cli, &discrete::decomposition_json(&ideal, &d))?;
        }
        Command::Verify {
            input,
            fuzz,
            dim,
            budget,
            grid: g,
        } => {
            let (v, passed) = match (input, fuzz) {
                (Some(path), None) => {
                    let inst = input::read_instance(path)?;
                    let r = oracle::verify_instance(&inst, &grid(g, inst.dim())?)?;
                    (r.to_json(), r.passed())
                }
                (None, Some(count)) => {
                    if !(1..=4).contains(dim) {
                        return Err(CliError::Usage("--dim must be between 1 and 4".into()));
                    }
                    let s = seed()?;
                    let runs = oracle::fuzz(s, *dim, *budget, *count, &grid(g, *dim)?)?;
                    let passed = runs.iter().all(|(_, r)| r.passed());
                    let items: Vec<Value> = runs
                        .iter()
                        .map(|(seed, r)| {
                            json!({
                                "seed": seed,
                                "passed": r.passed(),
                                "failures": r.failures().map(|c| json!({ "name": c.name, "detail": c.detail })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    (
                        json!({ "seed": s, "passed": passed, "runs": items }),
                        passed,
                    )
                }
                _ => {
                    return Err(CliError::Usage(
                        "give an instance file or --fuzz N, not both".into(),
                    ))
                }
            };
            emit_json(cli, &v)?;
            if !passed {
                return Err(CliError::Verify("see the report for witnesses".into()));
            }
        }
        Command::Plot { input, bbox } => {
            let inst = input::read_instance(input)?;
            if inst.dim() != 2 {
                return Err(CliError::Usage(format!(
                    "plot needs a planar instance, got dimension {}",
                    inst.dim()
                )));
            }
            let (lo, hi) = match bbox {
                Some(s) => input::bbox(s, 2)?,
                None => (vec![int(-3); 2], vec![int(3); 2]),
            };
            emit(cli, plot::svg(inst.carrier(), &lo, &hi))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
