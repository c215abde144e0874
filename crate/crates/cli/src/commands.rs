use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use seqlab::holder::{
    adjoint_image_norm, case_space, dual_lorentz_extremizer, empirical_best_constant, predicted_constant,
    predicted_constant_for_case, verify_partial_sum_inequality,
};
use seqlab::ideals::{diagonal_integral_norm, lambda_growth_compare, phi_linear_norm, verify_ideal_table, IdealTag};
use seqlab::normzoo::{kothe_dual_norm_with, norm_with};
use seqlab::report::Status;
use seqlab::seqcore::{rearranged, regularity_profile};
use seqlab::{CaseTag, Error, HolderInstance, OptimizerConfig, SpaceSpec, VerificationReport};

use crate::inputs::{parse_dims, parse_space_arg, parse_vector, parse_weight_arg, AlphaSource};
use crate::output::{emit_records, summarize, Table};
use crate::{Cli, CliError, Command, Outcome};

const HOLDER_TOL: f64 = 1e-4;
const EXTREMIZER_TOL: f64 = 1e-10;
const SPHERE_TOL: f64 = 1e-12;
const INDUCTION_TOL: f64 = 1e-12;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Rearrange { x } => {
            let v = rearranged(&parse_vector(x)?);
            let mut t = Table::new(vec!["k", "value"]);
            for (k, v) in v.into_iter().enumerate() {
                t.push(vec![(k + 1).into(), v.into()]);
            }
            t.emit(out)?;
            Ok(Outcome::Ok)
        }
        Command::Norm { space, x } => {
            let x = parse_vector(x)?;
            let space = parse_space_arg(space, x.len())?;
            let e = norm_with(&space, &x, &cli.config()?)?;
            println!("{}", e.value);
            Ok(converged_or_warn(e.converged))
        }
        Command::Dualnorm { space, x } => {
            let x = parse_vector(x)?;
            let space = parse_space_arg(space, x.len())?;
            let r = kothe_dual_norm_with(&x, &space, &cli.config()?)?;
            println!("{}", r.value);
            Ok(converged_or_warn(r.converged))
        }
        Command::HolderVerify { space, alpha, n, dims, force_case } => {
            holder_verify(cli, space, alpha, *n, dims, force_case.as_deref())
        }
        Command::Extremizer { alpha, w, p, n, dim } => extremizer(cli, alpha, w, *p, *n, *dim),
        Command::InductionCheck { x, random, w, n, p, dim } => induction(cli, x.as_deref(), *random, w, *n, *p, *dim),
        Command::Phi { ideal, space, n, dims } => phi(cli, ideal, space, *n, dims),
        Command::IdealTable { ideal, space, n, dims } => {
            let tag: IdealTag = ideal.parse()?;
            let dims = parse_dims(dims)?;
            let space = parse_space_arg(space, max_dim(&dims))?;
            let records = verify_ideal_table(&space, *n, tag, &dims, &cli.config()?)?;
            finish_records(&records, cli)
        }
        Command::Growth { f, g, eps, dims } => growth(cli, f, g, eps, dims),
        Command::Regularity { w, r, dim } => regularity(cli, w, r, *dim),
    }
}

fn max_dim(dims: &[usize]) -> usize {
    dims.iter().copied().max().unwrap_or(1)
}

fn converged_or_warn(converged: bool) -> Outcome {
    if converged {
        Outcome::Ok
    } else {
        eprintln!("warning: optimizer did not converge");
        Outcome::Nonconverged
    }
}

/// Instance `i` of a sweep runs with `seed + i`.
fn instance_config(cfg: &OptimizerConfig, i: usize) -> OptimizerConfig {
    cfg.clone().with_seed(cfg.seed.wrapping_add(i as u64))
}

fn records_outcome(records: &[VerificationReport]) -> Outcome {
    records
        .iter()
        .map(|r| match r.status {
            Status::Pass | Status::Skipped => Outcome::Ok,
            Status::Fail => Outcome::Violation,
            Status::Nonconverged => Outcome::Nonconverged,
        })
        .max()
        .unwrap_or(Outcome::Ok)
}

fn finish_records(records: &[VerificationReport], cli: &Cli) -> Result<Outcome, CliError> {
    emit_records(records, cli.out.as_ref())?;
    summarize(records);
    Ok(records_outcome(records))
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad {what}: `{s}`"))))
        .collect()
}

fn holder_verify(
    cli: &Cli,
    space: &str,
    alpha_text: &str,
    n: u32,
    dims: &str,
    force: Option<&str>,
) -> Result<Outcome, CliError> {
    let cfg = cli.config()?;
    let dims = parse_dims(dims)?;
    let space = parse_space_arg(space, max_dim(&dims))?;
    let alpha = AlphaSource::parse(alpha_text)?;
    let force: Option<CaseTag> = force.map(str::parse).transpose()?;
    let tol = cli.tol.unwrap_or(HOLDER_TOL);
    let instance = format!("{} n={n} alpha={alpha_text}", space.label());
    let records = dims
        .par_iter()
        .enumerate()
        .map(|(i, &dim)| -> Result<VerificationReport, CliError> {
            let inst = HolderInstance::new(space.clone(), alpha.take(dim)?, n, dim)?;
            let c = instance_config(&cfg, i);
            let predicted = match force {
                Some(case) => predicted_constant_for_case(&inst, case)?,
                None => match predicted_constant(&inst) {
                    Ok(p) => p,
                    Err(Error::Unsupported(reason)) => {
                        return Ok(VerificationReport::skipped(&instance, "none", dim, reason));
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            let emp = empirical_best_constant(&inst, &c)?;
            Ok(VerificationReport::compare(
                &instance,
                predicted.case.as_str(),
                dim,
                predicted.value,
                emp.value,
                tol,
                emp.converged,
                vec![c.seed],
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    finish_records(&records, cli)
}

fn extremizer(cli: &Cli, alpha: &str, w: &str, p: f64, n: u32, dim: usize) -> Result<Outcome, CliError> {
    let alpha = rearranged(&AlphaSource::parse(alpha)?.take(dim)?);
    let w = parse_weight_arg(w, dim)?;
    let x = dual_lorentz_extremizer(&alpha, &w, p, n, dim)?;
    let nf = f64::from(n);
    let sphere = seqlab::norm(&SpaceSpec::lp(nf / (nf - 1.0))?, &x)?;
    let sigma: Vec<f64> = alpha.iter().map(|a| a.powf(1.0 / nf)).collect();
    let attained = adjoint_image_norm(&sigma, &x, &w, p);
    let dual = SpaceSpec::lorentz_dual(w.truncated(dim)?, p)?;
    let predicted = seqlab::norm(&case_space(&dual, n, CaseTag::T2b)?, &alpha)?.powf(1.0 / nf);

    let mut t = Table::new(vec!["k", "x"]);
    for (k, v) in x.iter().enumerate() {
        t.push(vec![(k + 1).into(), (*v).into()]);
    }
    t.emit(cli.out.as_deref())?;
    let tol = cli.tol.unwrap_or(EXTREMIZER_TOL);
    let sphere_ok = (sphere - 1.0).abs() <= SPHERE_TOL;
    let attain_ok = (attained - predicted).abs() <= tol * predicted;
    eprintln!("||x||_(n') = {sphere}  image norm = {attained}  predicted = {predicted}");
    if sphere_ok && attain_ok {
        Ok(Outcome::Ok)
    } else {
        eprintln!("violation: sphere ok = {sphere_ok}, attainment ok = {attain_ok} (tol {tol:.1e})");
        Ok(Outcome::Violation)
    }
}

/// Uniform samples sorted nonincreasing, with a random zero tail.
fn random_profile(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
    x.sort_by(|a, b| b.total_cmp(a));
    let support = rng.gen_range(1..=dim);
    x[support..].iter_mut().for_each(|v| *v = 0.0);
    x
}

fn induction(
    cli: &Cli,
    x: Option<&str>,
    random: Option<usize>,
    w: &str,
    n: u32,
    p: f64,
    dim: Option<usize>,
) -> Result<Outcome, CliError> {
    let tol = cli.tol.unwrap_or(INDUCTION_TOL);
    let violated = |rhs: &[f64], residual: f64| residual < -tol * rhs.iter().copied().fold(1.0, f64::max);
    match (x, random) {
        (Some(x), None) => {
            let x = parse_vector(x)?;
            let dim = dim.unwrap_or(x.len());
            let w = parse_weight_arg(w, dim)?;
            let r = verify_partial_sum_inequality(&x, &w, n, p, dim)?;
            let mut t = Table::new(vec!["M", "lhs", "lhs_abel", "rhs", "residual"]);
            for m in 0..dim {
                t.push(vec![(m + 1).into(), r.lhs[m].into(), r.lhs_abel[m].into(), r.rhs[m].into(), r.residuals[m].into()]);
            }
            t.emit(cli.out.as_deref())?;
            eprintln!("min residual = {}", r.min_residual());
            Ok(if violated(&r.rhs, r.min_residual()) { Outcome::Violation } else { Outcome::Ok })
        }
        (None, Some(count)) => {
            let dim = dim.ok_or_else(|| CliError::Usage("--random needs --N".into()))?;
            let w = parse_weight_arg(w, dim)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed.unwrap_or(0));
            let mut t = Table::new(vec!["sample", "min_residual"]);
            let mut worst = f64::INFINITY;
            let mut bad = 0usize;
            for i in 0..count {
                let x = random_profile(&mut rng, dim);
                let r = verify_partial_sum_inequality(&x, &w, n, p, dim)?;
                let m = r.min_residual();
                worst = worst.min(m);
                bad += usize::from(violated(&r.rhs, m));
                t.push(vec![(i + 1).into(), m.into()]);
            }
            t.emit(cli.out.as_deref())?;
            eprintln!("{count} samples, worst residual = {worst}, violations = {bad}");
            Ok(if bad > 0 { Outcome::Violation } else { Outcome::Ok })
        }
        _ => Err(CliError::Usage("give exactly one of --x or --random".into())),
    }
}

fn phi(cli: &Cli, ideal: &str, space: &str, n: u32, dims: &str) -> Result<Outcome, CliError> {
    let cfg = cli.config()?;
    let tag: IdealTag = ideal.parse()?;
    let dims = parse_dims(dims)?;
    let space = parse_space_arg(space, max_dim(&dims))?;
    let rows = dims
        .par_iter()
        .enumerate()
        .map(|(i, &dim)| -> Result<(f64, f64, bool), CliError> {
            let c = instance_config(&cfg, i);
            Ok(match tag {
                IdealTag::L => {
                    let r = phi_linear_norm(&space, n, dim, &c)?;
                    (r.value, r.value, r.converged)
                }
                IdealTag::I => {
                    let r = diagonal_integral_norm(&vec![1.0; dim], &space, n, dim, &c)?;
                    (r.value, r.upper, r.converged)
                }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = match tag {
        IdealTag::L => Table::new(vec!["N", "lambda", "converged"]),
        IdealTag::I => Table::new(vec!["N", "lambda", "upper", "converged"]),
    };
    for (&dim, &(value, upper, conv)) in dims.iter().zip(&rows) {
        t.push(match tag {
            IdealTag::L => vec![dim.into(), value.into(), conv.into()],
            IdealTag::I => vec![dim.into(), value.into(), upper.into(), conv.into()],
        });
    }
    t.emit(cli.out.as_deref())?;
    Ok(converged_or_warn(rows.iter().all(|r| r.2)))
}

fn growth(cli: &Cli, f: &str, g: &str, eps: &str, dims: &str) -> Result<Outcome, CliError> {
    let dims = parse_dims(dims)?;
    let len = max_dim(&dims);
    let (f, g) = (parse_space_arg(f, len)?, parse_space_arg(g, len)?);
    let mut t = Table::new(vec!["eps", "N", "lambda_f", "lambda_g", "ratio"]);
    for e in parse_f64_list(eps, "eps")? {
        let c = lambda_growth_compare(&f, &g, e, &dims)?;
        for r in &c.rows {
            t.push(vec![e.into(), r.dim.into(), r.lambda_f.into(), r.lambda_g.into(), r.ratio.into()]);
        }
        let verdict = if c.bounded { "bounded" } else { "growing" };
        eprintln!("eps={e}: tail slope {:.6}, {verdict}", c.tail_slope);
    }
    t.emit(cli.out.as_deref())?;
    Ok(Outcome::Ok)
}

fn regularity(cli: &Cli, w: &str, r: &str, dim: Option<usize>) -> Result<Outcome, CliError> {
    let mut weight = parse_weight_arg(w, dim.unwrap_or(0))?;
    if let Some(d) = dim {
        weight = weight.truncated(d)?;
    }
    let len = weight.len();
    let mut t = Table::new(vec!["r", "k", "rho"]);
    for r in parse_f64_list(r, "r")? {
        let prof = regularity_profile(&weight, r)?;
        for (k, v) in prof.ratios.iter().enumerate() {
            t.push(vec![r.into(), (k + 1).into(), (*v).into()]);
        }
        let early = prof.at(len.min(100));
        eprintln!(
            "r={r}: max/min {:.6}, rho(N)/rho({}) {:.6}, tail slope {:.6}",
            prof.max_over_min(),
            len.min(100),
            prof.at(len) / early,
            prof.tail_slope()
        );
    }
    t.emit(cli.out.as_deref())?;
    Ok(Outcome::Ok)
}
