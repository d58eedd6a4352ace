//! Resolves parsed arguments into a fully explicit [`Plan`] (all defaults
//! filled in, all numbers exact) and executes it.

use clamped_plate_core::bessel_eval::{
    bessel_derivs, bessel_i, bessel_j, cross_w, cross_w_deriv, ode_residual, recursion_residual,
};
use clamped_plate_core::decimal::{render_decimal, render_sci_up, Rounding};
use clamped_plate_core::exact_algebra::{rat, render_rat, AlgebraError, Rat};
use clamped_plate_core::four_form::{self, leading_certificate, FourFormError, TupleParams};
use clamped_plate_core::series_verify::{
    self, base_matrix_rows, verify_base_matrix, verify_lemma_formulas, verify_recursion_series,
    verify_recursion_symbolic, CheckStatus, IdentityReport, NegativeOrder,
};
use clamped_plate_core::spectrum::{
    collision_scan, compare_membrane, eigenvalues_vp, radial_profile, scan_orders, CollisionPair, ScanParams,
    SpectrumError, SpectrumTable, ZeroKind, ZeroRow,
};
use clamped_plate_core::{BesselKind, ErrFloat, EvalConfig, EvalError};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cli::{Command, Function, ScanOpts, Suite};
use crate::output::{Cell, Output, Section};
use crate::settings::{parse_range, Config};
use crate::CliError;

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::PrecisionExhausted { .. } => CliError::Precision(e.to_string()),
            EvalError::InvalidArgument(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Eval(e) => e.into(),
            SpectrumError::InvalidArgument(_) => CliError::Usage(e.to_string()),
            SpectrumError::SuspiciousGrid { .. } => CliError::Failure(e.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// A fully resolved request. Its `Debug` text is the canonical cache key.
#[derive(Debug, Clone)]
pub enum Plan {
    Eval { m: u32, x: Rat, cfg: EvalConfig },
    Series { ms: Vec<u32>, order: u32, function: Function },
    Zeros { ms: Vec<u32>, kind: ZeroKind, scan: ScanParams, cfg: EvalConfig },
    Spectrum { max: u32, scan: ScanParams, cfg: EvalConfig },
    Profile { ms: Vec<u32>, k: Option<u32>, samples: u32, boundary_only: bool, tol: Rat, scan: ScanParams, cfg: EvalConfig },
    Lemma { ms: Vec<u32>, order: u32, negative: NegativeOrder },
    Recursion { ms: Vec<u32>, order: u32 },
    RecursionSymbolic { ms: Vec<u32> },
    BaseMatrix,
    FourForm { max: u32 },
    FourFormTuple { indices: [u32; 4] },
    Ode { count: u64, seed: u64, bound: Rat, cfg: EvalConfig },
    Collisions { max: u32, threshold: Rat, scan: ScanParams, cfg: EvalConfig },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn range(s: &str) -> Result<Vec<u32>, CliError> {
    parse_range(s).map_err(|e| usage(format!("--m: {e}")))
}

fn eval_cfg(cfg: &Config, prec: Option<u32>, target: Option<&str>, key: &str) -> Result<EvalConfig, CliError> {
    let prec = cfg.u32(prec, "prec")?;
    let target = cfg.rat(target, key)?;
    Ok(EvalConfig::new(prec, target, false)?)
}

fn scan_params(cfg: &Config, o: &ScanOpts) -> Result<ScanParams, CliError> {
    Ok(ScanParams::new(
        cfg.rat(o.xmax.as_deref(), "xmax")?,
        cfg.rat(o.width.as_deref(), "width")?,
        cfg.rat(o.grid.as_deref(), "grid")?,
    )?)
}

pub fn plan(cmd: &Command, cfg: &Config, prec: Option<u32>) -> Result<Plan, CliError> {
    let default_eval = || eval_cfg(cfg, prec, None, "target");
    Ok(match cmd {
        Command::Eval { m, x, scaled, target } => {
            let x = cfg.rat(Some(x), "x")?;
            if x < Rat::from_integer(0.into()) {
                return Err(usage("--x must be nonnegative"));
            }
            let c = eval_cfg(cfg, prec, target.as_deref(), "target")?.with_scaled(*scaled);
            Plan::Eval { m: *m, x, cfg: c }
        }
        Command::Series { m, order, function } => Plan::Series {
            ms: range(m)?,
            order: cfg.u32(*order, "order")?,
            function: *function,
        },
        Command::Zeros { m, scan, membrane } => Plan::Zeros {
            ms: range(m)?,
            kind: if *membrane { ZeroKind::Membrane } else { ZeroKind::Plate },
            scan: scan_params(cfg, scan)?,
            cfg: default_eval()?,
        },
        Command::Spectrum { max, scan } => Plan::Spectrum {
            max: cfg.u32(*max, "max")?,
            scan: scan_params(cfg, scan)?,
            cfg: default_eval()?,
        },
        Command::Profile { m, k, samples, boundary, tol, scan } => {
            let samples = cfg.u32(*samples, "samples")?;
            if samples == 0 {
                return Err(usage("--samples must be positive"));
            }
            if *k == Some(0) {
                return Err(usage("zero indices start at 1"));
            }
            Plan::Profile {
                ms: range(m)?,
                k: *k,
                samples,
                boundary_only: *boundary,
                tol: cfg.rat(tol.as_deref(), "boundary-tol")?,
                scan: scan_params(cfg, scan)?,
                cfg: default_eval()?,
            }
        }
        Command::Verify { suite } => match suite {
            Suite::Lemma { m, order, skip_negative } => Plan::Lemma {
                ms: range(m)?,
                order: cfg.u32(*order, "order")?,
                negative: if *skip_negative { NegativeOrder::Skip } else { NegativeOrder::Convention },
            },
            Suite::Recursion { m, order } => Plan::Recursion {
                ms: range(m)?,
                order: cfg.u32(*order, "order")?,
            },
            Suite::RecursionSymbolic { m } => Plan::RecursionSymbolic { ms: range(m)? },
            Suite::Basematrix => Plan::BaseMatrix,
            Suite::Fourform { max, tuple } => match tuple {
                Some(t) => Plan::FourFormTuple { indices: parse_tuple(t)? },
                None => {
                    let max = cfg.u32(*max, "max")?;
                    if max < 3 {
                        return Err(usage("--max must be at least 3"));
                    }
                    Plan::FourForm { max }
                }
            },
            Suite::Ode { count, seed, residual } => Plan::Ode {
                count: cfg.u64(*count, "count")?,
                seed: cfg.u64(*seed, "seed")?,
                bound: cfg.rat(residual.as_deref(), "residual")?,
                cfg: eval_cfg(cfg, prec, residual.as_deref(), "residual")?,
            },
        },
        Command::ScanCollisions { max, threshold, scan } => Plan::Collisions {
            max: cfg.u32(*max, "max")?,
            threshold: cfg.rat(threshold.as_deref(), "threshold")?,
            scan: scan_params(cfg, scan)?,
            cfg: default_eval()?,
        },
    })
}

fn parse_tuple(s: &str) -> Result<[u32; 4], CliError> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--tuple: expected four integers, got {s}")))?;
    parts
        .try_into()
        .map_err(|_| usage(format!("--tuple: expected four integers, got {s}")))
}

pub fn execute(plan: &Plan, digits: usize) -> Result<Output, CliError> {
    match plan {
        Plan::Eval { m, x, cfg } => eval(*m, x, cfg, digits),
        Plan::Series { ms, order, function } => Ok(series(ms, *order, *function)),
        Plan::Zeros { ms, kind, scan, cfg } => zeros(ms, *kind, scan, cfg, digits),
        Plan::Spectrum { max, scan, cfg } => {
            let table = eigenvalues_vp(*max, scan, cfg)?;
            Ok(spectrum(&table, digits))
        }
        Plan::Profile { ms, k, samples, boundary_only, tol, scan, cfg } => {
            profile(ms, *k, *samples, *boundary_only, tol, scan, cfg, digits)
        }
        Plan::Lemma { ms, order, negative } => {
            let reports = ms
                .par_iter()
                .map(|&m| verify_lemma_formulas(m, *order, *negative))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(identity_reports(&reports))
        }
        Plan::Recursion { ms, order } => {
            let reports = ms
                .par_iter()
                .map(|&m| verify_recursion_series(m, *order))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(identity_reports(&reports))
        }
        Plan::RecursionSymbolic { ms } => {
            let reports: Vec<_> = ms.par_iter().map(|&m| verify_recursion_symbolic(m)).collect();
            Ok(identity_reports(&reports))
        }
        Plan::BaseMatrix => {
            let mut out = identity_reports(&[verify_base_matrix()]);
            for (m, row) in base_matrix_rows().iter().enumerate() {
                out.note(format!("W_{m} = {row}"));
            }
            Ok(out)
        }
        Plan::FourForm { max } => Ok(fourform_scan(*max)),
        Plan::FourFormTuple { indices } => fourform_single(*indices),
        Plan::Ode { count, seed, bound, cfg } => residuals(*count, *seed, bound, cfg),
        Plan::Collisions { max, threshold, scan, cfg } => collisions(*max, threshold, scan, cfg),
    }
}

fn lower(e: &ErrFloat, digits: usize) -> String {
    render_decimal(&e.lower(), digits, Rounding::Floor)
}

fn upper(e: &ErrFloat, digits: usize) -> String {
    render_decimal(&e.upper(), digits, Rounding::Ceil)
}

fn eval(m: u32, x: &Rat, cfg: &EvalConfig, digits: usize) -> Result<Output, CliError> {
    let mut values = vec![("J", bessel_j(m, x, cfg)?), ("I", bessel_i(m, x, cfg)?)];
    if x.is_positive() {
        let (dj, di) = bessel_derivs(m, x, cfg)?;
        values.push(("dJ", dj));
        values.push(("dI", di));
        values.push(("W", cross_w(m, x, cfg)?));
        values.push(("dW", cross_w_deriv(m, x, cfg)?));
    }
    let mut s = Section::new("value", &["function", "m", "x", "scaled", "lo", "hi", "mid", "err", "prec_bits"]);
    for (name, v) in &values {
        let scaled = cfg.scaled() && *name != "J" && *name != "dJ";
        s.push(vec![
            (*name).into(),
            m.into(),
            render_rat(x).into(),
            scaled.into(),
            lower(v, digits).into(),
            upper(v, digits).into(),
            v.render_mid(digits).into(),
            v.render_err().into(),
            v.prec_bits().into(),
        ]);
    }
    Ok(Output::new(vec![s]))
}

fn series(ms: &[u32], order: u32, function: Function) -> Output {
    let mut s = Section::new("coefficient", &["function", "m", "exponent", "coefficient", "order"]);
    for &m in ms {
        let (name, ser) = match function {
            Function::J => ("J", series_verify::series_j(m, order)),
            Function::I => ("I", series_verify::series_i(m, order)),
            Function::W => ("W", series_verify::series_w(m, order)),
        };
        for (e, c) in ser.terms() {
            s.push(vec![name.into(), m.into(), e.into(), render_rat(c).into(), ser.order().into()]);
        }
    }
    Output::new(vec![s])
}

const ZERO_COLUMNS: [&str; 8] = ["m", "k", "lo", "hi", "mid_decimal", "lambda_lo", "lambda_hi", "mult"];

fn zero_cells(r: ZeroRow) -> Vec<Cell> {
    vec![
        r.m.into(),
        r.k.into(),
        r.lo.into(),
        r.hi.into(),
        r.mid_decimal.into(),
        r.lambda_lo.into(),
        r.lambda_hi.into(),
        r.mult.into(),
    ]
}

fn zeros(ms: &[u32], kind: ZeroKind, p: &ScanParams, cfg: &EvalConfig, digits: usize) -> Result<Output, CliError> {
    let scan = scan_orders(kind, ms, p, cfg)?;
    let mut s = Section::new("zero", &ZERO_COLUMNS);
    for z in scan.zeros.iter().flatten() {
        s.push(zero_cells(ZeroRow::from_record(z, digits)));
    }
    let mut out = Output::new(vec![s]);
    out.note(format!("{} zeros; grid cells halved {} times", scan.zeros.iter().map(Vec::len).sum::<usize>(), scan.halvings));
    Ok(out)
}

/// The multiplicity bound every eigenvalue cluster must respect.
const MAX_MULTIPLICITY: u32 = 6;

fn spectrum(t: &SpectrumTable, digits: usize) -> Output {
    let mut s = Section::new("eigenvalue", &ZERO_COLUMNS);
    for r in t.rows(digits) {
        s.push(zero_cells(r));
    }
    let mut out = Output::new(vec![s]);
    if let Some(g) = t.ground_state() {
        out.note(format!("ground state: m = {}, w = {}", g.m, g.mid_decimal(digits)));
    }
    out.note(format!(
        "{} zeros in {} clusters; max multiplicity {}; all singletons: {}; grid cells halved {} times",
        t.entries.len(),
        t.clusters.len(),
        t.max_multiplicity(),
        t.all_singletons(),
        t.halvings
    ));
    out.failed = t.max_multiplicity() > MAX_MULTIPLICITY;
    out
}

#[allow(clippy::too_many_arguments)]
fn profile(
    ms: &[u32],
    k: Option<u32>,
    samples: u32,
    boundary_only: bool,
    tol: &Rat,
    p: &ScanParams,
    cfg: &EvalConfig,
    digits: usize,
) -> Result<Output, CliError> {
    let scan = scan_orders(ZeroKind::Plate, ms, p, cfg)?;
    let picked: Vec<_> = scan
        .zeros
        .iter()
        .flatten()
        .filter(|z| k.is_none_or(|k| z.k == k))
        .collect();
    let profiles = picked
        .par_iter()
        .map(|z| radial_profile(z, samples, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let mut b = Section::new(
        "boundary",
        &["m", "k", "w", "u1", "du1_lo", "du1_hi", "du1_err", "du1_contains_zero", "du1_radius_ok", "sign_changes", "pass"],
    );
    let mut s = Section::new("sample", &["m", "k", "r", "u", "err"]);
    let mut failed = false;
    for pr in &profiles {
        let u1 = pr.u_at_one().expect("at least one sample");
        let u1_zero = u1.is_exact() && !u1.sign().is_some_and(|o| o != std::cmp::Ordering::Equal);
        let ok = u1_zero && pr.du1_contains_zero() && pr.du1_radius_within(tol);
        failed |= !ok;
        b.push(vec![
            pr.m.into(),
            pr.k.into(),
            render_decimal(&pr.w, digits, Rounding::HalfEven).into(),
            u1.render_mid(digits).into(),
            lower(&pr.du1, digits).into(),
            upper(&pr.du1, digits).into(),
            pr.du1.render_err().into(),
            pr.du1_contains_zero().into(),
            pr.du1_radius_within(tol).into(),
            pr.interior_sign_changes().into(),
            ok.into(),
        ]);
        if !boundary_only {
            for row in pr.sample_rows(digits) {
                s.push(vec![pr.m.into(), pr.k.into(), row.r.into(), row.u.into(), row.err.into()]);
            }
        }
    }
    let sections = if boundary_only { vec![b] } else { vec![b, s] };
    let mut out = Output::new(sections);
    out.note(format!("{} profiles; boundary checks {}", profiles.len(), if failed { "FAILED" } else { "pass" }));
    out.failed = failed;
    Ok(out)
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skipped => "skipped",
    }
}

fn identity_reports(reports: &[IdentityReport]) -> Output {
    let mut s = Section::new(
        "check",
        &["identity", "params", "check", "status", "valid_order", "first_offending"],
    );
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        for c in &r.checks {
            s.push(vec![
                r.identity.as_str().into(),
                params.join(" ").into(),
                c.name.as_str().into(),
                status_name(c.status).into(),
                c.valid_order.into(),
                c.first_offending.clone().into(),
            ]);
        }
    }
    let mut out = Output::new(vec![s]);
    let passed = reports.iter().filter(|r| r.pass).count();
    out.note(format!("{passed} of {} reports pass", reports.len()));
    out.notes.extend(reports.iter().filter_map(|r| r.note.clone()));
    out.failed = passed != reports.len();
    out
}

const CERT_COLUMNS: [&str; 15] = [
    "i0", "i1", "i2", "i3", "j", "k", "l", "m", "sign", "lead_degree", "b", "subleading_degree",
    "weak_bound", "strong_bound", "violation",
];

fn cert_row(t: &TupleParams, r: &Result<four_form::LeadingCertificate, FourFormError>) -> Vec<Cell> {
    let mut row: Vec<Cell> = t.indices().iter().chain(t.jklm().iter()).map(|&v| v.into()).collect();
    match r {
        Ok(c) => row.extend([
            (c.sign as i64).into(),
            c.lead_degree.into(),
            render_rat(&c.b).into(),
            c.subleading_degree.into(),
            c.weak_bound.into(),
            c.strong_bound.into(),
            Cell::Null,
        ]),
        Err(e) => {
            row.extend([Cell::Null, Cell::Null, Cell::Null, Cell::Null, Cell::Null, Cell::Null]);
            row.push(e.to_string().into());
        }
    }
    row
}

fn fourform_scan(max: u32) -> Output {
    four_form::prepare(max);
    let tuples = TupleParams::all_up_to(max);
    let results: Vec<_> = tuples.par_iter().map(leading_certificate).collect();
    let mut s = Section::new("certificate", &CERT_COLUMNS);
    for (t, r) in tuples.iter().zip(&results) {
        s.push(cert_row(t, r));
    }
    let certified = results.iter().filter(|r| r.is_ok()).count();
    let strong = results.iter().filter(|r| r.as_ref().is_ok_and(|c| c.strong_bound)).count();
    let mut out = Output::new(vec![s]);
    out.note(format!("{certified} of {} tuples certified (max {max})", tuples.len()));
    out.note(format!("sub-leading degree below lead - 1 for {strong} tuples"));
    out.failed = certified != tuples.len();
    out
}

fn fourform_single(indices: [u32; 4]) -> Result<Output, CliError> {
    let form = four_form::four_form(indices);
    let mut s = Section::new("form", &["i0", "i1", "i2", "i3", "value"]);
    let mut row: Vec<Cell> = indices.iter().map(|&v| v.into()).collect();
    row.push(form.display("t").to_string().into());
    s.push(row);
    let mut out = Output::new(vec![s]);
    match TupleParams::new(indices) {
        Ok(t) => {
            let r = leading_certificate(&t);
            let mut c = Section::new("certificate", &CERT_COLUMNS);
            out.failed = r.is_err();
            c.push(cert_row(&t, &r));
            out.sections.push(c);
        }
        Err(_) => out.note("indices not strictly increasing; no certificate"),
    }
    Ok(out)
}

/// Largest order and the `x` range sampled by the random residual suite.
const ODE_MAX_ORDER: u32 = 10;
const ODE_X_BITS: u32 = 20;

fn residuals(count: u64, seed: u64, bound: &Rat, cfg: &EvalConfig) -> Result<Output, CliError> {
    // x = 1/2 + n / 2^20 with 1 <= n <= 39.5 * 2^20, so x lies in (1/2, 40]
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 79u64 << (ODE_X_BITS - 1);
    let cases: Vec<(u32, Rat)> = (0..count)
        .map(|_| {
            let m = rng.gen_range(0..=ODE_MAX_ORDER);
            let n = rng.gen_range(1..=top) as i64;
            (m, rat(1, 2) + rat(n, 1 << ODE_X_BITS))
        })
        .collect();
    let results = cases
        .par_iter()
        .map(|(m, x)| -> Result<[(&'static str, ErrFloat); 3], CliError> {
            Ok([
                ("recursion", recursion_residual(*m, x, cfg)?),
                ("bessel-j", ode_residual(BesselKind::J, *m, x, cfg)?),
                ("bessel-i", ode_residual(BesselKind::I, *m, x, cfg)?),
            ])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut s = Section::new(
        "residual",
        &["case", "m", "x", "check", "abs_mid", "err", "prec_bits", "contains_zero", "pass"],
    );
    let mut failed = 0usize;
    let mut raised = 0usize;
    for (i, ((m, x), res)) in cases.iter().zip(&results).enumerate() {
        for (name, r) in res {
            let ok = r.contains_zero() && r.value().abs() <= r.err() && r.err_at_most(bound);
            failed += usize::from(!ok);
            raised += usize::from(r.prec_bits() > cfg.prec_bits());
            s.push(vec![
                i.into(),
                (*m).into(),
                render_rat(x).into(),
                (*name).into(),
                render_sci_up(&r.value(), 3).into(),
                r.render_err().into(),
                r.prec_bits().into(),
                r.contains_zero().into(),
                ok.into(),
            ]);
        }
    }
    let mut out = Output::new(vec![s]);
    out.note(format!(
        "{} enclosures, {failed} failing; {raised} needed more than {} bits",
        3 * cases.len(),
        cfg.prec_bits()
    ));
    out.failed = failed > 0;
    Ok(out)
}

fn pair_cells(kind: &str, p: &CollisionPair) -> Vec<Cell> {
    vec![
        kind.into(),
        p.a.0.into(),
        p.a.1.into(),
        p.b.0.into(),
        p.b.1.into(),
        p.gap.as_str().into(),
        p.near.as_str().into(),
    ]
}

fn collisions(max: u32, threshold: &Rat, p: &ScanParams, cfg: &EvalConfig) -> Result<Output, CliError> {
    let (table, report) = collision_scan(max, p, threshold, cfg)?;
    let membrane = compare_membrane(max, &table.entries, p, cfg)?;
    let mut summary = Section::new(
        "summary",
        &[
            "max_order", "xmax", "width", "zeros", "adjacent_orders_pass", "step_two_orders_pass",
            "min_gap", "min_gap_near", "clusters", "max_multiplicity", "all_singletons",
            "width_reductions", "halvings", "membrane_zeros", "membrane_overlaps",
            "membrane_ground_below",
        ],
    );
    let min = report.min_gap.as_ref();
    summary.push(vec![
        report.max_order.into(),
        report.xmax.as_str().into(),
        render_rat(&p.width).into(),
        report.zeros.into(),
        report.adjacent_orders_pass.into(),
        report.step_two_orders_pass.into(),
        min.map(|m| m.gap.clone()).into(),
        min.map(|m| m.near.clone()).into(),
        table.clusters.len().into(),
        table.max_multiplicity().into(),
        table.all_singletons().into(),
        report.width_reductions.into(),
        table.halvings.into(),
        membrane.membrane_zeros.into(),
        membrane.overlaps.len().into(),
        membrane.ground_below.into(),
    ]);
    let mut pairs = Section::new("pair", &["kind", "a_m", "a_k", "b_m", "b_k", "gap", "near"]);
    for o in &report.overlaps {
        pairs.push(pair_cells("overlap", o));
    }
    if let Some(m) = min {
        pairs.push(pair_cells("min_gap", m));
    }
    for b in &report.below_threshold {
        pairs.push(pair_cells("below_threshold", b));
    }
    for ((am, ak), (bm, bk)) in &membrane.overlaps {
        // enclosures intersect, so no positive gap is certified
        pairs.push(vec![
            "membrane_overlap".into(),
            (*am).into(),
            (*ak).into(),
            (*bm).into(),
            (*bk).into(),
            Cell::Null,
            Cell::Null,
        ]);
    }
    let mut out = Output::new(vec![summary, pairs]);
    if let Some(m) = min {
        out.note(format!(
            "smallest gap between orders {} and {}: >= {} near w = {}",
            m.a.0, m.b.0, m.gap, m.near
        ));
    }
    out.note(format!("{} zeros up to xmax = {}", report.zeros, report.xmax));
    out.note(format!(
        "{} membrane zeros; {} intersect a plate enclosure; lowest membrane zero below lowest plate zero: {}",
        membrane.membrane_zeros,
        membrane.overlaps.len(),
        membrane.ground_below
    ));
    out.failed = !report.pass() || table.max_multiplicity() > MAX_MULTIPLICITY;
    Ok(out)
}
