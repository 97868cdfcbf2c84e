use std::path::PathBuf;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use super::args::*;
use super::config::{FileConfig, SignalSource};
use super::report::{Report, Table};
use super::{invalid_from, Invalid, Outcome, EXIT_NOT_CONVERGED, EXIT_OK};
use crate::almost_periodicity::{
    estimate_inclusion_length, find_translation_numbers, probe_step_limit, DEFAULT_PROBE_WINDOW,
};
use crate::bohr::{
    bohr_coefficient, bohr_mean, scan_spectrum, uniform_grid, MeanValueEstimate, QuadratureParams,
};
use crate::bounds::{check_decay_bound, check_taibleson, BoundParams, BoundReport};
use crate::error::{Error, Partial};
use crate::signal::{Signal, SignalSpec};
use crate::variation::{
    average_variation, total_variation, AverageVariationEstimate, DEFAULT_INITIAL_GRID,
    DEFAULT_MAX_REFINEMENTS,
};
use crate::zeta::{zeta_bound_experiment, ZetaTruncation, MAX_CLI_TERMS};

const DEFAULT_J_MAX: u32 = 10;
const DEFAULT_EVAL_RANGE: [f64; 2] = [0.0, 50.0];
const DEFAULT_EVAL_STEP: f64 = 0.1;
const DEFAULT_SPECTRUM_STEP: f64 = 0.005;
/// Largest number of grid points a range/step pair may produce.
const MAX_GRID_POINTS: f64 = 1e8;

type Res<T> = Result<T, Invalid>;

pub(crate) fn execute(command: Command) -> Res<Outcome> {
    match command {
        Command::Mean(a) => mean(a),
        Command::Coeff(a) => coeff(a),
        Command::Scan(a) => scan(a),
        Command::Periods(a) => periods(a),
        Command::Variation(a) => variation(a),
        Command::BoundCheck(a) => bound_check(a),
        Command::Taibleson(a) => taibleson(a),
        Command::Zeta(a) => zeta(a),
    }
}

fn load_config(output: &OutputArgs) -> Res<FileConfig> {
    match &output.config {
        Some(path) => FileConfig::load(path).map_err(|e| Invalid::new("--config", e)),
        None => Ok(FileConfig::default()),
    }
}

fn required<T>(flag: &str, v: Option<T>) -> Res<T> {
    v.ok_or_else(|| Invalid::new(flag, "is required"))
}

fn positive(flag: &str, v: f64) -> Res<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Invalid::new(
            flag,
            format!("must be finite and > 0, got {v}"),
        ))
    }
}

fn finite(flag: &str, v: f64) -> Res<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Invalid::new(flag, format!("must be finite, got {v}")))
    }
}

fn range_pair(flag: &str, v: Option<Vec<f64>>, cfg: Option<[f64; 2]>) -> Option<Res<(f64, f64)>> {
    let pair = v.map(|v| [v[0], v[1]]).or(cfg)?;
    let [lo, hi] = pair;
    Some(if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok((lo, hi))
    } else {
        Err(Invalid::new(
            flag,
            format!("needs finite LO < HI, got {lo} {hi}"),
        ))
    })
}

fn grid_size(flag: &str, (lo, hi): (f64, f64), step: f64) -> Res<()> {
    if (hi - lo) / step > MAX_GRID_POINTS {
        return Err(Invalid::new(
            flag,
            format!("step {step} gives more than {MAX_GRID_POINTS:e} grid points on [{lo}, {hi}]"),
        ));
    }
    Ok(())
}

fn output(o: &OutputArgs, cfg: &FileConfig) -> (Format, Option<PathBuf>) {
    (
        o.format.or(cfg.format).unwrap_or(Format::Json),
        o.out.clone().or_else(|| cfg.out.clone()),
    )
}

fn quadrature(q: &QuadArgs, cfg: &FileConfig) -> Res<QuadratureParams> {
    let d = QuadratureParams::default();
    let p = QuadratureParams {
        tolerance: positive("--tol", q.tol.or(cfg.tol).unwrap_or(d.tolerance))?,
        t_initial: positive(
            "--t-initial",
            q.t_initial.or(cfg.t_initial).unwrap_or(d.t_initial),
        )?,
        growth: q.growth.or(cfg.growth).unwrap_or(d.growth),
        max_doublings: q
            .max_doublings
            .or(cfg.max_doublings)
            .unwrap_or(d.max_doublings),
    };
    if !(p.growth.is_finite() && p.growth > 1.0) {
        return Err(Invalid::new(
            "--growth",
            format!("must be finite and > 1, got {}", p.growth),
        ));
    }
    if !p.final_window().is_finite() {
        return Err(Invalid::new(
            "--max-doublings",
            format!(
                "final window t_initial·growth^{} overflows",
                p.max_doublings
            ),
        ));
    }
    Ok(p)
}

fn quad_params(p: &QuadratureParams, params: &mut Map<String, Value>) {
    params.insert("tol".into(), json!(p.tolerance));
    params.insert("t_initial".into(), json!(p.t_initial));
    params.insert("growth".into(), json!(p.growth));
    params.insert("max_doublings".into(), json!(p.max_doublings));
}

fn zeta_truncation(x: f64, n: u32, order: u32, x_flag: &str, n_flag: &str) -> Res<ZetaTruncation> {
    finite(x_flag, x)?;
    if n == 0 || n > MAX_CLI_TERMS {
        return Err(Invalid::new(
            n_flag,
            format!("must be in 1..={MAX_CLI_TERMS}, got {n}"),
        ));
    }
    ZetaTruncation::new(x, n, order).map_err(invalid_from)
}

/// Resolves the signal and records its description in `params`.
fn signal(s: &SignalArgs, cfg: &FileConfig, params: &mut Map<String, Value>) -> Res<Signal> {
    let on_command_line = s.signal.is_some() || s.zeta_x.is_some() || s.zeta_n.is_some();
    let (source, zx, zn) = if on_command_line {
        (s.signal.clone().map(SignalSource::Path), s.zeta_x, s.zeta_n)
    } else {
        (cfg.signal.clone(), cfg.zeta_x, cfg.zeta_n)
    };
    let order = s.order.or(cfg.order);
    match (source, zx, zn) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(Invalid::new(
            "--signal",
            "cannot be combined with --zeta-x/--zeta-N",
        )),
        (Some(src), None, None) => {
            if order.is_some() {
                return Err(Invalid::new(
                    "--J",
                    "applies only to --zeta-x/--zeta-N signals",
                ));
            }
            let (label, spec) = match src {
                SignalSource::Path(p) => {
                    let spec = SignalSpec::load(&p).map_err(|e| Invalid::new("--signal", e))?;
                    (p.display().to_string(), spec)
                }
                SignalSource::Inline(spec) => ("inline".to_string(), spec),
            };
            let poly = spec
                .to_polynomial()
                .map_err(|e| Invalid::new("--signal", e.to_string()))?;
            params.insert("signal".into(), json!(label));
            params.insert("terms".into(), json!(poly.len()));
            Ok(Signal::Trig(poly))
        }
        (None, Some(x), Some(n)) => {
            let order = order.unwrap_or(0);
            let z = zeta_truncation(x, n, order, "--zeta-x", "--zeta-N")?;
            params.insert("zeta_x".into(), json!(x));
            params.insert("zeta_N".into(), json!(n));
            params.insert("J".into(), json!(order));
            Ok(Signal::Zeta(z))
        }
        (None, Some(_), None) => Err(Invalid::new("--zeta-N", "is required with --zeta-x")),
        (None, None, Some(_)) => Err(Invalid::new("--zeta-x", "is required with --zeta-N")),
        (None, None, None) => Err(Invalid::new(
            "--signal",
            "a signal is required: --signal PATH or --zeta-x F --zeta-N I",
        )),
    }
}

fn complex(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn mean_table(est: &MeanValueEstimate) -> Table {
    let mut t = Table::new(&["T", "re", "im"]);
    for &(w, v) in &est.windows {
        t.push(vec![w.into(), v.re.into(), v.im.into()]);
    }
    t
}

fn average_table(est: &AverageVariationEstimate) -> Table {
    let mut t = Table::new(&["T", "average_variation"]);
    for &(w, v) in &est.windows {
        t.push(vec![w.into(), v.into()]);
    }
    t
}

fn not_converged(what: &str, tol: f64) -> String {
    format!("{what} did not reach tolerance {tol:e} within the window budget; reporting the last window")
}

/// Turns a `NotConverged` error into a report of its partial estimate.
fn partial_outcome(
    command: &'static str,
    params: Map<String, Value>,
    e: Error,
    format: Format,
    out: Option<PathBuf>,
) -> Res<Outcome> {
    let (what, partial) = match e {
        Error::NotConverged { what, partial } => (what, *partial),
        other => return Err(invalid_from(other)),
    };
    let (result, trace, tol) = match &partial {
        Partial::Mean(m) => (
            json!({"converged": false, "partial": {"what": what, "value": complex(m.value)}}),
            mean_table(m),
            m.tolerance,
        ),
        Partial::AverageVariation(a) => (
            json!({"converged": false, "partial": {"what": what, "value": a.value}}),
            average_table(a),
            a.tolerance,
        ),
        Partial::Variation(v) => {
            let mut t = Table::new(&["grid_size", "estimate"]);
            for &(n, s) in &v.refinement_trace {
                t.push(vec![n.into(), s.into()]);
            }
            (
                json!({"converged": false, "partial": {"what": what, "value": v.value}}),
                t,
                f64::NAN,
            )
        }
    };
    Ok(Outcome {
        report: Report {
            command,
            params,
            result,
            trace,
            warnings: vec![not_converged(what, tol)],
        },
        format,
        out,
        exit: EXIT_NOT_CONVERGED,
    })
}

fn mean_outcome(
    command: &'static str,
    params: Map<String, Value>,
    r: crate::error::Result<MeanValueEstimate>,
    lambda: Option<f64>,
    format: Format,
    out: Option<PathBuf>,
) -> Res<Outcome> {
    let (est, exit, warnings) = match r {
        Ok(est) => (est, EXIT_OK, vec![]),
        Err(Error::NotConverged { what, partial }) => match *partial {
            Partial::Mean(est) => {
                let w = not_converged(what, est.tolerance);
                (est, EXIT_NOT_CONVERGED, vec![w])
            }
            other => {
                return partial_outcome(
                    command,
                    params,
                    Error::NotConverged {
                        what,
                        partial: Box::new(other),
                    },
                    format,
                    out,
                )
            }
        },
        Err(e) => return Err(invalid_from(e)),
    };
    let mut result = Map::new();
    if let Some(l) = lambda {
        result.insert("lambda".into(), json!(l));
    }
    result.insert("value".into(), complex(est.value));
    result.insert("magnitude".into(), json!(est.value.norm()));
    result.insert("converged".into(), json!(est.converged));
    result.insert("window".into(), json!(est.windows.last().map(|w| w.0)));
    Ok(Outcome {
        report: Report {
            command,
            params,
            result: Value::Object(result),
            trace: mean_table(&est),
            warnings,
        },
        format,
        out,
        exit,
    })
}

fn mean(a: MeanArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let mut params = Map::new();
    let f = signal(&a.signal, &cfg, &mut params)?;
    let offset = finite("--offset", a.offset.or(cfg.offset).unwrap_or(0.0))?;
    let q = quadrature(&a.quad, &cfg)?;
    params.insert("offset".into(), json!(offset));
    quad_params(&q, &mut params);
    let (format, out) = output(&a.output, &cfg);
    mean_outcome("mean", params, bohr_mean(&f, offset, &q), None, format, out)
}

fn single_lambda(flag: Option<f64>, cfg: &FileConfig) -> Res<Option<f64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match cfg.lambda.clone().map(|l| l.into_vec()) {
        None => Ok(None),
        Some(v) if v.len() == 1 => Ok(Some(v[0])),
        Some(v) => Err(Invalid::new(
            "--lambda",
            format!("expects one value, got {}", v.len()),
        )),
    }
}

fn coeff(a: CoeffArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let mut params = Map::new();
    let f = signal(&a.signal, &cfg, &mut params)?;
    let lambda = finite(
        "--lambda",
        required("--lambda", single_lambda(a.lambda, &cfg)?)?,
    )?;
    let q = quadrature(&a.quad, &cfg)?;
    params.insert("lambda".into(), json!(lambda));
    quad_params(&q, &mut params);
    let (format, out) = output(&a.output, &cfg);
    let r = bohr_coefficient(&f, lambda, &q);
    mean_outcome("coeff", params, r, Some(lambda), format, out)
}

#[allow(clippy::too_many_arguments)]
fn spectrum_outcome(
    command: &'static str,
    f: &Signal,
    range: (f64, f64),
    step: f64,
    threshold: f64,
    q: &QuadratureParams,
    params: Map<String, Value>,
    format: Format,
    out: Option<PathBuf>,
) -> Res<Outcome> {
    grid_size("--step", range, step)?;
    let est = match scan_spectrum(f, range, step, threshold, q) {
        Ok(est) => est,
        Err(e @ Error::NotConverged { .. }) => {
            return partial_outcome(command, params, e, format, out)
        }
        Err(e) => return Err(invalid_from(e)),
    };
    let exponents: Vec<Value> = est
        .exponents
        .iter()
        .map(|l| {
            json!({
                "lambda": l.lambda,
                "re": l.coefficient.re,
                "im": l.coefficient.im,
                "magnitude": l.magnitude,
                "converged": l.converged,
                "window": l.window,
            })
        })
        .collect();
    let unconverged = est.exponents.iter().filter(|l| !l.converged).count();
    let mut warnings = Vec::new();
    if unconverged > 0 {
        warnings.push(format!(
            "{unconverged} exponent coefficient(s) did not reach tolerance {:e}",
            q.tolerance
        ));
    }
    let mut grid = Table::new(&["lambda", "re", "im", "magnitude"]);
    for &(l, v) in &est.grid {
        grid.push(vec![l.into(), v.re.into(), v.im.into(), v.norm().into()]);
    }
    Ok(Outcome {
        report: Report {
            command,
            params,
            result: json!({
                "count": exponents.len(),
                "scan_window": est.scan_window,
                "exponents": exponents,
            }),
            trace: grid,
            warnings,
        },
        format,
        out,
        exit: if unconverged > 0 {
            EXIT_NOT_CONVERGED
        } else {
            EXIT_OK
        },
    })
}

fn scan(a: ScanArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let mut params = Map::new();
    let f = signal(&a.signal, &cfg, &mut params)?;
    let range = required("--range", range_pair("--range", a.range, cfg.range))??;
    let step = positive("--step", required("--step", a.step.or(cfg.step))?)?;
    let threshold = positive(
        "--threshold",
        required("--threshold", a.threshold.or(cfg.threshold))?,
    )?;
    let q = quadrature(&a.quad, &cfg)?;
    params.insert("range".into(), json!([range.0, range.1]));
    params.insert("step".into(), json!(step));
    params.insert("threshold".into(), json!(threshold));
    quad_params(&q, &mut params);
    let (format, out) = output(&a.output, &cfg);
    spectrum_outcome("scan", &f, range, step, threshold, &q, params, format, out)
}

fn periods(a: PeriodsArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let mut params = Map::new();
    let f = signal(&a.signal, &cfg, &mut params)?;
    let epsilon = positive(
        "--epsilon",
        required("--epsilon", a.epsilon.or(cfg.epsilon))?,
    )?;
    let range = required("--range", range_pair("--range", a.range, cfg.range))??;
    let step = positive("--step", required("--step", a.step.or(cfg.step))?)?;
    grid_size("--step", range, step)?;
    let window = positive(
        "--probe-window",
        a.probe_window
            .or(cfg.probe_window)
            .unwrap_or(DEFAULT_PROBE_WINDOW),
    )?;
    let limit = probe_step_limit(&f);
    let default_probe = if limit.is_finite() {
        limit
    } else {
        window / 1000.0
    };
    let probe_step = positive(
        "--probe-step",
        a.probe_step.or(cfg.probe_step).unwrap_or(default_probe),
    )?;
    grid_size("--probe-step", (0.0, window), probe_step)?;
    params.insert("epsilon".into(), json!(epsilon));
    params.insert("range".into(), json!([range.0, range.1]));
    params.insert("step".into(), json!(step));
    params.insert("probe_window".into(), json!(window));
    params.insert("probe_step".into(), json!(probe_step));
    let (format, out) = output(&a.output, &cfg);

    let numbers = find_translation_numbers(&f, epsilon, range, step, window, probe_step)
        .map_err(invalid_from)?;
    let mut warnings = Vec::new();
    let inclusion = match estimate_inclusion_length(&numbers, range) {
        Ok(est) => Some(est.l_estimate),
        Err(Error::EmptyList) => {
            warnings.push("no translation numbers found in the searched range".to_string());
            None
        }
        Err(e) => return Err(invalid_from(e)),
    };
    let mut trace = Table::new(&["tau", "discrepancy"]);
    for t in &numbers {
        trace.push(vec![t.tau.into(), t.discrepancy.into()]);
    }
    Ok(Outcome {
        report: Report {
            command: "periods",
            params,
            result: json!({
                "count": numbers.len(),
                "inclusion_length": inclusion,
            }),
            trace,
            warnings,
        },
        format,
        out,
        exit: EXIT_OK,
    })
}

fn variation(a: VariationArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let mut params = Map::new();
    let f = signal(&a.signal, &cfg, &mut params)?;
    let q = quadrature(&a.quad, &cfg)?;
    let (format, out) = output(&a.output, &cfg);
    match range_pair("--range", a.range, cfg.range) {
        Some(range) => {
            let (lo, hi) = range?;
            let initial_grid = a
                .initial_grid
                .or(cfg.initial_grid)
                .unwrap_or(DEFAULT_INITIAL_GRID);
            if initial_grid < 2 {
                return Err(Invalid::new(
                    "--initial-grid",
                    format!("must be >= 2, got {initial_grid}"),
                ));
            }
            let max_refinements = a
                .max_refinements
                .or(cfg.max_refinements)
                .unwrap_or(DEFAULT_MAX_REFINEMENTS);
            params.insert("range".into(), json!([lo, hi]));
            params.insert("initial_grid".into(), json!(initial_grid));
            params.insert("max_refinements".into(), json!(max_refinements));
            params.insert("tol".into(), json!(q.tolerance));
            let est = total_variation(&f, lo, hi, initial_grid, q.tolerance, max_refinements)
                .map_err(invalid_from)?;
            let mut trace = Table::new(&["grid_size", "estimate"]);
            for &(n, s) in &est.refinement_trace {
                trace.push(vec![n.into(), s.into()]);
            }
            let mut warnings = Vec::new();
            if !est.partition_converged {
                warnings.push(format!(
                    "partition refinement did not reach tolerance {:e}; the value comes from the derivative quadrature",
                    q.tolerance
                ));
            }
            Ok(Outcome {
                report: Report {
                    command: "variation",
                    params,
                    result: json!({
                        "interval": [est.interval.0, est.interval.1],
                        "value": est.value,
                        "method": est.method,
                        "partition_value": est.refinement_trace.last().map(|t| t.1),
                        "partition_converged": est.partition_converged,
                    }),
                    trace,
                    warnings,
                },
                format,
                out,
                exit: EXIT_OK,
            })
        }
        None => {
            quad_params(&q, &mut params);
            let est = match average_variation(&f, &q) {
                Ok(est) => est,
                Err(e) => return partial_outcome("variation", params, e, format, out),
            };
            Ok(Outcome {
                report: Report {
                    command: "variation",
                    params,
                    result: json!({
                        "value": est.value,
                        "method": "average",
                        "converged": est.converged,
                        "window": est.windows.last().map(|w| w.0),
                    }),
                    trace: average_table(&est),
                    warnings: vec![],
                },
                format,
                out,
                exit: EXIT_OK,
            })
        }
    }
}

fn bound_outcome(
    command: &'static str,
    params: Map<String, Value>,
    r: crate::error::Result<BoundReport>,
    format: Format,
    out: Option<PathBuf>,
) -> Res<Outcome> {
    let report = match r {
        Ok(report) => report,
        Err(e @ Error::NotConverged { .. }) => {
            return partial_outcome(command, params, e, format, out)
        }
        Err(e) => return Err(invalid_from(e)),
    };
    let mut trace = Table::new(&["lambda", "coeff", "bound", "margin", "satisfied"]);
    for e in &report.entries {
        trace.push(vec![
            e.lambda.into(),
            e.coeff_magnitude.into(),
            e.bound.into(),
            e.margin.into(),
            e.satisfied.into(),
        ]);
    }
    let violated = report.entries.iter().filter(|e| !e.satisfied).count();
    let warnings = if violated > 0 {
        vec![format!("bound violated at {violated} exponent(s)")]
    } else {
        vec![]
    };
    Ok(Outcome {
        report: Report {
            command,
            params,
            result: json!({
                "derivative_order": report.derivative_order,
                "variation_value": report.variation_value,
                "report_tolerance": report.report_tolerance,
                "all_satisfied": report.all_satisfied(),
            }),
            trace,
            warnings,
        },
        format,
        out,
        exit: EXIT_OK,
    })
}

fn bound_check(a: BoundCheckArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let mut params = Map::new();
    let f = signal(&a.signal, &cfg, &mut params)?;
    let n = a.n.or(cfg.n).unwrap_or(0);
    let q = quadrature(&a.quad, &cfg)?;
    let lambdas = if !a.lambda.is_empty() {
        a.lambda.clone()
    } else if let Some(l) = cfg.lambda.clone() {
        l.into_vec()
    } else {
        f.to_trig().frequencies().filter(|&l| l != 0.0).collect()
    };
    for &l in &lambdas {
        finite("--lambda", l)?;
        if l == 0.0 {
            return Err(Invalid::new(
                "--lambda",
                "must be nonzero; the bound is undefined at frequency 0",
            ));
        }
    }
    params.insert("lambda".into(), json!(lambdas));
    params.insert("n".into(), json!(n));
    quad_params(&q, &mut params);
    let bp = BoundParams {
        quadrature: q,
        ..BoundParams::default()
    };
    params.insert("report_tolerance".into(), json!(bp.report_tolerance));
    let (format, out) = output(&a.output, &cfg);
    let r = check_decay_bound(&f, &lambdas, n, &bp);
    bound_outcome("bound-check", params, r, format, out)
}

fn taibleson(a: TaiblesonArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let mut params = Map::new();
    let f = signal(&a.signal, &cfg, &mut params)?;
    let j_max = a.j_max.or(cfg.j_max).unwrap_or(DEFAULT_J_MAX);
    if j_max == 0 {
        return Err(Invalid::new("--j-max", "must be >= 1"));
    }
    let q = quadrature(&a.quad, &cfg)?;
    params.insert("j_max".into(), json!(j_max));
    quad_params(&q, &mut params);
    let bp = BoundParams {
        quadrature: q,
        ..BoundParams::default()
    };
    params.insert("report_tolerance".into(), json!(bp.report_tolerance));
    let (format, out) = output(&a.output, &cfg);
    let r = check_taibleson(&f, j_max, &bp);
    if let Err(e @ Error::NotPeriodic { .. }) = &r {
        return Err(Invalid::new("--signal", e.to_string()));
    }
    bound_outcome("taibleson", params, r, format, out)
}

fn zeta(a: ZetaArgs) -> Res<Outcome> {
    let cfg = load_config(&a.output)?;
    let x = required("--x", a.x.or(cfg.x))?;
    let n_terms = required("--N", a.n_terms.or(cfg.n_terms))?;
    let order = a.order.or(cfg.order).unwrap_or(0);
    let z = zeta_truncation(x, n_terms, order, "--x", "--N")?;
    let mode = a.mode.or(cfg.mode).unwrap_or(ZetaMode::Bound);
    let q = quadrature(&a.quad, &cfg)?;
    let (format, out) = output(&a.output, &cfg);
    let mut params = Map::new();
    params.insert("x".into(), json!(x));
    params.insert("N".into(), json!(n_terms));
    params.insert("J".into(), json!(order));
    match mode {
        ZetaMode::Bound => {
            params.insert("mode".into(), json!("bound"));
            quad_params(&q, &mut params);
            let report_tolerance = crate::bounds::DEFAULT_REPORT_TOLERANCE;
            params.insert("report_tolerance".into(), json!(report_tolerance));
            let r = zeta_bound_experiment(&z, &q, report_tolerance).map_err(invalid_from)?;
            let mut trace = Table::new(&["T", "average_variation"]);
            for &(w, v) in &r.windows {
                trace.push(vec![w.into(), v.into()]);
            }
            let mut warnings = Vec::new();
            if !r.converged {
                warnings.push(not_converged("average variation", q.tolerance));
            }
            if !r.satisfied {
                warnings.push("average variation is below the lower bound".to_string());
            }
            Ok(Outcome {
                report: Report {
                    command: "zeta",
                    params,
                    result: json!({
                        "average_variation": r.average_variation,
                        "lower_bound": r.lower_bound,
                        "margin": r.margin,
                        "satisfied": r.satisfied,
                        "converged": r.converged,
                    }),
                    trace,
                    warnings,
                },
                format,
                out,
                exit: if r.converged {
                    EXIT_OK
                } else {
                    EXIT_NOT_CONVERGED
                },
            })
        }
        ZetaMode::Eval => {
            let range = range_pair("--range", a.range, cfg.range)
                .unwrap_or(Ok((DEFAULT_EVAL_RANGE[0], DEFAULT_EVAL_RANGE[1])))?;
            let step = positive("--step", a.step.or(cfg.step).unwrap_or(DEFAULT_EVAL_STEP))?;
            grid_size("--step", range, step)?;
            params.insert("mode".into(), json!("eval"));
            params.insert("range".into(), json!([range.0, range.1]));
            params.insert("step".into(), json!(step));
            let mut trace = Table::new(&["y", "re", "im"]);
            for y in uniform_grid(range.0, range.1, step) {
                let v = z.eval(y);
                trace.push(vec![y.into(), v.re.into(), v.im.into()]);
            }
            Ok(Outcome {
                report: Report {
                    command: "zeta",
                    params,
                    result: json!({"samples": trace.rows.len()}),
                    trace,
                    warnings: vec![],
                },
                format,
                out,
                exit: EXIT_OK,
            })
        }
        ZetaMode::Spectrum => {
            let default_range = (-(n_terms as f64).ln() - 0.5, 0.5);
            let range = range_pair("--range", a.range, cfg.range).unwrap_or(Ok(default_range))?;
            let step = positive(
                "--step",
                a.step.or(cfg.step).unwrap_or(DEFAULT_SPECTRUM_STEP),
            )?;
            let threshold = positive(
                "--threshold",
                required("--threshold", a.threshold.or(cfg.threshold))?,
            )?;
            params.insert("mode".into(), json!("spectrum"));
            params.insert("range".into(), json!([range.0, range.1]));
            params.insert("step".into(), json!(step));
            params.insert("threshold".into(), json!(threshold));
            quad_params(&q, &mut params);
            spectrum_outcome(
                "zeta",
                &Signal::Zeta(z),
                range,
                step,
                threshold,
                &q,
                params,
                format,
                out,
            )
        }
    }
}
