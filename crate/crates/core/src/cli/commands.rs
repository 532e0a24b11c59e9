use serde::Serialize;
use serde_json::{json, Value};

use super::{CliError, Command, RunConfig};
use crate::kernels::{adjoint_kernel_basis, coburn_check, kernel_basis_with, pair_from_function, KernelOptions};
use crate::operators::{apply_s, apply_sigma, norm_report, PairedSpec};
use crate::properties::{run_all, run_suite, SuiteConfig, TrialReport, SUITES};
use crate::symbols::{inner_outer_factor, parse_symbol, CoeffVector, LaurentPoly, RationalSymbol};

/// A command's report in every output format, plus its exit code.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub command: &'static str,
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub code: i32,
}

impl Rendered {
    fn new(command: &'static str, json: Value, header: &[&str]) -> Self {
        Rendered {
            command,
            json,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            text: String::new(),
            code: 0,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        self.rows.push(cells.into_iter().collect());
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn parse(text: &str) -> Result<LaurentPoly, CliError> {
    parse_symbol(text).map_err(|e| CliError {
        code: 2,
        message: format!("{e} in {text:?}"),
    })
}

fn spec(a: &str, b: &str) -> Result<PairedSpec, CliError> {
    Ok(PairedSpec::new(parse(a)?, parse(b)?))
}

fn kernel_options(cfg: &RunConfig) -> KernelOptions {
    KernelOptions {
        null_threshold: cfg.tolerances.null_threshold,
        ..KernelOptions::escalating(cfg.escalations)
    }
}

fn rational_text(r: &RationalSymbol) -> String {
    match r.as_poly() {
        Some(p) => p.to_string(),
        None => format!("({}) / ({})", r.num(), r.den()),
    }
}

fn triple(k: i64, c: num_complex::Complex64) -> String {
    format!("({k}, {}, {})", c.re, c.im)
}

fn coeff_rows(out: &mut Rendered, prefix: &[String], v: &CoeffVector) {
    for (k, c) in v.terms() {
        let mut row = prefix.to_vec();
        row.extend([k.to_string(), c.re.to_string(), c.im.to_string()]);
        out.row(row);
    }
}

pub(super) fn dispatch(cmd: &Command, cfg: &RunConfig, bands: &[usize]) -> Result<Rendered, CliError> {
    match cmd {
        Command::Apply { a, b, f, sigma } => apply(&spec(a, b)?, &parse(f)?, *sigma),
        Command::Norm { a, b } => {
            let bands = if bands.is_empty() { vec![cfg.n] } else { bands.to_vec() };
            norm(&spec(a, b)?, &bands, cfg)
        }
        Command::Kernel { a, b, project, adjoint } => kernel(&spec(a, b)?, cfg, *project, *adjoint),
        Command::Factor { p } => factor(&parse(p)?, cfg),
        Command::PairFrom { f } => pair_from(&parse(f)?, cfg),
        Command::Coburn { a, b } => coburn(&spec(a, b)?, cfg),
        Command::Suite { name, trials, timing } => suite(name, *trials, *timing, cfg),
    }
}

fn apply(spec: &PairedSpec, f: &CoeffVector, sigma: bool) -> Result<Rendered, CliError> {
    let v = if sigma { apply_sigma(spec, f) } else { apply_s(spec, f) };
    let mut out = Rendered::new(
        "apply",
        json!({ "spec": spec, "f": f, "operator": if sigma { "Sigma" } else { "S" }, "value": v }),
        &["exponent", "re", "im"],
    );
    coeff_rows(&mut out, &[], &v);
    for (k, c) in v.terms() {
        out.line(triple(k, c));
    }
    Ok(out)
}

fn norm(spec: &PairedSpec, bands: &[usize], cfg: &RunConfig) -> Result<Rendered, CliError> {
    let reports = bands
        .iter()
        .map(|&n| norm_report(spec, n, cfg.grid_points))
        .collect::<crate::Result<Vec<_>>>()?;
    let monotone: Vec<bool> = reports
        .iter()
        .scan(f64::NEG_INFINITY, |prev, r| {
            let ok = r.sigma_max >= *prev - 1e-12 * prev.abs().max(1.0);
            *prev = r.sigma_max;
            Some(ok)
        })
        .collect();
    let mut out = Rendered::new(
        "norm",
        json!({ "spec": spec, "rows": reports, "monotone": monotone.iter().all(|&m| m) }),
        &["N", "op_norm", "M", "sqrt2M", "sumAB", "monotone"],
    );
    out.line(format!("{:>6}  {:>12}  {:>12}  {:>12}  {:>12}  monotone", "N", "op_norm", "M", "sqrt2M", "sumAB"));
    for (r, m) in reports.iter().zip(&monotone) {
        let b = &r.bounds;
        out.row([
            r.n.to_string(),
            r.sigma_max.to_string(),
            b.m.to_string(),
            b.sqrt2_m.to_string(),
            b.sum_ab.to_string(),
            m.to_string(),
        ]);
        out.line(format!(
            "{:>6}  {:>12.8}  {:>12.8}  {:>12.8}  {:>12.8}  {m}",
            r.n, r.sigma_max, b.m, b.sqrt2_m, b.sum_ab
        ));
    }
    Ok(out)
}

fn kernel(spec: &PairedSpec, cfg: &RunConfig, project: bool, adjoint: bool) -> Result<Rendered, CliError> {
    let opts = kernel_options(cfg);
    let k = if adjoint {
        adjoint_kernel_basis(spec, cfg.n, &opts)?
    } else {
        kernel_basis_with(spec, cfg.n, &opts)?
    };
    let mut json = to_json(&k);
    let proj = project.then(|| k.projections());
    if let Some(p) = &proj {
        json["projections"] = to_json(p);
    }
    let mut out = Rendered::new("kernel", json, &["vector", "part", "exponent", "re", "im"]);
    let stab = if k.stabilized { "stabilized" } else { "not stabilized" };
    out.line(format!("dim {} (N = {}, {stab})", k.dim(), k.band));
    for (i, v) in k.basis.iter().enumerate() {
        coeff_rows(&mut out, &[i.to_string(), "full".into()], v);
        out.line(format!("  v{i} = {v}"));
    }
    if let Some(p) = &proj {
        for (i, (plus, minus)) in p.plus.iter().zip(&p.minus).enumerate() {
            coeff_rows(&mut out, &[i.to_string(), "plus".into()], plus);
            coeff_rows(&mut out, &[i.to_string(), "minus".into()], minus);
            out.line(format!("  P+ v{i} = {plus}"));
            out.line(format!("  P- v{i} = {minus}"));
        }
    }
    Ok(out)
}

fn factor(p: &LaurentPoly, cfg: &RunConfig) -> Result<Rendered, CliError> {
    let fac = inner_outer_factor(p)?;
    let product_residual = fac.product_residual(p, cfg.grid_points);
    let inner_deviation = fac.inner_deviation(cfg.grid_points);
    let mut json = to_json(&fac);
    json["inner_is_constant"] = json!(fac.inner_is_constant());
    json["product_residual"] = json!(product_residual);
    json["inner_deviation"] = json!(inner_deviation);
    let mut out = Rendered::new("factor", json, &["factor", "exponent", "re", "im"]);
    coeff_rows(&mut out, &["inner_num".into()], fac.inner.num());
    coeff_rows(&mut out, &["inner_den".into()], fac.inner.den());
    coeff_rows(&mut out, &["outer".into()], fac.outer_poly());
    if fac.inner_is_constant() {
        let c = fac.unimodular_constant;
        out.line(format!("inner: constant {}", LaurentPoly::constant(c)));
    } else {
        out.line(format!("inner: {}", rational_text(&fac.inner)));
    }
    out.line(format!("outer: {}", fac.outer_poly()));
    out.line(format!("product residual: {product_residual:e}"));
    Ok(out)
}

fn pair_from(f: &CoeffVector, cfg: &RunConfig) -> Result<Rendered, CliError> {
    let k = pair_from_function(f)?;
    let mut out = Rendered::new("pair-from", to_json(&k), &["symbol", "part", "exponent", "re", "im"]);
    for (name, r) in [("a", &k.a), ("b", &k.b)] {
        coeff_rows(&mut out, &[name.into(), "num".into()], r.num());
        coeff_rows(&mut out, &[name.into(), "den".into()], r.den());
        out.line(format!("{name} = {}", rational_text(r)));
    }
    out.line(format!("residual: {:e}", k.residual));
    if k.residual > cfg.tolerances.numeric * f.norm_l2().max(1.0) {
        out.code = 1;
    }
    Ok(out)
}

fn coburn(spec: &PairedSpec, cfg: &RunConfig) -> Result<Rendered, CliError> {
    let r = coburn_check(spec, cfg.n, &kernel_options(cfg))?;
    let mut out = Rendered::new("coburn", to_json(&r), &["quantity", "value"]);
    let dims = [
        ("dim_ab", r.dim_ab),
        ("dim_ba", r.dim_ba),
        ("dim_conj", r.dim_conj),
        ("dim_adjoint", r.dim_adjoint),
    ];
    for (k, v) in dims {
        out.row([k.to_string(), v.to_string()]);
        out.line(format!("{k}: {v}"));
    }
    let jt = r.jtilde_dims_match.map_or("n/a".to_string(), |b| b.to_string());
    for (k, v) in [
        ("dichotomy", r.dichotomy.to_string()),
        ("j_dims_match", r.j_dims_match.to_string()),
        ("jtilde_dims_match", jt),
        ("holds", r.holds.to_string()),
    ] {
        out.row([k.to_string(), v.clone()]);
        out.line(format!("{k}: {v}"));
    }
    if !r.holds {
        out.code = 1;
    }
    Ok(out)
}

fn suite_row(out: &mut Rendered, s: &TrialReport) {
    out.row([
        s.suite.clone(),
        s.seed.to_string(),
        s.trials.to_string(),
        s.checks.to_string(),
        s.violations.len().to_string(),
        s.ambiguities.len().to_string(),
        s.resamples.to_string(),
        s.max_residual.to_string(),
        s.passed.to_string(),
    ]);
    out.line(format!(
        "{:<16} {:>5} checks  {:>3} violations  {:>3} ambiguities  max residual {:.2e}  {}",
        s.suite,
        s.checks,
        s.violations.len(),
        s.ambiguities.len(),
        s.max_residual,
        if s.no_evidence {
            "NO EVIDENCE"
        } else if s.passed {
            "PASS"
        } else {
            "FAIL"
        }
    ));
    for v in &s.violations {
        let trial = v.trial.map_or("pinned".into(), |t| format!("trial {t}"));
        out.line(format!("    {trial}: {}: {}", v.label, v.message));
    }
}

fn suite(name: &str, trials: Option<usize>, timing: bool, cfg: &RunConfig) -> Result<Rendered, CliError> {
    let sc = SuiteConfig {
        seed: cfg.seed,
        trials,
        band: cfg.n,
        grid_points: cfg.grid_points,
        tolerances: cfg.tolerances.clone(),
        escalations: cfg.escalations,
        ..SuiteConfig::default()
    };
    let header = [
        "suite", "seed", "trials", "checks", "violations", "ambiguities", "resamples", "max_residual", "passed",
    ];
    let (json, reports, code) = if name == "all" {
        let mut r = run_all(&sc);
        let code = r.exit_code();
        if !timing {
            r = r.without_runtime();
        }
        (to_json(&r), r.suites, code)
    } else {
        if !SUITES.contains(&name) {
            return Err(CliError::usage(format!(
                "unknown suite {name:?}; expected all or one of {}",
                SUITES.join(", ")
            )));
        }
        let mut r = run_suite(name, &sc)?;
        if !timing {
            r.runtime_ms = 0.0;
        }
        let code = r.exit_code();
        (to_json(&r), vec![r], code)
    };
    let mut out = Rendered::new("suite", json, &header);
    for s in &reports {
        suite_row(&mut out, s);
    }
    out.code = code;
    Ok(out)
}
