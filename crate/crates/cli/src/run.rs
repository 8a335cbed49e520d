use std::fmt::Write as _;
use std::fs;

use movquad::detrep::{self, QuadricSource, DEFAULT_SAT_CAP};
use movquad::thresholds::{self, AnalysisReport, LqRow};
use movquad::{oracle, syzygy, Error, Field, Fp60, Fp61, Fp62, Fp62b, Rational, Result, SurfaceParam, XForm};
use serde_json::{json, Value};

use crate::args::{Command, FieldChoice, JobConfig, OutputFormat, QuadricChoice};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

/// What to print and how to exit.
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Result of one command, before formatting.
struct Report {
    text: String,
    json: Value,
    /// `Some(false)` when an oracle comparison failed.
    verified: Option<bool>,
}

pub fn run(job: &JobConfig) -> Outcome {
    if let Err(msg) = job.validate() {
        return failure(EXIT_INPUT, msg);
    }
    let text = match fs::read_to_string(&job.input) {
        Ok(t) => t,
        Err(e) => return failure(EXIT_INPUT, format!("cannot read {}: {e}", job.input.display())),
    };
    let result = match job.field {
        FieldChoice::Rational => execute::<Rational>(job, &text),
        FieldChoice::Fp(p) if p == Fp62::MODULUS => execute::<Fp62>(job, &text),
        FieldChoice::Fp(p) if p == Fp61::MODULUS => execute::<Fp61>(job, &text),
        FieldChoice::Fp(p) if p == Fp62b::MODULUS => execute::<Fp62b>(job, &text),
        FieldChoice::Fp(p) if p == Fp60::MODULUS => execute::<Fp60>(job, &text),
        FieldChoice::Fp(p) => return failure(EXIT_INPUT, format!("prime {p} is not compiled in")),
    };
    match result {
        Ok(report) => {
            let code = if report.verified == Some(false) { EXIT_VERIFY } else { EXIT_OK };
            let stdout = match job.output {
                OutputFormat::Text => report.text,
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            let stderr = if code == EXIT_VERIFY { "error: oracle verification failed\n".into() } else { String::new() };
            Outcome { code, stdout, stderr }
        }
        Err(e) => failure(if e.is_input_error() { EXIT_INPUT } else { EXIT_INTERNAL }, e.to_string()),
    }
}

fn failure(code: u8, msg: String) -> Outcome {
    Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn execute<F: Field>(job: &JobConfig, text: &str) -> Result<Report> {
    let mut p = SurfaceParam::<F>::from_json(text)?;
    if job.transpose {
        p = p.transpose();
    }
    let source = match job.quadric_source {
        QuadricChoice::Default => QuadricSource::Default,
        QuadricChoice::Saturated => QuadricSource::Saturated { cap: DEFAULT_SAT_CAP },
    };
    let mut report = match job.command {
        Command::Analyze => analyze(&p, job.seed)?,
        Command::Planes => planes(&p, job.bidegree()),
        Command::Quadrics => quadrics(&p, job.bidegree(), source)?,
        Command::Matrix => matrix(&p, job, source)?,
        Command::Complex => complex(&p, job, source)?,
        Command::Implicitize => implicitize(&p, job.seed, source)?,
        Command::Verify => verify(&p, job)?,
    };
    let header = format!(
        "{} over {}, bidegree ({},{}){}\n",
        p.name().unwrap_or("input"),
        F::name(),
        p.m(),
        p.n(),
        if job.transpose { ", transposed" } else { "" }
    );
    report.text.insert_str(0, &header);
    report.json = json!({
        "command": job.command_name(),
        "field": F::name(),
        "m": p.m(),
        "n": p.n(),
        "seed": job.seed,
        "transpose": job.transpose,
        "result": report.json,
    });
    Ok(report)
}

/// Oracle comparison of a produced form.
struct Verdict<F: Field> {
    f: XForm<F>,
    deg_f: u32,
    power: Option<u32>,
    ok: bool,
}

impl<F: Field> Verdict<F> {
    fn json(&self) -> Value {
        json!({ "F": self.f.to_string(), "degF": self.deg_f, "power": self.power, "multiple_of_power": self.ok })
    }

    fn text(&self, what: &str) -> String {
        let mut s = format!("oracle F = {}\noracle deg F = {}\n", self.f, self.deg_f);
        match self.power {
            Some(k) if self.ok => writeln!(s, "{what} is a nonzero multiple of F^{k}: yes"),
            Some(k) => writeln!(s, "{what} is a nonzero multiple of F^{k}: NO"),
            None => writeln!(s, "{what}: degree is not a multiple of deg F: NO"),
        }
        .unwrap();
        s
    }
}

/// `power` defaults to `deg(form) / deg F` when that divides.
fn check<F: Field>(p: &SurfaceParam<F>, form: &XForm<F>, power: Option<u32>, seed: u64) -> Result<Verdict<F>> {
    let o = oracle::implicit_equation(p, seed)?;
    let power = power.or_else(|| form.xdeg().is_multiple_of(o.deg_f).then(|| form.xdeg() / o.deg_f)).filter(|&k| k >= 1);
    let ok = power.is_some_and(|k| oracle::power_check(form, &o.f, k));
    Ok(Verdict { f: o.f, deg_f: o.deg_f, power, ok })
}

/// Runs the oracle unless `--no-verify`, appending to `text` and returning the JSON and verdict.
fn maybe_check<F: Field>(
    p: &SurfaceParam<F>,
    form: &XForm<F>,
    job_seed: u64,
    skip: bool,
    what: &str,
    text: &mut String,
) -> Result<(Value, Option<bool>)> {
    if skip {
        text.push_str("oracle: skipped\n");
        return Ok((Value::Null, None));
    }
    let v = check(p, form, None, job_seed)?;
    text.push_str(&v.text(what));
    Ok((v.json(), Some(v.ok)))
}

fn set(list: &[u32]) -> String {
    let items: Vec<String> = list.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn lq_text(rows: &[LqRow]) -> String {
    let mut s = String::from("  mu    l    q  computed l\n");
    for r in rows {
        writeln!(s, "{:>4} {:>4} {:>4} {:>12}", r.mu, r.l, r.q, r.l_computed).unwrap();
    }
    s
}

fn analyze<F: Field>(p: &SurfaceParam<F>, seed: u64) -> Result<Report> {
    let a: AnalysisReport = thresholds::analyze(p, seed)?;
    let agree = |ok: bool, trials: usize, redraws: usize| {
        format!("{} over {trials} trials, {redraws} redraws", if ok { "agreed" } else { "DISAGREED" })
    };
    let mut text = String::new();
    writeln!(text, "r = {}", a.r).unwrap();
    writeln!(text, "mu0 = {}   syzygy degrees {:?}", a.mu0, a.mu_degrees).unwrap();
    writeln!(text, "nu0 = {}   syzygy degrees {:?}", a.nu0, a.nu_degrees).unwrap();
    writeln!(text, "eta0 = {}   {}", a.eta0, agree(a.eta0_agreed, a.eta0_trials, a.eta0_redraws)).unwrap();
    writeln!(text, "zeta0 = {}   {}", a.zeta0, agree(a.zeta0_agreed, a.zeta0_trials, a.zeta0_redraws)).unwrap();
    writeln!(text, "window = {}", set(&a.window)).unwrap();
    writeln!(text, "transposed window = {}", set(&a.transposed_window)).unwrap();
    writeln!(text, "2mn - r = {}", a.implied_product).unwrap();
    writeln!(text, "degree sums and bounds: ok").unwrap();
    text.push_str("planes and quadrics in bidegree (mu-1, n-1):\n");
    text.push_str(&lq_text(&a.lq_table));
    text.push_str("transposed:\n");
    text.push_str(&lq_text(&a.transposed_lq_table));
    for w in &a.warnings {
        writeln!(text, "warning: {w}").unwrap();
    }
    let json = serde_json::to_value(&a).expect("serializable");
    Ok(Report { text, json, verified: None })
}

fn planes<F: Field>(p: &SurfaceParam<F>, (mu, nu): (u32, u32)) -> Report {
    let v = syzygy::moving_planes(p, mu, nu);
    let text = format!("moving planes in bidegree ({mu},{nu}): {}\n{v}", v.dim());
    Report { text, json: v.to_json_value(), verified: None }
}

fn quadrics<F: Field>(p: &SurfaceParam<F>, (mu, nu): (u32, u32), source: QuadricSource) -> Result<Report> {
    let vp = syzygy::plane_generated_quadrics(&syzygy::moving_planes(p, mu, nu));
    let (w, saturation) = match source {
        QuadricSource::Default => (syzygy::quadratic_relations(p, mu, nu), None),
        QuadricSource::Saturated { cap } => {
            let s = syzygy::saturated_quadrics(p, mu, nu, cap);
            (s.space, Some((s.exponent, s.stable)))
        }
    };
    let reduced = syzygy::reduced_quadrics(&w, &vp)?;
    let mut text = format!(
        "moving quadrics in bidegree ({mu},{nu}): {}\ngenerated by moving planes: {}\ncomplement: {}\n",
        w.dim(),
        vp.dim(),
        reduced.dim()
    );
    if let Some((e, stable)) = saturation {
        writeln!(text, "saturation exponent {e}, {}", if stable { "stable" } else { "cap reached" }).unwrap();
    }
    text.push_str(&reduced.to_string());
    let json = json!({
        "mu": mu,
        "nu": nu,
        "quadrics_dim": w.dim(),
        "plane_generated_dim": vp.dim(),
        "saturation": saturation.map(|(e, s)| json!({ "exponent": e, "stable": s })),
        "complement": reduced.to_json_value(),
    });
    Ok(Report { text, json, verified: None })
}

fn matrix<F: Field>(p: &SurfaceParam<F>, job: &JobConfig, source: QuadricSource) -> Result<Report> {
    let (mu, nu) = job.bidegree();
    let m = detrep::assemble_mpq(p, mu, nu, source)?;
    let mut text = format!(
        "M_({mu},{nu}): {} x {}, {} planes + {} quadrics, {}\n{m}",
        m.nrows(),
        m.ncols(),
        m.nplanes,
        m.nquadrics(),
        if m.is_square() { "square" } else { "not square" }
    );
    let det = m.determinant();
    let (oracle_json, verified) = match &det {
        Some(d) => {
            writeln!(text, "det = {d}").unwrap();
            maybe_check(p, d, job.seed, job.no_verify, "det", &mut text)?
        }
        None => (Value::Null, None),
    };
    let json = json!({
        "matrix": m.to_json_value(),
        "planes": m.nplanes,
        "quadrics": m.nquadrics(),
        "square": m.is_square(),
        "determinant": det.as_ref().map(|d| d.to_string()),
        "oracle": oracle_json,
    });
    Ok(Report { text, json, verified })
}

fn complex<F: Field>(p: &SurfaceParam<F>, job: &JobConfig, source: QuadricSource) -> Result<Report> {
    let (mu, nu) = job.bidegree();
    let c = detrep::assemble_complex(p, mu, nu, source)?;
    let cd = detrep::complex_determinant(&c, job.seed, true)?;
    let (rows, l, q, z) = c.shape();
    let mut text = format!("complex in bidegree ({mu},{nu}): {rows} <- {l}+{q} <- {z}\nd1:\n{}", c.d1);
    if z > 0 {
        let labels: Vec<String> = (0..c.d2.len()).map(|k| format!("c{k}")).collect();
        text.push_str("d2:\n");
        text.push_str(&detrep::form_table(&labels, &c.d2));
        writeln!(text, "minor ratio over columns {:?} of d1", cd.subset).unwrap();
        match &cd.second_subset {
            Some(s) => writeln!(text, "cross-check with columns {s:?}: agree").unwrap(),
            None => writeln!(text, "cross-check: no second admissible subset").unwrap(),
        }
    }
    writeln!(text, "determinant = {}\ndegree = {}", cd.form, cd.form.xdeg()).unwrap();
    let (oracle_json, verified) = maybe_check(p, &cd.form, job.seed, job.no_verify, "determinant", &mut text)?;
    let json = json!({
        "presentation": c.to_json_value(),
        "shape": { "rows": rows, "planes": l, "quadrics": q, "z2": z },
        "determinant": cd.form.to_string(),
        "degree": cd.form.xdeg(),
        "subset": cd.subset,
        "second_subset": cd.second_subset,
        "cross_check": cd.cross_check,
        "oracle": oracle_json,
    });
    Ok(Report { text, json, verified })
}

/// Determinant of `M` at `mu0` inside the window, the determinant of the complex otherwise.
fn implicitize<F: Field>(p: &SurfaceParam<F>, seed: u64, source: QuadricSource) -> Result<Report> {
    let a = thresholds::analyze(p, seed)?;
    let mu = a.mu0.checked_sub(1).ok_or_else(|| Error::BoundViolated("mu0 = 0".into()))?;
    let nu = p.n() - 1;
    let (method, form) = if a.window.is_empty() {
        let c = detrep::assemble_complex(p, mu, nu, source)?;
        ("complex", detrep::complex_determinant(&c, seed, true)?.form)
    } else {
        let m = detrep::assemble_mpq(p, mu, nu, source)?;
        let det = m.determinant().ok_or_else(|| {
            Error::BoundViolated(format!("M_({mu},{nu}) is {}x{} although mu0 lies in the window", m.nrows(), m.ncols()))
        })?;
        ("matrix", det)
    };
    let mut text = format!(
        "mu0 = {}, eta0 = {}, window = {}\nmethod: {}\nbidegree ({mu},{nu})\nresult = {form}\ndegree = {}\n",
        a.mu0,
        a.eta0,
        set(&a.window),
        if method == "matrix" { "determinant of the matrix of moving planes and quadrics" } else { "determinant of the complex" },
        form.xdeg()
    );
    // always cross-checked, whatever --no-verify says
    let (oracle_json, verified) = maybe_check(p, &form, seed, false, "result", &mut text)?;
    let json = json!({
        "method": method,
        "mu0": a.mu0,
        "eta0": a.eta0,
        "window": a.window,
        "bidegree": [mu, nu],
        "form": form.to_string(),
        "degree": form.xdeg(),
        "oracle": oracle_json,
    });
    Ok(Report { text, json, verified })
}

fn verify<F: Field>(p: &SurfaceParam<F>, job: &JobConfig) -> Result<Report> {
    let form = XForm::<F>::parse(job.form.as_deref().expect("validated"))?;
    let v = check(p, &form, job.power, job.seed)?;
    let text = format!("form = {form}\n{}", v.text("form"));
    let json = json!({ "form": form.to_string(), "oracle": v.json() });
    Ok(Report { text, json, verified: Some(v.ok) })
}
