//! Acceptance criteria, one PASS/FAIL line each. Runs with its own harness so
//! the verdicts are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use movquad::detrep::{self, compose, QuadricSource};
use movquad::oracle::{self, ImplicitResult};
use movquad::thresholds::{self, AnalysisReport};
use movquad::{fixtures, syzygy, Field, Fp60, Fp61, Fp62, Fp62b, Rational, SurfaceParam, XForm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;
type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const SOURCE: QuadricSource = QuadricSource::Default;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, expected {want:?}"))
}

/// `form` is a nonzero multiple of `F^k` with `k = deg(form) / deg F`.
fn multiple_of_power<F: Field>(form: &XForm<F>, o: &ImplicitResult<F>) -> Check {
    let d = form.xdeg();
    ensure(d.is_multiple_of(o.deg_f) && oracle::power_check(form, &o.f, d / o.deg_f), || {
        format!("form of degree {d} is not a multiple of a power of F (deg F = {})", o.deg_f)
    })
}

fn analysis<F: Field>(p: &SurfaceParam<F>) -> Result<AnalysisReport, String> {
    thresholds::analyze(p, 0).map_err(|e| e.to_string())
}

fn det_at<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32) -> Result<(usize, usize, XForm<F>), String> {
    let m = detrep::assemble_mpq(p, mu, nu, SOURCE).map_err(|e| e.to_string())?;
    let det = m.determinant().ok_or_else(|| format!("M_({mu},{nu}) is {}x{}", m.nrows(), m.ncols()))?;
    Ok((m.nplanes, m.nquadrics(), det))
}

fn criterion_1() -> Check {
    let p = fixtures::bideg_3_2::<Q>();
    let a = analysis(&p)?;
    eq("(r, mu0, eta0, nu0, zeta0)", (a.r, a.mu0, a.eta0, a.nu0, a.zeta0), (6, 2, 3, 2, 2))?;
    let o = oracle::implicit_equation(&p, 0).map_err(|e| e.to_string())?;
    eq("deg F", o.deg_f, 6)?;
    let (l, q, d11) = det_at(&p, 1, 1)?;
    eq("M_(1,1) planes + quadrics", (l, q), (2, 2))?;
    let (l, q, d21) = det_at(&p, 2, 1)?;
    eq("M_(2,1) planes + quadrics", (l, q), (6, 0))?;
    multiple_of_power(&d11, &o)?;
    multiple_of_power(&d21, &o)?;
    eq("power", d11.xdeg() / o.deg_f, 1)
}

fn criterion_2() -> Check {
    let p = fixtures::bideg_2_2::<Q>();
    let a = analysis(&p)?;
    eq("(mu0, eta0, r)", (a.mu0, a.eta0, a.r), (3, 3, 1))?;
    let o = oracle::implicit_equation(&p, 0).map_err(|e| e.to_string())?;
    eq("deg F", o.deg_f, 7)?;
    let (l, q, det) = det_at(&p, 2, 1)?;
    eq("M_(2,1) planes + quadrics", (l, q), (5, 1))?;
    multiple_of_power(&det, &o)?;
    eq("power", det.xdeg() / o.deg_f, 1)
}

fn criterion_3() -> Check {
    let p = fixtures::bideg_3_3::<Q>();
    let a = analysis(&p)?;
    eq("(r, mu0, eta0)", (a.r, a.mu0, a.eta0), (13, 2, 1))?;
    ensure(a.window.is_empty(), || format!("window {:?} should be empty", a.window))?;
    let c = detrep::assemble_complex(&p, 1, 2, SOURCE).map_err(|e| e.to_string())?;
    eq("complex shape", c.shape(), (6, 7, 1, 2))?;
    ensure(compose(&c.d1.forms(), &c.d2).iter().flatten().all(|e| e.is_zero()), || "d1 d2 != 0".into())?;
    ensure(c.d2.last().is_some_and(|row| row.iter().all(|e| e.is_zero())), || "quadric row of d2 is nonzero".into())?;
    let cd = detrep::complex_determinant(&c, 0, true).map_err(|e| e.to_string())?;
    eq("cross-check", cd.cross_check, Some(true))?;
    eq("degree", cd.form.xdeg(), 5)?;
    let o = oracle::implicit_equation(&p, 0).map_err(|e| e.to_string())?;
    multiple_of_power(&cd.form, &o)?;
    // no determinantal formula at (1,1)
    match detrep::assemble_mpq(&p, 1, 1, SOURCE) {
        Err(_) => Ok(()),
        Ok(m) => match m.determinant() {
            None => Ok(()),
            Some(d) => ensure(multiple_of_power(&d, &o).is_err(), || "M_(1,1) unexpectedly gives F".into()),
        },
    }
}

fn criterion_4() -> Check {
    let p = fixtures::segre::<Q>();
    let a = analysis(&p)?;
    eq("(mu0, eta0, r)", (a.mu0, a.eta0, a.r), (1, 2, 0))?;
    let f = XForm::<Q>::parse("x0*x3 - x1*x2").unwrap();
    let (l, q, d00) = det_at(&p, 0, 0)?;
    eq("M_(0,0)", (l, q, d00.clone()), (0, 1, f.clone()))?;
    let (l, q, d10) = det_at(&p, 1, 0)?;
    eq("M_(1,0)", (l, q, d10), (2, 0, f.clone()))?;
    let o = oracle::implicit_equation(&p, 0).map_err(|e| e.to_string())?;
    eq("(deg F, deg phi)", (o.deg_f, o.degphi_lci), (2, Some(1)))?;
    eq("oracle F", o.f, f)
}

/// Independent checks on one random parameterization; returns violations.
fn property_violations<F: Field>(p: &SurfaceParam<F>) -> Vec<String> {
    let (m, n) = (p.m() as i64, p.n() as i64);
    let a = match thresholds::analyze(p, 0) {
        Ok(a) => a,
        Err(e) => return vec![format!("analyze failed: {e}")],
    };
    let r = a.r as i64;
    let total = 2 * m * n - r;
    let (mu0, eta0) = (a.mu0 as i64, a.eta0 as i64);
    let mut bad = Vec::new();
    let mut check = |ok: bool, msg: String| {
        if !ok {
            bad.push(msg)
        }
    };
    check(a.mu_degrees.len() as i64 == 2 * n, format!("{} syzygy degrees, expected 2n", a.mu_degrees.len()));
    check(a.mu_degrees.iter().map(|&d| d as i64).sum::<i64>() == total, format!("degree sum != 2mn - r = {total}"));
    check(2 * n * mu0 >= total && mu0 <= 2 * m && mu0 <= total, format!("mu0 = {mu0} outside m - r/2n <= mu0 <= min(2m, 2mn - r)"));
    check(2 * m - r <= eta0 && n * eta0 <= total, format!("eta0 = {eta0} outside 2m - r <= eta0 <= 2m - r/n"));
    for mu in mu0.max(1)..=2 * m {
        let l = syzygy::moving_planes(p, mu as u32 - 1, n as u32 - 1).dim() as i64;
        check(l == 2 * n * (mu - m) + r, format!("l at mu = {mu} is {l}, formula {}", 2 * n * (mu - m) + r));
    }
    for mu in mu0.max(1)..=eta0.min(2 * m) {
        match detrep::assemble_mpq(p, mu as u32 - 1, n as u32 - 1, SOURCE) {
            Ok(mat) => check(
                mat.is_square() && mat.nrows() as i64 == mu * n,
                format!("M at mu = {mu} is {}x{}", mat.nrows(), mat.ncols()),
            ),
            Err(e) => check(false, format!("assembly at mu = {mu}: {e}")),
        }
    }
    bad
}

fn criterion_5() -> Check {
    const PER_BIDEGREE: usize = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut with_base_points = 0;
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let room = ((m + 1) * (n + 1) - 4) as usize;
        for i in 0..PER_BIDEGREE {
            let bp = i % (room.min(4) + 1);
            with_base_points += usize::from(bp > 0);
            let p = movquad::algebra::random_param::<Fp62, _>(m, n, bp, &mut rng);
            for v in property_violations(&p) {
                failures.push(format!("({m},{n}) #{i} [{bp} base points]: {v}"));
            }
        }
    }
    ensure(with_base_points > 0, || "no sample had base points".into())?;
    ensure(failures.is_empty(), || format!("{} violations, first: {}", failures.len(), failures[0]))
}

fn criterion_6() -> Check {
    let cases = [fixtures::bideg_3_2::<Q>(), fixtures::bideg_2_2::<Q>(), fixtures::segre::<Q>()];
    for p in cases {
        let name = p.name().unwrap_or("?").to_string();
        let a = analysis(&p)?;
        let n = p.n();
        let mut dets = Vec::new();
        for &mu in &a.window {
            dets.push(det_at(&p, mu - 1, n - 1)?.2);
        }
        let top = 2 * p.m();
        let c = detrep::assemble_complex(&p, top - 1, n - 1, SOURCE).map_err(|e| e.to_string())?;
        let cd = detrep::complex_determinant(&c, 0, true).map_err(|e| e.to_string())?;
        ensure(!dets.is_empty(), || format!("{name}: empty window"))?;
        for (k, d) in dets.iter().enumerate() {
            ensure(d.proportional(&dets[0]).is_some(), || format!("{name}: window determinants {k} and 0 differ"))?;
        }
        ensure(cd.form.proportional(&dets[0]).is_some(), || {
            format!("{name}: complex determinant at mu = 2m is not proportional (degree {})", cd.form.xdeg())
        })?;
    }
    Ok(())
}

/// Every dimension and threshold that does not depend on the field.
fn invariants<F: Field>(p: &SurfaceParam<F>) -> Result<String, String> {
    let mut a = analysis(p)?;
    a.field.clear();
    let mut dims = Vec::new();
    for mu in 0..=2 * p.m() {
        for nu in 0..p.n() {
            dims.push((
                syzygy::moving_planes(p, mu, nu).dim(),
                syzygy::quadratic_relations(p, mu, nu).dim(),
                syzygy::koszul_z2(p, mu, nu).dim(),
            ));
        }
    }
    let shapes: Vec<_> = (a.mu0.max(1)..=2 * p.m())
        .map(|mu| detrep::assemble_complex(p, mu - 1, p.n() - 1, SOURCE).map(|c| c.shape()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let o = oracle::implicit_equation(p, 0).map_err(|e| e.to_string())?;
    Ok(format!("{a:?} {dims:?} {shapes:?} {}", o.deg_f))
}

fn criterion_7() -> Check {
    for (q, a, b, c) in [
        (fixtures::segre::<Q>(), fixtures::segre::<Fp61>(), fixtures::segre::<Fp62b>(), fixtures::segre::<Fp60>()),
        (fixtures::bideg_3_2(), fixtures::bideg_3_2(), fixtures::bideg_3_2(), fixtures::bideg_3_2()),
        (fixtures::bideg_2_2(), fixtures::bideg_2_2(), fixtures::bideg_2_2(), fixtures::bideg_2_2()),
        (fixtures::bideg_3_3(), fixtures::bideg_3_3(), fixtures::bideg_3_3(), fixtures::bideg_3_3()),
    ] {
        let name = q.name().unwrap_or("?").to_string();
        let over_q = invariants(&q)?;
        for (prime, other) in [("2^61-1", invariants(&a)?), ("2^62-87", invariants(&b)?), ("2^60-93", invariants(&c)?)] {
            ensure(other == over_q, || format!("{name}: QQ and GF({prime}) disagree"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("bidegree (3,2): thresholds, M_(1,1) and M_(2,1) determinants equal F", criterion_1),
        ("bidegree (2,2): thresholds, M_(2,1) with 5 planes + 1 quadric, det equals F", criterion_2),
        ("bidegree (3,3): empty window, complex 6 <- 7+1 <- 2, minor ratio equals F", criterion_3),
        ("Segre: thresholds, M_(0,0) and M_(1,0), deg F = 2, deg phi = 1", criterion_4),
        ("property suite over 4 x 50 random maps over GF(p)", criterion_5),
        ("determinant coherence across the window and at mu = 2m", criterion_6),
        ("cross-field consistency, QQ against three primes", criterion_7),
    ];
    let mut failed = 0;
    for (k, (desc, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(()) => println!("criterion {}: PASS  {desc} ({secs:.1}s)", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {desc} ({secs:.1}s): {e}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
