//! Base-scheme degree, syzygy generator degrees and the threshold degrees
//! `mu0`, `nu0`, `eta0`, `zeta0`.
//!
//! Generator degrees come from second differences of kernel dimensions: the
//! t-degree `n - 1` syzygies form a free `k[s0,s1]`-module, so if
//! `k(e) = dim ker(mult_map(polys, e, n - 1))` then the number of generators
//! in degree `e` is `k(e) - 2 k(e-1) + k(e-2)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{bidegree_dim, BiHomPoly, Field, SurfaceParam};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};
use crate::syzygy::mult_map;

/// Default number of random draws for `eta0`.
pub const ETA_TRIALS: usize = 3;

/// Coefficient bound for the random combinations defining `f'`.
pub const COMBINATION_BOUND: i64 = 1000;

const MAX_REDRAWS: usize = 10;

/// `r = dim R_(3m-1, 2n-1) - rank(mult_map(f, 2m-1, n-1))`, checked to agree one degree higher.
pub fn base_degree_r<F: Field>(p: &SurfaceParam<F>) -> Result<usize> {
    let (m, n) = (p.m(), p.n());
    let at = |e: u32| bidegree_dim(e + m, 2 * n - 1) - exactla::rank(&mult_map(p.f(), e, n - 1));
    let (r, r1) = (at(2 * m - 1), at(2 * m));
    if r != r1 {
        return Err(Error::StabilizationFailure { at_2m: r, at_2m1: r1 });
    }
    Ok(r)
}

/// Where a multiset of generator degrees came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeSource {
    F,
    FTransposed,
    Fprime { seed: u64 },
}

/// Degrees of a minimal generating set of the t-degree `n - 1` syzygy module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorDegrees {
    /// Sorted ascending.
    pub degrees: Vec<u32>,
    pub expected_count: usize,
    pub source: DegreeSource,
    /// `k(e)` for `e = 0 ..= 2m + 1`.
    pub kernel_dims: Vec<usize>,
}

impl GeneratorDegrees {
    pub fn max(&self) -> Option<u32> {
        self.degrees.last().copied()
    }

    pub fn min(&self) -> Option<u32> {
        self.degrees.first().copied()
    }

    pub fn sum(&self) -> u32 {
        self.degrees.iter().sum()
    }
}

/// Kernel dimensions of `mult_map(polys, e, n - 1)` for `e = 0 ..= 2m + 1`.
pub fn kernel_dims<F: Field>(polys: &[BiHomPoly<F>]) -> Vec<usize> {
    let (m, n) = polys[0].bidegree();
    (0..=2 * m + 1)
        .map(|e| {
            let map = mult_map(polys, e, n - 1);
            map.ncols() - exactla::rank(&map)
        })
        .collect()
}

/// Generator degrees of the syzygies of `polys` (three or four of bidegree `(m, n)`).
pub fn generator_degrees<F: Field>(polys: &[BiHomPoly<F>], source: DegreeSource) -> Result<GeneratorDegrees> {
    let (_, n) = polys[0].bidegree();
    let k = kernel_dims(polys);
    let at = |e: i64| if e < 0 { 0 } else { k[e as usize] as i64 };
    let mut degrees = Vec::new();
    for e in 0..k.len() as i64 {
        let count = at(e) - 2 * at(e - 1) + at(e - 2);
        if count < 0 {
            return Err(Error::NegativeSecondDifference { degree: e as u32, value: count });
        }
        degrees.extend(std::iter::repeat_n(e as u32, count as usize));
    }
    // the module of syzygies of c general polynomials has rank (c - 2) n
    let expected_count = (polys.len() - 2) * n as usize;
    if degrees.len() != expected_count {
        return Err(Error::BoundViolated(format!(
            "found {} syzygy generators in degrees <= {}, expected {expected_count}",
            degrees.len(),
            k.len() - 1
        )));
    }
    Ok(GeneratorDegrees { degrees, expected_count, source, kernel_dims: k })
}

/// `mu0`: the largest generator degree of the syzygies of `f`.
pub fn mu0<F: Field>(p: &SurfaceParam<F>) -> Result<u32> {
    Ok(generator_degrees(p.f(), DegreeSource::F)?.max().expect("nonempty"))
}

/// `nu0`: `mu0` of the transposed parameterization.
pub fn nu0<F: Field>(p: &SurfaceParam<F>) -> Result<u32> {
    mu0(&p.transpose())
}

/// Result of the randomized `eta0` computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaEstimate {
    pub value: u32,
    /// Whether every trial gave the same value.
    pub agreed: bool,
    /// Number of successful trials.
    pub trials: usize,
    /// Draws rejected because the combinations were dependent.
    pub redraws: usize,
    /// Generator degrees of the trial attaining `value`.
    pub degrees: GeneratorDegrees,
}

/// Three random combinations of `f0..f3` with coefficients in `[-B, B] \ {0}`.
pub fn random_combinations<F: Field, R: Rng>(p: &SurfaceParam<F>, rng: &mut R) -> (Matrix<F>, Vec<BiHomPoly<F>>) {
    let coeffs: Vec<Vec<F>> = (0..3)
        .map(|_| {
            (0..4)
                .map(|_| {
                    let mut v = 0;
                    while v == 0 {
                        v = rng.random_range(-COMBINATION_BOUND..=COMBINATION_BOUND);
                    }
                    F::from_i64(v)
                })
                .collect()
        })
        .collect();
    let polys = coeffs
        .iter()
        .map(|row| {
            let mut acc = BiHomPoly::zero(p.m(), p.n());
            for (c, f) in row.iter().zip(p.f()) {
                acc = acc.add(&f.scale(c));
            }
            acc
        })
        .collect();
    (Matrix::from_rows(4, coeffs), polys)
}

/// `eta0`: the smallest syzygy degree of three general combinations of `f`.
///
/// Special combinations can only have extra low-degree syzygies, so the maximum
/// over `trials` independent draws is returned.
pub fn eta0<F: Field>(p: &SurfaceParam<F>, trials: usize, seed: u64) -> Result<EtaEstimate> {
    assert!(trials >= 1, "at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut redraws = 0;
    let mut best: Option<GeneratorDegrees> = None;
    let mut values = Vec::new();
    while values.len() < trials {
        let (coeffs, polys) = random_combinations(p, &mut rng);
        if exactla::rank(&coeffs) < 3 {
            redraws += 1;
            if redraws > MAX_REDRAWS {
                return Err(Error::DegenerateDraws(MAX_REDRAWS));
            }
            continue;
        }
        let degrees = generator_degrees(&polys, DegreeSource::Fprime { seed })?;
        let v = degrees.min().expect("nonempty");
        values.push(v);
        if best.as_ref().is_none_or(|b| b.min() < Some(v)) {
            best = Some(degrees);
        }
    }
    let value = *values.iter().max().expect("nonempty");
    Ok(EtaEstimate {
        value,
        agreed: values.iter().all(|&v| v == value),
        trials,
        redraws,
        degrees: best.expect("nonempty"),
    })
}

/// `zeta0`: `eta0` of the transposed parameterization.
pub fn zeta0<F: Field>(p: &SurfaceParam<F>, trials: usize, seed: u64) -> Result<EtaEstimate> {
    eta0(&p.transpose(), trials, seed)
}

/// One row of the plane/quadric count table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LqRow {
    pub mu: u32,
    /// `2n(mu - m) + r`.
    pub l: i64,
    /// `n mu - l`.
    pub q: i64,
    /// Dimension of the moving planes in bidegree `(mu - 1, n - 1)`, computed.
    pub l_computed: usize,
}

/// Everything [`analyze`] reports about one direction of a parameterization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionReport {
    pub mu0: u32,
    pub eta0: EtaEstimate,
    pub degrees: GeneratorDegrees,
    pub lq_table: Vec<LqRow>,
    /// `mu0 ..= eta0`, empty when `mu0 > eta0`.
    pub window: Vec<u32>,
}

/// The flat analysis report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub field: String,
    pub m: u32,
    pub n: u32,
    pub r: usize,
    pub mu0: u32,
    pub nu0: u32,
    pub eta0: u32,
    pub eta0_agreed: bool,
    pub eta0_trials: usize,
    pub eta0_redraws: usize,
    pub zeta0: u32,
    pub zeta0_agreed: bool,
    pub zeta0_trials: usize,
    pub zeta0_redraws: usize,
    pub mu_degrees: Vec<u32>,
    pub nu_degrees: Vec<u32>,
    pub eta_degrees: Vec<u32>,
    pub zeta_degrees: Vec<u32>,
    pub degsum_check: bool,
    pub bounds_check: bool,
    pub lq_table: Vec<LqRow>,
    pub transposed_lq_table: Vec<LqRow>,
    pub window: Vec<u32>,
    pub transposed_window: Vec<u32>,
    /// `2mn - r`; equals `deg(phi) deg(S)` when all base points are local complete intersections.
    pub implied_product: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn direction<F: Field>(p: &SurfaceParam<F>, r: usize, source: DegreeSource, seed: u64) -> Result<DirectionReport> {
    let (m, n) = (p.m(), p.n());
    let degrees = generator_degrees(p.f(), source)?;
    let mu0 = degrees.max().expect("nonempty");
    let eta0 = eta0(p, ETA_TRIALS, seed)?;
    let lq_table = (mu0..=2 * m)
        .map(|mu| {
            let l = 2 * n as i64 * (mu as i64 - m as i64) + r as i64;
            LqRow { mu, l, q: n as i64 * mu as i64 - l, l_computed: mu.checked_sub(1).map_or(0, |e| degrees.kernel_dims[e as usize]) }
        })
        .collect();
    let window = (mu0..=eta0.value).collect();
    Ok(DirectionReport { mu0, eta0, degrees, lq_table, window })
}

/// Checks every degree-sum identity and inequality for one direction.
///
/// `(m, n)` are the bidegrees of that direction.
pub fn check_bounds(m: u32, n: u32, r: usize, d: &DirectionReport) -> Result<()> {
    let (m, n, r) = (m as i64, n as i64, r as i64);
    let (mu0, eta0) = (d.mu0 as i64, d.eta0.value as i64);
    let fail = |what: String| Err(Error::BoundViolated(what));
    let total = 2 * m * n - r;
    if d.degrees.sum() as i64 != total {
        return fail(format!("sum of syzygy degrees {} != 2mn - r = {total}", d.degrees.sum()));
    }
    if d.eta0.degrees.sum() as i64 != total {
        return fail(format!("sum of f' syzygy degrees {} != 2mn - r = {total}", d.eta0.degrees.sum()));
    }
    if 2 * n * m - r > 2 * n * mu0 {
        return fail(format!("m - r/2n <= mu0 fails: m = {m}, r = {r}, n = {n}, mu0 = {mu0}"));
    }
    if mu0 > (2 * m).min(total) {
        return fail(format!("mu0 = {mu0} exceeds min(2m, 2mn - r) = {}", (2 * m).min(total)));
    }
    if 2 * m - r > eta0 {
        return fail(format!("2m - r <= eta0 fails: 2m - r = {}, eta0 = {eta0}", 2 * m - r));
    }
    if n * eta0 > total {
        return fail(format!("eta0 <= 2m - r/n fails: eta0 = {eta0}, 2m - r/n = {}/{n}", total));
    }
    for row in &d.lq_table {
        if row.l != row.l_computed as i64 {
            return fail(format!(
                "at mu = {}: {} moving planes in bidegree (mu-1, n-1), formula gives l = {}",
                row.mu, row.l_computed, row.l
            ));
        }
        let mu = row.mu as i64;
        if n * mu < total && row.q <= 0 {
            return fail(format!("q_mu = {} is not positive at mu = {mu} < 2m - r/n", row.q));
        }
    }
    // minimality of mu0: a generator appears in that degree
    let k = &d.degrees.kernel_dims;
    let at = |e: i64| if e < 0 { 0 } else { k[e as usize] as i64 };
    if at(mu0) - 2 * at(mu0 - 1) + at(mu0 - 2) <= 0 {
        return fail(format!("no syzygy generator in degree mu0 = {mu0}"));
    }
    Ok(())
}

/// Computes `r`, all four thresholds and the window, asserting every bound.
pub fn analyze<F: Field>(p: &SurfaceParam<F>, seed: u64) -> Result<AnalysisReport> {
    let (m, n) = (p.m(), p.n());
    let r = base_degree_r(p)?;
    let t = p.transpose();
    let rt = base_degree_r(&t)?;
    if rt != r {
        return Err(Error::BoundViolated(format!("r = {r} but the transposed map gives {rt}")));
    }
    let mut warnings = Vec::new();
    if r as u32 >= 2 * m * n {
        warnings.push(format!("r = {r} >= 2mn: degenerate map (common factor or no surface)"));
    }
    let s = direction(p, r, DegreeSource::F, seed)?;
    let tr = direction(&t, r, DegreeSource::FTransposed, seed)?;
    check_bounds(m, n, r, &s)?;
    check_bounds(n, m, r, &tr)?;
    for (name, e) in [("eta0", &s.eta0), ("zeta0", &tr.eta0)] {
        if !e.agreed {
            warnings.push(format!("random trials disagreed on {name}; reporting the maximum"));
        }
    }
    Ok(AnalysisReport {
        field: F::name(),
        m,
        n,
        r,
        mu0: s.mu0,
        nu0: tr.mu0,
        eta0: s.eta0.value,
        eta0_agreed: s.eta0.agreed,
        eta0_trials: s.eta0.trials,
        eta0_redraws: s.eta0.redraws,
        zeta0: tr.eta0.value,
        zeta0_agreed: tr.eta0.agreed,
        zeta0_trials: tr.eta0.trials,
        zeta0_redraws: tr.eta0.redraws,
        mu_degrees: s.degrees.degrees.clone(),
        nu_degrees: tr.degrees.degrees.clone(),
        eta_degrees: s.eta0.degrees.degrees.clone(),
        zeta_degrees: tr.eta0.degrees.degrees.clone(),
        degsum_check: true,
        bounds_check: true,
        lq_table: s.lq_table,
        transposed_lq_table: tr.lq_table,
        window: s.window,
        transposed_window: tr.window,
        implied_product: 2 * (m * n) as usize - r,
        seed,
        warnings,
    })
}
