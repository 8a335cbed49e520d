//! Implicit equation by sampling and interpolation, independent of any syzygy.
//!
//! Points of the surface are sampled on the chart `s0 = t0 = 1`, and for
//! `D = 1, 2, ...` the forms of degree `D` vanishing on all samples are
//! computed. A form of degree below `deg S` that vanishes on `S` would be
//! divisible by the irreducible implicit equation, so the first `D` with a
//! one-dimensional kernel is `deg S`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{monomials_of_degree, Field, SurfaceParam, XForm};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};
use crate::thresholds;

/// Range of the affine parameters `s1, t1`.
pub const SAMPLE_RANGE: i64 = 32;

/// Number of extra points every interpolated form must vanish on.
pub const POST_CHECK: usize = 100;

/// Draws `count` image points `phi((1:s1), (1:t1))`, skipping base points.
pub fn sample_surface<F: Field>(p: &SurfaceParam<F>, count: usize, seed: u64) -> Result<Vec<[F; 4]>> {
    if count == 0 {
        return Err(Error::InvalidInput("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 100 * count;
    let mut misses = 0;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = [F::one(), F::from_i64(rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE))];
        let t = [F::one(), F::from_i64(rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE))];
        let pt = p.eval(&s, &t);
        if pt.iter().all(|c| c.is_zero()) {
            misses += 1;
            if misses >= budget {
                return Err(Error::ResampleBudget(misses));
            }
            continue;
        }
        out.push(pt);
    }
    Ok(out)
}

/// Number of samples used for degree `d`: twice the number of monomials.
pub fn samples_for_degree(d: u32) -> usize {
    2 * monomials_of_degree(d).len()
}

/// Outcome of [`interpolate_implicit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interpolation<F: Field> {
    /// A unique form up to scalar, normalized.
    Unique(XForm<F>),
    None,
    /// The kernel had this dimension (at least 2).
    Ambiguous(usize),
}

/// Forms of degree `d` vanishing on every sample.
pub fn interpolate_implicit<F: Field>(samples: &[[F; 4]], d: u32) -> Result<Interpolation<F>> {
    let need = samples_for_degree(d);
    if samples.len() < need {
        return Err(Error::TooFewSamples { have: samples.len(), need });
    }
    let monos = monomials_of_degree(d);
    let rows = samples
        .iter()
        .map(|pt| monos.iter().map(|e| XForm::monomial(*e, F::one()).eval(pt)).collect())
        .collect();
    let k = exactla::kernel_basis(&Matrix::from_rows(monos.len(), rows));
    Ok(match k.ncols() {
        0 => Interpolation::None,
        1 => Interpolation::Unique(XForm::from_terms(d, monos.into_iter().zip(k.column(0))).normalize()),
        n => Interpolation::Ambiguous(n),
    })
}

/// The oracle's answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitResult<F: Field> {
    /// Normalized implicit equation.
    pub f: XForm<F>,
    pub deg_f: u32,
    /// `(2mn - r) / deg F` when it divides; equals `deg(phi)` if all base points are l.c.i.
    pub degphi_lci: Option<u32>,
    pub r: Option<usize>,
    pub samples_used: usize,
    pub seed: u64,
    /// Degrees at which the interpolation kernel had dimension at least 2.
    pub ambiguous_degrees: Vec<u32>,
}

#[derive(Serialize)]
struct ImplicitJson {
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "degF")]
    deg_f: u32,
    degphi_lci: Option<u32>,
    degphi_lci_valid_if: &'static str,
    r: Option<usize>,
    samples_used: usize,
    seed: u64,
}

impl<F: Field> ImplicitResult<F> {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ImplicitJson {
            f: self.f.to_string(),
            deg_f: self.deg_f,
            degphi_lci: self.degphi_lci,
            degphi_lci_valid_if: "all base points are local complete intersections",
            r: self.r,
            samples_used: self.samples_used,
            seed: self.seed,
        })
        .expect("serializable")
    }
}

/// Smallest-degree form vanishing on the image, certified on [`POST_CHECK`] fresh samples.
pub fn implicit_equation<F: Field>(p: &SurfaceParam<F>, seed: u64) -> Result<ImplicitResult<F>> {
    let cap = 2 * p.m() * p.n();
    let mut used = 0;
    let mut ambiguous_degrees = Vec::new();
    // distinct streams per degree, and one more for the post-check
    let stream = |d: u32| seed.wrapping_mul(0x9e37_79b9).wrapping_add(d as u64);
    for d in 1..=cap {
        let samples = sample_surface(p, samples_for_degree(d), stream(d))?;
        used += samples.len();
        match interpolate_implicit(&samples, d)? {
            Interpolation::Unique(f) => {
                let extra = sample_surface(p, POST_CHECK, stream(cap + d))?;
                used += extra.len();
                if extra.iter().all(|pt| f.eval(pt).is_zero()) {
                    let r = thresholds::base_degree_r(p).ok();
                    let degphi_lci = r.and_then(|r| {
                        let total = 2 * (p.m() * p.n()) as usize - r;
                        total.is_multiple_of(d as usize).then_some((total / d as usize) as u32)
                    });
                    return Ok(ImplicitResult { f, deg_f: d, degphi_lci, r, samples_used: used, seed, ambiguous_degrees });
                }
            }
            Interpolation::Ambiguous(_) => ambiguous_degrees.push(d),
            Interpolation::None => {}
        }
    }
    Err(Error::NoImplicitEquation(cap))
}

/// `c` with `a = c b`, if it exists.
pub fn proportional<F: Field>(a: &XForm<F>, b: &XForm<F>) -> Option<F> {
    a.proportional(b)
}

/// Whether `a` is a nonzero multiple of `f^k`.
pub fn power_check<F: Field>(a: &XForm<F>, f: &XForm<F>, k: u32) -> bool {
    assert!(k >= 1, "power must be positive");
    !a.is_zero() && a.proportional(&f.pow(k)).is_some()
}
