use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{bidegree_dim, monomial_basis, BiHomPoly, Field};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};

/// A map `P1 x P1 -> P3` given by four bihomogeneous polynomials of bidegree `(m, n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfaceParam<F> {
    pub(crate) m: u32,
    pub(crate) n: u32,
    pub(crate) f: [BiHomPoly<F>; 4],
    pub(crate) name: Option<String>,
}

/// On-disk form: `{"m": .., "n": .., "f": [four polynomial strings]}`.
#[derive(Serialize, Deserialize)]
struct ParamFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    m: u32,
    n: u32,
    f: Vec<String>,
}

impl<F: Field> SurfaceParam<F> {
    /// Validates bidegrees and linear independence of the four polynomials.
    pub fn new(m: u32, n: u32, f: [BiHomPoly<F>; 4]) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(format!("bidegree ({m},{n}) must have m, n >= 1")));
        }
        for (i, p) in f.iter().enumerate() {
            if p.bidegree() != (m, n) {
                return Err(Error::InvalidInput(format!(
                    "f{i} has bidegree {:?}, expected ({m},{n})",
                    p.bidegree()
                )));
            }
        }
        let coords = Matrix::from_rows(bidegree_dim(m, n), f.iter().map(|p| p.coords()).collect());
        if exactla::rank(&coords) < 4 {
            return Err(Error::InvalidInput("f0..f3 are linearly dependent".into()));
        }
        Ok(SurfaceParam { m, n, f, name: None })
    }

    pub fn parse(m: u32, n: u32, f: [&str; 4]) -> Result<Self> {
        let polys = [
            BiHomPoly::parse(f[0], m, n)?,
            BiHomPoly::parse(f[1], m, n)?,
            BiHomPoly::parse(f[2], m, n)?,
            BiHomPoly::parse(f[3], m, n)?,
        ];
        Self::new(m, n, polys)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ParamFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if file.f.len() != 4 {
            return Err(Error::InvalidInput(format!("expected 4 polynomials, found {}", file.f.len())));
        }
        let mut p = Self::parse(file.m, file.n, [&file.f[0], &file.f[1], &file.f[2], &file.f[3]])?;
        p.name = file.name;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        let file = ParamFile {
            name: self.name.clone(),
            m: self.m,
            n: self.n,
            f: self.f.iter().map(|p| p.to_string()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn f(&self) -> &[BiHomPoly<F>; 4] {
        &self.f
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Swaps the roles of `s` and `t` (and of `m` and `n`).
    pub fn transpose(&self) -> Self {
        SurfaceParam {
            m: self.n,
            n: self.m,
            f: [self.f[0].transpose(), self.f[1].transpose(), self.f[2].transpose(), self.f[3].transpose()],
            name: self.name.as_ref().map(|s| format!("{s} (transposed)")),
        }
    }

    /// Evaluates the four polynomials.
    pub fn eval(&self, s: &[F; 2], t: &[F; 2]) -> [F; 4] {
        [self.f[0].eval(s, t), self.f[1].eval(s, t), self.f[2].eval(s, t), self.f[3].eval(s, t)]
    }
}

impl<F: Field> std::fmt::Debug for SurfaceParam<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SurfaceParam")
            .field("name", &self.name)
            .field("m", &self.m)
            .field("n", &self.n)
            .field("f", &self.f)
            .finish()
    }
}

/// Random parameterization with small integer coefficients vanishing at
/// `base_points` random points `(1:a) x (1:b)`.
///
/// Draws are repeated until the four polynomials are independent.
pub fn random_param<F: Field, R: Rng>(m: u32, n: u32, base_points: usize, rng: &mut R) -> SurfaceParam<F> {
    let dim = bidegree_dim(m, n);
    assert!(base_points + 4 <= dim, "too many base points for bidegree ({m},{n})");
    let basis = monomial_basis(m, n);
    loop {
        let rows: Vec<Vec<F>> = (0..base_points)
            .map(|_| {
                let a = F::from_i64(rng.random_range(-20..=20));
                let b = F::from_i64(rng.random_range(-20..=20));
                basis
                    .iter()
                    .map(|&(i, j)| num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), j as usize))
                    .collect()
            })
            .collect();
        let kernel = exactla::kernel_basis(&Matrix::from_rows(dim, rows));
        let polys: Vec<BiHomPoly<F>> = (0..4)
            .map(|_| {
                let w: Vec<F> = (0..kernel.ncols()).map(|_| F::from_i64(rng.random_range(-9..=9))).collect();
                BiHomPoly::from_coords(m, n, &kernel.mul_vec(&w))
            })
            .collect();
        let f: [BiHomPoly<F>; 4] = polys.try_into().expect("four polynomials");
        if let Ok(p) = SurfaceParam::new(m, n, f) {
            return p;
        }
    }
}
