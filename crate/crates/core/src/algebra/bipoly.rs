use std::collections::BTreeMap;
use std::fmt;

use super::parse::parse_terms;
use super::{render_poly, Field};
use crate::error::{Error, Result};

/// Exponent pair `(i, j)` standing for `s0^(sdeg-i) s1^i t0^(tdeg-j) t1^j`.
pub type BiMonomial = (u32, u32);

/// Canonical monomial basis of `R_(mu,nu)`: all `(i, j)` in lexicographic order.
///
/// This is the row order of every matrix built on `R_(mu,nu)`.
pub fn monomial_basis(mu: u32, nu: u32) -> Vec<BiMonomial> {
    (0..=mu).flat_map(|i| (0..=nu).map(move |j| (i, j))).collect()
}

/// Position of `(i, j)` in [`monomial_basis`]`(_, nu)`.
#[inline]
pub fn monomial_index(nu: u32, (i, j): BiMonomial) -> usize {
    (i * (nu + 1) + j) as usize
}

/// Dimension of `R_(mu,nu)`.
#[inline]
pub fn bidegree_dim(mu: u32, nu: u32) -> usize {
    ((mu + 1) * (nu + 1)) as usize
}

/// A bihomogeneous polynomial in `k[s0,s1;t0,t1]` stored sparsely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiHomPoly<F> {
    sdeg: u32,
    tdeg: u32,
    coeffs: BTreeMap<BiMonomial, F>,
}

impl<F: Field> BiHomPoly<F> {
    pub fn zero(sdeg: u32, tdeg: u32) -> Self {
        BiHomPoly { sdeg, tdeg, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_terms(0, 0, [((0, 0), c)])
    }

    /// Collects terms, summing duplicates and dropping zeros.
    ///
    /// Panics if an exponent lies outside the bidegree.
    pub fn from_terms(sdeg: u32, tdeg: u32, terms: impl IntoIterator<Item = (BiMonomial, F)>) -> Self {
        let mut p = Self::zero(sdeg, tdeg);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    /// Polynomial whose coefficients in [`monomial_basis`] order are `coords`.
    pub fn from_coords(sdeg: u32, tdeg: u32, coords: &[F]) -> Self {
        assert_eq!(coords.len(), bidegree_dim(sdeg, tdeg));
        Self::from_terms(sdeg, tdeg, monomial_basis(sdeg, tdeg).into_iter().zip(coords.iter().cloned()))
    }

    fn add_term(&mut self, mono: BiMonomial, c: F) {
        assert!(mono.0 <= self.sdeg && mono.1 <= self.tdeg, "monomial outside bidegree");
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(mono).or_insert_with(F::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&mono);
        }
    }

    /// Parses `text` and checks that every term has bidegree exactly `(m, n)`.
    pub fn parse(text: &str, m: u32, n: u32) -> Result<Self> {
        let terms = parse_terms(text, &["s0", "s1", "t0", "t1"])?;
        let mut p = Self::zero(m, n);
        for t in terms {
            let c = F::from_ratio(&t.num, &t.den).ok_or_else(|| Error::BadCoefficient(t.text.clone()))?;
            let (sd, td) = (t.exps[0] + t.exps[1], t.exps[2] + t.exps[3]);
            if c.is_zero() && t.exps.iter().all(|&e| e == 0) {
                continue;
            }
            if (sd, td) != (m, n) {
                return Err(Error::BidegreeMismatch { term: t.text, found_s: sd, found_t: td, expected_s: m, expected_t: n });
            }
            p.add_term((t.exps[1], t.exps[3]), c);
        }
        Ok(p)
    }

    pub fn sdeg(&self) -> u32 {
        self.sdeg
    }

    pub fn tdeg(&self) -> u32 {
        self.tdeg
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.sdeg, self.tdeg)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mono: BiMonomial) -> F {
        self.coeffs.get(&mono).cloned().unwrap_or_else(F::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (BiMonomial, &F)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Dense coefficient vector in [`monomial_basis`] order.
    pub fn coords(&self) -> Vec<F> {
        let mut v = vec![F::zero(); bidegree_dim(self.sdeg, self.tdeg)];
        for (&mono, c) in &self.coeffs {
            v[monomial_index(self.tdeg, mono)] = c.clone();
        }
        v
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.sdeg + other.sdeg, self.tdeg + other.tdeg);
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &other.coeffs {
                out.add_term((i + k, j + l), a.clone() * b);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.bidegree(), other.bidegree(), "adding polynomials of different bidegrees");
        let mut out = self.clone();
        for (&mono, c) in &other.coeffs {
            out.add_term(mono, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.sdeg, self.tdeg);
        }
        BiHomPoly {
            sdeg: self.sdeg,
            tdeg: self.tdeg,
            coeffs: self.coeffs.iter().map(|(m, v)| (*m, v.clone() * c)).collect(),
        }
    }

    /// Evaluates at `s = (s0, s1)`, `t = (t0, t1)`.
    pub fn eval(&self, s: &[F; 2], t: &[F; 2]) -> F {
        let pow = |x: &F, e: u32| num_traits::pow(x.clone(), e as usize);
        let mut acc = F::zero();
        for (&(i, j), c) in &self.coeffs {
            let term = c.clone()
                * pow(&s[0], self.sdeg - i)
                * pow(&s[1], i)
                * pow(&t[0], self.tdeg - j)
                * pow(&t[1], j);
            acc += term;
        }
        acc
    }

    /// Swaps the roles of `(s0, s1)` and `(t0, t1)`.
    pub fn transpose(&self) -> Self {
        BiHomPoly {
            sdeg: self.tdeg,
            tdeg: self.sdeg,
            coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }
}

/// Renders a monomial of `R_(sdeg,tdeg)`, e.g. `s0*s1^2*t1`; `1` for the constant.
pub fn render_bimonomial(sdeg: u32, tdeg: u32, (i, j): BiMonomial) -> String {
    let factors = bimonomial_factors(sdeg, tdeg, (i, j));
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors
    }
}

fn bimonomial_factors(sdeg: u32, tdeg: u32, (i, j): BiMonomial) -> String {
    let parts: Vec<String> = [("s0", sdeg - i), ("s1", i), ("t0", tdeg - j), ("t1", j)]
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

impl<F: Field> fmt::Display for BiHomPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_poly(f, self.coeffs.iter().map(|(&m, c)| (c, bimonomial_factors(self.sdeg, self.tdeg, m))))
    }
}

impl<F: Field> fmt::Debug for BiHomPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiHomPoly({},{})[{}]", self.sdeg, self.tdeg, self)
    }
}
