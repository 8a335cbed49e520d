use std::collections::BTreeMap;
use std::fmt;

use super::parse::parse_terms;
use super::{render_poly, Field};
use crate::error::{Error, Result};

/// Exponents of `x0, x1, x2, x3`.
pub type XMonomial = [u32; 4];

const XVARS: [&str; 4] = ["x0", "x1", "x2", "x3"];

/// All degree-`d` monomials in `x0..x3`, lexicographically descending (`x0^d` first).
pub fn monomials_of_degree(d: u32) -> Vec<XMonomial> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// A homogeneous form in `k[x0, x1, x2, x3]`.
///
/// Terms are kept sparse. The leading term is the lexicographically greatest
/// exponent vector, which is also the first term printed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XForm<F> {
    xdeg: u32,
    coeffs: BTreeMap<XMonomial, F>,
}

impl<F: Field> XForm<F> {
    pub fn zero(xdeg: u32) -> Self {
        XForm { xdeg, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::monomial([0; 4], c)
    }

    /// The variable `x_k`.
    pub fn var(k: usize) -> Self {
        let mut e = [0; 4];
        e[k] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(exps: XMonomial, c: F) -> Self {
        let mut p = Self::zero(exps.iter().sum());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(xdeg: u32, terms: impl IntoIterator<Item = (XMonomial, F)>) -> Self {
        let mut p = Self::zero(xdeg);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: XMonomial, c: F) {
        debug_assert_eq!(exps.iter().sum::<u32>(), self.xdeg, "inhomogeneous term");
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Parses a homogeneous form; its degree is that of the first term.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_impl(text, None)
    }

    /// Parses a form that must be homogeneous of degree `xdeg`.
    pub fn parse_with_degree(text: &str, xdeg: u32) -> Result<Self> {
        Self::parse_impl(text, Some(xdeg))
    }

    fn parse_impl(text: &str, expected: Option<u32>) -> Result<Self> {
        let terms = parse_terms(text, &XVARS)?;
        let mut degree = expected;
        let mut coeffs = Vec::new();
        for t in terms {
            let c = F::from_ratio(&t.num, &t.den).ok_or_else(|| Error::BadCoefficient(t.text.clone()))?;
            let exps = [t.exps[0], t.exps[1], t.exps[2], t.exps[3]];
            let d: u32 = exps.iter().sum();
            if c.is_zero() && d == 0 {
                continue;
            }
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => return Err(Error::NotHomogeneous { term: t.text, found: d, expected: e }),
                _ => {}
            }
            coeffs.push((exps, c));
        }
        Ok(Self::from_terms(degree.unwrap_or(0), coeffs))
    }

    pub fn xdeg(&self) -> u32 {
        self.xdeg
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exps: &XMonomial) -> F {
        self.coeffs.get(exps).cloned().unwrap_or_else(F::zero)
    }

    /// Terms in descending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&XMonomial, &F)> {
        self.coeffs.iter().rev()
    }

    /// Leading (lexicographically greatest) term.
    pub fn leading(&self) -> Option<(&XMonomial, &F)> {
        self.coeffs.last_key_value()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        assert_eq!(self.xdeg, other.xdeg, "adding forms of different degrees");
        for (e, c) in &other.coeffs {
            self.add_term(*e, c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        XForm { xdeg: self.xdeg, coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.xdeg);
        }
        XForm { xdeg: self.xdeg, coeffs: self.coeffs.iter().map(|(e, v)| (*e, v.clone() * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.xdeg + other.xdeg);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(e, x.clone() * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(F::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, pt: &[F; 4]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.coeffs {
            let mut term = c.clone();
            for k in 0..4 {
                if e[k] > 0 {
                    term *= num_traits::pow(pt[k].clone(), e[k] as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Scales so that the leading coefficient is 1. The zero form is returned unchanged.
    pub fn normalize(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// The scalar `c` with `self = c * other`, if one exists.
    pub fn proportional(&self, other: &Self) -> Option<F> {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() && other.is_zero() { Some(F::zero()) } else { None };
        }
        if self.xdeg != other.xdeg || self.num_terms() != other.num_terms() {
            return None;
        }
        let (_, a) = self.leading()?;
        let (_, b) = other.leading()?;
        let c = a.clone() / b;
        for ((ea, ca), (eb, cb)) in self.coeffs.iter().zip(other.coeffs.iter()) {
            if ea != eb || *ca != c.clone() * cb {
                return None;
            }
        }
        Some(c)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (dl, dc) = d.leading()?;
        let dc_inv = dc.inv()?;
        if self.is_zero() {
            return Some(Self::zero(self.xdeg.checked_sub(d.xdeg)?));
        }
        let qdeg = self.xdeg.checked_sub(d.xdeg)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(qdeg);
        while let Some((rl, rc)) = rem.leading() {
            if (0..4).any(|k| rl[k] < dl[k]) {
                return None;
            }
            let e = [rl[0] - dl[0], rl[1] - dl[1], rl[2] - dl[2], rl[3] - dl[3]];
            let c = rc.clone() * &dc_inv;
            for (de, dv) in &d.coeffs {
                let target = [e[0] + de[0], e[1] + de[1], e[2] + de[2], e[3] + de[3]];
                rem.add_term(target, -(c.clone() * dv));
            }
            quot.add_term(e, c);
        }
        Some(quot)
    }
}

fn factors(e: &XMonomial) -> String {
    let parts: Vec<String> = (0..4)
        .filter(|&k| e[k] > 0)
        .map(|k| if e[k] == 1 { XVARS[k].to_string() } else { format!("{}^{}", XVARS[k], e[k]) })
        .collect();
    parts.join("*")
}

impl<F: Field> fmt::Display for XForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_poly(f, self.terms().map(|(e, c)| (c, factors(e))))
    }
}

impl<F: Field> fmt::Debug for XForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XForm({})[{}]", self.xdeg, self)
    }
}
