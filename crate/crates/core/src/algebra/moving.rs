use std::fmt;

use super::{bidegree_dim, monomial_basis, BiHomPoly, Field, SurfaceParam, XForm};

/// Quadric block order: the monomials `x_i x_j`, `i <= j`.
pub const QUADRIC_PAIRS: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

/// `sum_k b_k c_k(x)`: one x-form per basis monomial `b_k` of `R_(mu,nu)`.
///
/// `xdeg == 1` is a moving plane, `xdeg == 2` a moving quadric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MovingForm<F> {
    pub mu: u32,
    pub nu: u32,
    pub xdeg: u32,
    pub entries: Vec<XForm<F>>,
}

impl<F: Field> MovingForm<F> {
    /// Builds a moving plane from syzygy coordinates ordered by (variable, monomial).
    pub fn plane_from_coords(mu: u32, nu: u32, coords: &[F]) -> Self {
        Self::from_blocks(mu, nu, 1, coords, |v| {
            let mut e = [0; 4];
            e[v] = 1;
            e
        })
    }

    /// Builds a moving quadric from coordinates ordered by ([`QUADRIC_PAIRS`] block, monomial).
    pub fn quadric_from_coords(mu: u32, nu: u32, coords: &[F]) -> Self {
        Self::from_blocks(mu, nu, 2, coords, |v| {
            let (i, j) = QUADRIC_PAIRS[v];
            let mut e = [0; 4];
            e[i] += 1;
            e[j] += 1;
            e
        })
    }

    fn from_blocks(mu: u32, nu: u32, xdeg: u32, coords: &[F], exps: impl Fn(usize) -> [u32; 4]) -> Self {
        let dim = bidegree_dim(mu, nu);
        assert_eq!(coords.len() % dim, 0);
        let mut entries = vec![XForm::zero(xdeg); dim];
        for (v, block) in coords.chunks(dim).enumerate() {
            let e = exps(v);
            for (k, c) in block.iter().enumerate() {
                entries[k].add_assign(&XForm::monomial(e, c.clone()));
            }
        }
        MovingForm { mu, nu, xdeg, entries }
    }

    /// Substitutes `x := f`, giving `sum_k b_k c_k(f)`; zero exactly when the form follows the map.
    pub fn substitute(&self, p: &SurfaceParam<F>) -> BiHomPoly<F> {
        let (m, n) = (p.m(), p.n());
        let d = self.xdeg;
        let mut out = BiHomPoly::zero(self.mu + d * m, self.nu + d * n);
        for ((i, j), c) in monomial_basis(self.mu, self.nu).into_iter().zip(&self.entries) {
            if c.is_zero() {
                continue;
            }
            let b = BiHomPoly::from_terms(self.mu, self.nu, [((i, j), F::one())]);
            let mut value = BiHomPoly::zero(d * m, d * n);
            for (e, coef) in c.terms() {
                let mut term = BiHomPoly::constant(coef.clone());
                for (v, &k) in e.iter().enumerate() {
                    for _ in 0..k {
                        term = term.mul(&p.f()[v]);
                    }
                }
                value = value.add(&term);
            }
            out = out.add(&b.mul(&value));
        }
        out
    }
}

impl<F: Field> fmt::Debug for MovingForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MovingForm(({},{}), xdeg {}) [", self.mu, self.nu, self.xdeg)?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}
