//! Linear and quadratic relations among `f0..f3` in a fixed bidegree.
//!
//! Every space is stored twice: as a coordinate matrix in reduced row echelon
//! form (one row per basis vector) and as the corresponding [`MovingForm`]s.
//! Plane coordinates are ordered by (variable, monomial); quadric coordinates
//! by ([`QUADRIC_PAIRS`] block, monomial); Koszul coordinates by
//! ([`KOSZUL_PAIRS`] block, monomial).

use std::fmt;

use crate::algebra::{
    bidegree_dim, monomial_basis, monomial_index, render_bimonomial, BiHomPoly, Field, MovingForm, SurfaceParam,
    QUADRIC_PAIRS,
};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};

/// Index pairs `i < j` of the basis `e_i ^ e_j`, in block order.
pub const KOSZUL_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Matrix of `(g_1..g_c) -> sum g_i polys_i` from `R_(mu,nu)^c` to `R_(mu+a, nu+b)`.
///
/// Columns are ordered by (polynomial, monomial), rows by target monomial.
/// All `polys` must share the bidegree `(a, b)`.
pub fn mult_map<F: Field>(polys: &[BiHomPoly<F>], mu: u32, nu: u32) -> Matrix<F> {
    let (a, b) = polys.first().map(|p| p.bidegree()).unwrap_or((0, 0));
    assert!(polys.iter().all(|p| p.bidegree() == (a, b)), "polynomials of mixed bidegree");
    let dim = bidegree_dim(mu, nu);
    let mut m = Matrix::zeros(bidegree_dim(mu + a, nu + b), polys.len() * dim);
    for (p, poly) in polys.iter().enumerate() {
        for (k, (i, j)) in monomial_basis(mu, nu).into_iter().enumerate() {
            for ((pi, pj), c) in poly.terms() {
                m[(monomial_index(nu + b, (i + pi, j + pj)), p * dim + k)] += c;
            }
        }
    }
    m
}

/// A space of moving planes (`xdeg == 1`) or moving quadrics (`xdeg == 2`).
#[derive(Clone, Debug)]
pub struct RelationSpace<F: Field> {
    pub mu: u32,
    pub nu: u32,
    pub xdeg: u32,
    /// Basis vectors as rows, in reduced row echelon form.
    pub coords: Matrix<F>,
    pub basis: Vec<MovingForm<F>>,
}

impl<F: Field> RelationSpace<F> {
    /// Canonical basis of the row span of `rows` (`ncols` wide).
    fn from_span(mu: u32, nu: u32, xdeg: u32, rows: Matrix<F>) -> Self {
        let coords = exactla::row_space(&rows);
        Self::from_rref(mu, nu, xdeg, coords)
    }

    fn from_rref(mu: u32, nu: u32, xdeg: u32, coords: Matrix<F>) -> Self {
        let basis = coords
            .rows()
            .map(|r| match xdeg {
                1 => MovingForm::plane_from_coords(mu, nu, r),
                _ => MovingForm::quadric_from_coords(mu, nu, r),
            })
            .collect();
        RelationSpace { mu, nu, xdeg, coords, basis }
    }

    pub fn dim(&self) -> usize {
        self.coords.nrows()
    }

    /// Length of a coordinate vector.
    pub fn ambient_dim(&self) -> usize {
        let blocks = if self.xdeg == 1 { 4 } else { 10 };
        blocks * bidegree_dim(self.mu, self.nu)
    }

    /// Whether the rows of `other` lie in this space.
    pub fn contains(&self, other: &Matrix<F>) -> bool {
        other.nrows() == 0 || exactla::rank(&self.coords.vstack(other)) == self.dim()
    }
}

impl<F: Field> RelationSpace<F> {
    /// Row labels of the table view: the monomials of `R_(mu,nu)`.
    pub fn row_labels(&self) -> Vec<String> {
        monomial_basis(self.mu, self.nu).into_iter().map(|b| render_bimonomial(self.mu, self.nu, b)).collect()
    }

    /// `{"mu", "nu", "xdeg", "dim", "rows", "basis"}`, one list of entries per basis element.
    pub fn to_json_value(&self) -> serde_json::Value {
        let basis: Vec<Vec<String>> =
            self.basis.iter().map(|b| b.entries.iter().map(|e| e.to_string()).collect()).collect();
        serde_json::json!({
            "mu": self.mu,
            "nu": self.nu,
            "xdeg": self.xdeg,
            "dim": self.dim(),
            "rows": self.row_labels(),
            "basis": basis,
        })
    }
}

/// One column per basis element, one row per monomial.
impl<F: Field> fmt::Display for RelationSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<_>> = (0..bidegree_dim(self.mu, self.nu))
            .map(|k| self.basis.iter().map(|b| b.entries[k].clone()).collect())
            .collect();
        crate::detrep::write_form_table(f, &self.row_labels(), &rows)
    }
}

/// Second Koszul cycles: 6-tuples `a` with `sum a_ij (f_i e_j - f_j e_i) = 0`.
#[derive(Clone, Debug)]
pub struct KoszulCycleSpace<F: Field> {
    pub mu: u32,
    pub nu: u32,
    pub coords: Matrix<F>,
    pub basis: Vec<[BiHomPoly<F>; 6]>,
}

impl<F: Field> KoszulCycleSpace<F> {
    pub fn dim(&self) -> usize {
        self.coords.nrows()
    }
}

/// Moving planes of bidegree `(mu, nu)`: the syzygies `sum g_i f_i = 0`.
pub fn moving_planes<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32) -> RelationSpace<F> {
    let k = exactla::kernel_basis(&mult_map(p.f(), mu, nu));
    RelationSpace::from_span(mu, nu, 1, k.transpose())
}

/// The ten products `f_i f_j`, `i <= j`, in quadric block order.
pub fn quadric_products<F: Field>(p: &SurfaceParam<F>) -> Vec<BiHomPoly<F>> {
    QUADRIC_PAIRS.iter().map(|&(i, j)| p.f()[i].mul(&p.f()[j])).collect()
}

/// Moving quadrics of bidegree `(mu, nu)`: `sum g_ij f_i f_j = 0`.
pub fn quadratic_relations<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32) -> RelationSpace<F> {
    let k = exactla::kernel_basis(&mult_map(&quadric_products(p), mu, nu));
    RelationSpace::from_span(mu, nu, 2, k.transpose())
}

fn pair_block(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    QUADRIC_PAIRS.iter().position(|&q| q == (a, b)).expect("valid pair")
}

/// Quadric coordinates of `x_j * L` for a plane coordinate vector `L`.
fn times_variable<F: Field>(plane: &[F], j: usize, dim: usize) -> Vec<F> {
    let mut out = vec![F::zero(); 10 * dim];
    for (i, block) in plane.chunks(dim).enumerate() {
        let q = pair_block(i, j);
        out[q * dim..(q + 1) * dim].clone_from_slice(block);
    }
    out
}

/// `V'`: the span of `x_j L` over all planes `L` of `v` and `j = 0..3`.
pub fn plane_generated_quadrics<F: Field>(v: &RelationSpace<F>) -> RelationSpace<F> {
    assert_eq!(v.xdeg, 1, "expected a space of moving planes");
    let dim = bidegree_dim(v.mu, v.nu);
    let rows: Vec<Vec<F>> = v.coords.rows().flat_map(|l| (0..4).map(move |j| times_variable(l, j, dim))).collect();
    RelationSpace::from_span(v.mu, v.nu, 2, Matrix::from_rows(10 * dim, rows))
}

/// Canonical complement of `vp` in `w`.
///
/// Returns the rows of `w`'s echelon basis whose pivot columns are not pivot
/// columns of `vp`. Together with `vp` they form a basis of `w`.
pub fn reduced_quadrics<F: Field>(w: &RelationSpace<F>, vp: &RelationSpace<F>) -> Result<RelationSpace<F>> {
    if !w.contains(&vp.coords) {
        return Err(Error::Containment { mu: w.mu, nu: w.nu });
    }
    let vp_pivots: Vec<usize> = vp.coords.rows().map(leading_index).collect();
    let keep: Vec<usize> = (0..w.dim()).filter(|&r| !vp_pivots.contains(&leading_index(w.coords.row(r)))).collect();
    debug_assert_eq!(keep.len(), w.dim() - vp.dim());
    Ok(RelationSpace::from_rref(w.mu, w.nu, 2, w.coords.select_rows(&keep)))
}

fn leading_index<F: Field>(row: &[F]) -> usize {
    row.iter().position(|c| !c.is_zero()).expect("echelon rows are nonzero")
}

/// Outcome of [`saturated_quadrics`].
#[derive(Clone, Debug)]
pub struct SaturatedQuadrics<F: Field> {
    pub space: RelationSpace<F>,
    /// The saturation exponent at which the computation stopped.
    pub exponent: u32,
    /// `true` if the space was equal for two consecutive exponents; `false` if the cap was hit.
    pub stable: bool,
}

/// Quadrics `Q` in bidegree `(mu, nu)` with `b Q` in the span of the moving-plane
/// multiples `x_j L` for every monomial `b` of bidegree `(d, d)`.
///
/// `d` is increased from 1 until the result repeats, or until `d = sat_cap`.
pub fn saturated_quadrics<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32, sat_cap: u32) -> SaturatedQuadrics<F> {
    assert!(sat_cap >= 1, "saturation cap must be positive");
    let mut prev = saturation_step(p, mu, nu, 1);
    for d in 2..=sat_cap {
        let next = saturation_step(p, mu, nu, d);
        if next.coords == prev.coords {
            return SaturatedQuadrics { space: next, exponent: d, stable: true };
        }
        prev = next;
    }
    SaturatedQuadrics { space: prev, exponent: sat_cap, stable: false }
}

fn saturation_step<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32, d: u32) -> RelationSpace<F> {
    let (bmu, bnu) = (mu + d, nu + d);
    let big = plane_generated_quadrics(&moving_planes(p, bmu, bnu));
    // A vector lies in the row span of `big` iff it is orthogonal to its kernel.
    let annihilator = exactla::kernel_basis(&big.coords).transpose();
    let (small_dim, big_dim) = (bidegree_dim(mu, nu), bidegree_dim(bmu, bnu));
    let mut conditions: Vec<Vec<F>> = Vec::new();
    for (bi, bj) in monomial_basis(d, d) {
        // Row `a` of the annihilator composed with multiplication by `b`.
        for a in annihilator.rows() {
            let mut row = vec![F::zero(); 10 * small_dim];
            for q in 0..10 {
                for (k, (i, j)) in monomial_basis(mu, nu).into_iter().enumerate() {
                    let target = q * big_dim + monomial_index(bnu, (i + bi, j + bj));
                    row[q * small_dim + k] = a[target].clone();
                }
            }
            if row.iter().any(|c| !c.is_zero()) {
                conditions.push(row);
            }
        }
    }
    let k = exactla::kernel_basis(&Matrix::from_rows(10 * small_dim, conditions));
    RelationSpace::from_span(mu, nu, 2, k.transpose())
}

/// Matrix of `a -> d2^f(a)` from `R_(mu,nu)^6` to `R_(mu+m, nu+n)^4`.
pub fn koszul_map<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32) -> Matrix<F> {
    let (m, n) = (p.m(), p.n());
    let (dim, tdim) = (bidegree_dim(mu, nu), bidegree_dim(mu + m, nu + n));
    let mut out = Matrix::zeros(4 * tdim, 6 * dim);
    for (pair, &(i, j)) in KOSZUL_PAIRS.iter().enumerate() {
        // e_i ^ e_j -> f_i e_j - f_j e_i
        for (component, poly, sign) in [(j, &p.f()[i], F::one()), (i, &p.f()[j], -F::one())] {
            for (k, (a, b)) in monomial_basis(mu, nu).into_iter().enumerate() {
                for ((pa, pb), c) in poly.terms() {
                    let row = component * tdim + monomial_index(nu + n, (a + pa, b + pb));
                    out[(row, pair * dim + k)] += sign.clone() * c;
                }
            }
        }
    }
    out
}

/// The bidegree `(mu, nu)` component of the second Koszul cycles of `f`.
pub fn koszul_z2<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32) -> KoszulCycleSpace<F> {
    let k = exactla::kernel_basis(&koszul_map(p, mu, nu));
    let coords = exactla::row_space(&k.transpose());
    let dim = bidegree_dim(mu, nu);
    let basis = coords
        .rows()
        .map(|r| {
            let polys: Vec<BiHomPoly<F>> = r.chunks(dim).map(|c| BiHomPoly::from_coords(mu, nu, c)).collect();
            polys.try_into().expect("six components")
        })
        .collect();
    KoszulCycleSpace { mu, nu, coords, basis }
}

/// The four syzygies `v_k` with `d2^x(a) = sum_k x_k v_k`, as plane coordinate vectors.
pub fn koszul_x_components<F: Field>(a: &[F], dim: usize) -> [Vec<F>; 4] {
    let mut v: [Vec<F>; 4] = std::array::from_fn(|_| vec![F::zero(); 4 * dim]);
    for (pair, &(i, j)) in KOSZUL_PAIRS.iter().enumerate() {
        let block = &a[pair * dim..(pair + 1) * dim];
        // e_i ^ e_j -> x_i e_j - x_j e_i
        for (k, c) in block.iter().enumerate() {
            v[i][j * dim + k] += c;
            v[j][i * dim + k] -= c;
        }
    }
    v
}
