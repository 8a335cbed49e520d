//! Matrices of moving planes and quadrics, the length-two complex and its determinant.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{bidegree_dim, monomial_basis, render_bimonomial, BiMonomial, Field, MovingForm, SurfaceParam, XForm};
use crate::error::{Error, Result};
use crate::exactla::{self, Matrix};
use crate::syzygy::{
    koszul_x_components, koszul_z2, moving_planes, plane_generated_quadrics, quadratic_relations, reduced_quadrics,
    saturated_quadrics,
};
use crate::thresholds;

/// Default cap on the saturation exponent.
pub const DEFAULT_SAT_CAP: u32 = 4;

/// Where the moving quadrics of a matrix come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricSource {
    /// All quadratic relations `sum g_ij f_i f_j = 0`.
    Default,
    /// Quadrics in the saturation of the ideal of moving planes.
    Saturated { cap: u32 },
}

/// The matrix `M_(mu,nu)`: one row per monomial of `R_(mu,nu)`, planes first, then quadrics.
#[derive(Clone, Debug)]
pub struct MpqMatrix<F: Field> {
    pub mu: u32,
    pub nu: u32,
    pub rows: Vec<BiMonomial>,
    pub columns: Vec<MovingForm<F>>,
    pub nplanes: usize,
    /// Coordinates of the plane columns, one row each.
    pub plane_coords: Matrix<F>,
    /// `(exponent, stable)` when the quadrics were saturated.
    pub saturation: Option<(u32, bool)>,
}

#[derive(Serialize)]
struct MatrixJson {
    mu: u32,
    nu: u32,
    rows: Vec<String>,
    columns: Vec<ColumnJson>,
}

#[derive(Serialize)]
struct ColumnJson {
    xdeg: u32,
    entries: Vec<String>,
}

impl<F: Field> MpqMatrix<F> {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nquadrics(&self) -> usize {
        self.ncols() - self.nplanes
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn entry(&self, row: usize, col: usize) -> &XForm<F> {
        &self.columns[col].entries[row]
    }

    /// Row-major matrix of forms.
    pub fn forms(&self) -> Vec<Vec<XForm<F>>> {
        (0..self.nrows()).map(|r| self.columns.iter().map(|c| c.entries[r].clone()).collect()).collect()
    }

    /// Normalized determinant, or `None` when the matrix is not square.
    pub fn determinant(&self) -> Option<XForm<F>> {
        self.is_square().then(|| det_forms(&self.forms()).normalize())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let m = MatrixJson {
            mu: self.mu,
            nu: self.nu,
            rows: self.rows.iter().map(|&b| render_bimonomial(self.mu, self.nu, b)).collect(),
            columns: self
                .columns
                .iter()
                .map(|c| ColumnJson { xdeg: c.xdeg, entries: c.entries.iter().map(|e| e.to_string()).collect() })
                .collect(),
        };
        serde_json::to_value(m).expect("serializable")
    }
}

impl<F: Field> fmt::Display for MpqMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_form_table(
            f,
            &self.rows.iter().map(|&b| render_bimonomial(self.mu, self.nu, b)).collect::<Vec<_>>(),
            &self.forms(),
        )
    }
}

/// Right-aligned table of forms, one labelled line per row.
pub fn form_table<F: Field>(labels: &[String], rows: &[Vec<XForm<F>>]) -> String {
    struct Table<'a, F: Field>(&'a [String], &'a [Vec<XForm<F>>]);
    impl<F: Field> fmt::Display for Table<'_, F> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_form_table(f, self.0, self.1)
        }
    }
    Table(labels, rows).to_string()
}

pub(crate) fn write_form_table<F: Field>(
    f: &mut fmt::Formatter<'_>,
    labels: &[String],
    rows: &[Vec<XForm<F>>],
) -> fmt::Result {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
    let ncols = cells.first().map_or(0, |r| r.len());
    let widths: Vec<usize> = (0..ncols).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let lw = labels.iter().map(|l| l.len()).max().unwrap_or(0);
    for (label, row) in labels.iter().zip(&cells) {
        write!(f, "{label:>lw$} |")?;
        for (cell, w) in row.iter().zip(&widths) {
            write!(f, " {cell:>w$}")?;
        }
        writeln!(f)?;
    }
    Ok(())
}

/// Assembles `M_(mu,nu)`: moving planes, then a complement of `V'` in the chosen quadric space.
pub fn assemble_mpq<F: Field>(p: &SurfaceParam<F>, mu: u32, nu: u32, source: QuadricSource) -> Result<MpqMatrix<F>> {
    let v = moving_planes(p, mu, nu);
    let (w, saturation) = match source {
        QuadricSource::Default => (quadratic_relations(p, mu, nu), None),
        QuadricSource::Saturated { cap } => {
            let s = saturated_quadrics(p, mu, nu, cap);
            (s.space, Some((s.exponent, s.stable)))
        }
    };
    let quadrics = reduced_quadrics(&w, &plane_generated_quadrics(&v))?;
    let nplanes = v.dim();
    let mut columns = v.basis;
    columns.extend(quadrics.basis);
    Ok(MpqMatrix { mu, nu, rows: monomial_basis(mu, nu), columns, nplanes, plane_coords: v.coords, saturation })
}

/// `0 -> S^z -d2-> S^l(-1) + S^q(-2) -d1-> S^(rows)`.
#[derive(Clone, Debug)]
pub struct ComplexPresentation<F: Field> {
    pub d1: MpqMatrix<F>,
    /// `d1.ncols()` rows of linear forms; the last `q` rows are zero.
    pub d2: Vec<Vec<XForm<F>>>,
    pub z2_dim: usize,
}

impl<F: Field> ComplexPresentation<F> {
    /// `(rows of d1, planes, quadrics, columns of d2)`.
    pub fn shape(&self) -> (usize, usize, usize, usize) {
        (self.d1.nrows(), self.d1.nplanes, self.d1.nquadrics(), self.z2_dim)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let d2: Vec<Vec<String>> = self.d2.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        serde_json::json!({
            "d1": self.d1.to_json_value(),
            "d2": d2,
            "z2_dim": self.z2_dim,
        })
    }
}

/// Builds `d2` from the Koszul cycles of bidegree `(d1.mu, d1.nu)`.
///
/// Each cycle `a` gives `d2^x(a) = sum_k x_k v_k` with every `v_k` a moving
/// plane; writing `v_k` in the plane basis of `d1` yields one column of linear forms.
pub fn assemble_d2<F: Field>(p: &SurfaceParam<F>, d1: MpqMatrix<F>) -> Result<ComplexPresentation<F>> {
    let (mu, nu) = (d1.mu, d1.nu);
    let z2 = koszul_z2(p, mu, nu);
    let dim = bidegree_dim(mu, nu);
    let basis_t = d1.plane_coords.transpose();
    let mut cols: Vec<Vec<XForm<F>>> = Vec::new();
    for a in z2.coords.rows() {
        let mut col = vec![XForm::zero(1); d1.ncols()];
        for (k, v) in koszul_x_components(a, dim).iter().enumerate() {
            let c = exactla::solve(&basis_t, v).ok_or(Error::InconsistentSolve)?;
            for (row, coef) in c.iter().enumerate() {
                col[row].add_assign(&XForm::monomial(unit(k), coef.clone()));
            }
        }
        cols.push(col);
    }
    let d2: Vec<Vec<XForm<F>>> = (0..d1.ncols()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let c = ComplexPresentation { z2_dim: z2.dim(), d1, d2 };
    if c.d2[c.d1.nplanes..].iter().flatten().any(|e| !e.is_zero()) {
        return Err(Error::NonZeroComposition);
    }
    if !compose(&c.d1.forms(), &c.d2).iter().flatten().all(|e| e.is_zero()) {
        return Err(Error::NonZeroComposition);
    }
    Ok(c)
}

fn unit(k: usize) -> [u32; 4] {
    let mut e = [0; 4];
    e[k] = 1;
    e
}

/// Product of two matrices of forms.
pub fn compose<F: Field>(a: &[Vec<XForm<F>>], b: &[Vec<XForm<F>>]) -> Vec<Vec<XForm<F>>> {
    let ncols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    let mut acc = XForm::zero(0);
                    for (x, brow) in row.iter().zip(b) {
                        if !x.is_zero() && !brow[j].is_zero() {
                            acc.add_assign(&x.mul(&brow[j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Assembles the complex in bidegree `(mu, nu)`, which must be `(mu' - 1, n - 1)` with `mu' >= mu0`.
pub fn assemble_complex<F: Field>(
    p: &SurfaceParam<F>,
    mu: u32,
    nu: u32,
    source: QuadricSource,
) -> Result<ComplexPresentation<F>> {
    let mu0 = thresholds::mu0(p)?;
    if nu + 1 != p.n() || mu + 1 < mu0 {
        return Err(Error::OutsideResolutionRange { mu: mu + 1, mu0 });
    }
    assemble_d2(p, assemble_mpq(p, mu, nu, source)?)
}

/// Symbolic determinant by dynamic programming over column subsets.
///
/// Row `k` is expanded against every minor on rows `0..k`; a column `c` added
/// after the columns in `S` contributes the sign `(-1)^#{s in S : s > c}`.
pub fn det_forms<F: Field>(m: &[Vec<XForm<F>>]) -> XForm<F> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det_forms needs a square matrix");
    assert!(n <= 63, "matrix too large for subset expansion");
    let degree: u32 = (0..n).map(|c| m.iter().map(|r| r[c].xdeg()).max().unwrap_or(0)).sum();
    let mut level: HashMap<u64, XForm<F>> = HashMap::from([(0, XForm::constant(F::one()))]);
    for row in m {
        let mut next: HashMap<u64, XForm<F>> = HashMap::new();
        for (&mask, minor) in &level {
            for (c, entry) in row.iter().enumerate() {
                if mask >> c & 1 == 1 || entry.is_zero() {
                    continue;
                }
                let mut term = entry.mul(minor);
                if (mask >> (c + 1)).count_ones() % 2 == 1 {
                    term = term.neg();
                }
                next.entry(mask | 1 << c).or_insert_with(|| XForm::zero(term.xdeg())).add_assign(&term);
            }
        }
        next.retain(|_, v| !v.is_zero());
        level = next;
    }
    level.into_values().next().unwrap_or_else(|| XForm::zero(degree))
}

/// Determinant of a complex with its subset choice.
#[derive(Clone, Debug)]
pub struct ComplexDeterminant<F: Field> {
    /// Normalized quotient.
    pub form: XForm<F>,
    /// Rows of `d2` (equivalently, columns of `d1`) used for the minor ratio.
    pub subset: Vec<usize>,
    /// The next admissible subset in lexicographic order, if any, and whether it agreed.
    pub second_subset: Option<Vec<usize>>,
    pub cross_check: Option<bool>,
}

fn random_point<F: Field>(seed: u64) -> [F; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::array::from_fn(|_| F::from_i64(rng.random_range(-1000..=1000)))
}

fn evaluate<F: Field>(m: &[Vec<XForm<F>>], pt: &[F; 4]) -> Matrix<F> {
    let ncols = m.first().map_or(0, |r| r.len());
    Matrix::from_rows(ncols, m.iter().map(|r| r.iter().map(|e| e.eval(pt)).collect()).collect())
}

fn admissible<F: Field>(d2: &Matrix<F>, subset: &[usize]) -> bool {
    exactla::rank(&d2.select_rows(subset)) == subset.len()
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn minor_ratio<F: Field>(c: &ComplexPresentation<F>, subset: &[usize]) -> Result<XForm<F>> {
    let den = det_forms(&c.d2.iter().enumerate().filter(|(r, _)| subset.contains(r)).map(|(_, r)| r.clone()).collect::<Vec<_>>());
    if den.is_zero() {
        return Err(Error::NoAdmissibleSubset);
    }
    let forms = c.d1.forms();
    let keep: Vec<usize> = (0..c.d1.ncols()).filter(|j| !subset.contains(j)).collect();
    let num_m: Vec<Vec<XForm<F>>> = forms.iter().map(|r| keep.iter().map(|&j| r[j].clone()).collect()).collect();
    let num = det_forms(&num_m);
    Ok(num.exact_div(&den).ok_or(Error::InexactDivision)?.normalize())
}

/// `det(d1 without columns B) / det(d2 rows B)` for the lexicographically first admissible `B`.
///
/// Admissibility is decided by evaluating `d2` at a point drawn from `seed`
/// and confirmed by the symbolic minor. When `cross_check` is set, the next
/// admissible subset is also used and the two quotients must agree.
pub fn complex_determinant<F: Field>(c: &ComplexPresentation<F>, seed: u64, cross_check: bool) -> Result<ComplexDeterminant<F>> {
    let (rows, cols, z) = (c.d1.nrows(), c.d1.ncols(), c.z2_dim);
    if cols != rows + z {
        return Err(Error::ShapeMismatch { rows, cols, z2: z });
    }
    if z == 0 {
        let form = det_forms(&c.d1.forms()).normalize();
        return Ok(ComplexDeterminant { form, subset: vec![], second_subset: None, cross_check: None });
    }
    let pt = random_point::<F>(seed);
    let d2 = evaluate(&c.d2, &pt);
    // Greedy row selection gives the lexicographically first independent set.
    let mut subset = Vec::new();
    for r in 0..d2.nrows() {
        subset.push(r);
        if !admissible(&d2, &subset) {
            subset.pop();
        }
        if subset.len() == z {
            break;
        }
    }
    if subset.len() < z {
        return Err(Error::NoAdmissibleSubset);
    }
    let form = minor_ratio(c, &subset)?;
    if form.is_zero() {
        return Err(Error::InexactDivision);
    }
    let mut out = ComplexDeterminant { form, subset: subset.clone(), second_subset: None, cross_check: None };
    if cross_check {
        let mut next = subset.clone();
        while next_combination(&mut next, c.d1.nplanes) {
            if admissible(&d2, &next) {
                let other = minor_ratio(c, &next)?;
                if other != out.form {
                    return Err(Error::SubsetDisagreement { first: subset, second: next });
                }
                out.second_subset = Some(next);
                out.cross_check = Some(true);
                break;
            }
        }
    }
    Ok(out)
}
