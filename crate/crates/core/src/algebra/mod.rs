//! Coefficient fields and the polynomial rings `k[s0,s1;t0,t1]` and `k[x0..x3]`.

mod bipoly;
mod field;
mod moving;
mod param;
pub(crate) mod parse;
mod xform;

use std::fmt;

pub use bipoly::{bidegree_dim, monomial_basis, monomial_index, render_bimonomial, BiHomPoly, BiMonomial};
pub use field::{Field, Fp, Rational, DEFAULT_PRIME};
pub use moving::{MovingForm, QUADRIC_PAIRS};
pub use param::{random_param, SurfaceParam};
pub use xform::{monomials_of_degree, XForm, XMonomial};

/// Writes `c1*m1 + c2*m2 - ...` with unit coefficients elided; `0` when empty.
pub(crate) fn render_poly<'a, F: Field>(
    out: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a F, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, factors) in terms {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        match (first, neg) {
            (true, true) => out.write_str("-")?,
            (true, false) => {}
            (false, true) => out.write_str(" - ")?,
            (false, false) => out.write_str(" + ")?,
        }
        if factors.is_empty() {
            write!(out, "{mag}")?;
        } else if mag.is_one() {
            out.write_str(&factors)?;
        } else {
            write!(out, "{mag}*{factors}")?;
        }
        first = false;
    }
    if first {
        out.write_str("0")?;
    }
    Ok(())
}
