//! The parameterizations shipped in `fixtures/`.

use crate::algebra::{Field, SurfaceParam};

pub const SEGRE_JSON: &str = include_str!("../fixtures/segre.json");
pub const BIDEG32_JSON: &str = include_str!("../fixtures/bideg32.json");
pub const BIDEG22_JSON: &str = include_str!("../fixtures/bideg22.json");
pub const BIDEG33_JSON: &str = include_str!("../fixtures/bideg33.json");

fn load<F: Field>(text: &str) -> SurfaceParam<F> {
    SurfaceParam::from_json(text).expect("shipped fixture is valid")
}

/// `(s0t0, s0t1, s1t0, s1t1)`: the Segre embedding, no base points.
pub fn segre<F: Field>() -> SurfaceParam<F> {
    load(SEGRE_JSON)
}

/// Bidegree (3,2), a degree 6 surface with a base scheme of degree 6.
pub fn bideg_3_2<F: Field>() -> SurfaceParam<F> {
    load(BIDEG32_JSON)
}

/// Bidegree (2,2), a degree 7 surface with one base point.
pub fn bideg_2_2<F: Field>() -> SurfaceParam<F> {
    load(BIDEG22_JSON)
}

/// Bidegree (3,3), the maximal minors of a 4x3 matrix; a quintic with `r = 13`.
pub fn bideg_3_3<F: Field>() -> SurfaceParam<F> {
    load(BIDEG33_JSON)
}

pub fn all<F: Field>() -> Vec<SurfaceParam<F>> {
    vec![segre(), bideg_3_2(), bideg_2_2(), bideg_3_3()]
}
