//! Implicitization of tensor-product surfaces with moving planes and moving quadrics.
//!
//! A map `P1 x P1 -> P3` is given by four bihomogeneous polynomials of bidegree
//! `(m, n)`. This crate computes its syzygy spaces in fixed bidegrees, the
//! threshold degrees at which the matrix of moving planes and quadrics becomes a
//! square determinantal representation, the determinant of the length-two
//! complex when it does not, and an interpolation oracle that checks all of it.
//!
//! All arithmetic is exact and generic over [`Field`]: use [`Rational`] for
//! results over `QQ`, or a prime field such as [`Fp62`] for speed.

pub mod algebra;
pub mod detrep;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod oracle;
pub mod syzygy;
pub mod thresholds;

pub use algebra::{BiHomPoly, Field, Fp, MovingForm, Rational, SurfaceParam, XForm, DEFAULT_PRIME};
pub use error::{Error, Result};
pub use exactla::Matrix;

/// The default prime field, `GF(2^62 - 57)`.
pub type Fp62 = Fp<DEFAULT_PRIME>;

/// `GF(2^61 - 1)`.
pub type Fp61 = Fp<2_305_843_009_213_693_951>;

/// `GF(2^62 - 87)`.
pub type Fp62b = Fp<4_611_686_018_427_387_817>;

/// `GF(2^60 - 93)`.
pub type Fp60 = Fp<1_152_921_504_606_846_883>;

pub type QPoly = BiHomPoly<Rational>;
pub type QForm = XForm<Rational>;
pub type QMatrix = Matrix<Rational>;
pub type QParam = SurfaceParam<Rational>;
