//! Exact coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. Two implementations ship:
//! arbitrary-precision rationals ([`Rational`]) and prime fields [`Fp`] with a
//! compile-time modulus. Mixing fields is a type error.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{NumAssignRef, NumRef, One, Signed, ToPrimitive, Zero};

use crate::exactla::{self, Matrix};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// `2^62 - 57`, the largest prime below `2^62`.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// An exact field of coefficients.
pub trait Field:
    NumRef + NumAssignRef + Neg<Output = Self> + Clone + fmt::Debug + fmt::Display + Eq + Hash + Send + Sync + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    /// The image of `num / den`, or `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// Human-readable field name, e.g. `QQ` or `GF(7)`.
    fn name() -> String;

    /// Whether the canonical printed form of this element carries a minus sign.
    fn is_negative(&self) -> bool;

    /// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
    ///
    /// Pivoting is deterministic: for each column the first nonzero row at or
    /// below the current pivot row is used.
    fn row_reduce(m: &mut Matrix<Self>) -> Vec<usize> {
        exactla::gauss_jordan(m)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn name() -> String {
        "QQ".to_string()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn row_reduce(m: &mut Matrix<Self>) -> Vec<usize> {
        exactla::fraction_free_rref(m)
    }
}

/// Element of the prime field `Z/PZ`, stored as its least nonnegative residue.
///
/// `P` must be an odd prime below `2^63`; this is checked in debug builds only.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Symmetric representative in `(-P/2, P/2]`.
    pub fn signed(self) -> i128 {
        if self.0 > P / 2 {
            self.0 as i128 - P as i128
        } else {
            self.0 as i128
        }
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("residue fits in u64"))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u128 + rhs.0 as u128;
        Fp((s % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(P - (rhs.0 - self.0))
        }
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

// Every nonzero element divides every other, so remainders vanish.
impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "remainder by zero in prime field");
        Fp(0)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

macro_rules! forward_ref_ops {
    ($($trait:ident $method:ident $assign:ident $assign_method:ident),*) => {$(
        impl<'a, const P: u64> $trait<&'a Fp<P>> for Fp<P> {
            type Output = Fp<P>;
            fn $method(self, rhs: &'a Fp<P>) -> Fp<P> {
                $trait::$method(self, *rhs)
            }
        }
        impl<const P: u64> $assign for Fp<P> {
            fn $assign_method(&mut self, rhs: Fp<P>) {
                *self = $trait::$method(*self, rhs);
            }
        }
        impl<'a, const P: u64> $assign<&'a Fp<P>> for Fp<P> {
            fn $assign_method(&mut self, rhs: &'a Fp<P>) {
                *self = $trait::$method(*self, *rhs);
            }
        }
    )*};
}

forward_ref_ops!(
    Add add AddAssign add_assign,
    Sub sub SubAssign sub_assign,
    Mul mul MulAssign mul_assign,
    Div div DivAssign div_assign,
    Rem rem RemAssign rem_assign
);

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> num_traits::Num for Fp<P> {
    type FromStrRadixErr = num_bigint::ParseBigIntError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let v = BigInt::from_str_radix(s, radix)?;
        Ok(Self::from_bigint(&v))
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(v: i64) -> Self {
        Fp((v as i128).rem_euclid(P as i128) as u64)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den);
        let n = Self::from_bigint(num);
        d.inv().map(|di| n * di)
    }

    fn name() -> String {
        format!("GF({P})")
    }

    fn is_negative(&self) -> bool {
        self.0 > P / 2
    }
}
