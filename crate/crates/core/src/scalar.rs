use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Coefficient field for forms, presentations and matrices.
///
/// Everything in this crate is written against this trait. The intended
/// instantiation is [`crate::Rational`]; `f64` also satisfies it, and is exact
/// as long as the data stays dyadic (every worked example is integral).
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

pub(crate) fn from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("scalar type cannot represent a small integer")
}

/// `(-1)^odd` as a scalar.
pub(crate) fn parity_sign<T: Scalar>(odd: bool) -> T {
    if odd {
        -T::one()
    } else {
        T::one()
    }
}

/// Parses `num` or `num/den` (unsigned decimal digits) into `T`.
pub(crate) fn parse_decimal_ratio<T: Scalar>(num: &str, den: Option<&str>) -> Option<T> {
    let n = parse_digits::<T>(num)?;
    match den {
        None => Some(n),
        Some(d) => {
            let d = parse_digits::<T>(d)?;
            if d.is_zero() {
                return None;
            }
            let q = n.clone() / d.clone();
            // integral scalar types would silently truncate
            (q.clone() * d == n).then_some(q)
        }
    }
}

fn parse_digits<T: Scalar>(s: &str) -> Option<T> {
    if s.is_empty() {
        return None;
    }
    let ten = from_i64::<T>(10);
    s.bytes().try_fold(T::zero(), |acc, b| {
        b.is_ascii_digit()
            .then(|| acc * ten.clone() + from_i64::<T>(i64::from(b - b'0')))
    })
}
