use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::BisetError;

/// Exact coefficient type used throughout.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Whether `p` does not divide the reduced denominator.
pub fn is_p_local(q: &Scalar, p: u64) -> bool {
    (q.denom() % BigInt::from(p)).is_positive()
}

/// Whether `q` is a unit of `Z_(p)`.
pub fn is_p_unit(q: &Scalar, p: u64) -> bool {
    !q.is_zero() && is_p_local(q, p) && !(q.numer() % BigInt::from(p)).is_zero()
}

/// Text form `num/den`, or `num` when the denominator is 1.
pub fn format_scalar(q: &Scalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar, BisetError> {
    let bad = || BisetError::Parse(format!("bad coefficient {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// An element of `Z_(p)`: a rational whose reduced denominator is prime to `p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PLocalScalar {
    value: Scalar,
    prime: u64,
}

impl PLocalScalar {
    pub fn new(value: Scalar, prime: u64) -> Result<PLocalScalar, BisetError> {
        if is_p_local(&value, prime) {
            Ok(PLocalScalar { value, prime })
        } else {
            Err(BisetError::NotPLocal { value: format_scalar(&value), p: prime })
        }
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn numerator(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn is_unit(&self) -> bool {
        !self.value.numer().mod_floor(&BigInt::from(self.prime)).is_zero()
    }
}

impl fmt::Display for PLocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(&self.value))
    }
}

impl fmt::Debug for PLocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={})", format_scalar(&self.value), self.prime)
    }
}
