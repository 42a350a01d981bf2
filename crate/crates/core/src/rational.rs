//! Exact rational scalars and their `p/q` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// Default bound on numerator/denominator size, in bits.
pub const DEFAULT_MAX_BITS: u64 = 512;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn half() -> Q {
    q(1, 2)
}

/// Parses `p/q` (or a bare integer `p`). The denominator must be positive and
/// the fraction reduced.
pub fn parse(text: &str) -> Result<Q> {
    let text = text.trim();
    let bad = |why: &str| Error::Parse(format!("malformed rational {text:?}: {why}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    if den.is_negative() {
        return Err(bad("denominator must be positive"));
    }
    if !num.gcd(&den).is_one() && !num.is_zero() {
        return Err(bad("fraction is not reduced"));
    }
    if num.is_zero() && !den.is_one() {
        return Err(bad("fraction is not reduced"));
    }
    Ok(Q::new(num, den))
}

/// Always `p/q`, including integers (`1/1`, `0/1`).
pub fn format(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn to_f64(x: &Q) -> f64 {
    // Shift large values down before converting so huge denominators stay finite.
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb.max(db) - 60).max(0) as u32;
    let n = n >> shift;
    let d = d >> shift;
    let (nf, df) = (bigint_to_f64(&n), bigint_to_f64(&d));
    if df == 0.0 {
        // Denominator vanished under the shift; the value is astronomically large.
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    nf / df
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn bits(x: &Q) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

/// Errors out when `x` has grown beyond `max_bits`.
pub fn check_size(x: &Q, max_bits: u64) -> Result<()> {
    if bits(x) > max_bits {
        return Err(Error::Resource(format!(
            "rational size cap exceeded: {} bits > {} (denominator cap 2^{})",
            bits(x),
            max_bits,
            max_bits
        )));
    }
    Ok(())
}

pub fn min(a: &Q, b: &Q) -> Q {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Q, b: &Q) -> Q {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn ceil_to_usize(x: &Q) -> usize {
    use num_traits::ToPrimitive;
    x.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reduced_fractions() {
        assert_eq!(parse("2/5").unwrap(), q(2, 5));
        assert_eq!(parse("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse("7").unwrap(), qi(7));
        assert_eq!(parse(" 0/1 ").unwrap(), zero());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1/0", "1/-2", "2/4", "0/3", "x/2", "", "1/2/3"] {
            assert!(parse(bad).is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn formats_with_denominator() {
        assert_eq!(format(&qi(1)), "1/1");
        assert_eq!(format(&zero()), "0/1");
        assert_eq!(format(&q(-6, 8)), "-3/4");
    }

    #[test]
    fn f64_of_huge_denominators() {
        let tiny = Q::new(BigInt::one(), BigInt::one() << 900usize);
        assert_eq!(to_f64(&tiny), 0.0);
        let third = q(1, 3);
        assert!((to_f64(&third) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn size_cap() {
        let big = Q::new(BigInt::one(), BigInt::one() << 600usize);
        assert!(matches!(check_size(&big, 512), Err(Error::Resource(_))));
        assert!(check_size(&q(1, 3), 512).is_ok());
    }
}
