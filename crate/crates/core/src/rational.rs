//! Small helpers around `BigRational` shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p` or `p/q` (the wire format used in reports).
pub fn to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q`. Decimal points are rejected so that exact
/// inputs stay exact.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational equal to a finite `f64`.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Least common multiple of all denominators.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Gcd of all numerators (zero for an empty or all-zero input).
pub fn numerator_gcd<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()))
}

/// Scales `xs` by the unique positive rational that makes every entry an
/// integer with overall gcd 1.
pub fn primitive_integer_vector(xs: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(xs);
    let scaled: Vec<BigInt> = xs
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|x| x / &g).collect()
}

/// Bit length of the larger of numerator and denominator.
pub fn bits(x: &Rational) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

/// The rational with the smallest denominator in `[lo, hi]`.
pub fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_in(&-hi, &-lo);
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_in(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_in(&q(1, 3), &q(1, 2)), q(1, 2));
        assert_eq!(simplest_in(&q(3, 10), &q(7, 20)), q(1, 3));
        assert_eq!(simplest_in(&q(-7, 20), &q(-3, 10)), q(-1, 3));
        assert_eq!(simplest_in(&q(-1, 2), &q(1, 2)), int(0));
        assert_eq!(simplest_in(&q(29, 10), &q(31, 10)), int(3));
        assert_eq!(simplest_in(&q(666, 1000), &q(667, 1000)), q(2, 3));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("3/12"), Some(q(1, 4)));
        assert_eq!(parse("-7"), Some(int(-7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("0.5"), None);
        assert_eq!(to_string(&q(-6, 8)), "-3/4");
        assert_eq!(to_string(&int(5)), "5");
    }

    #[test]
    fn primitive_vector() {
        let v = [q(1, 4), q(1, 12), q(1, 3)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(1), BigInt::from(4)]);
    }

    #[test]
    fn float_conversion() {
        assert!((to_f64(&q(1, 3)) - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(from_f64(0.5), Some(q(1, 2)));
    }
}
