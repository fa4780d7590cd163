//! Exact integers, rationals, combinatorial coefficients and truncated power
//! series over the rationals.
//!
//! Nothing here touches floating point. Integers are [`BigInt`] and rationals
//! are [`BigRational`], which is always kept in lowest terms with a positive
//! denominator.

mod combinatorics;
mod poly;
mod series;

pub use combinatorics::{
    binomial, factorial, falling_factorial_poly, multiset_coeff, stirling_first, StirlingTable,
};
pub use poly::Poly;
pub use series::{Series, DEFAULT_ORDER};

pub use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact rational number, always reduced.
pub type Rational = BigRational;

/// Builds an integer-valued rational.
pub fn rat<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds `num / den`, reduced.
pub fn ratio<A: Into<BigInt>, B: Into<BigInt>>(num: A, den: B) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `(-1)^k` as an integer.
pub fn sign_pow(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Renders an integer-or-fraction as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(rat(s.parse::<BigInt>().ok()?)),
    }
}
