use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Zero};

use super::{factorial, rat, ratio, Rational};
use crate::error::{Error, Result};

/// Default truncation order for generating-function work.
pub const DEFAULT_ORDER: usize = 32;

/// Power series truncated after `t^order`.
///
/// Binary operations on series of different orders work to the smaller of
/// the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least a constant term"
        );
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Series::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Series::from_fn(order, |_| Rational::zero())
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Rational::one(), order)
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        Series::from_fn(order, |k| {
            if k == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// `1/(1-t) = sum t^n`.
    pub fn geometric(order: usize) -> Self {
        Series::from_fn(order, |_| Rational::one())
    }

    /// `log(1+t) = t - t^2/2 + t^3/3 - ...`.
    pub fn log1p_t(order: usize) -> Self {
        Series::from_fn(order, |k| match k {
            0 => Rational::zero(),
            k if k % 2 == 1 => ratio(1, k as u64),
            k => ratio(-1, k as u64),
        })
    }

    /// `log(1-t) = -t - t^2/2 - t^3/3 - ...`.
    pub fn log1m_t(order: usize) -> Self {
        Series::from_fn(order, |k| {
            if k == 0 {
                Rational::zero()
            } else {
                ratio(-1, k as u64)
            }
        })
    }

    /// Ordinary generating function of `n!`.
    pub fn factorials(order: usize) -> Self {
        Series::from_fn(order, |k| Rational::from_integer(factorial(k)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`. Panics past the truncation order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// `k! [t^k]`, the sequence an exponential generating function encodes.
    pub fn egf_coeff(&self, k: usize) -> Rational {
        &self.coeffs[k] * Rational::from_integer(factorial(k))
    }

    /// Integer sequence encoded by an exponential generating function, or
    /// `None` if some `k! [t^k]` is not an integer.
    pub fn egf_integers(&self) -> Option<Vec<BigInt>> {
        (0..=self.order())
            .map(|k| {
                let v = self.egf_coeff(k);
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series::from_fn(order, |n| {
            (0..=n).fold(Rational::zero(), |acc, i| {
                acc + &self.coeffs[i] * &other.coeffs[n - i]
            })
        })
    }

    /// `1 / self`; the constant term must be nonzero.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantDivisor);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let acc = (1..=n).fold(Rational::zero(), |acc, i| {
                acc + &self.coeffs[i] * &out[n - i]
            });
            out.push(-acc * &inv0);
        }
        Ok(Series::new(out))
    }

    /// `self / divisor`; the divisor's constant term must be nonzero.
    pub fn div(&self, divisor: &Series) -> Result<Series> {
        Ok(self.mul(&divisor.reciprocal()?))
    }

    /// `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner: a_0 + inner (a_1 + inner (a_2 + ...))
        let mut acc = Series::zero(order);
        for a in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += a;
        }
        Ok(acc)
    }

    /// `log(1 + self)`; `self` must have zero constant term.
    pub fn log1p(&self) -> Result<Series> {
        Series::log1p_t(self.order()).compose(self)
    }

    /// Term-by-term antiderivative with zero constant; raises the order by one.
    pub fn integrate(&self) -> Series {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / rat(k as u64 + 1)),
        );
        Series::new(out)
    }

    /// Term-by-term derivative; lowers the order by one (order 0 stays 0).
    pub fn derivative(&self) -> Series {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * rat(k as u64))
                .collect(),
        )
    }

    /// `self / t`; requires a zero constant term and lowers the order by one.
    pub fn shift_down(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotDivisibleByT);
        }
        if self.order() == 0 {
            return Ok(Series::zero(0));
        }
        Ok(Series::new(self.coeffs[1..].to_vec()))
    }

    /// `t * self`; raises the order by one.
    pub fn shift_up(&self) -> Series {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        out.extend(self.coeffs.iter().cloned());
        Series::new(out)
    }

    /// Index and both values of the first coefficient where the two series
    /// differ, compared to the smaller order.
    pub fn first_mismatch(&self, other: &Series) -> Option<(usize, Rational, Rational)> {
        let order = self.order().min(other.order());
        (0..=order)
            .find(|&k| self.coeffs[k] != other.coeffs[k])
            .map(|k| (k, self.coeffs[k].clone(), other.coeffs[k].clone()))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}
