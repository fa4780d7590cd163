//! Bernoulli numbers and polynomials of the second kind, `K_n`, `a_n`, and
//! the generating-function identities tying them to the games.
//!
//! Conventions: `sum b_n(x) t^n / n! = t (1+t)^x / log(1+t)` and
//! `b_n = b_n(0)`, so `b_0 = 1`, `b_1 = 1/2`, `b_2 = -1/6`. Jordan's
//! normalization is `b_n / n!`.

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    binomial, factorial, falling_factorial_poly, rat, ratio, sign_pow, Poly, Rational, Series,
    StirlingTable,
};
use crate::games::{kappa_rec_table, kappa_sum, top_chain_sum, GameId};

fn need_n_at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Precondition(format!(
            "{what} needs n >= {min}, got {n}"
        )));
    }
    Ok(())
}

/// `b_0..=b_n` from the series `t / log(1+t)`.
pub fn b2_numbers(n: usize) -> Vec<Rational> {
    let s = Series::log1p_t(n + 1)
        .shift_down()
        .expect("log(1+t) has no constant term");
    let s = s.reciprocal().expect("log(1+t)/t starts with 1");
    (0..=n).map(|k| s.egf_coeff(k)).collect()
}

/// `b_0..=b_n` read off `t / log(1-t)`, whose `t^k` coefficient is
/// `(-1)^(k+1) b_k / k!`; for `k >= 1` that is `|b_k| / k!`.
pub fn b2_numbers_from_log1m(n: usize) -> Vec<Rational> {
    let s = Series::log1m_t(n + 1)
        .shift_down()
        .expect("log(1-t) has no constant term");
    let s = s.reciprocal().expect("log(1-t)/t starts with -1");
    (0..=n)
        .map(|k| s.egf_coeff(k) * rat(sign_pow(k + 1)))
        .collect()
}

/// The polynomial `b_n(x)` in the power basis and in the basis `C(x+1, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B2Polynomial {
    n: usize,
    power: Poly,
    binom: Vec<Rational>,
}

impl B2Polynomial {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Coefficients of `x^k`.
    pub fn power(&self) -> &Poly {
        &self.power
    }

    /// `c_{n,0}, ..., c_{n,n}`: `b_n(x) = sum c_{n,m} C(x+1, m)`.
    pub fn binom_coeffs(&self) -> &[Rational] {
        &self.binom
    }

    /// The binomial-basis form expanded back into powers of `x`.
    pub fn binom_form_expanded(&self) -> Poly {
        self.binom
            .iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (m, c)| {
                &acc + &Poly::binomial(1, m).scale(c)
            })
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.power.eval(x)
    }

    pub fn eval_binom_form(&self, x: &Rational) -> Rational {
        self.binom_form_expanded().eval(x)
    }

    /// Jordan's normalization `b_n(x) / n!`.
    pub fn jordan(&self) -> Poly {
        self.power
            .scale(&Rational::new(BigInt::one(), factorial(self.n)))
    }
}

/// Power-basis coefficients of `b_n(x)`:
/// `b_n(x) = n! sum_k b_{n-k}/(n-k)! * x(x-1)...(x-k+1)/k!`.
pub fn b2_polynomial_power(n: usize) -> Poly {
    let b = b2_numbers(n);
    let n_fact = rat(factorial(n));
    (0..=n).fold(Poly::zero(), |acc, k| {
        let scale = &n_fact * &b[n - k] / rat(factorial(n - k)) / rat(factorial(k));
        &acc + &falling_factorial_poly(k).scale(&scale)
    })
}

/// `b_n(x)` in both representations.
pub fn b2_polynomial(n: usize) -> B2Polynomial {
    let binom = (0..=n).map(|m| c_coeff(n, m).expect("m <= n")).collect();
    B2Polynomial {
        n,
        power: b2_polynomial_power(n),
        binom,
    }
}

/// `c_{n,m}`: `c_{n,n} = n!` and, for `m < n`,
/// `(-1)^(n-m) m! (m+1)! / (n+1)!` times the sum over
/// `m = i_0 < ... < i_{k+1} = n` of `prod (i_{j+1}-i_j-1)!^2 C(i_{j+1}, i_j+1) C(i_{j+1}+1, i_j)`.
pub fn c_coeff(n: usize, m: usize) -> Result<Rational> {
    if m > n {
        return Err(Error::Precondition(format!(
            "c_{{n,m}} needs m <= n, got n={n} m={m}"
        )));
    }
    if m == n {
        return Ok(rat(factorial(n)));
    }
    let num = sign_pow(n - m) * factorial(m) * factorial(m + 1) * top_chain_sum(m, n);
    Ok(Rational::new(num, factorial(n + 1)))
}

/// `b_n = (-1)^(n-1) kappa_n / (n+1)!` with `kappa_n` the original game's
/// kernel count as a composition sum.
pub fn b2_via_sum(n: usize) -> Result<Rational> {
    need_n_at_least(n, 2, "b2_via_sum")?;
    let kappa = kappa_sum(GameId::Original, n)?;
    Ok(Rational::new(sign_pow(n - 1) * kappa, factorial(n + 1)))
}

/// `b_n = c_{n,0} + c_{n,1}`.
pub fn b2_via_cnm(n: usize) -> Result<Rational> {
    need_n_at_least(n, 2, "b2_via_cnm")?;
    Ok(c_coeff(n, 0)? + c_coeff(n, 1)?)
}

/// `|b_2|..=|b_n|` (with `|b_0| = 1`, `|b_1| = 1/2` in front) by
/// `|b_n| = 1/(n+1) sum_{i=1}^{n-1} |b_i| (n-i-1)! C(n, i-1)`.
pub fn abs_b2_rec_table(n: usize) -> Vec<Rational> {
    let mut b = vec![rat(1), ratio(1, 2)];
    for m in 2..=n {
        let sum = (1..m).fold(Rational::zero(), |acc, i| {
            acc + &b[i] * rat(factorial(m - i - 1) * binomial(m as u64, i as i64 - 1))
        });
        b.push(sum / rat(m as u64 + 1));
    }
    b.truncate(n + 1);
    b
}

/// `|b_n|` by the non-alternating recurrence.
pub fn abs_b2_rec(n: usize) -> Result<Rational> {
    need_n_at_least(n, 2, "abs_b2_rec")?;
    Ok(abs_b2_rec_table(n).swap_remove(n))
}

/// `|b_n / n!|` by `|b_n/n!| = sum_{i=1}^{n-1} |b_i/i!| i / ((n+1)(n-i+1)(n-i))`.
pub fn abs_b2_jordan_rec(n: usize) -> Result<Rational> {
    need_n_at_least(n, 2, "abs_b2_jordan_rec")?;
    let mut j = vec![rat(1), ratio(1, 2)];
    for m in 2..=n {
        let sum = (1..m).fold(Rational::zero(), |acc, i| {
            acc + &j[i] * ratio(i as u64, ((m + 1) * (m - i + 1) * (m - i)) as u64)
        });
        j.push(sum);
    }
    Ok(j.swap_remove(n))
}

/// `(n-2)/n |b_{n-1}/(n-1)!| < |b_n/n!|`, Jordan's lower bound, for `n >= 3`.
pub fn jordan_bound_holds(b: &[Rational], n: usize) -> bool {
    assert!(n >= 3 && n < b.len(), "the bound is stated for n >= 3");
    let prev = b[n - 1].abs() / rat(factorial(n - 1));
    let cur = b[n].abs() / rat(factorial(n));
    prev * ratio(n as u64 - 2, n as u64) < cur
}

/// `K_n = (-1)^n sum_{k=1}^{n+1} s(n+1, k) (k-1)!`.
pub fn k_via_stirling(n: usize) -> BigInt {
    k_via_stirling_with(&StirlingTable::new(n + 1), n)
}

fn k_via_stirling_with(table: &StirlingTable, n: usize) -> BigInt {
    let sum = (1..=n + 1).fold(BigInt::zero(), |acc, k| {
        acc + table.get(n + 1, k as i64) * factorial(k - 1)
    });
    sign_pow(n) * sum
}

/// `a_0..=a_n` from `n! [t^n] 1/(1 - log(1+t))`.
pub fn a_via_series(n: usize) -> Vec<BigInt> {
    let denom = &Series::one(n) - &Series::log1p_t(n);
    let s = denom.reciprocal().expect("constant term is 1");
    s.egf_integers()
        .expect("1/(1-log(1+t)) has integer EGF coefficients")
}

/// `a_0..=a_n` from `a_n = sum_k s(n, k) k!`.
pub fn a_via_stirling(n: usize) -> Vec<BigInt> {
    let table = StirlingTable::new(n);
    a_via_stirling_with(&table, n)
}

fn a_via_stirling_with(table: &StirlingTable, n: usize) -> Vec<BigInt> {
    (0..=n)
        .map(|m| {
            (0..=m).fold(BigInt::zero(), |acc, k| {
                acc + table.get(m, k as i64) * factorial(k)
            })
        })
        .collect()
}

/// `a_0..=a_n` from `a_n = (-1)^n (K_n - n K_{n-1})` with `K_{-1} = 0`.
pub fn a_via_k(k: &[BigInt]) -> Vec<BigInt> {
    (0..k.len())
        .map(|m| {
            let prev = if m == 0 {
                BigInt::zero()
            } else {
                &k[m - 1] * m
            };
            sign_pow(m) * (&k[m] - prev)
        })
        .collect()
}

/// `a_0..=a_n`, computed by the series, Stirling and `K`-difference routes,
/// which must agree.
pub fn a_sequence(n: usize) -> Result<Vec<BigInt>> {
    let series = a_via_series(n);
    let stirling = a_via_stirling(n);
    let k_table = StirlingTable::new(n + 1);
    let k: Vec<BigInt> = (0..=n).map(|m| k_via_stirling_with(&k_table, m)).collect();
    let diff = a_via_k(&k);
    for m in 0..=n {
        if series[m] != stirling[m] || series[m] != diff[m] {
            return Err(Error::RouteMismatch(format!(
                "a_{m}: series {} / stirling {} / K-difference {}",
                series[m], stirling[m], diff[m]
            )));
        }
    }
    Ok(series)
}

/// One row of the sign scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureRow {
    pub n: usize,
    pub a: BigInt,
    pub k: BigInt,
    /// `n K_{n-1} > K_n`, for `n >= 1`.
    pub k_inequality: Option<bool>,
    /// `n kappa_{n-1} > kappa_n` with flat-game kernel counts, for `n >= 2`.
    pub kappa_inequality: Option<bool>,
}

/// Outcome of scanning `a_n` signs and the two inequality phrasings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub max_n: usize,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    /// `n <= 11` with `a_n <= 0`.
    pub fn nonpositive_below_12(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.n <= 11 && !r.a.is_positive())
            .map(|r| r.n)
            .collect()
    }

    /// `n >= 12` where the sign of `a_n` is not `(-1)^(n-1)`.
    pub fn sign_breaks(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.n >= 12 && r.a.is_positive() != (r.n % 2 == 1))
            .map(|r| r.n)
            .collect()
    }

    /// `n >= 11` where `n K_{n-1} > K_n` fails.
    pub fn k_failures(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.n >= 11 && r.k_inequality == Some(false))
            .map(|r| r.n)
            .collect()
    }

    /// `n >= 12` where `n kappa_{n-1} > kappa_n` fails.
    pub fn kappa_failures(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.n >= 12 && r.kappa_inequality == Some(false))
            .map(|r| r.n)
            .collect()
    }
}

/// Scans `0..=max_n`. Reports, never asserts: the caller decides what a
/// failure means.
pub fn conjecture_scan(max_n: usize) -> Result<ConjectureReport> {
    need_n_at_least(max_n, 12, "conjecture_scan")?;
    let table = StirlingTable::new(max_n + 1);
    let k: Vec<BigInt> = (0..=max_n)
        .map(|m| k_via_stirling_with(&table, m))
        .collect();
    let a = a_via_stirling_with(&table, max_n);
    let diff = a_via_k(&k);
    if let Some(m) = (0..=max_n).find(|&m| a[m] != diff[m]) {
        return Err(Error::RouteMismatch(format!(
            "a_{m}: stirling {} / K-difference {}",
            a[m], diff[m]
        )));
    }
    // flat-game kernel counts, independent of K
    let mut kappa = vec![BigInt::zero()];
    for m in 1..=max_n {
        kappa.push(kappa_sum(GameId::Flat, m)?);
    }
    let rows = (0..=max_n)
        .map(|n| ConjectureRow {
            n,
            a: a[n].clone(),
            k: k[n].clone(),
            k_inequality: (n >= 1).then(|| &k[n - 1] * n > k[n]),
            kappa_inequality: (n >= 2).then(|| &kappa[n - 1] * n > kappa[n]),
        })
        .collect();
    Ok(ConjectureReport { max_n, rows })
}

/// Result of checking one identity coefficientwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub order: usize,
    /// First differing coefficient: index, left side, right side.
    pub mismatch: Option<(usize, Rational, Rational)>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }

    fn compare(name: &'static str, left: &Series, right: &Series) -> Self {
        IdentityCheck {
            name,
            order: left.order().min(right.order()),
            mismatch: left.first_mismatch(right),
        }
    }
}

fn egf_of(values: &[BigInt]) -> Series {
    Series::from_fn(values.len() - 1, |k| {
        Rational::new(values[k].clone(), factorial(k))
    })
}

fn ogf_of(values: &[BigInt]) -> Series {
    Series::from_fn(values.len() - 1, |k| rat(values[k].clone()))
}

/// Kernel counts `[kappa_0, ..., kappa_n]` of `id`, with `kappa_0 = 0` where
/// the empty word is not a position.
fn kernel_counts(id: GameId, n: usize) -> Result<Vec<BigInt>> {
    let mut out = vec![if id == GameId::FlatExceptionFree {
        BigInt::one()
    } else {
        BigInt::zero()
    }];
    for m in 1..=n {
        out.push(kappa_sum(id, m)?);
    }
    Ok(out)
}

/// Number of permutations of `0..=n` without strong fixed points, by
/// splitting into connected components of size at least 2:
/// `g(n) = sum_{k>=2} kappa_k g(n-k)`, `g(0) = 1`.
pub fn no_strong_fixed_point_counts(n: usize) -> Result<Vec<BigInt>> {
    let kappa = if n >= 1 {
        kappa_rec_table(GameId::Instant, n)?
    } else {
        vec![BigInt::zero()]
    };
    let mut g = vec![BigInt::one()];
    for m in 1..=n {
        let v = (2..=m).fold(BigInt::zero(), |acc, k| acc + &kappa[k] * &g[m - k]);
        g.push(v);
    }
    Ok(g)
}

/// Checks the generating-function identities to `order`: left sides from
/// game kernel counts, right sides from series algebra.
pub fn gf_identities(order: usize) -> Result<Vec<IdentityCheck>> {
    if order < 2 {
        return Err(Error::Precondition("gf_identities needs order >= 2".into()));
    }
    let one = Series::one(order);
    let t = Series::variable(order);
    let one_minus_t = &one - &t;
    let log1m = Series::log1m_t(order);
    let k_egf_right = one.div(&one_minus_t.mul(&(&one - &log1m)))?;
    let mut out = Vec::new();

    let flat = egf_of(&kernel_counts(GameId::Flat, order)?);
    out.push(IdentityCheck::compare(
        "flat-kernels-egf",
        &flat,
        &t.mul(&k_egf_right),
    ));

    let k = egf_of(&kernel_counts(GameId::FlatExceptionFree, order)?);
    out.push(IdentityCheck::compare("k-egf", &k, &k_egf_right));

    // 1/(1-t) composed with t + (1-t) log(1-t) = sum_{n>=2} (n-2)!/n! t^n
    let inner = &t + &one_minus_t.mul(&log1m);
    let inner_closed = Series::from_fn(order, |n| {
        if n < 2 {
            Rational::zero()
        } else {
            ratio(1, (n * (n - 1)) as u64)
        }
    });
    out.push(IdentityCheck::compare(
        "linear-orders-inner",
        &inner,
        &inner_closed,
    ));
    let composed = Series::geometric(order).compose(&inner)?;
    out.push(IdentityCheck::compare(
        "k-egf-compositional",
        &composed,
        &k_egf_right,
    ));

    let connected = ogf_of(&kernel_counts(GameId::Instant, order)?);
    let facts = Series::factorials(order);
    out.push(IdentityCheck::compare(
        "connected-ogf",
        &connected,
        &(&one - &facts.reciprocal()?),
    ));

    // t/log(1-t) against b_n, and the differential equation it satisfies
    let g = log1m.shift_down()?.reciprocal()?;
    let b = b2_numbers(order - 1);
    let g_from_b = Series::from_fn(order - 1, |n| {
        &b[n] * rat(sign_pow(n + 1)) / rat(factorial(n))
    });
    out.push(IdentityCheck::compare("t-over-log1m", &g_from_b, &g));
    let lhs = &t.mul(&g).derivative() + &(&one - &t);
    let rhs = g.derivative().mul(&(&one_minus_t.mul(&log1m) + &t));
    out.push(IdentityCheck::compare(
        "t-over-log1m-differential",
        &lhs,
        &rhs,
    ));

    let no_sfp = ogf_of(&no_strong_fixed_point_counts(order)?);
    let right = facts.div(&(&one + &t.mul(&facts)))?;
    out.push(IdentityCheck::compare(
        "no-strong-fixed-points-ogf",
        &no_sfp,
        &right,
    ));
    Ok(out)
}

/// Kernel count of rank `n` read off the game's generating function.
pub fn kernels_via_gf(id: GameId, n: usize) -> Result<BigInt> {
    let integral = |r: Rational, what: &str| {
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(Error::RouteMismatch(format!(
                "{what} gave the non-integer {r}"
            )))
        }
    };
    match id {
        GameId::Original => {
            need_n_at_least(n, 1, "original kernel count")?;
            let b = b2_numbers(n).swap_remove(n);
            integral(
                b * rat(sign_pow(n - 1) * factorial(n + 1)),
                "(-1)^(n-1) (n+1)! b_n",
            )
        }
        GameId::Instant => crate::games::kappa_via_gf_instant(n),
        GameId::Polynomial(x) => {
            let b = b2_polynomial_power(n).eval(&rat(-(x as i64)));
            integral(
                b * rat(sign_pow(n) * factorial(n + 1)),
                "(-1)^n (n+1)! b_n(-x)",
            )
        }
        GameId::Flat | GameId::FlatExceptionFree => {
            let order = n + 1;
            let one = Series::one(order);
            let k =
                one.div(&(&one - &Series::variable(order)).mul(&(&one - &Series::log1m_t(order))))?;
            let s = if id == GameId::Flat { k.shift_up() } else { k };
            if id == GameId::Flat {
                need_n_at_least(n, 1, "flat kernel count")?;
            }
            integral(s.egf_coeff(n), "egf coefficient")
        }
    }
}
