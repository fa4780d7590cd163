//! The five concrete Bernoulli games as strongly Bernoulli type truncation
//! games on single words, with closed-form counts of their elementary kernel
//! factors and the kernel counts those counts add up to.
//!
//! Embeddings (1-based position `i`):
//!
//! | game      | letter          | ranges                                   | `M`                                      |
//! |-----------|-----------------|------------------------------------------|------------------------------------------|
//! | original  | `(i, u, v)`     | `1 <= u, v <= i`                         | `p_1 != 1`, `u_1 <= v_1..v_n`            |
//! | instant   | `(i, i, v)`     | `1 <= v <= i`                            | as original                              |
//! | poly:x    | `(u, v, w)`     | `u <= i`, `v <= i+1`, `w` nondecreasing `<= x` | all `w = x`, `u_1 < v_1..v_n`      |
//! | flat      | `(i, u)`        | `1 <= u <= i`                            | `p_1 != 1`, `u_1 < u_2..u_n`             |
//! | flat-xf   | `(i, u)`        | `1 <= u <= i`                            | `u_1 < u_2..u_n`                         |
//!
//! `poly:x` and `flat-xf` also admit the empty word as a position.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Zero};

use crate::error::{parse_err, Error, Result};
use crate::exactnum::{binomial, factorial, multiset_coeff, Series};
use crate::gamecore::{Letter, TruncationGame, Word};

/// Largest factor end index the brute-force factor census accepts by default.
pub const DEFAULT_FACTOR_GUARD: usize = 7;

/// Identifies one of the concrete games.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameId {
    Original,
    Instant,
    Polynomial(u32),
    Flat,
    FlatExceptionFree,
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameId::Original => f.write_str("original"),
            GameId::Instant => f.write_str("instant"),
            GameId::Polynomial(x) => write!(f, "poly:{x}"),
            GameId::Flat => f.write_str("flat"),
            GameId::FlatExceptionFree => f.write_str("flat-xf"),
        }
    }
}

impl FromStr for GameId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "original" => Ok(GameId::Original),
            "instant" => Ok(GameId::Instant),
            "flat" => Ok(GameId::Flat),
            "flat-xf" => Ok(GameId::FlatExceptionFree),
            other => {
                let x = other.strip_prefix("poly:").ok_or_else(|| {
                    parse_err(s, "expected original, instant, poly:<x>, flat or flat-xf")
                })?;
                let x: u32 = x
                    .parse()
                    .map_err(|_| parse_err(s, "poly:<x> needs a positive integer x"))?;
                if x == 0 {
                    return Err(parse_err(s, "poly:<x> needs x >= 1"));
                }
                Ok(GameId::Polynomial(x))
            }
        }
    }
}

/// A concrete game; implements [`TruncationGame`] with linear-time move scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Game {
    id: GameId,
}

/// The embedded truncation game for `id`.
pub fn spec(id: GameId) -> Game {
    if let GameId::Polynomial(x) = id {
        assert!(x >= 1, "poly:x needs x >= 1");
    }
    Game { id }
}

impl Game {
    pub fn id(&self) -> GameId {
        self.id
    }
}

fn prefix_w(prefix: &[Letter]) -> u32 {
    prefix.last().map_or(1, |l| l.at(2))
}

impl TruncationGame for Game {
    fn name(&self) -> String {
        self.id.to_string()
    }

    fn arity(&self) -> usize {
        match self.id {
            GameId::Original | GameId::Instant | GameId::Polynomial(_) => 3,
            GameId::Flat | GameId::FlatExceptionFree => 2,
        }
    }

    fn in_m(&self, w: &[Letter]) -> bool {
        let Some(first) = w.first() else {
            return false;
        };
        match self.id {
            GameId::Original | GameId::Instant => {
                first.at(0) != 1 && w.iter().all(|l| first.at(1) <= l.at(2))
            }
            GameId::Polynomial(x) => w.iter().all(|l| l.at(2) == x && first.at(0) < l.at(1)),
            GameId::Flat => first.at(0) != 1 && w[1..].iter().all(|l| first.at(1) < l.at(1)),
            GameId::FlatExceptionFree => w[1..].iter().all(|l| first.at(1) < l.at(1)),
        }
    }

    fn in_p(&self, w: &[Letter]) -> bool {
        if w.iter().any(|l| l.arity() != self.arity()) {
            return false;
        }
        let indexed = |i: usize, l: &Letter| l.at(0) as usize == i;
        match self.id {
            GameId::Original => {
                !w.is_empty()
                    && w.iter().enumerate().all(|(k, l)| {
                        let i = k as u32 + 1;
                        indexed(k + 1, l)
                            && (1..=i).contains(&l.at(1))
                            && (1..=i).contains(&l.at(2))
                    })
            }
            GameId::Instant => {
                !w.is_empty()
                    && w.iter().enumerate().all(|(k, l)| {
                        let i = k as u32 + 1;
                        indexed(k + 1, l) && l.at(1) == i && (1..=i).contains(&l.at(2))
                    })
            }
            GameId::Polynomial(x) => {
                w.iter().enumerate().all(|(k, l)| {
                    let i = k as u32 + 1;
                    (1..=i).contains(&l.at(0))
                        && (1..=i + 1).contains(&l.at(1))
                        && (1..=x).contains(&l.at(2))
                }) && w.windows(2).all(|p| p[0].at(2) <= p[1].at(2))
            }
            GameId::Flat | GameId::FlatExceptionFree => {
                (self.id == GameId::FlatExceptionFree || !w.is_empty())
                    && w.iter()
                        .enumerate()
                        .all(|(k, l)| indexed(k + 1, l) && (1..=k as u32 + 1).contains(&l.at(1)))
            }
        }
    }

    fn letters_at(&self, index: usize, prefix: &[Letter]) -> Vec<Letter> {
        let i = index as u32;
        match self.id {
            GameId::Original => (1..=i)
                .flat_map(|u| (1..=i).map(move |v| Letter::triple(i, u, v)))
                .collect(),
            GameId::Instant => (1..=i).map(|v| Letter::triple(i, i, v)).collect(),
            GameId::Polynomial(x) => {
                let lo = prefix_w(prefix);
                (1..=i)
                    .flat_map(|u| {
                        (1..=i + 1)
                            .flat_map(move |v| (lo..=x).map(move |w| Letter::triple(u, v, w)))
                    })
                    .collect()
            }
            GameId::Flat | GameId::FlatExceptionFree => {
                (1..=i).map(|u| Letter::pair(i, u)).collect()
            }
        }
    }

    fn empty_is_position(&self) -> bool {
        matches!(self.id, GameId::Polynomial(_) | GameId::FlatExceptionFree)
    }

    fn suffix_membership(&self, w: &[Letter], out: &mut Vec<bool>) {
        out.clear();
        out.resize(w.len(), false);
        match self.id {
            GameId::Original | GameId::Instant => {
                let mut min_v = u32::MAX;
                for m in (0..w.len()).rev() {
                    min_v = min_v.min(w[m].at(2));
                    out[m] = w[m].at(0) != 1 && w[m].at(1) <= min_v;
                }
            }
            GameId::Polynomial(x) => {
                let mut min_v = u32::MAX;
                let mut all_x = true;
                for m in (0..w.len()).rev() {
                    min_v = min_v.min(w[m].at(1));
                    all_x &= w[m].at(2) == x;
                    out[m] = all_x && w[m].at(0) < min_v;
                }
            }
            GameId::Flat | GameId::FlatExceptionFree => {
                let strict = self.id == GameId::Flat;
                // minimum of u over the letters after m
                let mut min_after = u32::MAX;
                for m in (0..w.len()).rev() {
                    let u = w[m].at(1);
                    out[m] = !(strict && w[m].at(0) == 1) && u < min_after;
                    min_after = min_after.min(u);
                }
            }
        }
    }

    fn first_exit(&self, w: &[Letter], start: usize) -> Option<usize> {
        let first = w.get(start)?;
        match self.id {
            GameId::Original | GameId::Instant => {
                if first.at(0) == 1 {
                    return Some(start);
                }
                (start..w.len()).find(|&t| w[t].at(2) < first.at(1))
            }
            GameId::Polynomial(x) => {
                (start..w.len()).find(|&t| w[t].at(2) != x || w[t].at(1) <= first.at(0))
            }
            GameId::Flat | GameId::FlatExceptionFree => {
                if self.id == GameId::Flat && first.at(0) == 1 {
                    return Some(start);
                }
                (start + 1..w.len()).find(|&t| w[t].at(1) <= first.at(1))
            }
        }
    }
}

/// Original-game position for the word pair `(u, v)`: letters `(i, u_i, v_i)`.
pub fn embed_original(u: &[u32], v: &[u32]) -> Result<Word> {
    if u.len() != v.len() {
        return Err(Error::Precondition(
            "the two words of an original-game position have equal length".into(),
        ));
    }
    Ok(u.iter()
        .zip(v)
        .enumerate()
        .map(|(k, (&a, &b))| Letter::triple(k as u32 + 1, a, b))
        .collect::<Vec<_>>()
        .into())
}

/// Instant-game position for the value word `v`: letters `(i, i, v_i)`.
pub fn embed_instant(v: &[u32]) -> Word {
    v.iter()
        .enumerate()
        .map(|(k, &b)| Letter::triple(k as u32 + 1, k as u32 + 1, b))
        .collect::<Vec<_>>()
        .into()
}

/// Flat-game position for the word `u`: letters `(i, u_i)`.
pub fn embed_flat(u: &[u32]) -> Word {
    u.iter()
        .enumerate()
        .map(|(k, &a)| Letter::pair(k as u32 + 1, a))
        .collect::<Vec<_>>()
        .into()
}

/// Polynomial-game position for the word triple `(u, v, w)`.
pub fn embed_polynomial(u: &[u32], v: &[u32], w: &[u32]) -> Result<Word> {
    if u.len() != v.len() || u.len() != w.len() {
        return Err(Error::Precondition(
            "the three words of a polynomial-game position have equal length".into(),
        ));
    }
    Ok((0..u.len())
        .map(|k| Letter::triple(u[k], v[k], w[k]))
        .collect::<Vec<_>>()
        .into())
}

fn parse_values(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            let v: u32 = p
                .trim()
                .parse()
                .map_err(|_| parse_err(s, "expected comma-separated positive integers"))?;
            if v == 0 {
                return Err(parse_err(s, "values must be positive"));
            }
            Ok(v)
        })
        .collect()
}

/// Parses a position of `id`, accepting the canonical letter syntax
/// (`1.1.1,2.2.1`) or the game's native form: `u;v` for original, `u;v;w`
/// for poly:x, a single value word for instant and flat.
pub fn parse_position(id: GameId, text: &str) -> Result<Word> {
    let text = text.trim();
    let word = if text.contains('.') {
        text.parse::<Word>()?
    } else {
        let parts: Vec<&str> = text.split(';').collect();
        match (id, parts.as_slice()) {
            (GameId::Original, [u, v]) => embed_original(&parse_values(u)?, &parse_values(v)?)?,
            (GameId::Polynomial(_), [u, v, w]) => {
                embed_polynomial(&parse_values(u)?, &parse_values(v)?, &parse_values(w)?)?
            }
            (GameId::Instant, [v]) => embed_instant(&parse_values(v)?),
            (GameId::Flat | GameId::FlatExceptionFree, [u]) => embed_flat(&parse_values(u)?),
            // a single letter word without dots is ambiguous only for arity 1 games, which we do not have
            _ => {
                return Err(parse_err(
                    text,
                    format!("not a canonical word or a native {id} position"),
                ))
            }
        }
    };
    let game = spec(id);
    if !game.in_p(&word) {
        return Err(Error::NotAPosition {
            game: id.to_string(),
            word: word.to_string(),
        });
    }
    Ok(word)
}

/// The game's native rendering of a position (value word for instant/flat,
/// `u;v` for original, `u;v;w` for poly:x).
pub fn native_text(id: GameId, w: &[Letter]) -> String {
    let col = |k: usize| {
        w.iter()
            .map(|l| l.at(k).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match id {
        GameId::Original => format!("{};{}", col(1), col(2)),
        GameId::Instant => col(2),
        GameId::Polynomial(_) => format!("{};{};{}", col(0), col(1), col(2)),
        GameId::Flat | GameId::FlatExceptionFree => col(1),
    }
}

/// Type of an elementary kernel factor occupying positions `i..=j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorType {
    /// `(i,j)`: original, instant, flat and flat-xf games.
    Span { i: usize, j: usize },
    /// `(i;w)`: single polynomial-game letter whose `w` component is below `x`.
    Low { i: usize, w: u32 },
    /// `(i,j;x)`: polynomial-game factor whose letters all have `w = x`.
    Top { i: usize, j: usize, x: u32 },
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorType::Span { i, j } => write!(f, "({i},{j})"),
            FactorType::Low { i, w } => write!(f, "({i};{w})"),
            FactorType::Top { i, j, x } => write!(f, "({i},{j};{x})"),
        }
    }
}

impl FactorType {
    /// Type of the factor `w[i-1..j]` of a kernel position of `id`.
    pub fn classify(id: GameId, w: &[Letter], (i, j): (usize, usize)) -> FactorType {
        match id {
            GameId::Polynomial(x) => {
                let letter = w[i - 1];
                if i == j && letter.at(2) < x {
                    FactorType::Low { i, w: letter.at(2) }
                } else {
                    FactorType::Top { i, j, x }
                }
            }
            _ => FactorType::Span { i, j },
        }
    }

    /// First and last position covered.
    pub fn span(&self) -> (usize, usize) {
        match *self {
            FactorType::Span { i, j } | FactorType::Top { i, j, .. } => (i, j),
            FactorType::Low { i, .. } => (i, i),
        }
    }
}

fn invalid(id: GameId, ft: FactorType) -> Error {
    Error::InvalidFactorType {
        game: id.to_string(),
        factor: ft.to_string(),
    }
}

fn fact(n: usize) -> BigInt {
    factorial(n)
}

fn c(n: usize, k: i64) -> BigInt {
    binomial(n as u64, k)
}

/// Closed-form number of elementary kernel factors of type `ft` in game `id`.
///
/// Well-formed types that admit no factor (such as flat `(i,i)` with
/// `i >= 2`) count zero; types that do not belong to the game are errors.
pub fn kappa_factor(id: GameId, ft: FactorType) -> Result<BigInt> {
    let (i, j) = ft.span();
    if i == 0 || i > j {
        return Err(invalid(id, ft));
    }
    match (id, ft) {
        (GameId::Original, FactorType::Span { .. }) => Ok(if i == 1 {
            BigInt::from(u8::from(j == 1))
        } else {
            let f = fact(j - i);
            &f * &f * c(j, i as i64) * c(j, i as i64 - 2)
        }),
        (GameId::Instant, FactorType::Span { .. }) => Ok(if i == 1 {
            BigInt::from(u8::from(j == 1))
        } else {
            fact(j - i) * (i - 1)
        }),
        (GameId::Flat, FactorType::Span { .. }) if i == 1 => Ok(BigInt::from(u8::from(j == 1))),
        (GameId::Flat | GameId::FlatExceptionFree, FactorType::Span { .. }) => Ok(if i == j {
            BigInt::zero()
        } else {
            fact(j - 1 - i) * c(j, i as i64 - 1)
        }),
        (GameId::Polynomial(x), FactorType::Low { w, .. }) => {
            if w == 0 || w >= x {
                return Err(invalid(id, ft));
            }
            Ok(BigInt::from(i) * (i + 1))
        }
        (GameId::Polynomial(x), FactorType::Top { x: fx, .. }) => {
            if fx != x {
                return Err(invalid(id, ft));
            }
            let f = fact(j - i);
            Ok(&f * &f * c(j, i as i64) * c(j + 1, i as i64 - 1))
        }
        _ => Err(invalid(id, ft)),
    }
}

/// Counts elementary kernel factors of type `ft` by enumerating every word
/// over the letter ranges of positions `i..=j` and testing the definition
/// directly against `M`. Refuses `j` above `guard`.
pub fn count_factors_bruteforce_guarded(
    id: GameId,
    ft: FactorType,
    guard: usize,
) -> Result<BigInt> {
    let (i, j) = ft.span();
    if j > guard {
        return Err(Error::GuardExceeded {
            what: "factor end",
            value: j,
            guard,
        });
    }
    if i == 0 || i > j {
        return Err(invalid(id, ft));
    }
    match (id, ft) {
        (GameId::Polynomial(x), FactorType::Low { w, .. }) if w == 0 || w >= x => {
            return Err(invalid(id, ft))
        }
        (GameId::Polynomial(x), FactorType::Top { x: fx, .. }) if fx != x => {
            return Err(invalid(id, ft))
        }
        (GameId::Polynomial(_), FactorType::Span { .. }) => return Err(invalid(id, ft)),
        (GameId::Polynomial(_), _) => {}
        (_, FactorType::Span { .. }) => {}
        _ => return Err(invalid(id, ft)),
    }
    let game = spec(id);
    let len = j - i + 1;
    let wanted = |letter: &Letter| match ft {
        FactorType::Low { w, .. } => letter.at(2) == w,
        FactorType::Top { x, .. } => letter.at(2) == x,
        FactorType::Span { .. } => true,
    };
    let mut count = 0u64;
    let mut word: Vec<Letter> = Vec::with_capacity(len);
    census(&game, i, len, &mut word, &wanted, &mut count);
    Ok(BigInt::from(count))
}

fn census(
    game: &Game,
    i: usize,
    len: usize,
    word: &mut Vec<Letter>,
    wanted: &dyn Fn(&Letter) -> bool,
    count: &mut u64,
) {
    for l in game.letters_at(i + word.len(), word) {
        if !wanted(&l) {
            continue;
        }
        word.push(l);
        if word.len() == len {
            if !game.in_m(word) {
                *count += 1;
            }
        } else if game.in_m(word) {
            census(game, i, len, word, wanted, count);
        }
        word.pop();
    }
}

/// [`count_factors_bruteforce_guarded`] with [`DEFAULT_FACTOR_GUARD`].
pub fn count_factors_bruteforce(id: GameId, ft: FactorType) -> Result<BigInt> {
    count_factors_bruteforce_guarded(id, ft, DEFAULT_FACTOR_GUARD)
}

/// Sum over cut sequences `start = c_0 < c_1 < ... < c_r = end` of
/// `prod factor(c_t + 1, c_{t+1})`.
///
/// Evaluated by grouping on the first part: `S(c) = sum_b factor(c+1, b) S(b)`
/// with `S(end) = 1`. See [`chain_sum_enumerated`] for the term-by-term walk.
pub fn chain_sum(start: usize, end: usize, factor: impl Fn(usize, usize) -> BigInt) -> BigInt {
    chain_sums_from(start, end, factor).swap_remove(0)
}

/// `[S(start), S(start+1), ..., S(end)]` where `S(c)` is the chain sum from
/// `c` to `end`.
pub fn chain_sums_from(
    start: usize,
    end: usize,
    factor: impl Fn(usize, usize) -> BigInt,
) -> Vec<BigInt> {
    assert!(start <= end, "chain sums need start <= end");
    let len = end - start + 1;
    let mut suffix = vec![BigInt::zero(); len];
    suffix[len - 1] = BigInt::one();
    for c in (start..end).rev() {
        let mut acc = BigInt::zero();
        for b in c + 1..=end {
            let f = factor(c + 1, b);
            if !f.is_zero() {
                acc += f * &suffix[b - start];
            }
        }
        suffix[c - start] = acc;
    }
    suffix
}

/// [`chain_sum`] computed by walking every cut sequence with an explicit
/// stack and adding up the products one by one.
///
/// Runs in `u128` while every factor and partial sum fits and falls back to
/// big integers otherwise. Exponential in `end - start`.
pub fn chain_sum_enumerated(
    start: usize,
    end: usize,
    factor: impl Fn(usize, usize) -> BigInt,
) -> BigInt {
    if start == end {
        return BigInt::one();
    }
    // table[a][b] = factor(a, b) for start < a <= b <= end
    let mut table: Vec<Vec<BigInt>> = vec![Vec::new(); end + 2];
    for a in start + 1..=end {
        table[a] = (0..=end)
            .map(|b| if b >= a { factor(a, b) } else { BigInt::zero() })
            .collect();
    }
    if let Some(v) = chain_sum_u128(start, end, &table) {
        return BigInt::from(v);
    }
    chain_sum_big(start, end, &table)
}

fn chain_sum_u128(start: usize, end: usize, table: &[Vec<BigInt>]) -> Option<u128> {
    let small: Vec<Vec<u128>> = table
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| u128::try_from(v).ok())
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let mut total: u128 = 0;
    let mut stack: Vec<(usize, u128)> = vec![(start, 1)];
    while let Some((pos, prod)) = stack.pop() {
        let row = &small[pos + 1];
        for (b, &f) in row.iter().enumerate().skip(pos + 1) {
            if f == 0 {
                continue;
            }
            let p = prod.checked_mul(f)?;
            if b == end {
                total = total.checked_add(p)?;
            } else {
                stack.push((b, p));
            }
        }
    }
    Some(total)
}

fn chain_sum_big(start: usize, end: usize, table: &[Vec<BigInt>]) -> BigInt {
    let mut total = BigInt::zero();
    let mut stack: Vec<(usize, BigInt)> = vec![(start, BigInt::one())];
    while let Some((pos, prod)) = stack.pop() {
        let row = &table[pos + 1];
        for (b, f) in row.iter().enumerate().skip(pos + 1) {
            if f.is_zero() {
                continue;
            }
            let p = &prod * f;
            if b == end {
                total += p;
            } else {
                stack.push((b, p));
            }
        }
    }
    total
}

fn span_factor(id: GameId) -> impl Fn(usize, usize) -> BigInt {
    move |a, b| {
        kappa_factor(id, FactorType::Span { i: a, j: b }).expect("span types are valid here")
    }
}

fn top_factor(a: usize, b: usize) -> BigInt {
    // the count of (i,j;x) factors does not depend on x
    kappa_factor(GameId::Polynomial(1), FactorType::Top { i: a, j: b, x: 1 })
        .expect("valid top factor")
}

/// `sum over m = c_0 < ... < c_r = n` of products of `(i,j;x)` factor counts.
pub fn top_chain_sum(m: usize, n: usize) -> BigInt {
    chain_sum(m, n, top_factor)
}

/// `K_n` as a sum over compositions of `n` into parts `>= 2` of
/// `multinomial(n; m_1..m_k) * prod (m_i - 2)!`.
pub fn k_composition_sum(n: usize) -> BigInt {
    // a part covering a..=b, chosen from the n - a + 1 values still unused
    chain_sum(0, n, |a, b| {
        let size = b - a + 1;
        if size < 2 {
            BigInt::zero()
        } else {
            binomial((n - a + 1) as u64, size as i64) * factorial(size - 2)
        }
    })
}

/// Number of kernel positions of rank `n` from the game's composition sum
/// over elementary kernel factor types.
pub fn kappa_sum(id: GameId, n: usize) -> Result<BigInt> {
    match id {
        GameId::Original | GameId::Instant | GameId::Flat => {
            if n == 0 {
                return Err(Error::Precondition(format!(
                    "{id} has no positions of rank 0"
                )));
            }
            // the first letter is always the lone factor of type (1,1)
            Ok(chain_sum(1, n, span_factor(id)))
        }
        GameId::FlatExceptionFree => Ok(k_composition_sum(n)),
        GameId::Polynomial(x) => {
            let x = x as u64;
            let low_block =
                |m: usize| multiset_coeff(x - 1, m as u64) * factorial(m) * factorial(m + 1);
            let tops = chain_sums_from(0, n, top_factor);
            let mut total = low_block(n);
            for m in 0..n {
                total += low_block(m) * &tops[m];
            }
            Ok(total)
        }
    }
}

/// Kernel count by removing the last elementary kernel factor:
/// `kappa_n = sum_{i=1}^{n-1} kappa_i * kappa(i+1, n)`, `kappa_1 = 1`.
/// Only the original and instant games.
pub fn kappa_rec(id: GameId, n: usize) -> Result<BigInt> {
    Ok(kappa_rec_table(id, n)?
        .pop()
        .expect("table has n + 1 entries"))
}

/// `[0, kappa_1, ..., kappa_n]` by [`kappa_rec`]'s recurrence.
pub fn kappa_rec_table(id: GameId, n: usize) -> Result<Vec<BigInt>> {
    if !matches!(id, GameId::Original | GameId::Instant) {
        return Err(Error::Unsupported(format!(
            "no last-factor recurrence is implemented for {id}"
        )));
    }
    if n == 0 {
        return Err(Error::Precondition("kappa_rec needs n >= 1".into()));
    }
    let factor = span_factor(id);
    let mut kappa = vec![BigInt::zero(), BigInt::one()];
    for m in 2..=n {
        let v = (1..m).fold(BigInt::zero(), |acc, i| acc + &kappa[i] * factor(i + 1, m));
        kappa.push(v);
    }
    Ok(kappa)
}

/// Instant-game kernel count from `sum kappa_n t^n = 1 - 1 / sum n! t^n`.
pub fn kappa_via_gf_instant(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Precondition(
            "kappa_via_gf_instant needs n >= 1".into(),
        ));
    }
    let f = Series::factorials(n);
    let g = &Series::one(n) - &f.reciprocal()?;
    Ok(g.coeff(n).to_integer())
}
