//! Permutations, their place-based non-inversion tables (PNTs), connected
//! permutations as instant-game kernels, strong fixed points, the elevation
//! map, King's reduction and the flat-game permutation model.
//!
//! Permutations are 1-based: `images()[k]` is `π(k+1)`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num::{BigInt, One};

use crate::error::{parse_err, Error, Result};
use crate::games::{embed_flat, embed_instant, spec, FactorType, GameId};
use crate::sbt::{decompose, is_kernel_fast};

/// Largest rank the brute-force scans over `S_n` accept by default.
pub const DEFAULT_PERM_GUARD: usize = 8;

fn check_guard(what: &'static str, n: usize, guard: usize) -> Result<()> {
    if n > guard {
        return Err(Error::GuardExceeded {
            what,
            value: n,
            guard,
        });
    }
    Ok(())
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(k, &v)| v != k + 1) {
            let text = images.iter().join(",");
            return Err(parse_err(&text, "not a permutation of 1..n"));
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `π(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation(inv)
    }

    /// `π~(i) = n + 1 - π(n + 1 - i)`.
    pub fn tilde(&self) -> Permutation {
        let n = self.len();
        Permutation(self.0.iter().rev().map(|&v| n + 1 - v).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Comma-separated one-line notation; digit strings such as `2413` are
    /// also accepted for ranks up to 9.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation(Vec::new()));
        }
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| parse_err(s, "expected comma-separated integers"))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| parse_err(s, "expected digits"))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(images)
    }
}

/// Non-inversion table `v_1..v_n` with `1 <= v_i <= i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pnt(Vec<usize>);

impl Pnt {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some(k) = values
            .iter()
            .enumerate()
            .position(|(k, &v)| v == 0 || v > k + 1)
        {
            let text = values.iter().join(",");
            return Err(parse_err(
                &text,
                format!("entry {} must lie in 1..={}", k + 1, k + 1),
            ));
        }
        Ok(Pnt(values))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The instant-game position with these values.
    pub fn to_instant_word(&self) -> crate::Word {
        embed_instant(&self.0.iter().map(|&v| v as u32).collect::<Vec<_>>())
    }
}

impl fmt::Display for Pnt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.iter().join(","))
    }
}

impl FromStr for Pnt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Pnt(Vec::new()));
        }
        let values: Vec<usize> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| parse_err(s, "expected comma-separated integers"))
            })
            .collect::<Result<_>>()?;
        Pnt::new(values)
    }
}

/// `v_j = 1 + #{i < j : π(i) < π(j)}`.
pub fn pnt(p: &Permutation) -> Pnt {
    let v =
        p.0.iter()
            .enumerate()
            .map(|(j, &pj)| 1 + p.0[..j].iter().filter(|&&pi| pi < pj).count());
    Pnt(v.collect())
}

/// Letter-based table `v_j = 1 + #{i < j : π⁻¹(i) < π⁻¹(j)}`.
pub fn lnt(p: &Permutation) -> Pnt {
    let inv = p.inverse();
    let v = (1..=p.len()).map(|j| 1 + (1..j).filter(|&i| inv.at(i) < inv.at(j)).count());
    Pnt(v.collect())
}

/// The permutation whose PNT is `t`: reading right to left, `π(j)` is the
/// `v_j`-th smallest value not yet used.
pub fn perm_from_pnt(t: &Pnt) -> Permutation {
    let n = t.len();
    let mut remaining: Vec<usize> = (1..=n).collect();
    let mut images = vec![0; n];
    for j in (0..n).rev() {
        images[j] = remaining.remove(t.0[j] - 1);
    }
    Permutation(images)
}

/// Every permutation of `{1..n}`, in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n).permutations(n).map(Permutation)
}

/// No `m < n` with `π({1..m}) = {1..m}`. The empty permutation is not
/// connected.
pub fn is_connected(p: &Permutation) -> bool {
    let mut max = 0;
    for (m, &v) in p.0.iter().enumerate().take(p.len().saturating_sub(1)) {
        max = max.max(v);
        if max == m + 1 {
            return false;
        }
    }
    !p.is_empty()
}

/// `i` with `π(i) = i` and `π({1..i}) = {1..i}`, ascending.
pub fn strong_fixed_points(p: &Permutation) -> Vec<usize> {
    let mut max = 0;
    let mut out = Vec::new();
    for (k, &v) in p.0.iter().enumerate() {
        max = max.max(v);
        if v == k + 1 && max == k + 1 {
            out.push(k + 1);
        }
    }
    out
}

/// Strong fixed points read off the PNT: `v_j = j` and `v_k > j` for `k > j`.
pub fn strong_fixed_points_from_pnt(t: &Pnt) -> Vec<usize> {
    let n = t.len();
    let mut min_after = usize::MAX;
    let mut out = Vec::new();
    for j in (1..=n).rev() {
        if t.0[j - 1] == j && min_after > j {
            out.push(j);
        }
        min_after = min_after.min(t.0[j - 1]);
    }
    out.reverse();
    out
}

/// Spans of the elementary kernel factors of `pnt(p)` in the instant game,
/// or `None` if `p` is not connected.
pub fn kernel_factor_spans(p: &Permutation) -> Option<Vec<(usize, usize)>> {
    if p.is_empty() {
        return None;
    }
    let game = spec(GameId::Instant);
    let w = pnt(p).to_instant_word();
    decompose(&game, &w).map(|f| f.spans().collect())
}

/// Raises the last PNT value of every elementary kernel factor `(i, j)` to `j`.
pub fn elevation(p: &Permutation) -> Result<Permutation> {
    let spans = kernel_factor_spans(p).ok_or_else(|| {
        Error::Precondition(format!("elevation needs a connected permutation, got {p}"))
    })?;
    let mut v = pnt(p).0;
    for (_, j) in spans {
        v[j - 1] = j;
    }
    Ok(perm_from_pnt(&Pnt(v)))
}

/// PNTs obtained from the PNT `u` of some `σ` with `σ(1) = 1`, `σ(n) = n`
/// by choosing factor ends `1 = j_0 < j_1 < ... < j_{l+1} = n` with the
/// interior ones among `sfps`, then lowering each `u_{j_t}` to a value in
/// `1..=j_{t-1}`. Subsets go in binary counting order over `sfps`, lowered
/// values lexicographically.
fn lowered_tables(u: &[usize], sfps: &[usize], out: &mut Vec<Pnt>) {
    let n = u.len();
    if n == 1 {
        out.push(Pnt(u.to_vec()));
        return;
    }
    for mask in 0u64..(1u64 << sfps.len()) {
        let mut ends = vec![1];
        ends.extend(
            sfps.iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &i)| i),
        );
        ends.push(n);
        let choices = ends.windows(2).map(|p| 1..=p[0]).multi_cartesian_product();
        for lowered in choices {
            let mut v = u.to_vec();
            for (&j, value) in ends[1..].iter().zip(lowered) {
                v[j - 1] = value;
            }
            out.push(Pnt(v));
        }
    }
}

fn interior(sfps: Vec<usize>, n: usize) -> Vec<usize> {
    sfps.into_iter().filter(|&i| i != 1 && i != n).collect()
}

/// Every connected `p` with `elevation(p) = s`.
pub fn elevation_preimages(s: &Permutation) -> Result<Vec<Permutation>> {
    let n = s.len();
    if n == 0 || s.at(1) != 1 || s.at(n) != n {
        return Err(Error::Precondition(format!(
            "elevation preimages need s(1) = 1 and s(n) = n, got {s}"
        )));
    }
    let u = pnt(s);
    let sfps = interior(strong_fixed_points(s), n);
    let mut tables = Vec::new();
    lowered_tables(&u.0, &sfps, &mut tables);
    Ok(tables.iter().map(perm_from_pnt).collect())
}

/// PNTs of the permutations fixing `1` and `n` as strong fixed points:
/// `u_1 = 1`, `u_n = n` and `2 <= u_i <= i` in between, lexicographically.
fn base_words(n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut words = vec![vec![1]];
    for i in 2..n {
        words = words
            .into_iter()
            .flat_map(|w| (2..=i).map(move |v| [w.as_slice(), &[v]].concat()))
            .collect();
    }
    for w in &mut words {
        w.push(n);
    }
    words
}

/// Lists the connected permutations of rank `n`: (1) every PNT of a
/// permutation with strong fixed points `1` and `n`; (2) its strong fixed points by one right-to-left
/// scan; (3) every choice of interior factor ends and lowered values.
pub fn list_connected(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::Precondition("list_connected needs n >= 1".into()));
    }
    let mut tables = Vec::new();
    for u in base_words(n) {
        let sfps = interior(strong_fixed_points_from_pnt(&Pnt(u.clone())), n);
        lowered_tables(&u, &sfps, &mut tables);
    }
    Ok(tables.iter().map(perm_from_pnt).collect())
}

/// `sum over σ in S_{n-2} of prod_{i in SF(σ)} (i + 2)`.
pub fn kappa_via_weights_guarded(n: usize, guard: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::Precondition("kappa_via_weights needs n >= 2".into()));
    }
    check_guard("permutation rank", n - 2, guard)?;
    Ok(all_permutations(n - 2)
        .map(|s| {
            strong_fixed_points(&s)
                .iter()
                .fold(BigInt::one(), |acc, &i| acc * (i + 2))
        })
        .sum())
}

/// [`kappa_via_weights_guarded`] with [`DEFAULT_PERM_GUARD`].
pub fn kappa_via_weights(n: usize) -> Result<BigInt> {
    kappa_via_weights_guarded(n, DEFAULT_PERM_GUARD)
}

/// Number of connected permutations of rank `n` by testing each of `S_n`.
pub fn connected_count(n: usize) -> Result<BigInt> {
    check_guard("permutation rank", n, DEFAULT_PERM_GUARD)?;
    Ok(BigInt::from(
        all_permutations(n).filter(is_connected).count(),
    ))
}

/// Number of permutations of rank `n` without strong fixed points, by
/// testing each of `S_n`.
pub fn g_count(n: usize) -> Result<BigInt> {
    check_guard("permutation rank", n, DEFAULT_PERM_GUARD)?;
    Ok(BigInt::from(
        all_permutations(n)
            .filter(|p| strong_fixed_points(p).is_empty())
            .count(),
    ))
}

/// One reduction step on a connected permutation, computed both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KingStep {
    /// `σ(1)`.
    pub r: usize,
    /// Largest `j <= n - 2` with `π({1..j}) = {1..j}`.
    pub j: usize,
    /// `β(π)`: `π` with its first `j` letters removed and `j` subtracted.
    pub reduced: Permutation,
    /// Type of the last elementary kernel factor of `pnt(σ~)`.
    pub removed: FactorType,
}

/// King's reduction `σ -> β(π)` checked against removal of the last
/// elementary kernel factor from `pnt(σ~)`.
pub fn king_reduce(s: &Permutation) -> Result<KingStep> {
    let n = s.len();
    if n < 2 || !is_connected(s) {
        return Err(Error::Precondition(format!(
            "king_reduce needs a connected permutation of rank >= 2, got {s}"
        )));
    }
    // King's route
    let r = s.at(1);
    let pi: Vec<usize> = s.0[1..]
        .iter()
        .map(|&v| if v > r { v - 1 } else { v })
        .collect();
    let mut j = 0;
    let mut max = 0;
    for (k, &v) in pi.iter().enumerate().take(n - 2) {
        max = max.max(v);
        if max == k + 1 {
            j = k + 1;
        }
    }
    let beta = Permutation(pi[j..].iter().map(|&v| v - j).collect());

    // factor route
    let v = pnt(&s.tilde());
    let game = spec(GameId::Instant);
    let f = decompose(&game, &v.to_instant_word()).ok_or_else(|| {
        Error::RouteMismatch(format!("pnt of the tilde of {s} is not a kernel position"))
    })?;
    let (start, end) = f
        .spans()
        .last()
        .expect("rank >= 2 gives at least one factor");
    let kept = Pnt(v.0[..start - 1].to_vec());
    let via_factor = perm_from_pnt(&kept).tilde();

    if via_factor != beta || start != n - j || v.0[n - 1] != n + 1 - r {
        return Err(Error::RouteMismatch(format!(
            "{s}: King gives {beta} (j = {j}), last-factor removal gives {via_factor} (factor ({start},{end}))"
        )));
    }
    Ok(KingStep {
        r,
        j,
        reduced: beta,
        removed: FactorType::Span { i: start, j: end },
    })
}

/// Whether `π` admits `0 = i_0 < ... < i_{k+1} = n` with
/// `π(i_{t+1}) < π(i_t + 1) < π(i_t + 2), ..., π(i_{t+1} - 1)` on every block.
/// Tries every cut set.
pub fn has_flat_index_chain(p: &Permutation) -> bool {
    let n = p.len();
    if n == 0 {
        return true;
    }
    let block_ok = |a: usize, b: usize| {
        // 1-based block a..=b
        b > a && p.at(b) < p.at(a) && (a + 1..b).all(|m| p.at(a) < p.at(m))
    };
    (0u64..(1u64 << (n - 1))).any(|mask| {
        let mut cuts = vec![0];
        cuts.extend((1..n).filter(|k| mask & (1 << (k - 1)) != 0));
        cuts.push(n);
        cuts.windows(2).all(|c| block_ok(c[0] + 1, c[1]))
    })
}

/// Number of `π ∈ S_n` whose PNT is a kernel position of the exception-free
/// flat game.
pub fn flat_model_count(n: usize) -> Result<BigInt> {
    check_guard("permutation rank", n, DEFAULT_PERM_GUARD)?;
    let game = spec(GameId::FlatExceptionFree);
    let count = all_permutations(n)
        .filter(|p| {
            let u: Vec<u32> = pnt(p).0.iter().map(|&v| v as u32).collect();
            is_kernel_fast(&game, &embed_flat(&u))
        })
        .count();
    Ok(BigInt::from(count))
}

/// [`flat_model_count`] by scanning index sets directly.
pub fn flat_model_count_index_sets(n: usize) -> Result<BigInt> {
    check_guard("permutation rank", n, DEFAULT_PERM_GUARD)?;
    let count = all_permutations(n).filter(has_flat_index_chain).count();
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn table(s: &str) -> Pnt {
        s.parse().unwrap()
    }

    #[test]
    fn table_examples() {
        assert_eq!(pnt(&perm("583691472")), table("1,2,1,3,5,1,3,6,2"));
        assert_eq!(lnt(&perm("693714825")), table("1,2,1,3,5,1,3,6,2"));
        assert_eq!(pnt(&Permutation::identity(5)), table("1,2,3,4,5"));
        assert_eq!(perm_from_pnt(&table("1,1,1")), perm("321"));
        assert_eq!(perm_from_pnt(&table("1,2,3")), perm("123"));
        assert_eq!(
            perm_from_pnt(&table("1,2,1,3,5,5,7,4,8")),
            perm("251376948")
        );
        assert!(Pnt::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert_eq!(perm("2,3,1").to_string(), "2,3,1");
    }

    #[test]
    fn connectivity_and_fixed_points() {
        assert!(is_connected(&perm("231")));
        assert!(!is_connected(&perm("213")));
        assert!(is_connected(&perm("1")));
        assert_eq!(all_permutations(4).filter(is_connected).count(), 13);
        assert_eq!(
            strong_fixed_points(&perm("123465789")),
            vec![1, 2, 3, 4, 7, 8, 9]
        );
        assert!(strong_fixed_points(&perm("21")).is_empty());
        assert_eq!(
            strong_fixed_points(&Permutation::identity(4)),
            vec![1, 2, 3, 4]
        );
        for p in all_permutations(6) {
            assert_eq!(
                strong_fixed_points(&p),
                strong_fixed_points_from_pnt(&pnt(&p)),
                "{p}"
            );
        }
    }

    #[test]
    fn elevation_examples() {
        assert_eq!(elevation(&perm("251376948")).unwrap(), perm("123465789"));
        assert_eq!(elevation(&perm("321")).unwrap(), perm("123"));
        assert_eq!(elevation(&perm("231")).unwrap(), perm("123"));
        assert!(elevation(&perm("213")).is_err());
    }

    #[test]
    fn preimage_examples() {
        let mut pre = elevation_preimages(&perm("123")).unwrap();
        pre.sort();
        assert_eq!(pre, vec![perm("231"), perm("312"), perm("321")]);
        assert_eq!(elevation_preimages(&perm("12")).unwrap(), vec![perm("21")]);
        assert!(elevation_preimages(&perm("213")).is_err());
    }

    #[test]
    fn listing_small() {
        assert_eq!(list_connected(2).unwrap(), vec![perm("21")]);
        assert_eq!(list_connected(3).unwrap().len(), 3);
        let five = list_connected(5).unwrap();
        assert_eq!(five.len(), 71);
        assert!(five.iter().all_unique());
    }

    #[test]
    fn weights_and_counts() {
        assert_eq!(kappa_via_weights(2).unwrap(), BigInt::from(1));
        assert_eq!(kappa_via_weights(4).unwrap(), BigInt::from(13));
        assert_eq!(kappa_via_weights(7).unwrap(), BigInt::from(3447));
        assert!(kappa_via_weights(11).is_err());
        assert_eq!(g_count(0).unwrap(), BigInt::from(1));
        assert_eq!(g_count(2).unwrap(), BigInt::from(1));
        assert_eq!(g_count(3).unwrap(), BigInt::from(3));
        assert_eq!(flat_model_count(0).unwrap(), BigInt::from(1));
        assert_eq!(flat_model_count(2).unwrap(), BigInt::from(1));
        assert_eq!(flat_model_count(4).unwrap(), BigInt::from(8));
        assert_eq!(flat_model_count_index_sets(4).unwrap(), BigInt::from(8));
        assert!(flat_model_count(9).is_err());
    }

    #[test]
    fn king_base_case_and_termination() {
        let step = king_reduce(&perm("21")).unwrap();
        assert_eq!(step.reduced, perm("1"));
        assert_eq!(step.r, 2);
        assert_eq!(step.j, 0);
        assert!(king_reduce(&perm("1")).is_err());
        assert!(king_reduce(&perm("213")).is_err());
        for s in all_permutations(6).filter(is_connected) {
            let mut cur = s.clone();
            let mut steps = 0;
            while cur.len() >= 2 {
                cur = king_reduce(&cur).unwrap().reduced;
                steps += 1;
            }
            assert!(steps <= 5, "{s}");
        }
    }
}
