//! Kernel positions of strongly Bernoulli type truncation games.
//!
//! When `M` is closed under nonempty prefixes and `uv ∈ M, v ∈ M` forces
//! `u ∈ M`, a nonempty word is a kernel position exactly when it splits into
//! elementary kernel positions: words outside `M` whose proper nonempty
//! prefixes all lie in `M`. The split is unique and is found greedily from
//! the left, which gives a linear-time kernel test and winning strategy.

use std::collections::HashSet;

use crate::error::Result;
use crate::gamecore::{enumerate_positions, valid_moves, Letter, Move, TruncationGame, Word};

/// Cut points `0 = j_0 < j_1 < ... < j_r = rank` of a kernel position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    cuts: Vec<usize>,
}

impl Factorization {
    pub fn from_cuts(cuts: Vec<usize>) -> Self {
        assert!(cuts.first() == Some(&0), "cuts start at 0");
        assert!(
            cuts.windows(2).all(|p| p[0] < p[1]),
            "cuts increase strictly"
        );
        Factorization { cuts }
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn len(&self) -> usize {
        self.cuts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 1-based inclusive `(i, j)` ranges of the factors.
    pub fn spans(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cuts.windows(2).map(|p| (p[0] + 1, p[1]))
    }

    pub fn factors<'w>(&'w self, w: &'w [Letter]) -> impl Iterator<Item = &'w [Letter]> + 'w {
        self.cuts.windows(2).map(move |p| &w[p[0]..p[1]])
    }
}

/// `w ∉ M` while every proper nonempty prefix of `w` is in `M`.
pub fn is_elementary_kernel<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> bool {
    !w.is_empty() && game.first_exit(w, 0) == Some(w.len() - 1)
}

/// Greedy left-to-right factorization into elementary kernel positions.
///
/// Returns `None` when some remainder never leaves `M`; the word is then not
/// a kernel position. The empty word factors trivially.
pub fn decompose<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> Option<Factorization> {
    let mut cuts = vec![0];
    let mut start = 0;
    while start < w.len() {
        let end = game.first_exit(w, start)?;
        start = end + 1;
        cuts.push(start);
    }
    Some(Factorization { cuts })
}

/// Kernel test by factorization. The empty word, having no moves, counts as
/// a kernel position.
pub fn is_kernel_fast<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> bool {
    decompose(game, w).is_some()
}

/// Valid moves that land on a kernel position; empty exactly when `w` is a
/// kernel position.
pub fn winning_moves<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> Result<Vec<Move>> {
    Ok(valid_moves(game, w)?
        .into_iter()
        .filter(|m| is_kernel_fast(game, &w[..m.keep]))
        .collect())
}

/// Every way of cutting `w` into elementary kernel positions, found by trying
/// all `2^(n-1)` cut sets.
pub fn all_elementary_factorizations<G: TruncationGame + ?Sized>(
    game: &G,
    w: &[Letter],
) -> Vec<Factorization> {
    let n = w.len();
    if n == 0 {
        return vec![Factorization { cuts: vec![0] }];
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut cuts = vec![0];
        cuts.extend((1..n).filter(|k| mask & (1 << (k - 1)) != 0));
        cuts.push(n);
        let f = Factorization { cuts };
        if f.factors(w).all(|piece| is_elementary_kernel(game, piece)) {
            out.push(f);
        }
    }
    out
}

/// Checks both defining implications of a strongly Bernoulli type move set on
/// every contiguous factor of every position of rank `1..=max_rank`:
/// membership in `M` passes to nonempty prefixes, and `uv ∈ M, v ∈ M` give
/// `u ∈ M`.
pub fn check_strongly_bernoulli<G: TruncationGame + ?Sized>(game: &G, max_rank: usize) -> bool {
    find_strongly_bernoulli_violation(game, max_rank).is_none()
}

/// A factor witnessing failure of [`check_strongly_bernoulli`], if any.
pub fn find_strongly_bernoulli_violation<G: TruncationGame + ?Sized>(
    game: &G,
    max_rank: usize,
) -> Option<Word> {
    let mut factors: HashSet<Vec<Letter>> = HashSet::new();
    for rank in 1..=max_rank {
        for pos in enumerate_positions(game, rank) {
            for a in 0..rank {
                for b in a + 1..=rank {
                    factors.insert(pos[a..b].to_vec());
                }
            }
        }
    }
    let mut sorted: Vec<_> = factors.into_iter().collect();
    sorted.sort();
    sorted
        .into_iter()
        .find(|w| !strongly_bernoulli_at(game, w))
        .map(Word::from)
}

fn strongly_bernoulli_at<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> bool {
    if !game.in_m(w) {
        return true;
    }
    (1..w.len()).all(|k| game.in_m(&w[..k]) && (!game.in_m(&w[k..]) || game.in_m(&w[..k])))
}
