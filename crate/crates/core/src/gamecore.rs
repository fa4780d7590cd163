//! Truncation games on words.
//!
//! A position is a word over an alphabet of small positive integer tuples. A
//! move deletes a nonempty suffix that belongs to the game's move set `M`.
//! This module holds the word types, the [`TruncationGame`] trait, and a
//! brute-force Sprague-Grundy evaluator that serves as ground truth for the
//! fast kernel test in [`crate::sbt`].

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num::BigInt;

use crate::error::{parse_err, Error, Result};

/// Largest rank the brute-force oracle enumerates by default.
pub const DEFAULT_RANK_GUARD: usize = 7;

/// One letter: a tuple of one to three positive integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    parts: [u32; 3],
    arity: u8,
}

impl Letter {
    pub fn new(parts: &[u32]) -> Self {
        assert!(
            (1..=3).contains(&parts.len()),
            "letters have 1 to 3 components"
        );
        assert!(
            parts.iter().all(|&p| p >= 1),
            "letter components are positive"
        );
        let mut buf = [0; 3];
        buf[..parts.len()].copy_from_slice(parts);
        Letter {
            parts: buf,
            arity: parts.len() as u8,
        }
    }

    pub fn one(a: u32) -> Self {
        Letter::new(&[a])
    }

    pub fn pair(a: u32, b: u32) -> Self {
        Letter::new(&[a, b])
    }

    pub fn triple(a: u32, b: u32, c: u32) -> Self {
        Letter::new(&[a, b, c])
    }

    pub fn components(&self) -> &[u32] {
        &self.parts[..self.arity as usize]
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Component `k` (zero-based).
    #[inline]
    pub fn at(&self, k: usize) -> u32 {
        debug_assert!(k < self.arity as usize);
        self.parts[k]
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.components().iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('.')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| parse_err(s, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if !(1..=3).contains(&parts.len()) {
            return Err(parse_err(s, "a letter has 1 to 3 components"));
        }
        if parts.contains(&0) {
            return Err(parse_err(s, "letter components must be positive"));
        }
        Ok(Letter::new(&parts))
    }
}

/// A finite word of letters; its length is the rank of the position.
///
/// Text form: letters separated by commas, components by dots, e.g.
/// `1.1.1,2.2.1,3.1.3`. The empty word is the empty string.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// The prefix of the given length.
    pub fn truncated(&self, keep: usize) -> Word {
        Word(self.0[..keep].to_vec())
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Letter>>>()?;
        if letters.windows(2).any(|p| p[0].arity() != p[1].arity()) {
            return Err(parse_err(
                s,
                "all letters of a word need the same number of components",
            ));
        }
        Ok(Word(letters))
    }
}

/// A truncation move `v_1...v_n -> v_1...v_keep`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub keep: usize,
}

/// A truncation game restricted to an `M`-closed set of positions `P`.
///
/// Letter positions are 1-based: `letters_at(i, prefix)` lists the letters
/// that may occupy position `i` after `prefix` (of length `i - 1`).
pub trait TruncationGame {
    fn name(&self) -> String;

    /// Number of components per letter.
    fn arity(&self) -> usize;

    /// Membership in the move set `M`. Never true for the empty word.
    fn in_m(&self, w: &[Letter]) -> bool;

    /// Membership in the position set `P`.
    fn in_p(&self, w: &[Letter]) -> bool;

    /// Admissible letters at 1-based position `index`, in increasing order.
    fn letters_at(&self, index: usize, prefix: &[Letter]) -> Vec<Letter>;

    /// Whether the empty word is a position (so a move may delete everything).
    fn empty_is_position(&self) -> bool;

    /// Fills `out[m]` with `w[m..] ∈ M` for `m` in `0..w.len()`.
    fn suffix_membership(&self, w: &[Letter], out: &mut Vec<bool>) {
        naive_suffix_membership(self, w, out);
    }

    /// Least `t >= start` such that `w[start..=t] ∉ M`, if any.
    fn first_exit(&self, w: &[Letter], start: usize) -> Option<usize> {
        naive_first_exit(self, w, start)
    }
}

/// [`TruncationGame::suffix_membership`] evaluated suffix by suffix.
pub fn naive_suffix_membership<G: TruncationGame + ?Sized>(
    game: &G,
    w: &[Letter],
    out: &mut Vec<bool>,
) {
    out.clear();
    out.extend((0..w.len()).map(|m| game.in_m(&w[m..])));
}

/// [`TruncationGame::first_exit`] evaluated prefix by prefix.
pub fn naive_first_exit<G: TruncationGame + ?Sized>(
    game: &G,
    w: &[Letter],
    start: usize,
) -> Option<usize> {
    (start..w.len()).find(|&t| !game.in_m(&w[start..=t]))
}

fn moves_from_mask(mask: &[bool], empty_is_position: bool) -> impl Iterator<Item = Move> + '_ {
    mask.iter()
        .enumerate()
        .filter(move |&(m, &inside)| inside && (m >= 1 || empty_is_position))
        .map(|(m, _)| Move { keep: m })
}

fn require_position<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> Result<()> {
    if game.in_p(w) {
        Ok(())
    } else {
        Err(Error::NotAPosition {
            game: game.name(),
            word: Word::from(w).to_string(),
        })
    }
}

/// All valid moves from `w`, by increasing `keep`.
pub fn valid_moves<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> Result<Vec<Move>> {
    require_position(game, w)?;
    let mut mask = Vec::with_capacity(w.len());
    game.suffix_membership(w, &mut mask);
    Ok(moves_from_mask(&mask, game.empty_is_position()).collect())
}

/// Smallest nonnegative integer not in `values`.
pub fn mex(values: impl IntoIterator<Item = u32>) -> u32 {
    let mut seen = 0u64;
    let mut big = Vec::new();
    for v in values {
        if v < 64 {
            seen |= 1 << v;
        } else {
            big.push(v);
        }
    }
    let low = (!seen).trailing_zeros();
    if low < 64 {
        return low;
    }
    big.sort_unstable();
    let mut m = 64;
    for v in big {
        if v == m {
            m += 1;
        } else if v > m {
            break;
        }
    }
    m
}

/// Memoizing Sprague-Grundy evaluator. The memo lives as long as the oracle.
pub struct GrundyOracle<'g, G: TruncationGame + ?Sized> {
    game: &'g G,
    memo: HashMap<Vec<Letter>, u32>,
}

impl<'g, G: TruncationGame + ?Sized> GrundyOracle<'g, G> {
    pub fn new(game: &'g G) -> Self {
        GrundyOracle {
            game,
            memo: HashMap::new(),
        }
    }

    /// Grundy number of a position.
    pub fn grundy(&mut self, w: &[Letter]) -> Result<u32> {
        require_position(self.game, w)?;
        Ok(self.grundy_unchecked(w))
    }

    fn grundy_unchecked(&mut self, w: &[Letter]) -> u32 {
        if let Some(&g) = self.memo.get(w) {
            return g;
        }
        let mut mask = Vec::with_capacity(w.len());
        self.game.suffix_membership(w, &mut mask);
        let keeps: Vec<usize> = moves_from_mask(&mask, self.game.empty_is_position())
            .map(|m| m.keep)
            .collect();
        let g = mex(keeps.into_iter().map(|k| self.grundy_unchecked(&w[..k])));
        self.memo.insert(w.to_vec(), g);
        g
    }

    pub fn is_kernel(&mut self, w: &[Letter]) -> Result<bool> {
        Ok(self.grundy(w)? == 0)
    }
}

/// Grundy number of one position, with a fresh memo.
pub fn grundy<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> Result<u32> {
    GrundyOracle::new(game).grundy(w)
}

/// `grundy(w) == 0`.
pub fn is_kernel_oracle<G: TruncationGame + ?Sized>(game: &G, w: &[Letter]) -> Result<bool> {
    Ok(grundy(game, w)? == 0)
}

/// Depth-first iterator over the positions of one rank, in lexicographic
/// order of letter tuples.
pub struct Positions<'g, G: TruncationGame + ?Sized> {
    game: &'g G,
    rank: usize,
    word: Vec<Letter>,
    // candidate letters for each filled slot, and the index currently used
    choices: Vec<(Vec<Letter>, usize)>,
    started: bool,
    done: bool,
}

impl<G: TruncationGame + ?Sized> Positions<'_, G> {
    fn descend(&mut self) -> bool {
        while self.word.len() < self.rank {
            let idx = self.word.len() + 1;
            let cands = self.game.letters_at(idx, &self.word);
            match cands.first() {
                Some(&l) => {
                    self.word.push(l);
                    self.choices.push((cands, 0));
                }
                None => return self.advance(),
            }
        }
        true
    }

    fn advance(&mut self) -> bool {
        loop {
            let Some((cands, pos)) = self.choices.last_mut() else {
                return false;
            };
            self.word.pop();
            if *pos + 1 < cands.len() {
                *pos += 1;
                let l = cands[*pos];
                self.word.push(l);
                return self.descend();
            }
            self.choices.pop();
        }
    }
}

impl<G: TruncationGame + ?Sized> Iterator for Positions<'_, G> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            if self.done {
                return None;
            }
            let ok = if !self.started {
                self.started = true;
                if self.rank == 0 {
                    self.done = true;
                    return self.game.empty_is_position().then(Word::empty);
                }
                self.descend()
            } else {
                self.advance()
            };
            if !ok {
                self.done = true;
                return None;
            }
            if self.game.in_p(&self.word) {
                return Some(Word::from(self.word.as_slice()));
            }
        }
    }
}

/// Every position of the given rank, each exactly once, lexicographically.
pub fn enumerate_positions<G: TruncationGame + ?Sized>(game: &G, rank: usize) -> Positions<'_, G> {
    Positions {
        game,
        rank,
        word: Vec::new(),
        choices: Vec::new(),
        started: false,
        done: false,
    }
}

/// Walks every position of exactly `rank` depth-first and hands each one to
/// `visit` together with its Grundy number.
///
/// A position's Grundy number depends only on its prefixes, so the walk keeps
/// the Grundy numbers of the current prefix chain on a stack and computes each
/// node once, straight from the mex definition.
pub fn for_each_position_with_grundy<G, F>(game: &G, rank: usize, mut visit: F)
where
    G: TruncationGame + ?Sized,
    F: FnMut(&[Letter], u32),
{
    if rank == 0 {
        if game.empty_is_position() {
            visit(&[], 0);
        }
        return;
    }
    // grundy[k] = Grundy number of word[..k]
    let mut grundy: Vec<u32> = vec![0];
    let mut word: Vec<Letter> = Vec::with_capacity(rank);
    let mut choices: Vec<(Vec<Letter>, usize)> = Vec::with_capacity(rank);
    let mut mask: Vec<bool> = Vec::with_capacity(rank);
    let empty_ok = game.empty_is_position();

    let mut push = |word: &mut Vec<Letter>, grundy: &mut Vec<u32>, l: Letter| {
        word.push(l);
        game.suffix_membership(word, &mut mask);
        let g = mex(moves_from_mask(&mask, empty_ok).map(|m| grundy[m.keep]));
        grundy.push(g);
    };

    let first = game.letters_at(1, &word);
    if first.is_empty() {
        return;
    }
    push(&mut word, &mut grundy, first[0]);
    choices.push((first, 0));
    loop {
        if word.len() == rank {
            if game.in_p(&word) {
                visit(&word, grundy[rank]);
            }
        } else {
            let cands = game.letters_at(word.len() + 1, &word);
            if let Some(&l) = cands.first() {
                push(&mut word, &mut grundy, l);
                choices.push((cands, 0));
                continue;
            }
        }
        // backtrack to the next sibling
        loop {
            let Some((cands, pos)) = choices.last_mut() else {
                return;
            };
            word.pop();
            grundy.pop();
            if *pos + 1 < cands.len() {
                *pos += 1;
                let l = cands[*pos];
                push(&mut word, &mut grundy, l);
                break;
            }
            choices.pop();
        }
    }
}

fn check_guard(rank: usize, guard: usize) -> Result<()> {
    if rank > guard {
        return Err(Error::GuardExceeded {
            what: "rank",
            value: rank,
            guard,
        });
    }
    Ok(())
}

/// Number of kernel positions (Grundy number zero) of the given rank, by
/// exhaustive enumeration. Ranks above `guard` are refused.
pub fn count_kernels_oracle_guarded<G: TruncationGame + ?Sized>(
    game: &G,
    rank: usize,
    guard: usize,
) -> Result<BigInt> {
    check_guard(rank, guard)?;
    let mut count: u64 = 0;
    for_each_position_with_grundy(game, rank, |_, g| {
        if g == 0 {
            count += 1;
        }
    });
    Ok(BigInt::from(count))
}

/// [`count_kernels_oracle_guarded`] with [`DEFAULT_RANK_GUARD`].
pub fn count_kernels_oracle<G: TruncationGame + ?Sized>(game: &G, rank: usize) -> Result<BigInt> {
    count_kernels_oracle_guarded(game, rank, DEFAULT_RANK_GUARD)
}

type Pred = Box<dyn Fn(&[Letter]) -> bool + Send + Sync>;
type LetterFn = Box<dyn Fn(usize, &[Letter]) -> Vec<Letter> + Send + Sync>;

/// A truncation game assembled from closures, for ad hoc move sets.
pub struct FnGame {
    pub name: String,
    pub arity: usize,
    in_m: Pred,
    in_p: Pred,
    letters: LetterFn,
    pub empty_is_position: bool,
}

impl FnGame {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        in_m: impl Fn(&[Letter]) -> bool + Send + Sync + 'static,
        in_p: impl Fn(&[Letter]) -> bool + Send + Sync + 'static,
        letters: impl Fn(usize, &[Letter]) -> Vec<Letter> + Send + Sync + 'static,
        empty_is_position: bool,
    ) -> Self {
        FnGame {
            name: name.into(),
            arity,
            in_m: Box::new(in_m),
            in_p: Box::new(in_p),
            letters: Box::new(letters),
            empty_is_position,
        }
    }
}

impl TruncationGame for FnGame {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn arity(&self) -> usize {
        self.arity
    }

    fn in_m(&self, w: &[Letter]) -> bool {
        !w.is_empty() && (self.in_m)(w)
    }

    fn in_p(&self, w: &[Letter]) -> bool {
        (self.in_p)(w)
    }

    fn letters_at(&self, index: usize, prefix: &[Letter]) -> Vec<Letter> {
        (self.letters)(index, prefix)
    }

    fn empty_is_position(&self) -> bool {
        self.empty_is_position
    }
}
