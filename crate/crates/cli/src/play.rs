//! `bgame play`: a text session against the engine.

use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bernoulli_games::gamecore::valid_moves;
use bernoulli_games::games::{native_text, parse_position};
use bernoulli_games::sbt::winning_moves;
use bernoulli_games::{spec, GameId, Letter, Move, TruncationGame, Word};

use crate::{CliError, CliResult};

const START_ATTEMPTS: usize = 1000;

/// A winning move if one exists, else the valid move keeping the longest prefix.
pub fn engine_move<G: TruncationGame + ?Sized>(
    game: &G,
    w: &[Letter],
) -> bernoulli_games::Result<Option<Move>> {
    if let Some(m) = winning_moves(game, w)?.into_iter().next() {
        return Ok(Some(m));
    }
    Ok(valid_moves(game, w)?.into_iter().max_by_key(|m| m.keep))
}

/// Random position of rank `n`, one admissible letter at a time.
pub fn random_start<G: TruncationGame + ?Sized>(game: &G, n: usize, seed: u64) -> CliResult<Word> {
    if n == 0 {
        return Err(CliError::Usage("play needs --n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..START_ATTEMPTS {
        let mut w: Vec<Letter> = Vec::with_capacity(n);
        for i in 1..=n {
            match game.letters_at(i, &w).choose(&mut rng) {
                Some(l) => w.push(*l),
                None => break,
            }
        }
        if w.len() == n && game.in_p(&w) {
            return Ok(Word::new(w));
        }
    }
    Err(CliError::Usage(format!(
        "no random position of rank {n} found"
    )))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Player {
    Human,
    Engine,
}

fn read_move(
    id: GameId,
    moves: &[Move],
    w: &Word,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CliResult<Move> {
    let keeps: Vec<String> = moves.iter().map(|m| m.keep.to_string()).collect();
    loop {
        write!(out, "your move, letters to keep ({}): ", keeps.join(" "))?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Err(CliError::Usage("input ended before the game did".into()));
        }
        match line.trim().parse::<usize>() {
            Ok(keep) if moves.iter().any(|m| m.keep == keep) => return Ok(Move { keep }),
            _ => writeln!(
                out,
                "{:?} is not a valid move from {}",
                line.trim(),
                native_text(id, w)
            )?,
        }
    }
}

/// Runs one session; the human moves first.
pub fn cmd_play(
    id: GameId,
    n: usize,
    seed: u64,
    start: Option<&str>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CliResult<()> {
    let game = spec(id);
    let mut w = match start {
        Some(text) => parse_position(id, text)?,
        None => random_start(&game, n, seed)?,
    };
    writeln!(out, "game {id}, start {}  ({w})", native_text(id, &w))?;
    let mut to_move = Player::Human;
    loop {
        let moves = valid_moves(&game, &w)?;
        if moves.is_empty() {
            let winner = match to_move {
                Player::Human => "engine",
                Player::Engine => "you",
            };
            writeln!(
                out,
                "no moves from {}; {winner} win{}",
                native_text(id, &w),
                if winner == "you" { "" } else { "s" }
            )?;
            return Ok(());
        }
        let m = match to_move {
            Player::Human => read_move(id, &moves, &w, input, out)?,
            Player::Engine => {
                let m = engine_move(&game, &w)?.expect("moves is nonempty");
                writeln!(out, "engine keeps {}", m.keep)?;
                m
            }
        };
        w = w.truncated(m.keep);
        writeln!(out, "position: {}", native_text(id, &w))?;
        to_move = match to_move {
            Player::Human => Player::Engine,
            Player::Engine => Player::Human,
        };
    }
}
