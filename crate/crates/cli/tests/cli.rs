use std::io::Cursor;

use serde_json::Value;

use bernoulli_games::gamecore::valid_moves;
use bernoulli_games::sbt::{is_kernel_fast, winning_moves};
use bernoulli_games::{spec, GameId, Word};
use bernoulli_games_cli::play::{engine_move, random_start};
use bernoulli_games_cli::run_with_io;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run_input(args: &[&str], input: &str) -> Run {
    let mut argv = vec!["bgame"];
    argv.extend_from_slice(args);
    let mut inp = Cursor::new(input.as_bytes().to_vec());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_io(argv, &mut inp, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_input(args, "")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = run(&full);
    (
        r.code,
        serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out)),
    )
}

#[test]
fn flat_kernels_by_formula_and_oracle() {
    let (code, v) = json(&["kernels", "flat", "--n", "5", "--methods", "formula,oracle"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    let values: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["40", "40"]);
}

#[test]
fn original_formula_matches_recurrence() {
    let (code, v) = json(&[
        "kernels",
        "original",
        "--n",
        "10",
        "--methods",
        "formula,recurrence",
    ]);
    assert_eq!(code, 0);
    let r = v["results"].as_array().unwrap();
    assert_eq!(r[0]["value"], r[1]["value"]);
}

#[test]
fn oracle_guard_is_reported_per_method() {
    let (code, v) = json(&[
        "kernels",
        "instant",
        "--n",
        "20",
        "--methods",
        "oracle,formula",
    ]);
    assert_eq!(code, 2);
    let r = v["results"].as_array().unwrap();
    assert_eq!(r[0]["method"], "oracle");
    assert!(r[0]["error"].as_str().unwrap().contains("guard"));
    assert_eq!(r[1]["value"], "2181096921557783605");
}

#[test]
fn unsupported_recurrence_is_not_fatal_to_other_methods() {
    let r = run(&[
        "kernels",
        "flat",
        "--n",
        "6",
        "--methods",
        "formula,recurrence,gf",
    ]);
    assert_eq!(r.code, 2);
    assert!(r.out.contains("formula     156"), "{}", r.out);
    assert!(r.out.contains("gf          156"), "{}", r.out);
    assert!(r.out.contains("recurrence  error"), "{}", r.out);
}

#[test]
fn kernels_csv_and_bfile() {
    let r = run(&[
        "--format",
        "csv",
        "kernels",
        "instant",
        "--n",
        "5",
        "--methods",
        "formula,gf",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "method,value\nformula,71\ngf,71\n");
    let r = run(&["--format", "bfile", "kernels", "instant", "--n", "5"]);
    assert_eq!(r.out, "5 71\n");
}

#[test]
fn decompose_instant_example() {
    let (code, v) = json(&["decompose", "instant", "1,2,1,3,5,5,7,4,8"]);
    assert_eq!(code, 0);
    assert_eq!(v["kernel"], true);
    let cuts: Vec<u64> = v["cuts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_u64().unwrap())
        .collect();
    assert_eq!(cuts, [1, 3, 4, 8, 9]);
    assert_eq!(v["factors"].as_array().unwrap().len(), 5);
    assert!(v["winning_moves"].as_array().unwrap().is_empty());
}

#[test]
fn decompose_non_kernels() {
    let r = run(&["decompose", "instant", "1,2,2"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("NOT A KERNEL POSITION"));
    assert!(r.out.contains("winning move: keep 1"));
    let r = run(&["decompose", "flat", "1,1"]);
    assert!(r.out.contains("NOT A KERNEL POSITION"));
}

#[test]
fn decompose_canonical_form() {
    let r = run(&["decompose", "instant", "1.1.1,2.2.2,3.3.1"]);
    assert!(r.out.contains("KERNEL POSITION") && !r.out.contains("NOT"));
}

#[test]
fn bad_positions_exit_2() {
    assert_eq!(run(&["decompose", "instant", "1,3"]).code, 2);
    assert_eq!(run(&["decompose", "instant", "x"]).code, 2);
    assert_eq!(run(&["decompose", "poly:0", "1"]).code, 2);
    assert_eq!(run(&["kernels", "nosuch", "--n", "3"]).code, 2);
    assert_eq!(run(&["kernels", "flat"]).code, 2);
    assert_eq!(run(&[]).code, 2);
}

#[test]
fn bestmove_reports_engine_choice() {
    let (_, v) = json(&["bestmove", "instant", "1,2,2"]);
    assert_eq!(v["winning_moves"], serde_json::json!([1]));
    assert_eq!(v["engine"], 1);
    // a kernel position that still has moves: the engine keeps the longest prefix
    let (_, v) = json(&["bestmove", "flat", "1,1,1"]);
    assert!(v["winning_moves"].as_array().unwrap().is_empty());
    assert_eq!(v["engine"], 2);
    let (_, v) = json(&["bestmove", "instant", "1,2,1"]);
    assert_eq!(v["engine"], Value::Null);
}

#[test]
fn connected_counts_agree() {
    let (code, v) = json(&["connected", "--n", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["value"], "3447");
    }
}

#[test]
fn connected_listing() {
    let r = run(&["--format", "csv", "connected", "--n", "4", "--list"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 14);
}

#[test]
fn single_permutation_summary() {
    let (code, v) = json(&["connected", "--perm", "251376948"]);
    assert_eq!(code, 0);
    assert_eq!(v["pnt"], "1,2,1,3,5,5,7,4,8");
    assert_eq!(v["connected"], true);
    let (_, v) = json(&["connected", "--perm", "2,1,3"]);
    assert_eq!(v["connected"], false);
    assert_eq!(v["strong_fixed_points"], serde_json::json!([3]));
    assert_eq!(run(&["connected", "--perm", "1,1"]).code, 2);
}

#[test]
fn bernoulli2_values_and_bfile_refusal() {
    let (code, v) = json(&["bernoulli2", "--n", "3"]);
    assert_eq!(code, 0);
    let values: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "1/2", "-1/6", "1/4"]);
    assert_eq!(v["results"][2]["sign"], "-");
    assert_eq!(
        run(&["--format", "bfile", "bernoulli2", "--n", "3"]).code,
        2
    );
}

#[test]
fn bernoulli2_polynomial() {
    let (_, v) = json(&["bernoulli2", "--n", "3", "--poly"]);
    assert_eq!(v["power"][0], "1/4");
    assert_eq!(v["binomial"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_examples_pass() {
    for (id, n) in [("E_IF", "7"), ("king-equiv", "7"), ("e-b2bound", "30")] {
        let r = run(&["verify", id, "--max-n", n]);
        assert_eq!(r.code, 0, "{id}: {}", r.out);
        assert!(r.out.trim_end().ends_with("PASS"), "{}", r.out);
    }
}

#[test]
fn verify_every_identity() {
    for id in bernoulli_games_cli::verify::IDENTITIES {
        let (code, v) = json(&["verify", id, "--max-n", "6"]);
        assert_eq!(code, 0, "{id}: {v}");
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn verify_errors() {
    let r = run(&["verify", "e-nothing"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("unknown identity"));
    assert_eq!(run(&["verify", "t-epi", "--max-n", "9"]).code, 2);
}

#[test]
fn conjecture_table() {
    let r = run(&["--format", "bfile", "conjecture", "--max-n", "12"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().last().unwrap(), "12 -519312");
    let (_, v) = json(&["conjecture", "--max-n", "30"]);
    assert!(v["sign_breaks"].as_array().unwrap().is_empty());
    assert!(v["k_failures"].as_array().unwrap().is_empty());
    assert!(v["kappa_failures"].as_array().unwrap().is_empty());
    assert_eq!(run(&["conjecture", "--max-n", "5"]).code, 2);
}

/// Replays a session in-process to produce the human's input lines.
fn script(id: GameId, start: &Word, human: impl Fn(&Word) -> usize) -> (String, bool) {
    let game = spec(id);
    let mut w = start.clone();
    let mut lines = String::new();
    let mut human_to_move = true;
    loop {
        if valid_moves(&game, &w).unwrap().is_empty() {
            return (lines, !human_to_move);
        }
        let keep = if human_to_move {
            let k = human(&w);
            lines.push_str(&format!("{k}\n"));
            k
        } else {
            engine_move(&game, &w).unwrap().unwrap().keep
        };
        w = w.truncated(keep);
        human_to_move = !human_to_move;
    }
}

#[test]
fn engine_wins_from_kernel_start() {
    let id = GameId::Flat;
    let game = spec(id);
    let seed = (0..500u64)
        .find(|&s| {
            let w = random_start(&game, 4, s).unwrap();
            is_kernel_fast(&game, &w) && !valid_moves(&game, &w).unwrap().is_empty()
        })
        .unwrap();
    let start = random_start(&game, 4, seed).unwrap();
    let (input, human_won) = script(id, &start, |w| valid_moves(&game, w).unwrap()[0].keep);
    assert!(!human_won);
    let r = run_input(
        &["play", "flat", "--n", "4", "--seed", &seed.to_string()],
        &input,
    );
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.trim_end().ends_with("engine wins"), "{}", r.out);
}

#[test]
fn human_wins_by_playing_winning_moves() {
    let id = GameId::Original;
    let game = spec(id);
    let human = |w: &Word| winning_moves(&game, w).unwrap()[0].keep;
    // a start where the human has to move more than once
    let (seed, input) = (0..500u64)
        .find_map(|s| {
            let w = random_start(&game, 6, s).unwrap();
            if is_kernel_fast(&game, &w) {
                return None;
            }
            let (input, human_won) = script(id, &w, human);
            assert!(human_won);
            (input.lines().count() >= 2).then_some((s, input))
        })
        .unwrap();
    let r = run_input(
        &["play", "original", "--n", "6", "--seed", &seed.to_string()],
        &input,
    );
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("engine keeps"), "{}", r.out);
    assert!(r.out.trim_end().ends_with("you win"), "{}", r.out);
}

#[test]
fn human_wins_with_start_override() {
    let r = run_input(
        &["play", "instant", "--start", "1,2,1,3,5,5,7,4,8,10"],
        "9\n",
    );
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.trim_end().ends_with("you win"), "{}", r.out);
}

#[test]
fn invalid_moves_are_reprompted() {
    let r = run_input(&["play", "instant", "--start", "1,2,2"], "zero\n7\n1\n");
    assert_eq!(r.code, 0);
    assert_eq!(r.out.matches("is not a valid move").count(), 2);
    assert!(r.out.trim_end().ends_with("you win"));
}

#[test]
fn play_needs_input_to_finish() {
    let r = run_input(&["play", "instant", "--start", "1,2,2"], "");
    assert_eq!(r.code, 2);
}

#[test]
fn same_seed_same_start() {
    let first_line = |seed: &str| {
        run_input(&["play", "poly:2", "--n", "6", "--seed", seed], "")
            .out
            .lines()
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(first_line("17"), first_line("17"));
    let starts: std::collections::HashSet<String> =
        (0..10).map(|s| first_line(&s.to_string())).collect();
    assert!(starts.len() > 1);
}
