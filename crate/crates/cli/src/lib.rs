//! Command implementations behind the `bgame` binary. Everything writes to
//! caller-supplied streams so the commands can be driven from tests.

use std::io::{BufRead, Write};

use clap::Parser;
use serde_json::{json, Value};

use bernoulli_games::bernoulli::{b2_numbers, b2_polynomial, conjecture_scan, kernels_via_gf};
use bernoulli_games::exactnum::{factorial, fmt_rational, rat, BigInt, Signed, Zero};
use bernoulli_games::gamecore::count_kernels_oracle;
use bernoulli_games::games::{kappa_factor, kappa_rec, kappa_sum, native_text, parse_position};
use bernoulli_games::perms::{
    connected_count, elevation, is_connected, kappa_via_weights, kernel_factor_spans, king_reduce,
    list_connected, lnt, pnt, strong_fixed_points, Permutation, DEFAULT_PERM_GUARD,
};
use bernoulli_games::sbt::{decompose, winning_moves};
use bernoulli_games::{spec, Error, FactorType, GameId, Letter, Word};

pub mod args;
pub mod play;
pub mod verify;

pub use args::{Cli, Command, Format, Method};

/// Exit status for all checks passing.
pub const EXIT_OK: i32 = 0;
/// Exit status for a mathematical disagreement.
pub const EXIT_DISAGREE: i32 = 1;
/// Exit status for usage, parse and guard errors.
pub const EXIT_USAGE: i32 = 2;

/// How a command ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Disagree,
    /// Some requested value could not be computed (guard, unsupported route).
    Incomplete,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => EXIT_OK,
            Status::Disagree => EXIT_DISAGREE,
            Status::Incomplete => EXIT_USAGE,
        }
    }
}

/// Errors that end a command early.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run_with_io<I, S>(
    args: I,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match run(&cli, input, out) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs a parsed command.
pub fn run(cli: &Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> CliResult<Status> {
    let fmt = cli.format;
    match &cli.command {
        Command::Kernels { game, n, methods } => cmd_kernels(fmt, *game, *n, methods, out),
        Command::Decompose { game, word } => cmd_decompose(fmt, *game, word, out),
        Command::Bestmove { game, word } => cmd_bestmove(fmt, *game, word, out),
        Command::Connected { n, list, perm } => match perm {
            Some(p) => cmd_permutation(fmt, p, out),
            None => cmd_connected(
                fmt,
                n.expect("clap requires --n without --perm"),
                *list,
                out,
            ),
        },
        Command::Bernoulli2 { n, poly, jordan } => cmd_bernoulli2(fmt, *n, *poly, *jordan, out),
        Command::Verify { identity, max_n } => verify::cmd_verify(fmt, identity, *max_n, out),
        Command::Conjecture { max_n } => cmd_conjecture(fmt, *max_n, out),
        Command::Play {
            game,
            n,
            seed,
            start,
        } => {
            if fmt != Format::Text {
                return Err(CliError::Usage("play only supports text output".into()));
            }
            play::cmd_play(*game, *n, *seed, start.as_deref(), input, out)?;
            Ok(Status::Pass)
        }
    }
}

pub(crate) fn method_name(m: Method) -> &'static str {
    match m {
        Method::Oracle => "oracle",
        Method::Formula => "formula",
        Method::Recurrence => "recurrence",
        Method::Gf => "gf",
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn write_json(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    writeln!(out, "{v}")?;
    Ok(())
}

fn no_bfile(what: &str) -> CliError {
    CliError::Usage(format!(
        "b-file output is only for integer sequences, not for {what}"
    ))
}

/// Values computed by several routes, some possibly failed.
pub(crate) struct Routes {
    pub rows: Vec<(String, Result<BigInt, Error>)>,
}

impl Routes {
    pub fn agree(&self) -> bool {
        let mut ok = self.rows.iter().filter_map(|(_, r)| r.as_ref().ok());
        match ok.next() {
            Some(first) => ok.all(|v| v == first),
            None => true,
        }
    }

    pub fn status(&self) -> Status {
        if !self.agree() {
            Status::Disagree
        } else if self.rows.iter().any(|(_, r)| r.is_err()) {
            Status::Incomplete
        } else {
            Status::Pass
        }
    }

    fn value_text(r: &Result<BigInt, Error>) -> String {
        match r {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        }
    }

    pub fn write(
        &self,
        fmt: Format,
        command: &str,
        game: &str,
        n: usize,
        out: &mut dyn Write,
    ) -> CliResult<Status> {
        let status = self.status();
        match fmt {
            Format::Text => {
                writeln!(out, "{command} {game} n={n}")?;
                for (name, r) in &self.rows {
                    writeln!(out, "  {name:<12}{}", Self::value_text(r))?;
                }
                writeln!(out, "agree: {}", if self.agree() { "yes" } else { "NO" })?;
            }
            Format::Json => {
                let results: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|(name, r)| match r {
                        Ok(v) => json!({"method": name, "value": v.to_string()}),
                        Err(e) => json!({"method": name, "error": e.to_string()}),
                    })
                    .collect();
                write_json(
                    out,
                    &json!({"command": command, "game": game, "n": n, "results": results, "agree": self.agree()}),
                )?;
            }
            Format::Csv => {
                writeln!(out, "method,value")?;
                for (name, r) in &self.rows {
                    writeln!(out, "{},{}", name, csv_field(&Self::value_text(r)))?;
                }
            }
            Format::Bfile => {
                if status != Status::Pass {
                    return Err(CliError::Usage(
                        "b-file output needs every requested method to succeed and agree".into(),
                    ));
                }
                if let Some((_, Ok(v))) = self.rows.first() {
                    writeln!(out, "{n} {v}")?;
                }
            }
        }
        Ok(status)
    }
}

pub fn cmd_kernels(
    fmt: Format,
    id: GameId,
    n: usize,
    methods: &[Method],
    out: &mut dyn Write,
) -> CliResult<Status> {
    let mut seen = Vec::new();
    let rows = methods
        .iter()
        .filter(|m| {
            let fresh = !seen.contains(*m);
            seen.push(**m);
            fresh
        })
        .map(|&m| {
            let value = match m {
                Method::Oracle => count_kernels_oracle(&spec(id), n),
                Method::Formula => kappa_sum(id, n),
                Method::Recurrence => kappa_rec(id, n),
                Method::Gf => kernels_via_gf(id, n),
            };
            (method_name(m).to_string(), value)
        })
        .collect();
    Routes { rows }.write(fmt, "kernels", &id.to_string(), n, out)
}

fn factor_rows(
    id: GameId,
    w: &[Letter],
    spans: &[(usize, usize)],
) -> CliResult<Vec<(usize, usize, FactorType, BigInt)>> {
    spans
        .iter()
        .map(|&(i, j)| {
            let ft = FactorType::classify(id, w, (i, j));
            Ok((i, j, ft, kappa_factor(id, ft)?))
        })
        .collect()
}

fn piece_text(id: GameId, w: &[Letter], i: usize, j: usize) -> String {
    native_text(id, &w[i - 1..j])
}

pub fn cmd_decompose(
    fmt: Format,
    id: GameId,
    word: &str,
    out: &mut dyn Write,
) -> CliResult<Status> {
    if fmt == Format::Bfile {
        return Err(no_bfile("a factorization"));
    }
    let game = spec(id);
    let w = parse_position(id, word)?;
    let factorization = decompose(&game, &w);
    let wins = winning_moves(&game, &w)?;
    let spans: Vec<(usize, usize)> = factorization
        .as_ref()
        .map(|f| f.spans().collect())
        .unwrap_or_default();
    let rows = factor_rows(id, &w, &spans)?;
    match fmt {
        Format::Text => {
            writeln!(out, "game: {id}")?;
            writeln!(out, "word: {}  ({w})", native_text(id, &w))?;
            match &factorization {
                Some(f) => {
                    writeln!(out, "KERNEL POSITION")?;
                    let pieces: Vec<String> = spans
                        .iter()
                        .map(|&(i, j)| piece_text(id, &w, i, j))
                        .collect();
                    writeln!(out, "factors: {}", pieces.join(" | "))?;
                    let cuts: Vec<String> = f.cuts()[1..].iter().map(|c| c.to_string()).collect();
                    writeln!(out, "cuts: {}", cuts.join(","))?;
                    for (i, j, ft, count) in &rows {
                        writeln!(
                            out,
                            "  {:<14}{:<12}count {}",
                            piece_text(id, &w, *i, *j),
                            ft.to_string(),
                            count
                        )?;
                    }
                }
                None => {
                    writeln!(out, "NOT A KERNEL POSITION")?;
                    for m in &wins {
                        writeln!(
                            out,
                            "winning move: keep {} -> {}",
                            m.keep,
                            native_text(id, &w[..m.keep])
                        )?;
                    }
                }
            }
        }
        Format::Json => {
            let factors: Vec<Value> = rows
                .iter()
                .map(|(i, j, ft, count)| {
                    json!({"span": [i, j], "type": ft.to_string(), "word": piece_text(id, &w, *i, *j), "count": count.to_string()})
                })
                .collect();
            let cuts: Vec<usize> = factorization
                .as_ref()
                .map(|f| f.cuts()[1..].to_vec())
                .unwrap_or_default();
            let moves: Vec<Value> = wins
                .iter()
                .map(|m| json!({"keep": m.keep, "result": Word::from(&w[..m.keep]).to_string()}))
                .collect();
            write_json(
                out,
                &json!({
                    "command": "decompose",
                    "game": id.to_string(),
                    "word": w.to_string(),
                    "kernel": factorization.is_some(),
                    "cuts": cuts,
                    "factors": factors,
                    "winning_moves": moves,
                }),
            )?;
        }
        Format::Csv => {
            writeln!(out, "i,j,type,word,count")?;
            for (i, j, ft, count) in &rows {
                writeln!(
                    out,
                    "{i},{j},{},{},{count}",
                    csv_field(&ft.to_string()),
                    csv_field(&piece_text(id, &w, *i, *j))
                )?;
            }
        }
        Format::Bfile => unreachable!(),
    }
    Ok(Status::Pass)
}

pub fn cmd_bestmove(fmt: Format, id: GameId, word: &str, out: &mut dyn Write) -> CliResult<Status> {
    if fmt == Format::Bfile {
        return Err(no_bfile("a move list"));
    }
    let game = spec(id);
    let w = parse_position(id, word)?;
    let wins = winning_moves(&game, &w)?;
    let choice = play::engine_move(&game, &w)?;
    match fmt {
        Format::Text => {
            if wins.is_empty() {
                writeln!(
                    out,
                    "no winning move: {} is a kernel position",
                    native_text(id, &w)
                )?;
            }
            for m in &wins {
                writeln!(
                    out,
                    "winning move: keep {} -> {}",
                    m.keep,
                    native_text(id, &w[..m.keep])
                )?;
            }
            match choice {
                Some(m) => writeln!(out, "engine plays: keep {}", m.keep)?,
                None => writeln!(out, "engine plays: no valid move")?,
            }
        }
        Format::Json => {
            let moves: Vec<usize> = wins.iter().map(|m| m.keep).collect();
            write_json(
                out,
                &json!({"command": "bestmove", "game": id.to_string(), "word": w.to_string(), "winning_moves": moves, "engine": choice.map(|m| m.keep)}),
            )?;
        }
        Format::Csv => {
            writeln!(out, "keep,result")?;
            for m in &wins {
                writeln!(
                    out,
                    "{},{}",
                    m.keep,
                    csv_field(&native_text(id, &w[..m.keep]))
                )?;
            }
        }
        Format::Bfile => unreachable!(),
    }
    Ok(Status::Pass)
}

pub fn cmd_connected(fmt: Format, n: usize, list: bool, out: &mut dyn Write) -> CliResult<Status> {
    let mut rows = vec![("formula".to_string(), kappa_sum(GameId::Instant, n))];
    rows.push(("brute-force".to_string(), connected_count(n)));
    if n >= 2 {
        rows.push(("weights".to_string(), kappa_via_weights(n)));
    }
    let listed = if n > DEFAULT_PERM_GUARD {
        Err(Error::GuardExceeded {
            what: "permutation rank",
            value: n,
            guard: DEFAULT_PERM_GUARD,
        })
    } else {
        list_connected(n)
    };
    rows.push((
        "listing".to_string(),
        listed
            .as_ref()
            .map(|l| BigInt::from(l.len()))
            .map_err(Clone::clone),
    ));
    if !list {
        return Routes { rows }.write(fmt, "connected", "instant", n, out);
    }
    let perms = listed?;
    let status = Routes { rows }.status();
    match fmt {
        Format::Text => {
            for p in &perms {
                writeln!(out, "{p}  pnt {}", pnt(p))?;
            }
            writeln!(out, "{} connected permutations of rank {n}", perms.len())?;
        }
        Format::Json => {
            let items: Vec<Value> = perms
                .iter()
                .map(|p| json!({"perm": p.to_string(), "pnt": pnt(p).to_string()}))
                .collect();
            write_json(
                out,
                &json!({"command": "connected", "n": n, "permutations": items}),
            )?;
        }
        Format::Csv => {
            writeln!(out, "perm,pnt")?;
            for p in &perms {
                writeln!(
                    out,
                    "{},{}",
                    csv_field(&p.to_string()),
                    csv_field(&pnt(p).to_string())
                )?;
            }
        }
        Format::Bfile => return Err(no_bfile("a permutation list")),
    }
    Ok(status)
}

pub fn cmd_permutation(fmt: Format, text: &str, out: &mut dyn Write) -> CliResult<Status> {
    if fmt == Format::Bfile {
        return Err(no_bfile("a permutation summary"));
    }
    let p: Permutation = text.parse()?;
    let connected = is_connected(&p);
    let spans = kernel_factor_spans(&p);
    let elev = if connected {
        Some(elevation(&p)?)
    } else {
        None
    };
    let king = if connected && p.len() >= 2 {
        Some(king_reduce(&p)?)
    } else {
        None
    };
    let t = pnt(&p);
    let sf = strong_fixed_points(&p);
    let join = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let factor_text = spans.as_ref().map(|s| {
        s.iter()
            .map(|&(i, j)| join(&t.values()[i - 1..j]))
            .collect::<Vec<_>>()
            .join(" | ")
    });
    match fmt {
        Format::Text => {
            writeln!(out, "permutation: {p}")?;
            writeln!(out, "pnt: {t}")?;
            writeln!(out, "lnt: {}", lnt(&p))?;
            writeln!(out, "strong fixed points: {{{}}}", join(&sf))?;
            writeln!(out, "connected: {}", if connected { "yes" } else { "no" })?;
            if let Some(f) = &factor_text {
                writeln!(out, "factors: {f}")?;
            }
            if let Some(e) = &elev {
                writeln!(out, "elevation: {e}")?;
            }
            if let Some(k) = &king {
                writeln!(
                    out,
                    "King reduction: {} (removes factor {} of the tilde table)",
                    k.reduced, k.removed
                )?;
            }
        }
        Format::Json => {
            write_json(
                out,
                &json!({
                    "command": "connected",
                    "perm": p.to_string(),
                    "pnt": t.to_string(),
                    "lnt": lnt(&p).to_string(),
                    "strong_fixed_points": sf,
                    "connected": connected,
                    "factors": factor_text,
                    "elevation": elev.map(|e| e.to_string()),
                    "king_reduced": king.as_ref().map(|k| k.reduced.to_string()),
                }),
            )?;
        }
        Format::Csv => {
            writeln!(out, "perm,pnt,connected,elevation")?;
            writeln!(
                out,
                "{},{},{},{}",
                csv_field(&p.to_string()),
                csv_field(&t.to_string()),
                connected,
                csv_field(&elev.map(|e| e.to_string()).unwrap_or_default())
            )?;
        }
        Format::Bfile => unreachable!(),
    }
    Ok(Status::Pass)
}

fn sign_text(positive: bool, zero: bool) -> &'static str {
    if zero {
        "0"
    } else if positive {
        "+"
    } else {
        "-"
    }
}

pub fn cmd_bernoulli2(
    fmt: Format,
    n: usize,
    poly: bool,
    jordan: bool,
    out: &mut dyn Write,
) -> CliResult<Status> {
    if fmt == Format::Bfile {
        return Err(no_bfile("the Bernoulli numbers of the second kind"));
    }
    if poly {
        let p = b2_polynomial(n);
        let power = if jordan {
            p.jordan()
        } else {
            p.power().clone()
        };
        let power: Vec<String> = (0..=n).map(|k| fmt_rational(&power.coeff(k))).collect();
        let binom: Vec<String> = p.binom_coeffs().iter().map(fmt_rational).collect();
        match fmt {
            Format::Text => {
                let label = if jordan {
                    format!("b_{n}(x)/{n}!")
                } else {
                    format!("b_{n}(x)")
                };
                writeln!(
                    out,
                    "{label} power coefficients (x^0..x^{n}): {}",
                    power.join(", ")
                )?;
                writeln!(
                    out,
                    "b_{n}(x) = sum c_{{{n},m}} C(x+1,m), c: {}",
                    binom.join(", ")
                )?;
            }
            Format::Json => write_json(
                out,
                &json!({"command": "bernoulli2", "n": n, "jordan": jordan, "power": power, "binomial": binom}),
            )?,
            Format::Csv => {
                writeln!(out, "k,power,binomial")?;
                for k in 0..=n {
                    writeln!(out, "{k},{},{}", power[k], binom[k])?;
                }
            }
            Format::Bfile => unreachable!(),
        }
        return Ok(Status::Pass);
    }
    let b = b2_numbers(n);
    let route = if jordan { "series/n!" } else { "series" };
    let values: Vec<_> = b
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if jordan {
                v / rat(factorial(k))
            } else {
                v.clone()
            }
        })
        .collect();
    match fmt {
        Format::Text => {
            for (k, v) in values.iter().enumerate() {
                writeln!(out, "{k} {}", fmt_rational(v))?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = values
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    json!({"n": k, "value": fmt_rational(v), "route": route, "sign": sign_text(v.is_positive(), v.is_zero())})
                })
                .collect();
            write_json(out, &json!({"command": "bernoulli2", "results": rows}))?;
        }
        Format::Csv => {
            writeln!(out, "n,value,route,sign")?;
            for (k, v) in values.iter().enumerate() {
                writeln!(
                    out,
                    "{k},{},{route},{}",
                    fmt_rational(v),
                    sign_text(v.is_positive(), v.is_zero())
                )?;
            }
        }
        Format::Bfile => unreachable!(),
    }
    Ok(Status::Pass)
}

pub fn cmd_conjecture(fmt: Format, max_n: usize, out: &mut dyn Write) -> CliResult<Status> {
    let report = conjecture_scan(max_n)?;
    let flag = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    };
    match fmt {
        Format::Text => {
            writeln!(
                out,
                "{:>4}  {:>4}  {:>14}  {:>22}  a_n",
                "n", "sign", "n*K(n-1) > K(n)", "n*kappa(n-1) > kappa(n)"
            )?;
            for r in &report.rows {
                let digits = r.a.abs().to_string().len();
                let a = if digits <= 30 {
                    r.a.to_string()
                } else {
                    format!("({digits} digits)")
                };
                writeln!(
                    out,
                    "{:>4}  {:>4}  {:>14}  {:>22}  {a}",
                    r.n,
                    sign_text(r.a.is_positive(), r.a.is_zero()),
                    flag(r.k_inequality),
                    flag(r.kappa_inequality)
                )?;
            }
            let list = |v: Vec<usize>| {
                if v.is_empty() {
                    "none".to_string()
                } else {
                    format!("{v:?}")
                }
            };
            writeln!(
                out,
                "n <= 11 with a_n <= 0: {}",
                list(report.nonpositive_below_12())
            )?;
            writeln!(
                out,
                "sign of a_n differs from (-1)^(n-1), n >= 12: {}",
                list(report.sign_breaks())
            )?;
            writeln!(
                out,
                "n*K(n-1) > K(n) fails, n >= 11: {}",
                list(report.k_failures())
            )?;
            writeln!(
                out,
                "n*kappa(n-1) > kappa(n) fails, n >= 12: {}",
                list(report.kappa_failures())
            )?;
        }
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "value": r.a.to_string(),
                        "route": "stirling",
                        "sign": sign_text(r.a.is_positive(), r.a.is_zero()),
                        "k_inequality": r.k_inequality,
                        "kappa_inequality": r.kappa_inequality,
                    })
                })
                .collect();
            write_json(
                out,
                &json!({
                    "command": "conjecture",
                    "max_n": max_n,
                    "results": rows,
                    "sign_breaks": report.sign_breaks(),
                    "k_failures": report.k_failures(),
                    "kappa_failures": report.kappa_failures(),
                }),
            )?;
        }
        Format::Csv => {
            writeln!(out, "n,a_n,sign,k_inequality,kappa_inequality")?;
            for r in &report.rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    r.a,
                    sign_text(r.a.is_positive(), r.a.is_zero()),
                    flag(r.k_inequality),
                    flag(r.kappa_inequality)
                )?;
            }
        }
        Format::Bfile => {
            for r in &report.rows {
                writeln!(out, "{} {}", r.n, r.a)?;
            }
        }
    }
    Ok(Status::Pass)
}
