//! `bgame verify`: identity checks reported per n.

use std::collections::HashSet;
use std::io::Write;

use serde_json::json;

use bernoulli_games::bernoulli::{
    abs_b2_jordan_rec, abs_b2_rec, b2_numbers, b2_via_cnm, b2_via_sum, gf_identities,
    jordan_bound_holds, k_via_stirling, kernels_via_gf,
};
use bernoulli_games::exactnum::{factorial, fmt_rational, rat, BigInt, Signed};
use bernoulli_games::games::{k_composition_sum, kappa_sum};
use bernoulli_games::perms::{
    all_permutations, connected_count, elevation, elevation_preimages, flat_model_count,
    flat_model_count_index_sets, is_connected, kappa_via_weights, king_reduce, list_connected,
    strong_fixed_points, DEFAULT_PERM_GUARD,
};
use bernoulli_games::{Error, GameId};

use crate::{csv_field, write_json, CliError, CliResult, Format, Status};

/// Identity ids accepted by `verify`.
pub const IDENTITIES: &[&str] = &[
    "e-b2e",
    "e-b2rec",
    "e-mrgf",
    "e-if",
    "t-epi",
    "king-equiv",
    "e-fbgen",
    "e-kgen",
    "e-st",
    "e-b2bound",
    "gf-compose",
    "c-fbperm",
];

/// `Ok(None)` passes, `Ok(Some(_))` fails with a counterexample.
type Check = Result<Option<String>, Error>;

fn differ<T: std::fmt::Display + PartialEq>(what: &str, left: &T, right: &T) -> Option<String> {
    (left != right).then(|| format!("{what}: {left} != {right}"))
}

fn guard(n: usize) -> Result<(), Error> {
    if n > DEFAULT_PERM_GUARD {
        return Err(Error::GuardExceeded {
            what: "permutation rank",
            value: n,
            guard: DEFAULT_PERM_GUARD,
        });
    }
    Ok(())
}

fn gf_check(name: &'static str, max_n: usize) -> Result<Vec<(usize, Check)>, Error> {
    let checks = gf_identities(max_n.max(2))?;
    let c = checks
        .into_iter()
        .find(|c| c.name == name)
        .expect("known identity name");
    Ok((0..=max_n.min(c.order))
        .map(|n| {
            let r = match &c.mismatch {
                Some((k, l, r)) if *k == n => Some(format!(
                    "coefficient of t^{k}: {} != {}",
                    fmt_rational(l),
                    fmt_rational(r)
                )),
                Some((k, _, _)) if *k < n => Some(format!("fails from t^{k} on")),
                _ => None,
            };
            (n, Ok(r))
        })
        .collect())
}

fn per_n(
    range: std::ops::RangeInclusive<usize>,
    f: impl Fn(usize) -> Check,
) -> Vec<(usize, Check)> {
    range.map(|n| (n, f(n))).collect()
}

fn epi(n: usize) -> Check {
    guard(n)?;
    let mut seen = HashSet::new();
    for s in all_permutations(n).filter(|s| s.at(1) == 1 && s.at(n) == n) {
        let pre = elevation_preimages(&s)?;
        let expected: usize = strong_fixed_points(&s)
            .iter()
            .filter(|&&i| i != 1 && i != n)
            .map(|i| i + 1)
            .product();
        if pre.len() != expected {
            return Ok(Some(format!(
                "{s} has {} preimages, expected {expected}",
                pre.len()
            )));
        }
        for p in pre {
            if !is_connected(&p) || elevation(&p)? != s {
                return Ok(Some(format!("{p} is listed as a preimage of {s}")));
            }
            if !seen.insert(p.clone()) {
                return Ok(Some(format!("{p} is a preimage of two permutations")));
            }
        }
    }
    Ok(differ(
        "preimages against connected permutations",
        &BigInt::from(seen.len()),
        &connected_count(n)?,
    ))
}

fn king(n: usize) -> Check {
    guard(n)?;
    for s in list_connected(n)? {
        if let Err(e) = king_reduce(&s) {
            return match e {
                Error::RouteMismatch(m) => Ok(Some(m)),
                other => Err(other),
            };
        }
    }
    Ok(None)
}

fn run_identity(id: &str, max_n: usize) -> CliResult<Vec<(usize, Check)>> {
    let rows = match id {
        "e-b2e" => {
            let b = b2_numbers(max_n);
            per_n(2..=max_n, |n| {
                let sum = b2_via_sum(n)?;
                let cnm = b2_via_cnm(n)?;
                Ok(differ(
                    "series against kernel sum",
                    &fmt_rational(&b[n]),
                    &fmt_rational(&sum),
                )
                .or_else(|| {
                    differ(
                        "series against c_{n,0} + c_{n,1}",
                        &fmt_rational(&b[n]),
                        &fmt_rational(&cnm),
                    )
                }))
            })
        }
        "e-b2rec" => {
            let b = b2_numbers(max_n);
            per_n(2..=max_n, |n| {
                let abs = b[n].abs();
                let jordan = &abs / rat(factorial(n));
                let rec = abs_b2_rec(n)?;
                let jordan_rec = abs_b2_jordan_rec(n)?;
                Ok(differ(
                    "|b_n| against recurrence",
                    &fmt_rational(&abs),
                    &fmt_rational(&rec),
                )
                .or_else(|| {
                    differ(
                        "|b_n|/n! against recurrence",
                        &fmt_rational(&jordan),
                        &fmt_rational(&jordan_rec),
                    )
                }))
            })
        }
        "e-mrgf" => per_n(1..=max_n, |n| {
            Ok(differ(
                "kernel sum against gf",
                &kappa_sum(GameId::Instant, n)?,
                &kernels_via_gf(GameId::Instant, n)?,
            ))
        }),
        "e-if" => per_n(2..=max_n, |n| {
            Ok(differ(
                "kernel sum against weight sum",
                &kappa_sum(GameId::Instant, n)?,
                &kappa_via_weights(n)?,
            ))
        }),
        "t-epi" => per_n(2..=max_n, epi),
        "king-equiv" => per_n(2..=max_n, king),
        "e-fbgen" => per_n(1..=max_n, |n| {
            Ok(differ(
                "kernel sum against gf",
                &kappa_sum(GameId::Flat, n)?,
                &kernels_via_gf(GameId::Flat, n)?,
            )
            .or_else(|| {
                let k = k_composition_sum(n - 1);
                differ(
                    "kappa_n against n K_(n-1)",
                    &kappa_sum(GameId::Flat, n).ok()?,
                    &(k * BigInt::from(n)),
                )
            }))
        }),
        "e-kgen" => gf_check("k-egf", max_n)?,
        "e-st" => per_n(0..=max_n, |n| {
            Ok(differ(
                "composition sum against Stirling sum",
                &k_composition_sum(n),
                &k_via_stirling(n),
            ))
        }),
        "e-b2bound" => {
            let b = b2_numbers(max_n);
            per_n(3..=max_n, |n| {
                Ok((!jordan_bound_holds(&b, n)).then(|| {
                    format!(
                        "(n-2)/n |b_(n-1)/(n-1)!| < |b_n/n!| fails with b_(n-1) = {}, b_n = {}",
                        fmt_rational(&b[n - 1]),
                        fmt_rational(&b[n])
                    )
                }))
            })
        }
        "gf-compose" => gf_check("k-egf-compositional", max_n)?,
        "c-fbperm" => per_n(1..=max_n, |n| {
            let model = flat_model_count(n)?;
            Ok(differ(
                "K_n against permutation model",
                &k_composition_sum(n),
                &model,
            )
            .or_else(|| {
                differ(
                    "kernel test against index sets",
                    &model,
                    &flat_model_count_index_sets(n).ok()?,
                )
            }))
        }),
        other => {
            return Err(CliError::Usage(format!(
                "unknown identity {other:?}; known: {}",
                IDENTITIES.join(", ")
            )));
        }
    };
    Ok(rows)
}

pub fn cmd_verify(
    fmt: Format,
    identity: &str,
    max_n: usize,
    out: &mut dyn Write,
) -> CliResult<Status> {
    if fmt == Format::Bfile {
        return Err(CliError::Usage(
            "b-file output is only for integer sequences; verify reports are not".into(),
        ));
    }
    let id = identity.trim().to_ascii_lowercase().replace('_', "-");
    let rows = run_identity(&id, max_n)?;
    let failed = rows.iter().any(|(_, r)| matches!(r, Ok(Some(_))));
    let errored = rows.iter().any(|(_, r)| r.is_err());
    let status = if failed {
        Status::Disagree
    } else if errored {
        Status::Incomplete
    } else {
        Status::Pass
    };
    let label = |r: &Check| match r {
        Ok(None) => ("PASS", String::new()),
        Ok(Some(m)) => ("FAIL", m.clone()),
        Err(e) => ("ERROR", e.to_string()),
    };
    match fmt {
        Format::Text => {
            for (n, r) in &rows {
                let (s, detail) = label(r);
                if detail.is_empty() {
                    writeln!(out, "{id} n={n} {s}")?;
                } else {
                    writeln!(out, "{id} n={n} {s}: {detail}")?;
                }
            }
            let overall = match status {
                Status::Pass => "PASS",
                Status::Disagree => "FAIL",
                Status::Incomplete => "INCOMPLETE",
            };
            writeln!(out, "{id}: {overall}")?;
        }
        Format::Json => {
            let results: Vec<_> = rows
                .iter()
                .map(|(n, r)| {
                    let (s, detail) = label(r);
                    json!({"n": n, "status": s, "detail": detail})
                })
                .collect();
            write_json(
                out,
                &json!({"command": "verify", "identity": id, "max_n": max_n, "results": results, "pass": status == Status::Pass}),
            )?;
        }
        Format::Csv => {
            writeln!(out, "n,status,detail")?;
            for (n, r) in &rows {
                let (s, detail) = label(r);
                writeln!(out, "{n},{s},{}", csv_field(&detail))?;
            }
        }
        Format::Bfile => unreachable!(),
    }
    Ok(status)
}
