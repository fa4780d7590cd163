//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p bernoulli-games --test acceptance`.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use bernoulli_games::bernoulli::{
    abs_b2_rec, b2_numbers, b2_polynomial, b2_polynomial_power, b2_via_cnm, b2_via_sum,
    conjecture_scan, gf_identities,
};
use bernoulli_games::exactnum::{factorial, rat, ratio, sign_pow, BigInt, Poly, Rational, Signed};
use bernoulli_games::gamecore::{
    count_kernels_oracle, for_each_position_with_grundy, FnGame, Letter,
};
use bernoulli_games::games::{
    k_composition_sum, kappa_rec, kappa_sum, kappa_via_gf_instant, spec, GameId,
};
use bernoulli_games::perms::{
    all_permutations, connected_count, elevation, elevation_preimages, flat_model_count,
    flat_model_count_index_sets, is_connected, kappa_via_weights, king_reduce, list_connected, lnt,
    perm_from_pnt, pnt, strong_fixed_points, Permutation,
};
use bernoulli_games::sbt::{check_strongly_bernoulli, is_kernel_fast};
use bernoulli_games::{bernoulli::k_via_stirling, TruncationGame};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Delegates only the defining predicates, so moves come from the
/// definition of `M` rather than the games' linear-time scans.
struct ByDefinition<G>(G);

impl<G: TruncationGame> TruncationGame for ByDefinition<G> {
    fn name(&self) -> String {
        self.0.name()
    }
    fn arity(&self) -> usize {
        self.0.arity()
    }
    fn in_m(&self, w: &[Letter]) -> bool {
        self.0.in_m(w)
    }
    fn in_p(&self, w: &[Letter]) -> bool {
        self.0.in_p(w)
    }
    fn letters_at(&self, index: usize, prefix: &[Letter]) -> Vec<Letter> {
        self.0.letters_at(index, prefix)
    }
    fn empty_is_position(&self) -> bool {
        self.0.empty_is_position()
    }
}

fn criterion_1() -> Outcome {
    let mut cases: Vec<(GameId, usize)> = [
        GameId::Original,
        GameId::Instant,
        GameId::Flat,
        GameId::FlatExceptionFree,
    ]
    .map(|id| (id, 6))
    .to_vec();
    cases.extend((1..=3).map(|x| (GameId::Polynomial(x), 5)));
    let mut checked = 0u64;
    for (id, max_rank) in cases {
        let fast = spec(id);
        let oracle = ByDefinition(spec(id));
        for rank in 1..=max_rank {
            let mut bad = None;
            for_each_position_with_grundy(&oracle, rank, |w, g| {
                checked += 1;
                if (g == 0) != is_kernel_fast(&fast, w) && bad.is_none() {
                    bad = Some(bernoulli_games::Word::from(w).to_string());
                }
            });
            if let Some(w) = bad {
                return Err(format!(
                    "{id} rank {rank}: oracle and factorization disagree on {w}"
                ));
            }
        }
    }
    Ok(format!("{checked} positions agree"))
}

fn criterion_2() -> Outcome {
    let b = b2_numbers(4);
    ensure(b[4] == ratio(-19, 30), || format!("b_4 = {}", b[4]))?;
    ensure(&b[4] / rat(24) == ratio(-19, 720), || {
        "b_4/4! != -19/720".into()
    })?;
    let p = b2_polynomial(2);
    let expect = Poly::new(vec![ratio(-1, 6), rat(0), rat(1)]);
    ensure(*p.power() == expect, || {
        format!("b_2(x) = {:?}", p.power().coeffs())
    })?;
    let k5 = kappa_sum(GameId::Flat, 5).map_err(|e| e.to_string())?;
    ensure(k5 == BigInt::from(40), || format!("flat kappa_5 = {k5}"))?;
    ensure(Rational::new(k5, factorial(5)) == ratio(1, 3), || {
        "kappa_5/5! != 1/3".into()
    })?;
    let a = bernoulli_games::bernoulli::a_sequence(12).map_err(|e| e.to_string())?;
    ensure(a[12] == BigInt::from(-519312), || {
        format!("a_12 = {}", a[12])
    })?;
    Ok("b_4, b_4/4!, b_2(x), flat kappa_5, a_12 reproduced".into())
}

fn criterion_3() -> Outcome {
    let b = b2_numbers(25);
    for n in 1..=25 {
        let kappa = kappa_sum(GameId::Original, n).map_err(|e| e.to_string())?;
        let from_b = &b[n] * rat(sign_pow(n - 1) * factorial(n + 1));
        ensure(rat(kappa.clone()) == from_b, || {
            format!("n = {n}: kappa {kappa}, series {from_b}")
        })?;
    }
    Ok("original-game kernel counts match (-1)^(n-1)(n+1)! b_n for n <= 25".into())
}

fn criterion_4() -> Outcome {
    for n in 1..=10 {
        let sum = kappa_sum(GameId::Instant, n).map_err(|e| e.to_string())?;
        let rec = kappa_rec(GameId::Instant, n).map_err(|e| e.to_string())?;
        let gf = kappa_via_gf_instant(n).map_err(|e| e.to_string())?;
        ensure(sum == rec && sum == gf, || {
            format!("n = {n}: sum {sum}, rec {rec}, gf {gf}")
        })?;
        if n >= 2 {
            let w = kappa_via_weights(n).map_err(|e| e.to_string())?;
            ensure(w == sum, || format!("n = {n}: weights {w}, sum {sum}"))?;
        }
        if n <= 8 {
            let brute = connected_count(n).map_err(|e| e.to_string())?;
            ensure(brute == sum, || {
                format!("n = {n}: brute force {brute}, sum {sum}")
            })?;
        }
        if n <= 7 {
            let listed = list_connected(n).map_err(|e| e.to_string())?.len();
            ensure(BigInt::from(listed) == sum, || {
                format!("n = {n}: listing has {listed}, sum {sum}")
            })?;
        }
    }
    let values: Vec<String> = (1..=8)
        .map(|n| connected_count(n).unwrap().to_string())
        .collect();
    Ok(format!(
        "connected counts {} agree across all routes",
        values.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    for n in 1..=7 {
        let connected: HashSet<Permutation> = all_permutations(n).filter(is_connected).collect();
        let mut covered: HashSet<Permutation> = HashSet::new();
        let mut total = 0usize;
        for s in all_permutations(n).filter(|s| s.at(1) == 1 && s.at(n) == n) {
            let pre = elevation_preimages(&s).map_err(|e| e.to_string())?;
            let expect: usize = strong_fixed_points(&s)
                .iter()
                .filter(|&&i| i != 1 && i != n)
                .map(|i| i + 1)
                .product();
            ensure(pre.len() == expect, || {
                format!("{s}: {} preimages, expected {expect}", pre.len())
            })?;
            for p in pre {
                ensure(is_connected(&p), || {
                    format!("{s}: preimage {p} is not connected")
                })?;
                let e = elevation(&p).map_err(|e| e.to_string())?;
                ensure(e == s, || format!("{s}: preimage {p} elevates to {e}"))?;
                ensure(covered.insert(p.clone()), || {
                    format!("{p} lies in two preimage sets")
                })?;
                total += 1;
            }
        }
        ensure(covered == connected, || {
            format!("n = {n}: preimages cover {total} of {}", connected.len())
        })?;
    }
    Ok("preimage sizes match and partition the connected permutations for n <= 7".into())
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for n in 2..=7 {
        for s in all_permutations(n).filter(is_connected) {
            king_reduce(&s).map_err(|e| e.to_string())?;
            checked += 1;
        }
    }
    Ok(format!(
        "both reduction routes coincide on {checked} connected permutations"
    ))
}

fn criterion_7() -> Outcome {
    for n in 0..=25 {
        let comp = k_composition_sum(n);
        let st = k_via_stirling(n);
        ensure(comp == st, || {
            format!("K_{n}: composition {comp}, Stirling {st}")
        })?;
        if n <= 8 {
            let model = flat_model_count(n).map_err(|e| e.to_string())?;
            let chains = flat_model_count_index_sets(n).map_err(|e| e.to_string())?;
            ensure(model == comp && chains == comp, || {
                format!("K_{n}: {comp}, PNT model {model}, index sets {chains}")
            })?;
        }
        let flat_next = kappa_sum(GameId::Flat, n + 1).map_err(|e| e.to_string())?;
        ensure(flat_next == &comp * (n + 1), || {
            format!(
                "kappa_{} = {flat_next}, (n+1) K_n = {}",
                n + 1,
                &comp * (n + 1)
            )
        })?;
    }
    let checks = gf_identities(20).map_err(|e| e.to_string())?;
    for c in &checks {
        ensure(c.holds(), || {
            format!("{} fails at {:?}", c.name, c.mismatch)
        })?;
    }
    Ok(format!(
        "K_n routes agree for n <= 25; {} series identities hold to order 20",
        checks.len()
    ))
}

fn criterion_8() -> Outcome {
    let b = b2_numbers(20);
    for n in 2..=20 {
        let s = b2_via_sum(n).map_err(|e| e.to_string())?;
        let c = b2_via_cnm(n).map_err(|e| e.to_string())?;
        let r = abs_b2_rec(n).map_err(|e| e.to_string())? * rat(sign_pow(n - 1));
        ensure(s == b[n] && c == b[n] && r == b[n], || {
            format!("b_{n}: series {}, sum {s}, c {c}, rec {r}", b[n])
        })?;
    }
    for n in 0..=12 {
        let p = b2_polynomial(n);
        ensure(p.binom_form_expanded() == *p.power(), || {
            format!("binomial form of b_{n}(x) differs")
        })?;
    }
    for x in 1..=5u32 {
        let id = GameId::Polynomial(x);
        for n in 1..=10 {
            let formula = kappa_sum(id, n).map_err(|e| e.to_string())?;
            let series = b2_polynomial_power(n).eval(&rat(-(x as i64)))
                * rat(sign_pow(n) * factorial(n + 1));
            ensure(rat(formula.clone()) == series, || {
                format!("{id} n = {n}: formula {formula}, series {series}")
            })?;
            if n <= 5 {
                let oracle = count_kernels_oracle(&spec(id), n).map_err(|e| e.to_string())?;
                ensure(oracle == formula, || {
                    format!("{id} n = {n}: oracle {oracle}, formula {formula}")
                })?;
            }
        }
    }
    Ok("four b_n routes, binomial basis and polynomial-game identity agree".into())
}

fn criterion_9() -> Outcome {
    let report = conjecture_scan(200).map_err(|e| e.to_string())?;
    let a12 = &report.rows[12].a;
    ensure(*a12 == BigInt::from(-519312), || {
        format!("a_12 anchor broken: {a12}")
    })?;
    let nonpos = report.nonpositive_below_12();
    if !nonpos.is_empty() {
        println!("  finding: a_n <= 0 for n in {nonpos:?}");
    }
    let minus_one_pow_n: Vec<usize> = (12..=200)
        .filter(|&n| report.rows[n].a.is_positive() != (n % 2 == 0))
        .collect();
    if !minus_one_pow_n.is_empty() {
        println!(
            "  finding: sign of a_n differs from (-1)^n at {} of 189 indices in 12..=200 (first {:?})",
            minus_one_pow_n.len(),
            &minus_one_pow_n[..minus_one_pow_n.len().min(3)]
        );
    }
    let breaks = report.sign_breaks();
    if breaks.is_empty() {
        println!("  finding: a_n has sign (-1)^(n-1) for every n in 12..=200");
    } else {
        println!("  finding: sign of a_n differs from (-1)^(n-1) at {breaks:?}");
    }
    let k_fail = report.k_failures();
    if k_fail.is_empty() {
        println!("  finding: n K_(n-1) > K_n for every n in 11..=200");
    } else {
        println!("  finding: n K_(n-1) > K_n fails at {k_fail:?}");
    }
    let kappa_fail = report.kappa_failures();
    if kappa_fail.is_empty() {
        println!("  finding: n kappa_(n-1) > kappa_n for every n in 12..=200");
    } else {
        println!("  finding: n kappa_(n-1) > kappa_n fails at {kappa_fail:?}");
    }
    Ok("scan to 200 reported; a_12 anchor holds".into())
}

fn criterion_10() -> Outcome {
    for n in 0..=8 {
        for p in all_permutations(n) {
            let t = pnt(&p);
            ensure(perm_from_pnt(&t) == p, || {
                format!("PNT round trip fails for {p}")
            })?;
            ensure(lnt(&p) == pnt(&p.inverse()), || {
                format!("lnt/pnt of inverse differ for {p}")
            })?;
        }
    }
    for p in all_permutations(7) {
        let v = pnt(&p);
        let v = v.values();
        for i in 1..=7 {
            for j in i + 1..=7 {
                if p.at(i) < p.at(j) {
                    ensure(v[i - 1] < v[j - 1], || {
                        format!("{p}: pi({i}) < pi({j}) but v_{i} >= v_{j}")
                    })?;
                }
                if (i + 1..=j).all(|k| v[i - 1] < v[k - 1]) {
                    ensure((i + 1..=j).all(|k| p.at(i) < p.at(k)), || {
                        format!("{p}: table order not inherited on {i}..{j}")
                    })?;
                }
            }
        }
    }
    let ids = [
        GameId::Original,
        GameId::Instant,
        GameId::Polynomial(1),
        GameId::Polynomial(2),
        GameId::Polynomial(3),
        GameId::Flat,
        GameId::FlatExceptionFree,
    ];
    for id in ids {
        ensure(check_strongly_bernoulli(&spec(id), 5), || {
            format!("{id} fails the strongly Bernoulli check")
        })?;
    }
    let even = FnGame::new(
        "even-length",
        1,
        |w| w.len() % 2 == 0,
        |_| true,
        |_, _| vec![Letter::one(1)],
        true,
    );
    ensure(!check_strongly_bernoulli(&even, 5), || {
        "even-length move set passed the check".into()
    })?;
    Ok("PNT round trips, PNT order property on S_7, strongly Bernoulli checks".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle-decomposition equivalence", criterion_1),
        ("published values reproduced", criterion_2),
        ("original game vs b_n", criterion_3),
        ("connected permutations", criterion_4),
        ("elevation preimages", criterion_5),
        ("King reduction equivalence", criterion_6),
        ("flat game and K_n", criterion_7),
        ("Bernoulli routes", criterion_8),
        ("sign scan", criterion_9),
        ("property suite", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
