//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured time against its budget.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use waring::arith::{frac, rat};
use waring::cli::run;
use waring::dsl::parse;
use waring::identities::{
    appendix_factorization_check, check_f_coefficient, cor4_sides, cor5_sides, f_direct, f_expansion,
    thm1_rhs, thm2_rhs, thm5_spot_check, verify, FVariant, IdentityId, Params,
};
use waring::partitions::{partitions_in_range, partitions_of};
use waring::symfunc::{
    complete_in_power, elementary_in_power, expand, power_in_elementary, power_in_homogeneous, power_poly, Basis,
    Oracle,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verified(id: IdentityId, p: Params) -> Result<(), String> {
    let rep = verify(id, &p).map_err(|e| format!("{id}: {e}"))?;
    ensure(rep.verified(), || format!("{rep}"))
}

fn waring_baseline() -> Outcome {
    for n in 1..=6 {
        let p = power_poly(n, 6);
        ensure(expand(&power_in_elementary(n), 6).unwrap() == p, || format!("p_{n} in e"))?;
        ensure(expand(&power_in_homogeneous(n), 6).unwrap() == p, || format!("p_{n} in h"))?;
    }
    Ok("n = 1..6, N = 6, both bases".into())
}

fn transformed_criterion(ids: [IdentityId; 2]) -> Outcome {
    for k in 1..=4 {
        for id in ids {
            let p = Params {
                k: Some(k),
                vars: Some(6),
                t_order: Some(6),
                ..Params::default()
            };
            verified(id, p)?;
        }
    }
    Ok("k = 1..4, N = 6, t_order = 6".into())
}

fn f_expansions() -> Outcome {
    let direct = f_direct(6, 6, 6);
    let mut count = 0;
    for i in 0..=6 {
        for j in 0..=6 - i {
            let mut oracle = Oracle::new(6);
            let specs: Vec<_> = FVariant::ALL
                .iter()
                .map(|&v| oracle.specialize(&f_expansion(v, i, j)))
                .collect();
            ensure(specs.windows(2).all(|w| w[0] == w[1]), || format!("expansions differ at i={i} j={j}"))?;
            for v in FVariant::ALL {
                let d = check_f_coefficient(&direct, v, i, j).map_err(|e| e.to_string())?;
                ensure(d.is_none(), || format!("{v} i={i} j={j}: {d:?}"))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} coefficients u^i t^j with i+j <= 6, N = 6"))
}

fn cor4_sums() -> Outcome {
    let mut count = 0;
    for i in 1..=5 {
        for j in 1..=5 {
            for mu in partitions_of(j) {
                let (l, r) = cor4_sides(i, j, &mu).map_err(|e| e.to_string())?;
                ensure(l == r, || format!("i={i} j={j} mu={mu}: {l} vs {r}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances"))
}

fn cor5_sums() -> Outcome {
    let mut count = 0;
    for j in 1..=6 {
        for k in 1..=j {
            let (l, r) = cor5_sides(k, j, 6).map_err(|e| e.to_string())?;
            ensure(l == r, || format!("k={k} j={j}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances at N = 6"))
}

fn pochhammer_ratio() -> Outcome {
    let alphas = [rat(1), rat(2), frac(1, 2), frac(-3, 2)];
    let (x, y) = (rat(1), rat(3));
    let (mut series, mut spots, mut skipped) = (0, 0, 0);
    for lambda in partitions_in_range(1, 4) {
        for alpha in &alphas {
            verified(
                IdentityId::Thm5,
                Params {
                    lambda: Some(lambda.clone()),
                    alpha: Some(alpha.clone()),
                    w_order: Some(6),
                    ..Params::default()
                },
            )?;
            series += 1;
            match thm5_spot_check(&lambda, alpha, &x, &y, 6) {
                Ok(s) => {
                    ensure(s.within_bound(), || {
                        format!("lambda={lambda} alpha={alpha}: |{} - {}| > {}", s.truncated, s.exact, s.bound)
                    })?;
                    spots += 1;
                }
                // the expansion in 1/y has radius min 1/|c|; y = 3 lies outside it
                Err(_) => skipped += 1,
            }
        }
    }
    ensure(spots > 0, || "no spot checks ran".into())?;
    Ok(format!(
        "{series} series through w^6; {spots} spot checks at (x,y) = (1,3), {skipped} outside the convergence disc"
    ))
}

fn parts_product() -> Outcome {
    for n in 1..=3 {
        for r in 1..=3 {
            verified(
                IdentityId::Thm6,
                Params {
                    n: Some(n),
                    r: Some(r),
                    vars: Some(3),
                    u_order: Some(4),
                    ..Params::default()
                },
            )?;
        }
    }
    Ok("1 <= n, r <= 3, M = 3, u_order = 4".into())
}

fn appendix() -> Outcome {
    let mut count = 0;
    for mu in partitions_in_range(1, 8) {
        verified(
            IdentityId::AppGenfun,
            Params {
                mu: Some(mu),
                ..Params::default()
            },
        )?;
        count += 1;
    }
    let rep = appendix_factorization_check(3, 2, 2, 2).map_err(|e| e.to_string())?;
    ensure(rep.verified(), || format!("{rep}"))?;
    Ok(format!("{count} partitions; factorization through t^3 q^2 u^2 at M = 2"))
}

fn degeneration() -> Outcome {
    for k in 1..=5 {
        let t0 = |s: waring::symfunc::SymSeries| s.slices[0].clone();
        ensure(t0(thm1_rhs(Basis::Elementary, k, 0).unwrap()) == power_in_elementary(k), || format!("e, k={k}"))?;
        ensure(t0(thm1_rhs(Basis::Complete, k, 0).unwrap()) == power_in_homogeneous(k), || format!("h, k={k}"))?;
        ensure(t0(thm2_rhs(Basis::Complete, k, 0).unwrap()) == complete_in_power(k), || format!("h_k, k={k}"))?;
        ensure(t0(thm2_rhs(Basis::Elementary, k, 0).unwrap()) == elementary_in_power(k), || format!("e_k, k={k}"))?;
    }
    Ok("k = 1..5, all four right sides".into())
}

const CORPUS: &[&str] = &[
    "p[2](X)",
    "e[1,1](X) - 2*e[2](X)",
    "p[3](X/(1-t*X))",
    "h[1](X/(1-t*X)) - p[1](X/(1-t*X))",
    "m[1,1](X) - e[2](X)",
    "p[2](X) - e[1,1](X) + 2*e[2](X)",
    "1/2*p[1,1](X) + 1/2*p[2](X)",
    "-p[1](X)",
    "-(p[1](X) + p[2](X))",
    "(p[1](X) + h[1](X))*e[1](X)",
    "p[1](X)^3",
    "(p[1](X) + 1)^2",
    "-p[1](X)^2",
    "(-p[1](X))^2",
    "3",
    "7/3",
    "p[1](X) - (p[2](X) - p[3](X))",
    "p[1](X) - p[2](X) - p[3](X)",
    "p[1](X)*(p[2](X)*p[3](X))",
    "p[1](X)*-p[2](X)",
    "h[3,2,1](X/(1-t*X))",
    "m[2,1](X/(1-t*X)) + m[3](X)",
    "e[4](X/(1-t*X)) - e[4](X)",
    "2*(h[2](X) - e[2](X))^2",
    "1 - p[1](X) + 1/3*p[1](X)^3",
    "p [ 2 , 1 ] ( X )",
    "e[2](X)\n  - h[2](X)",
    "((m[1](X)))",
    "p[1](X)^2^2",
    "1/6*p[1,1,1](X) + 1/2*p[2,1](X) + 1/3*p[3](X)",
];

fn run_cli(args: &[&str]) -> Result<String, String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("waring").chain(args.iter().copied()), &mut out, &mut err);
    ensure(code == 0, || format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)))?;
    Ok(String::from_utf8(out).unwrap())
}

fn parser_and_goldens() -> Outcome {
    for s in CORPUS {
        let e = parse(s).map_err(|e| format!("{s:?}: {e}"))?;
        let printed = e.to_string();
        ensure(parse(&printed).ok() == Some(e), || format!("{s:?} printed as {printed:?}"))?;
    }
    let goldens: [(&str, &[&str]); 3] = [
        ("thm1_e_k2.json", &["verify", "--id", "thm1_e", "--k", "2", "--t-order", "4", "--vars", "6", "--json"]),
        ("cor4_i3_j4_mu211.json", &["verify", "--id", "cor4", "--i", "3", "--j", "4", "--mu", "2,1,1", "--json"]),
        ("thm5_l21_a2.json", &["verify", "--id", "thm5", "--lambda", "2,1", "--alpha", "2", "--w-order", "5", "--json"]),
    ];
    for (file, args) in goldens {
        let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", file].iter().collect();
        let expected = fs::read_to_string(&path).map_err(|e| format!("{file}: {e}"))?;
        for _ in 0..2 {
            ensure(run_cli(args)? == expected, || format!("{file} differs"))?;
        }
    }
    Ok(format!("{} expressions round-trip; 3 golden reports byte-stable", CORPUS.len()))
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("waring baseline: p_n in e and h", 1, waring_baseline),
        ("thm1: p_k(X/(1-tX)) in e and h", 30, || transformed_criterion([IdentityId::Thm1E, IdentityId::Thm1H])),
        ("thm2: h_k, e_k(X/(1-tX)) in p", 30, || transformed_criterion([IdentityId::Thm2H, IdentityId::Thm2E])),
        ("thm3: three expansions of F(t,u)", 60, f_expansions),
        ("cor4: binomial sums in Q[z]", 5, cor4_sums),
        ("cor5: sum of m_mu with l(mu) = k", 10, cor5_sums),
        ("thm5: (y-x)_lambda/(y)_lambda", 30, pochhammer_ratio),
        ("thm6: product over parts", 60, parts_product),
        ("appendix: <mu/r> product and factorization", 60, appendix),
        ("t = 0 degeneration", 5, degeneration),
        ("parser round-trip and golden reports", 30, parser_and_goldens),
    ];
    // written to the raw handle so the lines show even under output capture
    let mut out = std::io::stdout();
    writeln!(out).unwrap();
    let mut failures = Vec::new();
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let time = format!("{:.2}s, budget {budget}s", elapsed.as_secs_f64());
        match (outcome, over) {
            (Ok(detail), false) => writeln!(out, "PASS {name}: {detail} ({time})").unwrap(),
            (Ok(detail), true) => {
                writeln!(out, "FAIL {name}: {detail} (over budget: {time})").unwrap();
                failures.push(name);
            }
            (Err(msg), _) => {
                writeln!(out, "FAIL {name}: {msg} ({time})").unwrap();
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn rational_alpha_round_trips_through_cli() {
    let out = run_cli(&["verify", "--id", "thm5", "--lambda", "2,1", "--alpha", "-3/2", "--w-order", "4", "--json"]).unwrap();
    assert!(out.contains("\"alpha\": \"-3/2\""));
}
