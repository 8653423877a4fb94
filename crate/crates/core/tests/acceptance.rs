//! The ten acceptance criteria, each timed against its limit. Prints one
//! PASS/FAIL line per criterion; the test fails if any criterion does.

use std::time::{Duration, Instant};

use abelian_ideals::equations::{determinant, pfaffian, SymbolicMatrix};
use abelian_ideals::exactnum::{int, rat, Cyclotomic, Field, Rational};
use abelian_ideals::heisenberg::{lift, HeisenbergElement};
use abelian_ideals::polyring::{distance, Monomial, Polynomial, Variable};
use abelian_ideals::report::{run_suite, Report, Suite, SuiteConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

type Outcome = Result<(), String>;

fn suite(s: Suite, cfg: SuiteConfig) -> std::result::Result<Report, String> {
    let label = format!("{s} {:?}", (cfg.n, cfg.d, &cfg.family, &cfg.case));
    let r = run_suite(s, &cfg).map_err(|e| format!("{label}: {e}"))?;
    if !r.verified() {
        let failed: Vec<&str> =
            r.claims.iter().filter(|c| c.status != abelian_ideals::report::Status::Verified).map(|c| c.claim.as_str()).collect();
        return Err(format!("{label}: failed claims {failed:?}"));
    }
    Ok(r)
}

fn cfg() -> SuiteConfig {
    SuiteConfig { seed: SEED, ..SuiteConfig::default() }
}

fn fam(f: &str) -> Option<String> {
    Some(f.to_string())
}

fn simplicial() -> Outcome {
    for n in 7..=13 {
        suite(Suite::Complex, SuiteConfig { n: Some(n), family: fam("delta"), ..cfg() })?;
    }
    for n in 5..=14 {
        suite(Suite::Complex, SuiteConfig { n: Some(n), family: fam("cyclic"), dim: Some(4), ..cfg() })?;
    }
    Ok(())
}

fn stanley_reisner() -> Outcome {
    // Γ_{m+1} for m = 4..12.
    for n in 5..=13 {
        suite(Suite::Ideal, SuiteConfig { n: Some(n), family: fam("gamma"), ..cfg() })?;
    }
    for n in 6..=14 {
        suite(Suite::Ideal, SuiteConfig { n: Some(n), family: fam("cyclic"), ..cfg() })?;
    }
    for n in 10..=14 {
        suite(Suite::Ideal, SuiteConfig { n: Some(n), family: fam("torus"), ..cfg() })?;
    }
    Ok(())
}

fn betti() -> Outcome {
    for n in 5..=9 {
        suite(Suite::Betti, SuiteConfig { n: Some(n), family: fam("gamma"), ..cfg() })?;
    }
    for n in 6..=9 {
        suite(Suite::Betti, SuiteConfig { n: Some(n), family: fam("cyclic"), ..cfg() })?;
    }
    Ok(())
}

fn scroll() -> Outcome {
    for n in 10..=13 {
        let r = suite(
            Suite::Scroll,
            SuiteConfig { n: Some(n), lambdas: vec![int(1), int(2), int(-1)], k_max: Some(4), ..cfg() },
        )?;
        let cubic_claims = r.claims.iter().filter(|c| c.claim.contains("extra cubics")).count();
        if (10..=12).contains(&n) && cubic_claims != 3 {
            return Err(format!("n = {n}: expected cubic certificates for three lambdas"));
        }
    }
    Ok(())
}

fn secant_exact() -> Outcome {
    for n in 7..=12 {
        suite(Suite::SecantExact, SuiteConfig { n: Some(n), ..cfg() })?;
    }
    Ok(())
}

fn abelian_exact() -> Outcome {
    for d in 5..=8 {
        let r = suite(Suite::AbelianExact, SuiteConfig { d: Some(d), ..cfg() })?;
        let expected = if d <= 7 { 5 } else { 4 };
        if r.claims.len() != expected {
            return Err(format!("d = {d}: {} claims, expected {expected}", r.claims.len()));
        }
    }
    Ok(())
}

fn klein() -> Outcome {
    suite(Suite::Klein, cfg()).map(|_| ())
}

fn theta_rank() -> Outcome {
    let cases: [(&str, &[u32]); 4] =
        [("elliptic-even", &[3, 4, 5, 6, 7]), ("elliptic-odd", &[2, 3]), ("surface-even", &[6]), ("surface-odd", &[5])];
    for (case, ds) in cases {
        for &d in ds {
            let r = suite(
                Suite::ThetaRank,
                SuiteConfig { d: Some(d), case: fam(case), samples: Some(20), rank_tol: 1e-6, ..cfg() },
            )?;
            if r.samples != 20 || r.max_residual >= 1e-6 {
                return Err(format!("{case} d = {d}: gap {}", r.max_residual));
            }
        }
    }
    Ok(())
}

fn theta_vanishing() -> Outcome {
    for n in 4..=7 {
        let r = suite(Suite::ThetaSecant, SuiteConfig { n: Some(n), samples: Some(20), ..cfg() })?;
        let find = |needle: &str| r.claims.iter().find(|c| c.claim.contains(needle));
        let needles: &[&str] = match n {
            4 => &["both quartics", "Fermat-type"],
            5 => &["quintic"],
            6 => &["pencil"],
            _ => &["6x6 pfaffians", "septic"],
        };
        for needle in needles {
            let c = find(needle).ok_or_else(|| format!("n = {n}: no claim about {needle}"))?;
            if let Some(s) = c.witness.get("samples") {
                let want = if *needle == "septic" { 10 } else { 20 };
                if s != want {
                    return Err(format!("n = {n}: {needle} used {s} samples"));
                }
            }
            if let Some(t) = c.witness.get("threshold") {
                let want = if n == 4 { 1e-8 } else { 1e-6 };
                if t.as_f64() != Some(want) {
                    return Err(format!("n = {n}: {needle} threshold {t}"));
                }
            }
        }
    }
    Ok(())
}

fn random_cyclotomic(rng: &mut ChaCha8Rng) -> Cyclotomic {
    let order = [1u32, 3, 4, 5, 7, 8, 12][rng.gen_range(0..7)];
    let coeffs = (0..rng.gen_range(1..8)).map(|_| rat(rng.gen_range(-9..10), rng.gen_range(1..5))).collect();
    Cyclotomic::new(order, coeffs).unwrap()
}

fn infrastructure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..200 {
        let (a, b, c) = (random_cyclotomic(&mut rng), random_cyclotomic(&mut rng), random_cyclotomic(&mut rng));
        let ok = a.add(&b) == b.add(&a)
            && a.mul(&b) == b.mul(&a)
            && a.add(&b).add(&c) == a.add(&b.add(&c))
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && (a.is_zero() || a.mul(&a.inv().unwrap()).is_one());
        if !ok {
            return Err(format!("cyclotomic axioms fail at {a}, {b}, {c}"));
        }
    }
    for m in 1..=30u32 {
        let mi = m as i64;
        for a in 0..mi {
            for b in 0..mi {
                let dab = distance(a, b, m);
                if dab != distance(b, a, m) || (dab == 0) != (a == b) {
                    return Err(format!("distance axioms fail at m = {m}"));
                }
                if (0..mi).any(|c| distance(a, c, m) > dab + distance(b, c, m)) {
                    return Err(format!("triangle inequality fails at m = {m}"));
                }
            }
        }
    }
    for n in 3..=9u32 {
        let element = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(0..n as i64);
            HeisenbergElement::new(n, Cyclotomic::root_of_unity(n, k), rng.gen_range(0..n as i64), rng.gen_range(0..n as i64), rng.gen())
        };
        for _ in 0..10 {
            let (g, h) = (element(&mut rng), element(&mut rng));
            let p: Polynomial<Rational> = Polynomial::from_terms((0..4).map(|_| {
                let m = Monomial::from_vars((0..2).map(|_| Variable::x(rng.gen_range(0..n as i64), n)));
                (int(rng.gen_range(-5..6)), m)
            }));
            let p = lift(&p);
            let gh = g.compose(&h).unwrap();
            if gh.act(&p) != g.act(&h.act(&p)) {
                return Err(format!("representation property fails for n = {n}"));
            }
        }
        let i = HeisenbergElement::iota(n);
        let (s, t) = (HeisenbergElement::sigma(n), HeisenbergElement::tau(n));
        if i.compose(&s).unwrap().compose(&i).unwrap() != s.inverse() || i.compose(&t).unwrap().compose(&i).unwrap() != t.inverse() {
            return Err(format!("iota conjugation fails for n = {n}"));
        }
    }
    for size in [2usize, 4, 6, 8] {
        for _ in 0..5 {
            let vals: Vec<i64> = (0..size * size).map(|_| rng.gen_range(-5..6)).collect();
            let m = SymbolicMatrix::from_fn(size, size, "random skew", |i, j| {
                let e = &Polynomial::constant(int(vals[i.min(j) * size + i.max(j)]))
                    + &Polynomial::var(Variable::x((i + j) as i64, 16));
                match i.cmp(&j) {
                    std::cmp::Ordering::Less => e,
                    std::cmp::Ordering::Greater => -e,
                    std::cmp::Ordering::Equal => Polynomial::zero(),
                }
            });
            let pf = pfaffian(&m).unwrap();
            if &pf * &pf != determinant(&m).unwrap() {
                return Err(format!("pf^2 != det for a {size}x{size} matrix"));
            }
        }
    }
    let runs = [
        (Suite::ThetaRank, SuiteConfig { d: Some(4), case: fam("surface-even"), samples: Some(5), ..cfg() }),
        (Suite::ThetaSecant, SuiteConfig { n: Some(7), samples: Some(5), ..cfg() }),
        (Suite::Scroll, SuiteConfig { n: Some(10), k_max: Some(2), ..cfg() }),
    ];
    for (s, c) in runs {
        let a = run_suite(s, &c).map_err(|e| e.to_string())?.to_json();
        let b = run_suite(s, &c).map_err(|e| e.to_string())?.to_json();
        if a != b {
            return Err(format!("{s} reports differ under a fixed seed"));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("simplicial suite", 5, simplicial),
        ("Stanley-Reisner generators", 5, stanley_reisner),
        ("Betti tables", 60, betti),
        ("scroll family", 120, scroll),
        ("secant ideals at special points", 60, secant_exact),
        ("abelian quadrics, exact", 300, abelian_exact),
        ("Klein quartic and septic, symbolic", 10, klein),
        ("theta rank suites", 120, theta_rank),
        ("theta vanishing suites", 120, theta_vanishing),
        ("infrastructure properties", 30, infrastructure),
    ];
    let mut failures = Vec::new();
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let pass = outcome.is_ok() && in_time;
        let detail = match (&outcome, in_time) {
            (Err(e), _) => format!(": {e}"),
            (Ok(()), false) => ": over the time limit".to_string(),
            _ => String::new(),
        };
        println!(
            "criterion {:>2} {} [{:.2} s / {} s] {name}{detail}",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit
        );
        if !pass {
            failures.push(k + 1);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
