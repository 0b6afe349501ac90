//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde_json::Value;

use qdescent::arith;
use qdescent::cyclotomic::{factor_rational_prime, CyclotomicNumber, SqrtFiveForm};
use qdescent::f5linalg::F5Subspace;
use qdescent::localization::{class_at_5, class_at_unramified, ClassBasis, UnitClass};
use qdescent::lseries::{self, count_points, is_bad, LOptions, Smoothing};
use qdescent::rootnumber::{root_number_general, root_number_m2};
use qdescent::selmer::{build_context, ks5_coordinates, selmer_compute};

type Outcome = Result<String, String>;

fn five(v: [u8; 6]) -> UnitClass {
    UnitClass::new(ClassBasis::Five, v.to_vec())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn residue_table() -> Outcome {
    let rows: [(&[i64], [u8; 6]); 5] = [
        (&[1, 7, 18, 24], [0; 6]),
        (&[2, 11, 14, 23], [0, 0, 0, 0, 3, 1]),
        (&[3, 4, 21, 22], [0, 0, 0, 0, 1, 2]),
        (&[6, 8, 17, 19], [0, 0, 0, 0, 4, 3]),
        (&[9, 12, 13, 16], [0, 0, 0, 0, 2, 4]),
    ];
    let mut seen = 0;
    for (ns, want) in rows {
        for &n in ns {
            let got = class_at_5(&CyclotomicNumber::from_integer(n)).map_err(|e| e.to_string())?;
            ensure(got == five(want), || format!("n = {n}: got {got}, want {}", five(want)))?;
            seen += 1;
        }
    }
    Ok(format!("{seen} residues match"))
}

fn classes_at_two() -> Outcome {
    let two = &factor_rational_prime(2).map_err(|e| e.to_string())?[0];
    let cls = |x: &CyclotomicNumber| class_at_unramified(x, two).map(|c| c.to_string()).map_err(|e| e.to_string());
    let got = [
        cls(&CyclotomicNumber::zeta())?,
        cls(&CyclotomicNumber::from_ints([1, 1, 0, 0]))?,
        cls(&CyclotomicNumber::from_ints([1, -1, 0, 0]))?,
        cls(&CyclotomicNumber::from_integer(2))?,
    ];
    ensure(got == ["β", "β³", "β³", "α"], || format!("got {got:?}"))?;
    let uf = SqrtFiveForm::u_f().to_cyclotomic();
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..20 {
        let n = 2 * rng.gen_range(-500i64..500) + 1;
        ensure(cls(&CyclotomicNumber::from_integer(n))? == "1", || format!("odd {n} not trivial"))?;
        // a + b u_F with a + b u_F a unit at 2
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(-200i64..200), rng.gen_range(-200i64..200));
            if a % 2 != 0 || b % 2 != 0 {
                break (a, b);
            }
        };
        let x = &CyclotomicNumber::from_integer(a) + &uf.scale(&BigRational::from_integer(b.into()));
        ensure(cls(&x)? == "1", || format!("{a} + {b} u_F not trivial"))?;
    }
    Ok(format!("(z, 1+z, 1-z, 2) -> {got:?}; 40 random samples trivial"))
}

fn i5_fixture() -> Outcome {
    let xs = [
        ("z", CyclotomicNumber::zeta()),
        ("1+z", CyclotomicNumber::from_ints([1, 1, 0, 0])),
        ("2", CyclotomicNumber::from_integer(2)),
        ("1-z", CyclotomicNumber::from_ints([1, -1, 0, 0])),
        ("7", CyclotomicNumber::from_integer(7)),
        ("8", CyclotomicNumber::from_integer(8)),
    ];
    let want = ["βγε", "β²γ⁴δ²ε⁴", "ε³η", "α", "1", "ε⁴η³"];
    let mut bad = Vec::new();
    for ((name, x), w) in xs.iter().zip(want) {
        let got = class_at_5(x).map_err(|e| e.to_string())?.to_string();
        if got != w {
            bad.push(format!("{name}: got {got}, want {w}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("all six classes match".into())
}

fn selmer_dims() -> Outcome {
    let dim = |m: i64| -> Result<usize, String> {
        let ctx = build_context(m).map_err(|e| e.to_string())?;
        Ok(selmer_compute(&ctx).map_err(|e| e.to_string())?.dimension)
    };
    let (d7, d83) = (dim(7)?, dim(83)?);
    ensure(d7 == 2, || format!("m = 7: dim {d7}"))?;
    ensure(d83 == 2, || format!("m = 83: dim {d83}"))?;
    let ctx = build_context(101).map_err(|e| e.to_string())?;
    let r = selmer_compute(&ctx).map_err(|e| e.to_string())?;
    let c = ks5_coordinates(&ctx, &CyclotomicNumber::from_integer(202)).map_err(|e| e.to_string())?;
    let want = F5Subspace::span(&ctx.ambient, [c]).map_err(|e| e.to_string())?;
    ensure(r.dimension == 1 && r.space == want, || format!("m = 101: dim {}, basis {:?}", r.dimension, r.rendered))?;
    let ctx = build_context(87).map_err(|e| e.to_string())?;
    let bs: Vec<u8> = ctx
        .bad_primes
        .iter()
        .filter(|p| p.p == 29)
        .filter_map(|p| p.real_form.as_ref().map(|f| f.b_mod5()))
        .collect();
    let expected = if bs.iter().all(|&b| b != 0) { 2 } else { 4 };
    let d87 = selmer_compute(&ctx).map_err(|e| e.to_string())?.dimension;
    ensure(d87 == expected, || format!("m = 87: dim {d87}, expected {expected} from b residues {bs:?}"))?;
    Ok(format!("7 -> 2, 83 -> 2, 101 -> 1 = <2*101>, 87 -> {d87}"))
}

fn root_numbers() -> Outcome {
    let mut n = 0;
    for m in (1..=9999i64).step_by(2) {
        if m % 5 == 0 || !arith::is_squarefree(m as u64) {
            continue;
        }
        let (a, b) = (root_number_m2(m), root_number_general(m * m));
        ensure(a.is_ok() && a == b, || format!("m = {m}: {a:?} vs {b:?}"))?;
        let plus = [1, 2, 4, 6, 12, 13, 19, 21, 23, 24].contains(&(m % 25));
        ensure(a == Ok(if plus { 1 } else { -1 }), || format!("m = {m}: table row disagrees"))?;
        n += 1;
    }
    Ok(format!("{n} values of m agree"))
}

fn cm_vanishing() -> Outcome {
    let mut n = 0;
    for a in [1i64, 4, 9] {
        for p in arith::primes_up_to(1000) {
            if is_bad(a, p) || p % 5 == 1 {
                continue;
            }
            let n1 = count_points(a, p).map_err(|e| e.to_string())?;
            ensure(n1 == p + 1, || format!("A = {a}, p = {p}: a_p = {}", p as i64 + 1 - n1 as i64))?;
            n += 1;
        }
    }
    Ok(format!("a_p = 0 at {n} (A, p) pairs"))
}

fn fe_suite() -> Outcome {
    let opts = LOptions {
        smoothing: Smoothing {
            t0: 1.2,
            ..Default::default()
        },
        ..Default::default()
    };
    let mut worst = 0.0f64;
    for a in [1i64, 4, 9] {
        let p = lseries::params(a, &opts).map_err(|e| e.to_string())?;
        let c = lseries::coefficients_for(&p, &opts).map_err(|e| e.to_string())?;
        for s in lseries::sample_points() {
            let r = lseries::fe_residual(&p, &c, s, p.root_number).map_err(|e| e.to_string())?;
            ensure(r < 1e-6, || format!("A = {a}, s = {s}: residual {r:.2e} with N = {}, w = {:+}", p.conductor, p.root_number))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("worst residual {worst:.1e}"))
}

fn nonvanishing_anchor() -> Outcome {
    let one = Complex64::new(1.0, 0.0);
    let base = lseries::l_value(1, one, &LOptions::default()).map_err(|e| e.to_string())?;
    let l = base.complex().norm();
    ensure(l > 10.0 * base.error, || format!("|L(1)| = {l:.3e}, error {:.3e}", base.error))?;
    let doubled = LOptions {
        cutoff: Some(2 * base.cutoff),
        ..Default::default()
    };
    let v2 = lseries::l_value(1, one, &doubled).map_err(|e| e.to_string())?;
    let rel = (v2.complex() - base.complex()).norm() / l;
    ensure(rel < 1e-6, || format!("relative change {rel:.2e} under doubling"))?;
    let nine = lseries::l_value(9, one, &LOptions::default()).map_err(|e| e.to_string())?;
    let z = nine.complex().norm();
    ensure(z < 1e-10, || format!("|L(1, J_9)| = {z:.3e}"))?;
    Ok(format!("L(1, J_1) = {:.12} (± {:.1e}, doubling {rel:.1e}); |L(1, J_9)| = {z:.1e}", base.value[0], base.error))
}

fn bsd_101() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_qdescent"))
        .args(["bsd", "101", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let r: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let res = &r["results"];
    ensure(res["status"] == "verified", || format!("status {}", res["status"]))?;
    ensure(res["selmer_dimension"] == 1, || format!("dim {}", res["selmer_dimension"]))?;
    ensure(res["root_number"] == 1, || format!("w {}", res["root_number"]))?;
    ensure(res["criterion"]["verdict"] == "holds", || format!("criterion {}", res["criterion"]))?;
    let claims: Vec<&str> = r["evidence"].as_array().into_iter().flatten().filter_map(|e| e["claim"].as_str()).collect();
    ensure(claims.iter().any(|c| c.contains("Selmer dimension 1")), || format!("{claims:?}"))?;
    Ok(format!("verified; evidence: {}", claims.join("; ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("integer classes at 5 mod 25", residue_table, Duration::from_secs(1)),
        ("classes at 2", classes_at_two, Duration::from_secs(1)),
        ("i5 fixture", i5_fixture, Duration::from_secs(30)),
        ("Selmer dimensions", selmer_dims, Duration::from_secs(30)),
        ("root-number equivalence", root_numbers, Duration::from_secs(5)),
        ("CM vanishing", cm_vanishing, Duration::from_secs(30)),
        ("functional-equation suite", fe_suite, Duration::from_secs(600)),
        ("non-vanishing anchor", nonvanishing_anchor, Duration::from_secs(300)),
        ("BSD verdict for 101", bsd_101, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed();
        let res = match res {
            Ok(msg) if dt > *budget => Err(format!("{msg}; took {dt:.2?}, budget {budget:?}")),
            r => r,
        };
        match res {
            Ok(msg) => println!("PASS {} {name} ({dt:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name} ({dt:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
