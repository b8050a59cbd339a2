//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ldrelay::capacity::regime_bound;
use ldrelay::oracle::{check_lemma1, check_lemma2};
use ldrelay::{
    achievable_rate, capacity, compose_gm, compose_gs, construct_scheme, cut_bound, transmit,
    verify_grid, Case, Codebook, Gf2Matrix, NetworkParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let small = verify_grid(2, 16);
    ensure(small.total_points == 243, || format!("[0,2]^5 has {} points", small.total_points))?;
    ensure(small.passed() && small.skipped.is_empty(), || small.to_table())?;
    ensure(small.elapsed < Duration::from_secs(30), || format!("[0,2]^5 took {:?}", small.elapsed))?;

    let full = verify_grid(3, 18);
    ensure(full.total_points == 1024, || format!("[0,3]^5 has {} points", full.total_points))?;
    ensure(full.skipped.is_empty(), || format!("{} points skipped", full.skipped.len()))?;
    ensure(full.passed(), || full.to_table())?;
    Ok(format!(
        "1024 points, 0 mismatches, 0 skipped in {:.1}s ([0,2]^5 in {:.2}s)",
        full.elapsed.as_secs_f64(),
        small.elapsed.as_secs_f64()
    ))
}

fn construction_achievability() -> Outcome {
    let mut n = 0;
    for p in NetworkParams::grid(4) {
        let s = construct_scheme(&p);
        let (rate, cap) = (achievable_rate(&p, &s).unwrap(), capacity(&p).capacity);
        ensure(rate == cap, || format!("{p}: rate {rate} != capacity {cap}"))?;
        ensure(compose_gm(&p, &s).unwrap().is_zero(), || format!("{p}: G_M is nonzero"))?;
        n += 1;
    }
    Ok(format!("{n} points, rate = capacity and G_M = 0 everywhere"))
}

fn codec_round_trip() -> Outcome {
    let mut cases = 0u64;
    for p in NetworkParams::grid(3) {
        let q = p.q();
        let s = construct_scheme(&p);
        let cb = Codebook::build(&compose_gs(&p, &s).unwrap(), &compose_gm(&p, &s).unwrap())
            .map_err(|e| format!("{p}: {e}"))?;
        for mask in 0..1u64 << cb.rate() {
            let msg = Gf2Matrix::column_from_mask(cb.rate(), mask);
            let x_s = cb.encode(&msg).unwrap();
            for xm in 0..1u64 << q {
                let y = transmit(&p, &s, &x_s, &Gf2Matrix::column_from_mask(q, xm)).unwrap();
                let got = cb.decode(&y).map_err(|e| format!("{p}: {e}"))?;
                ensure(got == msg, || format!("{p}: message {mask} disturbed by {xm} misdecoded"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (point, message, disturbance) triples decoded"))
}

fn lemma1() -> Outcome {
    for dim in 1..=4 {
        ensure(check_lemma1(dim), || format!("counterexample at dimension {dim}"))?;
    }
    Ok("subspace pairs of F2^1..F2^4 checked".into())
}

fn lemma2() -> Outcome {
    ensure(check_lemma2(10_000, 8, 8, 2024), || "violation found".into())?;
    Ok("10000 seeded trials up to 8x8, no violation".into())
}

fn remark_m0() -> Outcome {
    let mut n = 0;
    for p in NetworkParams::grid(4).filter(|p| p.m() == 0) {
        let r = capacity(&p);
        if matches!(r.regime.case, Case::Case1 | Case::Case3 | Case::Case6) {
            ensure(r.capacity == cut_bound(&p), || format!("{p}: {} < cut {}", r.capacity, r.cut))?;
            n += 1;
        }
    }
    ensure(n > 0, || "no m = 0 points in Case1/3/6".into())?;
    Ok(format!("{n} points with m = 0 reach the cut bound"))
}

fn symmetry_and_boundaries() -> Outcome {
    let (mut c12, mut c13) = (0, 0);
    for p in NetworkParams::grid(4) {
        let (a, b) = (capacity(&p).capacity, capacity(&p.relabeled()).capacity);
        ensure(a == b, || format!("{p}: {a} vs relabeled {b}"))?;

        let (n1, n2, n3, n4, m) = (p.n1(), p.n2(), p.n3(), p.n4(), p.m());
        if n1 <= n2 {
            continue;
        }
        let value = |case| regime_bound(case, &p).map(|b| b.value());
        if n3 >= n4 && m == n1 {
            ensure(value(Case::Case1) == value(Case::Case2), || format!("{p}: Case1/Case2 disagree"))?;
            c12 += 1;
        }
        if n3 == n4 && m <= n2 {
            ensure(value(Case::Case1) == value(Case::Case3), || format!("{p}: Case1/Case3 disagree"))?;
            c13 += 1;
        }
    }
    Ok(format!("swap invariant on [0,4]^5; {c12} Case1/Case2 and {c13} Case1/Case3 boundary points agree"))
}

fn run_binary(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ldrelay"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("`{}` exited with {}", args.join(" "), out.status))?;
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let commands: [&[&str]; 4] = [
        &["verify", "--max-gain", "2"],
        &["verify", "--max-gain", "2", "--json"],
        &["simulate", "--n1", "3", "--n2", "1", "--n3", "3", "--n4", "2", "--m", "2", "--trials", "500", "--seed", "9"],
        &["simulate", "--n1", "4", "--n2", "3", "--n3", "2", "--n4", "4", "--m", "1", "--seed", "3", "--json"],
    ];
    for args in commands {
        let first = run_binary(args)?;
        let second = run_binary(args)?;
        ensure(first == second, || format!("`{}` output differs between runs", args.join(" ")))?;
    }
    Ok("verify and seeded simulate reports are byte-identical across runs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence on [0,3]^5", oracle_equivalence),
        ("construction achieves capacity on [0,4]^5", construction_achievability),
        ("exhaustive codec round trip on [0,3]^5", codec_round_trip),
        ("unique decomposition iff trivial intersection", lemma1),
        ("rank deficit bounded by differing rows", lemma2),
        ("m = 0 recovers the diamond cut bound", remark_m0),
        ("relay swap symmetry and regime boundaries", symmetry_and_boundaries),
        ("deterministic CLI reports", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "[{tag}] AC{} {name}: {detail} ({:.1}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
