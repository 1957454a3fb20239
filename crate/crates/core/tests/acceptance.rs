//! Acceptance suite. Runs every criterion at its pinned tolerance and time
//! budget, prints one PASS/FAIL line each, and exits nonzero on any failure.

mod common;

use std::time::{Duration, Instant};

use hdrelay::shift::log2_count;
use hdrelay::{
    baseline_rate, build_encoder, capacity, count_words, decode, encode, end_to_end,
    enumerate_words_with_cap, simulate, table_report, verify_delivery, Error, Symbol,
    TreeTopology, Word,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn capacity_values() -> Outcome {
    let c1 = capacity(1).map_err(|e| e.to_string())?;
    let c6 = capacity(6).map_err(|e| e.to_string())?;
    let c2 = capacity(2).map_err(|e| e.to_string())?;
    ensure((c1 - 0.694242).abs() <= 1e-6, || format!("C(1) = {c1}"))?;
    ensure((c6 - 1.584963).abs() <= 1e-6, || format!("C(6) = {c6}"))?;
    ensure((c2 - 1.0).abs() <= 1e-12, || format!("C(2) = {c2}"))?;
    Ok(format!("C(1)={c1:.7} C(6)={c6:.7} C(2)={c2}"))
}

fn counting_oracle() -> Outcome {
    for q in 1..=3 {
        for n in 0..=12 {
            let brute = enumerate_words_with_cap(q, n, 1 << 25).map_err(|e| e.to_string())?;
            let count = count_words(q, n).map_err(|e| e.to_string())?;
            ensure(BigUint::from(brute.len()) == count, || {
                format!("q={q} n={n}: enumeration {} vs count {count}", brute.len())
            })?;
        }
    }
    let fib: Vec<BigUint> = (0..8).map(|n| count_words(1, n).unwrap()).collect();
    let expected: Vec<BigUint> = [1u32, 2, 3, 5, 8, 13, 21, 34].map(BigUint::from).to_vec();
    ensure(fib == expected, || format!("q=1 sequence {fib:?}"))?;
    Ok("q in {1,2,3}, n <= 12 agree; q=1 gives 1,2,3,5,8,13,...".into())
}

fn capacity_convergence() -> Outcome {
    let mut notes = Vec::new();
    for q in [1, 2, 6] {
        let c = capacity(q).unwrap();
        let gap = |n: usize| (log2_count(&count_words(q, n).unwrap()) / n as f64 - c).abs();
        let (g30, g60) = (gap(30), gap(60));
        ensure(g30 <= 0.02, || format!("q={q}: gap at 30 is {g30}"))?;
        ensure(g60 < g30, || format!("q={q}: gap at 60 ({g60}) not below gap at 30 ({g30})"))?;
        notes.push(format!("q={q}: {g30:.4} -> {g60:.4}"));
    }
    Ok(notes.join(", "))
}

fn encoder_synthesis() -> Outcome {
    let mut notes = Vec::new();
    for (q, p, n, floor) in [(1, 2, 3, 0.96), (6, 3, 2, 0.94)] {
        let t = Instant::now();
        let e = build_encoder(q, p, n).map_err(|e| format!("({q},{p},{n}): {e}"))?;
        let elapsed = t.elapsed();
        ensure(elapsed < Duration::from_secs(1), || format!("({q},{p},{n}) took {elapsed:?}"))?;
        let r = e.report();
        ensure(r.efficiency > floor, || format!("({q},{p},{n}) efficiency {}", r.efficiency))?;
        notes.push(format!("({q},{p},{n}) eff {:.4} with {} states", r.efficiency, r.states));
    }
    ensure(matches!(build_encoder(1, 1, 1), Err(Error::InfeasibleRate(_))), || {
        "(1,1,1) did not fail with infeasible rate".into()
    })?;
    notes.push("(1,1,1) infeasible".into());
    Ok(notes.join(", "))
}

fn roundtrip_property() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (q, p, n) in [(1, 2, 3), (6, 3, 2)] {
        let e = build_encoder(q, p, n).map_err(|e| e.to_string())?;
        for i in 0..1000 {
            let len = rng.gen_range(0..=4096);
            let msg = common::random_bits(&mut rng, len);
            let (w, h) = encode(&e, &msg);
            ensure(w.is_admissible(), || format!("({q},{p},{n}) message {i}: inadmissible output"))?;
            let back = decode(&e, &w, &h).map_err(|err| format!("({q},{p},{n}) message {i}: {err}"))?;
            ensure(back == msg, || format!("({q},{p},{n}) message {i}: roundtrip mismatch"))?;
        }
    }
    Ok("1000 messages per encoder".into())
}

fn protocol_theorem() -> Outcome {
    let chain = TreeTopology::chain(3);
    let mut patterns = 0;
    for len in 0..=10usize {
        for mask in 0u32..(1 << len) {
            let w = Word::new(
                (0..len)
                    .map(|i| if mask >> i & 1 == 1 { Symbol::Data(0) } else { Symbol::Silence })
                    .collect(),
            );
            let clean = simulate(&chain, &w, 3).violations().is_empty();
            ensure(clean == common::scan_admissible(&w), || format!("q=1 stream `{w}`"))?;
            patterns += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for q in [2, 6] {
        for _ in 0..500 {
            let len = rng.gen_range(0..=24);
            let w = common::random_stream(&mut rng, q, len, 0.3);
            let clean = simulate(&chain, &w, 3).violations().is_empty();
            ensure(clean == common::scan_admissible(&w), || format!("q={q} stream `{w}`"))?;
        }
    }
    Ok(format!("{patterns} exhaustive q=1 streams, 500 random each for q=2,6"))
}

fn delivery_law() -> Outcome {
    let topo = common::load_tree("chain11.txt");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [1, 2, 6] {
        let w = common::random_admissible(&mut rng, q, 10_000, 0.5);
        let trace = simulate(&topo, &w, topo.max_depth());
        let report = verify_delivery(&trace, &topo, &w);
        ensure(report.nodes.len() == 12, || "expected 12 nodes".into())?;
        ensure(report.violations == 0, || format!("q={q}: {} violations", report.violations))?;
        ensure(report.all_passed(), || format!("q={q}: {} nodes failed", report.failures()))?;
    }
    Ok("depth-11 chain, 10^4-slot streams for q=1,2,6".into())
}

fn end_to_end_broadcast() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fig1 = common::load_tree("fig1_tree.txt");
    ensure(fig1.len() == 13 && fig1.max_depth() == 3, || "fig1 tree shape".into())?;
    let msg = common::random_bits(&mut rng, 1000);
    let r = end_to_end(1, 2, 3, &fig1, &msg).map_err(|e| e.to_string())?;
    ensure(r.all_recovered() && r.nodes.len() == 13, || "fig1 tree: not all nodes recovered".into())?;
    ensure(r.rate == 2.0 / 3.0 && r.rate > 0.5 && r.baseline == 0.5, || format!("rates {r:?}"))?;

    let chain = common::load_tree("chain5.txt");
    let msg = common::random_bits(&mut rng, 999);
    let r6 = end_to_end(6, 3, 2, &chain, &msg).map_err(|e| e.to_string())?;
    ensure(r6.all_recovered(), || "depth-5 chain: not all nodes recovered".into())?;
    ensure((r6.baseline - 1.4036).abs() < 1e-4 && r6.rate > r6.baseline, || {
        format!("rate {} baseline {}", r6.rate, r6.baseline)
    })?;
    Ok(format!(
        "13/13 nodes at 2/3 > 0.5; {}/{} nodes at 1.5 > {:.4}",
        r6.nodes.len(),
        r6.nodes.len(),
        r6.baseline
    ))
}

fn table_reproduction() -> Outcome {
    let published = [(89.82, 64.70), (94.79, 68.27), (97.80, 70.43), (99.44, 71.62), (100.0, 72.02)];
    let rows = table_report(1).map_err(|e| e.to_string())?;
    ensure(rows.len() == 5, || "expected five rows".into())?;
    let mut worst = 0.0f64;
    for (row, (cc, sf)) in rows.iter().zip(published) {
        let dc = (row.constrained_pct - cc).abs();
        let ds = (row.store_forward_pct - sf).abs();
        worst = worst.max(dc).max(ds);
        ensure(dc <= 0.05 && ds <= 0.05, || {
            format!("D={}: {:.4}/{:.4} vs {cc}/{sf}", row.depth, row.constrained_pct, row.store_forward_pct)
        })?;
    }
    let b = baseline_rate(1).map_err(|e| e.to_string())?;
    ensure(b == 0.5, || format!("baseline {b}"))?;
    Ok(format!("max deviation {worst:.4} pp, baseline 0.5"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("1 capacity values", capacity_values, Duration::from_millis(100)),
        ("2 counting oracle equivalence", counting_oracle, Duration::from_secs(5)),
        ("3 capacity convergence", capacity_convergence, Duration::from_secs(1)),
        ("4 encoder synthesis", encoder_synthesis, Duration::from_secs(2)),
        ("5 roundtrip property", roundtrip_property, Duration::from_secs(30)),
        ("6 protocol theorem", protocol_theorem, Duration::from_secs(60)),
        ("7 delivery law", delivery_law, Duration::from_secs(10)),
        ("8 end-to-end broadcast", end_to_end_broadcast, Duration::from_secs(5)),
        ("9 table reproduction", table_reproduction, Duration::from_millis(100)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|note| {
            if elapsed <= budget {
                Ok(note)
            } else {
                Err(format!("took {elapsed:?}, budget {budget:?}"))
            }
        });
        match result {
            Ok(note) => println!("PASS  criterion {name} ({elapsed:.2?}): {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
