//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Tolerances: every value check is exact rational equality or ordering; the
//! only inexact check is the scaling criterion, which compares wall-clock
//! times against fixed bounds (10^6 events under 10 s, 10^6/10^5 time ratio
//! within [5, 20]).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use timed_align::oracle::{oracle_align, oracle_dn, random_aligning_run};
use timed_align::{
    align, align_timestamps, apply_run, d_n, d_t, d_theta, is_chronological, is_cooperative, is_cross_cooperative,
    is_reverse_chronological, is_stable, net_effect, to_chronological, to_cooperative, to_cross_cooperative,
    LabeledTrace, MixedMove, MoveSequence, Rational, SequentialProcessModel, TimeInterval, TimedTrace, Transition,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn trace(s: &str) -> TimedTrace {
    s.parse().unwrap()
}

fn rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    const DENOMS: [i64; 7] = [1, 2, 3, 4, 5, 6, 10];
    let den = DENOMS[rng.gen_range(0..DENOMS.len())];
    Rational::fraction(rng.gen_range(-span * den..=span * den), den).unwrap()
}

fn random_trace(rng: &mut ChaCha8Rng, n: usize) -> TimedTrace {
    (0..n).map(|_| rational(rng, 10)).collect()
}

fn random_pair(rng: &mut ChaCha8Rng, max_len: usize) -> (TimedTrace, TimedTrace) {
    let n = rng.gen_range(1..=max_len);
    (random_trace(rng, n), random_trace(rng, n))
}

fn random_run(rng: &mut ChaCha8Rng, n: usize, len: usize) -> MoveSequence {
    (0..len).map(|_| MixedMove::new(rational(rng, 5), rational(rng, 5), rng.gen_range(1..=n))).collect()
}

fn random_model(rng: &mut ChaCha8Rng, n: usize) -> SequentialProcessModel {
    let transitions = (0..n)
        .map(|k| {
            let eft = rational(rng, 5).abs();
            let lft = if rng.gen_bool(0.2) { None } else { Some(&eft + &rational(rng, 4).abs()) };
            Transition { label: format!("t{k}"), interval: TimeInterval::new(eft, lft).unwrap() }
        })
        .collect();
    SequentialProcessModel::new(transitions).unwrap()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn golden_values() -> Outcome {
    let (a, b) = (trace("0,3,4"), trace("0.5,2.5,3.5"));
    let got = [d_t(&a, &b), d_theta(&a, &b), d_n(&a, &b)].map(|r| r.unwrap().value);
    check(got == [q("1.5"), q("1.5"), q("1")], || format!("(0,3,4) vs (0.5,2.5,3.5): {got:?}"))?;

    let model = SequentialProcessModel::from_bounds(&[("d", "0", "1"), ("e", "2", "2"), ("f", "1", "1")]).unwrap();
    let case = LabeledTrace::from_pairs("c", &[("d", "3"), ("e", "4"), ("f", "5")]).unwrap();
    let aligned = align(&model, &case).unwrap();
    check(aligned.aligned == trace("1,3,4") && aligned.distance == q("2"), || {
        format!("alignment gave {} at {}", aligned.aligned, aligned.distance)
    })?;
    let (s, g) = (trace("3,4,5"), aligned.aligned);
    let got = [d_t(&s, &g), d_theta(&s, &g), d_n(&s, &g)].map(|r| r.unwrap().value);
    check(got == [q("4"), q("3"), q("2")], || format!("(3,4,5) vs (1,3,4): {got:?}"))?;

    let got = d_n(&trace("1,1,2,4,5"), &trace("1,2,2.5,4.2,5")).unwrap().value;
    check(got == q("1.5"), || format!("(1,1,2,4,5) vs (1,2,2.5,4.2,5): {got}"))?;
    Ok("all seven values exact".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..1000 {
        let (a, b) = random_pair(&mut rng, 6);
        let (fast, slow) = (d_n(&a, &b).unwrap().value, oracle_dn(&a, &b).unwrap());
        check(fast == slow, || format!("pair {k}: d_N({a}; {b}) = {fast}, oracle {slow}"))?;
    }
    for k in 0..200 {
        let n = rng.gen_range(1..=6);
        let model = random_model(&mut rng, n);
        let observed = random_trace(&mut rng, n);
        // keep the candidate product small for long traces
        let samples = if n <= 3 { 3 } else { 1 };
        let fast = align_timestamps(&model, &observed).unwrap().distance;
        let slow = oracle_align(&model, &observed, samples, k).unwrap();
        check(fast == slow, || format!("instance {k}: align {fast}, oracle {slow}"))?;
    }
    Ok("1000 distance pairs and 200 alignment instances agree".into())
}

fn witness_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..1000 {
        let (a, b) = random_pair(&mut rng, 40);
        let r = d_n(&a, &b).unwrap();
        let w = &r.witness;
        check(apply_run(&a, w).unwrap() == b, || format!("instance {k}: witness does not replay"))?;
        check(w.cost() == r.value, || format!("instance {k}: cost {} vs value {}", w.cost(), r.value))?;
        check(is_reverse_chronological(w, a.len()), || format!("instance {k}: not reverse chronological"))?;
        check(is_cooperative(w), || format!("instance {k}: not co-operative"))?;
        check(is_cross_cooperative(w), || format!("instance {k}: not cross co-operative"))?;
        check(is_stable(w, &a, &b).unwrap(), || format!("instance {k}: not stable"))?;
    }
    Ok("1000 witnesses replay, match cost and pass all four shape checks".into())
}

fn run_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..1000 {
        let n = rng.gen_range(1..=12);
        let len = rng.gen_range(0..=3 * n);
        let run = random_run(&mut rng, n, len);
        let effect = net_effect(&run, n).unwrap();

        let chrono = to_chronological(&run, n).unwrap();
        check(is_chronological(&chrono, n), || format!("run {k}: to_chronological output not chronological"))?;
        check(net_effect(&chrono, n).unwrap() == effect, || format!("run {k}: to_chronological changed the effect"))?;
        check(chrono.cost() <= run.cost(), || format!("run {k}: to_chronological raised the cost"))?;

        let coop = to_cooperative(&chrono).unwrap();
        check(is_cooperative(&coop), || format!("run {k}: to_cooperative output not co-operative"))?;
        check(net_effect(&coop, n).unwrap() == effect, || format!("run {k}: to_cooperative changed the effect"))?;
        check(coop.cost() <= chrono.cost(), || format!("run {k}: to_cooperative raised the cost"))?;

        let source = random_trace(&mut rng, n);
        let reverse = coop.reversed();
        let target = apply_run(&source, &reverse).unwrap();
        let cross = to_cross_cooperative(&reverse, &source, &target).unwrap();
        check(is_cross_cooperative(&cross), || format!("run {k}: to_cross_cooperative output not cross co-operative"))?;
        check(net_effect(&cross, n).unwrap() == effect, || {
            format!("run {k}: to_cross_cooperative changed the effect")
        })?;
        check(cross.cost() <= reverse.cost(), || format!("run {k}: to_cross_cooperative raised the cost"))?;

        let best = d_n(&source, &target).unwrap().value;
        check(cross.cost() >= best, || format!("run {k}: normalized run beats d_N"))?;
        let random = random_aligning_run(&source, &target, k).unwrap();
        check(apply_run(&source, &random).unwrap() == target, || format!("run {k}: random run does not align"))?;
        check(random.cost() >= best, || format!("run {k}: random aligning run cheaper than d_N"))?;
    }

    // Last-flow monotonicity: σ fixed, γ^x and γ^y share all but the last
    // timestamp, and γ^x's last flow lies between σ's last flow and γ^y's.
    for k in 0..500 {
        let n = rng.gen_range(1..=10);
        let sigma = random_trace(&mut rng, n);
        let prefix = random_trace(&mut rng, n - 1);
        let base = prefix.timestamps().last().cloned().unwrap_or_default();
        let sigma_flow = sigma.flow().flows()[n - 1].clone();
        let y = rational(&mut rng, 10);
        let lambda = Rational::fraction(rng.gen_range(0..=12), 12).unwrap();
        let x = &sigma_flow + &(&y - &sigma_flow) * &lambda;
        let with_last = |flow: &Rational| {
            let mut ts = prefix.timestamps().to_vec();
            ts.push(&base + flow);
            TimedTrace::new(ts)
        };
        let (dx, dy) = (d_n(&sigma, &with_last(&x)).unwrap().value, d_n(&sigma, &with_last(&y)).unwrap().value);
        check(dx <= dy, || format!("triple {k}: d_N(σ, γ^x) = {dx} > d_N(σ, γ^y) = {dy}"))?;
    }
    Ok("1000 runs normalized without effect change or cost increase; 500 monotonicity triples hold".into())
}

fn metric_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..500 {
        let n = rng.gen_range(1..=20);
        let (a, b, c) = (random_trace(&mut rng, n), random_trace(&mut rng, n), random_trace(&mut rng, n));
        let d = |x: &TimedTrace, y: &TimedTrace| d_n(x, y).unwrap().value;
        check(d(&a, &b) == d(&b, &a), || format!("triple {k}: asymmetric"))?;
        check(d(&a, &c) <= d(&a, &b) + d(&b, &c), || format!("triple {k}: triangle inequality fails"))?;
        check(d(&a, &a).is_zero(), || format!("triple {k}: d_N(a, a) ≠ 0"))?;
    }
    for k in 0..1000 {
        let (a, b) = random_pair(&mut rng, 20);
        let mixed = d_n(&a, &b).unwrap().value;
        let bound = d_t(&a, &b).unwrap().value.min(d_theta(&a, &b).unwrap().value);
        check(mixed <= bound, || format!("pair {k}: d_N = {mixed} > min(d_t, d_θ) = {bound}"))?;
    }
    Ok("500 triples symmetric and triangular; 1000 pairs dominated".into())
}

fn timed_d_n(n: usize, repeats: usize) -> Duration {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let a: TimedTrace = (0..n).map(|_| Rational::fraction(rng.gen_range(0..100_000), 100).unwrap()).collect();
    let b: TimedTrace = (0..n).map(|_| Rational::fraction(rng.gen_range(0..100_000), 100).unwrap()).collect();
    (0..repeats)
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(d_n(&a, &b).unwrap());
            start.elapsed()
        })
        .min()
        .unwrap()
}

fn scaling() -> Outcome {
    let small = timed_d_n(100_000, 5);
    let large = timed_d_n(1_000_000, 3);
    let ratio = large.as_secs_f64() / small.as_secs_f64();
    let summary = format!("10^5: {small:.3?}, 10^6: {large:.3?}, ratio {ratio:.2}");
    check(large < Duration::from_secs(10), || format!("{summary}; 10^6 exceeds 10 s"))?;
    check((5.0..=20.0).contains(&ratio), || format!("{summary}; ratio outside [5, 20]"))?;
    Ok(summary)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("golden values", golden_values),
        ("oracle equivalence", oracle_equivalence),
        ("witness suite", witness_suite),
        ("run properties", run_properties),
        ("metric checks", metric_checks),
        ("scaling", scaling),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let start = Instant::now();
        match criterion() {
            Ok(detail) => println!("PASS {name}: {detail} ({:.2?})", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
