use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use timed_align::oracle::oracle_dn;
use timed_align::{
    align_timestamps, d_n, membership, parse_model, sample_trace, serialize_model, Rational, SequentialProcessModel,
    TimedTrace,
};

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn trace(s: &str) -> TimedTrace {
    s.parse().unwrap()
}

fn model() -> SequentialProcessModel {
    SequentialProcessModel::from_bounds(&[("a", "0", "2"), ("b", "1", "1"), ("c", "0.5", "inf"), ("d", "0", "0")])
        .unwrap()
}

#[test]
fn sampled_traces_are_members() {
    let m = model();
    for seed in 0..1000 {
        let t = sample_trace(&m, seed, &q("10")).unwrap();
        assert!(membership(&m, &t).unwrap(), "seed {seed}: {t}");
        assert_eq!(sample_trace(&m, seed, &q("10")).unwrap(), t);
        let aligned = align_timestamps(&m, &t).unwrap();
        assert!(aligned.distance.is_zero());
    }
}

#[test]
fn zero_distance_only_for_equal_traces() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let a: TimedTrace = (0..n).map(|_| Rational::from_integer(rng.gen_range(-3..=3))).collect();
        let b: TimedTrace = (0..n).map(|_| Rational::from_integer(rng.gen_range(-3..=3))).collect();
        assert_eq!(d_n(&a, &b).unwrap().value.is_zero(), a == b, "{a} vs {b}");
    }
}

#[test]
fn alignment_is_never_beaten_by_a_model_trace() {
    let m = model();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..300 {
        let observed: TimedTrace =
            (0..m.len()).map(|_| Rational::fraction(rng.gen_range(-50..=150), 10).unwrap()).collect();
        let best = align_timestamps(&m, &observed).unwrap().distance;
        let other = sample_trace(&m, seed, &q("5")).unwrap();
        assert!(best <= d_n(&observed, &other).unwrap().value);
    }
}

// Moving the last flow closer to the target's only helps when it stays on the
// same side: with target flows (0, 0) and source flows (1, x), x = 0.5 costs
// more than x = −0.6 because the second error can then cancel the first.
#[test]
fn last_flow_monotonicity_needs_the_same_side() {
    let sigma = trace("0,0");
    let near = trace("1,1.5");
    let far = trace("1,0.4");
    assert_eq!(d_n(&sigma, &near).unwrap().value, q("1.5"));
    assert_eq!(d_n(&sigma, &far).unwrap().value, q("1"));
    assert_eq!(oracle_dn(&sigma, &near).unwrap(), q("1.5"));
    assert_eq!(oracle_dn(&sigma, &far).unwrap(), q("1"));
}

#[test]
fn model_documents_round_trip() {
    let m = model().with_name("four steps");
    let text = serialize_model(&m);
    assert_eq!(parse_model(&text).unwrap(), m);
    assert!(text.contains("\"inf\""));
}
