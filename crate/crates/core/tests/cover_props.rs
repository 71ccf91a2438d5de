mod common;

use common::{consistent_record, erase, CONCRETE};
use polycurve::cover::{
    classify_batch, classify_surface, consistency_report, frozen_examples, Cover, FindingLevel, SurfaceInvariants,
    TensorStatus,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn frozen_examples_reproduce() {
    for (rec, want) in frozen_examples() {
        assert_eq!(classify_surface(&rec).cover, want);
    }
}

#[test]
fn generated_records_get_their_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for cover in CONCRETE {
        for _ in 0..50 {
            let r = consistent_record(&mut rng, cover);
            let v = classify_surface(&r);
            assert_eq!(v.cover, cover, "{r:?}");
            assert!(consistency_report(&r).iter().all(|f| f.level != FindingLevel::Contradiction));
        }
    }
}

#[test]
fn erasure_never_changes_a_concrete_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..5000 {
        let cover = CONCRETE[i % CONCRETE.len()];
        let full = consistent_record(&mut rng, cover);
        let partial = erase(&mut rng, &full, 0.4);
        let v = classify_surface(&partial).cover;
        assert!(v == cover || v == Cover::NoRuleApplies, "{partial:?} gave {v}, full {cover}");
    }
}

#[test]
fn batch_preserves_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let recs: Vec<SurfaceInvariants> = (0..300).map(|i| consistent_record(&mut rng, CONCRETE[i % 7])).collect();
    let out = classify_batch(&recs);
    for (r, v) in recs.iter().zip(&out) {
        assert_eq!(classify_surface(r), *v);
    }
}

fn opt(range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Option<i64>> {
    proptest::option::of(range)
}

fn tensor_status() -> impl Strategy<Value = TensorStatus> {
    prop_oneof![
        Just(TensorStatus::None),
        Just(TensorStatus::SpecialUnique),
        Just(TensorStatus::SpecialNonUnique),
        Just(TensorStatus::SemiSpecialUniqueType),
        Just(TensorStatus::SemiSpecialOther),
        Just(TensorStatus::Unknown),
    ]
}

prop_compose! {
    fn record()(
        k2 in opt(-20..=20), chi in opt(-3..=4), q in opt(0..=4), p_g in opt(0..=4),
        p2 in opt(0..=4), p12 in opt(0..=3), e in opt(-4..=12), h0 in opt(4..=8),
        tensor_status in tensor_status(), kaehler in proptest::option::of(any::<bool>()),
    ) -> SurfaceInvariants {
        SurfaceInvariants { k2, chi, q, p_g, p2, p12, e, h0_omega_mk: h0, tensor_status, kaehler }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn erasing_any_field_is_monotone(r in record(), mask in 0u16..1024) {
        let full = classify_surface(&r);
        let mut p = r.clone();
        let fields: [&mut Option<i64>; 8] =
            [&mut p.k2, &mut p.chi, &mut p.q, &mut p.p_g, &mut p.p2, &mut p.p12, &mut p.e, &mut p.h0_omega_mk];
        for (i, f) in fields.into_iter().enumerate() {
            if mask & (1 << i) != 0 {
                *f = None;
            }
        }
        if mask & 256 != 0 {
            p.tensor_status = TensorStatus::Unknown;
        }
        if mask & 512 != 0 {
            p.kaehler = None;
        }
        let partial = classify_surface(&p);
        if full.cover.is_concrete() {
            prop_assert!(partial.cover == full.cover || partial.cover == Cover::NoRuleApplies);
        }
        if partial.cover.is_concrete() && full.cover.is_concrete() {
            prop_assert_eq!(full.cover, partial.cover);
        }
        // Only a known non-Kähler flag can take a concrete verdict back to NoRuleApplies.
        if partial.cover.is_concrete() && full.cover == Cover::NoRuleApplies {
            prop_assert_eq!(r.kaehler, Some(false));
        }
    }

    #[test]
    fn concrete_verdicts_pass_their_own_report(r in record()) {
        let v = classify_surface(&r);
        if v.cover.is_concrete() {
            prop_assert!(!v.fired_rule.is_empty());
            let f = polycurve::cover::consistency_report_for(&r, Some(v.cover));
            prop_assert!(f.iter().all(|x| x.level != FindingLevel::Contradiction));
        }
    }

    #[test]
    fn json_round_trip(r in record()) {
        let text = serde_json::to_string(&r).unwrap();
        let back: SurfaceInvariants = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
    }
}
