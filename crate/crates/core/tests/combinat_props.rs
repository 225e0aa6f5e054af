use k3curves::combinat::{
    blowup_eval, class_of_sequence, cremona, enumerate_admissible, is_pyramidal, young_bijection,
    AdmissibleSequence, BlowupClass, BlowupValue, DEFAULT_MAX_DEPTH,
};
use proptest::prelude::*;

fn admissible() -> impl Strategy<Value = AdmissibleSequence> {
    (1usize..8).prop_flat_map(|a| {
        let all = enumerate_admissible(a);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #[test]
    fn cremona_is_an_involution(d in 0i64..10, alphas in prop::collection::vec(-2i64..6, 3..7)) {
        let c = BlowupClass { d, alphas };
        prop_assert_eq!(cremona(&cremona(&c, 0, 1, 2), 0, 1, 2), c);
    }

    #[test]
    fn cremona_preserves_the_intersection_form(d in 0i64..10, alphas in prop::collection::vec(-2i64..6, 3..7)) {
        let c = BlowupClass { d, alphas };
        let t = cremona(&c, 0, 1, 2);
        let square = |c: &BlowupClass| c.d * c.d - c.alphas.iter().map(|a| a * a).sum::<i64>();
        let canonical = |c: &BlowupClass| -3 * c.d + c.alphas.iter().sum::<i64>();
        prop_assert_eq!(square(&t), square(&c));
        prop_assert_eq!(canonical(&t), canonical(&c));
    }

    #[test]
    fn blowup_value_decides_pyramidality(s in admissible()) {
        let v = blowup_eval(&class_of_sequence(&s), DEFAULT_MAX_DEPTH);
        prop_assert_ne!(v, BlowupValue::Undecided);
        prop_assert_eq!(v == BlowupValue::One, is_pyramidal(&s));
    }
}

#[test]
fn young_bijection_hits_every_pyramidal_sequence_once() {
    for a in 1..=9 {
        let pairs = young_bijection(a);
        let mut seqs: Vec<_> = pairs.iter().map(|(_, s)| s.clone()).collect();
        assert!(seqs.iter().all(is_pyramidal));
        seqs.sort();
        seqs.dedup();
        let pyramidal = enumerate_admissible(a)
            .into_iter()
            .filter(is_pyramidal)
            .count();
        assert_eq!(seqs.len(), pyramidal);
        assert_eq!(pairs.len(), pyramidal);
    }
}

#[test]
fn invalid_sequences_are_rejected() {
    assert!(AdmissibleSequence::new(vec![0, 1]).is_err());
    assert!(AdmissibleSequence::new(vec![0, 2, 0]).is_err());
    assert!(AdmissibleSequence::new(vec![1, 0, 1, 0, 0]).is_err());
    assert!(AdmissibleSequence::new(vec![0, 1, 0]).is_ok());
}
