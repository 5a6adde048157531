use germcat::filterprod::*;
use germcat::fincat::builtins::{finset, power, terminal_category, walking_arrow};
use germcat::fincat::{find_equivalence, FiniteCategory, Op};
use proptest::prelude::*;

#[test]
fn singleton_index_is_isomorphic() {
    let c = finset(2);
    let fp = finite_filter_product(&c, 1, &[1]).unwrap();
    let q = &fp.quotient.category;
    assert_eq!(q.arrow_count(), c.arrow_count());
    assert!(fp.quotient.projection.check(&fp.power, q).is_empty());
    assert!(find_equivalence(q, &c).is_some());
}

#[test]
fn principal_on_two_indices() {
    let fp = finite_filter_product(&finset(2), 2, &[0b01, 0b11]).unwrap();
    let eq = find_equivalence(&fp.quotient.category, &finset(2)).unwrap();
    assert!(eq.verify(&fp.quotient.category, &finset(2)));
}

#[test]
fn principal_on_three_indices() {
    let fp = finite_filter_product(&finset(2), 3, &[0b011, 0b111]).unwrap();
    let target = power(&finset(2), 2);
    assert!(find_equivalence(&fp.quotient.category, &target).is_some());
}

#[test]
fn strict_initial_is_required() {
    assert_eq!(strict_initial(&finset(2)), Ok(0));
    assert_eq!(strict_initial(&walking_arrow()), Ok(0));
    let op = FiniteCategory::materialize(&Op(&finset(2)));
    assert!(matches!(finite_filter_product(&op, 1, &[1]), Err(ProductError::NotStrict(_))));
    assert!(finite_filter_product(&terminal_category(), 1, &[1]).is_ok());
    assert!(matches!(finite_filter_product(&finset(2), 2, &[0b01]), Err(ProductError::InvalidFilter(_))));
}

#[test]
fn indicator_subterminals_form_the_powerset() {
    for n in 1..=3 {
        assert!(indicators_match_powerset(&finset(2), n).unwrap());
    }
    assert!(indicators_match_powerset(&finset(1), 2).unwrap());
}

#[test]
fn family_is_pairwise_inequivalent() {
    for k in [1, 5, 40] {
        let fam = inequivalent_family(k);
        assert_eq!(internal_naturals(&fam).class_count(), k as usize);
    }
}

/// Brute force: agree on a long window past every exception.
fn window_oracle(s: &EventualSequence, t: &EventualSequence) -> bool {
    let start = s.exceptions.keys().chain(t.exceptions.keys()).max().map_or(0, |k| k + 1);
    (start..start + 500).all(|n| s.value(n) == t.value(n))
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (0u64..4).prop_map(Generator::Constant),
        (0u64..3).prop_map(|shift| Generator::Identity { shift }),
        (0u64..3).prop_map(|shift| Generator::FloorHalf { shift }),
        Just(Generator::Parity),
    ]
}

fn sequence() -> impl Strategy<Value = EventualSequence> {
    (generator(), prop::collection::btree_map(0u64..20, 0u64..6, 0..5)).prop_map(|(g, exceptions)| EventualSequence { exceptions, ..EventualSequence::new(g) })
}

proptest! {
    #[test]
    fn germ_eq_matches_window_oracle(s in sequence(), t in sequence()) {
        let expected = window_oracle(&s, &t);
        prop_assert_eq!(frechet_germ_eq(&s, &t), if expected { Verdict::Equal } else { Verdict::NotEqual });
        if let Some(n) = s.eventually_agree_from(&t) {
            prop_assert!((n..n + 100).all(|k| s.value(k) == t.value(k)));
            prop_assert!(n == 0 || s.value(n - 1) != t.value(n - 1));
        }
    }

    #[test]
    fn germ_eq_is_an_equivalence(a in sequence(), b in sequence(), c in sequence()) {
        let eq = |x: &EventualSequence, y: &EventualSequence| frechet_germ_eq(x, y) == Verdict::Equal;
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
    }

    #[test]
    fn partition_respects_germ_eq(sample in prop::collection::vec(sequence(), 1..12)) {
        let p = internal_naturals(&sample);
        let mut class = vec![0; sample.len()];
        for (k, members) in p.classes.iter().enumerate() {
            for &i in members {
                class[i] = k;
            }
        }
        for i in 0..sample.len() {
            for j in 0..sample.len() {
                prop_assert_eq!(class[i] == class[j], window_oracle(&sample[i], &sample[j]));
            }
        }
    }

    #[test]
    fn literals_round_trip(s in sequence()) {
        let text = s.to_string();
        prop_assert_eq!(text.parse::<EventualSequence>().unwrap(), s);
    }
}
