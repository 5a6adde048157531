use germcat::filtquot::*;
use germcat::fincat::builtins::{finset, finset_arrows, power, power_object};
use germcat::fincat::*;

fn square() -> FiniteCategory {
    power(&finset(2), 2)
}

fn principal(c: &FiniteCategory, name: &str) -> (SubterminalPoset, Filter) {
    let st = subterminal_poset(c);
    let e = st.element_of(c.find_object(name).unwrap()).unwrap();
    let f = Filter::principal(&st.poset, e);
    (st, f)
}

fn trivial(c: &FiniteCategory) -> (SubterminalPoset, Filter) {
    let st = subterminal_poset(c);
    let f = Filter::trivial(&st.poset).unwrap();
    (st, f)
}

#[test]
fn trivial_filter_gives_an_isomorphic_quotient() {
    for c in [finset(2), square()] {
        let (st, phi) = trivial(&c);
        let q = filter_quotient(&c, &st, &phi).unwrap();
        assert!(q.category.check_laws().is_valid());
        assert_eq!(q.category.arrow_count(), c.arrow_count());
        let p = &q.projection;
        assert!(p.check(&c, &q.category).is_empty());
        let mut seen: Vec<usize> = p.arrows.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), c.arrow_count(), "projection is bijective on arrows");
        for f in 0..c.arrow_count() {
            assert_eq!(q.category.arrow_name(&p.apply(f)), c.arrow_name(&f));
        }
    }
}

#[test]
fn principal_quotient_of_arrow_fragment_is_finset() {
    let arrows = finset_arrows(2, 2);
    let c = &arrows.category;
    let (st, phi) = principal(c, "[0>1:-]");
    let q = filter_quotient(c, &st, &phi).unwrap();
    assert!(q.category.check_laws().is_valid());
    let eq = find_equivalence(&q.category, &finset(2)).expect("equivalent to FinSet<=2");
    assert!(eq.verify(&q.category, &finset(2)));
}

#[test]
fn principal_quotient_of_square_is_finset() {
    let c = square();
    let (st, phi) = principal(&c, "(1,0)");
    let q = filter_quotient(&c, &st, &phi).unwrap();
    assert!(find_equivalence(&q.category, &finset(2)).is_some());
    let (st, phi) = principal(&c, "(0,1)");
    let q = filter_quotient(&c, &st, &phi).unwrap();
    assert!(find_equivalence(&q.category, &finset(2)).is_some());
}

#[test]
fn quotient_at_the_initial_object_collapses() {
    let c = square();
    let (st, phi) = principal(&c, "(0,0)");
    let q = filter_quotient(&c, &st, &phi).unwrap();
    assert!(find_equivalence(&q.category, &germcat::fincat::builtins::terminal_category()).is_some());
}

#[test]
fn germ_eq_examples() {
    let c = square();
    let (st, phi) = principal(&c, "(1,0)");
    let ctx = GermContext::new(&c, &st, &phi).unwrap();
    let base = finset(2);
    let x = power_object(&base, &[2, 2]);
    let y = power_object(&base, &[2, 1]);
    let reps = ctx.representatives(x, y);
    for g in &reps {
        assert!(ctx.germ_eq(g, g));
    }
    // (id, const) and (id, other const) differ only off coordinate 1
    let f1 = c.find_arrow("(2>2:01,2>1:00)").unwrap();
    let g1 = c.find_arrow("(2>2:01,2>1:00)").unwrap();
    assert!(ctx.germ_eq(&ctx.project(f1), &ctx.project(g1)));
    let a = c.find_arrow("(2>2:01,2>2:00)").unwrap();
    let b = c.find_arrow("(2>2:01,2>2:11)").unwrap();
    assert!(ctx.germ_eq(&ctx.project(a), &ctx.project(b)));
    let b2 = c.find_arrow("(2>2:10,2>2:00)").unwrap();
    assert!(!ctx.germ_eq(&ctx.project(a), &ctx.project(b2)));

    let (st, phi) = trivial(&c);
    let ctx = GermContext::new(&c, &st, &phi).unwrap();
    assert!(!ctx.germ_eq(&ctx.project(a), &ctx.project(b)));
}

/// Saturation classes coincide with the direct existential definition,
/// and the relation is an equivalence.
#[test]
fn saturation_matches_germ_eq() {
    let cases = [(square(), "(1,0)"), (square(), "(0,1)"), (square(), "(1,1)"), (square(), "(0,0)")];
    for (c, name) in cases {
        let (st, phi) = principal(&c, name);
        let ctx = GermContext::new(&c, &st, &phi).unwrap();
        let q = filter_quotient(&c, &st, &phi).unwrap();
        for x in c.objects() {
            for y in c.objects() {
                let reps = ctx.representatives(x, y);
                for a in &reps {
                    for b in &reps {
                        let same = q.class_of(a) == q.class_of(b);
                        assert_eq!(same, ctx.germ_eq(a, b), "{name}: {a:?} {b:?}");
                        assert_eq!(ctx.germ_eq(a, b), ctx.germ_eq(b, a));
                    }
                }
                if reps.len() <= 40 {
                    for a in &reps {
                        for b in &reps {
                            for z in &reps {
                                if ctx.germ_eq(a, b) && ctx.germ_eq(b, z) {
                                    assert!(ctx.germ_eq(a, z));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn composition_is_independent_of_representatives() {
    let c = square();
    for name in ["(1,0)", "(0,1)", "(0,0)"] {
        let (st, phi) = principal(&c, name);
        let q = filter_quotient(&c, &st, &phi).unwrap();
        assert_eq!(check_composition(&c, &st, &phi, &q).unwrap(), None);
    }
    let arrows = finset_arrows(2, 2);
    let (st, phi) = principal(&arrows.category, "[0>1:-]");
    let q = filter_quotient(&arrows.category, &st, &phi).unwrap();
    assert_eq!(check_composition(&arrows.category, &st, &phi, &q).unwrap(), None);
}

#[test]
fn quotient_products_are_images() {
    let c = square();
    let (st, phi) = principal(&c, "(1,0)");
    let q = filter_quotient(&c, &st, &phi).unwrap();
    for a in c.objects() {
        for b in c.objects() {
            let Some(p) = q.category.product(a, b) else {
                assert!(c.product(a, b).is_none());
                continue;
            };
            let cone = Cone { apex: p.apex, legs: vec![p.left, p.right] };
            assert!(germcat::fincat::limits::is_limit(&q.category, &Diagram::pair(a, b), &cone));
        }
    }
}

#[test]
fn missing_products_abort() {
    let c = finset(3);
    let st = subterminal_poset(&c);
    let phi = Filter::trivial(&st.poset).unwrap();
    assert!(filter_quotient(&c, &st, &phi).is_ok());
    let arrows = finset_arrows(2, 2);
    let st = subterminal_poset(&arrows.category);
    let bottom = st.poset.bottom().unwrap();
    let phi = Filter::principal(&st.poset, bottom);
    assert!(filter_quotient(&arrows.category, &st, &phi).is_ok());
}

#[test]
fn projection_preserves_for_trivial_filter() {
    let c = finset(2);
    let (st, phi) = trivial(&c);
    let r = verify_projection(&c, &st, &phi);
    assert!(r.is_ok(), "{:?}", r.failures);
    assert!(r.limits_checked > 0 && r.classifier_checked);
}

#[test]
fn projection_preserves_on_square() {
    let c = square();
    let (st, phi) = principal(&c, "(1,0)");
    let r = verify_projection(&c, &st, &phi);
    assert!(r.is_ok(), "{:?}", r.failures);
    assert!(r.limits_checked > 0 && r.colimits_checked > 0 && r.exponentials_checked > 0);
    assert!(r.classifier_checked);
}

#[test]
fn corrupted_table_is_pinpointed() {
    let c = finset(2);
    let f = c.find_arrow("2>2:10").unwrap();
    let id = c.identity(2);
    let bad = c.with_composite_override(id, f, c.find_arrow("2>2:00").unwrap());
    let (st, phi) = trivial(&c);
    let r = verify_projection(&bad, &st, &phi);
    assert_eq!(r.failures.len(), 1);
    assert_eq!(r.failures[0].kind, "category");
    assert!(r.failures[0].detail.contains("2>2:10"), "{}", r.failures[0].detail);
}

#[test]
fn germ_mono_on_square() {
    let c = square();
    let (st, phi) = principal(&c, "(1,0)");
    let q = filter_quotient(&c, &st, &phi).unwrap();
    let r = germ_mono_characterization(&c, &st, &phi, &q);
    assert!(r.is_ok(), "{:?}", r.counterexamples);
    let f = c.find_arrow("(2>2:01,2>1:00)").unwrap();
    assert!(!is_mono(&c, &f));
    let name = q.category.arrow_name(&q.projection.apply(f));
    let row = r.rows.iter().find(|row| row.arrow == name).unwrap();
    assert!(row.mono_in_quotient);
    assert_eq!(row.witness.as_deref(), Some("(1,0)"));

    let (st, phi) = trivial(&c);
    let q = filter_quotient(&c, &st, &phi).unwrap();
    let r = germ_mono_characterization(&c, &st, &phi, &q);
    assert!(r.is_ok());
    for f in 0..c.arrow_count() {
        let row = &r.rows[q.projection.apply(f)];
        assert_eq!(row.mono_in_quotient, is_mono(&c, &f));
    }
}
