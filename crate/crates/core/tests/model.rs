use germcat::filtquot::Filter;
use germcat::fincat::builtins::{finset, power};
use germcat::fincat::*;
use germcat::model::*;

fn spec(s: &str) -> ClassSpec {
    s.parse().unwrap()
}

fn model(c: &FiniteCategory, cof: &str, fib: &str, weak: &str) -> ModelStructure {
    ModelStructure::from_specs(c, &spec(cof), &spec(fib), &spec(weak)).unwrap()
}

#[test]
fn lift_examples() {
    let c = finset(2);
    let a = |n: &str| c.find_arrow(n).unwrap();
    let swap = a("2>2:10");
    for p in c.all_arrows() {
        for top in c.hom(2, c.dom(&p)).iter() {
            for bottom in c.hom(2, c.cod(&p)).iter() {
                let sq = Square { top: *top, bottom: *bottom };
                if let Ok(found) = has_lift(&c, swap, p, sq) {
                    assert!(found.is_some());
                }
            }
        }
    }
    let empty = a("0>1:-");
    let id1 = c.identity(1);
    for top in c.hom(0, 1).iter() {
        let sq = Square { top: *top, bottom: id1 };
        assert!(has_lift(&c, empty, id1, sq).unwrap().is_some());
    }
    let fold = a("2>1:00");
    let sq = Square { top: c.identity(2), bottom: id1 };
    assert_eq!(has_lift(&c, fold, fold, sq), Ok(None));
    let bad = Square { top: a("2>2:00"), bottom: id1 };
    assert!(has_lift(&c, fold, a("2>2:01"), bad).is_err());
}

#[test]
fn wfs_examples() {
    let c = finset(2);
    let class = |s: &str| MorphismClass::from_spec(s, &c, &spec(s)).unwrap();
    assert!(verify_wfs(&c, &class("isos"), &class("all")).is_ok());
    assert!(verify_wfs(&c, &class("all"), &class("isos")).is_ok());
    let r = verify_wfs(&c, &class("identities"), &class("all"));
    assert!(!r.is_ok());
    assert!(r.left_not_closed.contains(&"2>2:10".to_string()));
    assert!(r.unfactored.is_empty() && r.lifting_failures.is_empty());
}

#[test]
fn model_structure_examples() {
    let c = finset(2);
    assert!(verify_model_structure(&c, &model(&c, "all", "isos", "all")).is_ok());
    assert!(verify_model_structure(&c, &model(&c, "all", "all", "isos")).is_ok());
    let r = verify_model_structure(&c, &model(&c, "all", "all", "all"));
    assert!(!r.is_ok());
    assert!(!r.trivial_cofibrations.lifting_failures.is_empty());
}

#[test]
fn two_of_three_witness() {
    let c = finset(2);
    let mut m = model(&c, "all", "all", "isos");
    m.weak.members[c.find_arrow("2>1:00").unwrap()] = true;
    let r = verify_model_structure(&c, &m);
    assert!(!r.two_of_three.is_empty());
}

fn square_setup() -> (FiniteCategory, SubterminalPoset, Filter) {
    let c = power(&finset(2), 2);
    let st = subterminal_poset(&c);
    let u = st.element_of(c.find_object("(1,0)").unwrap()).unwrap();
    let phi = Filter::principal(&st.poset, u);
    (c, st, phi)
}

#[test]
fn model_filter_examples() {
    let c = finset(2);
    let st = subterminal_poset(&c);
    let phi = Filter::trivial(&st.poset).unwrap();
    assert!(validate_model_filter(&c, &model(&c, "all", "all", "isos"), &st, &phi).is_ok());

    let (c, st, phi) = square_setup();
    assert!(validate_model_filter(&c, &model(&c, "all", "all", "isos"), &st, &phi).is_ok());

    // component classes are stable under products with indicator subterminals
    assert!(validate_model_filter(&c, &model(&c, "all", "all", "component-iso 2"), &st, &phi).is_ok());

    let m = model(&c, "all", "all", "isos");
    let mut broken = m.clone();
    broken.weak.members[c.find_arrow("(2>1:00,2>2:01)").unwrap()] = true;
    let r = validate_model_filter(&c, &broken, &st, &phi);
    assert_eq!(r.unstable.len(), 1);
    assert_eq!(r.unstable[0].arrow, "(2>1:00,2>2:01)");
    assert_eq!(r.unstable[0].subterminal, "(1,0)");

    let r = validate_model_filter(&c, &model(&c, "all", "isos", "all"), &st, &phi);
    assert_eq!(r.non_fibrant, vec!["(1,0)".to_string()]);
}

#[test]
fn stable_classes_are_closed_under_products() {
    let (c, st, phi) = square_setup();
    let ctx = germcat::filtquot::GermContext::new(&c, &st, &phi).unwrap();
    let m = model(&c, "all", "all", "isos");
    for f in m.weak.arrows() {
        for &u in &ctx.members {
            assert!(m.weak.contains(times_subterminal(&ctx, f, u)));
        }
    }
}

#[test]
fn trivial_transfer_keeps_classes() {
    let c = finset(2);
    let st = subterminal_poset(&c);
    let phi = Filter::trivial(&st.poset).unwrap();
    let m = model(&c, "all", "all", "isos");
    let t = transfer_model_structure(&c, &m, &st, &phi).unwrap();
    assert!(t.is_ok());
    for f in 0..c.arrow_count() {
        let g = t.quotient.projection.apply(f);
        assert_eq!(t.model.weak.contains(g), m.weak.contains(f));
        assert_eq!(t.model.fibrations.contains(g), m.fibrations.contains(f));
    }
}

#[test]
fn transfer_on_square() {
    let (c, st, phi) = square_setup();
    let m = model(&c, "all", "all", "isos");
    let t = transfer_model_structure(&c, &m, &st, &phi).unwrap();
    assert!(t.report.is_ok(), "{:?}", t.report);
    assert!(t.not_preserved.is_empty());
    assert!(t.right_properness_failures.is_empty());
    let d = &t.quotient.category;
    for g in 0..d.arrow_count() {
        assert_eq!(t.model.weak.contains(g), is_iso(d, &g), "{}", d.arrow_name(&g));
        assert!(t.model.cofibrations.contains(g) && t.model.fibrations.contains(g));
    }
}

#[test]
fn mutated_weak_class_is_rejected() {
    let (c, st, phi) = square_setup();
    let mut m = model(&c, "all", "all", "isos");
    let restricted_swap = c.find_arrow("(2>2:10,0>0:-)").unwrap();
    m.weak.members[restricted_swap] = false;
    match transfer_model_structure(&c, &m, &st, &phi) {
        Err(TransferError::NotModelFilter(r)) => {
            assert!(r.unstable.iter().any(|w| w.arrow == "(2>2:10,2>2:01)" && w.subterminal == "(1,0)"))
        }
        other => panic!("expected a stability witness, got {other:?}"),
    }
    assert!(!verify_model_structure(&c, &m).is_ok());
}

#[test]
fn mutation_absorbed_by_the_quotient() {
    // dropping swap × (1,1) alone leaves the germ with the iso representative swap × (1,0)
    let (c, st, phi) = square_setup();
    let mut m = model(&c, "all", "all", "isos");
    m.weak.members[c.find_arrow("(2>2:10,2>2:01)").unwrap()] = false;
    let t = transfer_model_structure(&c, &m, &st, &phi).unwrap();
    assert!(t.report.is_ok());
}

#[test]
fn class_spec_round_trip() {
    for s in ["isos", "all", "identities", "monos", "component-iso 2", "explicit {a b c}"] {
        assert_eq!(spec(s).to_string(), s);
    }
    assert!("nonsense".parse::<ClassSpec>().is_err());
}
