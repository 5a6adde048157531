use germcat::fincat::builtins::{finset, finset_arrows, power, power_object, terminal_category, walking_arrow, FinSet};
use germcat::fincat::limits::{coproduct, initial, is_limit, limit, pullback, search_product, terminal, Diagram};
use germcat::fincat::props::{is_mono_by_kernel_pair, subobject_lattice, verify_classifier};
use germcat::fincat::*;

fn raw_walking_arrow() -> RawCategory {
    RawCategory {
        objects: vec!["A".into(), "B".into()],
        arrows: vec![("idA".into(), "A".into(), "A".into()), ("idB".into(), "B".into(), "B".into()), ("f".into(), "A".into(), "B".into())],
        identities: vec![("A".into(), "idA".into()), ("B".into(), "idB".into())],
        compositions: vec![
            ("idA".into(), "idA".into(), "idA".into()),
            ("idB".into(), "idB".into(), "idB".into()),
            ("f".into(), "idA".into(), "f".into()),
            ("idB".into(), "f".into(), "f".into()),
        ],
    }
}

#[test]
fn terminal_and_walking_arrow_are_valid() {
    let raw = terminal_category().to_raw();
    assert!(validate_category(&raw).is_valid());
    assert!(validate_category(&raw_walking_arrow()).is_valid());
    assert!(walking_arrow().check_laws().is_valid());
}

#[test]
fn broken_identity_law_is_witnessed() {
    let mut raw = raw_walking_arrow();
    raw.arrows.push(("g".into(), "A".into(), "B".into()));
    raw.compositions = vec![
        ("idA".into(), "idA".into(), "idA".into()),
        ("idB".into(), "idB".into(), "idB".into()),
        ("f".into(), "idA".into(), "f".into()),
        ("idB".into(), "f".into(), "g".into()),
        ("g".into(), "idA".into(), "g".into()),
        ("idB".into(), "g".into(), "g".into()),
    ];
    let report = validate_category(&raw);
    assert!(report.violations.contains(&Violation::LeftIdentity { f: "f".into() }));
}

#[test]
fn unknown_references_are_reported() {
    let mut raw = raw_walking_arrow();
    raw.arrows.push(("h".into(), "A".into(), "Nowhere".into()));
    raw.compositions.push(("ghost".into(), "f".into(), "f".into()));
    let report = validate_category(&raw);
    assert!(report.violations.contains(&Violation::UnknownObject { arrow: "h".into(), object: "Nowhere".into() }));
    assert!(report.violations.contains(&Violation::UnknownArrow("ghost".into())));
}

#[test]
fn finset_fragments_satisfy_the_laws() {
    for k in 0..=3 {
        let c = finset(k);
        assert!(c.check_laws().is_valid(), "FinSet<={k}");
        let back = FiniteCategory::from_raw(&c.to_raw()).unwrap();
        assert_eq!(back.arrow_count(), c.arrow_count());
    }
    assert_eq!(finset(2).arrow_count(), 11);
    assert_eq!(finset(3).arrow_count(), 60);
}

#[test]
fn mono_examples() {
    let c = finset(3);
    for x in c.objects() {
        assert!(is_mono(&c, &c.identity(x)));
    }
    let constant = c.find_arrow("2>1:00").unwrap();
    assert!(!is_mono(&c, &constant));
    let inclusion = c.find_arrow("1>2:0").unwrap();
    assert!(is_mono(&c, &inclusion));
    assert!(is_epi(&c, &constant));
    assert!(!is_epi(&c, &inclusion));
}

#[test]
fn mono_agrees_with_kernel_pair() {
    for c in [finset(2), finset(3), power(&finset(2), 2), finset_arrows(2, 2).category] {
        for f in c.all_arrows() {
            if let Some(k) = is_mono_by_kernel_pair(&c, &f) {
                assert_eq!(k, is_mono(&c, &f), "{}", c.arrow_name(&f));
            }
        }
    }
}

#[test]
fn monos_compose_and_pull_back() {
    let c = power(&finset(2), 2);
    let monos: Vec<usize> = c.all_arrows().into_iter().filter(|f| is_mono(&c, f)).collect();
    for &m in &monos {
        for &n in c.arrows_out(c.cod(&m)) {
            if monos.contains(&n) {
                assert!(is_mono(&c, &c.compose(&n, &m)));
            }
        }
        for g in c.all_arrows() {
            if c.cod(&g) == c.cod(&m) {
                if let Some(pb) = pullback(&c, &m, &g) {
                    assert!(is_mono(&c, &pb.legs[1]));
                }
            }
        }
    }
}

#[test]
fn basic_limits_in_finset() {
    let c = finset(3);
    assert_eq!(terminal(&c), Some(1));
    assert_eq!(initial(&c), Some(0));
    let p = search_product(&c, 2, 2);
    assert!(p.is_none(), "4 escapes FinSet<=3");
    let c4 = finset(4);
    let p = search_product(&c4, 2, 2).unwrap();
    assert_eq!(p.apex, 4);
    let zero = c.find_arrow("1>2:0").unwrap();
    let one = c.find_arrow("1>2:1").unwrap();
    assert_eq!(pullback(&c, &zero, &one).unwrap().apex, 0);
    assert_eq!(coproduct(&c, 1, 2).unwrap().apex, 3);
}

#[test]
fn limiting_cones_are_unique_up_to_unique_iso() {
    let c = power(&finset(2), 2);
    let d = Diagram::pair(power_object(&finset(2), &[1, 2]), power_object(&finset(2), &[2, 1]));
    let l = limit(&c, &d).unwrap();
    let chosen = c.product(d.objects[0], d.objects[1]).unwrap();
    let other = Cone { apex: chosen.apex, legs: vec![chosen.left, chosen.right] };
    assert!(is_limit(&c, &d, &other));
    let isos: Vec<usize> =
        c.hom(l.apex, other.apex).iter().copied().filter(|u| is_iso(&c, u) && l.legs.iter().zip(&other.legs).all(|(a, b)| c.compose(b, u) == *a)).collect();
    assert_eq!(isos.len(), 1);
}

#[test]
fn subterminals() {
    let s = subterminal_poset(&finset(3));
    assert_eq!(s.poset.names, vec!["0", "1"]);
    assert!(s.poset.leq(0, 1) && !s.poset.leq(1, 0));

    let arrows = finset_arrows(2, 2);
    let s = subterminal_poset(&arrows.category);
    let mut names = s.poset.names.clone();
    names.sort();
    assert_eq!(names, vec!["[0>0:-]", "[0>1:-]", "[1>1:0]"]);

    let sq = subterminal_poset(&power(&finset(2), 2));
    let mut names = sq.poset.names.clone();
    names.sort();
    assert_eq!(names, vec!["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
    assert!(sq.poset.is_partial_order());
}

#[test]
fn exponential_examples() {
    let c = finset(3);
    for y in c.objects() {
        let e = exponential(&c, 1, y).unwrap();
        assert_eq!(e.object, y);
        assert_eq!(exponential(&c, y, 1).unwrap().object, 1);
    }
    let big = FinSet::new(8);
    let e = exponential(&big, 2, 2).unwrap();
    assert_eq!(e.object, 4);
}

#[test]
fn exponential_invariant_under_renaming() {
    let c = finset(3);
    let r = c.renamed(|o| format!("obj{o}"), |a| format!("arr_{a}"));
    for x in c.objects() {
        for y in c.objects() {
            assert_eq!(exponential(&c, x, y).map(|e| e.object), exponential(&r, x, y).map(|e| e.object));
        }
    }
    let n = c.object_count();
    let obj_perm: Vec<usize> = (0..n).rev().collect();
    let arr_perm: Vec<usize> = (0..c.arrow_count()).rev().collect();
    let p = c.permuted(&obj_perm, &arr_perm);
    assert!(p.check_laws().is_valid());
    for x in c.objects() {
        for y in c.objects() {
            assert_eq!(exponential(&c, x, y).map(|e| obj_perm[e.object]), exponential(&p, obj_perm[x], obj_perm[y]).map(|e| e.object));
        }
    }
    let sc = subobject_classifier(&c).unwrap();
    assert_eq!(subobject_classifier(&p).unwrap().omega, obj_perm[sc.omega]);
}

#[test]
fn subobject_classifier_examples() {
    let c = finset(3);
    let sc = subobject_classifier(&c).unwrap();
    assert_eq!(sc.omega, 2);

    assert!(subobject_classifier(&walking_arrow()).is_none());

    let sier = finset_arrows(3, 2);
    let sc = subobject_classifier(&sier.category).unwrap();
    let omega = sier.base_arrows[sc.omega];
    let base = finset(3);
    assert_eq!(base.arrow_info(omega).dom, 3);
    assert_eq!(base.arrow_info(omega).cod, 2);
}

#[test]
fn classifier_of_product_fragment() {
    let c = power(&finset(2), 2);
    let sc = subobject_classifier(&c).unwrap();
    assert_eq!(c.object_name(sc.omega), "(2,2)");
    let monos: Vec<usize> = c.all_arrows().into_iter().filter(|f| is_mono(&c, f)).collect();
    assert!(verify_classifier(&c, &sc, &monos));
    let lattice = subobject_lattice(&c, sc.omega);
    assert_eq!(lattice.monos.len(), 16);
}

#[test]
fn equivalence_of_isomorphic_fragments() {
    let c = finset(2);
    let r = c.permuted(&[2, 0, 1], &(0..c.arrow_count()).rev().collect::<Vec<_>>());
    let eq = find_equivalence(&c, &r).unwrap();
    assert!(eq.verify(&c, &r));
    assert!(find_equivalence(&finset(2), &finset(3)).is_none());
}
