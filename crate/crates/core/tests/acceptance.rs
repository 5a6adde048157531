//! One test per acceptance criterion. Each prints a single summary line.

use std::time::{Duration, Instant};

use germcat::cli::random_filter_cases;
use germcat::filterprod::{finite_filter_product, Generator};
use germcat::filtquot::*;
use germcat::fincat::builtins::{finset, finset_arrows, power, walking_arrow};
use germcat::fincat::*;
use germcat::model::*;
use germcat::shapes::*;
use germcat::sset::*;

fn line(n: usize, name: &str, detail: String, elapsed: Duration) {
    eprintln!("criterion {n} [{name}]: PASS ({detail}; {:.1} s)", elapsed.as_secs_f64());
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

/// The built-in `(C, Φ)` pairs.
fn pairs() -> Vec<(String, FiniteCategory, SubterminalPoset, Filter)> {
    let mut out = Vec::new();
    let f2 = finset(2);
    let (st, phi) = trivial(&f2);
    out.push(("FinSet≤2, trivial".to_string(), f2.clone(), st, phi));
    let (st, phi) = principal(&f2, "1");
    out.push(("FinSet≤2, ↑1".to_string(), f2, st, phi));
    let sq = power(&finset(2), 2);
    for name in ["(1,0)", "(0,1)"] {
        let (st, phi) = principal(&sq, name);
        out.push((format!("FinSet≤2², ↑{name}"), sq.clone(), st, phi));
    }
    let arrow = walking_arrow();
    let (st, phi) = principal(&arrow, "1");
    out.push(("walking arrow, ↑1".to_string(), arrow, st, phi));
    let fragment = finset_arrows(2, 2).category;
    let (st, phi) = principal(&fragment, "[0>1:-]");
    out.push(("arrow fragment, ↑[0>1:-]".to_string(), fragment, st, phi));
    out
}

#[test]
fn criterion_1_projection_preserves_structure() {
    let start = Instant::now();
    let all = pairs();
    assert!(all.len() >= 4);
    let mut classifiers = 0;
    for (name, c, st, phi) in &all {
        let t = Instant::now();
        let r = verify_projection(c, st, phi);
        assert!(r.is_ok(), "{name}: {:?}", r.failures);
        assert!(r.limits_checked > 0 && r.colimits_checked > 0 && r.monos_checked > 0, "{name}");
        classifiers += usize::from(r.classifier_checked);
        assert!(t.elapsed() < Duration::from_secs(60), "{name} took {:?}", t.elapsed());
    }
    assert!(classifiers >= 4, "the classifier was checked on {classifiers} pairs");
    line(1, "preservation", format!("{} pairs, classifier on {classifiers}", all.len()), start.elapsed());
}

#[test]
fn criterion_2_principal_collapse() {
    let start = Instant::now();
    let base = finset(2);
    // ↑{1} over I = {1, 2}: the subsets {1} and {1, 2}
    let fp = finite_filter_product(&base, 2, &[0b01, 0b11]).unwrap();
    let q = &fp.quotient.category;
    let eq = find_equivalence(q, &base).expect("an equivalence onto FinSet≤2");
    assert!(eq.verify(q, &base));
    // the forward functor is a bijection on iso classes, by counting
    let classes = |c: &FiniteCategory| {
        let mut reps: Vec<Obj> = Vec::new();
        for x in 0..c.object_count() {
            if !reps.iter().any(|&r| c.hom(r, x).iter().any(|f| is_iso(c, f))) {
                reps.push(x);
            }
        }
        reps.len()
    };
    assert_eq!(classes(q), classes(&base));
    assert!(start.elapsed() < Duration::from_secs(60));
    line(2, "principal collapse", format!("{} objects onto {}", q.object_count(), base.object_count()), start.elapsed());
}

#[test]
fn criterion_3_germ_mono_biconditional() {
    let start = Instant::now();
    let mut rows = 0;
    for (name, c, st, phi) in &pairs() {
        let q = filter_quotient(c, st, phi).unwrap();
        let r = germ_mono_characterization(c, st, phi, &q);
        assert!(r.counterexamples.is_empty(), "{name}: {:?}", r.counterexamples);
        // oracle: mono in the quotient by the cancellation law, directly
        for (g, row) in r.rows.iter().enumerate() {
            let cat = &q.category;
            let dom = cat.dom(&g);
            let cancels = (0..cat.object_count()).all(|w| {
                let maps = cat.hom(w, dom);
                maps.iter().all(|a| maps.iter().all(|b| a == b || cat.compose(&g, a) != cat.compose(&g, b)))
            });
            assert_eq!(row.mono_in_quotient, cancels, "{name}: {}", row.arrow);
        }
        rows += r.rows.len();
    }
    line(3, "germ-mono", format!("{rows} germs, zero counterexamples"), start.elapsed());
}

#[test]
fn criterion_4_transferred_model_structure() {
    let start = Instant::now();
    let c = power(&finset(2), 2);
    let model = ModelStructure::from_specs(&c, &ClassSpec::All, &ClassSpec::All, &ClassSpec::Isos).unwrap();
    assert!(verify_model_structure(&c, &model).is_ok());
    let (st, phi) = principal(&c, "(1,0)");
    let tm = transfer_model_structure(&c, &model, &st, &phi).unwrap();
    let r = &tm.report;
    for wfs in [&r.trivial_cofibrations, &r.trivial_fibrations] {
        assert!(wfs.unfactored.is_empty() && wfs.lifting_failures.is_empty());
        assert!(wfs.left_not_closed.is_empty() && wfs.right_not_closed.is_empty());
    }
    assert!(r.two_of_three.is_empty());
    assert!(tm.not_preserved.is_empty(), "{:?}", tm.not_preserved);
    assert!(tm.is_ok());
    // the projection sends each class into the transferred one
    let q = &tm.quotient;
    for f in 0..c.arrow_count() {
        let g = q.projection.apply(f);
        assert!(!model.cofibrations.contains(f) || tm.model.cofibrations.contains(g));
        assert!(!model.fibrations.contains(f) || tm.model.fibrations.contains(g));
        assert!(!model.weak.contains(f) || tm.model.weak.contains(g));
    }
    assert!(start.elapsed() < Duration::from_secs(120));
    line(4, "transfer", format!("quotient with {} arrows", q.category.arrow_count()), start.elapsed());
}

#[test]
fn criterion_5_shapes_pipeline() {
    let start = Instant::now();
    let t = ShapesTuple::interval_fragment();
    let before = validate_shapes_tuple(&t);
    assert!(before.is_ok(), "{:?}", before.failures);
    let filters = ShapesFilters::principal(&t, "(1,0)").unwrap();
    let q = quotient_shapes_tuple(&t, &filters).unwrap();
    assert!(q.is_ok());
    let after = validate_shapes_tuple(&q.tuple);
    assert!(after.is_ok(), "{:?}", after.failures);
    let iv = q.tuple.interval.as_ref().expect("the quotient keeps its interval");
    let strict = check_strict_interval(&q.tuple.theory, iv);
    assert!(strict.is_ok(), "{:?}", strict.failed);
    line(5, "shapes pipeline", format!("{} axioms in the quotient", iv.axioms.len()), start.elapsed());
}

/// For each level `m ≤ levels`, the members not discrete up to `m` all sit
/// in the first half of the window.
fn window_cofinite(f: &SymbolicFamily, window: u64, levels: usize) -> bool {
    (0..=levels).all(|m| {
        let last_bad = (0..=window)
            .filter(|&n| {
                let x = f.member(n, levels).unwrap();
                // levelwise cardinality comparison against X_0
                (1..=m).any(|j| x.sizes[j] != x.sizes[0])
            })
            .max();
        last_bad.is_none_or(|n| n < window / 2)
    })
}

#[test]
fn criterion_6_external_discreteness() {
    use Constructor::*;
    let start = Instant::now();
    let id = Generator::Identity { shift: 0 };
    let families = [
        SymbolicFamily::new(Sphere, id.clone()),
        SymbolicFamily::new(Sphere, id.clone()).except(3, 1).except(5, 0),
        SymbolicFamily::new(Sphere, Generator::FloorHalf { shift: 1 }),
        SymbolicFamily::new(Sphere, Generator::Parity),
        SymbolicFamily::new(Sphere, Generator::Constant(3)),
        SymbolicFamily::new(Simplex, id.clone()),
        SymbolicFamily::new(Simplex, Generator::Constant(0)).except(2, 4),
        SymbolicFamily::new(Simplex, Generator::Constant(1)),
        SymbolicFamily::new(Boundary, id.clone()),
        SymbolicFamily::new(Boundary, Generator::Constant(1)),
        SymbolicFamily::new(Discrete, id),
        SymbolicFamily::new(Discrete, Generator::Parity),
    ];
    let mut yes = 0;
    for f in &families {
        let verdict = frechet_externally_discrete(f);
        assert!(!matches!(verdict, Discreteness::Undecidable(_)), "{f}");
        let oracle = window_cofinite(f, 24, 3);
        assert_eq!(verdict == Discreteness::Discrete, oracle, "{f}");
        yes += usize::from(oracle);
    }
    assert_eq!(frechet_externally_discrete(&families[0]), Discreteness::Discrete);
    line(6, "external discreteness", format!("{} families, {yes} discrete", families.len()), start.elapsed());
}

#[test]
fn criterion_7_unique_arrow() {
    let start = Instant::now();
    let level = 3;
    let pool = candidates(6, 6, 3, level);
    let others = [empty(level), point(level), simplex(1, level), sphere(1, level)];
    let mut checked = 0;
    for ctx in [Context::plain(level), Context::principal(2, vec![0], level)] {
        for u in ctx.subterminals().into_iter().filter(|u| ctx.generator.iter().all(|&i| u[i])) {
            let a = ctx.times(&simplex(1, level), &u);
            assert!(unique_arrow_check(&ctx, &u, &a, false).passes(), "{ctx:?} {u:?}");
            let bad = unique_arrow_counterexamples(&ctx, &u, &pool, &others);
            assert!(bad.is_empty(), "{ctx:?} {u:?}: {} alternatives", bad.len());
            checked += 1;
        }
    }
    assert!(start.elapsed() < Duration::from_secs(300));
    line(7, "unique arrow", format!("{checked} subterminals, {} candidates", pool.len()), start.elapsed());
}

#[test]
fn criterion_8_dn_construction() {
    let start = Instant::now();
    let growing = SymbolicFamily::new(Constructor::Sphere, Generator::FloorHalf { shift: 1 });
    let r = dn_sequence(&growing, 50).unwrap();
    let expected: Vec<usize> = (0..=50).map(|n| n / 2).collect();
    assert_eq!(r.values(), expected);
    assert!(r.diverges());
    assert!(r.factorization_failures().is_empty());
    for row in r.rows.iter().filter(|row| row.d >= 1) {
        assert_eq!(row.factors_through_point, Some(true), "n = {}", row.n);
        // oracle: R_n has one vertex and S^(d-1) maps to it in exactly one way
        let level = (row.d - 1).max(1);
        let rn = growing.member(row.n, level).unwrap();
        assert_eq!(rn.sizes[0], 1);
        assert_eq!(hom_count(&sphere(row.d - 1, level), &rn), 1);
    }
    let fixed = SymbolicFamily::new(Constructor::Simplex, Generator::Constant(1));
    let r = dn_sequence(&fixed, 50).unwrap();
    assert!(r.values().iter().all(|&d| d == 0));
    assert!(!r.diverges());
    line(8, "d_n", "window 50, d_n = n/2 diverges, constant Y[1] stays at 0".into(), start.elapsed());
}

/// Non-empty, upward closed, and every two members have a common lower
/// bound among the members.
fn three_clause_oracle(p: &FinitePoset, subset: &[usize]) -> bool {
    let n = p.len();
    let mut inside = vec![false; n];
    for &s in subset {
        inside[s] = true;
    }
    let nonempty = inside.iter().any(|&b| b);
    let upward = (0..n).all(|a| !inside[a] || (0..n).all(|b| !p.leq(a, b) || inside[b]));
    let directed = (0..n).all(|a| (0..n).all(|b| !(inside[a] && inside[b]) || (0..n).any(|c| inside[c] && p.leq(c, a) && p.leq(c, b))));
    nonempty && upward && directed
}

#[test]
fn criterion_9_filter_laws() {
    let start = Instant::now();
    let cases = random_filter_cases(20261016, 200, 5);
    assert_eq!(cases.len(), 200);
    let mut valid = 0;
    for (p, subset) in &cases {
        assert!(p.is_partial_order());
        let oracle = three_clause_oracle(p, subset);
        assert_eq!(validate_filter(p, subset).is_valid(), oracle, "{:?} {subset:?}", p.names);
        valid += usize::from(oracle);
    }
    assert!(valid > 0 && valid < 200);
    line(9, "filter laws", format!("200 cases, {valid} filters"), start.elapsed());
}
