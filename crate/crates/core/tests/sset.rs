use std::time::Instant;

use germcat::filterprod::Generator;
use germcat::sset::*;
use proptest::prelude::*;

/// Every levelwise family of functions, kept when it commutes with all faces
/// and degeneracies.
fn naive_homs(x: &SSet, y: &SSet) -> Vec<Vec<Vec<usize>>> {
    let mut all: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for m in 0..=x.level {
        let mut funcs: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..x.sizes[m] {
            funcs = funcs.iter().flat_map(|f| (0..y.sizes[m]).map(move |t| [f.clone(), vec![t]].concat())).collect();
        }
        all = all.iter().flat_map(|prefix| funcs.iter().map(move |f| [prefix.clone(), vec![f.clone()]].concat())).collect();
    }
    all.into_iter()
        .filter(|f| {
            (1..=x.level).all(|m| (0..x.sizes[m]).all(|s| (0..=m).all(|i| f[m - 1][x.face(m, i, s)] == y.face(m, i, f[m][s]))))
                && (0..x.level).all(|m| (0..x.sizes[m]).all(|s| (0..=m).all(|j| f[m + 1][x.degen(m, j, s)] == y.degen(m, j, f[m][s]))))
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn built_objects_have_the_expected_levels() {
    assert_eq!(simplex(1, 1).sizes, vec![2, 3]);
    assert_eq!(boundary(1, 1).sizes, vec![2, 2]);
    for n in 0..=4 {
        let s = sphere(n, 5);
        assert_eq!(s.sizes[0], if n == 0 { 2 } else { 1 });
        for m in 0..=5 {
            let want = if n == 0 { 2 } else { 1 + binomial(m, n) };
            assert_eq!(s.sizes[m], want, "S^{n} level {m}");
        }
        // Δ[n]_m counts monotone maps [m] -> [n]
        let d = simplex(n, 4);
        for m in 0..=4 {
            assert_eq!(d.sizes[m], binomial(n + m + 1, m + 1));
        }
    }
}

#[test]
fn sphere_is_simplex_mod_boundary() {
    for n in 1..=3 {
        let level = n + 1;
        let x = simplex(n, level);
        let b = simplex_cells(n, n);
        let (bx, _) = b.realize(level).unwrap();
        // the boundary sits inside the simplex as the cells of size ≤ n
        let mut seeds = empty_mask(&x);
        for v in 0..x.sizes[0] {
            seeds[0][v] = true;
        }
        let nondeg = x.nondegenerate();
        for m in 1..n {
            for &s in &nondeg[m] {
                seeds[m][s] = true;
            }
        }
        let mask = generated(&x, &seeds);
        assert_eq!(restrict(&x, &mask).0.sizes, bx.sizes);
        let q = collapse(&x, &mask);
        assert!(q.identity_violations().is_empty());
        assert!(is_isomorphic(&q, &sphere(n, level)), "S^{n}");
    }
}

#[test]
fn hom_search_matches_brute_force() {
    let cases = [
        (simplex(1, 1), simplex(1, 1)),
        (simplex(1, 2), simplex(1, 2)),
        (boundary(2, 1), simplex(1, 1)),
        (sphere(1, 2), sphere(1, 2)),
        (simplex(1, 3), sphere(2, 3)),
        (sphere(1, 2), simplex(1, 2)),
        (coproduct(&point(2), &sphere(1, 2)), sphere(1, 2)),
        (discrete(2, 2), boundary(2, 2)),
        (boundary(2, 2), sphere(1, 2)),
    ];
    for (x, y) in &cases {
        let mut fast: Vec<Vec<Vec<usize>>> = hom_set(x, y).into_iter().map(|f| f.levels).collect();
        let mut slow = naive_homs(x, y);
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow, "{x} -> {y}");
    }
    assert_eq!(hom_count(&simplex(1, 3), &sphere(2, 3)), 1);
    assert_eq!(hom_count(&point(2), &simplex(1, 2)), 2);
}

#[test]
fn representables_pick_out_levels() {
    let targets = [sphere(2, 3), product(&simplex(1, 3), &simplex(1, 3)), boundary(3, 3), discrete(3, 3)];
    for y in &targets {
        for n in 0..=3 {
            assert_eq!(hom_count(&simplex(n, 3), y), y.sizes[n], "Hom(Δ[{n}], {y})");
        }
    }
}

#[test]
fn external_discreteness_examples() {
    let yes = [discrete(3, 3), discrete(0, 3), sphere(0, 3), boundary(1, 3)];
    let no = [simplex(1, 3), sphere(2, 3), sphere(3, 3), boundary(2, 3), product(&sphere(1, 3), &discrete(2, 3))];
    for x in &yes {
        assert!(is_externally_discrete(x), "{x}");
        assert!(is_constant(x));
        assert!(x.is_levelwise_discrete());
    }
    for x in &no {
        assert!(!is_externally_discrete(x), "{x}");
        assert!(!is_constant(x));
        assert!(!x.is_levelwise_discrete());
    }
    let sample: Vec<SSet> = yes.iter().chain(&no).cloned().collect();
    assert_eq!(suitable_propositions_failures(&sample), Vec::<String>::new());
}

/// Window oracle: for each `m ≤ levels`, the indices where the built member is
/// not discrete up to `m` all sit in the first half of the window.
fn window_cofinite(f: &SymbolicFamily, window: u64, levels: usize) -> bool {
    (0..=levels).all(|m| {
        let last_bad = (0..=window).filter(|&n| f.member(n, levels).unwrap().discrete_up_to().is_some_and(|d| d < m)).max();
        last_bad.is_none_or(|n| n < window / 2)
    })
}

#[test]
fn frechet_discreteness_agrees_with_window_cofiniteness() {
    use Constructor::*;
    let families = [
        SymbolicFamily::new(Discrete, Generator::Constant(3)),
        SymbolicFamily::new(Sphere, Generator::Identity { shift: 0 }),
        SymbolicFamily::new(Sphere, Generator::Identity { shift: 0 }).except(7, 1).except(9, 2),
        SymbolicFamily::new(Sphere, Generator::FloorHalf { shift: 0 }),
        SymbolicFamily::new(Sphere, Generator::Parity),
        SymbolicFamily::new(Sphere, Generator::Constant(2)),
        SymbolicFamily::new(Sphere, Generator::Constant(0)).except(3, 2),
        SymbolicFamily::new(Simplex, Generator::Identity { shift: 0 }),
        SymbolicFamily::new(Simplex, Generator::Constant(0)).except(1, 1),
        SymbolicFamily::new(Boundary, Generator::Parity),
        SymbolicFamily::new(Boundary, Generator::Identity { shift: 0 }),
        SymbolicFamily::new(Discrete, Generator::Identity { shift: 2 }),
        SymbolicFamily::new(Simplex, Generator::Constant(1)),
    ];
    let mut checked = 0;
    for f in &families {
        let verdict = frechet_externally_discrete(f);
        let oracle = window_cofinite(f, 24, 3);
        assert_eq!(verdict == Discreteness::Discrete, oracle, "{f}");
        assert!(!matches!(verdict, Discreteness::Undecidable(_)));
        checked += 1;
    }
    assert!(checked >= 10);
    let opaque = SymbolicFamily { constructor: Sphere, sequence: "seq tail=sphere(opaque(busy))".parse().unwrap() };
    assert!(matches!(frechet_externally_discrete(&opaque), Discreteness::Undecidable(_)));
}

#[test]
fn discreteness_table_matches_built_objects() {
    use Constructor::*;
    for c in [Sphere, Simplex, Boundary, Discrete] {
        for k in 0..=6 {
            let x = c.build(k, 7);
            assert_eq!(c.discrete_up_to(k), x.discrete_up_to(), "{}({k})", c.name());
            assert!(x.identity_violations().is_empty());
        }
    }
}

#[test]
fn dn_for_small_windows() {
    let half = SymbolicFamily::new(Constructor::Sphere, Generator::FloorHalf { shift: 1 });
    let r = dn_sequence(&half, 20).unwrap();
    assert_eq!(r.values(), (0..=20).map(|n| n / 2).collect::<Vec<_>>());
    assert!(r.diverges());
    assert_eq!(r.blocked(), vec![0, 1]);
    assert!(r.factorization_failures().is_empty());

    let constant = SymbolicFamily::new(Constructor::Discrete, Generator::Constant(2));
    let r = dn_sequence(&constant, 20).unwrap();
    assert_eq!(r.values(), (0..=20).collect::<Vec<_>>());
    assert!(r.diverges());
    // S^0 is two points and maps onto both points of R_1
    assert_eq!(r.factorization_failures(), vec![1]);

    let interval = SymbolicFamily::new(Constructor::Simplex, Generator::Constant(1));
    let r = dn_sequence(&interval, 20).unwrap();
    assert!(r.values().iter().all(|&d| d == 0));
    assert!(!r.diverges());
    assert_eq!(r.blocked().len(), 21);

    let opaque = SymbolicFamily { constructor: Constructor::Sphere, sequence: "seq tail=sphere(opaque(x))".parse().unwrap() };
    assert!(matches!(dn_sequence(&opaque, 3), Err(FamilyError::Opaque { n: 0 })));
    let big = SymbolicFamily::new(Constructor::Sphere, Generator::Constant(MAX_PARAMETER + 1));
    assert!(matches!(dn_sequence(&big, 3), Err(FamilyError::Bound { .. })));
}

#[test]
fn a_nontrivial_map_does_not_factor() {
    // S^1 -> S^1 at d = 2 includes the identity, which does not factor
    let s = sphere(1, 2);
    assert!(find_hom(&s, &s, |f| !f.factors_through_point(&s, &s)).is_some());
}

#[test]
fn interval_passes_the_six_conditions() {
    let level = 3;
    for ctx in [Context::plain(level), Context::principal(2, vec![0], level)] {
        let inhabited: Vec<Vec<bool>> = ctx.subterminals().into_iter().filter(|u| ctx.generator.iter().all(|&i| u[i])).collect();
        assert!(!inhabited.is_empty());
        for u in &inhabited {
            let a = ctx.times(&simplex(1, level), u);
            let report = unique_arrow_check(&ctx, u, &a, false);
            assert_eq!(report.conditions, [true; 6], "{ctx:?} {u:?}");
            let one = ctx.object(&vec![true; ctx.index], &point(level));
            assert_eq!(ctx.homs(&one, &a).len(), 2);

            let uu = ctx.object(u, &discrete(2, level));
            assert_eq!(unique_arrow_check(&ctx, u, &uu, false).first_failure(), Some(4));
            let tri = ctx.times(&simplex(2, level), u);
            assert_eq!(unique_arrow_check(&ctx, u, &tri, false).first_failure(), Some(3));
        }
    }
}

#[test]
fn the_second_coordinate_is_ignored_under_a_principal_filter() {
    let ctx = Context::principal(2, vec![0], 2);
    let u = vec![true, false];
    let a = vec![simplex(1, 2), sphere(2, 2)];
    assert!(unique_arrow_check(&ctx, &u, &a, false).passes());
}

#[test]
fn trivial_filter_product_has_four_maps() {
    let ctx = Context::principal(2, vec![0, 1], 2);
    let both = vec![true, true];
    let a = ctx.times(&simplex(1, 2), &both);
    let r = unique_arrow_check(&ctx, &both, &a, false);
    assert!(!r.conditions[2]);
    assert_eq!(r.notes, vec!["Hom(U, A) has 4 elements".to_string()]);
    let half = vec![true, false];
    assert!(unique_arrow_check(&ctx, &half, &ctx.times(&simplex(1, 2), &half), false).passes());
}

#[test]
fn empty_subterminal_admits_no_candidate() {
    let ctx = Context::plain(2);
    let u = vec![false];
    for a in [empty(2), point(2), simplex(1, 2)] {
        assert!(!unique_arrow_check(&ctx, &u, &[a], true).passes());
    }
}

#[test]
fn small_candidate_search_finds_only_the_interval() {
    let start = Instant::now();
    let pool = candidates(3, 4, 2, 2);
    let ctx = Context::plain(2);
    assert!(unique_arrow_counterexamples(&ctx, &[true], &pool, &[]).is_empty());
    let passing = pool.iter().filter(|a| unique_arrow_check(&ctx, &[true], std::slice::from_ref(*a), true).passes()).count();
    assert!(passing >= 2, "both orientations of the edge pass");
    eprintln!("{} candidates in {:?}", pool.len(), start.elapsed());
}

proptest! {
    #[test]
    fn products_and_coproducts_satisfy_identities(a in 0usize..3, b in 0usize..3, kind in 0usize..3) {
        let build = |k: usize, n: usize| match k { 0 => simplex(n, 3), 1 => sphere(n, 3), _ => boundary(n, 3) };
        let x = build(kind, a);
        let y = build((kind + 1) % 3, b);
        let p = product(&x, &y);
        prop_assert!(p.identity_violations().is_empty());
        prop_assert!(coproduct(&x, &y).identity_violations().is_empty());
        let (l, r) = product_projections(&x, &y);
        prop_assert!(l.commutes(&p, &x) && r.commutes(&p, &y));
    }

    #[test]
    fn subobjects_are_closed(n in 1usize..3, level in 1usize..3) {
        let x = simplex(n, level);
        for mask in subobjects(&x) {
            prop_assert_eq!(&generated(&x, &mask), &mask);
            let (s, inc) = restrict(&x, &mask);
            prop_assert!(s.identity_violations().is_empty());
            prop_assert!(inc.commutes(&s, &x) && inc.is_mono(&x));
        }
    }
}
