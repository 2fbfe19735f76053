//! Acceptance suite: one test per criterion, each printing a pass line
//! with its measured runtime. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the lines, `-- --ignored` for the
//! long stretch targets).

use std::time::{Duration, Instant};

use ugrid_core::closed_form::{upsilon_torus, upsilon_torus_3q};
use ugrid_core::cobordism::{
    crossing_change_pair, homotopy_identity_holds, induces_localized_isomorphism,
    oriented_saddle, unorientable_saddle, SparseUMap,
};
use ugrid_core::complex::{build_complex, BuildOptions, UComplex};
use ugrid_core::grid::{trace_components, GridDiagram, PlanarRealization};
use ugrid_core::homology::{homology, homology_mod_uk_oracle, GradedModule};
use ugrid_core::library::{builtin, builtins, torus_grid};
use ugrid_core::rng::SplitMix64;
use ugrid_core::signature::signature_from_grid;
use ugrid_core::upsilon::{
    gamma4_lower_bound, renormalized_upsilon_set, upsilon, upsilon_set, upsilon_set_of_module,
};

fn options() -> BuildOptions {
    BuildOptions { threads: 4, ..Default::default() }
}

fn report(criterion: &str, elapsed: Duration, detail: &str) {
    println!("ACCEPTANCE {criterion}: PASS in {:.3}s {detail}", elapsed.as_secs_f64());
}

fn grid_module(grid: &GridDiagram) -> GradedModule {
    let link = trace_components(grid);
    homology(&build_complex(grid, &options()).unwrap())
        .unwrap()
        .divide_v_factor((grid.index() - link.components) as u32)
        .unwrap()
}

#[test]
fn acceptance_01_t34_module() {
    let start = Instant::now();
    let module = grid_module(&builtin("torus-3-4").unwrap().grid);
    let mut expected = GradedModule::default();
    expected.free.insert(-4, 1);
    expected.torsion.insert((-6, 1), 2);
    assert_eq!(module, expected, "T(3,4) module after V-division");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "must finish within 5 s, took {elapsed:?}");
    report("1 (T(3,4) module)", elapsed, "= F[U](-2) + (F[U]/U)(-3)^2");
}

#[test]
fn acceptance_02_upsilon_values() {
    let start = Instant::now();
    let opts = options();
    assert_eq!(upsilon(&builtin("unknot2").unwrap().grid, &opts).unwrap(), 0);
    assert_eq!(upsilon(&builtin("trefoil").unwrap().grid, &opts).unwrap(), -1);
    assert_eq!(upsilon(&builtin("figure8").unwrap().grid, &opts).unwrap(), 0);
    assert_eq!(upsilon(&builtin("torus-3-4").unwrap().grid, &opts).unwrap(), -2);
    for (p, q, expected) in [(3, 5, -3), (3, 7, -4), (5, 9, -10), (5, 11, -12)] {
        let t = Instant::now();
        assert_eq!(upsilon_torus(p, q).unwrap(), expected, "closed form T({p},{q})");
        assert!(t.elapsed() < Duration::from_secs(1));
    }
    assert_eq!(upsilon_torus_3q(5).unwrap(), -3);
    assert_eq!(upsilon_torus_3q(7).unwrap(), -4);
    // Grid cross-check of T(3,5) at index 8.
    let t = Instant::now();
    assert_eq!(upsilon(&builtin("torus-3-5").unwrap().grid, &opts).unwrap(), -3);
    assert!(t.elapsed() < Duration::from_secs(60), "T(3,5) cross-check within 60 s");
    report("2 (upsilon values)", start.elapsed(), "grids + closed forms + table");
}

#[test]
fn acceptance_03_mirror_law() {
    let start = Instant::now();
    let opts = options();
    let mut covered = 0;
    for entry in builtins() {
        if entry.grid.index() > 8 {
            continue; // the pretzel grid exceeds the homology budget
        }
        let l = trace_components(&entry.grid).components;
        if l == 1 {
            let u = upsilon(&entry.grid, &opts).unwrap();
            let um = upsilon(&entry.grid.mirror(), &opts).unwrap();
            assert_eq!(um, -u, "{}", entry.name);
        } else {
            // Links: the upsilon-set dualizes to (1 - l) - reversed.
            let set = upsilon_set(&entry.grid, &opts).unwrap();
            let mset = upsilon_set(&entry.grid.mirror(), &opts).unwrap();
            let mut dual: Vec<i64> =
                set.values().iter().map(|&v| (1 - l as i64) - v).collect();
            dual.sort_unstable();
            assert_eq!(mset.values(), &dual[..], "{}", entry.name);
        }
        covered += 1;
    }
    let mut rng = SplitMix64::new(2026);
    let mut random = 0;
    while random < 50 {
        let n = 3 + (rng.below(4) as usize);
        let g = GridDiagram::random(n, &mut rng);
        if trace_components(&g).components != 1 {
            continue;
        }
        let u = upsilon(&g, &opts).unwrap();
        let um = upsilon(&g.mirror(), &opts).unwrap();
        assert_eq!(um, -u, "random grid {g:?}");
        random += 1;
    }
    report(
        "3 (mirror law)",
        start.elapsed(),
        &format!("{covered} built-ins + {random} random knots"),
    );
}

#[test]
fn acceptance_04_bridge_writhe_identity() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(7);
    for trial in 0..120 {
        let n = 3 + (trial % 5);
        let g = GridDiagram::random(n, &mut rng);
        let shift = (rng.below(n as u64) as usize, rng.below(n as u64) as usize);
        let p = PlanarRealization::new(&g, shift);
        assert_eq!(
            p.j_marked_diff2(),
            2 * (p.bridge_index() - p.writhe()),
            "grid {g:?} shift {shift:?}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5));
    report("4 (bridge-writhe identity)", elapsed, "120 random planar grids, index 3-7");
}

#[test]
fn acceptance_05_stabilization() {
    let start = Instant::now();
    let mut pairs = 0;
    for (name, col) in
        [("unknot2", 0), ("trefoil", 2), ("hopf", 1), ("unlink2", 3), ("figure8", 4), ("torus-3-4", 5)]
    {
        let grid = builtin(name).unwrap().grid;
        let stabilized = grid.stabilize(col);
        assert_eq!(grid_module(&grid), grid_module(&stabilized), "{name} at column {col}");
        pairs += 1;
    }
    report("5 (stabilization invariance)", start.elapsed(), &format!("{pairs} pairs"));
}

fn complexes_of(cc: &ugrid_core::cobordism::CrossingChange) -> (UComplex, UComplex) {
    (
        build_complex(&cc.g_plus, &options()).unwrap(),
        build_complex(&cc.g_minus, &options()).unwrap(),
    )
}

#[test]
fn acceptance_06_crossing_change() {
    let start = Instant::now();
    let trefoil = builtin("trefoil").unwrap().grid;
    let cc = crossing_change_pair(&trefoil, 0).unwrap();
    assert!(cc.input_is_positive, "the right-handed trefoil carries the positive crossing");
    let (cp, cm) = complexes_of(&cc);

    assert!(cc.negative_map.is_homogeneous(&cp, &cm) && cc.negative_map.shift2() == 0);
    assert!(cc.positive_map.is_homogeneous(&cm, &cp) && cc.positive_map.shift2() == -2);
    assert!(cc.negative_map.is_chain_map(&cp, &cm), "N chain map");
    assert!(cc.positive_map.is_chain_map(&cm, &cp), "P chain map");

    let pn = cc.positive_map.compose_after(&cc.negative_map);
    assert!(homotopy_identity_holds(&cc.homotopy_plus, &pn, &cp), "dH + Hd = PN + U");
    let np = cc.negative_map.compose_after(&cc.positive_map);
    assert!(homotopy_identity_holds(&cc.homotopy_minus, &np, &cm), "dH + Hd = NP + U");

    assert!(induces_localized_isomorphism(&cc.negative_map, &cp, &cm));
    assert!(induces_localized_isomorphism(&cc.positive_map, &cm, &cp));

    // The swap unknots the trefoil; upsilon obeys the monotonicity.
    let u_plus = upsilon(&cc.g_plus, &options()).unwrap();
    let u_minus = upsilon(&cc.g_minus, &options()).unwrap();
    assert_eq!((u_plus, u_minus), (-1, 0));
    assert!((0..=1).contains(&(u_minus - u_plus)));

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10));
    report("6 (crossing-change identities)", elapsed, "trefoil <-> unknot");
}

#[test]
fn acceptance_07_oriented_saddles() {
    let start = Instant::now();
    let opts = options();

    // Unknot (index 4) splitting into the two-component unlink.
    let unknot4 = GridDiagram::new(&[0, 1, 3, 2], &[2, 3, 0, 1]).unwrap();
    assert_eq!(trace_components(&unknot4).components, 1);
    // Trefoil splitting into a Hopf link.
    let trefoil = builtin("trefoil").unwrap().grid;

    for (label, grid, col) in [("unknot->2-unlink", &unknot4, 0), ("trefoil->hopf", &trefoil, 0)] {
        let saddle = oriented_saddle(grid, col).unwrap();
        let cj = build_complex(&saddle.g_joined, &opts).unwrap();
        let cs = build_complex(&saddle.g_split, &opts).unwrap();
        assert!(saddle.split_map.is_homogeneous(&cj, &cs) && saddle.split_map.shift2() == -2);
        assert!(saddle.merge_map.is_homogeneous(&cs, &cj) && saddle.merge_map.shift2() == 0);
        assert!(saddle.split_map.is_chain_map(&cj, &cs), "{label}: split chain map");
        assert!(saddle.merge_map.is_chain_map(&cs, &cj), "{label}: merge chain map");
        assert_eq!(
            saddle.merge_map.compose_after(&saddle.split_map),
            SparseUMap::u_identity(&cj),
            "{label}: merge after split"
        );
        assert_eq!(
            saddle.split_map.compose_after(&saddle.merge_map),
            SparseUMap::u_identity(&cs),
            "{label}: split after merge"
        );

        // Upsilon-set inequalities for the saddle move.
        let set_joined = upsilon_set(&saddle.g_joined, &opts).unwrap();
        let set_split = upsilon_set(&saddle.g_split, &opts).unwrap();
        assert!(set_joined.max() - 1 <= set_split.max() && set_split.max() <= set_joined.max());
        assert!(set_joined.min() - 1 <= set_split.min() && set_split.min() <= set_joined.min());
    }

    // The trefoil saddle output really is a Hopf link: two components
    // with linking number +-1.
    let saddle = oriented_saddle(&trefoil, 0).unwrap();
    let link = trace_components(&saddle.g_split);
    assert_eq!(link.components, 2);
    let p = PlanarRealization::new(&saddle.g_split, (0, 0));
    assert_eq!(p.linking2(&link, 0, 1).abs(), 2);

    report("7 (saddle identities)", start.elapsed(), "unknot<->2-unlink, trefoil<->hopf");
}

#[test]
fn acceptance_08_unorientable_saddle() {
    let start = Instant::now();
    let opts = options();
    let trefoil = builtin("trefoil").unwrap().grid;
    let saddle = unorientable_saddle(&trefoil, 0).unwrap();
    let c = build_complex(&trefoil, &opts).unwrap();
    let c2 = build_complex(&saddle.g_resolved, &opts).unwrap();

    // The resolution of the trefoil band is an unknot.
    let resolved_module = homology(&c2).unwrap();
    assert_eq!(resolved_module.torsion_count(), 0, "resolved knot is unknotted");

    assert_eq!(saddle.nu_prime.compose_after(&saddle.nu), SparseUMap::u_identity(&c));
    assert_eq!(saddle.nu.compose_after(&saddle.nu_prime), SparseUMap::u_identity(&c2));

    // Measured degree shifts match -(2 -+ e)/2 in doubled units.
    let e = saddle.euler;
    assert!(saddle.nu.is_homogeneous(&c, &c2));
    assert!(saddle.nu_prime.is_homogeneous(&c2, &c));
    assert_eq!(saddle.nu.shift2(), -(2 - e) / 2);
    assert_eq!(saddle.nu_prime.shift2(), -(2 + e) / 2);

    // |upsilon(K) - upsilon(K') + e/4| <= 1/2, scaled by 4.
    let u = upsilon(&trefoil, &opts).unwrap();
    let u2 = upsilon(&saddle.g_resolved, &opts).unwrap();
    assert!((4 * u - 4 * u2 + e).abs() <= 2);

    report(
        "8 (unorientable saddle)",
        start.elapsed(),
        &format!("trefoil -> unknot band, e = {e}"),
    );
}

#[test]
fn acceptance_09_link_upsilon_sets() {
    let start = Instant::now();
    let opts = options();

    let unlink = builtin("unlink2").unwrap().grid;
    assert_eq!(upsilon_set(&unlink, &opts).unwrap().values(), &[-1, 0]);

    let hopf = builtin("hopf").unwrap().grid;
    let set = upsilon_set(&hopf, &opts).unwrap();
    assert_eq!(set.values(), &[-1, -1]);
    let sigma = signature_from_grid(&PlanarRealization::new(&hopf, (0, 0))).unwrap();
    assert_eq!(sigma, -1);
    let renorm = renormalized_upsilon_set(&set, 2, sigma);
    assert_eq!(renorm.values2(), &[0, 0]);

    // Reorienting the second component gives the same renormalized set.
    let link = trace_components(&hopf);
    let reoriented = hopf.reorient_component(&link, 1);
    let set2 = upsilon_set(&reoriented, &opts).unwrap();
    let sigma2 = signature_from_grid(&PlanarRealization::new(&reoriented, (0, 0))).unwrap();
    let renorm2 = renormalized_upsilon_set(&set2, 2, sigma2);
    assert_eq!(renorm2.values2(), renorm.values2(), "renormalized set is orientation-free");

    report("9 (link upsilon sets)", start.elapsed(), "2-unlink and Hopf link");
}

#[test]
fn acceptance_10_signature_anchors() {
    let start = Instant::now();
    for (name, expected) in [("unknot2", 0), ("unknot3", 0), ("trefoil", -2), ("torus-3-4", -6)] {
        let grid = builtin(name).unwrap().grid;
        let sigma = signature_from_grid(&PlanarRealization::new(&grid, (0, 0))).unwrap();
        assert_eq!(sigma, expected, "{name}");
    }
    assert_eq!(gamma4_lower_bound(-2, -6), 1, "gamma4 bound for T(3,4)");
    for n in 1..=8 {
        assert_eq!(gamma4_lower_bound(-2 * n, -6 * n), n, "connected-sum arithmetic");
    }
    report("10 (signature anchors)", start.elapsed(), "0 / -2 / -6 and gamma4 bounds");
}

#[test]
fn acceptance_11_oracle_equivalence() {
    let start = Instant::now();
    let opts = options();
    let mut rng = SplitMix64::new(11);
    for trial in 0..200 {
        let n = 3 + (trial % 3);
        let g = GridDiagram::random(n, &mut rng);
        let c = build_complex(&g, &opts).unwrap();
        let m = homology(&c).unwrap();
        for k in 1..=4 {
            let oracle = homology_mod_uk_oracle(&c, k, 1_000_000).unwrap();
            assert_eq!(m.mod_uk_dimensions(k), oracle, "grid {g:?} k={k}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120));
    report("11 (oracle equivalence)", elapsed, "200 random grids of index 3-5, k <= 4");
}

/// Stretch target: the Conway knot needs a verified index-11 grid,
/// which is not shipped; supply one through `CONWAY_GRID=<path>` and
/// run with `--ignored`. Expect minutes of runtime and several GB.
#[test]
#[ignore = "stretch target: needs --huge resources and an externally supplied verified grid"]
fn acceptance_12_conway_knot() {
    let path = std::env::var("CONWAY_GRID")
        .expect("set CONWAY_GRID to a grid file of the Conway knot (index about 11)");
    let text = std::fs::read_to_string(&path).expect("readable grid file");
    let grid = ugrid_core::io::grid_from_str(&text).expect("valid grid file");
    let start = Instant::now();
    let opts = BuildOptions { huge: true, threads: 8, ..Default::default() };
    let u = upsilon(&grid, &opts).unwrap();
    assert_eq!(u, 0, "upsilon of the Conway knot");
    report("12 (Conway knot)", start.elapsed(), "upsilon = 0");
}

/// Stretch check within the default budget: the index-9 grid of
/// T(2,7) reproduces the closed form. Roughly 1-2 minutes.
#[test]
#[ignore = "stretch target: about two minutes"]
fn stretch_t27_grid_matches_closed_form() {
    let start = Instant::now();
    let grid = torus_grid(2, 7);
    let opts = BuildOptions { threads: 8, ..Default::default() };
    let module = homology(&build_complex(&grid, &opts).unwrap()).unwrap();
    let set = upsilon_set_of_module(&module, grid.index(), 1).unwrap();
    assert_eq!(set.max(), upsilon_torus(2, 7).unwrap());
    report("stretch (T(2,7) index 9)", start.elapsed(), "grid upsilon = closed form");
}
