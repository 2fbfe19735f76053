//! Subcommand implementations.

use std::time::Instant;

use ugrid_core::closed_form;
use ugrid_core::cobordism::{
    crossing_change_pair, homotopy_identity_holds, induces_localized_isomorphism,
    oriented_saddle, unorientable_saddle, SparseUMap,
};
use ugrid_core::complex::{build_complex, BuildOptions, UComplex};
use ugrid_core::grid::{trace_components, GridDiagram, PlanarRealization};
use ugrid_core::homology::{homology, homology_mod_uk_oracle, GradedModule};
use ugrid_core::io;
use ugrid_core::library;
use ugrid_core::rng::SplitMix64;
use ugrid_core::signature::signature_from_grid;
use ugrid_core::upsilon;
use ugrid_core::Error;

use crate::args::{Options, SigmaMode};
use crate::report::{Check, ModuleReport, Report, SigmaProvenance};

/// Failure modes mapped to exit codes.
pub enum CommandError {
    /// Exit code 2.
    Input(String),
    /// Exit code 3.
    Resource(String),
}

impl From<Error> for CommandError {
    fn from(e: Error) -> CommandError {
        match e {
            Error::SizeLimitExceeded { .. } => CommandError::Resource(e.to_string()),
            other => CommandError::Input(other.to_string()),
        }
    }
}

pub type CommandResult = Result<Report, CommandError>;

fn build_options(opts: &Options) -> BuildOptions {
    BuildOptions { max_index: opts.max_index, huge: opts.huge, threads: opts.threads }
}

/// Resolves `builtin:<name>` or a grid file path.
pub fn load_grid(input: &str) -> Result<GridDiagram, CommandError> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return library::builtin(name)
            .map(|e| e.grid)
            .ok_or_else(|| CommandError::Input(format!("no built-in named `{name}`")));
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| CommandError::Input(format!("cannot read `{input}`: {e}")))?;
    Ok(io::grid_from_str(&text)?)
}

fn sigma_for(
    grid: &GridDiagram,
    opts: &Options,
) -> Result<(i64, SigmaProvenance), CommandError> {
    match opts.sigma {
        SigmaMode::External(v) => Ok((v, SigmaProvenance::External)),
        SigmaMode::Auto => {
            let p = PlanarRealization::new(grid, (0, 0));
            Ok((signature_from_grid(&p)?, SigmaProvenance::Computed))
        }
    }
}

pub fn cmd_hom(opts: &Options) -> CommandResult {
    let input = opts
        .positional
        .first()
        .ok_or_else(|| CommandError::Input("hom needs a grid input".into()))?;
    let start = Instant::now();

    if let Some(path) = input.strip_prefix("dump:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CommandError::Input(format!("cannot read `{path}`: {e}")))?;
        let complex = io::complex_from_str(&text)?;
        let module = homology(&complex)?;
        return Ok(Report {
            input: input.clone(),
            module: Some(ModuleReport::of(&module)),
            elapsed_ms: start.elapsed().as_millis(),
            ..Default::default()
        });
    }

    let grid = load_grid(input)?;
    let link = trace_components(&grid);
    let complex = build_complex(&grid, &build_options(opts))?;
    if let Some(path) = &opts.dump {
        std::fs::write(path, io::complex_to_string(&complex))
            .map_err(|e| CommandError::Input(format!("cannot write `{path}`: {e}")))?;
    }
    let module = homology(&complex)?;
    let divided = module.divide_v_factor((grid.index() - link.components) as u32)?;
    let set = upsilon::upsilon_set_of_module(&module, grid.index(), link.components)?;
    let (sigma, provenance) = sigma_for(&grid, opts)?;
    let renormalized = upsilon::renormalized_upsilon_set(&set, link.components, sigma);

    let mut report = Report {
        input: input.clone(),
        grid_index: Some(grid.index()),
        components: Some(link.components),
        module: Some(ModuleReport::of(&divided)),
        upsilon_set: Some(set.values().to_vec()),
        renormalized_upsilon_set2: Some(renormalized.values2().to_vec()),
        sigma: Some(sigma),
        sigma_provenance: Some(provenance),
        elapsed_ms: 0,
        ..Default::default()
    };
    if link.components == 1 {
        let u = set.max();
        report.upsilon = Some(u);
        report.gamma4_lower_bound = Some(upsilon::gamma4_lower_bound(u, sigma));
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_torus(opts: &Options) -> CommandResult {
    let (p, q) = match opts.positional.as_slice() {
        [p, q] => (
            p.parse::<i64>().map_err(|_| CommandError::Input("bad p".into()))?,
            q.parse::<i64>().map_err(|_| CommandError::Input("bad q".into()))?,
        ),
        _ => return Err(CommandError::Input("torus needs two parameters".into())),
    };
    let start = Instant::now();
    let mut report = Report { input: format!("torus {p} {q}"), ..Default::default() };
    if p == 1 || q == 1 {
        report.upsilon = Some(0);
        report.checks.push(Check {
            name: "degenerate parameters".into(),
            pass: true,
            detail: "unknot".into(),
        });
    } else {
        let data = closed_form::torus_alexander(p, q)?;
        let m = data.m_sequence();
        report.upsilon = Some(data.upsilon());
        report.checks.push(Check {
            name: "alexander exponents".into(),
            pass: true,
            detail: format!("{:?}", data.exponents()),
        });
        report.checks.push(Check {
            name: "staircase sequence".into(),
            pass: true,
            detail: format!("{m:?}"),
        });
        if let Ok(sigma) = ugrid_core::signature::signature_torus_check(p, q) {
            report.sigma = Some(sigma);
            report.gamma4_lower_bound =
                Some(upsilon::gamma4_lower_bound(data.upsilon(), sigma));
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn chain_map_checks(
    checks: &mut Vec<Check>,
    label: &str,
    map: &SparseUMap,
    src: &UComplex,
    tgt: &UComplex,
) {
    checks.push(Check {
        name: format!("{label} homogeneous"),
        pass: map.is_homogeneous(src, tgt),
        detail: format!("declared doubled shift {}", map.shift2()),
    });
    let defect = SparseUMap::differential(tgt)
        .compose_after(map)
        .xor(&map.compose_after(&SparseUMap::differential(src)));
    checks.push(Check {
        name: format!("{label} chain map"),
        pass: defect.is_zero(),
        detail: match defect.first_entry() {
            None => String::new(),
            Some((s, d, pow)) => format!("counterexample entry {s} -> U^{pow} {d}"),
        },
    });
}

pub fn cmd_band(opts: &Options) -> CommandResult {
    let input = opts
        .positional
        .first()
        .ok_or_else(|| CommandError::Input("band needs a grid input".into()))?;
    let grid = load_grid(input)?;
    let col = opts.column;
    let start = Instant::now();
    let mut report = Report {
        input: format!("band {input} --col {col}"),
        grid_index: Some(grid.index()),
        components: Some(trace_components(&grid).components),
        ..Default::default()
    };
    let build = build_options(opts);

    if opts.unorientable {
        let saddle = unorientable_saddle(&grid, col)?;
        let c = build_complex(&grid, &build)?;
        let c2 = build_complex(&saddle.g_resolved, &build)?;
        report.euler_number = Some(saddle.euler);
        report.checks.push(Check {
            name: "euler number from writhes".into(),
            pass: true,
            detail: format!(
                "e = {} with resolved crossing sign {}",
                saddle.euler, saddle.epsilon
            ),
        });
        chain_map_checks(&mut report.checks, "nu", &saddle.nu, &c, &c2);
        chain_map_checks(&mut report.checks, "nu'", &saddle.nu_prime, &c2, &c);
        let a = saddle.nu_prime.compose_after(&saddle.nu);
        report.checks.push(Check {
            name: "nu' after nu = U".into(),
            pass: a == SparseUMap::u_identity(&c),
            detail: String::new(),
        });
        let b = saddle.nu.compose_after(&saddle.nu_prime);
        report.checks.push(Check {
            name: "nu after nu' = U".into(),
            pass: b == SparseUMap::u_identity(&c2),
            detail: String::new(),
        });
        report.checks.push(Check {
            name: "declared shifts".into(),
            pass: saddle.nu.shift2() == -(2 - saddle.euler) / 2
                && saddle.nu_prime.shift2() == -(2 + saddle.euler) / 2,
            detail: format!(
                "nu {} nu' {} (doubled)",
                saddle.nu.shift2(),
                saddle.nu_prime.shift2()
            ),
        });
    } else if opts.oriented {
        let saddle = oriented_saddle(&grid, col)?;
        let cj = build_complex(&saddle.g_joined, &build)?;
        let cs = build_complex(&saddle.g_split, &build)?;
        chain_map_checks(&mut report.checks, "split", &saddle.split_map, &cj, &cs);
        chain_map_checks(&mut report.checks, "merge", &saddle.merge_map, &cs, &cj);
        report.checks.push(Check {
            name: "merge after split = U".into(),
            pass: saddle.merge_map.compose_after(&saddle.split_map)
                == SparseUMap::u_identity(&cj),
            detail: String::new(),
        });
        report.checks.push(Check {
            name: "split after merge = U".into(),
            pass: saddle.split_map.compose_after(&saddle.merge_map)
                == SparseUMap::u_identity(&cs),
            detail: String::new(),
        });
    } else {
        let cc = crossing_change_pair(&grid, col)?;
        let cp = build_complex(&cc.g_plus, &build)?;
        let cm = build_complex(&cc.g_minus, &build)?;
        report.checks.push(Check {
            name: "input sign".into(),
            pass: true,
            detail: if cc.input_is_positive {
                "input grid carries the positive crossing".into()
            } else {
                "input grid carries the negative crossing".into()
            },
        });
        chain_map_checks(&mut report.checks, "N", &cc.negative_map, &cp, &cm);
        chain_map_checks(&mut report.checks, "P", &cc.positive_map, &cm, &cp);
        let pn = cc.positive_map.compose_after(&cc.negative_map);
        report.checks.push(Check {
            name: "dH + Hd = PN + U".into(),
            pass: homotopy_identity_holds(&cc.homotopy_plus, &pn, &cp),
            detail: String::new(),
        });
        let np = cc.negative_map.compose_after(&cc.positive_map);
        report.checks.push(Check {
            name: "dH + Hd = NP + U".into(),
            pass: homotopy_identity_holds(&cc.homotopy_minus, &np, &cm),
            detail: String::new(),
        });
        report.checks.push(Check {
            name: "localized isomorphisms".into(),
            pass: induces_localized_isomorphism(&cc.negative_map, &cp, &cm)
                && induces_localized_isomorphism(&cc.positive_map, &cm, &cp),
            detail: String::new(),
        });
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

// ---------------------------------------------------------------------------
// Verification suites.

fn upsilon_set_of(grid: &GridDiagram, build: &BuildOptions) -> Result<Vec<i64>, Error> {
    Ok(upsilon::upsilon_set(grid, build)?.values().to_vec())
}

fn module_of(grid: &GridDiagram, build: &BuildOptions) -> Result<GradedModule, Error> {
    let link = trace_components(grid);
    let m = homology(&build_complex(grid, build)?)?;
    m.divide_v_factor((grid.index() - link.components) as u32)
}

pub fn cmd_verify(opts: &Options) -> CommandResult {
    let start = Instant::now();
    let mut checks: Vec<Check> = Vec::new();
    let build = build_options(opts);
    let run_default = !opts.quick && !opts.paper && opts.cobordism.is_none() && opts.random.is_none();

    if opts.quick || run_default {
        verify_quick(&mut checks, &build);
    }
    if opts.paper || run_default {
        verify_paper(&mut checks, &build)?;
    }
    if let Some(input) = &opts.cobordism {
        let grid = load_grid(input)?;
        verify_cobordism(&mut checks, &grid, opts.column, &build)?;
    }
    if let Some(count) = opts.random {
        verify_random(&mut checks, count, opts.max_index.min(7), opts.seed, &build);
    }

    Ok(Report {
        input: "verify".into(),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
        ..Default::default()
    })
}

fn verify_quick(checks: &mut Vec<Check>, build: &BuildOptions) {
    for entry in library::builtins() {
        if entry.grid.index() > 6 {
            continue;
        }
        let name = entry.name;
        let complex = match build_complex(&entry.grid, build) {
            Ok(c) => c,
            Err(e) => {
                checks.push(Check {
                    name: format!("{name}: complex"),
                    pass: false,
                    detail: e.to_string(),
                });
                continue;
            }
        };
        checks.push(Check {
            name: format!("{name}: differential squares to zero"),
            pass: complex.d_squared_is_zero(),
            detail: String::new(),
        });
        let module = match homology(&complex) {
            Ok(m) => m,
            Err(e) => {
                checks.push(Check {
                    name: format!("{name}: homology"),
                    pass: false,
                    detail: e.to_string(),
                });
                continue;
            }
        };
        let n = entry.grid.index();
        checks.push(Check {
            name: format!("{name}: free rank"),
            pass: module.free_rank() == 1 << (n - 1),
            detail: format!("{} free summands", module.free_rank()),
        });
        // Mirror duality on the free part: gradings map to
        // 2(1 - l) - g (doubled) under reflection.
        let l = trace_components(&entry.grid).components;
        let mirror = entry.grid.mirror();
        if let Ok(mm) = homology(&build_complex(&mirror, build).unwrap()) {
            let mut dual: Vec<i64> =
                module.free_gradings2().iter().map(|&g| 2 * (1 - l as i64) - g).collect();
            dual.sort_unstable();
            checks.push(Check {
                name: format!("{name}: mirror dualizes free gradings"),
                pass: mm.free_gradings2() == dual,
                detail: String::new(),
            });
        }
        // Stabilization invariance of the divided module.
        let stabilized = entry.grid.stabilize(0);
        let a = module.divide_v_factor((n - l) as u32);
        let b = build_complex(&stabilized, build)
            .and_then(|c| homology(&c))
            .and_then(|m| m.divide_v_factor((n + 1 - l) as u32));
        checks.push(Check {
            name: format!("{name}: stabilization invariance"),
            pass: matches!((&a, &b), (Ok(x), Ok(y)) if x == y),
            detail: String::new(),
        });
    }
}

fn verify_paper(checks: &mut Vec<Check>, build: &BuildOptions) -> Result<(), CommandError> {
    for entry in library::builtins() {
        let name = entry.name;
        if entry.grid.index() > build.max_index {
            continue;
        }
        if let Some((expected, _)) = entry.expected.upsilon {
            let got = upsilon::upsilon(&entry.grid, build)?;
            checks.push(Check {
                name: format!("{name}: upsilon"),
                pass: got == expected,
                detail: format!("expected {expected}, got {got}"),
            });
        }
        if let Some((expected, _)) = &entry.expected.upsilon_set {
            let got = upsilon_set_of(&entry.grid, build)?;
            checks.push(Check {
                name: format!("{name}: upsilon set"),
                pass: &got == expected,
                detail: format!("expected {expected:?}, got {got:?}"),
            });
        }
        if let Some((expected, _)) = entry.expected.sigma {
            let got = signature_from_grid(&PlanarRealization::new(&entry.grid, (0, 0)))?;
            checks.push(Check {
                name: format!("{name}: sigma"),
                pass: got == expected,
                detail: format!("expected {expected}, got {got}"),
            });
        }
        if let (Some((free, _)), Some((torsion, _))) =
            (&entry.expected.module_free2, &entry.expected.module_torsion)
        {
            let module = module_of(&entry.grid, build)?;
            let got = ModuleReport::of(&module);
            let pass = &got.free == free && &got.torsion == torsion;
            checks.push(Check {
                name: format!("{name}: module decomposition"),
                pass,
                detail: format!("got free {:?} torsion {:?}", got.free, got.torsion),
            });
        }
    }
    Ok(())
}

fn verify_cobordism(
    checks: &mut Vec<Check>,
    grid: &GridDiagram,
    col: usize,
    build: &BuildOptions,
) -> Result<(), CommandError> {
    let cc = crossing_change_pair(grid, col)?;
    let cp = build_complex(&cc.g_plus, build)?;
    let cm = build_complex(&cc.g_minus, build)?;
    checks.push(Check {
        name: "N chain map".into(),
        pass: cc.negative_map.is_chain_map(&cp, &cm),
        detail: String::new(),
    });
    checks.push(Check {
        name: "P chain map".into(),
        pass: cc.positive_map.is_chain_map(&cm, &cp),
        detail: String::new(),
    });
    let pn = cc.positive_map.compose_after(&cc.negative_map);
    checks.push(Check {
        name: "dH + Hd = PN + U".into(),
        pass: homotopy_identity_holds(&cc.homotopy_plus, &pn, &cp),
        detail: String::new(),
    });
    let np = cc.negative_map.compose_after(&cc.positive_map);
    checks.push(Check {
        name: "dH + Hd = NP + U".into(),
        pass: homotopy_identity_holds(&cc.homotopy_minus, &np, &cm),
        detail: String::new(),
    });
    checks.push(Check {
        name: "localized isomorphisms".into(),
        pass: induces_localized_isomorphism(&cc.negative_map, &cp, &cm)
            && induces_localized_isomorphism(&cc.positive_map, &cm, &cp),
        detail: String::new(),
    });
    Ok(())
}

fn verify_random(
    checks: &mut Vec<Check>,
    count: usize,
    max_index: usize,
    seed: u64,
    build: &BuildOptions,
) {
    let mut rng = SplitMix64::new(seed);
    let mut bridge_writhe_fail = None;
    for trial in 0..count {
        let n = 3 + (trial % (max_index.saturating_sub(2)).max(1));
        let g = GridDiagram::random(n, &mut rng);
        let a = rng.below(n as u64) as usize;
        let b = rng.below(n as u64) as usize;
        let p = PlanarRealization::new(&g, (a, b));
        if p.j_marked_diff2() != 2 * (p.bridge_index() - p.writhe()) {
            bridge_writhe_fail = Some(format!("grid {g:?} shift ({a},{b})"));
        }
    }
    checks.push(Check {
        name: format!("bridge-writhe identity on {count} random planar grids"),
        pass: bridge_writhe_fail.is_none(),
        detail: bridge_writhe_fail.unwrap_or_default(),
    });

    let mut mirror_fail = None;
    let small = count.min(50);
    for _ in 0..small {
        let n = 3 + (rng.below(3) as usize);
        let g = GridDiagram::random(n, &mut rng);
        if trace_components(&g).components != 1 {
            continue;
        }
        let u = upsilon::upsilon(&g, build).unwrap();
        let um = upsilon::upsilon(&g.mirror(), build).unwrap();
        if u != -um {
            mirror_fail = Some(format!("grid {g:?}: {u} vs {um}"));
        }
    }
    checks.push(Check {
        name: format!("mirror law on up to {small} random knots"),
        pass: mirror_fail.is_none(),
        detail: mirror_fail.unwrap_or_default(),
    });

    let mut oracle_fail = None;
    for _ in 0..count.min(25) {
        let n = 3 + (rng.below(3) as usize);
        let g = GridDiagram::random(n, &mut rng);
        let c = build_complex(&g, build).unwrap();
        let m = homology(&c).unwrap();
        for k in 1..=4 {
            let oracle = homology_mod_uk_oracle(&c, k, 1_000_000).unwrap();
            if m.mod_uk_dimensions(k) != oracle {
                oracle_fail = Some(format!("grid {g:?} k={k}"));
            }
        }
    }
    checks.push(Check {
        name: "mod-U^k oracle agreement on random grids".into(),
        pass: oracle_fail.is_none(),
        detail: oracle_fail.unwrap_or_default(),
    });
}
