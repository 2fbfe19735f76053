//! Graded module decomposition of the homology of a `UComplex`.
//!
//! `F[U]` is a principal ideal domain, so the homology splits into free
//! summands `F[U]` and torsion summands `F[U]/(U^k)`. Because every
//! differential entry is a monomial whose power is forced by the
//! gradings, the computation never leaves monomial territory:
//!
//! 1. entries with `u_power = 0` are unit pivots and are cancelled
//!    exhaustively (zig-zag update of the surviving entries);
//! 2. on the reduced complex every entry has `u_power >= 1`; repeatedly
//!    pivoting on a globally minimal power `k` splits off one torsion
//!    summand `F[U]/(U^k)` whose generator sits at the grading of the
//!    pivot target (the top of the tower, killed by `U^k`);
//! 3. generators left without entries are free summands.
//!
//! Pivot fill-in has power `p + q - k >= k`, so the minimum never
//! decreases and step 2 terminates. Ties are broken by smallest
//! `(u_power, source id, target id)` for determinism.

use std::collections::BTreeMap;
use std::collections::BinaryHeap;
use std::cmp::Reverse;

use crate::complex::UComplex;
use crate::error::Error;
use crate::gf2::BitMatrix;

/// Decomposition of a finitely generated graded `F[U]`-module:
/// multiset of free-summand gradings and of torsion pairs
/// `(grading of generator, exponent k)`. Gradings are doubled.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedModule {
    pub free: BTreeMap<i64, u64>,
    pub torsion: BTreeMap<(i64, u32), u64>,
}

impl GradedModule {
    pub fn free_rank(&self) -> u64 {
        self.free.values().sum()
    }

    pub fn torsion_count(&self) -> u64 {
        self.torsion.values().sum()
    }

    /// Sorted doubled gradings of the free part, with multiplicity.
    pub fn free_gradings2(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (&g, &m) in &self.free {
            out.extend(std::iter::repeat(g).take(m as usize));
        }
        out
    }

    /// Maximal free grading (doubled); the module must have free rank.
    pub fn max_free_grading2(&self) -> Option<i64> {
        self.free.keys().next_back().copied()
    }

    /// `F_2`-dimensions by doubled grading of this module reduced mod
    /// `U^k` (i.e. of `M / U^k M` plus the `U^k`-torsion shifted down),
    /// matching the homology of the complex tensored with `F[U]/(U^k)`.
    pub fn mod_uk_dimensions(&self, k: u32) -> BTreeMap<i64, u64> {
        let mut dims: BTreeMap<i64, u64> = BTreeMap::new();
        for (&g, &mult) in &self.free {
            for j in 0..k as i64 {
                *dims.entry(g - 2 * j).or_default() += mult;
            }
        }
        for (&(g, m), &mult) in &self.torsion {
            let reach = m.min(k) as i64;
            // Surviving tower of the generator.
            for j in 0..reach {
                *dims.entry(g - 2 * j).or_default() += mult;
            }
            // Tor term: survivors of the killed source generator, whose
            // own grading is g - 2m + 2; only its multiples by U^j with
            // j + m >= k remain cycles mod U^k.
            let start_j = (k as i64 - m as i64).max(0);
            let x_top = (g - 2 * m as i64 + 2) - 2 * start_j;
            for j in 0..reach {
                *dims.entry(x_top - 2 * j).or_default() += mult;
            }
        }
        dims
    }

    /// Divides every multiplicity by `2^copies`, inverting the tensor
    /// factor `V^copies` where `V` is two-dimensional in grading zero.
    pub fn divide_v_factor(&self, copies: u32) -> Result<GradedModule, Error> {
        let divisor = 1u64 << copies;
        let mut out = GradedModule::default();
        for (&g, &m) in &self.free {
            if m % divisor != 0 {
                return Err(Error::NotDivisible { grading2: g, multiplicity: m, divisor });
            }
            out.free.insert(g, m / divisor);
        }
        for (&key, &m) in &self.torsion {
            if m % divisor != 0 {
                return Err(Error::NotDivisible { grading2: key.0, multiplicity: m, divisor });
            }
            out.torsion.insert(key, m / divisor);
        }
        Ok(out)
    }

    /// Tensor with `W^copies`, `W` two-dimensional with one generator
    /// in grading 0 and one in grading -1 (doubled: -2). Used by the
    /// disjoint-union tests.
    pub fn tensor_w_factor(&self, copies: u32) -> GradedModule {
        let mut current = self.clone();
        for _ in 0..copies {
            let mut next = GradedModule::default();
            for (&g, &m) in &current.free {
                *next.free.entry(g).or_default() += m;
                *next.free.entry(g - 2).or_default() += m;
            }
            for (&(g, k), &m) in &current.torsion {
                *next.torsion.entry((g, k)).or_default() += m;
                *next.torsion.entry((g - 2, k)).or_default() += m;
            }
            current = next;
        }
        current
    }
}

impl std::fmt::Display for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (&g, &m) in self.free.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m != 1 {
                write!(f, "{m} F[U]({})", Frac2(g))?;
            } else {
                write!(f, "F[U]({})", Frac2(g))?;
            }
        }
        for (&(g, k), &m) in self.torsion.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m != 1 {
                write!(f, "{m} F[U]/U^{k}({})", Frac2(g))?;
            } else {
                write!(f, "F[U]/U^{k}({})", Frac2(g))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Formats a doubled grading as an integer or half-integer.
pub struct Frac2(pub i64);

impl std::fmt::Display for Frac2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Log of one reduction run: unit cancellations and torsion pivots in
/// order, plus fill-in statistics. Replaying the trace on the original
/// complex reproduces the decomposition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub unit_pairs: Vec<(u32, u32)>,
    pub pivots: Vec<(u32, u32, u32)>,
    pub fill_in_toggles: u64,
}

// ---------------------------------------------------------------------------
// Sparse mutable view of the differential.

struct Reducer {
    delta2: Vec<i32>,
    out: Vec<Vec<u32>>,
    incoming: Vec<Vec<u32>>,
    alive: Vec<bool>,
    fill_in: u64,
}

fn sorted_insert_or_remove(list: &mut Vec<u32>, value: u32) -> bool {
    match list.binary_search(&value) {
        Ok(pos) => {
            list.remove(pos);
            false
        }
        Err(pos) => {
            list.insert(pos, value);
            true
        }
    }
}

impl Reducer {
    fn new(complex: &UComplex) -> Reducer {
        let gens = complex.generators();
        let mut out = vec![Vec::new(); gens];
        let mut incoming = vec![Vec::new(); gens];
        for src in 0..gens as u32 {
            for &(dst, _) in complex.entries_from(src) {
                out[src as usize].push(dst);
                incoming[dst as usize].push(src);
            }
        }
        for list in incoming.iter_mut() {
            list.sort_unstable();
        }
        Reducer {
            delta2: complex.delta2_table().to_vec(),
            out,
            incoming,
            alive: vec![true; gens],
            fill_in: 0,
        }
    }

    #[inline]
    fn power(&self, src: u32, dst: u32) -> i32 {
        (self.delta2[dst as usize] - self.delta2[src as usize]) / 2 + 1
    }

    fn has_entry(&self, src: u32, dst: u32) -> bool {
        self.out[src as usize].binary_search(&dst).is_ok()
    }

    /// Cancels the pivot entry `src -> dst`, emitting fill-in toggles.
    /// New entries are reported through `on_insert`; every generator
    /// whose adjacency changed is reported through `on_touch`.
    fn cancel(
        &mut self,
        src: u32,
        dst: u32,
        mut on_insert: impl FnMut(u32, u32),
        mut on_touch: impl FnMut(u32),
    ) {
        let sources: Vec<u32> =
            self.incoming[dst as usize].iter().copied().filter(|&s| s != src).collect();
        let targets: Vec<u32> =
            self.out[src as usize].iter().copied().filter(|&t| t != dst).collect();

        // Detach the cancelled pair first.
        for &t in &self.out[src as usize].clone() {
            let list = &mut self.incoming[t as usize];
            if let Ok(pos) = list.binary_search(&src) {
                list.remove(pos);
                on_touch(t);
            }
        }
        for &s in &self.incoming[src as usize].clone() {
            let list = &mut self.out[s as usize];
            if let Ok(pos) = list.binary_search(&src) {
                list.remove(pos);
                on_touch(s);
            }
        }
        for &t in &self.out[dst as usize].clone() {
            let list = &mut self.incoming[t as usize];
            if let Ok(pos) = list.binary_search(&dst) {
                list.remove(pos);
                on_touch(t);
            }
        }
        for &s in &self.incoming[dst as usize].clone() {
            let list = &mut self.out[s as usize];
            if let Ok(pos) = list.binary_search(&dst) {
                list.remove(pos);
                on_touch(s);
            }
        }
        self.out[src as usize].clear();
        self.incoming[src as usize].clear();
        self.out[dst as usize].clear();
        self.incoming[dst as usize].clear();
        self.alive[src as usize] = false;
        self.alive[dst as usize] = false;

        for &s in &sources {
            on_touch(s);
            for &t in &targets {
                debug_assert!(s != t, "fill-in must not create a self-entry here");
                self.fill_in += 1;
                if sorted_insert_or_remove(&mut self.out[s as usize], t) {
                    sorted_insert_or_remove(&mut self.incoming[t as usize], s);
                    on_insert(s, t);
                } else {
                    let list = &mut self.incoming[t as usize];
                    if let Ok(pos) = list.binary_search(&s) {
                        list.remove(pos);
                    }
                }
            }
        }
        for &t in &targets {
            on_touch(t);
        }
    }
}

fn run_reduction(complex: &UComplex) -> (GradedModule, ReductionTrace) {
    let mut red = Reducer::new(complex);
    let mut trace = ReductionTrace::default();

    // Phase 1: exhaust unit pivots. The driver alternates free
    // coreduction sweeps (pivots whose cancellation fills nothing in:
    // sole entry into the target or out of the source) with a global
    // scan for a minimum-fill unit pivot when the sweep stalls. Grid
    // complexes spend almost the whole reduction in the sweeps.
    let is_unit = |red: &Reducer, s: u32, d: u32| red.power(s, d) == 0;
    let zero_cost = |red: &Reducer, s: u32, d: u32| {
        red.incoming[d as usize].len() == 1 || red.out[s as usize].len() == 1
    };
    let mut queue: std::collections::VecDeque<(u32, u32)> = std::collections::VecDeque::new();
    let seed_from = |red: &Reducer, g: u32, queue: &mut std::collections::VecDeque<(u32, u32)>| {
        if !red.alive[g as usize] {
            return;
        }
        if red.out[g as usize].len() == 1 {
            let d = red.out[g as usize][0];
            if is_unit(red, g, d) {
                queue.push_back((g, d));
            }
        }
        if red.incoming[g as usize].len() == 1 {
            let s = red.incoming[g as usize][0];
            if is_unit(red, s, g) {
                queue.push_back((s, g));
            }
        }
    };
    for g in 0..red.out.len() as u32 {
        seed_from(&red, g, &mut queue);
    }
    // Free sweep first: these cancellations fill nothing in.
    while let Some((src, dst)) = queue.pop_front() {
        if !red.alive[src as usize]
            || !red.alive[dst as usize]
            || !red.has_entry(src, dst)
            || !zero_cost(&red, src, dst)
        {
            continue;
        }
        trace.unit_pairs.push((src, dst));
        let mut touched: Vec<u32> = Vec::new();
        red.cancel(src, dst, |_, _| {}, |g| touched.push(g));
        touched.sort_unstable();
        touched.dedup();
        for g in touched {
            seed_from(&red, g, &mut queue);
        }
    }
    // Remaining unit pivots by lazy minimum-fill heap: a popped entry
    // whose cost key went stale is re-pushed at its current cost.
    let cost = |red: &Reducer, src: u32, dst: u32| -> u64 {
        (red.incoming[dst as usize].len() as u64 - 1) * (red.out[src as usize].len() as u64 - 1)
    };
    let mut units: BinaryHeap<Reverse<(u64, u32, u32)>> = BinaryHeap::new();
    for src in 0..red.out.len() as u32 {
        if !red.alive[src as usize] {
            continue;
        }
        for &dst in &red.out[src as usize] {
            if is_unit(&red, src, dst) {
                units.push(Reverse((cost(&red, src, dst), src, dst)));
            }
        }
    }
    while let Some(Reverse((key, src, dst))) = units.pop() {
        if !red.alive[src as usize] || !red.alive[dst as usize] || !red.has_entry(src, dst) {
            continue;
        }
        let current = cost(&red, src, dst);
        if current != key {
            units.push(Reverse((current, src, dst)));
            continue;
        }
        trace.unit_pairs.push((src, dst));
        let d2 = red.delta2.clone();
        let mut inserts = Vec::new();
        red.cancel(
            src,
            dst,
            |s, t| {
                if (d2[t as usize] - d2[s as usize]) / 2 + 1 == 0 {
                    inserts.push((s, t));
                }
            },
            |_| {},
        );
        for (s, t) in inserts {
            units.push(Reverse((cost(&red, s, t), s, t)));
        }
    }

    // Phase 2: minimal-power pivots split off torsion summands.
    let mut pivots: BinaryHeap<Reverse<(i32, u32, u32)>> = BinaryHeap::new();
    for src in 0..red.out.len() as u32 {
        if !red.alive[src as usize] {
            continue;
        }
        for &dst in &red.out[src as usize] {
            if src != dst {
                pivots.push(Reverse((red.power(src, dst), src, dst)));
            }
        }
    }
    let mut module = GradedModule::default();
    while let Some(Reverse((power, src, dst))) = pivots.pop() {
        if !red.alive[src as usize] || !red.alive[dst as usize] || !red.has_entry(src, dst) {
            continue;
        }
        debug_assert!(power >= 1);
        trace.pivots.push((src, dst, power as u32));
        *module.torsion.entry((red.delta2[dst as usize] as i64, power as u32)).or_default() += 1;
        let d2 = red.delta2.clone();
        let mut inserts = Vec::new();
        red.cancel(
            src,
            dst,
            |s, t| inserts.push(Reverse(((d2[t as usize] - d2[s as usize]) / 2 + 1, s, t))),
            |_| {},
        );
        pivots.extend(inserts);
    }

    for (id, &alive) in red.alive.iter().enumerate() {
        if alive {
            debug_assert!(red.out[id].is_empty() && red.incoming[id].is_empty());
            *module.free.entry(red.delta2[id] as i64).or_default() += 1;
        }
    }
    trace.fill_in_toggles = red.fill_in;
    (module, trace)
}

/// Graded module decomposition of the homology of the complex.
/// Checks `d^2 = 0` first and fails with [`Error::NotAComplex`].
pub fn homology(complex: &UComplex) -> Result<GradedModule, Error> {
    homology_with_trace(complex).map(|(m, _)| m)
}

/// Like [`homology`], also returning the reduction trace.
pub fn homology_with_trace(complex: &UComplex) -> Result<(GradedModule, ReductionTrace), Error> {
    if !complex.d_squared_is_zero() {
        return Err(Error::NotAComplex);
    }
    Ok(run_reduction(complex))
}

/// Replays a recorded reduction on the same complex, reproducing the
/// module; panics if the trace does not match the complex.
pub fn replay_trace(complex: &UComplex, trace: &ReductionTrace) -> GradedModule {
    let mut red = Reducer::new(complex);
    for &(src, dst) in &trace.unit_pairs {
        assert!(red.alive[src as usize] && red.alive[dst as usize] && red.has_entry(src, dst));
        assert_eq!(red.power(src, dst), 0);
        red.cancel(src, dst, |_, _| {}, |_| {});
    }
    let mut module = GradedModule::default();
    for &(src, dst, power) in &trace.pivots {
        assert!(red.alive[src as usize] && red.alive[dst as usize] && red.has_entry(src, dst));
        assert_eq!(red.power(src, dst), power as i32);
        *module.torsion.entry((red.delta2[dst as usize] as i64, power)).or_default() += 1;
        red.cancel(src, dst, |_, _| {}, |_| {});
    }
    for (id, &alive) in red.alive.iter().enumerate() {
        if alive {
            assert!(red.out[id].is_empty() && red.incoming[id].is_empty());
            *module.free.entry(red.delta2[id] as i64).or_default() += 1;
        }
    }
    module
}

/// Brute-force oracle: `F_2`-dimensions, by doubled grading, of the
/// homology of `C / U^k C` computed by dense Gaussian elimination on
/// the expanded basis `{U^j x : 0 <= j < k}`. Independent of the
/// reduction above.
pub fn homology_mod_uk_oracle(
    complex: &UComplex,
    k: u32,
    dimension_limit: usize,
) -> Result<BTreeMap<i64, u64>, Error> {
    assert!(k >= 1);
    let gens = complex.generators();
    let total = gens * k as usize;
    if total > dimension_limit {
        return Err(Error::SizeLimitExceeded { index: total, limit: dimension_limit });
    }

    // Basis element (g, j) has doubled grading delta2(g) - 2j.
    let mut by_grading: BTreeMap<i64, Vec<(u32, u32)>> = BTreeMap::new();
    for g in 0..gens as u32 {
        for j in 0..k {
            by_grading.entry(complex.delta2(g) as i64 - 2 * j as i64).or_default().push((g, j));
        }
    }
    let index_of: BTreeMap<(u32, u32), usize> = by_grading
        .values()
        .flat_map(|v| v.iter().copied())
        .enumerate()
        .map(|(i, key)| (key, i))
        .collect();
    let local_index: BTreeMap<(u32, u32), usize> = by_grading
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, &key)| (key, i)))
        .collect();
    let _ = index_of;

    // The differential maps grading d to d - 2; compute ranks per pair.
    let mut rank_from: BTreeMap<i64, usize> = BTreeMap::new();
    for (&d, basis) in &by_grading {
        let target = match by_grading.get(&(d - 2)) {
            Some(t) => t,
            None => {
                rank_from.insert(d, 0);
                continue;
            }
        };
        let mut matrix = BitMatrix::zeros(target.len(), basis.len());
        for (col, &(g, j)) in basis.iter().enumerate() {
            for &(dst, pow) in complex.entries_from(g) {
                let jj = j + pow as u32;
                if jj < k {
                    let row = local_index[&(dst, jj)];
                    matrix.flip(row, col);
                }
            }
        }
        rank_from.insert(d, matrix.rank());
    }

    let mut dims = BTreeMap::new();
    for (&d, basis) in &by_grading {
        let dim = basis.len() as u64;
        let r_out = rank_from[&d] as u64;
        let r_in = rank_from.get(&(d + 2)).copied().unwrap_or(0) as u64;
        let h = dim - r_out - r_in;
        if h > 0 {
            dims.insert(d, h);
        }
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, BuildOptions};
    use crate::grid::GridDiagram;
    use crate::rng::SplitMix64;

    fn grid(o: &[usize], x: &[usize]) -> GridDiagram {
        GridDiagram::new(o, x).unwrap()
    }

    fn hom(o: &[usize], x: &[usize]) -> GradedModule {
        let c = build_complex(&grid(o, x), &BuildOptions::default()).unwrap();
        homology(&c).unwrap()
    }

    fn two_generator_complex(power: u8) -> UComplex {
        // d(a) = U^power b with b at doubled grading 0, so a sits at
        // doubled grading 2 - 2 power.
        let delta2_a = 2 - 2 * power as i32;
        UComplex::from_parts(2, 1, vec![delta2_a, 0], vec![0, 0], vec![(0, 1, power)]).unwrap()
    }

    #[test]
    fn unknot2_homology_is_two_free_summands() {
        let m = hom(&[0, 1], &[1, 0]);
        assert_eq!(m.free, BTreeMap::from([(0, 2)]));
        assert!(m.torsion.is_empty());
    }

    #[test]
    fn two_generator_torsion() {
        let c = two_generator_complex(3);
        let m = homology(&c).unwrap();
        assert!(m.free.is_empty());
        assert_eq!(m.torsion, BTreeMap::from([((0, 3), 1)]));
    }

    #[test]
    fn unit_pair_cancels_to_zero() {
        let c = two_generator_complex(0);
        let m = homology(&c).unwrap();
        assert_eq!(m, GradedModule::default());
    }

    #[test]
    fn not_a_complex_is_rejected() {
        // Two composable unit entries violate d^2 = 0.
        let c = UComplex::from_parts(
            3,
            1,
            vec![-4, -2, 0],
            vec![0, 0, 0],
            vec![(2, 1, 0), (1, 0, 0)],
        )
        .unwrap();
        assert_eq!(homology(&c), Err(Error::NotAComplex));
    }

    #[test]
    fn trefoil_free_rank_is_sixteen() {
        // 2^{n-1} free summands for a knot grid of index 5.
        let m = hom(&[1, 2, 3, 4, 0], &[4, 0, 1, 2, 3]);
        assert_eq!(m.free_rank(), 16);
        // All free summands of a knot complex sit in one grading.
        assert_eq!(m.free.len(), 1);
    }

    #[test]
    fn divide_v_factor_examples() {
        let mut m = GradedModule::default();
        m.free.insert(-4, 64);
        m.torsion.insert((-6, 1), 128);
        let divided = m.divide_v_factor(6).unwrap();
        assert_eq!(divided.free, BTreeMap::from([(-4, 1)]));
        assert_eq!(divided.torsion, BTreeMap::from([((-6, 1), 2)]));
        // copies = 0 is the identity.
        assert_eq!(m.divide_v_factor(0).unwrap(), m);
        // Failed division reports the offending summand.
        let mut odd = GradedModule::default();
        odd.free.insert(0, 3);
        assert!(matches!(odd.divide_v_factor(1), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn oracle_on_free_module() {
        // The 2x2 unknot: two free summands at grading 0; mod U^2 each
        // contributes dimensions at doubled gradings 0 and -2.
        let c = build_complex(&grid(&[0, 1], &[1, 0]), &BuildOptions::default()).unwrap();
        let dims = homology_mod_uk_oracle(&c, 2, 10_000).unwrap();
        assert_eq!(dims, BTreeMap::from([(0, 2), (-2, 2)]));
    }

    #[test]
    fn oracle_matches_decomposition_on_random_grids() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..25 {
            let n = 3 + (rng.below(3) as usize);
            let g = GridDiagram::random(n, &mut rng);
            let c = build_complex(&g, &BuildOptions::default()).unwrap();
            let m = homology(&c).unwrap();
            for k in 1..=4 {
                let oracle = homology_mod_uk_oracle(&c, k, 1_000_000).unwrap();
                assert_eq!(m.mod_uk_dimensions(k), oracle, "grid {:?} k={}", g, k);
            }
        }
    }

    #[test]
    fn decomposition_is_order_independent() {
        let mut rng = SplitMix64::new(99);
        let g = GridDiagram::random(5, &mut rng);
        let c = build_complex(&g, &BuildOptions::default()).unwrap();
        let m = homology(&c).unwrap();
        for seed in [1, 2] {
            let mut perm: Vec<u32> = (0..c.generators() as u32).collect();
            SplitMix64::new(seed).shuffle(&mut perm);
            let m2 = homology(&c.relabeled(&perm)).unwrap();
            assert_eq!(m, m2);
        }
    }

    #[test]
    fn trace_replay_reproduces_module() {
        let mut rng = SplitMix64::new(17);
        for _ in 0..10 {
            let g = GridDiagram::random(4, &mut rng);
            let c = build_complex(&g, &BuildOptions::default()).unwrap();
            let (m, trace) = homology_with_trace(&c).unwrap();
            assert_eq!(replay_trace(&c, &trace), m);
        }
    }

    #[test]
    fn mod_uk_dimensions_of_torsion_pair() {
        for power in 1..=4u8 {
            let c = two_generator_complex(power);
            let m = homology(&c).unwrap();
            for k in 1..=5 {
                let oracle = homology_mod_uk_oracle(&c, k, 10_000).unwrap();
                assert_eq!(m.mod_uk_dimensions(k), oracle, "power={power} k={k}");
            }
        }
    }
}
