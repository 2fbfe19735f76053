//! The unoriented grid complex `UGC` of a grid diagram.
//!
//! Generators are the `n!` grid states; the differential counts empty
//! rectangles, contributing `U^w y` where the weight `w` is the number
//! of markings (O or X alike) in the rectangle's interior. Coefficients
//! live in the two-element field, so a pair of empty rectangles between
//! the same states cancels.
//!
//! States are packed into machine words (four bits per coordinate) and
//! identified by their lexicographic rank, so the enumeration never
//! needs a hash table. Entry `u`-powers are stored explicitly but are
//! forced by homogeneity: the differential and multiplication by `U`
//! both drop the doubled delta-grading by exactly two.

use crate::error::Error;
use crate::grid::{self, GridDiagram, GridState};

/// Hard cap on the grid index for complex enumeration: state ids are
/// `u32` lexicographic ranks and `13!` no longer fits.
pub const HARD_INDEX_LIMIT: usize = 12;

/// Default enumeration budget; larger grids need [`BuildOptions::huge`].
pub const DEFAULT_INDEX_LIMIT: usize = 10;

/// Options for [`build_complex`].
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Largest grid index admitted without `huge`.
    pub max_index: usize,
    /// Admit grids up to the hard cap regardless of `max_index`.
    pub huge: bool,
    /// Worker threads for the enumeration. The output is identical for
    /// every thread count.
    pub threads: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { max_index: DEFAULT_INDEX_LIMIT, huge: false, threads: 1 }
    }
}

/// A free graded complex over `F[U]` with monomial differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UComplex {
    n: usize,
    components: usize,
    delta2: Vec<i32>,
    alexander: Vec<i32>,
    offsets: Vec<usize>,
    entries: Vec<(u32, u8)>,
}

/// A rectangle connecting two grid states that differ in exactly two
/// coordinates, spanning columns `col_from..col_to` and rows
/// `row_from..row_to` cyclically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rectangle {
    pub col_from: usize,
    pub col_to: usize,
    pub row_from: usize,
    pub row_to: usize,
    /// Number of markings in the interior.
    pub weight: u32,
}

// ---------------------------------------------------------------------------
// Packed permutations and lexicographic ranks.

/// Permutation of `{0..n-1}` packed four bits per entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Packed(pub u64);

impl Packed {
    #[inline]
    pub fn get(self, i: usize) -> usize {
        ((self.0 >> (4 * i)) & 0xf) as usize
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: usize) {
        self.0 = (self.0 & !(0xf << (4 * i))) | ((v as u64) << (4 * i));
    }

    pub fn from_slice(rows: &[u8]) -> Packed {
        let mut p = Packed(0);
        for (i, &r) in rows.iter().enumerate() {
            p.set(i, r as usize);
        }
        p
    }

    pub fn to_state(self, n: usize) -> GridState {
        GridState { rows: (0..n).map(|i| self.get(i) as u8).collect() }
    }

    #[inline]
    pub fn swapped(self, i: usize, j: usize) -> Packed {
        let a = self.get(i);
        let b = self.get(j);
        let mut out = self;
        out.set(i, b);
        out.set(j, a);
        out
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a packed permutation.
pub(crate) fn lex_rank(p: Packed, n: usize) -> usize {
    let mut rank = 0usize;
    let mut fact = factorial(n.saturating_sub(1));
    for i in 0..n {
        let vi = p.get(i);
        let smaller_later = (i + 1..n).filter(|&j| p.get(j) < vi).count();
        rank += smaller_later * fact;
        if i + 1 < n {
            fact /= n - 1 - i;
        }
    }
    rank
}

/// Permutation with the given lexicographic rank.
pub(crate) fn unrank(mut rank: usize, n: usize) -> Packed {
    let mut avail: Vec<usize> = (0..n).collect();
    let mut fact = factorial(n.saturating_sub(1));
    let mut p = Packed(0);
    for i in 0..n {
        let k = if fact > 0 { rank / fact } else { 0 };
        rank %= fact.max(1);
        p.set(i, avail.remove(k));
        if i + 1 < n {
            fact /= n - 1 - i;
        }
    }
    p
}

pub(crate) fn next_lex(p: &mut Packed, n: usize) -> bool {
    let mut i = n - 1;
    while i > 0 && p.get(i - 1) >= p.get(i) {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p.get(j) <= p.get(i - 1) {
        j -= 1;
    }
    let (a, b) = (p.get(i - 1), p.get(j));
    p.set(i - 1, b);
    p.set(j, a);
    let mut lo = i;
    let mut hi = n - 1;
    while lo < hi {
        let (a, b) = (p.get(lo), p.get(hi));
        p.set(lo, b);
        p.set(hi, a);
        lo += 1;
        hi -= 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Rectangle enumeration.

struct Marks {
    o: Vec<u8>,
    x: Vec<u8>,
}

impl Marks {
    fn of(grid: &GridDiagram) -> Marks {
        Marks { o: grid.o_rows().to_vec(), x: grid.x_rows().to_vec() }
    }
}

#[inline]
fn cyc_in(value: usize, from: usize, len: usize, n: usize) -> bool {
    // value in the half-open cyclic interval [from, from + len).
    ((value + n - from) % n) < len
}

#[inline]
fn cyc_strict(value: usize, from: usize, len: usize, n: usize) -> bool {
    // value strictly inside the open cyclic interval (from, from + len).
    let d = (value + n - from) % n;
    d > 0 && d < len
}

/// Weight of the rectangle `[ci, ci+w) x [rf, rf+h)`: markings of
/// either kind in its interior.
fn rectangle_weight(marks: &Marks, n: usize, ci: usize, w: usize, rf: usize, h: usize) -> u32 {
    let mut weight = 0;
    for d in 0..w {
        let col = (ci + d) % n;
        if cyc_in(marks.o[col] as usize, rf, h, n) {
            weight += 1;
        }
        if cyc_in(marks.x[col] as usize, rf, h, n) {
            weight += 1;
        }
    }
    weight
}

/// Whether the rectangle contains a point of `state` in its interior.
#[inline]
fn rectangle_blocked(state: Packed, n: usize, ci: usize, w: usize, rf: usize, h: usize) -> bool {
    for d in 1..w {
        let col = (ci + d) % n;
        if cyc_strict(state.get(col), rf, h, n) {
            return true;
        }
    }
    false
}

/// The empty rectangles leaving a grid state, with their weights.
/// For each unordered column pair there are two candidate rectangles
/// whose lower-left and upper-right corners lie on the state.
pub fn empty_rectangles(grid: &GridDiagram, state: &GridState) -> Vec<(GridState, Rectangle)> {
    let n = grid.index();
    let marks = Marks::of(grid);
    let p = Packed::from_slice(&state.rows);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let target = p.swapped(i, j);
            for (ci, cj) in [(i, j), (j, i)] {
                let w = (cj + n - ci) % n;
                let rf = p.get(ci);
                let h = (p.get(cj) + n - rf) % n;
                if rectangle_blocked(p, n, ci, w, rf, h) {
                    continue;
                }
                out.push((
                    target.to_state(n),
                    Rectangle {
                        col_from: ci,
                        col_to: cj,
                        row_from: rf,
                        row_to: p.get(cj),
                        weight: rectangle_weight(&marks, n, ci, w, rf, h),
                    },
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Complex construction.

struct GradingTables {
    delta2: Vec<i32>,
    alexander: Vec<i32>,
}

fn grade_range(grid: &GridDiagram, components: usize, lo: usize, hi: usize) -> GradingTables {
    let n = grid.index();
    let mut delta2 = Vec::with_capacity(hi - lo);
    let mut alexander = Vec::with_capacity(hi - lo);
    let mut p = unrank(lo, n);
    for _ in lo..hi {
        let g = grid::gradings(grid, &p.to_state(n), components);
        delta2.push(g.delta2 as i32);
        alexander.push(g.alexander as i32);
        next_lex(&mut p, n);
    }
    GradingTables { delta2, alexander }
}

struct EntryBlock {
    offsets: Vec<usize>,
    entries: Vec<(u32, u8)>,
}

fn entries_range(grid: &GridDiagram, marks: &Marks, lo: usize, hi: usize) -> EntryBlock {
    let n = grid.index();
    let mut offsets = Vec::with_capacity(hi - lo + 1);
    let mut entries: Vec<(u32, u8)> = Vec::new();
    let mut targets: Vec<(u32, u32)> = Vec::new();
    let mut p = unrank(lo, n);
    offsets.push(0);
    for _ in lo..hi {
        targets.clear();
        for i in 0..n {
            for j in i + 1..n {
                let mut weight = 0u32;
                let mut empties = 0u32;
                for (ci, cj) in [(i, j), (j, i)] {
                    let w = (cj + n - ci) % n;
                    let rf = p.get(ci);
                    let h = (p.get(cj) + n - rf) % n;
                    if !rectangle_blocked(p, n, ci, w, rf, h) {
                        empties += 1;
                        weight = rectangle_weight(marks, n, ci, w, rf, h);
                    }
                }
                // Two empty rectangles carry equal weight and cancel
                // over the two-element field.
                if empties == 1 {
                    let rank = lex_rank(p.swapped(i, j), n) as u32;
                    targets.push((rank, weight));
                }
            }
        }
        targets.sort_unstable();
        entries.extend(targets.iter().map(|&(dst, w)| (dst, w as u8)));
        offsets.push(entries.len());
        next_lex(&mut p, n);
    }
    EntryBlock { offsets, entries }
}

/// Builds the unoriented grid complex of a grid diagram. Deterministic
/// for every thread count: workers own disjoint rank ranges that are
/// concatenated in order.
pub fn build_complex(grid: &GridDiagram, options: &BuildOptions) -> Result<UComplex, Error> {
    let n = grid.index();
    let limit =
        if options.huge { HARD_INDEX_LIMIT } else { options.max_index.min(HARD_INDEX_LIMIT) };
    if n > limit {
        return Err(Error::SizeLimitExceeded { index: n, limit });
    }
    let components = grid::trace_components(grid).components;
    let marks = Marks::of(grid);
    let total = factorial(n);
    let threads = options.threads.max(1).min(total.max(1));

    let chunk = total.div_ceil(threads);
    let ranges: Vec<(usize, usize)> = (0..threads)
        .map(|t| (t * chunk, ((t + 1) * chunk).min(total)))
        .filter(|(a, b)| a < b)
        .collect();

    let (grades, blocks): (Vec<GradingTables>, Vec<EntryBlock>) = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(lo, hi)| {
                let marks_ref = &marks;
                scope.spawn(move || {
                    (grade_range(grid, components, lo, hi), entries_range(grid, marks_ref, lo, hi))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).unzip()
    });

    let mut delta2 = Vec::with_capacity(total);
    let mut alexander = Vec::with_capacity(total);
    for g in grades {
        delta2.extend(g.delta2);
        alexander.extend(g.alexander);
    }
    let mut offsets = Vec::with_capacity(total + 1);
    let mut entries = Vec::new();
    offsets.push(0);
    for b in blocks {
        let base = entries.len();
        offsets.extend(b.offsets[1..].iter().map(|&o| base + o));
        entries.extend(b.entries);
    }

    let complex = UComplex { n, components, delta2, alexander, offsets, entries };
    debug_assert!(complex.is_homogeneous());
    Ok(complex)
}

impl UComplex {
    /// Assembles a complex from raw parts; used by the dump loader and
    /// by tests that build small complexes by hand. Entries are sorted
    /// per source and homogeneity is enforced.
    pub fn from_parts(
        n: usize,
        components: usize,
        delta2: Vec<i32>,
        alexander: Vec<i32>,
        mut entry_list: Vec<(u32, u32, u8)>,
    ) -> Result<UComplex, Error> {
        let gens = delta2.len();
        entry_list.sort_unstable();
        let mut offsets = vec![0usize; gens + 1];
        let mut entries = Vec::with_capacity(entry_list.len());
        for &(src, dst, pow) in &entry_list {
            if src as usize >= gens || dst as usize >= gens {
                return Err(Error::Parse("entry index out of range".into()));
            }
            offsets[src as usize + 1] += 1;
            entries.push((dst, pow));
        }
        for i in 0..gens {
            offsets[i + 1] += offsets[i];
        }
        let complex = UComplex { n, components, delta2, alexander, offsets, entries };
        if !complex.is_homogeneous() {
            return Err(Error::Parse("entries violate homogeneity".into()));
        }
        Ok(complex)
    }

    pub fn grid_index(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn generators(&self) -> usize {
        self.delta2.len()
    }

    pub fn delta2(&self, id: u32) -> i32 {
        self.delta2[id as usize]
    }

    pub fn alexander(&self, id: u32) -> i32 {
        self.alexander[id as usize]
    }

    pub fn delta2_table(&self) -> &[i32] {
        &self.delta2
    }

    /// Differential entries leaving `src`, sorted by target.
    pub fn entries_from(&self, src: u32) -> &[(u32, u8)] {
        &self.entries[self.offsets[src as usize]..self.offsets[src as usize + 1]]
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// Every entry satisfies `u_power = (delta2(dst) - delta2(src))/2 + 1`:
    /// the differential drops delta by one after accounting for `U`.
    pub fn is_homogeneous(&self) -> bool {
        (0..self.generators() as u32).all(|src| {
            self.entries_from(src).iter().all(|&(dst, pow)| {
                self.delta2[dst as usize] - 2 * pow as i32 == self.delta2[src as usize] - 2
            })
        })
    }

    /// Whether the differential squares to zero over `F[U]`. By
    /// homogeneity it suffices to count two-step paths mod 2.
    pub fn d_squared_is_zero(&self) -> bool {
        let mut acc: Vec<u32> = Vec::new();
        for src in 0..self.generators() as u32 {
            acc.clear();
            for &(mid, _) in self.entries_from(src) {
                for &(dst, _) in self.entries_from(mid) {
                    acc.push(dst);
                }
            }
            acc.sort_unstable();
            let mut i = 0;
            while i < acc.len() {
                let run = acc[i..].iter().take_while(|&&v| v == acc[i]).count();
                if run % 2 == 1 {
                    return false;
                }
                i += run;
            }
        }
        true
    }

    /// Relabels generators (new id of old id `i` is `perm[i]`); used to
    /// check that decompositions are independent of generator order.
    pub fn relabeled(&self, perm: &[u32]) -> UComplex {
        let gens = self.generators();
        assert_eq!(perm.len(), gens);
        let mut delta2 = vec![0; gens];
        let mut alexander = vec![0; gens];
        for old in 0..gens {
            delta2[perm[old] as usize] = self.delta2[old];
            alexander[perm[old] as usize] = self.alexander[old];
        }
        let mut entry_list = Vec::with_capacity(self.entry_count());
        for src in 0..gens as u32 {
            for &(dst, pow) in self.entries_from(src) {
                entry_list.push((perm[src as usize], perm[dst as usize], pow));
            }
        }
        UComplex::from_parts(self.n, self.components, delta2, alexander, entry_list)
            .expect("relabeling preserves homogeneity")
    }
}

/// Convenience wrapper mirroring [`UComplex::d_squared_is_zero`].
pub fn d_squared_is_zero(complex: &UComplex) -> bool {
    complex.d_squared_is_zero()
}
