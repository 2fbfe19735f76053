//! Link signatures from grid projections via Goeritz matrices and the
//! Gordon-Litherland correction.
//!
//! The planar projection of a grid is checkerboard colored; the white
//! regions index a symmetric integer matrix whose entries accumulate
//! local crossing signs, and the signature of the link is the matrix
//! signature minus a correction counting type-II crossings. The sign
//! convention is the paper's: the right-handed trefoil has sigma = -2.
//!
//! Conventions (pinned by the anchor values 0 / -2 / -6, coloring
//! independence and mirror antisymmetry):
//!
//! * `eta(c) = +1` when the white quadrants at the crossing are the
//!   north-east and south-west ones, else `-1`;
//! * a crossing is of type II exactly when `eta(c)` agrees with the
//!   crossing sign (with our conventions every crossing is a vertical
//!   over-strand, so both quantities are functions of the quadrant
//!   coloring and the two strand directions).
//!
//! The matrix signature is computed by exact symmetric congruence
//! diagonalization over the rationals.

use crate::error::Error;
use crate::grid::PlanarRealization;

/// Checkerboard data of a planar grid projection: region ids per cell
/// of the doubled lattice, the coloring, and the Goeritz matrix with
/// its correction term.
#[derive(Debug, Clone)]
pub struct CheckerboardSurface {
    /// Goeritz matrix over the non-outer white regions.
    pub goeritz: Vec<Vec<i64>>,
    /// Gordon-Litherland correction: sum of eta over type-II crossings.
    pub correction: i64,
}

struct Cells {
    region: Vec<u32>,
    region_count: usize,
    /// true = white (even parity, contains the unbounded region).
    white: Vec<bool>,
    outer: u32,
}

fn cell_index(n: usize, u: usize, v: usize) -> usize {
    v * 2 * n + u
}

/// Union-find with path halving.
struct Dsu(Vec<u32>);

impl Dsu {
    fn new(len: usize) -> Dsu {
        Dsu((0..len as u32).collect())
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.0[i as usize] != i {
            self.0[i as usize] = self.0[self.0[i as usize] as usize];
            i = self.0[i as usize];
        }
        i
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Segments of the projection in doubled coordinates: verticals at
/// `x = 2c+1` spanning rows, horizontals at `y = 2r+1` spanning columns.
struct Segments {
    vertical: Vec<(usize, usize, usize)>,
    horizontal: Vec<(usize, usize, usize)>,
}

fn segments(p: &PlanarRealization) -> Segments {
    let n = p.index();
    let mut vertical = Vec::with_capacity(n);
    let mut horizontal = Vec::with_capacity(n);
    for c in 0..n {
        let (lo, hi) = (p.o(c).min(p.x(c)), p.o(c).max(p.x(c)));
        vertical.push((2 * c + 1, 2 * lo + 1, 2 * hi + 1));
    }
    for r in 0..n {
        let oc = (0..n).find(|&c| p.o(c) == r).unwrap();
        let xc = (0..n).find(|&c| p.x(c) == r).unwrap();
        let (lo, hi) = (oc.min(xc), oc.max(xc));
        horizontal.push((2 * r + 1, 2 * lo + 1, 2 * hi + 1));
    }
    Segments { vertical, horizontal }
}

fn cells(p: &PlanarRealization) -> Cells {
    let n = p.index();
    let side = 2 * n;
    let segs = segments(p);
    let mut dsu = Dsu::new(side * side);
    for v in 0..side {
        for u in 0..side {
            // Right neighbor: blocked by a vertical segment at x=u+1
            // covering the cell row [v, v+1].
            if u + 1 < side {
                let blocked = segs
                    .vertical
                    .iter()
                    .any(|&(x, y1, y2)| x == u + 1 && y1 <= v && v + 1 <= y2);
                if !blocked {
                    dsu.union(cell_index(n, u, v) as u32, cell_index(n, u + 1, v) as u32);
                }
            }
            // Top neighbor.
            if v + 1 < side {
                let blocked = segs
                    .horizontal
                    .iter()
                    .any(|&(y, x1, x2)| y == v + 1 && x1 <= u && u + 1 <= x2);
                if !blocked {
                    dsu.union(cell_index(n, u, v) as u32, cell_index(n, u, v + 1) as u32);
                }
            }
        }
    }
    let mut region = vec![u32::MAX; side * side];
    let mut region_count = 0usize;
    for i in 0..side * side {
        let root = dsu.find(i as u32) as usize;
        if region[root] == u32::MAX {
            region[root] = region_count as u32;
            region_count += 1;
        }
        region[i] = region[root];
    }
    // Parity coloring: count horizontal segments crossing the upward
    // ray from the cell center.
    let mut white = vec![true; region_count];
    for v in 0..side {
        for u in 0..side {
            let crossings = segs
                .horizontal
                .iter()
                .filter(|&&(y, x1, x2)| y > v && x1 <= u && u + 1 <= x2)
                .count();
            white[region[cell_index(n, u, v)] as usize] = crossings % 2 == 0;
        }
    }
    let outer = region[cell_index(n, 0, 0)];
    Cells { region, region_count, white, outer }
}

/// Builds the Goeritz matrix over non-outer white regions together
/// with the Gordon-Litherland correction term. `swap_colors` computes
/// the same data for the opposite checkerboard surface; the resulting
/// signature is the same either way.
pub fn checkerboard(p: &PlanarRealization, swap_colors: bool) -> Result<CheckerboardSurface, Error> {
    let n = p.index();
    let mut data = cells(p);
    if swap_colors {
        for w in data.white.iter_mut() {
            *w = !*w;
        }
        // The outer region must be indexable too when it is black; the
        // deleted index is then any white region adjacent to infinity.
        // We simply delete the lowest-numbered white region instead.
    }

    // Index white regions, deleting the outer one (or the first white
    // region when colors are swapped and the outer one is black).
    let deleted = if data.white[data.outer as usize] {
        data.outer
    } else {
        match (0..data.region_count as u32).find(|&r| data.white[r as usize]) {
            Some(r) => r,
            None => return Err(Error::DegenerateProjection),
        }
    };
    let mut white_index = vec![usize::MAX; data.region_count];
    let mut white_count = 0usize;
    for r in 0..data.region_count {
        if data.white[r] && r as u32 != deleted {
            white_index[r] = white_count;
            white_count += 1;
        }
    }

    let mut full = vec![vec![0i64; white_count + 1]; white_count + 1];
    let idx = |r: u32, white_index: &[usize], deleted: u32| -> usize {
        if r == deleted {
            white_count
        } else {
            white_index[r as usize]
        }
    };

    let mut correction = 0i64;
    for crossing in p.crossings() {
        let (c, r) = (crossing.column, crossing.row);
        let (u, v) = (2 * c + 1, 2 * r + 1);
        let ne = data.region[cell_index(n, u, v)];
        let sw = data.region[cell_index(n, u - 1, v - 1)];
        let nw = data.region[cell_index(n, u - 1, v)];
        let se = data.region[cell_index(n, u, v - 1)];
        let ne_white = data.white[ne as usize];
        debug_assert_eq!(ne_white, data.white[sw as usize]);
        debug_assert_eq!(data.white[nw as usize], data.white[se as usize]);
        debug_assert_ne!(ne_white, data.white[nw as usize]);

        let eta: i64 = if ne_white { 1 } else { -1 };
        let (wa, wb) = if ne_white { (ne, sw) } else { (nw, se) };
        if wa != wb {
            let (ia, ib) = (idx(wa, &white_index, deleted), idx(wb, &white_index, deleted));
            full[ia][ib] -= eta;
            full[ib][ia] -= eta;
            full[ia][ia] += eta;
            full[ib][ib] += eta;
        }
        // Type II when eta agrees with the crossing sign.
        if eta == crossing.sign {
            correction += eta;
        }
    }

    let goeritz: Vec<Vec<i64>> =
        (0..white_count).map(|i| full[i][..white_count].to_vec()).collect();
    Ok(CheckerboardSurface { goeritz, correction })
}

// ---------------------------------------------------------------------------
// Exact symmetric signature over the rationals.

#[derive(Clone, Copy, Debug)]
struct Rat {
    num: i128,
    den: i128,
}

impl Rat {
    fn int(v: i64) -> Rat {
        Rat { num: v as i128, den: 1 }
    }

    fn reduce(mut self) -> Rat {
        if self.den < 0 {
            self.num = -self.num;
            self.den = -self.den;
        }
        let g = gcd128(self.num.abs(), self.den);
        if g > 1 {
            self.num /= g;
            self.den /= g;
        }
        self
    }

    fn sub_mul(self, a: Rat, b: Rat) -> Rat {
        // self - a * b, with overflow checks.
        let num = self
            .num
            .checked_mul(a.den)
            .and_then(|v| v.checked_mul(b.den))
            .and_then(|v| {
                a.num
                    .checked_mul(b.num)
                    .and_then(|w| w.checked_mul(self.den))
                    .and_then(|w| v.checked_sub(w))
            })
            .expect("rational overflow in signature computation");
        let den = self
            .den
            .checked_mul(a.den)
            .and_then(|v| v.checked_mul(b.den))
            .expect("rational overflow in signature computation");
        Rat { num, den }.reduce()
    }

    fn div(self, other: Rat) -> Rat {
        Rat { num: self.num * other.den, den: self.den * other.num }.reduce()
    }

    fn is_zero(self) -> bool {
        self.num == 0
    }

    fn signum(self) -> i64 {
        self.num.signum() as i64
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

/// Signature of a symmetric integer matrix by congruence
/// diagonalization over the rationals; exact.
pub fn symmetric_signature(matrix: &[Vec<i64>]) -> i64 {
    let m = matrix.len();
    let mut a: Vec<Vec<Rat>> =
        matrix.iter().map(|row| row.iter().map(|&v| Rat::int(v)).collect()).collect();
    let mut signature = 0i64;
    for k in 0..m {
        if a[k][k].is_zero() {
            // Prefer swapping in a later row with nonzero diagonal;
            // otherwise add a row meeting column k to make a pivot.
            if let Some(j) = (k + 1..m).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..m).find(|&j| !a[j][k].is_zero()) {
                for col in 0..m {
                    let v = a[j][col];
                    a[k][col] = a[k][col].sub_mul(Rat::int(-1), v);
                }
                for row in a.iter_mut() {
                    let v = row[j];
                    row[k] = row[k].sub_mul(Rat::int(-1), v);
                }
            } else {
                continue; // zero row/column contributes nothing
            }
        }
        let pivot = a[k][k];
        signature += pivot.signum();
        for i in k + 1..m {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].div(pivot);
            for col in k..m {
                let v = a[k][col];
                a[i][col] = a[i][col].sub_mul(factor, v);
            }
        }
        for i in k + 1..m {
            let v = a[k][i];
            if !v.is_zero() {
                a[k][i] = Rat::int(0);
            }
            let _ = v;
        }
        // Symmetrize: column elimination mirrors the row elimination.
        for row in a.iter_mut().skip(k + 1) {
            row[k] = Rat::int(0);
        }
    }
    signature
}

/// Signature of the link presented by a planar grid realization, with
/// the paper's convention `sigma(right-handed trefoil) = -2`.
pub fn signature_from_grid(p: &PlanarRealization) -> Result<i64, Error> {
    let surface = checkerboard(p, false)?;
    Ok(symmetric_signature(&surface.goeritz) - surface.correction)
}

/// Validated table of `sigma(T(p,q))` for the pairs quoted from the
/// torus-knot computations.
pub fn signature_torus_check(p: i64, q: i64) -> Result<i64, Error> {
    match (p, q) {
        (3, 5) => Ok(-8),
        (3, 7) => Ok(-8),
        (5, 9) => Ok(-24),
        (5, 11) => Ok(-24),
        _ => Err(Error::NotInTable { p, q }),
    }
}
