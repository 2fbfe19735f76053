//! Dense bitset linear algebra over the two-element field.
//!
//! Used by the brute-force homology oracle and by the localization
//! checks on cobordism maps. Row-major, 64 bits per word.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let words_per_row = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words_per_row, data: vec![0; rows * words_per_row] }
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = r * self.words_per_row + c / 64;
        let bit = 1u64 << (c % 64);
        if value {
            self.data[w] |= bit;
        } else {
            self.data[w] &= !bit;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words_per_row + c / 64] ^= 1u64 << (c % 64);
    }

    fn xor_rows(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.words_per_row, source * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.data[s + k];
            self.data[t + k] ^= v;
        }
    }

    /// Rank by row elimination; the matrix is consumed.
    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.data.swap_chunks(pivot, rank, self.words_per_row);
            for r in 0..self.rows {
                if r != rank && self.get(r, col) {
                    self.xor_rows(r, rank);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl SwapChunks for Vec<u64> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        for k in 0..width {
            self.swap(a * width + k, b * width + k);
        }
    }
}

/// Basis data for a quotient `ker(out) / im(into)` of an `F_2` vector
/// space with `dim` coordinates, where the maps are given as sparse
/// columns. Supports expressing vectors in the quotient basis.
pub struct QuotientBasis {
    dim: usize,
    /// Representatives of a basis of the quotient.
    reps: Vec<Vec<u64>>,
    /// Echelonized image rows plus representative rows, used both to
    /// reduce against the image and to read off class coordinates.
    solver_rows: Vec<(Vec<u64>, usize, Option<usize>)>,
}

fn words(dim: usize) -> usize {
    dim.div_ceil(64).max(1)
}

fn get_bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

fn set_bit(v: &mut [u64], i: usize) {
    v[i / 64] |= 1 << (i % 64);
}

fn xor_into(target: &mut [u64], source: &[u64]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t ^= s;
    }
}

fn first_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, &w)| 64 * i + w.trailing_zeros() as usize)
}

impl QuotientBasis {
    /// `kernel_of` and `image_of` are sparse matrices as columns:
    /// `kernel_of[j]` lists the coordinates hit by basis vector `j`.
    /// Builds a basis of `ker(kernel_of) / im(image_of)`.
    pub fn new(dim: usize, kernel_of: &[Vec<usize>], image_of: &[Vec<usize>]) -> QuotientBasis {
        let w = words(dim);
        // Echelonize the image.
        let mut image_rows: Vec<Vec<u64>> = Vec::new();
        let mut image_pivots: Vec<usize> = Vec::new();
        for col in image_of {
            let mut v = vec![0u64; w];
            for &i in col {
                v[i / 64] ^= 1 << (i % 64);
            }
            reduce(&mut v, &image_rows, &image_pivots);
            if let Some(p) = first_bit(&v) {
                image_rows.push(v);
                image_pivots.push(p);
            }
        }

        // Kernel of the outgoing map by column elimination on an
        // augmented matrix: track combinations of standard basis
        // vectors whose images cancel.
        let mut ech: Vec<(Vec<u64>, Vec<u64>)> = Vec::new(); // (image vec, preimage vec)
        let mut kernel: Vec<Vec<u64>> = Vec::new();
        let out_words = {
            let max_row = kernel_of.iter().flatten().copied().max().unwrap_or(0);
            words(max_row + 1)
        };
        for j in 0..dim {
            let mut img = vec![0u64; out_words];
            for &i in &kernel_of[j] {
                img[i / 64] ^= 1 << (i % 64);
            }
            let mut pre = vec![0u64; w];
            set_bit(&mut pre, j);
            for (erow, epre) in &ech {
                if let Some(p) = first_bit(erow) {
                    if get_bit(&img, p) {
                        xor_into(&mut img, erow);
                        xor_into(&mut pre, epre);
                    }
                }
            }
            if img.iter().all(|&v| v == 0) {
                kernel.push(pre);
            } else {
                ech.push((img, pre));
            }
        }

        // Quotient representatives: kernel vectors independent mod image.
        let mut reps: Vec<Vec<u64>> = Vec::new();
        let mut solver_rows: Vec<(Vec<u64>, usize, Option<usize>)> = Vec::new();
        for (v, p) in image_rows.iter().zip(&image_pivots) {
            solver_rows.push((v.clone(), *p, None));
        }
        for kvec in kernel {
            let mut v = kvec.clone();
            for (row, pivot, _) in &solver_rows {
                if get_bit(&v, *pivot) {
                    xor_into(&mut v, row);
                }
            }
            if let Some(p) = first_bit(&v) {
                solver_rows.push((v, p, Some(reps.len())));
                reps.push(kvec);
            }
        }
        let _ = (image_rows, image_pivots);
        QuotientBasis { dim, reps, solver_rows }
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Representative (as coordinate list) of quotient basis class `i`.
    pub fn representative(&self, i: usize) -> Vec<usize> {
        (0..self.dim).filter(|&c| get_bit(&self.reps[i], c)).collect()
    }

    /// Coordinates of a cycle in the quotient basis; `None` if the
    /// vector is not in the kernel-plus-image span (i.e. not a cycle).
    pub fn coordinates(&self, vector: &[usize]) -> Option<Vec<bool>> {
        let mut v = vec![0u64; words(self.dim)];
        for &i in vector {
            v[i / 64] ^= 1 << (i % 64);
        }
        let mut coords = vec![false; self.reps.len()];
        for (row, pivot, class) in &self.solver_rows {
            if get_bit(&v, *pivot) {
                xor_into(&mut v, row);
                if let Some(c) = class {
                    coords[*c] ^= true;
                }
            }
        }
        if v.iter().all(|&w| w == 0) {
            Some(coords)
        } else {
            None
        }
    }

}

fn reduce(v: &mut Vec<u64>, rows: &[Vec<u64>], pivots: &[usize]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if get_bit(v, p) {
            xor_into(v, row);
        }
    }
}
