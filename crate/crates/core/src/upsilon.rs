//! The upsilon invariant and upsilon-sets extracted from grid homology.
//!
//! Grid homology of an `l`-component link of grid index `n` carries a
//! stabilization factor `V^{n-l}` (`V` two-dimensional in grading 0),
//! so free-part multiplicities are divisible by `2^{n-l}`; dividing
//! them out leaves the `2^{l-1}` gradings of a homogeneous free
//! generating set, the upsilon-set. For knots this is the single
//! integer `upsilon`, the maximal grading of a non-torsion class.

use crate::complex::{build_complex, BuildOptions};
use crate::error::Error;
use crate::grid::{trace_components, GridDiagram};
use crate::homology::{homology, GradedModule};

/// Sorted gradings of a homogeneous free generating set of the link's
/// homology; length `2^{l-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsilonSet {
    values: Vec<i64>,
}

impl UpsilonSet {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> i64 {
        self.values[0]
    }

    pub fn max(&self) -> i64 {
        *self.values.last().unwrap()
    }
}

/// Upsilon-set shifted by `(sigma - l + 1)/2`; entries are stored
/// doubled because the shift may be a half-integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenormalizedUpsilonSet {
    values2: Vec<i64>,
}

impl RenormalizedUpsilonSet {
    pub fn values2(&self) -> &[i64] {
        &self.values2
    }

    /// Negated and reversed set, the renormalized set of the mirror.
    pub fn mirrored(&self) -> RenormalizedUpsilonSet {
        let mut values2: Vec<i64> = self.values2.iter().map(|v| -v).collect();
        values2.sort_unstable();
        RenormalizedUpsilonSet { values2 }
    }
}

/// Extracts the upsilon-set from the already-computed homology of a
/// grid complex with the given index and component count.
pub fn upsilon_set_of_module(
    module: &GradedModule,
    index: usize,
    components: usize,
) -> Result<UpsilonSet, Error> {
    let copies = (index - components) as u32;
    let divisor = 1u64 << copies;
    let mut values = Vec::new();
    for (&grading2, &mult) in &module.free {
        if mult % divisor != 0 {
            return Err(Error::NotDivisible { grading2, multiplicity: mult, divisor });
        }
        if grading2 % 2 != 0 {
            return Err(Error::NotDivisible { grading2, multiplicity: mult, divisor: 2 });
        }
        values.extend(std::iter::repeat(grading2 / 2).take((mult / divisor) as usize));
    }
    values.sort_unstable();
    debug_assert_eq!(values.len(), 1 << (components - 1));
    Ok(UpsilonSet { values })
}

/// The upsilon-set of the oriented link presented by a grid.
pub fn upsilon_set(grid: &GridDiagram, options: &BuildOptions) -> Result<UpsilonSet, Error> {
    let components = trace_components(grid).components;
    let module = homology(&build_complex(grid, options)?)?;
    upsilon_set_of_module(&module, grid.index(), components)
}

/// `upsilon` of a knot: the single entry of its upsilon-set.
pub fn upsilon(grid: &GridDiagram, options: &BuildOptions) -> Result<i64, Error> {
    let components = trace_components(grid).components;
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    let set = upsilon_set(grid, options)?;
    Ok(set.max())
}

/// Renormalized upsilon-set `upsilon_i - (sigma - l + 1)/2`, an
/// unoriented link invariant.
pub fn renormalized_upsilon_set(
    set: &UpsilonSet,
    components: usize,
    sigma: i64,
) -> RenormalizedUpsilonSet {
    let shift2 = sigma - components as i64 + 1;
    RenormalizedUpsilonSet { values2: set.values().iter().map(|&u| 2 * u - shift2).collect() }
}

/// Lower bound `ceil(|upsilon - sigma/2|)` for the smooth
/// 4-dimensional crosscap number.
pub fn gamma4_lower_bound(upsilon: i64, sigma: i64) -> i64 {
    let doubled = (2 * upsilon - sigma).abs();
    (doubled + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDiagram;

    fn grid(o: &[usize], x: &[usize]) -> GridDiagram {
        GridDiagram::new(o, x).unwrap()
    }

    #[test]
    fn unknot_upsilon_zero() {
        let opts = BuildOptions::default();
        assert_eq!(upsilon(&grid(&[0, 1], &[1, 0]), &opts).unwrap(), 0);
        assert_eq!(upsilon(&grid(&[0], &[0]), &opts).unwrap(), 0);
    }

    #[test]
    fn knot_sets_are_singletons() {
        let set = upsilon_set(&grid(&[1, 2, 3, 4, 0], &[4, 0, 1, 2, 3]), &BuildOptions::default())
            .unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.min(), set.max());
    }

    #[test]
    fn two_unlink_set() {
        let set = upsilon_set(&grid(&[0, 1, 2, 3], &[1, 0, 3, 2]), &BuildOptions::default())
            .unwrap();
        assert_eq!(set.values(), &[-1, 0]);
    }

    #[test]
    fn upsilon_rejects_links() {
        let err = upsilon(&grid(&[0, 1, 2, 3], &[1, 0, 3, 2]), &BuildOptions::default());
        assert!(matches!(err, Err(Error::NotAKnot { components: 2 })));
    }

    #[test]
    fn gamma4_examples() {
        assert_eq!(gamma4_lower_bound(-2, -6), 1);
        for n in 1..=6 {
            assert_eq!(gamma4_lower_bound(-2 * n, -6 * n), n);
        }
        assert_eq!(gamma4_lower_bound(-1, -2), 0);
    }

    #[test]
    fn renormalization_examples() {
        // Trefoil: upsilon -1, sigma -2, knot: shift (sigma - 0)/2 = -1.
        let set = UpsilonSet { values: vec![-1] };
        let r = renormalized_upsilon_set(&set, 1, -2);
        assert_eq!(r.values2(), &[0]);
        // Mirroring negates and reverses.
        let set = UpsilonSet { values: vec![-1, 0] };
        let r = renormalized_upsilon_set(&set, 2, -1);
        assert_eq!(r.values2(), &[0, 2]);
        assert_eq!(r.mirrored().values2(), &[-2, 0]);
    }
}
