//! Fixed test paths shared by the verification suites and the CLI. The
//! data is frozen so every run checks the same exact rational pipeline.

use crate::exact::{rat, rat_int, UniPoly};
use crate::paths::{CoeffPath, PiecewisePolyFn};

/// a_1 = 1 on [0, 1].
pub fn path_const_one() -> CoeffPath {
    CoeffPath::from_parts(
        rat_int(1),
        vec![(1, PiecewisePolyFn::constant(rat_int(1), rat_int(1)))],
    )
    .unwrap()
}

/// Irregular two-piece path on [0, 1] with support {1, 2}; the breakpoint
/// sits at 1/3 and the pieces mix linear and quadratic parts.
pub fn path_two_piece() -> CoeffPath {
    let a1 = PiecewisePolyFn::new(
        vec![rat(0, 1), rat(1, 3), rat(1, 1)],
        vec![
            UniPoly::from_coeffs(vec![rat(1, 2), rat(2, 1)]),
            UniPoly::from_coeffs(vec![rat(-1, 1), rat(0, 1), rat(3, 2)]),
        ],
    )
    .unwrap();
    let a2 = PiecewisePolyFn::new(
        vec![rat(0, 1), rat(1, 3), rat(1, 1)],
        vec![
            UniPoly::constant(rat(2, 3)),
            UniPoly::from_coeffs(vec![rat(1, 1), rat(-2, 1)]),
        ],
    )
    .unwrap();
    CoeffPath::from_parts(rat_int(1), vec![(1, a1), (2, a2)]).unwrap()
}

/// Support {1, 2, 3} on [0, 1] with moderate coefficients, used for the
/// numeric cross-checks.
pub fn path_mixed() -> CoeffPath {
    let a1 = PiecewisePolyFn::new(
        vec![rat(0, 1), rat(1, 2), rat(1, 1)],
        vec![
            UniPoly::from_coeffs(vec![rat(1, 1), rat(-1, 1)]),
            UniPoly::constant(rat(1, 2)),
        ],
    )
    .unwrap();
    let a2 = PiecewisePolyFn::from_poly(rat_int(1), UniPoly::from_coeffs(vec![rat(0, 1), rat(1, 1)]));
    let a3 = PiecewisePolyFn::constant(rat_int(1), rat(-1, 4));
    CoeffPath::from_parts(rat_int(1), vec![(1, a1), (2, a2), (3, a3)]).unwrap()
}

/// The three fixed paths used by the return-map comparisons.
pub fn return_map_paths() -> Vec<CoeffPath> {
    vec![path_const_one(), path_two_piece(), path_mixed()]
}
