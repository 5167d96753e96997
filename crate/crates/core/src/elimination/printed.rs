//! Coefficient tables as typeset in the historical source, transcribed cell
//! by cell. They are comparison targets only; the solver never reads them.

use crate::poly::{frac, MPoly, Registry};

/// One printed cell: `num/den · Π var^exp`.
pub(crate) type Cell = (i64, i64, &'static [(&'static str, u32)]);

pub(crate) fn build(registry: &Registry, cells: &[Cell]) -> MPoly {
    cells.iter().fold(MPoly::zero(registry), |acc, &(n, d, powers)| {
        acc + MPoly::term(registry, frac(n, d), powers).expect("printed table variable")
    })
}

pub(crate) const P: &[Cell] = &[(4, 1, &[("t", 2)]), (-1, 1, &[("A", 1)])];

pub(crate) const Q: &[Cell] = &[
    (6, 1, &[("t", 4)]),
    (-3, 1, &[("A", 1), ("t", 2)]),
    (1, 1, &[("B", 1)]),
];

pub(crate) const R: &[Cell] = &[
    (4, 1, &[("t", 6)]),
    (-3, 1, &[("A", 1), ("t", 4)]),
    (2, 1, &[("B", 1), ("t", 2)]),
    (-1, 1, &[("C", 1)]),
];

pub(crate) const S: &[Cell] = &[
    (1, 1, &[("t", 8)]),
    (-1, 1, &[("A", 1), ("t", 6)]),
    (1, 1, &[("B", 1), ("t", 4)]),
    (-1, 1, &[("C", 1), ("t", 2)]),
    (1, 1, &[("D", 1)]),
];

/// Radicand shared by the gamma and delta displays.
pub(crate) const RADICAND: &[Cell] = &[
    (4, 1, &[("t", 6)]),
    (2, 1, &[("B", 1), ("t", 2)]),
    (-1, 2, &[("A", 2), ("t", 2)]),
    (-1, 8, &[("A", 3)]),
    (1, 2, &[("A", 1), ("B", 1)]),
    (-1, 1, &[("C", 1)]),
];

pub(crate) const GAMMA_BASE: &[Cell] = &[(1, 1, &[("A", 1), ("t", 1)])];

pub(crate) const DELTA_BASE: &[Cell] = &[
    (3, 1, &[("t", 4)]),
    (1, 2, &[("A", 1), ("t", 2)]),
    (-1, 8, &[("A", 2)]),
    (1, 2, &[("B", 1)]),
];

pub(crate) const DELTA_COEFF: &[Cell] = &[(2, 1, &[("t", 1)])];

/// Surd-free part of delta squared.
pub(crate) const DELTA_SQ_PLAIN: &[Cell] = &[
    (25, 1, &[("t", 8)]),
    (3, 1, &[("A", 1), ("t", 6)]),
    (-5, 2, &[("A", 2), ("t", 4)]),
    (11, 1, &[("B", 1), ("t", 4)]),
    (-5, 8, &[("A", 3), ("t", 2)]),
    (5, 2, &[("A", 1), ("B", 1), ("t", 2)]),
    (-4, 1, &[("C", 1), ("t", 2)]),
    (1, 64, &[("A", 4)]),
    (-1, 8, &[("A", 2), ("B", 1)]),
    (1, 4, &[("B", 2)]),
];

/// Multiplier of the surd in delta squared and in the pre-rationalized form.
pub(crate) const SURD_MULTIPLIER: &[Cell] = &[
    (12, 1, &[("t", 5)]),
    (2, 1, &[("A", 1), ("t", 3)]),
    (-1, 2, &[("A", 2), ("t", 1)]),
    (2, 1, &[("B", 1), ("t", 1)]),
];

/// Surd-free part of `delta² − S` before rationalization.
pub(crate) const PRE_RATIONALIZED: &[Cell] = &[
    (24, 1, &[("t", 8)]),
    (4, 1, &[("A", 1), ("t", 6)]),
    (-5, 2, &[("A", 2), ("t", 4)]),
    (10, 1, &[("B", 1), ("t", 4)]),
    (-5, 8, &[("A", 3), ("t", 2)]),
    (5, 2, &[("A", 1), ("B", 1), ("t", 2)]),
    (-3, 1, &[("C", 1), ("t", 2)]),
    (1, 64, &[("A", 4)]),
    (-1, 8, &[("A", 2), ("B", 1)]),
    (1, 4, &[("B", 2)]),
    (-1, 1, &[("D", 1)]),
];

/// Rationalized octic in `t`, column by column (t⁸, t⁶, t⁴, t², 1).
pub(crate) const RATIONALIZED_T: &[Cell] = &[
    (3, 1, &[("A", 4), ("t", 8)]),
    (-12, 1, &[("A", 2), ("B", 1), ("t", 8)]),
    (24, 1, &[("A", 1), ("C", 1), ("t", 8)]),
    (-48, 1, &[("D", 1), ("t", 8)]),
    (5, 4, &[("A", 5), ("t", 6)]),
    (-8, 1, &[("A", 3), ("B", 1), ("t", 6)]),
    (7, 1, &[("A", 2), ("C", 1), ("t", 6)]),
    (12, 1, &[("A", 1), ("B", 2), ("t", 6)]),
    (-8, 1, &[("A", 1), ("D", 1), ("t", 6)]),
    (-12, 1, &[("B", 1), ("C", 1), ("t", 6)]),
    (3, 16, &[("A", 6), ("t", 4)]),
    (-27, 16, &[("A", 4), ("B", 1), ("t", 4)]),
    (7, 4, &[("A", 3), ("C", 1), ("t", 4)]),
    (9, 2, &[("A", 2), ("B", 2), ("t", 4)]),
    (5, 1, &[("A", 2), ("D", 1), ("t", 4)]),
    (-7, 1, &[("A", 1), ("B", 1), ("C", 1), ("t", 4)]),
    (-3, 1, &[("B", 3), ("t", 4)]),
    (-20, 1, &[("B", 1), ("D", 1), ("t", 4)]),
    (9, 1, &[("C", 2), ("t", 4)]),
    (3, 256, &[("A", 7), ("t", 2)]),
    (-9, 64, &[("A", 5), ("B", 1), ("t", 2)]),
    (5, 32, &[("A", 4), ("C", 1), ("t", 2)]),
    (9, 16, &[("A", 3), ("B", 2), ("t", 2)]),
    (5, 4, &[("A", 3), ("D", 1), ("t", 2)]),
    (-5, 4, &[("A", 2), ("B", 1), ("C", 1), ("t", 2)]),
    (-3, 4, &[("A", 1), ("B", 3), ("t", 2)]),
    (-5, 1, &[("A", 1), ("B", 1), ("D", 1), ("t", 2)]),
    (5, 2, &[("B", 2), ("C", 1), ("t", 2)]),
    (6, 1, &[("C", 1), ("D", 1), ("t", 2)]),
    (1, 4096, &[("A", 8)]),
    (-1, 256, &[("A", 6), ("B", 1)]),
    (3, 128, &[("A", 4), ("B", 2)]),
    (-1, 32, &[("A", 4), ("D", 1)]),
    (-1, 16, &[("A", 2), ("B", 3)]),
    (1, 4, &[("A", 2), ("B", 1), ("D", 1)]),
    (1, 16, &[("B", 4)]),
    (-1, 2, &[("B", 2), ("D", 1)]),
    (1, 1, &[("D", 2)]),
];

/// The same octic in `u = 2t` with `E = A²/4 − B`.
pub(crate) const U_FORM: &[Cell] = &[
    (3, 1, &[("A", 2), ("E", 1), ("u", 8)]),
    (6, 1, &[("A", 1), ("C", 1), ("u", 8)]),
    (-12, 1, &[("D", 1), ("u", 8)]),
    (2, 1, &[("A", 3), ("E", 1), ("u", 6)]),
    (4, 1, &[("A", 2), ("C", 1), ("u", 6)]),
    (12, 1, &[("A", 1), ("E", 2), ("u", 6)]),
    (-8, 1, &[("A", 1), ("D", 1), ("u", 6)]),
    (12, 1, &[("C", 1), ("E", 1), ("u", 6)]),
    (9, 1, &[("A", 2), ("E", 2), ("u", 4)]),
    (28, 1, &[("A", 1), ("C", 1), ("E", 1), ("u", 4)]),
    (80, 1, &[("D", 1), ("E", 1), ("u", 4)]),
    (36, 1, &[("C", 2), ("u", 4)]),
    (12, 1, &[("E", 3), ("u", 4)]),
    (12, 1, &[("A", 1), ("E", 3), ("u", 2)]),
    (80, 1, &[("A", 1), ("D", 1), ("E", 1), ("u", 2)]),
    (96, 1, &[("C", 1), ("D", 1), ("u", 2)]),
    (40, 1, &[("C", 1), ("E", 2), ("u", 2)]),
    (4, 1, &[("E", 4)]),
    (-32, 1, &[("D", 1), ("E", 2)]),
    (64, 1, &[("D", 2)]),
];
