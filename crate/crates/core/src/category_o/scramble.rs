//! Direct sums and seeded random weight-preserving basis changes, used to
//! produce decomposition test inputs.

use super::{RawModule, TorusAction};
use crate::lattice::Weight;
use crate::linalg::Mat;
use crate::scalars::QRat;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

/// Direct sum of two modules over the same Cartan datum with weight-semisimple
/// torus action. Lowering blocks survive only where both summands that carry
/// the source cell define them.
pub fn direct_sum(a: &RawModule, b: &RawModule) -> RawModule {
    assert_eq!(a.cartan(), b.cartan());
    assert!(matches!(a.torus(), TorusAction::ByWeight));
    assert!(matches!(b.torus(), TorusAction::ByWeight));
    let cartan = a.cartan().clone();
    let mut cells: BTreeMap<Weight, usize> = BTreeMap::new();
    for (c, &d) in a.cells() {
        *cells.entry(c.clone()).or_insert(0) += d;
    }
    for (c, &d) in b.cells() {
        *cells.entry(c.clone()).or_insert(0) += d;
    }
    let mut e_blocks = BTreeMap::new();
    let mut f_blocks = BTreeMap::new();
    for cell in cells.keys() {
        for i in 0..cartan.rank() {
            let up = cell + &cartan.simple_root(i);
            if cells.contains_key(&up) {
                let rows = *cells.get(&up).unwrap();
                let cols = cells[cell];
                let ea = a.e_block(i, cell);
                let eb = b.e_block(i, cell);
                if ea.is_some() || eb.is_some() {
                    let m = block_diag(
                        rows,
                        cols,
                        a.dim(&up),
                        a.dim(cell),
                        ea,
                        eb,
                    );
                    e_blocks.insert((i, cell.clone()), m);
                }
            }
            // lowering: defined only when defined in every summand present here
            let a_here = a.dim(cell) > 0;
            let b_here = b.dim(cell) > 0;
            let fa = a.f_block(i, cell);
            let fb = b.f_block(i, cell);
            if (a_here && fa.is_none()) || (b_here && fb.is_none()) {
                continue;
            }
            if !a_here && !b_here {
                continue;
            }
            let down = cell - &cartan.simple_root(i);
            let rows = match cells.get(&down) {
                Some(&r) => r,
                None => continue,
            };
            let m = block_diag(rows, cells[cell], a.dim(&down), a.dim(cell), fa, fb);
            f_blocks.insert((i, cell.clone()), m);
        }
    }
    RawModule::new(cartan, cells, e_blocks, f_blocks, TorusAction::ByWeight)
}

// assemble [A 0; 0 B] with the A part occupying the leading rows/columns
fn block_diag(
    rows: usize,
    cols: usize,
    a_rows: usize,
    a_cols: usize,
    a: Option<&Mat>,
    b: Option<&Mat>,
) -> Mat {
    let mut m = Mat::zeros(rows, cols);
    if let Some(a) = a {
        for r in 0..a.nrows() {
            for c in 0..a.ncols() {
                *m.at_mut(r, c) = a.at(r, c).clone();
            }
        }
    }
    if let Some(b) = b {
        for r in 0..b.nrows() {
            for c in 0..b.ncols() {
                *m.at_mut(a_rows + r, a_cols + c) = b.at(r, c).clone();
            }
        }
    }
    m
}

/// Apply a random invertible weight-preserving basis change with exact
/// rational-in-q entries. Returns the scrambled module and the change of
/// basis per cell (new = S old S^{-1} blockwise).
pub fn random_weight_preserving_scramble(
    module: &RawModule,
    seed: u64,
) -> (RawModule, BTreeMap<Weight, Mat>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let cartan = module.cartan().clone();
    let mut changes: BTreeMap<Weight, Mat> = BTreeMap::new();
    for (cell, &dim) in module.cells() {
        changes.insert(cell.clone(), random_invertible(&mut rng, dim));
    }
    let inverses: BTreeMap<Weight, Mat> = changes
        .iter()
        .map(|(c, m)| (c.clone(), m.inverse().expect("triangular product")))
        .collect();
    let mut e_blocks = BTreeMap::new();
    let mut f_blocks = BTreeMap::new();
    for cell in module.cells().keys() {
        for i in 0..cartan.rank() {
            if let Some(m) = module.e_block(i, cell) {
                let up = cell + &cartan.simple_root(i);
                let new = changes[&up].mul(m).mul(&inverses[cell]);
                e_blocks.insert((i, cell.clone()), new);
            }
            if let Some(m) = module.f_block(i, cell) {
                let down = cell - &cartan.simple_root(i);
                let new = changes[&down].mul(m).mul(&inverses[cell]);
                f_blocks.insert((i, cell.clone()), new);
            }
        }
    }
    (
        RawModule::new(
            cartan,
            module.cells().clone(),
            e_blocks,
            f_blocks,
            module.torus().clone(),
        ),
        changes,
    )
}

// unit lower-triangular times unit upper-triangular with small Laurent entries
fn random_invertible(rng: &mut StdRng, n: usize) -> Mat {
    let mut lower = Mat::identity(n);
    let mut upper = Mat::identity(n);
    for r in 0..n {
        for c in 0..n {
            if r > c {
                *lower.at_mut(r, c) = random_entry(rng);
            } else if r < c {
                *upper.at_mut(r, c) = random_entry(rng);
            }
        }
    }
    lower.mul(&upper)
}

fn random_entry(rng: &mut StdRng) -> QRat {
    let coeff: i64 = rng.random_range(-2..=2);
    let power: i64 = rng.random_range(-2..=2);
    &QRat::from_int(coeff) * &QRat::q_pow(power)
}

/// A random vector supported on the window, with small Laurent coefficients.
pub fn random_vector(module: &RawModule, rng: &mut StdRng) -> super::ModVec {
    let mut v = super::ModVec::zero();
    for (cell, &dim) in module.cells() {
        for i in 0..dim {
            if rng.random_bool(0.6) {
                v.add_to(cell.clone(), i, random_entry(rng));
            }
        }
    }
    v
}
