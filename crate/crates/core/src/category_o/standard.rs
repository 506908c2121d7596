//! Standard modules: the free module over the negative part on a seed space,
//! with the raising action defined through the pairing. Realized on a finite
//! window for computation.

use super::{ModuleError, RawModule, TorusAction};
use crate::algebra::{delta, AlgebraTag, Element, Monomial};
use crate::lattice::{CartanData, Weight};
use crate::linalg::Mat;
use crate::pairing::PairingSession;
use crate::scalars::QRat;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The seed datum of a standard module.
#[derive(Clone, Debug)]
pub enum SeedData {
    /// One labelled basis vector per entry, each with a weight; the torus
    /// acts semisimply with the induced eigenvalues.
    Weighted(Vec<(String, Weight)>),
    /// A seed space with explicit invertible commuting matrices for the
    /// torus generators indexed by the fundamental weights.
    TorusMatrices { dim: usize, mats: Vec<Mat> },
}

/// A module constructed as (negative part) tensor (seed space), with
/// `e.(x (x) v) = sum phi(e, x_(1)) x_(2) (x) v` and `f.(x (x) v) = f x (x) v`.
#[derive(Clone, Debug)]
pub struct StandardModule {
    cartan: Arc<CartanData>,
    seeds: SeedData,
}

impl StandardModule {
    pub fn new(cartan: Arc<CartanData>, seeds: SeedData) -> StandardModule {
        StandardModule { cartan, seeds }
    }

    /// The simple module with a single maximal vector of the given weight.
    pub fn highest_weight(cartan: Arc<CartanData>, lambda: Weight) -> StandardModule {
        StandardModule::new(cartan, SeedData::Weighted(vec![("v".to_string(), lambda)]))
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn seeds(&self) -> &SeedData {
        &self.seeds
    }

    /// Materialize the module on the window of lowering degrees of height at
    /// most `depth`.
    pub fn realize(
        &self,
        session: &PairingSession,
        depth: usize,
    ) -> Result<RawModule, ModuleError> {
        match &self.seeds {
            SeedData::Weighted(seeds) => self.realize_weighted(session, depth, seeds),
            SeedData::TorusMatrices { dim, mats } => {
                self.realize_torus(session, depth, *dim, mats)
            }
        }
    }

    fn realize_weighted(
        &self,
        session: &PairingSession,
        depth: usize,
        seeds: &[(String, Weight)],
    ) -> Result<RawModule, ModuleError> {
        let cartan = &self.cartan;
        let betas = super::positive_combinations(cartan, depth);
        // basis entries per cell: (seed index, beta, dual index), sorted
        let mut cell_entries: BTreeMap<Weight, Vec<(usize, Weight, usize)>> = BTreeMap::new();
        for (s, (_, lam)) in seeds.iter().enumerate() {
            for beta in &betas {
                let block = session.weight_block(beta)?;
                if block.rank == 0 {
                    continue;
                }
                let cell = lam - beta;
                let entry = cell_entries.entry(cell).or_default();
                for i in 0..block.rank {
                    entry.push((s, beta.clone(), i));
                }
            }
        }
        for list in cell_entries.values_mut() {
            list.sort();
        }
        let cells: BTreeMap<Weight, usize> = cell_entries
            .iter()
            .map(|(c, l)| (c.clone(), l.len()))
            .collect();
        let index_of = |cell: &Weight, key: &(usize, Weight, usize)| -> Option<usize> {
            cell_entries.get(cell)?.iter().position(|k| k == key)
        };

        let mut e_blocks: BTreeMap<(usize, Weight), Mat> = BTreeMap::new();
        let mut f_blocks: BTreeMap<(usize, Weight), Mat> = BTreeMap::new();
        for (cell, entries) in &cell_entries {
            for j in 0..cartan.rank() {
                let alpha_j = cartan.simple_root(j);
                // raising block into cell + alpha_j
                let up = cell + &alpha_j;
                if cells.contains_key(&up) {
                    let updim = cells[&up];
                    let mut m = Mat::zeros(updim, entries.len());
                    let mut nonzero = false;
                    for (col, (s, beta, i)) in entries.iter().enumerate() {
                        let image = raising_image(session, cartan, beta, *i, j)?;
                        for (krow, coeff) in image {
                            let key = (*s, &beta.clone() - &alpha_j, krow);
                            if let Some(row) = index_of(&up, &key) {
                                if !coeff.is_zero() {
                                    nonzero = true;
                                }
                                *m.at_mut(row, col) = coeff;
                            }
                        }
                    }
                    if nonzero {
                        e_blocks.insert((j, cell.clone()), m);
                    }
                }
                // lowering block into cell - alpha_j: defined only when every
                // basis entry's image stays inside the window
                let down = cell - &alpha_j;
                let complete = entries.iter().all(|(_, beta, _)| {
                    cartan
                        .height(&(beta + &alpha_j))
                        .map(|h| h as usize <= depth)
                        .unwrap_or(false)
                });
                if complete && cells.contains_key(&down) {
                    let downdim = cells[&down];
                    let mut m = Mat::zeros(downdim, entries.len());
                    for (col, (s, beta, i)) in entries.iter().enumerate() {
                        let image = lowering_image(session, cartan, beta, *i, j)?;
                        for (krow, coeff) in image {
                            let key = (*s, &beta.clone() + &alpha_j, krow);
                            let row = index_of(&down, &key)
                                .expect("lowering image stays in the window");
                            *m.at_mut(row, col) = coeff;
                        }
                    }
                    f_blocks.insert((j, cell.clone()), m);
                }
            }
        }
        Ok(RawModule::new(
            self.cartan.clone(),
            cells,
            e_blocks,
            f_blocks,
            TorusAction::ByWeight,
        ))
    }

    fn realize_torus(
        &self,
        session: &PairingSession,
        depth: usize,
        seed_dim: usize,
        mats: &[Mat],
    ) -> Result<RawModule, ModuleError> {
        let cartan = &self.cartan;
        let betas = super::positive_combinations(cartan, depth);
        let mut cell_entries: BTreeMap<Weight, Vec<(Weight, usize)>> = BTreeMap::new();
        for beta in &betas {
            let block = session.weight_block(beta)?;
            if block.rank == 0 {
                continue;
            }
            let cell = -beta;
            let entry = cell_entries.entry(cell).or_default();
            for i in 0..block.rank {
                entry.push((beta.clone(), i));
            }
        }
        for list in cell_entries.values_mut() {
            list.sort();
        }
        let cells: BTreeMap<Weight, usize> = cell_entries
            .iter()
            .map(|(c, l)| (c.clone(), l.len() * seed_dim))
            .collect();
        let index_of = |cell: &Weight, key: &(Weight, usize)| -> Option<usize> {
            cell_entries.get(cell)?.iter().position(|k| k == key)
        };
        let mut e_blocks: BTreeMap<(usize, Weight), Mat> = BTreeMap::new();
        let mut f_blocks: BTreeMap<(usize, Weight), Mat> = BTreeMap::new();
        for (cell, entries) in &cell_entries {
            for j in 0..cartan.rank() {
                let alpha_j = cartan.simple_root(j);
                let up = cell + &alpha_j;
                if cells.contains_key(&up) {
                    let mut m = Mat::zeros(cells[&up], entries.len() * seed_dim);
                    let mut nonzero = false;
                    for (col, (beta, i)) in entries.iter().enumerate() {
                        let image = raising_image(session, cartan, beta, *i, j)?;
                        for (krow, coeff) in image {
                            let key = (&beta.clone() - &alpha_j, krow);
                            if let Some(row) = index_of(&up, &key) {
                                if !coeff.is_zero() {
                                    nonzero = true;
                                }
                                for v in 0..seed_dim {
                                    *m.at_mut(row * seed_dim + v, col * seed_dim + v) =
                                        coeff.clone();
                                }
                            }
                        }
                    }
                    if nonzero {
                        e_blocks.insert((j, cell.clone()), m);
                    }
                }
                let down = cell - &alpha_j;
                let complete = entries.iter().all(|(beta, _)| {
                    cartan
                        .height(&(beta + &alpha_j))
                        .map(|h| h as usize <= depth)
                        .unwrap_or(false)
                });
                if complete && cells.contains_key(&down) {
                    let mut m = Mat::zeros(cells[&down], entries.len() * seed_dim);
                    for (col, (beta, i)) in entries.iter().enumerate() {
                        let image = lowering_image(session, cartan, beta, *i, j)?;
                        for (krow, coeff) in image {
                            let key = (&beta.clone() + &alpha_j, krow);
                            let row = index_of(&down, &key)
                                .expect("lowering image stays in the window");
                            for v in 0..seed_dim {
                                *m.at_mut(row * seed_dim + v, col * seed_dim + v) = coeff.clone();
                            }
                        }
                    }
                    f_blocks.insert((j, cell.clone()), m);
                }
            }
        }
        Ok(RawModule::new(
            self.cartan.clone(),
            cells,
            e_blocks,
            f_blocks,
            TorusAction::SeedMatrices {
                mats: mats.to_vec(),
            },
        ))
    }
}

// coordinates of e'_j . f_dual(beta)[i] in the dual basis at beta - alpha_j
fn raising_image(
    session: &PairingSession,
    cartan: &Arc<CartanData>,
    beta: &Weight,
    i: usize,
    j: usize,
) -> Result<Vec<(usize, QRat)>, ModuleError> {
    let block = session.weight_block(beta)?;
    let x = block.f_dual()[i].retagged(AlgebraTag::BosonMinus)?;
    let e_j = Element::e_letter(session.plus_tag(), cartan.clone(), j)?;
    let dx = delta(&x)?;
    let mut moved = Element::zero(AlgebraTag::NegPart, cartan.clone());
    for (legs, c) in dx.terms() {
        let x1 = Element::from_monomial(
            AlgebraTag::BosonMinus,
            cartan.clone(),
            legs[0].clone(),
            QRat::one(),
        );
        let v = session.pair(&e_j, &x1)?;
        if v.is_zero() {
            continue;
        }
        debug_assert!(legs[1].torus.is_zero());
        moved = &moved
            + &Element::from_monomial(
                AlgebraTag::NegPart,
                cartan.clone(),
                Monomial {
                    f_word: legs[1].f_word.clone(),
                    torus: Weight::zero(cartan.rank()),
                    e_word: Vec::new(),
                },
                &v * c,
            );
    }
    if moved.is_zero() {
        return Ok(Vec::new());
    }
    let target = &beta.clone() - &cartan.simple_root(j);
    let tblock = session.weight_block(&target)?;
    let coords = tblock.coords_negative(session, &moved)?;
    Ok(coords
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

// coordinates of f_j * f_dual(beta)[i] in the dual basis at beta + alpha_j
fn lowering_image(
    session: &PairingSession,
    cartan: &Arc<CartanData>,
    beta: &Weight,
    i: usize,
    j: usize,
) -> Result<Vec<(usize, QRat)>, ModuleError> {
    let block = session.weight_block(beta)?;
    let f_j = Element::f_letter(AlgebraTag::NegPart, cartan.clone(), j)?;
    let moved = &f_j * &block.f_dual()[i].retagged(AlgebraTag::NegPart)?;
    let target = &beta.clone() + &cartan.simple_root(j);
    let tblock = session.weight_block(&target)?;
    let coords = tblock.coords_negative(session, &moved)?;
    Ok(coords
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}
