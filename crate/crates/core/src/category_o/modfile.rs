//! JSON module files.
//!
//! Schema: `cartan` (integer matrix), `symmetrizers`, `mode` (`"weights"` or
//! `"torus-matrices"`), `spaces` (weight string -> dimension), `actions`
//! (generator name -> blocks `{from, to, matrix}`), scalars in the scalar
//! text grammar, weights as comma-separated integers in fundamental-weight
//! coordinates. Torus-matrices mode describes the seed of a standard module;
//! an optional `depth` controls the realized window (default 4).

use super::{RawModule, SeedData, StandardModule, TorusAction};
use crate::lattice::{CartanData, LatticeError, Weight};
use crate::linalg::Mat;
use crate::pairing::{BrickPair, PairingSession};
use crate::scalars::parse_scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModuleFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid Cartan data: {0}")]
    Lattice(#[from] LatticeError),
    #[error("unknown mode {0:?}; expected \"weights\" or \"torus-matrices\"")]
    UnknownMode(String),
    #[error("bad weight label {0:?}")]
    BadWeight(String),
    #[error("unknown generator {0:?} for this mode")]
    UnknownGenerator(String),
    #[error("block for {gen} maps {from} to {to}, expected target {expected}")]
    WrongTarget {
        gen: String,
        from: String,
        to: String,
        expected: String,
    },
    #[error("matrix for {gen} from {from} has the wrong shape")]
    WrongShape { gen: String, from: String },
    #[error("bad scalar {text:?}: {err}")]
    BadScalar { text: String, err: String },
    #[error("duplicate block for {gen} from {from}")]
    DuplicateBlock { gen: String, from: String },
    #[error("space {0:?} is declared but used by no action and carries dimension 0")]
    EmptySpace(String),
    #[error("torus-matrices mode requires exactly one space label")]
    BadSeedSpaces,
    #[error("torus matrix t{0} is missing or not invertible")]
    BadTorusMatrix(usize),
    #[error("module construction failed: {0}")]
    Module(String),
}

#[derive(Serialize, Deserialize)]
struct FileModel {
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    mode: String,
    spaces: BTreeMap<String, usize>,
    #[serde(default)]
    actions: BTreeMap<String, Vec<BlockModel>>,
    #[serde(default)]
    depth: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct BlockModel {
    from: String,
    to: String,
    matrix: Vec<Vec<String>>,
}

fn parse_weight(text: &str, rank: usize) -> Result<Weight, ModuleFileError> {
    let coords: Result<Vec<i64>, _> = text.split(',').map(|t| t.trim().parse::<i64>()).collect();
    match coords {
        Ok(v) if v.len() == rank => Ok(Weight(v)),
        _ => Err(ModuleFileError::BadWeight(text.to_string())),
    }
}

fn parse_matrix(
    gen: &str,
    from: &str,
    rows: usize,
    cols: usize,
    m: &[Vec<String>],
) -> Result<Mat, ModuleFileError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(ModuleFileError::WrongShape {
            gen: gen.to_string(),
            from: from.to_string(),
        });
    }
    let mut out = Mat::zeros(rows, cols);
    for (r, row) in m.iter().enumerate() {
        for (c, text) in row.iter().enumerate() {
            let v = parse_scalar(text).map_err(|e| ModuleFileError::BadScalar {
                text: text.clone(),
                err: e.to_string(),
            })?;
            *out.at_mut(r, c) = v;
        }
    }
    Ok(out)
}

/// Read a module file; torus-matrices seeds are realized on their window.
pub fn module_from_json(text: &str) -> Result<(RawModule, Arc<CartanData>), ModuleFileError> {
    let model: FileModel = serde_json::from_str(text)?;
    let cartan = Arc::new(CartanData::new(model.cartan.clone(), model.symmetrizers.clone())?);
    let rank = cartan.rank();
    match model.mode.as_str() {
        "weights" => {
            let mut cells = BTreeMap::new();
            for (label, &dim) in &model.spaces {
                if dim == 0 {
                    return Err(ModuleFileError::EmptySpace(label.clone()));
                }
                cells.insert(parse_weight(label, rank)?, dim);
            }
            let mut e_blocks = BTreeMap::new();
            let mut f_blocks = BTreeMap::new();
            for (gen, blocks) in &model.actions {
                let (is_e, idx) = parse_generator(gen, rank)?;
                for b in blocks {
                    let from = parse_weight(&b.from, rank)?;
                    let to = parse_weight(&b.to, rank)?;
                    let alpha = cartan.simple_root(idx);
                    let expected = if is_e { &from + &alpha } else { &from - &alpha };
                    if to != expected {
                        return Err(ModuleFileError::WrongTarget {
                            gen: gen.clone(),
                            from: b.from.clone(),
                            to: b.to.clone(),
                            expected: expected.to_string(),
                        });
                    }
                    let rows = *cells.get(&to).unwrap_or(&0);
                    let cols = *cells.get(&from).unwrap_or(&0);
                    let m = parse_matrix(gen, &b.from, rows, cols, &b.matrix)?;
                    let map = if is_e { &mut e_blocks } else { &mut f_blocks };
                    if map.insert((idx, from), m).is_some() {
                        return Err(ModuleFileError::DuplicateBlock {
                            gen: gen.clone(),
                            from: b.from.clone(),
                        });
                    }
                }
            }
            Ok((
                RawModule::new(cartan.clone(), cells, e_blocks, f_blocks, TorusAction::ByWeight),
                cartan,
            ))
        }
        "torus-matrices" => {
            if model.spaces.len() != 1 {
                return Err(ModuleFileError::BadSeedSpaces);
            }
            let (label, &dim) = model.spaces.iter().next().unwrap();
            if dim == 0 {
                return Err(ModuleFileError::EmptySpace(label.clone()));
            }
            let mut mats: Vec<Option<Mat>> = vec![None; rank];
            for (gen, blocks) in &model.actions {
                let idx = parse_torus_generator(gen, rank)?;
                for b in blocks {
                    if b.from != *label || b.to != *label {
                        return Err(ModuleFileError::WrongTarget {
                            gen: gen.clone(),
                            from: b.from.clone(),
                            to: b.to.clone(),
                            expected: label.clone(),
                        });
                    }
                    let m = parse_matrix(gen, &b.from, dim, dim, &b.matrix)?;
                    mats[idx] = Some(m);
                }
            }
            let mut resolved = Vec::with_capacity(rank);
            for (k, m) in mats.into_iter().enumerate() {
                let m = m.ok_or(ModuleFileError::BadTorusMatrix(k + 1))?;
                if m.inverse().is_none() {
                    return Err(ModuleFileError::BadTorusMatrix(k + 1));
                }
                resolved.push(m);
            }
            let standard = StandardModule::new(
                cartan.clone(),
                SeedData::TorusMatrices {
                    dim,
                    mats: resolved,
                },
            );
            let session = PairingSession::new(cartan.clone(), BrickPair::Boson);
            let raw = standard
                .realize(&session, model.depth.unwrap_or(4))
                .map_err(|e| ModuleFileError::Module(e.to_string()))?;
            Ok((raw, cartan))
        }
        other => Err(ModuleFileError::UnknownMode(other.to_string())),
    }
}

fn parse_generator(name: &str, rank: usize) -> Result<(bool, usize), ModuleFileError> {
    let (kind, idx) = name.split_at(1);
    let idx: usize = idx
        .parse()
        .map_err(|_| ModuleFileError::UnknownGenerator(name.to_string()))?;
    if idx == 0 || idx > rank {
        return Err(ModuleFileError::UnknownGenerator(name.to_string()));
    }
    match kind {
        "e" => Ok((true, idx - 1)),
        "f" => Ok((false, idx - 1)),
        _ => Err(ModuleFileError::UnknownGenerator(name.to_string())),
    }
}

fn parse_torus_generator(name: &str, rank: usize) -> Result<usize, ModuleFileError> {
    let (kind, idx) = name.split_at(1);
    let idx: usize = idx
        .parse()
        .map_err(|_| ModuleFileError::UnknownGenerator(name.to_string()))?;
    if kind != "t" || idx == 0 || idx > rank {
        return Err(ModuleFileError::UnknownGenerator(name.to_string()));
    }
    Ok(idx - 1)
}

/// Serialize a weight-semisimple module back to the file format.
pub fn module_to_json(module: &RawModule) -> Result<String, ModuleFileError> {
    assert!(
        matches!(module.torus(), TorusAction::ByWeight),
        "only weight-mode modules serialize"
    );
    let cartan = module.cartan();
    let rank = cartan.rank();
    let mut spaces = BTreeMap::new();
    for (cell, &dim) in module.cells() {
        spaces.insert(cell.to_string(), dim);
    }
    let mut actions: BTreeMap<String, Vec<BlockModel>> = BTreeMap::new();
    let render = |m: &Mat| -> Vec<Vec<String>> {
        (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| m.at(r, c).to_string()).collect())
            .collect()
    };
    for cell in module.cells().keys() {
        for i in 0..rank {
            if let Some(m) = module.e_block(i, cell) {
                actions
                    .entry(format!("e{}", i + 1))
                    .or_default()
                    .push(BlockModel {
                        from: cell.to_string(),
                        to: (cell + &cartan.simple_root(i)).to_string(),
                        matrix: render(m),
                    });
            }
            if let Some(m) = module.f_block(i, cell) {
                actions
                    .entry(format!("f{}", i + 1))
                    .or_default()
                    .push(BlockModel {
                        from: cell.to_string(),
                        to: (cell - &cartan.simple_root(i)).to_string(),
                        matrix: render(m),
                    });
            }
        }
    }
    let model = FileModel {
        cartan: (0..rank)
            .map(|i| (0..rank).map(|j| cartan.cartan_entry(i, j)).collect())
            .collect(),
        symmetrizers: (0..rank).map(|i| cartan.symmetrizer(i)).collect(),
        mode: "weights".to_string(),
        spaces,
        actions,
        depth: None,
    };
    Ok(serde_json::to_string_pretty(&model)?)
}

