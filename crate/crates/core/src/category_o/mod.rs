//! Weight-graded modules over the q-Boson and quantized Weyl algebras with a
//! locally nilpotent raising action: validation, the comodule expansion, the
//! extremal projector and the decomposition into simple blocks.
//!
//! A module is stored on a finite window of weight cells. Raising operators
//! beyond the window are genuinely zero; lowering operators beyond the window
//! are a truncation boundary, and relations that would cross it are skipped
//! rather than checked.

mod modfile;
mod scramble;
mod standard;

pub use modfile::{module_from_json, module_to_json, ModuleFileError};
pub use scramble::{direct_sum, random_vector, random_weight_preserving_scramble};
pub use standard::{SeedData, StandardModule};

use crate::algebra::{braided_antipode, braided_delta0, delta, AlgebraError, AlgebraTag, Element, Monomial};
use crate::lattice::{CartanData, Weight};
use crate::linalg::Mat;
use crate::pairing::{PairingError, PairingSession};
use crate::scalars::QRat;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("cell {cell} is declared with dimension 0")]
    EmptyCell { cell: String },
    #[error("action block {gen} from {from}: target cell {to} is not declared")]
    MissingTarget { gen: String, from: String, to: String },
    #[error("action block {gen} from {from} has shape {rows}x{cols}, expected {erows}x{ecols}")]
    ShapeMismatch {
        gen: String,
        from: String,
        rows: usize,
        cols: usize,
        erows: usize,
        ecols: usize,
    },
    #[error("relation e'_{i} f_{j} - q^(-(a_i,a_j)) f_{j} e'_{i} = delta_ij failed on cell {cell}")]
    RelationFailed { i: usize, j: usize, cell: String },
    #[error("a defining relation among the raising operators fails on cell {cell} (weight {beta} kernel element {index})")]
    SerreFailed { cell: String, beta: String, index: usize },
    #[error("lowering action crossed the truncation boundary at cell {cell}")]
    BoundaryHit { cell: String },
    #[error("vector is not in the span of the maximal vectors")]
    NotInKernelSpan,
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// How the torus acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusAction {
    /// The cell label is the weight: `t_mu` acts on cell `lambda` by
    /// `q^{(mu, lambda)}`.
    ByWeight,
    /// Cells are labelled by the negative of the lowering degree; the torus
    /// acts by invertible commuting matrices on a seed space, twisted by
    /// `q^{-(beta, mu)}` on the degree-`beta` cell.
    SeedMatrices { mats: Vec<Mat> },
}

/// A vector in a raw module: finitely many coordinates per cell.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModVec {
    entries: BTreeMap<(Weight, usize), QRat>,
}

impl ModVec {
    pub fn zero() -> ModVec {
        ModVec::default()
    }

    pub fn basis(cell: Weight, index: usize) -> ModVec {
        let mut v = ModVec::zero();
        v.set(cell, index, QRat::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn set(&mut self, cell: Weight, index: usize, value: QRat) {
        if value.is_zero() {
            self.entries.remove(&(cell, index));
        } else {
            self.entries.insert((cell, index), value);
        }
    }

    pub fn add_to(&mut self, cell: Weight, index: usize, value: QRat) {
        if value.is_zero() {
            return;
        }
        let key = (cell, index);
        let cur = self.entries.remove(&key).unwrap_or_else(QRat::zero);
        let sum = &cur + &value;
        if !sum.is_zero() {
            self.entries.insert(key, sum);
        }
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        let mut out = self.clone();
        for ((c, i), v) in &other.entries {
            out.add_to(c.clone(), *i, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &ModVec) -> ModVec {
        self.add(&other.scaled(&-&QRat::one()))
    }

    pub fn scaled(&self, c: &QRat) -> ModVec {
        let mut out = ModVec::zero();
        if c.is_zero() {
            return out;
        }
        for ((cell, i), v) in &self.entries {
            out.set(cell.clone(), *i, v * c);
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Weight, usize), &QRat)> {
        self.entries.iter()
    }

    /// Cells carrying a nonzero coordinate.
    pub fn support(&self) -> Vec<Weight> {
        let mut cells: Vec<Weight> = self.entries.keys().map(|(c, _)| c.clone()).collect();
        cells.dedup();
        cells
    }

    /// Restriction to one cell as a dense coordinate vector.
    pub fn cell_coords(&self, cell: &Weight, dim: usize) -> Vec<QRat> {
        let mut out = vec![QRat::zero(); dim];
        for ((c, i), v) in &self.entries {
            if c == cell {
                out[*i] = v.clone();
            }
        }
        out
    }
}

/// A weight-graded module given by action matrices on a finite window.
#[derive(Clone, Debug)]
pub struct RawModule {
    cartan: Arc<CartanData>,
    cells: BTreeMap<Weight, usize>,
    e_blocks: BTreeMap<(usize, Weight), Mat>,
    f_blocks: BTreeMap<(usize, Weight), Mat>,
    torus: TorusAction,
}

/// Coordinates of a vector against the maximal-vector basis.
pub type KernelCoordinates = Vec<((Weight, usize), QRat)>;

/// The decomposition of a module into simple blocks: multiplicities are the
/// dimensions of the space of maximal vectors per cell, and the two
/// structure maps have been verified to be mutually inverse on a spanning set.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub multiplicities: BTreeMap<Weight, usize>,
    pub kernel_basis: BTreeMap<Weight, Vec<ModVec>>,
    pub torus_on_kernel: Option<Vec<Mat>>,
    pub verified_vectors: usize,
    /// Vectors whose verification would cross the truncation boundary.
    pub skipped_vectors: usize,
}

impl RawModule {
    pub fn new(
        cartan: Arc<CartanData>,
        cells: BTreeMap<Weight, usize>,
        e_blocks: BTreeMap<(usize, Weight), Mat>,
        f_blocks: BTreeMap<(usize, Weight), Mat>,
        torus: TorusAction,
    ) -> RawModule {
        RawModule {
            cartan,
            cells,
            e_blocks,
            f_blocks,
            torus,
        }
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn cells(&self) -> &BTreeMap<Weight, usize> {
        &self.cells
    }

    pub fn torus(&self) -> &TorusAction {
        &self.torus
    }

    pub fn dim(&self, cell: &Weight) -> usize {
        self.cells.get(cell).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.cells.values().sum()
    }

    pub fn e_block(&self, i: usize, from: &Weight) -> Option<&Mat> {
        self.e_blocks.get(&(i, from.clone()))
    }

    pub fn f_block(&self, i: usize, from: &Weight) -> Option<&Mat> {
        self.f_blocks.get(&(i, from.clone()))
    }

    /// All basis vectors, cell by cell.
    pub fn basis_vectors(&self) -> Vec<ModVec> {
        let mut out = Vec::new();
        for (cell, &dim) in &self.cells {
            for i in 0..dim {
                out.push(ModVec::basis(cell.clone(), i));
            }
        }
        out
    }

    /// Raising action; targets beyond the window are zero.
    pub fn act_e(&self, i: usize, v: &ModVec) -> ModVec {
        let alpha = self.cartan.simple_root(i);
        let mut out = ModVec::zero();
        for ((cell, idx), c) in &v.entries {
            let target = cell + &alpha;
            if !self.cells.contains_key(&target) {
                continue;
            }
            if let Some(m) = self.e_block(i, cell) {
                for r in 0..m.nrows() {
                    out.add_to(target.clone(), r, m.at(r, *idx) * c);
                }
            }
        }
        out
    }

    /// Lowering action; an absent block is a truncation boundary (a genuinely
    /// zero lowering map must be declared as an explicit zero matrix).
    pub fn act_f(&self, i: usize, v: &ModVec) -> Result<ModVec, ModuleError> {
        let alpha = self.cartan.simple_root(i);
        let mut out = ModVec::zero();
        for ((cell, idx), c) in &v.entries {
            let Some(m) = self.f_block(i, cell) else {
                return Err(ModuleError::BoundaryHit {
                    cell: cell.to_string(),
                });
            };
            let target = cell - &alpha;
            debug_assert!(self.cells.contains_key(&target));
            for r in 0..m.nrows() {
                out.add_to(target.clone(), r, m.at(r, *idx) * c);
            }
        }
        Ok(out)
    }

    /// Torus action `t_mu`.
    pub fn act_torus(&self, mu: &Weight, v: &ModVec) -> ModVec {
        let mut out = ModVec::zero();
        match &self.torus {
            TorusAction::ByWeight => {
                for ((cell, idx), c) in &v.entries {
                    let scale = self.cartan.q_inner(mu, cell);
                    out.add_to(cell.clone(), *idx, c * &scale);
                }
            }
            TorusAction::SeedMatrices { mats } => {
                // cell label is -beta; the matrix part acts on the seed index
                for ((cell, idx), c) in &v.entries {
                    let beta = -cell;
                    let scale = QRat::q_frac_pow(
                        -self.cartan.inner_times_den(&beta, mu),
                        self.cartan.exp_den(),
                    );
                    // mu in fundamental coordinates selects powers of each t_{omega_k}
                    let dim = self.dim(cell);
                    let seed_dim = mats.first().map(|m| m.nrows()).unwrap_or(1);
                    let blocks = dim / seed_dim.max(1);
                    let (block, seed_idx) = (idx / seed_dim.max(1), idx % seed_dim.max(1));
                    let mut col = vec![QRat::zero(); seed_dim];
                    col[seed_idx] = QRat::one();
                    for (k, &pow) in mu.0.iter().enumerate() {
                        let m = &mats[k];
                        let applied = if pow >= 0 {
                            let mut acc = col.clone();
                            for _ in 0..pow {
                                acc = m.apply(&acc);
                            }
                            acc
                        } else {
                            let inv = m.inverse().expect("torus matrices are invertible");
                            let mut acc = col.clone();
                            for _ in 0..(-pow) {
                                acc = inv.apply(&acc);
                            }
                            acc
                        };
                        col = applied;
                    }
                    debug_assert!(block < blocks.max(1));
                    for (r, val) in col.iter().enumerate() {
                        out.add_to(
                            cell.clone(),
                            block * seed_dim + r,
                            &(c * val) * &scale,
                        );
                    }
                }
            }
        }
        out
    }

    /// Action of a torus-free negative element (sums of `f`-words).
    pub fn act_negative(&self, x: &Element, v: &ModVec) -> Result<ModVec, ModuleError> {
        let mut out = ModVec::zero();
        for (mono, c) in x.terms() {
            debug_assert!(mono.e_word.is_empty() && mono.torus.is_zero());
            let mut cur = v.scaled(c);
            for &i in mono.f_word.iter().rev() {
                cur = self.act_f(i as usize, &cur)?;
            }
            out = out.add(&cur);
        }
        Ok(out)
    }

    /// Action of a torus-free positive element (sums of `e'`-words).
    pub fn act_positive(&self, x: &Element, v: &ModVec) -> ModVec {
        let mut out = ModVec::zero();
        for (mono, c) in x.terms() {
            debug_assert!(mono.f_word.is_empty() && mono.torus.is_zero());
            let mut cur = v.scaled(c);
            for &i in mono.e_word.iter().rev() {
                cur = self.act_e(i as usize, &cur);
            }
            out = out.add(&cur);
        }
        out
    }

    /// Longest raising chain inside the window starting from `cell`.
    pub fn raising_bound(&self, cell: &Weight) -> usize {
        fn go(
            module: &RawModule,
            cell: &Weight,
            memo: &mut BTreeMap<Weight, usize>,
        ) -> usize {
            if let Some(&v) = memo.get(cell) {
                return v;
            }
            let mut best = 0;
            for i in 0..module.cartan.rank() {
                let up = cell + &module.cartan.simple_root(i);
                if module.cells.contains_key(&up) {
                    best = best.max(1 + go(module, &up, memo));
                }
            }
            memo.insert(cell.clone(), best);
            best
        }
        let mut memo = BTreeMap::new();
        go(self, cell, &mut memo)
    }

    /// Structural checks: block shapes, the cross relations on interior
    /// cells, and the vanishing of the raising-operator radical.
    pub fn validate(&self, session: &PairingSession) -> Result<(), ModuleError> {
        for (cell, &dim) in &self.cells {
            if dim == 0 {
                return Err(ModuleError::EmptyCell {
                    cell: cell.to_string(),
                });
            }
        }
        for ((i, from), m) in self.e_blocks.iter() {
            let to = from + &self.cartan.simple_root(*i);
            let Some(&tdim) = self.cells.get(&to) else {
                return Err(ModuleError::MissingTarget {
                    gen: format!("e{}", i + 1),
                    from: from.to_string(),
                    to: to.to_string(),
                });
            };
            let fdim = self.dim(from);
            if m.nrows() != tdim || m.ncols() != fdim {
                return Err(ModuleError::ShapeMismatch {
                    gen: format!("e{}", i + 1),
                    from: from.to_string(),
                    rows: m.nrows(),
                    cols: m.ncols(),
                    erows: tdim,
                    ecols: fdim,
                });
            }
        }
        for ((i, from), m) in self.f_blocks.iter() {
            let to = from - &self.cartan.simple_root(*i);
            let Some(&tdim) = self.cells.get(&to) else {
                return Err(ModuleError::MissingTarget {
                    gen: format!("f{}", i + 1),
                    from: from.to_string(),
                    to: to.to_string(),
                });
            };
            let fdim = self.dim(from);
            if m.nrows() != tdim || m.ncols() != fdim {
                return Err(ModuleError::ShapeMismatch {
                    gen: format!("f{}", i + 1),
                    from: from.to_string(),
                    rows: m.nrows(),
                    cols: m.ncols(),
                    erows: tdim,
                    ecols: fdim,
                });
            }
        }
        self.check_cross_relations()?;
        self.check_radical_vanishes(session)?;
        Ok(())
    }

    // e'_i f_j - q^{-(a_i,a_j)} f_j e'_i = delta_ij on every checkable cell
    fn check_cross_relations(&self) -> Result<(), ModuleError> {
        let n = self.cartan.rank();
        for (cell, &dim) in &self.cells {
            for i in 0..n {
                for j in 0..n {
                    let alpha_i = self.cartan.simple_root(i);
                    let alpha_j = self.cartan.simple_root(j);
                    if self.f_block(j, cell).is_none() {
                        continue; // boundary: f_j undefined here
                    }
                    let up = cell + &alpha_i;
                    if self.e_block(i, cell).is_some() && self.f_block(j, &up).is_none() {
                        continue; // boundary above
                    }
                    let scale = QRat::q_frac_pow(
                        -self.cartan.inner_times_den(&alpha_i, &alpha_j),
                        self.cartan.exp_den(),
                    );
                    for idx in 0..dim {
                        let v = ModVec::basis(cell.clone(), idx);
                        let ef = self.act_e(i, &self.act_f(j, &v)?);
                        let fe = self.act_f(j, &self.act_e(i, &v))?;
                        let mut lhs = ef.sub(&fe.scaled(&scale));
                        if i == j {
                            lhs = lhs.sub(&v);
                        }
                        if !lhs.is_zero() {
                            return Err(ModuleError::RelationFailed {
                                i: i + 1,
                                j: j + 1,
                                cell: cell.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    // every radical element among the raising words must act as zero; this is
    // the operator form of the defining relations of the quotient algebra
    fn check_radical_vanishes(&self, session: &PairingSession) -> Result<(), ModuleError> {
        let n = self.cartan.rank();
        for i in 0..n {
            for j in 0..n {
                if i == j || self.cartan.cartan_entry(i, j) == 0 {
                    continue;
                }
                let degree = 1 - self.cartan.cartan_entry(i, j);
                let beta = &self.cartan.simple_root(i).scaled(degree)
                    + &self.cartan.simple_root(j);
                let block = session.weight_block(&beta)?;
                // left kernel of the Gram matrix: radical combinations of words
                let mut gt = Mat::zeros(block.e_words.len(), block.e_words.len());
                for r in 0..block.e_words.len() {
                    for c in 0..block.e_words.len() {
                        *gt.at_mut(r, c) = block.gram.at(c, r).clone();
                    }
                }
                for (kidx, combo) in gt.kernel_basis().iter().enumerate() {
                    // operator sum combo[k] * word_k
                    for (cell, &dim) in &self.cells {
                        for idx in 0..dim {
                            let v = ModVec::basis(cell.clone(), idx);
                            let mut acc = ModVec::zero();
                            for (k, coeff) in combo.iter().enumerate() {
                                if coeff.is_zero() {
                                    continue;
                                }
                                let word = Element::from_monomial(
                                    AlgebraTag::PosPart,
                                    self.cartan.clone(),
                                    block.e_words[k].clone(),
                                    coeff.clone(),
                                );
                                acc = acc.add(&self.act_positive(&word, &v));
                            }
                            if !acc.is_zero() {
                                return Err(ModuleError::SerreFailed {
                                    cell: cell.to_string(),
                                    beta: beta.to_string(),
                                    index: kidx,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Comodule expansion `rho(v) = sum_beta sum_i f_dual(beta, i) (x)
    /// e_basis(beta, i).v`, collected by negative monomial.
    pub fn rho(
        &self,
        session: &PairingSession,
        v: &ModVec,
    ) -> Result<BTreeMap<Monomial, ModVec>, ModuleError> {
        let bound = v
            .support()
            .iter()
            .map(|c| self.raising_bound(c))
            .max()
            .unwrap_or(0);
        let mut out: BTreeMap<Monomial, ModVec> = BTreeMap::new();
        for beta in positive_combinations(&self.cartan, bound) {
            let block = session.weight_block(&beta)?;
            if block.rank == 0 {
                continue;
            }
            let e_basis = block.e_basis();
            let f_dual = block.f_dual();
            for (i, e_el) in e_basis.iter().enumerate() {
                let moved = self.act_positive(e_el, v);
                if moved.is_zero() {
                    continue;
                }
                for (mono, c) in f_dual[i].terms() {
                    let entry = out.entry(mono.clone()).or_insert_with(ModVec::zero);
                    *entry = entry.add(&moved.scaled(c));
                }
            }
        }
        out.retain(|_, m| !m.is_zero());
        Ok(out)
    }

    /// Maximal vectors: the intersection of the kernels of all raising
    /// operators, cell by cell.
    pub fn maximal_vectors(&self) -> BTreeMap<Weight, Vec<ModVec>> {
        let mut out = BTreeMap::new();
        for (cell, &dim) in &self.cells {
            // stack all e_i matrices (absent blocks with a present target are
            // zero and impose no condition; absent targets likewise)
            let mut rows: Vec<Vec<QRat>> = Vec::new();
            for i in 0..self.cartan.rank() {
                let target = cell + &self.cartan.simple_root(i);
                if !self.cells.contains_key(&target) {
                    continue;
                }
                if let Some(m) = self.e_block(i, cell) {
                    for r in 0..m.nrows() {
                        rows.push((0..dim).map(|c| m.at(r, c).clone()).collect());
                    }
                }
            }
            let kernel = if rows.is_empty() {
                (0..dim)
                    .map(|i| {
                        let mut v = vec![QRat::zero(); dim];
                        v[i] = QRat::one();
                        v
                    })
                    .collect()
            } else {
                Mat::from_rows(rows).kernel_basis()
            };
            let vecs: Vec<ModVec> = kernel
                .into_iter()
                .map(|coords| {
                    let mut v = ModVec::zero();
                    for (i, c) in coords.into_iter().enumerate() {
                        v.set(cell.clone(), i, c);
                    }
                    v
                })
                .collect();
            if !vecs.is_empty() {
                out.insert(cell.clone(), vecs);
            }
        }
        out
    }

    /// The extremal projector `P(v) = sum S(v_(-1)) v_(0)` with the braided
    /// antipode on the negative leg.
    pub fn projector(
        &self,
        session: &PairingSession,
        v: &ModVec,
    ) -> Result<ModVec, ModuleError> {
        let rho = self.rho(session, v)?;
        let mut out = ModVec::zero();
        for (mono, vec) in &rho {
            let leg = Element::from_monomial(
                AlgebraTag::NegPart,
                self.cartan.clone(),
                mono.clone(),
                QRat::one(),
            );
            let s = braided_antipode(&leg)?;
            out = out.add(&self.act_negative(&s, vec)?);
        }
        Ok(out)
    }

    /// Verify `rho(x.v) = sum pi(x_(1) v_(-1)) (x) x_(2).v_(0) =
    /// Delta_0(x) rho(v)` for a negative element `x`.
    pub fn compatibility_check(
        &self,
        session: &PairingSession,
        x: &Element,
        v: &ModVec,
    ) -> Result<bool, ModuleError> {
        let x = x.retagged(AlgebraTag::NegPart)?;
        let rho_v = self.rho(session, v)?;
        // side A: rho(x.v)
        let side_a = self.rho(session, &self.act_negative(&x, v)?)?;
        // side B: project x_(1) v_(-1) to the torus-free part
        let mut side_b: BTreeMap<Monomial, ModVec> = BTreeMap::new();
        let dx = delta(&x.retagged(AlgebraTag::BosonMinus)?)?;
        for (legs, c) in dx.terms() {
            let x1 = Element::from_monomial(
                AlgebraTag::BosonMinus,
                self.cartan.clone(),
                legs[0].clone(),
                QRat::one(),
            );
            let x2 = Element::from_monomial(
                AlgebraTag::NegPart,
                self.cartan.clone(),
                Monomial {
                    f_word: legs[1].f_word.clone(),
                    torus: Weight::zero(self.cartan.rank()),
                    e_word: Vec::new(),
                },
                QRat::one(),
            );
            debug_assert!(legs[1].torus.is_zero());
            for (m_minus1, m0) in &rho_v {
                let m_el = Element::from_monomial(
                    AlgebraTag::BosonMinus,
                    self.cartan.clone(),
                    m_minus1.clone(),
                    QRat::one(),
                );
                let prod = &x1 * &m_el;
                let moved = self.act_negative(&x2, m0)?;
                if moved.is_zero() {
                    continue;
                }
                for (pm, pc) in prod.terms() {
                    // pi: drop the torus letter
                    let projected = Monomial {
                        f_word: pm.f_word.clone(),
                        torus: Weight::zero(self.cartan.rank()),
                        e_word: Vec::new(),
                    };
                    let entry = side_b.entry(projected).or_insert_with(ModVec::zero);
                    *entry = entry.add(&moved.scaled(&(&(c * pc) * &QRat::one())));
                }
            }
        }
        side_b.retain(|_, m| !m.is_zero());
        // side C: braided product of Delta_0(x) against rho(v)
        let mut side_c: BTreeMap<Monomial, ModVec> = BTreeMap::new();
        let d0 = braided_delta0(&x)?;
        for (legs, c) in d0.terms() {
            let deg2 = self.cartan.word_weight(&legs[1].f_word);
            let x2 = Element::from_monomial(
                AlgebraTag::NegPart,
                self.cartan.clone(),
                legs[1].clone(),
                QRat::one(),
            );
            for (m_minus1, m0) in &rho_v {
                let deg_m = self.cartan.word_weight(&m_minus1.f_word);
                let twist = QRat::q_frac_pow(
                    -self.cartan.inner_times_den(&deg2, &deg_m),
                    self.cartan.exp_den(),
                );
                let mut combined = legs[0].clone();
                combined.f_word.extend_from_slice(&m_minus1.f_word);
                let moved = self.act_negative(&x2, m0)?;
                if moved.is_zero() {
                    continue;
                }
                let entry = side_c.entry(combined).or_insert_with(ModVec::zero);
                *entry = entry.add(&moved.scaled(&(&twist * c)));
            }
        }
        side_c.retain(|_, m| !m.is_zero());
        Ok(comodule_eq(session, &side_a, &side_b)? && comodule_eq(session, &side_a, &side_c)?)
    }

    /// Decompose into simple blocks and verify the two structure maps are
    /// mutually inverse on a spanning set.
    pub fn decompose(&self, session: &PairingSession) -> Result<Decomposition, ModuleError> {
        self.validate(session)?;
        let kernel = self.maximal_vectors();
        let multiplicities: BTreeMap<Weight, usize> =
            kernel.iter().map(|(c, v)| (c.clone(), v.len())).collect();
        let mut verified = 0usize;
        let mut skipped = 0usize;

        // forward-backward: m -> sum m_(-1) (x) P(m_(0)) -> multiply back
        for m in self.basis_vectors() {
            let result = (|| -> Result<ModVec, ModuleError> {
                let rho = self.rho(session, &m)?;
                let mut back = ModVec::zero();
                for (mono, vec) in &rho {
                    let p = self.projector(session, vec)?;
                    let leg = Element::from_monomial(
                        AlgebraTag::NegPart,
                        self.cartan.clone(),
                        mono.clone(),
                        QRat::one(),
                    );
                    back = back.add(&self.act_negative(&leg, &p)?);
                }
                Ok(back)
            })();
            match result {
                Ok(back) => {
                    if back != m {
                        return Err(ModuleError::NotInKernelSpan);
                    }
                    verified += 1;
                }
                Err(ModuleError::BoundaryHit { .. }) => skipped += 1,
                Err(e) => return Err(e),
            }
        }

        // backward-forward: w (x) k -> w.k -> expansion must recover w (x) k,
        // compared through the pairing coordinates on the negative leg
        for (cell, basis) in &kernel {
            for k in basis {
                let depth = self.lowering_depth(cell);
                for beta in positive_combinations(&self.cartan, depth) {
                    for w in session.negative_words(&beta)? {
                        let w_el = Element::from_monomial(
                            AlgebraTag::NegPart,
                            self.cartan.clone(),
                            w.clone(),
                            QRat::one(),
                        );
                        let result = (|| -> Result<Vec<Element>, ModuleError> {
                            let m = self.act_negative(&w_el, k)?;
                            let rho = self.rho(session, &m)?;
                            // group by kernel-basis coordinates of P(m_0)
                            let mut per_kernel: Vec<Element> = vec![
                                Element::zero(AlgebraTag::NegPart, self.cartan.clone());
                                basis.len()
                            ];
                            for (mono, vec) in &rho {
                                let p = self.projector(session, vec)?;
                                if p.is_zero() {
                                    continue;
                                }
                                let coords = self.kernel_coordinates(&kernel, &p)?;
                                for ((kc, ki), coeff) in coords {
                                    if &kc != cell {
                                        return Err(ModuleError::NotInKernelSpan);
                                    }
                                    let term = Element::from_monomial(
                                        AlgebraTag::NegPart,
                                        self.cartan.clone(),
                                        mono.clone(),
                                        coeff,
                                    );
                                    per_kernel[ki] = &per_kernel[ki] + &term;
                                }
                            }
                            Ok(per_kernel)
                        })();
                        let per_kernel = match result {
                            Ok(v) => v,
                            Err(ModuleError::BoundaryHit { .. }) => {
                                skipped += 1;
                                continue;
                            }
                            Err(e) => return Err(e),
                        };
                        // expected: w on the k-th slot, zero elsewhere
                        let this_k = basis.iter().position(|b| b == k).unwrap();
                        for (ki, got) in per_kernel.iter().enumerate() {
                            let expected = if ki == this_k {
                                w_el.clone()
                            } else {
                                Element::zero(AlgebraTag::NegPart, self.cartan.clone())
                            };
                            if !negatives_equal_mod_radical(session, got, &expected)? {
                                return Err(ModuleError::NotInKernelSpan);
                            }
                        }
                        verified += 1;
                    }
                }
            }
        }

        let torus_on_kernel = match &self.torus {
            TorusAction::ByWeight => None,
            TorusAction::SeedMatrices { mats } => Some(mats.clone()),
        };
        Ok(Decomposition {
            multiplicities,
            kernel_basis: kernel,
            torus_on_kernel,
            verified_vectors: verified,
            skipped_vectors: skipped,
        })
    }

    // depth of the window below `cell` along defined lowering blocks
    fn lowering_depth(&self, cell: &Weight) -> usize {
        fn go(module: &RawModule, cell: &Weight, memo: &mut BTreeMap<Weight, usize>) -> usize {
            if let Some(&v) = memo.get(cell) {
                return v;
            }
            memo.insert(cell.clone(), 0);
            let mut best = 0;
            for i in 0..module.cartan.rank() {
                if module.f_block(i, cell).is_some() {
                    let down = cell - &module.cartan.simple_root(i);
                    best = best.max(1 + go(module, &down, memo));
                }
            }
            memo.insert(cell.clone(), best);
            best
        }
        let mut memo = BTreeMap::new();
        go(self, cell, &mut memo)
    }

    /// Express a vector in the span of the maximal vectors.
    #[allow(clippy::needless_range_loop)]
    pub fn kernel_coordinates(
        &self,
        kernel: &BTreeMap<Weight, Vec<ModVec>>,
        v: &ModVec,
    ) -> Result<KernelCoordinates, ModuleError> {
        let mut out = Vec::new();
        let mut remainder = v.clone();
        for (cell, basis) in kernel {
            let dim = self.dim(cell);
            let target = remainder.cell_coords(cell, dim);
            if target.iter().all(|c| c.is_zero()) {
                continue;
            }
            // solve basis * x = target
            let mut rows = Vec::with_capacity(dim);
            for r in 0..dim {
                let mut row: Vec<QRat> = basis
                    .iter()
                    .map(|b| b.cell_coords(cell, dim)[r].clone())
                    .collect();
                row.push(target[r].clone());
                rows.push(row);
            }
            let (rref, pivots) = Mat::from_rows(rows).rref();
            if pivots.contains(&basis.len()) {
                return Err(ModuleError::NotInKernelSpan);
            }
            let mut coeffs = vec![QRat::zero(); basis.len()];
            for (r, &pc) in pivots.iter().enumerate() {
                coeffs[pc] = rref.at(r, basis.len()).clone();
            }
            for (i, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    for ((bc, bi), bv) in basis[i].entries() {
                        remainder.add_to(bc.clone(), *bi, -&(bv * &c));
                    }
                    out.push(((cell.clone(), i), c));
                }
            }
        }
        if !remainder.is_zero() {
            return Err(ModuleError::NotInKernelSpan);
        }
        Ok(out)
    }
}

/// Equality of two comodule expansions, comparing negative legs through the
/// pairing to stay correct modulo the radical.
pub fn comodule_eq(
    session: &PairingSession,
    a: &BTreeMap<Monomial, ModVec>,
    b: &BTreeMap<Monomial, ModVec>,
) -> Result<bool, ModuleError> {
    // collect the differences per module basis vector as negative elements
    let cartan = session.cartan().clone();
    let mut diff: BTreeMap<(Weight, usize), Element> = BTreeMap::new();
    let mut accumulate = |map: &BTreeMap<Monomial, ModVec>, sign: i64| {
        for (mono, vec) in map {
            for ((cell, idx), c) in vec.entries() {
                let term = Element::from_monomial(
                    AlgebraTag::NegPart,
                    cartan.clone(),
                    mono.clone(),
                    &QRat::from_int(sign) * c,
                );
                let e = diff
                    .entry((cell.clone(), *idx))
                    .or_insert_with(|| Element::zero(AlgebraTag::NegPart, cartan.clone()));
                *e = &*e + &term;
            }
        }
    };
    accumulate(a, 1);
    accumulate(b, -1);
    for (_, d) in diff {
        if d.is_zero() {
            continue;
        }
        // componentwise by weight: each must be in the radical
        let mut per_weight: BTreeMap<Weight, Element> = BTreeMap::new();
        for (m, c) in d.terms() {
            let w = m.weight(&cartan);
            let e = per_weight
                .entry(w)
                .or_insert_with(|| Element::zero(AlgebraTag::NegPart, cartan.clone()));
            *e = &*e + &Element::from_monomial(AlgebraTag::NegPart, cartan.clone(), m.clone(), c.clone());
        }
        for (_, component) in per_weight {
            if !session.in_radical_negative(&component)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Equality of negative elements modulo the radical.
pub fn negatives_equal_mod_radical(
    session: &PairingSession,
    a: &Element,
    b: &Element,
) -> Result<bool, ModuleError> {
    let d = a - b;
    if d.is_zero() {
        return Ok(true);
    }
    let cartan = session.cartan().clone();
    let mut per_weight: BTreeMap<Weight, Element> = BTreeMap::new();
    for (m, c) in d.terms() {
        let w = m.weight(&cartan);
        let e = per_weight
            .entry(w)
            .or_insert_with(|| Element::zero(AlgebraTag::NegPart, cartan.clone()));
        *e = &*e + &Element::from_monomial(AlgebraTag::NegPart, cartan.clone(), m.clone(), c.clone());
    }
    for (_, component) in per_weight {
        if !session.in_radical_negative(&component)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All nonnegative root combinations of height at most `bound`, including 0.
pub fn positive_combinations(cartan: &CartanData, bound: usize) -> Vec<Weight> {
    let mut out = Vec::new();
    let rank = cartan.rank();
    let mut coords = vec![0i64; rank];
    fn go(
        cartan: &CartanData,
        coords: &mut Vec<i64>,
        pos: usize,
        left: usize,
        out: &mut Vec<Weight>,
    ) {
        if pos == coords.len() {
            let mut w = Weight::zero(coords.len());
            for (i, &c) in coords.iter().enumerate() {
                w = &w + &cartan.simple_root(i).scaled(c);
            }
            out.push(w);
            return;
        }
        for c in 0..=(left as i64) {
            coords[pos] = c;
            go(cartan, coords, pos + 1, left - c as usize, out);
        }
        coords[pos] = 0;
    }
    go(cartan, &mut coords, 0, bound, &mut out);
    out.sort();
    out.dedup();
    out
}
