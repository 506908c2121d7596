//! The generalized Hopf pairing between the positive and negative bricks,
//! evaluated recursively from its defining axioms with memoization; per-weight
//! Gram matrices, radical membership and dual bases.

use crate::algebra::{delta, AlgebraTag, Element, Monomial};
use crate::lattice::{CartanData, Weight};
use crate::linalg::Mat;
use crate::scalars::QRat;
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("left pairing argument must live in the positive brick, found {0:?}")]
    WrongLeftBrick(AlgebraTag),
    #[error("right pairing argument must live in the negative brick, found {0:?}")]
    WrongRightBrick(AlgebraTag),
    #[error("radical test requires a homogeneous element; test componentwise instead")]
    Inhomogeneous,
    #[error("radical test requires a torus-free element")]
    TorusLetters,
    #[error("weight is not a nonnegative root-lattice combination")]
    NotPositiveRootCombination,
    #[error("weight block at height {height} exceeds the word cap {cap}")]
    BlockTooLarge { height: i64, cap: usize },
}

/// Which generator table the pairing uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BrickPair {
    /// `E_i, K` against `F_i, K'` with `phi(E_i, F_j) = delta_ij/(q_i^{-1}-q_i)`.
    Tilde,
    /// `e'_i, t` against `f_i, t'` with `phi(e'_i, f_j) = delta_ij`.
    Boson,
}

impl BrickPair {
    pub fn plus_tag(self) -> AlgebraTag {
        match self {
            BrickPair::Tilde => AlgebraTag::UqPlusTilde,
            BrickPair::Boson => AlgebraTag::BosonPlus,
        }
    }

    pub fn minus_tag(self) -> AlgebraTag {
        match self {
            BrickPair::Tilde => AlgebraTag::UqMinusTilde,
            BrickPair::Boson => AlgebraTag::BosonMinus,
        }
    }

    fn letter_value(self, cartan: &CartanData, i: usize) -> QRat {
        match self {
            BrickPair::Tilde => {
                let d = cartan.symmetrizer(i);
                (&QRat::q_pow(-d) - &QRat::q_pow(d))
                    .inv()
                    .expect("q^{-d} - q^{d} is nonzero")
            }
            BrickPair::Boson => QRat::one(),
        }
    }
}

/// Memoized evaluator of the pairing; one session per thread of work.
pub struct PairingSession {
    cartan: Arc<CartanData>,
    pair: BrickPair,
    memo: RefCell<HashMap<(Monomial, Monomial), QRat>>,
    blocks: RefCell<HashMap<Weight, Arc<WeightBlock>>>,
    word_cap: usize,
}

impl PairingSession {
    pub fn new(cartan: Arc<CartanData>, pair: BrickPair) -> PairingSession {
        PairingSession {
            cartan,
            pair,
            memo: RefCell::new(HashMap::new()),
            blocks: RefCell::new(HashMap::new()),
            word_cap: 20_000,
        }
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn brick_pair(&self) -> BrickPair {
        self.pair
    }

    pub fn plus_tag(&self) -> AlgebraTag {
        self.pair.plus_tag()
    }

    pub fn minus_tag(&self) -> AlgebraTag {
        self.pair.minus_tag()
    }

    fn accepts_left(&self, tag: AlgebraTag) -> bool {
        tag == self.pair.plus_tag() || (self.pair == BrickPair::Boson && tag == AlgebraTag::PosPart)
    }

    fn accepts_right(&self, tag: AlgebraTag) -> bool {
        tag == self.pair.minus_tag()
            || (self.pair == BrickPair::Boson && tag == AlgebraTag::NegPart)
    }

    /// Evaluate the pairing on two elements of the matching bricks.
    pub fn pair(&self, a: &Element, b: &Element) -> Result<QRat, PairingError> {
        if !self.accepts_left(a.tag()) {
            return Err(PairingError::WrongLeftBrick(a.tag()));
        }
        if !self.accepts_right(b.tag()) {
            return Err(PairingError::WrongRightBrick(b.tag()));
        }
        let mut acc = QRat::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let v = self.pair_mono(ma, mb);
                if !v.is_zero() {
                    acc = &acc + &(&(ca * cb) * &v);
                }
            }
        }
        Ok(acc)
    }

    /// Pairing of normal monomials, reducing the right argument letter by
    /// letter and expanding the left argument by the coproduct.
    pub fn pair_mono(&self, x: &Monomial, y: &Monomial) -> QRat {
        debug_assert!(x.f_word.is_empty(), "left argument has F letters");
        debug_assert!(y.e_word.is_empty(), "right argument has E letters");
        // weight orthogonality
        if self.cartan.word_weight(&x.e_word) != self.cartan.word_weight(&y.f_word) {
            return QRat::zero();
        }
        if let Some(v) = self.memo.borrow().get(&(x.clone(), y.clone())) {
            return v.clone();
        }
        let v = self.pair_mono_uncached(x, y);
        self.memo
            .borrow_mut()
            .insert((x.clone(), y.clone()), v.clone());
        v
    }

    fn pair_mono_uncached(&self, x: &Monomial, y: &Monomial) -> QRat {
        if y.f_word.is_empty() {
            // right side is a pure torus element
            if !x.e_word.is_empty() {
                return QRat::zero();
            }
            return self.cartan.q_inner(&-&x.torus, &y.torus);
        }
        // peel the first letter of y:  phi(x, b b') = sum phi(x1, b) phi(x2, b')
        let j = y.f_word[0];
        let rest = Monomial {
            f_word: y.f_word[1..].to_vec(),
            torus: y.torus.clone(),
            e_word: Vec::new(),
        };
        let x_el = Element::from_monomial(
            self.pair.plus_tag(),
            self.cartan.clone(),
            x.clone(),
            QRat::one(),
        );
        let dx = delta(&x_el).expect("plus brick is Hopf");
        let mut acc = QRat::zero();
        for (legs, coeff) in dx.terms() {
            let first = self.pair_with_letter(&legs[0], j);
            if first.is_zero() {
                continue;
            }
            let second = self.pair_mono(&legs[1], &rest);
            if second.is_zero() {
                continue;
            }
            acc = &acc + &(&(coeff * &first) * &second);
        }
        acc
    }

    // phi(x1, F_j) for a single negative letter: nonzero only when x1 carries
    // exactly the letter j (any torus factor pairs to 1 against a letter).
    fn pair_with_letter(&self, x1: &Monomial, j: u8) -> QRat {
        if x1.e_word.len() == 1 && x1.e_word[0] == j {
            self.pair.letter_value(&self.cartan, j as usize)
        } else {
            QRat::zero()
        }
    }

    /// All negative words of weight `beta` (a nonnegative root combination),
    /// in ascending lexicographic order.
    pub fn negative_words(&self, beta: &Weight) -> Result<Vec<Monomial>, PairingError> {
        let coords = self
            .cartan
            .positive_root_coords(beta)
            .ok_or(PairingError::NotPositiveRootCombination)?;
        let height: i64 = coords.iter().sum();
        let mut out = Vec::new();
        let mut remaining: Vec<i64> = coords;
        let mut word: Vec<u8> = Vec::new();
        enumerate_words(&mut remaining, &mut word, &mut out, self.word_cap);
        if out.len() >= self.word_cap {
            return Err(PairingError::BlockTooLarge {
                height,
                cap: self.word_cap,
            });
        }
        let rank = self.cartan.rank();
        Ok(out
            .into_iter()
            .map(|w| Monomial {
                f_word: w,
                torus: Weight::zero(rank),
                e_word: Vec::new(),
            })
            .collect())
    }

    /// Radical membership on the positive side: true iff `x` pairs to zero
    /// with every negative word of the matching weight.
    pub fn in_radical(&self, x: &Element) -> Result<bool, PairingError> {
        if !self.accepts_left(x.tag()) {
            return Err(PairingError::WrongLeftBrick(x.tag()));
        }
        if x.terms().any(|(m, _)| !m.torus.is_zero()) {
            return Err(PairingError::TorusLetters);
        }
        let beta = x.weight().ok_or(PairingError::Inhomogeneous)?;
        if x.is_zero() {
            return Ok(true);
        }
        let words = self.negative_words(&beta)?;
        let minus = self.pair.minus_tag();
        for w in words {
            let wel = Element::from_monomial(minus, self.cartan.clone(), w, QRat::one());
            if !self.pair(x, &wel)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Mirrored radical membership on the negative side.
    pub fn in_radical_negative(&self, y: &Element) -> Result<bool, PairingError> {
        if !self.accepts_right(y.tag()) {
            return Err(PairingError::WrongRightBrick(y.tag()));
        }
        if y.terms().any(|(m, _)| !m.torus.is_zero()) {
            return Err(PairingError::TorusLetters);
        }
        let beta = -&y.weight().ok_or(PairingError::Inhomogeneous)?;
        if y.is_zero() {
            return Ok(true);
        }
        let words = self.positive_words(&beta)?;
        let plus = self.pair.plus_tag();
        for w in words {
            let wel = Element::from_monomial(plus, self.cartan.clone(), w, QRat::one());
            if !self.pair(&wel, y)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All positive words of weight `beta`, ascending lexicographic order.
    pub fn positive_words(&self, beta: &Weight) -> Result<Vec<Monomial>, PairingError> {
        Ok(self
            .negative_words(beta)?
            .into_iter()
            .map(|m| Monomial {
                f_word: Vec::new(),
                torus: m.torus,
                e_word: m.f_word,
            })
            .collect())
    }

    /// The Gram data of the pairing at weight `beta`, cached per session.
    pub fn weight_block(&self, beta: &Weight) -> Result<Arc<WeightBlock>, PairingError> {
        if let Some(b) = self.blocks.borrow().get(beta) {
            return Ok(b.clone());
        }
        let block = Arc::new(self.build_block(beta)?);
        self.blocks
            .borrow_mut()
            .insert(beta.clone(), block.clone());
        Ok(block)
    }

    #[allow(clippy::needless_range_loop)]
    fn build_block(&self, beta: &Weight) -> Result<WeightBlock, PairingError> {
        let e_words = self.positive_words(beta)?;
        // dual-basis convention: the negative side is indexed by reversed words
        let f_words: Vec<Monomial> = e_words
            .iter()
            .map(|m| {
                let mut w = m.e_word.clone();
                w.reverse();
                Monomial {
                    f_word: w,
                    torus: Weight::zero(self.cartan.rank()),
                    e_word: Vec::new(),
                }
            })
            .collect();
        let n = e_words.len();
        let mut gram = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *gram.at_mut(i, j) = self.pair_mono(&e_words[i], &f_words[j]);
            }
        }
        let (pivot_rows, pivot_cols) = gram.greedy_pivot_submatrix();
        let sub = gram.select_rows(&pivot_rows).select_cols(&pivot_cols);
        let rank = pivot_rows.len();
        let dual_inv = if rank > 0 {
            sub.inverse()
                .expect("pivot submatrix is invertible by construction")
        } else {
            Mat::zeros(0, 0)
        };
        Ok(WeightBlock {
            beta: beta.clone(),
            plus_tag: self.pair.plus_tag(),
            minus_tag: self.pair.minus_tag(),
            cartan: self.cartan.clone(),
            e_words,
            f_words,
            gram,
            rank,
            pivot_rows,
            pivot_cols,
            dual_inv,
        })
    }

    /// Evaluations with the memo bypassed, for cache-transparency checks.
    pub fn pair_uncached(&self, a: &Element, b: &Element) -> Result<QRat, PairingError> {
        let fresh = PairingSession::new(self.cartan.clone(), self.pair);
        fresh.pair(a, b)
    }
}

/// Per-weight Gram data: the word bases, the Gram matrix, a greedy pivot
/// sub-basis and the coefficients of the dual basis.
pub struct WeightBlock {
    pub beta: Weight,
    plus_tag: AlgebraTag,
    minus_tag: AlgebraTag,
    cartan: Arc<CartanData>,
    pub e_words: Vec<Monomial>,
    pub f_words: Vec<Monomial>,
    pub gram: Mat,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
    dual_inv: Mat,
}

impl WeightBlock {
    /// Basis of the quotient on the positive side: pivot words as elements.
    pub fn e_basis(&self) -> Vec<Element> {
        self.pivot_rows
            .iter()
            .map(|&r| {
                Element::from_monomial(
                    self.plus_tag,
                    self.cartan.clone(),
                    self.e_words[r].clone(),
                    QRat::one(),
                )
            })
            .collect()
    }

    /// Dual basis on the negative side: `pair(e_basis[i], f_dual[j]) = delta_ij`.
    pub fn f_dual(&self) -> Vec<Element> {
        (0..self.rank)
            .map(|j| {
                let mut acc = Element::zero(self.minus_tag, self.cartan.clone());
                for (l, &c) in self.pivot_cols.iter().enumerate() {
                    let coeff = self.dual_inv.at(l, j).clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let word = Element::from_monomial(
                        self.minus_tag,
                        self.cartan.clone(),
                        self.f_words[c].clone(),
                        QRat::one(),
                    );
                    acc = &acc + &word.scaled(&coeff);
                }
                acc
            })
            .collect()
    }

    /// Coordinates of a positive element of weight `beta` in the pivot basis:
    /// `x = sum coords[i] * e_basis[i]` modulo the radical.
    pub fn coords_positive(
        &self,
        session: &PairingSession,
        x: &Element,
    ) -> Result<Vec<QRat>, PairingError> {
        self.f_dual()
            .iter()
            .map(|fd| session.pair(x, fd))
            .collect()
    }

    /// Coordinates of a negative element of weight `-beta` in the dual basis:
    /// `y = sum coords[j] * f_dual[j]` modulo the radical.
    pub fn coords_negative(
        &self,
        session: &PairingSession,
        y: &Element,
    ) -> Result<Vec<QRat>, PairingError> {
        self.e_basis()
            .iter()
            .map(|eb| session.pair(eb, y))
            .collect()
    }
}

fn enumerate_words(
    remaining: &mut Vec<i64>,
    word: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if remaining.iter().all(|&c| c == 0) {
        out.push(word.clone());
        return;
    }
    for i in 0..remaining.len() {
        if remaining[i] > 0 {
            remaining[i] -= 1;
            word.push(i as u8);
            enumerate_words(remaining, word, out, cap);
            word.pop();
            remaining[i] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{antipode, antipode_inv};
    use crate::scalars::{q_fact, q_int};

    fn session(preset: &str, pair: BrickPair) -> PairingSession {
        PairingSession::new(Arc::new(CartanData::preset(preset).unwrap()), pair)
    }

    fn e(s: &PairingSession, i: usize) -> Element {
        Element::e_letter(s.plus_tag(), s.cartan().clone(), i).unwrap()
    }

    fn f(s: &PairingSession, i: usize) -> Element {
        Element::f_letter(s.minus_tag(), s.cartan().clone(), i).unwrap()
    }

    // Independent oracle: reduce the LEFT argument letter by letter through
    // the opposite pairing axiom, phi(a a', b) = sum phi(a, b_(2)) phi(a', b_(1)).
    fn oracle_pair(s: &PairingSession, a: &Element, b: &Element) -> QRat {
        let mut acc = QRat::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                acc = &acc + &(&(ca * cb) * &oracle_mono(s, ma, mb));
            }
        }
        acc
    }

    fn oracle_mono(s: &PairingSession, x: &Monomial, y: &Monomial) -> QRat {
        let cartan = s.cartan().clone();
        if x.e_word.is_empty() {
            // pure torus against the right side: expand y by counit/torus value
            if !y.f_word.is_empty() {
                return QRat::zero();
            }
            return cartan.q_inner(&-&x.torus, &y.torus);
        }
        // split x = first_letter * rest, with the torus attached to the front
        let (first, rest): (Monomial, Monomial) = {
            let mut first = Monomial::unit(cartan.rank());
            first.torus = x.torus.clone();
            first.e_word = vec![x.e_word[0]];
            let mut rest = Monomial::unit(cartan.rank());
            rest.e_word = x.e_word[1..].to_vec();
            (first, rest)
        };
        let y_el = Element::from_monomial(s.minus_tag(), cartan.clone(), y.clone(), QRat::one());
        let dy = delta(&y_el).unwrap();
        let mut acc = QRat::zero();
        for (legs, coeff) in dy.terms() {
            // phi(first, b_(2)) * phi(rest, b_(1))
            let v1 = oracle_single(s, &first, &legs[1]);
            if v1.is_zero() {
                continue;
            }
            let v2 = oracle_mono(s, &rest, &legs[0]);
            if v2.is_zero() {
                continue;
            }
            acc = &acc + &(&(coeff * &v1) * &v2);
        }
        acc
    }

    // Closed-form value of phi(torus * letter, letter * torus), derived once
    // from the pairing axioms for each brick convention.
    fn oracle_single(s: &PairingSession, x: &Monomial, y: &Monomial) -> QRat {
        let i = x.e_word[0];
        if y.f_word.len() != 1 || y.f_word[0] != i {
            return QRat::zero();
        }
        let cartan = s.cartan();
        let base = s.brick_pair().letter_value(cartan, i as usize);
        let torus_factor = match s.brick_pair() {
            // phi(K_l E_i, F_j K'_m) = delta_ij c_i q^{-(l - a_i, m)}
            BrickPair::Tilde => {
                let shifted = &x.torus - &cartan.simple_root(i as usize);
                QRat::q_frac_pow(-cartan.inner_times_den(&shifted, &y.torus), cartan.exp_den())
            }
            // phi(t_l e'_i, f_j t'_m) = delta_ij q^{-(l, m)}
            BrickPair::Boson => {
                QRat::q_frac_pow(-cartan.inner_times_den(&x.torus, &y.torus), cartan.exp_den())
            }
        };
        &base * &torus_factor
    }

    #[test]
    fn generator_values() {
        let s = session("A1", BrickPair::Tilde);
        let v = s.pair(&e(&s, 0), &f(&s, 0)).unwrap();
        assert_eq!(v, (&QRat::q_pow(-1) - &QRat::q()).inv().unwrap());
        let sb = session("A1", BrickPair::Boson);
        assert!(sb.pair(&e(&sb, 0), &f(&sb, 0)).unwrap().is_one());
        // cross terms vanish
        let t = Element::torus(sb.plus_tag(), sb.cartan().clone(), sb.cartan().simple_root(0))
            .unwrap();
        assert!(sb.pair(&t, &f(&sb, 0)).unwrap().is_zero());
    }

    #[test]
    fn torus_pairing() {
        let s = session("A1", BrickPair::Tilde);
        let alpha = s.cartan().simple_root(0);
        let k = Element::torus(s.plus_tag(), s.cartan().clone(), alpha.clone()).unwrap();
        let kp = Element::torus(s.minus_tag(), s.cartan().clone(), alpha.clone()).unwrap();
        // phi(K_a, K'_a) = q^{-(a,a)} = q^{-2}
        assert_eq!(s.pair(&k, &kp).unwrap(), QRat::q_pow(-2));
    }

    #[test]
    fn squares_match_derived_values() {
        let s = session("A1", BrickPair::Tilde);
        let e2 = e(&s, 0).pow(2);
        let f2 = f(&s, 0).pow(2);
        let c = (&QRat::q_pow(-1) - &QRat::q()).inv().unwrap();
        let expected = &(&QRat::one() + &QRat::q_pow(2)) * &(&c * &c);
        assert_eq!(s.pair(&e2, &f2).unwrap(), expected);
        assert_eq!(oracle_pair(&s, &e2, &f2), expected);
    }

    #[test]
    fn boson_powers_match_closed_form() {
        // pair(e'^n, f^n) = q^{-n(n-1)/2} [n]!
        let s = session("A1", BrickPair::Boson);
        for n in 0..=6i64 {
            let en = e(&s, 0).pow(n as u32);
            let fnv = f(&s, 0).pow(n as u32);
            let v = s.pair(&en, &fnv).unwrap();
            let expected =
                &QRat::q_frac_pow(-n * (n - 1), 2).pow(1).unwrap() * &q_fact(n).unwrap();
            assert_eq!(v, expected, "n = {n}");
            assert_eq!(oracle_pair(&s, &en, &fnv), expected, "oracle n = {n}");
        }
    }

    #[test]
    fn oracle_agrees_on_random_words() {
        for pair in [BrickPair::Tilde, BrickPair::Boson] {
            let s = session("A2", pair);
            let words: Vec<Vec<u8>> = vec![
                vec![0],
                vec![1],
                vec![0, 1],
                vec![1, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![1, 0, 0],
                vec![0, 1, 0, 1],
            ];
            for we in &words {
                for wf in &words {
                    let a = we.iter().fold(
                        Element::one(s.plus_tag(), s.cartan().clone()),
                        |acc, &i| &acc * &e(&s, i as usize),
                    );
                    let b = wf.iter().fold(
                        Element::one(s.minus_tag(), s.cartan().clone()),
                        |acc, &i| &acc * &f(&s, i as usize),
                    );
                    assert_eq!(
                        s.pair(&a, &b).unwrap(),
                        oracle_pair(&s, &a, &b),
                        "{we:?} vs {wf:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn weight_orthogonality() {
        let s = session("A2", BrickPair::Boson);
        let a = &e(&s, 0) * &e(&s, 1);
        let b = &f(&s, 0) * &f(&s, 0);
        assert!(s.pair(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn antipode_compatibility() {
        // phi(S(a), b) = phi(a, S^{-1}(b)) on words up to length 3
        for pair in [BrickPair::Tilde, BrickPair::Boson] {
            let s = session("A1", pair);
            let gens_a: Vec<Element> = vec![
                Element::one(s.plus_tag(), s.cartan().clone()),
                e(&s, 0),
                e(&s, 0).pow(2),
                e(&s, 0).pow(3),
                &Element::torus(
                    s.plus_tag(),
                    s.cartan().clone(),
                    s.cartan().simple_root(0),
                )
                .unwrap()
                    * &e(&s, 0),
            ];
            let gens_b: Vec<Element> = vec![
                Element::one(s.minus_tag(), s.cartan().clone()),
                f(&s, 0),
                f(&s, 0).pow(2),
                f(&s, 0).pow(3),
                &Element::torus(
                    s.minus_tag(),
                    s.cartan().clone(),
                    -&s.cartan().simple_root(0),
                )
                .unwrap()
                    * &f(&s, 0),
            ];
            for a in &gens_a {
                for b in &gens_b {
                    let lhs = s.pair(&antipode(a).unwrap(), b).unwrap();
                    let rhs = s.pair(a, &antipode_inv(b).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn serre_element_is_in_radical() {
        // E1^2 E2 - [2] E1 E2 E1 + E2 E1^2 pairs to zero with every word
        let s = session("A2", BrickPair::Tilde);
        let e1 = e(&s, 0);
        let e2 = e(&s, 1);
        let serre = &(&(&e1.pow(2) * &e2) - &(&(&e1 * &e2) * &e1).scaled(&q_int(2)))
            + &(&e2 * &e1.pow(2));
        assert!(s.in_radical(&serre).unwrap());
        // E alone is not in the radical, 0 is
        assert!(!s.in_radical(&e1).unwrap());
        assert!(s
            .in_radical(&Element::zero(s.plus_tag(), s.cartan().clone()))
            .unwrap());
        // inhomogeneous input is an error
        assert_eq!(
            s.in_radical(&(&e1 + &e1.pow(2))),
            Err(PairingError::Inhomogeneous)
        );
    }

    #[test]
    fn radical_is_an_ideal() {
        let s = session("A2", BrickPair::Tilde);
        let e1 = e(&s, 0);
        let e2 = e(&s, 1);
        let serre = &(&(&e1.pow(2) * &e2) - &(&(&e1 * &e2) * &e1).scaled(&q_int(2)))
            + &(&e2 * &e1.pow(2));
        for g in [&e1, &e2] {
            assert!(s.in_radical(&(g * &serre)).unwrap());
            assert!(s.in_radical(&(&serre * g)).unwrap());
        }
    }

    #[test]
    fn block_sl2_rank_one() {
        let s = session("A1", BrickPair::Boson);
        for n in 1..=4i64 {
            let beta = s.cartan().simple_root(0).scaled(n);
            let block = s.weight_block(&beta).unwrap();
            assert_eq!(block.e_words.len(), 1);
            assert_eq!(block.rank, 1);
            let duals = block.f_dual();
            // dual element q^{n(n-1)/2} f^n/[n]!
            let fn_el = f(&s, 0).pow(n as u32);
            let c = QRat::q_frac_pow(n * (n - 1), 2)
                .div(&q_fact(n).unwrap())
                .unwrap();
            assert_eq!(duals[0], fn_el.scaled(&c));
        }
    }

    #[test]
    fn block_a2_mixed_weight() {
        let s = session("A2", BrickPair::Boson);
        let beta = &s.cartan().simple_root(0) + &s.cartan().simple_root(1);
        let block = s.weight_block(&beta).unwrap();
        assert_eq!(block.e_words.len(), 2);
        assert_eq!(block.rank, 2);
        // duality check
        let eb = block.e_basis();
        let fd = block.f_dual();
        for (i, a) in eb.iter().enumerate() {
            for (j, b) in fd.iter().enumerate() {
                let v = s.pair(a, b).unwrap();
                assert_eq!(v.is_one(), i == j);
                if i != j {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn block_a2_serre_weight_has_rank_two() {
        let s = session("A2", BrickPair::Tilde);
        let beta = &s.cartan().simple_root(0).scaled(2) + &s.cartan().simple_root(1);
        let block = s.weight_block(&beta).unwrap();
        assert_eq!(block.e_words.len(), 3);
        assert_eq!(block.rank, 2);
    }

    #[test]
    fn cache_transparency() {
        let s = session("A2", BrickPair::Boson);
        let a = &(&e(&s, 0) * &e(&s, 1)) * &e(&s, 0);
        let b = &(&f(&s, 0) * &f(&s, 0)) * &f(&s, 1);
        let warm = s.pair(&a, &b).unwrap();
        // warm the cache further and compare against a fresh session
        let _ = s.pair(&a, &b).unwrap();
        assert_eq!(warm, s.pair_uncached(&a, &b).unwrap());
    }
}
