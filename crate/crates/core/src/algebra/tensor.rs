//! Finite sums of pure tensors of normal monomials, used for Sweedler
//! calculus. The container is passive: which multiplication applies to a pair
//! of legs is decided by the operation, not the type.

use super::element::format_monomial;
use super::{AlgebraError, AlgebraTag, Element, Monomial};
use crate::lattice::CartanData;
use crate::scalars::QRat;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A linear combination of `k`-fold pure tensors; leg `i` carries tag
/// `tags[i]` and every stored monomial is normal-ordered for its leg.
#[derive(Clone, Debug)]
pub struct TensorElement {
    tags: Vec<AlgebraTag>,
    cartan: Arc<CartanData>,
    terms: BTreeMap<Vec<Monomial>, QRat>,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &TensorElement) -> bool {
        self.tags == other.tags && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(tags: Vec<AlgebraTag>, cartan: Arc<CartanData>) -> TensorElement {
        TensorElement {
            tags,
            cartan,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(tags: Vec<AlgebraTag>, cartan: Arc<CartanData>) -> TensorElement {
        let rank = cartan.rank();
        let key = vec![Monomial::unit(rank); tags.len()];
        let mut t = TensorElement::zero(tags, cartan);
        t.add_term(key, QRat::one());
        t
    }

    /// Pure tensor of elements, expanded multilinearly.
    pub fn tensor(elements: &[&Element]) -> TensorElement {
        assert!(!elements.is_empty());
        let cartan = elements[0].cartan().clone();
        let tags: Vec<AlgebraTag> = elements.iter().map(|e| e.tag()).collect();
        let mut out = TensorElement::unit(tags, cartan);
        for (i, e) in elements.iter().enumerate() {
            out = out.map_leg(i, |_mono| (*e).clone());
            // map_leg substitutes the element for whatever was there; start
            // from the unit leg so the substitution is exact
        }
        out
    }

    pub fn tags(&self) -> &[AlgebraTag] {
        &self.tags
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cartan
    }

    pub fn leg_count(&self) -> usize {
        self.tags.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &QRat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, coeff: QRat) {
        debug_assert_eq!(key.len(), self.tags.len());
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.tags, other.tags, "tensor tag mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.tags, other.tags, "tensor tag mismatch");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scaled(&self, c: &QRat) -> TensorElement {
        let mut out = TensorElement::zero(self.tags.clone(), self.cartan.clone());
        if c.is_zero() {
            return out;
        }
        for (k, a) in &self.terms {
            out.add_term(k.clone(), a * c);
        }
        out
    }

    /// Componentwise product: ordinary multiplication leg by leg.
    #[allow(clippy::needless_range_loop)]
    pub fn pointwise_mul(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.tags, other.tags, "tensor tag mismatch");
        let mut out = TensorElement::zero(self.tags.clone(), self.cartan.clone());
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                // multiply matching legs as elements and re-expand
                let mut partial = TensorElement::zero(self.tags.clone(), self.cartan.clone());
                partial.add_term(k1.clone(), c1 * c2);
                for leg in 0..self.tags.len() {
                    let rhs =
                        Element::from_monomial(self.tags[leg], self.cartan.clone(), k2[leg].clone(), QRat::one());
                    partial = partial.map_leg(leg, |m| {
                        let lhs = Element::from_monomial(
                            self.tags[leg],
                            self.cartan.clone(),
                            m.clone(),
                            QRat::one(),
                        );
                        &lhs * &rhs
                    });
                }
                out = out.add(&partial);
            }
        }
        out
    }

    /// Replace leg `i` by the image of a linear map given on monomials,
    /// re-expanding sums. The new leg tag is taken from the map's output.
    pub fn map_leg(&self, i: usize, f: impl Fn(&Monomial) -> Element) -> TensorElement {
        let mut out: Option<TensorElement> = None;
        for (key, coeff) in &self.terms {
            let image = f(&key[i]);
            let out_ref = out.get_or_insert_with(|| {
                let mut tags = self.tags.clone();
                tags[i] = image.tag();
                TensorElement::zero(tags, self.cartan.clone())
            });
            assert_eq!(out_ref.tags[i], image.tag(), "map_leg changed tag mid-sum");
            for (m, c) in image.terms() {
                let mut k = key.clone();
                k[i] = m.clone();
                out_ref.add_term(k, coeff * c);
            }
        }
        out.unwrap_or_else(|| TensorElement::zero(self.tags.clone(), self.cartan.clone()))
    }

    /// Expand leg `i` into two legs via a comultiplication-like map.
    pub fn expand_leg(
        &self,
        i: usize,
        f: impl Fn(&Monomial) -> Result<TensorElement, AlgebraError>,
    ) -> Result<TensorElement, AlgebraError> {
        let mut out: Option<TensorElement> = None;
        for (key, coeff) in &self.terms {
            let image = f(&key[i])?;
            debug_assert_eq!(image.leg_count(), 2);
            let out_ref = out.get_or_insert_with(|| {
                let mut tags = self.tags.clone();
                tags.splice(i..=i, image.tags.iter().cloned());
                TensorElement::zero(tags, self.cartan.clone())
            });
            for (mk, mc) in &image.terms {
                let mut k = Vec::with_capacity(key.len() + 1);
                k.extend_from_slice(&key[..i]);
                k.extend(mk.iter().cloned());
                k.extend_from_slice(&key[i + 1..]);
                out_ref.add_term(k, coeff * mc);
            }
        }
        Ok(out.unwrap_or_else(|| {
            let mut tags = self.tags.clone();
            let t = tags[i];
            tags.splice(i..=i, [t, t]);
            TensorElement::zero(tags, self.cartan.clone())
        }))
    }

    /// Multiply legs `i` and `i+1` (same tag) into a single leg.
    pub fn flatten_pair(&self, i: usize) -> TensorElement {
        assert_eq!(self.tags[i], self.tags[i + 1], "flatten across tags");
        let mut tags = self.tags.clone();
        tags.remove(i + 1);
        let mut out = TensorElement::zero(tags, self.cartan.clone());
        for (key, coeff) in &self.terms {
            let a = Element::from_monomial(
                self.tags[i],
                self.cartan.clone(),
                key[i].clone(),
                QRat::one(),
            );
            let b = Element::from_monomial(
                self.tags[i],
                self.cartan.clone(),
                key[i + 1].clone(),
                QRat::one(),
            );
            let prod = &a * &b;
            for (m, c) in prod.terms() {
                let mut k = Vec::with_capacity(key.len() - 1);
                k.extend_from_slice(&key[..i]);
                k.push(m.clone());
                k.extend_from_slice(&key[i + 2..]);
                out.add_term(k, coeff * c);
            }
        }
        out
    }

    /// Extract leg `i` as an element when all other legs are units.
    pub fn as_single_element(&self, i: usize) -> Option<Element> {
        let mut out = Element::zero(self.tags[i], self.cartan.clone());
        for (key, coeff) in &self.terms {
            for (j, m) in key.iter().enumerate() {
                if j != i && !m.is_unit() {
                    return None;
                }
            }
            out.add_term(key[i].clone(), coeff.clone());
        }
        Some(out)
    }

    /// Product of two 2-leg tensors over the negative part, twisting past the
    /// inner legs by the weight form: `(a (x) b)(c (x) d) =
    /// q^{-(deg b, deg c)} ac (x) bd` on homogeneous legs.
    pub fn braided_neg_mul(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.leg_count(), 2);
        assert_eq!(other.leg_count(), 2);
        assert!(self.tags.iter().all(|t| *t == AlgebraTag::NegPart));
        assert!(other.tags.iter().all(|t| *t == AlgebraTag::NegPart));
        let cartan = &self.cartan;
        let mut out = TensorElement::zero(self.tags.clone(), cartan.clone());
        for (k1, c1) in &self.terms {
            let deg_b = cartan.word_weight(&k1[1].f_word);
            for (k2, c2) in &other.terms {
                let deg_c = cartan.word_weight(&k2[0].f_word);
                let twist =
                    QRat::q_frac_pow(-cartan.inner_times_den(&deg_b, &deg_c), cartan.exp_den());
                let mut left = k1[0].clone();
                left.f_word.extend_from_slice(&k2[0].f_word);
                let mut right = k1[1].clone();
                right.f_word.extend_from_slice(&k2[1].f_word);
                out.add_term(vec![left, right], &(c1 * c2) * &twist);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            let neg = coeff.is_negative();
            let mag = if neg { -coeff } else { coeff.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let legs: Vec<String> = key
                .iter()
                .zip(self.tags.iter())
                .map(|(m, t)| format_monomial(*t, m))
                .collect();
            let body = legs.join(" (x) ");
            if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                let s = mag.to_string();
                if s.contains(" + ") || s.contains(" - ") {
                    write!(f, "({s}) * {body}")?;
                } else {
                    write!(f, "{s} * {body}")?;
                }
            }
        }
        Ok(())
    }
}
