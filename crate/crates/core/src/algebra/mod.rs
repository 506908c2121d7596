//! Presented algebras over a Cartan datum: the positive/negative Hopf bricks,
//! their quotients, the q-Boson algebra and the quantized Weyl algebra, all
//! with normal-ordered monomials `(F-word | torus | E-word)`.
//!
//! E- and F-words are kept as free words; no Serre-type rewriting is done
//! syntactically. Equality in the quotients is decided semantically through
//! the pairing radical.

mod element;
mod hopf;
mod tensor;

pub use element::{Element, Monomial};
pub(crate) use element::format_monomial;
pub use hopf::{
    antipode, antipode_inv, braided_antipode, braided_delta0, counit, delta, delta_iter,
};
pub use tensor::TensorElement;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("algebra tag mismatch: {left:?} vs {right:?}")]
    TagMismatch { left: AlgebraTag, right: AlgebraTag },
    #[error("{letter} letters are not allowed in {tag:?}")]
    LetterNotAllowed { letter: &'static str, tag: AlgebraTag },
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{op} requires a Hopf brick, found {tag:?}")]
    NotHopf { op: &'static str, tag: AlgebraTag },
    #[error("{op} requires the braided negative part, found {tag:?}")]
    NotBraidedNegative { op: &'static str, tag: AlgebraTag },
    #[error("Cartan data mismatch between operands")]
    CartanMismatch,
}

/// Which presentation an element lives in. The tag fixes the allowed letters,
/// the straightening rules and the printed generator names.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AlgebraTag {
    /// Positive tilde brick: `E_i` and grouplike `K_lambda`.
    UqPlusTilde,
    /// Negative tilde brick: `F_i` and grouplike `K'_lambda`.
    UqMinusTilde,
    /// Positive q-Boson brick: `e'_i` and grouplike `t_lambda`, with
    /// `Delta(e') = e' (x) 1 + t (x) e'`.
    BosonPlus,
    /// Negative q-Boson brick: `f_i` and grouplike `t'_lambda`.
    BosonMinus,
    /// Quotient of the quantum double with both tori identified:
    /// `F-word | K | E-word` with the commutator straightening rule.
    Uq,
    /// q-Boson algebra: `f-word | t | e'-word` with
    /// `e'_i f_j = q^{-(a_i,a_j)} f_j e'_i + delta_ij`.
    Bq,
    /// Quantized Weyl algebra: the torus-free part of `Bq`.
    Wq,
    /// `f`-letters only (negative part of the Weyl algebra).
    NegPart,
    /// `e'`-letters only (positive part of the Weyl algebra).
    PosPart,
}

/// How an adjacent `E_i F_j` pair straightens.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum CrossRule {
    /// `E_i F_j = F_j E_i + delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1})`.
    Commutator,
    /// `e'_i f_j = q^{-(a_i,a_j)} f_j e'_i + delta_ij`.
    Boson,
    /// The tag admits no mixed words.
    None,
}

impl AlgebraTag {
    pub fn allows_e(self) -> bool {
        !matches!(
            self,
            AlgebraTag::UqMinusTilde | AlgebraTag::BosonMinus | AlgebraTag::NegPart
        )
    }

    pub fn allows_f(self) -> bool {
        !matches!(
            self,
            AlgebraTag::UqPlusTilde | AlgebraTag::BosonPlus | AlgebraTag::PosPart
        )
    }

    pub fn allows_torus(self) -> bool {
        !matches!(
            self,
            AlgebraTag::Wq | AlgebraTag::NegPart | AlgebraTag::PosPart
        )
    }

    /// The four Hopf bricks carry coproduct, counit and antipode.
    pub fn is_hopf_brick(self) -> bool {
        matches!(
            self,
            AlgebraTag::UqPlusTilde
                | AlgebraTag::UqMinusTilde
                | AlgebraTag::BosonPlus
                | AlgebraTag::BosonMinus
        )
    }

    pub(crate) fn cross_rule(self) -> CrossRule {
        match self {
            AlgebraTag::Uq => CrossRule::Commutator,
            AlgebraTag::Bq | AlgebraTag::Wq => CrossRule::Boson,
            _ => CrossRule::None,
        }
    }

    pub fn e_name(self) -> &'static str {
        match self {
            AlgebraTag::UqPlusTilde | AlgebraTag::Uq => "E",
            _ => "e",
        }
    }

    pub fn f_name(self) -> &'static str {
        match self {
            AlgebraTag::UqMinusTilde | AlgebraTag::Uq => "F",
            _ => "f",
        }
    }

    pub fn torus_name(self) -> &'static str {
        match self {
            AlgebraTag::UqPlusTilde | AlgebraTag::Uq => "K",
            AlgebraTag::UqMinusTilde => "K'",
            AlgebraTag::BosonPlus | AlgebraTag::Bq => "t",
            AlgebraTag::BosonMinus => "t'",
            AlgebraTag::Wq | AlgebraTag::NegPart | AlgebraTag::PosPart => "t",
        }
    }

    /// CLI spelling of the tag.
    pub fn parse_name(name: &str) -> Option<AlgebraTag> {
        Some(match name {
            "uq+" => AlgebraTag::UqPlusTilde,
            "uq-" => AlgebraTag::UqMinusTilde,
            "uq" => AlgebraTag::Uq,
            "bq" => AlgebraTag::Bq,
            "wq" => AlgebraTag::Wq,
            "bq--" => AlgebraTag::NegPart,
            "bq++" => AlgebraTag::PosPart,
            _ => return None,
        })
    }
}
