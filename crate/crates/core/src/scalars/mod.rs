//! Exact arithmetic in the field of rational functions of a formal root of `q`,
//! plus the q-integers, q-factorials and Gaussian binomials built on top of it.

mod poly;
mod qcomb;
mod text;

pub use poly::IntPoly;
pub use qcomb::{q_binom, q_fact, q_int};
pub use text::{parse_scalar, ScalarParseError};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("q-binomial arguments out of range: n = {n}, k = {k}")]
    BinomialRange { n: i64, k: i64 },
    #[error("factorial of negative integer: {0}")]
    NegativeFactorial(i64),
}

/// A reduced fraction of integer polynomials in the formal variable
/// `u = q^(1/d)`.
///
/// Canonical form: `gcd(num, den) = 1`, the denominator has positive leading
/// coefficient, zero is `0/1`, and `d` is minimal (any common factor of `d`
/// and all stored exponents is divided out). With that, structural equality is
/// mathematical equality and `Hash` is consistent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRat {
    num: IntPoly,
    den: IntPoly,
    d: u32,
}

impl QRat {
    fn build(num: IntPoly, den: IntPoly, d: u32) -> QRat {
        assert!(!den.is_zero(), "zero denominator");
        let mut q = QRat { num, den, d };
        q.reduce();
        q
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.num = IntPoly::zero();
            self.den = IntPoly::one();
            self.d = 1;
            return;
        }
        let g = IntPoly::gcd(&self.num, &self.den);
        self.num = self.num.exact_div(&g);
        self.den = self.den.exact_div(&g);
        if self.den.leading().is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
        // minimize the exponent denominator
        let eg = self.num.exponent_gcd().gcd(&self.den.exponent_gcd());
        let k = (self.d as usize).gcd(&eg);
        if k > 1 {
            self.num = self.num.compress(k);
            self.den = self.den.compress(k);
            self.d /= k as u32;
        }
    }

    pub fn zero() -> QRat {
        QRat {
            num: IntPoly::zero(),
            den: IntPoly::one(),
            d: 1,
        }
    }

    pub fn one() -> QRat {
        QRat {
            num: IntPoly::one(),
            den: IntPoly::one(),
            d: 1,
        }
    }

    pub fn from_int(n: i64) -> QRat {
        QRat::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> QRat {
        QRat {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
            d: 1,
        }
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> Result<QRat, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QRat::build(
            IntPoly::constant(num),
            IntPoly::constant(den),
            1,
        ))
    }

    /// `q^n` for integer `n`.
    pub fn q_pow(n: i64) -> QRat {
        QRat::q_frac_pow(n, 1)
    }

    /// `q` itself.
    pub fn q() -> QRat {
        QRat::q_pow(1)
    }

    /// `q^(num/den)`: a fractional power of `q` living in `u = q^(1/den)`.
    pub fn q_frac_pow(num: i64, den: u32) -> QRat {
        assert!(den >= 1);
        if num >= 0 {
            QRat::build(
                IntPoly::monomial(num as usize, BigInt::one()),
                IntPoly::one(),
                den,
            )
        } else {
            QRat::build(
                IntPoly::one(),
                IntPoly::monomial((-num) as usize, BigInt::one()),
                den,
            )
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == IntPoly::one() && self.den == IntPoly::one()
    }

    /// Sign of the leading numerator coefficient; used for display only.
    pub fn is_negative(&self) -> bool {
        self.num.leading().is_negative()
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    /// Exponent denominator: the value lives in integer powers of `q^(1/d)`.
    pub fn exponent_den(&self) -> u32 {
        self.d
    }

    // Bring two values to a common exponent denominator.
    fn unify(&self, other: &QRat) -> (IntPoly, IntPoly, IntPoly, IntPoly, u32) {
        let l = (self.d as usize).lcm(&(other.d as usize)) as u32;
        let ka = (l / self.d) as usize;
        let kb = (l / other.d) as usize;
        (
            self.num.stretch(ka),
            self.den.stretch(ka),
            other.num.stretch(kb),
            other.den.stretch(kb),
            l,
        )
    }

    pub fn inv(&self) -> Result<QRat, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QRat::build(self.den.clone(), self.num.clone(), self.d))
    }

    pub fn div(&self, other: &QRat) -> Result<QRat, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<QRat, ScalarError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = QRat::one();
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Substitute a rational value for `u = q^(1/d)`. `None` when the
    /// denominator vanishes there.
    pub fn eval_at_root(&self, u: &BigRational) -> Option<BigRational> {
        let den = self.den.eval(u);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(u) / den)
    }

    /// Substitute a rational value for `q`; defined when the value only
    /// involves integer powers of `q` (i.e. `d == 1`).
    pub fn eval_at_q(&self, q: &BigRational) -> Option<BigRational> {
        if self.d != 1 {
            return None;
        }
        self.eval_at_root(q)
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, other: &QRat) -> QRat {
        let (an, ad, bn, bd, d) = self.unify(other);
        QRat::build(an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd), d)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, other: &QRat) -> QRat {
        let (an, ad, bn, bd, d) = self.unify(other);
        QRat::build(an.mul(&bd).sub(&bn.mul(&ad)), ad.mul(&bd), d)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, other: &QRat) -> QRat {
        if self.is_zero() || other.is_zero() {
            return QRat::zero();
        }
        let (an, ad, bn, bd, d) = self.unify(other);
        QRat::build(an.mul(&bn), ad.mul(&bd), d)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
            d: self.d,
        }
    }
}

impl Add for QRat {
    type Output = QRat;
    fn add(self, other: QRat) -> QRat {
        &self + &other
    }
}

impl Sub for QRat {
    type Output = QRat;
    fn sub(self, other: QRat) -> QRat {
        &self - &other
    }
}

impl Mul for QRat {
    type Output = QRat;
    fn mul(self, other: QRat) -> QRat {
        &self * &other
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::render(self))
    }
}
