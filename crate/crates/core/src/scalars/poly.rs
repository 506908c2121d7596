//! Dense integer-coefficient polynomials in one formal variable.
//!
//! These are the building blocks of [`crate::scalars::QRat`]; exponents are
//! always nonnegative here, Laurent behaviour lives in the fraction layer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial with `BigInt` coefficients, stored densely in ascending order.
///
/// Invariant: the last stored coefficient is nonzero (the zero polynomial is
/// the empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = IntPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// `c * u^k`.
    pub fn monomial(k: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterator over `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// True when the polynomial is a single term `c * u^k`.
    pub fn is_single_term(&self) -> bool {
        self.terms().count() == 1
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - other.coeff(k));
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `u^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Substitute `u -> u^k`, spreading exponents apart.
    pub fn stretch(&self, k: usize) -> IntPoly {
        assert!(k >= 1);
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.terms() {
            coeffs[i * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// Inverse of [`IntPoly::stretch`]; every exponent must be divisible by `k`.
    pub fn compress(&self, k: usize) -> IntPoly {
        assert!(k >= 1);
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let deg = self.coeffs.len() - 1;
        debug_assert!(deg.is_multiple_of(k));
        let mut coeffs = vec![BigInt::zero(); deg / k + 1];
        for (i, c) in self.terms() {
            debug_assert!(i % k == 0);
            coeffs[i / k] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// gcd of exponents carrying nonzero coefficients (0 for constants).
    pub fn exponent_gcd(&self) -> usize {
        let mut g = 0usize;
        for (i, _) in self.terms() {
            g = g.gcd(&i);
            if g == 1 {
                break;
            }
        }
        g
    }

    /// gcd of all coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        g
    }

    /// Exact division; panics when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        let dl = divisor.leading();
        let nd = rem.len() - 1;
        assert!(nd >= dd, "non-exact polynomial division");
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let (c, r) = rem[k + dd].div_rem(&dl);
            assert!(r.is_zero(), "non-exact polynomial division");
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    let delta = &c * d;
                    rem[k + j] -= delta;
                }
            }
            quot[k] = c;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "non-exact polynomial division"
        );
        IntPoly::from_coeffs(quot)
    }

    /// Exponent of the largest power of `u` dividing the polynomial.
    pub fn valuation(&self) -> usize {
        self.terms().next().map(|(i, _)| i).unwrap_or(0)
    }

    /// Polynomial gcd including the coefficient content, with positive leading
    /// coefficient.
    pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
        if a.is_zero() {
            return b.abs_normalized();
        }
        if b.is_zero() {
            return a.abs_normalized();
        }
        let content = a.content().gcd(&b.content());
        // monomial fast path: the shared factor is a power of u
        if a.is_single_term() || b.is_single_term() {
            let v = a.valuation().min(b.valuation());
            return IntPoly::monomial(v, content);
        }
        let pa = a.exact_div(&IntPoly::constant(a.content()));
        let pb = b.exact_div(&IntPoly::constant(b.content()));
        let pg = IntPoly::primitive_gcd(pa, pb);
        pg.mul_scalar(&content)
    }

    fn abs_normalized(&self) -> IntPoly {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.abs_normalized();
        }
        self.exact_div(&IntPoly::constant(c)).abs_normalized()
    }

    // gcd of two primitive polynomials by the primitive pseudo-remainder
    // sequence; integer arithmetic throughout.
    fn primitive_gcd(a: IntPoly, b: IntPoly) -> IntPoly {
        let (mut r0, mut r1) = if a.degree() >= b.degree() {
            (a, b)
        } else {
            (b, a)
        };
        while !r1.is_zero() {
            let r = IntPoly::pseudo_rem(&r0, &r1).primitive_part();
            r0 = std::mem::replace(&mut r1, r);
        }
        r0.abs_normalized()
    }

    // lead(b)^(deg a - deg b + 1) * a  mod  b
    fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let db = b.coeffs.len() - 1;
        let lb = b.leading();
        let mut rem = a.coeffs.clone();
        loop {
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= db {
                break;
            }
            let shift = rem.len() - 1 - db;
            let c = rem.last().unwrap().clone();
            for x in rem.iter_mut() {
                *x *= &lb;
            }
            for (j, d) in b.coeffs.iter().enumerate() {
                let delta = &c * d;
                rem[shift + j] -= delta;
            }
        }
        IntPoly::from_coeffs(rem)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn mul_and_exact_div_round_trip() {
        let a = p(&[1, 2, 1]); // (1+u)^2
        let b = p(&[-1, 0, 3]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), b);
        assert_eq!(prod.exact_div(&b), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let common = p(&[-1, 0, 1]); // u^2 - 1
        let a = common.mul(&p(&[2, 2]));
        let b = common.mul(&p(&[0, 3]));
        let g = IntPoly::gcd(&a, &b);
        assert_eq!(g, common);
    }

    #[test]
    fn gcd_coprime_is_content() {
        let a = p(&[2, 0, 2]);
        let b = p(&[4, 2]);
        assert_eq!(IntPoly::gcd(&a, &b), p(&[2]));
    }

    #[test]
    fn stretch_compress() {
        let a = p(&[1, 0, -2, 0, 1]);
        assert_eq!(a.exponent_gcd(), 2);
        let c = a.compress(2);
        assert_eq!(c, p(&[1, -2, 1]));
        assert_eq!(c.stretch(2), a);
    }
}
