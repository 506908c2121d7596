//! Cartan data, root and weight lattices, and the symmetric bilinear form.
//!
//! Weights are integer coordinate vectors in the basis of fundamental weights.
//! The form satisfies `(alpha_i, alpha_j) = d_i * a_ij`; on general lattice
//! weights it takes values in `(1/D) Z` where `D` is the exponent denominator
//! fixed by the Cartan datum.

use crate::scalars::QRat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Cartan matrix must be square and nonempty")]
    NotSquare,
    #[error("diagonal entry a[{i}][{i}] must be 2, found {found}")]
    BadDiagonal { i: usize, found: i64 },
    #[error("off-diagonal entry a[{i}][{j}] = {found} must be nonpositive")]
    PositiveOffDiagonal { i: usize, j: usize, found: i64 },
    #[error("zero pattern must be symmetric: a[{i}][{j}] = 0 but a[{j}][{i}] != 0")]
    AsymmetricZero { i: usize, j: usize },
    #[error("symmetrizers must be positive, found d[{i}] = {found}")]
    NonPositiveSymmetrizer { i: usize, found: i64 },
    #[error("d_i a_ij != d_j a_ji at (i, j) = ({i}, {j}): symmetrization fails")]
    NotSymmetrizable { i: usize, j: usize },
    #[error("Cartan matrix is singular; fundamental weights are not defined")]
    Singular,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("unknown Cartan preset '{0}'")]
    UnknownPreset(String),
}

/// A lattice element written in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", coords.join(","))
    }
}

/// A symmetrizable Cartan matrix with fixed symmetrizers, the derived bilinear
/// form and the exponent denominator `D` of the form on the weight lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    rank: usize,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    exp_den: u32,
    // D * (omega_i, omega_j), an integer matrix
    omega_inner: Vec<Vec<i64>>,
    // inverse Cartan matrix, exact
    a_inv: Vec<Vec<BigRational>>,
}

impl CartanData {
    /// Validate a Cartan matrix / symmetrizer pair and derive the form data.
    pub fn new(a: Vec<Vec<i64>>, d: Vec<i64>) -> Result<CartanData, LatticeError> {
        let n = a.len();
        if n == 0 || a.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        if d.len() != n {
            return Err(LatticeError::RankMismatch {
                expected: n,
                found: d.len(),
            });
        }
        for (i, &di) in d.iter().enumerate() {
            if di <= 0 {
                return Err(LatticeError::NonPositiveSymmetrizer { i, found: di });
            }
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(LatticeError::BadDiagonal { i, found: a[i][i] });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(LatticeError::PositiveOffDiagonal {
                        i,
                        j,
                        found: a[i][j],
                    });
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(LatticeError::AsymmetricZero { i, j });
                }
                if d[i] * a[i][j] != d[j] * a[j][i] {
                    return Err(LatticeError::NotSymmetrizable { i, j });
                }
            }
        }
        let a_inv = invert(&a).ok_or(LatticeError::Singular)?;
        // (omega_i, omega_j) = d_i * (A^{-1})_ij
        let inner: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &a_inv[i][j] * BigRational::from_integer(BigInt::from(d[i])))
                    .collect()
            })
            .collect();
        let mut den = BigInt::from(1);
        for row in &inner {
            for v in row {
                den = num_integer::lcm(den.clone(), v.denom().clone());
            }
        }
        let exp_den: u32 = den
            .to_string()
            .parse()
            .map_err(|_| LatticeError::Singular)?;
        let omega_inner: Vec<Vec<i64>> = inner
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let scaled = v * BigRational::from_integer(BigInt::from(exp_den));
                        debug_assert!(scaled.is_integer());
                        scaled.to_integer().to_string().parse().unwrap()
                    })
                    .collect()
            })
            .collect();
        Ok(CartanData {
            rank: n,
            a,
            d,
            exp_den,
            omega_inner,
            a_inv,
        })
    }

    /// Named presets accepted by the CLI and module files.
    pub fn preset(name: &str) -> Result<CartanData, LatticeError> {
        match name {
            "A1" => CartanData::new(vec![vec![2]], vec![1]),
            "A2" => CartanData::new(vec![vec![2, -1], vec![-1, 2]], vec![1, 1]),
            "B2" => CartanData::new(vec![vec![2, -1], vec![-2, 2]], vec![2, 1]),
            other => Err(LatticeError::UnknownPreset(other.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// The exponent denominator `D`: `D * (lambda, mu)` is integral on the
    /// whole weight lattice.
    pub fn exp_den(&self) -> u32 {
        self.exp_den
    }

    /// Simple root `alpha_i` in fundamental-weight coordinates (the i-th
    /// column of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.a[k][i]).collect())
    }

    /// `D * (lambda, mu)`, exact and integral.
    pub fn inner_times_den(&self, lambda: &Weight, mu: &Weight) -> i64 {
        assert_eq!(lambda.rank(), self.rank, "rank mismatch");
        assert_eq!(mu.rank(), self.rank, "rank mismatch");
        let mut acc: i64 = 0;
        for i in 0..self.rank {
            if lambda.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += lambda.0[i] * mu.0[j] * self.omega_inner[i][j];
            }
        }
        acc
    }

    /// The bilinear form `(lambda, mu)` as an exact rational number.
    pub fn inner(&self, lambda: &Weight, mu: &Weight) -> BigRational {
        BigRational::new(
            BigInt::from(self.inner_times_den(lambda, mu)),
            BigInt::from(self.exp_den),
        )
    }

    /// `q^{(lambda, mu)}` as an exact scalar.
    pub fn q_inner(&self, lambda: &Weight, mu: &Weight) -> QRat {
        QRat::q_frac_pow(self.inner_times_den(lambda, mu), self.exp_den)
    }

    /// `q_i = q^{(alpha_i, alpha_i)/2} = q^{d_i}` raised to the power `n`.
    pub fn q_i_pow(&self, i: usize, n: i64) -> QRat {
        QRat::q_pow(self.d[i] * n)
    }

    /// Coordinates of a weight in the simple-root basis, when they are
    /// integral: `beta = sum c_i alpha_i`.
    pub fn root_coords(&self, beta: &Weight) -> Option<Vec<i64>> {
        assert_eq!(beta.rank(), self.rank, "rank mismatch");
        // solve A c = beta (column vector of omega-coordinates)
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let mut acc = BigRational::zero();
            for j in 0..self.rank {
                acc += &self.a_inv[i][j] * BigRational::from_integer(BigInt::from(beta.0[j]));
            }
            if !acc.is_integer() {
                return None;
            }
            out.push(acc.to_integer().to_string().parse().ok()?);
        }
        Some(out)
    }

    /// Nonnegative root coordinates of `beta`, when `beta` lies in the
    /// positive root cone.
    pub fn positive_root_coords(&self, beta: &Weight) -> Option<Vec<i64>> {
        let c = self.root_coords(beta)?;
        if c.iter().all(|&x| x >= 0) {
            Some(c)
        } else {
            None
        }
    }

    /// Height of a positive root-lattice element: the sum of its root
    /// coordinates.
    pub fn height(&self, beta: &Weight) -> Option<i64> {
        self.positive_root_coords(beta).map(|c| c.iter().sum())
    }

    /// Weight of a word in letters `alpha_{i}`, as a lattice element.
    pub fn word_weight(&self, word: &[u8]) -> Weight {
        let mut w = Weight::zero(self.rank);
        for &i in word {
            w = &w + &self.simple_root(i as usize);
        }
        w
    }
}

fn invert(a: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::from_integer(BigInt::from(1))
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                let mj = &m[col][j] * &factor;
                m[r][j] -= mj;
                let ij = &inv[col][j] * &factor;
                inv[r][j] -= ij;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_form_and_exponent_denominator() {
        let c = CartanData::preset("A1").unwrap();
        let alpha = c.simple_root(0);
        assert_eq!(alpha, Weight(vec![2]));
        assert_eq!(c.inner(&alpha, &alpha), BigRational::from_integer(2.into()));
        // (omega, omega) = 1/2
        assert_eq!(c.exp_den(), 2);
        let omega = Weight::fundamental(1, 0);
        assert_eq!(
            c.inner(&omega, &omega),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn a2_simple_root_inner() {
        let c = CartanData::preset("A2").unwrap();
        let a1 = c.simple_root(0);
        let a2 = c.simple_root(1);
        assert_eq!(c.inner(&a1, &a2), BigRational::from_integer((-1).into()));
        assert_eq!(c.exp_den(), 3);
    }

    #[test]
    fn pairing_with_zero_weight_vanishes() {
        let c = CartanData::preset("B2").unwrap();
        let lam = Weight(vec![3, -2]);
        let zero = Weight::zero(2);
        assert_eq!(c.inner(&lam, &zero), BigRational::zero());
    }

    #[test]
    fn symmetrizability_violation_is_rejected() {
        let r = CartanData::new(vec![vec![2, -1], vec![0, 2]], vec![1, 1]);
        assert!(matches!(r, Err(LatticeError::AsymmetricZero { .. })));
        let r2 = CartanData::new(vec![vec![2, -1], vec![-2, 2]], vec![1, 1]);
        assert!(matches!(r2, Err(LatticeError::NotSymmetrizable { .. })));
    }

    #[test]
    fn bilinearity_and_symmetry() {
        let c = CartanData::preset("B2").unwrap();
        let xs = [
            Weight(vec![1, 0]),
            Weight(vec![0, 1]),
            Weight(vec![2, -1]),
            Weight(vec![-1, 3]),
        ];
        for l in &xs {
            for m in &xs {
                assert_eq!(c.inner(l, m), c.inner(m, l));
                for n in &xs {
                    let lhs = c.inner(&(l + m), n);
                    let rhs = c.inner(l, n) + c.inner(m, n);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn root_coords_of_roots() {
        let c = CartanData::preset("A2").unwrap();
        let beta = &c.simple_root(0) + &c.simple_root(1);
        assert_eq!(c.positive_root_coords(&beta), Some(vec![1, 1]));
        assert_eq!(c.height(&beta), Some(2));
        assert_eq!(c.root_coords(&Weight::fundamental(2, 0)), None);
        let neg = -&c.simple_root(0);
        assert_eq!(c.positive_root_coords(&neg), None);
    }
}
