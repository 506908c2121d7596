//! q-integers, q-factorials and Gaussian binomial coefficients in the
//! symmetric normalization `[n] = (q^n - q^-n)/(q - q^-1)`.

use super::{QRat, ScalarError};

/// `[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)`, with `[-n] = -[n]`.
pub fn q_int(n: i64) -> QRat {
    if n < 0 {
        return -&q_int(-n);
    }
    let mut acc = QRat::zero();
    for j in 0..n {
        acc = &acc + &QRat::q_pow(n - 1 - 2 * j);
    }
    acc
}

/// `[n]! = [1][2]...[n]`.
pub fn q_fact(n: i64) -> Result<QRat, ScalarError> {
    if n < 0 {
        return Err(ScalarError::NegativeFactorial(n));
    }
    let mut acc = QRat::one();
    for i in 1..=n {
        acc = &acc * &q_int(i);
    }
    Ok(acc)
}

/// Gaussian binomial `[n]! / ([k]! [n-k]!)`; requires `0 <= k <= n`.
pub fn q_binom(n: i64, k: i64) -> Result<QRat, ScalarError> {
    if k < 0 || k > n {
        return Err(ScalarError::BinomialRange { n, k });
    }
    let num = q_fact(n)?;
    let den = &q_fact(k)? * &q_fact(n - k)?;
    num.div(&den)
}
