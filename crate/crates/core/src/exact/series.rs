use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::is_prime;

/// Integer power series truncated at a fixed degree: exactly `trunc + 1`
/// coefficients, indices `0..=trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn one(trunc: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); trunc + 1];
        coeffs[0] = BigInt::from(1);
        TruncSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Product, truncated to the shorter operand.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let trunc = self.trunc().min(other.trunc());
        let mut out = vec![BigInt::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(trunc + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(trunc + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncSeries { coeffs: out }
    }
}

/// Coefficients of `prod_{n>=1} ((1-t^{pn})/(1-t^n))^{ell_n}` up to degree
/// `trunc`, each factor expanded as `1 + t^n + ... + t^{(p-1)n}`.
///
/// `ell` lists `ell_1, ell_2, ...`; entries beyond the list are zero.
pub fn jennings_series(ell: &[u64], p: u64, trunc: usize) -> Result<TruncSeries> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("p = {p} is not prime")));
    }
    let mut acc = TruncSeries::one(trunc);
    for (idx, &l) in ell.iter().enumerate() {
        let n = idx + 1;
        if l == 0 || n > trunc {
            continue;
        }
        // factor = 1 + t^n + ... + t^{(p-1)n}
        let mut factor = vec![BigInt::zero(); trunc + 1];
        let mut d = 0usize;
        for _ in 0..p {
            if d > trunc {
                break;
            }
            factor[d] = BigInt::from(1);
            d += n;
        }
        let factor = TruncSeries::from_coeffs(factor);
        for _ in 0..l {
            acc = acc.mul(&factor);
        }
    }
    Ok(acc)
}

/// Diagnostic Gelfand-Kirillov estimate: `ln(sum_{k<=n} a_k) / ln(n)`
/// evaluated at the last index `n`. This is a finite-prefix estimate of the
/// defining liminf, not the limit itself, and it is the one place a float
/// is returned.
pub fn series_dims_to_gk(series: &TruncSeries) -> Result<f64> {
    if series.coeffs.len() < 3 {
        return Err(Error::invalid(
            "GK estimate needs at least 3 coefficients".to_string(),
        ));
    }
    if series.coeffs.iter().any(|c| c.sign() == num_bigint::Sign::Minus) {
        return Err(Error::invalid("GK estimate needs nonnegative coefficients"));
    }
    let total: BigInt = series.coeffs.iter().sum();
    let total = total
        .to_f64()
        .ok_or_else(|| Error::invalid("coefficient sum overflows f64 range"))?;
    if total <= 0.0 {
        return Err(Error::invalid("GK estimate needs a positive coefficient sum"));
    }
    let n = series.trunc() as f64;
    Ok(total.ln() / n.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs_u(s: &TruncSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn jennings_examples() {
        assert_eq!(coeffs_u(&jennings_series(&[1], 2, 3).unwrap()), [1, 1, 0, 0]);
        assert_eq!(coeffs_u(&jennings_series(&[1], 3, 4).unwrap()), [1, 1, 1, 0, 0]);
        assert_eq!(
            coeffs_u(&jennings_series(&[1, 1], 2, 4).unwrap()),
            [1, 1, 1, 1, 0]
        );
        assert!(jennings_series(&[1], 4, 3).is_err());
    }

    #[test]
    fn jennings_single_factor_closed_form() {
        // (1 + t^1 + ... + t^{p-1})^{ell_1} by direct polynomial exponentiation
        for p in [2u64, 3, 5] {
            for ell1 in 1..=3u64 {
                for trunc in [5usize, 17, 30] {
                    let got = jennings_series(&[ell1], p, trunc).unwrap();
                    let mut factor = vec![BigInt::zero(); trunc + 1];
                    for d in 0..(p as usize).min(trunc + 1) {
                        factor[d] = BigInt::from(1);
                    }
                    let factor = TruncSeries::from_coeffs(factor);
                    let mut expect = TruncSeries::one(trunc);
                    for _ in 0..ell1 {
                        expect = expect.mul(&factor);
                    }
                    assert_eq!(got, expect, "p={p} ell1={ell1} trunc={trunc}");
                }
            }
        }
    }

    #[test]
    fn gk_estimate_frozen_values() {
        // a_k = 1 for k <= 100: ln(101)/ln(100)
        let ones = TruncSeries::from_coeffs(vec![BigInt::from(1); 101]);
        let got = series_dims_to_gk(&ones).unwrap();
        assert!((got - 1.0021606868913213).abs() < 1e-12);

        // a_k = k for k <= 100: sum = 5050 exactly, ratio ln(5050)/ln(100)
        let lin = TruncSeries::from_coeffs((0..=100).map(BigInt::from).collect());
        let got = series_dims_to_gk(&lin).unwrap();
        assert!((got - 1.8516456890593305).abs() < 1e-12);

        assert!(series_dims_to_gk(&TruncSeries::from_coeffs(vec![
            BigInt::from(1),
            BigInt::from(1)
        ]))
        .is_err());
    }

    #[test]
    fn gk_estimate_char2_growth_sequence() {
        // feed the closed-form char-2 filtration dims, k <= 64
        let coeffs: Vec<BigInt> = (0..=64)
            .map(|d| BigInt::from(crate::formulas::expected_a_char2(d)))
            .collect();
        let total: BigInt = coeffs.iter().sum();
        assert_eq!(total, BigInt::from(3294));
        let got = series_dims_to_gk(&TruncSeries::from_coeffs(coeffs)).unwrap();
        assert!((got - 2.0).abs() < 0.2, "got {got}");
        assert!((got - 1.9476041399543924).abs() < 1e-12);
    }

    #[test]
    fn series_mul_commutative_associative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..12usize);
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                TruncSeries::from_coeffs(
                    (0..=n).map(|_| BigInt::from(rng.gen_range(-9..9i64))).collect(),
                )
            };
            let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }
}
