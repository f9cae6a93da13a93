//! κ-wise independent hashing by random polynomials over GF(2^61 − 1).

use rand::Rng;

use crate::error::{Error, Result};

/// The Mersenne prime 2^61 − 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u128) -> u64 {
    // x = hi·2^61 + lo ≡ hi + lo (mod 2^61 − 1)
    let lo = (x as u64) & MERSENNE_61;
    let hi = (x >> 61) as u64;
    let mut s = lo + (hi & MERSENNE_61) + (hi >> 61);
    while s >= MERSENNE_61 {
        s -= MERSENNE_61;
    }
    s
}

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MERSENNE_61 {
        s - MERSENNE_61
    } else {
        s
    }
}

/// `h(x) = (c_0 + c_1 x + … + c_{κ−1} x^{κ−1} mod q) mod range`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KWiseHash {
    coeffs: Vec<u64>,
    range: u64,
}

impl KWiseHash {
    /// Draws κ uniform coefficients in `[0, q)`.
    pub fn new<R: Rng + ?Sized>(kappa: usize, range: u64, rng: &mut R) -> Result<Self> {
        let coeffs = (0..kappa).map(|_| rng.gen_range(0..MERSENNE_61)).collect();
        Self::from_coefficients(coeffs, range)
    }

    /// Coefficients in ascending degree order; each is reduced mod q.
    pub fn from_coefficients(coeffs: Vec<u64>, range: u64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("hash needs kappa >= 1".into()));
        }
        if range == 0 {
            return Err(Error::InvalidParameter("hash range must be >= 1".into()));
        }
        if range > MERSENNE_61 {
            return Err(Error::InvalidParameter(format!(
                "hash range {range} exceeds field size {MERSENNE_61}"
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| c % MERSENNE_61).collect();
        Ok(Self { coeffs, range })
    }

    pub fn kappa(&self) -> usize {
        self.coeffs.len()
    }

    pub fn range(&self) -> u64 {
        self.range
    }

    pub fn modulus(&self) -> u64 {
        MERSENNE_61
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    /// Storage cost of the description.
    pub fn bits(&self) -> usize {
        61 * self.coeffs.len()
    }

    pub fn eval(&self, x: u64) -> u64 {
        if self.range == 1 {
            return 0;
        }
        let x = x % MERSENNE_61;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = add_mod(mul_mod(acc, x), c);
        }
        acc % self.range
    }
}

/// Integer range realizing sampling probability `p` as `Pr[h(x) = 0] = 1/range`.
/// Returns `(range, realized p)`.
pub fn range_for_probability(p: f64) -> Result<(u64, f64)> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "sampling probability {p} outside (0, 1]"
        )));
    }
    let r = (1.0 / p).round().max(1.0);
    if r > MERSENNE_61 as f64 {
        return Err(Error::InvalidParameter(format!("probability {p} too small")));
    }
    let r = r as u64;
    Ok((r, 1.0 / r as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    #[test]
    fn reduction_matches_naive() {
        let mut rng = SeededRng::new(5);
        for _ in 0..10_000 {
            let a = rng.gen_range(0..MERSENNE_61);
            let b = rng.gen_range(0..MERSENNE_61);
            let naive = ((a as u128 * b as u128) % MERSENNE_61 as u128) as u64;
            assert_eq!(mul_mod(a, b), naive);
        }
        assert_eq!(mul_mod(MERSENNE_61 - 1, MERSENNE_61 - 1), 1);
    }

    #[test]
    fn constant_polynomial() {
        let h = KWiseHash::from_coefficients(vec![17], 5).unwrap();
        for x in 0..50 {
            assert_eq!(h.eval(x), 2);
        }
    }

    #[test]
    fn range_one_is_zero() {
        let h = KWiseHash::new(4, 1, &mut SeededRng::new(1)).unwrap();
        assert!((0..100).all(|x| h.eval(x) == 0));
    }

    #[test]
    fn linear_polynomial_by_hand() {
        // 3 + 5x at x = 7 is 38; mod 10 is 8.
        let h = KWiseHash::from_coefficients(vec![3, 5], 10).unwrap();
        assert_eq!(h.eval(7), 8);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(KWiseHash::from_coefficients(vec![], 2).is_err());
        assert!(KWiseHash::from_coefficients(vec![1], 0).is_err());
        assert!(KWiseHash::from_coefficients(vec![1], MERSENNE_61 + 1).is_err());
        assert!(KWiseHash::from_coefficients(vec![1], MERSENNE_61).is_ok());
    }

    #[test]
    fn probability_rounding() {
        assert_eq!(range_for_probability(1.0).unwrap(), (1, 1.0));
        assert_eq!(range_for_probability(0.15).unwrap().0, 7);
        assert_eq!(range_for_probability(0.4).unwrap().0, 3);
        assert!(range_for_probability(0.0).is_err());
    }
}
