//! Enumerative polynomials: the two-variable `H`-polynomial and the
//! `gamma`-polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// A polynomial in `alpha` and `t` with integer coefficients, stored sparsely
/// as `(deg_alpha, deg_t) -> coefficient`.
///
/// `H(X) = sum_k h_k alpha^k t^(n-k)`; the void complex has `H = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HPoly {
    terms: BTreeMap<(u32, u32), i64>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly::default()
    }

    pub fn from_h_vector(h: &[i64]) -> Self {
        let n = h.len().saturating_sub(1) as u32;
        let mut p = HPoly::zero();
        for (k, &c) in h.iter().enumerate() {
            p.add_term(k as u32, n - k as u32, c);
        }
        p
    }

    fn add_term(&mut self, a: u32, t: u32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((a, t)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&(a, t));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: u32, t: u32) -> i64 {
        self.terms.get(&(alpha, t)).copied().unwrap_or(0)
    }

    /// Multiplies by `alpha * t`.
    pub fn times_alpha_t(&self) -> Self {
        HPoly { terms: self.terms.iter().map(|(&(a, t), &c)| ((a + 1, t + 1), c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut p = HPoly::zero();
        for (&(a, t), &c) in &self.terms {
            p.add_term(a, t, c * k);
        }
        p
    }

    /// `(deg_alpha, deg_t, coefficient)` triples in increasing order.
    pub fn terms(&self) -> Vec<(u32, u32, i64)> {
        self.terms.iter().map(|(&(a, t), &c)| (a, t, c)).collect()
    }

    /// The coefficient list `h_0..h_n` if the polynomial is homogeneous of degree `n`.
    pub fn h_vector(&self) -> Option<Vec<i64>> {
        let mut degrees = self.terms.keys().map(|(a, t)| a + t);
        let n = degrees.next()?;
        if degrees.any(|d| d != n) {
            return None;
        }
        Some((0..=n).map(|k| self.coefficient(k, n - k)).collect())
    }
}

impl Add for &HPoly {
    type Output = HPoly;

    fn add(self, rhs: &HPoly) -> HPoly {
        let mut p = self.clone();
        for (&(a, t), &c) in &rhs.terms {
            p.add_term(a, t, c);
        }
        p
    }
}

impl Sub for &HPoly {
    type Output = HPoly;

    fn sub(self, rhs: &HPoly) -> HPoly {
        self + &(-rhs)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;

    fn neg(self) -> HPoly {
        self.scale(-1)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, t), &c) in &self.terms {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = [(a, "a"), (t, "t")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("");
            match (c.abs(), mono.is_empty()) {
                (k, true) => write!(f, "{k}")?,
                (1, false) => write!(f, "{mono}")?,
                (k, false) => write!(f, "{k}{mono}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for HPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms().serialize(serializer)
    }
}

/// `gamma_0 + gamma_1 tau + ...`; trailing zeros are ignored by equality.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct GammaPoly {
    coeffs: Vec<i64>,
}

impl GammaPoly {
    pub fn zero() -> Self {
        GammaPoly::default()
    }

    pub fn new(coeffs: Vec<i64>) -> Self {
        GammaPoly { coeffs }
    }

    /// Rewrites a palindromic `h`-vector as `sum_k gamma_k (alpha t)^k (alpha + t)^(n-2k)`,
    /// peeling off the lowest remaining `alpha` power at each step.
    pub fn from_h_vector(h: &[i64]) -> Result<Self> {
        let n = h.len() - 1;
        if (0..=n).any(|k| h[k] != h[n - k]) {
            return Err(Error::NotDehnSommerville(h.to_vec()));
        }
        let mut rest = h.to_vec();
        let mut gamma = Vec::with_capacity(n / 2 + 1);
        for k in 0..=n / 2 {
            let g = rest[k];
            for i in 0..=n - 2 * k {
                rest[k + i] -= g * binomial(n - 2 * k, i);
            }
            gamma.push(g);
        }
        debug_assert!(rest.iter().all(|&c| c == 0));
        Ok(GammaPoly { coeffs: gamma })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    fn trimmed(&self) -> &[i64] {
        let end = self.coeffs.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
        &self.coeffs[..end]
    }

    pub fn is_zero(&self) -> bool {
        self.trimmed().is_empty()
    }

    /// Multiplies by `tau`.
    pub fn times_tau(&self) -> Self {
        let mut coeffs = vec![0];
        coeffs.extend_from_slice(&self.coeffs);
        GammaPoly { coeffs }
    }

    pub fn scale(&self, k: i64) -> Self {
        GammaPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }
}

impl PartialEq for GammaPoly {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for GammaPoly {}

impl Sub for &GammaPoly {
    type Output = GammaPoly;

    fn sub(self, rhs: &GammaPoly) -> GammaPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        GammaPoly { coeffs: (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect() }
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.trimmed();
        if coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match k {
                0 => c.to_string(),
                1 => format!("{c}τ"),
                _ => format!("{c}τ^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn gamma_peeling() {
        assert_eq!(GammaPoly::from_h_vector(&[1, 2, 1]).unwrap().coeffs(), &[1, 0]);
        assert_eq!(GammaPoly::from_h_vector(&[1, 3, 1]).unwrap().coeffs(), &[1, 1]);
        assert_eq!(GammaPoly::from_h_vector(&[1, 6, 6, 1]).unwrap().coeffs(), &[1, 3]);
        assert_eq!(GammaPoly::from_h_vector(&[1]).unwrap().coeffs(), &[1]);
        assert!(matches!(
            GammaPoly::from_h_vector(&[1, 2, 0]),
            Err(Error::NotDehnSommerville(_))
        ));
    }

    #[test]
    fn gamma_reconstructs_h() {
        // expand sum gamma_k (at)^k (a+t)^(n-2k) and compare
        for h in [vec![1, 4, 4, 1], vec![1, 7, 13, 7, 1], vec![1, 5, 1]] {
            let n = h.len() - 1;
            let g = GammaPoly::from_h_vector(&h).unwrap();
            let mut back = vec![0i64; n + 1];
            for (k, &gk) in g.coeffs().iter().enumerate() {
                for i in 0..=n - 2 * k {
                    back[k + i] += gk * binomial(n - 2 * k, i);
                }
            }
            assert_eq!(back, h);
        }
    }

    #[test]
    fn hpoly_arithmetic() {
        let square = HPoly::from_h_vector(&[1, 2, 1]);
        let pentagon = HPoly::from_h_vector(&[1, 3, 1]);
        let one = HPoly::from_h_vector(&[1]);
        assert_eq!(&square + &one.times_alpha_t(), pentagon);
        assert!((&pentagon - &pentagon).is_zero());
        assert_eq!(pentagon.h_vector(), Some(vec![1, 3, 1]));
        assert_eq!(HPoly::zero().h_vector(), None);
        assert_eq!(square.to_string(), "t^2 + 2at + a^2");
        assert_eq!(pentagon.scale(-1).coefficient(1, 1), -3);
    }

    #[test]
    fn gamma_equality_ignores_trailing_zeros() {
        assert_eq!(GammaPoly::new(vec![1, 0]), GammaPoly::new(vec![1]));
        assert_eq!((&GammaPoly::new(vec![1, 3]) - &GammaPoly::new(vec![1])).to_string(), "3τ");
        assert!(GammaPoly::zero().is_zero());
    }
}
