//! Polynomials over GF(2) and the circulant matrices they seed.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// A polynomial over GF(2), stored as the sorted set of exponents whose
/// coefficient is one. The zero polynomial is the empty set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    exponents: Vec<usize>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { exponents: vec![0] }
    }

    /// `x^e`.
    pub fn monomial(e: usize) -> Self {
        Self { exponents: vec![e] }
    }

    /// Builds the polynomial with a one coefficient at every listed exponent.
    /// The list is read as a set, so repeats are ignored.
    pub fn from_exponents(exponents: impl IntoIterator<Item = usize>) -> Self {
        let mut exponents: Vec<usize> = exponents.into_iter().collect();
        exponents.sort_unstable();
        exponents.dedup();
        Self { exponents }
    }

    fn from_coeffs(coeffs: &[bool]) -> Self {
        Self {
            exponents: coeffs
                .iter()
                .enumerate()
                .filter_map(|(e, &c)| c.then_some(e))
                .collect(),
        }
    }

    fn coeffs(&self) -> Vec<bool> {
        let mut c = vec![false; self.degree().map_or(0, |d| d + 1)];
        for &e in &self.exponents {
            c[e] = true;
        }
        c
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.exponents.last().copied()
    }

    pub fn weight(&self) -> usize {
        self.exponents.len()
    }

    /// `x^deg · h(1/x) = h`.
    pub fn is_palindromic(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self
                .exponents
                .iter()
                .all(|&e| self.exponents.binary_search(&(d - e)).is_ok()),
        }
    }

    /// `x^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        Self {
            exponents: self.exponents.iter().map(|e| e + k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.exponents.len() + other.exponents.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exponents.len() || j < other.exponents.len() {
            match (self.exponents.get(i), other.exponents.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self { exponents: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Self::zero();
        };
        let mut c = vec![false; da + db + 1];
        for &a in &self.exponents {
            for &b in &other.exponents {
                c[a + b] ^= true;
            }
        }
        Self::from_coeffs(&c)
    }

    /// Quotient and remainder of `self / divisor`, or `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let Some(dn) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if dn < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs();
        let mut quot = vec![false; dn - dd + 1];
        for top in (dd..=dn).rev() {
            if rem[top] {
                quot[top - dd] = true;
                for &e in &divisor.exponents {
                    rem[top - dd + e] ^= true;
                }
            }
        }
        Some((Self::from_coeffs(&quot), Self::from_coeffs(&rem)))
    }

    /// Reduction modulo `x^n − 1`.
    pub fn reduce_mod(&self, n: usize) -> Self {
        assert!(n > 0, "modulus degree must be positive");
        let mut c = vec![false; n];
        for &e in &self.exponents {
            c[e % n] ^= true;
        }
        Self::from_coeffs(&c)
    }

    /// `x^n − 1`, which over GF(2) equals `x^n + 1`.
    pub fn cyclic_modulus(n: usize) -> Self {
        Self::from_exponents([0, n])
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("0");
        }
        for (i, &e) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses a comma-separated exponent list such as `"0,3,4,5,6,9"`.
impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero());
        }
        let exps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_exponents(exps))
    }
}

/// The `n × n` circulant whose row `i` holds the coefficients of
/// `x^i · h(x) mod (x^n − 1)`.
pub fn circulant(h: &Gf2Poly, n: usize) -> Result<BitMatrix> {
    if let Some(d) = h.degree() {
        if d >= n {
            return Err(Error::DegreeTooLarge { degree: d, n });
        }
    }
    let mut m = BitMatrix::zeros(n, n);
    for i in 0..n {
        for &e in h.exponents() {
            m.set(i, (i + e) % n, true);
        }
    }
    Ok(m)
}

/// Check polynomial of the transposed cyclic code: `h(x^{n−1}) mod (x^n − 1)`,
/// i.e. every exponent `e` maps to `(n − e) mod n`.
pub fn reverse_poly(h: &Gf2Poly, n: usize) -> Result<Gf2Poly> {
    if let Some(d) = h.degree() {
        if d >= n {
            return Err(Error::DegreeTooLarge { degree: d, n });
        }
    }
    Ok(Gf2Poly::from_exponents(
        h.exponents().iter().map(|&e| (n - e) % n),
    ))
}

/// Generator polynomial `(x^n − 1) / h(x)`; fails unless `h` divides `x^n − 1`.
pub fn generator_poly(h: &Gf2Poly, n: usize) -> Result<Gf2Poly> {
    let (q, r) = Gf2Poly::cyclic_modulus(n)
        .div_rem(h)
        .ok_or_else(|| Error::NotADivisor {
            poly: h.to_string(),
            n,
        })?;
    if !r.is_zero() {
        return Err(Error::NotADivisor {
            poly: h.to_string(),
            n,
        });
    }
    Ok(q)
}
