//! Exact univariate polynomials: `ZPoly` for Z[q] and `LaurentHalfPoly` for Z[q^{±1/2}].

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type Rat = Ratio<i128>;

/// Dense polynomial in Z[q]; `coeffs[k]` is the coefficient of q^k.
/// Invariant: no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZPoly {
    coeffs: Vec<i64>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// c·q^k
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// q - 1
    pub fn q_minus_one() -> Self {
        Self::new(vec![-1, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn eval(&self, q: i128) -> i128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * q + c as i128)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = ZPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// q^a (q-1)^b
    pub fn cell(a: usize, b: usize) -> Self {
        &ZPoly::monomial(1, a) * &ZPoly::q_minus_one().pow(b as u32)
    }

    pub fn to_laurent(&self) -> LaurentHalfPoly {
        LaurentHalfPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (2 * k as i64, c)),
        )
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        ZPoly::new(v)
    }

    /// Lagrange interpolation through `(q_i, y_i)`; `None` if the interpolant
    /// has non-integral coefficients.
    pub fn interpolate(points: &[(i128, i128)]) -> Option<ZPoly> {
        let n = points.len();
        let mut acc = vec![Rat::zero(); n];
        for (i, &(xi, yi)) in points.iter().enumerate() {
            // basis polynomial prod_{j != i} (q - x_j) / (x_i - x_j)
            let mut basis = vec![Rat::one()];
            let mut denom = Rat::one();
            for (j, &(xj, _)) in points.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![Rat::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += *c;
                    next[k] -= *c * Rat::from_integer(xj);
                }
                basis = next;
                denom *= Rat::from_integer(xi - xj);
            }
            let scale = Rat::from_integer(yi) / denom;
            for (k, c) in basis.iter().enumerate() {
                acc[k] += *c * scale;
            }
        }
        let mut out = Vec::with_capacity(n);
        for c in acc {
            if !c.is_integer() {
                return None;
            }
            out.push(i64::try_from(c.to_integer()).ok()?);
        }
        Some(ZPoly::new(out))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_laurent().fmt(f)
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ZPoly::new(v)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl AddAssign<&ZPoly> for ZPoly {
    fn add_assign(&mut self, rhs: &ZPoly) {
        *self = &*self + rhs;
    }
}

/// Finitely supported map from exponents of q^{1/2} to integers.
/// Invariant: no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentHalfPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentHalfPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// c·q^{half/2}
    pub fn monomial(c: i64, half: i64) -> Self {
        Self::from_terms([(half, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, half: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(half).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&half);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, half: i64) -> i64 {
        self.terms.get(&half).copied().unwrap_or(0)
    }

    /// Multiply by q^{half/2}.
    pub fn shift_half(&self, half: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + half, c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// The polynomial in Z[q] if every exponent is a nonnegative integer power of q.
    pub fn to_zpoly(&self) -> Option<ZPoly> {
        let mut v = Vec::new();
        for (e, c) in self.terms() {
            if e < 0 || e % 2 != 0 {
                return None;
            }
            let k = (e / 2) as usize;
            if v.len() <= k {
                v.resize(k + 1, 0);
            }
            v[k] = c;
        }
        Some(ZPoly::new(v))
    }

    /// Specialize q^{1/2} ↦ s.
    pub fn eval_sqrt(&self, s: Rat) -> Rat {
        self.terms().fold(Rat::zero(), |acc, (e, c)| {
            acc + Rat::from_integer(c as i128) * s.pow(e as i32)
        })
    }

    /// Specialize q ↦ q0 with q0 not necessarily a square; the value is returned as a + b·√q0.
    pub fn eval_q(&self, q0: i128) -> SqrtValue {
        let mut out = SqrtValue::default();
        let q = Rat::from_integer(q0);
        for (e, c) in self.terms() {
            let c = Rat::from_integer(c as i128);
            let whole = e.div_euclid(2);
            let v = c * q.pow(whole as i32);
            if e.rem_euclid(2) == 0 {
                out.rational += v;
            } else {
                out.sqrt_part += v;
            }
        }
        out
    }
}

/// a + b·√q0 with a, b rational.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SqrtValue {
    pub rational: Rat,
    pub sqrt_part: Rat,
}

impl fmt::Debug for LaurentHalfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentHalfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let exp = if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("{e}/2")
            };
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 2) => write!(f, "q")?,
                (1, _) => write!(f, "q^{exp}")?,
                (_, 2) => write!(f, "{a}q")?,
                _ => write!(f, "{a}q^{exp}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentHalfPoly {
    type Output = LaurentHalfPoly;
    fn add(self, rhs: &LaurentHalfPoly) -> LaurentHalfPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentHalfPoly {
    type Output = LaurentHalfPoly;
    fn sub(self, rhs: &LaurentHalfPoly) -> LaurentHalfPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentHalfPoly {
    type Output = LaurentHalfPoly;
    fn mul(self, rhs: &LaurentHalfPoly) -> LaurentHalfPoly {
        let mut out = LaurentHalfPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentHalfPoly {
    type Output = LaurentHalfPoly;
    fn neg(self) -> LaurentHalfPoly {
        self.scale(-1)
    }
}

impl AddAssign<&LaurentHalfPoly> for LaurentHalfPoly {
    fn add_assign(&mut self, rhs: &LaurentHalfPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_polynomial() {
        assert_eq!(ZPoly::cell(1, 1).coeffs(), &[0, -1, 1]);
        assert_eq!(ZPoly::cell(0, 0), ZPoly::one());
    }

    #[test]
    fn interpolation_recovers_integral_polynomial() {
        let p = ZPoly::new(vec![1, 0, 3, -2]);
        let pts: Vec<_> = [2, 3, 5, 7].iter().map(|&q| (q, p.eval(q))).collect();
        assert_eq!(ZPoly::interpolate(&pts), Some(p));
        assert_eq!(ZPoly::interpolate(&[(0, 0), (2, 1)]), None);
    }

    #[test]
    fn half_powers_evaluate_through_sqrt() {
        let p = LaurentHalfPoly::from_terms([(1, 1), (-1, 1)]);
        let v = p.eval_q(4);
        assert_eq!(v.rational, Rat::zero());
        assert_eq!(v.sqrt_part, Rat::new(5, 4));
        assert_eq!(p.eval_sqrt(Rat::from_integer(2)), Rat::new(5, 2));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = LaurentHalfPoly::from_terms([(3, 2), (3, -2), (0, 1)]);
        assert_eq!(p, LaurentHalfPoly::one());
        assert_eq!(p.to_zpoly(), Some(ZPoly::one()));
        assert_eq!(LaurentHalfPoly::monomial(1, 1).to_zpoly(), None);
    }
}
