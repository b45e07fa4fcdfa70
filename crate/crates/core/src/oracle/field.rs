//! Finite fields F_q for q ∈ {2, 3, 4, 5, 7, 8, 9} by explicit addition and multiplication tables.
//!
//! Elements are encoded as integers 0..q: the coefficients of a polynomial in the generator x,
//! written in base p with the constant term as the lowest digit.

use crate::error::{Result, SatakeError};

pub const SUPPORTED_Q: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// (p, k, low coefficients of the monic defining polynomial of degree k).
fn presentation(q: u32) -> Option<(u32, u32, &'static [u32])> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, &[])),
        4 => Some((2, 2, &[1, 1])),    // x² + x + 1
        8 => Some((2, 3, &[1, 1, 0])), // x³ + x + 1
        9 => Some((3, 2, &[2, 2])),    // x² + 2x + 2
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct Gf {
    q: u32,
    p: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf {
    pub fn new(q: u32) -> Result<Gf> {
        let (p, k, modulus) = presentation(q)
            .ok_or_else(|| SatakeError::invalid(format!("no field implementation for q = {q}")))?;
        let digits = |a: u32| -> Vec<u32> { (0..k).map(|i| a / p.pow(i) % p).collect() };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u8;
                let mut prod = vec![0u32; (2 * k) as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // x^k = −Σ m_i x^i
                for top in (k as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let slot = top - k as usize + i;
                        prod[slot] = (prod[slot] + (p - c) * m) % p;
                    }
                }
                mul[(a * q + b) as usize] = encode(&prod[..k as usize]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).expect("additive inverse") as u8)
            .collect();
        let mut inv = vec![0u8; n];
        for a in 1..q {
            inv[a as usize] = (1..q)
                .find(|&b| mul[(a * q + b) as usize] == 1)
                .ok_or_else(|| SatakeError::Inconsistent(format!("F_{q}: {a} has no inverse")))?
                as u8;
        }
        Ok(Gf { q, p, add, mul, neg, inv })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in SUPPORTED_Q {
            let f = Gf::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_one() {
        for q in SUPPORTED_Q {
            let f = Gf::new(q).unwrap();
            let order = |a: u8| {
                let (mut x, mut k) = (a, 1);
                while x != 1 {
                    x = f.mul(x, a);
                    k += 1;
                }
                k
            };
            assert!(f.elements().skip(1).any(|a| order(a) == q - 1), "F_{q}");
        }
    }

    #[test]
    fn unsupported_sizes() {
        assert!(Gf::new(6).is_err());
        assert!(Gf::new(11).is_err());
    }
}
