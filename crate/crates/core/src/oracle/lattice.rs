//! Lattices in F_q((t))² in Hermite normal form, for GL2 and its relatives PGL2 and SL2.
//!
//! A point g·K of the affine Grassmannian of GL2 is the lattice spanned by the columns of
//! [[t^a, c], [0, t^b]] with c a Laurent polynomial supported in degrees < a. Everything is an
//! exact Laurent polynomial, so no t-adic truncation is involved.

use crate::error::{Result, SatakeError};

use super::field::Gf;

/// Σ coeffs[k] t^{low + k}; the zero polynomial has no coefficients, otherwise both ends are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LPoly {
    low: i64,
    coeffs: Vec<u8>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly { low: 0, coeffs: vec![] }
    }

    pub fn monomial(c: u8, k: i64) -> LPoly {
        LPoly { low: k, coeffs: vec![c] }.normalized()
    }

    pub fn t_pow(k: i64) -> LPoly {
        LPoly::monomial(1, k)
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<u8>) -> LPoly {
        LPoly { low, coeffs }.normalized()
    }

    fn normalized(mut self) -> LPoly {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return LPoly::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn val(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn coeff(&self, k: i64) -> u8 {
        let i = k - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    pub fn add(&self, f: &Gf, o: &LPoly) -> LPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = (self.low + self.coeffs.len() as i64).max(o.low + o.coeffs.len() as i64);
        let coeffs = (low..high).map(|k| f.add(self.coeff(k), o.coeff(k))).collect();
        LPoly { low, coeffs }.normalized()
    }

    pub fn neg(&self, f: &Gf) -> LPoly {
        LPoly { low: self.low, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, f: &Gf, o: &LPoly) -> LPoly {
        self.add(f, &o.neg(f))
    }

    pub fn mul(&self, f: &Gf, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::zero();
        }
        let mut coeffs = vec![0u8; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        LPoly { low: self.low + o.low, coeffs }.normalized()
    }

    /// Drop every term of degree ≥ `bound`.
    pub fn truncate_below(&self, bound: i64) -> LPoly {
        if self.is_zero() || self.low >= bound {
            return LPoly::zero();
        }
        let keep = ((bound - self.low) as usize).min(self.coeffs.len());
        LPoly { low: self.low, coeffs: self.coeffs[..keep].to_vec() }.normalized()
    }

    /// Inverse of a unit power series (valuation 0), exact in degrees < `prec`.
    fn unit_inverse(&self, f: &Gf, prec: i64) -> LPoly {
        debug_assert_eq!(self.val(), Some(0));
        let n = prec.max(0) as usize;
        let inv0 = f.inv(self.coeffs[0]);
        let mut out = vec![0u8; n];
        for k in 0..n {
            // Σ_{i≤k} u_i out_{k−i} = [k = 0]
            let mut acc = if k == 0 { 1 } else { 0 };
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = f.sub(acc, f.mul(self.coeffs[i], out[k - i]));
            }
            out[k] = f.mul(acc, inv0);
        }
        LPoly { low: 0, coeffs: out }.normalized()
    }
}

pub type Mat2 = [[LPoly; 2]; 2];

pub fn mat_mul(f: &Gf, x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| x[i][0].mul(f, &y[0][j]).add(f, &x[i][1].mul(f, &y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn det(f: &Gf, m: &Mat2) -> LPoly {
    m[0][0].mul(f, &m[1][1]).sub(f, &m[0][1].mul(f, &m[1][0]))
}

pub fn diag_t(a: i64, b: i64) -> Mat2 {
    [[LPoly::t_pow(a), LPoly::zero()], [LPoly::zero(), LPoly::t_pow(b)]]
}

/// Elementary divisors (λ1 ≥ λ2) of an invertible matrix: the double coset K t^λ K containing it.
pub fn double_coset_type(f: &Gf, m: &Mat2) -> Result<(i64, i64)> {
    let d = det(f, m).val().ok_or_else(|| SatakeError::invalid("singular matrix"))?;
    let lo = m.iter().flatten().filter_map(LPoly::val).min().expect("nonzero determinant");
    Ok((d - lo, lo))
}

/// A lattice [[t^a, c], [0, t^b]]·O² with c supported in degrees < a.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    pub a: i64,
    pub b: i64,
    pub c: LPoly,
}

impl Lattice {
    pub fn standard() -> Lattice {
        Lattice { a: 0, b: 0, c: LPoly::zero() }
    }

    pub fn matrix(&self) -> Mat2 {
        [[LPoly::t_pow(self.a), self.c.clone()], [LPoly::zero(), LPoly::t_pow(self.b)]]
    }

    /// The normal form of the lattice m·O².
    pub fn from_matrix(f: &Gf, m: &Mat2) -> Result<Lattice> {
        let d = det(f, m).val().ok_or_else(|| SatakeError::invalid("singular matrix"))?;
        // pick the column whose lower entry has minimal valuation
        let (top, bottom) = match (m[1][0].val(), m[1][1].val()) {
            (Some(v0), Some(v1)) if v0 < v1 => (&m[0][0], &m[1][0]),
            (Some(_), None) => (&m[0][0], &m[1][0]),
            _ => (&m[0][1], &m[1][1]),
        };
        let b = bottom.val().expect("some lower entry is nonzero");
        let a = d - b;
        // c = top · t^b / bottom, reduced modulo t^a O
        let c = match top.val() {
            Some(v) if v < a => {
                let unit = LPoly { low: 0, coeffs: bottom.coeffs.clone() };
                top.mul(f, &unit.unit_inverse(f, a - v)).truncate_below(a)
            }
            _ => LPoly::zero(),
        };
        Ok(Lattice { a, b, c })
    }

    pub fn renormalize(&self, f: &Gf) -> Result<Lattice> {
        Lattice::from_matrix(f, &self.matrix())
    }

    /// Relative position to the standard lattice.
    pub fn gl2_type(&self) -> (i64, i64) {
        let lo = self.c.val().map_or(self.a.min(self.b), |v| v.min(self.a).min(self.b));
        (self.a + self.b - lo, lo)
    }

    /// Relative position type(self, g·O²) = type(x⁻¹g) for x the normal-form matrix of self.
    pub fn relative_type(&self, f: &Gf, g: &Mat2) -> Result<(i64, i64)> {
        let inv = [
            [LPoly::t_pow(-self.a), self.c.neg(f).mul(f, &LPoly::t_pow(-self.a - self.b))],
            [LPoly::zero(), LPoly::t_pow(-self.b)],
        ];
        double_coset_type(f, &mat_mul(f, &inv, g))
    }

    /// Relative position to t^ν O², read off from valuations.
    pub fn relative_type_diag(&self, nu: (i64, i64)) -> (i64, i64) {
        let mut lo = (nu.0 - self.a).min(nu.1 - self.b);
        if let Some(v) = self.c.val() {
            lo = lo.min(v + nu.1 - self.a - self.b);
        }
        (nu.0 + nu.1 - self.a - self.b - lo, lo)
    }

    /// The coweight ν with the lattice in U t^ν K, U upper unitriangular.
    pub fn upper_iwasawa(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    /// The coweight ν with the lattice in U⁻ t^ν K, U⁻ lower unitriangular.
    pub fn lower_iwasawa(&self) -> (i64, i64) {
        let m = self.c.val().map_or(self.a, |v| v.min(self.a));
        (m, self.a + self.b - m)
    }
}

/// Every lattice of type (λ1, λ2), with λ1 ≥ λ2: the points of Gr^λ_{GL2}(F_q).
pub fn schubert_lattices(f: &Gf, lambda: (i64, i64), budget: u64) -> Result<Vec<Lattice>> {
    let (l1, l2) = lambda;
    if l1 < l2 {
        return Err(SatakeError::invalid(format!("({l1}, {l2}) is not dominant")));
    }
    let q = f.q() as u64;
    let size = (q + 1).checked_pow((l1 - l2) as u32).unwrap_or(u64::MAX);
    if size > budget {
        return Err(SatakeError::Budget(format!(
            "Gr^({l1},{l2}) over F_{q} has up to {size} points, budget {budget}"
        )));
    }
    let mut out = vec![];
    for a in l2..=l1 {
        let b = l1 + l2 - a;
        let free = (a - l2) as u32;
        for idx in 0..(q.pow(free)) {
            let mut coeffs = Vec::with_capacity(free as usize);
            let mut r = idx;
            for _ in 0..free {
                coeffs.push((r % q) as u8);
                r /= q;
            }
            let lat = Lattice { a, b, c: LPoly::from_coeffs(l2, coeffs) };
            if lat.gl2_type() == lambda {
                out.push(lat);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schubert_counts() {
        let f3 = Gf::new(3).unwrap();
        assert_eq!(schubert_lattices(&f3, (0, 0), 10).unwrap().len(), 1);
        assert_eq!(schubert_lattices(&f3, (1, 0), 10).unwrap().len(), 4);
        let f2 = Gf::new(2).unwrap();
        assert_eq!(schubert_lattices(&f2, (2, 0), 100).unwrap().len(), 6);
        assert!(schubert_lattices(&f2, (30, 0), 100).is_err());
    }

    #[test]
    fn normal_forms_are_fixed() {
        let f = Gf::new(4).unwrap();
        for lat in schubert_lattices(&f, (3, -1), 1 << 20).unwrap() {
            assert_eq!(lat.renormalize(&f).unwrap(), lat);
            assert_eq!(double_coset_type(&f, &lat.matrix()).unwrap(), lat.gl2_type());
        }
    }

    #[test]
    fn diagonal_fast_path_matches_matrix_product() {
        let f = Gf::new(3).unwrap();
        for lat in schubert_lattices(&f, (2, 0), 1 << 20).unwrap() {
            for nu in [(0, 0), (1, 1), (2, 0), (3, -1)] {
                assert_eq!(lat.relative_type(&f, &diag_t(nu.0, nu.1)).unwrap(), lat.relative_type_diag(nu));
            }
        }
    }

    #[test]
    fn column_operations_preserve_the_lattice() {
        let f = Gf::new(5).unwrap();
        let m = [
            [LPoly::from_coeffs(-1, vec![2, 0, 3]), LPoly::from_coeffs(0, vec![1, 4])],
            [LPoly::from_coeffs(1, vec![1]), LPoly::from_coeffs(0, vec![3, 1])],
        ];
        let k = [
            [LPoly::from_coeffs(0, vec![1, 2, 1]), LPoly::from_coeffs(0, vec![3])],
            [LPoly::from_coeffs(0, vec![0, 1]), LPoly::from_coeffs(0, vec![1])],
        ];
        assert!(det(&f, &k).val() == Some(0));
        let a = Lattice::from_matrix(&f, &m).unwrap();
        let b = Lattice::from_matrix(&f, &mat_mul(&f, &m, &k)).unwrap();
        assert_eq!(a, b);
    }
}
