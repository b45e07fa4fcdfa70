//! Brute-force point counts over finite fields: lattice models of the affine Grassmannian for
//! GL2, PGL2 and SL2, and flag varieties for SL2, SL3 and Sp4.

pub mod cache;
pub mod field;
pub mod flags;
pub mod lattice;

use rayon::prelude::*;

use crate::error::{Result, SatakeError};
use crate::mvcells::OrbitSign;
use crate::poly::ZPoly;
use crate::rootdata::RootDatum;

pub use field::{Gf, SUPPORTED_Q};
pub use flags::{flag_richardson_count, FlagCensus};
pub use lattice::{LPoly, Lattice, Mat2};

/// Maximal number of lattices enumerated per call.
pub const LATTICE_BUDGET: u64 = 5_000_000;

/// How coweights of a rank-one group sit among GL2 coweights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeGroup {
    Gl2,
    /// Lattices up to homothety; coweight k ↔ (k, 0).
    Pgl2,
    /// Lattices of determinant valuation zero; coweight k ↔ (k, −k).
    Sl2,
}

impl LatticeGroup {
    pub fn of(datum: &RootDatum) -> Result<LatticeGroup> {
        match datum.name() {
            "GL2" => Ok(LatticeGroup::Gl2),
            "PGL2" => Ok(LatticeGroup::Pgl2),
            "SL2" => Ok(LatticeGroup::Sl2),
            other => Err(SatakeError::invalid(format!("no lattice oracle for {other}"))),
        }
    }

    fn dim(self) -> usize {
        if self == LatticeGroup::Gl2 { 2 } else { 1 }
    }

    pub fn to_gl2(self, mu: &[i64]) -> Result<(i64, i64)> {
        if mu.len() != self.dim() {
            return Err(SatakeError::invalid(format!("coweight {mu:?} has the wrong length")));
        }
        Ok(match self {
            LatticeGroup::Gl2 => (mu[0], mu[1]),
            LatticeGroup::Pgl2 => (mu[0], 0),
            LatticeGroup::Sl2 => (mu[0], -mu[0]),
        })
    }

    pub fn from_gl2(self, v: (i64, i64)) -> Vec<i64> {
        match self {
            LatticeGroup::Gl2 => vec![v.0, v.1],
            LatticeGroup::Pgl2 => vec![v.0 - v.1],
            LatticeGroup::Sl2 => vec![v.0],
        }
    }

    fn dominant_gl2(self, mu: &[i64]) -> Result<(i64, i64)> {
        let v = self.to_gl2(mu)?;
        if v.0 < v.1 {
            return Err(SatakeError::invalid(format!("{mu:?} is not dominant")));
        }
        Ok(v)
    }
}

/// The points of Gr^μ(F_q).
pub fn enumerate_schubert(datum: &RootDatum, q: u32, mu: &[i64]) -> Result<Vec<Lattice>> {
    let g = LatticeGroup::of(datum)?;
    lattice::schubert_lattices(&Gf::new(q)?, g.dominant_gl2(mu)?, LATTICE_BUDGET)
}

pub fn schubert_count(datum: &RootDatum, q: u32, mu: &[i64]) -> Result<u64> {
    let key = cache::key("schubert", datum.name(), q, &[mu]);
    cache::cached(&key, || Ok(enumerate_schubert(datum, q, mu)?.len() as u64))
}

/// #{x ∈ Gr^μ : type(x, t^ν) = λ}, the structure constant of 1_μ * 1_λ at t^ν.
pub fn convolution_count(datum: &RootDatum, q: u32, mu: &[i64], lambda: &[i64], nu: &[i64]) -> Result<u64> {
    let key = cache::key("conv", datum.name(), q, &[mu, lambda, nu]);
    cache::cached(&key, || {
        let g = LatticeGroup::of(datum)?;
        let (l, n) = (g.dominant_gl2(lambda)?, g.dominant_gl2(nu)?);
        let target = g.from_gl2(l);
        let pts = enumerate_schubert(datum, q, mu)?;
        Ok(pts.par_iter().filter(|x| g.from_gl2(x.relative_type_diag(n)) == target).count() as u64)
    })
}

/// The same count against an arbitrary base point g·O², which must have type ν.
pub fn convolution_count_at(datum: &RootDatum, q: u32, mu: &[i64], lambda: &[i64], base: &Mat2) -> Result<u64> {
    let g = LatticeGroup::of(datum)?;
    let f = Gf::new(q)?;
    let target = g.from_gl2(g.dominant_gl2(lambda)?);
    let pts = enumerate_schubert(datum, q, mu)?;
    let hits: Result<Vec<bool>> =
        pts.par_iter().map(|x| Ok(g.from_gl2(x.relative_type(&f, base)?) == target)).collect();
    Ok(hits?.into_iter().filter(|&h| h).count() as u64)
}

/// #(S^±_ν ∩ Gr^μ)(F_q), with S^+ the U-orbit (U upper unitriangular) and S^- the U⁻-orbit.
pub fn semiinfinite_count(datum: &RootDatum, q: u32, mu: &[i64], nu: &[i64], sign: OrbitSign) -> Result<u64> {
    let tag = match sign {
        OrbitSign::Plus => "semiinf+",
        OrbitSign::Minus => "semiinf-",
    };
    let key = cache::key(tag, datum.name(), q, &[mu, nu]);
    cache::cached(&key, || {
        let g = LatticeGroup::of(datum)?;
        let pts = enumerate_schubert(datum, q, mu)?;
        Ok(pts
            .iter()
            .filter(|x| {
                let v = match sign {
                    OrbitSign::Plus => x.upper_iwasawa(),
                    OrbitSign::Minus => x.lower_iwasawa(),
                };
                g.from_gl2(v) == nu
            })
            .count() as u64)
    })
}

/// Sample sizes used for interpolation, in order.
pub const SAMPLE_Q: [u32; 5] = [2, 3, 4, 5, 7];

/// Fit a polynomial through sample values, adding samples until the fit is unchanged by
/// one more point. Every sample taken must lie on the final fit.
pub fn interpolate(samples: &[u32], mut value: impl FnMut(u32) -> Result<i128>) -> Result<ZPoly> {
    let mut points = vec![];
    let mut previous: Option<ZPoly> = None;
    for &q in samples {
        points.push((q as i128, value(q)?));
        let fit = ZPoly::interpolate(&points);
        match (&previous, fit) {
            (Some(p), Some(f)) if *p == f => return Ok(f),
            (_, fit) => previous = fit,
        }
    }
    Err(SatakeError::Budget(format!(
        "interpolation did not stabilize on {} samples",
        samples.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mvcells::{point_count_poly, schubert_cell_poly};

    fn d(name: &str) -> RootDatum {
        RootDatum::preset(name).unwrap()
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(schubert_count(&d("GL2"), 3, &[1, 0]).unwrap(), 4);
        assert_eq!(schubert_count(&d("GL2"), 2, &[0, 0]).unwrap(), 1);
        assert_eq!(schubert_count(&d("GL2"), 2, &[2, 0]).unwrap(), 6);
        assert_eq!(schubert_count(&d("PGL2"), 2, &[1]).unwrap(), 3);
        assert_eq!(schubert_count(&d("SL2"), 2, &[1]).unwrap(), 6);
    }

    #[test]
    fn semiinfinite_examples() {
        let p = d("PGL2");
        assert_eq!(semiinfinite_count(&p, 3, &[2], &[0], OrbitSign::Minus).unwrap(), 2);
        assert_eq!(semiinfinite_count(&p, 2, &[3], &[-3], OrbitSign::Minus).unwrap(), 8);
        assert_eq!(semiinfinite_count(&p, 5, &[3], &[3], OrbitSign::Minus).unwrap(), 1);
        assert_eq!(semiinfinite_count(&p, 5, &[3], &[-3], OrbitSign::Plus).unwrap(), 1);
    }

    #[test]
    fn convolution_unit() {
        let g = d("GL2");
        for nu in [[1, 0], [2, -1], [1, 1]] {
            let expect = u64::from(nu == [1, 0]);
            assert_eq!(convolution_count(&g, 3, &[1, 0], &[0, 0], &nu).unwrap(), expect);
        }
        assert_eq!(convolution_count(&g, 2, &[1, 0], &[1, 0], &[1, 1]).unwrap(), 3);
    }

    #[test]
    fn cell_polynomials_match_enumeration() {
        for name in ["GL2", "PGL2", "SL2"] {
            let dat = d(name);
            for mu in dat.dominant_up_to(4, 1) {
                let schubert = schubert_cell_poly(&dat, &mu).unwrap();
                for q in [2, 3, 4] {
                    assert_eq!(schubert.eval(q as i128), schubert_count(&dat, q, &mu).unwrap() as i128);
                    for nu in dat.weyl_character(&mu).unwrap().weights() {
                        for sign in [OrbitSign::Plus, OrbitSign::Minus] {
                            let poly = point_count_poly(&dat, &mu, nu, sign).unwrap();
                            let count = semiinfinite_count(&dat, q, &mu, nu, sign).unwrap();
                            assert_eq!(poly.eval(q as i128), count as i128, "{name} μ={mu:?} ν={nu:?} {sign:?} q={q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        let p = ZPoly::new(vec![1, 0, 2]);
        assert_eq!(interpolate(&SAMPLE_Q, |q| Ok(p.eval(q as i128))).unwrap(), p);
        assert!(interpolate(&SAMPLE_Q, |q| Ok(1 << q)).is_err());
    }
}
