//! Graded characters of Ĝ ⋊ Gm, the extension criterion to the Vinberg monoid, and the generic
//! Satake map Ψ: q^n f_μ ↦ [IC_μ(−n)].
//!
//! The ν-weight space of IC_μ(−n) sits in Gm-degree ⟨2ρ,μ⟩ + 2n. A weight (λ, g) extends to the
//! monoid iff ⟨2ρ,λ⟩ ≡ g mod 2 and ⟨2ρ,λ_−⟩ ≥ −g, with λ_− the antidominant conjugate of λ.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SatakeError};
use crate::hecke::{Coweight, CountSource, Hecke, HeckeElement, SpecializedFunction, SphericalFunction};
use crate::poly::{LaurentHalfPoly, ZPoly};
use crate::rootdata::RootDatum;

/// (ν, Gm-degree) ↦ multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCharacter {
    entries: BTreeMap<(Coweight, i64), i64>,
}

impl GradedCharacter {
    pub fn entries(&self) -> &BTreeMap<(Coweight, i64), i64> {
        &self.entries
    }

    pub fn add(&mut self, nu: &[i64], g: i64, m: i64) {
        let key = (nu.to_vec(), g);
        let slot = self.entries.entry(key.clone()).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.entries.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedCharacter, k: i64) {
        for ((nu, g), m) in &other.entries {
            self.add(nu, *g, k * m);
        }
    }

    /// Every Gm-degree moved by `delta`.
    pub fn shift_grading(&self, delta: i64) -> GradedCharacter {
        let mut out = GradedCharacter::default();
        for ((nu, g), m) in &self.entries {
            out.add(nu, g + delta, *m);
        }
        out
    }

    pub fn product(&self, other: &GradedCharacter) -> GradedCharacter {
        let mut out = GradedCharacter::default();
        for ((a, g), m) in &self.entries {
            for ((b, h), n) in &other.entries {
                let nu: Coweight = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add(&nu, g + h, m * n);
            }
        }
        out
    }

    pub fn is_weyl_invariant(&self, datum: &RootDatum) -> bool {
        self.entries.iter().all(|((nu, g), m)| {
            (0..datum.semisimple_rank())
                .all(|i| self.entries.get(&(datum.reflect(i, nu), *g)) == Some(m))
        })
    }

    /// Σ m · q^{g/2} e^ν.
    pub fn to_spherical(&self) -> SphericalFunction {
        let mut out = SphericalFunction::zero();
        for ((nu, g), m) in &self.entries {
            out.add_term(nu, &LaurentHalfPoly::monomial(*m, *g));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|((nu, g), m)| serde_json::json!({"nu": nu, "grading": g, "mult": m}))
                .collect(),
        )
    }
}

pub fn ic_class(datum: &RootDatum, mu: &[i64], n: i64) -> Result<GradedCharacter> {
    datum.check_coweight(mu)?;
    if !datum.is_dominant(mu) {
        return Err(SatakeError::invalid(format!("{mu:?} is not dominant")));
    }
    if n < 0 {
        return Err(SatakeError::invalid(format!("twist {n} < 0 is not anti-effective")));
    }
    let g = datum.two_rho_pair(mu) + 2 * n;
    let mut out = GradedCharacter::default();
    for (nu, &m) in datum.weyl_character(mu)?.mults() {
        out.add(nu, g, m);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionCheck {
    pub extends: bool,
    /// A weight (λ, g) violating the criterion, preferring dominant λ.
    pub witness: Option<(Coweight, i64)>,
}

pub fn weight_extends(datum: &RootDatum, lambda: &[i64], g: i64) -> bool {
    let two = datum.two_rho_pair(lambda);
    (two - g).rem_euclid(2) == 0 && datum.two_rho_pair(&datum.antidominant_rep(lambda)) >= -g
}

pub fn extends_to_vinberg(datum: &RootDatum, gc: &GradedCharacter) -> ExtensionCheck {
    let failures: Vec<&(Coweight, i64)> = gc
        .entries
        .iter()
        .filter(|(_, &m)| m != 0)
        .map(|(k, _)| k)
        .filter(|(nu, g)| !weight_extends(datum, nu, *g))
        .collect();
    let witness = failures
        .iter()
        .find(|(nu, _)| datum.is_dominant(nu))
        .or(failures.first())
        .map(|&k| k.clone());
    ExtensionCheck { extends: witness.is_none(), witness }
}

/// Σ c · [IC_μ(−n)].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VinbergClass {
    terms: BTreeMap<(Coweight, i64), i64>,
}

impl VinbergClass {
    pub fn terms(&self) -> &BTreeMap<(Coweight, i64), i64> {
        &self.terms
    }

    pub fn add(&mut self, mu: &[i64], n: i64, c: i64) {
        let key = (mu.to_vec(), n);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn character(&self, datum: &RootDatum) -> Result<GradedCharacter> {
        let mut out = GradedCharacter::default();
        for ((mu, n), c) in &self.terms {
            out.add_scaled(&ic_class(datum, mu, *n)?, *c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|((mu, n), c)| serde_json::json!({"mu": mu, "twist": n, "coeff": c}))
                .collect(),
        )
    }
}

pub fn psi(hecke: &Hecke, h: &HeckeElement) -> Result<VinbergClass> {
    let mut out = VinbergClass::default();
    for (mu, c) in hecke.to_f_basis(h)? {
        for (n, &a) in c.coeffs().iter().enumerate() {
            if a != 0 {
                out.add(&mu, n as i64, a);
            }
        }
    }
    Ok(out)
}

pub fn psi_inverse(hecke: &Hecke, class: &VinbergClass) -> Result<HeckeElement> {
    let mut f: BTreeMap<Coweight, ZPoly> = BTreeMap::new();
    for ((mu, n), &c) in class.terms() {
        if *n < 0 {
            return Err(SatakeError::invalid(format!("twist {n} < 0 lies outside the generic algebra")));
        }
        *f.entry(mu.clone()).or_default() += &ZPoly::monomial(c, *n as usize);
    }
    hecke.from_f_basis(&f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCheck {
    pub ok: bool,
    pub classical: SpecializedFunction,
    pub vinberg: SpecializedFunction,
}

/// Specialize q = q0 and take Ψ_cl through point counts, versus Ψ followed by the graded
/// character with the Gm-coordinate set to q0^{1/2}.
pub fn check_diagram(hecke: &Hecke, h: &HeckeElement, q0: i128, source: CountSource) -> Result<DiagramCheck> {
    let classical = hecke.satake_geometric_at(h, q0, source)?;
    let vinberg = psi(hecke, h)?.character(hecke.datum())?.to_spherical().specialize(q0);
    Ok(DiagramCheck { ok: classical == vinberg, classical, vinberg })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(name: &str) -> RootDatum {
        RootDatum::preset(name).unwrap()
    }

    #[test]
    fn trivial_and_pgl2_classes() {
        let p = d("PGL2");
        let triv = ic_class(&p, &[0], 0).unwrap();
        assert_eq!(triv.entries().len(), 1);
        assert!(extends_to_vinberg(&p, &triv).extends);
        let ic1 = ic_class(&p, &[1], 0).unwrap();
        assert_eq!(ic1.entries().get(&(vec![1], 1)), Some(&1));
        assert_eq!(ic1.entries().get(&(vec![-1], 1)), Some(&1));
        assert_eq!(ic_class(&p, &[1], 1).unwrap(), ic1.shift_grading(2));
        assert!(ic_class(&p, &[1], -1).is_err());
    }

    #[test]
    fn positive_twist_fails_at_the_dominant_weight() {
        let p = d("SL3");
        let c = ic_class(&p, &[2, 1], 0).unwrap().shift_grading(-2);
        let check = extends_to_vinberg(&p, &c);
        assert!(!check.extends);
        assert_eq!(check.witness, Some((vec![2, 1], p.two_rho_pair(&[2, 1]) - 2)));
    }

    #[test]
    fn psi_basics() {
        let h = Hecke::new(&d("PGL2"));
        let unit = HeckeElement::unit(h.datum());
        let class = psi(&h, &unit).unwrap();
        assert_eq!(class.terms().get(&(vec![0], 0)), Some(&1));
        let qt0 = unit.scale(&ZPoly::monomial(1, 1));
        assert_eq!(psi(&h, &qt0).unwrap().terms().get(&(vec![0], 1)), Some(&1));
        let t2 = HeckeElement::basis(&[2]);
        let c = psi(&h, &t2).unwrap();
        assert_eq!(psi_inverse(&h, &c).unwrap(), t2);
    }

    #[test]
    fn diagram_on_small_generators() {
        for name in ["PGL2", "SL3", "Sp4"] {
            let h = Hecke::new(&d(name));
            for mu in h.datum().dominant_up_to(4, 1) {
                let t = HeckeElement::basis(&mu);
                for q0 in [2, 3, 5] {
                    assert!(check_diagram(&h, &t, q0, CountSource::Cells).unwrap().ok, "{name} {mu:?} q0={q0}");
                }
            }
        }
    }
}
