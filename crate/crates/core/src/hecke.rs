//! The generic spherical Hecke algebra: T- and f-bases, structure constants, and the classical
//! Satake transform.
//!
//! f_μ = T_μ + Σ_{λ<μ} d_{μλ}(q) T_λ is the element with Ψ_cl(f_μ) = q^{⟨ρ,μ⟩}χ_μ. Two
//! independent routes compute d: the q-analogue d_{μλ} = q^{⟨ρ,μ−λ⟩}K_{μλ}(q⁻¹), and a
//! triangular solve against point counts of S^+_ν ∩ Gr^μ.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SatakeError};
use crate::mvcells::{point_count_poly, MvTable, OrbitSign};
use crate::oracle;
use crate::poly::{LaurentHalfPoly, Rat, SqrtValue, ZPoly};
use crate::rootdata::{RootDatum, WeylCharacter};

pub type Coweight = Vec<i64>;
type Expansion = BTreeMap<Coweight, ZPoly>;

/// Σ_μ c_μ(q) T_μ over dominant μ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: Expansion,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    nu: Coweight,
    #[serde(rename = "N")]
    n: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    terms: Vec<TermJson>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(mu: &[i64]) -> Self {
        Self::monomial(mu, ZPoly::one())
    }

    pub fn unit(datum: &RootDatum) -> Self {
        Self::basis(&vec![0; datum.rank()])
    }

    pub fn monomial(mu: &[i64], c: ZPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(mu, &c);
        h
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Coweight, ZPoly)>) -> Self {
        let mut h = Self::zero();
        for (mu, c) in terms {
            h.add_term(&mu, &c);
        }
        h
    }

    pub fn add_term(&mut self, mu: &[i64], c: &ZPoly) {
        let slot = self.terms.entry(mu.to_vec()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(mu);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Coweight, ZPoly> {
        &self.terms
    }

    pub fn coeff(&self, mu: &[i64]) -> ZPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu, c);
        }
        out
    }

    pub fn scale(&self, c: &ZPoly) -> HeckeElement {
        HeckeElement::from_terms(self.terms.iter().map(|(mu, x)| (mu.clone(), x * c)))
    }

    /// Coefficients evaluated at q = q0.
    pub fn specialize(&self, q0: i128) -> BTreeMap<Coweight, i128> {
        self.terms.iter().map(|(mu, c)| (mu.clone(), c.eval(q0))).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms = self.terms.iter().map(|(nu, c)| TermJson { nu: nu.clone(), n: c.coeffs().to_vec() }).collect();
        serde_json::to_value(ElementJson { terms }).expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<HeckeElement> {
        let parsed: ElementJson =
            serde_json::from_value(v.clone()).map_err(|e| SatakeError::invalid(format!("bad Hecke element: {e}")))?;
        Ok(HeckeElement::from_terms(parsed.terms.into_iter().map(|t| (t.nu, ZPoly::new(t.n)))))
    }
}

/// An element of Z[q^{±1/2}][X_*(T)]: coweight ↦ Laurent polynomial in q^{1/2}.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SphericalFunction {
    coeffs: BTreeMap<Coweight, LaurentHalfPoly>,
}

impl SphericalFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, nu: &[i64], c: &LaurentHalfPoly) {
        let slot = self.coeffs.entry(nu.to_vec()).or_insert_with(LaurentHalfPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(nu);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<Coweight, LaurentHalfPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, nu: &[i64]) -> LaurentHalfPoly {
        self.coeffs.get(nu).cloned().unwrap_or_else(LaurentHalfPoly::zero)
    }

    /// c · χ for a Weyl character χ.
    pub fn add_character(&mut self, chi: &WeylCharacter, c: &LaurentHalfPoly) {
        for (nu, &m) in chi.mults() {
            self.add_term(nu, &c.scale(m));
        }
    }

    pub fn mul(&self, other: &SphericalFunction) -> SphericalFunction {
        let mut out = SphericalFunction::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let nu: Coweight = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term(&nu, &(x * y));
            }
        }
        out
    }

    pub fn is_weyl_invariant(&self, datum: &RootDatum) -> bool {
        self.coeffs.iter().all(|(nu, c)| {
            (0..datum.semisimple_rank()).all(|i| self.coeff(&datum.reflect(i, nu)) == *c)
        })
    }

    pub fn specialize(&self, q0: i128) -> SpecializedFunction {
        let mut out = SpecializedFunction::new();
        for (nu, c) in &self.coeffs {
            add_value(&mut out, nu, c.eval_q(q0));
        }
        out
    }
}

/// A function on X_*(T) with values in Q(√q0), for a fixed prime power q0.
pub type SpecializedFunction = BTreeMap<Coweight, SqrtValue>;

fn add_value(f: &mut SpecializedFunction, nu: &[i64], v: SqrtValue) {
    let slot = f.entry(nu.to_vec()).or_default();
    slot.rational += v.rational;
    slot.sqrt_part += v.sqrt_part;
    if *slot == SqrtValue::default() {
        f.remove(nu);
    }
}

/// Where the point counts #(S^+_ν ∩ Gr^μ)(F_q) come from in the geometric route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountSource {
    /// Cell decompositions from positively folded galleries.
    Cells,
    /// Finite-field lattice enumeration, interpolated in q (GL2, PGL2, SL2 only).
    Oracle,
}

/// Hecke algebra of one root datum, with shared memo tables.
pub struct Hecke {
    datum: RootDatum,
    characters: DashMap<Coweight, Arc<WeylCharacter>>,
    tensors: DashMap<(Coweight, Coweight), Arc<BTreeMap<Coweight, i64>>>,
    f_to_t: DashMap<Coweight, Arc<Expansion>>,
    t_to_f: DashMap<Coweight, Arc<Expansion>>,
    geometric: DashMap<(Coweight, bool), Arc<SphericalFunction>>,
}

fn half_pow(c: i64, half: i64) -> LaurentHalfPoly {
    LaurentHalfPoly::monomial(c, half)
}

/// ⟨ρ, x⟩ for x in the coroot lattice.
fn rho_pair_int(datum: &RootDatum, x: &[i64]) -> Result<usize> {
    let two = datum.two_rho_pair(x);
    if two < 0 || two % 2 != 0 {
        return Err(SatakeError::Inconsistent(format!("⟨ρ, {x:?}⟩ = {two}/2 is not a natural number")));
    }
    Ok((two / 2) as usize)
}

fn sub(a: &[i64], b: &[i64]) -> Coweight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Hecke {
    pub fn new(datum: &RootDatum) -> Hecke {
        Hecke {
            datum: datum.clone(),
            characters: DashMap::new(),
            tensors: DashMap::new(),
            f_to_t: DashMap::new(),
            t_to_f: DashMap::new(),
            geometric: DashMap::new(),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    fn check_dominant(&self, mu: &[i64]) -> Result<()> {
        self.datum.check_coweight(mu)?;
        if !self.datum.is_dominant(mu) {
            return Err(SatakeError::invalid(format!("{mu:?} is not dominant")));
        }
        Ok(())
    }

    pub fn character(&self, mu: &[i64]) -> Result<Arc<WeylCharacter>> {
        if let Some(c) = self.characters.get(mu) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.datum.weyl_character(mu)?);
        self.characters.insert(mu.to_vec(), c.clone());
        Ok(c)
    }

    fn tensor(&self, mu: &[i64], lambda: &[i64]) -> Result<Arc<BTreeMap<Coweight, i64>>> {
        let key = (mu.to_vec(), lambda.to_vec());
        if let Some(t) = self.tensors.get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.datum.tensor_decomposition(mu, lambda)?);
        self.tensors.insert(key, t.clone());
        Ok(t)
    }

    /// Dominant λ ≤ μ, largest ⟨2ρ,λ⟩ first (a linear extension of dominance).
    pub fn dominant_below(&self, mu: &[i64]) -> Result<Vec<Coweight>> {
        let chi = self.character(mu)?;
        let mut out: Vec<Coweight> = chi.weights().filter(|w| self.datum.is_dominant(w)).cloned().collect();
        out.sort_by_key(|w| (-self.datum.two_rho_pair(w), w.clone()));
        Ok(out)
    }

    /// f_μ = Σ_λ d_{μλ}(q) T_λ, with d_{μμ} = 1, from Kostka–Foulkes polynomials.
    pub fn change_of_basis(&self, mu: &[i64]) -> Result<Arc<Expansion>> {
        if let Some(e) = self.f_to_t.get(mu) {
            return Ok(e.clone());
        }
        self.check_dominant(mu)?;
        let mut out = Expansion::new();
        for lambda in self.dominant_below(mu)? {
            let k = self.datum.kostka_foulkes(mu, &lambda);
            let deg = rho_pair_int(&self.datum, &sub(mu, &lambda))?;
            if k.degree().is_some_and(|d| d > deg) {
                return Err(SatakeError::Inconsistent(format!(
                    "K_{{{mu:?},{lambda:?}}} has degree above ⟨ρ, μ−λ⟩ = {deg}"
                )));
            }
            // q^deg · K(q⁻¹): reverse the coefficient list padded to length deg + 1
            let rev: Vec<i64> = (0..=deg).map(|i| k.coeff(deg - i)).collect();
            let d = ZPoly::new(rev);
            if !d.is_zero() {
                out.insert(lambda, d);
            }
        }
        if out.get(mu) != Some(&ZPoly::one()) {
            return Err(SatakeError::Inconsistent(format!("f_{mu:?} is not unitriangular")));
        }
        let out = Arc::new(out);
        self.f_to_t.insert(mu.to_vec(), out.clone());
        Ok(out)
    }

    /// T_μ = Σ_λ e_{μλ}(q) f_λ, by inverting the unitriangular change of basis.
    pub fn t_in_f_basis(&self, mu: &[i64]) -> Result<Arc<Expansion>> {
        if let Some(e) = self.t_to_f.get(mu) {
            return Ok(e.clone());
        }
        let d = self.change_of_basis(mu)?;
        // T_μ = f_μ − Σ_{λ<μ} d_{μλ} T_λ
        let mut out = Expansion::new();
        out.insert(mu.to_vec(), ZPoly::one());
        for (lambda, c) in d.iter().filter(|(l, _)| l.as_slice() != mu) {
            for (kappa, e) in self.t_in_f_basis(lambda)?.iter() {
                let slot = out.entry(kappa.clone()).or_default();
                *slot = &*slot - &(c * e);
            }
        }
        out.retain(|_, c| !c.is_zero());
        let out = Arc::new(out);
        self.t_to_f.insert(mu.to_vec(), out.clone());
        Ok(out)
    }

    /// f_μ · f_λ = Σ_ν c^ν_{μλ} q^{⟨ρ, μ+λ−ν⟩} f_ν.
    pub fn phi_basis_product(&self, mu: &[i64], lambda: &[i64]) -> Result<Expansion> {
        self.check_dominant(mu)?;
        self.check_dominant(lambda)?;
        let sum: Coweight = mu.iter().zip(lambda).map(|(a, b)| a + b).collect();
        let mut out = Expansion::new();
        for (nu, &c) in self.tensor(mu, lambda)?.iter() {
            let e = rho_pair_int(&self.datum, &sub(&sum, nu))?;
            out.insert(nu.clone(), ZPoly::monomial(c, e));
        }
        Ok(out)
    }

    /// The f-basis coordinates of h.
    pub fn to_f_basis(&self, h: &HeckeElement) -> Result<Expansion> {
        let mut out = Expansion::new();
        for (mu, c) in h.terms() {
            for (lambda, e) in self.t_in_f_basis(mu)?.iter() {
                *out.entry(lambda.clone()).or_default() += &(c * e);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn from_f_basis(&self, f: &Expansion) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero();
        for (mu, c) in f {
            for (lambda, d) in self.change_of_basis(mu)?.iter() {
                out.add_term(lambda, &(c * d));
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, h1: &HeckeElement, h2: &HeckeElement) -> Result<HeckeElement> {
        let (a, b) = (self.to_f_basis(h1)?, self.to_f_basis(h2)?);
        let mut prod = Expansion::new();
        for (mu, x) in &a {
            for (lambda, y) in &b {
                let xy = x * y;
                for (nu, c) in self.phi_basis_product(mu, lambda)? {
                    *prod.entry(nu).or_default() += &(&xy * &c);
                }
            }
        }
        prod.retain(|_, c| !c.is_zero());
        self.from_f_basis(&prod)
    }

    /// N_{μλν}(q): the T_ν coefficient of T_μ·T_λ.
    pub fn structure_constant(&self, mu: &[i64], lambda: &[i64], nu: &[i64]) -> Result<ZPoly> {
        Ok(self.multiply(&HeckeElement::basis(mu), &HeckeElement::basis(lambda))?.coeff(nu))
    }

    /// Ψ_cl(f_μ) = q^{⟨ρ,μ⟩}χ_μ, extended linearly.
    pub fn satake_classical(&self, h: &HeckeElement) -> Result<SphericalFunction> {
        let mut out = SphericalFunction::zero();
        for (lambda, c) in self.to_f_basis(h)? {
            let coeff = &c.to_laurent() * &half_pow(1, self.datum.two_rho_pair(&lambda));
            out.add_character(&*self.character(&lambda)?, &coeff);
        }
        Ok(out)
    }

    pub fn satake_classical_at(&self, h: &HeckeElement, q0: i128) -> Result<SpecializedFunction> {
        Ok(self.satake_classical(h)?.specialize(q0))
    }

    /// #(S^+_ν ∩ Gr^μ)(F_q) as a polynomial in q.
    pub fn semiinfinite_poly(&self, mu: &[i64], nu: &[i64], source: CountSource) -> Result<ZPoly> {
        match source {
            CountSource::Cells => point_count_poly(&self.datum, mu, nu, OrbitSign::Plus),
            CountSource::Oracle => oracle::interpolate(&oracle::SAMPLE_Q, |q| {
                Ok(oracle::semiinfinite_count(&self.datum, q, mu, nu, OrbitSign::Plus)? as i128)
            }),
        }
    }

    /// Ψ_cl(T_μ) = Σ_ν q^{−⟨ρ,ν⟩} #(S^+_ν ∩ Gr^μ) e^ν, the integral over U(F((t))).
    pub fn satake_geometric_basis(&self, mu: &[i64], source: CountSource) -> Result<Arc<SphericalFunction>> {
        let key = (mu.to_vec(), source == CountSource::Oracle);
        if let Some(f) = self.geometric.get(&key) {
            return Ok(f.clone());
        }
        self.check_dominant(mu)?;
        let mut out = SphericalFunction::zero();
        let mut add = |nu: &[i64], p: &ZPoly| out.add_term(nu, &p.to_laurent().shift_half(-self.datum.two_rho_pair(nu)));
        match source {
            CountSource::Cells => {
                for cl in MvTable::new(&self.datum, mu)?.all_plus(&self.datum)? {
                    add(&cl.nu, &cl.poly());
                }
            }
            CountSource::Oracle => {
                for nu in self.character(mu)?.weights() {
                    add(nu, &self.semiinfinite_poly(mu, nu, source)?);
                }
            }
        }
        let out = Arc::new(out);
        self.geometric.insert(key, out.clone());
        Ok(out)
    }

    /// Ψ_cl(h) at q = q0, computed through point counts rather than the f-basis.
    pub fn satake_geometric_at(&self, h: &HeckeElement, q0: i128, source: CountSource) -> Result<SpecializedFunction> {
        let mut out = SpecializedFunction::new();
        for (mu, c) in h.specialize(q0) {
            let scale = Rat::from_integer(c);
            for (nu, v) in self.satake_geometric_basis(&mu, source)?.specialize(q0) {
                add_value(&mut out, &nu, SqrtValue { rational: v.rational * scale, sqrt_part: v.sqrt_part * scale });
            }
        }
        Ok(out)
    }

    /// d_{μλ} recomputed from point counts: solve Ψ_cl(T_μ) = Σ_λ b_{μλ} q^{⟨ρ,λ⟩}χ_λ from
    /// the top, then invert the unitriangular matrix b.
    pub fn change_of_basis_geometric(&self, mu: &[i64], source: CountSource) -> Result<Expansion> {
        let order = self.dominant_below(mu)?;
        let mut b_rows: BTreeMap<Coweight, Expansion> = BTreeMap::new();
        for kappa in order.iter().rev() {
            let psi = self.satake_geometric_basis(kappa, source)?;
            let mut b = Expansion::new();
            for nu in self.dominant_below(kappa)? {
                // q^{⟨ρ,ν⟩}·[e^ν]Ψ_cl(T_κ) = Σ_λ b_λ q^{⟨ρ,λ+ν⟩} m_λ(ν)
                let lhs = psi.coeff(&nu).shift_half(self.datum.two_rho_pair(&nu));
                let mut rest = lhs
                    .to_zpoly()
                    .ok_or_else(|| SatakeError::Inconsistent(format!("Ψ_cl(T_{kappa:?}) at {nu:?} is not integral")))?;
                for (lambda, c) in &b {
                    let m = self.character(lambda)?.mult(&nu);
                    if m != 0 {
                        let sum: Coweight = lambda.iter().zip(&nu).map(|(x, y)| x + y).collect();
                        let e = rho_pair_int(&self.datum, &sum)?;
                        rest = &rest - &(c * &ZPoly::monomial(m, e));
                    }
                }
                let shift = self.datum.two_rho_pair(&nu) as usize;
                if rest.coeffs().iter().take(shift).any(|&c| c != 0) {
                    return Err(SatakeError::Inconsistent(format!(
                        "point counts of Gr^{kappa:?} are not divisible at {nu:?}"
                    )));
                }
                let quotient = ZPoly::new(rest.coeffs().iter().skip(shift).copied().collect());
                if !quotient.is_zero() {
                    b.insert(nu, quotient);
                }
            }
            b_rows.insert(kappa.clone(), b);
        }
        // f_μ = T_μ − Σ_{λ<μ} b_{μλ} f_λ, recursively
        fn invert(mu: &Coweight, b: &BTreeMap<Coweight, Expansion>, memo: &mut BTreeMap<Coweight, Expansion>) -> Expansion {
            if let Some(e) = memo.get(mu) {
                return e.clone();
            }
            let mut out = Expansion::new();
            out.insert(mu.clone(), ZPoly::one());
            for (lambda, c) in b[mu].iter().filter(|(l, _)| *l != mu) {
                for (kappa, d) in invert(lambda, b, memo) {
                    let slot = out.entry(kappa).or_default();
                    *slot = &*slot - &(c * &d);
                }
            }
            out.retain(|_, c| !c.is_zero());
            memo.insert(mu.clone(), out.clone());
            out
        }
        let top = mu.to_vec();
        if b_rows[&top].get(mu) != Some(&ZPoly::one()) {
            return Err(SatakeError::Inconsistent(format!("Ψ_cl(T_{mu:?}) has leading coefficient ≠ q^⟨ρ,μ⟩")));
        }
        Ok(invert(&top, &b_rows, &mut BTreeMap::new()))
    }

    /// For each weight ν, the half-integer exponent e with [e^ν]Ψ_cl(T_μ) = q^e · #(S^+_ν ∩ Gr^μ).
    /// `None` where the two sides are not related by a monomial.
    pub fn gallery_bridge_exponents(&self, mu: &[i64]) -> Result<BTreeMap<Coweight, Option<i64>>> {
        let psi = self.satake_classical(&HeckeElement::basis(mu))?;
        let mut out = BTreeMap::new();
        for nu in self.character(mu)?.weights() {
            let lhs = psi.coeff(nu);
            let rhs = point_count_poly(&self.datum, mu, nu, OrbitSign::Plus)?.to_laurent();
            let top = |p: &LaurentHalfPoly| p.terms().map(|(e, _)| e).max();
            let e = match (top(&lhs), top(&rhs)) {
                (Some(a), Some(b)) if rhs.shift_half(a - b) == lhs => Some(a - b),
                _ => None,
            };
            out.insert(nu.clone(), e);
        }
        Ok(out)
    }
}
