//! Characters of the dual group: weights are coweights, roots are the coroots of the datum.
//!
//! All formulas work with doubled vectors 2ν + 2ρ^∨ so that ρ^∨ never leaves the lattice.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Result, SatakeError};
use crate::poly::{Rat, ZPoly};

use super::RootDatum;

/// A finitely supported integer combination of monomials e^ν, ν ∈ X_*(T).
pub type Character = BTreeMap<Vec<i64>, i64>;

/// The character of a (possibly virtual) representation of the dual group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeylCharacter {
    mults: Character,
}

impl WeylCharacter {
    pub fn from_map(mut mults: Character) -> Self {
        mults.retain(|_, c| *c != 0);
        WeylCharacter { mults }
    }

    pub fn mults(&self) -> &Character {
        &self.mults
    }

    pub fn mult(&self, nu: &[i64]) -> i64 {
        self.mults.get(nu).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.mults.keys()
    }

    pub fn add_scaled(&mut self, other: &WeylCharacter, k: i64) {
        for (nu, c) in &other.mults {
            *self.mults.entry(nu.clone()).or_insert(0) += k * c;
        }
        self.mults.retain(|_, c| *c != 0);
    }

    pub fn product(&self, other: &WeylCharacter) -> WeylCharacter {
        let mut out = Character::new();
        for (a, x) in &self.mults {
            for (b, y) in &other.mults {
                let s: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                *out.entry(s).or_insert(0) += x * y;
            }
        }
        WeylCharacter::from_map(out)
    }

    pub fn is_weyl_invariant(&self, datum: &RootDatum) -> bool {
        self.mults.iter().all(|(nu, c)| {
            (0..datum.semisimple_rank()).all(|i| self.mult(&datum.reflect(i, nu)) == *c)
        })
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

impl RootDatum {
    /// W-invariant symmetric form on X_*(T): (x, y) = Σ_{β ∈ Φ} ⟨β, x⟩⟨β, y⟩.
    pub fn coweight_form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.roots()
            .iter()
            .map(|r| self.pair(&r.root, x) * self.pair(&r.root, y))
            .sum()
    }

    /// Height of a coweight with respect to the dual group: ⟨ρ, ν⟩, doubled.
    fn dual_height2(&self, nu: &[i64]) -> i64 {
        self.two_rho_pair(nu)
    }

    fn require_dominant(&self, mu: &[i64]) -> Result<()> {
        self.check_coweight(mu)?;
        if !self.is_dominant(mu) {
            return Err(SatakeError::invalid(format!("{mu:?} is not dominant")));
        }
        Ok(())
    }

    /// All weights ν of the irreducible dual-group representation V_μ: dom(ν) ≤ μ.
    pub fn weight_support(&self, mu: &[i64]) -> BTreeSet<Vec<i64>> {
        let mut seen = BTreeSet::from([mu.to_vec()]);
        let mut queue = VecDeque::from([mu.to_vec()]);
        while let Some(nu) = queue.pop_front() {
            for c in self.simple_coroots() {
                let next = sub(&nu, c);
                if !seen.contains(&next) && self.dominance_leq(&self.dominant_rep(&next), mu) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Character of V_μ by the Freudenthal recursion, computed on dominant weights and spread over orbits.
    pub fn weyl_character(&self, mu: &[i64]) -> Result<WeylCharacter> {
        self.require_dominant(mu)?;
        let support = self.weight_support(mu);
        let mut dominant: Vec<Vec<i64>> =
            support.iter().filter(|nu| self.is_dominant(nu)).cloned().collect();
        dominant.sort_by_key(|nu| -self.dual_height2(nu));
        let rho2 = self.two_rho_check().to_vec();
        let top = add(&scale(mu, 2), &rho2);
        let top_norm = self.coweight_form(&top, &top);
        let mut dom_mult: HashMap<Vec<i64>, i64> = HashMap::new();
        let lookup = |dom_mult: &HashMap<Vec<i64>, i64>, x: &[i64]| -> i64 {
            if !support.contains(x) {
                return 0;
            }
            dom_mult.get(&self.dominant_rep(x)).copied().unwrap_or(0)
        };
        for nu in &dominant {
            if nu.as_slice() == mu {
                dom_mult.insert(nu.clone(), 1);
                continue;
            }
            let shifted = add(&scale(nu, 2), &rho2);
            let denom = top_norm - self.coweight_form(&shifted, &shifted);
            let mut num = 0i64;
            for r in self.positive_roots() {
                let mut k = 1;
                loop {
                    let x = add(nu, &scale(&r.coroot, k));
                    if !support.contains(&x) {
                        break;
                    }
                    num += self.coweight_form(&x, &r.coroot) * lookup(&dom_mult, &x);
                    k += 1;
                }
            }
            let num = 8 * num;
            if denom <= 0 || num % denom != 0 {
                return Err(SatakeError::Inconsistent(format!(
                    "Freudenthal recursion produced a non-integral multiplicity at {nu:?}"
                )));
            }
            dom_mult.insert(nu.clone(), num / denom);
        }
        let mults = support
            .iter()
            .map(|nu| (nu.clone(), dom_mult[&self.dominant_rep(nu)]))
            .collect();
        Ok(WeylCharacter::from_map(mults))
    }

    /// dim V_μ = ∏_{β > 0} ⟨β, μ + ρ^∨⟩ / ⟨β, ρ^∨⟩.
    pub fn weyl_dimension(&self, mu: &[i64]) -> i64 {
        let rho2 = self.two_rho_check();
        let shifted = add(&scale(mu, 2), rho2);
        let mut v = Rat::from_integer(1);
        for r in self.positive_roots() {
            v *= Rat::new(self.pair(&r.root, &shifted) as i128, self.pair(&r.root, rho2) as i128);
        }
        assert!(v.is_integer(), "Weyl dimension must be integral");
        *v.numer() as i64
    }

    /// Multiplicities of irreducibles in a W-invariant virtual character, by peeling highest weights.
    pub fn decompose(&self, chi: &WeylCharacter) -> Result<BTreeMap<Vec<i64>, i64>> {
        let mut rest = chi.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest
            .weights()
            .filter(|nu| self.is_dominant(nu))
            .max_by_key(|nu| (self.dual_height2(nu), (*nu).clone()))
            .cloned()
        {
            let c = rest.mult(&top);
            rest.add_scaled(&self.weyl_character(&top)?, -c);
            out.insert(top, c);
        }
        if !rest.is_zero() {
            return Err(SatakeError::Inconsistent("character is not W-invariant".into()));
        }
        Ok(out)
    }

    /// Multiplicity of V_ν in V_μ ⊗ V_λ.
    pub fn tensor_multiplicity(&self, mu: &[i64], lambda: &[i64], nu: &[i64]) -> Result<i64> {
        self.require_dominant(nu)?;
        Ok(self
            .tensor_decomposition(mu, lambda)?
            .get(nu)
            .copied()
            .unwrap_or(0))
    }

    pub fn tensor_decomposition(&self, mu: &[i64], lambda: &[i64]) -> Result<BTreeMap<Vec<i64>, i64>> {
        let prod = self.weyl_character(mu)?.product(&self.weyl_character(lambda)?);
        self.decompose(&prod)
    }

    /// Σ over multisets of positive coroots summing to β of q^{#parts}.
    /// Zero unless β is a nonnegative integral combination of simple coroots.
    pub fn q_kostant_partition(&self, beta: &[i64]) -> ZPoly {
        let Some(coords) = self.coroot_lattice_coords(beta) else {
            return ZPoly::zero();
        };
        let parts: Vec<Vec<i64>> =
            self.positive_roots().iter().map(|r| r.coroot_simple.clone()).collect();
        let mut memo = HashMap::new();
        q_partitions(&parts, 0, coords, &mut memo)
    }

    /// Lusztig's q-analogue of weight multiplicity: Σ_w ε(w) P_q(w(λ+ρ^∨) − (μ+ρ^∨)).
    pub fn kostka_foulkes(&self, lambda: &[i64], mu: &[i64]) -> ZPoly {
        self.alternating_partition_sum(lambda, mu, true)
    }

    /// Kostant's multiplicity formula; an independent check on the Freudenthal recursion.
    pub fn kostant_multiplicity(&self, lambda: &[i64], nu: &[i64]) -> i64 {
        self.alternating_partition_sum(lambda, nu, false).eval(1) as i64
    }

    fn alternating_partition_sum(&self, lambda: &[i64], mu: &[i64], graded: bool) -> ZPoly {
        let rho2 = self.two_rho_check();
        let top = add(&scale(lambda, 2), rho2);
        let base = add(&scale(mu, 2), rho2);
        let parts: Vec<Vec<i64>> =
            self.positive_roots().iter().map(|r| r.coroot_simple.clone()).collect();
        let mut memo = HashMap::new();
        let weyl = self.weyl();
        let mut total = ZPoly::zero();
        for w in weyl.elements() {
            let d2 = sub(&weyl.act(w, &top), &base);
            if d2.iter().any(|x| x % 2 != 0) {
                continue;
            }
            let d: Vec<i64> = d2.iter().map(|x| x / 2).collect();
            let Some(coords) = self.coroot_lattice_coords(&d) else {
                continue;
            };
            let mut p = q_partitions(&parts, 0, coords, &mut memo);
            if !graded {
                p = ZPoly::constant(p.eval(1) as i64);
            }
            total = if weyl.sign(w) > 0 { &total + &p } else { &total - &p };
        }
        total
    }
}

fn q_partitions(
    parts: &[Vec<i64>],
    from: usize,
    target: Vec<i64>,
    memo: &mut HashMap<(usize, Vec<i64>), ZPoly>,
) -> ZPoly {
    if target.iter().any(|&c| c < 0) {
        return ZPoly::zero();
    }
    if target.iter().all(|&c| c == 0) {
        return ZPoly::one();
    }
    if from == parts.len() {
        return ZPoly::zero();
    }
    let key = (from, target);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let mut total = ZPoly::zero();
    let mut rest = key.1.clone();
    let mut k = 0;
    while rest.iter().all(|&c| c >= 0) {
        let sub_count = q_partitions(parts, from + 1, rest.clone(), memo);
        total += &sub_count.shift(k);
        rest = sub(&rest, &parts[from]);
        k += 1;
    }
    memo.insert(key, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_character() {
        let d = RootDatum::preset("SL3").unwrap();
        let chi = d.weyl_character(&[0, 0]).unwrap();
        assert_eq!(chi.mults().len(), 1);
        assert_eq!(chi.mult(&[0, 0]), 1);
    }

    #[test]
    fn pgl2_strings() {
        let d = RootDatum::preset("PGL2").unwrap();
        for m in 0..7 {
            let chi = d.weyl_character(&[m]).unwrap();
            let expected: Character = (0..=m).map(|k| (vec![m - 2 * k], 1)).collect();
            assert_eq!(chi.mults(), &expected);
        }
    }

    #[test]
    fn sl3_adjoint() {
        // SL3 coweights in the simple coroot basis; θ^∨ = α1^∨ + α2^∨.
        let d = RootDatum::preset("SL3").unwrap();
        let chi = d.weyl_character(&[1, 1]).unwrap();
        assert_eq!(chi.mult(&[0, 0]), 2);
        assert_eq!(chi.dimension(), 8);
        for r in d.roots() {
            assert_eq!(chi.mult(&r.coroot), 1);
        }
    }

    #[test]
    fn freudenthal_matches_kostant() {
        for name in ["SL3", "Sp4", "SO5", "G2"] {
            let d = RootDatum::preset(name).unwrap();
            for mu in d.dominant_up_to(6, 0) {
                let chi = d.weyl_character(&mu).unwrap();
                for nu in chi.weights() {
                    assert_eq!(chi.mult(nu), d.kostant_multiplicity(&mu, nu), "{name} {mu:?} {nu:?}");
                }
            }
        }
    }

    #[test]
    fn sl2_tensor_square() {
        let d = RootDatum::preset("PGL2").unwrap();
        let dec = d.tensor_decomposition(&[1], &[1]).unwrap();
        assert_eq!(dec, BTreeMap::from([(vec![2], 1), (vec![0], 1)]));
    }

    #[test]
    fn sl3_adjoint_tensor_square() {
        let d = RootDatum::preset("SL3").unwrap();
        let dec = d.tensor_decomposition(&[1, 1], &[1, 1]).unwrap();
        // coweights with adjoint coordinates (2,2), (3,0), (0,3), (1,1) ×2, (0,0)
        let by_adjoint: BTreeMap<Vec<i64>, i64> =
            dec.iter().map(|(nu, c)| (d.adjoint_coords(nu), *c)).collect();
        let expected = BTreeMap::from([
            (vec![2, 2], 1),
            (vec![3, 0], 1),
            (vec![0, 3], 1),
            (vec![1, 1], 2),
            (vec![0, 0], 1),
        ]);
        assert_eq!(by_adjoint, expected);
        let total: i64 = dec.iter().map(|(nu, c)| c * d.weyl_dimension(nu)).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn q_partitions_small() {
        let d = RootDatum::preset("SL3").unwrap();
        assert_eq!(d.q_kostant_partition(&[0, 0]), ZPoly::one());
        assert_eq!(d.q_kostant_partition(&[1, 0]), ZPoly::monomial(1, 1));
        assert_eq!(d.q_kostant_partition(&[1, 1]), ZPoly::new(vec![0, 1, 1]));
        assert_eq!(d.q_kostant_partition(&[-1, 0]), ZPoly::zero());
    }

    #[test]
    fn kostka_foulkes_sl2() {
        let d = RootDatum::preset("SL2").unwrap();
        // K_{λμ}(q) = q^{(λ−μ)/2} for sl2
        assert_eq!(d.kostka_foulkes(&[2], &[0]), ZPoly::monomial(1, 2));
        assert_eq!(d.kostka_foulkes(&[1], &[1]), ZPoly::one());
        let p = RootDatum::preset("PGL2").unwrap();
        assert_eq!(p.kostka_foulkes(&[2], &[0]), ZPoly::monomial(1, 1));
    }
}
