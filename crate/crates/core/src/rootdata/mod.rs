//! Split reductive root data, their Weyl groups, and dominance combinatorics.
//!
//! Coweights are integer vectors in a fixed basis of X_*(T) chosen per preset;
//! characters are integer vectors in the dual basis, so the pairing is the dot product.
//! Adjoint coordinates of a coweight λ are the values (⟨α_i, λ⟩)_i on the simple roots.

mod character;
mod weyl;

pub use character::{Character, WeylCharacter};
pub use weyl::{identity as identity_matrix, mat_mul, mat_vec, Matrix, WeylElt, WeylGroup};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Result, SatakeError};
use crate::poly::Rat;

pub type Coweight = Vec<i64>;

/// A root together with its coroot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPair {
    /// Coordinates in the dual basis of X^*(T).
    pub root: Vec<i64>,
    /// Coordinates in the basis of X_*(T).
    pub coroot: Vec<i64>,
    /// Expansion of the root in simple roots.
    pub root_simple: Vec<i64>,
    /// Expansion of the coroot in simple coroots.
    pub coroot_simple: Vec<i64>,
}

impl RootPair {
    pub fn is_positive(&self) -> bool {
        self.root_simple.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.root_simple.iter().sum()
    }
}

/// A finitely generated abelian group ⊕ Z/d_i ⊕ Z^r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub torsion: Vec<i64>,
    pub free_rank: usize,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    cartan: Matrix,
    coweight_basis: Matrix,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    /// Positive roots first (sorted by height, then lexicographically), followed by their negatives.
    roots: Vec<RootPair>,
    n_positive: usize,
    two_rho: Vec<i64>,
    two_rho_check: Vec<i64>,
    weyl: WeylGroup,
    components: Vec<Vec<usize>>,
    fundamental_group: AbelianGroup,
    /// Inverse Cartan matrix over Q, used for simple-coroot expansions.
    cartan_inv: Vec<Vec<Rat>>,
}

/// JSON schema for explicit root data.
///
/// `cartan[i][j]` = ⟨α_i, α_j^∨⟩. `coroots_in_basis[j]` gives α_j^∨ in the chosen basis of X_*(T).
/// `coweight_basis` rows express that basis in an ambient Z^rank (display only).
/// `roots_in_dual_basis` is required when X_*(T) has larger rank than the root system.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DatumJson {
    pub name: String,
    pub cartan: Matrix,
    pub coweight_basis: Matrix,
    pub coroots_in_basis: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots_in_dual_basis: Option<Matrix>,
}

const C2_CARTAN: [[i64; 2]; 2] = [[2, -1], [-2, 2]];
const B2_CARTAN: [[i64; 2]; 2] = [[2, -2], [-1, 2]];
const G2_CARTAN: [[i64; 2]; 2] = [[2, -1], [-3, 2]];
const A2_CARTAN: [[i64; 2]; 2] = [[2, -1], [-1, 2]];

fn to_matrix<const N: usize>(a: [[i64; N]; N]) -> Matrix {
    a.iter().map(|r| r.to_vec()).collect()
}

fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j]).collect())
        .collect()
}

/// Simply connected form: X_*(T) is the coroot lattice with basis the simple coroots.
fn simply_connected(name: &str, cartan: Matrix) -> DatumJson {
    let n = cartan.len();
    DatumJson {
        name: name.into(),
        coweight_basis: weyl::identity(n),
        coroots_in_basis: weyl::identity(n),
        roots_in_dual_basis: Some(cartan.clone()),
        cartan,
    }
}

/// Adjoint form: X_*(T) is the coweight lattice with basis the fundamental coweights.
fn adjoint(name: &str, cartan: Matrix) -> DatumJson {
    let n = cartan.len();
    DatumJson {
        name: name.into(),
        coweight_basis: weyl::identity(n),
        coroots_in_basis: transpose(&cartan),
        roots_in_dual_basis: Some(weyl::identity(n)),
        cartan,
    }
}

fn single_preset(name: &str) -> Option<DatumJson> {
    let upper = name.to_ascii_uppercase();
    Some(match upper.as_str() {
        "SL2" => simply_connected("SL2", vec![vec![2]]),
        "PGL2" => adjoint("PGL2", vec![vec![2]]),
        "GL2" => DatumJson {
            name: "GL2".into(),
            cartan: vec![vec![2]],
            coweight_basis: weyl::identity(2),
            coroots_in_basis: vec![vec![1, -1]],
            roots_in_dual_basis: Some(vec![vec![1, -1]]),
        },
        "SL3" => simply_connected("SL3", to_matrix(A2_CARTAN)),
        "PGL3" => adjoint("PGL3", to_matrix(A2_CARTAN)),
        "SP4" => simply_connected("Sp4", to_matrix(C2_CARTAN)),
        "SO5" => adjoint("SO5", to_matrix(B2_CARTAN)),
        "G2" | "G2-ADJOINT" | "G2_ADJOINT" => adjoint("G2-adjoint", to_matrix(G2_CARTAN)),
        _ => return None,
    })
}

/// Direct sum of explicit data.
fn product(parts: &[DatumJson]) -> Result<DatumJson> {
    let ss: usize = parts.iter().map(|p| p.cartan.len()).sum();
    let rank: usize = parts.iter().map(|p| p.coweight_basis.len()).sum();
    let mut cartan = vec![vec![0; ss]; ss];
    let mut basis = vec![vec![0; rank]; rank];
    let mut coroots = vec![vec![0; rank]; ss];
    let mut roots = vec![vec![0; rank]; ss];
    let (mut so, mut ro) = (0, 0);
    for p in parts {
        let s = p.cartan.len();
        let r = p.coweight_basis.len();
        let proots = p.roots_in_dual_basis.clone().ok_or_else(|| {
            SatakeError::invalid("product factors need explicit roots_in_dual_basis")
        })?;
        for i in 0..s {
            for j in 0..s {
                cartan[so + i][so + j] = p.cartan[i][j];
            }
            for j in 0..r {
                coroots[so + i][ro + j] = p.coroots_in_basis[i][j];
                roots[so + i][ro + j] = proots[i][j];
            }
        }
        for i in 0..r {
            for j in 0..r {
                basis[ro + i][ro + j] = p.coweight_basis[i][j];
            }
        }
        so += s;
        ro += r;
    }
    Ok(DatumJson {
        name: parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("x"),
        cartan,
        coweight_basis: basis,
        coroots_in_basis: coroots,
        roots_in_dual_basis: Some(roots),
    })
}

/// The JSON description of a named preset (products written `SL2xPGL2`).
pub fn preset_json(name: &str) -> Result<DatumJson> {
    let parts: Vec<&str> = name.split(['x', '×', '*']).filter(|s| !s.is_empty()).collect();
    let unknown = || SatakeError::invalid(format!("unknown preset '{name}'"));
    if parts.len() == 1 {
        return single_preset(parts[0]).ok_or_else(unknown);
    }
    let jsons: Vec<DatumJson> = parts
        .iter()
        .map(|p| single_preset(p).ok_or_else(unknown))
        .collect::<Result<_>>()?;
    product(&jsons)
}

pub const PRESETS: [&str; 8] = ["SL2", "PGL2", "GL2", "SL3", "PGL3", "Sp4", "SO5", "G2-adjoint"];

pub(crate) fn rat_inverse(m: &Matrix) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rat> = r.iter().map(|&x| Rat::from_integer(x as i128)).collect();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Diagonal of the Smith normal form of an integer matrix.
fn smith_diagonal(m: &Matrix) -> Vec<i64> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = vec![];
    let mut t = 0;
    while t < rows.min(cols) {
        // pick the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for r in a.iter_mut() {
            r.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let f = a[i][t] / a[t][t];
            for j in t..cols {
                a[i][j] -= f * a[t][j];
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let f = a[t][j] / a[t][t];
            for i in t..rows {
                a[i][j] -= f * a[i][t];
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let p = a[t][t];
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn preset(name: &str) -> Result<Self> {
        Self::from_json(&preset_json(name)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: DatumJson = serde_json::from_str(s).map_err(|e| {
            SatakeError::invalid(format!(
                "datum JSON: {e} (coroot coordinates must be integers, i.e. the lattice must contain the coroot lattice)"
            ))
        })?;
        Self::from_json(&json)
    }

    pub fn from_json(json: &DatumJson) -> Result<Self> {
        let cartan = json.cartan.clone();
        let ss = cartan.len();
        if ss == 0 || cartan.iter().any(|r| r.len() != ss) {
            return Err(SatakeError::invalid("Cartan matrix must be square and nonempty"));
        }
        for i in 0..ss {
            if cartan[i][i] != 2 {
                return Err(SatakeError::invalid("Cartan matrix diagonal must be 2"));
            }
            for j in 0..ss {
                if i != j {
                    let (a, b) = (cartan[i][j], cartan[j][i]);
                    if !(-3..=0).contains(&a) || ((a == 0) != (b == 0)) {
                        return Err(SatakeError::invalid(format!(
                            "invalid Cartan entries at ({i},{j})"
                        )));
                    }
                    if a * b > 3 {
                        return Err(SatakeError::invalid("Cartan matrix is not of finite type"));
                    }
                }
            }
        }
        let rank = json.coweight_basis.len();
        if rank < ss || json.coweight_basis.iter().any(|r| r.len() != rank) {
            return Err(SatakeError::invalid(
                "coweight_basis must be square of size at least the semisimple rank",
            ));
        }
        let coroots = json.coroots_in_basis.clone();
        if coroots.len() != ss || coroots.iter().any(|r| r.len() != rank) {
            return Err(SatakeError::invalid("coroots_in_basis has the wrong shape"));
        }
        let roots = match &json.roots_in_dual_basis {
            Some(r) => r.clone(),
            None => {
                if rank != ss {
                    return Err(SatakeError::invalid(
                        "roots_in_dual_basis is required when X_*(T) has central directions",
                    ));
                }
                // solve cartan = roots · coroots^T over Q and require integrality
                let inv = rat_inverse(&transpose(&coroots)).ok_or_else(|| {
                    SatakeError::invalid("coroots are linearly dependent")
                })?;
                let mut out = vec![vec![0; rank]; ss];
                for i in 0..ss {
                    for j in 0..rank {
                        let v: Rat = (0..ss)
                            .map(|k| Rat::from_integer(cartan[i][k] as i128) * inv[k][j])
                            .sum();
                        if !v.is_integer() {
                            return Err(SatakeError::invalid(
                                "lattice does not support integral roots (root pairing not integral)",
                            ));
                        }
                        out[i][j] = *v.numer() as i64;
                    }
                }
                out
            }
        };
        if roots.len() != ss || roots.iter().any(|r| r.len() != rank) {
            return Err(SatakeError::invalid("roots_in_dual_basis has the wrong shape"));
        }
        for i in 0..ss {
            for j in 0..ss {
                if dot(&roots[i], &coroots[j]) != cartan[i][j] {
                    return Err(SatakeError::invalid(format!(
                        "⟨α_{i}, α_{j}^∨⟩ does not match the Cartan matrix"
                    )));
                }
            }
        }
        let cartan_inv = rat_inverse(&cartan)
            .ok_or_else(|| SatakeError::invalid("Cartan matrix is singular"))?;

        let all_roots = Self::close_roots(&cartan, &roots, &coroots, rank)?;
        let n_positive = all_roots.iter().filter(|r| r.is_positive()).count();
        let two_rho: Vec<i64> = (0..rank)
            .map(|k| all_roots[..n_positive].iter().map(|r| r.root[k]).sum())
            .collect();
        let two_rho_check: Vec<i64> = (0..rank)
            .map(|k| all_roots[..n_positive].iter().map(|r| r.coroot[k]).sum())
            .collect();

        let gens: Vec<Matrix> = (0..ss)
            .map(|i| {
                (0..rank)
                    .map(|r| {
                        (0..rank)
                            .map(|c| i64::from(r == c) - coroots[i][r] * roots[i][c])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let weyl = WeylGroup::generate(gens, rank)?;

        let components = Self::dynkin_components(&cartan);
        let mut snf = smith_diagonal(&coroots);
        let free_rank = rank - snf.len();
        snf.retain(|&d| d > 1);
        let datum = RootDatum {
            name: json.name.clone(),
            rank,
            cartan,
            coweight_basis: json.coweight_basis.clone(),
            simple_roots: roots,
            simple_coroots: coroots,
            roots: all_roots,
            n_positive,
            two_rho,
            two_rho_check,
            weyl,
            components,
            fundamental_group: AbelianGroup { torsion: snf, free_rank },
            cartan_inv,
        };
        datum.validate()?;
        Ok(datum)
    }

    /// All roots with their coroots, generated by simple reflections from the simple pairs.
    fn close_roots(
        cartan: &Matrix,
        roots: &[Vec<i64>],
        coroots: &[Vec<i64>],
        rank: usize,
    ) -> Result<Vec<RootPair>> {
        let ss = cartan.len();
        let unit = |i: usize| -> Vec<i64> { (0..ss).map(|k| i64::from(k == i)).collect() };
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..ss {
            seen.insert(unit(i), unit(i));
            queue.push_back(unit(i));
        }
        while let Some(b) = queue.pop_front() {
            let c = seen[&b].clone();
            for j in 0..ss {
                let pair_b: i64 = (0..ss).map(|i| b[i] * cartan[i][j]).sum();
                let pair_c: i64 = (0..ss).map(|i| c[i] * cartan[j][i]).sum();
                let mut nb = b.clone();
                nb[j] -= pair_b;
                let mut nc = c.clone();
                nc[j] -= pair_c;
                if !seen.contains_key(&nb) {
                    if seen.len() > 1000 {
                        return Err(SatakeError::invalid("root system is infinite"));
                    }
                    seen.insert(nb.clone(), nc);
                    queue.push_back(nb);
                }
            }
        }
        let mut pairs: Vec<RootPair> = seen
            .into_iter()
            .map(|(b, c)| {
                let root = (0..rank).map(|k| (0..ss).map(|i| b[i] * roots[i][k]).sum()).collect();
                let coroot = (0..rank)
                    .map(|k| (0..ss).map(|i| c[i] * coroots[i][k]).sum())
                    .collect();
                RootPair { root, coroot, root_simple: b, coroot_simple: c }
            })
            .collect();
        pairs.sort_by(|x, y| {
            (!x.is_positive(), x.height().abs(), &x.root_simple)
                .cmp(&(!y.is_positive(), y.height().abs(), &y.root_simple))
        });
        Ok(pairs)
    }

    fn dynkin_components(cartan: &Matrix) -> Vec<Vec<usize>> {
        let n = cartan.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = vec![];
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![];
            let mut stack = vec![s];
            comp[s] = id;
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..n {
                    if cartan[i][j] != 0 && comp[j] == usize::MAX {
                        comp[j] = id;
                        stack.push(j);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    fn validate(&self) -> Result<()> {
        for r in &self.roots {
            if dot(&r.root, &r.coroot) != 2 {
                return Err(SatakeError::Inconsistent("⟨α, α^∨⟩ ≠ 2".into()));
            }
        }
        for i in 0..self.semisimple_rank() {
            if dot(&self.two_rho, &self.simple_coroots[i]) != 2 {
                return Err(SatakeError::Inconsistent("⟨2ρ, α_i^∨⟩ ≠ 2".into()));
            }
        }
        // the Weyl group permutes the roots
        for w in self.weyl.elements() {
            for r in &self.roots {
                let image = self.weyl.act(w, &r.coroot);
                if !self.roots.iter().any(|s| s.coroot == image) {
                    return Err(SatakeError::Inconsistent("Weyl group does not permute coroots".into()));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Rank of X_*(T).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }

    pub fn coweight_basis(&self) -> &Matrix {
        &self.coweight_basis
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[RootPair] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[RootPair] {
        &self.roots[..self.n_positive]
    }

    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    /// 2ρ^∨, the sum of positive coroots.
    pub fn two_rho_check(&self) -> &[i64] {
        &self.two_rho_check
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// Simple indices of each irreducible component of the Dynkin diagram.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn fundamental_group(&self) -> &AbelianGroup {
        &self.fundamental_group
    }

    pub fn to_json(&self) -> DatumJson {
        DatumJson {
            name: self.name.clone(),
            cartan: self.cartan.clone(),
            coweight_basis: self.coweight_basis.clone(),
            coroots_in_basis: self.simple_coroots.clone(),
            roots_in_dual_basis: Some(self.simple_roots.clone()),
        }
    }

    /// The Langlands dual datum: roots and coroots swap, X_*(T) ↔ X^*(T).
    pub fn dual(&self) -> Result<RootDatum> {
        Self::from_json(&DatumJson {
            name: format!("dual({})", self.name),
            cartan: transpose(&self.cartan),
            coweight_basis: weyl::identity(self.rank),
            coroots_in_basis: self.simple_roots.clone(),
            roots_in_dual_basis: Some(self.simple_coroots.clone()),
        })
    }

    pub fn check_coweight(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.rank {
            return Err(SatakeError::invalid(format!(
                "coweight {lambda:?} has {} coordinates, expected {}",
                lambda.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// ⟨χ, λ⟩ for χ ∈ X^*(T), λ ∈ X_*(T).
    pub fn pair(&self, chi: &[i64], lambda: &[i64]) -> i64 {
        dot(chi, lambda)
    }

    /// ⟨2ρ, λ⟩
    pub fn two_rho_pair(&self, lambda: &[i64]) -> i64 {
        dot(&self.two_rho, lambda)
    }

    /// (⟨α_i, λ⟩)_i: coordinates of the image of λ in X_*(T_adj) in the fundamental coweight basis.
    pub fn adjoint_coords(&self, lambda: &[i64]) -> Vec<i64> {
        self.simple_roots.iter().map(|a| dot(a, lambda)).collect()
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> bool {
        self.adjoint_coords(lambda).iter().all(|&c| c >= 0)
    }

    pub fn is_regular(&self, lambda: &[i64]) -> bool {
        self.adjoint_coords(lambda).iter().all(|&c| c != 0)
    }

    /// Expansion of d in simple coroots, if d lies in their Q-span.
    pub fn simple_coroot_coords(&self, d: &[i64]) -> Option<Vec<Rat>> {
        let pairs = self.adjoint_coords(d);
        let ss = self.semisimple_rank();
        let c: Vec<Rat> = (0..ss)
            .map(|j| {
                (0..ss)
                    .map(|i| self.cartan_inv[j][i] * Rat::from_integer(pairs[i] as i128))
                    .sum()
            })
            .collect();
        // verify that d has no central component
        for k in 0..self.rank {
            let v: Rat = (0..ss)
                .map(|j| c[j] * Rat::from_integer(self.simple_coroots[j][k] as i128))
                .sum();
            if v != Rat::from_integer(d[k] as i128) {
                return None;
            }
        }
        Some(c)
    }

    /// Integral simple-coroot expansion, if d lies in the coroot lattice.
    pub fn coroot_lattice_coords(&self, d: &[i64]) -> Option<Vec<i64>> {
        let c = self.simple_coroot_coords(d)?;
        c.iter()
            .map(|x| x.is_integer().then(|| *x.numer() as i64))
            .collect()
    }

    pub fn same_coset(&self, lambda: &[i64], mu: &[i64]) -> bool {
        let d: Vec<i64> = mu.iter().zip(lambda).map(|(a, b)| a - b).collect();
        self.coroot_lattice_coords(&d).is_some()
    }

    /// λ ≤ μ: μ − λ is a nonnegative integer combination of simple coroots.
    /// Elements of different cosets of the coroot lattice are incomparable.
    pub fn dominance_leq(&self, lambda: &[i64], mu: &[i64]) -> bool {
        let d: Vec<i64> = mu.iter().zip(lambda).map(|(a, b)| a - b).collect();
        self.coroot_lattice_coords(&d)
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let p = dot(&self.simple_roots[i], lambda);
        lambda
            .iter()
            .zip(&self.simple_coroots[i])
            .map(|(x, c)| x - p * c)
            .collect()
    }

    /// The dominant element of the Weyl orbit, with a Weyl element carrying λ to it.
    pub fn dominant_rep_with(&self, lambda: &[i64]) -> (Vec<i64>, WeylElt) {
        let mut x = lambda.to_vec();
        let mut w = self.weyl.identity();
        while let Some(i) = (0..self.semisimple_rank()).find(|&i| dot(&self.simple_roots[i], &x) < 0) {
            x = self.reflect(i, &x);
            w = self.weyl.mul_simple_left(i, w);
        }
        (x, w)
    }

    pub fn dominant_rep(&self, lambda: &[i64]) -> Vec<i64> {
        self.dominant_rep_with(lambda).0
    }

    /// λ_-: the unique antidominant element of the Weyl orbit.
    pub fn antidominant_rep(&self, lambda: &[i64]) -> Vec<i64> {
        let mut x = lambda.to_vec();
        while let Some(i) = (0..self.semisimple_rank()).find(|&i| dot(&self.simple_roots[i], &x) > 0) {
            x = self.reflect(i, &x);
        }
        x
    }

    pub fn weyl_orbit(&self, lambda: &[i64]) -> BTreeSet<Vec<i64>> {
        self.weyl.elements().map(|w| self.weyl.act(w, lambda)).collect()
    }

    pub fn w0(&self, lambda: &[i64]) -> Vec<i64> {
        self.weyl.act(self.weyl.longest(), lambda)
    }

    /// Dominant coweights μ with ⟨2ρ, μ⟩ ≤ bound whose central part lies in a bounded box.
    ///
    /// Central characters are bounded by `central_box` in absolute value (for GL2, |μ_1 + μ_2|).
    pub fn dominant_up_to(&self, bound: i64, central_box: i64) -> Vec<Vec<i64>> {
        let mut out = BTreeSet::new();
        let limit = bound.max(0) + central_box.abs() + 1;
        let r = self.rank as u32;
        let side = 2 * limit + 1;
        let total = (side as u64).pow(r);
        if total > 2_000_000 {
            return vec![];
        }
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..self.rank)
                .map(|_| {
                    let x = (c % side as u64) as i64 - limit;
                    c /= side as u64;
                    x
                })
                .collect();
            if !self.is_dominant(&v) || self.two_rho_pair(&v) > bound {
                continue;
            }
            if self.fundamental_group.free_rank > 0 && !self.central_normalized(&v, central_box) {
                continue;
            }
            out.insert(v);
        }
        out.into_iter().collect()
    }

    /// For data with central directions, keep only representatives whose central projection is small.
    fn central_normalized(&self, v: &[i64], central_box: i64) -> bool {
        // ⟨χ, v⟩ for characters χ vanishing on all coroots measure the central part
        let ker = self.central_characters();
        ker.iter().all(|chi| dot(chi, v).abs() <= central_box)
    }

    /// A basis of characters orthogonal to every coroot (nonempty only when there is a center).
    pub fn central_characters(&self) -> Vec<Vec<i64>> {
        // brute-force small integer vectors; ranks here are tiny
        let r = self.rank;
        let mut out: Vec<Vec<i64>> = vec![];
        let free = self.fundamental_group.free_rank;
        if free == 0 {
            return out;
        }
        let side = 5i64;
        let total = (side as u64).pow(r as u32);
        for code in 1..total {
            let mut c = code;
            let v: Vec<i64> = (0..r)
                .map(|_| {
                    let x = (c % side as u64) as i64 - side / 2;
                    c /= side as u64;
                    x
                })
                .collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            if self.simple_coroots.iter().all(|a| dot(&v, a) == 0)
                && !out.iter().any(|u| Self::proportional(u, &v))
            {
                out.push(v);
                if out.len() == free {
                    break;
                }
            }
        }
        out
    }

    fn proportional(a: &[i64], b: &[i64]) -> bool {
        (0..a.len()).all(|i| (i..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
    }

    /// The highest root of each irreducible component.
    pub fn highest_roots(&self) -> Vec<&RootPair> {
        self.components
            .iter()
            .map(|comp| {
                self.positive_roots()
                    .iter()
                    .filter(|r| {
                        r.root_simple
                            .iter()
                            .enumerate()
                            .all(|(i, &c)| c == 0 || comp.contains(&i))
                    })
                    .max_by_key(|r| r.height())
                    .expect("nonempty component")
            })
            .collect()
    }

    /// |G/P_J(F_q)| as a polynomial in q, counted by lengths of minimal coset representatives.
    pub fn flag_poincare(&self, subset: &[usize]) -> crate::poly::ZPoly {
        let mut coeffs = vec![0i64; 1];
        for w in self.weyl.min_coset_reps(subset) {
            let l = self.weyl.length(w);
            if coeffs.len() <= l {
                coeffs.resize(l + 1, 0);
            }
            coeffs[l] += 1;
        }
        crate::poly::ZPoly::new(coeffs)
    }
}
