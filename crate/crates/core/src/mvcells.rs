//! Cell decompositions of S^±_ν ∩ Gr^μ assembled from positively folded galleries.
//!
//! A gallery δ with target ν' contributes X_δ ⊆ S^-_{w0(ν')} ∩ Gr^μ. Its cells are the product of
//! the attracting cell of δ0 in G/P_{t_0} with one Richardson-type fiber per step j ≥ 1:
//! R·τ_j·Q/Q ∩ B_j·δ_j·Q/Q inside the flag variety of the Levi quotient of P_{t'_j}, where
//! R, Q are the parahorics of types t_{j−1}, t_j and B_j is the Borel attracted by a regular
//! antidominant cocharacter, transported to the standard frame.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::affine_galleries::{act_hom, CombinatorialGallery, GalleryFamily, TypeSet};
use crate::deodhar::translated_cells;
use crate::error::{Result, SatakeError};
use crate::poly::ZPoly;
use crate::rootdata::{mat_mul, RootDatum, WeylElt};

/// Galleries beyond this count are refused.
pub const GALLERY_BUDGET: u128 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitSign {
    Plus,
    Minus,
}

impl std::str::FromStr for OrbitSign {
    type Err = SatakeError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" | "s+" => Ok(OrbitSign::Plus),
            "minus" | "-" | "s-" => Ok(OrbitSign::Minus),
            _ => Err(SatakeError::invalid(format!("unknown orbit sign '{s}' (use plus or minus)"))),
        }
    }
}

/// A cell A^a × Gm^b.
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellList {
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub sign: OrbitSign,
    /// Sorted multiset of cells.
    pub cells: Vec<Cell>,
}

impl CellList {
    pub fn poly(&self) -> ZPoly {
        let mut p = ZPoly::zero();
        for &(a, b) in &self.cells {
            p += &ZPoly::cell(a, b);
        }
        p
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().map(|(a, b)| a + b).max()
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.cells.iter().filter(|(a, b)| a + b == d).count()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn to_json(&self, expected_dim: i64) -> serde_json::Value {
        let top = if expected_dim >= 0 { self.count_of_dim(expected_dim as usize) } else { 0 };
        serde_json::json!({
            "mu": self.mu,
            "nu": self.nu,
            "sign": match self.sign { OrbitSign::Plus => "plus", OrbitSign::Minus => "minus" },
            "cells": self.cells.iter().map(|(a, b)| serde_json::json!({"A": a, "Gm": b})).collect::<Vec<_>>(),
            "poly": self.poly().coeffs(),
            "dim": expected_dim,
            "top_cells": top,
        })
    }

    /// Inverse of [`CellList::to_json`]; derived fields are ignored.
    pub fn from_json(v: &serde_json::Value) -> Result<CellList> {
        let bad = || SatakeError::invalid("malformed cell list");
        let ints = |key: &str| -> Result<Vec<i64>> {
            v.get(key).and_then(|x| x.as_array()).ok_or_else(bad)?.iter().map(|x| x.as_i64().ok_or_else(bad)).collect()
        };
        let sign = v.get("sign").and_then(|x| x.as_str()).ok_or_else(bad)?.parse()?;
        let mut cells = vec![];
        for c in v.get("cells").and_then(|x| x.as_array()).ok_or_else(bad)? {
            let get = |k: &str| c.get(k).and_then(|x| x.as_u64()).map(|x| x as usize).ok_or_else(bad);
            cells.push((get("A")?, get("Gm")?));
        }
        Ok(CellList { mu: ints("mu")?, nu: ints("nu")?, sign, cells })
    }
}

/// Per-step data that depends only on the gallery type.
struct StepData {
    /// Minimal representatives of the cosets wW_Q inside W_R τ W_Q.
    double_coset: Vec<WeylElt>,
    /// Elements of W_Q.
    parabolic_q: Vec<WeylElt>,
}

/// All cells of Gr^μ, sorted by gallery target.
pub struct MvTable {
    mu: Vec<i64>,
    family: GalleryFamily,
    /// Adjoint target → cells of the galleries with that target.
    by_target: BTreeMap<Vec<i64>, Vec<Cell>>,
    positive_galleries: usize,
}

impl MvTable {
    pub fn new(datum: &RootDatum, mu: &[i64]) -> Result<Self> {
        Self::with_family(datum, mu, 0)
    }

    /// Uses the minimal gallery selected by `choice` (see [`GalleryFamily::with_path`]).
    pub fn with_family(datum: &RootDatum, mu: &[i64], choice: usize) -> Result<Self> {
        datum.check_coweight(mu)?;
        if !datum.is_dominant(mu) {
            return Err(SatakeError::invalid(format!("{mu:?} is not dominant")));
        }
        let family = GalleryFamily::with_path(datum, &datum.adjoint_coords(mu), choice)?;
        if family.count() > GALLERY_BUDGET {
            return Err(SatakeError::Budget(format!(
                "{} galleries exceed the enumeration budget of {GALLERY_BUDGET}",
                family.count()
            )));
        }
        let n_pos = datum.positive_roots().len();
        let steps = step_data(&family);
        let galleries: Vec<CombinatorialGallery> = family.enumerate().collect();
        let per_gallery: Vec<(Vec<i64>, Vec<Cell>)> = galleries
            .par_iter()
            .map(|g| {
                let cells = gallery_cells(&family, &steps, n_pos, g)?;
                Ok((family.target(g)?, cells))
            })
            .collect::<Result<_>>()?;
        let mut by_target: BTreeMap<Vec<i64>, Vec<Cell>> = BTreeMap::new();
        let mut positive_galleries = 0;
        for (t, cells) in per_gallery {
            if !cells.is_empty() {
                positive_galleries += 1;
            }
            by_target.entry(t).or_default().extend(cells);
        }
        for cells in by_target.values_mut() {
            cells.sort();
        }
        by_target.retain(|_, c| !c.is_empty());
        Ok(MvTable { mu: mu.to_vec(), family, by_target, positive_galleries })
    }

    pub fn family(&self) -> &GalleryFamily {
        &self.family
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    /// Number of galleries with a nonempty cell.
    pub fn nonempty_galleries(&self) -> usize {
        self.positive_galleries
    }

    /// Adjoint targets with nonempty cells.
    pub fn targets(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.by_target.keys()
    }

    /// Cells of S^sign_ν ∩ Gr^μ.
    pub fn cells(&self, datum: &RootDatum, nu: &[i64], sign: OrbitSign) -> Result<CellList> {
        datum.check_coweight(nu)?;
        let key_nu = match sign {
            OrbitSign::Plus => nu.to_vec(),
            OrbitSign::Minus => datum.w0(nu),
        };
        let cells = if datum.same_coset(&self.mu, nu) {
            self.by_target.get(&datum.adjoint_coords(&key_nu)).cloned().unwrap_or_default()
        } else {
            vec![]
        };
        Ok(CellList { mu: self.mu.clone(), nu: nu.to_vec(), sign, cells })
    }

    /// All ν (in X_*(T)) with S^+_ν ∩ Gr^μ nonempty, with their cells.
    pub fn all_plus(&self, datum: &RootDatum) -> Result<Vec<CellList>> {
        self.by_target
            .iter()
            .map(|(adj, cells)| {
                Ok(CellList { mu: self.mu.clone(), nu: lift(datum, &self.mu, adj)?, sign: OrbitSign::Plus, cells: cells.clone() })
            })
            .collect()
    }
}

/// The coweight ν ∈ μ + Q^∨ with the given adjoint coordinates.
pub fn lift(datum: &RootDatum, mu: &[i64], nu_adj: &[i64]) -> Result<Vec<i64>> {
    let mu_adj = datum.adjoint_coords(mu);
    let n = datum.semisimple_rank();
    let mut nu = mu.to_vec();
    // μ − ν = Σ c_j α_j^∨ with C·c = μ_adj − ν_adj
    let diff: Vec<i64> = (0..n).map(|i| mu_adj[i] - nu_adj[i]).collect();
    let inv = crate::rootdata::rat_inverse(datum.cartan()).expect("Cartan matrix invertible");
    for j in 0..n {
        let c: crate::poly::Rat = (0..n)
            .map(|i| inv[j][i] * crate::poly::Rat::from_integer(diff[i] as i128))
            .sum();
        if !c.is_integer() {
            return Err(SatakeError::Inconsistent("gallery target leaves μ + Q^∨".into()));
        }
        let c = *c.numer() as i64;
        for (x, a) in nu.iter_mut().zip(&datum.simple_coroots()[j]) {
            *x -= c * a;
        }
    }
    Ok(nu)
}

fn step_data(family: &GalleryFamily) -> Vec<StepData> {
    let ty = family.gallery_type();
    (0..ty.len())
        .map(|j| {
            if j == 0 {
                return StepData { double_coset: vec![], parabolic_q: vec![] };
            }
            let lg = family.group(j);
            let w = lg.group();
            let r = lg.local_subset(ty.t[j - 1]);
            let q = lg.local_subset(ty.t[j]);
            let par_r = w.parabolic(&r);
            let par_q = w.parabolic(&q);
            let tau = family.tau(j);
            let mut reps = BTreeSet::new();
            for &a in &par_r {
                for &b in &par_q {
                    reps.insert(w.min_rep(w.mul(w.mul(a, tau), b), &q));
                }
            }
            StepData { double_coset: reps.into_iter().collect(), parabolic_q: par_q }
        })
        .collect()
}

fn product(a: &[Cell], b: &[Cell]) -> Vec<Cell> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &(x, y) in a {
        for &(u, v) in b {
            out.push((x + u, y + v));
        }
    }
    out
}

/// The per-step fiber over the T-fixed point of steps 0..j−1.
fn step_cells(family: &GalleryFamily, data: &StepData, j: usize, u: &crate::rootdata::Matrix, delta: WeylElt) -> Result<Vec<Cell>> {
    let ap = family.apartment();
    let ty = family.gallery_type();
    let lg = family.group(j);
    let w = lg.group();
    let small = act_hom(u, &ap.face_barycenter(ty.t_prime[j])?);
    let walls = ap.walls_through(&small);
    let alcove = ap.face_barycenter(TypeSet::empty())?;
    // the chamber at Σ'_j facing the antidominant direction
    let y = w
        .elements()
        .find(|&y| {
            let c = act_hom(&mat_mul(u, lg.matrix(y)), &alcove);
            walls.iter().all(|wall| ap.side(wall, &c) == -1)
        })
        .ok_or_else(|| SatakeError::Inconsistent("no attracting chamber at a small face".into()))?;
    let y_inv = w.inverse(y);
    let mut out = vec![];
    for &rep in &data.double_coset {
        let word = w.word(rep);
        for &q in &data.parabolic_q {
            let x = w.mul(delta, q);
            out.extend(translated_cells(w, word, y_inv, w.mul(y_inv, x)));
        }
    }
    Ok(out)
}

/// Cells of X_δ; empty when δ contributes nothing to Gr^μ.
pub fn gallery_cells_of(family: &GalleryFamily, datum: &RootDatum, g: &CombinatorialGallery) -> Result<Vec<Cell>> {
    let steps = step_data(family);
    gallery_cells(family, &steps, datum.positive_roots().len(), g)
}

fn gallery_cells(family: &GalleryFamily, steps: &[StepData], n_pos: usize, g: &CombinatorialGallery) -> Result<Vec<Cell>> {
    if family.is_degenerate() {
        return Ok(vec![(0, 0)]);
    }
    let ty = family.gallery_type();
    let g0 = family.group(0).group();
    let q0 = family.group(0).local_subset(ty.t[0]);
    let n_q = g0.length(g0.longest_of(&q0));
    let a0 = n_pos - n_q - g0.length(g.deltas[0]);
    let mut cells = vec![(a0, 0)];
    let pre = family.prefixes(g);
    for j in 1..ty.len() {
        let step = step_cells(family, &steps[j], j, &pre[j], g.deltas[j])?;
        cells = product(&cells, &step);
        if cells.is_empty() {
            break;
        }
    }
    cells.sort();
    Ok(cells)
}

/// Closed-form cell of a positively folded gallery for regular μ: A^{N−ℓ(δ0)+|J^+|} × Gm^{|J^−|}.
pub fn regular_cell(family: &GalleryFamily, datum: &RootDatum, g: &CombinatorialGallery) -> Result<Option<Cell>> {
    let fa = family.analyze(g)?;
    if !fa.positive {
        return Ok(None);
    }
    if family.is_degenerate() {
        return Ok(Some((0, 0)));
    }
    let n = datum.positive_roots().len();
    let l0 = family.group(0).group().length(g.deltas[0]);
    Ok(Some((n - l0 + fa.j_plus.len(), fa.j_minus.len())))
}

pub fn mv_decomposition(datum: &RootDatum, mu: &[i64], nu: &[i64], sign: OrbitSign) -> Result<CellList> {
    MvTable::new(datum, mu)?.cells(datum, nu, sign)
}

pub fn point_count_poly(datum: &RootDatum, mu: &[i64], nu: &[i64], sign: OrbitSign) -> Result<ZPoly> {
    Ok(mv_decomposition(datum, mu, nu, sign)?.poly())
}

/// dim S^+_ν ∩ Gr^μ = ⟨ρ, μ + ν⟩; the S^- variant has ⟨ρ, μ − ν⟩.
pub fn expected_dim(datum: &RootDatum, mu: &[i64], nu: &[i64], sign: OrbitSign) -> i64 {
    let s: Vec<i64> = match sign {
        OrbitSign::Plus => mu.iter().zip(nu).map(|(a, b)| a + b).collect(),
        OrbitSign::Minus => mu.iter().zip(nu).map(|(a, b)| a - b).collect(),
    };
    datum.two_rho_pair(&s) / 2
}

/// Number of top-dimensional cells of S^+_ν ∩ Gr^μ.
pub fn weight_multiplicity(datum: &RootDatum, mu: &[i64], nu: &[i64]) -> Result<usize> {
    let cells = mv_decomposition(datum, mu, nu, OrbitSign::Plus)?;
    let d = expected_dim(datum, mu, nu, OrbitSign::Plus);
    Ok(if d < 0 { 0 } else { cells.count_of_dim(d as usize) })
}

/// |Gr^μ(F_q)| = |G/P_μ(F_q)| · q^{⟨2ρ,μ⟩ − dim G/P_μ}.
pub fn schubert_cell_poly(datum: &RootDatum, mu: &[i64]) -> Result<ZPoly> {
    datum.check_coweight(mu)?;
    if !datum.is_dominant(mu) {
        return Err(SatakeError::invalid(format!("{mu:?} is not dominant")));
    }
    let adj = datum.adjoint_coords(mu);
    let subset: Vec<usize> = (0..adj.len()).filter(|&i| adj[i] == 0).collect();
    let flag = datum.flag_poincare(&subset);
    let dim_flag = flag.degree().unwrap_or(0) as i64;
    let extra = datum.two_rho_pair(mu) - dim_flag;
    Ok(flag.shift(extra as usize))
}

pub fn schubert_cell_count(datum: &RootDatum, mu: &[i64], q: i128) -> Result<i128> {
    Ok(schubert_cell_poly(datum, mu)?.eval(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pgl2() -> RootDatum {
        RootDatum::preset("PGL2").unwrap()
    }

    #[test]
    fn pgl2_shapes() {
        let d = pgl2();
        for m in 1..7i64 {
            let t = MvTable::new(&d, &[m]).unwrap();
            assert_eq!(t.cells(&d, &[m], OrbitSign::Minus).unwrap().cells, vec![(0, 0)]);
            assert_eq!(t.cells(&d, &[-m], OrbitSign::Minus).unwrap().cells, vec![(m as usize, 0)]);
            let mut nu = -m + 2;
            while nu < m {
                let cells = t.cells(&d, &[nu], OrbitSign::Minus).unwrap().cells;
                assert_eq!(cells, vec![(((m - nu) / 2 - 1) as usize, 1)], "μ={m} ν={nu}");
                nu += 2;
            }
            assert!(t.cells(&d, &[m - 1], OrbitSign::Minus).unwrap().is_empty());
        }
    }

    #[test]
    fn pgl2_point_counts() {
        let d = pgl2();
        assert_eq!(point_count_poly(&d, &[2], &[0], OrbitSign::Minus).unwrap(), ZPoly::q_minus_one());
        // the minuscule Schubert cell of PGL2 is P¹
        assert_eq!(schubert_cell_count(&d, &[1], 2).unwrap(), 3);
        assert_eq!(schubert_cell_count(&d, &[0], 5).unwrap(), 1);
        let gl2 = RootDatum::preset("GL2").unwrap();
        assert_eq!(schubert_cell_count(&gl2, &[1, 0], 3).unwrap(), 4);
    }

    #[test]
    fn sl3_adjoint_zero_weight() {
        let d = RootDatum::preset("SL3").unwrap();
        assert_eq!(weight_multiplicity(&d, &[1, 1], &[0, 0]).unwrap(), 2);
        assert_eq!(point_count_poly(&d, &[1, 1], &[0, 0], OrbitSign::Plus).unwrap().leading(), 2);
    }

    #[test]
    fn regular_closed_form_matches_steps() {
        for (name, mu) in [("PGL2", vec![3]), ("SL3", vec![1, 1]), ("PGL3", vec![1, 1]), ("Sp4", vec![2, 3]), ("SO5", vec![1, 1]), ("G2", vec![1, 1])] {
            let d = RootDatum::preset(name).unwrap();
            assert!(d.is_regular(&mu));
            let f = GalleryFamily::new(&d, &d.adjoint_coords(&mu)).unwrap();
            for g in f.enumerate() {
                let cells = gallery_cells_of(&f, &d, &g).unwrap();
                match regular_cell(&f, &d, &g).unwrap() {
                    Some(c) => assert_eq!(cells, vec![c], "{name} {g:?}"),
                    None => assert!(cells.is_empty(), "{name} {g:?}"),
                }
            }
        }
    }

    #[test]
    fn top_cells_and_partition() {
        for name in crate::rootdata::PRESETS {
            let d = RootDatum::preset(name).unwrap();
            for mu in d.dominant_up_to(6, 1) {
                let t = MvTable::new(&d, &mu).unwrap();
                let chi = d.weyl_character(&mu).unwrap();
                let mut total = ZPoly::zero();
                for cl in t.all_plus(&d).unwrap() {
                    let dim = expected_dim(&d, &mu, &cl.nu, OrbitSign::Plus);
                    assert_eq!(cl.max_dim(), Some(dim as usize), "{name} μ={mu:?} ν={:?}", cl.nu);
                    assert_eq!(cl.count_of_dim(dim as usize) as i64, chi.mult(&cl.nu), "{name} μ={mu:?} ν={:?}", cl.nu);
                    total += &cl.poly();
                }
                assert_eq!(chi.weights().count(), t.targets().count(), "{name} μ={mu:?}");
                assert_eq!(total, schubert_cell_poly(&d, &mu).unwrap(), "{name} μ={mu:?}");
            }
        }
    }
}
