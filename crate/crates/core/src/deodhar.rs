//! Deodhar decompositions of ByB ∩ B⁻xB in a finite flag variety.
//!
//! For a reduced word s_1⋯s_k of y, a subexpression σ_0 = e, σ_1, …, σ_k is distinguished when
//! σ_j ≤ σ_{j−1}s_j for all j. Descents are forced and contribute A¹, stays contribute Gm.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SatakeError};
use crate::poly::ZPoly;
use crate::rootdata::{RootDatum, WeylElt, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subexpression {
    pub word: Vec<usize>,
    pub sigma: Vec<WeylElt>,
}

impl Subexpression {
    pub fn endpoint(&self) -> WeylElt {
        *self.sigma.last().expect("σ_0 is always present")
    }

    pub fn is_distinguished(&self, w: &WeylGroup) -> bool {
        self.sigma.windows(2).zip(&self.word).all(|(pair, &s)| {
            let (prev, cur) = (pair[0], pair[1]);
            let moved = w.mul_simple_right(prev, s);
            (cur == prev || cur == moved) && w.bruhat_leq(cur, moved)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeodharCell {
    pub subexpression: Subexpression,
    /// Number of A¹ factors.
    pub m: usize,
    /// Number of Gm factors.
    pub n: usize,
}

impl DeodharCell {
    pub fn endpoint(&self) -> WeylElt {
        self.subexpression.endpoint()
    }

    pub fn point_count(&self) -> ZPoly {
        ZPoly::cell(self.m, self.n)
    }
}

fn check_reduced(w: &WeylGroup, word: &[usize]) -> Result<()> {
    if !w.is_reduced(word)? {
        return Err(SatakeError::invalid(format!("word {word:?} is not reduced")));
    }
    Ok(())
}

/// All distinguished subexpressions of a reduced word.
pub fn distinguished_subexpressions(w: &WeylGroup, word: &[usize]) -> Result<Vec<Subexpression>> {
    check_reduced(w, word)?;
    Ok(deodhar_all(w, word).into_iter().map(|c| c.subexpression).collect())
}

fn deodhar_all(w: &WeylGroup, word: &[usize]) -> Vec<DeodharCell> {
    let mut out = vec![];
    let mut sigma = vec![w.identity()];
    extend(w, word, &mut sigma, 0, 0, &mut out);
    out
}

fn extend(w: &WeylGroup, word: &[usize], sigma: &mut Vec<WeylElt>, m: usize, n: usize, out: &mut Vec<DeodharCell>) {
    let j = sigma.len() - 1;
    if j == word.len() {
        out.push(DeodharCell {
            subexpression: Subexpression { word: word.to_vec(), sigma: sigma.clone() },
            m,
            n,
        });
        return;
    }
    let z = sigma[j];
    let zs = w.mul_simple_right(z, word[j]);
    if w.length(zs) < w.length(z) {
        sigma.push(zs);
        extend(w, word, sigma, m + 1, n, out);
        sigma.pop();
    } else {
        sigma.push(z);
        extend(w, word, sigma, m, n + 1, out);
        sigma.pop();
        sigma.push(zs);
        extend(w, word, sigma, m, n, out);
        sigma.pop();
    }
}

/// Cells of ByB/B ∩ B⁻xB/B, where y is given by a reduced word.
pub fn deodhar_cells(w: &WeylGroup, y_word: &[usize], x: WeylElt) -> Result<Vec<DeodharCell>> {
    check_reduced(w, y_word)?;
    Ok(deodhar_all(w, y_word).into_iter().filter(|c| c.endpoint() == x).collect())
}

pub fn richardson_poly(w: &WeylGroup, y_word: &[usize], x: WeylElt) -> Result<ZPoly> {
    let mut total = ZPoly::zero();
    for c in deodhar_cells(w, y_word, x)? {
        total += &c.point_count();
    }
    Ok(total)
}

pub fn richardson_count(w: &WeylGroup, y_word: &[usize], x: WeylElt, q: i128) -> Result<i128> {
    Ok(richardson_poly(w, y_word, x)?.eval(q))
}

/// Cells of BvP/P ∩ B⁻wP/P for minimal representatives v, w of W/W_J.
///
/// The projection G/B → G/P maps BvB/B ∩ B⁻wB/B isomorphically onto this intersection.
pub fn parabolic_reduce(w: &WeylGroup, subset: &[usize], v: WeylElt, x: WeylElt) -> Result<Vec<DeodharCell>> {
    for (name, e) in [("v", v), ("w", x)] {
        if w.min_rep(e, subset) != e {
            return Err(SatakeError::invalid(format!(
                "{name} is not a minimal representative of its coset"
            )));
        }
    }
    deodhar_cells(w, w.word(v), x)
}

/// Cell shapes (A^a × Gm^b) of z0·BuB/B ∩ B·z_end·B/B, for u given by a reduced word.
///
/// The walk starts at z0 and multiplies by one letter at a time: an ascent is forced
/// and contributes A¹; at a descent the walk either moves (a point) or stays (Gm).
pub fn translated_cells(w: &WeylGroup, word: &[usize], z0: WeylElt, z_end: WeylElt) -> Vec<(usize, usize)> {
    let mut out = vec![];
    walk(w, word, z0, z_end, 0, 0, &mut out);
    out
}

fn walk(w: &WeylGroup, word: &[usize], z: WeylElt, z_end: WeylElt, a: usize, b: usize, out: &mut Vec<(usize, usize)>) {
    let Some((&s, rest)) = word.split_first() else {
        if z == z_end {
            out.push((a, b));
        }
        return;
    };
    let zs = w.mul_simple_right(z, s);
    if w.length(zs) > w.length(z) {
        walk(w, rest, zs, z_end, a + 1, b, out);
    } else {
        walk(w, rest, zs, z_end, a, b, out);
        walk(w, rest, z, z_end, a, b + 1, out);
    }
}

/// Datum-level conveniences for the finite Weyl group of G.
pub fn datum_richardson_poly(datum: &RootDatum, y_word: &[usize], x_word: &[usize]) -> Result<ZPoly> {
    let w = datum.weyl();
    let x = w.from_word(x_word)?;
    richardson_poly(w, y_word, x)
}

pub fn cells_json(w: &WeylGroup, y_word: &[usize], x: WeylElt) -> Result<serde_json::Value> {
    let cells = deodhar_cells(w, y_word, x)?;
    let poly = richardson_poly(w, y_word, x)?;
    Ok(serde_json::json!({
        "y": y_word,
        "x": w.word(x),
        "cells": cells.iter().map(|c| serde_json::json!({
            "sigma": c.subexpression.sigma.iter().map(|&s| w.word(s).to_vec()).collect::<Vec<_>>(),
            "m": c.m,
            "n": c.n,
        })).collect::<Vec<_>>(),
        "poly": poly.coeffs(),
    }))
}
