//! Complete flags over F_q for SL2, SL3 and Sp4, classified by relative position to B and B⁻.
//!
//! Flags are enumerated cell by cell in echelon form; positions are recomputed from ranks,
//! independently of the cell a flag was generated in.

use std::collections::HashMap;

use crate::error::{Result, SatakeError};
use crate::rootdata::{RootDatum, WeylElt};

use super::field::Gf;

type Perm = Vec<usize>;

/// Permutation images of the simple reflections, indexed like the preset's simple roots.
fn generators(name: &str) -> Option<(usize, Vec<Perm>)> {
    match name {
        "SL2" => Some((2, vec![vec![1, 0]])),
        "SL3" => Some((3, vec![vec![1, 0, 2], vec![0, 2, 1]])),
        // short root e1 − e2 first, long root 2e2 second
        "Sp4" => Some((4, vec![vec![1, 0, 3, 2], vec![0, 2, 1, 3]])),
        _ => None,
    }
}

fn compose(x: &Perm, y: &Perm) -> Perm {
    y.iter().map(|&i| x[i]).collect()
}

fn rank(f: &Gf, rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][c]);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let k = f.mul(m[i][c], inv);
                for j in 0..cols {
                    let sub = f.mul(k, m[r][j]);
                    m[i][j] = f.sub(m[i][j], sub);
                }
            }
        }
        r += 1;
    }
    r
}

/// The permutation π with the flag spanned by `vectors` in B π B/B.
fn position(f: &Gf, vectors: &[Vec<u8>]) -> Perm {
    let n = vectors.len();
    // dim(F_i ∩ E_j) = i − rank of the first i vectors restricted to coordinates j..n
    let meet = |i: usize, j: usize| -> usize {
        let rows: Vec<Vec<u8>> = vectors[..i].iter().map(|v| v[j..].to_vec()).collect();
        i - if j == n { 0 } else { rank(f, &rows) }
    };
    (1..=n)
        .map(|i| (1..=n).find(|&j| meet(i, j) > meet(i - 1, j)).expect("flags are complete") - 1)
        .collect()
}

fn symplectic(f: &Gf, u: &[u8], v: &[u8]) -> u8 {
    let t = f.add(f.mul(u[0], v[3]), f.mul(u[1], v[2]));
    f.sub(t, f.add(f.mul(u[2], v[1]), f.mul(u[3], v[0])))
}

/// Flags of the Bruhat cell of w in echelon form.
fn cell_flags(f: &Gf, w: &Perm) -> Vec<Vec<Vec<u8>>> {
    let n = w.len();
    let mut slots = vec![];
    for i in 0..n {
        for j in 0..w[i] {
            if !w[..i].contains(&j) {
                slots.push((i, j));
            }
        }
    }
    let q = f.q() as usize;
    let mut out = vec![];
    for idx in 0..q.pow(slots.len() as u32) {
        let mut vs = vec![vec![0u8; n]; n];
        for (i, v) in vs.iter_mut().enumerate() {
            v[w[i]] = 1;
        }
        let mut r = idx;
        for &(i, j) in &slots {
            vs[i][j] = (r % q) as u8;
            r /= q;
        }
        out.push(vs);
    }
    out
}

/// Point counts of ByB/B ∩ B⁻xB/B for every (y, x), by enumeration of G(F_q)/B(F_q).
#[derive(Clone, Debug)]
pub struct FlagCensus {
    pub q: u32,
    pub total: u64,
    counts: HashMap<(WeylElt, WeylElt), u64>,
}

impl FlagCensus {
    pub fn new(datum: &RootDatum, q: u32) -> Result<FlagCensus> {
        let (n, gens) = generators(datum.name())
            .ok_or_else(|| SatakeError::invalid(format!("no flag oracle for {}", datum.name())))?;
        let f = Gf::new(q)?;
        let w = datum.weyl();
        let mut to_elt: HashMap<Perm, WeylElt> = HashMap::new();
        for e in w.elements() {
            let mut p: Perm = (0..n).collect();
            for &s in w.word(e) {
                p = compose(&p, &gens[s]);
            }
            to_elt.insert(p, e);
        }
        let w0: Perm = (0..n).rev().collect();
        let mut counts = HashMap::new();
        let mut total = 0;
        let mut cells: Vec<&Perm> = to_elt.keys().collect();
        cells.sort();
        for cell in cells {
            for vs in cell_flags(&f, cell) {
                if n == 4 && (symplectic(&f, &vs[0], &vs[1]) != 0 || symplectic(&f, &vs[0], &vs[2]) != 0) {
                    continue;
                }
                let y = position(&f, &vs);
                let reversed: Vec<Vec<u8>> = vs.iter().map(|v| v.iter().rev().copied().collect()).collect();
                let x = compose(&w0, &position(&f, &reversed));
                let lookup = |p: &Perm| {
                    to_elt.get(p).copied().ok_or_else(|| {
                        SatakeError::Inconsistent(format!("position {p:?} outside the Weyl group"))
                    })
                };
                *counts.entry((lookup(&y)?, lookup(&x)?)).or_insert(0) += 1;
                total += 1;
            }
        }
        Ok(FlagCensus { q, total, counts })
    }

    pub fn count(&self, y: WeylElt, x: WeylElt) -> u64 {
        self.counts.get(&(y, x)).copied().unwrap_or(0)
    }
}

pub fn flag_richardson_count(datum: &RootDatum, q: u32, y: WeylElt, x: WeylElt) -> Result<u64> {
    Ok(FlagCensus::new(datum, q)?.count(y, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_totals_are_poincare_values() {
        for (name, q, total) in [("SL2", 3, 4), ("SL3", 2, 21), ("SL3", 3, 52), ("Sp4", 2, 45), ("Sp4", 3, 160)] {
            let d = RootDatum::preset(name).unwrap();
            assert_eq!(FlagCensus::new(&d, q).unwrap().total, total, "{name} q={q}");
        }
    }

    #[test]
    fn buckets_sum_to_cell_sizes() {
        for name in ["SL3", "Sp4"] {
            let d = RootDatum::preset(name).unwrap();
            let w = d.weyl();
            let census = FlagCensus::new(&d, 2).unwrap();
            for y in w.elements() {
                let s: u64 = w.elements().map(|x| census.count(y, x)).sum();
                assert_eq!(s, 2u64.pow(w.length(y) as u32));
            }
            assert_eq!(census.count(0, 0), 1);
        }
    }

    #[test]
    fn unsupported_group() {
        assert!(FlagCensus::new(&RootDatum::preset("G2").unwrap(), 2).is_err());
    }

    #[test]
    fn deodhar_cells_count_richardson_points() {
        for name in ["SL2", "SL3", "Sp4"] {
            let d = RootDatum::preset(name).unwrap();
            let w = d.weyl();
            for q in [2, 3] {
                let census = FlagCensus::new(&d, q).unwrap();
                for y in w.elements() {
                    for x in w.elements() {
                        let c = crate::deodhar::richardson_count(w, w.word(y), x, q as i128).unwrap();
                        assert_eq!(c, census.count(y, x) as i128, "{name} q={q} y={:?} x={:?}", w.word(y), w.word(x));
                    }
                }
            }
        }
    }
}
