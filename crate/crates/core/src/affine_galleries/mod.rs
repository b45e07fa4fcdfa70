//! Minimal galleries joining 0 with a dominant coweight, combinatorial galleries of that type,
//! and their fold data.
//!
//! A combinatorial gallery is a tuple [δ0, δ1, …, δp] of minimal coset representatives,
//! δ0 ∈ W/W_{t_0} and δj ∈ W_{t'_j}/W_{t_j}; its large faces are Σ_j = δ0⋯δj·F_{t_j}.

mod apartment;

pub use apartment::{act_hom, to_point, AffineWeylElement, Apartment, Point, TypeSet, Wall};

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Result, SatakeError};
use crate::poly::Rat;
use crate::rootdata::{identity_matrix, mat_mul, Matrix, RootDatum, WeylElt, WeylGroup};

/// The finite group W_t generated by a set of affine simple reflections (t must be spherical).
#[derive(Clone, Debug)]
pub struct LocalGroup {
    ty: TypeSet,
    /// Global node of each local generator.
    nodes: Vec<usize>,
    group: WeylGroup,
}

impl LocalGroup {
    fn new(apartment: &Apartment, ty: TypeSet) -> Result<Self> {
        let nodes = ty.members();
        let gens: Vec<Matrix> = nodes.iter().map(|&k| apartment.reflection(k).clone()).collect();
        let group = WeylGroup::generate(gens, apartment.dim() + 1)?;
        Ok(LocalGroup { ty, nodes, group })
    }

    pub fn ty(&self) -> TypeSet {
        self.ty
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// Local generator indices of the nodes in `sub` (which must be a subset of this type).
    pub fn local_subset(&self, sub: TypeSet) -> Vec<usize> {
        self.nodes.iter().enumerate().filter(|(_, &k)| sub.contains(k)).map(|(i, _)| i).collect()
    }

    pub fn global_word(&self, w: WeylElt) -> Vec<usize> {
        self.group.word(w).iter().map(|&i| self.nodes[i]).collect()
    }

    pub fn matrix(&self, w: WeylElt) -> &Matrix {
        self.group.matrix(w)
    }
}

/// The gallery of types t'_0 ⊃ t_0 ⊂ t'_1 ⊃ … ⊂ t'_p ⊃ t_p ⊃ t_μ of a minimal gallery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GalleryType {
    pub t_prime: Vec<TypeSet>,
    pub t: Vec<TypeSet>,
    pub t_mu: TypeSet,
}

impl GalleryType {
    /// p + 1; zero for the degenerate gallery of μ = 0.
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CombinatorialGallery {
    /// δ_j as element indices of the local group W_{t'_j}.
    pub deltas: Vec<WeylElt>,
}

/// A load-bearing wall at Σ_j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StepWall {
    pub step: usize,
    pub wall: Wall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldAnalysis {
    pub folds: Vec<usize>,
    pub positive: bool,
    pub load_bearing: Vec<StepWall>,
    pub j_plus: Vec<StepWall>,
    pub j_minus: Vec<StepWall>,
}

/// Everything attached to a fixed minimal gallery γ_μ.
#[derive(Clone, Debug)]
pub struct GalleryFamily {
    apartment: Arc<Apartment>,
    mu: Vec<i64>,
    ty: GalleryType,
    /// W_{t'_j} for each j.
    groups: Vec<Arc<LocalGroup>>,
    /// Minimal representatives of W_{t'_j}/W_{t_j}.
    reps: Vec<Vec<WeylElt>>,
    /// τ_j^min (τ_0 is the identity).
    tau: Vec<WeylElt>,
    /// Barycenters of the faces Γ_0, …, Γ_p of γ_μ.
    faces: Vec<Point>,
}

/// Which perturbation of the straight path 0 → μ to use; 0 is the canonical one.
pub type PathChoice = usize;

impl GalleryFamily {
    /// The canonical minimal gallery joining 0 with μ (adjoint coordinates, dominant).
    pub fn new(datum: &RootDatum, mu_adj: &[i64]) -> Result<Self> {
        Self::with_path(datum, mu_adj, 0)
    }

    /// The minimal gallery cut out by the straight path from εg to μ, for the g selected by `choice`.
    pub fn with_path(datum: &RootDatum, mu_adj: &[i64], choice: PathChoice) -> Result<Self> {
        let apartment = Arc::new(Apartment::new(datum));
        let n = apartment.dim();
        if mu_adj.len() != n {
            return Err(SatakeError::invalid(format!(
                "adjoint coweight {mu_adj:?} must have {n} coordinates"
            )));
        }
        if mu_adj.iter().any(|&c| c < 0) {
            return Err(SatakeError::invalid(format!("{mu_adj:?} is not dominant")));
        }
        let mut cache = HashMap::new();
        let spherical = apartment.spherical();
        let g0 = Self::local_group(&apartment, &mut cache, spherical)?;
        if mu_adj.iter().all(|&c| c == 0) {
            return Ok(GalleryFamily {
                apartment,
                mu: mu_adj.to_vec(),
                ty: GalleryType { t_prime: vec![], t: vec![], t_mu: spherical },
                groups: vec![g0],
                reps: vec![vec![0]],
                tau: vec![],
                faces: vec![],
            });
        }
        let mut last_err = None;
        for attempt in 0..8 {
            match Self::try_path(&apartment, &mut cache, mu_adj, choice * 8 + attempt) {
                Ok(f) => return Ok(f),
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.expect("at least one attempt"))
    }

    fn local_group(
        apartment: &Apartment,
        cache: &mut HashMap<TypeSet, Arc<LocalGroup>>,
        ty: TypeSet,
    ) -> Result<Arc<LocalGroup>> {
        if let Some(g) = cache.get(&ty) {
            return Ok(g.clone());
        }
        let g = Arc::new(LocalGroup::new(apartment, ty)?);
        cache.insert(ty, g.clone());
        Ok(g)
    }

    /// Perturbation direction g = Σ_{μ_i > 0} c_i ω_i^∨ for a given seed.
    fn perturbation(mu: &[i64], seed: usize) -> Point {
        let primes = [3i128, 5, 7, 11, 13, 17, 19, 23];
        let base = primes[seed % primes.len()] + (seed / primes.len()) as i128 * 29;
        let mut c = Rat::from_integer(1);
        mu.iter()
            .map(|&m| {
                if m > 0 {
                    let v = c;
                    c /= Rat::from_integer(base);
                    v
                } else {
                    Rat::from_integer(0)
                }
            })
            .collect()
    }

    fn try_path(
        apartment: &Arc<Apartment>,
        cache: &mut HashMap<TypeSet, Arc<LocalGroup>>,
        mu: &[i64],
        seed: usize,
    ) -> Result<Self> {
        let n = apartment.dim();
        let support: Vec<usize> = (0..n).filter(|&i| mu[i] > 0).collect();
        let g = Self::perturbation(mu, seed);
        let max_g = apartment
            .positive_roots()
            .iter()
            .map(|b| apartment.pair(b, &g))
            .max()
            .unwrap_or_default();
        let eps = Rat::new(1, 4) / (max_g + Rat::from_integer(1));
        let mu_pt = to_point(mu);
        let path = |t: Rat| -> Point {
            (0..n).map(|i| mu_pt[i] * t + g[i] * eps * (Rat::from_integer(1) - t)).collect()
        };
        // crossing times t with ⟨β, x(t)⟩ = m for 1 ≤ m < ⟨β, μ⟩
        let mut crossings: Vec<(Rat, usize)> = vec![];
        for (bi, b) in apartment.positive_roots().iter().enumerate() {
            let big_m = b.iter().zip(mu).map(|(x, y)| x * y).sum::<i64>();
            let big_g = apartment.pair(b, &g) * eps;
            for m in 1..big_m {
                let t = (Rat::from_integer(m as i128) - big_g) / (Rat::from_integer(big_m as i128) - big_g);
                crossings.push((t, bi));
            }
        }
        crossings.sort();
        let mut times: Vec<Rat> = vec![];
        let mut groups: Vec<Vec<usize>> = vec![];
        for (t, bi) in crossings {
            if times.last() == Some(&t) {
                groups.last_mut().expect("nonempty").push(bi);
            } else {
                times.push(t);
                groups.push(vec![bi]);
            }
        }
        // genericity: walls crossed simultaneously restrict to one hyperplane of H_μ
        for grp in &groups {
            let restricted: Vec<Vec<i64>> = grp
                .iter()
                .map(|&bi| support.iter().map(|&i| apartment.positive_roots()[bi][i]).collect())
                .collect();
            for r in &restricted[1..] {
                let proportional = (0..support.len())
                    .all(|a| (0..support.len()).all(|b| r[a] * restricted[0][b] == r[b] * restricted[0][a]));
                if !proportional {
                    return Err(SatakeError::Inconsistent("path is not generic in H_μ".into()));
                }
            }
        }
        let mut bounds = vec![Rat::from_integer(0)];
        bounds.extend(times.iter().copied());
        bounds.push(Rat::from_integer(1));
        let two = Rat::from_integer(2);
        let big_faces: Vec<Point> = bounds.windows(2).map(|w| path((w[0] + w[1]) / two)).collect();
        let small_faces: Vec<Point> = times.iter().map(|&t| path(t)).collect();
        let dim_h = support.len();
        let mut t_list = vec![];
        let mut face_bary = vec![];
        for x in &big_faces {
            let (ty, bary) = apartment.face_of_point(x)?;
            if apartment.face_dim(ty) != dim_h {
                return Err(SatakeError::Inconsistent("large face has the wrong dimension".into()));
            }
            t_list.push(ty);
            face_bary.push(bary);
        }
        let mut t_prime = vec![apartment.spherical()];
        for x in &small_faces {
            let ty = apartment.point_type(x);
            if apartment.face_dim(ty) + 1 != dim_h {
                return Err(SatakeError::Inconsistent("crossing is not of codimension one".into()));
            }
            t_prime.push(ty);
        }
        let t_mu = apartment.point_type(&mu_pt);
        let p = t_list.len() - 1;
        for j in 0..=p {
            if !t_list[j].is_subset(t_prime[j]) || (j > 0 && !t_list[j - 1].is_subset(t_prime[j])) {
                return Err(SatakeError::Inconsistent("gallery types are not nested".into()));
            }
        }
        if !t_list[p].is_subset(t_mu) {
            return Err(SatakeError::Inconsistent("last face does not contain μ".into()));
        }
        let mut groups_j = vec![];
        let mut reps = vec![];
        let mut tau = vec![];
        for j in 0..=p {
            let lg = Self::local_group(apartment, cache, t_prime[j])?;
            let sub = lg.local_subset(t_list[j]);
            reps.push(lg.group().min_coset_reps(&sub));
            tau.push(if j == 0 { 0 } else { lg.group().min_rep(lg.group().longest(), &sub) });
            groups_j.push(lg);
        }
        let family = GalleryFamily {
            apartment: apartment.clone(),
            mu: mu.to_vec(),
            ty: GalleryType { t_prime, t: t_list, t_mu },
            groups: groups_j,
            reps,
            tau,
            faces: face_bary,
        };
        // the straight path must be the gallery [1, τ_1^min, …, τ_p^min]
        let minimal = family.minimal();
        let sigma = family.large_faces(&minimal)?;
        if sigma != family.faces {
            return Err(SatakeError::Inconsistent(
                "straight path does not match [1, τ_1^min, …, τ_p^min]".into(),
            ));
        }
        if family.target_adj(&minimal)? != to_point(mu) {
            return Err(SatakeError::Inconsistent("minimal gallery does not end at μ".into()));
        }
        Ok(family)
    }

    pub fn apartment(&self) -> &Apartment {
        &self.apartment
    }

    pub fn mu_adj(&self) -> &[i64] {
        &self.mu
    }

    pub fn gallery_type(&self) -> &GalleryType {
        &self.ty
    }

    pub fn is_degenerate(&self) -> bool {
        self.ty.is_empty()
    }

    /// p; −1 for the degenerate gallery.
    pub fn p(&self) -> isize {
        self.ty.len() as isize - 1
    }

    pub fn group(&self, j: usize) -> &LocalGroup {
        &self.groups[j]
    }

    pub fn reps(&self, j: usize) -> &[WeylElt] {
        &self.reps[j]
    }

    pub fn tau(&self, j: usize) -> WeylElt {
        self.tau[j]
    }

    pub fn minimal(&self) -> CombinatorialGallery {
        CombinatorialGallery { deltas: self.tau.clone() }
    }

    /// |W/W_0| · ∏ |W'_j/W_j|.
    pub fn count(&self) -> u128 {
        if self.is_degenerate() {
            return 1;
        }
        self.reps.iter().map(|r| r.len() as u128).product()
    }

    /// All combinatorial galleries of this type, in lexicographic order of representative indices.
    pub fn enumerate(&self) -> impl Iterator<Item = CombinatorialGallery> + '_ {
        let sizes: Vec<usize> = if self.is_degenerate() { vec![] } else { self.reps.iter().map(|r| r.len()).collect() };
        let total = self.count();
        (0..total).map(move |mut code| {
            let mut idx = vec![0usize; sizes.len()];
            for j in (0..sizes.len()).rev() {
                idx[j] = (code % sizes[j] as u128) as usize;
                code /= sizes[j] as u128;
            }
            CombinatorialGallery { deltas: idx.iter().enumerate().map(|(j, &i)| self.reps[j][i]).collect() }
        })
    }

    /// Galleries whose first element is the `i`-th representative of W/W_0; partitions [`Self::enumerate`].
    pub fn enumerate_with_prefix(&self, i: usize) -> impl Iterator<Item = CombinatorialGallery> + '_ {
        let first = if self.is_degenerate() { None } else { Some(self.reps[0][i]) };
        self.enumerate().filter(move |g| g.deltas.first().copied() == first)
    }

    pub fn check_gallery(&self, g: &CombinatorialGallery) -> Result<()> {
        if g.deltas.len() != self.ty.len() {
            return Err(SatakeError::invalid("gallery length does not match its type"));
        }
        for (j, &d) in g.deltas.iter().enumerate() {
            if !self.reps[j].contains(&d) {
                return Err(SatakeError::invalid(format!(
                    "δ_{j} is not a minimal coset representative"
                )));
            }
        }
        Ok(())
    }

    /// Homogeneous matrices of the prefix products δ0⋯δ_{j−1}, for j = 0..=p+1.
    pub fn prefixes(&self, g: &CombinatorialGallery) -> Vec<Matrix> {
        let mut out = vec![identity_matrix(self.apartment.dim() + 1)];
        for (j, &d) in g.deltas.iter().enumerate() {
            let next = mat_mul(out.last().expect("nonempty"), self.groups[j].matrix(d));
            out.push(next);
        }
        out
    }

    /// Barycenters of Σ_0, …, Σ_p.
    pub fn large_faces(&self, g: &CombinatorialGallery) -> Result<Vec<Point>> {
        let pre = self.prefixes(g);
        (0..self.ty.len())
            .map(|j| Ok(act_hom(&pre[j + 1], &self.apartment.face_barycenter(self.ty.t[j])?)))
            .collect()
    }

    /// Barycenters of Σ'_1, …, Σ'_p (index 0 is the origin).
    pub fn small_faces(&self, g: &CombinatorialGallery) -> Result<Vec<Point>> {
        let pre = self.prefixes(g);
        (0..self.ty.len())
            .map(|j| Ok(act_hom(&pre[j], &self.apartment.face_barycenter(self.ty.t_prime[j])?)))
            .collect()
    }

    /// Endpoint of the gallery in adjoint coordinates.
    pub fn target_adj(&self, g: &CombinatorialGallery) -> Result<Point> {
        self.check_gallery(g)?;
        if self.is_degenerate() {
            return Ok(to_point(&self.mu));
        }
        let pre = self.prefixes(g);
        Ok(act_hom(pre.last().expect("nonempty"), &self.apartment.vertex_of_type(self.ty.t_mu)?))
    }

    /// Integral adjoint coordinates of the target.
    pub fn target(&self, g: &CombinatorialGallery) -> Result<Vec<i64>> {
        self.target_adj(g)?
            .iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(*x.numer() as i64)
                } else {
                    Err(SatakeError::Inconsistent("gallery target is not a lattice point".into()))
                }
            })
            .collect()
    }

    pub fn analyze(&self, g: &CombinatorialGallery) -> Result<FoldAnalysis> {
        self.check_gallery(g)?;
        let mut out = FoldAnalysis { folds: vec![], positive: true, load_bearing: vec![], j_plus: vec![], j_minus: vec![] };
        if self.is_degenerate() {
            return Ok(out);
        }
        let ap = &self.apartment;
        let pre = self.prefixes(g);
        let alcove = ap.face_barycenter(TypeSet::empty())?;
        for j in 0..self.ty.len() {
            let small = act_hom(&pre[j], &ap.face_barycenter(self.ty.t_prime[j])?);
            let fq = ap.face_barycenter(self.ty.t[j])?;
            let sigma = act_hom(&pre[j + 1], &fq);
            let walls = ap.walls_through(&small);
            if j >= 1 && g.deltas[j] != self.tau[j] {
                out.folds.push(j);
                let omega = act_hom(&mat_mul(&pre[j], self.groups[j].matrix(self.tau[j])), &fq);
                for w in &walls {
                    let (so, ss) = (ap.side(w, &omega), ap.side(w, &sigma));
                    if so * ss == -1 && ss != 1 {
                        out.positive = false;
                    }
                }
            }
            let u_alcove = act_hom(&pre[j], &alcove);
            for w in walls {
                let s = ap.side(&w, &sigma);
                if s != 1 {
                    continue;
                }
                let sw = StepWall { step: j, wall: w.clone() };
                out.load_bearing.push(sw.clone());
                if j >= 1 {
                    if ap.side(&w, &u_alcove) == s {
                        out.j_minus.push(sw);
                    } else {
                        out.j_plus.push(sw);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Words of δ_j in global node indices.
    pub fn words(&self, g: &CombinatorialGallery) -> Vec<Vec<usize>> {
        g.deltas.iter().enumerate().map(|(j, &d)| self.groups[j].global_word(d)).collect()
    }

    pub fn type_labels(&self, t: TypeSet) -> Vec<String> {
        t.members().into_iter().map(|k| self.apartment.node_label(k)).collect()
    }

    pub fn gallery_json(&self, g: &CombinatorialGallery) -> Result<serde_json::Value> {
        let fa = self.analyze(g)?;
        let mut types = vec![];
        for j in 0..self.ty.len() {
            types.push(self.type_labels(self.ty.t_prime[j]));
            types.push(self.type_labels(self.ty.t[j]));
        }
        types.push(self.type_labels(self.ty.t_mu));
        let walls = |v: &[StepWall]| -> Vec<serde_json::Value> {
            v.iter()
                .map(|s| serde_json::json!({"step": s.step, "root": s.wall.root, "level": s.wall.level}))
                .collect()
        };
        Ok(serde_json::json!({
            "type": types,
            "deltas": self.words(g),
            "target": self.target(g)?,
            "folds": fa.folds,
            "positive": fa.positive,
            "J+": walls(&fa.j_plus),
            "J-": walls(&fa.j_minus),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pgl2(m: i64) -> GalleryFamily {
        GalleryFamily::new(&RootDatum::preset("PGL2").unwrap(), &[m]).unwrap()
    }

    #[test]
    fn pgl2_straight_path() {
        for m in 1..6 {
            let f = pgl2(m);
            assert_eq!(f.p(), m as isize - 1);
            assert_eq!(f.count(), 1 << m);
            for j in 1..f.gallery_type().len() {
                assert_eq!(f.gallery_type().t[j], TypeSet::empty());
                assert_eq!(f.gallery_type().t_prime[j].len(), 1);
                assert_ne!(f.gallery_type().t_prime[j], f.gallery_type().t_prime[j - 1]);
            }
            let a = f.analyze(&f.minimal()).unwrap();
            assert!(a.folds.is_empty() && a.positive);
        }
    }

    #[test]
    fn degenerate_gallery() {
        let f = pgl2(0);
        assert_eq!(f.p(), -1);
        assert_eq!(f.enumerate().count(), 1);
        let g = f.enumerate().next().unwrap();
        assert_eq!(f.target(&g).unwrap(), vec![0]);
    }

    #[test]
    fn pgl2_unique_positive_gallery_per_target() {
        for m in 1..7 {
            let f = pgl2(m);
            let mut counts: HashMap<i64, usize> = HashMap::new();
            for g in f.enumerate() {
                if f.analyze(&g).unwrap().positive {
                    *counts.entry(f.target(&g).unwrap()[0]).or_insert(0) += 1;
                }
            }
            let expected: HashMap<i64, usize> = (0..=m).map(|k| (m - 2 * k, 1)).collect();
            assert_eq!(counts, expected, "μ = {m}");
        }
    }

    #[test]
    fn pgl2_turning_gallery() {
        let f = pgl2(2);
        let s = f.reps(0).iter().copied().find(|&d| d != 0).unwrap();
        let g = CombinatorialGallery { deltas: vec![s, 0] };
        assert_eq!(f.target(&g).unwrap(), vec![0]);
        let a = f.analyze(&g).unwrap();
        assert_eq!(a.folds, vec![1]);
        assert!(a.positive);
        assert_eq!(a.j_minus.len(), 1);
        assert_eq!(a.j_plus.len(), 0);
    }

    #[test]
    fn separating_walls_counted() {
        let d = RootDatum::preset("SL3").unwrap();
        let f = GalleryFamily::new(&d, &[1, 1]).unwrap();
        // crossings inside the path plus the walls through the origin
        let g = f.minimal();
        let small = f.small_faces(&g).unwrap();
        let large = f.large_faces(&g).unwrap();
        let ap = f.apartment();
        let mut total = 0;
        for j in 0..small.len() {
            total += ap.walls_through(&small[j]).iter().filter(|w| ap.side(w, &large[j]) != 0).count();
        }
        assert_eq!(total as i64, d.two_rho_pair(&[1, 1]));
    }

    #[test]
    fn product_formula() {
        for (name, mu) in [("SL3", vec![1, 0]), ("SL3", vec![2, 1]), ("Sp4", vec![0, 1]), ("G2", vec![1, 0])] {
            let d = RootDatum::preset(name).unwrap();
            let f = GalleryFamily::new(&d, &mu).unwrap();
            let all: Vec<_> = f.enumerate().collect();
            assert_eq!(all.len() as u128, f.count());
            let distinct: std::collections::BTreeSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn minimal_galleries_on_all_presets() {
        for name in crate::rootdata::PRESETS {
            let d = RootDatum::preset(name).unwrap();
            for mu in d.dominant_up_to(8, 1) {
                let adj = d.adjoint_coords(&mu);
                for choice in 0..2 {
                    let f = GalleryFamily::with_path(&d, &adj, choice).unwrap_or_else(|e| panic!("{name} {mu:?}: {e}"));
                    assert_eq!(f.target(&f.minimal()).unwrap(), adj);
                }
            }
        }
    }
}
