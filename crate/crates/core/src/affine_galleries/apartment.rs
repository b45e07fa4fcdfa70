//! The standard apartment of the simply connected cover, in adjoint coordinates x_i = ⟨α_i, x⟩.
//!
//! Affine maps are stored as homogeneous integer matrices of size (n+1), acting on (x, 1).

use serde::{Deserialize, Serialize};

use crate::error::{Result, SatakeError};
use crate::poly::Rat;
use crate::rootdata::{mat_mul, Matrix, RootDatum};

pub type Point = Vec<Rat>;

/// A set of affine simple reflections, as a bitmask.
///
/// Bits 0..n are the finite simple reflections; bit n + c is the affine reflection of component c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeSet(pub u64);

impl TypeSet {
    pub fn empty() -> Self {
        TypeSet(0)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        TypeSet(self.0 | 1 << i)
    }

    pub fn is_subset(self, other: TypeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn members(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }
}

/// A wall H_{β,m} = {x : ⟨β, x⟩ = m} with β positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wall {
    /// Expansion of β in simple roots.
    pub root: Vec<i64>,
    pub level: i64,
}

/// An element of the affine Weyl group W ⋉ Q^∨.
///
/// The pair (w, t) acts by x ↦ w(x) − t: translations act through their negatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    mat: Matrix,
}

impl AffineWeylElement {
    pub fn identity(n: usize) -> Self {
        AffineWeylElement { mat: crate::rootdata::identity_matrix(n + 1) }
    }

    /// The element (w, t): linear part `finite` (adjoint coordinates), translation t.
    pub fn from_parts(finite: &Matrix, t: &[i64]) -> Self {
        let n = t.len();
        let mut mat = vec![vec![0; n + 1]; n + 1];
        for i in 0..n {
            mat[i][..n].copy_from_slice(&finite[i]);
            mat[i][n] = -t[i];
        }
        mat[n][n] = 1;
        AffineWeylElement { mat }
    }

    pub fn from_homogeneous(mat: Matrix) -> Self {
        AffineWeylElement { mat }
    }

    pub fn homogeneous(&self) -> &Matrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.len() - 1
    }

    pub fn finite_part(&self) -> Matrix {
        let n = self.dim();
        self.mat[..n].iter().map(|r| r[..n].to_vec()).collect()
    }

    pub fn translation(&self) -> Vec<i64> {
        let n = self.dim();
        self.mat[..n].iter().map(|r| -r[n]).collect()
    }

    pub fn compose(&self, other: &AffineWeylElement) -> AffineWeylElement {
        AffineWeylElement { mat: mat_mul(&self.mat, &other.mat) }
    }

    pub fn inverse(&self) -> AffineWeylElement {
        let n = self.dim();
        let inv = crate::rootdata::rat_inverse(&self.finite_part()).expect("Weyl matrices are invertible");
        let lin: Matrix = inv.iter().map(|r| r.iter().map(|x| *x.numer() as i64).collect()).collect();
        let b: Vec<i64> = (0..n).map(|i| self.mat[i][n]).collect();
        let nb: Vec<i64> = (0..n).map(|i| -(0..n).map(|k| lin[i][k] * b[k]).sum::<i64>()).collect();
        // x ↦ Ax + b has inverse x ↦ A^{-1}x − A^{-1}b, i.e. translation A^{-1}b
        let t: Vec<i64> = nb.iter().map(|x| -x).collect();
        AffineWeylElement::from_parts(&lin, &t)
    }

    pub fn act(&self, x: &[Rat]) -> Point {
        act_hom(&self.mat, x)
    }
}

pub fn act_hom(mat: &Matrix, x: &[Rat]) -> Point {
    let n = x.len();
    (0..n)
        .map(|i| {
            let mut v = Rat::from_integer(mat[i][n] as i128);
            for (k, xk) in x.iter().enumerate() {
                v += Rat::from_integer(mat[i][k] as i128) * xk;
            }
            v
        })
        .collect()
}

pub fn to_point(v: &[i64]) -> Point {
    v.iter().map(|&x| Rat::from_integer(x as i128)).collect()
}

/// Root-system data of the apartment: positive roots, affine simple reflections, the fundamental alcove.
#[derive(Clone, Debug)]
pub struct Apartment {
    n: usize,
    cartan: Matrix,
    components: Vec<Vec<usize>>,
    /// Simple-root expansions of the positive roots.
    positive: Vec<Vec<i64>>,
    /// Per component: simple-root expansion of the highest root θ.
    highest: Vec<Vec<i64>>,
    reflections: Vec<Matrix>,
}

impl Apartment {
    pub fn new(datum: &RootDatum) -> Self {
        let n = datum.semisimple_rank();
        let cartan = datum.cartan().clone();
        let positive: Vec<Vec<i64>> =
            datum.positive_roots().iter().map(|r| r.root_simple.clone()).collect();
        let highest: Vec<Vec<i64>> =
            datum.highest_roots().iter().map(|r| r.root_simple.clone()).collect();
        let mut reflections = vec![];
        for i in 0..n {
            // (s_i x)_k = x_k − C_{ki} x_i
            let mut m = crate::rootdata::identity_matrix(n + 1);
            for k in 0..n {
                m[k][i] -= cartan[k][i];
            }
            reflections.push(m);
        }
        for (c, theta) in highest.iter().enumerate() {
            let coroot = &datum.highest_roots()[c].coroot_simple;
            // adjoint coordinates of θ^∨: ⟨α_k, θ^∨⟩ = Σ_j C_{kj} c_j
            let theta_check: Vec<i64> =
                (0..n).map(|k| (0..n).map(|j| cartan[k][j] * coroot[j]).sum()).collect();
            // s_0(x) = x − (⟨θ, x⟩ − 1) θ^∨
            let mut m = crate::rootdata::identity_matrix(n + 1);
            for k in 0..n {
                for i in 0..n {
                    m[k][i] -= theta_check[k] * theta[i];
                }
                m[k][n] += theta_check[k];
            }
            reflections.push(m);
        }
        Apartment { n, cartan, components: datum.components().to_vec(), positive, highest, reflections }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn n_nodes(&self) -> usize {
        self.reflections.len()
    }

    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn reflection(&self, node: usize) -> &Matrix {
        &self.reflections[node]
    }

    /// The spherical type S: all finite simple reflections.
    pub fn spherical(&self) -> TypeSet {
        TypeSet((1u64 << self.n) - 1)
    }

    pub fn node_label(&self, node: usize) -> String {
        if node < self.n {
            format!("s{}", node + 1)
        } else if self.components.len() == 1 {
            "s0".into()
        } else {
            format!("s0_{}", node - self.n + 1)
        }
    }

    /// Nodes of component c, including its affine node.
    fn component_nodes(&self, c: usize) -> Vec<usize> {
        let mut v = self.components[c].clone();
        v.push(self.n + c);
        v
    }

    pub fn pair(&self, root: &[i64], x: &[Rat]) -> Rat {
        root.iter()
            .zip(x)
            .map(|(b, xi)| Rat::from_integer(*b as i128) * xi)
            .sum()
    }

    /// Vertex of the closed fundamental alcove opposite to the wall of `node`.
    fn alcove_vertex(&self, node: usize) -> Point {
        let mut v = vec![Rat::from_integer(0); self.n];
        if node < self.n {
            let c = self.components.iter().position(|comp| comp.contains(&node)).expect("node in a component");
            v[node] = Rat::new(1, self.highest[c][node] as i128);
        }
        v
    }

    /// Barycenter of the standard face F_t of the fundamental alcove.
    pub fn face_barycenter(&self, t: TypeSet) -> Result<Point> {
        let mut out = vec![Rat::from_integer(0); self.n];
        for c in 0..self.components.len() {
            let free: Vec<usize> = self.component_nodes(c).into_iter().filter(|&k| !t.contains(k)).collect();
            if free.is_empty() {
                return Err(SatakeError::invalid("type contains every node of a component"));
            }
            let w = Rat::new(1, free.len() as i128);
            for k in free {
                for (o, v) in out.iter_mut().zip(self.alcove_vertex(k)) {
                    *o += v * w;
                }
            }
        }
        Ok(out)
    }

    /// The vertex of the fundamental alcove of type t (t must omit exactly one node per component).
    pub fn vertex_of_type(&self, t: TypeSet) -> Result<Point> {
        for c in 0..self.components.len() {
            if self.component_nodes(c).iter().filter(|&&k| !t.contains(k)).count() != 1 {
                return Err(SatakeError::invalid("type is not a vertex type"));
            }
        }
        self.face_barycenter(t)
    }

    /// Dimension of a face of type t.
    pub fn face_dim(&self, t: TypeSet) -> usize {
        (0..self.components.len())
            .map(|c| {
                let nodes = self.component_nodes(c);
                nodes.len() - 1 - nodes.iter().filter(|&&k| t.contains(k)).count()
            })
            .sum()
    }

    fn in_closed_alcove_violation(&self, z: &[Rat]) -> Option<usize> {
        if let Some(i) = (0..self.n).find(|&i| z[i] < Rat::from_integer(0)) {
            return Some(i);
        }
        (0..self.highest.len())
            .find(|&c| self.pair(&self.highest[c], z) > Rat::from_integer(1))
            .map(|c| self.n + c)
    }

    /// Writes x = w·z with z in the closed fundamental alcove; returns (w, z).
    pub fn reduce(&self, x: &[Rat]) -> (Matrix, Point) {
        let mut w = crate::rootdata::identity_matrix(self.n + 1);
        let mut z = x.to_vec();
        while let Some(node) = self.in_closed_alcove_violation(&z) {
            z = act_hom(&self.reflections[node], &z);
            w = mat_mul(&w, &self.reflections[node]);
        }
        (w, z)
    }

    /// Type of the face containing x in its relative interior.
    pub fn point_type(&self, x: &[Rat]) -> TypeSet {
        let (_, z) = self.reduce(x);
        let mut t = TypeSet::empty();
        for i in 0..self.n {
            if z[i] == Rat::from_integer(0) {
                t = t.with(i);
            }
        }
        for c in 0..self.highest.len() {
            if self.pair(&self.highest[c], &z) == Rat::from_integer(1) {
                t = t.with(self.n + c);
            }
        }
        t
    }

    /// Barycenter of the face containing x.
    pub fn face_of_point(&self, x: &[Rat]) -> Result<(TypeSet, Point)> {
        let (w, _) = self.reduce(x);
        let t = self.point_type(x);
        Ok((t, act_hom(&w, &self.face_barycenter(t)?)))
    }

    /// All walls H_{β,m} containing the point x.
    pub fn walls_through(&self, x: &[Rat]) -> Vec<Wall> {
        self.positive
            .iter()
            .filter_map(|b| {
                let v = self.pair(b, x);
                v.is_integer().then(|| Wall { root: b.clone(), level: *v.numer() as i64 })
            })
            .collect()
    }

    /// Sign of ⟨β, x⟩ − m.
    pub fn side(&self, wall: &Wall, x: &[Rat]) -> i32 {
        let v = self.pair(&wall.root, x) - Rat::from_integer(wall.level as i128);
        if v > Rat::from_integer(0) {
            1
        } else if v < Rat::from_integer(0) {
            -1
        } else {
            0
        }
    }
}
