//! Finite Weyl groups realized as integer matrices on the cocharacter lattice.

use std::collections::{HashMap, VecDeque};

use crate::error::{Result, SatakeError};

pub type Matrix = Vec<Vec<i64>>;

/// Index of an element in [`WeylGroup::elements`]; index 0 is the identity.
pub type WeylElt = usize;

const MAX_ORDER: usize = 4096;

#[derive(Clone, Debug)]
pub struct WeylGroup {
    /// Matrices acting on coordinates of X_*(T).
    mats: Vec<Matrix>,
    /// A reduced word (indices of simple reflections) for each element; BFS order makes it shortlex-minimal.
    words: Vec<Vec<usize>>,
    /// `right[w][i]` = index of w·s_i.
    right: Vec<Vec<WeylElt>>,
    /// `left[w][i]` = index of s_i·w.
    left: Vec<Vec<WeylElt>>,
    mult: Vec<Vec<WeylElt>>,
    inv: Vec<WeylElt>,
    /// `bruhat[y][x]` is true iff x ≤ y.
    bruhat: Vec<Vec<bool>>,
    longest: WeylElt,
    rank: usize,
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl WeylGroup {
    /// Closure of the group generated by `gens`; fails if the closure exceeds a finite bound.
    pub fn generate(gens: Vec<Matrix>, dim: usize) -> Result<Self> {
        let rank = gens.len();
        let mut index: HashMap<Matrix, WeylElt> = HashMap::new();
        let mut mats = vec![identity(dim)];
        let mut words = vec![vec![]];
        index.insert(mats[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(&mats[w], g);
                if !index.contains_key(&m) {
                    if mats.len() >= MAX_ORDER {
                        return Err(SatakeError::invalid(
                            "Weyl group is infinite or too large (Cartan matrix not of finite type)",
                        ));
                    }
                    let id = mats.len();
                    index.insert(m.clone(), id);
                    mats.push(m);
                    let mut word = words[w].clone();
                    word.push(i);
                    words.push(word);
                    queue.push_back(id);
                }
            }
        }
        let n = mats.len();
        let lookup = |m: &Matrix| -> WeylElt { index[m] };
        let right: Vec<Vec<WeylElt>> = (0..n)
            .map(|w| gens.iter().map(|g| lookup(&mat_mul(&mats[w], g))).collect())
            .collect();
        let left: Vec<Vec<WeylElt>> = (0..n)
            .map(|w| gens.iter().map(|g| lookup(&mat_mul(g, &mats[w]))).collect())
            .collect();
        let mult: Vec<Vec<WeylElt>> = (0..n)
            .map(|a| (0..n).map(|b| lookup(&mat_mul(&mats[a], &mats[b]))).collect())
            .collect();
        let inv: Vec<WeylElt> = (0..n)
            .map(|a| (0..n).find(|&b| mult[a][b] == 0).expect("group closure"))
            .collect();
        let longest = (0..n).max_by_key(|&w| words[w].len()).unwrap_or(0);
        let mut group = WeylGroup {
            mats,
            words,
            right,
            left,
            mult,
            inv,
            bruhat: vec![],
            longest,
            rank,
        };
        group.bruhat = group.compute_bruhat();
        Ok(group)
    }

    /// Subword criterion: x ≤ y iff x is the product of a subword of a reduced word of y.
    fn compute_bruhat(&self) -> Vec<Vec<bool>> {
        let n = self.order();
        (0..n)
            .map(|y| {
                let mut reach = vec![false; n];
                reach[0] = true;
                for &s in &self.words[y] {
                    let current: Vec<WeylElt> = (0..n).filter(|&x| reach[x]).collect();
                    for x in current {
                        reach[self.right[x][s]] = true;
                    }
                }
                reach
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> std::ops::Range<WeylElt> {
        0..self.order()
    }

    pub fn identity(&self) -> WeylElt {
        0
    }

    pub fn matrix(&self, w: WeylElt) -> &Matrix {
        &self.mats[w]
    }

    pub fn word(&self, w: WeylElt) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: WeylElt) -> usize {
        self.words[w].len()
    }

    pub fn sign(&self, w: WeylElt) -> i64 {
        if self.length(w).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn simple(&self, i: usize) -> WeylElt {
        self.right[0][i]
    }

    pub fn mul(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        self.mult[a][b]
    }

    pub fn mul_simple_right(&self, w: WeylElt, i: usize) -> WeylElt {
        self.right[w][i]
    }

    pub fn mul_simple_left(&self, i: usize, w: WeylElt) -> WeylElt {
        self.left[w][i]
    }

    pub fn inverse(&self, w: WeylElt) -> WeylElt {
        self.inv[w]
    }

    pub fn longest(&self) -> WeylElt {
        self.longest
    }

    /// x ≤ y in Bruhat order.
    pub fn bruhat_leq(&self, x: WeylElt, y: WeylElt) -> bool {
        self.bruhat[y][x]
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElt> {
        let mut w = 0;
        for &s in word {
            if s >= self.rank {
                return Err(SatakeError::invalid(format!(
                    "simple reflection index {s} out of range (rank {})",
                    self.rank
                )));
            }
            w = self.right[w][s];
        }
        Ok(w)
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        Ok(self.length(self.from_word(word)?) == word.len())
    }

    pub fn act(&self, w: WeylElt, x: &[i64]) -> Vec<i64> {
        mat_vec(&self.mats[w], x)
    }

    /// Elements of the standard parabolic subgroup generated by `subset`.
    pub fn parabolic(&self, subset: &[usize]) -> Vec<WeylElt> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for &i in subset {
                let v = self.right[w][i];
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                    queue.push_back(v);
                }
            }
        }
        out
    }

    /// The longest element of the parabolic subgroup W_J.
    pub fn longest_of(&self, subset: &[usize]) -> WeylElt {
        self.parabolic(subset)
            .into_iter()
            .max_by_key(|&w| self.length(w))
            .expect("parabolic subgroups contain the identity")
    }

    /// Minimal-length representatives of W/W_J.
    pub fn min_coset_reps(&self, subset: &[usize]) -> Vec<WeylElt> {
        self.elements()
            .filter(|&w| subset.iter().all(|&i| self.length(self.right[w][i]) > self.length(w)))
            .collect()
    }

    /// The minimal representative of wW_J.
    pub fn min_rep(&self, w: WeylElt, subset: &[usize]) -> WeylElt {
        let mut w = w;
        loop {
            match subset
                .iter()
                .find(|&&i| self.length(self.right[w][i]) < self.length(w))
            {
                Some(&i) => w = self.right[w][i],
                None => return w,
            }
        }
    }

    /// Poincaré polynomial Σ_w q^{ℓ(w)} over the parabolic subgroup W_J, as coefficients.
    pub fn poincare(&self, subset: &[usize]) -> Vec<i64> {
        let mut out = vec![];
        for w in self.parabolic(subset) {
            let l = self.length(w);
            if out.len() <= l {
                out.resize(l + 1, 0);
            }
            out[l] += 1;
        }
        out
    }
}
