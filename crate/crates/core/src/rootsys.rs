//! Cartan data, bilinear forms, weights, dominance and the shifted Weyl
//! action for the classical families B_r, C_r, D_r (plus type A_r, which is
//! used internally by the reproduction machinery).
//!
//! Weights are stored in fundamental coordinates λ_i = ⟨λ, α_i^∨⟩; the
//! bilinear form is recovered through the inverse Cartan matrix, so all of
//! it stays in exact rationals. The ε-coordinate realization of the
//! positive roots is internal and only feeds the Weyl dimension formula and
//! tensor reachability.

use crate::linalg::Mat;
use crate::poly::ratstr;
use crate::{rat, Error, Int, Rat, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    /// Internal only: the reproduction detour for type B at length l = r
    /// runs through the type-A realization.
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        write!(f, "{s}")
    }
}

/// Weight in fundamental coordinates ⟨λ, α_i^∨⟩, exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Rat>);

impl Weight {
    pub fn from_i64(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rat::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.0[i - 1]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rat) -> Weight {
        Weight(self.0.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn as_strings(&self) -> Vec<String> {
        self.0.iter().map(ratstr::to_string).collect()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", ratstr::to_string(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Cartan datum: family, rank, Cartan matrix A, symmetrizers D with DA
/// symmetric, and the inverse Cartan matrix for form computations.
#[derive(Clone)]
pub struct LieDatum {
    pub family: Family,
    pub rank: usize,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    inv_cartan: Mat<Rat>,
}

impl LieDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B => 2,
            Family::C => 3,
            Family::D => 4,
        };
        if rank < min {
            return Err(Error::UnsupportedRank {
                family: family.to_string(),
                rank,
            });
        }
        let r = rank;
        let mut a = vec![vec![0i64; r]; r];
        for i in 0..r {
            a[i][i] = 2;
            if i + 1 < r {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        let sym;
        match family {
            Family::A => {
                sym = vec![1; r];
            }
            Family::B => {
                // long roots α_1..α_{r-1}, short α_r; ⟨α_{r-1}, α_r^∨⟩ = -2
                a[r - 1][r - 2] = -2;
                let mut d = vec![2; r];
                d[r - 1] = 1;
                sym = d;
            }
            Family::C => {
                // short roots α_1..α_{r-1}, long α_r; ⟨α_r, α_{r-1}^∨⟩ = -2
                a[r - 2][r - 1] = -2;
                let mut d = vec![1; r];
                d[r - 1] = 2;
                sym = d;
            }
            Family::D => {
                // fork: α_r attaches to α_{r-2}
                a[r - 1][r - 2] = 0;
                a[r - 2][r - 1] = 0;
                a[r - 1][r - 3] = -1;
                a[r - 3][r - 1] = -1;
                sym = vec![1; r];
            }
        }
        let amat = Mat::from_rows(
            a.iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        );
        let inv_cartan = amat.inverse().expect("Cartan matrix invertible");
        Ok(LieDatum {
            family,
            rank,
            cartan: a,
            sym,
            inv_cartan,
        })
    }

    /// Cartan entry a_{ij} = ⟨α_j, α_i^∨⟩, 1-based.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// Symmetrizer d_i, 1-based.
    pub fn d(&self, i: usize) -> i64 {
        self.sym[i - 1]
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank,
            })
        }
    }

    /// Simple root α_j in fundamental coordinates (column j of A).
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight((1..=self.rank).map(|i| rat(self.a(i, j))).collect())
    }

    /// Fundamental weight ω_i.
    pub fn omega(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank);
        w.0[i - 1] = Rat::one();
        w
    }

    /// Half-sum of positive roots in fundamental coordinates: (1,…,1).
    pub fn rho(&self) -> Weight {
        Weight(vec![Rat::one(); self.rank])
    }

    /// Root-basis coordinates of a weight: A^{-1}·(fundamental coords).
    pub fn root_coords(&self, w: &Weight) -> Vec<Rat> {
        self.inv_cartan.mat_vec(&w.0)
    }

    /// Invariant bilinear form (u, v), paper normalization (α_i,α_j) = d_i·a_ij.
    pub fn bilinear(&self, u: &Weight, v: &Weight) -> Rat {
        let m = self.root_coords(u);
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            acc += m[i].clone() * rat(self.sym[i]) * v.0[i].clone();
        }
        acc
    }

    /// (β, v) for a positive root given in root coordinates.
    fn bilinear_root(&self, root_coords: &[i64], v: &Weight) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if root_coords[i] != 0 {
                acc += rat(root_coords[i] * self.sym[i]) * v.0[i].clone();
            }
        }
        acc
    }

    /// Shifted reflection s_i·λ = s_i(λ+ρ) − ρ.
    pub fn shifted_reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        let f = w.0[i - 1].clone() + Rat::one();
        let coords = (1..=self.rank)
            .map(|k| w.0[k - 1].clone() - f.clone() * rat(self.a(k, i)))
            .collect();
        Ok(Weight(coords))
    }

    /// Shifted action of a word: (s_{w_1} s_{w_2} ⋯ s_{w_m})·λ, the rightmost
    /// letter acting first, matching the product notation.
    pub fn shifted_word(&self, word: &[usize], w: &Weight) -> Result<Weight> {
        let mut out = w.clone();
        for &i in word.iter().rev() {
            out = self.shifted_reflect(i, &out)?;
        }
        Ok(out)
    }

    /// Positive roots in root-basis coordinates (ε-realization internally).
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut out = Vec::new();
        let seg = |from: usize, to: usize, c: i64| -> Vec<i64> {
            // c on indices from..=to (1-based), 0 elsewhere
            let mut v = vec![0i64; r];
            for k in from..=to {
                v[k - 1] = c;
            }
            v
        };
        let add2 = |a: &[i64], b: &[i64]| -> Vec<i64> {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        };
        match self.family {
            Family::A => {
                for i in 1..=r {
                    for j in i..=r {
                        out.push(seg(i, j, 1));
                    }
                }
            }
            Family::B => {
                // ε_i − ε_j, ε_i, ε_i + ε_j
                for i in 1..=r {
                    for j in (i + 1)..=r {
                        out.push(seg(i, j - 1, 1));
                    }
                    out.push(seg(i, r, 1));
                    for j in (i + 1)..=r {
                        out.push(add2(&seg(i, j - 1, 1), &seg(j, r, 2)));
                    }
                }
            }
            Family::C => {
                // ε_i − ε_j, ε_i + ε_j, 2ε_i
                for i in 1..=r {
                    for j in (i + 1)..=r {
                        out.push(seg(i, j - 1, 1));
                    }
                    for j in (i + 1)..=r {
                        let mut v = seg(i, j - 1, 1);
                        if j <= r - 1 {
                            v = add2(&v, &seg(j, r - 1, 2));
                        }
                        v[r - 1] += 1;
                        out.push(v);
                    }
                    let mut v = if i <= r - 1 {
                        seg(i, r - 1, 2)
                    } else {
                        vec![0; r]
                    };
                    v[r - 1] += 1;
                    out.push(v);
                }
            }
            Family::D => {
                for i in 1..=r {
                    // ε_i − ε_j
                    for j in (i + 1)..=r {
                        out.push(seg(i, j - 1, 1));
                    }
                    // ε_i + ε_r
                    if i < r {
                        let mut v = if i <= r - 2 {
                            seg(i, r - 2, 1)
                        } else {
                            vec![0; r]
                        };
                        v[r - 1] += 1;
                        out.push(v);
                    }
                    // ε_i + ε_j, i < j ≤ r−1
                    for j in (i + 1)..=(r - 1) {
                        let mut v = seg(i, j - 1, 1);
                        if j <= r - 2 {
                            v = add2(&v, &seg(j, r - 2, 2));
                        }
                        v[r - 2] += 1;
                        v[r - 1] += 1;
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// Weyl dimension formula dim V_λ = ∏_{β>0} (λ+ρ, β)/(ρ, β).
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<Int> {
        if !lambda.is_dominant_integral() {
            return Err(Error::NonDominant(format!("{lambda:?}")));
        }
        let lr = lambda.add(&self.rho());
        let rho = self.rho();
        let mut num = Rat::one();
        for beta in self.positive_roots() {
            num *= self.bilinear_root(&beta, &lr) / self.bilinear_root(&beta, &rho);
        }
        assert!(num.is_integer(), "Weyl dimension must be an integer");
        Ok(num.to_integer())
    }

    /// Casimir scalar (λ+ρ, λ+ρ) − (ρ, ρ), the constant by which the
    /// Casimir element acts on V_λ.
    pub fn casimir_scalar(&self, w: &Weight) -> Rat {
        let wr = w.add(&self.rho());
        let rho = self.rho();
        self.bilinear(&wr, &wr) - self.bilinear(&rho, &rho)
    }

    /// Dominance order: μ > ν iff μ − ν is a nonzero nonnegative-integer
    /// combination of simple roots.
    pub fn dominance_gt(&self, mu: &Weight, nu: &Weight) -> bool {
        let diff = mu.sub(nu);
        let coords = self.root_coords(&diff);
        let nonneg = coords.iter().all(|c| c.is_integer() && !c.is_negative());
        nonneg && coords.iter().any(|c| !c.is_zero())
    }

    /// ε-coordinates of a weight (internal realization; used for tensor
    /// reachability of V_{ω₁}^{⊗m}).
    pub(crate) fn epsilon_coords(&self, w: &Weight) -> Vec<Rat> {
        let r = self.rank;
        let half = Rat::new(Int::one(), Int::from(2));
        match self.family {
            Family::A => {
                // not used; root coords suffice for type A internals
                self.root_coords(w)
            }
            Family::B => (1..=r)
                .map(|i| {
                    let mut s = Rat::zero();
                    for k in i..r {
                        s += w.0[k - 1].clone();
                    }
                    s + w.0[r - 1].clone() * half.clone()
                })
                .collect(),
            Family::C => (1..=r)
                .map(|i| {
                    let mut s = Rat::zero();
                    for k in i..=r {
                        s += w.0[k - 1].clone();
                    }
                    s
                })
                .collect(),
            Family::D => {
                let spin = (w.0[r - 2].clone() + w.0[r - 1].clone()) * half.clone();
                let mut out: Vec<Rat> = (1..=(r - 2))
                    .map(|i| {
                        let mut s = Rat::zero();
                        for k in i..=(r - 2) {
                            s += w.0[k - 1].clone();
                        }
                        s + spin.clone()
                    })
                    .collect();
                out.push(spin.clone());
                out.push((w.0[r - 1].clone() - w.0[r - 2].clone()) * half);
                out
            }
        }
    }
}

impl fmt::Debug for LieDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn b2() -> LieDatum {
        LieDatum::new(Family::B, 2).unwrap()
    }

    #[test]
    fn rank_bounds() {
        assert!(LieDatum::new(Family::B, 1).is_err());
        assert!(LieDatum::new(Family::C, 2).is_err());
        assert!(LieDatum::new(Family::D, 3).is_err());
        assert!(LieDatum::new(Family::B, 2).is_ok());
        assert!(LieDatum::new(Family::C, 3).is_ok());
        assert!(LieDatum::new(Family::D, 4).is_ok());
    }

    #[test]
    fn symmetrized_cartan_and_root_norms() {
        for (fam, rank) in [
            (Family::B, 2),
            (Family::B, 4),
            (Family::C, 3),
            (Family::C, 4),
            (Family::D, 4),
            (Family::D, 5),
        ] {
            let g = LieDatum::new(fam, rank).unwrap();
            for i in 1..=rank {
                for j in 1..=rank {
                    // DA symmetric
                    assert_eq!(g.d(i) * g.a(i, j), g.d(j) * g.a(j, i));
                    // (α_i, α_j) = d_i a_ij through the bilinear form
                    assert_eq!(
                        g.bilinear(&g.simple_root(i), &g.simple_root(j)),
                        rat(g.d(i) * g.a(i, j))
                    );
                }
                // (ρ, α_i) = (α_i, α_i)/2
                assert_eq!(
                    g.bilinear(&g.rho(), &g.simple_root(i)),
                    rat(g.d(i)),
                );
            }
            let norms: Vec<i64> = (1..=rank).map(|i| 2 * g.d(i)).collect();
            match fam {
                Family::B => {
                    assert!(norms[..rank - 1].iter().all(|&n| n == 4));
                    assert_eq!(norms[rank - 1], 2);
                }
                Family::C => {
                    assert!(norms[..rank - 1].iter().all(|&n| n == 2));
                    assert_eq!(norms[rank - 1], 4);
                }
                Family::D => {
                    assert!(norms.iter().all(|&n| n == 2));
                    assert_eq!(g.a(rank, rank - 1), 0);
                }
                Family::A => {}
            }
        }
    }

    #[test]
    fn fundamental_weight_form_b2() {
        let g = b2();
        let w1 = g.omega(1);
        let w2 = g.omega(2);
        assert_eq!(g.bilinear(&w1, &w1), rat(2));
        assert_eq!(g.bilinear(&w1, &w2), rat(1));
        assert_eq!(g.bilinear(&w2, &w2), rat(1));
    }

    #[test]
    fn pairing_consistency() {
        // ⟨λ, α_i^∨⟩ = 2(λ, α_i)/(α_i, α_i)
        let g = LieDatum::new(Family::C, 3).unwrap();
        let lam = Weight::from_i64(&[2, 1, 3]);
        for i in 1..=3 {
            let ai = g.simple_root(i);
            let lhs = lam.coord(i).clone();
            let rhs = rat(2) * g.bilinear(&lam, &ai) / g.bilinear(&ai, &ai);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shifted_reflection_b2() {
        // §3.3 step 1: s_1·λ = (−λ_1−2, 2λ_1+λ_2+2); at λ=(1,1) this is (−3,5)
        let g = b2();
        let lam = Weight::from_i64(&[1, 1]);
        let s1 = g.shifted_reflect(1, &lam).unwrap();
        assert_eq!(s1, Weight::from_i64(&[-3, 5]));
        // involution
        assert_eq!(g.shifted_reflect(1, &s1).unwrap(), lam);
        assert!(g.shifted_reflect(3, &lam).is_err());
    }

    #[test]
    fn shifted_reflection_generic_b() {
        // s_{r-1}·λ = (λ_1,…,λ_{r-3}, λ_{r-2}+λ_{r-1}+1, −λ_{r-1}−2, 2λ_{r-1}+λ_r+2)
        let g = LieDatum::new(Family::B, 4).unwrap();
        let lam = Weight::from_i64(&[2, 3, 5, 7]);
        let got = g.shifted_reflect(3, &lam).unwrap();
        assert_eq!(got, Weight::from_i64(&[2, 3 + 5 + 1, -5 - 2, 2 * 5 + 7 + 2]));
    }

    #[test]
    fn shifted_word_examples() {
        let g = b2();
        // θ = (s_1 s_2 s_1)·λ = (−λ_1−λ_2−3, λ_2)
        for (l1, l2) in [(1i64, 1i64), (2, 0), (3, 5)] {
            let lam = Weight::from_i64(&[l1, l2]);
            let theta = g.shifted_word(&[1, 2, 1], &lam).unwrap();
            assert_eq!(theta, Weight::from_i64(&[-l1 - l2 - 3, l2]));
        }
        // empty word is the identity
        let lam = Weight::from_i64(&[4, 2]);
        assert_eq!(g.shifted_word(&[], &lam).unwrap(), lam);
    }

    #[test]
    fn shifted_word_full_loop_b3() {
        // (s_1 s_2 … s_r s_{r-1} … s_1)·θ = (−θ_1−2θ_2−…−2θ_{r-1}−θ_r−2r+1, θ_2, …, θ_r)
        let g = LieDatum::new(Family::B, 3).unwrap();
        let th = Weight::from_i64(&[2, -1, 3]);
        let got = g.shifted_word(&[1, 2, 3, 2, 1], &th).unwrap();
        assert_eq!(
            got,
            Weight::from_i64(&[-2 - 2 * (-1) - 3 - 5, -1, 3])
        );
    }

    /// Closed formulas of the descent lemma for (s_k…s_1)·θ, used as an
    /// independent oracle against composed reflections.
    fn lemma_inverse_formula(g: &LieDatum, k: usize, th: &[Rat]) -> Weight {
        let r = g.rank;
        let sum = |from: usize, to: usize| -> Rat {
            let mut s = Rat::zero();
            for i in from..=to {
                s += th[i - 1].clone();
            }
            s
        };
        let mut v: Vec<Rat> = Vec::new();
        if k <= r - 2 {
            for i in 2..=k {
                v.push(th[i - 1].clone());
            }
            v.push(-sum(1, k) - rat(k as i64 + 1));
            v.push(sum(1, k + 1) + rat(k as i64));
            for i in (k + 2)..=r {
                v.push(th[i - 1].clone());
            }
        } else if k == r - 1 {
            for i in 2..=(r - 1) {
                v.push(th[i - 1].clone());
            }
            v.push(-sum(1, r - 1) - rat(r as i64));
            v.push(rat(2) * sum(1, r - 1) + th[r - 1].clone() + rat(2 * r as i64 - 2));
        } else {
            // k = r
            for i in 2..=(r - 1) {
                v.push(th[i - 1].clone());
            }
            v.push(sum(1, r) + rat(r as i64 - 1));
            v.push(-rat(2) * sum(1, r - 1) - th[r - 1].clone() - rat(2 * r as i64));
        }
        Weight(v)
    }

    #[test]
    fn lemma_inverse_word_formulas_match_composition() {
        for rank in [2usize, 3, 4] {
            let g = LieDatum::new(Family::B, rank).unwrap();
            let samples: Vec<Vec<i64>> = vec![
                vec![1; rank],
                (0..rank).map(|i| (3 * i as i64 + 2) % 7 - 3).collect(),
                (0..rank).map(|i| 5 - 2 * i as i64).collect(),
            ];
            for s in samples {
                let th = Weight::from_i64(&s);
                for k in 1..=rank {
                    let word: Vec<usize> = (1..=k).rev().collect(); // s_k … s_1
                    let got = g.shifted_word(&word, &th).unwrap();
                    let want = lemma_inverse_formula(&g, k, &th.0);
                    assert_eq!(got, want, "B{rank}, k={k}");
                }
            }
        }
    }

    #[test]
    fn weyl_dimensions_b2() {
        let g = b2();
        let dim = |c: &[i64]| g.weyl_dim(&Weight::from_i64(c)).unwrap();
        assert_eq!(dim(&[1, 0]), Int::from(5));
        assert_eq!(dim(&[0, 1]), Int::from(4));
        assert_eq!(dim(&[1, 1]), Int::from(16));
        assert_eq!(dim(&[2, 1]), Int::from(40));
        assert_eq!(dim(&[0, 0]), Int::from(1));
        assert!(g.weyl_dim(&Weight::from_i64(&[-1, 0])).is_err());
    }

    #[test]
    fn weyl_dimensions_cd() {
        let c3 = LieDatum::new(Family::C, 3).unwrap();
        assert_eq!(c3.weyl_dim(&Weight::from_i64(&[1, 0, 0])).unwrap(), Int::from(6));
        assert_eq!(c3.weyl_dim(&Weight::from_i64(&[0, 1, 0])).unwrap(), Int::from(14));
        assert_eq!(c3.weyl_dim(&Weight::from_i64(&[0, 0, 1])).unwrap(), Int::from(14));
        let d4 = LieDatum::new(Family::D, 4).unwrap();
        assert_eq!(d4.weyl_dim(&Weight::from_i64(&[1, 0, 0, 0])).unwrap(), Int::from(8));
        assert_eq!(d4.weyl_dim(&Weight::from_i64(&[0, 1, 0, 0])).unwrap(), Int::from(28));
        assert_eq!(d4.weyl_dim(&Weight::from_i64(&[0, 0, 1, 0])).unwrap(), Int::from(8));
        assert_eq!(d4.weyl_dim(&Weight::from_i64(&[0, 0, 0, 1])).unwrap(), Int::from(8));
    }

    #[test]
    fn positive_root_counts() {
        for (fam, rank, count) in [
            (Family::B, 2, 4),
            (Family::B, 3, 9),
            (Family::C, 3, 9),
            (Family::C, 4, 16),
            (Family::D, 4, 12),
            (Family::D, 5, 20),
            (Family::A, 3, 6),
        ] {
            let g = LieDatum::new(fam, rank).unwrap();
            assert_eq!(g.positive_roots().len(), count);
        }
    }

    #[test]
    fn positive_roots_have_positive_height_and_norms() {
        for (fam, rank) in [(Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let g = LieDatum::new(fam, rank).unwrap();
            for beta in g.positive_roots() {
                assert!(beta.iter().all(|&c| c >= 0));
                assert!(beta.iter().any(|&c| c > 0));
                // each positive root has norm 2, 4 (long/short per family)
                let mut w = Weight::zero(rank);
                for (j, &c) in beta.iter().enumerate() {
                    w = w.add(&g.simple_root(j + 1).scale(&rat(c)));
                }
                let n = g.bilinear(&w, &w);
                assert!(n == rat(2) || n == rat(4), "{fam:?} root norm {n}");
            }
        }
    }

    #[test]
    fn dominance_order() {
        let g = b2();
        let lam = Weight::from_i64(&[2, 1]);
        let mu = lam.sub(&g.simple_root(1));
        assert!(g.dominance_gt(&lam, &mu));
        assert!(!g.dominance_gt(&mu, &lam));
        assert!(!g.dominance_gt(&lam, &lam));
        // ω_1 and ω_2 are incomparable in B_2
        assert!(!g.dominance_gt(&g.omega(1), &g.omega(2)));
        assert!(!g.dominance_gt(&g.omega(2), &g.omega(1)));
    }

    #[test]
    fn shifted_reflect_involution_random() {
        let g = LieDatum::new(Family::D, 4).unwrap();
        let mut state = 1u64;
        for _ in 0..1000 {
            let coords: Vec<Rat> = (0..4)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    ratio(((state >> 33) % 19) as i64 - 9, 1 + ((state >> 50) % 3) as i64)
                })
                .collect();
            let w = Weight(coords);
            for i in 1..=4 {
                let twice = g
                    .shifted_reflect(i, &g.shifted_reflect(i, &w).unwrap())
                    .unwrap();
                assert_eq!(twice, w);
            }
        }
    }
}
