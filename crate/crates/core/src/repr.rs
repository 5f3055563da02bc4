//! Explicit matrix representations with exact rational entries: the vector
//! representation per family, irreducibles realized inside tensor powers of
//! it, Casimir data, quadratic Gaudin Hamiltonians, the canonical weight
//! function, and Bethe vector / completeness verification.

use crate::bae::{gaudin_eigenvalue, BAEInstance, CriticalTuple};
use crate::closedform::{admissible_lengths, decompose, solve_closed_form, LengthLabel};
use crate::linalg::Mat;
use crate::rootsys::{Family, LieDatum, Weight};
use crate::scalar::{FromRat, Scalar};
use crate::tower::{TowerBuilder, TowerElem};
use crate::{rat, Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// sparse matrices over exact rationals
// ---------------------------------------------------------------------------

/// Row-major sparse matrix with exact rational entries.
#[derive(Clone, PartialEq)]
pub struct SpMat {
    pub nrows: usize,
    pub ncols: usize,
    rows: Vec<Vec<(usize, Rat)>>,
}

impl SpMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SpMat {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].push((i, Rat::one()));
        }
        m
    }

    pub fn row(&self, i: usize) -> &[(usize, Rat)] {
        &self.rows[i]
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |&(c, _)| c) {
            Ok(pos) => {
                row[pos].1 += v;
                if row[pos].1.is_zero() {
                    row.remove(pos);
                }
            }
            Err(pos) => row.insert(pos, (j, v)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let mut out = self.clone();
        for row in &mut out.rows {
            for (_, v) in row.iter_mut() {
                *v *= s.clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for (j, v) in row {
                out.add_entry(i, *j, v.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows);
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            let mut acc: HashMap<usize, Rat> = HashMap::new();
            for (k, a) in &self.rows[i] {
                for (j, b) in &other.rows[*k] {
                    let e = acc.entry(*j).or_insert_with(Rat::zero);
                    *e += a.clone() * b.clone();
                }
            }
            let mut entries: Vec<(usize, Rat)> =
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            entries.sort_by_key(|&(j, _)| j);
            out.rows[i] = entries;
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mat_mul(other).sub(&other.mat_mul(self))
    }

    /// Apply to a vector over any scalar embedding the rationals.
    pub fn apply<T: Scalar + FromRat>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = T::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        acc = acc + T::from_rat(a) * v[*j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn apply_rat(&self, v: &[Rat]) -> Vec<Rat> {
        self.apply::<Rat>(v)
    }
}

impl std::fmt::Debug for SpMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpMat {}x{} ({} nnz)", self.nrows, self.ncols, self.nnz())
    }
}

// ---------------------------------------------------------------------------
// matrix representations
// ---------------------------------------------------------------------------

/// Finite-dimensional module given by explicit Chevalley generator matrices
/// and the weight of every basis vector.
#[derive(Clone)]
pub struct MatrixRep {
    pub datum: LieDatum,
    pub dim: usize,
    pub e: Vec<SpMat>,
    pub f: Vec<SpMat>,
    pub h: Vec<SpMat>,
    pub weights: Vec<Weight>,
    pub highest: usize,
    pub highest_weight: Weight,
}

impl MatrixRep {
    fn h_from_weights(datum: &LieDatum, weights: &[Weight]) -> Vec<SpMat> {
        (1..=datum.rank)
            .map(|i| {
                let mut m = SpMat::zeros(weights.len(), weights.len());
                for (k, w) in weights.iter().enumerate() {
                    m.add_entry(k, k, w.coord(i).clone());
                }
                m
            })
            .collect()
    }
}

/// The defining (vector) representation: dimensions 2r+1, 2r, 2r for
/// B, C, D, and r+1 for the internal type A.
pub fn vector_rep(datum: &LieDatum) -> Result<MatrixRep> {
    let r = datum.rank;
    // ε_k in fundamental coordinates: ε_1 = ω_1, ε_{k+1} = ε_k − α_k
    let mut eps: Vec<Weight> = Vec::with_capacity(r);
    let mut cur = datum.omega(1);
    for k in 1..=r {
        eps.push(cur.clone());
        if k < r {
            cur = cur.sub(&datum.simple_root(k));
        }
    }
    let dim;
    let mut weights: Vec<Weight>;
    match datum.family {
        Family::A => {
            dim = r + 1;
            weights = eps.clone();
            weights.push(eps[r - 1].sub(&datum.simple_root(r)));
        }
        Family::B => {
            dim = 2 * r + 1;
            weights = eps.clone();
            weights.push(Weight::zero(r));
            for k in (1..=r).rev() {
                weights.push(eps[k - 1].scale(&-Rat::one()));
            }
        }
        Family::C | Family::D => {
            dim = 2 * r;
            weights = eps.clone();
            for k in (1..=r).rev() {
                weights.push(eps[k - 1].scale(&-Rat::one()));
            }
        }
    }
    // index helpers: v_k at k−1, v_{−k} mirrored at the end
    let pos = |k: usize| k - 1;
    let neg = |k: usize| dim - k;
    let mut e: Vec<SpMat> = (0..r).map(|_| SpMat::zeros(dim, dim)).collect();
    let mut f: Vec<SpMat> = (0..r).map(|_| SpMat::zeros(dim, dim)).collect();
    let chain_top = match datum.family {
        Family::A => r,
        _ => r - 1,
    };
    for i in 1..=chain_top {
        // E_i: v_{i+1} → v_i, and on the mirrored side v_{−i} → −v_{−(i+1)}
        if i < dim {
            e[i - 1].add_entry(pos(i), pos(i + 1), Rat::one());
            f[i - 1].add_entry(pos(i + 1), pos(i), Rat::one());
        }
        if datum.family != Family::A {
            e[i - 1].add_entry(neg(i + 1), neg(i), -Rat::one());
            f[i - 1].add_entry(neg(i), neg(i + 1), -Rat::one());
        }
    }
    match datum.family {
        Family::A => {}
        Family::B => {
            let zero = r; // index of v_0
            e[r - 1].add_entry(pos(r), zero, rat(2));
            e[r - 1].add_entry(zero, neg(r), Rat::one());
            f[r - 1].add_entry(zero, pos(r), Rat::one());
            f[r - 1].add_entry(neg(r), zero, rat(2));
        }
        Family::C => {
            e[r - 1].add_entry(pos(r), neg(r), Rat::one());
            f[r - 1].add_entry(neg(r), pos(r), Rat::one());
        }
        Family::D => {
            e[r - 1].add_entry(pos(r - 1), neg(r), Rat::one());
            e[r - 1].add_entry(pos(r), neg(r - 1), -Rat::one());
            f[r - 1].add_entry(neg(r), pos(r - 1), Rat::one());
            f[r - 1].add_entry(neg(r - 1), pos(r), -Rat::one());
        }
    }
    let h = MatrixRep::h_from_weights(datum, &weights);
    Ok(MatrixRep {
        datum: datum.clone(),
        dim,
        e,
        f,
        h,
        highest: 0,
        highest_weight: weights[0].clone(),
        weights,
    })
}

// ---------------------------------------------------------------------------
// tensor modules
// ---------------------------------------------------------------------------

/// Tensor product of matrix representations; generators act through the
/// iterated coproduct Σ legs. Row-major basis indexing, leg 0 slowest.
pub struct TensorModule {
    pub factors: Vec<MatrixRep>,
    pub dim: usize,
    pub e_tot: Vec<SpMat>,
    pub f_tot: Vec<SpMat>,
    pub h_tot: Vec<SpMat>,
    pub weights: Vec<Weight>,
}

impl TensorModule {
    pub fn new(factors: Vec<MatrixRep>) -> Result<Self> {
        assert!(!factors.is_empty());
        let datum = factors[0].datum.clone();
        for fct in &factors {
            if fct.datum.family != datum.family || fct.datum.rank != datum.rank {
                return Err(Error::DatumMismatch);
            }
        }
        let dim = factors.iter().map(|m| m.dim).product();
        let r = datum.rank;
        let mut weights = Vec::with_capacity(dim);
        for idx in 0..dim {
            let parts = Self::unindex_with(&factors, idx);
            let mut w = Weight::zero(r);
            for (leg, &p) in parts.iter().enumerate() {
                w = w.add(&factors[leg].weights[p]);
            }
            weights.push(w);
        }
        let mut tm = TensorModule {
            factors,
            dim,
            e_tot: vec![],
            f_tot: vec![],
            h_tot: vec![],
            weights,
        };
        for i in 0..r {
            tm.e_tot.push(tm.coproduct(|m| &m.e[i]));
            tm.f_tot.push(tm.coproduct(|m| &m.f[i]));
            tm.h_tot.push(tm.coproduct(|m| &m.h[i]));
        }
        Ok(tm)
    }

    pub fn datum(&self) -> &LieDatum {
        &self.factors[0].datum
    }

    fn unindex_with(factors: &[MatrixRep], mut idx: usize) -> Vec<usize> {
        let mut parts = vec![0usize; factors.len()];
        for leg in (0..factors.len()).rev() {
            parts[leg] = idx % factors[leg].dim;
            idx /= factors[leg].dim;
        }
        parts
    }

    pub fn unindex(&self, idx: usize) -> Vec<usize> {
        Self::unindex_with(&self.factors, idx)
    }

    pub fn index(&self, parts: &[usize]) -> usize {
        let mut idx = 0;
        for (leg, &p) in parts.iter().enumerate() {
            idx = idx * self.factors[leg].dim + p;
        }
        idx
    }

    /// Operator acting on a single leg.
    pub fn on_leg(&self, m: &SpMat, leg: usize) -> SpMat {
        let mut out = SpMat::zeros(self.dim, self.dim);
        for idx in 0..self.dim {
            let parts = self.unindex(idx);
            for (col, val) in m.row(parts[leg]) {
                let mut q = parts.clone();
                q[leg] = *col;
                out.add_entry(idx, self.index(&q), val.clone());
            }
        }
        out
    }

    /// Operator acting on two distinct legs simultaneously: A on leg i and
    /// B on leg j (their product as commuting operators).
    pub fn on_two_legs(&self, a: &SpMat, i: usize, b: &SpMat, j: usize) -> SpMat {
        assert_ne!(i, j);
        let mut out = SpMat::zeros(self.dim, self.dim);
        for idx in 0..self.dim {
            let parts = self.unindex(idx);
            for (ca, va) in a.row(parts[i]) {
                for (cb, vb) in b.row(parts[j]) {
                    let mut q = parts.clone();
                    q[i] = *ca;
                    q[j] = *cb;
                    out.add_entry(idx, self.index(&q), va.clone() * vb.clone());
                }
            }
        }
        out
    }

    fn coproduct(&self, pick: impl Fn(&MatrixRep) -> &SpMat) -> SpMat {
        let mut out = SpMat::zeros(self.dim, self.dim);
        for leg in 0..self.factors.len() {
            out = out.add(&self.on_leg(pick(&self.factors[leg]), leg));
        }
        out
    }

    /// Basis vector ⊗_s v(parts_s).
    pub fn basis_vector(&self, parts: &[usize]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[self.index(parts)] = Rat::one();
        v
    }

    pub fn highest_vector(&self) -> Vec<Rat> {
        let parts: Vec<usize> = self.factors.iter().map(|m| m.highest).collect();
        self.basis_vector(&parts)
    }

    pub fn weight_space(&self, mu: &Weight) -> Vec<usize> {
        (0..self.dim).filter(|&i| &self.weights[i] == mu).collect()
    }

    /// Kernel of all raising operators inside the weight-μ subspace, as
    /// full-dimension vectors.
    pub fn singular_basis(&self, mu: &Weight) -> Vec<Vec<Rat>> {
        let cols = self.weight_space(mu);
        if cols.is_empty() {
            return vec![];
        }
        let r = self.datum().rank;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for i in 0..r {
            let target = self.weight_space(&mu.add(&self.datum().simple_root(i + 1)));
            for &t in &target {
                let row = self.e_tot[i].row(t);
                let mut dense = vec![Rat::zero(); cols.len()];
                let mut any = false;
                for (c, v) in row {
                    if let Ok(pos) = cols.binary_search(c) {
                        dense[pos] = v.clone();
                        any = true;
                    }
                }
                if any {
                    rows.push(dense);
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..cols.len())
                .map(|k| {
                    let mut v = vec![Rat::zero(); cols.len()];
                    v[k] = Rat::one();
                    v
                })
                .collect()
        } else {
            Mat::from_rows(rows).kernel()
        };
        kernel
            .into_iter()
            .map(|kv| {
                let mut full = vec![Rat::zero(); self.dim];
                for (pos, &c) in cols.iter().enumerate() {
                    full[c] = kv[pos].clone();
                }
                full
            })
            .collect()
    }

    /// Total dimension of the singular subspace (summed over all dominant
    /// weights of the module).
    pub fn total_singular_dimension(&self) -> usize {
        let mut seen: Vec<Weight> = Vec::new();
        let mut total = 0;
        for w in &self.weights {
            if w.is_dominant_integral() && !seen.contains(w) {
                seen.push(w.clone());
                total += self.singular_basis(w).len();
            }
        }
        total
    }
}

// ---------------------------------------------------------------------------
// irreducibles inside tensor powers of the vector representation
// ---------------------------------------------------------------------------

/// Whether λ occurs inside some V_{ω₁}^{⊗m} (integer ε-coordinates), and the
/// minimal power m if so.
pub fn tensor_reach(datum: &LieDatum, lambda: &Weight) -> Option<usize> {
    let eps = datum.epsilon_coords(lambda);
    if !eps.iter().all(|c| c.is_integer()) {
        return None;
    }
    let m: Rat = eps.iter().map(|c| c.abs()).sum();
    Some(usize::try_from(&m.to_integer()).expect("small weight"))
}

/// Incremental echelon store that can express new vectors in terms of the
/// accepted basis.
struct EchelonStore {
    // (reduced vector, its expression over accepted basis indices)
    rows: Vec<(Vec<Rat>, Vec<(usize, Rat)>)>,
    pivots: Vec<usize>,
}

enum InsertOutcome {
    Independent,
    Dependent(Vec<(usize, Rat)>),
}

impl EchelonStore {
    fn new() -> Self {
        EchelonStore {
            rows: vec![],
            pivots: vec![],
        }
    }

    fn insert(&mut self, vec: Vec<Rat>, self_index: usize) -> InsertOutcome {
        let mut v = vec;
        let mut expr: Vec<(usize, Rat)> = Vec::new();
        for (row, (rv, rexpr)) in self.rows.iter().enumerate() {
            let p = self.pivots[row];
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone() / rv[p].clone();
            for (k, x) in rv.iter().enumerate() {
                if !x.is_zero() {
                    v[k] = v[k].clone() - f.clone() * x.clone();
                }
            }
            for (bi, c) in rexpr {
                merge_term(&mut expr, *bi, f.clone() * c.clone());
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => InsertOutcome::Dependent(expr),
            Some(p) => {
                // stored row = candidate − Σ f·rows = self − expr
                let mut row_expr = vec![(self_index, Rat::one())];
                for (bi, c) in expr {
                    merge_term(&mut row_expr, bi, -c);
                }
                self.rows.push((v, row_expr));
                self.pivots.push(p);
                InsertOutcome::Independent
            }
        }
    }
}

fn merge_term(terms: &mut Vec<(usize, Rat)>, idx: usize, val: Rat) {
    if val.is_zero() {
        return;
    }
    match terms.binary_search_by_key(&idx, |&(i, _)| i) {
        Ok(pos) => {
            terms[pos].1 += val;
            if terms[pos].1.is_zero() {
                terms.remove(pos);
            }
        }
        Err(pos) => terms.insert(pos, (idx, val)),
    }
}

/// Realize the irreducible V_λ as the cyclic submodule generated by a
/// singular vector of weight λ inside V_{ω₁}^{⊗m}.
pub fn build_irrep(datum: &LieDatum, lambda: &Weight, bound: usize) -> Result<MatrixRep> {
    if !lambda.is_dominant_integral() {
        return Err(Error::NonDominant(format!("{lambda:?}")));
    }
    let Some(m) = tensor_reach(datum, lambda) else {
        return Err(Error::NotReachable(format!(
            "{lambda:?} needs spin representations"
        )));
    };
    if m > bound {
        return Err(Error::BoundExceeded { need: m, bound });
    }
    let v = vector_rep(datum)?;
    if m == 0 {
        // trivial module
        let r = datum.rank;
        let z = || SpMat::zeros(1, 1);
        return Ok(MatrixRep {
            datum: datum.clone(),
            dim: 1,
            e: (0..r).map(|_| z()).collect(),
            f: (0..r).map(|_| z()).collect(),
            h: (0..r).map(|_| z()).collect(),
            weights: vec![Weight::zero(r)],
            highest: 0,
            highest_weight: Weight::zero(r),
        });
    }
    let tm = TensorModule::new(vec![v; m])?;
    let sing = tm.singular_basis(lambda);
    let seed = sing
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotReachable(format!("{lambda:?} not found in power {m}")))?;

    let r = datum.rank;
    // cyclic closure under the lowering operators, organized per weight space
    let mut basis: Vec<Vec<Rat>> = vec![seed];
    let mut basis_weight: Vec<Weight> = vec![lambda.clone()];
    let mut stores: HashMap<Weight, EchelonStore> = HashMap::new();
    {
        let st = stores.entry(lambda.clone()).or_insert_with(EchelonStore::new);
        st.insert(basis[0].clone(), 0);
    }
    let mut f_action: Vec<Vec<Vec<(usize, Rat)>>> = vec![vec![]; r];
    let mut cursor = 0;
    while cursor < basis.len() {
        for i in 0..r {
            let img = tm.f_tot[i].apply_rat(&basis[cursor]);
            if img.iter().all(|x| x.is_zero()) {
                f_action[i].push(vec![]);
                continue;
            }
            let w = basis_weight[cursor].sub(&datum.simple_root(i + 1));
            let st = stores.entry(w.clone()).or_insert_with(EchelonStore::new);
            let candidate_index = basis.len();
            match st.insert(img.clone(), candidate_index) {
                InsertOutcome::Independent => {
                    basis.push(img);
                    basis_weight.push(w);
                    f_action[i].push(vec![(candidate_index, Rat::one())]);
                }
                InsertOutcome::Dependent(expr) => {
                    f_action[i].push(expr);
                }
            }
        }
        // pad the per-generator action lists for indices processed later
        cursor += 1;
    }
    let dim = basis.len();
    let expected = datum.weyl_dim(lambda)?;
    if crate::Int::from(dim) != expected {
        return Err(Error::NotReachable(format!(
            "closure dimension {dim} differs from Weyl dimension {expected}"
        )));
    }

    // f matrices from the recorded actions; e matrices by solving in the
    // stores (the closure is a submodule, so every E-image lies inside)
    let mut f_mats: Vec<SpMat> = (0..r).map(|_| SpMat::zeros(dim, dim)).collect();
    for i in 0..r {
        for (col, expr) in f_action[i].iter().enumerate() {
            for (row, c) in expr {
                f_mats[i].add_entry(*row, col, c.clone());
            }
        }
    }
    let mut e_mats: Vec<SpMat> = (0..r).map(|_| SpMat::zeros(dim, dim)).collect();
    for col in 0..dim {
        for i in 0..r {
            let img = tm.e_tot[i].apply_rat(&basis[col]);
            if img.iter().all(|x| x.is_zero()) {
                continue;
            }
            let w = basis_weight[col].add(&datum.simple_root(i + 1));
            let st = stores.get_mut(&w).expect("weight space exists");
            match st.insert(img, usize::MAX) {
                InsertOutcome::Dependent(expr) => {
                    for (row, c) in expr {
                        e_mats[i].add_entry(row, col, c);
                    }
                }
                InsertOutcome::Independent => {
                    panic!("raising operator escaped the cyclic submodule")
                }
            }
        }
    }
    let h = MatrixRep::h_from_weights(datum, &basis_weight);
    Ok(MatrixRep {
        datum: datum.clone(),
        dim,
        e: e_mats,
        f: f_mats,
        h,
        weights: basis_weight,
        highest: 0,
        highest_weight: lambda.clone(),
    })
}

// ---------------------------------------------------------------------------
// Casimir data and Gaudin Hamiltonians
// ---------------------------------------------------------------------------

/// Positive-root vectors of a representation, built from iterated brackets
/// of the Chevalley generators (the same bracket recipe in every
/// representation, so normalizations agree).
pub struct RootVectors {
    pub e: Vec<SpMat>,
    pub f: Vec<SpMat>,
}

fn bracket_recipe(datum: &LieDatum) -> Vec<(Vec<i64>, Option<(usize, usize)>)> {
    // entries: (root coords, None for simple root i = position, or
    // Some((i, prev)) meaning [X_i, X_prev])
    let pos = datum.positive_roots();
    let height = |v: &Vec<i64>| -> i64 { v.iter().sum() };
    let mut order: Vec<usize> = (0..pos.len()).collect();
    order.sort_by_key(|&k| height(&pos[k]));
    let mut recipe: Vec<(Vec<i64>, Option<(usize, usize)>)> = Vec::new();
    let find = |recipe: &Vec<(Vec<i64>, Option<(usize, usize)>)>, v: &Vec<i64>| {
        recipe.iter().position(|(w, _)| w == v)
    };
    for &k in &order {
        let root = &pos[k];
        if height(root) == 1 {
            recipe.push((root.clone(), None));
            continue;
        }
        let mut found = None;
        for i in 0..datum.rank {
            if root[i] == 0 {
                continue;
            }
            let mut prev = root.clone();
            prev[i] -= 1;
            if !pos.contains(&prev) {
                continue;
            }
            if let Some(pidx) = find(&recipe, &prev) {
                found = Some((i, pidx));
                break;
            }
        }
        recipe.push((root.clone(), Some(found.expect("root chain exists"))));
    }
    recipe
}

impl RootVectors {
    pub fn build(rep: &MatrixRep) -> Self {
        let recipe = bracket_recipe(&rep.datum);
        let mut e: Vec<SpMat> = Vec::with_capacity(recipe.len());
        let mut f: Vec<SpMat> = Vec::with_capacity(recipe.len());
        for (root, how) in &recipe {
            match how {
                None => {
                    let i = root.iter().position(|&c| c == 1).unwrap();
                    e.push(rep.e[i].clone());
                    f.push(rep.f[i].clone());
                }
                Some((i, prev)) => {
                    e.push(rep.e[*i].commutator(&e[*prev]));
                    f.push(rep.f[*i].commutator(&f[*prev]));
                }
            }
        }
        RootVectors { e, f }
    }
}

/// Scaling data fixing the paper-normalized invariant form on g: the trace
/// form on the vector representation matched against (α_i^∨, α_j^∨) =
/// a_ij/d_j on Cartan elements.
pub struct CasimirCtx {
    pub cartan_dual: Mat<Rat>,
    pub norms: Vec<Rat>,
}

fn trace_product(a: &SpMat, b: &SpMat) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..a.nrows {
        for (j, va) in a.row(i) {
            for (k, vb) in b.row(*j) {
                if *k == i {
                    acc += va.clone() * vb.clone();
                }
            }
        }
    }
    acc
}

impl CasimirCtx {
    pub fn new(datum: &LieDatum) -> Result<Self> {
        let v = vector_rep(datum)?;
        // κ·tr_V(H_1²) = (α_1^∨, α_1^∨) = a_11/d_1
        let t11 = trace_product(&v.h[0], &v.h[0]);
        let kappa = rat(2) / (rat(datum.d(1)) * t11);
        let rv = RootVectors::build(&v);
        let norms: Vec<Rat> = rv
            .e
            .iter()
            .zip(&rv.f)
            .map(|(e, f)| kappa.clone() * trace_product(e, f))
            .collect();
        assert!(norms.iter().all(|n| !n.is_zero()));
        let r = datum.rank;
        let mut cartan = Mat::<Rat>::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                cartan[(i, j)] = rat(datum.a(i + 1, j + 1)) / rat(datum.d(j + 1));
            }
        }
        let cartan_dual = cartan.inverse().expect("Cartan form nondegenerate");
        Ok(CasimirCtx {
            cartan_dual,
            norms,
        })
    }
}

/// Ω^{(i,j)} on a tensor module: Σ dual-basis pairs acting on legs i and j.
pub fn omega_pair(
    tm: &TensorModule,
    ctx: &CasimirCtx,
    rvs: &[RootVectors],
    i: usize,
    j: usize,
) -> SpMat {
    let r = tm.datum().rank;
    let mut out = SpMat::zeros(tm.dim, tm.dim);
    for a in 0..r {
        for b in 0..r {
            let c = &ctx.cartan_dual[(a, b)];
            if c.is_zero() {
                continue;
            }
            out = out.add(
                &tm.on_two_legs(&tm.factors[i].h[a], i, &tm.factors[j].h[b], j)
                    .scale(c),
            );
        }
    }
    for (b, n) in ctx.norms.iter().enumerate() {
        let inv = Rat::one() / n.clone();
        out = out.add(
            &tm.on_two_legs(&rvs[i].e[b], i, &rvs[j].f[b], j)
                .scale(&inv),
        );
        out = out.add(
            &tm.on_two_legs(&rvs[i].f[b], i, &rvs[j].e[b], j)
                .scale(&inv),
        );
    }
    out
}

/// Casimir operator Ω₀ on a single representation.
pub fn casimir_element(rep: &MatrixRep, ctx: &CasimirCtx) -> SpMat {
    let rv = RootVectors::build(rep);
    let r = rep.datum.rank;
    let mut out = SpMat::zeros(rep.dim, rep.dim);
    for a in 0..r {
        for b in 0..r {
            let c = &ctx.cartan_dual[(a, b)];
            if c.is_zero() {
                continue;
            }
            out = out.add(&rep.h[a].mat_mul(&rep.h[b]).scale(c));
        }
    }
    for (b, n) in ctx.norms.iter().enumerate() {
        let inv = Rat::one() / n.clone();
        out = out.add(&rv.e[b].mat_mul(&rv.f[b]).scale(&inv));
        out = out.add(&rv.f[b].mat_mul(&rv.e[b]).scale(&inv));
    }
    out
}

/// Ω on A⊗B (two-factor convenience wrapper).
pub fn casimir_tensor(rep_a: &MatrixRep, rep_b: &MatrixRep) -> Result<(TensorModule, SpMat)> {
    let tm = TensorModule::new(vec![rep_a.clone(), rep_b.clone()])?;
    let ctx = CasimirCtx::new(tm.datum())?;
    let rvs: Vec<RootVectors> = tm.factors.iter().map(RootVectors::build).collect();
    let om = omega_pair(&tm, &ctx, &rvs, 0, 1);
    Ok((tm, om))
}

/// All pairwise Ω^{(i,j)} (i < j) on a tensor module.
pub fn omega_pairs(tm: &TensorModule) -> Result<Vec<(usize, usize, SpMat)>> {
    let ctx = CasimirCtx::new(tm.datum())?;
    let rvs: Vec<RootVectors> = tm.factors.iter().map(RootVectors::build).collect();
    let n = tm.factors.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j, omega_pair(&tm, &ctx, &rvs, i, j)));
        }
    }
    Ok(out)
}

/// Quadratic Gaudin Hamiltonians ℋ_i = Σ_{j≠i} Ω^{(i,j)}/(z_i − z_j).
pub fn gaudin_hamiltonians(tm: &TensorModule, z: &[Rat]) -> Result<Vec<SpMat>> {
    assert_eq!(z.len(), tm.factors.len());
    for i in 0..z.len() {
        for j in (i + 1)..z.len() {
            if z[i] == z[j] {
                return Err(Error::CoincidentPoints);
            }
        }
    }
    let pairs = omega_pairs(tm)?;
    let n = tm.factors.len();
    let mut hams: Vec<SpMat> = (0..n).map(|_| SpMat::zeros(tm.dim, tm.dim)).collect();
    for (i, j, om) in &pairs {
        let cij = Rat::one() / (z[*i].clone() - z[*j].clone());
        hams[*i] = hams[*i].add(&om.scale(&cij));
        hams[*j] = hams[*j].add(&om.scale(&-cij));
    }
    Ok(hams)
}

// ---------------------------------------------------------------------------
// the canonical weight function
// ---------------------------------------------------------------------------

/// Value of the canonical weight function ω(z, t) in the tensor module, with
/// the t-variables grouped by color. Generic over the scalar type so exact
/// rational, quadratic-tower and floating/complex roots all evaluate through
/// the same code path.
pub fn weight_function<T: Scalar + FromRat>(
    tm: &TensorModule,
    z: &[T],
    t_by_color: &[Vec<T>],
) -> Result<Vec<T>> {
    let n = tm.factors.len();
    assert_eq!(z.len(), n);
    let r = tm.datum().rank;
    assert_eq!(t_by_color.len(), r);
    // flatten the variables, remembering colors
    let mut vars: Vec<(usize, T)> = Vec::new();
    for (color, group) in t_by_color.iter().enumerate() {
        for v in group {
            vars.push((color, v.clone()));
        }
    }
    let l = vars.len();
    // accumulate Σ_σ ω_{I,σ} per color word I
    let mut coeffs: HashMap<Vec<Vec<usize>>, T> = HashMap::new();
    let mut assignment: Vec<Vec<usize>> = vec![Vec::new(); n];
    distribute(&mut assignment, l, 0, &vars, z, &mut coeffs)?;
    // assemble Σ_I coeff_I · F_I v
    let mut out = vec![T::zero(); tm.dim];
    for (words, coeff) in coeffs {
        if coeff.is_zero() {
            continue;
        }
        let mut factor_vecs: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for (s, word) in words.iter().enumerate() {
            let rep = &tm.factors[s];
            let mut v = vec![Rat::zero(); rep.dim];
            v[rep.highest] = Rat::one();
            for &color in word.iter().rev() {
                v = rep.f[color].apply_rat(&v);
            }
            factor_vecs.push(v);
        }
        add_outer_product(tm, &factor_vecs, &coeff, &mut out);
    }
    Ok(out)
}

/// Recursively distribute the variables over the factors, each configuration
/// visited exactly once: variable `placed` is inserted at every position of
/// every factor word before recursing. The chain coefficient for factor s
/// with variables (u_1,…,u_j) is 1/((u_1−u_2)…(u_{j−1}−u_j)(u_j−z_s)).
fn distribute<T: Scalar + FromRat>(
    assignment: &mut Vec<Vec<usize>>,
    l: usize,
    placed: usize,
    vars: &[(usize, T)],
    z: &[T],
    coeffs: &mut HashMap<Vec<Vec<usize>>, T>,
) -> Result<()> {
    if placed == l {
        let mut coeff = T::one();
        for (s, word) in assignment.iter().enumerate() {
            for w in 0..word.len() {
                let hi = &vars[word[w]].1;
                let lo = if w + 1 < word.len() {
                    vars[word[w + 1]].1.clone()
                } else {
                    z[s].clone()
                };
                let den = hi.clone() - lo;
                if den.is_zero() {
                    return Err(Error::ForbiddenCoincidence(
                        "weight function denominator vanishes".into(),
                    ));
                }
                coeff = coeff / den;
            }
        }
        let words: Vec<Vec<usize>> = assignment
            .iter()
            .map(|w| w.iter().map(|&v| vars[v].0).collect())
            .collect();
        let e = coeffs.entry(words).or_insert_with(T::zero);
        *e = e.clone() + coeff;
        return Ok(());
    }
    for s in 0..assignment.len() {
        for pos in 0..=assignment[s].len() {
            assignment[s].insert(pos, placed);
            distribute(assignment, l, placed + 1, vars, z, coeffs)?;
            assignment[s].remove(pos);
        }
    }
    Ok(())
}

fn add_outer_product<T: Scalar + FromRat>(
    tm: &TensorModule,
    factor_vecs: &[Vec<Rat>],
    coeff: &T,
    out: &mut [T],
) {
    // iterate nonzero supports of each factor vector
    let supports: Vec<Vec<usize>> = factor_vecs
        .iter()
        .map(|v| {
            (0..v.len())
                .filter(|&k| !v[k].is_zero())
                .collect::<Vec<_>>()
        })
        .collect();
    if supports.iter().any(|s| s.is_empty()) {
        return;
    }
    let mut stack = vec![0usize; factor_vecs.len()];
    loop {
        let parts: Vec<usize> = stack
            .iter()
            .enumerate()
            .map(|(s, &k)| supports[s][k])
            .collect();
        let mut val = coeff.clone();
        for (s, &p) in parts.iter().enumerate() {
            val = val * T::from_rat(&factor_vecs[s][p]);
        }
        let idx = tm.index(&parts);
        out[idx] = out[idx].clone() + val;
        // odometer
        let mut s = factor_vecs.len();
        loop {
            if s == 0 {
                return;
            }
            s -= 1;
            stack[s] += 1;
            if stack[s] < supports[s].len() {
                break;
            }
            stack[s] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Bethe vector verification and completeness
// ---------------------------------------------------------------------------

/// Roots of the tuple's polynomials in the quadratic extension tower.
pub fn tuple_roots_exact(
    tuple: &CriticalTuple,
) -> Result<(TowerBuilder, Vec<Vec<TowerElem>>)> {
    let mut tb = TowerBuilder::new();
    let mut raw: Vec<Vec<TowerElem>> = Vec::with_capacity(tuple.polys.len());
    for p in &tuple.polys {
        let mut group = Vec::new();
        match p.degree().unwrap_or(0) {
            0 => {}
            1 => {
                group.push(TowerElem::rational(-p.coeff(0)));
            }
            2 => {
                let s = -p.coeff(1);
                let q = p.coeff(0);
                let (a, b) = tb.quadratic_roots(&s, &q)?;
                group.push(a);
                group.push(b);
            }
            d => {
                return Err(Error::ExcludedCase(format!(
                    "factor of degree {d} not supported by the exact root path"
                )))
            }
        }
        raw.push(group);
    }
    // lift everything into the final tower so mixed arithmetic works
    let roots = raw
        .into_iter()
        .map(|g| g.into_iter().map(|e| tb.lift(&e)).collect())
        .collect();
    Ok((tb, roots))
}

/// Report of the four Bethe-vector checks for one critical tuple.
#[derive(Clone, Debug, Serialize)]
pub struct BetheVectorReport {
    pub label: LengthLabel,
    pub mu: Vec<String>,
    pub nonzero: bool,
    pub singular: bool,
    pub eigenvector: bool,
    pub eigenvalue: String,
    pub exact: bool,
}

impl BetheVectorReport {
    pub fn all_pass(&self) -> bool {
        self.nonzero && self.singular && self.eigenvector
    }
}

/// The Bethe vector of a verified critical tuple inside V_λ ⊗ V_{ω₁} at
/// z = (0,1), evaluated exactly in the quadratic tower.
///
/// Roots of orthogonal colors may coincide (type D at λ_{r−1} = λ_r does
/// this); individual weight-function terms then have poles that cancel in
/// the sum. Those instances are evaluated in the rational-function field
/// with roots perturbed to t_k + m_k·x and the limit taken at x = 0.
pub fn bethe_vector_exact(
    tm: &TensorModule,
    tuple: &CriticalTuple,
) -> Result<Vec<TowerElem>> {
    let (_, roots) = tuple_roots_exact(tuple)?;
    let z: Vec<TowerElem> = vec![
        TowerElem::rational(Rat::zero()),
        TowerElem::rational(Rat::one()),
    ];
    let flat: Vec<&TowerElem> = roots.iter().flatten().collect();
    let collision = (0..flat.len())
        .any(|i| (i + 1..flat.len()).any(|j| flat[i] == flat[j]));
    if !collision {
        return weight_function(tm, &z, &roots);
    }
    type Rf = crate::poly::RationalFn<TowerElem>;
    let var = |slope: i64| {
        Rf::from_poly(crate::poly::Poly::new(vec![
            TowerElem::zero(),
            TowerElem::rational(rat(slope)),
        ]))
    };
    let mut slope = 0i64;
    let roots_rf: Vec<Vec<Rf>> = roots
        .iter()
        .map(|group| {
            group
                .iter()
                .map(|t| {
                    slope += 1;
                    Rf::from_poly(crate::poly::Poly::constant(t.clone())) + var(slope)
                })
                .collect()
        })
        .collect();
    let z_rf: Vec<Rf> = z
        .iter()
        .map(|v| Rf::from_poly(crate::poly::Poly::constant(v.clone())))
        .collect();
    let w = weight_function::<Rf>(tm, &z_rf, &roots_rf)?;
    w.into_iter()
        .map(|rf| {
            rf.eval(&TowerElem::zero()).ok_or_else(|| {
                Error::ForbiddenCoincidence("weight function limit does not exist".into())
            })
        })
        .collect()
}


/// Verify nonzero / singular / eigenvector / eigenvalue for the Bethe vector
/// of `tuple` in V_λ ⊗ V_{ω₁} at z = (0,1), exactly.
pub fn verify_bethe_vector(
    datum: &LieDatum,
    lambda: &Weight,
    tm: &TensorModule,
    h1: &SpMat,
    tuple: &CriticalTuple,
    label: LengthLabel,
) -> Result<BetheVectorReport> {
    let inst = BAEInstance::two_point(datum.clone(), lambda.clone(), tuple.lvec());
    let predicted = gaudin_eigenvalue(&inst, tuple, 1)?;
    let w = bethe_vector_exact(tm, tuple)?;
    let nonzero = w.iter().any(|x| !x.is_zero());
    let r = datum.rank;
    let mut singular = true;
    for i in 0..r {
        let img = tm.e_tot[i].apply(&w);
        if img.iter().any(|x| !x.is_zero()) {
            singular = false;
        }
    }
    let hw = h1.apply(&w);
    let ev = TowerElem::from_rat(&predicted);
    let eigenvector = hw
        .iter()
        .zip(&w)
        .all(|(a, b)| (a.clone() - ev.clone() * b.clone()).is_zero());
    // the vector must have weight λ + ω₁ − α(l)
    let mu = {
        let mut m = lambda.add(&datum.omega(1));
        for (i, &li) in tuple.lvec().iter().enumerate() {
            m = m.sub(&datum.simple_root(i + 1).scale(&rat(li as i64)));
        }
        m
    };
    for (idx, x) in w.iter().enumerate() {
        if !x.is_zero() {
            assert_eq!(tm.weights[idx], mu, "Bethe vector weight mismatch");
        }
    }
    Ok(BetheVectorReport {
        label,
        mu: mu.as_strings(),
        nonzero,
        singular,
        eigenvector,
        eigenvalue: crate::poly::ratstr::to_string(&predicted),
        exact: true,
    })
}

/// Completeness report for V_λ ⊗ V_{ω₁} at z = (0, 1).
#[derive(Clone, Debug, Serialize)]
pub struct CompletenessReport {
    pub family: String,
    pub rank: usize,
    pub lambda: Vec<String>,
    pub labels: usize,
    pub sing_dim: usize,
    pub vectors: Vec<BetheVectorReport>,
    pub independent: bool,
    pub spans: bool,
    pub distinct_eigenvalues: bool,
    /// label pairs sharing an eigenvalue (expected for type D when
    /// λ_{r−1} = λ_r: the diagram automorphism forces the degeneracy)
    pub degenerate_pairs: Vec<(String, String)>,
    pub all_pass: bool,
}

/// Build V_λ ⊗ V_{ω₁}, solve every admissible label in closed form, verify
/// all Bethe vectors, and check basis/spectrum statements.
pub fn completeness_check(
    datum: &LieDatum,
    lambda: &Weight,
    bound: usize,
) -> Result<CompletenessReport> {
    let vl = build_irrep(datum, lambda, bound)?;
    let v1 = vector_rep(datum)?;
    let tm = TensorModule::new(vec![vl, v1])?;
    let z = vec![Rat::zero(), Rat::one()];
    let hams = gaudin_hamiltonians(&tm, &z)?;
    let labels = admissible_lengths(datum, lambda)?;
    let dec = decompose(datum, lambda)?;
    let mut vectors = Vec::new();
    for (mu, label) in &dec {
        let tuple = solve_closed_form(datum, lambda, *label)?;
        let rep = verify_bethe_vector(datum, lambda, &tm, &hams[0], &tuple, *label)?;
        assert_eq!(rep.mu, mu.as_strings());
        vectors.push(rep);
    }
    // independence: the vectors live in pairwise distinct weight spaces
    let mut mus: Vec<&Vec<String>> = vectors.iter().map(|v| &v.mu).collect();
    mus.sort();
    mus.dedup();
    let independent = mus.len() == vectors.len() && vectors.iter().all(|v| v.nonzero);
    let sing_dim = tm.total_singular_dimension();
    let spans = independent && sing_dim == vectors.len();
    // spectrum: eigenvalues pairwise distinct except the documented D-type pair
    let mut degenerate_pairs = Vec::new();
    let mut distinct = true;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            if vectors[i].eigenvalue == vectors[j].eigenvalue {
                let li = vectors[i].label;
                let lj = vectors[j].label;
                let d_pair = datum.family == Family::D
                    && li.value == lj.value
                    && li.value == datum.rank - 1
                    && (li.bar != lj.bar);
                if d_pair {
                    degenerate_pairs.push((li.to_string(), lj.to_string()));
                } else {
                    distinct = false;
                }
            }
        }
    }
    let all_pass = vectors.iter().all(|v| v.all_pass()) && spans && distinct;
    Ok(CompletenessReport {
        family: datum.family.to_string(),
        rank: datum.rank,
        lambda: lambda.as_strings(),
        labels: labels.len(),
        sing_dim,
        vectors,
        independent,
        spans,
        distinct_eigenvalues: distinct,
        degenerate_pairs,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn datum(f: Family, r: usize) -> LieDatum {
        LieDatum::new(f, r).unwrap()
    }

    fn check_chevalley(rep: &MatrixRep) {
        let r = rep.datum.rank;
        for i in 0..r {
            for j in 0..r {
                // [E_i, F_j] = δ_ij H_i
                let c = rep.e[i].commutator(&rep.f[j]);
                if i == j {
                    assert!(c.sub(&rep.h[i]).is_zero(), "[E,F] ≠ H at {i}");
                } else {
                    assert!(c.is_zero(), "[E_{i}, F_{j}] ≠ 0");
                }
                // [H_i, E_j] = a_ij E_j, [H_i, F_j] = −a_ij F_j
                let a = rat(rep.datum.a(i + 1, j + 1));
                assert!(rep.h[i]
                    .commutator(&rep.e[j])
                    .sub(&rep.e[j].scale(&a))
                    .is_zero());
                assert!(rep.h[i]
                    .commutator(&rep.f[j])
                    .add(&rep.f[j].scale(&a))
                    .is_zero());
            }
        }
    }

    #[test]
    fn vector_rep_dimensions_and_relations() {
        for (f, r, d) in [
            (Family::B, 2, 5),
            (Family::B, 3, 7),
            (Family::C, 3, 6),
            (Family::D, 4, 8),
        ] {
            let g = datum(f, r);
            let v = vector_rep(&g).unwrap();
            assert_eq!(v.dim, d);
            assert_eq!(v.highest_weight, g.omega(1));
            check_chevalley(&v);
            // highest vector is singular
            for i in 0..r {
                assert!(v.e[i].row(0).is_empty() || {
                    let col0: Vec<_> = (0..v.dim)
                        .filter(|&k| v.e[i].row(k).iter().any(|(c, _)| *c == 0))
                        .collect();
                    col0.is_empty()
                });
            }
        }
    }

    #[test]
    fn vector_rep_weights_b2() {
        // ±ε_i plus the zero weight
        let g = datum(Family::B, 2);
        let v = vector_rep(&g).unwrap();
        let mut ws: Vec<Weight> = v.weights.clone();
        ws.sort_by_key(|w| format!("{w:?}"));
        let mut expect = vec![
            Weight::from_i64(&[1, 0]),
            Weight::from_i64(&[-1, 2]),
            Weight::from_i64(&[0, 0]),
            Weight::from_i64(&[1, -2]),
            Weight::from_i64(&[-1, 0]),
        ];
        expect.sort_by_key(|w| format!("{w:?}"));
        assert_eq!(ws, expect);
    }

    #[test]
    fn casimir_on_vector_rep_b2() {
        // Ω₀ acts on V_{ω₁} by (ω₁+2ρ, ω₁) = 8 in the paper normalization
        let g = datum(Family::B, 2);
        let v = vector_rep(&g).unwrap();
        let ctx = CasimirCtx::new(&g).unwrap();
        let om = casimir_element(&v, &ctx);
        let expect = SpMat::identity(v.dim).scale(&rat(8));
        assert!(om.sub(&expect).is_zero());
    }

    #[test]
    fn casimir_constant_matches_formula() {
        for (f, r) in [(Family::B, 2), (Family::C, 3), (Family::D, 4)] {
            let g = datum(f, r);
            let v = vector_rep(&g).unwrap();
            let ctx = CasimirCtx::new(&g).unwrap();
            let om = casimir_element(&v, &ctx);
            let c = g.casimir_scalar(&g.omega(1));
            assert!(om.sub(&SpMat::identity(v.dim).scale(&c)).is_zero(), "{f:?}");
        }
    }

    #[test]
    fn casimir_tensor_commutes_and_matches_coproduct_identity() {
        let g = datum(Family::B, 2);
        let v = vector_rep(&g).unwrap();
        let (tm, om) = casimir_tensor(&v, &v).unwrap();
        // Δ(u)Ω = ΩΔ(u) on generators
        for i in 0..2 {
            assert!(om.commutator(&tm.e_tot[i]).is_zero());
            assert!(om.commutator(&tm.f_tot[i]).is_zero());
            assert!(om.commutator(&tm.h_tot[i]).is_zero());
        }
        // Ω^{(1,2)} = ½(ΔΩ₀ − 1⊗Ω₀ − Ω₀⊗1)
        let ctx = CasimirCtx::new(&g).unwrap();
        let om0 = casimir_element(&v, &ctx);
        let tmref = &tm;
        let left = om.scale(&rat(2));
        let delta: SpMat = {
            // Ω₀ of the tensor module equals casimir on the 2-factor rep:
            // compute as Σ dual pairs of total operators
            let rv_t = RootVectors::build(&MatrixRep {
                datum: g.clone(),
                dim: tm.dim,
                e: tm.e_tot.clone(),
                f: tm.f_tot.clone(),
                h: tm.h_tot.clone(),
                weights: tm.weights.clone(),
                highest: 0,
                highest_weight: tm.weights[0].clone(),
            });
            let r = g.rank;
            let mut out = SpMat::zeros(tm.dim, tm.dim);
            for a in 0..r {
                for b in 0..r {
                    let c = &ctx.cartan_dual[(a, b)];
                    if c.is_zero() {
                        continue;
                    }
                    out = out.add(&tm.h_tot[a].mat_mul(&tm.h_tot[b]).scale(c));
                }
            }
            for (b, n) in ctx.norms.iter().enumerate() {
                let inv = Rat::one() / n.clone();
                out = out.add(&rv_t.e[b].mat_mul(&rv_t.f[b]).scale(&inv));
                out = out.add(&rv_t.f[b].mat_mul(&rv_t.e[b]).scale(&inv));
            }
            out
        };
        let left2 = delta
            .sub(&tmref.on_leg(&om0, 0))
            .sub(&tmref.on_leg(&om0, 1));
        assert!(left.sub(&left2).is_zero());
    }

    #[test]
    fn build_irrep_b2_20() {
        let g = datum(Family::B, 2);
        let lam = Weight::from_i64(&[2, 0]);
        let rep = build_irrep(&g, &lam, 4).unwrap();
        assert_eq!(rep.dim, 14);
        check_chevalley(&rep);
        // Casimir acts by (λ+ρ,λ+ρ)−(ρ,ρ) = 20
        let ctx = CasimirCtx::new(&g).unwrap();
        let om = casimir_element(&rep, &ctx);
        assert_eq!(g.casimir_scalar(&lam), rat(20));
        assert!(om.sub(&SpMat::identity(rep.dim).scale(&rat(20))).is_zero());
    }

    #[test]
    fn build_irrep_reachability() {
        let g = datum(Family::B, 2);
        // odd spin label is not reachable
        assert!(matches!(
            build_irrep(&g, &Weight::from_i64(&[1, 1]), 6),
            Err(Error::NotReachable(_))
        ));
        assert!(matches!(
            build_irrep(&g, &Weight::from_i64(&[3, 0]), 2),
            Err(Error::BoundExceeded { .. })
        ));
        // ω₁ rebuilds the vector representation itself
        let rep = build_irrep(&g, &g.omega(1), 2).unwrap();
        assert_eq!(rep.dim, 5);
        // C: everything integral is reachable
        let c3 = datum(Family::C, 3);
        for lam in [[1i64, 0, 0], [0, 1, 0]] {
            let rep = build_irrep(&c3, &Weight::from_i64(&lam), 3).unwrap();
            assert_eq!(
                crate::Int::from(rep.dim),
                c3.weyl_dim(&Weight::from_i64(&lam)).unwrap()
            );
            check_chevalley(&rep);
        }
    }

    #[test]
    fn hamiltonians_commute_and_sum_to_zero() {
        let g = datum(Family::B, 2);
        let v = vector_rep(&g).unwrap();
        let tm = TensorModule::new(vec![v.clone(), v.clone(), v]).unwrap();
        let z = vec![rat(0), rat(1), rat(3)];
        let hams = gaudin_hamiltonians(&tm, &z).unwrap();
        let mut sum = SpMat::zeros(tm.dim, tm.dim);
        for h in &hams {
            sum = sum.add(h);
        }
        assert!(sum.is_zero());
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(hams[i].commutator(&hams[j]).is_zero());
            }
        }
        for i in 0..2 {
            assert!(hams[0].commutator(&tm.e_tot[i]).is_zero());
            assert!(hams[0].commutator(&tm.f_tot[i]).is_zero());
        }
        assert!(gaudin_hamiltonians(&tm, &[rat(0), rat(0), rat(1)]).is_err());
    }

    #[test]
    fn two_point_hamiltonian_on_top_component() {
        // B₂, V_{(2,0)}⊗V_{ω₁}, z=(0,1): eigenvalue on the highest vector is
        // (λ, ω₁)/(z₁−z₂) = −4
        let g = datum(Family::B, 2);
        let vl = build_irrep(&g, &Weight::from_i64(&[2, 0]), 4).unwrap();
        let v1 = vector_rep(&g).unwrap();
        let tm = TensorModule::new(vec![vl, v1]).unwrap();
        let hams = gaudin_hamiltonians(&tm, &[rat(0), rat(1)]).unwrap();
        let hv = tm.highest_vector();
        let img = hams[0].apply_rat(&hv);
        let expect: Vec<Rat> = hv.iter().map(|x| x.clone() * rat(-4)).collect();
        assert_eq!(img, expect);
        // n = 2: ℋ₁ = −ℋ₂
        assert!(hams[0].add(&hams[1]).is_zero());
    }

    #[test]
    fn weight_function_l0_and_l1() {
        let g = datum(Family::B, 2);
        let v = vector_rep(&g).unwrap();
        let tm = TensorModule::new(vec![v.clone(), v]).unwrap();
        // l = 0: the highest tensor vector
        let w0 =
            weight_function::<Rat>(&tm, &[rat(0), rat(1)], &[vec![], vec![]]).unwrap();
        assert_eq!(w0, tm.highest_vector());
        // l = 1 at t = 1/2, z = (0,1): 2·F₁v⊗v − 2·v⊗F₁v
        let w1 = weight_function::<Rat>(
            &tm,
            &[rat(0), rat(1)],
            &[vec![ratio(1, 2)], vec![]],
        )
        .unwrap();
        let f1v = tm.factors[0].f[0].apply_rat(&{
            let mut v0 = vec![Rat::zero(); 5];
            v0[0] = Rat::one();
            v0
        });
        let k = f1v.iter().position(|x| !x.is_zero()).unwrap();
        let mut expect = vec![Rat::zero(); tm.dim];
        expect[tm.index(&[k, 0])] = rat(2) * f1v[k].clone();
        expect[tm.index(&[0, k])] = rat(-2) * f1v[k].clone();
        assert_eq!(w1, expect);
        // E₁ kills it exactly when λ₁ = 1 (here λ = ω₁)
        let img = tm.e_tot[0].apply_rat(&w1);
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn weight_function_sigma_invariance() {
        // permuting same-color values leaves the vector unchanged
        let g = datum(Family::B, 2);
        let v = vector_rep(&g).unwrap();
        let tm = TensorModule::new(vec![v.clone(), v]).unwrap();
        let t1 = crate::C64::new(0.3, 0.2);
        let t2 = crate::C64::new(-0.6, 1.0);
        let z = [crate::C64::new(0.0, 0.0), crate::C64::new(1.0, 0.0)];
        let wa = weight_function::<crate::C64>(&tm, &z, &[vec![t1, t2], vec![]]).unwrap();
        let wb = weight_function::<crate::C64>(&tm, &z, &[vec![t2, t1], vec![]]).unwrap();
        for (a, b) in wa.iter().zip(&wb) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn verify_bethe_vector_b2_20_l1() {
        // B₂, λ=(2,0), l=1: c₁ = λ₁/(λ₁+1) = 2/3; eigenvalue −4+6 = 2
        let g = datum(Family::B, 2);
        let lam = Weight::from_i64(&[2, 0]);
        let vl = build_irrep(&g, &lam, 4).unwrap();
        let v1 = vector_rep(&g).unwrap();
        let tm = TensorModule::new(vec![vl, v1]).unwrap();
        let hams = gaudin_hamiltonians(&tm, &[rat(0), rat(1)]).unwrap();
        let tuple = solve_closed_form(&g, &lam, LengthLabel::plain(1)).unwrap();
        assert_eq!(
            tuple.polys[0],
            crate::poly::Poly::linear_from_root(ratio(2, 3))
        );
        let rep =
            verify_bethe_vector(&g, &lam, &tm, &hams[0], &tuple, LengthLabel::plain(1)).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.eigenvalue, "2");
    }

    #[test]
    fn negative_control_non_critical_root_fails_eigen() {
        let g = datum(Family::B, 2);
        let lam = Weight::from_i64(&[2, 0]);
        let vl = build_irrep(&g, &lam, 4).unwrap();
        let v1 = vector_rep(&g).unwrap();
        let tm = TensorModule::new(vec![vl, v1]).unwrap();
        let hams = gaudin_hamiltonians(&tm, &[rat(0), rat(1)]).unwrap();
        let bad = CriticalTuple::new(vec![
            crate::poly::Poly::linear_from_root(ratio(1, 3)),
            crate::poly::Poly::one(),
        ]);
        let rep =
            verify_bethe_vector(&g, &lam, &tm, &hams[0], &bad, LengthLabel::plain(1)).unwrap();
        assert!(!rep.singular || !rep.eigenvector);
    }

    #[test]
    fn completeness_b2_20() {
        let g = datum(Family::B, 2);
        let rep = completeness_check(&g, &Weight::from_i64(&[2, 0]), 4).unwrap();
        assert!(rep.all_pass, "{rep:?}");
        assert_eq!(rep.labels, rep.sing_dim);
        assert!(rep.degenerate_pairs.is_empty());
    }

    #[test]
    fn monotonicity_of_casimir_norm_on_decompositions() {
        // comparable dominant μ > ν have (μ+ρ,μ+ρ) > (ν+ρ,ν+ρ)
        for (f, r, lam) in [
            (Family::B, 2, vec![2i64, 2]),
            (Family::C, 3, vec![1, 1, 1]),
            (Family::D, 4, vec![1, 0, 1, 1]),
        ] {
            let g = datum(f, r);
            let lam = Weight::from_i64(&lam);
            let dec = decompose(&g, &lam).unwrap();
            for (i, (mi, _)) in dec.iter().enumerate() {
                for (mj, _) in dec.iter().skip(i + 1) {
                    if g.dominance_gt(mi, mj) {
                        let rho = g.rho();
                        let a = g.bilinear(&mi.add(&rho), &mi.add(&rho));
                        let b = g.bilinear(&mj.add(&rho), &mj.add(&rho));
                        assert!(a > b);
                    }
                }
            }
        }
    }
}
