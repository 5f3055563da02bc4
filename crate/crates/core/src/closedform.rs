//! Admissible lengths, the decomposition of V_λ ⊗ V_{ω₁}, and the explicit
//! closed-form critical tuples for types B, C, D at z = (0, 1).
//!
//! Quadratic factors are produced and stored through root sum/product data;
//! no radicals appear here. Every denominator of the product formulas is
//! checked before dividing — admissibility should keep them all nonzero, and
//! a violation is surfaced as [`Error::DegenerateFormula`].

use crate::bae::CriticalTuple;
use crate::poly::Poly;
use crate::rootsys::{Family, LieDatum, Weight};
use crate::{rat, Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Length label of an admissible degree vector. `bar` is only allowed in
/// type D at value r−1, where two summands share the same length.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LengthLabel {
    pub value: usize,
    pub bar: bool,
}

impl LengthLabel {
    pub fn plain(value: usize) -> Self {
        LengthLabel { value, bar: false }
    }

    pub fn barred(value: usize) -> Self {
        LengthLabel { value, bar: true }
    }

    /// Parse "4" or "3bar".
    pub fn parse(s: &str) -> Option<Self> {
        if let Some(v) = s.strip_suffix("bar") {
            Some(Self::barred(v.trim().parse().ok()?))
        } else {
            Some(Self::plain(s.trim().parse().ok()?))
        }
    }
}

impl fmt::Display for LengthLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value, if self.bar { "bar" } else { "" })
    }
}

impl fmt::Debug for LengthLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn check_dominant(lambda: &Weight) -> Result<()> {
    if lambda.is_dominant_integral() {
        Ok(())
    } else {
        Err(Error::NonDominant(format!("{lambda:?}")))
    }
}

fn positive(lambda: &Weight, i: usize) -> bool {
    lambda.coord(i).is_positive()
}

/// All admissible length labels for (λ, ω₁), sorted.
pub fn admissible_lengths(datum: &LieDatum, lambda: &Weight) -> Result<Vec<LengthLabel>> {
    check_dominant(lambda)?;
    let r = datum.rank;
    let mut out = vec![LengthLabel::plain(0)];
    match datum.family {
        Family::A => {
            for l in 1..=r {
                if positive(lambda, l) {
                    out.push(LengthLabel::plain(l));
                }
            }
        }
        Family::B => {
            for l in 1..=r {
                if positive(lambda, l) {
                    out.push(LengthLabel::plain(l));
                }
            }
            if lambda.coord(r) > &Rat::one() {
                out.push(LengthLabel::plain(r + 1));
            }
            for l in (r + 2)..=(2 * r) {
                if positive(lambda, 2 * r - l + 1) {
                    out.push(LengthLabel::plain(l));
                }
            }
        }
        Family::C => {
            for l in 1..=r {
                if positive(lambda, l) {
                    out.push(LengthLabel::plain(l));
                }
            }
            for l in (r + 1)..=(2 * r - 1) {
                if positive(lambda, 2 * r - l) {
                    out.push(LengthLabel::plain(l));
                }
            }
        }
        Family::D => {
            for l in 1..=(r - 1) {
                if positive(lambda, l) {
                    out.push(LengthLabel::plain(l));
                }
            }
            if positive(lambda, r) {
                out.push(LengthLabel::barred(r - 1));
            }
            if positive(lambda, r - 1) && positive(lambda, r) {
                out.push(LengthLabel::plain(r));
            }
            for l in (r + 1)..=(2 * r - 2) {
                if positive(lambda, 2 * r - l - 1) {
                    out.push(LengthLabel::plain(l));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The degree vector (l_1, …, l_r) carried by an admissible label.
pub fn l_vector(datum: &LieDatum, label: LengthLabel) -> Result<Vec<usize>> {
    let r = datum.rank;
    let l = label.value;
    let mut v = vec![0usize; r];
    let fail = || Err(Error::NotAdmissible(format!("label {label} in {datum:?}")));
    match datum.family {
        Family::A => {
            if label.bar || l > r {
                return fail();
            }
            for i in 0..l {
                v[i] = 1;
            }
        }
        Family::B => {
            if label.bar || l > 2 * r {
                return fail();
            }
            if l <= r {
                for i in 0..l {
                    v[i] = 1;
                }
            } else {
                let m = 2 * r - l;
                for i in 0..m {
                    v[i] = 1;
                }
                for i in m..r {
                    v[i] = 2;
                }
            }
        }
        Family::C => {
            if label.bar || l > 2 * r - 1 {
                return fail();
            }
            if l <= r {
                for i in 0..l {
                    v[i] = 1;
                }
            } else {
                let m = 2 * r - 1 - l;
                for i in 0..m {
                    v[i] = 1;
                }
                for i in m..(r - 1) {
                    v[i] = 2;
                }
                v[r - 1] = 1;
            }
        }
        Family::D => {
            if label.bar {
                if l != r - 1 {
                    return fail();
                }
                for i in 0..(r - 2) {
                    v[i] = 1;
                }
                v[r - 1] = 1;
            } else if l > 2 * r - 2 {
                return fail();
            } else if l <= r {
                for i in 0..l {
                    v[i] = 1;
                }
            } else {
                let m = 2 * r - l - 2;
                for i in 0..m {
                    v[i] = 1;
                }
                for i in m..(r - 2) {
                    v[i] = 2;
                }
                v[r - 2] = 1;
                v[r - 1] = 1;
            }
        }
    }
    debug_assert_eq!(v.iter().sum::<usize>(), l + usize::from(label.bar) * 0);
    Ok(v)
}

/// Decomposition of V_λ ⊗ V_{ω₁}: the summand at label l has highest weight
/// λ + ω₁ − α(l). All multiplicities are 1.
pub fn decompose(datum: &LieDatum, lambda: &Weight) -> Result<Vec<(Weight, LengthLabel)>> {
    let labels = admissible_lengths(datum, lambda)?;
    let mut out = Vec::with_capacity(labels.len());
    for label in labels {
        let lv = l_vector(datum, label)?;
        let mut mu = lambda.add(&datum.omega(1));
        for (i, &li) in lv.iter().enumerate() {
            if li > 0 {
                mu = mu.sub(&datum.simple_root(i + 1).scale(&rat(li as i64)));
            }
        }
        assert!(
            mu.is_dominant_integral(),
            "summand weight must be dominant: {mu:?} at label {label}"
        );
        out.push((mu, label));
    }
    Ok(out)
}

/// Per-component shape of a closed-form tuple.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorShape {
    One,
    Linear(Rat),
    /// monic quadratic by (root sum, root product)
    Quadratic(Rat, Rat),
}

/// Structured closed-form solution; assembles into a [`CriticalTuple`].
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionShape {
    pub factors: Vec<FactorShape>,
}

impl SolutionShape {
    pub fn to_tuple(&self) -> CriticalTuple {
        CriticalTuple::new(
            self.factors
                .iter()
                .map(|f| match f {
                    FactorShape::One => Poly::one(),
                    FactorShape::Linear(c) => Poly::linear_from_root(c.clone()),
                    FactorShape::Quadratic(s, p) => {
                        Poly::quadratic_from_sum_prod(s.clone(), p.clone())
                    }
                })
                .collect(),
        )
    }
}

struct FormulaCtx<'a> {
    lam: &'a [Rat],
}

impl<'a> FormulaCtx<'a> {
    /// λ_from + … + λ_to, empty when from > to (1-based inclusive).
    fn s(&self, from: usize, to: usize) -> Rat {
        let mut acc = Rat::zero();
        for i in from..=to.min(self.lam.len()) {
            if i >= 1 {
                acc += self.lam[i - 1].clone();
            }
        }
        acc
    }

    fn frac(&self, num: Rat, den: Rat, what: &str) -> Result<Rat> {
        if den.is_zero() {
            Err(Error::DegenerateFormula(what.to_string()))
        } else {
            Ok(num / den)
        }
    }
}

fn irat(n: i64) -> Rat {
    rat(n)
}

/// The unique closed-form critical tuple for an admissible label.
pub fn solve_closed_form(
    datum: &LieDatum,
    lambda: &Weight,
    label: LengthLabel,
) -> Result<CriticalTuple> {
    Ok(solution_shape(datum, lambda, label)?.to_tuple())
}

/// Structured form of the closed-form solution.
pub fn solution_shape(
    datum: &LieDatum,
    lambda: &Weight,
    label: LengthLabel,
) -> Result<SolutionShape> {
    check_dominant(lambda)?;
    if !admissible_lengths(datum, lambda)?.contains(&label) {
        return Err(Error::NotAdmissible(format!(
            "length {label} for λ={lambda:?} in {datum:?}"
        )));
    }
    let r = datum.rank;
    let l = label.value;
    let cx = FormulaCtx { lam: &lambda.0 };
    let mut factors = vec![FactorShape::One; r];

    // shared helper: the short-length linear coefficients of (3.4.12)-type,
    // c_j = ∏_{i=1}^j (S_i + off − i)/(S_i + off − i + 1)
    let linear_chain = |sums: &dyn Fn(usize) -> Rat, count: usize, off: i64| -> Result<Vec<Rat>> {
        let mut cs = Vec::with_capacity(count);
        let mut acc = Rat::one();
        for i in 1..=count {
            let base = sums(i) + irat(off - i as i64);
            acc = acc * cx.frac(base.clone(), base + Rat::one(), "linear chain factor")?;
            cs.push(acc.clone());
        }
        Ok(cs)
    };

    match (datum.family, label.bar) {
        (_, false) if l == 0 => {}
        (Family::A, false) => {
            // type A_r, l ≤ r: same product as the short-length formula
            let cs = linear_chain(&|i| cx.s(i, l), l, l as i64)?;
            for (j, c) in cs.into_iter().enumerate() {
                factors[j] = FactorShape::Linear(c);
            }
        }
        (Family::B, false) if l <= r - 1 => {
            let cs = linear_chain(&|i| cx.s(i, l), l, l as i64)?;
            for (j, c) in cs.into_iter().enumerate() {
                factors[j] = FactorShape::Linear(c);
            }
        }
        (Family::B, false) if l == r => {
            // imported l = r formula: λ_r enters halved
            let half = crate::ratio(1, 2);
            let sums = |i: usize| cx.s(i, r - 1) + lambda.0[r - 1].clone() * half.clone();
            let cs = linear_chain(&sums, r, r as i64)?;
            for (j, c) in cs.into_iter().enumerate() {
                factors[j] = FactorShape::Linear(c);
            }
        }
        (Family::B, false) => {
            // r+1 ≤ l ≤ 2r; m linear factors then quadratics
            let m = 2 * r - l;
            let li = l as i64;
            let ri = r as i64;
            // P_i = λ_i+…+λ_m + 2(λ_{m+1}+…+λ_{r−1}) + λ_r
            let p = |i: usize| {
                cx.s(i, m) + irat(2) * cx.s(m + 1, r - 1) + lambda.0[r - 1].clone()
            };
            let cs = linear_chain(&|i| p(i), m, li - 1)?;
            for (j, c) in cs.iter().enumerate() {
                factors[j] = FactorShape::Linear(c.clone());
            }
            let cfull = cs.last().cloned().unwrap_or_else(Rat::one);
            // ratio (Q_j − 1)/Q_j with Q_j = λ_{m+1}+…+λ_j+2λ_{j+1}+…+2λ_{r−1}+λ_r+l−j−1
            let q_ratio = |j: usize| -> Result<Rat> {
                let q = cx.s(m + 1, j)
                    + irat(2) * cx.s(j + 1, r - 1)
                    + lambda.0[r - 1].clone()
                    + irat(li - j as i64 - 1);
                cx.frac(q.clone() - Rat::one(), q, "quadratic chain factor")
            };
            // (N_i − 1)/N_i with N_i = λ_{m+1}+…+λ_{r−i} + l − r − i
            let n_ratio = |i: usize| -> Result<Rat> {
                let n = cx.s(m + 1, r - i) + irat(li - ri - i as i64);
                cx.frac(n.clone() - Rat::one(), n, "tail chain factor")
            };
            let two_sig = irat(2) * cx.s(m + 1, r - 1) + lambda.0[r - 1].clone();
            let last_ratio = cx.frac(
                two_sig.clone() + irat(2 * li - 2 * ri - 3),
                two_sig.clone() + irat(2 * li - 2 * ri - 1),
                "closing factor of the product formula",
            )?;
            let sum_prefactor = cx.frac(
                two_sig.clone() + irat(2 * li - 2 * ri - 3),
                two_sig + irat(2 * li - 2 * ri - 2),
                "sum prefactor",
            )?;
            for k in (m + 1)..=r {
                let mut full_q = Rat::one();
                for j in (m + 1)..=(r - 1) {
                    full_q *= q_ratio(j)?;
                }
                let mut part_q = Rat::one();
                for j in (m + 1)..=(k - 1) {
                    part_q *= q_ratio(j)?;
                }
                let mut tail = Rat::one();
                for i in 1..=(r - k) {
                    tail *= n_ratio(i)?;
                }
                let ab = cfull.clone() * cfull.clone()
                    * full_q.clone()
                    * part_q.clone()
                    * tail.clone()
                    * last_ratio.clone();
                let s = sum_prefactor.clone()
                    * cfull.clone()
                    * (part_q.clone() + full_q.clone() * tail.clone());
                factors[k - 1] = FactorShape::Quadratic(s, ab);
            }
        }
        (Family::C, false) if l <= r - 1 => {
            let cs = linear_chain(&|i| cx.s(i, l), l, l as i64)?;
            for (j, c) in cs.into_iter().enumerate() {
                factors[j] = FactorShape::Linear(c);
            }
        }
        (Family::C, false) if l == r => {
            let sums = |i: usize| cx.s(i, r - 1) + irat(2) * lambda.0[r - 1].clone();
            let cs = linear_chain(&sums, r - 1, (r + 1) as i64)?;
            for (j, c) in cs.iter().enumerate() {
                factors[j] = FactorShape::Linear(c.clone());
            }
            let prod = cs.last().cloned().unwrap_or_else(Rat::one);
            let lr = lambda.0[r - 1].clone();
            let cr = cx.frac(lr.clone(), lr + Rat::one(), "c_r factor at l = r")? * prod;
            factors[r - 1] = FactorShape::Linear(cr);
        }
        (Family::C, false) => {
            // r+1 ≤ l ≤ 2r−1; m linear, quadratics k = m+1..r−1, then x − c_r
            let m = 2 * r - 1 - l;
            let li = l as i64;
            let ri = r as i64;
            let u = |i: usize| cx.s(i, m) + irat(2) * cx.s(m + 1, r);
            let cs = linear_chain(&|i| u(i), m, li + 1)?;
            for (j, c) in cs.iter().enumerate() {
                factors[j] = FactorShape::Linear(c.clone());
            }
            let cfull = cs.last().cloned().unwrap_or_else(Rat::one);
            // G_i = (V_i + l − i)/(V_i + l − i + 1), V_i = λ_{m+1}+…+λ_i + 2(λ_{i+1}+…+λ_r)
            let g_ratio = |i: usize| -> Result<Rat> {
                let v = cx.s(m + 1, i) + irat(2) * cx.s(i + 1, r) + irat(li - i as i64);
                cx.frac(v.clone(), v + Rat::one(), "middle chain factor")
            };
            // (W + l+1−i−r)/(W + l+2−i−r), W = λ_{m+1}+…+λ_{r+1−i}
            let neg_ratio = |i: usize| -> Result<Rat> {
                let w = cx.s(m + 1, r + 1 - i) + irat(li + 1 - i as i64 - ri);
                cx.frac(w.clone(), w + Rat::one(), "tail chain factor")
            };
            // (λ_{m+1}+…+λ_i + l + i − 2r)/(… + 1)
            let neg2_ratio = |i: usize| -> Result<Rat> {
                let w = cx.s(m + 1, i) + irat(li + i as i64 - 2 * ri);
                cx.frac(w.clone(), w + Rat::one(), "sum tail factor")
            };
            let sig = cx.s(m + 1, r);
            let mut g_to_r = Rat::one();
            for i in (m + 1)..=r {
                g_to_r *= g_ratio(i)?;
            }
            factors[r - 1] = FactorShape::Linear(cfull.clone() * g_to_r.clone());
            for k in (m + 1)..=(r - 1) {
                let mut part_g = Rat::one();
                for i in (m + 1)..=(k - 1) {
                    part_g *= g_ratio(i)?;
                }
                let mut tail = Rat::one();
                for i in 1..=(r + 1 - k) {
                    tail *= neg_ratio(i)?;
                }
                let ab = cfull.clone() * cfull.clone() * part_g.clone() * g_to_r.clone() * tail;
                let first = cx.frac(
                    irat(2) * sig.clone() + irat(2 * li - 2 * ri),
                    irat(2) * sig.clone() + irat(2 * li + 1 - 2 * ri),
                    "sum opening factor",
                )?;
                let second = cx.frac(
                    irat(2) * sig.clone() + irat(2 * li + 2 - 2 * ri),
                    irat(2) * sig.clone() + irat(2 * li + 1 - 2 * ri),
                    "sum closing factor",
                )?;
                let mut g_from_k = Rat::one();
                let mut tail2 = Rat::one();
                for i in k..=r {
                    g_from_k *= g_ratio(i)?;
                    tail2 *= neg2_ratio(i)?;
                }
                let s = cfull.clone()
                    * part_g
                    * (first + second * g_from_k * tail2);
                factors[k - 1] = FactorShape::Quadratic(s, ab);
            }
        }
        (Family::D, true) => {
            // l = r−1 barred: linear chain for 1..r−2, trivial at r−1, x−c_r
            let sums = |i: usize| cx.s(i, r - 2) + lambda.0[r - 1].clone();
            let cs = linear_chain(&sums, r - 2, (r - 1) as i64)?;
            for (j, c) in cs.iter().enumerate() {
                factors[j] = FactorShape::Linear(c.clone());
            }
            let prod = cs.last().cloned().unwrap_or_else(Rat::one);
            let lr = lambda.0[r - 1].clone();
            let cr = cx.frac(lr.clone(), lr + Rat::one(), "barred c_r factor")? * prod;
            factors[r - 1] = FactorShape::Linear(cr);
        }
        (Family::D, false) if l <= r - 1 => {
            let cs = linear_chain(&|i| cx.s(i, l), l, l as i64)?;
            for (j, c) in cs.into_iter().enumerate() {
                factors[j] = FactorShape::Linear(c);
            }
        }
        (Family::D, false) if l == r => {
            let sums = |i: usize| cx.s(i, r);
            let cs = linear_chain(&sums, r - 2, r as i64)?;
            for (j, c) in cs.iter().enumerate() {
                factors[j] = FactorShape::Linear(c.clone());
            }
            let prod = cs.last().cloned().unwrap_or_else(Rat::one);
            let lm = lambda.0[r - 2].clone();
            let lr = lambda.0[r - 1].clone();
            factors[r - 2] = FactorShape::Linear(
                cx.frac(lm.clone(), lm + Rat::one(), "c_{r−1} factor at l = r")? * prod.clone(),
            );
            factors[r - 1] = FactorShape::Linear(
                cx.frac(lr.clone(), lr + Rat::one(), "c_r factor at l = r")? * prod,
            );
        }
        (Family::D, false) => {
            // r+1 ≤ l ≤ 2r−2; m linear, quadratics k = m+1..r−2, two trailing linears
            let m = 2 * r - l - 2;
            let li = l as i64;
            let ri = r as i64;
            let spin_sum = lambda.0[r - 2].clone() + lambda.0[r - 1].clone();
            let u = |i: usize| cx.s(i, m) + irat(2) * cx.s(m + 1, r - 2) + spin_sum.clone();
            let cs = linear_chain(&|i| u(i), m, li)?;
            for (j, c) in cs.iter().enumerate() {
                factors[j] = FactorShape::Linear(c.clone());
            }
            let cfull = cs.last().cloned().unwrap_or_else(Rat::one);
            // H_i = (V_i + l − i − 1)/(V_i + l − i),
            // V_i = λ_{m+1}+…+λ_i + 2(λ_{i+1}+…+λ_{r−2}) + λ_{r−1} + λ_r
            let h_ratio = |i: usize| -> Result<Rat> {
                let v = cx.s(m + 1, i)
                    + irat(2) * cx.s(i + 1, r - 2)
                    + spin_sum.clone()
                    + irat(li - i as i64);
                cx.frac(v.clone() - Rat::one(), v, "middle chain factor")
            };
            let end_ratio = |which: usize| -> Result<Rat> {
                // (λ_{m+1}+…+λ_{r−2}+λ_{which} + l − r)/(… + 1)
                let v = cx.s(m + 1, r - 2) + lambda.0[which - 1].clone() + irat(li - ri);
                cx.frac(v.clone(), v + Rat::one(), "spin tail factor")
            };
            let neg_ratio = |i: usize| -> Result<Rat> {
                let w = cx.s(m + 1, i) + irat(li + i as i64 + 1 - 2 * ri);
                cx.frac(w.clone(), w + Rat::one(), "tail chain factor")
            };
            let mut h_full = Rat::one();
            for i in (m + 1)..=(r - 2) {
                h_full *= h_ratio(i)?;
            }
            let e1 = end_ratio(r - 1)?;
            let e2 = end_ratio(r)?;
            factors[r - 2] = FactorShape::Linear(cfull.clone() * h_full.clone() * e1.clone());
            factors[r - 1] = FactorShape::Linear(cfull.clone() * h_full.clone() * e2.clone());
            let sig2 = irat(2) * cx.s(m + 1, r - 2) + spin_sum.clone();
            for k in (m + 1)..=(r - 2) {
                let mut part_h = Rat::one();
                for i in (m + 1)..=(k - 1) {
                    part_h *= h_ratio(i)?;
                }
                let mut h_from_k = Rat::one();
                let mut tail = Rat::one();
                for i in k..=(r - 2) {
                    h_from_k *= h_ratio(i)?;
                    tail *= neg_ratio(i)?;
                }
                let ab = cfull.clone() * cfull.clone()
                    * h_full.clone()
                    * part_h.clone()
                    * tail.clone()
                    * e1.clone()
                    * e2.clone();
                let first = cx.frac(
                    sig2.clone() + irat(2 * li - 2 * ri),
                    sig2.clone() + irat(2 * li - 2 * ri + 1),
                    "sum opening factor",
                )?;
                let second = cx.frac(
                    sig2.clone() + irat(2 * li - 2 * ri + 2),
                    sig2.clone() + irat(2 * li - 2 * ri + 1),
                    "sum closing factor",
                )?;
                let s = cfull.clone()
                    * part_h
                    * (first
                        + second * h_from_k * e1.clone() * e2.clone() * tail);
                factors[k - 1] = FactorShape::Quadratic(s, ab);
            }
        }
        (_, true) => unreachable!("bar labels exist only in type D and were validated"),
    }
    let shape = SolutionShape { factors };
    debug_assert_eq!(
        shape.to_tuple().lvec(),
        l_vector(datum, label)?,
        "degrees must match the admissible pattern"
    );
    Ok(shape)
}

/// Consistency report of the quadratic-range recursion identities.
#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub identities_checked: usize,
    pub failures: Vec<String>,
}

/// Verify that the type-B closed forms satisfy the three recursion
/// identities relating consecutive quadratic factors, exactly, at each
/// sampled λ. For C and D the analogous consistency is exercised through
/// the reproduction path; here the check degrades to a denominator scan.
pub fn closed_form_symbolic_regression(
    datum: &LieDatum,
    label: LengthLabel,
    samples: &[Weight],
) -> Result<RecursionReport> {
    let r = datum.rank;
    let l = label.value;
    let mut checked = 0;
    let mut failures = Vec::new();
    for lambda in samples {
        if !admissible_lengths(datum, lambda)?.contains(&label) {
            continue;
        }
        let shape = match solution_shape(datum, lambda, label) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("λ={lambda:?}: {e}"));
                continue;
            }
        };
        if datum.family != Family::B || l < r + 2 {
            checked += 1;
            continue;
        }
        // θ from the descent, A^{(2r−k−1)} components via shifted words
        // θ = (s_1 … s_{r−1} s_r s_{r−1} … s_{2r−l+1})·λ
        let theta = {
            let mut prod: Vec<usize> = (1..r).collect();
            prod.push(r);
            prod.extend(((2 * r - l + 1)..r).rev());
            datum.shifted_word(&prod, lambda)?
        };
        // A^{(m)}(θ) = (s_m…s_1)·θ for m ≤ r, (s_{2r−m}…s_{r−1}s_r s_{r−1}…s_1)·θ above
        let a_component = |m: usize, comp: usize| -> Result<Rat> {
            let w: Vec<usize> = if m <= r {
                (1..=m).rev().collect()
            } else {
                let mut q: Vec<usize> = ((2 * r - m)..=(r - 1)).collect();
                q.push(r);
                q.extend((1..r).rev());
                q
            };
            Ok(datum.shifted_word(&w, &theta)?.0[comp - 1].clone())
        };
        let get = |k: usize| -> (Rat, Rat) {
            match &shape.factors[k - 1] {
                FactorShape::Quadratic(s, p) => (s.clone(), p.clone()),
                _ => panic!("expected quadratic factor at {k}"),
            }
        };
        let c_of = |k: usize| -> Rat {
            if k == 0 {
                Rat::one()
            } else {
                match &shape.factors[k - 1] {
                    FactorShape::Linear(c) => c.clone(),
                    _ => panic!("expected linear factor at {k}"),
                }
            }
        };
        let m = 2 * r - l;
        for k in (m + 1).max(1)..=(r - 1) {
            let a = a_component(2 * r - k - 1, k)?;
            if !(a.is_integer() && a.is_negative()) {
                failures.push(format!("λ={lambda:?}, k={k}: exponent {a} not a negative integer"));
            }
            let (sk, pk) = get(k);
            let (sk1, pk1) = get(k + 1);
            let ck = if k == m + 1 { c_of(m) } else { Rat::zero() };
            // c_k in the recursion is the θ-side linear value; for k > m+1 the
            // "previous linear" is the quadratic chain's own c, recovered from
            // the same product formula. The identities below only involve the
            // boundary linear c_{k-1} when k = m+1; interior steps use the
            // published form with c_k, c_{k-1} from the θ chain.
            let theta_c = |j: usize| -> Rat {
                if j == 0 {
                    return Rat::one();
                }
                let mut acc = Rat::one();
                let mut run = Rat::zero();
                for jj in 1..=j {
                    run += theta.0[jj - 1].clone();
                    acc *= (run.clone() + rat(jj as i64 + 1)) / (run.clone() + rat(jj as i64));
                }
                acc
            };
            let ckt = theta_c(k);
            let ck1t = theta_c(k - 1);
            let _ = ck;
            let one = Rat::one();
            // (A+1)·c_k·a_k b_k = (A+2)·c_{k−1}·a_{k+1} b_{k+1}
            let lhs4 = (a.clone() + one.clone()) * ckt.clone() * pk.clone();
            let rhs4 = (a.clone() + rat(2)) * ck1t.clone() * pk1.clone();
            if lhs4 != rhs4 {
                failures.push(format!("λ={lambda:?}, k={k}: product recursion fails"));
            }
            // (A+1)(a_k+b_k+c_k) + 2c_k = (A+2)(a_{k+1}+b_{k+1}+c_{k−1})
            let lhs8 = (a.clone() + one.clone()) * (sk.clone() + ckt.clone())
                + rat(2) * ckt.clone();
            let rhs8 = (a.clone() + rat(2)) * (sk1.clone() + ck1t.clone());
            if lhs8 != rhs8 {
                failures.push(format!("λ={lambda:?}, k={k}: sum recursion fails"));
            }
            // (A+1)(c_k(a_k+b_k)+a_k b_k) + c_k(a_k+b_k) − a_k b_k
            //   = (A+2)(c_{k−1}(a_{k+1}+b_{k+1}) + a_{k+1} b_{k+1})
            let lhs9 = (a.clone() + one.clone())
                * (ckt.clone() * sk.clone() + pk.clone())
                + ckt.clone() * sk.clone()
                - pk.clone();
            let rhs9 =
                (a.clone() + rat(2)) * (ck1t.clone() * sk1.clone() + pk1.clone());
            if lhs9 != rhs9 {
                failures.push(format!("λ={lambda:?}, k={k}: cross recursion fails"));
            }
            checked += 3;
        }
    }
    Ok(RecursionReport {
        identities_checked: checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ratio, Int};

    fn datum(f: Family, r: usize) -> LieDatum {
        LieDatum::new(f, r).unwrap()
    }

    #[test]
    fn admissible_b2() {
        let g = datum(Family::B, 2);
        let labels = admissible_lengths(&g, &Weight::from_i64(&[1, 1])).unwrap();
        let vals: Vec<usize> = labels.iter().map(|l| l.value).collect();
        assert_eq!(vals, vec![0, 1, 2, 4]);
        // λ = 0: only the trivial label
        let labels = admissible_lengths(&g, &Weight::from_i64(&[0, 0])).unwrap();
        assert_eq!(labels, vec![LengthLabel::plain(0)]);
        // l = 3 requires λ₂ > 1
        let labels = admissible_lengths(&g, &Weight::from_i64(&[1, 2])).unwrap();
        let vals: Vec<usize> = labels.iter().map(|l| l.value).collect();
        assert_eq!(vals, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn admissible_d4() {
        let g = datum(Family::D, 4);
        let labels = admissible_lengths(&g, &Weight::from_i64(&[0, 0, 1, 1])).unwrap();
        assert_eq!(
            labels,
            vec![
                LengthLabel::plain(0),
                LengthLabel::plain(3),
                LengthLabel::barred(3),
                LengthLabel::plain(4),
            ]
        );
    }

    #[test]
    fn decompose_b2() {
        let g = datum(Family::B, 2);
        let lam = Weight::from_i64(&[1, 1]);
        let dec = decompose(&g, &lam).unwrap();
        let weights: Vec<Weight> = dec.iter().map(|(w, _)| w.clone()).collect();
        assert_eq!(
            weights,
            vec![
                Weight::from_i64(&[2, 1]),
                Weight::from_i64(&[0, 3]),
                Weight::from_i64(&[1, 1]),
                Weight::from_i64(&[0, 1]),
            ]
        );
        let dims: Vec<Int> = weights.iter().map(|w| g.weyl_dim(w).unwrap()).collect();
        let total: Int = dims.iter().sum();
        assert_eq!(total, Int::from(80));
        assert_eq!(
            g.weyl_dim(&lam).unwrap() * g.weyl_dim(&g.omega(1)).unwrap(),
            Int::from(80)
        );
    }

    #[test]
    fn decompose_dimension_identity_across_families() {
        for (f, r, lam) in [
            (Family::B, 3, vec![1i64, 0, 2]),
            (Family::C, 3, vec![2, 1, 1]),
            (Family::D, 4, vec![1, 1, 0, 2]),
        ] {
            let g = datum(f, r);
            let lam = Weight::from_i64(&lam);
            let dec = decompose(&g, &lam).unwrap();
            let total: Int = dec.iter().map(|(w, _)| g.weyl_dim(w).unwrap()).sum();
            let expect = g.weyl_dim(&lam).unwrap() * g.weyl_dim(&g.omega(1)).unwrap();
            assert_eq!(total, expect, "{f:?}{r} λ={lam:?}");
        }
    }

    #[test]
    fn b_missing_summand_when_spin_zero() {
        // if λ_r = 0 the summand at l = r is absent
        let g = datum(Family::B, 3);
        let labels = admissible_lengths(&g, &Weight::from_i64(&[2, 1, 0])).unwrap();
        assert!(!labels.contains(&LengthLabel::plain(3)));
    }

    #[test]
    fn closed_form_b2_l4_regression() {
        let g = datum(Family::B, 2);
        let y = solve_closed_form(&g, &Weight::from_i64(&[1, 1]), LengthLabel::plain(4)).unwrap();
        assert_eq!(
            y.polys[0],
            Poly::new(vec![ratio(1, 4), ratio(-11, 10), rat(1)])
        );
        assert_eq!(
            y.polys[1],
            Poly::new(vec![ratio(3, 8), ratio(-6, 5), rat(1)])
        );
    }

    #[test]
    fn closed_form_b2_l4_symbolic_20_random() {
        // paper display oracle: coefficients as explicit rational functions of λ
        let g = datum(Family::B, 2);
        let mut state = 7u64;
        for _ in 0..20 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let l1 = 1 + ((state >> 40) % 9) as i64;
            let l2 = 1 + ((state >> 20) % 9) as i64;
            let y = solve_closed_form(&g, &Weight::from_i64(&[l1, l2]), LengthLabel::plain(4))
                .unwrap();
            let (a, b, c) = (rat(l1), rat(l2), rat(1));
            let s2 = rat(2) * (rat(2) * a.clone() + b.clone() + c.clone())
                * (a.clone() + b.clone() + c.clone())
                / ((rat(2) * a.clone() + b.clone() + rat(2)) * (a.clone() + b.clone() + rat(2)));
            let p2 = (rat(2) * a.clone() + b.clone() + rat(1))
                * (a.clone() + b.clone() + rat(1))
                * (a.clone() + b.clone() + rat(1))
                / ((rat(2) * a.clone() + b.clone() + rat(3))
                    * (a.clone() + b.clone() + rat(2))
                    * (a.clone() + b.clone() + rat(2)));
            assert_eq!(y.polys[1], Poly::quadratic_from_sum_prod(s2, p2));
            let s1 = (rat(2) * a.clone() + b.clone() + rat(1))
                * (rat(2) * a.clone() * a.clone()
                    + rat(2) * a.clone() * b.clone()
                    + rat(4) * a.clone()
                    + b.clone()
                    + rat(2))
                / ((a.clone() + rat(1))
                    * (a.clone() + b.clone() + rat(2))
                    * (rat(2) * a.clone() + b.clone() + rat(2)));
            let p1 = a.clone()
                * (a.clone() + b.clone() + rat(1))
                * (rat(2) * a.clone() + b.clone() + rat(1))
                / ((a.clone() + rat(1))
                    * (a.clone() + b.clone() + rat(2))
                    * (rat(2) * a.clone() + b.clone() + rat(3)));
            assert_eq!(y.polys[0], Poly::quadratic_from_sum_prod(s1, p1));
        }
    }

    #[test]
    fn closed_form_trivial_and_linear() {
        let g = datum(Family::B, 3);
        let lam = Weight::from_i64(&[3, 1, 2]);
        let y = solve_closed_form(&g, &lam, LengthLabel::plain(0)).unwrap();
        assert_eq!(y, CriticalTuple::trivial(3));
        // (3.4.12) at l=2: c₁ = 5/6, c₂ = 5/12
        let y = solve_closed_form(&g, &lam, LengthLabel::plain(2)).unwrap();
        assert_eq!(y.polys[0], Poly::linear_from_root(ratio(5, 6)));
        assert_eq!(y.polys[1], Poly::linear_from_root(ratio(5, 12)));
        assert_eq!(y.polys[2], Poly::one());
    }

    #[test]
    fn closed_form_rejects_inadmissible() {
        let g = datum(Family::B, 2);
        assert!(matches!(
            solve_closed_form(&g, &Weight::from_i64(&[1, 1]), LengthLabel::plain(3)),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn range_property_linear_roots_in_unit_interval() {
        // B, l ≤ r−1: all c_j ∈ (0,1) when λ_l > 0
        for r in [2usize, 3, 4] {
            let g = datum(Family::B, r);
            for l in 1..r {
                for seed in 0..20u64 {
                    let coords: Vec<i64> = (0..r)
                        .map(|i| ((seed.wrapping_mul(31).wrapping_add(i as u64 * 7)) % 4) as i64)
                        .collect();
                    let mut coords = coords;
                    coords[l - 1] = 1 + coords[l - 1];
                    let lam = Weight::from_i64(&coords);
                    let y = solve_closed_form(&g, &lam, LengthLabel::plain(l)).unwrap();
                    for p in &y.polys[..l] {
                        let root = -p.coeff(0);
                        assert!(root > rat(0) && root < rat(1), "root {root} outside (0,1)");
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_identities_b2_l4() {
        let g = datum(Family::B, 2);
        let mut samples = Vec::new();
        for s in 0..20u64 {
            samples.push(Weight::from_i64(&[
                1 + (s % 5) as i64,
                (s * 3 % 7) as i64,
            ]));
        }
        let rep =
            closed_form_symbolic_regression(&g, LengthLabel::plain(4), &samples).unwrap();
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert!(rep.identities_checked > 0);
    }

    #[test]
    fn recursion_identities_b4_l7() {
        let g = datum(Family::B, 4);
        let rep = closed_form_symbolic_regression(
            &g,
            LengthLabel::plain(7),
            &[Weight::from_i64(&[1, 1, 1, 2])],
        )
        .unwrap();
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert!(rep.identities_checked >= 6);
    }
}
