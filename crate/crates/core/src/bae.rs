//! Bethe ansatz instances: residuals of the critical-point system, the exact
//! Wronskian criticality criterion, genericity G1–G3, and exact Gaudin
//! eigenvalues on critical tuples.

use crate::poly::{solve_wronskian, Poly, QuasiPoly, WronskianSolution};
use crate::rootsys::{LieDatum, Weight};
use crate::scalar::{FromRat, Scalar};
use crate::{Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Bethe ansatz data: Cartan datum, weights Λ_1..Λ_n at points z_1..z_n,
/// and the degree vector (l_1,…,l_r). The color map is the unique
/// nondecreasing function with #c⁻¹(i) = l_i.
#[derive(Clone, Debug)]
pub struct BAEInstance {
    pub datum: LieDatum,
    pub weights: Vec<Weight>,
    pub points: Vec<Rat>,
    pub lvec: Vec<usize>,
}

impl BAEInstance {
    pub fn new(
        datum: LieDatum,
        weights: Vec<Weight>,
        points: Vec<Rat>,
        lvec: Vec<usize>,
    ) -> Result<Self> {
        assert_eq!(weights.len(), points.len());
        assert_eq!(lvec.len(), datum.rank);
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::CoincidentPoints);
                }
            }
        }
        Ok(BAEInstance {
            datum,
            weights,
            points,
            lvec,
        })
    }

    /// The 2-point instance (Λ₁, ω₁) at z = (0, 1) the closed forms live on.
    pub fn two_point(datum: LieDatum, lambda: Weight, lvec: Vec<usize>) -> Self {
        let omega1 = datum.omega(1);
        BAEInstance {
            datum,
            weights: vec![lambda, omega1],
            points: vec![Rat::zero(), Rat::one()],
            lvec,
        }
    }

    pub fn length(&self) -> usize {
        self.lvec.iter().sum()
    }

    /// Color of variable t_i (1-based i), the nondecreasing map.
    pub fn color(&self, i: usize) -> usize {
        let mut acc = 0;
        for (b, &lb) in self.lvec.iter().enumerate() {
            acc += lb;
            if i <= acc {
                return b + 1;
            }
        }
        panic!("variable index {i} out of range");
    }

    /// T-function exponent data: e_{i,s} = ⟨Λ_s, α_i^∨⟩.
    pub fn t_exponents(&self) -> Vec<Vec<Rat>> {
        (1..=self.datum.rank)
            .map(|i| self.weights.iter().map(|w| w.coord(i).clone()).collect())
            .collect()
    }

    /// T_i as a quasi-polynomial. Requires z₁ = 0 and Λ_s integral dominant
    /// for s ≥ 2, so that every factor except the one at the origin is an
    /// honest polynomial.
    pub fn t_function(&self, i: usize) -> Result<QuasiPoly<Rat>> {
        self.datum.check_index(i)?;
        if !self.points[0].is_zero() {
            return Err(Error::ExcludedCase(
                "Wronskian criterion requires z_1 = 0".into(),
            ));
        }
        let mut body = Poly::<Rat>::one();
        for (s, z) in self.points.iter().enumerate().skip(1) {
            let e = self.weights[s].coord(i);
            if e.is_zero() {
                continue;
            }
            if !e.is_integer() || e.is_negative() {
                return Err(Error::NonDominant(format!(
                    "weight at z_{} must be dominant integral",
                    s + 1
                )));
            }
            let k = usize::try_from(&e.to_integer()).expect("small exponent");
            let lin = Poly::linear_from_root(z.clone());
            body = &body * &lin.pow(k);
        }
        Ok(QuasiPoly::new(self.weights[0].coord(i).clone(), body))
    }

    /// Residuals of the critical-point system at grouped root values, one
    /// entry per variable: −Σ_s (α_{c(i)},Λ_s)/(t_i−z_s) + Σ_{j≠i}
    /// (α_{c(i)},α_{c(j)})/(t_i−t_j). Exact for exact scalars.
    pub fn residual<T: Scalar + FromRat>(&self, t_by_color: &[Vec<T>]) -> Result<Vec<T>> {
        assert_eq!(t_by_color.len(), self.datum.rank);
        for (b, group) in t_by_color.iter().enumerate() {
            assert_eq!(
                group.len(),
                self.lvec[b],
                "color {} must carry l_{} roots",
                b + 1,
                b + 1
            );
        }
        let r = self.datum.rank;
        // pairing tables
        let root_weight: Vec<Vec<Rat>> = (1..=r)
            .map(|b| {
                self.weights
                    .iter()
                    .map(|w| self.datum.bilinear(&self.datum.simple_root(b), w))
                    .collect()
            })
            .collect();
        let root_root: Vec<Vec<Rat>> = (1..=r)
            .map(|b| {
                (1..=r)
                    .map(|c| {
                        self.datum
                            .bilinear(&self.datum.simple_root(b), &self.datum.simple_root(c))
                    })
                    .collect()
            })
            .collect();
        let zs: Vec<T> = self.points.iter().map(|z| T::from_rat(z)).collect();
        let mut out = Vec::with_capacity(self.length());
        for (b, group) in t_by_color.iter().enumerate() {
            for (j, t) in group.iter().enumerate() {
                let mut acc = T::zero();
                for (s, z) in zs.iter().enumerate() {
                    let coeff = &root_weight[b][s];
                    if coeff.is_zero() {
                        continue;
                    }
                    let den = t.clone() - z.clone();
                    if den.is_zero() {
                        return Err(Error::ForbiddenCoincidence(format!(
                            "t of color {} equals z_{} with nonzero pairing",
                            b + 1,
                            s + 1
                        )));
                    }
                    acc = acc - T::from_rat(coeff) / den;
                }
                for (c, group2) in t_by_color.iter().enumerate() {
                    let coeff = &root_root[b][c];
                    if coeff.is_zero() {
                        continue;
                    }
                    for (q, u) in group2.iter().enumerate() {
                        if b == c && j == q {
                            continue;
                        }
                        let den = t.clone() - u.clone();
                        if den.is_zero() {
                            return Err(Error::ForbiddenCoincidence(format!(
                                "roots of colors {} and {} collide",
                                b + 1,
                                c + 1
                            )));
                        }
                        acc = acc + T::from_rat(coeff) / den;
                    }
                }
                out.push(acc);
            }
        }
        Ok(out)
    }
}

/// r-tuple of monic polynomials representing a critical point; deg y_i = l_i.
#[derive(Clone, PartialEq)]
pub struct CriticalTuple {
    pub polys: Vec<Poly<Rat>>,
}

impl CriticalTuple {
    pub fn new(polys: Vec<Poly<Rat>>) -> Self {
        assert!(polys.iter().all(|p| p.is_monic() || p.is_constant()));
        CriticalTuple { polys }
    }

    pub fn trivial(rank: usize) -> Self {
        CriticalTuple {
            polys: vec![Poly::one(); rank],
        }
    }

    pub fn lvec(&self) -> Vec<usize> {
        self.polys
            .iter()
            .map(|p| p.degree().unwrap_or(0))
            .collect()
    }

    pub fn length(&self) -> usize {
        self.lvec().iter().sum()
    }
}

impl fmt::Debug for CriticalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.polys.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of the G1/G2/G3 genericity test with failure locations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenericityReport {
    pub g1: bool,
    pub g2: bool,
    pub g3: bool,
    pub failures: Vec<String>,
}

impl GenericityReport {
    pub fn pass(&self) -> bool {
        self.g1 && self.g2 && self.g3
    }
}

impl fmt::Display for GenericityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G1={} G2={} G3={}{}",
            self.g1,
            self.g2,
            self.g3,
            if self.failures.is_empty() {
                String::new()
            } else {
                format!(" [{}]", self.failures.join("; "))
            }
        )
    }
}

/// G1: no multiple roots. G2: roots of y_i avoid roots/singularities of T_i.
/// G3: y_i, y_j coprime when a_ij < 0.
pub fn genericity(inst: &BAEInstance, y: &CriticalTuple) -> GenericityReport {
    let r = inst.datum.rank;
    let mut failures = Vec::new();
    let mut g1 = true;
    for (i, p) in y.polys.iter().enumerate() {
        if !p.is_squarefree() {
            g1 = false;
            failures.push(format!("G1: y_{} has a multiple root", i + 1));
        }
    }
    let mut g2 = true;
    for i in 1..=r {
        for (s, z) in inst.points.iter().enumerate() {
            if inst.weights[s].coord(i).is_zero() {
                continue;
            }
            if y.polys[i - 1].eval(z).is_zero() {
                g2 = false;
                failures.push(format!("G2: y_{i} vanishes at z_{}", s + 1));
            }
        }
    }
    let mut g3 = true;
    for i in 1..=r {
        for j in (i + 1)..=r {
            if inst.datum.a(i, j) < 0 && !y.polys[i - 1].gcd(&y.polys[j - 1]).is_constant() {
                g3 = false;
                failures.push(format!("G3: y_{i} and y_{j} share a root"));
            }
        }
    }
    GenericityReport {
        g1,
        g2,
        g3,
        failures,
    }
}

/// Result of the Wronskian criticality test: per-direction witnesses ỹ_i
/// solving W(y_i, x^{⟨Λ₁+ρ,α_i^∨⟩}·ỹ_i) = T_i·∏_{j≠i} y_j^{−a_ij}.
#[derive(Clone, Debug)]
pub struct CriticalityCheck {
    pub critical: bool,
    pub witnesses: Vec<Option<WronskianSolution>>,
    pub failing_direction: Option<usize>,
}

/// Exact criticality via the Wronskian criterion. Requires z₁ = 0 and
/// Λ_s dominant integral for s ≥ 2; genericity is checked first and a
/// failure is reported as an error rather than "not critical".
pub fn is_critical_wronskian(inst: &BAEInstance, y: &CriticalTuple) -> Result<CriticalityCheck> {
    let rep = genericity(inst, y);
    if !rep.pass() {
        return Err(Error::GenericityFailure(rep));
    }
    let r = inst.datum.rank;
    let mut witnesses: Vec<Option<WronskianSolution>> = vec![None; r];
    for i in 1..=r {
        match solve_direction(inst, y, i) {
            Ok(sol) => witnesses[i - 1] = Some(sol),
            Err(Error::NoSolution { .. }) => {
                return Ok(CriticalityCheck {
                    critical: false,
                    witnesses,
                    failing_direction: Some(i),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CriticalityCheck {
        critical: true,
        witnesses,
        failing_direction: None,
    })
}

/// Right-hand side T_i·∏_{j≠i} y_j^{−a_ij} of the reproduction equation.
pub fn reproduction_rhs(inst: &BAEInstance, y: &CriticalTuple, i: usize) -> Result<QuasiPoly<Rat>> {
    let mut rhs = inst.t_function(i)?;
    for j in 1..=inst.datum.rank {
        if j == i {
            continue;
        }
        let e = -inst.datum.a(i, j);
        debug_assert!(e >= 0);
        if e > 0 {
            rhs = rhs.mul(&QuasiPoly::from_poly(y.polys[j - 1].pow(e as usize)));
        }
    }
    Ok(rhs)
}

/// Solve the reproduction equation in direction i for the current tuple
/// (existence mode: any polynomial degree).
pub fn solve_direction(
    inst: &BAEInstance,
    y: &CriticalTuple,
    i: usize,
) -> Result<WronskianSolution> {
    let rhs = reproduction_rhs(inst, y, i)?;
    let shift = inst.weights[0].coord(i).clone() + Rat::one();
    solve_wronskian(&y.polys[i - 1], &rhs, &shift).map_err(|e| match e {
        Error::NoSolution { .. } => Error::NoSolution { direction: Some(i) },
        other => other,
    })
}

/// Solve the reproduction equation in direction i with the degree of the
/// unknown pinned by the weight bookkeeping.
pub fn solve_direction_deg(
    inst: &BAEInstance,
    y: &CriticalTuple,
    i: usize,
    want_deg: usize,
) -> Result<WronskianSolution> {
    let rhs = reproduction_rhs(inst, y, i)?;
    let shift = inst.weights[0].coord(i).clone() + Rat::one();
    crate::poly::solve_wronskian_deg(&y.polys[i - 1], &rhs, &shift, want_deg).map_err(
        |e| match e {
            Error::NoSolution { .. } => Error::NoSolution { direction: Some(i) },
            other => other,
        },
    )
}

/// Exact Gaudin eigenvalue Φ⁻¹∂Φ/∂z_i at the critical point represented by y:
/// Σ_{j≠i} (Λ_i,Λ_j)/(z_i−z_j) − Σ_m (α_m,Λ_i)·y_m'(z_i)/y_m(z_i).
pub fn gaudin_eigenvalue(inst: &BAEInstance, y: &CriticalTuple, i: usize) -> Result<Rat> {
    assert!(i >= 1 && i <= inst.points.len());
    let zi = &inst.points[i - 1];
    let mut acc = Rat::zero();
    for (j, zj) in inst.points.iter().enumerate() {
        if j == i - 1 {
            continue;
        }
        acc += inst.datum.bilinear(&inst.weights[i - 1], &inst.weights[j])
            / (zi.clone() - zj.clone());
    }
    for m in 1..=inst.datum.rank {
        let coeff = inst
            .datum
            .bilinear(&inst.datum.simple_root(m), &inst.weights[i - 1]);
        let val = y.polys[m - 1].eval(zi);
        if val.is_zero() {
            if coeff.is_zero() {
                continue;
            }
            return Err(Error::PoleAtPoint {
                index: m,
                point: crate::poly::ratstr::to_string(zi),
            });
        }
        if coeff.is_zero() {
            continue;
        }
        acc -= coeff * y.polys[m - 1].derivative().eval(zi) / val;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use crate::{rat, ratio, C64};

    fn b2_inst(lambda: &[i64], lvec: &[usize]) -> BAEInstance {
        let datum = LieDatum::new(Family::B, 2).unwrap();
        BAEInstance::two_point(datum, Weight::from_i64(lambda), lvec.to_vec())
    }

    #[test]
    fn residual_vanishes_at_closed_form_root() {
        // B₂, λ=(1,1), l=(1,0): −2/(1/2) − 2/(1/2−1) = 0
        let inst = b2_inst(&[1, 1], &[1, 0]);
        let res = inst
            .residual::<Rat>(&[vec![ratio(1, 2)], vec![]])
            .unwrap();
        assert_eq!(res, vec![rat(0)]);
    }

    #[test]
    fn residual_empty_for_zero_length() {
        let inst = b2_inst(&[2, 0], &[0, 0]);
        let res = inst.residual::<Rat>(&[vec![], vec![]]).unwrap();
        assert!(res.is_empty());
    }

    #[test]
    fn residual_perturbation_first_order() {
        // d/dt of −2/t − 2/(t−1) at t=1/2 is 2/t² + 2/(t−1)² = 16
        let inst = b2_inst(&[1, 1], &[1, 0]);
        let eps = 1e-7;
        let res = inst
            .residual::<f64>(&[vec![0.5 + eps], vec![]])
            .unwrap();
        assert!((res[0] - 16.0 * eps).abs() < 1e-5 * eps.max(1e-12) + 1e-9);
    }

    #[test]
    fn residual_forbidden_coincidence() {
        let inst = b2_inst(&[1, 1], &[1, 0]);
        assert!(matches!(
            inst.residual::<Rat>(&[vec![rat(0)], vec![]]),
            Err(Error::ForbiddenCoincidence(_))
        ));
    }

    #[test]
    fn residual_sigma_l_invariance() {
        // permuting same-color roots permutes the residual entries
        let inst = b2_inst(&[2, 2], &[2, 0]);
        let a = C64::new(0.3, 0.1);
        let b = C64::new(0.7, -0.2);
        let r1 = inst.residual::<C64>(&[vec![a, b], vec![]]).unwrap();
        let r2 = inst.residual::<C64>(&[vec![b, a], vec![]]).unwrap();
        assert!((r1[0] - r2[1]).norm() < 1e-12);
        assert!((r1[1] - r2[0]).norm() < 1e-12);
    }

    #[test]
    fn genericity_examples() {
        let inst = b2_inst(&[1, 1], &[2, 2]);
        // §3.3 closed forms at λ=(1,1)
        let y = CriticalTuple::new(vec![
            Poly::new(vec![ratio(1, 4), ratio(-11, 10), rat(1)]),
            Poly::new(vec![ratio(3, 8), ratio(-6, 5), rat(1)]),
        ]);
        assert!(genericity(&inst, &y).pass());
        // root at z₂=1 clashes with T₁
        let inst1 = b2_inst(&[1, 1], &[1, 0]);
        let bad = CriticalTuple::new(vec![Poly::linear_from_root(rat(1)), Poly::one()]);
        let rep = genericity(&inst1, &bad);
        assert!(!rep.g2 && rep.g1 && rep.g3);
        // double root
        let inst2 = b2_inst(&[1, 1], &[2, 0]);
        let dbl = CriticalTuple::new(vec![
            &Poly::linear_from_root(ratio(1, 3)) * &Poly::linear_from_root(ratio(1, 3)),
            Poly::one(),
        ]);
        assert!(!genericity(&inst2, &dbl).g1);
    }

    #[test]
    fn wronskian_criterion_l1() {
        let inst = b2_inst(&[1, 1], &[1, 0]);
        let y = CriticalTuple::new(vec![Poly::linear_from_root(ratio(1, 2)), Poly::one()]);
        let chk = is_critical_wronskian(&inst, &y).unwrap();
        assert!(chk.critical);
        // a wrong root is generic but not critical
        let bad = CriticalTuple::new(vec![Poly::linear_from_root(ratio(1, 3)), Poly::one()]);
        let chk = is_critical_wronskian(&inst, &bad).unwrap();
        assert!(!chk.critical);
        assert_eq!(chk.failing_direction, Some(1));
    }

    #[test]
    fn wronskian_criterion_trivial_tuple() {
        for lam in [[0i64, 0], [1, 1], [3, 2]] {
            let inst = b2_inst(&lam, &[0, 0]);
            let y = CriticalTuple::trivial(2);
            assert!(is_critical_wronskian(&inst, &y).unwrap().critical);
        }
    }

    #[test]
    fn degree_obstruction_lambda1_zero() {
        // λ₁=0: no l=4 solutions; direction 1 is impossible for degree reasons
        let inst = b2_inst(&[0, 2], &[2, 2]);
        let y = CriticalTuple::new(vec![
            Poly::new(vec![ratio(1, 5), rat(-1), rat(1)]),
            Poly::new(vec![ratio(1, 7), rat(-1), rat(1)]),
        ]);
        let chk = is_critical_wronskian(&inst, &y).unwrap();
        assert!(!chk.critical);
        assert_eq!(chk.failing_direction, Some(1));
    }

    #[test]
    fn eigenvalue_l1_benchmark() {
        // B₂, λ=(1,1), l=1: eigenvalue (λ,ω₁)/(z₁−z₂) + (α₁,λ)/(t₁) = −3+4 = 1
        let inst = b2_inst(&[1, 1], &[1, 0]);
        let y = CriticalTuple::new(vec![Poly::linear_from_root(ratio(1, 2)), Poly::one()]);
        assert_eq!(gaudin_eigenvalue(&inst, &y, 1).unwrap(), rat(1));
        // n=2 antisymmetry
        assert_eq!(gaudin_eigenvalue(&inst, &y, 2).unwrap(), rat(-1));
        // Casimir bookkeeping oracle: μ = λ+ω₁−α₁ = (0,3)
        let datum = &inst.datum;
        let mu = Weight::from_i64(&[0, 3]);
        let lam = Weight::from_i64(&[1, 1]);
        let om = datum.omega(1);
        let oracle = (datum.casimir_scalar(&mu)
            - datum.casimir_scalar(&lam)
            - datum.casimir_scalar(&om))
            / (rat(2) * (rat(0) - rat(1)));
        assert_eq!(oracle, rat(1));
    }

    #[test]
    fn eigenvalue_l0() {
        let inst = b2_inst(&[1, 1], &[0, 0]);
        let y = CriticalTuple::trivial(2);
        assert_eq!(gaudin_eigenvalue(&inst, &y, 1).unwrap(), rat(-3));
    }

    #[test]
    fn eigenvalue_pole_detection() {
        let inst = b2_inst(&[1, 1], &[1, 0]);
        let y = CriticalTuple::new(vec![Poly::linear_from_root(rat(0)), Poly::one()]);
        assert!(matches!(
            gaudin_eigenvalue(&inst, &y, 1),
            Err(Error::PoleAtPoint { index: 1, .. })
        ));
    }
}
