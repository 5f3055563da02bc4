//! The reproduction procedure: single Wronskian steps, the guarded descent
//! chains that walk any admissible solution down to the trivial one, and the
//! ascent recursion that rebuilds the closed forms from (1,…,1).
//!
//! Type B at length l = r is special: the corresponding weight ω₁ − α(l) is
//! fixed by the whole Weyl group, so the in-type chain cannot move it. That
//! tuple is rebuilt through the type-A realization with the last weight
//! coordinate halved, which reproduces the imported l = r formula.

use crate::bae::{genericity, solve_direction_deg, BAEInstance, CriticalTuple, GenericityReport};
use crate::closedform::{l_vector, LengthLabel};
use crate::rootsys::{Family, LieDatum, Weight};
use crate::{Error, Rat, Result};
use num_traits::{Signed, Zero};
use serde::Serialize;

/// One reproduction step in direction `direction`: the input tuple at first
/// weight ν becomes the output tuple at s_ν·ν, with the scalar relating the
/// raw Wronskian solution to its monic representative.
#[derive(Clone, Debug)]
pub struct ReproStep {
    pub direction: usize,
    pub input: CriticalTuple,
    pub input_weight: Weight,
    pub output: CriticalTuple,
    pub output_weight: Weight,
    pub scalar: Rat,
    pub output_genericity: GenericityReport,
}

/// Degree of the replaced polynomial dictated by the weight bookkeeping
/// Λ − Λ₁ − α(l̃) = s_i(Λ − Λ₁ − α(l)) for the 2-point data (ν, ω₁).
fn new_degree(datum: &LieDatum, lvec: &[usize], i: usize) -> Result<usize> {
    let mut acc: i64 = lvec[i - 1] as i64 + i64::from(i == 1);
    for (j, &lj) in lvec.iter().enumerate() {
        acc -= datum.a(i, j + 1) * lj as i64;
    }
    usize::try_from(acc).map_err(|_| Error::NoSolution { direction: Some(i) })
}

/// Apply the reproduction procedure in direction i to a tuple representing a
/// critical point for ((ν, ω₁), z = (0, 1)).
pub fn reproduce(
    datum: &LieDatum,
    nu: &Weight,
    y: &CriticalTuple,
    i: usize,
) -> Result<ReproStep> {
    datum.check_index(i)?;
    let inst = BAEInstance::two_point(datum.clone(), nu.clone(), y.lvec());
    let expected = new_degree(datum, &y.lvec(), i)?;
    let sol = solve_direction_deg(&inst, y, i, expected)?;
    let got = sol.monic.degree().unwrap_or(0);
    if got != expected {
        return Err(Error::DegreeMismatch { expected, got });
    }
    let mut polys = y.polys.clone();
    polys[i - 1] = sol.monic.clone();
    let output = CriticalTuple::new(polys);
    let output_weight = datum.shifted_reflect(i, nu)?;
    let out_inst = BAEInstance::two_point(datum.clone(), output_weight.clone(), output.lvec());
    let output_genericity = genericity(&out_inst, &output);
    Ok(ReproStep {
        direction: i,
        input: y.clone(),
        input_weight: nu.clone(),
        output,
        output_weight,
        scalar: sol.scalar,
        output_genericity,
    })
}

/// Direction word of the descent chain for an admissible label, without
/// guard checks. Type B excludes l = r (see module docs).
fn descent_word(datum: &LieDatum, label: LengthLabel) -> Result<Vec<usize>> {
    let r = datum.rank;
    let l = label.value;
    if l == 0 {
        return Ok(vec![]);
    }
    let down_from = |k: usize| (1..=k).rev().collect::<Vec<usize>>();
    match datum.family {
        Family::A => Ok(down_from(l.min(r))),
        Family::B => {
            if l == r {
                Err(Error::ExcludedCase(
                    "type B length r descends through the type-A realization".into(),
                ))
            } else if l <= r - 1 {
                Ok(down_from(l))
            } else {
                // (2r−l+1), …, (r−1), r, (r−1), …, 1; the r-step drops length by 2
                let mut w: Vec<usize> = ((2 * r - l + 1)..=(r - 1)).collect();
                w.push(r);
                w.extend(down_from(r - 1));
                Ok(w)
            }
        }
        Family::C => {
            if l <= r {
                Ok(down_from(l))
            } else {
                let mut w: Vec<usize> = ((2 * r - l)..=(r - 1)).collect();
                w.push(r);
                w.extend(down_from(r - 1));
                Ok(w)
            }
        }
        Family::D => {
            if label.bar {
                let mut w = vec![r];
                w.extend(down_from(r - 2));
                Ok(w)
            } else if l <= r - 1 {
                Ok(down_from(l))
            } else if l == r {
                let mut w = vec![r];
                w.extend(down_from(r - 1));
                Ok(w)
            } else {
                let mut w: Vec<usize> = ((2 * r - l - 1)..=(r - 2)).collect();
                w.push(r);
                w.extend(down_from(r - 1));
                Ok(w)
            }
        }
    }
}

/// Guarded descent chain: the direction word reducing the label to zero
/// length, with the weight-positivity guards of the recursion lemmas checked
/// at every step.
pub fn descent_chain(
    datum: &LieDatum,
    lambda: &Weight,
    label: LengthLabel,
) -> Result<Vec<usize>> {
    if datum.family != Family::A {
        let adm = crate::closedform::admissible_lengths(datum, lambda)?;
        if !adm.contains(&label) {
            return Err(Error::NotAdmissible(format!(
                "length {label} for λ={lambda:?} in {datum:?}"
            )));
        }
    }
    let word = descent_word(datum, label)?;
    let mut nu = lambda.clone();
    let mut lvec = l_vector(datum, label)?;
    for (step, &k) in word.iter().enumerate() {
        let nuk = nu.coord(k);
        if nuk.is_negative() {
            return Err(Error::ChainBlocked {
                step,
                direction: k,
                guard: format!("ν_{k} = {nuk} < 0"),
            });
        }
        // sharpened guards for type B: the length-(r+1) step in direction r
        // needs ν_r ≥ 2, every other step strictly positive ν_k
        if datum.family == Family::B {
            let len: usize = lvec.iter().sum();
            if k == datum.rank && len == datum.rank + 1 {
                if nuk < &crate::rat(2) {
                    return Err(Error::ChainBlocked {
                        step,
                        direction: k,
                        guard: format!("ν_{k} = {nuk} < 2 at the double descent"),
                    });
                }
            } else if nuk.is_zero() {
                return Err(Error::ChainBlocked {
                    step,
                    direction: k,
                    guard: format!("ν_{k} = 0"),
                });
            }
        }
        let nd = new_degree(datum, &lvec, k)?;
        if nd >= lvec[k - 1] {
            return Err(Error::ChainBlocked {
                step,
                direction: k,
                guard: format!("direction {k} does not reduce the length"),
            });
        }
        lvec[k - 1] = nd;
        nu = datum.shifted_reflect(k, &nu)?;
    }
    if lvec.iter().any(|&x| x != 0) {
        return Err(Error::ChainBlocked {
            step: word.len(),
            direction: 0,
            guard: "descent did not reach the trivial length vector".into(),
        });
    }
    Ok(word)
}

/// First weight reached by the full descent: θ = s_{k_m}·(…(s_{k_1}·λ)).
pub fn descent_theta(datum: &LieDatum, lambda: &Weight, word: &[usize]) -> Result<Weight> {
    let mut nu = lambda.clone();
    for &k in word {
        nu = datum.shifted_reflect(k, &nu)?;
    }
    Ok(nu)
}

/// One entry of a chain transcript, exportable as JSON.
#[derive(Clone, Debug, Serialize)]
pub struct TranscriptStep {
    pub direction: usize,
    pub weight: Vec<String>,
    pub tuple: Vec<crate::RatPoly>,
    pub scalar: String,
    pub generic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainTranscript {
    pub schema: String,
    pub family: String,
    pub rank: usize,
    pub lambda: Vec<String>,
    pub length: usize,
    pub bar: bool,
    pub theta: Vec<String>,
    pub steps: Vec<TranscriptStep>,
}

/// Rebuild the closed-form tuple from the trivial solution at θ by running
/// the reproduction procedure up the reversed descent word. Intermediate
/// genericity failures are tolerated (and recorded); the caller re-verifies
/// the final tuple.
pub fn rebuild_from_trivial(
    datum: &LieDatum,
    lambda: &Weight,
    label: LengthLabel,
) -> Result<CriticalTuple> {
    Ok(rebuild_with_transcript(datum, lambda, label)?.0)
}

pub fn rebuild_with_transcript(
    datum: &LieDatum,
    lambda: &Weight,
    label: LengthLabel,
) -> Result<(CriticalTuple, ChainTranscript)> {
    // type B, l = r: run the whole chain in the type-A realization with the
    // spin coordinate halved
    if datum.family == Family::B && !label.bar && label.value == datum.rank {
        let a = LieDatum::new(Family::A, datum.rank)?;
        let mut coords = lambda.0.clone();
        let half = crate::ratio(1, 2);
        let last = coords.last_mut().expect("rank ≥ 1");
        *last = last.clone() * half;
        let lam_a = Weight(coords);
        let (tuple, mut transcript) = ascend(&a, &lam_a, label)?;
        transcript.family = datum.family.to_string();
        transcript.lambda = lambda.as_strings();
        return Ok((tuple, transcript));
    }
    ascend(datum, lambda, label)
}

fn ascend(
    datum: &LieDatum,
    lambda: &Weight,
    label: LengthLabel,
) -> Result<(CriticalTuple, ChainTranscript)> {
    let word = descent_chain(datum, lambda, label)?;
    let theta = descent_theta(datum, lambda, &word)?;
    let mut nu = theta.clone();
    let mut tuple = CriticalTuple::trivial(datum.rank);
    let mut steps = Vec::with_capacity(word.len());
    for &k in word.iter().rev() {
        let step = reproduce(datum, &nu, &tuple, k)?;
        steps.push(TranscriptStep {
            direction: k,
            weight: step.output_weight.as_strings(),
            tuple: step.output.polys.clone(),
            scalar: crate::poly::ratstr::to_string(&step.scalar),
            generic: step.output_genericity.pass(),
        });
        nu = step.output_weight.clone();
        tuple = step.output;
    }
    if &nu != lambda {
        return Err(Error::ChainBlocked {
            step: word.len(),
            direction: 0,
            guard: format!("ascent ended at {nu:?} instead of {lambda:?}"),
        });
    }
    let expected = l_vector(datum, label)?;
    if tuple.lvec() != expected {
        return Err(Error::DegreeMismatch {
            expected: expected.iter().sum(),
            got: tuple.length(),
        });
    }
    let transcript = ChainTranscript {
        schema: "1".into(),
        family: datum.family.to_string(),
        rank: datum.rank,
        lambda: lambda.as_strings(),
        length: label.value,
        bar: label.bar,
        theta: theta.as_strings(),
        steps,
    };
    Ok((tuple, transcript))
}
