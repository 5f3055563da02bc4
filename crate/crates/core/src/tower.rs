//! Exact arithmetic in a tower of quadratic extensions Q(√d₁, …, √d_k).
//!
//! Quadratic factors of critical tuples have roots (s ± √disc)/2; a tower
//! element keeps the radicands explicit so singular/eigenvector checks stay
//! exact instead of floating. Elements carry their radicand list; mixing is
//! allowed when one list extends the other, which is how a shared
//! [`TowerBuilder`] hands out values.

use crate::linalg::Mat;
use crate::scalar::FromRat;
use crate::{rat, Error, Int, Rat, Result};

use num_traits::{Num, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

const MAX_RADICALS: usize = 4;

/// Exact square root of a rational if it is a perfect square.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Element of Q(√d₁,…,√d_k); coefficient at bitmask S multiplies ∏_{i∈S}√d_i.
#[derive(Clone, PartialEq)]
pub struct TowerElem {
    rads: Vec<Rat>,
    coeffs: Vec<Rat>,
}

impl TowerElem {
    pub fn rational(r: Rat) -> Self {
        TowerElem {
            rads: vec![],
            coeffs: vec![r],
        }
    }

    pub fn radicands(&self) -> &[Rat] {
        &self.rads
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The rational part (coefficient of the trivial basis element).
    pub fn rational_part(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn promote(&self, rads: &[Rat]) -> Self {
        assert!(
            rads[..self.rads.len()] == self.rads[..],
            "incompatible quadratic towers"
        );
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(1 << rads.len(), Rat::zero());
        TowerElem {
            rads: rads.to_vec(),
            coeffs,
        }
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.rads.len() >= b.rads.len() {
            (a.clone(), b.promote(&a.rads))
        } else {
            (a.promote(&b.rads), b.clone())
        }
    }

    /// Matrix of multiplication by self on the basis; inversion solves M·x = 1.
    fn inverse(&self) -> Option<Self> {
        let k = self.rads.len();
        let n = 1 << k;
        let mut m = Mat::<Rat>::zeros(n, n);
        for s in 0..n {
            if self.coeffs[s].is_zero() {
                continue;
            }
            for t in 0..n {
                // (c_s·b_s)·b_t = c_s·(∏_{i∈s∩t} d_i)·b_{s xor t}
                let mut f = self.coeffs[s].clone();
                let mut inter = s & t;
                let mut i = 0;
                while inter != 0 {
                    if inter & 1 == 1 {
                        f *= self.rads[i].clone();
                    }
                    inter >>= 1;
                    i += 1;
                }
                let row = s ^ t;
                m[(row, t)] = m[(row, t)].clone() + f;
            }
        }
        let mut e0 = vec![Rat::zero(); n];
        e0[0] = Rat::one();
        let (x, _) = m.solve(&e0)?;
        Some(TowerElem {
            rads: self.rads.clone(),
            coeffs: x,
        })
    }
}

impl fmt::Debug for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, d) in self.rads.iter().enumerate() {
                if s >> i & 1 == 1 {
                    write!(f, "·√({d})")?;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for TowerElem {
    type Output = TowerElem;
    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = Self::unify(&self, &rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y.clone();
        }
        a
    }
}

impl Sub for TowerElem {
    type Output = TowerElem;
    fn sub(self, rhs: Self) -> Self {
        let (mut a, b) = Self::unify(&self, &rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y.clone();
        }
        a
    }
}

impl Mul for TowerElem {
    type Output = TowerElem;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = Self::unify(&self, &rhs);
        let n = a.coeffs.len();
        let mut out = vec![Rat::zero(); n];
        for s in 0..n {
            if a.coeffs[s].is_zero() {
                continue;
            }
            for t in 0..n {
                if b.coeffs[t].is_zero() {
                    continue;
                }
                let mut f = a.coeffs[s].clone() * b.coeffs[t].clone();
                let mut inter = s & t;
                let mut i = 0;
                while inter != 0 {
                    if inter & 1 == 1 {
                        f *= a.rads[i].clone();
                    }
                    inter >>= 1;
                    i += 1;
                }
                out[s ^ t] += f;
            }
        }
        TowerElem {
            rads: a.rads,
            coeffs: out,
        }
    }
}

impl Div for TowerElem {
    type Output = TowerElem;
    fn div(self, rhs: Self) -> Self {
        let (a, b) = Self::unify(&self, &rhs);
        let inv = b.inverse().expect("division by zero tower element");
        a * inv
    }
}

impl Rem for TowerElem {
    type Output = TowerElem;
    fn rem(self, _rhs: Self) -> Self {
        // field: exact division leaves no remainder
        TowerElem::zero()
    }
}

impl Neg for TowerElem {
    type Output = TowerElem;
    fn neg(mut self) -> Self {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl Zero for TowerElem {
    fn zero() -> Self {
        TowerElem::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for TowerElem {
    fn one() -> Self {
        TowerElem::rational(Rat::one())
    }
}

impl Num for TowerElem {
    type FromStrRadixErr = ();
    fn from_str_radix(_: &str, _: u32) -> std::result::Result<Self, ()> {
        Err(())
    }
}

impl FromRat for TowerElem {
    fn from_rat(r: &Rat) -> Self {
        TowerElem::rational(r.clone())
    }
}

/// Builds a shared tower, normalizing radicands to square-free integers and
/// reusing radicals that differ by a rational square.
#[derive(Clone, Default, Debug)]
pub struct TowerBuilder {
    rads: Vec<Rat>,
}

impl TowerBuilder {
    pub fn new() -> Self {
        TowerBuilder { rads: vec![] }
    }

    pub fn radicands(&self) -> &[Rat] {
        &self.rads
    }

    /// √d as a tower element, adjoining a new radical if needed.
    pub fn sqrt(&mut self, d: &Rat) -> Result<TowerElem> {
        if d.is_zero() {
            return Ok(TowerElem::zero());
        }
        if let Some(s) = sqrt_exact(d) {
            return Ok(TowerElem::rational(s));
        }
        for (i, known) in self.rads.iter().enumerate() {
            if let Some(q) = sqrt_exact(&(d.clone() / known.clone())) {
                let mut coeffs = vec![Rat::zero(); 1 << self.rads.len()];
                coeffs[1 << i] = q;
                return Ok(TowerElem {
                    rads: self.rads.clone(),
                    coeffs,
                });
            }
        }
        if self.rads.len() == MAX_RADICALS {
            return Err(Error::TowerDepth {
                need: MAX_RADICALS + 1,
                max: MAX_RADICALS,
            });
        }
        self.rads.push(squarefree_core(d));
        let mut coeffs = vec![Rat::zero(); 1 << self.rads.len()];
        let i = self.rads.len() - 1;
        coeffs[1 << i] = sqrt_exact(&(d.clone() / self.rads[i].clone()))
            .expect("core extraction leaves a square");
        Ok(TowerElem {
            rads: self.rads.clone(),
            coeffs,
        })
    }

    /// Roots of the monic quadratic x² − s·x + p as tower elements.
    pub fn quadratic_roots(&mut self, sum: &Rat, prod: &Rat) -> Result<(TowerElem, TowerElem)> {
        let disc = sum.clone() * sum.clone() - rat(4) * prod.clone();
        let sq = self.sqrt(&disc)?;
        let half = TowerElem::rational(crate::ratio(1, 2));
        let s = TowerElem::rational(sum.clone());
        let a = (s.clone() + sq.clone()) * half.clone();
        let b = (s - sq) * half;
        Ok((a, b))
    }

    /// Promote a value produced earlier so it can mix with the final tower.
    pub fn lift(&self, e: &TowerElem) -> TowerElem {
        e.promote(&self.rads)
    }
}

/// d = core·square with core a square-free integer (sign preserved).
fn squarefree_core(d: &Rat) -> Rat {
    // factor numerator·denominator; core of n/m equals core of n·m
    let n = d.numer() * d.denom();
    let neg = n.is_negative();
    let mut m = n.abs();
    let mut core = Int::one();
    let mut p = Int::from(2);
    while &p * &p <= m {
        let mut count = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            core *= &p;
        }
        p += 1;
    }
    core *= m;
    if neg {
        core = -core;
    }
    Rat::from_integer(core)
}
