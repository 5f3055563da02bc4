//! Exact univariate polynomial, quasi-polynomial and rational-function
//! arithmetic, Wronskians, and the degree-bounded linear solver behind the
//! reproduction equation.

use crate::linalg::Mat;
use crate::scalar::Scalar;
use crate::{rat, Error, Rat, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, coefficients lowest degree first.
/// The zero polynomial is the empty coefficient list; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// x - root
    pub fn linear_from_root(root: T) -> Self {
        Poly {
            coeffs: vec![-root, T::one()],
        }
    }

    /// x^2 - sum·x + prod, the monic quadratic with root sum/product data.
    pub fn quadratic_from_sum_prod(sum: T, prod: T) -> Self {
        Poly {
            coeffs: vec![prod, -sum, T::one()],
        }
    }

    pub fn monomial(deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = T::one();
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut mult = T::zero();
            for _ in 0..k {
                mult = mult + T::one();
            }
            out.push(c.clone() * mult);
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Multiplicity of 0 as a root (index of lowest nonzero coefficient).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by x^k; panics if not divisible.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        assert!(self.valuation().map_or(true, |v| v >= k));
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; denominator must be nonzero.
    pub fn div_rem(&self, den: &Self) -> (Self, Self) {
        assert!(!den.is_zero(), "division by zero polynomial");
        let dd = den.degree().unwrap();
        let lc_inv = T::one() / den.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap().clone() * lc_inv.clone();
            if !q.is_zero() {
                for (i, dc) in den.coeffs.iter().enumerate() {
                    let t = rem[k + i].clone() - q.clone() * dc.clone();
                    rem[k + i] = t;
                }
            }
            quo[k] = q;
            rem.pop();
        }
        (Self::new(quo), Self::new(rem))
    }

    /// Monic greatest common divisor; gcd(f, 0) = monic(f).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = t;
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl fmt::Debug for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Quasi-polynomial x^a·p(x) with exact rational exponent a.
/// Normalized so that the body has a nonzero constant term; the zero
/// quasi-polynomial has zero body and zero exponent.
#[derive(Clone, PartialEq)]
pub struct QuasiPoly<T> {
    exponent: Rat,
    body: Poly<T>,
}

impl<T: Scalar> QuasiPoly<T> {
    pub fn new(exponent: Rat, body: Poly<T>) -> Self {
        if body.is_zero() {
            return QuasiPoly {
                exponent: Rat::zero(),
                body,
            };
        }
        let v = body.valuation().unwrap();
        QuasiPoly {
            exponent: exponent + rat(v as i64),
            body: body.shift_down(v),
        }
    }

    pub fn from_poly(body: Poly<T>) -> Self {
        Self::new(Rat::zero(), body)
    }

    pub fn zero() -> Self {
        QuasiPoly {
            exponent: Rat::zero(),
            body: Poly::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn exponent(&self) -> &Rat {
        &self.exponent
    }

    pub fn body(&self) -> &Poly<T> {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// True when the exponent is a nonnegative integer, i.e. the function is
    /// an honest polynomial; returns it expanded.
    pub fn as_poly(&self) -> Option<Poly<T>> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.exponent.is_integer() && !self.exponent.is_negative() {
            let k = self.exponent.to_integer();
            let k = usize::try_from(&k).ok()?;
            Some(self.body.shift_up(k))
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.exponent.clone() + other.exponent.clone(),
            &self.body * &other.body,
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.exponent.clone(), self.body.scale(s))
    }

    pub fn monic(&self) -> Self {
        QuasiPoly {
            exponent: self.exponent.clone(),
            body: self.body.monic(),
        }
    }

    /// Derivative (x^a p)' = x^{a-1}(a·p + x·p').
    pub fn derivative(&self) -> Self
    where
        T: crate::scalar::FromRat,
    {
        if self.is_zero() {
            return Self::zero();
        }
        let a = T::from_rat(&self.exponent);
        let body = &self.body.scale(&a) + &self.body.derivative().shift_up(1);
        Self::new(self.exponent.clone() - Rat::one(), body)
    }
}

impl fmt::Debug for QuasiPoly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            write!(f, "{}", self.body)
        } else {
            write!(f, "x^({})*({})", self.exponent, self.body)
        }
    }
}

/// Wronskian W(f,g) = f'g - fg' of quasi-polynomials.
///
/// With f = x^a p, g = x^b q this is x^{a+b-1}·[(a-b)pq + x(p'q - pq')].
pub fn wronskian<T: Scalar + crate::scalar::FromRat>(
    f: &QuasiPoly<T>,
    g: &QuasiPoly<T>,
) -> QuasiPoly<T> {
    if f.is_zero() || g.is_zero() {
        return QuasiPoly::zero();
    }
    let a = f.exponent().clone();
    let b = g.exponent().clone();
    let p = f.body();
    let q = g.body();
    let diff = T::from_rat(&(a.clone() - b.clone()));
    let cross = &(&p.derivative() * q) - &(p * &q.derivative());
    let body = &(p * q).scale(&diff) + &cross.shift_up(1);
    QuasiPoly::new(a + b - Rat::one(), body)
}

/// Outcome of the Wronskian solvers: the monic representative of the
/// polynomial unknown, the scalar c with raw = c·monic, and the dimension of
/// the homogeneous solution space inside the search window (the kernel is
/// spanned by y·x^{−shift} whenever that is a polynomial).
#[derive(Clone, Debug)]
pub struct WronskianSolution {
    pub monic: Poly<Rat>,
    pub scalar: Rat,
    pub kernel_dim: usize,
}

impl WronskianSolution {
    pub fn raw(&self) -> Poly<Rat> {
        self.monic.scale(&self.scalar)
    }
}

/// The polynomial right side R with rhs = x^{shift−1}·R, or None when the
/// exponents cannot match a polynomial equation.
fn wronskian_rhs_poly(rhs: &QuasiPoly<Rat>, shift: &Rat) -> Option<Poly<Rat>> {
    let pow = rhs.exponent().clone() - shift.clone() + Rat::one();
    if !pow.is_integer() || pow.is_negative() {
        return None;
    }
    Some(
        rhs.body()
            .shift_up(usize::try_from(&pow.to_integer()).expect("exponent fits usize")),
    )
}

/// Coefficient matrix of t ↦ (x·y' − shift·y)·t − x·y·t' on deg ≤ tdeg.
fn wronskian_system(y: &Poly<Rat>, shift: &Rat, tdeg: usize, rows: usize) -> Mat<Rat> {
    let a_poly = &y.derivative().shift_up(1) - &y.scale(shift);
    let mut m = Mat::<Rat>::zeros(rows, tdeg + 1);
    for j in 0..=tdeg {
        // image of x^j: a_poly·x^j − j·y·x^j
        let img = &a_poly.shift_up(j) - &y.scale(&rat(j as i64)).shift_up(j);
        for (i, c) in img.coeffs().iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    m
}

fn solve_window(
    y: &Poly<Rat>,
    r: &Poly<Rat>,
    shift: &Rat,
    tdeg: usize,
) -> Result<WronskianSolution> {
    let ydeg = y.degree().unwrap();
    let rows = (ydeg + tdeg + 1).max(r.degree().unwrap() + 1);
    let m = wronskian_system(y, shift, tdeg, rows);
    let mut b = vec![Rat::zero(); rows];
    for (i, c) in r.coeffs().iter().enumerate() {
        b[i] = c.clone();
    }
    match m.solve(&b) {
        None => Err(Error::NoSolution { direction: None }),
        Some((particular, kernel)) => {
            let mut t = Poly::new(particular);
            // the homogeneous space is at most one-dimensional: y·x^{−shift};
            // canonicalize by eliminating the kernel's leading coefficient
            let kernel_dim = kernel.len();
            debug_assert!(kernel_dim <= 1);
            if let Some(kv) = kernel.first() {
                let k = Poly::new(kv.clone());
                let kd = k.degree().unwrap();
                let f = t.coeff(kd) / k.leading().unwrap().clone();
                t = &t - &k.scale(&f);
            }
            if t.is_zero() {
                return Err(Error::NoSolution { direction: None });
            }
            let scalar = t.leading().unwrap().clone();
            Ok(WronskianSolution {
                monic: t.monic(),
                scalar,
                kernel_dim,
            })
        }
    }
}

/// Solve W(y, x^shift·t) = rhs for a polynomial t, exactly.
///
/// Writing the left side as x^{shift−1}·[(x·y' − shift·y)·t − x·y·t'], the
/// equation forces rhs = x^{shift−1}·(polynomial); the coefficients of t
/// then satisfy a linear system over the rationals. Degree matching pins
/// deg t to deg R − deg y except when the top coefficient cancels, which
/// happens exactly at deg t = deg y − shift; the search window covers both.
/// When the homogeneous equation contributes a polynomial solution the
/// returned representative is canonicalized against it and the ambiguity is
/// reported in `kernel_dim`.
pub fn solve_wronskian(
    y: &Poly<Rat>,
    rhs: &QuasiPoly<Rat>,
    shift: &Rat,
) -> Result<WronskianSolution> {
    if y.is_zero() || rhs.is_zero() {
        return Err(Error::NoSolution { direction: None });
    }
    let r = wronskian_rhs_poly(rhs, shift).ok_or(Error::NoSolution { direction: None })?;
    let rdeg = r.degree().unwrap() as i64;
    let ydeg = y.degree().unwrap() as i64;
    let mut dmax = (rdeg - ydeg).max(0);
    if shift.is_integer() {
        let d2 = ydeg - i64::try_from(&shift.to_integer()).unwrap_or(i64::MAX / 2);
        dmax = dmax.max(d2);
    }
    solve_window(y, &r, shift, dmax as usize)
}

/// Solve W(y, x^shift·t) = rhs with deg t pinned to `want_deg` (the degree
/// dictated by the reproduction weight bookkeeping). A homogeneous solution
/// inside this window is a genuine ambiguity and is reported as such.
pub fn solve_wronskian_deg(
    y: &Poly<Rat>,
    rhs: &QuasiPoly<Rat>,
    shift: &Rat,
    want_deg: usize,
) -> Result<WronskianSolution> {
    if y.is_zero() || rhs.is_zero() {
        return Err(Error::NoSolution { direction: None });
    }
    let r = wronskian_rhs_poly(rhs, shift).ok_or(Error::NoSolution { direction: None })?;
    let sol = solve_window(y, &r, shift, want_deg)?;
    if sol.kernel_dim > 0 {
        return Err(Error::NonUnique);
    }
    Ok(sol)
}

/// Report of square-freeness (G1) and pairwise coprimality (G3) checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SquarefreeReport {
    /// per polynomial: gcd(f, f') trivial
    pub squarefree: Vec<bool>,
    /// per requested pair: gcd trivial
    pub coprime: Vec<bool>,
    pub all_pass: bool,
}

/// G1/G3 style gcd checks on a list of polynomials; pairs use 1-based indices.
pub fn squarefree_and_coprime_checks(
    polys: &[Poly<Rat>],
    pairs: &[(usize, usize)],
) -> SquarefreeReport {
    let squarefree: Vec<bool> = polys.iter().map(|p| p.is_squarefree()).collect();
    let coprime: Vec<bool> = pairs
        .iter()
        .map(|&(i, j)| polys[i - 1].gcd(&polys[j - 1]).is_constant())
        .collect();
    let all_pass = squarefree.iter().all(|&b| b) && coprime.iter().all(|&b| b);
    SquarefreeReport {
        squarefree,
        coprime,
        all_pass,
    }
}

/// Reduced rational function num/den with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RationalFn<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar> RationalFn<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut out = RationalFn { num, den };
        out.reduce();
        out
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RationalFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_constant() {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lc = T::one() / self.den.leading().unwrap().clone();
        self.num = self.num.scale(&lc);
        self.den = self.den.scale(&lc);
    }

    /// Quotient-rule derivative (num'den - num·den')/den².
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

impl fmt::Debug for RationalFn<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

// operator impls so a rational-function field can itself serve as a scalar
// (used to evaluate weight functions at coincident roots via x → 0 limits)

impl<T: Scalar> Add for &RationalFn<T> {
    type Output = RationalFn<T>;
    fn add(self, rhs: Self) -> RationalFn<T> {
        RationalFn::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Sub for &RationalFn<T> {
    type Output = RationalFn<T>;
    fn sub(self, rhs: Self) -> RationalFn<T> {
        RationalFn::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<T: Scalar> Mul for &RationalFn<T> {
    type Output = RationalFn<T>;
    fn mul(self, rhs: Self) -> RationalFn<T> {
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> std::ops::Div for &RationalFn<T> {
    type Output = RationalFn<T>;
    fn div(self, rhs: Self) -> RationalFn<T> {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFn::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<T: Scalar> Neg for &RationalFn<T> {
    type Output = RationalFn<T>;
    fn neg(self) -> RationalFn<T> {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Scalar> Add for RationalFn<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for RationalFn<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for RationalFn<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Scalar> std::ops::Div for RationalFn<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        &self / &rhs
    }
}

impl<T: Scalar> std::ops::Rem for RationalFn<T> {
    type Output = Self;
    fn rem(self, _rhs: Self) -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Neg for RationalFn<T> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl<T: Scalar> Zero for RationalFn<T> {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
}

impl<T: Scalar> One for RationalFn<T> {
    fn one() -> Self {
        RationalFn::one()
    }
}

impl<T: Scalar> num_traits::Num for RationalFn<T> {
    type FromStrRadixErr = ();
    fn from_str_radix(_: &str, _: u32) -> std::result::Result<Self, ()> {
        Err(())
    }
}

impl<T: Scalar + crate::scalar::FromRat> crate::scalar::FromRat for RationalFn<T> {
    fn from_rat(r: &Rat) -> Self {
        RationalFn::from_poly(Poly::constant(T::from_rat(r)))
    }
}

impl<T: Scalar> Poly<T> {
    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

/// Logarithmic derivative of x^a·p: a/x + p'/p.
pub fn log_derivative(q: &QuasiPoly<Rat>) -> RationalFn<Rat> {
    assert!(!q.is_zero(), "log derivative of zero");
    let x = Poly::monomial(1);
    let a_over_x = RationalFn::new(Poly::constant(q.exponent().clone()), x);
    let p_term = RationalFn::new(q.body().derivative(), q.body().clone());
    &a_over_x + &p_term
}

// ---------------------------------------------------------------------------
// serde helpers: rationals as "p/q" strings
// ---------------------------------------------------------------------------

pub mod ratstr {
    use crate::{Int, Rat};
    use num_traits::One;
    use std::str::FromStr;

    pub fn to_string(r: &Rat) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse(s: &str) -> Option<Rat> {
        match s.split_once('/') {
            Some((p, q)) => {
                let p = Int::from_str(p.trim()).ok()?;
                let q = Int::from_str(q.trim()).ok()?;
                Some(Rat::new(p, q))
            }
            None => Int::from_str(s.trim()).ok().map(Rat::from_integer),
        }
    }
}

impl Serialize for Poly<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(ratstr::to_string).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| ratstr::parse(s).ok_or_else(|| serde::de::Error::custom("bad rational")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}
