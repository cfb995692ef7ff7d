//! Exact arithmetic kernel: arbitrary-precision rationals and dense
//! univariate polynomials.
//!
//! A [`Poly`] carries a *scale* tag. Scale `1` means the variable is `t`;
//! scale `L > 1` means the variable is `u` with `t = u^L`. Mixing scales is
//! an error in the fallible entry points ([`poly_add`], [`poly_mul`], ...)
//! and a panic in the operator impls.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always reduced with a positive denominator.
pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(x: &BigRat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Dense polynomial with exact rational coefficients; `coeffs[i]` is the
/// coefficient of the `i`-th power. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRat>,
    scale: u32,
}

impl Poly {
    pub fn zero(scale: u32) -> Self {
        Poly { coeffs: Vec::new(), scale }
    }

    pub fn one(scale: u32) -> Self {
        Self::constant(BigRat::one(), scale)
    }

    pub fn constant(c: BigRat, scale: u32) -> Self {
        Self::new(vec![c], scale)
    }

    /// `c * x^e`.
    pub fn monomial(c: BigRat, e: usize, scale: u32) -> Self {
        let mut coeffs = vec![BigRat::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs, scale)
    }

    pub fn new(mut coeffs: Vec<BigRat>, scale: u32) -> Self {
        assert!(scale >= 1, "scale must be positive");
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, scale }
    }

    pub fn from_ints(coeffs: &[i64], scale: u32) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), scale)
    }

    pub fn from_bigints(coeffs: Vec<BigInt>, scale: u32) -> Self {
        Self::new(coeffs.into_iter().map(BigRat::from_integer).collect(), scale)
    }

    /// `1 + s * x^k` for `s = ±1`.
    pub fn binomial(k: usize, s: i64, scale: u32) -> Self {
        let mut coeffs = vec![BigRat::zero(); k + 1];
        coeffs[0] = BigRat::one();
        coeffs[k] += rat(s);
        Self::new(coeffs, scale)
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs.iter().rev().fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale_by(&self, c: &BigRat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect(), self.scale)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs, scale: self.scale }
    }

    /// Divides by `x^k`, assuming the low coefficients vanish.
    pub fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Poly::new(self.coeffs.iter().skip(k).cloned().collect(), self.scale)
    }

    /// Coefficient reversal `x^deg * p(1/x)`.
    pub fn reversed(&self) -> Poly {
        Poly::new(self.coeffs.iter().rev().cloned().collect(), self.scale)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.scale);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale_by(&lc.recip()),
        }
    }

    /// Re-tags the variable without touching coefficients.
    pub fn with_scale(&self, scale: u32) -> Poly {
        Poly { coeffs: self.coeffs.clone(), scale }
    }

    /// Substitutes `x -> x^k` and multiplies the scale by `k`, so the
    /// polynomial keeps representing the same function of `t`.
    pub fn inflate(&self, k: u32) -> Poly {
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let step = k as usize;
        let mut coeffs = vec![BigRat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Poly { coeffs, scale: self.scale * k }
    }

    /// Integer coefficient vector `c * self` with `c > 0` chosen so that the
    /// result is primitive.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRat::from_integer(lcm.clone())).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() || content.is_one() {
            ints
        } else {
            ints.into_iter().map(|c| c / &content).collect()
        }
    }

    /// Exact division by `(x - 1)`; returns `None` if `p(1) != 0`.
    pub fn div_by_x_minus_one(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigRat::zero(); n - 1];
        let mut carry = BigRat::zero();
        for i in (1..n).rev() {
            carry += &self.coeffs[i];
            q[i - 1] = carry.clone();
        }
        carry += &self.coeffs[0];
        carry.is_zero().then(|| Poly::new(q, self.scale))
    }

    fn check_scale(&self, other: &Poly) -> Result<()> {
        if self.scale == other.scale {
            Ok(())
        } else {
            Err(Error::ScaleMismatch { left: self.scale, right: other.scale })
        }
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_scale(b)?;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| a.coeff(i) + b.coeff(i)).collect();
    Ok(Poly::new(coeffs, a.scale))
}

pub fn poly_sub(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_scale(b)?;
    let n = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..n).map(|i| a.coeff(i) - b.coeff(i)).collect();
    Ok(Poly::new(coeffs, a.scale))
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_scale(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(a.scale));
    }
    let mut out = vec![BigRat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Ok(Poly::new(out, a.scale))
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`.
pub fn poly_divrem(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    a.check_scale(b)?;
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lc_inv = b.coeffs[db].recip();
    let mut rem = a.coeffs.clone();
    if rem.len() <= db {
        return Ok((Poly::zero(a.scale), a.clone()));
    }
    let mut quot = vec![BigRat::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lc_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    Ok((Poly::new(quot, a.scale), Poly::new(rem, a.scale)))
}

/// Monic greatest common divisor.
///
/// Runs the Euclidean remainder sequence, keeping each remainder as a
/// primitive integer polynomial so that coefficient growth stays bounded.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_scale(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let mut x = a.primitive_integer();
    let mut y = b.primitive_integer();
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let mut r = int_pseudo_rem(&x, &y);
        make_primitive(&mut r);
        x = std::mem::replace(&mut y, r);
    }
    Ok(Poly::from_bigints(x, a.scale).monic())
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn make_primitive(p: &mut [BigInt]) {
    let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in p.iter_mut() {
            *c /= &content;
        }
    }
}

/// Pseudo-remainder of integer polynomials, `deg a >= deg b`, `b != 0`.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        poly_add(self, rhs).expect("scale mismatch in Poly addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        poly_sub(self, rhs).expect("scale mismatch in Poly subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        poly_mul(self, rhs).expect("scale mismatch in Poly multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect(), scale: self.scale }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = if self.scale == 1 { "t" } else { "u" };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let body = fmt_rat(&abs);
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{body}*")?;
                    }
                    if i == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.scale, self)
    }
}
