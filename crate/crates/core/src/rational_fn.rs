//! The field of rational functions in one variable, kept in a canonical
//! normal form: numerator and denominator coprime, integer coefficients
//! with no common content, and a positive leading denominator coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{poly_divrem, poly_gcd, rat, BigRat, Poly};
use crate::series::ScaledSeries;

#[derive(Clone)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
    scale: u32,
}

impl RationalFn {
    /// Builds `num / den` and reduces it to normal form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.scale() != den.scale() {
            return Err(Error::ScaleMismatch { left: num.scale(), right: den.scale() });
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let scale = num.scale();
        if num.is_zero() {
            return Ok(Self::zero(scale));
        }
        let g = poly_gcd(&num, &den)?;
        let (num, _) = poly_divrem(&num, &g)?;
        let (den, _) = poly_divrem(&den, &g)?;
        Ok(Self::canonical(num, den))
    }

    /// Builds `num / den` from parts already known to be coprime; only the
    /// scaling is normalized.
    pub fn from_coprime_parts(num: Poly, den: Poly) -> Self {
        assert_eq!(num.scale(), den.scale());
        assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero(num.scale());
        }
        Self::canonical(num, den)
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        let scale = num.scale();
        // clear denominators jointly, then strip the joint content
        let lcm = num.coeffs().iter().chain(den.coeffs()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let to_int = |p: &Poly| -> Vec<BigInt> {
            p.coeffs().iter().map(|c| (c * BigRat::from_integer(lcm.clone())).to_integer()).collect()
        };
        let (mut n, mut d) = (to_int(&num), to_int(&den));
        let mut content = n.iter().chain(&d).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if d.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c /= &content;
        }
        RationalFn { num: Poly::from_bigints(n, scale), den: Poly::from_bigints(d, scale), scale }
    }

    pub fn zero(scale: u32) -> Self {
        RationalFn { num: Poly::zero(scale), den: Poly::one(scale), scale }
    }

    pub fn one(scale: u32) -> Self {
        Self::from_poly(Poly::one(scale))
    }

    pub fn from_poly(p: Poly) -> Self {
        let scale = p.scale();
        Self::from_coprime_parts(p, Poly::one(scale))
    }

    /// `c * x^e`, with negative `e` allowed.
    pub fn monomial(c: BigRat, e: i64, scale: u32) -> Self {
        if e >= 0 {
            Self::from_poly(Poly::monomial(c, e as usize, scale))
        } else {
            Self::from_coprime_parts(Poly::constant(c, scale), Poly::monomial(rat(1), (-e) as usize, scale))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check_scale(&self, other: &Self) -> Result<()> {
        if self.scale == other.scale {
            Ok(())
        } else {
            Err(Error::ScaleMismatch { left: self.scale, right: other.scale })
        }
    }

    /// Multiplies by `x^k` (in the stored variable).
    pub fn mul_power(&self, k: i64) -> Self {
        if k >= 0 {
            Self::from_coprime_parts(self.num.shift(k as usize), self.den.clone()).reduce_monomial()
        } else {
            Self::from_coprime_parts(self.num.clone(), self.den.shift((-k) as usize)).reduce_monomial()
        }
    }

    fn reduce_monomial(self) -> Self {
        let common = self.num.valuation().unwrap_or(0).min(self.den.valuation().unwrap_or(0));
        if common == 0 || self.num.is_zero() {
            return self;
        }
        Self::from_coprime_parts(self.num.unshift(common), self.den.unshift(common))
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: -&self.num, den: self.den.clone(), scale: self.scale }
    }

    /// Evaluates at a point where the denominator does not vanish.
    pub fn eval(&self, x: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Re-expresses a function of `t = u^L` in the variable `t`.
    pub fn descale(&self) -> Result<Self> {
        let l = self.scale as usize;
        let shrink = |p: &Poly| -> Result<Poly> {
            if let Some((i, _)) = p.coeffs().iter().enumerate().find(|(i, c)| i % l != 0 && !c.is_zero()) {
                return Err(Error::DescaleFailure { exponent: i, scale: self.scale });
            }
            Ok(Poly::new(p.coeffs().iter().step_by(l).cloned().collect(), 1))
        };
        Ok(Self::from_coprime_parts(shrink(&self.num)?, shrink(&self.den)?))
    }

    /// Re-expresses a function of `t` in `u` with `t = u^k`.
    pub fn inflate(&self, k: u32) -> Self {
        Self::from_coprime_parts(self.num.inflate(k), self.den.inflate(k))
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_scale(other)?;
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    /// `self.num * other.den - other.num * self.den`; zero iff equal.
    pub fn cross_residue(&self, other: &Self) -> Result<Poly> {
        self.check_scale(other)?;
        Ok(&(&self.num * &other.den) - &(&other.num * &self.den))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn[{}]({})", self.scale, self)
    }
}

pub fn rf_add(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    a.check_scale(b)?;
    if a.den == b.den {
        return RationalFn::new(&a.num + &b.num, a.den.clone());
    }
    RationalFn::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
}

pub fn rf_sub(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    rf_add(a, &b.neg())
}

pub fn rf_mul(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    a.check_scale(b)?;
    // cross-cancel first so the products stay small
    let g1 = gcd_or_one(&a.num, &b.den)?;
    let g2 = gcd_or_one(&b.num, &a.den)?;
    let num = &exact_div(&a.num, &g1)? * &exact_div(&b.num, &g2)?;
    let den = &exact_div(&a.den, &g2)? * &exact_div(&b.den, &g1)?;
    if num.is_zero() {
        return Ok(RationalFn::zero(a.scale));
    }
    Ok(RationalFn::from_coprime_parts(num, den))
}

pub fn rf_div(a: &RationalFn, b: &RationalFn) -> Result<RationalFn> {
    a.check_scale(b)?;
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let inv = RationalFn::from_coprime_parts(b.den.clone(), b.num.clone());
    rf_mul(a, &inv)
}

fn gcd_or_one(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::one(a.scale()));
    }
    poly_gcd(a, b)
}

fn exact_div(a: &Poly, b: &Poly) -> Result<Poly> {
    let (q, r) = poly_divrem(a, b)?;
    debug_assert!(r.is_zero());
    Ok(q)
}

/// Power-series expansion up to order `n` (in `t`-degrees).
pub fn rf_to_series(f: &RationalFn, order: usize) -> Result<ScaledSeries> {
    let d0 = f.den.coeff(0);
    if d0.is_zero() {
        return Err(Error::PoleAtOrigin);
    }
    let len = order * f.scale as usize + 1;
    let inv0 = d0.recip();
    let den = f.den.coeffs();
    let mut out: Vec<BigRat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = f.num.coeff(k);
        for (j, dj) in den.iter().enumerate().skip(1).take(k) {
            if !dj.is_zero() {
                acc -= dj * &out[k - j];
            }
        }
        out.push(acc * &inv0);
    }
    Ok(ScaledSeries::from_poly(&Poly::new(out, f.scale), order))
}

/// Returns `(g, e)` with `f(1/x) = x^e * g(x)`, where `g` has no monomial
/// factor. The exponent is in units of the stored variable.
pub fn rf_reciprocal(f: &RationalFn) -> Result<(RationalFn, i64)> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let dn = f.num.degree().expect("nonzero") as i64;
    let dd = f.den.degree().expect("nonzero") as i64;
    let g = RationalFn::from_coprime_parts(f.num.reversed(), f.den.reversed());
    Ok((g, dd - dn))
}

/// Whether `t^D * f(1/t) = f(t)` holds exactly.
pub fn duality_check(f: &RationalFn, d: i64) -> Result<bool> {
    let (g, e) = rf_reciprocal(f)?;
    let shift = d * f.scale as i64 + e;
    let (lhs, rhs) = if shift >= 0 {
        (&g.num.shift(shift as usize) * &f.den, &f.num * &g.den)
    } else {
        (&g.num * &f.den, (&f.num * &g.den).shift((-shift) as usize))
    };
    Ok(lhs == rhs)
}

/// Exact `lim_{t -> 1} f(t)`, cancelling `(t - 1)` factors by synthetic
/// division.
pub fn limit_at_one(f: &RationalFn) -> Result<BigRat> {
    let one = BigRat::one();
    let mut num = f.num.clone();
    let mut den = f.den.clone();
    loop {
        if num.is_zero() {
            return Ok(BigRat::zero());
        }
        if !den.eval(&one).is_zero() {
            break;
        }
        match (num.div_by_x_minus_one(), den.div_by_x_minus_one()) {
            (Some(n), Some(d)) => {
                num = n;
                den = d;
            }
            _ => return Err(Error::PoleAtOne),
        }
    }
    Ok(num.eval(&one) / den.eval(&one))
}

/// The quotient polynomial when the denominator divides the numerator.
pub fn rf_is_polynomial(f: &RationalFn) -> Option<Poly> {
    if f.den.degree() == Some(0) {
        return Some(f.num.scale_by(&f.den.coeff(0).recip()));
    }
    let (q, r) = poly_divrem(&f.num, &f.den).ok()?;
    r.is_zero().then_some(q)
}
