//! Truncated formal power series in `t`, stored in the scaled variable
//! `u` with `t = u^L`.
//!
//! A series of order `N` holds exactly the coefficients of `u^0 ..= u^{N*L}`;
//! every stored coefficient is exact, and nothing above the truncation is
//! ever materialized.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{fmt_rat, BigRat, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledSeries {
    coeffs: Vec<BigRat>,
    scale: u32,
    order: usize,
}

impl ScaledSeries {
    pub fn zero(scale: u32, order: usize) -> Self {
        assert!(scale >= 1);
        ScaledSeries { coeffs: vec![BigRat::zero(); order * scale as usize + 1], scale, order }
    }

    pub fn one(scale: u32, order: usize) -> Self {
        let mut s = Self::zero(scale, order);
        s.coeffs[0] = BigRat::one();
        s
    }

    /// Truncates a polynomial in the same variable.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        let mut s = Self::zero(p.scale(), order);
        for (i, c) in p.coeffs().iter().enumerate().take(s.coeffs.len()) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    /// Builds a scale-1 series from `t`-coefficients; extra entries are dropped.
    pub fn from_t_coeffs(coeffs: &[BigRat], order: usize) -> Self {
        let mut s = Self::zero(1, order);
        for (i, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients indexed by `u`-exponent.
    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of `u^i` (zero above the truncation).
    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Coefficient of `t^k`.
    pub fn t_coeff(&self, k: usize) -> BigRat {
        self.coeff(k * self.scale as usize)
    }

    /// Re-truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order);
        ScaledSeries { coeffs: self.coeffs[..order * self.scale as usize + 1].to_vec(), scale: self.scale, order }
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone(), self.scale)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_scale(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.scale, order);
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c = &self.coeffs[i] + &other.coeffs[i];
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_scale(other)?;
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.scale, order);
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            *c = &self.coeffs[i] - &other.coeffs[i];
        }
        Ok(out)
    }

    pub fn scale_by(&self, c: &BigRat) -> Self {
        ScaledSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect(), scale: self.scale, order: self.order }
    }

    /// Multiplies by `t^k` (`k` in `t`-degrees), dropping what falls off.
    pub fn shift_t(&self, k: usize) -> Self {
        let step = k * self.scale as usize;
        let mut out = Self::zero(self.scale, self.order);
        for i in step..out.coeffs.len() {
            out.coeffs[i] = self.coeffs[i - step].clone();
        }
        out
    }

    fn check_scale(&self, other: &Self) -> Result<()> {
        if self.scale == other.scale {
            Ok(())
        } else {
            Err(Error::ScaleMismatch { left: self.scale, right: other.scale })
        }
    }

    /// First index (in `u`) where two series of equal scale differ, up to
    /// the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().min(other.coeffs.len());
        (0..n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// Coefficients formatted as exact strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rat).collect()
    }
}

/// Truncated product; the output order is the smaller of the two.
pub fn series_mul(a: &ScaledSeries, b: &ScaledSeries) -> Result<ScaledSeries> {
    a.check_scale(b)?;
    let order = a.order.min(b.order);
    let mut out = ScaledSeries::zero(a.scale, order);
    let n = out.coeffs.len();
    for (i, x) in a.coeffs.iter().take(n).enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().take(n - i).enumerate() {
            if !y.is_zero() {
                out.coeffs[i + j] += x * y;
            }
        }
    }
    Ok(out)
}

/// `1 / (1 - t^k) = 1 + t^k + t^{2k} + ...` truncated at order `n`.
pub fn inv_one_minus_power(k: i64, scale: u32, order: usize) -> Result<ScaledSeries> {
    if k <= 0 {
        return Err(Error::NonPositiveExponent(k));
    }
    let mut s = ScaledSeries::zero(scale, order);
    let step = k as usize * scale as usize;
    for i in (0..s.coeffs.len()).step_by(step) {
        s.coeffs[i] = BigRat::one();
    }
    Ok(s)
}

/// `(1 + t^j)^e` truncated at order `n`, by repeated squaring.
pub fn binom_power(j: u32, e: u32, scale: u32, order: usize) -> ScaledSeries {
    let mut base = ScaledSeries::one(scale, order);
    let idx = j as usize * scale as usize;
    if idx < base.coeffs.len() {
        base.coeffs[idx] += BigRat::one();
    }
    let mut acc = ScaledSeries::one(scale, order);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = series_mul(&acc, &base).expect("same scale");
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base).expect("same scale");
        }
    }
    acc
}

/// The single monomial `t^c`, placed at `u`-exponent `c*L`.
pub fn monomial_frac(c: &BigRat, scale: u32, order: usize) -> Result<ScaledSeries> {
    let pos = c * BigRat::from_integer(BigInt::from(scale));
    let unrepresentable = || Error::UnrepresentableExponent { exponent: fmt_rat(c), scale };
    if !pos.is_integer() || pos < BigRat::zero() {
        return Err(unrepresentable());
    }
    let idx: usize = pos.to_integer().try_into().map_err(|_| unrepresentable())?;
    let mut s = ScaledSeries::zero(scale, order);
    if idx < s.coeffs.len() {
        s.coeffs[idx] = BigRat::one();
    }
    Ok(s)
}

/// Re-indexes a series in `u` as a series in `t`.
pub fn descale(s: &ScaledSeries) -> Result<ScaledSeries> {
    let l = s.scale as usize;
    if let Some((i, _)) = s.coeffs.iter().enumerate().find(|(i, c)| i % l != 0 && !c.is_zero()) {
        return Err(Error::DescaleFailure { exponent: i, scale: s.scale });
    }
    Ok(ScaledSeries { coeffs: s.coeffs.iter().step_by(l).cloned().collect(), scale: 1, order: s.order })
}
