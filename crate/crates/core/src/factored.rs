//! Sums of factored terms
//!
//! ```text
//!   c * t^e * prod (1 + t^k)^m / prod (1 - t^k)^m'
//! ```
//!
//! with rational `e`. Every closed formula in this crate has that shape. The
//! sum is assembled over a common denominator `prod (1 - t^k)^M` using only
//! sparse integer updates, and then reduced by cancelling cyclotomic
//! factors, which avoids general polynomial gcds on large inputs.
//!
//! Fractional exponents are handled at a scale `L` (`t = u^L`). Terms are
//! grouped by the residue of their `u`-exponent modulo `L`; the sum is a
//! function of `t` exactly when every nonzero residue class cancels.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::{fmt_rat, BigRat, Poly};
use crate::rational_fn::RationalFn;

#[derive(Clone, Debug)]
pub struct FactoredTerm {
    coeff: BigInt,
    exponent: BigRat,
    plus: BTreeMap<u64, u64>,
    minus: BTreeMap<u64, u64>,
}

impl FactoredTerm {
    pub fn new(coeff: impl Into<BigInt>) -> Self {
        FactoredTerm { coeff: coeff.into(), exponent: BigRat::zero(), plus: BTreeMap::new(), minus: BTreeMap::new() }
    }

    /// Multiplies by `t^e`.
    pub fn t_pow(mut self, e: BigRat) -> Self {
        self.exponent += e;
        self
    }

    /// Multiplies by `(1 + t^k)^m`.
    pub fn one_plus(mut self, k: u64, m: u64) -> Self {
        assert!(k >= 1);
        if m > 0 {
            *self.plus.entry(k).or_insert(0) += m;
        }
        self
    }

    /// Divides by `(1 - t^k)^m`.
    pub fn over_one_minus(mut self, k: u64, m: u64) -> Self {
        assert!(k >= 1);
        if m > 0 {
            *self.minus.entry(k).or_insert(0) += m;
        }
        self
    }

    pub fn times(mut self, c: impl Into<BigInt>) -> Self {
        self.coeff *= c.into();
        self
    }

    pub fn exponent(&self) -> &BigRat {
        &self.exponent
    }
}

#[derive(Clone, Debug)]
pub struct FactoredSum {
    scale: u32,
    terms: Vec<FactoredTerm>,
}

impl FactoredSum {
    /// An empty sum whose exponents must be multiples of `1/scale`.
    pub fn new(scale: u32) -> Self {
        assert!(scale >= 1);
        FactoredSum { scale, terms: Vec::new() }
    }

    pub fn push(&mut self, term: FactoredTerm) {
        if !term.coeff.is_zero() {
            self.terms.push(term);
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn u_exponent(&self, term: &FactoredTerm) -> Result<u64> {
        let pos = &term.exponent * BigRat::from_integer(BigInt::from(self.scale));
        let bad = || Error::UnrepresentableExponent { exponent: fmt_rat(&term.exponent), scale: self.scale };
        if !pos.is_integer() || pos.is_negative() {
            return Err(bad());
        }
        pos.to_integer().try_into().map_err(|_| bad())
    }

    fn common_denominator(&self) -> BTreeMap<u64, u64> {
        let mut den = BTreeMap::new();
        for t in &self.terms {
            for (&k, &m) in &t.minus {
                let e = den.entry(k).or_insert(0);
                *e = (*e).max(m);
            }
        }
        den
    }

    /// The sum as a normalized function of `t` (scale 1). Fails with
    /// [`Error::DescaleFailure`] if a fractional power of `t` survives.
    pub fn to_rational_fn(&self) -> Result<RationalFn> {
        let l = self.scale as u64;
        let den = self.common_denominator();
        let mut groups: BTreeMap<u64, Vec<BigInt>> = BTreeMap::new();
        for term in &self.terms {
            let e = self.u_exponent(term)?;
            let acc = groups.entry(e % l).or_default();
            add_term(acc, term, e / l, &den);
        }
        for (&rho, acc) in &groups {
            if rho != 0 {
                if let Some(i) = acc.iter().position(|c| !c.is_zero()) {
                    return Err(Error::DescaleFailure { exponent: i * l as usize + rho as usize, scale: self.scale });
                }
            }
        }
        let num = groups.remove(&0).unwrap_or_default();
        Ok(reduce(num, &den, 1))
    }

    /// The sum as a normalized function of `u` (scale `L`), built without
    /// grouping: every factor is rewritten in `u`.
    pub fn to_scaled_rational_fn(&self) -> Result<RationalFn> {
        let l = self.scale as u64;
        let den: BTreeMap<u64, u64> = self.common_denominator().into_iter().map(|(k, m)| (k * l, m)).collect();
        let mut acc = Vec::new();
        for term in &self.terms {
            let e = self.u_exponent(term)?;
            let inflated = FactoredTerm {
                coeff: term.coeff.clone(),
                exponent: BigRat::zero(),
                plus: term.plus.iter().map(|(&k, &m)| (k * l, m)).collect(),
                minus: term.minus.iter().map(|(&k, &m)| (k * l, m)).collect(),
            };
            add_term(&mut acc, &inflated, e, &den);
        }
        Ok(reduce(acc, &den, self.scale))
    }
}

/// `acc += coeff * x^shift * prod(1+x^k)^m * prod_k (1-x^k)^(M_k - m_k)`.
fn add_term(acc: &mut Vec<BigInt>, term: &FactoredTerm, shift: u64, den: &BTreeMap<u64, u64>) {
    let mut p = vec![term.coeff.clone()];
    for (&k, &m) in &term.plus {
        for _ in 0..m {
            mul_binomial(&mut p, k as usize, true);
        }
    }
    for (&k, &mk) in den {
        let have = term.minus.get(&k).copied().unwrap_or(0);
        for _ in have..mk {
            mul_binomial(&mut p, k as usize, false);
        }
    }
    let shift = shift as usize;
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (i, c) in p.into_iter().enumerate() {
        acc[i + shift] += c;
    }
}

/// In-place `p *= (1 ± x^k)`.
fn mul_binomial(p: &mut Vec<BigInt>, k: usize, plus: bool) {
    let n = p.len();
    p.resize(n + k, BigInt::zero());
    for i in (0..n).rev() {
        let c = p[i].clone();
        if plus {
            p[i + k] += c;
        } else {
            p[i + k] -= c;
        }
    }
}

/// Divides `num / prod (1 - x^k)^M_k` down to lowest terms by trial division
/// with the cyclotomic factors of the denominator.
fn reduce(mut num: Vec<BigInt>, den: &BTreeMap<u64, u64>, scale: u32) -> RationalFn {
    trim(&mut num);
    if num.is_empty() {
        return RationalFn::zero(scale);
    }
    // 1 - x^k = -prod_{m | k} Phi_m(x)
    let mut cyclo: BTreeMap<u64, u64> = BTreeMap::new();
    let mut sign_flips = 0u64;
    for (&k, &mk) in den {
        sign_flips += mk;
        for m in divisors(k) {
            *cyclo.entry(m).or_insert(0) += mk;
        }
    }
    let mut cache = HashMap::new();
    let mut den_poly = vec![BigInt::one()];
    for (&m, &count) in &cyclo {
        let phi = cyclotomic(m, &mut cache);
        let mut left = count;
        while left > 0 {
            match exact_div_monic(&num, &phi) {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        for _ in 0..left {
            den_poly = mul_dense(&den_poly, &phi);
        }
    }
    if sign_flips % 2 == 1 {
        for c in num.iter_mut() {
            *c = -&*c;
        }
    }
    RationalFn::from_coprime_parts(Poly::from_bigints(num, scale), Poly::from_bigints(den_poly, scale))
}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn divisors(k: u64) -> Vec<u64> {
    (1..=k).filter(|d| k % d == 0).collect()
}

fn mul_dense(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Integer coefficients of the `m`-th cyclotomic polynomial.
pub fn cyclotomic(m: u64, cache: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        let phi = cyclotomic(d, cache);
        p = exact_div_monic(&p, &phi).expect("cyclotomic factors divide x^m - 1");
    }
    cache.insert(m, p.clone());
    p
}

/// Exact quotient by a monic integer polynomial, or `None` on a nonzero
/// remainder.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() <= db {
        return a.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    rem[..db].iter().all(Zero::is_zero).then_some(q)
}

/// `gcd` of a list of integers, used by callers assembling coefficients.
pub fn int_gcd(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}
