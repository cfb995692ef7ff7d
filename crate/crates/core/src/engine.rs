//! Poincaré series of classifying spaces, of semistable strata, and of
//! moduli spaces: product formulas, Harder–Narasimhan recursion, and
//! closed formulas solving the recursion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factored::{FactoredSum, FactoredTerm};
use crate::hn::{
    codim_dmu, compositions, coprime, degree_violation, enumerate_hn_types, pair_sum, real_multiplicity,
    tau_admissible, zagier_exponent_m, KleinTopType, Tau,
};
use crate::kernel::{ratio, BigRat, Poly};
use crate::rational_fn::{rf_is_polynomial, rf_mul, rf_to_series, RationalFn};
use crate::series::{binom_power, inv_one_minus_power, series_mul, ScaledSeries};

/// Default truncation order in `t`-degrees.
pub const DEFAULT_ORDER: usize = 40;

/// A product `prod (1 + t^k)^m / prod (1 - t^k)^m'`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Product {
    plus: BTreeMap<u64, u64>,
    minus: BTreeMap<u64, u64>,
}

impl Product {
    pub fn one_plus(mut self, k: u64, m: u64) -> Self {
        if m > 0 {
            *self.plus.entry(k).or_insert(0) += m;
        }
        self
    }

    pub fn over_one_minus(mut self, k: u64, m: u64) -> Self {
        if m > 0 {
            *self.minus.entry(k).or_insert(0) += m;
        }
        self
    }

    pub fn times(mut self, other: &Product) -> Self {
        for (&k, &m) in &other.plus {
            self = self.one_plus(k, m);
        }
        for (&k, &m) in &other.minus {
            self = self.over_one_minus(k, m);
        }
        self
    }

    fn apply(&self, mut term: FactoredTerm) -> FactoredTerm {
        for (&k, &m) in &self.plus {
            term = term.one_plus(k, m);
        }
        for (&k, &m) in &self.minus {
            term = term.over_one_minus(k, m);
        }
        term
    }

    /// Normalized rational function, via polynomial products and a gcd.
    pub fn to_rational_fn(&self) -> RationalFn {
        let mut num = Poly::one(1);
        for (&k, &m) in &self.plus {
            num = &num * &Poly::binomial(k as usize, 1, 1).pow(m as u32);
        }
        let mut den = Poly::one(1);
        for (&k, &m) in &self.minus {
            den = &den * &Poly::binomial(k as usize, -1, 1).pow(m as u32);
        }
        RationalFn::new(num, den).expect("denominator is nonzero")
    }

    /// Truncated expansion, built factor by factor in the series ring.
    pub fn to_series(&self, order: usize) -> ScaledSeries {
        let mut acc = ScaledSeries::one(1, order);
        for (&k, &m) in &self.plus {
            acc = series_mul(&acc, &binom_power(k as u32, m as u32, 1, order)).expect("scale 1");
        }
        for (&k, &m) in &self.minus {
            let inv = inv_one_minus_power(k as i64, 1, order).expect("k >= 1");
            for _ in 0..m {
                acc = series_mul(&acc, &inv).expect("scale 1");
            }
        }
        acc
    }
}

/// `prod_{j<r} (1 - t^{sj}) prod_{j<=r} (1 - t^{sj})` in the denominator.
fn gauge_denominator(r: u64, s: u64) -> Product {
    let mut p = Product::default();
    for j in 1..r {
        p = p.over_one_minus(s * j, 1);
    }
    for j in 1..=r {
        p = p.over_one_minus(s * j, 1);
    }
    p
}

fn odd_factors(r: u64, m: u64) -> Product {
    (1..=r).fold(Product::default(), |p, j| p.one_plus(2 * j - 1, m))
}

/// `Q_g(r)` for the complex gauge group.
pub fn q_complex_product(g: u32, r: u32) -> Product {
    odd_factors(r as u64, 2 * g as u64).times(&gauge_denominator(r as u64, 2))
}

/// `Q^tau_{(g,n,a)}(r)`.
pub fn q_tau_product(kt: &KleinTopType, tau: Tau, r: u32) -> Result<Product> {
    check_rank(kt, tau, r)?;
    let (g, n, r) = (kt.g as u64, kt.n as u64, r as u64);
    Ok(match (tau, n) {
        (Tau::Real, 0) | (Tau::Quaternionic, 0) => odd_factors(r, g + 1).times(&gauge_denominator(r, 2)),
        (Tau::Real, _) => {
            let mut p = odd_factors(r, g + 1 - n);
            for j in 1..r {
                p = p.one_plus(j, n);
            }
            for j in 1..=r {
                p = p.one_plus(j, n);
            }
            p.times(&gauge_denominator(r, 2))
        }
        (Tau::Quaternionic, _) => odd_factors(r, g).times(&gauge_denominator(r / 2, 4)),
    })
}

/// The holonomy-space series `f^tau_{(g,n,a)}(r)`.
pub fn f_tau_product(kt: &KleinTopType, tau: Tau, r: u32) -> Result<Product> {
    check_rank(kt, tau, r)?;
    let (g, n, r) = (kt.g as u64, kt.n as u64, r as u64);
    let den = |s: u64, k: u64| (1..=k).fold(Product::default(), |p, j| p.over_one_minus(s * j, 1));
    Ok(match (tau, n) {
        (_, 0) => odd_factors(r, g + 1).times(&den(2, r)),
        (Tau::Real, _) => {
            let mut p = odd_factors(r, g + 1 - n);
            for j in 1..r {
                p = p.one_plus(j, n);
            }
            for j in 1..=r {
                p = p.one_plus(j, n);
            }
            p.times(&den(2, r))
        }
        (Tau::Quaternionic, _) => {
            let mut p = odd_factors(r, g);
            for j in 1..=r / 2 {
                p = p.one_plus(4 * j - 1, 1);
            }
            p.times(&den(4, r / 2))
        }
    })
}

fn check_rank(kt: &KleinTopType, tau: Tau, r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidBundle("rank must be positive".into()));
    }
    if tau == Tau::Quaternionic && kt.n > 0 && r % 2 != 0 {
        return Err(Error::InvalidBundle("quaternionic with n>0 requires even rank".into()));
    }
    Ok(())
}

pub fn q_complex(g: u32, r: u32) -> RationalFn {
    q_complex_product(g, r).to_rational_fn()
}

pub fn q_tau(kt: &KleinTopType, tau: Tau, r: u32) -> Result<RationalFn> {
    Ok(q_tau_product(kt, tau, r)?.to_rational_fn())
}

pub fn f_tau(kt: &KleinTopType, tau: Tau, r: u32) -> Result<RationalFn> {
    Ok(f_tau_product(kt, tau, r)?.to_rational_fn())
}

fn check_bundle(kt: &KleinTopType, tau: Tau, r: u32, d: i64) -> Result<()> {
    match degree_violation(kt, tau, r, d) {
        Some(reason) => Err(Error::InvalidBundle(reason.to_string())),
        None => Ok(()),
    }
}

/// The Harder–Narasimhan recursion `P = Q - sum t^{w d_mu} mult prod P_i`,
/// truncated at a fixed order and memoized on `(r, d)`.
struct HnRecursion {
    g: u32,
    order: usize,
    /// `t^{2 d_mu}` in the complex case, `t^{d_mu}` otherwise.
    codim_weight: u64,
    setting: Option<(KleinTopType, Tau)>,
    memo: HashMap<(u32, i64), ScaledSeries>,
    q_memo: HashMap<u32, ScaledSeries>,
}

impl HnRecursion {
    fn q(&mut self, r: u32) -> ScaledSeries {
        if let Some(q) = self.q_memo.get(&r) {
            return q.clone();
        }
        let product = match &self.setting {
            None => q_complex_product(self.g, r),
            Some((kt, tau)) => q_tau_product(kt, *tau, r).expect("blocks are admissible"),
        };
        let q = product.to_series(self.order);
        self.q_memo.insert(r, q.clone());
        q
    }

    fn solve(&mut self, r: u32, d: i64) -> ScaledSeries {
        if let Some(p) = self.memo.get(&(r, d)) {
            return p.clone();
        }
        let mut acc = self.q(r);
        let bound = self.order as u64 / self.codim_weight;
        for mu in enumerate_hn_types(r, d, self.g, bound) {
            if mu.is_semistable() {
                continue;
            }
            let mult = match &self.setting {
                None => BigInt::one(),
                Some((kt, tau)) => {
                    if !tau_admissible(&mu, kt, *tau) {
                        continue;
                    }
                    real_multiplicity(&mu, kt, *tau)
                }
            };
            let shift = (self.codim_weight * codim_dmu(&mu, self.g)) as usize;
            let mut prod = ScaledSeries::one(1, self.order - shift);
            for &(ri, di) in mu.blocks() {
                let p = self.solve(ri, di).truncate(self.order - shift);
                prod = series_mul(&prod, &p).expect("scale 1");
            }
            let term = ScaledSeries::from_t_coeffs(prod.coeffs(), self.order)
                .shift_t(shift)
                .scale_by(&BigRat::from_integer(mult));
            acc = acc.sub(&term).expect("scale 1");
        }
        self.memo.insert((r, d), acc.clone());
        acc
    }
}

/// `P_g(r, d)` to order `order` by the Atiyah–Bott recursion.
pub fn p_complex_recursive(g: u32, r: u32, d: i64, order: usize) -> Result<ScaledSeries> {
    check_genus(g)?;
    if r == 0 {
        return Err(Error::InvalidBundle("rank must be positive".into()));
    }
    let mut rec =
        HnRecursion { g, order, codim_weight: 2, setting: None, memo: HashMap::new(), q_memo: HashMap::new() };
    Ok(rec.solve(r, d))
}

/// `P^tau_{(g,n,a)}(r, d)` to order `order` by the recursion over real or
/// quaternionic HN types.
pub fn p_tau_recursive(kt: &KleinTopType, tau: Tau, r: u32, d: i64, order: usize) -> Result<ScaledSeries> {
    check_bundle(kt, tau, r, d)?;
    let mut rec = HnRecursion {
        g: kt.g,
        order,
        codim_weight: 1,
        setting: Some((*kt, tau)),
        memo: HashMap::new(),
        q_memo: HashMap::new(),
    };
    Ok(rec.solve(r, d))
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidKlein { g, n: 0, a: 1, reason: "genus must be at least 2" });
    }
    Ok(())
}

/// Data of one instance of the closed formula
///
/// ```text
///   sum_{r_1+..+r_l = r} (-1)^{l-1} w^{l-1} x^{M(r_.; lambda)} t^{c sum_{i<j} r_i r_j}
///       / prod (1 - x^{r_i + r_{i+1}}) * prod Q(r_i),   x = t^s
/// ```
struct Zagier<'a> {
    rank: u32,
    s: u64,
    lambda: BigRat,
    pair_exponent: u64,
    weight: BigInt,
    block: &'a (dyn Fn(u32) -> Product + Sync),
}

impl Zagier<'_> {
    fn sum(&self) -> Result<RationalFn> {
        let mut sum = FactoredSum::new(self.rank);
        let s = BigRat::from_integer(BigInt::from(self.s));
        for comp in compositions(self.rank) {
            let l = comp.len();
            let sign = if l % 2 == 1 { 1 } else { -1 };
            let coeff = BigInt::from(sign) * num_traits::pow(self.weight.clone(), l - 1);
            let exponent = &s * zagier_exponent_m(&comp, &self.lambda)
                + BigRat::from_integer(BigInt::from(self.pair_exponent * pair_sum(&comp)));
            let mut term = FactoredTerm::new(coeff).t_pow(exponent);
            for w in comp.windows(2) {
                term = term.over_one_minus(self.s * (w[0] + w[1]) as u64, 1);
            }
            for &ri in &comp {
                term = (self.block)(ri).apply(term);
            }
            sum.push(term);
        }
        sum.to_rational_fn()
    }
}

/// `P_g(r, d)` by the closed formula.
pub fn p_complex_zagier(g: u32, r: u32, d: i64) -> Result<RationalFn> {
    check_genus(g)?;
    if r == 0 {
        return Err(Error::InvalidBundle("rank must be positive".into()));
    }
    let block = move |ri: u32| q_complex_product(g, ri);
    Zagier {
        rank: r,
        s: 2,
        lambda: ratio(d, r as i64),
        pair_exponent: 2 * (g as u64 - 1),
        weight: BigInt::one(),
        block: &block,
    }
    .sum()
}

/// Which of the five closed formulas applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedCase {
    /// real, `n = 0`, degree `2d`
    RealNoPoints,
    /// quaternionic, `n = 0`, odd genus, degree `2d`
    QuatNoPointsOddGenus,
    /// quaternionic, `n = 0`, even genus, degree `2d + r`
    QuatNoPointsEvenGenus,
    /// real, `n > 0`
    RealWithPoints,
    /// quaternionic, `n > 0`, rank `2r` and degree `2d`
    QuatWithPoints,
}

impl ClosedCase {
    pub fn of(kt: &KleinTopType, tau: Tau) -> Self {
        match (tau, kt.n, kt.g % 2) {
            (Tau::Real, 0, _) => ClosedCase::RealNoPoints,
            (Tau::Quaternionic, 0, 1) => ClosedCase::QuatNoPointsOddGenus,
            (Tau::Quaternionic, 0, _) => ClosedCase::QuatNoPointsEvenGenus,
            (Tau::Real, _, _) => ClosedCase::RealWithPoints,
            (Tau::Quaternionic, _, _) => ClosedCase::QuatWithPoints,
        }
    }
}

impl fmt::Display for ClosedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedCase::RealNoPoints => "real-n0",
            ClosedCase::QuatNoPointsOddGenus => "quat-n0-odd-genus",
            ClosedCase::QuatNoPointsEvenGenus => "quat-n0-even-genus",
            ClosedCase::RealWithPoints => "real-n>0",
            ClosedCase::QuatWithPoints => "quat-n>0",
        })
    }
}

/// `P^tau_{(g,n,a)}(r, d)` by the closed formula for its case.
pub fn p_tau_closed(kt: &KleinTopType, tau: Tau, r: u32, d: i64) -> Result<RationalFn> {
    check_bundle(kt, tau, r, d)?;
    let g = kt.g as u64;
    let kt = *kt;
    let real = move |ri: u32| q_tau_product(&kt, Tau::Real, ri).expect("real blocks always exist");
    let quat = move |ri: u32| q_tau_product(&kt, Tau::Quaternionic, 2 * ri).expect("even rank");
    let half = |x: i64| {
        debug_assert_eq!(x.rem_euclid(2), 0);
        x.div_euclid(2)
    };
    let z = match ClosedCase::of(&kt, tau) {
        ClosedCase::RealNoPoints | ClosedCase::QuatNoPointsOddGenus => Zagier {
            rank: r,
            s: 2,
            lambda: ratio(half(d), r as i64),
            pair_exponent: g - 1,
            weight: BigInt::one(),
            block: &real,
        },
        ClosedCase::QuatNoPointsEvenGenus => Zagier {
            rank: r,
            s: 2,
            lambda: ratio(half(d - r as i64), r as i64),
            pair_exponent: g - 1,
            weight: BigInt::one(),
            block: &real,
        },
        ClosedCase::RealWithPoints => Zagier {
            rank: r,
            s: 1,
            lambda: ratio(d, r as i64),
            pair_exponent: g - 1,
            weight: BigInt::one() << (kt.n - 1),
            block: &real,
        },
        ClosedCase::QuatWithPoints => Zagier {
            rank: r / 2,
            s: 4,
            lambda: ratio(half(d), r as i64 / 2),
            pair_exponent: 4 * (g - 1),
            weight: BigInt::one(),
            block: &quat,
        },
    };
    z.sum()
}

/// `(1 - t) P^tau(r, d)` for coprime `(r, d)`: a polynomial of degree
/// `r^2 (g-1) + 1`.
pub fn moduli_poincare(kt: &KleinTopType, tau: Tau, r: u32, d: i64) -> Result<Poly> {
    if !coprime(r, d) {
        return Err(Error::NotCoprime { r, d });
    }
    let p = p_tau_closed(kt, tau, r, d)?;
    let f = rf_mul(&p, &RationalFn::from_poly(Poly::from_ints(&[1, -1], 1)))?;
    let expected = (r as usize).pow(2) * (kt.g as usize - 1) + 1;
    match rf_is_polynomial(&f) {
        Some(poly) if poly.degree() == Some(expected) => Ok(poly),
        _ => Err(Error::NotPolynomial { expected, got: f.to_string() }),
    }
}

/// `(1 - t^2) P_g(r, d)` for coprime `(r, d)`: the Poincaré polynomial of the
/// complex moduli space, of degree `2 (r^2 (g-1) + 1)`.
pub fn complex_moduli_poincare(g: u32, r: u32, d: i64) -> Result<Poly> {
    if !coprime(r, d) {
        return Err(Error::NotCoprime { r, d });
    }
    let p = p_complex_zagier(g, r, d)?;
    let f = rf_mul(&p, &RationalFn::from_poly(Poly::from_ints(&[1, 0, -1], 1)))?;
    let expected = 2 * ((r as usize).pow(2) * (g as usize - 1) + 1);
    match rf_is_polynomial(&f) {
        Some(poly) if poly.degree() == Some(expected) => Ok(poly),
        _ => Err(Error::NotPolynomial { expected, got: f.to_string() }),
    }
}

/// Mod 2 Poincaré polynomial of the fixed-determinant moduli space of rank 2,
/// degree 1 real bundles on a maximal curve:
/// `(1+t)^{g-1} ((1+t^2)^g - (2t)^g) / (1-t)^2`.
pub fn fixed_determinant_poincare(g: u32) -> Result<Poly> {
    check_genus(g)?;
    let one_plus_t = Poly::from_ints(&[1, 1], 1);
    let bracket = &Poly::from_ints(&[1, 0, 1], 1).pow(g) - &Poly::from_ints(&[0, 2], 1).pow(g);
    let num = &one_plus_t.pow(g - 1) * &bracket;
    let f = RationalFn::new(num, Poly::from_ints(&[1, -1], 1).pow(2))?;
    let expected = 3 * (g as usize - 1);
    rf_is_polynomial(&f).ok_or_else(|| Error::NotPolynomial { expected, got: f.to_string() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Complex,
    Real,
    Quat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recursion,
    Closed,
    Product,
}

/// One series computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRequest {
    pub case: Case,
    pub g: u32,
    pub n: u32,
    pub a: u8,
    pub r: u32,
    pub d: i64,
    pub order: usize,
    pub method: Method,
}

pub enum SeriesOutput {
    Series(ScaledSeries),
    Rational { f: RationalFn, expansion: ScaledSeries },
}

impl SeriesOutput {
    pub fn expansion(&self) -> &ScaledSeries {
        match self {
            SeriesOutput::Series(s) => s,
            SeriesOutput::Rational { expansion, .. } => expansion,
        }
    }
}

impl SeriesRequest {
    /// The surface type and kind of lift, checked; `None` in the complex case.
    pub fn setting(&self) -> Result<Option<(KleinTopType, Tau)>> {
        if self.order < 1 {
            return Err(Error::Unsupported("order must be at least 1".into()));
        }
        if self.r == 0 {
            return Err(Error::InvalidBundle("rank must be positive".into()));
        }
        let tau = match self.case {
            Case::Complex => {
                check_genus(self.g)?;
                return Ok(None);
            }
            Case::Real => Tau::Real,
            Case::Quat => Tau::Quaternionic,
        };
        let kt = KleinTopType::new(self.g, self.n, self.a)?;
        check_bundle(&kt, tau, self.r, self.d)?;
        Ok(Some((kt, tau)))
    }

    pub fn run(&self) -> Result<SeriesOutput> {
        let setting = self.setting()?;
        let rational = |f: RationalFn| -> Result<SeriesOutput> {
            let expansion = rf_to_series(&f, self.order)?;
            Ok(SeriesOutput::Rational { f, expansion })
        };
        match (self.method, setting) {
            (Method::Recursion, None) => {
                Ok(SeriesOutput::Series(p_complex_recursive(self.g, self.r, self.d, self.order)?))
            }
            (Method::Recursion, Some((kt, tau))) => {
                Ok(SeriesOutput::Series(p_tau_recursive(&kt, tau, self.r, self.d, self.order)?))
            }
            (Method::Closed, None) => rational(p_complex_zagier(self.g, self.r, self.d)?),
            (Method::Closed, Some((kt, tau))) => rational(p_tau_closed(&kt, tau, self.r, self.d)?),
            (Method::Product, None) => rational(q_complex(self.g, self.r)),
            (Method::Product, Some((kt, tau))) => rational(q_tau(&kt, tau, self.r)?),
        }
    }
}

/// Whether all coefficients up to the truncation are non-negative integers.
pub fn has_betti_coefficients(s: &ScaledSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_integer() && !(c < &BigRat::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;
    use crate::rational_fn::{duality_check, rf_div};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c, 1)
    }

    fn kt(g: u32, n: u32, a: u8) -> KleinTopType {
        KleinTopType::new(g, n, a).unwrap()
    }

    fn rank_one(e: u32) -> RationalFn {
        RationalFn::new(p(&[1, 1]).pow(e), p(&[1, 0, -1])).unwrap()
    }

    fn ints(s: &ScaledSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn q_complex_examples() {
        for g in 2..=4 {
            assert_eq!(q_complex(g, 1), rank_one(2 * g));
        }
        let s = rf_to_series(&q_complex(2, 1), 3).unwrap();
        assert_eq!(ints(&s), [1, 4, 7, 8]);
        // (1 - t^2) (1 - t^2)(1 - t^4): degree 8 before cancellation
        let prod = q_complex_product(2, 2);
        let den_degree: u64 = prod.minus.iter().map(|(k, m)| k * m).sum();
        assert_eq!(den_degree, 8);
    }

    #[test]
    fn q_tau_examples() {
        for g in 2..=4 {
            for k in KleinTopType::all_of_genus(g) {
                assert_eq!(q_tau(&k, Tau::Real, 1).unwrap(), rank_one(g + 1));
            }
            let k0 = kt(g, 0, 1);
            for r in 1..=4 {
                assert_eq!(q_tau(&k0, Tau::Quaternionic, r).unwrap(), q_tau(&k0, Tau::Real, r).unwrap());
            }
        }
        let expected = RationalFn::new(&p(&[1, 1]).pow(3) * &p(&[1, 0, 0, 1]).pow(3), p(&[1, 0, 0, 0, -1])).unwrap();
        assert_eq!(q_tau(&kt(3, 2, 0), Tau::Quaternionic, 2).unwrap(), expected);
        assert!(q_tau(&kt(3, 2, 0), Tau::Quaternionic, 3).is_err());
    }

    #[test]
    fn f_tau_examples() {
        let k0 = kt(3, 0, 1);
        let expected =
            RationalFn::new(&p(&[1, 1]).pow(4) * &p(&[1, 0, 0, 1]).pow(4), &p(&[1, 0, -1]) * &p(&[1, 0, 0, 0, -1]))
                .unwrap();
        assert_eq!(f_tau(&k0, Tau::Real, 2).unwrap(), expected);
        assert_eq!(f_tau(&k0, Tau::Quaternionic, 2).unwrap(), expected);
        for k in KleinTopType::all_of_genus(3).into_iter().filter(|k| k.n > 0) {
            assert_eq!(f_tau(&k, Tau::Real, 1).unwrap(), rank_one(4));
        }
    }

    #[test]
    fn q_equals_f_over_gauge_factor() {
        for g in 2..=4 {
            for k in KleinTopType::all_of_genus(g) {
                for r in 1..=4u32 {
                    let extra = (1..r as usize).fold(Poly::one(1), |acc, i| &acc * &Poly::binomial(2 * i, -1, 1));
                    let f = f_tau(&k, Tau::Real, r).unwrap();
                    let lhs = rf_div(&f, &RationalFn::from_poly(extra)).unwrap();
                    assert_eq!(lhs, q_tau(&k, Tau::Real, r).unwrap(), "{k} r={r}");
                }
            }
        }
    }

    #[test]
    fn product_series_matches_rational_expansion() {
        let prod = q_tau_product(&kt(3, 2, 0), Tau::Real, 3).unwrap();
        let a = prod.to_series(25);
        let b = rf_to_series(&prod.to_rational_fn(), 25).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rank_one_recursion_and_closed() {
        for g in 2..=3 {
            let want = rf_to_series(&rank_one(2 * g), 12).unwrap();
            assert_eq!(p_complex_recursive(g, 1, 3, 12).unwrap(), want);
            assert_eq!(p_complex_zagier(g, 1, 3).unwrap(), rank_one(2 * g));
            for k in KleinTopType::all_of_genus(g) {
                for tau in [Tau::Real, Tau::Quaternionic] {
                    for d in -2..=2 {
                        if degree_violation(&k, tau, 1, d).is_some() {
                            continue;
                        }
                        assert_eq!(p_tau_closed(&k, tau, 1, d).unwrap(), rank_one(g + 1));
                        let want = rf_to_series(&rank_one(g + 1), 12).unwrap();
                        assert_eq!(p_tau_recursive(&k, tau, 1, d, 12).unwrap(), want);
                    }
                }
            }
        }
    }

    #[test]
    fn complex_rank_two_recursion_matches_closed() {
        for g in 2..=3 {
            for d in 0..2 {
                let closed = rf_to_series(&p_complex_zagier(g, 2, d).unwrap(), 20).unwrap();
                assert_eq!(p_complex_recursive(g, 2, d, 20).unwrap(), closed);
            }
        }
    }

    #[test]
    fn complex_degree_shift() {
        for r in 2..=3u32 {
            for d in 0..r as i64 {
                let a = p_complex_recursive(2, r, d, 16).unwrap();
                let b = p_complex_recursive(2, r, d + r as i64, 16).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn quaternionic_rank_two_with_points() {
        let k = kt(3, 2, 0);
        let want = RationalFn::new(&p(&[1, 1]).pow(3) * &p(&[1, 0, 0, 1]).pow(3), p(&[1, 0, 0, 0, -1])).unwrap();
        assert_eq!(p_tau_closed(&k, Tau::Quaternionic, 2, 0).unwrap(), want);
        let rec = p_tau_recursive(&k, Tau::Quaternionic, 2, 0, 20).unwrap();
        assert_eq!(rec, rf_to_series(&want, 20).unwrap());
    }

    #[test]
    fn moduli_examples() {
        let poly = moduli_poincare(&kt(2, 3, 0), Tau::Real, 2, 1).unwrap();
        assert_eq!(poly.degree(), Some(5));
        assert!(duality_check(&RationalFn::from_poly(poly.clone()), 5).unwrap());
        assert!(poly.coeffs().iter().all(|c| c.is_integer() && c >= &rat(0)));
        for g in 2..=3 {
            for k in KleinTopType::all_of_genus(g).into_iter().filter(|k| k.n > 0) {
                assert_eq!(moduli_poincare(&k, Tau::Real, 1, 0).unwrap(), p(&[1, 1]).pow(g));
            }
        }
        assert!(matches!(moduli_poincare(&kt(2, 3, 0), Tau::Real, 2, 2), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn fixed_determinant_examples() {
        assert_eq!(fixed_determinant_poincare(2).unwrap(), p(&[1, 1]).pow(3));
        let g3 = (0..=2u32).fold(Poly::zero(1), |acc, k| &acc + &(&p(&[1, 0, 1]).pow(2 - k) * &p(&[0, 2]).pow(k)));
        assert_eq!(fixed_determinant_poincare(3).unwrap(), &p(&[1, 1]).pow(2) * &g3);
        for g in 2..=6u32 {
            let value = fixed_determinant_poincare(g).unwrap().eval(&rat(1));
            assert_eq!(value, rat(g as i64 * (1 << (2 * g - 2))));
        }
    }

    #[test]
    fn request_routing() {
        let req =
            SeriesRequest { case: Case::Complex, g: 2, n: 0, a: 1, r: 1, d: 0, order: 3, method: Method::Recursion };
        assert_eq!(ints(req.run().unwrap().expansion()), [1, 4, 7, 8]);
        let bad = SeriesRequest { case: Case::Quat, g: 2, n: 2, a: 1, r: 3, d: 0, order: 3, method: Method::Closed };
        assert_eq!(bad.run().err().unwrap(), Error::InvalidBundle("quaternionic with n>0 requires even rank".into()));
    }
}
