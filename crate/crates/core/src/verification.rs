//! Theorem checks: table comparisons, duality, maximality and Betti totals.
//!
//! Every check produces a [`CheckReport`]. A computation error inside a
//! check is reported as a failure whose witness is the error message.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::appendix::{self, Transcription};
use crate::engine::{
    f_tau, fixed_determinant_poincare, moduli_poincare, p_complex_recursive, p_complex_zagier, p_tau_closed,
    p_tau_recursive, q_tau, ClosedCase,
};
use crate::error::{Error, Result};
use crate::hn::{coprime, degree_violation, KleinTopType, Tau};
use crate::kernel::{fmt_rat, BigRat, Poly};
use crate::rational_fn::{duality_check, limit_at_one, rf_div, rf_mul, rf_reciprocal, rf_to_series, RationalFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub inputs: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn pass(check_id: impl Into<String>, inputs: Value) -> Self {
        CheckReport { check_id: check_id.into(), inputs, verdict: Verdict::Pass, witness: None }
    }

    pub fn fail(check_id: impl Into<String>, inputs: Value, witness: impl Into<String>) -> Self {
        CheckReport { check_id: check_id.into(), inputs, verdict: Verdict::Fail, witness: Some(witness.into()) }
    }

    fn from_result(check_id: impl Into<String>, inputs: Value, outcome: Result<Option<String>>) -> Self {
        match outcome {
            Ok(None) => Self::pass(check_id, inputs),
            Ok(Some(witness)) => Self::fail(check_id, inputs, witness),
            Err(e) => Self::fail(check_id, inputs, format!("error: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{verdict} {}", self.check_id)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// `None` if equal, otherwise the cross-multiplication residue.
fn residue_witness(a: &RationalFn, b: &RationalFn) -> Result<Option<String>> {
    let residue = a.cross_residue(b)?;
    Ok((!residue.is_zero()).then(|| format!("cross residue {residue}")))
}

fn int_witness(label: &str, got: &BigRat, want: &BigRat) -> Option<String> {
    (got != want).then(|| format!("{label}: got {}, expected {}", fmt_rat(got), fmt_rat(want)))
}

fn kt_tag(kt: &KleinTopType) -> String {
    format!("g{}n{}a{}", kt.g, kt.n, kt.a)
}

fn kt_json(kt: &KleinTopType) -> Value {
    json!({ "g": kt.g, "n": kt.n, "a": kt.a })
}

fn one_minus_t() -> RationalFn {
    RationalFn::from_poly(Poly::from_ints(&[1, -1], 1))
}

/// Which printed table an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    /// `P_g(r, d)`.
    Complex { g: u32 },
    /// `P^{real}(r, 2d)` if `n = 0`, `P^{real}(r, d)` otherwise.
    Real(KleinTopType),
    /// `P^{quat}(r, 2d)` with `n > 0`, or the reduction to the real table if `n = 0`.
    Quat(KleinTopType),
}

/// Compares a table entry with the closed formula. `d` is the degree
/// parameter as it appears in the table heading.
pub fn check_appendix(table: Table, r: u32, d: i64) -> CheckReport {
    let (id, inputs) = match table {
        Table::Complex { g } => (format!("appendix/complex/g{g}/r{r}/d{d}"), json!({ "g": g, "r": r, "d": d })),
        Table::Real(kt) => {
            (format!("appendix/real/{}/r{r}/d{d}", kt_tag(&kt)), json!({ "kt": kt_json(&kt), "r": r, "d": d }))
        }
        Table::Quat(kt) => {
            (format!("appendix/quat/{}/r{r}/d{d}", kt_tag(&kt)), json!({ "kt": kt_json(&kt), "r": r, "d": d }))
        }
    };
    let outcome = (|| match table {
        Table::Complex { g } => residue_witness(&appendix::complex(r, g, d)?, &p_complex_zagier(g, r, d)?),
        Table::Real(kt) if kt.n == 0 => residue_witness(
            &appendix::real_without_points(r, kt.g, d, Transcription::Corrected)?,
            &p_tau_closed(&kt, Tau::Real, r, 2 * d)?,
        ),
        Table::Real(kt) => {
            residue_witness(&appendix::real_with_points(r, kt.g, kt.n, d)?, &p_tau_closed(&kt, Tau::Real, r, d)?)
        }
        Table::Quat(kt) if kt.n == 0 => {
            let shift = if kt.g % 2 == 0 { r as i64 } else { 0 };
            residue_witness(
                &appendix::real_without_points(r, kt.g, d, Transcription::Corrected)?,
                &p_tau_closed(&kt, Tau::Quaternionic, r, 2 * d + shift)?,
            )
        }
        Table::Quat(kt) => {
            if r % 2 != 0 {
                return Err(Error::InvalidBundle("quaternionic with n>0 requires even rank".into()));
            }
            residue_witness(
                &appendix::quaternionic_with_points(r / 2, kt.g, d)?,
                &p_tau_closed(&kt, Tau::Quaternionic, r, 2 * d)?,
            )
        }
    })();
    CheckReport::from_result(id, inputs, outcome)
}

/// The printed real `n = 0`, rank 4 entry: it must agree with the closed
/// formula except when `d = 2 (mod 4)`, where its fifth exponent is off.
pub fn check_appendix_misprint(g: u32, d: i64) -> CheckReport {
    let id = format!("appendix/misprint/g{g}/d{d}");
    let outcome = (|| {
        let kt = KleinTopType::new(g, 0, 1)?;
        let printed = appendix::real_without_points(4, g, d, Transcription::Printed)?;
        let agrees = printed == p_tau_closed(&kt, Tau::Real, 4, 2 * d)?;
        let expected = d.rem_euclid(4) != 2;
        Ok((agrees != expected).then(|| format!("printed entry agreement {agrees}, expected {expected}")))
    })();
    CheckReport::from_result(id, json!({ "g": g, "d": d }), outcome)
}

/// The parameter pair whose coprimality the duality statement assumes.
fn duality_hypothesis(kt: &KleinTopType, tau: Tau, r: u32, d: i64) -> Result<(u32, i64)> {
    if let Some(reason) = degree_violation(kt, tau, r, d) {
        return Err(Error::InvalidBundle(reason.into()));
    }
    let pair = match ClosedCase::of(kt, tau) {
        ClosedCase::RealWithPoints => (r, d),
        ClosedCase::QuatWithPoints => (r / 2, d / 2),
        ClosedCase::RealNoPoints | ClosedCase::QuatNoPointsOddGenus => (r, d / 2),
        ClosedCase::QuatNoPointsEvenGenus => (r, (d - r as i64) / 2),
    };
    if coprime(pair.0, pair.1) {
        Ok(pair)
    } else {
        Err(Error::NotCoprime { r: pair.0, d: pair.1 })
    }
}

/// `t^D P(1/t) = P` for `P = (1 - t) P^tau(r, d)` and `D = r^2 (g-1) + 1`.
/// Errors if the coprimality hypothesis of the case fails.
pub fn check_strange_duality(kt: &KleinTopType, tau: Tau, r: u32, d: i64) -> Result<CheckReport> {
    duality_hypothesis(kt, tau, r, d)?;
    let id = format!("duality/{tau}/{}/r{r}/d{d}", kt_tag(kt));
    let inputs = json!({ "kt": kt_json(kt), "tau": tau.to_string(), "r": r, "d": d });
    let dim = (r as i64).pow(2) * (kt.g as i64 - 1) + 1;
    let outcome = (|| {
        let p = rf_mul(&one_minus_t(), &p_tau_closed(kt, tau, r, d)?)?;
        Ok((!duality_check(&p, dim)?).then(|| format!("t^{dim} P(1/t) != P for P = {p}")))
    })();
    Ok(CheckReport::from_result(id, inputs, outcome))
}

/// Total mod 2 Betti number of the real locus of the coprime moduli space:
/// `2^{n-1}` components, each with `(1 - t) P^{real}(r, d)` at `t = 1`.
pub fn total_betti_real_moduli(kt: &KleinTopType, r: u32, d: i64) -> Result<BigRat> {
    if kt.n == 0 {
        return Err(Error::Unsupported("the real locus is empty when n = 0".into()));
    }
    let poly = moduli_poincare(kt, Tau::Real, r, d)?;
    let components = BigRat::from_integer(BigInt::one() << (kt.n - 1));
    Ok(components * poly.eval(&BigRat::one()))
}

/// `(2g - n + 1) 2^{2g + 2n - 4}`, the rank 2 total.
pub fn total_betti_real_rank_two(kt: &KleinTopType) -> BigInt {
    let (g, n) = (kt.g as i64, kt.n as i64);
    BigInt::from(2 * g - n + 1) << (2 * g + 2 * n - 4) as usize
}

/// Total Betti number of the complex moduli space: `(1 - t^2) P_g(r, d)` at `t = 1`.
pub fn total_betti_complex_moduli(g: u32, r: u32, d: i64) -> Result<BigRat> {
    if !coprime(r, d) {
        return Err(Error::NotCoprime { r, d });
    }
    let f = rf_mul(&RationalFn::from_poly(Poly::from_ints(&[1, 0, -1], 1)), &p_complex_zagier(g, r, d)?)?;
    limit_at_one(&f)
}

/// Complex total equals the real total on the maximal curve of genus `g`.
pub fn check_maximality(g: u32, r: u32, d: i64) -> CheckReport {
    let id = format!("maximality/g{g}/r{r}/d{d}");
    let outcome = (|| {
        let complex = total_betti_complex_moduli(g, r, d)?;
        let real = total_betti_real_moduli(&KleinTopType::maximal(g), r, d)?;
        Ok(int_witness("real total on the maximal curve", &real, &complex))
    })();
    CheckReport::from_result(id, json!({ "g": g, "r": r, "d": d }), outcome)
}

/// On a non-maximal curve the real total is strictly smaller.
pub fn check_non_maximal(kt: &KleinTopType, r: u32, d: i64) -> CheckReport {
    let id = format!("maximality/strict/{}/r{r}/d{d}", kt_tag(kt));
    let outcome = (|| {
        let complex = total_betti_complex_moduli(kt.g, r, d)?;
        let real = total_betti_real_moduli(kt, r, d)?;
        Ok((real >= complex)
            .then(|| format!("real total {} not below complex total {}", fmt_rat(&real), fmt_rat(&complex))))
    })();
    CheckReport::from_result(id, json!({ "kt": kt_json(kt), "r": r, "d": d }), outcome)
}

/// Closed values of the rank 2 totals: `g 2^{4g-2}` for the complex space and
/// `(2g - n + 1) 2^{2g + 2n - 4}` for each real locus.
pub fn check_rank_two_totals(kt: &KleinTopType) -> CheckReport {
    let id = format!("betti/rank2/{}", kt_tag(kt));
    let outcome = (|| {
        let g = kt.g as i64;
        let complex = total_betti_complex_moduli(kt.g, 2, 1)?;
        let want = BigRat::from_integer(BigInt::from(g) << (4 * g - 2) as usize);
        if let Some(w) = int_witness("complex total", &complex, &want) {
            return Ok(Some(w));
        }
        let real = total_betti_real_moduli(kt, 2, 1)?;
        Ok(int_witness("real total", &real, &BigRat::from_integer(total_betti_real_rank_two(kt))))
    })();
    CheckReport::from_result(id, json!({ "kt": kt_json(kt) }), outcome)
}

/// The fixed-determinant space on a maximal curve: `(1 + t)^3` at genus 2,
/// and `(1 - t)/(1 + t)^g P^{real}(2, 1)` with value `g 2^{2g-2}` at `t = 1`.
pub fn check_saveliev_wang(g: u32) -> CheckReport {
    let id = format!("saveliev-wang/g{g}");
    let outcome = (|| {
        let poly = fixed_determinant_poincare(g)?;
        if g == 2 && poly != Poly::from_ints(&[1, 3, 3, 1], 1) {
            return Ok(Some(format!("genus 2 polynomial is {poly}")));
        }
        let kt = KleinTopType::maximal(g);
        let scale = RationalFn::new(Poly::from_ints(&[1, -1], 1), Poly::from_ints(&[1, 1], 1).pow(g))?;
        let from_series = rf_mul(&scale, &p_tau_closed(&kt, Tau::Real, 2, 1)?)?;
        if let Some(w) = residue_witness(&RationalFn::from_poly(poly.clone()), &from_series)? {
            return Ok(Some(w));
        }
        let want = BigRat::from_integer(BigInt::from(g) << (2 * g as usize - 2));
        Ok(int_witness("value at t=1", &poly.eval(&BigRat::one()), &want))
    })();
    CheckReport::from_result(id, json!({ "g": g }), outcome)
}

/// Recursion and closed formula agree to `order`. `setting = None` is the
/// complex case.
pub fn check_differential(setting: Option<(KleinTopType, Tau)>, g: u32, r: u32, d: i64, order: usize) -> CheckReport {
    let (id, inputs) = match setting {
        None => (format!("differential/complex/g{g}/r{r}/d{d}"), json!({ "g": g, "r": r, "d": d, "order": order })),
        Some((kt, tau)) => (
            format!("differential/{tau}/{}/r{r}/d{d}", kt_tag(&kt)),
            json!({ "kt": kt_json(&kt), "tau": tau.to_string(), "r": r, "d": d, "order": order }),
        ),
    };
    let outcome = (|| {
        let (rec, closed) = match setting {
            None => (p_complex_recursive(g, r, d, order)?, p_complex_zagier(g, r, d)?),
            Some((kt, tau)) => (p_tau_recursive(&kt, tau, r, d, order)?, p_tau_closed(&kt, tau, r, d)?),
        };
        let closed = rf_to_series(&closed, order)?;
        Ok(rec.first_mismatch(&closed).map(|i| {
            format!("coefficient {i}: recursion {}, closed {}", fmt_rat(&rec.coeff(i)), fmt_rat(&closed.coeff(i)))
        }))
    })();
    CheckReport::from_result(id, inputs, outcome)
}

/// Both parts of the genus-parity coincidences:
/// (a) `P^{real}_{(2h-1,0,1)}(r, 2d) = P^{quat}_{(2h-1,0,1)}(r, 2d) = P_h(r, d)`,
/// (b) `P^{real}_{(2h,0,1)}(r, 2d) = P^{quat}_{(2h,0,1)}(r, 2d + r)`.
pub fn check_genus_parity(h: u32, r: u32, d: i64) -> CheckReport {
    let id = format!("parity/h{h}/r{r}/d{d}");
    let outcome = (|| {
        let odd = KleinTopType::new(2 * h - 1, 0, 1)?;
        let real = p_tau_closed(&odd, Tau::Real, r, 2 * d)?;
        for (label, other) in [
            ("odd genus quaternionic", p_tau_closed(&odd, Tau::Quaternionic, r, 2 * d)?),
            ("complex of half genus", p_complex_zagier(h, r, d)?),
        ] {
            if let Some(w) = residue_witness(&real, &other)? {
                return Ok(Some(format!("{label}: {w}")));
            }
        }
        let even = KleinTopType::new(2 * h, 0, 1)?;
        let real = p_tau_closed(&even, Tau::Real, r, 2 * d)?;
        let quat = p_tau_closed(&even, Tau::Quaternionic, r, 2 * d + r as i64)?;
        Ok(residue_witness(&real, &quat)?.map(|w| format!("even genus: {w}")))
    })();
    CheckReport::from_result(id, json!({ "h": h, "r": r, "d": d }), outcome)
}

/// The real gauge group series written out from its product formula:
/// `prod_{j<=r} (1+t^{2j-1})^{g-n+1} prod_{j<r} (1+t^j)^n prod_{j<=r} (1+t^j)^n`
/// over `prod_{j<r} (1-t^{2j}) prod_{j<=r} (1-t^{2j})`.
pub fn classifying_real_literal(g: u32, n: u32, r: u32) -> Result<RationalFn> {
    let mut num = Poly::one(1);
    let mut den = Poly::one(1);
    for j in 1..=r as usize {
        num = &num * &Poly::binomial(2 * j - 1, 1, 1).pow(g + 1 - n);
        num = &num * &Poly::binomial(j, 1, 1).pow(n);
        den = &den * &Poly::binomial(2 * j, -1, 1);
        if j < r as usize {
            num = &num * &Poly::binomial(j, 1, 1).pow(n);
            den = &den * &Poly::binomial(2 * j, -1, 1);
        }
    }
    RationalFn::new(num, den)
}

/// `Q^{real} = f^{real} / prod_{i<r} (1 - t^{2i})`, with `Q` taken from the
/// literal product formula.
pub fn check_q_from_f(kt: &KleinTopType, r: u32) -> CheckReport {
    let id = format!("structure/qf/{}/r{r}", kt_tag(kt));
    let outcome = (|| {
        let den = (1..r as usize).fold(Poly::one(1), |acc, i| &acc * &Poly::binomial(2 * i, -1, 1));
        let from_f = rf_div(&f_tau(kt, Tau::Real, r)?, &RationalFn::from_poly(den))?;
        let literal = classifying_real_literal(kt.g, kt.n, r)?;
        if let Some(w) = residue_witness(&literal, &from_f)? {
            return Ok(Some(format!("f relation: {w}")));
        }
        Ok(residue_witness(&literal, &q_tau(kt, Tau::Real, r)?)?.map(|w| format!("engine product: {w}")))
    })();
    CheckReport::from_result(id, json!({ "kt": kt_json(kt), "r": r }), outcome)
}

/// `t^{r^2 (g-1)} Q(1/t) = -Q(t)`.
pub fn check_q_reciprocal(kt: &KleinTopType, tau: Tau, r: u32) -> CheckReport {
    let id = format!("structure/q-reciprocal/{tau}/{}/r{r}", kt_tag(kt));
    let outcome = (|| {
        let q = q_tau(kt, tau, r)?;
        let (rev, e) = rf_reciprocal(&q)?;
        let lhs = rev.mul_power(e + (r as i64).pow(2) * (kt.g as i64 - 1));
        residue_witness(&lhs, &q.neg())
    })();
    CheckReport::from_result(id, json!({ "kt": kt_json(kt), "tau": tau.to_string(), "r": r }), outcome)
}

/// Without real points the quaternionic gauge group has the real series.
pub fn check_classifying_coincidence(g: u32, r: u32) -> CheckReport {
    let id = format!("structure/q-coincide/g{g}/r{r}");
    let outcome = (|| {
        let kt = KleinTopType::new(g, 0, 1)?;
        residue_witness(&q_tau(&kt, Tau::Quaternionic, r)?, &classifying_real_literal(g, 0, r)?)
    })();
    CheckReport::from_result(id, json!({ "g": g, "r": r }), outcome)
}

/// Rank one in every case: `(1 + t)^{g+1} / (1 - t^2)`.
pub fn check_rank_one(kt: &KleinTopType, tau: Tau, d: i64) -> CheckReport {
    let id = format!("rank-one/{tau}/{}/d{d}", kt_tag(kt));
    let outcome = (|| {
        let want = RationalFn::new(Poly::from_ints(&[1, 1], 1).pow(kt.g + 1), Poly::from_ints(&[1, 0, -1], 1))?;
        residue_witness(&p_tau_closed(kt, tau, 1, d)?, &want)
    })();
    CheckReport::from_result(id, json!({ "kt": kt_json(kt), "tau": tau.to_string(), "d": d }), outcome)
}

/// For coprime `(r, d)` and `n > 0`, `(1 - t) P^{real}` is a polynomial of
/// degree `r^2 (g-1) + 1` with non-negative integer coefficients and
/// palindromic.
pub fn check_coprime_polynomial(kt: &KleinTopType, r: u32, d: i64) -> CheckReport {
    let id = format!("polynomial/{}/r{r}/d{d}", kt_tag(kt));
    let outcome = (|| {
        let poly = moduli_poincare(kt, Tau::Real, r, d)?;
        if let Some((i, c)) = poly.coeffs().iter().enumerate().find(|(_, c)| !c.is_integer() || c < &&BigRat::zero()) {
            return Ok(Some(format!("coefficient of t^{i} is {}", fmt_rat(c))));
        }
        Ok((poly.reversed() != poly).then(|| format!("not palindromic: {poly}")))
    })();
    CheckReport::from_result(id, json!({ "kt": kt_json(kt), "r": r, "d": d }), outcome)
}

/// A named check, run lazily.
pub struct Check {
    pub id: String,
    run: Box<dyn Fn() -> CheckReport + Send + Sync>,
}

impl Check {
    fn new(id: String, run: impl Fn() -> CheckReport + Send + Sync + 'static) -> Self {
        Check { id, run: Box::new(run) }
    }

    pub fn run(&self) -> CheckReport {
        (self.run)()
    }
}

fn valid_degrees(kt: &KleinTopType, tau: Tau, r: u32, range: std::ops::Range<i64>) -> Vec<i64> {
    range.filter(|&d| degree_violation(kt, tau, r, d).is_none()).collect()
}

/// The shipped suite. Ids are unique; filtering by substring on the id
/// selects a subset before anything runs.
pub fn default_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut add = |c: Check| checks.push(c);

    for g in 2..=4u32 {
        for r in 1..=4u32 {
            for d in 0..r as i64 {
                add(Check::new(format!("appendix/complex/g{g}/r{r}/d{d}"), move || {
                    check_appendix(Table::Complex { g }, r, d)
                }));
            }
        }
        for kt in KleinTopType::all_of_genus(g) {
            for r in 1..=4u32 {
                let ds = if kt.n == 0 { 0..r as i64 } else { 0..2 * r as i64 };
                for d in ds.clone() {
                    add(Check::new(format!("appendix/real/{}/r{r}/d{d}", kt_tag(&kt)), move || {
                        check_appendix(Table::Real(kt), r, d)
                    }));
                }
                if kt.n == 0 || r % 2 == 0 {
                    for d in ds {
                        add(Check::new(format!("appendix/quat/{}/r{r}/d{d}", kt_tag(&kt)), move || {
                            check_appendix(Table::Quat(kt), r, d)
                        }));
                    }
                }
            }
        }
        for d in 0..4 {
            add(Check::new(format!("appendix/misprint/g{g}/d{d}"), move || check_appendix_misprint(g, d)));
        }
    }

    for g in 2..=5u32 {
        for r in 1..=4u32 {
            for d in 0..r as i64 {
                add(Check::new(format!("differential/complex/g{g}/r{r}/d{d}"), move || {
                    check_differential(None, g, r, d, 30)
                }));
            }
        }
        for kt in KleinTopType::all_of_genus(g) {
            for tau in [Tau::Real, Tau::Quaternionic] {
                for r in 1..=4u32 {
                    for d in valid_degrees(&kt, tau, r, 0..2 * r as i64) {
                        add(Check::new(format!("differential/{tau}/{}/r{r}/d{d}", kt_tag(&kt)), move || {
                            check_differential(Some((kt, tau)), g, r, d, 30)
                        }));
                        if r == 1 {
                            add(Check::new(format!("rank-one/{tau}/{}/d{d}", kt_tag(&kt)), move || {
                                check_rank_one(&kt, tau, d)
                            }));
                        }
                    }
                }
            }
        }
    }

    for h in 2..=3u32 {
        for r in 1..=4u32 {
            for d in 0..r as i64 {
                add(Check::new(format!("parity/h{h}/r{r}/d{d}"), move || check_genus_parity(h, r, d)));
            }
        }
    }

    for g in 2..=4u32 {
        for kt in KleinTopType::all_of_genus(g) {
            for tau in [Tau::Real, Tau::Quaternionic] {
                for r in 1..=4u32 {
                    for d in valid_degrees(&kt, tau, r, 0..4 * r as i64) {
                        if duality_hypothesis(&kt, tau, r, d).is_err() {
                            continue;
                        }
                        add(Check::new(format!("duality/{tau}/{}/r{r}/d{d}", kt_tag(&kt)), move || {
                            check_strange_duality(&kt, tau, r, d).expect("hypothesis checked")
                        }));
                    }
                    if tau == Tau::Quaternionic && kt.n > 0 && r % 2 != 0 {
                        continue;
                    }
                    add(Check::new(format!("structure/q-reciprocal/{tau}/{}/r{r}", kt_tag(&kt)), move || {
                        check_q_reciprocal(&kt, tau, r)
                    }));
                }
            }
            for r in 1..=4u32 {
                add(Check::new(format!("structure/qf/{}/r{r}", kt_tag(&kt)), move || check_q_from_f(&kt, r)));
            }
        }
        for r in 1..=4u32 {
            add(Check::new(format!("structure/q-coincide/g{g}/r{r}"), move || check_classifying_coincidence(g, r)));
        }
    }

    for g in 2..=3u32 {
        for kt in KleinTopType::all_of_genus(g).into_iter().filter(|kt| kt.n > 0) {
            for r in 2..=3u32 {
                for d in (1..r as i64).filter(|&d| coprime(r, d)) {
                    add(Check::new(format!("polynomial/{}/r{r}/d{d}", kt_tag(&kt)), move || {
                        check_coprime_polynomial(&kt, r, d)
                    }));
                }
            }
        }
    }

    for g in 2..=5u32 {
        for r in 2..=6u32 {
            for d in (1..r as i64).filter(|&d| coprime(r, d)) {
                add(Check::new(format!("maximality/g{g}/r{r}/d{d}"), move || check_maximality(g, r, d)));
            }
        }
        for kt in KleinTopType::all_of_genus(g).into_iter().filter(|kt| kt.n > 0) {
            add(Check::new(format!("betti/rank2/{}", kt_tag(&kt)), move || check_rank_two_totals(&kt)));
            if kt.n < g + 1 {
                add(Check::new(format!("maximality/strict/{}/r2/d1", kt_tag(&kt)), move || {
                    check_non_maximal(&kt, 2, 1)
                }));
            }
        }
    }
    for g in 2..=6u32 {
        add(Check::new(format!("saveliev-wang/g{g}"), move || check_saveliev_wang(g)));
    }
    checks
}

/// Runs the checks whose id contains `filter` (all if `None`), in parallel,
/// and returns the reports sorted by id.
pub fn run_suite(filter: Option<&str>) -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> =
        default_suite().into_par_iter().filter(|c| filter.is_none_or(|f| c.id.contains(f))).map(|c| c.run()).collect();
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    reports
}
