//! Topological types, Harder–Narasimhan types and their combinatorics.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::BigRat;

/// Topological type `(g, n, a)` of a Klein surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KleinTopType {
    pub g: u32,
    pub n: u32,
    pub a: u8,
}

impl KleinTopType {
    pub fn new(g: u32, n: u32, a: u8) -> Result<Self> {
        match klein_violation(g, n, a) {
            None => Ok(KleinTopType { g, n, a }),
            Some(reason) => Err(Error::InvalidKlein { g, n, a, reason }),
        }
    }

    /// The maximal type `(g, g+1, 0)`.
    pub fn maximal(g: u32) -> Self {
        KleinTopType { g, n: g + 1, a: 0 }
    }

    /// Every valid type of genus `g`, ordered by `(n, a)`.
    pub fn all_of_genus(g: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 0..=g + 1 {
            for a in 0..=1 {
                if validate_klein(g, n, a) {
                    out.push(KleinTopType { g, n, a });
                }
            }
        }
        out
    }
}

impl fmt::Display for KleinTopType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.g, self.n, self.a)
    }
}

/// The first classification constraint violated by `(g, n, a)`, if any.
pub fn klein_violation(g: u32, n: u32, a: u8) -> Option<&'static str> {
    if g < 2 {
        Some("genus must be at least 2")
    } else if a > 1 {
        Some("orientability index a must be 0 or 1")
    } else if n > g + 1 {
        Some("Harnack bound n <= g+1 violated")
    } else if n == 0 && a != 1 {
        Some("n=0 requires a=1")
    } else if n == g + 1 && a != 0 {
        Some("n=g+1 requires a=0")
    } else if a == 0 && n % 2 != (g + 1) % 2 {
        Some("a=0 requires n = g+1 (mod 2)")
    } else {
        None
    }
}

pub fn validate_klein(g: u32, n: u32, a: u8) -> bool {
    klein_violation(g, n, a).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tau {
    Real,
    Quaternionic,
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tau::Real => "real",
            Tau::Quaternionic => "quat",
        })
    }
}

/// Rank, degree, kind of lift, and (real bundles on curves with real
/// points) the Stiefel–Whitney class on each real component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleType {
    pub r: u32,
    pub d: i64,
    pub tau: Tau,
    pub w: Option<Vec<u8>>,
}

impl BundleType {
    pub fn new(r: u32, d: i64, tau: Tau) -> Self {
        BundleType { r, d, tau, w: None }
    }

    pub fn with_w(mut self, w: Vec<u8>) -> Self {
        self.w = Some(w);
        self
    }
}

/// Whether some bundle of rank `r` and degree `d` of kind `tau` exists on
/// a surface of type `kt`. Stiefel–Whitney data is not consulted. Returns
/// the violated constraint otherwise.
pub fn degree_violation(kt: &KleinTopType, tau: Tau, r: u32, d: i64) -> Option<&'static str> {
    if r == 0 {
        return Some("rank must be positive");
    }
    match tau {
        Tau::Real if kt.n == 0 && d.rem_euclid(2) != 0 => Some("real n=0 requires even degree"),
        Tau::Real => None,
        Tau::Quaternionic if kt.n > 0 && r % 2 != 0 => Some("quaternionic with n>0 requires even rank"),
        Tau::Quaternionic if (d + r as i64 * (kt.g as i64 - 1)).rem_euclid(2) != 0 => {
            Some("quaternionic requires d + r(g-1) even")
        }
        Tau::Quaternionic => None,
    }
}

/// Why `bt` is not a valid bundle type on `kt`, if it is not.
pub fn bundle_violation(kt: &KleinTopType, bt: &BundleType) -> Option<String> {
    if let Some(v) = degree_violation(kt, bt.tau, bt.r, bt.d) {
        return Some(v.to_string());
    }
    match (bt.tau, kt.n, &bt.w) {
        (Tau::Real, 0, Some(w)) if !w.is_empty() => Some("real n=0 admits no Stiefel-Whitney vector".into()),
        (Tau::Real, n, None) if n > 0 => Some("real n>0 requires a Stiefel-Whitney vector".into()),
        (Tau::Real, n, Some(w)) if n > 0 => {
            if w.len() != n as usize {
                Some(format!("Stiefel-Whitney vector must have length n={n}"))
            } else if w.iter().any(|&x| x > 1) {
                Some("Stiefel-Whitney classes must be 0 or 1".into())
            } else if (w.iter().map(|&x| x as i64).sum::<i64>() - bt.d).rem_euclid(2) != 0 {
                Some("Stiefel-Whitney classes must sum to d (mod 2)".into())
            } else {
                None
            }
        }
        (Tau::Quaternionic, _, Some(_)) => Some("quaternionic bundles carry no Stiefel-Whitney vector".into()),
        _ => None,
    }
}

pub fn validate_bundle(kt: &KleinTopType, bt: &BundleType) -> bool {
    bundle_violation(kt, bt).is_none()
}

/// Number of real topological types (Stiefel–Whitney vectors) and of
/// quaternionic types of rank `r` and degree `d`.
pub fn count_bundle_types(kt: &KleinTopType, r: u32, d: i64) -> (u64, u64) {
    let real = if degree_violation(kt, Tau::Real, r, d).is_some() {
        0
    } else if kt.n == 0 {
        1
    } else {
        1u64 << (kt.n - 1)
    };
    let quat = u64::from(degree_violation(kt, Tau::Quaternionic, r, d).is_none());
    (real, quat)
}

/// `<x>`: the unique value in `(0, 1]` with `x + <x>` an integer.
pub fn frac_bracket(x: &BigRat) -> BigRat {
    BigRat::one() + BigRat::from_integer(x.floor().to_integer()) - x
}

/// `M(r_1..r_l; lambda) = sum_{i<l} (r_i + r_{i+1}) <(r_1+..+r_i) lambda>`.
pub fn zagier_exponent_m(comp: &[u32], lambda: &BigRat) -> BigRat {
    let mut acc = BigRat::zero();
    let mut partial = 0u64;
    for w in comp.windows(2) {
        partial += w[0] as u64;
        let x = lambda * BigRat::from_integer(BigInt::from(partial));
        acc += frac_bracket(&x) * BigRat::from_integer(BigInt::from(w[0] + w[1]));
    }
    acc
}

/// All ordered compositions of `r`, lexicographically.
pub fn compositions(r: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=left {
            cur.push(first);
            go(left - first, cur, out);
            cur.pop();
        }
    }
    assert!(r >= 1, "compositions of a non-positive integer");
    let mut out = Vec::new();
    go(r, &mut Vec::new(), &mut out);
    out
}

/// `sum_{i<j} r_i r_j`.
pub fn pair_sum(comp: &[u32]) -> u64 {
    let total: u64 = comp.iter().map(|&x| x as u64).sum();
    let squares: u64 = comp.iter().map(|&x| (x as u64) * (x as u64)).sum();
    (total * total - squares) / 2
}

/// A Harder–Narasimhan type: blocks `(r_i, d_i)` of strictly decreasing slope.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HnType {
    blocks: Vec<(u32, i64)>,
}

impl HnType {
    pub fn new(blocks: Vec<(u32, i64)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidBundle("HN type needs at least one block".into()));
        }
        if blocks.iter().any(|&(r, _)| r == 0) {
            return Err(Error::InvalidBundle("HN block of rank 0".into()));
        }
        for w in blocks.windows(2) {
            let (r1, d1) = w[0];
            let (r2, d2) = w[1];
            if (d1 as i128) * (r2 as i128) <= (d2 as i128) * (r1 as i128) {
                return Err(Error::InvalidBundle(format!("slopes must decrease strictly: {d1}/{r1} vs {d2}/{r2}")));
            }
        }
        Ok(HnType { blocks })
    }

    pub fn semistable(r: u32, d: i64) -> Self {
        HnType { blocks: vec![(r, d)] }
    }

    pub fn blocks(&self) -> &[(u32, i64)] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_semistable(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn rank(&self) -> u32 {
        self.blocks.iter().map(|b| b.0).sum()
    }

    pub fn degree(&self) -> i64 {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.blocks.iter().map(|b| b.0).collect()
    }
}

impl fmt::Display for HnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(r, d)| format!("({r},{d})")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `d_mu = sum_{i<j} (d_i r_j - r_i d_j + r_i r_j (g-1))`.
pub fn codim_dmu(mu: &HnType, g: u32) -> u64 {
    let b = mu.blocks();
    let mut acc: i128 = 0;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let (ri, di) = (b[i].0 as i128, b[i].1 as i128);
            let (rj, dj) = (b[j].0 as i128, b[j].1 as i128);
            acc += di * rj - ri * dj + ri * rj * (g as i128 - 1);
        }
    }
    assert!(acc >= 0 && (b.len() == 1 || acc > 0), "codimension of {mu} is not positive");
    acc as u64
}

/// Every HN type of rank `r` and degree `d` with `d_mu <= max_codim`,
/// the semistable type included, in lexicographic order of blocks.
///
/// With `D_k, R_k` the partial sums and `e_k = D_k r - R_k d`, one has
/// `r * dbar_mu = sum_k (r_k + r_{k+1}) e_k` and every `e_k >= 1`, so each
/// `e_k` ranges over a finite window.
pub fn enumerate_hn_types(r: u32, d: i64, g: u32, max_codim: u64) -> Vec<HnType> {
    assert!(r >= 1);
    let mut out = vec![HnType::semistable(r, d)];
    let ri = r as i128;
    let di = d as i128;
    for comp in compositions(r) {
        if comp.len() < 2 {
            continue;
        }
        let base = pair_sum(&comp) as i128 * (g as i128 - 1);
        let budget = max_codim as i128 - base;
        if budget < 1 {
            continue;
        }
        // r * dbar <= r * budget
        let mut partials: Vec<i128> = Vec::with_capacity(comp.len());
        search(&comp, ri, di, r as i128 * budget, 0, 0, &mut partials, &mut |parts| {
            let mut blocks = Vec::with_capacity(comp.len());
            let mut prev = 0i128;
            for (k, &rk) in comp.iter().enumerate() {
                let dk = if k + 1 < comp.len() { parts[k] } else { di } - prev;
                prev += dk;
                blocks.push((rk, dk as i64));
            }
            if let Ok(mu) = HnType::new(blocks) {
                if codim_dmu(&mu, g) <= max_codim {
                    out.push(mu);
                }
            }
        });
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    comp: &[u32],
    r: i128,
    d: i128,
    room: i128,
    k: usize,
    rk_partial: i128,
    partials: &mut Vec<i128>,
    emit: &mut dyn FnMut(&[i128]),
) {
    if k + 1 == comp.len() {
        emit(partials);
        return;
    }
    let big_r = rk_partial + comp[k] as i128;
    let weight = (comp[k] + comp[k + 1]) as i128;
    // e = D r - R d, 1 <= e <= room / weight
    let e_max = room / weight;
    let rd = big_r * d;
    // smallest D with D r - rd >= 1
    let d_lo = num_integer::Integer::div_ceil(&(rd + 1), &r);
    let mut dk = d_lo;
    loop {
        let e = dk * r - rd;
        if e > e_max {
            break;
        }
        partials.push(dk);
        search(comp, r, d, room - weight * e, k + 1, big_r, partials, emit);
        partials.pop();
        dk += 1;
    }
}

/// Whether every block of `mu` is itself a bundle of kind `tau` on `kt`.
pub fn tau_admissible(mu: &HnType, kt: &KleinTopType, tau: Tau) -> bool {
    mu.blocks().iter().all(|&(ri, di)| match (tau, kt.n) {
        (Tau::Real, 0) => di.rem_euclid(2) == 0,
        (Tau::Real, _) => true,
        (Tau::Quaternionic, 0) => (di + ri as i64 * (kt.g as i64 - 1)).rem_euclid(2) == 0,
        (Tau::Quaternionic, _) => ri % 2 == 0 && di.rem_euclid(2) == 0,
    })
}

/// Number of real HN types over one holomorphic type: `2^((n-1)(l-1))`
/// for real bundles on curves with real points, 1 otherwise.
pub fn real_multiplicity(mu: &HnType, kt: &KleinTopType, tau: Tau) -> BigInt {
    match tau {
        Tau::Real if kt.n > 0 => BigInt::one() << ((kt.n as usize - 1) * (mu.len() - 1)),
        _ => BigInt::one(),
    }
}

/// Coefficients (mod 2) of the obstruction class in the basis `w_1..w_l`.
pub fn orientability_obstruction(mu: &HnType, r: u32, d: i64, g: u32) -> Vec<u8> {
    let parity = |x: i128| x.rem_euclid(2) as u8;
    mu.blocks()
        .iter()
        .map(|&(ri, di)| {
            if r % 2 == 0 {
                parity((d as i128 + g as i128 - 1) * ri as i128)
            } else {
                parity(di as i128 + d as i128 * ri as i128)
            }
        })
        .collect()
}

/// Smallest positive multiple of each denominator in `xs`.
pub fn common_denominator(xs: &[BigRat]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// `gcd(r, |d|) == 1`.
pub fn coprime(r: u32, d: i64) -> bool {
    BigInt::from(r).gcd(&BigInt::from(d)).abs().is_one()
}
