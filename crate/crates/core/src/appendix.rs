//! Low-rank closed forms written out term by term, used as golden values.
//!
//! Each function transcribes a printed table entry literally, including its
//! bracket exponents, and builds it with plain polynomial arithmetic. None
//! of them goes through the composition sum of [`crate::engine`].

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hn::frac_bracket;
use crate::kernel::{ratio, BigRat, Poly};
use crate::rational_fn::{rf_add, RationalFn};

/// How to read the one table entry known to be misprinted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transcription {
    /// As printed.
    Printed,
    /// With the exponent rederived from its composition.
    Corrected,
}

/// `<p/q>`
fn br(p: i64, q: i64) -> BigRat {
    frac_bracket(&ratio(p, q))
}

fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// `coeff * (sum_e t^e) * prod (1 + t^k)^m / prod (1 - t^k)^m'`.
fn term(coeff: BigInt, exponents: &[BigRat], plus: &[(usize, i64)], minus: &[(usize, i64)]) -> Result<RationalFn> {
    let mut mono = Poly::zero(1);
    for e in exponents {
        if !e.is_integer() || e < &int(0) {
            return Err(Error::UnrepresentableExponent { exponent: crate::kernel::fmt_rat(e), scale: 1 });
        }
        let k: usize = e.to_integer().try_into().expect("small exponent");
        mono = &mono + &Poly::monomial(int(1), k, 1);
    }
    let mut num = mono.scale_by(&BigRat::from_integer(coeff));
    for &(k, m) in plus {
        assert!(m >= 0, "negative multiplicity in a numerator factor");
        num = &num * &Poly::binomial(k, 1, 1).pow(m as u32);
    }
    let mut den = Poly::one(1);
    for &(k, m) in minus {
        den = &den * &Poly::binomial(k, -1, 1).pow(m as u32);
    }
    RationalFn::new(num, den)
}

fn sum(terms: Vec<RationalFn>) -> Result<RationalFn> {
    terms.iter().try_fold(RationalFn::zero(1), |acc, t| rf_add(&acc, t))
}

fn pow2(e: i64) -> BigInt {
    BigInt::from(1) << e as usize
}

fn one() -> BigInt {
    BigInt::from(1)
}

fn minus_one() -> BigInt {
    BigInt::from(-1)
}

/// `P_g(r, d)`, `1 <= r <= 4`.
pub fn complex(r: u32, g: u32, d: i64) -> Result<RationalFn> {
    let g = g as i64;
    let e = |x: i64| int(x);
    match r {
        1 => term(one(), &[e(0)], &[(1, 2 * g)], &[(2, 1)]),
        2 => sum(vec![
            term(one(), &[e(0)], &[(1, 2 * g), (3, 2 * g)], &[(2, 2), (4, 1)])?,
            term(minus_one(), &[e(2 * g - 2) + int(4) * br(d, 2)], &[(1, 4 * g)], &[(2, 2), (4, 1)])?,
        ]),
        3 => sum(vec![
            term(one(), &[e(0)], &[(1, 2 * g), (3, 2 * g), (5, 2 * g)], &[(2, 2), (4, 2), (6, 1)])?,
            term(
                minus_one(),
                &[e(4 * g - 4) + int(6) * br(d, 3), e(4 * g - 4) + int(6) * br(-d, 3)],
                &[(1, 4 * g), (3, 2 * g)],
                &[(2, 3), (4, 1), (6, 1)],
            )?,
            term(one(), &[e(6 * g - 6) + int(4) * br(d, 3) + int(4) * br(-d, 3)], &[(1, 6 * g)], &[(2, 3), (4, 2)])?,
        ]),
        4 => sum(vec![
            term(one(), &[e(0)], &[(1, 2 * g), (3, 2 * g), (5, 2 * g), (7, 2 * g)], &[(2, 2), (4, 2), (6, 2), (8, 1)])?,
            term(
                minus_one(),
                &[e(6 * g - 6) + int(8) * br(d, 4), e(6 * g - 6) + int(8) * br(-d, 4)],
                &[(1, 4 * g), (3, 2 * g), (5, 2 * g)],
                &[(2, 3), (4, 2), (6, 1), (8, 1)],
            )?,
            term(
                minus_one(),
                &[e(8 * g - 8) + int(8) * br(d, 2)],
                &[(1, 4 * g), (3, 4 * g)],
                &[(2, 4), (4, 2), (8, 1)],
            )?,
            term(
                one(),
                &[
                    e(10 * g - 10) + int(6) * br(d, 2) + int(4) * br(d, 4),
                    e(10 * g - 10) + int(6) * br(d, 2) + int(4) * br(-d, 4),
                ],
                &[(1, 6 * g), (3, 2 * g)],
                &[(2, 4), (4, 2), (6, 1)],
            )?,
            term(
                one(),
                &[e(10 * g - 10) + int(6) * br(d, 4) + int(6) * br(-d, 4)],
                &[(1, 6 * g), (3, 2 * g)],
                &[(2, 4), (4, 1), (6, 2)],
            )?,
            term(
                minus_one(),
                &[e(12 * g - 12) + int(4) * br(d, 2) + int(4) * br(d, 4) + int(4) * br(-d, 4)],
                &[(1, 8 * g)],
                &[(2, 4), (4, 3)],
            )?,
        ]),
        _ => Err(Error::Unsupported(format!("no tabulated complex formula for rank {r}"))),
    }
}

/// `P^{real}_{(g,0,1)}(r, 2d)`, `1 <= r <= 4`.
pub fn real_without_points(r: u32, g: u32, d: i64, reading: Transcription) -> Result<RationalFn> {
    let h = g as i64 + 1;
    let e = |x: i64| int(x);
    let g = g as i64;
    match r {
        1 => term(one(), &[e(0)], &[(1, h)], &[(2, 1)]),
        2 => sum(vec![
            term(one(), &[e(0)], &[(1, h), (3, h)], &[(2, 2), (4, 1)])?,
            term(minus_one(), &[e(g - 1) + int(4) * br(d, 2)], &[(1, 2 * h)], &[(2, 2), (4, 1)])?,
        ]),
        3 => sum(vec![
            term(one(), &[e(0)], &[(1, h), (3, h), (5, h)], &[(2, 2), (4, 2), (6, 1)])?,
            term(
                minus_one(),
                &[e(2 * g - 2) + int(6) * br(d, 3), e(2 * g - 2) + int(6) * br(-d, 3)],
                &[(1, 2 * h), (3, h)],
                &[(2, 3), (4, 1), (6, 1)],
            )?,
            term(one(), &[e(3 * g - 3) + int(4) * br(d, 3) + int(4) * br(-d, 3)], &[(1, 3 * h)], &[(2, 3), (4, 2)])?,
        ]),
        4 => {
            let fifth = match reading {
                Transcription::Printed => e(5 * g - 5) + int(12) * br(d, 2),
                Transcription::Corrected => e(5 * g - 5) + int(6) * br(d, 4) + int(6) * br(-d, 4),
            };
            sum(vec![
                term(one(), &[e(0)], &[(1, h), (3, h), (5, h), (7, h)], &[(2, 2), (4, 2), (6, 2), (8, 1)])?,
                term(
                    minus_one(),
                    &[e(3 * g - 3) + int(8) * br(d, 4), e(3 * g - 3) + int(8) * br(-d, 4)],
                    &[(1, 2 * h), (3, h), (5, h)],
                    &[(2, 3), (4, 2), (6, 1), (8, 1)],
                )?,
                term(
                    minus_one(),
                    &[e(4 * g - 4) + int(8) * br(d, 2)],
                    &[(1, 2 * h), (3, 2 * h)],
                    &[(2, 4), (4, 2), (8, 1)],
                )?,
                term(
                    one(),
                    &[
                        e(5 * g - 5) + int(6) * br(d, 2) + int(4) * br(d, 4),
                        e(5 * g - 5) + int(6) * br(d, 2) + int(4) * br(-d, 4),
                    ],
                    &[(1, 3 * h), (3, h)],
                    &[(2, 4), (4, 2), (6, 1)],
                )?,
                term(one(), &[fifth], &[(1, 3 * h), (3, h)], &[(2, 4), (4, 1), (6, 2)])?,
                term(
                    minus_one(),
                    &[e(6 * g - 6) + int(4) * br(d, 2) + int(4) * br(d, 4) + int(4) * br(-d, 4)],
                    &[(1, 4 * h)],
                    &[(2, 4), (4, 3)],
                )?,
            ])
        }
        _ => Err(Error::Unsupported(format!("no tabulated real n=0 formula for rank {r}"))),
    }
}

/// `P^{real}_{(g,n,a)}(r, d)` with `n > 0`, `1 <= r <= 4`.
pub fn real_with_points(r: u32, g: u32, n: u32, d: i64) -> Result<RationalFn> {
    let (g, n) = (g as i64, n as i64);
    let e = |x: i64| int(x);
    match r {
        1 => term(one(), &[e(0)], &[(1, g + 1)], &[(2, 1)]),
        2 => sum(vec![
            term(one(), &[e(0)], &[(1, g + n + 1), (2, n), (3, g - n + 1)], &[(2, 2), (4, 1)])?,
            term(-pow2(n - 1), &[e(g - 1) + int(2) * br(d, 2)], &[(1, 2 * g + 2)], &[(2, 3)])?,
        ]),
        3 => sum(vec![
            term(one(), &[e(0)], &[(1, g + n + 1), (2, 2 * n), (3, g + 1), (5, g - n + 1)], &[(2, 2), (4, 2), (6, 1)])?,
            term(
                -pow2(n - 1),
                &[e(2 * g - 2) + int(3) * br(d, 3), e(2 * g - 2) + int(3) * br(-d, 3)],
                &[(1, 2 * g + n + 2), (2, n), (3, g - n + 1)],
                &[(2, 3), (3, 1), (4, 1)],
            )?,
            term(
                pow2(2 * n - 2),
                &[e(3 * g - 3) + int(2) * br(d, 3) + int(2) * br(-d, 3)],
                &[(1, 3 * g + 3)],
                &[(2, 5)],
            )?,
        ]),
        4 => sum(vec![
            term(
                one(),
                &[e(0)],
                &[(1, g + n + 1), (2, 2 * n), (3, g + n + 1), (4, n), (5, g - n + 1), (7, g - n + 1)],
                &[(2, 2), (4, 2), (6, 2), (8, 1)],
            )?,
            term(
                -pow2(n - 1),
                &[e(3 * g - 3) + int(4) * br(d, 4), e(3 * g - 3) + int(4) * br(-d, 4)],
                &[(1, 2 * g + n + 2), (2, 2 * n), (3, g + 1), (5, g - n + 1)],
                &[(2, 3), (4, 3), (6, 1)],
            )?,
            term(
                -pow2(n - 1),
                &[e(4 * g - 4) + int(4) * br(d, 2)],
                &[(1, 2 * g + 2 * n + 2), (2, 2 * n), (3, 2 * g - 2 * n + 2)],
                &[(2, 4), (4, 3)],
            )?,
            term(
                pow2(2 * n - 2),
                &[
                    e(5 * g - 5) + int(3) * br(d, 2) + int(2) * br(d, 4),
                    e(5 * g - 5) + int(3) * br(d, 2) + int(2) * br(-d, 4),
                ],
                &[(1, 3 * g + n + 3), (2, n), (3, g - n + 1)],
                &[(2, 5), (3, 1), (4, 1)],
            )?,
            term(
                pow2(2 * n - 2),
                &[e(5 * g - 5) + int(3) * br(d, 4) + int(3) * br(-d, 4)],
                &[(1, 3 * g + n + 3), (2, n), (3, g - n + 1)],
                &[(2, 4), (3, 2), (4, 1)],
            )?,
            term(
                -pow2(3 * n - 3),
                &[e(6 * g - 6) + int(2) * br(d, 2) + int(2) * br(d, 4) + int(2) * br(-d, 4)],
                &[(1, 4 * g + 4)],
                &[(2, 7)],
            )?,
        ]),
        _ => Err(Error::Unsupported(format!("no tabulated real n>0 formula for rank {r}"))),
    }
}

/// `P^{quat}_{(g,n,a)}(2r', 2d)` with `n > 0`, `r' in {1, 2}`.
pub fn quaternionic_with_points(half_rank: u32, g: u32, d: i64) -> Result<RationalFn> {
    let g = g as i64;
    match half_rank {
        1 => term(one(), &[int(0)], &[(1, g), (3, g)], &[(4, 1)]),
        2 => sum(vec![
            term(one(), &[int(0)], &[(1, g), (3, g), (5, g), (7, g)], &[(4, 2), (8, 1)])?,
            term(minus_one(), &[int(4 * g - 4) + int(8) * br(d, 2)], &[(1, 2 * g), (3, 2 * g)], &[(4, 2), (8, 1)])?,
        ]),
        _ => Err(Error::Unsupported(format!("no tabulated quaternionic n>0 formula for rank {}", 2 * half_rank))),
    }
}

/// `P^{real}_{(g,g+1,0)}(2,1)` in its factored form
/// `(1+t)^{2g-1} ((1+t^2)^g - (2t)^g) / (1-t)^3`.
pub fn real_maximal_rank_two(g: u32) -> Result<RationalFn> {
    let bracket = &Poly::from_ints(&[1, 0, 1], 1).pow(g) - &Poly::from_ints(&[0, 2], 1).pow(g);
    let num = &Poly::from_ints(&[1, 1], 1).pow(2 * g - 1) * &bracket;
    RationalFn::new(num, Poly::from_ints(&[1, -1], 1).pow(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_entries_agree() {
        for g in 2..=4 {
            let a = real_without_points(1, g, 0, Transcription::Corrected).unwrap();
            assert_eq!(a, real_with_points(1, g, 1, 0).unwrap());
        }
    }

    #[test]
    fn misprint_only_matters_for_d_two_mod_four() {
        for g in 2..=4 {
            for d in -4..8 {
                let printed = real_without_points(4, g, d, Transcription::Printed).unwrap();
                let corrected = real_without_points(4, g, d, Transcription::Corrected).unwrap();
                assert_eq!(printed == corrected, d.rem_euclid(4) != 2, "g={g} d={d}");
            }
        }
    }

    #[test]
    fn maximal_rank_two_factored_form() {
        for g in 2..=5 {
            assert_eq!(real_maximal_rank_two(g).unwrap(), real_with_points(2, g, g + 1, 1).unwrap());
        }
    }
}
