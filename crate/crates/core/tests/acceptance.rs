//! Acceptance run: one pass/fail line per criterion. Every comparison is
//! exact; there is no tolerance anywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use klein_poincare::engine::{fixed_determinant_poincare, moduli_poincare, p_tau_closed, ClosedCase};
use klein_poincare::hn::{
    coprime, degree_violation, enumerate_hn_types, frac_bracket, orientability_obstruction, HnType, KleinTopType, Tau,
};
use klein_poincare::kernel::{BigRat, Poly};
use klein_poincare::rational_fn::{duality_check, rf_mul, rf_to_series, RationalFn};
use klein_poincare::verification::{
    check_appendix_misprint, check_classifying_coincidence, check_coprime_polynomial, check_differential,
    check_genus_parity, check_maximality, check_non_maximal, check_q_from_f, check_q_reciprocal, check_rank_one,
    check_saveliev_wang, check_strange_duality, run_suite, total_betti_complex_moduli, total_betti_real_moduli,
    total_betti_real_rank_two, CheckReport,
};

/// Outcome of one criterion: `Err` holds the first failure.
type Verdict = Result<String, String>;

type Criterion = (&'static str, fn() -> Verdict);

fn all_pass(reports: impl IntoIterator<Item = CheckReport>) -> Verdict {
    let mut count = 0;
    for r in reports {
        if !r.passed() {
            return Err(r.to_string());
        }
        count += 1;
    }
    if count == 0 {
        return Err("no checks ran".into());
    }
    Ok(format!("{count} checks"))
}

fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

fn appendix_tables() -> Verdict {
    let tables = all_pass(run_suite(Some("appendix/")))?;
    let printed: Vec<_> = (2..=4).flat_map(|g| (0..4).map(move |d| check_appendix_misprint(g, d))).collect();
    all_pass(printed)?;
    Ok(format!("{tables}; printed rank 4 entry differs from the closed form exactly when d = 2 mod 4"))
}

fn differential() -> Verdict {
    let mut reports = Vec::new();
    let mut per_case: BTreeMap<String, usize> = BTreeMap::new();
    for g in 2..=5u32 {
        for r in 1..=4u32 {
            for d in 0..r as i64 {
                reports.push(check_differential(None, g, r, d, 30));
                *per_case.entry("complex".into()).or_default() += 1;
            }
        }
        for kt in KleinTopType::all_of_genus(g) {
            for tau in [Tau::Real, Tau::Quaternionic] {
                for r in 1..=4u32 {
                    for d in (0..2 * r as i64).filter(|&d| degree_violation(&kt, tau, r, d).is_none()) {
                        reports.push(check_differential(Some((kt, tau)), g, r, d, 30));
                        *per_case.entry(ClosedCase::of(&kt, tau).to_string()).or_default() += 1;
                    }
                }
            }
        }
    }
    if per_case.len() != 6 {
        return Err(format!("only {} cases covered", per_case.len()));
    }
    all_pass(reports)?;
    Ok(per_case.iter().map(|(k, v)| format!("{k} {v}")).collect::<Vec<_>>().join(", "))
}

fn rank_one() -> Verdict {
    let mut reports = Vec::new();
    let mut cases = BTreeSet::new();
    for g in 2..=5u32 {
        for kt in KleinTopType::all_of_genus(g) {
            for tau in [Tau::Real, Tau::Quaternionic] {
                for d in (-3..=3).filter(|&d| degree_violation(&kt, tau, 1, d).is_none()) {
                    cases.insert(ClosedCase::of(&kt, tau).to_string());
                    reports.push(check_rank_one(&kt, tau, d));
                }
            }
        }
    }
    let summary = all_pass(reports)?;
    Ok(format!("{summary} over {} cases; quaternionic rank 1 needs n = 0", cases.len()))
}

fn genus_parity() -> Verdict {
    let reports =
        (2..=3u32).flat_map(|h| (1..=4u32).flat_map(move |r| (0..r as i64).map(move |d| check_genus_parity(h, r, d))));
    let summary = all_pass(reports)?;
    Ok(format!("{summary}, half genus 2..3 (genus 1 is outside the supported range)"))
}

fn strange_duality() -> Verdict {
    let mut reports = Vec::new();
    for g in 2..=4u32 {
        for kt in KleinTopType::all_of_genus(g) {
            if kt.n > 0 {
                for half in 1..=2u32 {
                    for dh in (-3..=3).filter(|&dh| coprime(half, dh)) {
                        reports.push(
                            check_strange_duality(&kt, Tau::Quaternionic, 2 * half, 2 * dh)
                                .map_err(|e| e.to_string())?,
                        );
                    }
                }
                continue;
            }
            for r in 1..=4u32 {
                for dh in (-3..=3).filter(|&dh| coprime(r, dh)) {
                    reports.push(check_strange_duality(&kt, Tau::Real, r, 2 * dh).map_err(|e| e.to_string())?);
                    let shift = if g % 2 == 0 { r as i64 } else { 0 };
                    reports.push(
                        check_strange_duality(&kt, Tau::Quaternionic, r, 2 * dh + shift).map_err(|e| e.to_string())?,
                    );
                }
            }
        }
    }
    let summary = all_pass(reports)?;
    let kt = KleinTopType::new(2, 1, 1).map_err(|e| e.to_string())?;
    let p = p_tau_closed(&kt, Tau::Quaternionic, 2, 2).map_err(|e| e.to_string())?;
    let p = rf_mul(&RationalFn::from_poly(Poly::from_ints(&[1, -1], 1)), &p).map_err(|e| e.to_string())?;
    let head = rf_to_series(&p, 3).map_err(|e| e.to_string())?.coeff_strings();
    if head != ["1", "1", "-1", "1"] {
        return Err(format!("quaternionic (2,2) at genus 2 opens {head:?}"));
    }
    Ok(format!("{summary}; quaternionic rank 2 at genus 2 opens 1 + t - t^2 + t^3"))
}

fn coprime_polynomiality() -> Verdict {
    let mut reports = Vec::new();
    for g in 2..=3u32 {
        for kt in KleinTopType::all_of_genus(g).into_iter().filter(|kt| kt.n > 0) {
            for r in 2..=3u32 {
                for d in (-(r as i64)..2 * r as i64).filter(|&d| coprime(r, d)) {
                    reports.push(check_coprime_polynomial(&kt, r, d));
                    let poly = moduli_poincare(&kt, Tau::Real, r, d).map_err(|e| e.to_string())?;
                    let dim = (r as i64).pow(2) * (g as i64 - 1) + 1;
                    if !duality_check(&RationalFn::from_poly(poly), dim).map_err(|e| e.to_string())? {
                        return Err(format!("{kt} r={r} d={d}: duality fails"));
                    }
                }
            }
        }
    }
    all_pass(reports)
}

fn maximality() -> Verdict {
    for g in 2..=6i64 {
        let got = total_betti_complex_moduli(g as u32, 2, 1).map_err(|e| e.to_string())?;
        let want = BigRat::from_integer(BigInt::from(g) << (4 * g - 2) as usize);
        if got != want {
            return Err(format!("complex total at g={g} is {got}"));
        }
    }
    let mut real_count = 0;
    for g in 2..=5u32 {
        for kt in KleinTopType::all_of_genus(g).into_iter().filter(|kt| kt.n > 0) {
            for d in [-3, -1, 1, 3, 5] {
                let got = total_betti_real_moduli(&kt, 2, d).map_err(|e| e.to_string())?;
                if got != BigRat::from_integer(total_betti_real_rank_two(&kt)) {
                    return Err(format!("real total on {kt} at d={d} is {got}"));
                }
                real_count += 1;
            }
        }
    }
    let mut reports = Vec::new();
    for g in 2..=5u32 {
        for r in 2..=6u32 {
            for d in (1..r as i64).filter(|&d| coprime(r, d)) {
                reports.push(check_maximality(g, r, d));
            }
        }
        for kt in KleinTopType::all_of_genus(g).into_iter().filter(|kt| kt.n > 0 && kt.n < g + 1) {
            reports.push(check_non_maximal(&kt, 2, 1));
        }
    }
    let summary = all_pass(reports)?;
    if total_betti_complex_moduli(2, 2, 1).map_err(|e| e.to_string())? != int(128) {
        return Err("complex total at g=2 is not 128".into());
    }
    Ok(format!("{summary}, {real_count} real rank 2 totals"))
}

fn saveliev_wang() -> Verdict {
    let poly = fixed_determinant_poincare(2).map_err(|e| e.to_string())?;
    if poly != Poly::from_ints(&[1, 3, 3, 1], 1) {
        return Err(format!("genus 2 gives {poly}"));
    }
    if poly.eval(&BigRat::one()) != int(8) {
        return Err("value at t=1 is not 8".into());
    }
    all_pass((2..=6).map(check_saveliev_wang))?;
    Ok("(1+t)^3, value 8; genus 2..6 agree with the real series".into())
}

fn structure() -> Verdict {
    let mut reports = Vec::new();
    for g in 2..=4u32 {
        for kt in KleinTopType::all_of_genus(g) {
            for r in 1..=4u32 {
                reports.push(check_q_from_f(&kt, r));
                reports.push(check_q_reciprocal(&kt, Tau::Real, r));
                if kt.n == 0 || r % 2 == 0 {
                    reports.push(check_q_reciprocal(&kt, Tau::Quaternionic, r));
                }
            }
        }
        for r in 1..=4u32 {
            reports.push(check_classifying_coincidence(g, r));
        }
    }
    all_pass(reports)
}

/// Every HN type with at most three blocks, degrees in a box, filtered
/// only by the definition. For `max_codim <= 12`, `g >= 2` and `|d| <= 3`,
/// a two-block type has `(r_1 + r_2) |d_1| <= 12 + 3 r_1 + r_1 r_2`, so
/// every degree lies well inside `|d_i| <= 40`.
fn brute_force_hn(r: u32, d: i64, g: u32, max_codim: i64) -> BTreeSet<Vec<(u32, i64)>> {
    const BOX: i64 = 40;
    let codim = |b: &[(u32, i64)]| -> i64 {
        let mut acc = 0;
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let (ri, di) = (b[i].0 as i64, b[i].1);
                let (rj, dj) = (b[j].0 as i64, b[j].1);
                acc += di * rj - ri * dj + ri * rj * (g as i64 - 1);
            }
        }
        acc
    };
    let decreasing = |b: &[(u32, i64)]| b.windows(2).all(|w| w[0].1 * w[1].0 as i64 > w[1].1 * w[0].0 as i64);
    let mut out = BTreeSet::new();
    out.insert(vec![(r, d)]);
    for r1 in 1..r {
        for d1 in -BOX..=BOX {
            let b = vec![(r1, d1), (r - r1, d - d1)];
            if decreasing(&b) && codim(&b) <= max_codim {
                out.insert(b);
            }
            for r2 in 1..r - r1 {
                for d2 in -BOX..=BOX {
                    let b = vec![(r1, d1), (r2, d2), (r - r1 - r2, d - d1 - d2)];
                    if decreasing(&b) && codim(&b) <= max_codim {
                        assert!(d1.abs() < BOX && d2.abs() < BOX, "box too small");
                        out.insert(b);
                    }
                }
            }
        }
    }
    out
}

/// `sum_{i<j} lambda_ij (w_j - w_i)` reduced mod 2, with
/// `lambda_ij = d_i r_j - r_i d_j + r_i r_j (g-1)`.
fn pairwise_obstruction(mu: &HnType, g: u32) -> Vec<u8> {
    let b = mu.blocks();
    let mut coeff = vec![0i64; b.len()];
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let (ri, di) = (b[i].0 as i64, b[i].1);
            let (rj, dj) = (b[j].0 as i64, b[j].1);
            let lambda = di * rj - ri * dj + ri * rj * (g as i64 - 1);
            coeff[j] += lambda;
            coeff[i] -= lambda;
        }
    }
    coeff.iter().map(|c| c.rem_euclid(2) as u8).collect()
}

/// `(d + g - 1) r_i` if `r` is even, `d_i + d r_i` if `r` is odd, mod 2.
fn two_branch_obstruction(mu: &HnType, g: u32) -> Vec<u8> {
    let (r, d) = (mu.rank() as i64, mu.degree());
    mu.blocks()
        .iter()
        .map(|&(ri, di)| if r % 2 == 0 { (d + g as i64 - 1) * ri as i64 } else { di + d * ri as i64 })
        .map(|c| c.rem_euclid(2) as u8)
        .collect()
}

fn random_hn_type(rng: &mut ChaCha8Rng) -> HnType {
    loop {
        let l = rng.gen_range(1..=4);
        let mut blocks: Vec<(u32, i64)> = (0..l).map(|_| (rng.gen_range(1..=4), rng.gen_range(-9..=9))).collect();
        // order by slope, largest first
        blocks.sort_by(|a, b| (b.1 * a.0 as i64).cmp(&(a.1 * b.0 as i64)));
        if let Ok(mu) = HnType::new(blocks) {
            return mu;
        }
    }
}

fn oracles() -> Verdict {
    let mut compared = 0;
    for g in 2..=3u32 {
        for r in 1..=3u32 {
            for d in -3..=3i64 {
                let fast: BTreeSet<Vec<(u32, i64)>> =
                    enumerate_hn_types(r, d, g, 12).iter().map(|mu| mu.blocks().to_vec()).collect();
                let slow = brute_force_hn(r, d, g, 12);
                if fast != slow {
                    return Err(format!("HN enumeration differs at g={g} r={r} d={d}"));
                }
                compared += slow.len();
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    for _ in 0..1000 {
        let x = BigRat::new(BigInt::from(rng.gen_range(-10_000i64..=10_000)), BigInt::from(rng.gen_range(1i64..=500)));
        let b = frac_bracket(&x);
        if !(b > BigRat::zero() && b <= BigRat::one() && (&x + &b).is_integer()) {
            return Err(format!("bracket of {x} is {b}"));
        }
    }
    for _ in 0..100 {
        let mu = random_hn_type(&mut rng);
        let g = rng.gen_range(2..=6u32);
        let got = orientability_obstruction(&mu, mu.rank(), mu.degree(), g);
        if got != pairwise_obstruction(&mu, g) || got != two_branch_obstruction(&mu, g) {
            return Err(format!("obstruction of {mu} at g={g}: {got:?}"));
        }
    }
    Ok(format!("{compared} HN types, 1000 brackets, 100 obstruction vectors"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("low-rank table golden equality", appendix_tables),
        ("recursion vs closed formula to order 30", differential),
        ("rank one anchor", rank_one),
        ("genus parity coincidences", genus_parity),
        ("strange duality", strange_duality),
        ("coprime polynomiality", coprime_polynomiality),
        ("maximality numbers", maximality),
        ("fixed-determinant rank 2 series", saveliev_wang),
        ("structural relations of gauge group series", structure),
        ("oracle equivalence", oracles),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{detail}] ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{why}] ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
