//! The five subcommands. Per-degree sweeps run on the rayon pool the
//! caller installed; the recursion solve is inherently sequential and runs
//! once up front. Row and check order in the output is ascending in d
//! regardless of scheduling.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use hurwitz_slope::arith::{
    self, check_multiplicative, dirichlet_convolve, first_multiplicativity_failure,
    jordan_totient2, pointwise_product, sigma, ArithmeticFunction, Factorization, SieveTable,
};
use hurwitz_slope::census::{
    build_census, count_a_check, marked_census_check, oracle_b_check, solve_b_recursion,
    sublattice_count_check, verify_census,
};
use hurwitz_slope::picard::{delta_class, verify_slope_relation_with, RatFunc};
use hurwitz_slope::report::{Check, Report};
use num_traits::Pow;

use crate::output::{render_counts, render_report, CountsRow};
use crate::{Fault, RunConfig};

pub struct Outcome {
    pub rendered: String,
    pub all_passed: bool,
}

fn report_outcome(config: &RunConfig, report: Report) -> Outcome {
    Outcome {
        all_passed: report.all_passed(),
        rendered: render_report(config.format, &report),
    }
}

/// Parallel sweep over degrees, reporting the smallest failing degree.
fn par_sweep<F>(name: &str, lo: u64, hi: u64, f: F) -> Check
where
    F: Fn(u64) -> Result<(), String> + Sync,
{
    let first_failure = (lo..=hi)
        .into_par_iter()
        .filter_map(|d| f(d).err().map(|detail| (d, detail)))
        .min_by_key(|(d, _)| *d);
    match first_failure {
        None => Check::pass(name),
        Some((_, detail)) => Check::fail(name, detail),
    }
}

pub fn counts(config: &RunConfig) -> Outcome {
    let sieve = SieveTable::new(config.max_d);
    let b = solve_b_recursion(config.max_d, &sieve);
    let rows = build_census(config.max_d, &b, &sieve);
    let table: Vec<CountsRow> = rows
        .par_iter()
        .map(|row| {
            let (slope_num, slope_den) = (row.slope.numer().clone(), row.slope.denom().clone());
            CountsRow {
                d: row.d,
                sigma1: sieve.sigma1(row.d).clone(),
                sigma3: sieve.sigma3(row.d).clone(),
                f: jordan_totient2(row.d),
                m: row.m_count.clone(),
                a: row.a_count.clone(),
                b: row.b_count.clone(),
                c: row.c_count.clone(),
                delta0: row.delta0.clone(),
                delta1: row.delta1.clone(),
                slope_num,
                slope_den,
            }
        })
        .collect();
    Outcome {
        rendered: render_counts(config.format, &table),
        all_passed: true,
    }
}

pub fn verify_slope(config: &RunConfig) -> Outcome {
    let sieve = SieveTable::new(config.max_d);
    let mut b = solve_b_recursion(config.max_d, &sieve);
    if let Some(Fault::BumpB(k)) = config.fault {
        b[k as usize] += BigInt::one();
    }
    let rows = build_census(config.max_d, &b, &sieve);
    report_outcome(config, verify_census(&rows))
}

pub fn verify_identities(config: &RunConfig) -> Outcome {
    let max_d = config.max_d;
    let sieve = SieveTable::new(max_d);
    let j2 = ArithmeticFunction::jordan_totient2();
    let iota_j2 = pointwise_product(&ArithmeticFunction::inclusion(), &j2);
    let sigma1_fn = ArithmeticFunction::sigma(1);
    let mut report = Report::new();

    report.push(par_sweep(
        "sieve tables match direct divisor sums and totient",
        1,
        max_d,
        |d| {
            if sieve.sigma1(d) != &sigma(1, d) {
                return Err(format!("d={d}: sieve sigma1 disagrees with direct sum"));
            }
            if sieve.sigma3(d) != &sigma(3, d) {
                return Err(format!("d={d}: sieve sigma3 disagrees with direct sum"));
            }
            if BigInt::from(sieve.phi(d)) != ArithmeticFunction::euler_phi().eval(d) {
                return Err(format!("d={d}: sieve phi disagrees with direct evaluation"));
            }
            if sieve.factorize(d) != Factorization::of(d) {
                return Err(format!(
                    "d={d}: spf factorization disagrees with trial division"
                ));
            }
            Ok(())
        },
    ));

    report.push(par_sweep(
        "Ramanujan identity for the sigma1 convolution sum",
        1,
        max_d,
        |d| arith::ramanujan_check(d, &sieve),
    ));

    report.push(par_sweep(
        "(iota*J2) convolved with sigma1 equals sigma3",
        1,
        max_d,
        |d| {
            let lhs = dirichlet_convolve(&iota_j2, &sigma1_fn, d);
            if &lhs == sieve.sigma3(d) {
                Ok(())
            } else {
                Err(format!("d={d}: lhs={lhs}, rhs={}", sieve.sigma3(d)))
            }
        },
    ));

    report.push(par_sweep(
        "J2 convolved with sigma1 equals d*sigma1",
        1,
        max_d,
        |d| {
            let lhs = dirichlet_convolve(&j2, &sigma1_fn, d);
            let rhs = BigInt::from(d) * sieve.sigma1(d);
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("d={d}: lhs={lhs}, rhs={rhs}"))
            }
        },
    ));

    report.push(par_sweep(
        "J2 matches its prime-power rule on prime powers",
        1,
        max_d,
        |d| {
            let f = Factorization::of(d);
            if f.pairs().len() != 1 {
                return Ok(());
            }
            let (p, n) = f.pairs()[0];
            let expected = (BigInt::from(p).pow(2u32) - 1) * BigInt::from(p).pow(2 * n - 2);
            let got = jordan_totient2(d);
            if got == expected {
                Ok(())
            } else {
                Err(format!("p^n={d}: J2={got}, rule gives {expected}"))
            }
        },
    ));

    if check_multiplicative(&j2, max_d) {
        report.push(Check::pass("J2 is multiplicative on coprime pairs"));
    } else {
        report.push(Check::fail(
            "J2 is multiplicative on coprime pairs",
            first_multiplicativity_failure(&j2, max_d)
                .unwrap_or_else(|| "counterexample lost".to_string()),
        ));
    }

    report_outcome(config, report)
}

pub fn verify_oracle(config: &RunConfig) -> Outcome {
    let max_d = config.max_d;
    let oracle_max = config.oracle_max_d;
    let sieve = SieveTable::new(max_d);
    let mut b = solve_b_recursion(oracle_max, &sieve);
    if let Some(Fault::BumpB(k)) = config.fault {
        b[k as usize] += BigInt::one();
    }
    let mut report = Report::new();

    report.push(par_sweep(
        "brute-force pair count equals recursion-solved B",
        2,
        oracle_max,
        |d| oracle_b_check(d, &b[d as usize]),
    ));

    report.push(par_sweep(
        "explicit marked census matches the closed form",
        2,
        max_d,
        marked_census_check,
    ));

    report.push(par_sweep(
        "sublattice enumeration has sigma1(d) elements",
        1,
        max_d,
        |d| sublattice_count_check(d, &sieve),
    ));

    report.push(par_sweep(
        "closed-form A equals enumeration-derived A",
        2,
        max_d,
        count_a_check,
    ));

    report_outcome(config, report)
}

pub fn picard(config: &RunConfig) -> Outcome {
    let mut delta = delta_class();
    if let Some(Fault::BumpDeltaEps2) = config.fault {
        delta.eps2 = delta.eps2 + RatFunc::from_int(1);
    }
    report_outcome(config, verify_slope_relation_with(&delta, config.max_d))
}
