//! Built-in cross-checks, each pitting two independent computation routes
//! against one another. The CLI exposes them as `selftest`; they are cheap
//! enough to run on every install.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{factorial, rat, Rat};
use crate::catalog::basis_elements;
use crate::certificate::{cofactor_determinant, exact_determinant};
use crate::characters::{newton_girard, newton_girard_by_recurrence, verify_s_identity};
use crate::partitions::{bordism_rank, partition_count, Decoration};
use crate::torus::{c1_power_integral, q_bundle_integral};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
}

fn check(name: &'static str, passed: bool) -> CheckResult {
    CheckResult { name, passed }
}

fn torus_integrals_are_factorials() -> bool {
    (0..=6).all(|n| c1_power_integral(n, n) == Rat::from_integer(factorial(n)))
}

fn power_sum_routes_agree() -> bool {
    (1..=8).all(|k| newton_girard(k) == newton_girard_by_recurrence(k))
}

fn s_identity_holds() -> bool {
    (1..=5).all(|k| verify_s_identity(k).holds)
}

fn su2_integrals_match_closed_form() -> bool {
    (0..=3).all(|n| {
        let closed = Rat::from_integer(BigInt::from(-2i64).pow(n) * factorial(2 * n));
        q_bundle_integral(n) == closed
    })
}

fn ranks_count_basis_elements() -> bool {
    let mut degree = 0;
    while degree <= 40 {
        for decoration in [
            Decoration::Real,
            Decoration::Complex,
            Decoration::Quaternionic,
        ] {
            let rank = bordism_rank(decoration, degree);
            let listed = basis_elements(decoration, degree).len();
            if rank != num_bigint::BigUint::from(listed) {
                return false;
            }
        }
        degree += 2;
    }
    true
}

fn determinant_routes_agree() -> bool {
    let mut rng = StdRng::seed_from_u64(7161);
    (0..40).all(|_| {
        let side = rng.random_range(1..=4);
        let m: Vec<Vec<Rat>> = (0..side)
            .map(|_| {
                (0..side)
                    .map(|_| {
                        Rat::new(
                            BigInt::from(rng.random_range(-6i64..=6)),
                            BigInt::from(rng.random_range(1i64..=3)),
                        )
                    })
                    .collect()
            })
            .collect();
        exact_determinant(&m) == cofactor_determinant(&m)
    })
}

fn partition_counts_match_pentagonal_recurrence() -> bool {
    // p(n) = sum over nonzero k of (-1)^{k-1} p(n - k(3k-1)/2), both signs of k.
    let max = 30i64;
    let table: Vec<num_bigint::BigUint> = (0..=max).map(|n| partition_count(n as u32)).collect();
    for n in 1..=max {
        let mut total = BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            let g2 = k * (3 * k + 1) / 2;
            if g1 > n && g2 > n {
                break;
            }
            let sign = if k % 2 == 1 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            if g1 <= n {
                total += &sign * BigInt::from(table[(n - g1) as usize].clone());
            }
            if g2 <= n {
                total += &sign * BigInt::from(table[(n - g2) as usize].clone());
            }
            k += 1;
        }
        if total != BigInt::from(table[n as usize].clone()) {
            return false;
        }
    }
    true
}

fn factorial_small_values() -> bool {
    factorial(0) == BigInt::one()
        && factorial(5) == BigInt::from(120)
        && factorial(10) == BigInt::from(3_628_800)
        && rat(0).is_zero()
}

/// Runs every check; order is fixed so output is stable.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        check("factorial-small-values", factorial_small_values()),
        check(
            "partition-counts-vs-pentagonal-recurrence",
            partition_counts_match_pentagonal_recurrence(),
        ),
        check(
            "torus-integrals-are-factorials",
            torus_integrals_are_factorials(),
        ),
        check("power-sum-series-vs-recurrence", power_sum_routes_agree()),
        check("pontryagin-chern-power-sum-identity", s_identity_holds()),
        check(
            "su2-integrals-vs-closed-form",
            su2_integrals_match_closed_form(),
        ),
        check("ranks-vs-basis-enumeration", ranks_count_basis_elements()),
        check(
            "determinant-elimination-vs-cofactor",
            determinant_routes_agree(),
        ),
    ]
}
