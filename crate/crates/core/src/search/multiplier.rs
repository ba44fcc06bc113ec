//! Numerical multipliers from the prime divisors of n = k - lambda.
//!
//! For gcd(v, n) = 1, any unit t modulo the group exponent e that is a power
//! of every prime divisor of n (mod e) is a multiplier: some translate of
//! every solution is fixed setwise by x -> t*x. The qualifying t form the
//! intersection of the cyclic subgroups generated by the prime divisors
//! inside the unit group mod e.

use std::collections::BTreeSet;

use crate::arith;
use crate::group::AbelianGroup;

/// The multiplier subgroup for a parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierResult {
    /// The group exponent e the multipliers live modulo.
    pub modulus_e: u64,
    /// Sorted, contains 1, closed under multiplication mod e.
    pub multipliers: Vec<u64>,
    /// Size of the subgroup the multipliers generate (equals their count).
    pub group_order: usize,
}

/// The multiplier theorem needs gcd(v, n) = 1; violation is a verdict rather
/// than an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplierOutcome {
    Applicable(MultiplierResult),
    NotApplicable { gcd: u64 },
}

pub fn numerical_multipliers(group: &AbelianGroup, n: i64) -> MultiplierOutcome {
    let v = group.order();
    let e = group.exponent();
    if n <= 0 {
        return MultiplierOutcome::NotApplicable {
            gcd: arith::gcd(v, n.unsigned_abs()),
        };
    }
    let n = n as u64;
    let g = arith::gcd(v, n);
    if g != 1 {
        return MultiplierOutcome::NotApplicable { gcd: g };
    }

    let mut set: BTreeSet<u64> = (1..e.max(2)).filter(|&t| arith::gcd(t, e) == 1).collect();
    for (p, _) in arith::factorize(n) {
        // gcd(n, v) = 1 and e | v, so p is a unit mod e
        let mut subgroup = BTreeSet::new();
        let mut x = p % e;
        loop {
            subgroup.insert(x);
            x = x * (p % e) % e;
            if subgroup.contains(&x) {
                break;
            }
        }
        set = set.intersection(&subgroup).copied().collect();
    }
    let multipliers: Vec<u64> = set.into_iter().collect();
    let group_order = multipliers.len();
    MultiplierOutcome::Applicable(MultiplierResult {
        modulus_e: e,
        multipliers,
        group_order,
    })
}
