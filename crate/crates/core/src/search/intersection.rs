//! Intersection numbers: the possible coset-projection coefficient multisets
//! of a signed difference set.
//!
//! For v = d*w with d, w > 1 and a quotient of order w, the projected
//! coefficients b_h satisfy sum b_h = s and sum b_h^2 = k + lambda*(d - 1).
//! On top of those two equations, each b_h must be realizable by at most d
//! ternary entries in its fiber, which bounds |b_h| by min(d, k) and couples
//! the b_h to fiber support counts c_h with c_h = b_h (mod 2) and
//! sum c_h = k.

use crate::error::{Error, Result};
use crate::sds::SdsParams;

/// One admissible projected-coefficient multiset, stored nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionSolution {
    pub b: Vec<i64>,
    pub d: i64,
    pub w: i64,
}

/// All admissible multisets for projecting params onto a quotient of order w
/// with fibers of size d. An empty list certifies infeasibility of the
/// parameters at this quotient.
pub fn intersection_solutions(
    params: &SdsParams,
    d: i64,
    w: i64,
) -> Result<Vec<IntersectionSolution>> {
    if d < 2 || w < 2 {
        return Err(Error::InvalidParams(format!(
            "need d, w > 1, got d={d} w={w}"
        )));
    }
    if d * w != params.v {
        return Err(Error::InvalidParams(format!(
            "d*w = {} does not equal v = {}",
            d * w,
            params.v
        )));
    }
    let sum = params.s;
    let sumsq = params.k + params.lambda * (d - 1);
    let bound = d.min(params.k);
    let raw = enumerate_b_multisets(sum, sumsq, w as usize, bound);
    Ok(raw
        .into_iter()
        .filter(|b| support_compatible(b, d, params.k))
        .map(|b| IntersectionSolution { b, d, w })
        .collect())
}

/// Nonincreasing integer multisets of the given length with prescribed sum
/// and sum of squares, entries bounded by |b| <= bound.
pub(crate) fn enumerate_b_multisets(sum: i64, sumsq: i64, len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if sumsq < 0 {
        return out;
    }
    let mut prefix = Vec::with_capacity(len);
    rec(&mut prefix, sum, sumsq, len, bound, &mut out);
    return out;

    fn rec(
        prefix: &mut Vec<i64>,
        rem_sum: i64,
        rem_sq: i64,
        len: usize,
        bound: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let r = (len - prefix.len()) as i64;
        if r == 0 {
            if rem_sum == 0 && rem_sq == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // capacity bounds for the remaining positions
        if rem_sum.abs() > r * bound || rem_sq > r * bound * bound {
            return;
        }
        // Cauchy-Schwarz: r * rem_sq >= rem_sum^2
        if r * rem_sq < rem_sum * rem_sum {
            return;
        }
        let hi = prefix.last().copied().unwrap_or(bound);
        for x in (-bound..=hi).rev() {
            if x * x > rem_sq {
                if x > 0 {
                    continue;
                }
                break;
            }
            prefix.push(x);
            rec(prefix, rem_sum - x, rem_sq - x * x, len, bound, out);
            prefix.pop();
        }
    }
}

/// Whether fiber support counts c_h exist with c_h >= |b_h|,
/// c_h = b_h (mod 2), c_h <= min(d, k), and sum c_h = k.
fn support_compatible(b: &[i64], d: i64, k: i64) -> bool {
    let cap = d.min(k);
    let min_total: i64 = b.iter().map(|x| x.abs()).sum();
    if min_total > k {
        return false;
    }
    let max_total: i64 = b
        .iter()
        .map(|x| {
            let m = cap;
            if (m - x.abs()) % 2 == 0 {
                m
            } else {
                m - 1
            }
        })
        .sum();
    if max_total < k {
        return false;
    }
    // c_h moves in steps of 2, so the total parity is fixed
    (k - min_total) % 2 == 0
}
