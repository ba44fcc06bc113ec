//! Scan for signed difference sets of the form P = e-th power residues,
//! N = {0}, over primes v with e | v - 1.
//!
//! The candidate has k = (v-1)/e + 1 and s = (v-1)/e - 1, so the counting
//! identity forces lambda = (s^2 - k)/(v-1); most primes fail that
//! integrality test immediately, and the few survivors get the exact
//! group-ring verification.

use crate::arith;
use crate::error::Result;
use crate::gf;
use crate::group::AbelianGroup;
use crate::groupring::check_sds_equation;
use crate::sds::{derive_params, Feasibility, SdsParams, SignedDiffSet};

/// A verified scan hit, with the set that realizes it.
#[derive(Debug, Clone)]
pub struct ResidueHit {
    pub v: u64,
    pub params: SdsParams,
    pub set: SignedDiffSet,
}

pub fn residue_scan(e: u64, max_v: u64) -> Result<Vec<ResidueHit>> {
    let mut hits = Vec::new();
    if e < 2 {
        return Err(crate::error::Error::InvalidParams(format!(
            "residue power e = {e} must be at least 2"
        )));
    }
    for v in 3..=max_v {
        if !arith::is_prime(v) || (v - 1) % e != 0 {
            continue;
        }
        let u = ((v - 1) / e) as i64;
        let (k, s) = (u + 1, u - 1);
        // lambda = (s^2 - k) / (v - 1) must be an integer >= -1
        let num = s * s - k;
        let den = v as i64 - 1;
        if num.rem_euclid(den) != 0 {
            continue;
        }
        let lambda = num / den;
        if lambda < -1 {
            continue;
        }
        let params = match derive_params(v as i64, k, lambda)? {
            Feasibility::Feasible(p) => p,
            Feasibility::Infeasible(_) => continue,
        };
        // exact check of P = H_e, N = {0}
        let group = AbelianGroup::new(&[v])?;
        let residues = gf::power_residues(v, e)?;
        let p: Vec<_> = residues
            .iter()
            .map(|&r| group.element(&[r]).unwrap())
            .collect();
        let zero = group.identity();
        let set = SignedDiffSet::new(group, &p, std::slice::from_ref(&zero), lambda)?;
        let report = check_sds_equation(&set.ring_element(), lambda)?;
        if report.holds {
            hits.push(ResidueHit { v, params, set });
        }
    }
    Ok(hits)
}
