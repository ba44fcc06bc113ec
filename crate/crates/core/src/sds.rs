//! The signed difference set object and its parameter arithmetic.
//!
//! The counting identity behind everything here: writing s = |P| - |N| and
//! k = |P| + |N|, the signed differences of a valid set sum to lambda*(v-1),
//! which forces s^2 = lambda*(v-1) + k. Feasibility of a parameter triple
//! (v, k, lambda) is exactly the solvability of that identity in nonnegative
//! integers with the right parity.

use std::collections::BTreeSet;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::groupring::{check_sds_equation, EquationReport, GroupRingElement};

/// The derived parameter bundle for a feasible (v, k, lambda) triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SdsParams {
    pub v: i64,
    pub k: i64,
    pub lambda: i64,
    /// n = k - lambda.
    pub n: i64,
    /// s = |P| - |N| = sqrt(lambda*(v-1) + k), nonnegative.
    pub s: i64,
    /// |P| = (k + s) / 2.
    pub p_size: i64,
    /// |N| = (k - s) / 2.
    pub n_size: i64,
}

/// Why a parameter triple fails the counting identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infeasibility {
    /// lambda*(v-1) + k is not a perfect square.
    NotASquare { discriminant: i64 },
    /// k + s is odd, so |P| and |N| cannot both be integers.
    ParityMismatch { k: i64, s: i64 },
    /// lambda <= -2 admits no solutions (the signed-difference count
    /// lambda*(v-1) = s^2 - k cannot reach below -(v-1) with k <= v).
    LambdaBelowMinusOne { lambda: i64 },
    /// s > k would force |N| < 0.
    SignExcess { s: i64, k: i64 },
}

impl std::fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Infeasibility::NotASquare { discriminant } => {
                write!(f, "lambda*(v-1)+k = {discriminant} is not a perfect square")
            }
            Infeasibility::ParityMismatch { k, s } => {
                write!(f, "k + s = {} is odd", k + s)
            }
            Infeasibility::LambdaBelowMinusOne { lambda } => {
                write!(f, "lambda = {lambda} is below -1")
            }
            Infeasibility::SignExcess { s, k } => {
                write!(f, "s = {s} exceeds k = {k}, forcing |N| < 0")
            }
        }
    }
}

/// Result of the feasibility derivation: infeasibility is a verdict, not an
/// error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(SdsParams),
    Infeasible(Infeasibility),
}

impl Feasibility {
    pub fn params(&self) -> Option<&SdsParams> {
        match self {
            Feasibility::Feasible(p) => Some(p),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// Derives the full parameter bundle from (v, k, lambda), or names the first
/// failed condition. Domain errors (v < 1 or k outside [0, v]) are errors
/// proper, not verdicts.
pub fn derive_params(v: i64, k: i64, lambda: i64) -> Result<Feasibility> {
    if v < 1 || k < 0 || k > v {
        return Err(Error::InvalidParams(format!(
            "need v >= 1 and 0 <= k <= v, got v={v} k={k}"
        )));
    }
    let discriminant = lambda
        .checked_mul(v - 1)
        .and_then(|x| x.checked_add(k))
        .ok_or(Error::Overflow)?;
    let s = match arith::perfect_sqrt(discriminant) {
        Some(s) => s,
        None => {
            return Ok(Feasibility::Infeasible(Infeasibility::NotASquare {
                discriminant,
            }))
        }
    };
    if (k + s) % 2 != 0 {
        return Ok(Feasibility::Infeasible(Infeasibility::ParityMismatch {
            k,
            s,
        }));
    }
    if lambda < -1 {
        return Ok(Feasibility::Infeasible(
            Infeasibility::LambdaBelowMinusOne { lambda },
        ));
    }
    if s > k {
        return Ok(Feasibility::Infeasible(Infeasibility::SignExcess { s, k }));
    }
    Ok(Feasibility::Feasible(SdsParams {
        v,
        k,
        lambda,
        n: k - lambda,
        s,
        p_size: (k + s) / 2,
        n_size: (k - s) / 2,
    }))
}

/// The two shapes that exist trivially and are excluded from enumeration:
/// (v, v, v) is all of G with sign +1, and (v, v, v-4) is all of G with one
/// sign flipped.
pub fn is_excluded_trivial(v: i64, k: i64, lambda: i64) -> bool {
    k == v && (lambda == v || lambda == v - 4)
}

/// All feasible parameter triples with 2 <= v <= max_v, sorted by
/// (v, k, lambda), minus the trivial shapes.
///
/// With `dedup_complements` set, each pair related by the formal complement
/// (v, k, lambda) <-> (v, k + v - 2s, lambda + v - 2s) is listed once, by its
/// smaller-lambda member.
pub fn enumerate_feasible(max_v: i64, dedup_complements: bool) -> Vec<SdsParams> {
    let mut out = Vec::new();
    for v in 2..=max_v {
        for k in 0..=v {
            for lambda in -1..=k {
                if is_excluded_trivial(v, k, lambda) {
                    continue;
                }
                let params = match derive_params(v, k, lambda) {
                    Ok(Feasibility::Feasible(p)) => p,
                    _ => continue,
                };
                if dedup_complements && 2 * params.s > v {
                    let (k2, l2) = (k + v - 2 * params.s, lambda + v - 2 * params.s);
                    let partner_ok = !is_excluded_trivial(v, k2, l2)
                        && matches!(derive_params(v, k2, l2), Ok(Feasibility::Feasible(_)));
                    if partner_ok {
                        continue;
                    }
                }
                out.push(params);
            }
        }
    }
    out
}

/// A signed difference set: disjoint subsets P and N of a group plus the
/// claimed lambda. Membership is stored as sorted element ranks.
///
/// lambda is carried rather than derived because (v, k) does not determine
/// it; [`SignedDiffSet::verify`] confirms the claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedDiffSet {
    group: AbelianGroup,
    p: Vec<usize>,
    n: Vec<usize>,
    lambda: i64,
}

/// Full verification outcome: the equation check plus the counting-identity
/// cross check.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Equation holds and the sizes are consistent with the identity.
    pub ok: bool,
    pub equation: EquationReport,
    /// What derive_params says about (v, k, lambda).
    pub feasibility: Feasibility,
    /// |P| and |N| match the derived p_size/n_size (possibly swapped when the
    /// set is not normalized).
    pub sizes_consistent: bool,
}

impl SignedDiffSet {
    pub fn new(
        group: AbelianGroup,
        p: &[GroupElement],
        n: &[GroupElement],
        lambda: i64,
    ) -> Result<Self> {
        let mut pr = Vec::with_capacity(p.len());
        for e in p {
            group.element(e.coords())?;
            pr.push(group.rank(e));
        }
        let mut nr = Vec::with_capacity(n.len());
        for e in n {
            group.element(e.coords())?;
            nr.push(group.rank(e));
        }
        Self::from_ranks(group, pr, nr, lambda)
    }

    pub fn from_ranks(
        group: AbelianGroup,
        mut p: Vec<usize>,
        mut n: Vec<usize>,
        lambda: i64,
    ) -> Result<Self> {
        let v = group.order() as usize;
        for &r in p.iter().chain(n.iter()) {
            if r >= v {
                return Err(Error::RankOutOfRange {
                    rank: r,
                    v: v as u64,
                });
            }
        }
        p.sort_unstable();
        n.sort_unstable();
        if p.windows(2).any(|w| w[0] == w[1]) || n.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidElement("duplicate member in P or N".into()));
        }
        let ps: BTreeSet<usize> = p.iter().copied().collect();
        let overlap = n.iter().filter(|r| ps.contains(r)).count();
        if overlap > 0 {
            return Err(Error::OverlappingSets(overlap));
        }
        Ok(Self {
            group,
            p,
            n,
            lambda,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn p_ranks(&self) -> &[usize] {
        &self.p
    }

    pub fn n_ranks(&self) -> &[usize] {
        &self.n
    }

    pub fn p_elements(&self) -> Vec<GroupElement> {
        self.p
            .iter()
            .map(|&r| self.group.unrank(r).unwrap())
            .collect()
    }

    pub fn n_elements(&self) -> Vec<GroupElement> {
        self.n
            .iter()
            .map(|&r| self.group.unrank(r).unwrap())
            .collect()
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    /// k = |P| + |N|.
    pub fn k(&self) -> i64 {
        (self.p.len() + self.n.len()) as i64
    }

    /// Signed size |P| - |N|; negative when the set is not normalized.
    pub fn signed_size(&self) -> i64 {
        self.p.len() as i64 - self.n.len() as i64
    }

    pub fn ring_element(&self) -> GroupRingElement {
        let mut coeffs = vec![0i64; self.group.order() as usize];
        for &r in &self.p {
            coeffs[r] = 1;
        }
        for &r in &self.n {
            coeffs[r] = -1;
        }
        GroupRingElement::from_coeffs(self.group.clone(), coeffs).expect("lengths match")
    }

    fn from_coeff_vec(group: AbelianGroup, coeffs: &[i64], lambda: i64) -> Self {
        let p = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        let n = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == -1)
            .map(|(r, _)| r)
            .collect();
        Self {
            group,
            p,
            n,
            lambda,
        }
    }

    /// Runs the group-ring equation check and the Lemma-style size cross
    /// check.
    pub fn verify(&self) -> Result<VerifyReport> {
        let equation = check_sds_equation(&self.ring_element(), self.lambda)?;
        let v = self.group.order() as i64;
        let k = self.k();
        let feasibility = if k <= v {
            derive_params(v, k, self.lambda)?
        } else {
            Feasibility::Infeasible(Infeasibility::SignExcess { s: 0, k })
        };
        let sizes_consistent = match feasibility {
            Feasibility::Feasible(p) => {
                let (np, nn) = (self.p.len() as i64, self.n.len() as i64);
                (np, nn) == (p.p_size, p.n_size) || (nn, np) == (p.p_size, p.n_size)
            }
            Feasibility::Infeasible(_) => false,
        };
        Ok(VerifyReport {
            ok: equation.holds && sizes_consistent,
            equation,
            feasibility,
            sizes_consistent,
        })
    }

    /// Swaps P and N when |P| < |N|; negating the element preserves the
    /// equation, so the convention |P| >= |N| costs nothing.
    pub fn normalize(mut self) -> Self {
        if self.p.len() < self.n.len() {
            std::mem::swap(&mut self.p, &mut self.n);
        }
        self
    }

    /// Swaps P and N unconditionally.
    pub fn negate(&self) -> Self {
        Self {
            group: self.group.clone(),
            p: self.n.clone(),
            n: self.p.clone(),
            lambda: self.lambda,
        }
    }

    /// Shifts both P and N by +g.
    pub fn translate(&self, g: &GroupElement) -> Result<Self> {
        self.group.element(g.coords())?;
        let gr = self.group.rank(g);
        let map = |ranks: &[usize]| -> Vec<usize> {
            let mut out: Vec<usize> = ranks.iter().map(|&r| self.group.add_ranks(r, gr)).collect();
            out.sort_unstable();
            out
        };
        Ok(Self {
            group: self.group.clone(),
            p: map(&self.p),
            n: map(&self.n),
            lambda: self.lambda,
        })
    }

    /// Applies the multiplier action x -> t*x to both parts; t must be a unit
    /// modulo the exponent.
    pub fn apply_unit(&self, t: i64) -> Result<Self> {
        let e = self.group.exponent();
        let tm = t.rem_euclid(e as i64) as u64;
        if arith::gcd(tm, e) != 1 {
            return Err(Error::NotAUnit { t, e });
        }
        let map = |ranks: &[usize]| -> Vec<usize> {
            let mut out: Vec<usize> = ranks.iter().map(|&r| self.group.scale_rank(t, r)).collect();
            out.sort_unstable();
            out
        };
        Ok(Self {
            group: self.group.clone(),
            p: map(&self.p),
            n: map(&self.n),
            lambda: self.lambda,
        })
    }

    /// A byte key that is equal for two sets exactly when one is carried to
    /// the other by a translation composed with a unit multiplier (and, for
    /// s = 0, possibly a global sign flip). Computed as the lexicographically
    /// least coefficient vector over that symmetry orbit, with coefficients
    /// encoded as c + 1 in {0, 1, 2}.
    pub fn canonical_form(&self) -> Vec<u8> {
        let g = &self.group;
        let v = g.order() as usize;
        let e = g.exponent();
        let base: Vec<i8> = {
            let mut c = vec![0i8; v];
            for &r in &self.p {
                c[r] = 1;
            }
            for &r in &self.n {
                c[r] = -1;
            }
            c
        };
        let units: Vec<i64> = (1..e.max(2))
            .filter(|&t| arith::gcd(t, e) == 1)
            .map(|t| t as i64)
            .collect();
        let signs: &[i8] = if self.signed_size() == 0 {
            &[1, -1]
        } else {
            &[1]
        };

        let neg_of: Vec<usize> = (0..v).map(|r| g.neg_rank(r)).collect();
        let mut best: Option<Vec<u8>> = None;
        let mut image = vec![0i8; v];
        for &t in &units {
            for (r, &c) in base.iter().enumerate() {
                image[g.scale_rank(t, r)] = c;
            }
            for &sign in signs {
                for h in 0..v {
                    // candidate[r] = sign * image[r - h], compared lazily
                    match &mut best {
                        None => {
                            let cand: Vec<u8> = (0..v)
                                .map(|r| (sign * image[g.add_ranks(r, neg_of[h])] + 1) as u8)
                                .collect();
                            best = Some(cand);
                        }
                        Some(best_vec) => {
                            let mut replace = false;
                            for r in 0..v {
                                let b = (sign * image[g.add_ranks(r, neg_of[h])] + 1) as u8;
                                match b.cmp(&best_vec[r]) {
                                    std::cmp::Ordering::Less => {
                                        replace = true;
                                        break;
                                    }
                                    std::cmp::Ordering::Greater => break,
                                    std::cmp::Ordering::Equal => {}
                                }
                            }
                            if replace {
                                for r in 0..v {
                                    best_vec[r] =
                                        (sign * image[g.add_ranks(r, neg_of[h])] + 1) as u8;
                                }
                            }
                        }
                    }
                }
            }
            for (r, _) in base.iter().enumerate() {
                image[g.scale_rank(t, r)] = 0;
            }
        }
        best.expect("at least one candidate")
    }

    /// Rebuilds a set from a canonical key produced by
    /// [`SignedDiffSet::canonical_form`].
    pub fn from_canonical_bytes(group: AbelianGroup, key: &[u8], lambda: i64) -> Result<Self> {
        if key.len() != group.order() as usize {
            return Err(Error::Format("canonical key length mismatch".into()));
        }
        let coeffs: Vec<i64> = key
            .iter()
            .map(|&b| match b {
                0 => Ok(-1),
                1 => Ok(0),
                2 => Ok(1),
                other => Err(Error::Format(format!("bad canonical byte {other}"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_coeff_vec(group, &coeffs, lambda))
    }

    /// Periodic autocorrelation of the associated ternary sequence; requires
    /// a cyclic group (single factor). theta(0) = k, and for a verified set
    /// theta(tau) = lambda for all tau != 0.
    ///
    /// Computed by the direct shift-product sum, independently of the
    /// convolution path.
    pub fn autocorrelation(&self) -> Result<Vec<i64>> {
        if !self.group.is_cyclic() {
            return Err(Error::NotCyclic);
        }
        let v = self.group.order() as usize;
        let mut sign = vec![0i64; v];
        for &r in &self.p {
            sign[r] = 1;
        }
        for &r in &self.n {
            sign[r] = -1;
        }
        let theta = (0..v)
            .map(|tau| (0..v).map(|t| sign[(t + tau) % v] * sign[t]).sum())
            .collect();
        Ok(theta)
    }
}
