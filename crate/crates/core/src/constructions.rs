//! The explicit signed-difference-set families. Every constructor verifies
//! its output through the group-ring equation before returning it; nothing is
//! trusted on parameter arithmetic alone.

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{self, FiniteField};
use crate::group::{AbelianGroup, GroupElement};
use crate::sds::SignedDiffSet;

fn verified(set: SignedDiffSet, family: &str) -> Result<SignedDiffSet> {
    let report = set.verify()?;
    if !report.ok {
        return Err(Error::ConstructionInvalid(format!(
            "{family} produced a set failing the equation check"
        )));
    }
    Ok(set)
}

/// Nonzero squares of GF(q) as elements of the additive group Z_p^k.
fn paley_square_elements(field: &FiniteField, group: &AbelianGroup) -> Result<Vec<GroupElement>> {
    let mut squares = std::collections::BTreeSet::new();
    for x in field.elements() {
        if field.is_zero(&x) {
            continue;
        }
        squares.insert(field.mul(&x, &x));
    }
    squares
        .into_iter()
        .map(|x| field.to_group_element(&x, group))
        .collect()
}

/// The Paley difference set: nonzero squares of GF(q) for q = 3 (mod 4),
/// a (q, (q-1)/2, (q-3)/4) difference set with N empty.
pub fn paley_difference_set(q: u64) -> Result<SignedDiffSet> {
    if q % 4 != 3 {
        return Err(Error::Precondition(format!("q = {q} is not 3 mod 4")));
    }
    let field = FiniteField::new(q)?;
    let group = field.additive_group();
    let p = paley_square_elements(&field, &group)?;
    let lambda = (q as i64 - 3) / 4;
    let set = SignedDiffSet::new(group, &p, &[], lambda)?.normalize();
    verified(set, "paley_difference_set")
}

/// Squares against nonsquares modulo an odd prime: a (v, v-1, -1) signed
/// difference set with s = 0.
pub fn quadratic_residue_sds(v: u64) -> Result<SignedDiffSet> {
    if !arith::is_prime(v) || v == 2 {
        return Err(Error::Precondition(format!("{v} is not an odd prime")));
    }
    let group = AbelianGroup::new(&[v])?;
    let squares = gf::power_residues(v, 2)?;
    let p: Vec<GroupElement> = squares
        .iter()
        .map(|&r| group.element(&[r]).unwrap())
        .collect();
    let n: Vec<GroupElement> = (1..v)
        .filter(|x| !squares.contains(x))
        .map(|r| group.element(&[r]).unwrap())
        .collect();
    let set = SignedDiffSet::new(group, &p, &n, -1)?.normalize();
    verified(set, "quadratic_residue_sds")
}

/// Paley difference set with N = {0}: for q = 4n - 1 a prime power, a
/// (4n-1, 2n, n-2) signed difference set. The q = 7 case is a circulant
/// weighing matrix W(7,4) row, the lambda = 0 degenerate case.
pub fn paley_signed_sds(q: u64) -> Result<SignedDiffSet> {
    if q % 4 != 3 {
        return Err(Error::Precondition(format!(
            "q = {q} is not of the form 4n - 1"
        )));
    }
    let field = FiniteField::new(q)?;
    let group = field.additive_group();
    let p = paley_square_elements(&field, &group)?;
    let n = vec![group.identity()];
    let nn = (q as i64 + 1) / 4;
    let set = SignedDiffSet::new(group, &p, &n, nn - 2)?.normalize();
    verified(set, "paley_signed_sds")
}

/// Complement construction: from a verified (v, k, lambda) difference set
/// (N empty), the pair (D, complement of D) is a (v, v, v - 4n) signed
/// difference set.
pub fn complement_signed(ds: &SignedDiffSet) -> Result<SignedDiffSet> {
    if !ds.n_ranks().is_empty() {
        return Err(Error::Precondition(
            "complement construction needs a plain difference set (N empty)".into(),
        ));
    }
    let report = ds.verify()?;
    if !report.ok {
        return Err(Error::Precondition(
            "input difference set fails verification".into(),
        ));
    }
    let group = ds.group().clone();
    let v = group.order() as i64;
    let n_order = ds.k() - ds.lambda();
    let lambda = v - 4 * n_order;
    let in_d: std::collections::BTreeSet<usize> = ds.p_ranks().iter().copied().collect();
    let p: Vec<usize> = ds.p_ranks().to_vec();
    let n: Vec<usize> = (0..group.order() as usize)
        .filter(|r| !in_d.contains(r))
        .collect();
    let set = SignedDiffSet::from_ranks(group, p, n, lambda)?.normalize();
    verified(set, "complement_signed")
}

/// Outcome of the quartic-residue construction: the verified set plus the
/// floating-point cross check |g(4) - 5|^2 = 3v + 25.
#[derive(Debug, Clone)]
pub struct QuarticResidueSds {
    pub set: SignedDiffSet,
    /// |g(4) - 5|^2 as evaluated numerically.
    pub gauss_lhs: f64,
    /// 3v + 25.
    pub gauss_rhs: f64,
}

impl QuarticResidueSds {
    pub fn gauss_check_within(&self, tol: f64) -> bool {
        (self.gauss_lhs - self.gauss_rhs).abs() < tol
    }
}

/// Fourth-power residues with N = {0}: for a prime v = 13 (mod 16) of the
/// form 25 + 4y^2 with y odd, a (v, (v+3)/4, (v-13)/16) signed difference
/// set.
pub fn quartic_residue_sds(v: u64) -> Result<QuarticResidueSds> {
    if !arith::is_prime(v) {
        return Err(Error::Precondition(format!("{v} is not prime")));
    }
    if v % 16 != 13 {
        return Err(Error::Precondition(format!("{v} is not 13 mod 16")));
    }
    let y2 = (v as i64 - 25) / 4;
    let form_ok = v >= 25
        && (v - 25).is_multiple_of(4)
        && matches!(arith::perfect_sqrt(y2), Some(y) if y % 2 == 1);
    if !form_ok {
        return Err(Error::Precondition(format!(
            "{v} is not of the form 25 + 4y^2 with y odd"
        )));
    }
    let group = AbelianGroup::new(&[v])?;
    let h4 = gf::power_residues(v, 4)?;
    let p: Vec<GroupElement> = h4.iter().map(|&r| group.element(&[r]).unwrap()).collect();
    let n = vec![group.identity()];
    let lambda = (v as i64 - 13) / 16;
    let set = SignedDiffSet::new(group, &p, &n, lambda)?.normalize();
    let set = verified(set, "quartic_residue_sds")?;
    let gs = gf::gauss_quartic_sum(v)?;
    Ok(QuarticResidueSds {
        set,
        gauss_lhs: gs.g4.sub_real(5.0).norm_sqr(),
        gauss_rhs: (3 * v + 25) as f64,
    })
}

/// Prime-pair construction: for q = 2m - 3 and r = 2m + 3 both prime powers,
/// a (4n-9, 2n-1, n-1) signed difference set with n = m^2 in the additive
/// group GF(q) + GF(r), with
/// P = {(x,y) : chi(x) chi(y) = 1} u {(0,y) : y != 0} and N = {(0,0)}.
pub fn prime_pair_sds(m: u64) -> Result<SignedDiffSet> {
    if m < 3 {
        return Err(Error::Precondition(format!("m = {m} must be at least 3")));
    }
    let q = 2 * m - 3;
    let r = 2 * m + 3;
    if arith::prime_power(q).is_none() {
        return Err(Error::Precondition(format!(
            "q = 2m - 3 = {q} is not a prime power"
        )));
    }
    if arith::prime_power(r).is_none() {
        return Err(Error::Precondition(format!(
            "r = 2m + 3 = {r} is not a prime power"
        )));
    }
    // exactly one of q, r is 1 mod 4 since they differ by 6
    debug_assert_eq!((q % 4 == 1) as u8 + (r % 4 == 1) as u8, 1);

    let fq = FiniteField::new(q)?;
    let fr = FiniteField::new(r)?;
    let mut orders: Vec<u64> = vec![fq.p(); fq.degree() as usize];
    orders.extend(std::iter::repeat_n(fr.p(), fr.degree() as usize));
    let group = AbelianGroup::new(&orders)?;

    let pair_elem = |x: &gf::FieldElement, y: &gf::FieldElement| -> GroupElement {
        let mut coords = x.coeffs().to_vec();
        coords.extend_from_slice(y.coeffs());
        group.element(&coords).expect("coordinates in range")
    };

    let mut p = Vec::new();
    for x in fq.elements() {
        let cx = fq.quadratic_character(&x)?;
        for y in fr.elements() {
            let cy = fr.quadratic_character(&y)?;
            if cx * cy == 1 || (fq.is_zero(&x) && !fr.is_zero(&y)) {
                p.push(pair_elem(&x, &y));
            }
        }
    }
    let n = vec![group.identity()];
    let lambda = (m * m) as i64 - 1;
    let set = SignedDiffSet::new(group, &p, &n, lambda)?.normalize();
    verified(set, "prime_pair_sds")
}

/// The single known sporadic noncyclic family member with lambda != 0 beyond
/// the prime-pair sets: an (18, 13, 4) set in Z_2 x Z_3 x Z_3.
pub fn noncyclic_18_13_4() -> SignedDiffSet {
    let group = AbelianGroup::new(&[2, 3, 3]).expect("valid orders");
    let e = |c: [u64; 3]| group.element(&c).expect("coordinates in range");
    let mut p = Vec::new();
    for x in 0..3 {
        p.push(e([0, x, 1]));
        p.push(e([0, x, 2]));
        p.push(e([1, 2, x]));
    }
    p.push(e([1, 0, 1]));
    p.push(e([1, 1, 0]));
    let n = vec![e([1, 0, 0]), e([1, 1, 1])];
    let set = SignedDiffSet::new(group, &p, &n, 4).expect("disjoint by construction");
    debug_assert!(set.verify().map(|r| r.ok).unwrap_or(false));
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sds::{derive_params, Feasibility};

    fn params_of(set: &SignedDiffSet) -> (i64, i64, i64) {
        (set.group().order() as i64, set.k(), set.lambda())
    }

    #[test]
    fn paley_ds_examples() {
        let d7 = paley_difference_set(7).unwrap();
        assert_eq!(params_of(&d7), (7, 3, 1));
        assert_eq!(d7.p_ranks(), &[1, 2, 4]);

        let d11 = paley_difference_set(11).unwrap();
        assert_eq!(params_of(&d11), (11, 5, 2));

        let d27 = paley_difference_set(27).unwrap();
        assert_eq!(params_of(&d27), (27, 13, 6));
        assert_eq!(d27.group().orders(), &[3, 3, 3]);

        assert!(paley_difference_set(13).is_err());
        assert!(paley_difference_set(15).is_err());
    }

    #[test]
    fn quadratic_residue_examples() {
        let s7 = quadratic_residue_sds(7).unwrap();
        assert_eq!(s7.p_ranks(), &[1, 2, 4]);
        assert_eq!(s7.n_ranks(), &[3, 5, 6]);
        assert_eq!(s7.lambda(), -1);

        let s5 = quadratic_residue_sds(5).unwrap();
        assert_eq!(s5.p_ranks(), &[1, 4]);
        assert_eq!(s5.n_ranks(), &[2, 3]);

        let s13 = quadratic_residue_sds(13).unwrap();
        assert_eq!(params_of(&s13), (13, 12, -1));
        assert_eq!(s13.signed_size(), 0);

        assert!(quadratic_residue_sds(9).is_err());
        assert!(quadratic_residue_sds(2).is_err());
    }

    #[test]
    fn paley_signed_examples() {
        let s7 = paley_signed_sds(7).unwrap();
        assert_eq!(params_of(&s7), (7, 4, 0));
        assert_eq!((s7.p_ranks().len(), s7.n_ranks().len()), (3, 1));

        let s11 = paley_signed_sds(11).unwrap();
        assert_eq!(params_of(&s11), (11, 6, 1));

        let s19 = paley_signed_sds(19).unwrap();
        assert_eq!(params_of(&s19), (19, 10, 3));

        assert!(paley_signed_sds(5).is_err());
    }

    #[test]
    fn complement_examples() {
        let fano = paley_difference_set(7).unwrap();
        let c = complement_signed(&fano).unwrap();
        assert_eq!(params_of(&c), (7, 7, -1));
        assert_eq!((c.p_ranks().len(), c.n_ranks().len()), (4, 3));

        let c11 = complement_signed(&paley_difference_set(11).unwrap()).unwrap();
        assert_eq!(params_of(&c11), (11, 11, -1));

        // a (13,4,1) planar difference set from outside the Paley family
        let g13 = AbelianGroup::new(&[13]).unwrap();
        let d13 = SignedDiffSet::from_ranks(g13, vec![0, 1, 3, 9], vec![], 1).unwrap();
        let c13 = complement_signed(&d13).unwrap();
        assert_eq!(params_of(&c13), (13, 13, 1));

        // signed input is refused
        let qr = quadratic_residue_sds(7).unwrap();
        assert!(complement_signed(&qr).is_err());
    }

    #[test]
    fn quartic_examples() {
        for (v, k, lambda) in [(29u64, 8i64, 1i64), (61, 16, 3), (349, 88, 21)] {
            let out = quartic_residue_sds(v).unwrap();
            assert_eq!(params_of(&out.set), (v as i64, k, lambda));
            assert!(out.gauss_check_within(1e-6), "v={v}");
        }
        // 13 is 13 mod 16 but 13 - 25 < 0
        assert!(quartic_residue_sds(13).is_err());
        // 109 is 13 mod 16 but (109-25)/4 = 21 is not a square
        assert!(quartic_residue_sds(109).is_err());
        assert!(quartic_residue_sds(30).is_err());
    }

    #[test]
    fn prime_pair_examples() {
        let s3 = prime_pair_sds(3).unwrap();
        assert_eq!(params_of(&s3), (27, 17, 8));
        assert_eq!(s3.group().orders(), &[3, 3, 3]);

        let s4 = prime_pair_sds(4).unwrap();
        assert_eq!(params_of(&s4), (55, 31, 15));

        let s5 = prime_pair_sds(5).unwrap();
        assert_eq!(params_of(&s5), (91, 49, 24));

        // m = 6: q = 9, r = 15 = 3 * 5 is not a prime power
        assert!(prime_pair_sds(6).is_err());
        assert!(prime_pair_sds(2).is_err());
    }

    #[test]
    fn prime_pair_parameter_formula() {
        for m in [3i64, 4, 5, 7] {
            if let Ok(set) = prime_pair_sds(m as u64) {
                let n = m * m;
                assert_eq!(params_of(&set), (4 * n - 9, 2 * n - 1, n - 1));
            }
        }
    }

    #[test]
    fn noncyclic_18_13_4_verifies() {
        let set = noncyclic_18_13_4();
        assert_eq!(params_of(&set), (18, 13, 4));
        assert_eq!((set.p_ranks().len(), set.n_ranks().len()), (11, 2));
        let report = set.verify().unwrap();
        assert!(report.ok);
        assert_eq!(report.equation.spectrum[0], 13);
        assert!(report.equation.spectrum[1..].iter().all(|&c| c == 4));

        match derive_params(18, 13, 4).unwrap() {
            Feasibility::Feasible(p) => {
                assert_eq!((p.s, p.p_size, p.n_size), (9, 11, 2));
            }
            other => panic!("expected feasible, got {other:?}"),
        }
    }

    #[test]
    fn qr_family_has_s_zero_lambda_minus_one() {
        for v in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let s = quadratic_residue_sds(v).unwrap();
            assert_eq!(s.lambda(), -1);
            assert_eq!(s.signed_size(), 0);
        }
    }

    #[test]
    fn complement_lambda_formula() {
        for q in [7u64, 11, 19, 23] {
            let ds = paley_difference_set(q).unwrap();
            let n = ds.k() - ds.lambda();
            let c = complement_signed(&ds).unwrap();
            assert_eq!(c.lambda(), q as i64 - 4 * n);
        }
    }
}
