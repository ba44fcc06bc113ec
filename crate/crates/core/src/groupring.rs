//! Exact integer arithmetic in the group ring `Z[G]`: convolution, the
//! involution g -> -g, the difference spectrum, and the defining-equation
//! check.
//!
//! Convolution is the O(v^2) schoolbook product over element ranks. There is
//! no transform-based fast path: v stays small in this problem domain and
//! exactness is the whole point. Overflow is detected and reported, never
//! wrapped.

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement, QuotientData};

/// An element of `Z[G]`, stored as integer coefficients indexed by element rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: AbelianGroup,
    coeffs: Vec<i64>,
}

/// Outcome of checking `a * a^(-1) = n + lambda*G` for a ternary `a`.
#[derive(Debug, Clone)]
pub struct EquationReport {
    /// True when the spectrum is k at the identity and lambda elsewhere.
    pub holds: bool,
    /// Support size of the checked element.
    pub k: i64,
    /// The lambda the element was checked against.
    pub lambda: i64,
    /// Ranks where the spectrum deviates, with the actual coefficient.
    pub violations: Vec<(usize, i64)>,
    /// The full difference spectrum, indexed by rank.
    pub spectrum: Vec<i64>,
}

impl GroupRingElement {
    pub fn zero(group: AbelianGroup) -> Self {
        let v = group.order() as usize;
        Self {
            group,
            coeffs: vec![0; v],
        }
    }

    pub fn from_coeffs(group: AbelianGroup, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.order() as usize {
            return Err(Error::InvalidParams(format!(
                "coefficient vector has length {}, group has order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(Self { group, coeffs })
    }

    /// The ternary element P - N. P and N must be disjoint.
    pub fn from_signed_set(
        group: AbelianGroup,
        p: &[GroupElement],
        n: &[GroupElement],
    ) -> Result<Self> {
        let mut coeffs = vec![0i64; group.order() as usize];
        for e in p {
            group.element(e.coords())?;
            coeffs[group.rank(e)] += 1;
        }
        let mut overlaps = 0;
        for e in n {
            group.element(e.coords())?;
            let r = group.rank(e);
            if coeffs[r] > 0 {
                overlaps += 1;
            }
            coeffs[r] -= 1;
        }
        if overlaps > 0 {
            return Err(Error::OverlappingSets(overlaps));
        }
        if let Some((rank, &coeff)) = coeffs.iter().enumerate().find(|(_, &c)| c.abs() > 1) {
            // duplicate members inside P or inside N
            return Err(Error::NotASignedSet { rank, coeff });
        }
        Ok(Self { group, coeffs })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn coeff_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Schoolbook convolution: `out[g] = sum_h self[h] * other[g - h]`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                "convolution operands live in different groups".into(),
            ));
        }
        let g = &self.group;
        let sup_a: Vec<(usize, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, &c)| (r, c))
            .collect();
        let sup_b: Vec<(usize, i64)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, &c)| (r, c))
            .collect();
        let mut out = vec![0i64; self.coeffs.len()];
        for &(i, ai) in &sup_a {
            for &(j, bj) in &sup_b {
                let r = g.add_ranks(i, j);
                let prod = ai.checked_mul(bj).ok_or(Error::Overflow)?;
                out[r] = out[r].checked_add(prod).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self {
            group: self.group.clone(),
            coeffs: out,
        })
    }

    /// The involution a -> a^(-1): the coefficient of g moves to -g.
    pub fn involution(&self) -> Self {
        let g = &self.group;
        let mut out = vec![0i64; self.coeffs.len()];
        for (r, &c) in self.coeffs.iter().enumerate() {
            out[g.neg_rank(r)] = c;
        }
        Self {
            group: self.group.clone(),
            coeffs: out,
        }
    }

    /// a * a^(-1). For a ternary element, the coefficient at the identity is
    /// the support size k and the off-identity coefficients count signed
    /// differences.
    pub fn difference_spectrum(&self) -> Result<Self> {
        self.convolve(&self.involution())
    }

    /// Pushes coefficients through a quotient projection: the coefficient at
    /// each coset is the sum over its fiber.
    pub fn project(&self, q: &QuotientData) -> Result<Self> {
        if q.parent() != &self.group {
            return Err(Error::QuotientMismatch);
        }
        let mut out = vec![0i64; q.quotient.order() as usize];
        for (r, &c) in self.coeffs.iter().enumerate() {
            out[q.projection[r]] += c;
        }
        Ok(Self {
            group: q.quotient.clone(),
            coeffs: out,
        })
    }
}

/// Checks the defining equation for a ternary element against a claimed
/// lambda. k is derived from the support, never taken on trust.
pub fn check_sds_equation(a: &GroupRingElement, lambda: i64) -> Result<EquationReport> {
    if let Some((rank, &coeff)) = a.coeffs.iter().enumerate().find(|(_, &c)| c.abs() > 1) {
        return Err(Error::NotASignedSet { rank, coeff });
    }
    let k = a.support_size() as i64;
    let spectrum = a.difference_spectrum()?;
    let mut violations = Vec::new();
    for (r, &c) in spectrum.coeffs.iter().enumerate() {
        let expected = if r == 0 { k } else { lambda };
        if c != expected {
            violations.push((r, c));
        }
    }
    Ok(EquationReport {
        holds: violations.is_empty(),
        k,
        lambda,
        violations,
        spectrum: spectrum.coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::new(&[n]).unwrap()
    }

    fn elems(g: &AbelianGroup, ranks: &[usize]) -> Vec<crate::group::GroupElement> {
        ranks.iter().map(|&r| g.unrank(r).unwrap()).collect()
    }

    /// O(k^2) signed pairwise-difference counting, independent of convolve.
    fn naive_spectrum(a: &GroupRingElement) -> Vec<i64> {
        let g = a.group();
        let v = g.order() as usize;
        let mut out = vec![0i64; v];
        let sup: Vec<(usize, i64)> = a
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(r, &c)| (r, c))
            .collect();
        for &(x, cx) in &sup {
            for &(y, cy) in &sup {
                out[g.add_ranks(x, g.neg_rank(y))] += cx * cy;
            }
        }
        out
    }

    fn random_signed(g: &AbelianGroup, rng: &mut StdRng) -> GroupRingElement {
        let v = g.order() as usize;
        let coeffs: Vec<i64> = (0..v).map(|_| rng.gen_range(-1..=1)).collect();
        GroupRingElement::from_coeffs(g.clone(), coeffs).unwrap()
    }

    #[test]
    fn from_signed_set_examples() {
        let g = z(7);
        let a = GroupRingElement::from_signed_set(
            g.clone(),
            &elems(&g, &[1, 2, 4]),
            &elems(&g, &[3, 5, 6]),
        )
        .unwrap();
        assert_eq!(a.coeffs(), &[0, 1, 1, -1, 1, -1, -1]);

        let zero = GroupRingElement::from_signed_set(g.clone(), &[], &[]).unwrap();
        assert_eq!(zero.coeffs(), &[0; 7]);

        let overlap =
            GroupRingElement::from_signed_set(g.clone(), &elems(&g, &[0]), &elems(&g, &[0]));
        assert!(matches!(overlap, Err(Error::OverlappingSets(1))));
    }

    #[test]
    fn convolve_examples() {
        let g = z(7);
        // delta convolution
        let a = GroupRingElement::from_signed_set(g.clone(), &elems(&g, &[2]), &[]).unwrap();
        let b = GroupRingElement::from_signed_set(g.clone(), &elems(&g, &[3]), &[]).unwrap();
        let c = a.convolve(&b).unwrap();
        let mut expect = [0i64; 7];
        expect[5] = 1;
        assert_eq!(c.coeffs(), &expect[..]);

        // all-ones over Z_3 squares to the constant 3
        let g3 = z(3);
        let ones = GroupRingElement::from_coeffs(g3, vec![1, 1, 1]).unwrap();
        assert_eq!(ones.convolve(&ones).unwrap().coeffs(), &[3, 3, 3]);

        // the (7,6,-1) element
        let d = GroupRingElement::from_coeffs(g, vec![0, 1, 1, -1, 1, -1, -1]).unwrap();
        let spec = d.difference_spectrum().unwrap();
        assert_eq!(spec.coeffs(), &[6, -1, -1, -1, -1, -1, -1]);
    }

    #[test]
    fn convolve_overflow_is_an_error() {
        let g = z(3);
        let big = GroupRingElement::from_coeffs(g, vec![i64::MAX / 2, i64::MAX / 2, 0]).unwrap();
        assert!(matches!(big.convolve(&big), Err(Error::Overflow)));
    }

    #[test]
    fn involution_examples() {
        let g = z(7);
        let at0 = GroupRingElement::from_coeffs(g.clone(), vec![5, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(at0.involution(), at0);

        let at2 = GroupRingElement::from_signed_set(g.clone(), &elems(&g, &[2]), &[]).unwrap();
        let mut expect = [0i64; 7];
        expect[5] = 1;
        assert_eq!(at2.involution().coeffs(), &expect[..]);

        // symmetric element is a fixed point
        let sym = GroupRingElement::from_coeffs(g, vec![2, 1, -1, 3, 3, -1, 1]).unwrap();
        assert_eq!(sym.involution(), sym);
    }

    #[test]
    fn involution_is_involutive_on_random_elements() {
        let mut rng = StdRng::seed_from_u64(3);
        for orders in [vec![11], vec![2, 3, 3], vec![4, 6]] {
            let g = AbelianGroup::new(&orders).unwrap();
            for _ in 0..20 {
                let a = random_signed(&g, &mut rng);
                assert_eq!(a.involution().involution(), a);
            }
        }
    }

    #[test]
    fn check_equation_examples() {
        let g = z(7);
        let d = GroupRingElement::from_coeffs(g.clone(), vec![0, 1, 1, -1, 1, -1, -1]).unwrap();
        assert!(check_sds_equation(&d, -1).unwrap().holds);

        let wrong = check_sds_equation(&d, 0).unwrap();
        assert!(!wrong.holds);
        assert_eq!(wrong.violations.len(), 6);

        // the classical (7,3,1) difference set
        let fano =
            GroupRingElement::from_signed_set(g.clone(), &elems(&g, &[1, 2, 4]), &[]).unwrap();
        assert!(check_sds_equation(&fano, 1).unwrap().holds);

        let not_ternary = GroupRingElement::from_coeffs(g, vec![2, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(
            check_sds_equation(&not_ternary, 0),
            Err(Error::NotASignedSet { rank: 0, coeff: 2 })
        ));
    }

    #[test]
    fn spectrum_at_zero_is_zero() {
        let g = z(11);
        let zero = GroupRingElement::zero(g);
        assert_eq!(zero.difference_spectrum().unwrap().coeffs(), &[0i64; 11]);
    }

    #[test]
    fn spectrum_matches_naive_oracle_random() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let orders = random_orders(&mut rng, 50);
            let g = AbelianGroup::new(&orders).unwrap();
            let a = random_signed(&g, &mut rng);
            let spec = a.difference_spectrum().unwrap();
            assert_eq!(spec.coeffs(), &naive_spectrum(&a)[..]);
        }
    }

    #[test]
    fn spectrum_sum_is_coeff_sum_squared() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..50 {
            let orders = random_orders(&mut rng, 40);
            let g = AbelianGroup::new(&orders).unwrap();
            let a = random_signed(&g, &mut rng);
            let s = a.coeff_sum();
            let total: i64 = a.difference_spectrum().unwrap().coeffs().iter().sum();
            assert_eq!(total, s * s);
        }
    }

    #[test]
    fn convolution_commutative_associative_random() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..50 {
            let orders = random_orders(&mut rng, 30);
            let g = AbelianGroup::new(&orders).unwrap();
            let a = random_signed(&g, &mut rng);
            let b = random_signed(&g, &mut rng);
            let c = random_signed(&g, &mut rng);
            assert_eq!(a.convolve(&b).unwrap(), b.convolve(&a).unwrap());
            let ab_c = a.convolve(&b).unwrap().convolve(&c).unwrap();
            let a_bc = a.convolve(&b.convolve(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
    }

    #[test]
    fn projection_commutes_with_convolution() {
        let mut rng = StdRng::seed_from_u64(17);
        let cases: Vec<(Vec<u64>, Vec<Vec<u64>>)> = vec![
            (vec![20], vec![vec![5]]),
            (vec![20], vec![vec![4]]),
            (vec![2, 3, 3], vec![vec![0, 1, 0]]),
            (vec![2, 3, 3], vec![vec![1, 0, 0]]),
            (vec![4, 6], vec![vec![0, 2]]),
        ];
        for (orders, gens) in cases {
            let g = AbelianGroup::new(&orders).unwrap();
            let gens: Vec<_> = gens.iter().map(|c| g.element(c).unwrap()).collect();
            let q = g.quotient_by_subgroup(&gens).unwrap();
            for _ in 0..20 {
                let a = random_signed(&g, &mut rng);
                let b = random_signed(&g, &mut rng);
                let lhs = a.convolve(&b).unwrap().project(&q).unwrap();
                let rhs = a
                    .project(&q)
                    .unwrap()
                    .convolve(&b.project(&q).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn project_to_trivial_quotient_sums_coefficients() {
        let g = z(7);
        let d = GroupRingElement::from_coeffs(g.clone(), vec![0, 1, 1, -1, 1, -1, -1]).unwrap();
        let q = g.quotient_by_subgroup(&[g.element(&[1]).unwrap()]).unwrap();
        let p = d.project(&q).unwrap();
        assert_eq!(p.coeffs(), &[0]);

        // trivial kernel leaves the element unchanged
        let qid = g.quotient_by_subgroup(&[]).unwrap();
        assert_eq!(d.project(&qid).unwrap().coeffs(), d.coeffs());

        // mismatch is an error
        let other = z(11);
        let qo = other.quotient_by_subgroup(&[]).unwrap();
        assert!(matches!(d.project(&qo), Err(Error::QuotientMismatch)));
    }

    fn random_orders(rng: &mut StdRng, max_v: u64) -> Vec<u64> {
        loop {
            let n = rng.gen_range(1..=3);
            let mut orders = Vec::new();
            let mut v = 1u64;
            for _ in 0..n {
                let o = rng.gen_range(2..=13u64);
                if v * o > max_v {
                    continue;
                }
                v *= o;
                orders.push(o);
            }
            if !orders.is_empty() {
                return orders;
            }
        }
    }
}
