//! Finite abelian groups as direct products of cyclic factors, together with
//! coset quotients and multiplier orbits.
//!
//! Elements are coordinate vectors, one coordinate per cyclic factor, and are
//! ranked by the mixed-radix bijection in which the last coordinate varies
//! fastest. The identity always has rank 0, and rank order agrees with
//! lexicographic order on coordinates.

use crate::arith;
use crate::error::{Error, Result};

/// A finite abelian group Z_{o_1} x ... x Z_{o_m}.
///
/// Factor orders are stored exactly as supplied: `[2, 3, 3]` and `[6, 3]`
/// present isomorphic groups but rank elements differently, and no
/// canonicalization to invariant factors is performed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
    strides: Vec<u64>,
    v: u64,
    exponent: u64,
}

/// An element of an [`AbelianGroup`], as a coordinate vector with
/// `coords[i] < orders[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A quotient G/K by a subgroup K, with the coset projection map.
#[derive(Debug, Clone)]
pub struct QuotientData {
    /// The quotient group, of order w = v / kernel_order. The trivial
    /// quotient (w = 1) is presented as a group with no factors.
    pub quotient: AbelianGroup,
    /// Parent element rank -> quotient element rank. A surjective group
    /// homomorphism with every fiber of size `kernel_order`.
    pub projection: Vec<usize>,
    /// |K|, written d elsewhere; d * w = v.
    pub kernel_order: u64,
    parent: AbelianGroup,
}

impl QuotientData {
    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }
}

impl AbelianGroup {
    /// Builds a group from cyclic factor orders. Every order must be >= 2 and
    /// the list must be nonempty.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("empty factor list".into()));
        }
        if let Some(&bad) = orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidGroup(format!("factor order {bad} < 2")));
        }
        let v: u64 = orders.iter().product();
        if v > 1_000_000 {
            return Err(Error::InvalidGroup(format!("order {v} too large")));
        }
        Ok(Self::from_orders_unchecked(orders.to_vec()))
    }

    /// The order-1 group with no factors; only ever produced as a quotient.
    pub(crate) fn trivial() -> Self {
        Self::from_orders_unchecked(Vec::new())
    }

    fn from_orders_unchecked(orders: Vec<u64>) -> Self {
        let v = orders.iter().product::<u64>().max(1);
        let exponent = orders.iter().copied().fold(1, arith::lcm).max(1);
        // strides[i] = product of orders after i; last coordinate varies fastest
        let mut strides = vec![1u64; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        Self {
            orders,
            strides,
            v,
            exponent,
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Group order v.
    pub fn order(&self) -> u64 {
        self.v
    }

    /// lcm of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// True when the group is presented with a single cyclic factor.
    pub fn is_cyclic(&self) -> bool {
        self.orders.len() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.orders.len()],
        }
    }

    /// Validates a coordinate vector and wraps it as an element.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        for (i, (&c, &o)) in coords.iter().zip(&self.orders).enumerate() {
            if c >= o {
                return Err(Error::InvalidElement(format!(
                    "coordinate {i} is {c}, must be < {o}"
                )));
            }
        }
        Ok(GroupElement {
            coords: coords.to_vec(),
        })
    }

    pub fn rank(&self, e: &GroupElement) -> usize {
        debug_assert_eq!(e.coords.len(), self.orders.len());
        e.coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c * s)
            .sum::<u64>() as usize
    }

    pub fn unrank(&self, rank: usize) -> Result<GroupElement> {
        if rank as u64 >= self.v {
            return Err(Error::RankOutOfRange { rank, v: self.v });
        }
        let mut coords = vec![0u64; self.orders.len()];
        let mut r = rank as u64;
        for (i, &s) in self.strides.iter().enumerate() {
            coords[i] = r / s;
            r %= s;
        }
        Ok(GroupElement { coords })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.orders)
            .map(|((&x, &y), &o)| (x + y) % o)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &o)| if x == 0 { 0 } else { o - x })
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// The multiplier action g -> t*g, coordinatewise; t may be any integer.
    pub fn scale(&self, t: i64, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &o)| {
                let tm = t.rem_euclid(o as i64) as u64;
                tm * x % o
            })
            .collect();
        GroupElement { coords }
    }

    /// Rank-level addition, used in tight loops.
    pub fn add_ranks(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        for (&o, &s) in self.orders.iter().zip(&self.strides) {
            let (ca, cb) = (a / s, b / s);
            a %= s;
            b %= s;
            out += (ca + cb) % o * s;
        }
        out as usize
    }

    /// Rank-level negation.
    pub fn neg_rank(&self, a: usize) -> usize {
        let mut a = a as u64;
        let mut out = 0u64;
        for (&o, &s) in self.orders.iter().zip(&self.strides) {
            let c = a / s;
            a %= s;
            if c != 0 {
                out += (o - c) * s;
            }
        }
        out as usize
    }

    /// Rank-level multiplier action.
    pub fn scale_rank(&self, t: i64, a: usize) -> usize {
        let mut a = a as u64;
        let mut out = 0u64;
        for (&o, &s) in self.orders.iter().zip(&self.strides) {
            let c = a / s;
            a %= s;
            let tm = t.rem_euclid(o as i64) as u64;
            out += tm * c % o * s;
        }
        out as usize
    }

    /// All elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.v as usize).map(|r| self.unrank(r).expect("rank in range"))
    }

    /// The subgroup generated by `gens`, as a sorted list of ranks.
    pub fn subgroup_closure(&self, gens: &[GroupElement]) -> Result<Vec<usize>> {
        for g in gens {
            self.element(g.coords())?;
        }
        let gen_ranks: Vec<usize> = gens.iter().map(|g| self.rank(g)).collect();
        let mut member = vec![false; self.v as usize];
        member[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in &gen_ranks {
                let y = self.add_ranks(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        Ok((0..self.v as usize).filter(|&r| member[r]).collect())
    }

    /// Quotient of the group by the subgroup generated by `gens`.
    ///
    /// The cyclic structure of the coset group is recovered by greedily
    /// extracting elements of maximal order, which yields the invariant
    /// factors in decreasing order; the projection map is a homomorphism
    /// onto the resulting coordinate group.
    pub fn quotient_by_subgroup(&self, gens: &[GroupElement]) -> Result<QuotientData> {
        let kernel = self.subgroup_closure(gens)?;
        let d = kernel.len() as u64;
        let v = self.v as usize;

        if d == 1 {
            return Ok(QuotientData {
                quotient: self.clone(),
                projection: (0..v).collect(),
                kernel_order: 1,
                parent: self.clone(),
            });
        }

        // Label cosets by their least member; an ascending scan meets each
        // coset at its minimum first.
        let mut coset_index = vec![usize::MAX; v];
        let mut reps: Vec<usize> = Vec::new();
        for r in 0..v {
            if coset_index[r] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(r);
            for &k in &kernel {
                coset_index[self.add_ranks(r, k)] = id;
            }
        }
        let w = reps.len();
        debug_assert_eq!(w as u64 * d, self.v);

        if w == 1 {
            return Ok(QuotientData {
                quotient: AbelianGroup::trivial(),
                projection: vec![0; v],
                kernel_order: d,
                parent: self.clone(),
            });
        }

        let cadd = |a: usize, b: usize| coset_index[self.add_ranks(reps[a], reps[b])];

        // Greedy invariant-factor extraction over the coset group.
        let mut in_s = vec![false; w];
        in_s[0] = true;
        let mut s_list = vec![0usize];
        let mut expr: Vec<Vec<u64>> = vec![Vec::new(); w];
        let mut factors: Vec<u64> = Vec::new();

        while s_list.len() < w {
            let ord_mod_s = |q: usize| -> u64 {
                let mut acc = q;
                let mut m = 1u64;
                while !in_s[acc] {
                    acc = cadd(acc, q);
                    m += 1;
                }
                m
            };
            let ord_full = |q: usize| -> u64 {
                let mut acc = q;
                let mut m = 1u64;
                while acc != 0 {
                    acc = cadd(acc, q);
                    m += 1;
                }
                m
            };
            let (q_star, m) = (0..w)
                .filter(|&q| !in_s[q])
                .map(|q| (q, ord_mod_s(q)))
                .max_by_key(|&(q, m)| (m, std::cmp::Reverse(q)))
                .expect("strict subgroup leaves a coset");

            // The chosen coset contains a lift whose order in the full coset
            // group equals its order modulo S; search the coset for it.
            let b = s_list
                .iter()
                .map(|&s| cadd(q_star, s))
                .find(|&cand| ord_full(cand) == m)
                .expect("maximal-order coset admits an exact-order lift");

            let olds: Vec<(usize, Vec<u64>)> =
                s_list.iter().map(|&s| (s, expr[s].clone())).collect();
            for &(s, ref old) in &olds {
                let mut e = old.clone();
                e.push(0);
                expr[s] = e;
            }
            let mut ab = 0usize;
            for a in 1..m {
                ab = cadd(ab, b);
                for (s, old) in &olds {
                    let e2 = cadd(*s, ab);
                    let mut coords = old.clone();
                    coords.push(a);
                    debug_assert!(!in_s[e2]);
                    expr[e2] = coords;
                    in_s[e2] = true;
                    s_list.push(e2);
                }
            }
            factors.push(m);
        }

        let quotient = AbelianGroup::from_orders_unchecked(factors);
        let projection = (0..v)
            .map(|r| {
                quotient.rank(&GroupElement {
                    coords: expr[coset_index[r]].clone(),
                })
            })
            .collect();
        Ok(QuotientData {
            quotient,
            projection,
            kernel_order: d,
            parent: self.clone(),
        })
    }

    /// Orbits of the map g -> t*g on the whole group, for a unit t modulo the
    /// exponent. Each orbit is sorted, and orbits are ordered by least member.
    pub fn multiplier_orbits(&self, t: i64) -> Result<Vec<Vec<usize>>> {
        let e = self.exponent;
        let tm = t.rem_euclid(e as i64) as u64;
        if arith::gcd(tm, e) != 1 {
            return Err(Error::NotAUnit { t, e });
        }
        let v = self.v as usize;
        let mut seen = vec![false; v];
        let mut orbits = Vec::new();
        for r in 0..v {
            if seen[r] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = r;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.scale_rank(t, x);
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// Every unit t modulo the exponent paired with its orbit count; a small
    /// search heuristic (fewer orbits means a smaller sign space).
    pub fn units_with_orbit_structure(&self) -> Vec<(u64, usize)> {
        let e = self.exponent;
        (1..e.max(2))
            .filter(|&t| arith::gcd(t, e) == 1)
            .map(|t| {
                let count = self
                    .multiplier_orbits(t as i64)
                    .expect("unit by construction")
                    .len();
                (t, count)
            })
            .collect()
    }
}
