//! Closed-form census of monomial orbits by stabilizer class.
//!
//! A monomial in r blocks of p variables is a labelling of the p points of
//! the affine line by exponent columns; the group permutes points. Every
//! orbit either consists of a single block-constant monomial (stabilizer
//! the whole group) or is free for the translation subgroup, in which case
//! the stabilizer is conjugate to the unique scaling subgroup of its order.
//! Counting monomials fixed by each scaling subgroup — a product of small
//! generating functions — therefore determines the number of orbits of
//! every stabilizer order by divisor inversion. The scan engine in
//! [`super::orbits`] recomputes the same numbers by explicit enumeration;
//! the two must agree exactly.

use std::collections::BTreeMap;

use serde::Serialize;

/// Orbit counts of one degree: block-constant singletons plus, per divisor
/// e of p−1, the number of translation-free orbits with stabilizer of
/// order e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCensus {
    pub d: u64,
    pub trivial: u64,
    pub free_by_stab_order: BTreeMap<u64, u64>,
}

impl DegreeCensus {
    /// Multiplicity of the projective cover of the j-th character: one per
    /// free orbit whose stabilizer order divides j.
    pub fn projective_multiplicities(&self, p: u64) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for j in 0..p - 1 {
            let mult: u64 = self
                .free_by_stab_order
                .iter()
                .filter(|&(&e, _)| j % e == 0)
                .map(|(_, &n)| n)
                .sum();
            out.insert(j, mult);
        }
        out
    }

    /// Total dimension accounted for: a_d + p·Σ_j m_{d,j}.
    pub fn accounted_dim(&self, p: u64) -> u64 {
        let proj: u64 = self.projective_multiplicities(p).values().sum();
        self.trivial + p * proj
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial coefficient overflows the exact counter")
            / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient exceeds the exact counting range")
}

/// Number of degree-d monomials in r·p variables.
pub fn monomial_count(p: u64, r: u64, d: u64) -> u64 {
    binomial(d + r * p - 1, r * p - 1)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|e| n.is_multiple_of(*e)).collect();
    out.sort_unstable();
    out
}

/// Coefficients up to degree `max` of Π over orbit sizes s of
/// Σ_c C(c+r−1, r−1)·x^{s·c}: the number of labellings of the orbit set by
/// exponent columns of the given total weight.
fn fixed_point_series(orbit_sizes: &[u64], r: u64, max: u64) -> Vec<u128> {
    let mut acc = vec![0u128; (max + 1) as usize];
    acc[0] = 1;
    for &s in orbit_sizes {
        let mut next = vec![0u128; (max + 1) as usize];
        for (deg, &coeff) in acc.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            let mut c = 0u64;
            loop {
                let shift = deg as u64 + s * c;
                if shift > max {
                    break;
                }
                next[shift as usize] += coeff * binomial(c + r - 1, r - 1) as u128;
                c += 1;
            }
        }
        acc = next;
    }
    acc
}

/// Orbit census for every degree d ≤ max_degree.
pub fn census(p: u64, r: u64, max_degree: u64) -> Vec<DegreeCensus> {
    let divs = divisors(p - 1);
    // monomials fixed by the scaling subgroup of order e: the subgroup
    // fixes 0 and splits the nonzero points into (p−1)/e orbits of size e
    let mut fixed: BTreeMap<u64, Vec<u128>> = BTreeMap::new();
    for &e in &divs {
        let mut sizes = vec![1u64];
        sizes.extend(std::iter::repeat_n(e, ((p - 1) / e) as usize));
        fixed.insert(e, fixed_point_series(&sizes, r, max_degree));
    }
    let trivial_series = fixed_point_series(&[p], r, max_degree);

    let mut out = Vec::with_capacity((max_degree + 1) as usize);
    for d in 0..=max_degree {
        let a_d = u64::try_from(trivial_series[d as usize]).expect("count fits u64");
        // weighted counts T_e = Σ_{e | f} N_f·(p−1)/f
        let mut weighted: BTreeMap<u64, u64> = BTreeMap::new();
        for &e in &divs {
            let fixed_count = u64::try_from(fixed[&e][d as usize]).expect("count fits u64");
            let t = fixed_count
                .checked_sub(a_d)
                .expect("block-constant monomials are fixed by every subgroup");
            let t = if e == 1 {
                assert_eq!(t % p, 0, "non-constant monomials come in translation orbits");
                t / p
            } else {
                t
            };
            weighted.insert(e, t);
        }
        // divisor inversion, largest stabilizer first
        let mut free_by_stab_order = BTreeMap::new();
        for &e in divs.iter().rev() {
            let mut rest = 0u64;
            for &f in divs.iter().filter(|&&f| f > e && f % e == 0) {
                rest += free_by_stab_order.get(&f).copied().unwrap_or(0) * ((p - 1) / f);
            }
            let lhs = weighted[&e]
                .checked_sub(rest)
                .expect("fixed counts dominate the contributions of larger stabilizers");
            let unit = (p - 1) / e;
            assert_eq!(lhs % unit, 0, "orbit counts must be integers");
            let n_e = lhs / unit;
            if n_e > 0 {
                free_by_stab_order.insert(e, n_e);
            }
        }
        let census = DegreeCensus {
            d,
            trivial: a_d,
            free_by_stab_order,
        };
        assert_eq!(
            census.accounted_dim(p),
            monomial_count(p, r, d),
            "census must account for the whole degree"
        );
        out.push(census);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(20, 5), 15504);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(monomial_count(5, 1, 3), binomial(7, 4));
    }

    #[test]
    fn degree_zero_is_one_trivial_orbit() {
        for (p, r) in [(3, 1), (5, 2), (7, 3)] {
            let c = census(p, r, 0);
            assert_eq!(c[0].trivial, 1);
            assert!(c[0].free_by_stab_order.is_empty());
        }
    }

    #[test]
    fn p5_r1_small_degrees() {
        let c = census(5, 1, 5);
        // degree 1: a single orbit of the five variables, stabilizer of
        // order 4 (a point stabilizer)
        assert_eq!(c[1].trivial, 0);
        assert_eq!(c[1].free_by_stab_order, BTreeMap::from([(4, 1)]));
        // degree 5 sees the first block-constant monomial beyond degree 0
        assert_eq!(c[5].trivial, 1);
        // dimensions add up at every degree
        for d in 0..=5u64 {
            assert_eq!(c[d as usize].accounted_dim(5), monomial_count(5, 1, d));
        }
    }

    #[test]
    fn multiplicities_example() {
        // degree 1 at p = 5: the orbit module is the permutation module,
        // whose projective part is the cover of the trivial character only
        let c = census(5, 1, 1);
        let mults = c[1].projective_multiplicities(5);
        assert_eq!(mults[&0], 1);
        assert_eq!(mults[&1], 0);
        assert_eq!(mults[&2], 0);
        assert_eq!(mults[&3], 0);
    }

    #[test]
    fn dimension_bookkeeping_grid() {
        for p in [3u64, 5, 7] {
            for r in [1u64, 2] {
                for (d, census) in census(p, r, 8).iter().enumerate() {
                    assert_eq!(
                        census.accounted_dim(p),
                        monomial_count(p, r, d as u64),
                        "p={p} r={r} d={d}"
                    );
                }
            }
        }
    }
}
