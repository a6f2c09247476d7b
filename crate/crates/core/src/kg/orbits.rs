//! Monomial orbits of symmetric powers of the r-fold permutation module.
//!
//! A monomial is an exponent assignment to the variables w_{j,i} (block j,
//! point i); the group acts through the points. The scan engine enumerates
//! all monomials of a degree, keeps the lexicographically smallest member
//! of each orbit (position-major variable order), and classifies the orbit:
//! block-constant singletons give trivial summands, everything else must be
//! free for the translation subgroup and gives a projective summand. Any
//! other stabilizer shape is reported as a falsification, never accepted.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::census::{monomial_count, DegreeCensus};
use super::{KgError, Representation};
use crate::agl::{AffineElement, AffineGroup};
use crate::fp::MatFp;

/// An exponent vector over the variables w_{j,i}, stored position-major:
/// `exps[i·r + j]` is the exponent of block j at point i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    p: u64,
    blocks: usize,
    exps: Vec<u64>,
}

impl Monomial {
    pub fn new(p: u64, blocks: usize, exps: Vec<u64>) -> Self {
        assert_eq!(exps.len(), p as usize * blocks);
        Self { p, blocks, exps }
    }

    /// Build from one exponent row per block, each of length p.
    pub fn from_block_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let blocks = rows.len();
        let mut exps = vec![0u64; p as usize * blocks];
        for (j, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), p as usize);
            for (i, &e) in row.iter().enumerate() {
                exps[i * blocks + j] = e;
            }
        }
        Self { p, blocks, exps }
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().sum()
    }

    pub fn exp(&self, block: usize, point: usize) -> u64 {
        self.exps[point * self.blocks + block]
    }

    pub fn block_rows(&self) -> Vec<Vec<u64>> {
        (0..self.blocks)
            .map(|j| (0..self.p as usize).map(|i| self.exp(j, i)).collect())
            .collect()
    }

    /// The image under a group element: the exponent at point i comes from
    /// the preimage point g⁻¹(i).
    pub fn apply(&self, group: &AffineGroup, g: AffineElement) -> Self {
        let inv = group.as_permutation(group.inverse(g));
        let mut exps = vec![0u64; self.exps.len()];
        for i in 0..self.p as usize {
            for j in 0..self.blocks {
                exps[i * self.blocks + j] = self.exps[inv[i] * self.blocks + j];
            }
        }
        Self {
            p: self.p,
            blocks: self.blocks,
            exps,
        }
    }

    /// Constant within every block across all points.
    pub fn is_block_constant(&self) -> bool {
        let p = self.p as usize;
        (1..p).all(|i| {
            (0..self.blocks).all(|j| self.exps[i * self.blocks + j] == self.exps[j])
        })
    }
}

/// Classification of one orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrbitKind {
    /// A block-constant singleton orbit: a trivial summand.
    TrivialSummand,
    /// A translation-free orbit: a projective summand with the given
    /// multiplicity of each character's cover.
    ProjectiveSummand { multiplicities: BTreeMap<u64, u64> },
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitClass {
    pub representative: Vec<Vec<u64>>,
    pub orbit_size: u64,
    pub stabilizer_order: u64,
    pub q_free: bool,
    pub kind: OrbitKind,
}

/// Classify the orbit of one monomial: enumerate the orbit, compute the
/// stabilizer, enforce the dichotomy, and compute projective multiplicities
/// as hom-space dimensions on the orbit module (cross-checked against the
/// stabilizer character condition).
pub fn classify_monomial(
    group: &Arc<AffineGroup>,
    monomial: &Monomial,
) -> Result<OrbitClass, KgError> {
    let f = group.field();
    let p = group.p();
    let mut orbit: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![monomial.clone()];
    orbit.insert(monomial.clone());
    while let Some(m) = frontier.pop() {
        for g in [group.sigma(), group.tau()] {
            let image = m.apply(group, g);
            if orbit.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    let stabilizer: Vec<AffineElement> = group
        .elements()
        .iter()
        .copied()
        .filter(|&g| monomial.apply(group, g) == *monomial)
        .collect();
    let orbit_size = orbit.len() as u64;
    let stab_order = stabilizer.len() as u64;
    if orbit_size * stab_order != group.order() {
        return Err(KgError::Falsified(format!(
            "orbit size {orbit_size} times stabilizer order {stab_order} misses the group order"
        )));
    }
    let q_free = stabilizer.iter().all(|g| g.a != 1 || g.b == 0);
    let block_constant = monomial.is_block_constant();

    if block_constant {
        if orbit_size != 1 {
            return Err(KgError::Falsified(
                "a block-constant monomial must be a fixed point".into(),
            ));
        }
        return Ok(OrbitClass {
            representative: monomial.block_rows(),
            orbit_size,
            stabilizer_order: stab_order,
            q_free,
            kind: OrbitKind::TrivialSummand,
        });
    }
    if !q_free {
        return Err(KgError::Falsified(format!(
            "non-constant orbit of {:?} has a translation in its stabilizer",
            monomial.block_rows()
        )));
    }

    // hom-space multiplicities on the orbit permutation module
    let members: Vec<&Monomial> = orbit.iter().collect();
    let index_of = |m: &Monomial| members.binary_search_by(|q| (*q).cmp(m)).unwrap();
    let n = members.len();
    let act = |g: AffineElement| {
        MatFp::from_fn(f, n, n, |row, col| {
            u64::from(index_of(&members[col].apply(group, g)) == row)
        })
    };
    let sigma_x = act(group.sigma());
    let tau_x = act(group.tau());
    let mut multiplicities = BTreeMap::new();
    let e = stab_order;
    for j in 0..p - 1 {
        // functionals φ with φ∘σ = φ and φ∘τ = α^j·φ
        let value = f.pow(group.alpha(), j);
        let id = MatFp::identity(f, n);
        let sys = MatFp::vstack(&[
            &sigma_x.transpose().sub(&id),
            &tau_x.transpose().sub(&id.scale(value)),
        ]);
        let mult = (n - sys.rank()) as u64;
        let predicted = u64::from(j % e == 0);
        if mult != predicted {
            return Err(KgError::Falsified(format!(
                "orbit multiplicity of character {j} is {mult}, stabilizer of order {e} predicts {predicted}"
            )));
        }
        if mult > 0 {
            multiplicities.insert(j, mult);
        }
    }
    let accounted: u64 = multiplicities.values().sum::<u64>() * p;
    if accounted != orbit_size {
        return Err(KgError::Falsified(format!(
            "projective multiplicities account for dimension {accounted}, orbit has {orbit_size}"
        )));
    }
    Ok(OrbitClass {
        representative: monomial.block_rows(),
        orbit_size,
        stabilizer_order: stab_order,
        q_free,
        kind: OrbitKind::ProjectiveSummand { multiplicities },
    })
}

struct ChunkAcc {
    trivial: u64,
    free: BTreeMap<u64, u64>,
    reps: Vec<Vec<u64>>,
}

fn merge(mut a: ChunkAcc, b: ChunkAcc) -> ChunkAcc {
    a.trivial += b.trivial;
    for (e, n) in b.free {
        *a.free.entry(e).or_insert(0) += n;
    }
    a.reps.extend(b.reps);
    a
}

/// Enumerate compositions of `total` into `parts` nonnegative parts,
/// invoking the callback on each. Returns early if the callback errors.
fn for_each_composition<E>(
    total: u64,
    parts: usize,
    mut f: impl FnMut(&[u64]) -> Result<(), E>,
) -> Result<(), E> {
    if parts == 0 {
        if total == 0 {
            f(&[])?;
        }
        return Ok(());
    }
    let mut v = vec![0u64; parts];
    v[0] = total;
    loop {
        f(&v)?;
        if v[parts - 1] == total {
            return Ok(());
        }
        let k = (0..parts - 1).rev().find(|&k| v[k] > 0).expect("sum is positive");
        let tail = v[parts - 1];
        v[parts - 1] = 0;
        v[k] -= 1;
        v[k + 1] = tail + 1;
    }
}

fn scan_chunk(
    group: &AffineGroup,
    r: usize,
    d: u64,
    x0: u64,
    collect: bool,
    movers: &[(u64, u64, Vec<usize>)],
) -> Result<ChunkAcc, KgError> {
    let p = group.p() as usize;
    let n = p * r;
    let mut acc = ChunkAcc {
        trivial: 0,
        free: BTreeMap::new(),
        reps: Vec::new(),
    };
    let mut exps = vec![0u64; n];
    exps[0] = x0;
    let mut cols = vec![0u64; p];
    for_each_composition(d - x0, n - 1, |rest| -> Result<(), KgError> {
        exps[1..].copy_from_slice(rest);
        for (i, col) in cols.iter_mut().enumerate() {
            let mut c = 0u64;
            for j in 0..r {
                c = (c << 8) | exps[i * r + j];
            }
            *col = c;
        }
        let c0 = cols[0];
        if cols.iter().skip(1).all(|&c| c == c0) {
            // block-constant fixed point
            acc.trivial += 1;
            if collect {
                acc.reps.push(exps.clone());
            }
            return Ok(());
        }
        if cols.iter().any(|&c| c < c0) {
            return Ok(()); // some translate is lexicographically smaller
        }
        let mut stab_count = 0u64;
        let mut a_mask = 0u64;
        let mut q_stab = false;
        'movers: for (a, b, inv) in movers {
            for i in 0..p {
                let own = cols[i];
                let img = cols[inv[i]];
                if img < own {
                    return Ok(()); // not the canonical representative
                }
                if img > own {
                    continue 'movers;
                }
            }
            stab_count += 1;
            a_mask |= 1 << (a - 1);
            if *a == 1 {
                q_stab = true;
                let _ = b;
            }
        }
        if q_stab {
            return Err(KgError::Falsified(format!(
                "non-constant monomial {exps:?} (degree {d}) is fixed by a translation"
            )));
        }
        let e = stab_count + 1;
        if u64::from(a_mask.count_ones()) != stab_count {
            return Err(KgError::Falsified(format!(
                "two stabilizer elements of {exps:?} share a scaling part"
            )));
        }
        if !(group.p() - 1).is_multiple_of(e) {
            return Err(KgError::Falsified(format!(
                "stabilizer order {e} of {exps:?} does not divide the scaling order"
            )));
        }
        *acc.free.entry(e).or_insert(0) += 1;
        if collect {
            acc.reps.push(exps.clone());
        }
        Ok(())
    })?;
    Ok(acc)
}

/// Result of scanning one degree: the orbit census and, when requested,
/// the canonical representatives with their full classification.
pub struct ScanOutcome {
    pub census: DegreeCensus,
    pub orbits: Vec<OrbitClass>,
}

/// Enumerate the degree-d monomials, keep canonical orbit representatives,
/// and tally the census. Chunks over the first exponent run in parallel;
/// the merge order is fixed, so results are independent of thread count.
pub fn scan_degree(
    group: &Arc<AffineGroup>,
    r: u64,
    d: u64,
    collect: bool,
) -> Result<ScanOutcome, KgError> {
    assert!(r >= 1);
    assert!(d < 256, "exponents are packed into bytes");
    assert!(r <= 8, "blocks are packed into bytes");
    let movers: Vec<(u64, u64, Vec<usize>)> = group
        .elements()
        .iter()
        .filter(|g| **g != group.identity())
        .map(|&g| (g.a, g.b, group.as_permutation(group.inverse(g))))
        .collect();
    let chunks: Vec<Result<ChunkAcc, KgError>> = (0..=d)
        .into_par_iter()
        .map(|x0| scan_chunk(group, r as usize, d, x0, collect, &movers))
        .collect();
    let mut acc = ChunkAcc {
        trivial: 0,
        free: BTreeMap::new(),
        reps: Vec::new(),
    };
    for chunk in chunks {
        acc = merge(acc, chunk?);
    }
    let census = DegreeCensus {
        d,
        trivial: acc.trivial,
        free_by_stab_order: acc.free,
    };
    if census.accounted_dim(group.p()) != monomial_count(group.p(), r, d) {
        return Err(KgError::Falsified(format!(
            "scan census of degree {d} does not account for the whole space"
        )));
    }
    let mut orbits = Vec::with_capacity(acc.reps.len());
    for exps in acc.reps {
        let m = Monomial::new(group.p(), r as usize, exps);
        orbits.push(classify_monomial(group, &m)?);
    }
    Ok(ScanOutcome { census, orbits })
}

/// Which engine computes a decomposition report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Explicit monomial enumeration.
    Scan,
    /// Generating-function census.
    Census,
    /// Run both and require exact agreement.
    Both,
}

/// Degreewise decomposition of the symmetric power: trivial summand count
/// and projective multiplicities per character, with the dimension check
/// enforced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompReport {
    pub p: u64,
    pub r: u64,
    pub d: u64,
    #[serde(rename = "dimBd")]
    pub dim_bd: u64,
    pub trivial: u64,
    pub proj: BTreeMap<u64, u64>,
}

pub fn report_from_census(p: u64, r: u64, census: &DegreeCensus) -> DecompReport {
    DecompReport {
        p,
        r,
        d: census.d,
        dim_bd: monomial_count(p, r, census.d),
        trivial: census.trivial,
        proj: census.projective_multiplicities(p),
    }
}

pub fn decompose_degree(
    group: &Arc<AffineGroup>,
    r: u64,
    d: u64,
    engine: Engine,
) -> Result<DecompReport, KgError> {
    let p = group.p();
    let from_scan = || -> Result<DegreeCensus, KgError> { Ok(scan_degree(group, r, d, false)?.census) };
    let from_census = || super::census::census(p, r, d).pop().expect("census reaches d");
    let census = match engine {
        Engine::Scan => from_scan()?,
        Engine::Census => from_census(),
        Engine::Both => {
            let a = from_scan()?;
            let b = from_census();
            if a != b {
                return Err(KgError::Falsified(format!(
                    "scan and census disagree at degree {d}: {a:?} vs {b:?}"
                )));
            }
            a
        }
    };
    Ok(report_from_census(p, r, &census))
}

/// The degree-d part of the symmetric algebra of the r-fold permutation
/// module, as a permutation representation on monomials.
pub fn symmetric_power_rep(group: &Arc<AffineGroup>, r: u64, d: u64) -> Representation {
    let f = group.field();
    let n = group.p() as usize * r as usize;
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for_each_composition::<()>(d, n, |exps| {
        basis.push(exps.to_vec());
        Ok(())
    })
    .unwrap();
    basis.sort();
    let index: BTreeMap<&[u64], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let act = |g: AffineElement| {
        let inv = group.as_permutation(group.inverse(g));
        let mut m = MatFp::zeros(f, basis.len(), basis.len());
        for (col, exps) in basis.iter().enumerate() {
            let mut image = vec![0u64; n];
            for i in 0..group.p() as usize {
                for j in 0..r as usize {
                    image[i * r as usize + j] = exps[inv[i] * r as usize + j];
                }
            }
            let row = index[image.as_slice()];
            m.set(row, col, 1);
        }
        m
    };
    let sigma = act(group.sigma());
    let tau = act(group.tau());
    Representation::new(Arc::clone(group), sigma, tau).expect("permutation action satisfies the relations")
}

/// Multiplicity of each character in the socle of the degree-d symmetric
/// power is not needed; what the positivity criteria consume is the list of
/// distinct stabilizer classes present at each degree, which the census
/// provides. This helper materializes the orbit module of a subgroup class
/// for per-class computations.
pub fn class_module(group: &Arc<AffineGroup>, stab_order: u64) -> Representation {
    let sub = group.scaling_subgroup(stab_order);
    Representation::coset_permutation(Arc::clone(group), &sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: u64) -> Arc<AffineGroup> {
        AffineGroup::new(p).unwrap()
    }

    #[test]
    fn block_constant_is_trivial_summand() {
        let group = g(5);
        let m = Monomial::from_block_rows(5, &[vec![1, 1, 1, 1, 1]]);
        let class = classify_monomial(&group, &m).unwrap();
        assert_eq!(class.kind, OrbitKind::TrivialSummand);
        assert_eq!(class.orbit_size, 1);
        assert_eq!(class.stabilizer_order, 20);
    }

    #[test]
    fn single_variable_orbit() {
        let group = g(5);
        let m = Monomial::from_block_rows(5, &[vec![1, 0, 0, 0, 0]]);
        let class = classify_monomial(&group, &m).unwrap();
        assert_eq!(class.orbit_size, 5);
        assert_eq!(class.stabilizer_order, 4);
        assert!(class.q_free);
        assert_eq!(
            class.kind,
            OrbitKind::ProjectiveSummand {
                multiplicities: BTreeMap::from([(0, 1)])
            }
        );
    }

    #[test]
    fn free_orbit_collects_every_projective() {
        let group = g(5);
        let m = Monomial::from_block_rows(5, &[vec![2, 1, 0, 0, 0]]);
        let class = classify_monomial(&group, &m).unwrap();
        assert_eq!(class.orbit_size, 20);
        assert_eq!(class.stabilizer_order, 1);
        assert_eq!(
            class.kind,
            OrbitKind::ProjectiveSummand {
                multiplicities: BTreeMap::from([(0, 1), (1, 1), (2, 1), (3, 1)])
            }
        );
    }

    #[test]
    fn scan_matches_census_small_grid() {
        for p in [3u64, 5] {
            let group = g(p);
            for r in [1u64, 2] {
                let censuses = super::super::census::census(p, r, 6);
                for d in 0..=6u64 {
                    let scan = scan_degree(&group, r, d, false).unwrap();
                    assert_eq!(scan.census, censuses[d as usize], "p={p} r={r} d={d}");
                }
            }
        }
    }

    #[test]
    fn scan_collects_consistent_orbits() {
        let group = g(5);
        let outcome = scan_degree(&group, 1, 5, true).unwrap();
        // exactly one block-constant representative at degree p
        let trivial: Vec<_> = outcome
            .orbits
            .iter()
            .filter(|o| o.kind == OrbitKind::TrivialSummand)
            .collect();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].representative, vec![vec![1, 1, 1, 1, 1]]);
        // orbit sizes add up to the number of monomials
        let total: u64 = outcome.orbits.iter().map(|o| o.orbit_size).sum();
        assert_eq!(total, monomial_count(5, 1, 5));
    }

    #[test]
    fn decompose_engines_agree() {
        let group = g(5);
        for d in 0..=6 {
            let both = decompose_degree(&group, 2, d, Engine::Both).unwrap();
            assert_eq!(both.dim_bd, monomial_count(5, 2, d));
        }
    }

    #[test]
    fn symmetric_power_dimensions() {
        let group = g(3);
        for (r, d, expect) in [(1u64, 0u64, 1usize), (1, 2, 6), (2, 2, 21)] {
            assert_eq!(symmetric_power_rep(&group, r, d).dim(), expect);
        }
    }

    #[test]
    fn degree_one_orbit_module_matches_permutation_rep() {
        let group = g(5);
        let bd = symmetric_power_rep(&group, 1, 1);
        let perm = Representation::permutation(Arc::clone(&group));
        assert_eq!(bd.socle().unwrap(), perm.socle().unwrap());
    }
}
