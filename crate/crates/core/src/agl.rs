//! The group of affine maps x ↦ ax + b on F_p, its translation and scaling
//! subgroups, and a generic multiplication-table group layer.
//!
//! Elements are stored as (a, b) pairs; composition is two modular
//! operations and permutations are materialized on demand. The module also
//! hosts the full-table 1-cocycle solver used as the slow cross-check for
//! first cohomology.

use std::sync::Arc;

use thiserror::Error;

use crate::fp::{MatFp, PrimeField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("multiplication table is not a group: {0}")]
    BadTable(String),
    #[error("cocycle system exceeds the cap ({0} unknowns); use the spectral route")]
    CapExceeded(usize),
}

/// An affine map x ↦ ax + b with a ≠ 0, entries canonical mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    pub a: u64,
    pub b: u64,
}

impl AffineElement {
    pub fn apply(&self, p: u64, x: u64) -> u64 {
        (self.a * x + self.b) % p
    }
}

/// The full affine group on F_p for an odd prime p, of order p(p−1), with
/// its translation subgroup Q (a = 1, normal, cyclic of order p) and
/// scaling subgroup Γ (b = 0, cyclic of order p−1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineGroup {
    field: PrimeField,
    p: u64,
    alpha: u64,
    elements: Vec<AffineElement>,
    dlog: Vec<u64>,
}

impl AffineGroup {
    pub fn new(p: u64) -> Result<Arc<Self>, GroupError> {
        let field = PrimeField::new(p).map_err(|_| GroupError::NotOddPrime(p))?;
        if p == 2 {
            return Err(GroupError::NotOddPrime(p));
        }
        let alpha = field.smallest_primitive();
        let mut elements = Vec::with_capacity((p * (p - 1)) as usize);
        for a in 1..p {
            for b in 0..p {
                elements.push(AffineElement { a, b });
            }
        }
        let mut dlog = vec![0u64; p as usize];
        let mut x = 1u64;
        for k in 0..p - 1 {
            dlog[x as usize] = k;
            x = field.mul(x, alpha);
        }
        Ok(Arc::new(Self {
            field,
            p,
            alpha,
            elements,
            dlog,
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The primitive element generating F_p^×.
    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn order(&self) -> u64 {
        self.p * (self.p - 1)
    }

    pub fn elements(&self) -> &[AffineElement] {
        &self.elements
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement { a: 1, b: 0 }
    }

    /// The translation x ↦ x + 1 generating Q.
    pub fn sigma(&self) -> AffineElement {
        AffineElement { a: 1, b: 1 }
    }

    /// The scaling x ↦ αx generating Γ.
    pub fn tau(&self) -> AffineElement {
        AffineElement { a: self.alpha, b: 0 }
    }

    /// g∘h as maps: (a₁, b₁)∘(a₂, b₂) = (a₁a₂, a₁b₂ + b₁).
    pub fn compose(&self, g: AffineElement, h: AffineElement) -> AffineElement {
        AffineElement {
            a: self.field.mul(g.a, h.a),
            b: self.field.add(self.field.mul(g.a, h.b), g.b),
        }
    }

    pub fn inverse(&self, g: AffineElement) -> AffineElement {
        let a_inv = self.field.inv(g.a);
        AffineElement {
            a: a_inv,
            b: self.field.neg(self.field.mul(a_inv, g.b)),
        }
    }

    pub fn element_index(&self, g: AffineElement) -> usize {
        ((g.a - 1) * self.p + g.b) as usize
    }

    /// Discrete logarithm base α of a nonzero residue.
    pub fn dlog(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p));
        self.dlog[(a % self.p) as usize]
    }

    /// The permutation of {0, …, p−1} induced by g.
    pub fn as_permutation(&self, g: AffineElement) -> Vec<usize> {
        (0..self.p).map(|x| g.apply(self.p, x) as usize).collect()
    }

    pub fn element_order(&self, g: AffineElement) -> u64 {
        let mut x = g;
        let mut n = 1;
        while x != self.identity() {
            x = self.compose(x, g);
            n += 1;
        }
        n
    }

    /// Does the group contain a permutation moving exactly two points?
    pub fn has_transposition(&self) -> bool {
        self.elements.iter().any(|&g| {
            let perm = self.as_permutation(g);
            perm.iter().enumerate().filter(|&(x, &gx)| x != gx).count() == 2
        })
    }

    /// x ↦ −x, the unique involution of the scaling subgroup.
    pub fn unique_involution(&self) -> AffineElement {
        AffineElement {
            a: self.p - 1,
            b: 0,
        }
    }

    /// The subgroup of Γ of order e (e must divide p−1), as element list.
    pub fn scaling_subgroup(&self, e: u64) -> Vec<AffineElement> {
        assert!(e >= 1 && (self.p - 1).is_multiple_of(e), "order must divide p-1");
        let gen = self.field.pow(self.alpha, (self.p - 1) / e);
        let mut out = Vec::with_capacity(e as usize);
        let mut a = 1;
        for _ in 0..e {
            out.push(AffineElement { a, b: 0 });
            a = self.field.mul(a, gen);
        }
        out
    }

    /// Left cosets of a subgroup: the coset index of every group element
    /// plus the number of cosets. Cosets are numbered in order of first
    /// appearance when scanning elements.
    pub fn left_cosets(&self, subgroup: &[AffineElement]) -> (Vec<usize>, usize) {
        let n = self.elements.len();
        let mut coset = vec![usize::MAX; n];
        let mut count = 0;
        for (i, &g) in self.elements.iter().enumerate() {
            if coset[i] != usize::MAX {
                continue;
            }
            for &h in subgroup {
                let gh = self.compose(g, h);
                coset[self.element_index(gh)] = count;
            }
            count += 1;
        }
        (coset, count)
    }
}

/// Parity of a permutation: +1 even, −1 odd.
pub fn perm_sign(perm: &[usize]) -> i64 {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut sign = 1i64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// A small group given by its multiplication table, with designated
/// generators. Group axioms are checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGroup {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    generators: Vec<usize>,
    names: Vec<String>,
}

impl SmallGroup {
    pub fn new(
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        names: Vec<String>,
    ) -> Result<Arc<Self>, GroupError> {
        let n = table.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(GroupError::BadTable("table is not square".into()));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::BadTable("entry out of range".into()));
                }
                flat.push(x);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| flat[e * n + g] == g && flat[g * n + e] == g))
            .ok_or_else(|| GroupError::BadTable("no identity".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| flat[g * n + h] == identity) {
                return Err(GroupError::BadTable(format!("element {g} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if flat[flat[a * n + b] * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(GroupError::BadTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        // generators must generate
        let mut reached = vec![false; n];
        reached[identity] = true;
        let mut frontier = vec![identity];
        while let Some(g) = frontier.pop() {
            for &s in &generators {
                let gs = flat[g * n + s];
                if !reached[gs] {
                    reached[gs] = true;
                    frontier.push(gs);
                }
            }
        }
        if !reached.iter().all(|&r| r) {
            return Err(GroupError::BadTable("generators do not generate".into()));
        }
        Ok(Arc::new(Self {
            n,
            table: flat,
            identity,
            generators,
            names,
        }))
    }

    /// The symmetric group on `letters` letters (intended for 2 or 3),
    /// generated by the transposition (0 1) and, when present, the cycle.
    pub fn symmetric(letters: usize) -> Arc<Self> {
        assert!((2..=4).contains(&letters));
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut base: Vec<usize> = (0..letters).collect();
        permutations(&mut base, 0, &mut perms);
        perms.sort();
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let n = perms.len();
        let mut table = vec![vec![0usize; n]; n];
        for (i, g) in perms.iter().enumerate() {
            for (j, h) in perms.iter().enumerate() {
                let composed: Vec<usize> = (0..letters).map(|x| g[h[x]]).collect();
                table[i][j] = index_of(&composed);
            }
        }
        let mut swap: Vec<usize> = (0..letters).collect();
        swap.swap(0, 1);
        let mut gens = vec![index_of(&swap)];
        if letters > 2 {
            let mut cycle: Vec<usize> = (0..letters).map(|x| (x + 1) % letters).collect();
            cycle[letters - 1] = 0;
            gens.push(index_of(&cycle));
        }
        let names = perms.iter().map(|p| format!("{p:?}")).collect();
        Self::new(table, gens, names).expect("symmetric group table is a group")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.n + h]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }
}

fn permutations(base: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == base.len() {
        out.push(base.clone());
        return;
    }
    for i in k..base.len() {
        base.swap(k, i);
        permutations(base, k + 1, out);
        base.swap(k, i);
    }
}

/// A representation of a [`SmallGroup`] by one matrix per element.
#[derive(Debug, Clone)]
pub struct TableRep {
    group: Arc<SmallGroup>,
    dim: usize,
    mats: Vec<MatFp>,
}

impl TableRep {
    pub fn new(group: Arc<SmallGroup>, mats: Vec<MatFp>) -> Result<Self, GroupError> {
        assert_eq!(mats.len(), group.order());
        let dim = mats[0].rows();
        for (g, m) in mats.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(GroupError::BadTable(format!("matrix {g} has wrong shape")));
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if mats[g].mul(&mats[h]) != mats[group.mul(g, h)] {
                    return Err(GroupError::BadTable(format!(
                        "matrices are not a homomorphism at ({g}, {h})"
                    )));
                }
            }
        }
        Ok(Self { group, dim, mats })
    }

    pub fn trivial(group: Arc<SmallGroup>, field: PrimeField) -> Self {
        let mats = (0..group.order()).map(|_| MatFp::identity(field, 1)).collect();
        Self {
            group,
            dim: 1,
            mats,
        }
    }

    pub fn group(&self) -> &Arc<SmallGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, g: usize) -> &MatFp {
        &self.mats[g]
    }
}

/// Dimension of H¹ from the raw 1-cocycle condition f(gh) = f(g) + g·f(h):
/// one unknown vector per group element, one equation block per
/// (element, generator) pair. Generic over any multiplication table.
pub fn h1_full_table(
    order: usize,
    mul: impl Fn(usize, usize) -> usize,
    generators: &[usize],
    mats: &[MatFp],
    cap: usize,
) -> Result<usize, GroupError> {
    assert_eq!(mats.len(), order);
    let dim = mats[0].rows();
    let field = mats[0].field();
    let unknowns = order * dim;
    if unknowns > cap {
        return Err(GroupError::CapExceeded(unknowns));
    }
    let mut sys = MatFp::zeros(field, generators.len() * order * dim, unknowns);
    let mut row = 0;
    for g in 0..order {
        for &s in generators {
            let gs = mul(g, s);
            // x_{gs} − x_g − ρ(g)·x_s = 0
            for i in 0..dim {
                sys.set(row + i, gs * dim + i, field.add(sys.get(row + i, gs * dim + i), 1));
                sys.set(row + i, g * dim + i, field.sub(sys.get(row + i, g * dim + i), 1));
                for j in 0..dim {
                    let cur = sys.get(row + i, s * dim + j);
                    sys.set(row + i, s * dim + j, field.sub(cur, mats[g].get(i, j)));
                }
            }
            row += dim;
        }
    }
    let z1 = unknowns - sys.rank();
    let fixed_refs: Vec<MatFp> = generators
        .iter()
        .map(|&s| mats[s].sub(&MatFp::identity(field, dim)))
        .collect();
    let refs: Vec<&MatFp> = fixed_refs.iter().collect();
    let fixed_dim = dim - MatFp::vstack(&refs).rank();
    let b1 = dim - fixed_dim;
    Ok(z1 - b1)
}

/// H¹ of a small group with coefficients in a table representation.
pub fn bar_h1_small(rep: &TableRep, cap: usize) -> Result<usize, GroupError> {
    let g = rep.group();
    h1_full_table(
        g.order(),
        |a, b| g.mul(a, b),
        g.generators(),
        &rep.mats,
        cap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        let g5 = AffineGroup::new(5).unwrap();
        assert_eq!(g5.order(), 20);
        assert_eq!(g5.elements().len(), 20);
        let g3 = AffineGroup::new(3).unwrap();
        assert_eq!(g3.order(), 6);
        let g7 = AffineGroup::new(7).unwrap();
        assert_eq!(g7.order(), 42);
        assert_eq!(g7.alpha(), 3);
        assert!(AffineGroup::new(2).is_err());
        assert!(AffineGroup::new(9).is_err());
    }

    #[test]
    fn composition_matches_map_composition() {
        for p in [3, 5, 7, 11] {
            let g = AffineGroup::new(p).unwrap();
            for &x in g.elements() {
                for &y in g.elements() {
                    let composed = g.compose(x, y);
                    for t in 0..p {
                        assert_eq!(composed.apply(p, t), x.apply(p, y.apply(p, t)));
                    }
                }
            }
        }
    }

    #[test]
    fn composition_example_p5() {
        let g = AffineGroup::new(5).unwrap();
        let composed = g.compose(AffineElement { a: 2, b: 1 }, AffineElement { a: 3, b: 4 });
        assert_eq!(composed, AffineElement { a: 1, b: 4 });
    }

    #[test]
    fn subgroup_structure() {
        let g = AffineGroup::new(7).unwrap();
        let translations: Vec<_> = g.elements().iter().filter(|e| e.a == 1).collect();
        let scalings: Vec<_> = g.elements().iter().filter(|e| e.b == 0).collect();
        assert_eq!(translations.len(), 7);
        assert_eq!(scalings.len(), 6);
        // unique factorization g = q·γ
        for &e in g.elements() {
            let q = AffineElement { a: 1, b: e.b };
            let gamma = AffineElement { a: e.a, b: 0 };
            assert_eq!(g.compose(q, gamma), e);
        }
        // Q is normal
        let sigma = g.sigma();
        for &e in g.elements() {
            let conj = g.compose(g.compose(e, sigma), g.inverse(e));
            assert_eq!(conj.a, 1);
        }
    }

    #[test]
    fn involution_negates() {
        for p in [3, 5, 7, 11] {
            let g = AffineGroup::new(p).unwrap();
            let inv = g.unique_involution();
            assert_eq!(g.element_order(inv), 2);
            let tau = g.tau();
            let mut power = g.identity();
            for _ in 0..(p - 1) / 2 {
                power = g.compose(power, tau);
            }
            assert_eq!(power, inv);
            for x in 0..p {
                assert_eq!(inv.apply(p, x), (p - x) % p);
            }
        }
    }

    #[test]
    fn signs() {
        let g = AffineGroup::new(5).unwrap();
        assert_eq!(perm_sign(&g.as_permutation(g.identity())), 1);
        // scaling by a primitive element is a (p−1)-cycle, an odd permutation
        assert_eq!(perm_sign(&g.as_permutation(g.tau())), -1);
        // a p-cycle is even for odd p
        assert_eq!(perm_sign(&g.as_permutation(g.sigma())), 1);
        // x ↦ 2x on F_5 is the 4-cycle (1 2 4 3)
        assert_eq!(g.as_permutation(AffineElement { a: 2, b: 0 }), vec![0, 2, 4, 1, 3]);
    }

    #[test]
    fn transpositions_only_at_p3() {
        assert!(AffineGroup::new(3).unwrap().has_transposition());
        assert!(!AffineGroup::new(5).unwrap().has_transposition());
        assert!(!AffineGroup::new(7).unwrap().has_transposition());
    }

    #[test]
    fn scaling_subgroups_and_cosets() {
        let g = AffineGroup::new(7).unwrap();
        for e in [1u64, 2, 3, 6] {
            let h = g.scaling_subgroup(e);
            assert_eq!(h.len(), e as usize);
            let (coset, count) = g.left_cosets(&h);
            assert_eq!(count as u64 * e, g.order());
            assert!(coset.iter().all(|&c| c < count));
        }
    }

    #[test]
    fn symmetric_groups() {
        let s2 = SmallGroup::symmetric(2);
        assert_eq!(s2.order(), 2);
        let s3 = SmallGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn h1_of_symmetric_groups_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        // Hom(S_2, F_2) is one-dimensional
        let s2 = SmallGroup::symmetric(2);
        let rep = TableRep::trivial(Arc::clone(&s2), f2);
        assert_eq!(bar_h1_small(&rep, 10_000).unwrap(), 1);
        // the sign map survives for S_3 as well
        let s3 = SmallGroup::symmetric(3);
        let rep = TableRep::trivial(Arc::clone(&s3), f2);
        assert_eq!(bar_h1_small(&rep, 10_000).unwrap(), 1);
    }

    #[test]
    fn h1_vanishes_when_order_is_invertible() {
        let f3 = PrimeField::new(3).unwrap();
        let s2 = SmallGroup::symmetric(2);
        let rep = TableRep::trivial(Arc::clone(&s2), f3);
        assert_eq!(bar_h1_small(&rep, 10_000).unwrap(), 0);
    }
}
