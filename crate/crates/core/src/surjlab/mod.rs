//! Finite modules over small commutative local F_p-algebras, with
//! surjective numbers computed by search.
//!
//! The algebras are given by structure constants on a basis `e_0 = 1, e_1,
//! …` whose tail spans the maximal ideal; modules are given by one action
//! matrix per basis element. Surjectivity of a module map only depends on
//! its reduction modulo the maximal ideal, so the searches run in the
//! reduced hom space (top-level matrices) and lift witnesses back.

mod suite;

pub use suite::{run_suite, LemmaReport, SuiteConfig, SuiteReport};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fp::{quotient_basis, Echelon, MatFp, PrimeField};
use crate::theta::{IndecRegistry, SurjOracle, SurjOutcome, ThetaError};

#[derive(Debug, Error)]
pub enum SurjlabError {
    #[error("algebra check failed: {0}")]
    AlgebraCheck(String),
    #[error("module check failed: {0}")]
    ModuleCheck(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("parts do not span the ambient space together with W")]
    NotSpanning,
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A finite-dimensional commutative local algebra over F_p, basis
/// `e_0 = 1, e_1, …, e_{n-1}`, maximal ideal spanned by `e_1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalAlgebra {
    field: PrimeField,
    dim: usize,
    name: String,
    /// c[(i*dim + j)*dim + k] = coefficient of e_k in e_i·e_j.
    constants: Vec<u64>,
}

impl LocalAlgebra {
    pub fn new(
        field: PrimeField,
        dim: usize,
        name: impl Into<String>,
        constants: Vec<u64>,
    ) -> Result<Arc<Self>, SurjlabError> {
        assert_eq!(constants.len(), dim * dim * dim);
        let alg = Self {
            field,
            dim,
            name: name.into(),
            constants: constants.into_iter().map(|c| field.reduce(c)).collect(),
        };
        alg.check()?;
        Ok(Arc::new(alg))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Left-multiplication matrix of e_i on the algebra itself.
    pub fn mult_matrix(&self, i: usize) -> MatFp {
        MatFp::from_fn(self.field, self.dim, self.dim, |k, j| self.constant(i, j, k))
    }

    fn check(&self) -> Result<(), SurjlabError> {
        let n = self.dim;
        if n == 0 {
            return Err(SurjlabError::AlgebraCheck("algebra must contain 1".into()));
        }
        for j in 0..n {
            for k in 0..n {
                let unit = u64::from(j == k);
                if self.constant(0, j, k) != unit || self.constant(j, 0, k) != unit {
                    return Err(SurjlabError::AlgebraCheck(format!(
                        "e_0 is not a two-sided identity at ({j}, {k})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.constant(i, j, k) != self.constant(j, i, k) {
                        return Err(SurjlabError::AlgebraCheck(format!(
                            "not commutative at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        let f = self.field;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut lhs = 0;
                        let mut rhs = 0;
                        for m in 0..n {
                            lhs = f.add(lhs, f.mul(self.constant(i, j, m), self.constant(m, k, l)));
                            rhs = f.add(rhs, f.mul(self.constant(j, k, m), self.constant(i, m, l)));
                        }
                        if lhs != rhs {
                            return Err(SurjlabError::AlgebraCheck(format!(
                                "not associative at ({i}, {j}, {k})"
                            )));
                        }
                    }
                }
            }
        }
        // the span of e_1, … must be a nilpotent ideal
        let mut power = Echelon::new(f, n);
        for i in 1..n {
            let mut e = vec![0u64; n];
            e[i] = 1;
            power.insert(e);
        }
        let mut guard = 0;
        while power.rank() > 0 {
            guard += 1;
            if guard > n + 1 {
                return Err(SurjlabError::AlgebraCheck(
                    "maximal ideal is not nilpotent".into(),
                ));
            }
            let mut next = Echelon::new(f, n);
            for v in power.rows().to_vec() {
                for i in 1..n {
                    next.insert(self.mult_matrix(i).mul_vec(&v));
                }
            }
            power = next;
        }
        Ok(())
    }

    /// F_p[x]/(x^n), basis 1, x, …, x^{n-1}.
    pub fn truncated_polynomial(p: u64, n: usize) -> Arc<Self> {
        let field = PrimeField::new(p).expect("prime modulus");
        let mut constants = vec![0u64; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    constants[(i * n + j) * n + (i + j)] = 1;
                }
            }
        }
        Self::new(field, n, format!("F{p}[x]/(x^{n})"), constants).expect("valid preset")
    }

    /// F_p[x,y]/(x,y)^2, basis 1, x, y; all products of ideal elements vanish.
    pub fn square_zero_two_vars(p: u64) -> Arc<Self> {
        let field = PrimeField::new(p).expect("prime modulus");
        let n = 3;
        let mut constants = vec![0u64; n * n * n];
        for j in 0..n {
            constants[j * n + j] = 1; // e_0 · e_j
            constants[(j * n) * n + j] = 1; // e_j · e_0
        }
        constants[j_fix(0, 0, 0, n)] = 1;
        Self::new(field, n, format!("F{p}[x,y]/(x,y)^2"), constants).expect("valid preset")
    }

    /// Look up one of the shipped testbed algebras by its CLI name.
    pub fn preset(name: &str) -> Result<Arc<Self>, SurjlabError> {
        match name {
            "F2[x]/(x^2)" => Ok(Self::truncated_polynomial(2, 2)),
            "F3[x]/(x^3)" => Ok(Self::truncated_polynomial(3, 3)),
            "F2[x,y]/(x,y)^2" => Ok(Self::square_zero_two_vars(2)),
            "F3[x,y]/(x,y)^2" => Ok(Self::square_zero_two_vars(3)),
            other => Err(SurjlabError::UnknownPreset(other.into())),
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &[
            "F2[x]/(x^2)",
            "F3[x]/(x^3)",
            "F2[x,y]/(x,y)^2",
            "F3[x,y]/(x,y)^2",
        ]
    }
}

fn j_fix(i: usize, j: usize, k: usize, n: usize) -> usize {
    (i * n + j) * n + k
}

/// A finite module over a [`LocalAlgebra`], one action matrix per algebra
/// basis element (the identity acts as the identity matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdModule {
    algebra: Arc<LocalAlgebra>,
    dim: usize,
    name: String,
    action: Vec<MatFp>,
}

impl FdModule {
    pub fn new(
        algebra: Arc<LocalAlgebra>,
        name: impl Into<String>,
        action: Vec<MatFp>,
    ) -> Result<Self, SurjlabError> {
        assert_eq!(action.len(), algebra.dim());
        let dim = action[0].rows();
        let m = Self {
            algebra,
            dim,
            name: name.into(),
            action,
        };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), SurjlabError> {
        let n = self.algebra.dim();
        if !self.action[0].is_identity() {
            return Err(SurjlabError::ModuleCheck("e_0 must act as the identity".into()));
        }
        for a in &self.action {
            if a.rows() != self.dim || a.cols() != self.dim {
                return Err(SurjlabError::ModuleCheck("action matrices must be square of module dim".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = MatFp::zeros(self.algebra.field(), self.dim, self.dim);
                for k in 0..n {
                    let c = self.algebra.constant(i, j, k);
                    if c != 0 {
                        rhs = rhs.add(&self.action[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(SurjlabError::ModuleCheck(format!(
                        "action violates structure constants at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &MatFp {
        &self.action[i]
    }

    /// The zero module.
    pub fn zero(algebra: Arc<LocalAlgebra>) -> Self {
        let f = algebra.field();
        let n = algebra.dim();
        Self {
            algebra,
            dim: 0,
            name: "0".into(),
            action: (0..n).map(|_| MatFp::zeros(f, 0, 0)).collect(),
        }
    }

    /// The algebra as a module over itself.
    pub fn regular(algebra: Arc<LocalAlgebra>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.mult_matrix(i)).collect();
        Self {
            dim: algebra.dim(),
            name: "R".into(),
            algebra,
            action,
        }
    }

    /// The residue field as a module.
    pub fn simple(algebra: Arc<LocalAlgebra>) -> Self {
        let f = algebra.field();
        let n = algebra.dim();
        let mut action = vec![MatFp::identity(f, 1)];
        action.extend((1..n).map(|_| MatFp::zeros(f, 1, 1)));
        Self {
            algebra,
            dim: 1,
            name: "k".into(),
            action,
        }
    }

    /// The maximal ideal as a module (basis e_1, …).
    pub fn maximal_ideal(algebra: Arc<LocalAlgebra>) -> Self {
        let f = algebra.field();
        let n = algebra.dim();
        let d = n - 1;
        let action: Vec<MatFp> = (0..n)
            .map(|i| {
                MatFp::from_fn(f, d, d, |k, j| {
                    // e_i · e_{j+1} must stay inside the ideal
                    debug_assert!(i == 0 || algebra.constant(i, j + 1, 0) == 0);
                    algebra.constant(i, j + 1, k + 1)
                })
            })
            .collect();
        Self {
            algebra,
            dim: d,
            name: "m".into(),
            action,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, SurjlabError> {
        if self.algebra != other.algebra {
            return Err(SurjlabError::AlgebraMismatch);
        }
        let action = self
            .action
            .iter()
            .zip(other.action.iter())
            .map(|(a, b)| MatFp::block_diag(&[a, b]))
            .collect();
        Ok(Self {
            algebra: Arc::clone(&self.algebra),
            dim: self.dim + other.dim,
            name: if self.dim == 0 {
                other.name.clone()
            } else if other.dim == 0 {
                self.name.clone()
            } else {
                format!("{}+{}", self.name, other.name)
            },
            action,
        })
    }

    pub fn power(&self, r: u64) -> Self {
        assert!(r >= 1);
        let mut out = self.clone();
        for _ in 1..r {
            out = out.direct_sum(self).expect("same algebra");
        }
        out.name = format!("{}^{r}", self.name);
        out
    }

    /// Parse a preset module name like `"R+k"` or `"m+k+k"`.
    pub fn parse(algebra: &Arc<LocalAlgebra>, name: &str) -> Result<Self, SurjlabError> {
        let mut out = Self::zero(Arc::clone(algebra));
        for part in name.split('+') {
            let summand = match part.trim() {
                "R" => Self::regular(Arc::clone(algebra)),
                "k" => Self::simple(Arc::clone(algebra)),
                "m" => Self::maximal_ideal(Arc::clone(algebra)),
                other => return Err(SurjlabError::UnknownPreset(other.into())),
            };
            out = out.direct_sum(&summand)?;
        }
        out.name = name.replace(' ', "");
        Ok(out)
    }

    /// Row echelon basis of the radical subspace m·M.
    pub fn radical_subspace(&self) -> Vec<Vec<u64>> {
        let mut ech = Echelon::new(self.algebra.field(), self.dim);
        for a in self.action.iter().skip(1) {
            for j in 0..self.dim {
                ech.insert(a.col(j));
            }
        }
        ech.rows().to_vec()
    }

    /// Number of generators: the dimension of M / mM.
    pub fn mu(&self) -> u64 {
        (self.dim - self.radical_subspace().len()) as u64
    }

    /// Projection to top coordinates and the section picking representatives.
    pub fn top_maps(&self) -> (MatFp, MatFp) {
        let f = self.algebra.field();
        let rad = self.radical_subspace();
        let (reps, proj) = quotient_basis(f, self.dim, &rad);
        let mu = reps.len();
        let mut section = MatFp::zeros(f, self.dim, mu);
        for (c, rep) in reps.iter().enumerate() {
            for (r, &v) in rep.iter().enumerate() {
                section.set(r, c, v);
            }
        }
        (proj, section)
    }

    /// Basis of Hom(self, other): matrices commuting with both actions.
    pub fn hom_space(&self, other: &Self) -> Result<Vec<MatFp>, SurjlabError> {
        if self.algebra != other.algebra {
            return Err(SurjlabError::AlgebraMismatch);
        }
        let f = self.algebra.field();
        let (dm, dn) = (self.dim, other.dim);
        if dm == 0 || dn == 0 {
            return Ok(Vec::new());
        }
        let unknowns = dn * dm;
        let gens = self.algebra.dim() - 1;
        let mut sys = MatFp::zeros(f, gens * unknowns, unknowns);
        for g in 1..self.algebra.dim() {
            let am = &self.action[g];
            let an = &other.action[g];
            // φ·am - an·φ = 0, rows indexed by (a, b)
            for a in 0..dn {
                for b in 0..dm {
                    let row = (g - 1) * unknowns + a * dm + b;
                    for c in 0..dm {
                        let idx = a * dm + c;
                        let cur = sys.get(row, idx);
                        sys.set(row, idx, f.add(cur, am.get(c, b)));
                    }
                    for r in 0..dn {
                        let idx = r * dm + b;
                        let cur = sys.get(row, idx);
                        sys.set(row, idx, f.sub(cur, an.get(a, r)));
                    }
                }
            }
        }
        Ok(sys
            .kernel_basis()
            .into_iter()
            .map(|v| MatFp::from_fn(f, dn, dm, |a, b| v[a * dm + b]))
            .collect())
    }
}

/// How surjection searches are run: the point-count cap for exhaustive
/// enumeration of the reduced hom space, the number of random samples tried
/// first, and the seed the per-n generators derive from.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub exhaustion_bound: u64,
    pub random_samples: u32,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            exhaustion_bound: 1 << 20,
            random_samples: 64,
            seed: 0xF51AB,
        }
    }
}

/// Evidence attached to a surjective-number value.
#[derive(Debug, Clone)]
pub enum SurjCertificate {
    /// A verified surjective module map onto the claimed power.
    Found(MatFp),
    /// All candidate maps above the value were ruled out by enumeration up
    /// to the recorded point bound.
    Exhausted { bound: u64 },
}

#[derive(Debug, Clone)]
pub struct SurjResult {
    pub value: u64,
    /// Exact, or only a certified lower bound (some larger power could not
    /// be exhaustively refuted within the bound).
    pub exact: bool,
    pub certificate: SurjCertificate,
}

/// The reduced hom space: images of Hom(M, N) in Hom(M/mM, N/mN), with a
/// lift of each basis element.
struct ReducedHom {
    basis: Vec<MatFp>,
    lifts: Vec<MatFp>,
    mu_m: usize,
    mu_n: usize,
    /// Rank of the stacked basis rows; a surjection onto N^⊕n needs
    /// n·μ(N) ≤ this.
    row_rank: usize,
    /// Rank of the stacked basis columns; any single block being onto
    /// needs this to reach μ(N).
    col_rank: usize,
}

fn reduced_hom(m: &FdModule, n: &FdModule) -> Result<ReducedHom, SurjlabError> {
    let f = m.algebra().field();
    let homs = m.hom_space(n)?;
    let (proj_n, _) = n.top_maps();
    let (_, sect_m) = m.top_maps();
    let mu_m = sect_m.cols();
    let mu_n = proj_n.rows();
    let mut ech = Echelon::with_aug(f, mu_n * mu_m, homs.len());
    for (i, h) in homs.iter().enumerate() {
        let reduced = proj_n.mul(h).mul(&sect_m);
        let mut flat = Vec::with_capacity(mu_n * mu_m + homs.len());
        for a in 0..mu_n {
            for b in 0..mu_m {
                flat.push(reduced.get(a, b));
            }
        }
        flat.extend((0..homs.len()).map(|j| u64::from(j == i)));
        ech.insert(flat);
    }
    let mut basis = Vec::new();
    let mut lifts = Vec::new();
    for row in ech.rows() {
        let mat = MatFp::from_fn(f, mu_n, mu_m, |a, b| row[a * mu_m + b]);
        let mut lift = MatFp::zeros(f, n.dim(), m.dim());
        for (j, h) in homs.iter().enumerate() {
            let c = row[mu_n * mu_m + j];
            if c != 0 {
                lift = lift.add(&h.scale(c));
            }
        }
        basis.push(mat);
        lifts.push(lift);
    }
    let (row_rank, col_rank) = if basis.is_empty() {
        (0, 0)
    } else {
        let refs: Vec<&MatFp> = basis.iter().collect();
        (MatFp::vstack(&refs).rank(), MatFp::hstack(&refs).rank())
    };
    Ok(ReducedHom {
        basis,
        lifts,
        mu_m,
        mu_n,
        row_rank,
        col_rank,
    })
}

fn stacked_reduced(f: PrimeField, red: &ReducedHom, coeffs: &[u64], n: usize) -> MatFp {
    let t = red.basis.len();
    let mut out = MatFp::zeros(f, n * red.mu_n, red.mu_m);
    for b in 0..n {
        for (i, base) in red.basis.iter().enumerate() {
            let c = coeffs[b * t + i];
            if c == 0 {
                continue;
            }
            for a in 0..red.mu_n {
                for j in 0..red.mu_m {
                    let cur = out.get(b * red.mu_n + a, j);
                    out.set(b * red.mu_n + a, j, f.add(cur, f.mul(c, base.get(a, j))));
                }
            }
        }
    }
    out
}

fn lift_witness(
    f: PrimeField,
    red: &ReducedHom,
    coeffs: &[u64],
    n: usize,
    n_dim: usize,
    m_dim: usize,
) -> Result<MatFp, SurjlabError> {
    let t = red.basis.len();
    let mut blocks = Vec::with_capacity(n);
    for b in 0..n {
        let mut block = MatFp::zeros(f, n_dim, m_dim);
        for (i, lift) in red.lifts.iter().enumerate() {
            let c = coeffs[b * t + i];
            if c != 0 {
                block = block.add(&lift.scale(c));
            }
        }
        blocks.push(block);
    }
    let refs: Vec<&MatFp> = blocks.iter().collect();
    let big = MatFp::vstack(&refs);
    if big.rank() != n * n_dim {
        return Err(SurjlabError::Internal(
            "lifted witness is not surjective despite surjective reduction".into(),
        ));
    }
    Ok(big)
}

fn checked_points(p: u64, exponent: usize, bound: u64) -> Option<u64> {
    let mut acc: u128 = 1;
    for _ in 0..exponent {
        acc = acc.checked_mul(p as u128)?;
        if acc > bound as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The largest n admitting a surjective module map M → N^⊕n.
///
/// Candidates n run downward from min(μ(M), row-rank of the reduced hom
/// space)/μ(N); each is tested first by seeded random sampling in the
/// reduced hom space, then by exhaustive enumeration when the reduced point
/// count fits the configured bound. The result is exact when every larger
/// candidate was exhaustively refuted, otherwise a flagged lower bound.
pub fn surj_number(m: &FdModule, n: &FdModule, cfg: &SearchConfig) -> Result<SurjResult, SurjlabError> {
    assert!(!n.is_zero(), "surjective numbers need a nonzero target");
    if m.algebra() != n.algebra() {
        return Err(SurjlabError::AlgebraMismatch);
    }
    if m.is_zero() {
        return Ok(SurjResult {
            value: 0,
            exact: true,
            certificate: SurjCertificate::Exhausted { bound: 0 },
        });
    }
    let f = m.algebra().field();
    let p = f.p();
    let red = reduced_hom(m, n)?;
    if red.col_rank < red.mu_n {
        // no single block can reach the whole top of N
        return Ok(SurjResult {
            value: 0,
            exact: true,
            certificate: SurjCertificate::Exhausted { bound: 0 },
        });
    }
    let t = red.basis.len();
    let n_max = (red.mu_m.min(red.row_rank) / red.mu_n) as u64;
    let mut exact = true;
    for cand in (1..=n_max).rev() {
        let cand_us = cand as usize;
        let want = cand_us * red.mu_n;
        let dims = cand_us * t;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ cand.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut coeffs = vec![0u64; dims];
        for _ in 0..cfg.random_samples {
            for c in coeffs.iter_mut() {
                *c = rng.gen_range(0..p);
            }
            if stacked_reduced(f, &red, &coeffs, cand_us).rank() == want {
                let witness = lift_witness(f, &red, &coeffs, cand_us, n.dim(), m.dim())?;
                return Ok(SurjResult {
                    value: cand,
                    exact,
                    certificate: SurjCertificate::Found(witness),
                });
            }
        }
        match checked_points(p, dims, cfg.exhaustion_bound) {
            Some(_) => {
                coeffs.iter_mut().for_each(|c| *c = 0);
                let found = loop {
                    if stacked_reduced(f, &red, &coeffs, cand_us).rank() == want {
                        break true;
                    }
                    // odometer step
                    let mut i = dims;
                    loop {
                        if i == 0 {
                            break;
                        }
                        i -= 1;
                        coeffs[i] += 1;
                        if coeffs[i] < p {
                            break;
                        }
                        coeffs[i] = 0;
                    }
                    if coeffs.iter().all(|&c| c == 0) {
                        break false;
                    }
                };
                if found {
                    let witness = lift_witness(f, &red, &coeffs, cand_us, n.dim(), m.dim())?;
                    return Ok(SurjResult {
                        value: cand,
                        exact,
                        certificate: SurjCertificate::Found(witness),
                    });
                }
                // cand exhaustively refuted; exactness is preserved
            }
            None => {
                exact = false;
            }
        }
    }
    Ok(SurjResult {
        value: 0,
        exact,
        certificate: SurjCertificate::Exhausted {
            bound: cfg.exhaustion_bound,
        },
    })
}

/// nsurj(M; r) = surj(M^⊕r)/r as an exact rational.
pub fn nsurj(
    m: &FdModule,
    n: &FdModule,
    r: u64,
    cfg: &SearchConfig,
) -> Result<(crate::theta::Rational, SurjResult), SurjlabError> {
    assert!(r >= 1);
    let res = surj_number(&m.power(r), n, cfg)?;
    Ok((crate::theta::Rational::new(res.value as i64, r as i64), res))
}

/// The nsurj sequence up to `r_max` with its bracket
/// [max of the sequence, μ(M)/μ(N)].
#[derive(Debug, Clone)]
pub struct AsnLab {
    pub values: Vec<crate::theta::Rational>,
    pub lower: crate::theta::Rational,
    pub upper: crate::theta::Rational,
    pub exact: bool,
}

pub fn asn_estimate(
    m: &FdModule,
    n: &FdModule,
    r_max: u64,
    cfg: &SearchConfig,
) -> Result<AsnLab, SurjlabError> {
    assert!(r_max >= 1);
    let mut values = Vec::new();
    let mut exact = true;
    for r in 1..=r_max {
        let (v, res) = nsurj(m, n, r, cfg)?;
        exact &= res.exact;
        values.push(v);
    }
    let lower = values.iter().copied().max().expect("r_max >= 1");
    let upper = crate::theta::Rational::new(m.mu() as i64, n.mu() as i64);
    Ok(AsnLab {
        values,
        lower,
        upper,
        exact,
    })
}

/// Greedily choose parts whose sum with W is the whole ambient space.
/// Returns the chosen part indices; at most dim(ambient/W) parts.
pub fn greedy_cover(
    field: PrimeField,
    ambient: usize,
    w: &[Vec<u64>],
    parts: &[Vec<Vec<u64>>],
) -> Result<Vec<usize>, SurjlabError> {
    let mut ech = Echelon::new(field, ambient);
    for v in w {
        ech.insert(v.clone());
    }
    let bound = ambient - ech.rank();
    let mut chosen = Vec::new();
    for (idx, part) in parts.iter().enumerate() {
        if ech.rank() == ambient {
            break;
        }
        let before = ech.rank();
        for v in part {
            ech.insert(v.clone());
        }
        if ech.rank() > before {
            chosen.push(idx);
        }
    }
    if ech.rank() != ambient {
        return Err(SurjlabError::NotSpanning);
    }
    debug_assert!(chosen.len() <= bound);
    Ok(chosen)
}

/// Output of [`split_surjection`]: the composed surjection onto the
/// remaining summands, the dropped block indices, and the remaining count.
#[derive(Debug, Clone)]
pub struct SplitSurjection {
    pub map: MatFp,
    pub dropped: Vec<usize>,
    pub remaining: u64,
}

/// Given a verified surjection φ : M ⊕ M' → N^⊕m, produce a surjection
/// M → N^⊕(m−s) with s ≤ μ(M'), by covering the top of the target with at
/// most μ(M') coordinate blocks and dropping them.
pub fn split_surjection(
    m: &FdModule,
    m_prime: &FdModule,
    n: &FdModule,
    phi: &MatFp,
) -> Result<SplitSurjection, SurjlabError> {
    assert!(!n.is_zero());
    let f = m.algebra().field();
    let dm = m.dim();
    let dmp = m_prime.dim();
    let dn = n.dim();
    assert_eq!(phi.cols(), dm + dmp, "φ must be defined on M ⊕ M'");
    assert_eq!(phi.rows() % dn, 0, "φ must land in a power of N");
    let copies = phi.rows() / dn;

    // verify the precondition: φ is a surjective module map
    if phi.rank() != phi.rows() {
        return Err(SurjlabError::ModuleCheck("φ is not surjective".into()));
    }
    let source = m.direct_sum(m_prime)?;
    let target = n.power(copies.max(1) as u64);
    for g in 1..m.algebra().dim() {
        if phi.mul(source.action(g)) != target.action(g).mul(phi) {
            return Err(SurjlabError::ModuleCheck("φ is not module-linear".into()));
        }
    }

    if dmp == 0 {
        return Ok(SplitSurjection {
            map: phi.clone(),
            dropped: Vec::new(),
            remaining: copies as u64,
        });
    }

    let (proj_n, _) = n.top_maps();
    let mu_n = proj_n.rows();
    let proj_refs: Vec<&MatFp> = (0..copies).map(|_| &proj_n).collect();
    let big_proj = MatFp::block_diag(&proj_refs);

    let phi_m = MatFp::from_fn(f, phi.rows(), dm, |i, j| phi.get(i, j));
    let top_image = big_proj.mul(&phi_m);
    let w: Vec<Vec<u64>> = (0..dm).map(|j| top_image.col(j)).collect();
    let ambient = copies * mu_n;
    let parts: Vec<Vec<Vec<u64>>> = (0..copies)
        .map(|b| {
            (0..mu_n)
                .map(|a| {
                    let mut e = vec![0u64; ambient];
                    e[b * mu_n + a] = 1;
                    e
                })
                .collect()
        })
        .collect();
    let dropped = greedy_cover(f, ambient, &w, &parts)?;
    let s = dropped.len();
    if s as u64 > m_prime.mu() {
        return Err(SurjlabError::Internal(format!(
            "cover used {s} blocks, more than μ(M') = {}",
            m_prime.mu()
        )));
    }

    let keep: Vec<usize> = (0..copies).filter(|b| !dropped.contains(b)).collect();
    let mut map = MatFp::zeros(f, keep.len() * dn, dm);
    for (out_b, &b) in keep.iter().enumerate() {
        for i in 0..dn {
            for j in 0..dm {
                map.set(out_b * dn + i, j, phi_m.get(b * dn + i, j));
            }
        }
    }
    if map.rank() != keep.len() * dn {
        return Err(SurjlabError::Internal(
            "composed map failed the surjectivity check".into(),
        ));
    }
    Ok(SplitSurjection {
        map,
        dropped,
        remaining: keep.len() as u64,
    })
}

/// A surjection oracle backed by a fixed list of labelled indecomposables
/// over one testbed algebra. Registry μ weights are computed, not declared.
pub struct RegistryOracle {
    registry: Arc<IndecRegistry>,
    modules: Vec<FdModule>,
    cfg: SearchConfig,
}

impl RegistryOracle {
    pub fn new(labeled: Vec<(String, FdModule)>, cfg: SearchConfig) -> Self {
        let entries = labeled
            .iter()
            .map(|(label, m)| (label.clone(), m.mu()))
            .collect();
        let registry = Arc::new(IndecRegistry::new(entries));
        let modules = labeled.into_iter().map(|(_, m)| m).collect();
        Self {
            registry,
            modules,
            cfg,
        }
    }

    /// The standard testbed over an algebra preset: labels R and k.
    pub fn standard(algebra: &Arc<LocalAlgebra>, cfg: SearchConfig) -> Self {
        Self::new(
            vec![
                ("R".into(), FdModule::regular(Arc::clone(algebra))),
                ("k".into(), FdModule::simple(Arc::clone(algebra))),
            ],
            cfg,
        )
    }

    pub fn registry(&self) -> Arc<IndecRegistry> {
        Arc::clone(&self.registry)
    }

    pub fn module_by_label(&self, label: &str) -> Option<&FdModule> {
        self.registry.index_of(label).map(|i| &self.modules[i])
    }
}

impl SurjOracle for RegistryOracle {
    type Module = FdModule;

    fn realize(&self, summands: &[(usize, u64)]) -> Result<FdModule, ThetaError> {
        let mut out: Option<FdModule> = None;
        for &(idx, mult) in summands {
            let m = self.modules.get(idx).ok_or(ThetaError::Unrealizable(idx))?;
            let part = m.power(mult);
            out = Some(match out {
                None => part,
                Some(acc) => acc
                    .direct_sum(&part)
                    .map_err(|_| ThetaError::Unrealizable(idx))?,
            });
        }
        Ok(out.unwrap_or_else(|| FdModule::zero(Arc::clone(self.modules[0].algebra()))))
    }

    fn mu(&self, module: &FdModule) -> u64 {
        module.mu()
    }

    fn surj(&self, source: &FdModule, target: &FdModule) -> SurjOutcome {
        match surj_number(source, target, &self.cfg) {
            Ok(res) => SurjOutcome {
                value: res.value,
                exact: res.exact,
                witness: match res.certificate {
                    SurjCertificate::Found(w) => Some(w),
                    SurjCertificate::Exhausted { .. } => None,
                },
            },
            Err(_) => SurjOutcome {
                value: 0,
                exact: false,
                witness: None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2x2() -> Arc<LocalAlgebra> {
        LocalAlgebra::truncated_polynomial(2, 2)
    }

    #[test]
    fn presets_construct() {
        for name in LocalAlgebra::preset_names() {
            let alg = LocalAlgebra::preset(name).unwrap();
            assert!(alg.dim() >= 2);
        }
        assert!(LocalAlgebra::preset("F4[x]").is_err());
    }

    #[test]
    fn bad_constants_rejected() {
        // e_1·e_1 = 1 makes e_1 a unit, so the ideal is not nilpotent
        let field = PrimeField::new(2).unwrap();
        let mut constants = vec![0u64; 8];
        constants[j_fix(0, 0, 0, 2)] = 1;
        constants[j_fix(0, 1, 1, 2)] = 1;
        constants[j_fix(1, 0, 1, 2)] = 1;
        constants[j_fix(1, 1, 0, 2)] = 1;
        assert!(LocalAlgebra::new(field, 2, "bad", constants).is_err());
    }

    #[test]
    fn mu_examples() {
        let alg = f2x2();
        assert_eq!(FdModule::regular(Arc::clone(&alg)).mu(), 1);
        assert_eq!(FdModule::simple(Arc::clone(&alg)).mu(), 1);
        let rk = FdModule::parse(&alg, "R+k").unwrap();
        assert_eq!(rk.mu(), 2);
    }

    #[test]
    fn hom_space_examples() {
        let alg = f2x2();
        let r = FdModule::regular(Arc::clone(&alg));
        let k = FdModule::simple(Arc::clone(&alg));
        let m = FdModule::parse(&alg, "R+k").unwrap();
        // Hom(R, M) ≅ M
        assert_eq!(r.hom_space(&m).unwrap().len(), m.dim());
        // Hom(k, R) is the socle
        assert_eq!(k.hom_space(&r).unwrap().len(), 1);
        // Hom(M, 0) = 0
        let zero = FdModule::zero(Arc::clone(&alg));
        assert!(m.hom_space(&zero).unwrap().is_empty());
    }

    #[test]
    fn surj_examples() {
        let alg = f2x2();
        let cfg = SearchConfig::default();
        let r = FdModule::regular(Arc::clone(&alg));
        let k = FdModule::simple(Arc::clone(&alg));

        let res = surj_number(&r.power(3), &r, &cfg).unwrap();
        assert_eq!((res.value, res.exact), (3, true));

        // R covers k once but not twice (μ(R) = 1)
        let res = surj_number(&r, &k, &cfg).unwrap();
        assert_eq!((res.value, res.exact), (1, true));

        for m in [&r, &k] {
            let res = surj_number(m, m, &cfg).unwrap();
            assert_eq!((res.value, res.exact), (1, true));
        }
    }

    #[test]
    fn witnesses_are_surjective_module_maps() {
        let alg = f2x2();
        let cfg = SearchConfig::default();
        let m = FdModule::parse(&alg, "R+k").unwrap();
        let k = FdModule::simple(Arc::clone(&alg));
        let res = surj_number(&m, &k, &cfg).unwrap();
        assert_eq!(res.value, 2);
        let SurjCertificate::Found(w) = res.certificate else {
            panic!("expected a witness");
        };
        assert_eq!(w.rank(), w.rows());
        let target = k.power(res.value);
        for g in 1..alg.dim() {
            assert_eq!(w.mul(m.action(g)), target.action(g).mul(&w));
        }
    }

    #[test]
    fn nsurj_examples() {
        let alg = f2x2();
        let cfg = SearchConfig::default();
        let r = FdModule::regular(Arc::clone(&alg));
        let k = FdModule::simple(Arc::clone(&alg));
        let rk = FdModule::parse(&alg, "R+k").unwrap();

        let (v, res) = nsurj(&r, &r, 1, &cfg).unwrap();
        assert_eq!(v, crate::theta::Rational::from_integer(1));
        assert_eq!(res.value, surj_number(&r, &r, &cfg).unwrap().value);

        for r_pow in 1..=4 {
            let (v, _) = nsurj(&r, &r, r_pow, &cfg).unwrap();
            assert_eq!(v, crate::theta::Rational::from_integer(1));
        }

        let (v1, _) = nsurj(&rk, &k, 1, &cfg).unwrap();
        let (v2, _) = nsurj(&rk, &k, 2, &cfg).unwrap();
        assert_eq!(v1, crate::theta::Rational::from_integer(2));
        assert!(v2 >= v1);
    }

    #[test]
    fn asn_maximal_ideal_of_square_zero() {
        // the maximal ideal of F_3[x,y]/(x,y)^2 is k², so the sequence is 2
        let alg = LocalAlgebra::square_zero_two_vars(3);
        let cfg = SearchConfig::default();
        let m = FdModule::maximal_ideal(Arc::clone(&alg));
        let k = FdModule::simple(Arc::clone(&alg));
        let lab = asn_estimate(&m, &k, 3, &cfg).unwrap();
        assert!(lab.exact);
        for v in &lab.values {
            assert_eq!(*v, crate::theta::Rational::from_integer(2));
        }
        assert_eq!(lab.upper, crate::theta::Rational::from_integer(2));
    }

    #[test]
    fn greedy_cover_examples() {
        let f = PrimeField::new(2).unwrap();
        // W = ambient: nothing needed
        let w: Vec<Vec<u64>> = vec![vec![1, 0], vec![0, 1]];
        assert!(greedy_cover(f, 2, &w, &[]).unwrap().is_empty());

        // W = 0, coordinate lines of F_2²: both needed
        let parts = vec![vec![vec![1, 0]], vec![vec![0, 1]]];
        assert_eq!(greedy_cover(f, 2, &[], &parts).unwrap(), vec![0, 1]);

        // two of three parts suffice
        let w = vec![vec![1, 0, 0]];
        let parts = vec![
            vec![vec![0, 1, 0]],
            vec![vec![1, 1, 0]],
            vec![vec![0, 0, 1]],
        ];
        let chosen = greedy_cover(f, 3, &w, &parts).unwrap();
        assert_eq!(chosen.len(), 2);

        // spanning precondition violated
        let parts = vec![vec![vec![0, 1, 0]]];
        assert!(greedy_cover(f, 3, &w, &parts).is_err());
    }

    #[test]
    fn oracle_drives_class_vector_calculus() {
        use crate::theta::{asn_on_theta, surj_on_theta, Rational, ThetaVector};
        let alg = f2x2();
        let oracle = RegistryOracle::standard(&alg, SearchConfig::default());
        let reg = oracle.registry();
        let k = FdModule::simple(Arc::clone(&alg));
        let r = FdModule::regular(Arc::clone(&alg));

        // ⟨1.5·[k]⟩ = [k] and surj_k(k) = 1
        let alpha = ThetaVector::from_labels(Arc::clone(&reg), &[("k", Rational::new(3, 2))]).unwrap();
        let outcome = surj_on_theta(&alpha, &k, &oracle).unwrap();
        assert_eq!((outcome.value, outcome.exact), (1, true));

        // the zero floor surjects only onto zero
        let tiny = ThetaVector::from_labels(Arc::clone(&reg), &[("R", Rational::new(1, 2))]).unwrap();
        assert_eq!(surj_on_theta(&tiny, &k, &oracle).unwrap().value, 0);

        // free class against the free module: constant sequence 1
        let free = ThetaVector::from_labels(Arc::clone(&reg), &[("R", Rational::from_integer(1))]).unwrap();
        let est = asn_on_theta(&free, &r, &oracle, 4).unwrap();
        assert!(est.exact);
        for v in &est.sequence {
            assert_eq!(*v, Rational::from_integer(1));
        }
        assert_eq!(est.lower, Rational::from_integer(1));
        assert_eq!(est.upper, Rational::from_integer(1));

        // zero class: everything collapses to zero
        let zero = ThetaVector::zero(Arc::clone(&reg));
        let est = asn_on_theta(&zero, &k, &oracle, 3).unwrap();
        assert_eq!(est.estimate, Rational::from_integer(0));
        assert_eq!(est.upper, Rational::from_integer(0));

        // nondecreasing normalized values for [k] + [R] against k, with the
        // final estimate at least surj_k of the floor
        let mixed = ThetaVector::from_labels(
            Arc::clone(&reg),
            &[("k", Rational::from_integer(1)), ("R", Rational::from_integer(1))],
        )
        .unwrap();
        let est = asn_on_theta(&mixed, &k, &oracle, 4).unwrap();
        let first = est.sequence[0];
        assert_eq!(first, Rational::from_integer(2));
        assert!(est.sequence.iter().all(|v| *v >= first));
        assert!(est.estimate >= first);
    }

    #[test]
    fn split_surjection_examples() {
        let alg = f2x2();
        let cfg = SearchConfig::default();
        let r = FdModule::regular(Arc::clone(&alg));
        let k = FdModule::simple(Arc::clone(&alg));

        // M' = 0 returns φ unchanged
        let zero = FdModule::zero(Arc::clone(&alg));
        let res = surj_number(&r, &k, &cfg).unwrap();
        let SurjCertificate::Found(phi) = res.certificate else {
            panic!()
        };
        let split = split_surjection(&r, &zero, &k, &phi).unwrap();
        assert_eq!(split.map, phi);

        // M = R, M' = k, N = k, m = 2: drops one index
        let m = r.direct_sum(&k).unwrap();
        let res = surj_number(&m, &k, &cfg).unwrap();
        assert_eq!(res.value, 2);
        let SurjCertificate::Found(phi) = res.certificate else {
            panic!()
        };
        let split = split_surjection(&r, &k, &k, &phi).unwrap();
        assert_eq!(split.dropped.len(), 1);
        assert_eq!(split.remaining, 1);

        // M = R², M' = R, N = R, m = 3: drops at most one
        let m = r.power(2).direct_sum(&r).unwrap();
        let res = surj_number(&m, &r, &cfg).unwrap();
        assert_eq!(res.value, 3);
        let SurjCertificate::Found(phi) = res.certificate else {
            panic!()
        };
        let split = split_surjection(&r.power(2), &r, &r, &phi).unwrap();
        assert!(split.dropped.len() <= 1);
        assert!(split.remaining >= 2);
    }
}
