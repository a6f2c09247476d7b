//! The formal class space of indecomposable module labels.
//!
//! A class vector is a finitely supported rational combination of labels
//! drawn from a registry; every label carries its generator count μ. The
//! module provides the floor truncation, support data, μ-weighted norm,
//! componentwise lattice operations, and the estimator that brackets the
//! asymptotic surjective number of a class vector against a concrete
//! surjection oracle.
//!
//! Coefficients are exact rationals: every coefficient arising in practice
//! is rational, and exactness keeps the floor unambiguous at integer
//! boundaries.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::rational::Ratio;
use num::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fp::MatFp;

pub type Rational = Ratio<i64>;

/// Format a rational as `num/den` (denominator always printed).
pub fn rational_string(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error("class vectors belong to different registries")]
    RegistryMismatch,
    #[error("label {0:?} is not registered")]
    UnknownLabel(String),
    #[error("oracle cannot realize label index {0}")]
    Unrealizable(usize),
}

/// A finite registry of indecomposable labels with their generator counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndecRegistry {
    labels: Vec<String>,
    mu: Vec<u64>,
}

impl IndecRegistry {
    pub fn new(entries: Vec<(String, u64)>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for (label, mu) in &entries {
            assert!(seen.insert(label.clone()), "duplicate label {label:?}");
            assert!(*mu >= 1, "label {label:?} must have mu >= 1");
        }
        let (labels, mu) = entries.into_iter().unzip();
        Self { labels, mu }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn mu(&self, i: usize) -> u64 {
        self.mu[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Which norm to put on the class space. The μ-weighted one is the default;
/// the plain ℓ¹ variant is kept for experimentation only — the estimator's
/// upper bracket is always μ-weighted, since only that bound is valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormKind {
    #[default]
    MuWeighted,
    Plain,
}

/// A finitely supported rational combination of registry labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaVector {
    registry: Arc<IndecRegistry>,
    coeffs: BTreeMap<usize, Rational>,
}

impl ThetaVector {
    pub fn zero(registry: Arc<IndecRegistry>) -> Self {
        Self {
            registry,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(
        registry: Arc<IndecRegistry>,
        coeffs: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (i, c) in coeffs {
            assert!(i < registry.len(), "label index {i} out of range");
            if !c.is_zero() {
                map.insert(i, c);
            }
        }
        Self {
            registry,
            coeffs: map,
        }
    }

    pub fn from_labels(
        registry: Arc<IndecRegistry>,
        entries: &[(&str, Rational)],
    ) -> Result<Self, ThetaError> {
        let mut coeffs = Vec::new();
        for (label, c) in entries {
            let i = registry
                .index_of(label)
                .ok_or_else(|| ThetaError::UnknownLabel(label.to_string()))?;
            coeffs.push((i, *c));
        }
        Ok(Self::from_coeffs(registry, coeffs))
    }

    /// The basis vector `1·[label]`.
    pub fn basis(registry: Arc<IndecRegistry>, index: usize) -> Self {
        Self::from_coeffs(registry, [(index, Rational::from_integer(1))])
    }

    pub fn registry(&self) -> &Arc<IndecRegistry> {
        &self.registry
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(&i).copied().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, Rational)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_registry(&self, other: &Self) -> Result<(), ThetaError> {
        if Arc::ptr_eq(&self.registry, &other.registry) || self.registry == other.registry {
            Ok(())
        } else {
            Err(ThetaError::RegistryMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ThetaError> {
        self.same_registry(other)?;
        let mut coeffs = self.coeffs.clone();
        for (&i, &c) in &other.coeffs {
            let v = coeffs.entry(i).or_insert_with(Rational::zero);
            *v += c;
            if v.is_zero() {
                coeffs.remove(&i);
            }
        }
        Ok(Self {
            registry: Arc::clone(&self.registry),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ThetaError> {
        self.add(&other.scale(Rational::from_integer(-1)))
    }

    pub fn scale(&self, k: Rational) -> Self {
        if k.is_zero() {
            return Self::zero(Arc::clone(&self.registry));
        }
        Self {
            registry: Arc::clone(&self.registry),
            coeffs: self.coeffs.iter().map(|(&i, &c)| (i, c * k)).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Per-label `max(0, floor(c))`; identifies the module class realized
    /// by the vector.
    pub fn floor_part(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(&i, &c)| {
                let fl = c.floor().to_integer();
                (fl > 0).then_some((i, Rational::from_integer(fl)))
            })
            .collect();
        Self {
            registry: Arc::clone(&self.registry),
            coeffs,
        }
    }

    /// Floor part as `(label index, multiplicity)` pairs.
    pub fn floor_summands(&self) -> Vec<(usize, u64)> {
        self.coeffs
            .iter()
            .filter_map(|(&i, &c)| {
                let fl = c.floor().to_integer();
                (fl > 0).then_some((i, fl as u64))
            })
            .collect()
    }

    /// Support (labels with strictly positive coefficient) and ν, the total
    /// generator count of the direct sum of the supported labels.
    pub fn support_data(&self) -> (Vec<usize>, u64) {
        let supp: Vec<usize> = self
            .coeffs
            .iter()
            .filter(|(_, c)| c.is_positive())
            .map(|(&i, _)| i)
            .collect();
        let nu = supp.iter().map(|&i| self.registry.mu(i)).sum();
        (supp, nu)
    }

    pub fn norm(&self, kind: NormKind) -> Rational {
        self.coeffs
            .iter()
            .map(|(&i, &c)| {
                let w = match kind {
                    NormKind::MuWeighted => self.registry.mu(i),
                    NormKind::Plain => 1,
                };
                c.abs() * Rational::from_integer(w as i64)
            })
            .sum()
    }

    pub fn sup(&self, other: &Self) -> Result<Self, ThetaError> {
        self.merge(other, |a, b| a.max(b))
    }

    pub fn inf(&self, other: &Self) -> Result<Self, ThetaError> {
        self.merge(other, |a, b| a.min(b))
    }

    pub fn leq(&self, other: &Self) -> Result<bool, ThetaError> {
        self.same_registry(other)?;
        let keys: std::collections::BTreeSet<usize> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        Ok(keys.into_iter().all(|i| self.coeff(i) <= other.coeff(i)))
    }

    fn merge(&self, other: &Self, f: impl Fn(Rational, Rational) -> Rational) -> Result<Self, ThetaError> {
        self.same_registry(other)?;
        let keys: std::collections::BTreeSet<usize> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        Ok(Self::from_coeffs(
            Arc::clone(&self.registry),
            keys.into_iter().map(|i| (i, f(self.coeff(i), other.coeff(i)))),
        ))
    }

    /// JSON object `{label: "num/den"}` in registry order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (&i, &c) in &self.coeffs {
            obj.insert(
                self.registry.label(i).to_string(),
                serde_json::Value::String(rational_string(c)),
            );
        }
        serde_json::Value::Object(obj)
    }
}

/// Outcome of one oracle surjective-number computation.
#[derive(Debug, Clone)]
pub struct SurjOutcome {
    pub value: u64,
    /// True when the value is exact, not just a certified lower bound.
    pub exact: bool,
    /// A verified surjection witnessing the value, when one was found.
    pub witness: Option<MatFp>,
}

/// A concrete module category able to realize registry labels and compute
/// surjective numbers.
pub trait SurjOracle {
    type Module: Clone;

    /// Build the direct sum of the labelled indecomposables.
    fn realize(&self, summands: &[(usize, u64)]) -> Result<Self::Module, ThetaError>;

    /// Number of generators of a module.
    fn mu(&self, module: &Self::Module) -> u64;

    /// The surjective number of `source` with respect to `target`.
    fn surj(&self, source: &Self::Module, target: &Self::Module) -> SurjOutcome;
}

/// surj_N(α), evaluated through the oracle on the floor part of α.
pub fn surj_on_theta<O: SurjOracle>(
    alpha: &ThetaVector,
    target: &O::Module,
    oracle: &O,
) -> Result<SurjOutcome, ThetaError> {
    let summands = alpha.floor_summands();
    if summands.is_empty() {
        return Ok(SurjOutcome {
            value: 0,
            exact: true,
            witness: None,
        });
    }
    let m = oracle.realize(&summands)?;
    Ok(oracle.surj(&m, target))
}

/// Bracketed estimate of the asymptotic surjective number of a class vector.
#[derive(Debug, Clone)]
pub struct AsnEstimate {
    /// `surj(tα)/t` for `t = 1..=t_max`.
    pub sequence: Vec<Rational>,
    /// The value at `t = t_max`.
    pub estimate: Rational,
    /// Best certified lower bound: the maximum of the sequence (every term
    /// bounds the limit from below, by superadditivity along multiples).
    pub lower: Rational,
    /// `‖α‖_μ / μ(N)`, an upper bound for the limit.
    pub upper: Rational,
    /// True when every surjective number in the sequence was exact.
    pub exact: bool,
}

/// Default evaluation cap for the asymptotic estimator.
pub const DEFAULT_T_MAX: u64 = 8;

/// Estimate asn_N(α) by evaluating `surj_N(tα)/t` for `t = 1..=t_max`.
///
/// The limit exists but comes with no rate, so the estimator reports explicit
/// brackets instead of pretending convergence. A `t_max` too small to witness
/// positivity is not an error — the brackets simply stay loose.
pub fn asn_on_theta<O: SurjOracle>(
    alpha: &ThetaVector,
    target: &O::Module,
    oracle: &O,
    t_max: u64,
) -> Result<AsnEstimate, ThetaError> {
    assert!(t_max >= 1, "need at least one evaluation point");
    let mu_n = oracle.mu(target);
    assert!(mu_n >= 1, "target module must be nonzero");
    let mut sequence = Vec::with_capacity(t_max as usize);
    let mut exact = true;
    for t in 1..=t_max {
        let scaled = alpha.scale(Rational::from_integer(t as i64));
        let outcome = surj_on_theta(&scaled, target, oracle)?;
        exact &= outcome.exact;
        sequence.push(Rational::new(outcome.value as i64, t as i64));
    }
    let estimate = *sequence.last().expect("t_max >= 1");
    let lower = sequence.iter().copied().max().expect("nonempty");
    let upper = alpha.norm(NormKind::MuWeighted) / Rational::from_integer(mu_n as i64);
    Ok(AsnEstimate {
        sequence,
        estimate,
        lower,
        upper,
        exact,
    })
}

/// Frobenius-side context: prime, Krull dimension, log_p[k:k^p], and the
/// Frobenius limit class vector supplied as input data.
#[derive(Debug, Clone)]
pub struct FrobeniusContext {
    pub p: u64,
    pub krull_dim: u32,
    pub frak_d: u32,
    pub delta: u32,
    pub fl: ThetaVector,
}

impl FrobeniusContext {
    pub fn new(p: u64, krull_dim: u32, frak_d: u32, fl: ThetaVector) -> Self {
        assert!(fl.is_nonnegative(), "a Frobenius limit is nonnegative");
        Self {
            p,
            krull_dim,
            frak_d,
            delta: krull_dim + frak_d,
            fl,
        }
    }
}

/// s(M) evaluated as the asymptotic surjective number of the Frobenius limit
/// with respect to M. A positive lower bracket certifies s(M) > 0.
pub fn s_from_fl<O: SurjOracle>(
    ctx: &FrobeniusContext,
    module: &O::Module,
    oracle: &O,
    t_max: u64,
) -> Result<AsnEstimate, ThetaError> {
    asn_on_theta(&ctx.fl, module, oracle, t_max)
}

#[derive(Debug, Clone)]
pub enum PositivityCertificate {
    /// A verified surjection from a module supported in supp(fl).
    Surjection { copies: u64, witness: MatFp },
    /// Search exhausted up to the given number of copies of the support sum.
    ExhaustedAt { copies: u64 },
}

#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub positive: bool,
    pub certificate: PositivityCertificate,
}

/// Search for a surjection N → M with supp([N]) inside the support of the
/// Frobenius limit, trying N = Y^⊕r for the support sum Y and r up to
/// `max_copies`. Finding one certifies positivity of s(M).
pub fn positivity_check<O: SurjOracle>(
    ctx: &FrobeniusContext,
    module: &O::Module,
    oracle: &O,
    max_copies: u64,
) -> Result<PositivityReport, ThetaError> {
    let (supp, _) = ctx.fl.support_data();
    for copies in 1..=max_copies {
        let summands: Vec<(usize, u64)> = supp.iter().map(|&i| (i, copies)).collect();
        if summands.is_empty() {
            break;
        }
        let n = oracle.realize(&summands)?;
        let outcome = oracle.surj(&n, module);
        if outcome.value >= 1 {
            if let Some(witness) = outcome.witness {
                return Ok(PositivityReport {
                    positive: true,
                    certificate: PositivityCertificate::Surjection { copies, witness },
                });
            }
        }
    }
    Ok(PositivityReport {
        positive: false,
        certificate: PositivityCertificate::ExhaustedAt { copies: max_copies },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry() -> Arc<IndecRegistry> {
        Arc::new(IndecRegistry::new(vec![
            ("M1".into(), 2),
            ("M2".into(), 1),
        ]))
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn floor_part_examples() {
        let reg = registry();
        let a = ThetaVector::from_labels(Arc::clone(&reg), &[("M1", rat(17, 10)), ("M2", rat(-3, 10))])
            .unwrap();
        let fl = a.floor_part();
        assert_eq!(fl.coeff(0), rat(1, 1));
        assert_eq!(fl.coeff(1), rat(0, 1));

        // integral nonnegative vectors are fixed points
        let b = ThetaVector::from_labels(Arc::clone(&reg), &[("M1", rat(2, 1)), ("M2", rat(3, 1))])
            .unwrap();
        assert_eq!(b.floor_part(), b);

        // floor boundary
        let c = ThetaVector::from_labels(reg, &[("M1", rat(2, 1)), ("M2", rat(999, 1000))]).unwrap();
        let fl = c.floor_part();
        assert_eq!(fl.coeff(0), rat(2, 1));
        assert_eq!(fl.coeff(1), rat(0, 1));
    }

    #[test]
    fn support_and_nu() {
        let reg = registry();
        let zero = ThetaVector::zero(Arc::clone(&reg));
        assert_eq!(zero.support_data(), (vec![], 0));

        let half = ThetaVector::from_labels(Arc::clone(&reg), &[("M1", rat(1, 2))]).unwrap();
        assert_eq!(half.support_data(), (vec![0], 2));

        let mixed = ThetaVector::from_labels(reg, &[("M1", rat(1, 1)), ("M2", rat(-1, 1))]).unwrap();
        assert_eq!(mixed.support_data(), (vec![0], 2));
    }

    #[test]
    fn norm_examples() {
        let reg = registry();
        assert_eq!(ThetaVector::zero(Arc::clone(&reg)).norm(NormKind::MuWeighted), rat(0, 1));

        // ‖[Y(β)]‖ = ν(β) for β ≥ 0: sum of μ over the support with unit coefficients
        let beta = ThetaVector::from_labels(Arc::clone(&reg), &[("M1", rat(3, 4)), ("M2", rat(2, 1))])
            .unwrap();
        let (supp, nu) = beta.support_data();
        let y = ThetaVector::from_coeffs(
            Arc::clone(&reg),
            supp.into_iter().map(|i| (i, rat(1, 1))),
        );
        assert_eq!(y.norm(NormKind::MuWeighted), Rational::from_integer(nu as i64));

        let neg = ThetaVector::from_labels(reg, &[("M1", rat(-2, 1))]).unwrap();
        assert_eq!(neg.norm(NormKind::MuWeighted), rat(4, 1));
        assert_eq!(neg.norm(NormKind::Plain), rat(2, 1));
    }

    #[test]
    fn lattice_examples() {
        let reg = registry();
        let a = ThetaVector::from_labels(Arc::clone(&reg), &[("M1", rat(2, 1))]).unwrap();
        let b = ThetaVector::from_labels(Arc::clone(&reg), &[("M1", rat(-1, 1)), ("M2", rat(1, 1))])
            .unwrap();
        assert_eq!(a.sup(&a).unwrap(), a);

        let e1 = ThetaVector::basis(Arc::clone(&reg), 0);
        let e2 = ThetaVector::basis(Arc::clone(&reg), 1);
        assert!(e1.inf(&e2).unwrap().is_zero());

        let s = a.sup(&b).unwrap();
        assert_eq!(s.coeff(0), rat(2, 1));
        assert_eq!(s.coeff(1), rat(1, 1));
        assert!(b.leq(&s).unwrap());
        assert!(!s.leq(&b).unwrap());
    }

    #[test]
    fn floor_scaling_property() {
        // floor_part(kα) ≥ k·floor_part(α) componentwise for integer k ≥ 0
        let reg = registry();
        let a = ThetaVector::from_labels(Arc::clone(&reg), &[("M1", rat(7, 5)), ("M2", rat(-1, 3))])
            .unwrap();
        for k in 0..5i64 {
            let lhs = a.scale(rat(k, 1)).floor_part();
            let rhs = a.floor_part().scale(rat(k, 1));
            assert!(rhs.leq(&lhs).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn json_shape() {
        let reg = registry();
        let a = ThetaVector::from_labels(reg, &[("M1", rat(1, 20))]).unwrap();
        assert_eq!(a.to_json().to_string(), r#"{"M1":"1/20"}"#);
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let a = ThetaVector::basis(registry(), 0);
        let other = Arc::new(IndecRegistry::new(vec![("X".into(), 1)]));
        let b = ThetaVector::basis(other, 0);
        assert!(matches!(a.add(&b), Err(ThetaError::RegistryMismatch)));
        assert!(matches!(a.sup(&b), Err(ThetaError::RegistryMismatch)));
        assert!(matches!(a.leq(&b), Err(ThetaError::RegistryMismatch)));
    }
}
