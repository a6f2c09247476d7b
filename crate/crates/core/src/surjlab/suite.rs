//! Property battery for the surjective-number calculus.
//!
//! Runs two instance pools — an exhaustive one over all modules of bounded
//! dimension over F_2[x]/(x^2), and a seeded random one over
//! F_3[x,y]/(x,y)^2 — and checks every inequality of the calculus on them:
//! superadditivity and the power bound for surjective numbers, the two-sided
//! sandwich, monotonicity and boundedness of the normalized values, the
//! class-vector counterparts, and the bracket properties of the asymptotic
//! estimator. Only exact search results are counted as instances; violations
//! must be zero.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    asn_estimate, nsurj, split_surjection, surj_number, FdModule, LocalAlgebra, RegistryOracle,
    SearchConfig, SurjCertificate,
};
use crate::theta::{asn_on_theta, surj_on_theta, NormKind, Rational, ThetaVector};

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Dimension cap for the exhaustive pool over F_2[x]/(x^2).
    pub f2_max_dim: usize,
    /// Minimum number of counted instances over F_3[x,y]/(x,y)^2.
    pub f3_target: u64,
    /// Power cap for nsurj sequences.
    pub r_max: u64,
    /// Evaluation cap for the class-vector estimator.
    pub t_max: u64,
    pub search: SearchConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0x5EED,
            f2_max_dim: 3,
            f3_target: 1000,
            r_max: 4,
            t_max: 3,
            search: SearchConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub name: String,
    pub instances: u64,
    pub violations: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub f2_instances: u64,
    pub f3_instances: u64,
    pub split_maps_checked: u64,
    pub total_violations: u64,
    pub lemmas: Vec<LemmaReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }
}

const LEMMA_NAMES: &[&str] = &[
    "surj-superadditive",
    "surj-power",
    "surj-sandwich",
    "nsurj-multiple-monotone",
    "nsurj-at-least-surj",
    "nsurj-mu-bound",
    "nsurj-convergence",
    "theta-surj-superadditive",
    "theta-surj-lipschitz",
    "asn-homogeneous",
    "asn-between-surj-and-mu",
    "asn-superadditive",
    "asn-lipschitz",
    "split-surjection-verified",
];

struct Tally {
    counts: Vec<(u64, u64)>,
}

impl Tally {
    fn new() -> Self {
        Self {
            counts: vec![(0, 0); LEMMA_NAMES.len()],
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        let i = LEMMA_NAMES
            .iter()
            .position(|&n| n == name)
            .expect("registered lemma name");
        self.counts[i].0 += 1;
        if !ok {
            self.counts[i].1 += 1;
        }
    }

    fn instances(&self) -> u64 {
        self.counts.iter().map(|c| c.0).sum()
    }
}

/// All module isomorphism classes of dimension ≤ cap over F_2[x]/(x^2):
/// multisets of copies of R and k.
fn f2_modules(alg: &Arc<LocalAlgebra>, cap: usize) -> Vec<FdModule> {
    let mut out = Vec::new();
    let r = FdModule::regular(Arc::clone(alg));
    let k = FdModule::simple(Arc::clone(alg));
    for nr in 0..=(cap / 2) {
        for nk in 0..=(cap - 2 * nr) {
            if nr + nk == 0 {
                continue;
            }
            let mut m = FdModule::zero(Arc::clone(alg));
            if nr > 0 {
                m = m.direct_sum(&r.power(nr as u64)).unwrap();
            }
            if nk > 0 {
                m = m.direct_sum(&k.power(nk as u64)).unwrap();
            }
            out.push(m);
        }
    }
    out
}

fn exact_surj(m: &FdModule, n: &FdModule, cfg: &SearchConfig) -> Option<u64> {
    let res = surj_number(m, n, cfg).ok()?;
    res.exact.then_some(res.value)
}

fn module_battery(
    modules: &[FdModule],
    triples: &[(usize, usize, usize)],
    cfg: &SuiteConfig,
    tally: &mut Tally,
    split_checked: &mut u64,
) {
    for &(im, imp, inn) in triples {
        let (m, mp, n) = (&modules[im], &modules[imp], &modules[inn]);
        let Some(s_m) = exact_surj(m, n, &cfg.search) else {
            continue;
        };
        let Some(s_mp) = exact_surj(mp, n, &cfg.search) else {
            continue;
        };
        let sum = m.direct_sum(mp).unwrap();
        let Some(s_sum) = exact_surj(&sum, n, &cfg.search) else {
            continue;
        };

        tally.check("surj-superadditive", s_m + s_mp <= s_sum);
        tally.check(
            "surj-sandwich",
            s_mp <= s_sum - s_m && s_sum - s_m <= mp.mu(),
        );

        for r in 2..=cfg.r_max.min(3) {
            if let Some(s_pow) = exact_surj(&m.power(r), n, &cfg.search) {
                tally.check("surj-power", r * s_m <= s_pow);
            }
        }

        // normalized values along the power sequence
        let mut values = Vec::new();
        let mut all_exact = true;
        for r in 1..=cfg.r_max {
            match nsurj(m, n, r, &cfg.search) {
                Ok((v, res)) if res.exact => values.push(v),
                _ => {
                    all_exact = false;
                    break;
                }
            }
        }
        if all_exact {
            let mu_bound = Rational::new(m.mu() as i64, n.mu() as i64);
            for (i, v) in values.iter().enumerate() {
                let r = (i + 1) as u64;
                tally.check("nsurj-at-least-surj", *v >= Rational::from_integer(s_m as i64));
                tally.check("nsurj-mu-bound", *v <= mu_bound);
                for k in 2..=cfg.r_max {
                    let kr = k * r;
                    if kr <= cfg.r_max {
                        tally.check(
                            "nsurj-multiple-monotone",
                            values[(kr - 1) as usize] >= *v,
                        );
                    }
                }
            }
        }

        // split a found surjection of M ⊕ M' and verify the composition
        if s_sum >= 1 {
            if let Ok(res) = surj_number(&sum, n, &cfg.search) {
                if let SurjCertificate::Found(phi) = res.certificate {
                    // the composed surjection witnesses surj(M) ≥ m − s,
                    // and the cover dropped at most μ(M') blocks
                    let ok = match split_surjection(m, mp, n, &phi) {
                        Ok(split) => {
                            *split_checked += 1;
                            split.remaining + split.dropped.len() as u64 == res.value
                                && s_m >= split.remaining
                                && split.dropped.len() as u64 <= mp.mu()
                        }
                        Err(_) => false,
                    };
                    tally.check("split-surjection-verified", ok);
                }
            }
        }
    }
}

/// Convergence evidence on curated pairs whose sequences stabilize quickly.
fn convergence_battery(alg: &Arc<LocalAlgebra>, pairs: &[(&str, &str)], cfg: &SuiteConfig, tally: &mut Tally) {
    for (mname, nname) in pairs {
        let m = FdModule::parse(alg, mname).unwrap();
        let n = FdModule::parse(alg, nname).unwrap();
        let Ok(lab) = asn_estimate(&m, &n, cfg.r_max, &cfg.search) else {
            continue;
        };
        if !lab.exact {
            continue;
        }
        // doubling monotonicity
        for r in 1..=cfg.r_max {
            if 2 * r <= cfg.r_max {
                tally.check(
                    "nsurj-convergence",
                    lab.values[(2 * r - 1) as usize] >= lab.values[(r - 1) as usize],
                );
            }
        }
        // the tail sits within 1/r_max of the running max, and under the bound
        let max = lab.values.iter().copied().max().unwrap();
        let last = *lab.values.last().unwrap();
        let slack = Rational::new(1, cfg.r_max as i64);
        tally.check("nsurj-convergence", last + slack >= max && max <= lab.upper);
    }
}

fn random_coeff(rng: &mut ChaCha8Rng, allow_negative: bool) -> Rational {
    let lo = if allow_negative { -2 } else { 0 };
    Rational::new(rng.gen_range(lo..=4), 2)
}

fn random_theta(
    rng: &mut ChaCha8Rng,
    oracle: &RegistryOracle,
    allow_negative: bool,
) -> ThetaVector {
    let reg = oracle.registry();
    let n = reg.len();
    let coeffs: Vec<(usize, Rational)> = (0..n)
        .map(|i| (i, random_coeff(rng, allow_negative)))
        .collect();
    ThetaVector::from_coeffs(reg, coeffs)
}

fn intervals_intersect(lo1: Rational, hi1: Rational, lo2: Rational, hi2: Rational) -> bool {
    lo1.max(lo2) <= hi1.min(hi2)
}

fn theta_battery(
    oracle: &RegistryOracle,
    target_label: &str,
    rounds: u64,
    seed: u64,
    cfg: &SuiteConfig,
    tally: &mut Tally,
) {
    let target = oracle.module_by_label(target_label).unwrap().clone();
    let mu_n = target.mu();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..rounds {
        let alpha = random_theta(&mut rng, oracle, false);
        let beta = random_theta(&mut rng, oracle, false);

        let s_a = surj_on_theta(&alpha, &target, oracle).unwrap();
        let s_b = surj_on_theta(&beta, &target, oracle).unwrap();
        let sum = alpha.add(&beta).unwrap();
        let s_sum = surj_on_theta(&sum, &target, oracle).unwrap();
        if s_a.exact && s_b.exact && s_sum.exact {
            tally.check("theta-surj-superadditive", s_a.value + s_b.value <= s_sum.value);
        }

        // the Lipschitz bound holds for arbitrary sign patterns
        let gamma = random_theta(&mut rng, oracle, true);
        let s_g = surj_on_theta(&gamma, &target, oracle).unwrap();
        if s_a.exact && s_g.exact {
            let diff_norm = alpha.sub(&gamma).unwrap().norm(NormKind::MuWeighted);
            let (_, nu) = alpha.inf(&gamma).unwrap().support_data();
            let gap = Rational::from_integer((s_a.value as i64 - s_g.value as i64).abs());
            tally.check(
                "theta-surj-lipschitz",
                gap <= diff_norm + Rational::from_integer(nu as i64),
            );
        }

        let est_a = asn_on_theta(&alpha, &target, oracle, cfg.t_max).unwrap();
        let est_b = asn_on_theta(&beta, &target, oracle, cfg.t_max).unwrap();
        let est_sum = asn_on_theta(&sum, &target, oracle, cfg.t_max).unwrap();
        if !(est_a.exact && est_b.exact && est_sum.exact) {
            continue;
        }

        // homogeneity: brackets of asn(kα) meet k·brackets of asn(α)
        for k in 0..=3i64 {
            let scaled = alpha.scale(Rational::from_integer(k));
            let est_k = asn_on_theta(&scaled, &target, oracle, cfg.t_max).unwrap();
            if est_k.exact {
                let kq = Rational::from_integer(k);
                tally.check(
                    "asn-homogeneous",
                    intervals_intersect(est_k.lower, est_k.upper, kq * est_a.lower, kq * est_a.upper),
                );
            }
        }

        // the estimate sits between surj(α) and ‖α‖/μ(N)
        if s_a.exact {
            let norm_bound = alpha.norm(NormKind::MuWeighted) / Rational::from_integer(mu_n as i64);
            tally.check(
                "asn-between-surj-and-mu",
                Rational::from_integer(s_a.value as i64) <= est_a.estimate
                    && est_a.estimate <= norm_bound
                    && est_a.lower <= est_a.upper,
            );
        }

        // superadditivity seen through the brackets
        tally.check("asn-superadditive", est_sum.upper >= est_a.lower + est_b.lower);

        // Lipschitz continuity seen through the brackets
        let dist = (est_a.lower - est_b.upper).max(est_b.lower - est_a.upper);
        let diff_norm = alpha.sub(&beta).unwrap().norm(NormKind::MuWeighted);
        tally.check("asn-lipschitz", dist <= diff_norm);
    }
}

/// Run the whole battery and report per-lemma instance and violation counts.
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut tally = Tally::new();
    let mut split_checked = 0u64;

    // exhaustive pool over F_2[x]/(x^2)
    let f2 = LocalAlgebra::truncated_polynomial(2, 2);
    if cfg.f2_max_dim > 0 {
        let mods = f2_modules(&f2, cfg.f2_max_dim);
        let mut triples = Vec::new();
        for im in 0..mods.len() {
            for imp in 0..mods.len() {
                for inn in 0..mods.len() {
                    triples.push((im, imp, inn));
                }
            }
        }
        module_battery(&mods, &triples, cfg, &mut tally, &mut split_checked);
        convergence_battery(
            &f2,
            &[("R", "R"), ("k", "k"), ("R+k", "k"), ("R+k", "R"), ("m", "k")],
            cfg,
            &mut tally,
        );
    }
    let f2_instances = tally.instances();

    // seeded random pool over F_3[x,y]/(x,y)^2
    let f3 = LocalAlgebra::square_zero_two_vars(3);
    if cfg.f3_target > 0 {
        let f3_mods: Vec<FdModule> = vec![
            FdModule::simple(Arc::clone(&f3)),
            FdModule::parse(&f3, "k+k").unwrap(),
            FdModule::regular(Arc::clone(&f3)),
            FdModule::maximal_ideal(Arc::clone(&f3)),
            FdModule::parse(&f3, "R+k").unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut attempts = 0;
        while tally.instances() - f2_instances < cfg.f3_target / 2 && attempts < 10_000 {
            let t = (
                rng.gen_range(0..f3_mods.len()),
                rng.gen_range(0..f3_mods.len()),
                rng.gen_range(0..f3_mods.len()),
            );
            module_battery(&f3_mods, &[t], cfg, &mut tally, &mut split_checked);
            attempts += 1;
        }
        convergence_battery(&f3, &[("R", "R"), ("k", "k"), ("m", "k"), ("R+k", "k")], cfg, &mut tally);

        // class-vector battery over the random testbed
        let oracle_f3 = RegistryOracle::standard(&f3, cfg.search);
        let mut f3_rounds = 0;
        while tally.instances() - f2_instances < cfg.f3_target && f3_rounds < 200 {
            theta_battery(
                &oracle_f3,
                "k",
                8,
                cfg.seed ^ (0xA11CE + f3_rounds),
                cfg,
                &mut tally,
            );
            f3_rounds += 1;
        }
    }
    let f3_instances = tally.instances() - f2_instances;

    if cfg.f2_max_dim > 0 {
        let oracle_f2 = RegistryOracle::standard(&f2, cfg.search);
        theta_battery(&oracle_f2, "k", 16, cfg.seed ^ 0xBEEF, cfg, &mut tally);
        theta_battery(&oracle_f2, "R", 8, cfg.seed ^ 0xCAFE, cfg, &mut tally);
    }

    let lemmas: Vec<LemmaReport> = LEMMA_NAMES
        .iter()
        .zip(tally.counts.iter())
        .map(|(&name, &(instances, violations))| LemmaReport {
            name: name.to_string(),
            instances,
            violations,
        })
        .collect();
    let total_violations = lemmas.iter().map(|l| l.violations).sum();
    SuiteReport {
        seed: cfg.seed,
        f2_instances,
        f3_instances,
        split_maps_checked: split_checked,
        total_violations,
        lemmas,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig {
            f3_target: 100,
            ..SuiteConfig::default()
        };
        let report = run_suite(&cfg);
        assert!(report.passed(), "violations: {:?}", report.lemmas);
        assert!(report.f2_instances > 0);
        assert!(report.f3_instances >= 100);
        assert!(report.split_maps_checked > 0);
    }

    #[test]
    fn suite_is_deterministic() {
        let cfg = SuiteConfig {
            f3_target: 50,
            ..SuiteConfig::default()
        };
        let a = serde_json::to_string(&run_suite(&cfg)).unwrap();
        let b = serde_json::to_string(&run_suite(&cfg)).unwrap();
        assert_eq!(a, b);
    }
}
