//! Seeded sweeps over random modules that exercise the support checkers.
//!
//! Trial `i` of a sweep draws everything from the stream `(seed, kind, cell, i)`,
//! so any failing trial can be replayed on its own.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{ElementaryAbelian, FdModule, Hopf, SubgroupEmbedding};
use crate::pgroup::{FiniteGroup, GroupModule};
use crate::random::{random_embedding, random_module, stream};
use crate::resolution::{gen_degree, multi_indices, Cocycle};
use crate::support::{
    check_chouinard, check_induction, check_koszul, check_oracle, check_projectivity, check_subgroup, check_tensor,
    CheckReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    Tensor,
    Subgroup,
    Induction,
    Oracle,
    Projectivity,
    Koszul,
}

impl SweepKind {
    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Tensor => "tensor",
            SweepKind::Subgroup => "subgroup",
            SweepKind::Induction => "induction",
            SweepKind::Oracle => "oracle",
            SweepKind::Projectivity => "projectivity",
            SweepKind::Koszul => "koszul",
        }
    }
}

/// One cell of a sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub seed: u64,
    pub p: u32,
    pub r: usize,
    pub trials: u64,
    /// Bound on the dimension of the largest module a trial builds.
    pub max_dim: usize,
    /// Embedding corank for subgroup and induction sweeps.
    pub corank: usize,
    pub hopf: Hopf,
}

impl SweepConfig {
    pub fn new(kind: SweepKind, p: u32, r: usize) -> SweepConfig {
        SweepConfig { kind, seed: 42, p, r, trials: 20, max_dim: 12, corank: 1, hopf: Hopf::Group }
    }

    fn rng(&self, trial: u64) -> ChaCha8Rng {
        let cell = format!("{}/p{}/r{}/c{}", self.kind.name(), self.p, self.r, self.corank);
        stream(self.seed, &cell, trial)
    }
}

/// Inputs drawn for one trial together with the checker's verdict.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub trial: u64,
    pub inputs: Vec<(String, FdModule)>,
    pub embedding: Option<SubgroupEmbedding>,
    pub cocycle: Option<Cocycle>,
    pub report: CheckReport,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub config: SweepConfig,
    /// Sorted by trial index.
    pub records: Vec<TrialRecord>,
    pub elapsed: Duration,
}

impl SweepOutcome {
    pub fn passed(&self) -> usize {
        self.records.iter().filter(|r| r.report.pass).count()
    }
    pub fn failures(&self) -> Vec<&TrialRecord> {
        self.records.iter().filter(|r| !r.report.pass).collect()
    }
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.report.pass)
    }
}

/// A random module of dimension in `1..=max_dim`, a multiple of `p` when `divisible`.
pub fn sample_module(rng: &mut impl Rng, alg: ElementaryAbelian, max_dim: usize, divisible: bool) -> FdModule {
    let p = alg.p() as usize;
    let dim = if divisible && max_dim >= p {
        p * rng.gen_range(1..=max_dim / p)
    } else {
        rng.gen_range(1..=max_dim.max(1))
    };
    random_module(rng, alg, dim)
}

/// A nonzero cocycle `Σ c_a e_a^*` of the given degree.
pub fn sample_cocycle(rng: &mut impl Rng, alg: ElementaryAbelian, degree: usize) -> Cocycle {
    let n = multi_indices(alg.rank(), degree).len();
    loop {
        let values: Vec<u8> = (0..n).map(|_| rng.gen_range(0..alg.p() as u8)).collect();
        if values.iter().any(|&v| v != 0) {
            return Cocycle::new(alg, degree, values).expect("values in range");
        }
    }
}

/// Runs trial `i` of a sweep.
pub fn run_trial(cfg: &SweepConfig, trial: u64) -> Result<TrialRecord> {
    let start = Instant::now();
    let alg = ElementaryAbelian::new(cfg.p, cfg.r)?;
    let mut rng = cfg.rng(trial);
    let mut embedding = None;
    let mut cocycle = None;
    let need_corank = || {
        if cfg.corank >= cfg.r {
            return Err(Error::Config(format!("corank {} needs rank above it, got {}", cfg.corank, cfg.r)));
        }
        Ok(())
    };
    let (inputs, report) = match cfg.kind {
        SweepKind::Tensor => {
            let dm = rng.gen_range(1..=(cfg.max_dim / 2).max(1));
            let dn = rng.gen_range(1..=(cfg.max_dim / dm).max(1));
            let m = random_module(&mut rng, alg, dm);
            let n = random_module(&mut rng, alg, dn);
            let report = check_tensor(&m, &n, cfg.hopf)?;
            (vec![("M".to_string(), m), ("N".to_string(), n)], report)
        }
        SweepKind::Subgroup => {
            need_corank()?;
            let m = sample_module(&mut rng, alg, cfg.max_dim, false);
            let e = random_embedding(&mut rng, cfg.p, cfg.r, cfg.corank)?;
            let report = check_subgroup(&m, &e)?;
            embedding = Some(e);
            (vec![("M".to_string(), m)], report)
        }
        SweepKind::Induction => {
            need_corank()?;
            let sub = ElementaryAbelian::new(cfg.p, cfg.r - cfg.corank)?;
            let index = (cfg.p as usize).pow(cfg.corank as u32);
            let n = sample_module(&mut rng, sub, (cfg.max_dim / index).max(1), false);
            let e = random_embedding(&mut rng, cfg.p, cfg.r, cfg.corank)?;
            let report = check_induction(&n, &e)?;
            embedding = Some(e);
            (vec![("N".to_string(), n)], report)
        }
        SweepKind::Oracle => {
            let m = sample_module(&mut rng, alg, cfg.max_dim, true);
            let report = check_oracle(&m)?;
            (vec![("M".to_string(), m)], report)
        }
        SweepKind::Projectivity => {
            let m = sample_module(&mut rng, alg, cfg.max_dim, true);
            let report = check_projectivity(&m)?;
            (vec![("M".to_string(), m)], report)
        }
        SweepKind::Koszul => {
            let m = sample_module(&mut rng, alg, cfg.max_dim, false);
            let degree = if cfg.r == 2 && rng.gen_bool(0.5) { 2 * gen_degree(cfg.p) } else { gen_degree(cfg.p) };
            let zeta = sample_cocycle(&mut rng, alg, degree as usize);
            let report = check_koszul(&m, &zeta)?;
            cocycle = Some(zeta);
            (vec![("M".to_string(), m)], report)
        }
    };
    Ok(TrialRecord { trial, inputs, embedding, cocycle, report, elapsed: start.elapsed() })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    let start = Instant::now();
    let records = (0..cfg.trials).map(|t| run_trial(cfg, t)).collect::<Result<Vec<_>>>()?;
    Ok(SweepOutcome { config: cfg.clone(), records, elapsed: start.elapsed() })
}

/// A named group module together with the maximal elementary abelian subgroups
/// to detect projectivity on.
pub struct ChouinardCase {
    pub name: String,
    pub module: GroupModule,
    pub subgroups: Vec<Vec<usize>>,
}

/// Permutation module on the left cosets of the subgroup generated by `gens`.
pub fn permutation_module(group: &Arc<FiniteGroup>, p: u32, gens: &[usize]) -> Result<GroupModule> {
    let h = group.generated(gens);
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for g in 0..group.order() {
        if !cosets.iter().any(|c| c.contains(&g)) {
            let mut c: Vec<usize> = h.iter().map(|&x| group.mul(g, x)).collect();
            c.sort_unstable();
            cosets.push(c);
        }
    }
    let f = Field::prime(p)?;
    let n = cosets.len();
    let actions = (0..group.order())
        .map(|g| {
            Matrix::from_fn(&f, n, n, |i, j| {
                let image = group.mul(g, cosets[j][0]);
                cosets[i].contains(&image) as u8
            })
        })
        .collect();
    GroupModule::new(group.clone(), p, actions)
}

/// Modules over `Z/4` and `Q_8` at `p = 2`.
pub fn chouinard_cases() -> Result<Vec<ChouinardCase>> {
    let mut out = Vec::new();
    for (group, center) in [(FiniteGroup::cyclic(4)?, 2usize), (FiniteGroup::quaternion(), 4usize)] {
        let g = Arc::new(group);
        let sub = vec![vec![center]];
        let reg = GroupModule::regular(g.clone(), 2)?;
        let triv = GroupModule::trivial(g.clone(), 2)?;
        let mut cases = vec![
            ("regular".to_string(), reg.clone()),
            ("trivial".to_string(), triv.clone()),
            ("regular⊗trivial".to_string(), reg.tensor(&triv)?),
            ("cosets of center".to_string(), permutation_module(&g, 2, &[center])?),
        ];
        if g.order() == 8 {
            for (name, gen) in [("i", 1usize), ("j", 2), ("k", 3)] {
                let perm = permutation_module(&g, 2, &[gen])?;
                cases.push((format!("cosets of <{name}>"), perm.clone()));
                cases.push((format!("cosets of <{name}>⊗regular"), perm.tensor(&reg)?));
            }
        } else {
            let perm = permutation_module(&g, 2, &[1])?;
            cases.push(("cosets of whole group".into(), perm));
        }
        for (name, module) in cases {
            out.push(ChouinardCase { name: format!("{}: {name}", g.name()), module, subgroups: sub.clone() });
        }
    }
    Ok(out)
}

/// Runs every Chouinard case; returns the names of failing ones.
pub fn chouinard_failures() -> Result<Vec<String>> {
    let mut failed = Vec::new();
    for case in chouinard_cases()? {
        if !check_chouinard(&case.module, &case.subgroups)?.pass {
            failed.push(case.name);
        }
    }
    Ok(failed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_replay() {
        let cfg = SweepConfig { trials: 3, ..SweepConfig::new(SweepKind::Tensor, 2, 2) };
        let a = run_trial(&cfg, 1).unwrap().report;
        let b = run_trial(&cfg, 1).unwrap().report;
        assert_eq!(a.pass, b.pass);
        for ((na, va), (nb, vb)) in a.varieties.iter().zip(&b.varieties) {
            assert_eq!(na, nb);
            assert_eq!(va.generator_strings(), vb.generator_strings());
        }
    }

    #[test]
    fn small_sweeps_pass() {
        for kind in [SweepKind::Tensor, SweepKind::Subgroup, SweepKind::Induction, SweepKind::Oracle, SweepKind::Koszul] {
            let cfg = SweepConfig { trials: 4, max_dim: 6, ..SweepConfig::new(kind, 2, 2) };
            let out = run_sweep(&cfg).unwrap();
            assert!(out.all_passed(), "{kind:?}: {:?}", out.failures());
        }
    }

    #[test]
    fn corank_must_leave_a_subgroup() {
        let cfg = SweepConfig { corank: 2, ..SweepConfig::new(SweepKind::Subgroup, 2, 2) };
        assert!(run_trial(&cfg, 0).is_err());
    }

    #[test]
    fn chouinard_cases_pass() {
        assert!(chouinard_failures().unwrap().is_empty());
        let q = Arc::new(FiniteGroup::quaternion());
        let perm = permutation_module(&q, 2, &[1]).unwrap();
        assert_eq!(perm.dim(), 2);
        assert!(!perm.is_projective());
    }
}
