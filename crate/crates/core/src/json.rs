//! JSON exchange formats for modules, ideals, varieties and sweep reports.
//! Every document written carries `"schema": 1`; readers accept a missing
//! schema field.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::harness::{SweepOutcome, TrialRecord};
use crate::ideal::Ideal;
use crate::matrix::Matrix;
use crate::module::{ElementaryAbelian, FdModule, Hopf, SubgroupEmbedding};
use crate::resolution::CohomRing;
use crate::support::Variety;

pub const SCHEMA: u32 = 1;

fn schema() -> u32 {
    SCHEMA
}

fn check_schema(s: u32) -> Result<()> {
    if s != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema {s}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(default = "schema")]
    pub schema: u32,
    pub p: u32,
    pub rank: usize,
    pub dim: usize,
    pub z_actions: Vec<Vec<Vec<u32>>>,
}

impl ModuleJson {
    pub fn from_module(m: &FdModule) -> ModuleJson {
        ModuleJson {
            schema: SCHEMA,
            p: m.p(),
            rank: m.rank(),
            dim: m.dim(),
            z_actions: m.actions().iter().map(|a| a.to_rows()).collect(),
        }
    }

    pub fn to_module(&self) -> Result<FdModule> {
        check_schema(self.schema)?;
        let alg = ElementaryAbelian::new(self.p, self.rank)?;
        if self.z_actions.len() != self.rank {
            return Err(Error::Parse(format!("{} actions for rank {}", self.z_actions.len(), self.rank)));
        }
        let f = Field::prime(self.p)?;
        let mut mats = Vec::with_capacity(self.rank);
        for rows in &self.z_actions {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::Parse(format!("action matrices must be {0}x{0}", self.dim)));
            }
            mats.push(if self.dim == 0 { Matrix::zeros(&f, 0, 0) } else { Matrix::from_rows(&f, rows)? });
        }
        FdModule::new(alg, mats)
    }

    /// SHA-256 of the compact serialization.
    pub fn digest(&self) -> String {
        let text = serde_json::to_string(self).expect("module JSON serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

pub fn parse_module(text: &str) -> Result<FdModule> {
    let m: ModuleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    m.to_module()
}

pub fn module_to_json(m: &FdModule) -> String {
    serde_json::to_string(&ModuleJson::from_module(m)).expect("module JSON serializes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub p: u32,
    pub r: usize,
    pub gen_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(default = "schema")]
    pub schema: u32,
    pub ring: RingJson,
    pub generators: Vec<String>,
}

impl IdealJson {
    pub fn from_ideal(i: &Ideal) -> IdealJson {
        let ring = i.ring();
        IdealJson {
            schema: SCHEMA,
            ring: RingJson { p: ring.p(), r: ring.nvars(), gen_degree: ring.weights().first().copied().unwrap_or(1) },
            generators: i.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<Ideal> {
        check_schema(self.schema)?;
        let ring = crate::poly::PolyRing::new(self.ring.p, self.ring.r, self.ring.gen_degree)?;
        let gens: Vec<&str> = self.generators.iter().map(|s| s.as_str()).collect();
        Ideal::parse(&ring, &gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyJson {
    #[serde(default = "schema")]
    pub schema: u32,
    /// Reduced Gröbner basis of the stored ideal.
    pub generators: Vec<String>,
}

impl VarietyJson {
    pub fn from_variety(v: &Variety) -> VarietyJson {
        VarietyJson { schema: SCHEMA, generators: v.generator_strings() }
    }

    pub fn to_variety(&self, ring: &CohomRing) -> Result<Variety> {
        check_schema(self.schema)?;
        let gens: Vec<&str> = self.generators.iter().map(|s| s.as_str()).collect();
        Variety::parse(ring, &gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub matrix: Vec<Vec<u32>>,
}

impl EmbeddingJson {
    pub fn from_embedding(e: &SubgroupEmbedding) -> EmbeddingJson {
        EmbeddingJson { matrix: e.matrix().to_rows() }
    }

    pub fn to_embedding(&self, p: u32) -> Result<SubgroupEmbedding> {
        SubgroupEmbedding::new(Matrix::from_rows(&Field::prime(p)?, &self.matrix)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub degree: usize,
    pub values: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputJson {
    pub name: String,
    pub sha256: String,
    pub module: ModuleJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVarietyJson {
    pub name: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialJson {
    pub trial: u64,
    pub inputs: Vec<InputJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleJson>,
    pub varieties: Vec<NamedVarietyJson>,
    pub truncations: Vec<usize>,
    pub pass: bool,
    pub elapsed_ms: f64,
}

impl TrialJson {
    pub fn from_record(r: &TrialRecord) -> TrialJson {
        TrialJson {
            trial: r.trial,
            inputs: r
                .inputs
                .iter()
                .map(|(name, m)| {
                    let module = ModuleJson::from_module(m);
                    InputJson { name: name.clone(), sha256: module.digest(), module }
                })
                .collect(),
            embedding: r.embedding.as_ref().map(EmbeddingJson::from_embedding),
            cocycle: r.cocycle.as_ref().map(|c| CocycleJson { degree: c.degree(), values: c.values().to_vec() }),
            varieties: r
                .report
                .varieties
                .iter()
                .map(|(name, v)| NamedVarietyJson { name: name.clone(), generators: v.generator_strings() })
                .collect(),
            truncations: r.report.truncations.clone(),
            pass: r.report.pass,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellConfigJson {
    pub kind: String,
    pub seed: u64,
    pub p: u32,
    pub r: usize,
    pub trials: u64,
    pub max_dim: usize,
    pub corank: usize,
    pub hopf: String,
    pub truncation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryJson {
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    pub pass: bool,
}

impl SummaryJson {
    pub fn tally<'a>(passes: impl IntoIterator<Item = &'a bool>) -> SummaryJson {
        let (mut trials, mut passed) = (0, 0);
        for &p in passes {
            trials += 1;
            passed += p as u64;
        }
        SummaryJson { trials, passed, failed: trials - passed, pass: passed == trials }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellJson {
    pub config: CellConfigJson,
    pub records: Vec<TrialJson>,
    pub summary: SummaryJson,
    pub elapsed_ms: f64,
}

impl CellJson {
    pub fn from_outcome(o: &SweepOutcome) -> CellJson {
        let c = &o.config;
        let records: Vec<TrialJson> = o.records.iter().map(TrialJson::from_record).collect();
        let summary = SummaryJson::tally(records.iter().map(|r| &r.pass));
        CellJson {
            config: CellConfigJson {
                kind: c.kind.name().into(),
                seed: c.seed,
                p: c.p,
                r: c.r,
                trials: c.trials,
                max_dim: c.max_dim,
                corank: c.corank,
                hopf: hopf_name(c.hopf).into(),
                truncation: "auto".into(),
            },
            records,
            summary,
            elapsed_ms: o.elapsed.as_secs_f64() * 1e3,
        }
    }
}

pub fn hopf_name(h: Hopf) -> &'static str {
    match h {
        Hopf::Group => "group",
        Hopf::Lie => "lie",
    }
}

/// A named pass/fail line with free-form details, for checks that are not
/// random sweeps (Chouinard cases, the BGG invariant suite).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseJson {
    pub name: String,
    pub pass: bool,
    #[serde(default)]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub check: String,
    #[serde(default)]
    pub cells: Vec<CellJson>,
    #[serde(default)]
    pub cases: Vec<CaseJson>,
    pub summary: SummaryJson,
}

impl ReportJson {
    pub fn new(check: &str, cells: Vec<CellJson>, cases: Vec<CaseJson>) -> ReportJson {
        let passes: Vec<bool> = cells
            .iter()
            .flat_map(|c| c.records.iter().map(|r| r.pass))
            .chain(cases.iter().map(|c| c.pass))
            .collect();
        ReportJson {
            schema: SCHEMA,
            tool: "strat".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            check: check.into(),
            summary: SummaryJson::tally(&passes),
            cells,
            cases,
        }
    }

    /// Summary counts agree with the records and cases they summarize.
    pub fn is_consistent(&self) -> bool {
        let passes: Vec<bool> = self
            .cells
            .iter()
            .flat_map(|c| c.records.iter().map(|r| r.pass))
            .chain(self.cases.iter().map(|c| c.pass))
            .collect();
        self.summary == SummaryJson::tally(&passes)
            && self.cells.iter().all(|c| c.summary == SummaryJson::tally(c.records.iter().map(|r| &r.pass)))
    }

    /// The report with timing fields zeroed, for determinism comparisons.
    pub fn without_timings(&self) -> ReportJson {
        let mut out = self.clone();
        for c in &mut out.cells {
            c.elapsed_ms = 0.0;
            for r in &mut c.records {
                r.elapsed_ms = 0.0;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_sweep, SweepConfig, SweepKind};

    #[test]
    fn module_round_trip() {
        let text = r#"{"p":2,"rank":2,"dim":2,"z_actions":[[[0,0],[0,0]],[[0,0],[1,0]]]}"#;
        let m = parse_module(text).unwrap();
        assert_eq!(m.dim(), 2);
        let again = parse_module(&module_to_json(&m)).unwrap();
        assert_eq!(ModuleJson::from_module(&m), ModuleJson::from_module(&again));
    }

    #[test]
    fn malformed_modules_are_rejected() {
        for bad in [
            r#"{"p":4,"rank":1,"dim":1,"z_actions":[[[0]]]}"#,
            r#"{"p":2,"rank":1,"dim":1,"z_actions":[[[1]]]}"#,
            r#"{"p":2,"rank":2,"dim":1,"z_actions":[[[0]]]}"#,
            r#"{"p":2,"rank":1,"dim":2,"z_actions":[[[0,0]]]}"#,
            r#"{"schema":2,"p":2,"rank":1,"dim":1,"z_actions":[[[0]]]}"#,
            "not json",
        ] {
            assert!(parse_module(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ideal_round_trip() {
        let text = r#"{"ring":{"p":2,"r":2,"gen_degree":1},"generators":["x2","x1*x2"]}"#;
        let j: IdealJson = serde_json::from_str(text).unwrap();
        let i = j.to_ideal().unwrap();
        assert_eq!(IdealJson::from_ideal(&i).to_ideal().unwrap().generators(), i.generators());
    }

    #[test]
    fn report_round_trip_and_tally() {
        let cfg = SweepConfig { trials: 3, max_dim: 4, ..SweepConfig::new(SweepKind::Tensor, 2, 2) };
        let out = run_sweep(&cfg).unwrap();
        let report = ReportJson::new("tensor", vec![CellJson::from_outcome(&out)], vec![]);
        assert!(report.is_consistent());
        let text = serde_json::to_string(&report).unwrap();
        let back: ReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        let again = ReportJson::new("tensor", vec![CellJson::from_outcome(&run_sweep(&cfg).unwrap())], vec![]);
        assert_eq!(again.without_timings(), report.without_timings());
    }
}
