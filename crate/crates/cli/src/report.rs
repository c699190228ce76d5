use std::collections::BTreeMap;

use curvkit::estimates::{EstimateReport, Witness};
use curvkit::integral::YamabeSource;
use serde::Serialize;

use crate::config::{RunConfig, YamabeMode};

pub const SCHEMA_VERSION: u32 = 1;

/// What each record checks. The set is closed: every record carries one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckTag {
    CurvatureSummary,
    CurvatureOracle,
    SharpWeylRicciEstimate,
    TuvNormIdentity,
    CubicWeylBound,
    ThetaMinimization,
    ConstantSelection,
    PointwiseWeylPinching,
    BachFlatIntegralPinching,
    HarmonicIntegralPinching,
    BachFlatIntegralCondition,
    HarmonicIntegralCondition,
    BachFlatEulerCondition,
    HarmonicEulerCondition,
    EulerFormEquivalence,
    YamabeLowerBound,
    SobolevInequality,
    EinsteinYamabeCombination,
    ThetaTensorIdentity,
    RicciThetaInequality,
    BachFlatRicciIdentity,
    WeylLaplacianIdentity,
    RefinedKatoEinstein,
    RefinedKatoCodazzi,
    ContractedBianchi,
    GaussBonnet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Info,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum WitnessRecord {
    Sample(u64),
    Point(usize),
}

impl From<Witness> for WitnessRecord {
    fn from(w: Witness) -> Self {
        match w {
            Witness::Sample(i) => WitnessRecord::Sample(i),
            Witness::Point(p) => WitnessRecord::Point(p),
        }
    }
}

pub fn source_tag(s: YamabeSource) -> &'static str {
    match s {
        YamabeSource::ExactKnown => "exact",
        YamabeSource::UserSupplied => "user",
        YamabeSource::TrialFunction => "trial-upper-bound",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub tag: CheckTag,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub satisfied: Option<bool>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub residuals: BTreeMap<String, f64>,
    /// Empirical convergence orders between consecutive ladder steps.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orders: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub yamabe_source: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Record {
    pub fn new(name: impl Into<String>, tag: CheckTag, status: Status) -> Self {
        Record {
            name: name.into(),
            tag,
            status,
            lhs: None,
            rhs: None,
            slack: None,
            satisfied: None,
            residuals: BTreeMap::new(),
            orders: Vec::new(),
            witness: None,
            yamabe_source: None,
            note: None,
        }
    }

    pub fn info(name: impl Into<String>, tag: CheckTag) -> Self {
        Self::new(name, tag, Status::Info)
    }

    pub fn not_applicable(name: impl Into<String>, tag: CheckTag, why: impl Into<String>) -> Self {
        Self::new(name, tag, Status::NotApplicable).with_note(why)
    }

    pub fn verdict(name: impl Into<String>, tag: CheckTag, ok: bool) -> Self {
        let mut r = Self::new(name, tag, if ok { Status::Pass } else { Status::Fail });
        r.satisfied = Some(ok);
        r
    }

    pub fn from_estimate(name: impl Into<String>, tag: CheckTag, e: &EstimateReport<f64>) -> Self {
        let mut r = Self::verdict(name, tag, e.satisfied);
        r.lhs = Some(e.lhs);
        r.rhs = Some(e.rhs);
        r.slack = Some(e.slack);
        r.witness = e.witness.map(Into::into);
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_residual(mut self, key: impl Into<String>, v: f64) -> Self {
        self.residuals.insert(key.into(), v);
        self
    }

    pub fn with_source(mut self, s: YamabeSource) -> Self {
        self.yamabe_source = Some(source_tag(s));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

/// Echo of the effective configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    pub stencil_order: usize,
    pub resolutions: Vec<Vec<usize>>,
    pub tolerance: f64,
    pub margin: f64,
    pub samples: u64,
    pub seed: u64,
    pub yamabe: YamabeMode,
    pub hypotheses: BTreeMap<&'static str, f64>,
    pub thetas: Vec<f64>,
    pub field_seed: u64,
    pub dims: Vec<usize>,
    pub cubic_dims: Vec<usize>,
}

impl ConfigEcho {
    pub fn from_config(c: &RunConfig) -> Self {
        let h = &c.hypotheses;
        ConfigEcho {
            spec: c.spec_path.clone(),
            stencil_order: c.stencil_order,
            resolutions: c.ladder().into_iter().map(|g| g.resolution).collect(),
            tolerance: c.tolerance,
            margin: c.margin,
            samples: c.samples,
            seed: c.seed,
            yamabe: c.yamabe,
            hypotheses: BTreeMap::from([
                ("einstein", h.einstein),
                ("harmonic", h.harmonic),
                ("bach", h.bach),
                ("scalar_variation", h.scalar_variation),
            ]),
            thetas: c.thetas.clone(),
            field_seed: c.field_seed,
            dims: c.dims.clone(),
            cubic_dims: c.cubic_dims.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryInfo {
    pub kind: &'static str,
    pub dim: usize,
    pub excision: f64,
    pub has_oracle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
    pub informational: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub tool: Tool,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryInfo>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &'static str, config: &RunConfig, geometry: Option<GeometryInfo>, records: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::NotApplicable => summary.not_applicable += 1,
                Status::Info => summary.informational += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            tool: Tool { name: "curvkit", version: env!("CARGO_PKG_VERSION") },
            config: ConfigEcho::from_config(config),
            geometry,
            records,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_are_kebab_case() {
        let v = serde_json::to_value(CheckTag::BachFlatRicciIdentity).unwrap();
        assert_eq!(v, "bach-flat-ricci-identity");
        let v = serde_json::to_value(Status::NotApplicable).unwrap();
        assert_eq!(v, "not-applicable");
    }

    #[test]
    fn summary_counts() {
        let recs = vec![
            Record::verdict("a", CheckTag::GaussBonnet, true),
            Record::verdict("b", CheckTag::GaussBonnet, false),
            Record::not_applicable("c", CheckTag::GaussBonnet, "dimension"),
        ];
        let r = Report::new("verify", &RunConfig::default(), None, recs);
        assert_eq!(r.summary, Summary { passed: 1, failed: 1, not_applicable: 1, informational: 0 });
        assert!(r.has_failures());
        assert!(r.to_json().contains("\"schema_version\": 1"));
    }
}
