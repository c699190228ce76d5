use std::fmt;
use std::str::FromStr;

use curvkit::chart::AxisKind;
use curvkit::integral::HypothesisTolerances;
use curvkit::zoo::{factors, GeometryKind, GeometrySpec};
use serde::Serialize;
use thiserror::Error;

use crate::specfile::{ParseError, Section, SpecFile};

/// Azimuth count used when only a ladder is given.
/// Per-axis count when neither the spec nor the command line gives one.
pub const DEFAULT_RESOLUTION: usize = 12;
pub const DEFAULT_AZIMUTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid `{key}`: {message}")]
    Invalid { key: String, message: String },
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum YamabeMode {
    /// Closed form; only round spheres have one.
    Exact,
    /// Quotient of the constant function.
    Trial,
    User(f64),
}

impl FromStr for YamabeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(YamabeMode::Exact),
            "trial" => Ok(YamabeMode::Trial),
            _ => {
                let v = s
                    .strip_prefix("user:")
                    .ok_or_else(|| format!("expected exact, trial or user:VALUE, found `{s}`"))?;
                let y: f64 = v.parse().map_err(|_| format!("cannot parse Yamabe value `{v}`"))?;
                if y > 0.0 && y.is_finite() {
                    Ok(YamabeMode::User(y))
                } else {
                    Err(format!("Yamabe value must be positive, found {v}"))
                }
            }
        }
    }
}

impl fmt::Display for YamabeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YamabeMode::Exact => f.write_str("exact"),
            YamabeMode::Trial => f.write_str("trial"),
            YamabeMode::User(v) => write!(f, "user:{v}"),
        }
    }
}

impl Serialize for YamabeMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Values given on the command line; each overrides the spec file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub resolutions: Option<Vec<usize>>,
    pub stencil_order: Option<usize>,
    pub tolerance: Option<f64>,
    pub margin: Option<f64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub yamabe: Option<YamabeMode>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub spec_path: Option<String>,
    pub geometry: Option<GeometrySpec<f64>>,
    pub stencil_order: usize,
    /// Refinement ladder; empty means the geometry's own resolution.
    pub resolutions: Vec<usize>,
    /// Relative tolerance of identities and non-strict comparisons.
    pub tolerance: f64,
    /// Margin of strict comparisons.
    pub margin: f64,
    pub samples: u64,
    pub seed: u64,
    pub yamabe: YamabeMode,
    pub hypotheses: HypothesisTolerances<f64>,
    pub thetas: Vec<f64>,
    /// Seed of the trigonometric test field of the θ-tensor identity.
    pub field_seed: u64,
    pub dims: Vec<usize>,
    pub cubic_dims: Vec<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            spec_path: None,
            geometry: None,
            stencil_order: 4,
            resolutions: Vec::new(),
            tolerance: 1e-2,
            margin: 0.0,
            samples: 10_000,
            seed: 0,
            yamabe: YamabeMode::Exact,
            hypotheses: HypothesisTolerances::default(),
            thetas: vec![-1.0, 0.5, 2.0],
            field_seed: 11,
            dims: vec![4, 5, 6],
            cubic_dims: vec![4, 5, 6, 7, 8],
        }
    }
}

fn kind_keys(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "round-sphere" => &["n", "radius"],
        "flat-torus" => &["n", "periods"],
        "product-spheres" => &["p", "q", "r1", "r2"],
        "perturbed-torus" => &["n", "amplitude", "seed", "modes"],
        _ => return None,
    })
}

fn geometry_from(sec: &Section, ladder_top: Option<usize>) -> Result<GeometrySpec<f64>, ConfigError> {
    const S: &str = "geometry";
    let kind_name: String = sec.require(S, "kind")?;
    let extra = kind_keys(&kind_name).ok_or_else(|| {
        invalid("kind", format!("unknown geometry `{kind_name}`; expected round-sphere, flat-torus, product-spheres or perturbed-torus"))
    })?;
    let mut allowed = vec!["kind", "resolution", "excision"];
    allowed.extend_from_slice(extra);
    sec.expect_keys(S, &allowed)?;
    let kind = match kind_name.as_str() {
        "round-sphere" => GeometryKind::RoundSphere {
            n: sec.require(S, "n")?,
            radius: sec.parse("radius")?.unwrap_or(1.0),
        },
        "flat-torus" => {
            let n: usize = sec.require(S, "n")?;
            GeometryKind::FlatTorus { n, periods: sec.list("periods")?.unwrap_or_else(|| vec![std::f64::consts::TAU; n]) }
        }
        "product-spheres" => GeometryKind::ProductSpheres {
            p: sec.require(S, "p")?,
            q: sec.require(S, "q")?,
            r1: sec.parse("r1")?.unwrap_or(1.0),
            r2: sec.parse("r2")?.unwrap_or(1.0),
        },
        _ => GeometryKind::PerturbedTorus {
            n: sec.require(S, "n")?,
            amplitude: sec.require(S, "amplitude")?,
            seed: sec.parse("seed")?.unwrap_or(0),
            modes: sec.parse("modes")?.unwrap_or(3),
        },
    };
    let dim = kind.dim();
    let resolution = match sec.list::<usize>("resolution")? {
        Some(r) if r.len() == 1 => vec![r[0]; dim],
        Some(r) => r,
        None => {
            ladder_counts(&kind, &vec![DEFAULT_AZIMUTH; dim], ladder_top.unwrap_or(DEFAULT_RESOLUTION))
        }
    };
    let mut spec = GeometrySpec::new(kind, resolution);
    if let Some(e) = sec.parse::<f64>("excision")? {
        spec = spec.with_excision(e);
    }
    spec.validate().map_err(|e| invalid("geometry", e.to_string()))?;
    Ok(spec)
}

/// Per-axis counts for one ladder step: sphere azimuths are Killing
/// directions and keep their base count, every other axis gets `count`.
pub fn ladder_counts(kind: &GeometryKind<f64>, base: &[usize], count: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(base.len());
    for f in factors(kind) {
        let kinds = f.axis_kinds();
        let sphere = matches!(f, curvkit::zoo::Factor::Sphere { .. }) && kinds.len() > 1;
        for (i, k) in kinds.iter().enumerate() {
            let azimuth = sphere && i == kinds.len() - 1 && *k == AxisKind::Periodic;
            out.push(if azimuth { base[out.len()] } else { count });
        }
    }
    out
}

impl RunConfig {
    /// Builds a configuration from an optional spec file and command-line
    /// overrides, then validates it.
    pub fn load(spec: Option<(&str, &str)>, o: &Overrides) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut geometry_section = None;
        if let Some((path, text)) = spec {
            cfg.spec_path = Some(path.to_string());
            let file = SpecFile::parse(text)?;
            for (name, line) in file.section_names() {
                if !["geometry", "run", "hypotheses", "sample"].contains(&name) {
                    return Err(ParseError { line, key: None, message: format!("unknown section [{name}]") }.into());
                }
            }
            if let Some(run) = file.section("run") {
                run.expect_keys(
                    "run",
                    &["stencil_order", "resolutions", "tolerance", "margin", "samples", "seed", "yamabe", "thetas", "field_seed"],
                )?;
                cfg.stencil_order = run.parse("stencil_order")?.unwrap_or(cfg.stencil_order);
                cfg.resolutions = run.list("resolutions")?.unwrap_or_default();
                cfg.tolerance = run.parse("tolerance")?.unwrap_or(cfg.tolerance);
                cfg.margin = run.parse("margin")?.unwrap_or(cfg.margin);
                cfg.samples = run.parse("samples")?.unwrap_or(cfg.samples);
                cfg.seed = run.parse("seed")?.unwrap_or(cfg.seed);
                if let Some(e) = run.get("yamabe") {
                    cfg.yamabe = e.value.parse().map_err(|m| ParseError { line: e.line, key: Some("yamabe".into()), message: m })?;
                }
                cfg.thetas = run.list("thetas")?.unwrap_or(cfg.thetas);
                cfg.field_seed = run.parse("field_seed")?.unwrap_or(cfg.field_seed);
            }
            if let Some(h) = file.section("hypotheses") {
                h.expect_keys("hypotheses", &["einstein", "harmonic", "bach", "scalar_variation"])?;
                let t = &mut cfg.hypotheses;
                t.einstein = h.parse("einstein")?.unwrap_or(t.einstein);
                t.harmonic = h.parse("harmonic")?.unwrap_or(t.harmonic);
                t.bach = h.parse("bach")?.unwrap_or(t.bach);
                t.scalar_variation = h.parse("scalar_variation")?.unwrap_or(t.scalar_variation);
            }
            if let Some(s) = file.section("sample") {
                s.expect_keys("sample", &["dims", "cubic_dims"])?;
                cfg.dims = s.list("dims")?.unwrap_or(cfg.dims);
                cfg.cubic_dims = s.list("cubic_dims")?.unwrap_or(cfg.cubic_dims);
            }
            geometry_section = file.section("geometry").cloned();
        }
        if let Some(r) = &o.resolutions {
            cfg.resolutions = r.clone();
        }
        if let Some(g) = geometry_section {
            cfg.geometry = Some(geometry_from(&g, cfg.resolutions.first().copied())?);
        }
        cfg.stencil_order = o.stencil_order.unwrap_or(cfg.stencil_order);
        cfg.tolerance = o.tolerance.unwrap_or(cfg.tolerance);
        cfg.margin = o.margin.unwrap_or(cfg.margin);
        cfg.samples = o.samples.unwrap_or(cfg.samples);
        cfg.seed = o.seed.unwrap_or(cfg.seed);
        cfg.yamabe = o.yamabe.unwrap_or(cfg.yamabe);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |key: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(key, format!("must be positive, found {v}")))
            }
        };
        if ![2, 4].contains(&self.stencil_order) {
            return Err(invalid("stencil_order", format!("must be 2 or 4, found {}", self.stencil_order)));
        }
        positive("tolerance", self.tolerance)?;
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(invalid("margin", format!("must be non-negative, found {}", self.margin)));
        }
        let h = &self.hypotheses;
        positive("einstein", h.einstein)?;
        positive("harmonic", h.harmonic)?;
        positive("bach", h.bach)?;
        positive("scalar_variation", h.scalar_variation)?;
        if self.samples == 0 {
            return Err(invalid("samples", "must be at least 1"));
        }
        if self.resolutions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("resolutions", "must be strictly ascending"));
        }
        if self.thetas.iter().any(|t| !t.is_finite() || *t == 1.0) {
            return Err(invalid("thetas", "must be finite and different from 1"));
        }
        for (key, dims) in [("dims", &self.dims), ("cubic_dims", &self.cubic_dims)] {
            if dims.is_empty() || dims.iter().any(|d| !(4..=8).contains(d)) {
                return Err(invalid(key, "dimensions must lie in 4..=8"));
            }
        }
        Ok(())
    }

    /// Geometry specs of the refinement ladder, coarsest first. Every step
    /// keeps the excision angle of the first.
    pub fn ladder(&self) -> Vec<GeometrySpec<f64>> {
        let Some(g) = &self.geometry else { return Vec::new() };
        if self.resolutions.is_empty() {
            return vec![g.clone()];
        }
        let first = GeometrySpec { resolution: ladder_counts(&g.kind, &g.resolution, self.resolutions[0]), ..g.clone() };
        self.resolutions
            .iter()
            .map(|&c| first.with_resolution(ladder_counts(&g.kind, &g.resolution, c)))
            .collect()
    }
}
