use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tensor::Dim;

/// Zoo geometry families.
#[derive(Clone, Debug, PartialEq)]
pub enum GeometryKind<T> {
    RoundSphere { n: usize, radius: T },
    FlatTorus { n: usize, periods: Vec<T> },
    ProductSpheres { p: usize, q: usize, r1: T, r2: T },
    PerturbedTorus { n: usize, amplitude: T, seed: u64, modes: usize },
}

/// A geometry together with its sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometrySpec<T> {
    pub kind: GeometryKind<T>,
    /// Points per axis.
    pub resolution: Vec<usize>,
    /// Angular half-width excised around coordinate poles. Defaults to three
    /// cells of the build resolution.
    pub excision: Option<T>,
}

/// Cells of excision used when no angle is given.
pub const DEFAULT_EXCISION_CELLS: usize = 3;

impl<T: Real> GeometryKind<T> {
    pub fn dim(&self) -> usize {
        match self {
            GeometryKind::RoundSphere { n, .. }
            | GeometryKind::FlatTorus { n, .. }
            | GeometryKind::PerturbedTorus { n, .. } => *n,
            GeometryKind::ProductSpheres { p, q, .. } => p + q,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeometryKind::RoundSphere { .. } => "round-sphere",
            GeometryKind::FlatTorus { .. } => "flat-torus",
            GeometryKind::ProductSpheres { .. } => "product-spheres",
            GeometryKind::PerturbedTorus { .. } => "perturbed-torus",
        }
    }
}

impl<T: Real> GeometrySpec<T> {
    pub fn new(kind: GeometryKind<T>, resolution: Vec<usize>) -> Self {
        GeometrySpec {
            kind,
            resolution,
            excision: None,
        }
    }

    /// Same resolution on every axis.
    pub fn uniform(kind: GeometryKind<T>, count: usize) -> Self {
        let n = kind.dim();
        Self::new(kind, vec![count; n])
    }

    pub fn round_sphere(n: usize, radius: T, resolution: Vec<usize>) -> Self {
        Self::new(GeometryKind::RoundSphere { n, radius }, resolution)
    }

    pub fn flat_torus(n: usize, count: usize) -> Self {
        Self::uniform(
            GeometryKind::FlatTorus {
                n,
                periods: vec![T::TAU(); n],
            },
            count,
        )
    }

    pub fn product_spheres(p: usize, q: usize, r1: T, r2: T, resolution: Vec<usize>) -> Self {
        Self::new(GeometryKind::ProductSpheres { p, q, r1, r2 }, resolution)
    }

    pub fn perturbed_torus(n: usize, amplitude: T, seed: u64, modes: usize, count: usize) -> Self {
        Self::uniform(
            GeometryKind::PerturbedTorus {
                n,
                amplitude,
                seed,
                modes,
            },
            count,
        )
    }

    pub fn with_excision(mut self, angle: T) -> Self {
        self.excision = Some(angle);
        self
    }

    pub fn dim(&self) -> Result<Dim> {
        Dim::new(self.kind.dim())
    }

    pub fn validate(&self) -> Result<Dim> {
        let dim = self.dim()?;
        if self.resolution.len() != dim.get() {
            return Err(Error::InvalidGeometry(format!(
                "{} resolutions given for a {}-dimensional geometry",
                self.resolution.len(),
                dim
            )));
        }
        let positive = |x: T, what: &str| {
            if x > T::zero() && x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidGeometry(format!("{what} must be positive")))
            }
        };
        match &self.kind {
            GeometryKind::RoundSphere { radius, .. } => positive(*radius, "radius")?,
            GeometryKind::FlatTorus { n, periods } => {
                if periods.len() != *n {
                    return Err(Error::InvalidGeometry("one period per axis required".into()));
                }
                for &p in periods {
                    positive(p, "period")?;
                }
            }
            GeometryKind::ProductSpheres { p, q, r1, r2 } => {
                if *p == 0 || *q == 0 {
                    return Err(Error::InvalidGeometry("sphere factors need dimension >= 1".into()));
                }
                positive(*r1, "r1")?;
                positive(*r2, "r2")?;
            }
            GeometryKind::PerturbedTorus { amplitude, .. } => {
                if !(amplitude.is_finite() && *amplitude >= T::zero()) {
                    return Err(Error::InvalidGeometry("amplitude must be finite and >= 0".into()));
                }
            }
        }
        if let Some(e) = self.excision {
            if !(e >= T::zero() && e < T::FRAC_PI_2()) {
                return Err(Error::InvalidGeometry("excision angle must lie in [0, pi/2)".into()));
            }
        }
        Ok(dim)
    }

    /// Excision angle in effect: explicit, or the default cell count at the
    /// coarsest polar resolution; zero without polar axes.
    pub fn excision_angle(&self) -> T {
        self.excision.unwrap_or_else(|| {
            let polar = super::build::factors(&self.kind)
                .iter()
                .flat_map(|f| f.axis_kinds())
                .zip(&self.resolution)
                .filter(|(k, _)| *k == crate::chart::AxisKind::Reflecting)
                .map(|(_, &c)| c)
                .min();
            match polar {
                Some(c) => T::from_count(DEFAULT_EXCISION_CELLS) * T::PI() / T::from_count(c),
                None => T::zero(),
            }
        })
    }

    /// Same geometry at another resolution, keeping the physical excision.
    pub fn with_resolution(&self, resolution: Vec<usize>) -> Self {
        GeometrySpec {
            kind: self.kind.clone(),
            excision: Some(self.excision_angle()),
            resolution,
        }
    }
}
