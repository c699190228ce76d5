use crate::error::{Error, Result};

/// Largest supported manifold dimension.
pub const MAX_DIM: usize = 8;
/// Smallest supported manifold dimension.
pub const MIN_DIM: usize = 4;

/// Manifold dimension, restricted to `4..=8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(usize);

impl Dim {
    pub fn new(n: usize) -> Result<Self> {
        if (MIN_DIM..=MAX_DIM).contains(&n) {
            Ok(Dim(n))
        } else {
            Err(Error::DimensionOutOfRange(n))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Fails with `DimensionMismatch` unless both dimensions agree.
    pub fn same(self, other: Dim) -> Result<Dim> {
        if self == other {
            Ok(self)
        } else {
            Err(Error::DimensionMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl TryFrom<usize> for Dim {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Dim::new(n)
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_enforced() {
        assert!(Dim::new(3).is_err());
        assert!(Dim::new(9).is_err());
        for n in 4..=8 {
            assert_eq!(Dim::new(n).unwrap().get(), n);
        }
        let a = Dim::new(4).unwrap();
        let b = Dim::new(5).unwrap();
        assert_eq!(
            a.same(b),
            Err(Error::DimensionMismatch { left: 4, right: 5 })
        );
    }
}
