use crate::scalar::Real;

/// Where the smallest slack was observed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Index of a random sample.
    Sample(u64),
    /// Flat grid-point index.
    Point(usize),
}

/// How `lhs` and `rhs` are compared.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Comparison<T> {
    /// `lhs <= rhs`, accepted when `slack >= -tolerance`.
    AtMost { tolerance: T },
    /// `lhs < rhs`, accepted when `lhs < rhs - margin`.
    Below { margin: T },
}

/// Outcome of one inequality: `slack = rhs - lhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub slack: T,
    pub satisfied: bool,
    pub comparison: Comparison<T>,
    pub witness: Option<Witness>,
}

impl<T: Real> EstimateReport<T> {
    pub fn at_most(lhs: T, rhs: T, tolerance: T) -> Self {
        let slack = rhs - lhs;
        EstimateReport {
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tolerance,
            comparison: Comparison::AtMost { tolerance },
            witness: None,
        }
    }

    pub fn below(lhs: T, rhs: T, margin: T) -> Self {
        EstimateReport {
            lhs,
            rhs,
            slack: rhs - lhs,
            satisfied: lhs < rhs - margin,
            comparison: Comparison::Below { margin },
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    /// Keeps whichever report has the smaller slack.
    pub fn worse(self, other: Self) -> Self {
        if other.slack < self.slack {
            other
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_boundary_fails() {
        assert!(!EstimateReport::below(1.0, 1.0, 0.0).satisfied);
        assert!(EstimateReport::at_most(1.0, 1.0, 0.0).satisfied);
        assert!(EstimateReport::at_most(1.0 + 1e-13, 1.0, 1e-12).satisfied);
        assert!(!EstimateReport::below(0.5, 1.0, 0.6).satisfied);
    }
}
