use crate::estimates::c_constant;
use crate::tensor::Dim;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantName {
    C1,
    C2,
    C3,
    CHarmonic,
}

impl ConstantName {
    pub fn tag(self) -> &'static str {
        match self {
            ConstantName::C1 => "c1",
            ConstantName::C2 => "c2",
            ConstantName::C3 => "c3",
            ConstantName::CHarmonic => "c-harmonic",
        }
    }
}

/// Competing pinching constants in dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantsTable {
    pub n: Dim,
    pub c_n: f64,
    /// `(1/4)√((n-2)/(2(n-1)))`
    pub c1: f64,
    /// `(n+1)(n-2)/(8(n-1)² C(n))`
    pub c2: f64,
    /// `1/(n C(n))`
    pub c3: f64,
    /// `((n+2)/(2n))√((n-2)/(2(n-1)))`
    pub c_harmonic: f64,
    /// Smallest of `c1, c2, c3`.
    pub argmin: ConstantName,
    /// Smallest of `c_harmonic, c2, c3`.
    pub argmin_harmonic: ConstantName,
}

fn smallest(items: &[(ConstantName, f64)]) -> ConstantName {
    items.iter().fold(items[0], |a, &b| if b.1 < a.1 { b } else { a }).0
}

pub fn constants_table(n: Dim) -> ConstantsTable {
    let nf = n.get() as f64;
    let c = c_constant::<f64>(n);
    let root = ((nf - 2.0) / (2.0 * (nf - 1.0))).sqrt();
    let c1 = root / 4.0;
    let c2 = (nf + 1.0) * (nf - 2.0) / (8.0 * (nf - 1.0).powi(2) * c);
    let c3 = 1.0 / (nf * c);
    let c_harmonic = (nf + 2.0) / (2.0 * nf) * root;
    use ConstantName::*;
    ConstantsTable {
        n,
        c_n: c,
        c1,
        c2,
        c3,
        c_harmonic,
        argmin: smallest(&[(C1, c1), (C2, c2), (C3, c3)]),
        argmin_harmonic: smallest(&[(CHarmonic, c_harmonic), (C2, c2), (C3, c3)]),
    }
}

impl ConstantsTable {
    /// The selections the rigidity constants rely on: `c1` for `n = 4, 5`,
    /// `c2` for `n = 6`, and `c2` in the harmonic set for `n = 4`. Other
    /// dimensions carry no expectation.
    pub fn expected_selection(&self) -> Option<bool> {
        match self.n.get() {
            4 => Some(self.argmin == ConstantName::C1 && self.argmin_harmonic == ConstantName::C2),
            5 => Some(self.argmin == ConstantName::C1),
            6 => Some(self.argmin == ConstantName::C2),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selections() {
        for n in 4..=6 {
            assert_eq!(constants_table(Dim::new(n).unwrap()).expected_selection(), Some(true));
        }
        let t = constants_table(Dim::new(4).unwrap());
        assert!((t.c1 - 0.14434).abs() < 1e-5);
        assert!((t.c2 - 0.2268).abs() < 1e-4);
        let t6 = constants_table(Dim::new(6).unwrap());
        assert!((t6.c2 - (2.1f64).sqrt() / 25.0).abs() < 1e-14);
    }
}
