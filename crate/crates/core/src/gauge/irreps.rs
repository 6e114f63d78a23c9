use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Largest basis `irrep_basis` will build.
pub const MAX_BASIS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "u1", alias = "U1", alias = "U(1)")]
    U1,
    #[serde(rename = "su2", alias = "SU2", alias = "SU(2)")]
    SU2,
    #[serde(rename = "su3", alias = "SU3", alias = "SU(3)")]
    SU3,
}

impl Group {
    /// Dimension of the fundamental representation.
    pub fn fundamental_dim(self) -> u64 {
        match self {
            Group::U1 => 1,
            Group::SU2 => 2,
            Group::SU3 => 3,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::U1 => "U(1)",
            Group::SU2 => "SU(2)",
            Group::SU3 => "SU(3)",
        })
    }
}

/// An irreducible representation. SU(2) spin is stored doubled so that
/// `TwiceSpin(1)` is the fundamental `j = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrrepLabel {
    Charge(i64),
    TwiceSpin(u32),
    Dynkin(u32, u32),
}

impl IrrepLabel {
    pub fn trivial(group: Group) -> Self {
        match group {
            Group::U1 => IrrepLabel::Charge(0),
            Group::SU2 => IrrepLabel::TwiceSpin(0),
            Group::SU3 => IrrepLabel::Dynkin(0, 0),
        }
    }

    pub fn casimir(self) -> f64 {
        match self {
            IrrepLabel::Charge(n) => (n * n) as f64,
            IrrepLabel::TwiceSpin(tj) => {
                let j = tj as f64 / 2.0;
                j * (j + 1.0)
            }
            IrrepLabel::Dynkin(p, q) => {
                let (p, q) = (p as f64, q as f64);
                (p * p + q * q + p * q + 3.0 * p + 3.0 * q) / 3.0
            }
        }
    }

    pub fn dim(self) -> u64 {
        match self {
            IrrepLabel::Charge(_) => 1,
            IrrepLabel::TwiceSpin(tj) => tj as u64 + 1,
            IrrepLabel::Dynkin(p, q) => {
                let (p, q) = (p as u64, q as u64);
                (p + 1) * (q + 1) * (p + q + 2) / 2
            }
        }
    }

    pub fn conjugate(self) -> Self {
        match self {
            IrrepLabel::Charge(n) => IrrepLabel::Charge(-n),
            IrrepLabel::TwiceSpin(tj) => IrrepLabel::TwiceSpin(tj),
            IrrepLabel::Dynkin(p, q) => IrrepLabel::Dynkin(q, p),
        }
    }

    /// Irreps in `self ⊗ fundamental`, each with multiplicity one.
    pub fn times_fundamental(self) -> Vec<IrrepLabel> {
        match self {
            IrrepLabel::Charge(n) => vec![IrrepLabel::Charge(n + 1)],
            IrrepLabel::TwiceSpin(tj) => {
                let mut out = vec![IrrepLabel::TwiceSpin(tj + 1)];
                if tj > 0 {
                    out.push(IrrepLabel::TwiceSpin(tj - 1));
                }
                out
            }
            IrrepLabel::Dynkin(p, q) => {
                let mut out = vec![IrrepLabel::Dynkin(p + 1, q)];
                if p > 0 {
                    out.push(IrrepLabel::Dynkin(p - 1, q + 1));
                }
                if q > 0 {
                    out.push(IrrepLabel::Dynkin(p, q - 1));
                }
                out
            }
        }
    }

    /// Irreps in `self ⊗ antifundamental`.
    pub fn times_antifundamental(self) -> Vec<IrrepLabel> {
        self.conjugate()
            .times_fundamental()
            .into_iter()
            .map(IrrepLabel::conjugate)
            .collect()
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IrrepLabel::Charge(n) => write!(f, "{n}"),
            IrrepLabel::TwiceSpin(tj) if tj % 2 == 0 => write!(f, "{}", tj / 2),
            IrrepLabel::TwiceSpin(tj) => write!(f, "{tj}/2"),
            IrrepLabel::Dynkin(p, q) => write!(f, "({p},{q})"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IrrepBasis {
    pub group: Group,
    pub cutoff: usize,
    pub labels: Vec<IrrepLabel>,
    /// Number of fundamental tensorings needed to reach each label.
    pub shells: Vec<usize>,
    pub casimirs: Vec<f64>,
    pub dims: Vec<u64>,
    pub casimir_normalization: &'static str,
    #[serde(skip)]
    index: HashMap<IrrepLabel, usize>,
}

impl IrrepBasis {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: IrrepLabel) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Irreps whose tensor products with both fundamentals stay inside the
    /// basis.
    pub fn is_interior(&self, i: usize) -> bool {
        self.shells[i] < self.cutoff
    }
}

/// All irreps reachable from the trivial one by at most `cutoff` tensorings
/// with the fundamental or antifundamental.
pub fn irrep_basis(group: Group, cutoff: usize) -> Result<IrrepBasis> {
    if cutoff < 1 {
        return Err(Error::InvalidInput("cutoff must be >= 1".into()));
    }
    let mut shell_of: HashMap<IrrepLabel, usize> = HashMap::new();
    let mut frontier = vec![IrrepLabel::trivial(group)];
    shell_of.insert(frontier[0], 0);
    for shell in 1..=cutoff {
        let mut next = BTreeSet::new();
        for r in &frontier {
            for t in r.times_fundamental().into_iter().chain(r.times_antifundamental()) {
                if !shell_of.contains_key(&t) {
                    next.insert(t);
                }
            }
        }
        for &t in &next {
            shell_of.insert(t, shell);
        }
        if shell_of.len() > MAX_BASIS {
            return Err(Error::BasisTooLarge { size: shell_of.len() });
        }
        frontier = next.into_iter().collect();
    }

    let mut labels: Vec<IrrepLabel> = shell_of.keys().copied().collect();
    match group {
        Group::U1 => labels.sort(),
        _ => labels.sort_by(|a, b| {
            shell_of[a]
                .cmp(&shell_of[b])
                .then(a.casimir().total_cmp(&b.casimir()))
                .then(b.cmp(a))
        }),
    }
    let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    Ok(IrrepBasis {
        group,
        cutoff,
        shells: labels.iter().map(|l| shell_of[l]).collect(),
        casimirs: labels.iter().map(|l| l.casimir()).collect(),
        dims: labels.iter().map(|l| l.dim()).collect(),
        casimir_normalization: match group {
            Group::U1 => "n^2",
            Group::SU2 => "j(j+1); no reference normalization fixes the SU(2) scale",
            Group::SU3 => "(p^2 + q^2 + pq + 3p + 3q)/3, so 1, 3, 3bar, 8 give 0, 4/3, 4/3, 3",
        },
        labels,
        index,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruncatedTerm {
    pub source: IrrepLabel,
    pub target: IrrepLabel,
    /// `true` for the fundamental, `false` for the antifundamental.
    pub fundamental: bool,
}

#[derive(Debug, Clone)]
pub struct CharacterMatrices {
    /// `(plus)_{RS}` = multiplicity of `R` in `S ⊗ F`.
    pub plus: ComplexMatrix,
    /// `(minus)_{RS}` = multiplicity of `R` in `S ⊗ Fbar`.
    pub minus: ComplexMatrix,
    /// Products that leave the basis and were dropped.
    pub truncated: Vec<TruncatedTerm>,
}

pub fn character_matrices(basis: &IrrepBasis) -> CharacterMatrices {
    let n = basis.len();
    let mut plus = nalgebra::DMatrix::<C64>::zeros(n, n);
    let mut minus = nalgebra::DMatrix::<C64>::zeros(n, n);
    let mut truncated = Vec::new();
    for (s, &label) in basis.labels.iter().enumerate() {
        for (fundamental, targets) in [
            (true, label.times_fundamental()),
            (false, label.times_antifundamental()),
        ] {
            let m = if fundamental { &mut plus } else { &mut minus };
            for t in targets {
                match basis.index_of(t) {
                    Some(r) => m[(r, s)] += C64::new(1.0, 0.0),
                    None => truncated.push(TruncatedTerm {
                        source: label,
                        target: t,
                        fundamental,
                    }),
                }
            }
        }
    }
    CharacterMatrices {
        plus: ComplexMatrix::new(plus).expect("basis is non-empty"),
        minus: ComplexMatrix::new(minus).expect("basis is non-empty"),
        truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su3_cutoff_two() {
        let b = irrep_basis(Group::SU3, 2).unwrap();
        let want = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)];
        let got: Vec<_> = b
            .labels
            .iter()
            .map(|l| match l {
                IrrepLabel::Dynkin(p, q) => (*p, *q),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, want);
        assert_eq!(&b.casimirs[..4], &[0.0, 4.0 / 3.0, 4.0 / 3.0, 3.0]);
        assert!((b.casimirs[4] - 10.0 / 3.0).abs() < 1e-15);
        assert_eq!(&b.dims[..], &[1, 3, 3, 8, 6, 6]);
    }

    #[test]
    fn u1_is_a_ladder() {
        let b = irrep_basis(Group::U1, 3).unwrap();
        assert_eq!(b.labels, (-3..=3).map(IrrepLabel::Charge).collect::<Vec<_>>());
        let w = character_matrices(&b);
        for r in 0..7 {
            for s in 0..7 {
                let want = if r == s + 1 { 1.0 } else { 0.0 };
                assert_eq!(w.plus[(r, s)].re, want);
            }
        }
        assert_eq!(w.plus.transpose(), w.minus);
        assert_eq!(w.truncated.len(), 2);
    }

    #[test]
    fn su2_is_closed_and_real() {
        let b = irrep_basis(Group::SU2, 4).unwrap();
        assert_eq!(b.len(), 5);
        let w = character_matrices(&b);
        assert_eq!(w.plus, w.minus);
        assert_eq!(w.plus, w.plus.transpose());
    }

    #[test]
    fn basis_is_closed_under_conjugation() {
        for cutoff in 1..6 {
            let b = irrep_basis(Group::SU3, cutoff).unwrap();
            assert!(b.labels.iter().all(|l| b.index_of(l.conjugate()).is_some()));
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(irrep_basis(Group::SU3, 400), Err(Error::BasisTooLarge { .. })));
        assert!(irrep_basis(Group::SU3, 0).is_err());
    }
}
