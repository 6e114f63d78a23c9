use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::irreps::{character_matrices, irrep_basis, Group, IrrepBasis};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::{MatrixKind, ModelBundle, ModelSpec};

/// Heavy-quark boundary condition in the timelike direction, fixed by the
/// sign of `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Antiperiodic,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeSpec {
    pub group: Group,
    /// Energy unit multiplying the Casimir, `g^2 beta / 2`.
    pub coupling_scale: f64,
    /// Quark coupling `h_F beta`.
    pub h: f64,
    pub beta_mu: f64,
    pub cutoff: usize,
    /// Drop the antiquark term.
    #[serde(default)]
    pub high_density: bool,
}

impl GaugeSpec {
    pub fn new(group: Group, h: f64, beta_mu: f64, cutoff: usize) -> Self {
        GaugeSpec {
            group,
            coupling_scale: 1.0,
            h,
            beta_mu,
            cutoff,
            high_density: false,
        }
    }

    pub fn boundary_condition(&self) -> Option<BoundaryCondition> {
        if self.h > 0.0 {
            Some(BoundaryCondition::Antiperiodic)
        } else if self.h < 0.0 {
            Some(BoundaryCondition::Periodic)
        } else {
            None
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cutoff < 1 {
            return Err(Error::InvalidInput("cutoff must be >= 1".into()));
        }
        if ![self.coupling_scale, self.h, self.beta_mu].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("gauge parameters".into()));
        }
        Ok(())
    }
}

/// `H = coupling_scale C2 - h (e^{beta mu} W+ + e^{-beta mu} W-)` in the
/// character basis.
///
/// H is real, so PT is plain complex conjugation and the bundle parity is
/// the identity. The `R <-> Rbar` permutation is attached as
/// `charge_conjugation`; it maps `H(mu)` to `H(-mu)`.
pub fn build_gauge_hamiltonian(spec: &GaugeSpec) -> Result<ModelBundle> {
    spec.validate()?;
    let basis = irrep_basis(spec.group, spec.cutoff)?;
    build_on_basis(spec, &basis)
}

pub(crate) fn build_on_basis(spec: &GaugeSpec, basis: &IrrepBasis) -> Result<ModelBundle> {
    let n = basis.len();
    let w = character_matrices(basis);
    let up = C64::new(spec.h * spec.beta_mu.exp(), 0.0);
    let down = if spec.high_density {
        C64::new(0.0, 0.0)
    } else {
        C64::new(spec.h * (-spec.beta_mu).exp(), 0.0)
    };
    let matrix = ComplexMatrix::from_fn(n, |r, s| {
        let diag = if r == s {
            spec.coupling_scale * basis.casimirs[r]
        } else {
            0.0
        };
        C64::new(diag, 0.0) - up * w.plus[(r, s)] - down * w.minus[(r, s)]
    })?;
    let conj = ComplexMatrix::from_fn(n, |r, s| {
        let hit = basis.index_of(basis.labels[s].conjugate()) == Some(r);
        C64::new(if hit { 1.0 } else { 0.0 }, 0.0)
    })?;
    let casimir: Vec<C64> = basis.casimirs.iter().map(|&c| C64::new(c, 0.0)).collect();
    let mut operators = BTreeMap::new();
    operators.insert("charge_conjugation".to_string(), conj);
    operators.insert("casimir".to_string(), ComplexMatrix::diagonal(&casimir));
    operators.insert("wplus".to_string(), w.plus);
    operators.insert("wminus".to_string(), w.minus);
    let mut notes = vec![
        format!("{} irreps, cutoff {}", n, basis.cutoff),
        format!("casimir normalization: {}", basis.casimir_normalization),
        "parity is the identity; charge_conjugation maps H(beta_mu) to H(-beta_mu)".into(),
    ];
    if !w.truncated.is_empty() {
        notes.push(format!("{} tensor products leave the basis and were dropped", w.truncated.len()));
    }
    if let Some(bc) = spec.boundary_condition() {
        notes.push(format!("quark boundary condition: {bc:?}").to_lowercase());
    }
    Ok(ModelBundle {
        matrix,
        parity: ComplexMatrix::identity(n),
        operators,
        spec: ModelSpec::Gauge(*spec),
        kind: MatrixKind::Hamiltonian,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, EigenOrder};

    #[test]
    fn free_spectrum_is_the_casimir_list() {
        let b = build_gauge_hamiltonian(&GaugeSpec::new(Group::SU3, 0.0, 0.7, 3)).unwrap();
        let vals = eigenvalues(&b.matrix, EigenOrder::RealPartAscending).unwrap();
        let want = [0.0, 4.0 / 3.0, 4.0 / 3.0, 3.0];
        for (v, w) in vals.iter().zip(want) {
            assert!((v - C64::new(w, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_density_is_symmetric() {
        for g in [Group::U1, Group::SU2, Group::SU3] {
            let b = build_gauge_hamiltonian(&GaugeSpec::new(g, 0.4, 0.0, 4)).unwrap();
            assert!(b.matrix.is_hermitian(0.0), "{g}");
        }
    }

    #[test]
    fn su2_is_hermitian_at_any_density() {
        let b = build_gauge_hamiltonian(&GaugeSpec::new(Group::SU2, -0.3, 1.7, 6)).unwrap();
        assert!(b.matrix.is_hermitian(1e-15));
    }

    #[test]
    fn charge_conjugation_flips_mu() {
        let s = GaugeSpec::new(Group::SU3, 0.5, 0.8, 4);
        let b = build_gauge_hamiltonian(&s).unwrap();
        let flipped = build_gauge_hamiltonian(&GaugeSpec { beta_mu: -0.8, ..s }).unwrap();
        let c = b.operator("charge_conjugation").unwrap();
        assert!((&(c * &b.matrix) * c).distance(&flipped.matrix) < 1e-14);
    }

    #[test]
    fn high_density_drops_lowering_term() {
        let mut s = GaugeSpec::new(Group::U1, 0.5, 0.2, 3);
        s.high_density = true;
        let b = build_gauge_hamiltonian(&s).unwrap();
        // charges -3..3; the entry above the diagonal would be the W- term
        assert_eq!(b.matrix[(2, 3)], C64::new(0.0, 0.0));
        assert!(b.matrix[(4, 3)].re < 0.0);
    }

    #[test]
    fn boundary_condition_follows_sign() {
        assert_eq!(
            GaugeSpec::new(Group::SU3, 0.5, 0.0, 2).boundary_condition(),
            Some(BoundaryCondition::Antiperiodic)
        );
        assert_eq!(
            GaugeSpec::new(Group::SU3, -0.5, 0.0, 2).boundary_condition(),
            Some(BoundaryCondition::Periodic)
        );
    }
}
