//! A built matrix together with its symmetry operators and parameters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::GaugeSpec;
use crate::linalg::ComplexMatrix;
use crate::spin::{AnnniSpec, ChiralPottsSpec, ZnSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    /// `Z = Tr T^L`; eigenvalues ranked by magnitude.
    Transfer,
    /// `Z = Tr exp(-beta H)`; eigenvalues ranked by real part.
    Hamiltonian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelSpec {
    Zn(ZnSpec),
    ChiralPotts(ChiralPottsSpec),
    /// The explicit 4x4 pair transfer matrix.
    Annni(AnnniSpec),
    /// The block form `T2 ⊕ T~2`.
    AnnniBlock(AnnniSpec),
    Gauge(GaugeSpec),
    Custom,
}

#[derive(Debug, Clone)]
pub struct ModelBundle {
    pub matrix: ComplexMatrix,
    pub parity: ComplexMatrix,
    pub operators: BTreeMap<String, ComplexMatrix>,
    pub spec: ModelSpec,
    pub kind: MatrixKind,
    /// Convention notes carried into output metadata.
    pub notes: Vec<String>,
}

impl ModelBundle {
    /// Bundle an arbitrary matrix with identity parity.
    pub fn custom(matrix: ComplexMatrix, kind: MatrixKind) -> Self {
        let parity = ComplexMatrix::identity(matrix.dim());
        ModelBundle {
            matrix,
            parity,
            operators: BTreeMap::new(),
            spec: ModelSpec::Custom,
            kind,
            notes: Vec::new(),
        }
    }

    pub fn with_operator(mut self, name: &str, op: ComplexMatrix) -> Self {
        self.operators.insert(name.to_string(), op);
        self
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn operator(&self, name: &str) -> Result<&ComplexMatrix> {
        self.operators
            .get(name)
            .ok_or_else(|| Error::MissingOperator(name.to_string()))
    }

    /// Check the dimension and involution invariants.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.parity.dim() != n {
            return Err(Error::InvalidInput("parity dimension mismatch".into()));
        }
        let defect = (&self.parity * &self.parity).distance(&ComplexMatrix::identity(n));
        if defect > 1e-12 {
            return Err(Error::NotInvolution { defect });
        }
        for (name, op) in &self.operators {
            if op.dim() != n {
                return Err(Error::InvalidInput(format!(
                    "operator `{name}` has dimension {}, matrix has {n}",
                    op.dim()
                )));
            }
        }
        Ok(())
    }
}
