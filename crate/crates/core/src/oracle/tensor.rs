use serde::Serialize;

use crate::gauge::{CharacterMatrices, Group, IrrepBasis, IrrepLabel};

#[derive(Debug, Clone, Serialize)]
pub struct TensorReport {
    pub group: Group,
    /// Interior irreps whose dimension sum rule was checked.
    pub interior_checked: usize,
    pub violations: Vec<String>,
}

impl TensorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Weyl dimension formula, kept separate from the gauge module's copy.
fn weyl_dim(label: IrrepLabel) -> u64 {
    match label {
        IrrepLabel::Charge(_) => 1,
        IrrepLabel::TwiceSpin(tj) => tj as u64 + 1,
        IrrepLabel::Dynkin(p, q) => {
            let (p, q) = (p as u64, q as u64);
            (p + 1) * (q + 1) * (p + q + 2) / 2
        }
    }
}

/// Check the character matrices against representation theory:
/// `d_F dim(S) = sum_R (W)_{RS} dim(R)` for every interior irrep `S`, for
/// both the fundamental and antifundamental, and the conjugation symmetry
/// `(W+)_{RS} = (W-)_{Rbar Sbar}` on the whole basis.
pub fn tensor_check(basis: &IrrepBasis, w: &CharacterMatrices) -> TensorReport {
    let n = basis.len();
    let fd = basis.group.fundamental_dim();
    let dims: Vec<u64> = basis.labels.iter().map(|&l| weyl_dim(l)).collect();
    let mut violations = Vec::new();
    let mut interior_checked = 0;
    for s in 0..n {
        if !basis.is_interior(s) {
            continue;
        }
        interior_checked += 1;
        for (name, m) in [("fundamental", &w.plus), ("antifundamental", &w.minus)] {
            let total: f64 = (0..n).map(|r| m[(r, s)].re * dims[r] as f64).sum();
            if total != (fd * dims[s]) as f64 {
                violations.push(format!(
                    "{}: {name} dimension sum {total} != {}",
                    basis.labels[s],
                    fd * dims[s]
                ));
            }
        }
    }
    for r in 0..n {
        for s in 0..n {
            let (rb, sb) = match (
                basis.index_of(basis.labels[r].conjugate()),
                basis.index_of(basis.labels[s].conjugate()),
            ) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    violations.push(format!("basis not closed under conjugation at {}", basis.labels[r]));
                    continue;
                }
            };
            if w.plus[(r, s)] != w.minus[(rb, sb)] {
                violations.push(format!(
                    "W+[{}, {}] != W-[conjugates]",
                    basis.labels[r], basis.labels[s]
                ));
            }
        }
    }
    TensorReport {
        group: basis.group,
        interior_checked,
        violations,
    }
}
