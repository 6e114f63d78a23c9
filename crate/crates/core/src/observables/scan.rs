use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{eigenvalues, EigenOrder, C64};
use crate::model::ModelBundle;
use crate::pt::{pair_and_classify, Region, SpectrumOrdering, DEFAULT_PAIRING_TOL};
use crate::spin::{build_annni, build_chiral_potts, build_zn_transfer, AnnniSpec, ChiralPottsSpec, ZnSpec};

const MAX_CELLS: usize = 1_000_000;

/// Model family and its fixed parameters; the two scanned parameters are
/// named in the doc of each variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ScanFamily {
    /// Axes `(hR, hI)`.
    Zn {
        #[serde(rename = "N")]
        n: usize,
        #[serde(rename = "J")]
        j: f64,
    },
    /// Axes `(K1, K2)`, classified on the block form `T2 ⊕ T~2`.
    Annni,
    /// Axes `(J, delta)`.
    ChiralPotts {
        #[serde(rename = "N")]
        n: usize,
    },
}

impl ScanFamily {
    pub fn axis_names(&self) -> [&'static str; 2] {
        match self {
            ScanFamily::Zn { .. } => ["hR", "hI"],
            ScanFamily::Annni => ["K1", "K2"],
            ScanFamily::ChiralPotts { .. } => ["J", "delta"],
        }
    }

    pub fn build(&self, p1: f64, p2: f64) -> Result<ModelBundle> {
        match *self {
            ScanFamily::Zn { n, j } => build_zn_transfer(&ZnSpec::new(n, j, p1, p2)),
            ScanFamily::Annni => Ok(build_annni(&AnnniSpec { k1: p1, k2: p2 })?.block),
            ScanFamily::ChiralPotts { n } => build_chiral_potts(&ChiralPottsSpec { n, j: p1, delta: p2 }),
        }
    }
}

/// Evenly spaced values `start, ..., stop` (both ends included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(start: f64, stop: f64, steps: usize) -> Self {
        Axis { start, stop, steps }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            return self.start;
        }
        let t = i as f64 / (self.steps - 1) as f64;
        self.start + t * (self.stop - self.start)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }

    /// Index of the grid value closest to `x`.
    pub fn nearest(&self, x: f64) -> usize {
        if self.steps == 1 || self.stop == self.start {
            return 0;
        }
        let t = (x - self.start) / (self.stop - self.start) * (self.steps - 1) as f64;
        (t.round().max(0.0) as usize).min(self.steps - 1)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanCell {
    pub param1: f64,
    pub param2: f64,
    pub region: Option<Region>,
    /// Two largest-magnitude eigenvalues.
    pub lambda0: Option<C64>,
    pub lambda1: Option<C64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanGrid {
    pub family: ScanFamily,
    pub axes: [Axis; 2],
    pub axis_names: [&'static str; 2],
    /// Row-major: `param1` outer, `param2` inner.
    pub cells: Vec<ScanCell>,
}

fn evaluate(family: &ScanFamily, p1: f64, p2: f64) -> ScanCell {
    let run = || -> Result<(Region, C64, Option<C64>)> {
        let bundle = family.build(p1, p2)?;
        let vals = eigenvalues(&bundle.matrix, EigenOrder::MagnitudeDescending)?;
        let (_, label) = pair_and_classify(&vals, SpectrumOrdering::ByMagnitude, DEFAULT_PAIRING_TOL)?;
        Ok((label.region, vals[0], vals.get(1).copied()))
    };
    match run() {
        Ok((region, l0, l1)) => ScanCell {
            param1: p1,
            param2: p2,
            region: Some(region),
            lambda0: Some(l0),
            lambda1: l1,
            error: None,
        },
        Err(e) => ScanCell {
            param1: p1,
            param2: p2,
            region: None,
            lambda0: None,
            lambda1: None,
            error: Some(e.to_string()),
        },
    }
}

impl ScanGrid {
    /// Classify every cell. Per-cell failures are recorded, not raised.
    pub fn run(family: ScanFamily, axes: [Axis; 2], exec: Exec) -> Result<ScanGrid> {
        let [a, b] = axes;
        if a.steps == 0 || b.steps == 0 {
            return Err(Error::InvalidInput("scan axes need at least one step".into()));
        }
        let count = a.steps.saturating_mul(b.steps);
        if count > MAX_CELLS {
            return Err(Error::InvalidInput(format!("{count} cells exceeds the limit of {MAX_CELLS}")));
        }
        let cells = exec.map(count, |idx| {
            let (i, j) = (idx / b.steps, idx % b.steps);
            evaluate(&family, a.value(i), b.value(j))
        });
        Ok(ScanGrid {
            family,
            axes,
            axis_names: family.axis_names(),
            cells,
        })
    }

    pub fn cell(&self, i: usize, j: usize) -> &ScanCell {
        &self.cells[i * self.axes[1].steps + j]
    }

    /// The cell whose grid point is closest to `(p1, p2)`.
    pub fn nearest(&self, p1: f64, p2: f64) -> &ScanCell {
        self.cell(self.axes[0].nearest(p1), self.axes[1].nearest(p2))
    }

    pub fn count(&self, region: Region) -> usize {
        self.cells.iter().filter(|c| c.region == Some(region)).count()
    }

    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| c.error.is_some()).count()
    }

    /// Region-III cells at `hR >= 0` in a Z(N) scan; empty for other families.
    pub fn region_three_violations(&self) -> Vec<&ScanCell> {
        match self.family {
            ScanFamily::Zn { .. } => self
                .cells
                .iter()
                .filter(|c| c.region == Some(Region::III) && c.param1 >= 0.0)
                .collect(),
            _ => Vec::new(),
        }
    }

    /// CSV with header `param1,param2,region,re_lambda0,im_lambda0,re_lambda1,im_lambda1`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "param1,param2,region,re_lambda0,im_lambda0,re_lambda1,im_lambda1")?;
        let num = |x: Option<f64>| x.map_or_else(|| "nan".to_string(), |v| format!("{v:.16e}"));
        for c in &self.cells {
            writeln!(
                w,
                "{:.16e},{:.16e},{},{},{},{},{}",
                c.param1,
                c.param2,
                c.region.map_or("error", |r| r.as_str()),
                num(c.lambda0.map(|z| z.re)),
                num(c.lambda0.map(|z| z.im)),
                num(c.lambda1.map(|z| z.re)),
                num(c.lambda1.map(|z| z.im)),
            )?;
        }
        Ok(())
    }
}
