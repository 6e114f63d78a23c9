use std::fmt::Write as _;

use anyhow::{anyhow, bail};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use ptspectra::gauge::{build_gauge_hamiltonian, eigen_trajectory, irrep_basis, character_matrices, TrajectoryOptions};
use ptspectra::linalg::eigenvalues;
use ptspectra::observables::{fit_decay, lee_yang_zeros, two_point, CorrelatorMethod, ScanFamily, ScanGrid};
use ptspectra::oracle::{enumerate_annni_chain, enumerate_zn_chain};
use ptspectra::pt::DEFAULT_PAIRING_TOL;
use ptspectra::spin::{build_annni, build_chiral_potts, build_zn_transfer};
use ptspectra::{
    bender_mannheim_test, check_pt, hermitize, pair_and_classify, real_basis, ComplexMatrix, EigenOrder, Exec,
    MatrixKind, ModelBundle, SpectrumOrdering, C64,
};

use crate::config::{path_of, ModelArgs, ModelKind};
use crate::output::{complex_pair, num, Artifact};
use crate::Fail;

const ORACLE_TOL: f64 = 1e-10;

type Out = Result<Artifact, Fail>;

trait Cfg<T> {
    fn cfg(self) -> Result<T, Fail>;
}

trait Compute<T> {
    fn compute(self) -> Result<T, Fail>;
}

impl<T, E: Into<anyhow::Error>> Cfg<T> for Result<T, E> {
    fn cfg(self) -> Result<T, Fail> {
        self.map_err(|e| Fail::Config(e.into()))
    }
}

impl<T, E: Into<anyhow::Error>> Compute<T> for Result<T, E> {
    fn compute(self) -> Result<T, Fail> {
        self.map_err(|e| Fail::Compute(e.into()))
    }
}

fn matrix_json(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| complex_pair(m[(i, j)])).collect())
        .collect()
}

fn pairs(vals: &[C64]) -> Vec<[f64; 2]> {
    vals.iter().copied().map(complex_pair).collect()
}

/// Build the selected model. Every failure here is a configuration error.
pub fn bundle(m: &ModelArgs) -> Result<ModelBundle, Fail> {
    m.check_relevant().cfg()?;
    match m.kind().cfg()? {
        ModelKind::Zn => build_zn_transfer(&m.zn().cfg()?).cfg(),
        ModelKind::ChiralPotts => build_chiral_potts(&m.chiral().cfg()?).cfg(),
        ModelKind::Annni => Ok(build_annni(&m.annni().cfg()?).cfg()?.t4),
        ModelKind::AnnniBlock => Ok(build_annni(&m.annni().cfg()?).cfg()?.block),
        ModelKind::Gauge => build_gauge_hamiltonian(&m.gauge().cfg()?).cfg(),
    }
}

fn ordering_of(b: &ModelBundle) -> (SpectrumOrdering, EigenOrder) {
    match b.kind {
        MatrixKind::Transfer => (SpectrumOrdering::ByMagnitude, EigenOrder::MagnitudeDescending),
        MatrixKind::Hamiltonian => (SpectrumOrdering::ByRealPart, EigenOrder::RealPartAscending),
    }
}

fn no_sweep(m: &ModelArgs) -> Result<(), Fail> {
    if let Some(s) = m.swept().first() {
        return Err(Fail::Config(anyhow!("--{} must be a single value for this subcommand", s.name)));
    }
    Ok(())
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumArgs {
    /// Pairing tolerance relative to the spectral radius.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

pub fn spectrum(m: &ModelArgs, c: &SpectrumArgs) -> Out {
    no_sweep(m)?;
    let b = bundle(m)?;
    let (ordering, order) = ordering_of(&b);
    let vals = eigenvalues(&b.matrix, order).compute()?;
    let (_, label) = pair_and_classify(&vals, ordering, c.tol.unwrap_or(DEFAULT_PAIRING_TOL)).compute()?;
    let pt = check_pt(&b.matrix, &b.parity).compute()?;
    let bm = bender_mannheim_test(&b.matrix, 1e-10).compute()?;

    #[derive(Serialize)]
    struct Report {
        model: ModelKind,
        kind: MatrixKind,
        dim: usize,
        eigenvalues: Vec<[f64; 2]>,
        region: String,
        dominant: Vec<[f64; 2]>,
        evidence: ptspectra::pt::Evidence,
        pt_residual: f64,
        pt_satisfied: bool,
        char_poly_imag_residual: f64,
        real_char_poly: bool,
    }
    let report = Report {
        model: m.kind().cfg()?,
        kind: b.kind,
        dim: b.dim(),
        eigenvalues: pairs(&vals),
        region: label.region.to_string(),
        dominant: pairs(&label.dominant),
        evidence: label.evidence,
        pt_residual: pt.residual,
        pt_satisfied: pt.satisfied,
        char_poly_imag_residual: bm.max_imag_residual,
        real_char_poly: bm.real_coefficients,
    };
    Ok(Artifact::json(&report, b.notes.clone()).compute()?.with_spec(&b.spec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingArg {
    Magnitude,
    RealPart,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyArgs {
    /// Comma-separated eigenvalues such as `3,1+1i,1-1i`, instead of a model.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<String>,
    /// Ground-state convention for explicit eigenvalues.
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingArg>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

fn parse_eigenvalues(s: &str) -> anyhow::Result<Vec<C64>> {
    let vals = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<C64>().map_err(|_| anyhow!("`{t}` is not a complex number"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if vals.is_empty() {
        bail!("no eigenvalues given");
    }
    Ok(vals)
}

pub fn classify(m: &ModelArgs, c: &ClassifyArgs) -> Out {
    let tol = c.tol.unwrap_or(DEFAULT_PAIRING_TOL);
    let (vals, ordering, notes) = match (&c.eigenvalues, m.model) {
        (Some(_), Some(_)) => return Err(Fail::Config(anyhow!("give either --eigenvalues or --model, not both"))),
        (None, None) => return Err(Fail::Config(anyhow!("--eigenvalues or --model is required"))),
        (Some(text), None) => {
            let ordering = match c.ordering.unwrap_or(OrderingArg::Magnitude) {
                OrderingArg::Magnitude => SpectrumOrdering::ByMagnitude,
                OrderingArg::RealPart => SpectrumOrdering::ByRealPart,
            };
            (parse_eigenvalues(text).cfg()?, ordering, Vec::new())
        }
        (None, Some(_)) => {
            if c.ordering.is_some() {
                return Err(Fail::Config(anyhow!("--ordering is fixed by the model kind")));
            }
            no_sweep(m)?;
            let b = bundle(m)?;
            let (ordering, order) = ordering_of(&b);
            (eigenvalues(&b.matrix, order).compute()?, ordering, b.notes.clone())
        }
    };
    let (paired, label) = pair_and_classify(&vals, ordering, tol).compute()?;
    let decay = match ordering {
        SpectrumOrdering::ByMagnitude if paired.len() >= 2 => Some(fit_decay(&paired).compute()?),
        _ => None,
    };

    #[derive(Serialize)]
    struct Report {
        ordering: SpectrumOrdering,
        region: String,
        reals: Vec<f64>,
        pairs: Vec<[f64; 2]>,
        dominant: Vec<[f64; 2]>,
        evidence: ptspectra::pt::Evidence,
        #[serde(skip_serializing_if = "Option::is_none")]
        decay: Option<ptspectra::observables::DecayFit>,
    }
    let report = Report {
        ordering,
        region: label.region.to_string(),
        reals: paired.reals.clone(),
        pairs: pairs(&paired.pairs),
        dominant: pairs(&label.dominant),
        evidence: label.evidence,
        decay,
    };
    Artifact::json(&report, notes).compute()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Direct,
    Spectral,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelatorArgs {
    /// Chain length.
    #[arg(long = "L")]
    #[serde(rename = "L")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    /// First operator (default `w`).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op1: Option<String>,
    /// Second operator (default: `wdag` after `w`, otherwise `op1`).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op2: Option<String>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodArg>,
    /// Subtract <op1><op2>.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
}

pub const CORRELATOR_COLUMNS: &[&str] = &["r", "G", "method"];

pub fn correlator(m: &ModelArgs, c: &CorrelatorArgs) -> Out {
    no_sweep(m)?;
    let l = c.l.ok_or_else(|| anyhow!("--L is required")).cfg()?;
    let b = bundle(m)?;
    let op1 = c.op1.clone().unwrap_or_else(|| "w".into());
    let op2 = c.op2.clone().unwrap_or_else(|| if op1 == "w" { "wdag".into() } else { op1.clone() });
    for op in [&op1, &op2] {
        if !b.operators.contains_key(op.as_str()) {
            let known: Vec<&str> = b.operators.keys().map(String::as_str).collect();
            return Err(Fail::Config(anyhow!("operator `{op}` not available; this model has {known:?}")));
        }
    }
    let method = match c.method.unwrap_or(MethodArg::Direct) {
        MethodArg::Direct => CorrelatorMethod::DirectTrace,
        MethodArg::Spectral => CorrelatorMethod::Spectral,
    };
    let series = two_point(&b, &op1, &op2, l, method, c.connected.unwrap_or(false)).compute()?;
    let mut text = CORRELATOR_COLUMNS.join(",");
    text.push('\n');
    for (r, g) in series.separations.iter().zip(&series.values) {
        writeln!(text, "{r},{},{}", num(*g), method.as_str()).unwrap();
    }
    let mut notes = b.notes.clone();
    notes.push(format!(
        "G(r) = <{op1}(0) {op2}(r)>{} on a periodic chain of length {l}",
        if series.connected { format!(" - <{op1}><{op2}>") } else { String::new() }
    ));
    notes.push(format!("imaginary residual {:.3e}", series.imag_residual));
    Ok(Artifact::csv(text, CORRELATOR_COLUMNS, notes).with_spec(&b.spec))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanArgs {}

pub const SCAN_COLUMNS: &[&str] = &[
    "param1",
    "param2",
    "region",
    "re_lambda0",
    "im_lambda0",
    "re_lambda1",
    "im_lambda1",
];

pub fn scan(m: &ModelArgs, _c: &ScanArgs) -> Out {
    m.check_relevant().cfg()?;
    let family = match m.kind().cfg()? {
        ModelKind::Zn => {
            let j = match m.j {
                Some(crate::config::Param::Value(j)) => j,
                None => return Err(Fail::Config(anyhow!("missing --J"))),
                _ => return Err(Fail::Config(anyhow!("--J must be a single value for a Z(N) scan"))),
            };
            ScanFamily::Zn { n: m.n.unwrap_or(3), j }
        }
        ModelKind::Annni | ModelKind::AnnniBlock => ScanFamily::Annni,
        ModelKind::ChiralPotts => ScanFamily::ChiralPotts { n: m.n.unwrap_or(3) },
        ModelKind::Gauge => return Err(Fail::Config(anyhow!("scan supports zn, annni and chiral-potts"))),
    };
    let names = family.axis_names();
    let swept = m.swept();
    let got: Vec<&str> = swept.iter().map(|s| s.name).collect();
    if got != names {
        return Err(Fail::Config(anyhow!(
            "scan needs ranges for --{} and --{} (got {:?})",
            names[0],
            names[1],
            got
        )));
    }
    let grid = ScanGrid::run(family, [swept[0].axis, swept[1].axis], Exec::default()).cfg()?;
    let mut buf = Vec::new();
    grid.write_csv(&mut buf).compute()?;
    let mut notes = vec![format!("param1 = {}, param2 = {}", names[0], names[1])];
    if matches!(family, ScanFamily::Annni) {
        notes.push("ANNNI cells are classified on the block form T2 ⊕ T~2".into());
    }
    let failures = grid.failures();
    if failures > 0 {
        notes.push(format!("{failures} cells failed and are marked `error`"));
    }
    Ok(Artifact::csv(String::from_utf8(buf).compute()?, SCAN_COLUMNS, notes))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZerosArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
}

pub fn zeros(m: &ModelArgs, c: &ZerosArgs) -> Out {
    let l = c.l.ok_or_else(|| anyhow!("--L is required")).cfg()?;
    let swept = m.swept();
    let [s] = swept.as_slice() else {
        return Err(Fail::Config(anyhow!("zeros needs exactly one parameter given as a range start:stop:steps")));
    };
    if s.axis.steps < 2 {
        return Err(Fail::Config(anyhow!("the path needs at least 2 steps")));
    }
    // validate the model once before sweeping
    bundle(&m.pinned(s.name, s.axis.start))?;
    let name = s.name;
    let family = |x: f64| -> ptspectra::Result<ModelBundle> {
        bundle(&m.pinned(name, x)).map_err(|e| ptspectra::Error::InvalidInput(e.to_string()))
    };
    let res = lee_yang_zeros(family, l, &path_of(s.axis), Exec::default()).compute()?;
    let notes = vec![format!("path parameter {name}")];
    Artifact::json(&res, notes).compute()
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeSpectrumArgs {
    /// Report only the lowest `k` eigenvalues.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

fn gauge_model(m: &ModelArgs) -> Result<ModelArgs, Fail> {
    let mut m = m.clone();
    match m.model {
        None => m.model = Some(ModelKind::Gauge),
        Some(ModelKind::Gauge) => {}
        Some(other) => return Err(Fail::Config(anyhow!("this subcommand needs a gauge model, got {other}"))),
    }
    Ok(m)
}

pub fn gauge_spectrum(m: &ModelArgs, c: &GaugeSpectrumArgs) -> Out {
    let m = gauge_model(m)?;
    no_sweep(&m)?;
    let spec = m.gauge().cfg()?;
    let b = bundle(&m)?;
    let basis = irrep_basis(spec.group, spec.cutoff).cfg()?;
    let truncated = character_matrices(&basis).truncated.len();
    let mut vals = eigenvalues(&b.matrix, EigenOrder::RealPartAscending).compute()?;
    let (_, label) = pair_and_classify(&vals, SpectrumOrdering::ByRealPart, DEFAULT_PAIRING_TOL).compute()?;
    if let Some(k) = c.k {
        vals.truncate(k);
    }

    #[derive(Serialize)]
    struct Report {
        spec: ptspectra::gauge::GaugeSpec,
        boundary_condition: Option<ptspectra::gauge::BoundaryCondition>,
        basis_size: usize,
        labels: Vec<String>,
        truncated_products: usize,
        eigenvalues: Vec<[f64; 2]>,
        region: String,
    }
    let report = Report {
        spec,
        boundary_condition: spec.boundary_condition(),
        basis_size: basis.len(),
        labels: basis.labels.iter().map(|l| l.to_string()).collect(),
        truncated_products: truncated,
        eigenvalues: pairs(&vals),
        region: label.region.to_string(),
    };
    Ok(Artifact::json(&report, b.notes.clone()).compute()?.with_spec(&b.spec))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryArgs {
    /// Number of lowest eigenvalues to track (default 6).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[arg(long = "max-cutoff")]
    #[serde(rename = "max-cutoff")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cutoff: Option<usize>,
    #[arg(long = "drift-tol")]
    #[serde(rename = "drift-tol")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drift_tol: Option<f64>,
}

pub const TRAJECTORY_COLUMNS: &[&str] = &["beta_mu", "k", "re_E", "im_E"];

pub fn trajectory(m: &ModelArgs, c: &TrajectoryArgs) -> Out {
    let m = gauge_model(m)?;
    let swept = m.swept();
    let axis = match swept.as_slice() {
        [s] if s.name == "beta-mu" => s.axis,
        _ => return Err(Fail::Config(anyhow!("trajectory needs --beta-mu start:stop:steps and no other range"))),
    };
    let template = m.pinned("beta-mu", axis.start);
    bundle(&template)?;
    let spec = template.gauge().cfg()?;
    let defaults = TrajectoryOptions::default();
    let opts = TrajectoryOptions {
        k: c.k.unwrap_or(defaults.k),
        max_cutoff: c.max_cutoff.unwrap_or(defaults.max_cutoff),
        drift_tol: c.drift_tol.unwrap_or(defaults.drift_tol),
        exec: Exec::default(),
    };
    if opts.k == 0 {
        return Err(Fail::Config(anyhow!("--k must be at least 1")));
    }
    let traj = eigen_trajectory(&spec, &axis.values(), &opts).compute()?;
    let mut text = TRAJECTORY_COLUMNS.join(",");
    text.push('\n');
    for p in &traj.points {
        for (k, e) in p.eigenvalues.iter().enumerate() {
            writeln!(text, "{},{k},{},{}", num(p.beta_mu), num(e.re), num(e.im)).unwrap();
        }
    }
    let max_cut = traj.points.iter().map(|p| p.cutoff).max().unwrap_or(spec.cutoff);
    let max_drift = traj.points.iter().map(|p| p.drift).fold(0.0, f64::max);
    let mut notes = vec![
        "k indexes the lowest eigenvalues by ascending real part".to_string(),
        format!("cutoffs used up to {max_cut}, largest drift {max_drift:.3e}"),
    ];
    for k in 0..opts.k {
        if let Some(x) = traj.onset(k) {
            notes.push(format!("slot {k} first complex at beta_mu = {x}"));
        }
    }
    Ok(Artifact::csv(text, TRAJECTORY_COLUMNS, notes))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
}

pub fn oracle(m: &ModelArgs, c: &OracleArgs) -> Out {
    no_sweep(m)?;
    let l = c.l.ok_or_else(|| anyhow!("--L is required")).cfg()?;
    m.check_relevant().cfg()?;

    #[derive(Serialize)]
    struct Route {
        route: String,
        value: [f64; 2],
        relative_deviation: f64,
    }
    #[derive(Serialize)]
    struct Report {
        length: usize,
        config_count: u64,
        z: [f64; 2],
        #[serde(skip_serializing_if = "Option::is_none")]
        bond_sum: Option<f64>,
        routes: Vec<Route>,
        tolerance: f64,
        agrees: bool,
        correlators: Vec<[f64; 2]>,
    }

    let report = match m.kind().cfg()? {
        ModelKind::Zn => {
            let spec = m.zn().cfg()?;
            let b = build_zn_transfer(&spec).cfg()?;
            let en = enumerate_zn_chain(&spec, l, Exec::default()).cfg()?;
            let vals = eigenvalues(&b.matrix, EigenOrder::MagnitudeDescending).compute()?;
            let scale: f64 = vals.iter().map(|z| z.norm().powi(l as i32)).sum();
            let tr = b.matrix.pow(l).trace();
            let dev = (en.z - tr).norm() / scale;
            Report {
                length: l,
                config_count: en.config_count,
                z: complex_pair(en.z),
                bond_sum: None,
                routes: vec![Route { route: format!("Tr T^{l}"), value: complex_pair(tr), relative_deviation: dev }],
                tolerance: ORACLE_TOL,
                agrees: dev <= ORACLE_TOL,
                correlators: pairs(&en.correlators),
            }
        }
        ModelKind::Annni | ModelKind::AnnniBlock => {
            let spec = m.annni().cfg()?;
            let b = build_annni(&spec).cfg()?;
            let en = enumerate_annni_chain(&spec, l, Exec::default()).cfg()?;
            let z = en.spin_sum.z;
            let rel = |v: C64| (v - z).norm() / z.norm();
            let mut routes = vec![Route {
                route: "constrained bond sum".into(),
                value: [en.bond_sum, 0.0],
                relative_deviation: rel(C64::new(en.bond_sum, 0.0)),
            }];
            if l % 2 == 0 {
                let tr = b.t4.matrix.pow(l / 2).trace();
                routes.push(Route { route: format!("Tr T4^{}", l / 2), value: complex_pair(tr), relative_deviation: rel(tr) });
            }
            let tr = b.block.matrix.pow(l).trace();
            routes.push(Route { route: format!("Tr (T2 ⊕ T~2)^{l}"), value: complex_pair(tr), relative_deviation: rel(tr) });
            let agrees = routes.iter().all(|r| r.relative_deviation <= ORACLE_TOL);
            Report {
                length: l,
                config_count: en.spin_sum.config_count,
                z: complex_pair(z),
                bond_sum: Some(en.bond_sum),
                routes,
                tolerance: ORACLE_TOL,
                agrees,
                correlators: pairs(&en.spin_sum.correlators),
            }
        }
        other => return Err(Fail::Config(anyhow!("oracle supports zn and annni, got {other}"))),
    };
    let notes = vec!["Z(N) deviations are relative to sum |lambda|^L; ANNNI deviations relative to Z".to_string()];
    Artifact::json(&report, notes).compute()
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HermitizeArgs {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

pub fn hermitize_cmd(m: &ModelArgs, c: &HermitizeArgs) -> Out {
    no_sweep(m)?;
    let b = bundle(m)?;
    let h = hermitize(&b.matrix, c.tol.unwrap_or(DEFAULT_PAIRING_TOL)).compute()?;

    #[derive(Serialize)]
    struct Report {
        eigenvalues: Vec<f64>,
        hermiticity_defect: f64,
        spectrum_error: f64,
        hermitian: Vec<Vec<[f64; 2]>>,
        similarity: Vec<Vec<[f64; 2]>>,
    }
    let report = Report {
        eigenvalues: h.eigenvalues.clone(),
        hermiticity_defect: h.hermiticity_defect,
        spectrum_error: h.spectrum_error,
        hermitian: matrix_json(&h.hermitian),
        similarity: matrix_json(&h.similarity),
    };
    Ok(Artifact::json(&report, b.notes.clone()).compute()?.with_spec(&b.spec))
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealBasisArgs {}

pub fn realbasis(m: &ModelArgs, _c: &RealBasisArgs) -> Out {
    no_sweep(m)?;
    let b = bundle(m)?;
    let rb = real_basis(&b.matrix, &b.parity).compute()?;

    #[derive(Serialize)]
    struct Report {
        max_imag_relative: f64,
        real_matrix: Vec<Vec<f64>>,
        basis: Vec<Vec<[f64; 2]>>,
    }
    let n = rb.real_matrix.dim();
    let report = Report {
        max_imag_relative: rb.max_imag_relative,
        real_matrix: (0..n).map(|i| (0..n).map(|j| rb.real_matrix[(i, j)].re).collect()).collect(),
        basis: matrix_json(&rb.basis),
    };
    Ok(Artifact::json(&report, b.notes.clone()).compute()?.with_spec(&b.spec))
}
