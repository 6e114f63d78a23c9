//! Command-line and JSON config handling.
//!
//! A config file has the shape
//! `{"subcommand": .., "model": {..}, "computation": {..}, "output": {..}, "seed": ..}`
//! where each block uses the same keys as the long flags. Flags given on
//! the command line win over the file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use ptspectra::gauge::{GaugeSpec, Group};
use ptspectra::observables::{Axis, ParameterPath};
use ptspectra::spin::{AnnniSpec, ChiralPottsSpec, ZnSpec};

/// A scalar `x` or an inclusive range `start:stop:steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Value(f64),
    Range(Axis),
}

impl FromStr for Param {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let num = |t: &str| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        match parts.as_slice() {
            [x] => Ok(Param::Value(num(x)?)),
            [a, b, n] => {
                let steps: usize = n.parse().map_err(|_| format!("`{n}` is not a step count"))?;
                if steps < 1 {
                    return Err("a range needs at least one step".into());
                }
                Ok(Param::Range(Axis::new(num(a)?, num(b)?, steps)))
            }
            _ => Err(format!("`{s}` is neither a number nor start:stop:steps")),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Value(x) => write!(f, "{x}"),
            Param::Range(a) => write!(f, "{}:{}:{}", a.start, a.stop, a.steps),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Value(x) => s.serialize_f64(*x),
            Param::Range(_) => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Param::Value(x)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Zn,
    ChiralPotts,
    /// Explicit 4x4 pair transfer matrix.
    Annni,
    /// Block form `T2 ⊕ T~2`.
    AnnniBlock,
    Gauge,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupArg {
    U1,
    Su2,
    Su3,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Group {
        match g {
            GroupArg::U1 => Group::U1,
            GroupArg::Su2 => Group::SU2,
            GroupArg::Su3 => Group::SU3,
        }
    }
}

/// Model selection and parameters. Numeric parameters accept ranges where a
/// subcommand sweeps them.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelKind>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[arg(long = "J", allow_hyphen_values = true)]
    #[serde(rename = "J")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<Param>,
    #[arg(long = "hR", allow_hyphen_values = true)]
    #[serde(rename = "hR")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_r: Option<Param>,
    #[arg(long = "hI", allow_hyphen_values = true)]
    #[serde(rename = "hI")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_i: Option<Param>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Param>,
    #[arg(long = "K1", allow_hyphen_values = true)]
    #[serde(rename = "K1")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<Param>,
    #[arg(long = "K2", allow_hyphen_values = true)]
    #[serde(rename = "K2")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<Param>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupArg>,
    /// Quark coupling h_F beta; its sign selects the boundary condition.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Param>,
    #[arg(long = "beta-mu", allow_hyphen_values = true)]
    #[serde(rename = "beta-mu")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_mu: Option<Param>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[arg(long = "coupling-scale", allow_hyphen_values = true)]
    #[serde(rename = "coupling-scale")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling_scale: Option<f64>,
    #[arg(long = "high-density", num_args = 0..=1, default_missing_value = "true")]
    #[serde(rename = "high-density")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub high_density: Option<bool>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputArgs {
    /// Output file; standard output when absent (no sidecar is written).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

/// One scanned parameter of a model.
#[derive(Debug, Clone, Copy)]
pub struct Swept {
    pub name: &'static str,
    pub axis: Axis,
}

impl ModelArgs {
    pub fn kind(&self) -> anyhow::Result<ModelKind> {
        self.model.ok_or_else(|| anyhow!("--model is required"))
    }

    fn params(&self) -> Vec<(&'static str, Option<Param>)> {
        vec![
            ("J", self.j),
            ("hR", self.h_r),
            ("hI", self.h_i),
            ("delta", self.delta),
            ("K1", self.k1),
            ("K2", self.k2),
            ("h", self.h),
            ("beta-mu", self.beta_mu),
        ]
    }

    /// Parameters given as ranges, in flag order.
    pub fn swept(&self) -> Vec<Swept> {
        self.params()
            .into_iter()
            .filter_map(|(name, p)| match p {
                Some(Param::Range(axis)) => Some(Swept { name, axis }),
                _ => None,
            })
            .collect()
    }

    /// The model's parameters relevant to `kind`, for error messages.
    fn relevant(kind: ModelKind) -> &'static [&'static str] {
        match kind {
            ModelKind::Zn => &["J", "hR", "hI"],
            ModelKind::ChiralPotts => &["J", "delta"],
            ModelKind::Annni | ModelKind::AnnniBlock => &["K1", "K2"],
            ModelKind::Gauge => &["h", "beta-mu"],
        }
    }

    /// Reject parameters that do not belong to the selected model.
    pub fn check_relevant(&self) -> anyhow::Result<()> {
        let kind = self.kind()?;
        let allowed = Self::relevant(kind);
        for (name, p) in self.params() {
            if p.is_some() && !allowed.contains(&name) {
                bail!("--{name} does not apply to model {kind}");
            }
        }
        let gauge_only = self.group.is_some()
            || self.cutoff.is_some()
            || self.coupling_scale.is_some()
            || self.high_density.is_some();
        if gauge_only && kind != ModelKind::Gauge {
            bail!("gauge options given for model {kind}");
        }
        if self.n.is_some() && !matches!(kind, ModelKind::Zn | ModelKind::ChiralPotts) {
            bail!("--N does not apply to model {kind}");
        }
        Ok(())
    }

    fn scalar(&self, name: &str, p: Option<Param>, default: Option<f64>) -> anyhow::Result<f64> {
        match p {
            Some(Param::Value(x)) => Ok(x),
            Some(Param::Range(_)) => bail!("--{name} must be a single value here"),
            None => default.ok_or_else(|| anyhow!("--{name} is required")),
        }
    }

    /// Like `self`, but with the swept parameter `name` pinned to `x`.
    pub fn pinned(&self, name: &str, x: f64) -> ModelArgs {
        let mut m = self.clone();
        let slot = match name {
            "J" => &mut m.j,
            "hR" => &mut m.h_r,
            "hI" => &mut m.h_i,
            "delta" => &mut m.delta,
            "K1" => &mut m.k1,
            "K2" => &mut m.k2,
            "h" => &mut m.h,
            "beta-mu" => &mut m.beta_mu,
            _ => unreachable!("unknown parameter {name}"),
        };
        *slot = Some(Param::Value(x));
        m
    }

    pub fn zn(&self) -> anyhow::Result<ZnSpec> {
        Ok(ZnSpec::new(
            self.n.unwrap_or(3),
            self.scalar("J", self.j, None)?,
            self.scalar("hR", self.h_r, Some(0.0))?,
            self.scalar("hI", self.h_i, Some(0.0))?,
        ))
    }

    pub fn chiral(&self) -> anyhow::Result<ChiralPottsSpec> {
        Ok(ChiralPottsSpec {
            n: self.n.unwrap_or(3),
            j: self.scalar("J", self.j, None)?,
            delta: self.scalar("delta", self.delta, None)?,
        })
    }

    pub fn annni(&self) -> anyhow::Result<AnnniSpec> {
        Ok(AnnniSpec {
            k1: self.scalar("K1", self.k1, None)?,
            k2: self.scalar("K2", self.k2, None)?,
        })
    }

    pub fn gauge(&self) -> anyhow::Result<GaugeSpec> {
        let group = self.group.ok_or_else(|| anyhow!("--group is required"))?;
        let cutoff = self.cutoff.ok_or_else(|| anyhow!("--cutoff is required"))?;
        Ok(GaugeSpec {
            group: group.into(),
            coupling_scale: self.coupling_scale.unwrap_or(1.0),
            h: self.scalar("h", self.h, None)?,
            beta_mu: self.scalar("beta-mu", self.beta_mu, Some(0.0))?,
            cutoff,
            high_density: self.high_density.unwrap_or(false),
        })
    }
}

pub fn path_of(axis: Axis) -> ParameterPath {
    ParameterPath::new(axis.start, axis.stop, axis.steps)
}

/// A parsed config file, split into its blocks.
#[derive(Debug, Default)]
pub struct ConfigFile {
    pub subcommand: Option<String>,
    pub model: Option<Value>,
    pub computation: Option<Value>,
    pub output: Option<Value>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> anyhow::Result<ConfigFile> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let Value::Object(mut map) = value else {
            bail!("{}: top level must be a JSON object", path.display());
        };
        let mut take = |key: &str| map.remove(key);
        let subcommand = match take("subcommand") {
            None => None,
            Some(Value::String(s)) => Some(s),
            Some(other) => bail!("`subcommand` must be a string, got {other}"),
        };
        let seed = match take("seed") {
            None => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| anyhow!("`seed` must be a non-negative integer"))?),
        };
        let cfg = ConfigFile {
            subcommand,
            model: take("model"),
            computation: take("computation"),
            output: take("output"),
            seed,
        };
        if let Some(key) = map.keys().next() {
            bail!("unknown config key `{key}`");
        }
        Ok(cfg)
    }
}

/// Overlay the flags that were given on top of the file block.
pub fn merge<T: Serialize + DeserializeOwned>(cli: &T, file: Option<&Value>, block: &str) -> anyhow::Result<T> {
    let mut base = match file {
        None => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(other) => bail!("config block `{block}` must be an object, got {other}"),
    };
    if let Value::Object(flags) = serde_json::to_value(cli)? {
        for (k, v) in flags {
            if !v.is_null() {
                base.insert(k, v);
            }
        }
    }
    serde_json::from_value(Value::Object(base)).with_context(|| format!("config block `{block}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parse() {
        assert_eq!("0.25".parse::<Param>().unwrap(), Param::Value(0.25));
        assert_eq!(
            "-2.5:1.0:141".parse::<Param>().unwrap(),
            Param::Range(Axis::new(-2.5, 1.0, 141))
        );
        assert!("1:2".parse::<Param>().is_err());
        assert!("1:2:0".parse::<Param>().is_err());
        assert!("x".parse::<Param>().is_err());
    }

    #[test]
    fn param_round_trips_through_json() {
        for p in [Param::Value(-0.5), Param::Range(Axis::new(0.0, 2.0, 81))] {
            let v = serde_json::to_value(p).unwrap();
            assert_eq!(serde_json::from_value::<Param>(v).unwrap(), p);
        }
    }

    #[test]
    fn flags_override_file() {
        let file = serde_json::json!({"model": "zn", "J": 0.2, "hR": 0.1});
        let cli = ModelArgs { h_r: Some(Param::Value(0.7)), ..Default::default() };
        let m: ModelArgs = merge(&cli, Some(&file), "model").unwrap();
        assert_eq!(m.model, Some(ModelKind::Zn));
        assert_eq!(m.j, Some(Param::Value(0.2)));
        assert_eq!(m.h_r, Some(Param::Value(0.7)));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let file = serde_json::json!({"model": "zn", "Jay": 0.2});
        assert!(merge(&ModelArgs::default(), Some(&file), "model").is_err());
    }
}
