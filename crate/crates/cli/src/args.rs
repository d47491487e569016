//! Argument types shared by several subcommands.

use std::str::FromStr;

use clap::{Args, ValueEnum};
use qsurf_core::{build_surface_code, build_xzzx_code, Bias, ChannelModel, DecoderKind, Error, SurfaceCode};
use serde::Serialize;

/// Code distances as `dX,dZ`, or a single distance for a square code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeSpec {
    pub d_x: usize,
    pub d_z: usize,
}

impl FromStr for CodeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split([',', 'x', '/']).map(str::trim).collect();
        let parse = |p: &str| p.parse::<usize>().map_err(|_| format!("bad distance {p:?} in code spec {s:?}"));
        match parts.as_slice() {
            [d] => {
                let d = parse(d)?;
                Ok(Self { d_x: d, d_z: d })
            }
            [x, z] => Ok(Self { d_x: parse(x)?, d_z: parse(z)? }),
            _ => Err(format!("code spec {s:?} must look like 3,5")),
        }
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct CodeArgs {
    /// Distances `dX,dZ` (X-distance first), e.g. `3,5`.
    #[arg(long, value_name = "DX,DZ")]
    pub code: CodeSpec,
    /// Build the XZZX variant instead of the CSS surface code.
    #[arg(long)]
    pub xzzx: bool,
}

impl CodeArgs {
    pub fn build(&self) -> qsurf_core::Result<SurfaceCode> {
        if self.xzzx {
            build_xzzx_code(self.code.d_x, self.code.d_z)
        } else {
            build_surface_code(self.code.d_x, self.code.d_z)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderArg {
    Mwpm,
    Ml,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Mwpm => DecoderKind::Mwpm,
            DecoderArg::Ml => DecoderKind::Ml,
        }
    }
}

pub fn parse_bias(s: &str) -> Result<Bias, String> {
    Bias::parse(s).map_err(|e| e.to_string())
}

/// A single channel, given either as `--rho` with `--bias` or as explicit probabilities.
#[derive(Args, Clone, Debug, Serialize)]
pub struct ChannelArgs {
    /// Total error probability per qubit.
    #[arg(long, conflicts_with_all = ["px", "py", "pz"])]
    pub rho: Option<f64>,
    /// Bias A = 2 p_Z / (rho - p_Z); `1` is depolarizing, `inf` is phase-flip.
    #[arg(long, default_value = "1", value_parser = parse_bias)]
    pub bias: Bias,
    #[arg(long, requires_all = ["py", "pz"])]
    pub px: Option<f64>,
    #[arg(long, requires_all = ["px", "pz"])]
    pub py: Option<f64>,
    #[arg(long, requires_all = ["px", "py"])]
    pub pz: Option<f64>,
}

impl ChannelArgs {
    /// `None` when no channel was given at all.
    pub fn channel(&self) -> qsurf_core::Result<Option<ChannelModel>> {
        if let (Some(x), Some(y), Some(z)) = (self.px, self.py, self.pz) {
            return ChannelModel::from_probabilities(x, y, z).map(Some);
        }
        self.rho.map(|rho| ChannelModel::from_bias(rho, self.bias)).transpose()
    }
}

/// A list of `rho` values: `0.01,0.02`, `log:LO:HI:N` or `lin:LO:HI:N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?} in grid {s:?}"));
        let values = if let Some(rest) = s.strip_prefix("log:").or_else(|| s.strip_prefix("lin:")) {
            let parts: Vec<&str> = rest.split(':').collect();
            let [lo, hi, n] = parts.as_slice() else {
                return Err(format!("grid {s:?} must look like log:1e-3:0.5:50"));
            };
            let (lo, hi) = (num(lo)?, num(hi)?);
            let n: usize = n.trim().parse().map_err(|_| format!("bad point count in grid {s:?}"))?;
            let log = s.starts_with("log:");
            if n == 0 || !(lo < hi) || (log && lo <= 0.0) {
                return Err(format!("grid {s:?} needs 0 < LO < HI and N >= 1"));
            }
            (0..n)
                .map(|i| {
                    let f = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
                    if log {
                        lo * (hi / lo).powf(f)
                    } else {
                        lo + (hi - lo) * f
                    }
                })
                .collect()
        } else {
            s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(format!("grid value {v} outside [0, 1]"));
        }
        Ok(Grid(values))
    }
}

/// Comma-separated floats, used for beta lists.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("bad number {p:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(FloatList)
    }
}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidArgument(msg.into()).into()
}
