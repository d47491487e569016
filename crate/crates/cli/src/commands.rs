use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use qsurf_core::analysis::{
    asymptotic_asym_approx, asymptotic_slope_approx, code_effective_threshold_approx, code_effective_threshold_exact,
    logical_error_alpha_form, logical_error_asym, logical_error_beta, logical_error_beta_z, logical_error_bounded,
    THRESHOLD_BRACKET,
};
use qsurf_core::codes::CodeDescription;
use qsurf_core::enumeration::{beta_row, beta_table, beta_z, BetaRow, DEFAULT_BUDGET};
use qsurf_core::montecarlo::{point_seed, simulate, sweep, SimEstimate};
use qsurf_core::{
    build_surface_code, decode_and_judge, BetaVector, Bias, ChannelModel, CodeParams, Decoder, DecoderKind, Error,
    PauliOperator, Syndrome,
};
use serde::Serialize;

use crate::args::{config_error, parse_bias, ChannelArgs, CodeArgs, CodeSpec, DecoderArg, FloatList, Grid};
use crate::output::{csv_writer, write_json, Provenance};

#[derive(Args, Debug, Serialize)]
pub struct DescribeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub code: CodeArgs,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Description {
    #[serde(flatten)]
    code: CodeDescription,
    params: CodeParams,
}

pub fn describe(a: &DescribeArgs) -> Result<()> {
    let code = a.code.build()?;
    let result = Description { code: code.describe(), params: CodeParams::from_code(&code) };
    write_json(a.out.as_deref(), Provenance::new("describe", a), &result)
}

#[derive(Args, Debug, Serialize)]
pub struct DecodeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value = "mwpm")]
    pub decoder: DecoderArg,
    /// Channel for ML decoding (and for MWPM on XZZX codes, which must be phase-flip).
    #[command(flatten)]
    #[serde(flatten)]
    pub channel: ChannelArgs,
    /// Error to decode, e.g. "Z2 Z3" (1-based qubit indices).
    #[arg(long, required_unless_present = "syndrome", conflicts_with = "syndrome")]
    pub error: Option<String>,
    /// Syndrome bit string, generator 1 first.
    #[arg(long)]
    pub syndrome: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SyndromeDecode {
    syndrome: String,
    correction: String,
}

pub fn decode(a: &DecodeArgs) -> Result<()> {
    let code = a.code.build()?;
    let channel = a.channel.channel()?;
    let decoder = Decoder::new(&code, a.decoder.into(), channel.as_ref())?;
    let prov = Provenance::new("decode", a);
    if let Some(text) = &a.error {
        let error = PauliOperator::parse(code.num_qubits(), text)?;
        write_json(a.out.as_deref(), prov, &decode_and_judge(&code, &decoder, &error)?)
    } else {
        let s = Syndrome::parse(a.syndrome.as_deref().unwrap_or_default())?;
        if s.len() != code.num_generators() {
            return Err(Error::SyndromeLength { got: s.len(), expected: code.num_generators() }.into());
        }
        let correction = decoder.decode(&s)?;
        write_json(a.out.as_deref(), prov, &SyndromeDecode { syndrome: s.to_string(), correction: correction.to_string() })
    }
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value = "mwpm")]
    pub decoder: DecoderArg,
    /// Channel the ML decoder is built for.
    #[command(flatten)]
    #[serde(flatten)]
    pub channel: ChannelArgs,
    /// Largest error weight to enumerate.
    #[arg(long)]
    pub max_weight: usize,
    /// Smallest error weight (defaults to t + 1).
    #[arg(long)]
    pub min_weight: Option<usize>,
    /// Most decodes allowed for one weight row.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Write the per-class table layout as CSV instead of JSON.
    #[arg(long)]
    pub table1: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One block of the Table I layout: a header row of class names, then one
/// row per code.
pub fn write_table1_block<W: std::io::Write>(
    w: &mut csv::Writer<W>,
    weight: usize,
    rows: &[(String, &BetaRow)],
) -> Result<()> {
    let Some((_, first)) = rows.first() else { return Ok(()) };
    let mut header = vec!["code".to_string(), format!("1-beta_{weight}"), format!("1-betaZ_{weight}")];
    header.extend(first.classes.iter().map(|c| c.class.clone()));
    w.write_record(&header)?;
    for (label, row) in rows {
        let mut rec = vec![label.clone(), format!("{:.4}", row.one_minus_beta), format!("{:.4}", row.one_minus_beta_z)];
        rec.extend(row.classes.iter().map(|c| format!("{:.4}", c.fraction)));
        w.write_record(&rec)?;
    }
    Ok(())
}

pub fn enumerate_beta(a: &EnumerateArgs) -> Result<()> {
    let code = a.code.build()?;
    let channel = a.channel.channel()?;
    let decoder = Decoder::new(&code, a.decoder.into(), channel.as_ref())?;
    let lo = a.min_weight.unwrap_or(CodeParams::from_code(&code).t + 1);
    if lo > a.max_weight {
        return Err(config_error(format!("min weight {lo} exceeds max weight {}", a.max_weight)));
    }
    let table = beta_table(&code, &decoder, lo..=a.max_weight, a.budget)?;
    let prov = Provenance::new("enumerate-beta", a);
    if a.table1 {
        let mut w = csv_writer(a.out.as_deref(), prov)?;
        for row in &table.rows {
            write_table1_block(&mut w, row.weight, &[(table.code.clone(), row)])?;
        }
        w.flush()?;
        Ok(())
    } else {
        write_json(a.out.as_deref(), prov, &table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// Bounded-distance decoder correcting t generic errors.
    Bounded,
    /// Asymmetric bound with p_Z from the bias.
    Asym,
    /// Asymmetric bound through the alpha coefficients (finite bias).
    Alpha,
    /// Leading term C(n, t+1) rho^(t+1), scaled by 1 - beta_{t+1} when betas are given.
    Slope,
    /// Leading term of the asymmetric bound.
    SlopeAsym,
    /// Complete decoder with the given beta_j (depolarizing channel).
    Beta,
    /// Complete decoder with the given beta_j^Z, evaluated at p_Z = rho (phase-flip channel).
    BetaZ,
}

#[derive(Args, Debug, Serialize)]
pub struct AnalyticArgs {
    #[arg(long, value_enum)]
    pub formula: Formula,
    /// Distances `dX,dZ`; n, t, e_g and e_Z follow from them.
    #[arg(long, value_name = "DX,DZ")]
    pub code: CodeSpec,
    #[arg(long, default_value = "1", value_parser = parse_bias)]
    pub bias: Bias,
    /// beta values, the first one at index `--beta-start`.
    #[arg(long)]
    pub betas: Option<FloatList>,
    /// Index of the first beta (defaults to t + 1, or t_Z + 1 for beta-z).
    #[arg(long)]
    pub beta_start: Option<usize>,
    #[arg(long, default_value = "log:1e-3:0.5:60")]
    pub grid: Grid,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn params(spec: CodeSpec) -> Result<CodeParams> {
    Ok(CodeParams::from_code(&build_surface_code(spec.d_x, spec.d_z)?))
}

pub fn analytic(a: &AnalyticArgs) -> Result<()> {
    let p = params(a.code)?;
    let betas = |default_start: usize| -> Result<BetaVector> {
        let list = a.betas.as_ref().ok_or_else(|| config_error("this formula needs --betas"))?;
        Ok(BetaVector::new(a.beta_start.unwrap_or(default_start), list.0.clone())?)
    };
    let eval: Box<dyn Fn(f64) -> qsurf_core::Result<f64>> = match a.formula {
        Formula::Bounded => Box::new(move |rho| logical_error_bounded(p.n, p.t, rho)),
        Formula::Asym => {
            let bias = a.bias;
            Box::new(move |rho| {
                let p_z = ChannelModel::from_bias(rho, bias)?.p_z();
                logical_error_asym(p.n, p.e_g, p.e_z, p_z, rho)
            })
        }
        Formula::Alpha => {
            let bias = a.bias;
            Box::new(move |rho| logical_error_alpha_form(p.n, p.e_g, p.e_z, rho, bias))
        }
        Formula::Slope => {
            let next = a.betas.as_ref().and_then(|b| b.0.first().copied());
            Box::new(move |rho| Ok(asymptotic_slope_approx(p.n, p.t, rho, next)))
        }
        Formula::SlopeAsym => {
            let bias = a.bias;
            Box::new(move |rho| asymptotic_asym_approx(p.n, p.e_g, p.e_z, rho, bias))
        }
        Formula::Beta => {
            let b = betas(p.t + 1)?;
            Box::new(move |rho| logical_error_beta(p.n, p.t, rho, &b))
        }
        Formula::BetaZ => {
            let b = betas(p.t_z + 1)?;
            Box::new(move |rho| logical_error_beta_z(p.n, p.t_z, rho, &b))
        }
    };
    let mut w = csv_writer(a.out.as_deref(), Provenance::new("analytic", a))?;
    w.write_record(["rho", "rho_L"])?;
    for &rho in &a.grid.0 {
        w.write_record([rho.to_string(), eval(rho)?.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Args, Debug, Serialize)]
pub struct ThresholdArgs {
    #[arg(long, value_name = "DX,DZ")]
    pub code: CodeSpec,
    /// Required improvement over the uncoded line is 10^gamma.
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    /// Phase-flip channel: use beta^Z and t = e_g + e_Z.
    #[arg(long)]
    pub phase_flip: bool,
    /// beta values from index t + 1 on; enumerated with MWPM when omitted.
    #[arg(long)]
    pub betas: Option<FloatList>,
    /// Largest weight to enumerate when --betas is omitted (defaults to t + 1).
    #[arg(long)]
    pub max_weight: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct ThresholdResult {
    pub code: String,
    pub n: usize,
    pub t: usize,
    pub phase_flip: bool,
    pub gamma: f64,
    pub beta_source: String,
    pub betas: BetaVector,
    /// Largest crossing of the complete-decoder curve with 10^-gamma rho.
    pub exact: Option<f64>,
    pub exact_note: Option<String>,
    /// Threshold of the leading asymptotic term.
    pub approx: Option<f64>,
    pub approx_note: Option<String>,
}

/// Betas for a threshold: pure-Z fractions for the phase-flip channel,
/// full rows otherwise, from weight `t + 1` to `max_weight`.
pub fn enumerated_betas(spec: CodeSpec, phase_flip: bool, max_weight: usize, budget: u128) -> Result<BetaVector> {
    let code = build_surface_code(spec.d_x, spec.d_z)?;
    let p = CodeParams::from_code(&code);
    let t = if phase_flip { p.t_z } else { p.t };
    let decoder = Decoder::new(&code, DecoderKind::Mwpm, None)?;
    let values = (t + 1..=max_weight.max(t + 1))
        .map(|j| {
            let miss = if phase_flip {
                beta_z(&code, &decoder, j, budget)?
            } else {
                beta_row(&code, &decoder, j, budget)?.one_minus_beta
            };
            Ok(1.0 - miss)
        })
        .collect::<qsurf_core::Result<Vec<_>>>()?;
    Ok(BetaVector::new(t + 1, values)?)
}

pub fn compute_threshold(
    spec: CodeSpec,
    phase_flip: bool,
    gamma: f64,
    betas: BetaVector,
    beta_source: String,
) -> Result<ThresholdResult> {
    let p = params(spec)?;
    let t = if phase_flip { p.t_z } else { p.t };
    let curve = |rho: f64| {
        if phase_flip {
            logical_error_beta_z(p.n, t, rho, &betas)
        } else {
            logical_error_beta(p.n, t, rho, &betas)
        }
        .unwrap_or(f64::NAN)
    };
    let (lo, hi) = THRESHOLD_BRACKET;
    let (exact, exact_note) = match code_effective_threshold_exact(curve, gamma, lo, hi) {
        Ok(v) => (Some(v), None),
        Err(e @ Error::NoCrossing { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let (approx, approx_note) = match code_effective_threshold_approx(p.n, t, betas.beta(t + 1), gamma) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let label = build_surface_code(spec.d_x, spec.d_z)?.label();
    Ok(ThresholdResult { code: label, n: p.n, t, phase_flip, gamma, beta_source, betas, exact, exact_note, approx, approx_note })
}

pub fn threshold(a: &ThresholdArgs) -> Result<()> {
    let p = params(a.code)?;
    let t = if a.phase_flip { p.t_z } else { p.t };
    let (betas, source) = match &a.betas {
        Some(list) => (BetaVector::new(t + 1, list.0.clone())?, "given".to_string()),
        None => {
            let max = a.max_weight.unwrap_or(t + 1);
            (enumerated_betas(a.code, a.phase_flip, max, a.budget)?, "enumerated with MWPM".to_string())
        }
    };
    let result = compute_threshold(a.code, a.phase_flip, a.gamma, betas, source)?;
    write_json(a.out.as_deref(), Provenance::new("threshold", a), &result)
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub code: CodeArgs,
    #[arg(long, value_enum, default_value = "mwpm")]
    pub decoder: DecoderArg,
    /// rho values: a list like 0.01,0.02 or a grid like log:1e-3:0.1:10.
    #[arg(long, required_unless_present = "px", conflicts_with_all = ["px", "py", "pz"])]
    pub rho: Option<Grid>,
    #[arg(long, default_value = "1", value_parser = parse_bias)]
    pub bias: Bias,
    /// Explicit channel probabilities (one point) instead of --rho and --bias.
    #[arg(long, requires_all = ["py", "pz"])]
    pub px: Option<f64>,
    #[arg(long, requires_all = ["px", "pz"])]
    pub py: Option<f64>,
    #[arg(long, requires_all = ["px", "py"])]
    pub pz: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SimRow {
    rho: f64,
    #[serde(rename = "A")]
    a: String,
    trials: u64,
    failures: u64,
    p_hat: f64,
    ci_lo: f64,
    ci_hi: f64,
}

impl From<&SimEstimate> for SimRow {
    fn from(e: &SimEstimate) -> Self {
        Self {
            rho: e.rho,
            a: e.bias.to_string(),
            trials: e.trials,
            failures: e.failures,
            p_hat: e.p_hat,
            ci_lo: e.ci_lo,
            ci_hi: e.ci_hi,
        }
    }
}

pub fn run_simulate(a: &SimulateArgs) -> Result<()> {
    let code = a.code.build()?;
    let estimates = match (&a.rho, a.px, a.py, a.pz) {
        (Some(grid), ..) => sweep(&code, a.decoder.into(), &grid.0, a.bias, a.trials, a.seed)?,
        (None, Some(x), Some(y), Some(z)) => {
            let ch = ChannelModel::from_probabilities(x, y, z)?;
            let dec = Decoder::new(&code, a.decoder.into(), Some(&ch))?;
            vec![simulate(&code, &dec, &ch, a.trials, point_seed(a.seed, 0))?]
        }
        _ => return Err(config_error("give --rho, or all of --px --py --pz")),
    };
    let mut w = csv_writer(a.out.as_deref(), Provenance::new("simulate", a))?;
    for e in &estimates {
        w.serialize(SimRow::from(e))?;
    }
    w.flush()?;
    Ok(())
}
