//! Monte Carlo logical error rates with worker-count independent streams.
//!
//! Trials are cut into fixed batches. Batch `b` of a point draws from a
//! ChaCha8 generator seeded with the point seed and switched to stream `b`,
//! so the sample sequence depends only on `(seed, b)` and never on how
//! batches land on threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{Bias, ChannelModel};
use crate::codes::{LogicalClass, SurfaceCode, Syndrome, Variant};
use crate::decoders::{judge, Decoder, DecoderKind};
use crate::error::{Error, Result};

/// Trials per independent random stream.
pub const BATCH_SIZE: u64 = 4096;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;

/// One simulated point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimEstimate {
    pub rho: f64,
    #[serde(rename = "A")]
    pub bias: Bias,
    pub code: String,
    pub decoder: DecoderKind,
    pub trials: u64,
    pub failures: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub ci_halfwidth: f64,
}

impl SimEstimate {
    /// Whether `value` lies within `k` half-widths of `p_hat`.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.p_hat - value).abs() <= k * self.ci_halfwidth
    }
}

/// Wilson score interval for `failures` out of `trials` at normal quantile `z`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// SplitMix64 finalizer, used to derive per-point seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of grid point `index` under `master_seed`.
pub fn point_seed(master_seed: u64, index: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(index))
}

/// Generator for batch `batch` of a point seeded with `seed`.
pub fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Runs `trials` Bernoulli trials (`true` = failure) in parallel batches
/// and returns the failure count.
pub fn count_trial_failures<F>(trials: u64, seed: u64, trial: F) -> Result<u64>
where
    F: Fn(&mut ChaCha8Rng) -> Result<bool> + Sync,
{
    let batches = trials.div_ceil(BATCH_SIZE);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = batch_rng(seed, b);
            let size = BATCH_SIZE.min(trials - b * BATCH_SIZE);
            let mut failures = 0u64;
            for _ in 0..size {
                failures += u64::from(trial(&mut rng)?);
            }
            Ok(failures)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

fn check_compatible(code: &SurfaceCode, decoder: &Decoder, channel: &ChannelModel) -> Result<()> {
    if decoder.kind() == DecoderKind::Mwpm && code.variant() == Variant::Xzzx && !channel.is_phase_flip() {
        return Err(Error::IncompatibleDecoder {
            decoder: "mwpm",
            reason: "XZZX codes are decoded with ML except on the phase-flip channel".into(),
        });
    }
    Ok(())
}

fn estimate(code: &SurfaceCode, decoder: DecoderKind, channel: &ChannelModel, trials: u64, failures: u64) -> SimEstimate {
    let (ci_lo, ci_hi) = wilson_interval(failures, trials, Z_95);
    SimEstimate {
        rho: channel.rho(),
        bias: channel.bias(),
        code: code.label(),
        decoder,
        trials,
        failures,
        p_hat: failures as f64 / trials as f64,
        ci_lo,
        ci_hi,
        ci_halfwidth: 0.5 * (ci_hi - ci_lo),
    }
}

/// Estimates the logical error rate of `decoder` on `code` under `channel`.
pub fn simulate(
    code: &SurfaceCode,
    decoder: &Decoder,
    channel: &ChannelModel,
    trials: u64,
    master_seed: u64,
) -> Result<SimEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    check_compatible(code, decoder, channel)?;
    let n = code.num_qubits();
    let failures = count_trial_failures(trials, master_seed, |rng| {
        let e = channel.sample_error(n, rng);
        Ok(judge(code, decoder, &e)? != LogicalClass::I)
    })?;
    Ok(estimate(code, decoder.kind(), channel, trials, failures))
}

/// One [`simulate`] per grid point at fixed bias, with seeds derived from
/// `master_seed` and the point index.
pub fn sweep(
    code: &SurfaceCode,
    kind: DecoderKind,
    rho_grid: &[f64],
    bias: Bias,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<SimEstimate>> {
    if rho_grid.is_empty() {
        return Err(Error::InvalidArgument("rho grid is empty".into()));
    }
    rho_grid
        .iter()
        .enumerate()
        .map(|(i, &rho)| {
            let channel = ChannelModel::from_bias(rho, bias)?;
            let decoder = Decoder::new(code, kind, Some(&channel))?;
            simulate(code, &decoder, &channel, trials, point_seed(master_seed, i as u64))
        })
        .collect()
}

/// Largest code for [`exact_logical_error_rate`] (`4^n` patterns).
pub const EXACT_MAX_QUBITS: usize = 14;

/// Exact logical error rate by summing the probability of every one of the
/// `4^n` error patterns the decoder fails on.
pub fn exact_logical_error_rate(code: &SurfaceCode, decoder: &Decoder, channel: &ChannelModel) -> Result<f64> {
    let n = code.num_qubits();
    if n > EXACT_MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "exact enumeration supports at most {EXACT_MAX_QUBITS} qubits, {} has {n}",
            code.label()
        )));
    }
    check_compatible(code, decoder, channel)?;
    let m = code.num_generators();
    // logical bits of the correction for every syndrome
    let correction_logical: Vec<u8> = (0..1u64 << m)
        .into_par_iter()
        .map(|bits| {
            let c = decoder.decode(&Syndrome::new(bits, m)?)?;
            let (z, x) = code.logical_bits(&c);
            Ok(u8::from(z) | (u8::from(x) << 1))
        })
        .collect::<Result<_>>()?;

    let (flips_x, flips_z) = code.flip_tables();
    let single = |q: usize, x: bool| {
        let op = crate::pauli::PauliOperator::from_bits_unchecked(n, u64::from(x) << q, u64::from(!x) << q);
        let (lz, lx) = code.logical_bits(&op);
        u8::from(lz) | (u8::from(lx) << 1)
    };
    let linear_table = |flips: &[u64], x: bool| {
        let mut syn = vec![0u64; 1 << n];
        let mut log = vec![0u8; 1 << n];
        for mask in 1usize..1 << n {
            let q = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            syn[mask] = syn[rest] ^ flips[q];
            log[mask] = log[rest] ^ single(q, x);
        }
        (syn, log)
    };
    let (syn_x, log_x) = linear_table(flips_x, true);
    let (syn_z, log_z) = linear_table(flips_z, false);
    let table = channel.pattern_table(n);

    let total = (0..1usize << n)
        .into_par_iter()
        .map(|x| {
            let mut acc = 0.0;
            for z in 0..1usize << n {
                let s = syn_x[x] ^ syn_z[z];
                if log_x[x] ^ log_z[z] ^ correction_logical[s as usize] != 0 {
                    acc += table.probability_bits(x as u64, z as u64);
                }
            }
            acc
        })
        .sum();
    Ok(total)
}
