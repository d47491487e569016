//! Degenerate maximum-likelihood decoding by explicit coset sums.
//!
//! For a syndrome `s` with reference error `E_s`, the four candidate
//! cosets are `E_s L S` for `L` in `{I, X_L, Y_L, Z_L}` and `S` ranging
//! over the whole stabilizer group. Each coset's probability is summed
//! exactly and the heaviest one wins, ties going to the earlier class in
//! `I, X, Y, Z` order.

use rayon::prelude::*;

use crate::channels::{ChannelModel, PatternTable};
use crate::codes::{LogicalClass, SurfaceCode, Syndrome};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Largest generator count for per-syndrome coset enumeration (`2^22` terms per class).
pub const MAX_ML_GENERATORS: usize = 22;

/// Largest generator count for which every syndrome's decision is precomputed.
pub const ML_TABLE_MAX_GENERATORS: usize = 12;

fn check_size(code: &SurfaceCode) -> Result<()> {
    if code.num_generators() > MAX_ML_GENERATORS {
        return Err(Error::IncompatibleDecoder {
            decoder: "ml",
            reason: format!(
                "{} has {} generators; coset enumeration supports at most {}",
                code.label(),
                code.num_generators(),
                MAX_ML_GENERATORS
            ),
        });
    }
    Ok(())
}

fn class_operator(code: &SurfaceCode, class: LogicalClass) -> PauliOperator {
    let lx = code.logical_x();
    let lz = code.logical_z();
    match class {
        LogicalClass::I => PauliOperator::from_bits_unchecked(code.num_qubits(), 0, 0),
        LogicalClass::X => lx,
        LogicalClass::Z => lz,
        LogicalClass::Y => lx.mul_unchecked(&lz),
    }
}

/// Coset probabilities `W(L)` for `L = I, X, Y, Z` relative to `reference`,
/// where `reference` must have syndrome `s`.
pub fn coset_weights(code: &SurfaceCode, table: &PatternTable, reference: &PauliOperator) -> Result<[f64; 4]> {
    check_size(code)?;
    let gens: Vec<(u64, u64)> = code.generators().iter().map(|g| (g.x_bits(), g.z_bits())).collect();
    let mut out = [0.0; 4];
    for (slot, class) in out.iter_mut().zip(LogicalClass::ALL) {
        let start = reference.mul_unchecked(&class_operator(code, class));
        *slot = stabilizer_sum(&gens, table, start.x_bits(), start.z_bits());
    }
    Ok(out)
}

/// Sum of pattern probabilities over `start * S` for all stabilizers `S`, in Gray-code order.
fn stabilizer_sum(gens: &[(u64, u64)], table: &PatternTable, mut x: u64, mut z: u64) -> f64 {
    let mut total = table.probability_bits(x, z);
    let count = 1u64 << gens.len();
    for i in 1..count {
        let (gx, gz) = gens[i.trailing_zeros() as usize];
        x ^= gx;
        z ^= gz;
        total += table.probability_bits(x, z);
    }
    total
}

fn best_class(weights: &[f64; 4]) -> LogicalClass {
    let mut best = 0;
    for k in 1..4 {
        if weights[k] > weights[best] {
            best = k;
        }
    }
    LogicalClass::ALL[best]
}

/// Most probable coset representative for syndrome `s`.
pub fn decode_ml(code: &SurfaceCode, channel: &ChannelModel, s: &Syndrome) -> Result<PauliOperator> {
    check_size(code)?;
    let reference = code.pure_error(s)?;
    let table = channel.pattern_table(code.num_qubits());
    let weights = coset_weights(code, &table, &reference)?;
    Ok(reference.mul_unchecked(&class_operator(code, best_class(&weights))))
}

/// ML decoder bound to one code and channel. Small codes get a full
/// decision table up front; larger ones enumerate cosets per call.
#[derive(Clone, Debug)]
pub struct MlDecoder {
    code: SurfaceCode,
    table: PatternTable,
    decisions: Option<Vec<LogicalClass>>,
}

impl MlDecoder {
    pub fn new(code: &SurfaceCode, channel: &ChannelModel) -> Result<Self> {
        check_size(code)?;
        let table = channel.pattern_table(code.num_qubits());
        let m = code.num_generators();
        let decisions = if m <= ML_TABLE_MAX_GENERATORS {
            let decisions = (0..1u64 << m)
                .into_par_iter()
                .map(|bits| {
                    let s = Syndrome::new(bits, m).expect("in range");
                    let reference = code.pure_error(&s).expect("valid syndrome");
                    best_class(&coset_weights(code, &table, &reference).expect("size checked"))
                })
                .collect();
            Some(decisions)
        } else {
            None
        };
        Ok(Self { code: code.clone(), table, decisions })
    }

    pub fn decode(&self, s: &Syndrome) -> Result<PauliOperator> {
        let reference = self.code.pure_error(s)?;
        let class = match &self.decisions {
            Some(d) => d[s.bits() as usize],
            None => best_class(&coset_weights(&self.code, &self.table, &reference)?),
        };
        Ok(reference.mul_unchecked(&class_operator(&self.code, class)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::Bias;
    use crate::codes::{build_surface_code, build_xzzx_code};

    #[test]
    fn trivial_syndrome_decodes_to_identity_class() {
        let code = build_surface_code(3, 3).unwrap();
        for rho in [0.01, 0.1, 0.3, 0.45] {
            let ch = ChannelModel::depolarizing(rho).unwrap();
            let c = decode_ml(&code, &ch, &Syndrome::zero(12)).unwrap();
            assert_eq!(code.logical_class(&c).unwrap(), LogicalClass::I);
        }
    }

    #[test]
    fn coset_sums_are_normalized() {
        // summing all four cosets over all syndromes covers every Pauli exactly once
        let code = build_surface_code(3, 3).unwrap();
        let ch = ChannelModel::from_bias(0.1, Bias::Finite(3.0)).unwrap();
        let table = ch.pattern_table(13);
        let total: f64 = (0..1u64 << 12)
            .into_par_iter()
            .map(|bits| {
                let s = Syndrome::new(bits, 12).unwrap();
                let r = code.pure_error(&s).unwrap();
                coset_weights(&code, &table, &r).unwrap().iter().sum::<f64>()
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-12, "{total}");
    }

    #[test]
    fn table_and_direct_decoding_agree() {
        let code = build_xzzx_code(3, 3).unwrap();
        let ch = ChannelModel::from_bias(0.15, Bias::Finite(10.0)).unwrap();
        let dec = MlDecoder::new(&code, &ch).unwrap();
        for bits in (0..1u64 << 12).step_by(37) {
            let s = Syndrome::new(bits, 12).unwrap();
            let a = dec.decode(&s).unwrap();
            let b = decode_ml(&code, &ch, &s).unwrap();
            assert_eq!(a, b);
            assert_eq!(code.syndrome(&a).unwrap(), s);
        }
    }

    #[test]
    fn larger_codes_are_rejected() {
        let code = build_surface_code(5, 5).unwrap();
        let ch = ChannelModel::depolarizing(0.1).unwrap();
        assert!(matches!(MlDecoder::new(&code, &ch), Err(Error::IncompatibleDecoder { .. })));
    }
}
