//! Decoders and the decode-and-judge harness.

pub mod matching;
pub mod ml;
pub mod mwpm;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::ChannelModel;
use crate::codes::{LogicalClass, SurfaceCode, Syndrome, Variant};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub use matching::{min_weight_perfect_matching, DefectGraph, MatchingGraph, Pairing};
pub use ml::{decode_ml, MlDecoder};
pub use mwpm::MwpmDecoder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    Mwpm,
    Ml,
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecoderKind::Mwpm => write!(f, "mwpm"),
            DecoderKind::Ml => write!(f, "ml"),
        }
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mwpm" => Ok(DecoderKind::Mwpm),
            "ml" => Ok(DecoderKind::Ml),
            other => Err(Error::InvalidArgument(format!("unknown decoder {other:?}"))),
        }
    }
}

/// A decoder prepared for one code (and, for ML, one channel).
#[derive(Clone, Debug)]
pub enum Decoder {
    Mwpm(MwpmDecoder),
    Ml(MlDecoder),
}

impl Decoder {
    /// MWPM needs no channel; on XZZX codes it is only offered for the
    /// pure phase-flip channel. ML needs the channel.
    pub fn new(code: &SurfaceCode, kind: DecoderKind, channel: Option<&ChannelModel>) -> Result<Self> {
        match kind {
            DecoderKind::Mwpm => {
                if code.variant() == Variant::Xzzx && !channel.is_some_and(|c| c.is_phase_flip()) {
                    return Err(Error::IncompatibleDecoder {
                        decoder: "mwpm",
                        reason: "XZZX codes are decoded with ML except on the phase-flip channel".into(),
                    });
                }
                Ok(Decoder::Mwpm(MwpmDecoder::new(code)))
            }
            DecoderKind::Ml => {
                let channel = channel.ok_or_else(|| Error::IncompatibleDecoder {
                    decoder: "ml",
                    reason: "a channel model is required".into(),
                })?;
                Ok(Decoder::Ml(MlDecoder::new(code, channel)?))
            }
        }
    }

    pub fn kind(&self) -> DecoderKind {
        match self {
            Decoder::Mwpm(_) => DecoderKind::Mwpm,
            Decoder::Ml(_) => DecoderKind::Ml,
        }
    }

    pub fn decode(&self, s: &Syndrome) -> Result<PauliOperator> {
        match self {
            Decoder::Mwpm(d) => d.decode(s),
            Decoder::Ml(d) => d.decode(s),
        }
    }
}

/// Result of decoding one error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecodeOutcome {
    pub error: String,
    pub syndrome: String,
    pub correction: String,
    pub residual_class: LogicalClass,
    pub success: bool,
}

/// Decodes `error`'s syndrome and returns the logical class of error times correction.
pub fn judge(code: &SurfaceCode, decoder: &Decoder, error: &PauliOperator) -> Result<LogicalClass> {
    let s = code.syndrome(error)?;
    let correction = decoder.decode(&s)?;
    let residual = error.mul_unchecked(&correction);
    debug_assert!(code.syndrome_unchecked(&residual).is_trivial());
    let (z, x) = code.logical_bits(&residual);
    Ok(LogicalClass::from_anticommutation(z, x))
}

/// Full decode-and-judge record for one error.
pub fn decode_and_judge(code: &SurfaceCode, decoder: &Decoder, error: &PauliOperator) -> Result<DecodeOutcome> {
    let s = code.syndrome(error)?;
    let correction = decoder.decode(&s)?;
    let residual = error.multiply(&correction)?;
    let class = code.logical_class(&residual)?;
    Ok(DecodeOutcome {
        error: error.to_string(),
        syndrome: s.to_string(),
        correction: correction.to_string(),
        residual_class: class,
        success: class == LogicalClass::I,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_surface_code, build_xzzx_code};

    fn op(n: usize, s: &str) -> PauliOperator {
        PauliOperator::parse(n, s).unwrap()
    }

    #[test]
    fn generators_always_succeed() {
        let code = build_surface_code(3, 3).unwrap();
        let ch = ChannelModel::depolarizing(0.1).unwrap();
        for kind in [DecoderKind::Mwpm, DecoderKind::Ml] {
            let dec = Decoder::new(&code, kind, Some(&ch)).unwrap();
            for g in code.generators() {
                let out = decode_and_judge(&code, &dec, g).unwrap();
                assert!(out.success);
                assert_eq!(out.correction, "I");
            }
        }
    }

    #[test]
    fn worked_example() {
        let code = build_surface_code(3, 3).unwrap();
        let dec = Decoder::new(&code, DecoderKind::Mwpm, None).unwrap();
        let out = decode_and_judge(&code, &dec, &op(13, "Z2 Z3")).unwrap();
        assert_eq!(out.syndrome, "100000000000");
        assert_eq!(out.correction, "Z1");
        assert_eq!(out.residual_class, LogicalClass::Z);
        assert!(!out.success);
        assert!(decode_and_judge(&code, &dec, &op(13, "Z2")).unwrap().success);
    }

    #[test]
    fn decoder_compatibility() {
        let xzzx = build_xzzx_code(3, 3).unwrap();
        let depol = ChannelModel::depolarizing(0.1).unwrap();
        let flip = ChannelModel::phase_flip(0.1).unwrap();
        assert!(Decoder::new(&xzzx, DecoderKind::Mwpm, Some(&depol)).is_err());
        assert!(Decoder::new(&xzzx, DecoderKind::Mwpm, None).is_err());
        assert!(Decoder::new(&xzzx, DecoderKind::Mwpm, Some(&flip)).is_ok());
        assert!(Decoder::new(&xzzx, DecoderKind::Ml, None).is_err());
        assert_eq!("ML".parse::<DecoderKind>().unwrap(), DecoderKind::Ml);
        assert!("bp".parse::<DecoderKind>().is_err());
    }
}
