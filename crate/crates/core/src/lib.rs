//! Planar surface codes (CSS and XZZX) under biased Pauli noise: lattice
//! construction, exact MWPM and maximum-likelihood decoding, exhaustive
//! failure-fraction tables, closed-form logical error rates and thresholds,
//! and reproducible Monte Carlo estimation.

pub mod analysis;
pub mod channels;
pub mod codes;
pub mod decoders;
pub mod enumeration;
pub mod error;
pub mod montecarlo;
pub mod pauli;

pub use analysis::{BetaVector, CodeParams};
pub use channels::{Bias, ChannelModel, PatternTable};
pub use codes::{build_surface_code, build_xzzx_code, CheckType, LogicalClass, SurfaceCode, Syndrome, Variant};
pub use decoders::{decode_and_judge, DecodeOutcome, Decoder, DecoderKind, MlDecoder, MwpmDecoder};
pub use enumeration::{BetaRow, BetaTable, ClassResult, ErrorClass};
pub use error::{Error, Result};
pub use montecarlo::SimEstimate;
pub use pauli::{Pauli, PauliOperator};
