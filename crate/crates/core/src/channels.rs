//! Memoryless single-qubit Pauli channels parametrized by total error
//! probability `rho` and Z-bias `A = 2 p_Z / (rho - p_Z)`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Channel bias: a finite `A >= 1` or the phase-flip limit. Serialized as
/// a number, or the string `"inf"` for the limit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "BiasRepr", try_from = "BiasRepr")]
pub enum Bias {
    Finite(f64),
    Infinite,
}

impl Bias {
    pub fn depolarizing() -> Self {
        Bias::Finite(1.0)
    }

    pub fn value(self) -> f64 {
        match self {
            Bias::Finite(a) => a,
            Bias::Infinite => f64::INFINITY,
        }
    }

    pub fn from_value(a: f64) -> Self {
        if a.is_infinite() {
            Bias::Infinite
        } else {
            Bias::Finite(a)
        }
    }

    /// Parses a float or `inf`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_lowercase();
        if matches!(t.as_str(), "inf" | "infinity" | "∞") {
            return Ok(Bias::Infinite);
        }
        t.parse::<f64>()
            .map(Bias::from_value)
            .map_err(|_| Error::InvalidChannel(format!("cannot parse bias {text:?}")))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BiasRepr {
    Number(f64),
    Text(String),
}

impl From<Bias> for BiasRepr {
    fn from(b: Bias) -> Self {
        match b {
            Bias::Finite(a) => BiasRepr::Number(a),
            Bias::Infinite => BiasRepr::Text("inf".into()),
        }
    }
}

impl TryFrom<BiasRepr> for Bias {
    type Error = Error;

    fn try_from(r: BiasRepr) -> Result<Self> {
        match r {
            BiasRepr::Number(a) => Ok(Bias::from_value(a)),
            BiasRepr::Text(t) => Bias::parse(&t),
        }
    }
}

impl fmt::Display for Bias {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bias::Finite(a) => write!(f, "{a}"),
            Bias::Infinite => write!(f, "inf"),
        }
    }
}

/// i.i.d. Pauli channel with per-qubit probabilities `p_X`, `p_Y`, `p_Z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    p_x: f64,
    p_y: f64,
    p_z: f64,
}

impl ChannelModel {
    /// Explicit probabilities. X-biased channels (`p_Z < p_X + p_Y` with
    /// `rho > 0`, i.e. `A < 1`) are accepted here but not by [`ChannelModel::from_bias`].
    pub fn from_probabilities(p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        for (name, p) in [("p_X", p_x), ("p_Y", p_y), ("p_Z", p_z)] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::InvalidChannel(format!("{name} = {p} outside [0, 1]")));
            }
        }
        let rho = p_x + p_y + p_z;
        if rho > 1.0 + 1e-12 {
            return Err(Error::InvalidChannel(format!("total error probability {rho} exceeds 1")));
        }
        Ok(Self { p_x, p_y, p_z })
    }

    /// `p_Z = A rho / (A + 2)`, `p_X = p_Y = rho / (A + 2)`; `A = inf` gives the phase-flip channel.
    pub fn from_bias(rho: f64, bias: Bias) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) || rho.is_nan() {
            return Err(Error::InvalidChannel(format!("rho = {rho} outside [0, 1]")));
        }
        match bias {
            Bias::Infinite => Self::from_probabilities(0.0, 0.0, rho),
            Bias::Finite(a) if a.is_nan() || a < 1.0 => {
                Err(Error::InvalidChannel(format!("bias A = {a} must be at least 1")))
            }
            Bias::Finite(a) if a.is_infinite() => Self::from_probabilities(0.0, 0.0, rho),
            Bias::Finite(a) => {
                let generic = rho / (a + 2.0);
                Self::from_probabilities(generic, generic, a * generic)
            }
        }
    }

    pub fn depolarizing(rho: f64) -> Result<Self> {
        Self::from_bias(rho, Bias::Finite(1.0))
    }

    pub fn phase_flip(rho: f64) -> Result<Self> {
        Self::from_bias(rho, Bias::Infinite)
    }

    pub fn p_x(&self) -> f64 {
        self.p_x
    }

    pub fn p_y(&self) -> f64 {
        self.p_y
    }

    pub fn p_z(&self) -> f64 {
        self.p_z
    }

    pub fn rho(&self) -> f64 {
        self.p_x + self.p_y + self.p_z
    }

    /// `2 p_Z / (rho - p_Z)`, infinite when only Z errors occur.
    pub fn bias(&self) -> Bias {
        let generic = self.p_x + self.p_y;
        if generic == 0.0 {
            Bias::Infinite
        } else {
            Bias::Finite(2.0 * self.p_z / generic)
        }
    }

    pub fn is_phase_flip(&self) -> bool {
        self.p_x == 0.0 && self.p_y == 0.0
    }

    /// Draws one error: each qubit independently gets X, Y, Z with
    /// probabilities `p_X`, `p_Y`, `p_Z` and identity otherwise.
    pub fn sample_error<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> PauliOperator {
        let (cx, cy, cz) = (self.p_x, self.p_x + self.p_y, self.rho());
        let mut x = 0u64;
        let mut z = 0u64;
        for q in 0..n {
            let u: f64 = rng.random();
            if u < cz {
                let bit = 1u64 << q;
                if u < cx {
                    x |= bit;
                } else if u < cy {
                    x |= bit;
                    z |= bit;
                } else {
                    z |= bit;
                }
            }
        }
        PauliOperator::from_bits_unchecked(n, x, z)
    }

    /// Probability of the exact pattern `error`.
    pub fn pattern_probability(&self, error: &PauliOperator) -> f64 {
        let (nx, ny, nz) = error.letter_counts();
        let w = nx + ny + nz;
        let n = error.num_qubits();
        (1.0 - self.rho()).powi((n - w) as i32)
            * self.p_x.powi(nx as i32)
            * self.p_y.powi(ny as i32)
            * self.p_z.powi(nz as i32)
    }

    /// Power tables for repeated pattern probabilities on `n` qubits.
    pub fn pattern_table(&self, n: usize) -> PatternTable {
        let powers = |p: f64| (0..=n).map(|k| p.powi(k as i32)).collect::<Vec<_>>();
        PatternTable {
            n,
            idle: powers(1.0 - self.rho()),
            x: powers(self.p_x),
            y: powers(self.p_y),
            z: powers(self.p_z),
        }
    }
}

/// Precomputed powers for fast pattern probabilities.
#[derive(Clone, Debug)]
pub struct PatternTable {
    n: usize,
    idle: Vec<f64>,
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
}

impl PatternTable {
    #[inline]
    pub fn probability_bits(&self, x: u64, z: u64) -> f64 {
        let y = x & z;
        let nx = (x & !y).count_ones() as usize;
        let ny = y.count_ones() as usize;
        let nz = (z & !y).count_ones() as usize;
        self.idle[self.n - nx - ny - nz] * self.x[nx] * self.y[ny] * self.z[nz]
    }

    #[inline]
    pub fn probability(&self, e: &PauliOperator) -> f64 {
        self.probability_bits(e.x_bits(), e.z_bits())
    }
}
