//! Phaseless Pauli operators in the binary symplectic representation.
//!
//! An operator on `n <= 64` qubits is stored as two bit masks: bit `i` of
//! `x` is set where X or Y acts on qubit `i`, bit `i` of `z` where Z or Y
//! acts. Global phases are dropped everywhere; syndromes and logical
//! classes never depend on them.
//!
//! User-facing qubit labels are 1-based, so `X2 Y3` means X on the second
//! qubit and Y on the third. Internally everything is 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported qubit count.
pub const MAX_QUBITS: usize = 64;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[inline]
pub(crate) fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A phaseless `n`-qubit Pauli operator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliOperator {
    n: u8,
    x: u64,
    z: u64,
}

impl PauliOperator {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        Ok(Self { n: n as u8, x: 0, z: 0 })
    }

    /// Builds an operator from raw masks. Bits at or above `n` are rejected.
    pub fn from_bits(n: usize, x: u64, z: u64) -> Result<Self> {
        let id = Self::identity(n)?;
        let m = mask(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::InvalidArgument(format!(
                "bit masks extend beyond {n} qubits"
            )));
        }
        Ok(Self { x, z, ..id })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, x: u64, z: u64) -> Self {
        debug_assert!(n <= MAX_QUBITS && x & !mask(n) == 0 && z & !mask(n) == 0);
        Self { n: n as u8, x, z }
    }

    /// Builds an operator from `(qubit, letter)` terms with 1-based qubit indices.
    pub fn from_terms(n: usize, terms: &[(usize, Pauli)]) -> Result<Self> {
        let mut op = Self::identity(n)?;
        let mut seen = 0u64;
        for &(index, letter) in terms {
            if index == 0 || index > n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            let bit = 1u64 << (index - 1);
            if seen & bit != 0 {
                return Err(Error::DuplicateIndex(index));
            }
            seen |= bit;
            let (x, z) = letter.bits();
            if x {
                op.x |= bit;
            }
            if z {
                op.z |= bit;
            }
        }
        Ok(op)
    }

    /// Pure-X operator on the 0-based qubit set `support`.
    pub fn x_on(n: usize, support: u64) -> Result<Self> {
        Self::from_bits(n, support, 0)
    }

    /// Pure-Z operator on the 0-based qubit set `support`.
    pub fn z_on(n: usize, support: u64) -> Result<Self> {
        Self::from_bits(n, 0, support)
    }

    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    /// Qubits acted on non-trivially.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Letter on the 0-based qubit `q`.
    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    /// Counts of X, Y and Z letters.
    pub fn letter_counts(&self) -> (usize, usize, usize) {
        let y = self.x & self.z;
        (
            (self.x & !y).count_ones() as usize,
            y.count_ones() as usize,
            (self.z & !y).count_ones() as usize,
        )
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        Ok(())
    }

    /// Whether the two operators commute (symplectic product is zero).
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1 == 1
    }

    /// Product with phases discarded.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        Self { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z }
    }

    /// Conjugation by Hadamard on the 0-based qubit set `qubits` (X and Z swap there).
    pub fn hadamard_on(&self, qubits: u64) -> Self {
        let qubits = qubits & mask(self.n as usize);
        let swap = (self.x ^ self.z) & qubits;
        Self { n: self.n, x: self.x ^ swap, z: self.z ^ swap }
    }

    /// Parses the whitespace separated `<letter><index>` form, e.g. `X2 Y3`.
    /// The identity is written `I` (an empty string is accepted as well).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for token in text.split_whitespace() {
            let mut chars = token.chars();
            let letter = chars
                .next()
                .and_then(Pauli::from_char)
                .ok_or_else(|| Error::Parse(token.to_string()))?;
            let rest = chars.as_str();
            if rest.is_empty() {
                if letter == Pauli::I {
                    continue;
                }
                return Err(Error::Parse(token.to_string()));
            }
            let index: usize = rest.parse().map_err(|_| Error::Parse(token.to_string()))?;
            if letter != Pauli::I {
                terms.push((index, letter));
            } else if index == 0 || index > n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        Self::from_terms(n, &terms)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for q in 0..self.n as usize {
            let letter = self.letter(q);
            if letter == Pauli::I {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}{}", letter, q + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator[{}]({})", self.n, self)
    }
}
