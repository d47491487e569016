//! Planar surface codes and their XZZX variants.
//!
//! The lattice is drawn on a `(2 d_X - 1) x (2 d_Z - 1)` grid. Data qubits sit
//! where `row + col` is even, ancillas where it is odd. Ancillas on even rows
//! are X-type sites, ancillas on odd rows are Z-type plaquettes. Qubits and
//! generators are both numbered row-major, which for `d_X = d_Z = 3`
//! reproduces the usual labelling of the 13-qubit code:
//!
//! ```text
//!  D1  G1  D2  G2  D3
//!  G3  D4  G4  D5  G5
//!  D6  G6  D7  G7  D8
//!  G8  D9  G9  D10 G10
//!  D11 G11 D12 G12 D13
//! ```
//!
//! The left and right edges are rough (3-body Z plaquettes) and terminate
//! Z chains, so the logical Z runs horizontally with length `d_Z`. The top
//! and bottom edges are smooth and terminate X chains of length `d_X`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, MAX_QUBITS};

/// Code family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Css,
    Xzzx,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Css => write!(f, "css"),
            Variant::Xzzx => write!(f, "xzzx"),
        }
    }
}

/// Check type in the CSS frame (before any Hadamard rotation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckType {
    /// Vertex operator, X-type; detects Z errors.
    Site,
    /// Face operator, Z-type; detects X errors.
    Plaquette,
}

/// Lattice position `(row, col)` on the drawing grid.
pub type Coord = (usize, usize);

/// Syndrome bit vector; bit `i` is set iff the error anticommutes with generator `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syndrome {
    bits: u64,
    len: u8,
}

impl Syndrome {
    pub fn new(bits: u64, len: usize) -> Result<Self> {
        if len > 64 || (len < 64 && bits >> len != 0) {
            return Err(Error::SyndromeLength { got: 64 - bits.leading_zeros() as usize, expected: len });
        }
        Ok(Self { bits, len: len as u8 })
    }

    pub fn zero(len: usize) -> Self {
        Self { bits: 0, len: len as u8 }
    }

    /// Parses a `0`/`1` string, generator 1 first.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut bits = 0u64;
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                _ => return Err(Error::InvalidArgument(format!("bad syndrome string {text:?}"))),
            }
        }
        Self::new(bits, text.len())
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// Indices of flipped generators, ascending.
    pub fn defects(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len as usize).filter(move |&i| self.get(i))
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len as usize {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Syndrome({self})")
    }
}

/// Coset of a zero-syndrome operator relative to the stabilizer group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LogicalClass {
    I,
    X,
    Y,
    Z,
}

impl LogicalClass {
    pub const ALL: [LogicalClass; 4] = [LogicalClass::I, LogicalClass::X, LogicalClass::Y, LogicalClass::Z];

    /// From the anticommutation bits with `Z_L` and `X_L`.
    pub fn from_anticommutation(with_logical_z: bool, with_logical_x: bool) -> Self {
        match (with_logical_z, with_logical_x) {
            (false, false) => LogicalClass::I,
            (true, false) => LogicalClass::X,
            (false, true) => LogicalClass::Z,
            (true, true) => LogicalClass::Y,
        }
    }

    /// Inverse of [`LogicalClass::from_anticommutation`].
    pub fn anticommutation(self) -> (bool, bool) {
        match self {
            LogicalClass::I => (false, false),
            LogicalClass::X => (true, false),
            LogicalClass::Z => (false, true),
            LogicalClass::Y => (true, true),
        }
    }
}

impl fmt::Display for LogicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A planar surface code encoding one logical qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceCode {
    d_x: usize,
    d_z: usize,
    variant: Variant,
    rows: usize,
    cols: usize,
    generators: Vec<PauliOperator>,
    check_types: Vec<CheckType>,
    check_coords: Vec<Coord>,
    logical_x: PauliOperator,
    logical_z: PauliOperator,
    coords: Vec<Coord>,
    rotated: u64,
    qubit_index: Vec<Option<usize>>,
    // per-qubit syndrome masks for X and Z letters
    flips_x: Vec<u64>,
    flips_z: Vec<u64>,
}

fn check_distance(d: usize) -> Result<()> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidDistance(d));
    }
    Ok(())
}

/// Qubit count of the planar lattice with the given distances.
pub fn qubit_count(d_x: usize, d_z: usize) -> usize {
    d_x * d_z + (d_x - 1) * (d_z - 1)
}

/// Builds the CSS planar surface code with X-distance `d_x` (vertical) and
/// Z-distance `d_z` (horizontal).
pub fn build_surface_code(d_x: usize, d_z: usize) -> Result<SurfaceCode> {
    SurfaceCode::new(d_x, d_z, Variant::Css)
}

/// Builds the XZZX variant: the CSS code with Hadamard applied to every
/// qubit on an even lattice row.
pub fn build_xzzx_code(d_x: usize, d_z: usize) -> Result<SurfaceCode> {
    SurfaceCode::new(d_x, d_z, Variant::Xzzx)
}

impl SurfaceCode {
    pub fn new(d_x: usize, d_z: usize, variant: Variant) -> Result<Self> {
        check_distance(d_x)?;
        check_distance(d_z)?;
        let n = qubit_count(d_x, d_z);
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        let rows = 2 * d_x - 1;
        let cols = 2 * d_z - 1;

        let mut qubit_index = vec![None; rows * cols];
        let mut coords = Vec::with_capacity(n);
        for r in 0..rows {
            for c in 0..cols {
                if (r + c) % 2 == 0 {
                    qubit_index[r * cols + c] = Some(coords.len());
                    coords.push((r, c));
                }
            }
        }
        debug_assert_eq!(coords.len(), n);

        let neighbours = |r: usize, c: usize| -> u64 {
            let mut support = 0u64;
            let candidates = [
                (r.wrapping_sub(1), c),
                (r, c.wrapping_sub(1)),
                (r, c + 1),
                (r + 1, c),
            ];
            for (rr, cc) in candidates {
                if rr < rows && cc < cols {
                    if let Some(q) = qubit_index[rr * cols + cc] {
                        support |= 1 << q;
                    }
                }
            }
            support
        };

        let mut generators = Vec::with_capacity(n - 1);
        let mut check_types = Vec::with_capacity(n - 1);
        let mut check_coords = Vec::with_capacity(n - 1);
        for r in 0..rows {
            for c in 0..cols {
                if (r + c) % 2 == 1 {
                    let support = neighbours(r, c);
                    if r % 2 == 0 {
                        generators.push(PauliOperator::x_on(n, support)?);
                        check_types.push(CheckType::Site);
                    } else {
                        generators.push(PauliOperator::z_on(n, support)?);
                        check_types.push(CheckType::Plaquette);
                    }
                    check_coords.push((r, c));
                }
            }
        }

        let top_row: u64 = (0..cols).step_by(2).map(|c| 1u64 << qubit_index[c].unwrap()).sum();
        let left_col: u64 = (0..rows)
            .step_by(2)
            .map(|r| 1u64 << qubit_index[r * cols].unwrap())
            .sum();
        let logical_z = PauliOperator::z_on(n, top_row)?;
        let logical_x = PauliOperator::x_on(n, left_col)?;

        let css = Self {
            d_x,
            d_z,
            variant: Variant::Css,
            rows,
            cols,
            generators,
            check_types,
            check_coords,
            logical_x,
            logical_z,
            coords,
            rotated: 0,
            qubit_index,
            flips_x: Vec::new(),
            flips_z: Vec::new(),
        };
        let mut code = match variant {
            Variant::Css => css,
            Variant::Xzzx => {
                let rotation = css.xzzx_rotation();
                css.conjugated(rotation, Variant::Xzzx)
            }
        };
        code.rebuild_flip_tables();
        Ok(code)
    }

    fn rebuild_flip_tables(&mut self) {
        let n = self.num_qubits();
        self.flips_x = vec![0; n];
        self.flips_z = vec![0; n];
        for (i, g) in self.generators.iter().enumerate() {
            for q in 0..n {
                // X on q anticommutes with g iff g has a Z component there
                if g.z_bits() >> q & 1 == 1 {
                    self.flips_x[q] |= 1 << i;
                }
                if g.x_bits() >> q & 1 == 1 {
                    self.flips_z[q] |= 1 << i;
                }
            }
        }
    }

    /// Qubits that receive a Hadamard in the XZZX variant: those on even rows,
    /// so every 4-body check reads X Z Z X in row-major qubit order.
    pub fn xzzx_rotation(&self) -> u64 {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &(r, _))| r % 2 == 0)
            .map(|(q, _)| 1u64 << q)
            .sum()
    }

    fn conjugated(&self, qubits: u64, variant: Variant) -> Self {
        let mut code = self.clone();
        code.generators = self.generators.iter().map(|g| g.hadamard_on(qubits)).collect();
        code.logical_x = self.logical_x.hadamard_on(qubits);
        code.logical_z = self.logical_z.hadamard_on(qubits);
        code.rotated = self.rotated ^ qubits;
        code.variant = variant;
        code.rebuild_flip_tables();
        code
    }

    /// Toggles between the CSS and XZZX forms by Hadamard-rotating the XZZX qubit subset.
    pub fn hadamard_rotated(&self) -> Self {
        let variant = match self.variant {
            Variant::Css => Variant::Xzzx,
            Variant::Xzzx => Variant::Css,
        };
        self.conjugated(self.xzzx_rotation(), variant)
    }

    pub fn num_qubits(&self) -> usize {
        self.coords.len()
    }

    pub fn num_logical(&self) -> usize {
        1
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn d_x(&self) -> usize {
        self.d_x
    }

    pub fn d_z(&self) -> usize {
        self.d_z
    }

    /// Overall distance `min(d_X, d_Z)`.
    pub fn distance(&self) -> usize {
        self.d_x.min(self.d_z)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn check_types(&self) -> &[CheckType] {
        &self.check_types
    }

    pub fn check_coords(&self) -> &[Coord] {
        &self.check_coords
    }

    pub fn logical_x(&self) -> PauliOperator {
        self.logical_x
    }

    pub fn logical_z(&self) -> PauliOperator {
        self.logical_z
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    /// Lattice grid size `(rows, cols)`.
    pub fn grid(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Qubits carrying a Hadamard relative to the CSS code.
    pub fn rotated_qubits(&self) -> u64 {
        self.rotated
    }

    /// 0-based qubit at a lattice position, if any.
    pub fn qubit_at(&self, (r, c): Coord) -> Option<usize> {
        if r < self.rows && c < self.cols {
            self.qubit_index[r * self.cols + c]
        } else {
            None
        }
    }

    /// Syndrome masks of X and Z on each qubit.
    pub fn flip_tables(&self) -> (&[u64], &[u64]) {
        (&self.flips_x, &self.flips_z)
    }

    /// Short name like `[[23,1,3/5]]`, prefixed with `XZZX ` for the rotated variant.
    pub fn label(&self) -> String {
        let d = if self.d_x == self.d_z {
            format!("{}", self.d_x)
        } else {
            format!("{}/{}", self.d_x, self.d_z)
        };
        let base = format!("[[{},1,{}]]", self.num_qubits(), d);
        match self.variant {
            Variant::Css => base,
            Variant::Xzzx => format!("XZZX {base}"),
        }
    }

    fn check_dims(&self, op: &PauliOperator) -> Result<()> {
        if op.num_qubits() != self.num_qubits() {
            return Err(Error::DimensionMismatch { left: self.num_qubits(), right: op.num_qubits() });
        }
        Ok(())
    }

    /// Syndrome of `error`.
    pub fn syndrome(&self, error: &PauliOperator) -> Result<Syndrome> {
        self.check_dims(error)?;
        Ok(self.syndrome_unchecked(error))
    }

    #[inline]
    pub(crate) fn syndrome_unchecked(&self, error: &PauliOperator) -> Syndrome {
        let mut bits = 0u64;
        for (i, g) in self.generators.iter().enumerate() {
            if error.anticommutes_unchecked(g) {
                bits |= 1 << i;
            }
        }
        Syndrome { bits, len: self.generators.len() as u8 }
    }

    /// Anticommutation of `op` with `(Z_L, X_L)`, regardless of its syndrome.
    #[inline]
    pub(crate) fn logical_bits(&self, op: &PauliOperator) -> (bool, bool) {
        (op.anticommutes_unchecked(&self.logical_z), op.anticommutes_unchecked(&self.logical_x))
    }

    /// Logical class of a zero-syndrome operator.
    pub fn logical_class(&self, residual: &PauliOperator) -> Result<LogicalClass> {
        if !self.syndrome(residual)?.is_trivial() {
            return Err(Error::NonzeroSyndrome);
        }
        let (z, x) = self.logical_bits(residual);
        Ok(LogicalClass::from_anticommutation(z, x))
    }

    /// Operator flipping exactly the generators in `s`: every site defect is
    /// joined to the left boundary by a Z chain and every plaquette defect to
    /// the top boundary by an X chain (both expressed in this code's frame).
    pub fn pure_error(&self, s: &Syndrome) -> Result<PauliOperator> {
        if s.len() != self.num_generators() {
            return Err(Error::SyndromeLength { got: s.len(), expected: self.num_generators() });
        }
        let mut x = 0u64;
        let mut z = 0u64;
        for i in s.defects() {
            let (r, c) = self.check_coords[i];
            match self.check_types[i] {
                CheckType::Site => {
                    let mut cc = c;
                    loop {
                        cc -= 1;
                        z ^= 1 << self.qubit_at((r, cc)).unwrap();
                        if cc == 0 {
                            break;
                        }
                        cc -= 1;
                    }
                }
                CheckType::Plaquette => {
                    let mut rr = r;
                    loop {
                        rr -= 1;
                        x ^= 1 << self.qubit_at((rr, c)).unwrap();
                        if rr == 0 {
                            break;
                        }
                        rr -= 1;
                    }
                }
            }
        }
        let css = PauliOperator::from_bits_unchecked(self.num_qubits(), x, z);
        Ok(css.hadamard_on(self.rotated))
    }

    /// JSON-friendly summary with operators in text form.
    pub fn describe(&self) -> CodeDescription {
        CodeDescription {
            label: self.label(),
            n: self.num_qubits(),
            k: 1,
            d_x: self.d_x,
            d_z: self.d_z,
            variant: self.variant,
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            logical_x: self.logical_x.to_string(),
            logical_z: self.logical_z.to_string(),
            coords: self.coords.clone(),
        }
    }
}

/// Serializable view of a [`SurfaceCode`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeDescription {
    pub label: String,
    pub n: usize,
    pub k: usize,
    pub d_x: usize,
    pub d_z: usize,
    pub variant: Variant,
    pub generators: Vec<String>,
    pub logical_x: String,
    pub logical_z: String,
    pub coords: Vec<Coord>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;

    fn op(n: usize, s: &str) -> PauliOperator {
        PauliOperator::parse(n, s).unwrap()
    }

    const PAPER_GENERATORS: [&str; 12] = [
        "X1 X2 X4",
        "X2 X3 X5",
        "Z1 Z4 Z6",
        "Z2 Z4 Z5 Z7",
        "Z3 Z5 Z8",
        "X4 X6 X7 X9",
        "X5 X7 X8 X10",
        "Z6 Z9 Z11",
        "Z7 Z9 Z10 Z12",
        "Z8 Z10 Z13",
        "X9 X11 X12",
        "X10 X12 X13",
    ];

    #[test]
    fn thirteen_qubit_generators_are_literal() {
        let code = build_surface_code(3, 3).unwrap();
        assert_eq!(code.num_qubits(), 13);
        assert_eq!(code.num_generators(), 12);
        for (g, expected) in code.generators().iter().zip(PAPER_GENERATORS) {
            assert_eq!(g, &op(13, expected));
        }
        assert_eq!(code.logical_z(), op(13, "Z1 Z2 Z3"));
        assert_eq!(code.logical_x(), op(13, "X1 X6 X11"));
        assert_eq!(code.label(), "[[13,1,3]]");
    }

    #[test]
    fn qubit_counts() {
        for (dx, dz, n) in [(3, 3, 13), (3, 5, 23), (5, 5, 41), (3, 7, 33), (5, 3, 23)] {
            let code = build_surface_code(dx, dz).unwrap();
            assert_eq!(code.num_qubits(), n);
            assert_eq!(code.num_generators(), n - 1);
            assert_eq!(code.logical_z().weight(), dz);
            assert_eq!(code.logical_x().weight(), dx);
        }
        assert_eq!(build_surface_code(3, 5).unwrap().label(), "[[23,1,3/5]]");
    }

    #[test]
    fn rejects_bad_distances() {
        assert_eq!(build_surface_code(2, 3), Err(Error::InvalidDistance(2)));
        assert_eq!(build_surface_code(3, 1), Err(Error::InvalidDistance(1)));
        assert_eq!(build_xzzx_code(4, 5), Err(Error::InvalidDistance(4)));
        assert!(matches!(build_surface_code(7, 7), Err(Error::TooManyQubits { .. })));
    }

    fn assert_valid(code: &SurfaceCode) {
        let gens = code.generators();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                assert!(a.commutes(b).unwrap(), "{a} vs {b}");
            }
            assert!(a.commutes(&code.logical_x()).unwrap());
            assert!(a.commutes(&code.logical_z()).unwrap());
            assert!(matches!(a.weight(), 3 | 4));
        }
        assert!(!code.logical_x().commutes(&code.logical_z()).unwrap());
    }

    #[test]
    fn stabilizer_invariants_hold_for_all_small_codes() {
        for dx in [3, 5, 7] {
            for dz in [3, 5, 7] {
                if qubit_count(dx, dz) > MAX_QUBITS {
                    continue;
                }
                let css = build_surface_code(dx, dz).unwrap();
                assert_eq!(css.num_qubits(), dx * dz + (dx - 1) * (dz - 1));
                assert_valid(&css);
                for g in css.generators() {
                    assert!(g.x_bits() == 0 || g.z_bits() == 0);
                }
                let xzzx = build_xzzx_code(dx, dz).unwrap();
                assert_valid(&xzzx);
                for g in xzzx.generators().iter().filter(|g| g.weight() == 4) {
                    let (x, y, z) = g.letter_counts();
                    assert_eq!((x, y, z), (2, 0, 2), "{g}");
                }
            }
        }
    }

    #[test]
    fn xzzx_plaquettes_read_xzzx_in_lattice_order() {
        let code = build_xzzx_code(3, 3).unwrap();
        // G4 in CSS form is Z2 Z4 Z5 Z7 (up, left, right, down)
        assert_eq!(code.generators()[3], op(13, "X2 Z4 Z5 X7"));
        assert_eq!(code.generators()[5], op(13, "X4 Z6 Z7 X9"));
        assert_eq!(code.hadamard_rotated().hadamard_rotated(), code);
        assert_eq!(code.hadamard_rotated(), build_surface_code(3, 3).unwrap());
    }

    #[test]
    fn worked_example_syndrome_and_class() {
        let code = build_surface_code(3, 3).unwrap();
        let s = code.syndrome(&op(13, "Z2 Z3")).unwrap();
        assert_eq!(s.defects().collect::<Vec<_>>(), vec![0]);
        assert!(code.syndrome(&op(13, "I")).unwrap().is_trivial());
        for g in code.generators() {
            assert!(code.syndrome(g).unwrap().is_trivial());
            assert_eq!(code.logical_class(g).unwrap(), LogicalClass::I);
        }
        assert_eq!(code.logical_class(&op(13, "Z1 Z2 Z3")).unwrap(), LogicalClass::Z);
        assert_eq!(code.logical_class(&code.logical_x()).unwrap(), LogicalClass::X);
        let y = code.logical_x().multiply(&code.logical_z()).unwrap();
        assert_eq!(code.logical_class(&y).unwrap(), LogicalClass::Y);
        assert_eq!(code.logical_class(&op(13, "Z2")), Err(Error::NonzeroSyndrome));
        assert!(code.syndrome(&op(12, "Z2")).is_err());
    }

    #[test]
    fn generator_products_are_class_i() {
        let code = build_surface_code(3, 5).unwrap();
        let gens = code.generators();
        let mut acc = PauliOperator::identity(code.num_qubits()).unwrap();
        for (i, g) in gens.iter().enumerate() {
            if i % 3 != 1 {
                acc = acc.multiply(g).unwrap();
            }
        }
        assert_eq!(code.logical_class(&acc).unwrap(), LogicalClass::I);
    }

    #[test]
    fn syndrome_is_invariant_under_stabilizers() {
        let code = build_xzzx_code(3, 5).unwrap();
        let e = op(23, "X1 Y7 Z12 X20");
        let s = code.syndrome(&e).unwrap();
        for g in code.generators() {
            assert_eq!(code.syndrome(&e.multiply(g).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn flip_tables_match_direct_syndromes() {
        let code = build_xzzx_code(5, 5).unwrap();
        let (fx, fz) = code.flip_tables();
        for q in 0..code.num_qubits() {
            let x = PauliOperator::from_terms(41, &[(q + 1, Pauli::X)]).unwrap();
            let z = PauliOperator::from_terms(41, &[(q + 1, Pauli::Z)]).unwrap();
            assert_eq!(code.syndrome(&x).unwrap().bits(), fx[q]);
            assert_eq!(code.syndrome(&z).unwrap().bits(), fz[q]);
        }
    }

    #[test]
    fn pure_errors_reproduce_their_syndrome() {
        for code in [build_surface_code(3, 5).unwrap(), build_xzzx_code(5, 3).unwrap()] {
            let m = code.num_generators();
            for bits in [0u64, 1, 0b1011, (1 << m) - 1, 0x5555 & ((1 << m) - 1)] {
                let s = Syndrome::new(bits, m).unwrap();
                let e = code.pure_error(&s).unwrap();
                assert_eq!(code.syndrome(&e).unwrap(), s);
            }
        }
    }

    /// All Paulis of weight <= w on n qubits.
    fn low_weight(n: usize, w: usize, f: &mut impl FnMut(PauliOperator)) {
        fn rec(n: usize, start: usize, left: usize, cur: PauliOperator, f: &mut impl FnMut(PauliOperator)) {
            f(cur);
            if left == 0 {
                return;
            }
            for q in start..n {
                for (x, z) in [(1u64, 0u64), (1, 1), (0, 1)] {
                    let next = PauliOperator::from_bits(n, cur.x_bits() | x << q, cur.z_bits() | z << q).unwrap();
                    rec(n, q + 1, left - 1, next, f);
                }
            }
        }
        rec(n, 0, w, PauliOperator::identity(n).unwrap(), f);
    }

    #[test]
    fn distance_three_by_brute_force() {
        for code in [build_surface_code(3, 3).unwrap(), build_xzzx_code(3, 3).unwrap()] {
            let mut count = 0;
            low_weight(13, 2, &mut |p| {
                count += 1;
                if code.syndrome(&p).unwrap().is_trivial() {
                    assert_eq!(code.logical_class(&p).unwrap(), LogicalClass::I, "{p}");
                }
            });
            assert_eq!(count, 1 + 3 * 13 + 9 * 78);
        }
    }

    #[test]
    fn asymmetric_distances_by_brute_force() {
        let code = build_surface_code(3, 5).unwrap();
        let n = code.num_qubits();
        for support in 1u64..(1 << n) {
            let w = support.count_ones();
            if w < 5 {
                let z = PauliOperator::z_on(n, support).unwrap();
                if code.syndrome(&z).unwrap().is_trivial() {
                    assert_ne!(code.logical_class(&z).unwrap(), LogicalClass::Z);
                }
            }
            if w < 3 {
                let x = PauliOperator::x_on(n, support).unwrap();
                if code.syndrome(&x).unwrap().is_trivial() {
                    assert_ne!(code.logical_class(&x).unwrap(), LogicalClass::X);
                }
            }
        }
    }

    #[test]
    fn syndrome_string_round_trip() {
        let s = Syndrome::parse("100000000001").unwrap();
        assert_eq!(s.len(), 12);
        assert_eq!(s.defects().collect::<Vec<_>>(), vec![0, 11]);
        assert_eq!(s.to_string(), "100000000001");
        assert!(Syndrome::parse("10a").is_err());
    }
}
