//! Minimum-weight perfect matching decoder with geometric edge weights.
//!
//! Site defects (flagging Z errors) and plaquette defects (flagging X
//! errors) are matched independently; a Y error simply shows up in both.
//! Distances are lattice path lengths: `|dr|/2 + |dc|/2` between two
//! checks of the same type, and the number of qubits to the nearest
//! boundary that can absorb the chain (left/right for sites, top/bottom
//! for plaquettes).

use crate::codes::{CheckType, Coord, SurfaceCode, Syndrome};
use crate::decoders::matching::{DefectGraph, Pairing};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Precomputed MWPM decoder for one code.
#[derive(Clone, Debug)]
pub struct MwpmDecoder {
    n: usize,
    rows: usize,
    cols: usize,
    rotated: u64,
    check_types: Vec<CheckType>,
    check_coords: Vec<Coord>,
    qubit_index: Vec<Option<usize>>,
}

impl MwpmDecoder {
    pub fn new(code: &SurfaceCode) -> Self {
        let (rows, cols) = code.grid();
        let mut qubit_index = vec![None; rows * cols];
        for (q, &(r, c)) in code.coords().iter().enumerate() {
            qubit_index[r * cols + c] = Some(q);
        }
        Self {
            n: code.num_qubits(),
            rows,
            cols,
            rotated: code.rotated_qubits(),
            check_types: code.check_types().to_vec(),
            check_coords: code.check_coords().to_vec(),
            qubit_index,
        }
    }

    fn qubit(&self, r: usize, c: usize) -> u64 {
        1u64 << self.qubit_index[r * self.cols + c].expect("data qubit")
    }

    fn distance(a: Coord, b: Coord) -> u32 {
        ((a.0.abs_diff(b.0) + a.1.abs_diff(b.1)) / 2) as u32
    }

    /// Distance to the nearest absorbing boundary and whether it is the
    /// low side (left for sites, top for plaquettes).
    fn boundary(&self, kind: CheckType, (r, c): Coord) -> (u32, bool) {
        let (pos, extent) = match kind {
            CheckType::Site => (c, self.cols),
            CheckType::Plaquette => (r, self.rows),
        };
        let low = pos.div_ceil(2);
        let high = (extent - pos) / 2;
        if low <= high {
            (low as u32, true)
        } else {
            (high as u32, false)
        }
    }

    /// Qubits on the canonical shortest path between two checks of the
    /// same type: along the row of `a` first, then down the column of `b`.
    fn path(&self, a: Coord, b: Coord) -> u64 {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let mut support = 0u64;
        let r = a.0;
        let (lo, hi) = if a.1 <= b.1 { (a.1, b.1) } else { (b.1, a.1) };
        let mut c = lo;
        while c < hi {
            support ^= self.qubit(r, c + 1);
            c += 2;
        }
        let mut rr = a.0;
        while rr < b.0 {
            support ^= self.qubit(rr + 1, b.1);
            rr += 2;
        }
        support
    }

    fn boundary_path(&self, kind: CheckType, (r, c): Coord) -> u64 {
        let (_, low) = self.boundary(kind, (r, c));
        let mut support = 0u64;
        match (kind, low) {
            (CheckType::Site, true) => (0..c).rev().step_by(2).for_each(|cc| support ^= self.qubit(r, cc)),
            (CheckType::Site, false) => (c + 1..self.cols).step_by(2).for_each(|cc| support ^= self.qubit(r, cc)),
            (CheckType::Plaquette, true) => (0..r).rev().step_by(2).for_each(|rr| support ^= self.qubit(rr, c)),
            (CheckType::Plaquette, false) => (r + 1..self.rows).step_by(2).for_each(|rr| support ^= self.qubit(rr, c)),
        }
        support
    }

    /// Defect graph of one check type for the syndrome, with the defects' generator indices.
    pub fn defect_graph(&self, s: &Syndrome, kind: CheckType) -> (DefectGraph, Vec<usize>) {
        let defects: Vec<usize> = s.defects().filter(|&i| self.check_types[i] == kind).collect();
        let coords: Vec<Coord> = defects.iter().map(|&i| self.check_coords[i]).collect();
        let graph = DefectGraph::new(
            defects.len(),
            |i, j| Self::distance(coords[i], coords[j]),
            |i| self.boundary(kind, coords[i]).0,
        );
        (graph, defects)
    }

    fn correct(&self, s: &Syndrome, kind: CheckType) -> Result<u64> {
        let (graph, defects) = self.defect_graph(s, kind);
        let mut support = 0u64;
        for p in graph.solve()? {
            support ^= match p {
                Pairing::Pair(i, j) => {
                    self.path(self.check_coords[defects[i]], self.check_coords[defects[j]])
                }
                Pairing::Boundary(i) => self.boundary_path(kind, self.check_coords[defects[i]]),
            };
        }
        Ok(support)
    }

    /// Correction whose syndrome equals `s`.
    pub fn decode(&self, s: &Syndrome) -> Result<PauliOperator> {
        if s.len() != self.check_types.len() {
            return Err(Error::SyndromeLength { got: s.len(), expected: self.check_types.len() });
        }
        let z = self.correct(s, CheckType::Site)?;
        let x = self.correct(s, CheckType::Plaquette)?;
        Ok(PauliOperator::from_bits_unchecked(self.n, x, z).hadamard_on(self.rotated))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_surface_code, build_xzzx_code, LogicalClass};

    fn op(n: usize, s: &str) -> PauliOperator {
        PauliOperator::parse(n, s).unwrap()
    }

    #[test]
    fn zero_syndrome_gives_identity() {
        let code = build_surface_code(3, 3).unwrap();
        let dec = MwpmDecoder::new(&code);
        assert!(dec.decode(&Syndrome::zero(12)).unwrap().is_identity());
        assert!(dec.decode(&Syndrome::zero(11)).is_err());
    }

    #[test]
    fn worked_example_fails_with_logical_z() {
        let code = build_surface_code(3, 3).unwrap();
        let dec = MwpmDecoder::new(&code);
        let e = op(13, "Z2 Z3");
        let s = code.syndrome(&e).unwrap();
        let c = dec.decode(&s).unwrap();
        assert_eq!(c, op(13, "Z1"));
        let residual = e.multiply(&c).unwrap();
        assert_eq!(code.logical_class(&residual).unwrap(), LogicalClass::Z);
    }

    #[test]
    fn corrections_reproduce_syndromes() {
        for code in [
            build_surface_code(3, 3).unwrap(),
            build_surface_code(3, 7).unwrap(),
            build_surface_code(5, 5).unwrap(),
            build_xzzx_code(3, 5).unwrap(),
        ] {
            let dec = MwpmDecoder::new(&code);
            let m = code.num_generators();
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..500 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let s = Syndrome::new(state & ((1u64 << m) - 1), m).unwrap();
                let c = dec.decode(&s).unwrap();
                assert_eq!(code.syndrome(&c).unwrap(), s);
            }
        }
    }

    #[test]
    fn single_qubit_errors_are_corrected() {
        for code in [
            build_surface_code(3, 3).unwrap(),
            build_surface_code(3, 5).unwrap(),
            build_surface_code(3, 7).unwrap(),
            build_surface_code(5, 5).unwrap(),
        ] {
            let dec = MwpmDecoder::new(&code);
            let n = code.num_qubits();
            for q in 0..n {
                for (x, z) in [(1u64, 0u64), (1, 1), (0, 1)] {
                    let e = PauliOperator::from_bits(n, x << q, z << q).unwrap();
                    let c = dec.decode(&code.syndrome(&e).unwrap()).unwrap();
                    let class = code.logical_class(&e.multiply(&c).unwrap()).unwrap();
                    assert_eq!(class, LogicalClass::I, "{} on {e}", code.label());
                }
            }
        }
    }
}
