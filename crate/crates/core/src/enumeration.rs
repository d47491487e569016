//! Exhaustive per-class failure fractions and the aggregated `1 - beta_j`.
//!
//! An error class fixes how many X, Z and Y letters a weight-`j` pattern
//! carries. Every placement of those letters on distinct qubits is decoded
//! and judged; `p_i` is the failing fraction. Classes of one weight are
//! combined by their multiplicities
//! `c_i = C(n, n_x) C(n - n_x, n_z) C(n - n_x - n_z, n_y)`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::BetaVector;
use crate::codes::{LogicalClass, SurfaceCode, Variant};
use crate::decoders::{Decoder, DecoderKind};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Default cap on decodes for a single exhaustive job.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Exact binomial coefficient; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Letter counts of a weight-`j` pattern class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ErrorClass {
    pub n_x: usize,
    pub n_z: usize,
    pub n_y: usize,
}

impl ErrorClass {
    pub fn new(n_x: usize, n_z: usize, n_y: usize) -> Self {
        Self { n_x, n_z, n_y }
    }

    /// The pure-Z class of weight `j`.
    pub fn pure_z(j: usize) -> Self {
        Self::new(0, j, 0)
    }

    pub fn weight(&self) -> usize {
        self.n_x + self.n_z + self.n_y
    }

    /// All `C(j + 2, 2)` classes of weight `j`, ordered XX.., XZ.., ..., YY..
    /// (X before Z before Y), which is the column order of the published table.
    pub fn all_of_weight(j: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity((j + 1) * (j + 2) / 2);
        for n_x in (0..=j).rev() {
            for n_z in (0..=j - n_x).rev() {
                out.push(Self::new(n_x, n_z, j - n_x - n_z));
            }
        }
        out
    }

    /// Number of distinct patterns of this class on `n` qubits.
    pub fn combinations(&self, n: usize) -> u128 {
        let n = n as u64;
        let (x, z, y) = (self.n_x as u64, self.n_z as u64, self.n_y as u64);
        if x + z + y > n {
            return 0;
        }
        binomial(n, x).unwrap() * binomial(n - x, z).unwrap() * binomial(n - x - z, y).unwrap()
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (letter, count) in [('X', self.n_x), ('Z', self.n_z), ('Y', self.n_y)] {
            for _ in 0..count {
                write!(f, "{letter}")?;
            }
        }
        Ok(())
    }
}

/// Exhaustive result for one class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassResult {
    pub class: String,
    pub n_x: usize,
    pub n_z: usize,
    pub n_y: usize,
    pub combinations: u64,
    pub failures: u64,
    pub fraction: f64,
}

/// One weight of the table: all classes plus the aggregates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaRow {
    pub weight: usize,
    pub classes: Vec<ClassResult>,
    /// `1 - beta_j`, class fractions weighted by multiplicity.
    pub one_minus_beta: f64,
    /// `1 - beta_j^(Z)`, the pure-Z class fraction.
    pub one_minus_beta_z: f64,
}

/// Exhaustive non-correctable fractions for one code and decoder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaTable {
    pub code: String,
    pub n: usize,
    pub d_x: usize,
    pub d_z: usize,
    pub variant: Variant,
    pub decoder: DecoderKind,
    pub rows: Vec<BetaRow>,
}

impl BetaTable {
    pub fn row(&self, weight: usize) -> Option<&BetaRow> {
        self.rows.iter().find(|r| r.weight == weight)
    }

    /// `beta_j` (or `beta_j^(Z)` when `pure_z`) for consecutive weights from
    /// `start` up to the first missing row.
    pub fn beta_vector(&self, start: usize, pure_z: bool) -> Result<BetaVector> {
        let mut values = Vec::new();
        while let Some(row) = self.row(start + values.len()) {
            values.push(1.0 - if pure_z { row.one_minus_beta_z } else { row.one_minus_beta });
        }
        BetaVector::new(start, values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad table JSON: {e}")))
    }
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Calls `f(x_mask, z_mask)` for every placement of the class's letters,
/// restricted to combinations whose lowest qubit is `first`.
fn for_each_placement(n: usize, class: ErrorClass, first: usize, f: &mut impl FnMut(u64, u64)) {
    let j = class.weight();
    let mut qubits = Vec::with_capacity(j);
    qubits.push(first);
    fn combos(n: usize, j: usize, qubits: &mut Vec<usize>, class: ErrorClass, f: &mut impl FnMut(u64, u64)) {
        if qubits.len() == j {
            assign(qubits, 0, class.n_x, class.n_z, class.n_y, 0, 0, f);
            return;
        }
        let start = qubits.last().map_or(0, |&q| q + 1);
        for q in start..n {
            qubits.push(q);
            combos(n, j, qubits, class, f);
            qubits.pop();
        }
    }
    #[allow(clippy::too_many_arguments)]
    fn assign(
        qubits: &[usize],
        pos: usize,
        x: usize,
        z: usize,
        y: usize,
        xm: u64,
        zm: u64,
        f: &mut impl FnMut(u64, u64),
    ) {
        if pos == qubits.len() {
            f(xm, zm);
            return;
        }
        let bit = 1u64 << qubits[pos];
        if x > 0 {
            assign(qubits, pos + 1, x - 1, z, y, xm | bit, zm, f);
        }
        if z > 0 {
            assign(qubits, pos + 1, x, z - 1, y, xm, zm | bit, f);
        }
        if y > 0 {
            assign(qubits, pos + 1, x, z, y - 1, xm | bit, zm | bit, f);
        }
    }
    if j == 0 {
        if first == 0 {
            f(0, 0);
        }
        return;
    }
    combos(n, j, &mut qubits, class, f);
}

/// Number of failing patterns in `class`, decoding each with `decoder`.
pub fn count_failures(code: &SurfaceCode, decoder: &Decoder, class: ErrorClass) -> Result<u64> {
    let n = code.num_qubits();
    let starts = if class.weight() == 0 { 1 } else { n };
    (0..starts)
        .into_par_iter()
        .map(|first| {
            let mut failures = 0u64;
            let mut err = None;
            for_each_placement(n, class, first, &mut |x, z| {
                if err.is_some() {
                    return;
                }
                let e = PauliOperator::from_bits_unchecked(n, x, z);
                match crate::decoders::judge(code, decoder, &e) {
                    Ok(LogicalClass::I) => {}
                    Ok(_) => failures += 1,
                    Err(e) => err = Some(e),
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(failures),
            }
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Fraction `p_i` of non-correctable patterns in `class`.
pub fn enumerate_class(code: &SurfaceCode, decoder: &Decoder, class: ErrorClass, budget: u128) -> Result<ClassResult> {
    let combinations = class.combinations(code.num_qubits());
    check_budget(combinations, budget)?;
    let failures = count_failures(code, decoder, class)?;
    Ok(ClassResult {
        class: class.to_string(),
        n_x: class.n_x,
        n_z: class.n_z,
        n_y: class.n_y,
        combinations: combinations as u64,
        failures,
        fraction: if combinations == 0 { 0.0 } else { failures as f64 / combinations as f64 },
    })
}

/// Multiplicity-weighted `1 - beta_j` over the given class results.
pub fn aggregate(classes: &[ClassResult]) -> f64 {
    let total: u64 = classes.iter().map(|c| c.combinations).sum();
    let failures: u64 = classes.iter().map(|c| c.failures).sum();
    if total == 0 {
        0.0
    } else {
        failures as f64 / total as f64
    }
}

/// All classes of weight `j` and the aggregated `1 - beta_j`.
pub fn beta_row(code: &SurfaceCode, decoder: &Decoder, j: usize, budget: u128) -> Result<BetaRow> {
    let classes = ErrorClass::all_of_weight(j);
    let required: u128 = classes.iter().map(|c| c.combinations(code.num_qubits())).sum();
    check_budget(required, budget)?;
    let results = classes
        .iter()
        .map(|&c| enumerate_class(code, decoder, c, budget))
        .collect::<Result<Vec<_>>>()?;
    let one_minus_beta_z = results
        .iter()
        .find(|r| r.n_z == j)
        .map(|r| r.fraction)
        .unwrap_or(0.0);
    Ok(BetaRow { weight: j, one_minus_beta: aggregate(&results), one_minus_beta_z, classes: results })
}

/// `1 - beta_j^(Z)`: the failing fraction of weight-`j` pure-Z patterns.
pub fn beta_z(code: &SurfaceCode, decoder: &Decoder, j: usize, budget: u128) -> Result<f64> {
    Ok(enumerate_class(code, decoder, ErrorClass::pure_z(j), budget)?.fraction)
}

/// Rows for every weight in `weights`.
pub fn beta_table(
    code: &SurfaceCode,
    decoder: &Decoder,
    weights: impl IntoIterator<Item = usize>,
    budget: u128,
) -> Result<BetaTable> {
    let rows = weights
        .into_iter()
        .map(|j| beta_row(code, decoder, j, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(BetaTable {
        code: code.label(),
        n: code.num_qubits(),
        d_x: code.d_x(),
        d_z: code.d_z(),
        variant: code.variant(),
        decoder: decoder.kind(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::build_surface_code;

    #[test]
    fn binomials() {
        assert_eq!(binomial(13, 2), Some(78));
        assert_eq!(binomial(41, 3), Some(10660));
        assert_eq!(binomial(41, 20), Some(269_128_937_220));
        assert_eq!(binomial(3, 5), Some(0));
    }

    #[test]
    fn class_listing() {
        let labels: Vec<String> = ErrorClass::all_of_weight(2).iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, ["XX", "XZ", "XY", "ZZ", "ZY", "YY"]);
        let labels: Vec<String> = ErrorClass::all_of_weight(3).iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, ["XXX", "XXZ", "XXY", "XZZ", "XZY", "XYY", "ZZZ", "ZZY", "ZYY", "YYY"]);
        for j in 0..8 {
            assert_eq!(ErrorClass::all_of_weight(j).len(), (j + 2) * (j + 1) / 2);
        }
    }

    #[test]
    fn multiplicities_sum_to_all_patterns() {
        for n in [13usize, 23, 41] {
            for j in 0..6 {
                let total: u128 = ErrorClass::all_of_weight(j).iter().map(|c| c.combinations(n)).sum();
                assert_eq!(total, binomial(n as u64, j as u64).unwrap() * 3u128.pow(j as u32));
            }
        }
        assert_eq!(ErrorClass::new(2, 1, 0).combinations(13), 78 * 11);
    }

    #[test]
    fn placements_visit_each_pattern_once() {
        let n = 7;
        for class in ErrorClass::all_of_weight(3) {
            let mut seen = std::collections::HashSet::new();
            for first in 0..n {
                for_each_placement(n, class, first, &mut |x, z| {
                    let e = PauliOperator::from_bits_unchecked(n, x, z);
                    assert_eq!(e.letter_counts(), (class.n_x, class.n_y, class.n_z));
                    assert!(seen.insert((x, z)));
                });
            }
            assert_eq!(seen.len() as u128, class.combinations(n));
        }
    }

    #[test]
    fn weight_one_is_always_corrected() {
        let code = build_surface_code(3, 3).unwrap();
        let dec = Decoder::new(&code, DecoderKind::Mwpm, None).unwrap();
        let row = beta_row(&code, &dec, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(row.one_minus_beta, 0.0);
        assert_eq!(beta_z(&code, &dec, 1, DEFAULT_BUDGET).unwrap(), 0.0);
    }

    #[test]
    fn budget_guard() {
        let code = build_surface_code(5, 5).unwrap();
        let dec = Decoder::new(&code, DecoderKind::Mwpm, None).unwrap();
        assert!(matches!(
            beta_row(&code, &dec, 4, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { required: 8_202_870, .. })
        ));
    }

    #[test]
    fn counts_are_reproducible() {
        let code = build_surface_code(3, 3).unwrap();
        let dec = Decoder::new(&code, DecoderKind::Mwpm, None).unwrap();
        let a = beta_row(&code, &dec, 3, DEFAULT_BUDGET).unwrap();
        let b = beta_row(&code, &dec, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn table_round_trips_through_json() {
        let code = build_surface_code(3, 5).unwrap();
        let dec = Decoder::new(&code, DecoderKind::Mwpm, None).unwrap();
        let table = beta_table(&code, &dec, 2..=3, DEFAULT_BUDGET).unwrap();
        let back = BetaTable::from_json(&table.to_json()).unwrap();
        assert_eq!(back, table);
        let betas = table.beta_vector(2, true).unwrap();
        assert_eq!(betas.values().len(), 2);
        assert_eq!(betas.beta(2), 1.0);
        assert_eq!(betas.beta(4), 0.0);
        assert!(BetaTable::from_json("{").is_err());
    }
}
