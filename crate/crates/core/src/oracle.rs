//! Exhaustive enumeration of codewords and admissible error patterns at
//! small horizons. Encoding and syndromes are computed by polynomial
//! multiplication only; nothing here touches the trellis builders.

use std::collections::BTreeSet;
use std::fmt;

use crate::block::BlockSequence;
use crate::error::{Error, Result};
use crate::gf2poly::{Poly, PolyMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest `N` accepted.
    pub max_horizon: usize,
    /// Largest number of free bits enumerated.
    pub max_info_bits: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_horizon: 6,
            max_info_bits: 16,
        }
    }
}

impl OracleConfig {
    fn check(&self, n_blocks: usize, free_bits: usize) -> Result<()> {
        if n_blocks > self.max_horizon {
            return Err(Error::CapExceeded {
                free_bits: n_blocks,
                cap: self.max_horizon,
            });
        }
        if free_bits > self.max_info_bits {
            return Err(Error::CapExceeded {
                free_bits,
                cap: self.max_info_bits,
            });
        }
        Ok(())
    }
}

fn to_blocks(columns: &[Poly], len: usize) -> BlockSequence {
    let mut out = BlockSequence::zeros(columns.len(), len);
    for (j, p) in columns.iter().enumerate() {
        for k in 0..len {
            if p.coeff(k as u32) {
                out.set_bit(k, j, true);
            }
        }
    }
    out
}

/// All `u G(D)` over `N` blocks, with input row `p` free for the first
/// `N - deg_p` time units and zero afterwards.
pub fn brute_codewords(g: &PolyMatrix, n_blocks: usize, cfg: &OracleConfig) -> Result<BTreeSet<BlockSequence>> {
    let free: Vec<usize> = (0..g.rows())
        .map(|p| {
            let deg = g.row_degree(p).unwrap_or(0) as usize;
            n_blocks.checked_sub(deg).ok_or(Error::HorizonTooShort {
                horizon: n_blocks,
                memory: g.memory(),
            })
        })
        .collect::<Result<_>>()?;
    let total: usize = free.iter().sum();
    cfg.check(n_blocks, total)?;
    let mut out = BTreeSet::new();
    for word in 0u64..1 << total {
        let mut shift = 0;
        let inputs: Vec<Poly> = free
            .iter()
            .map(|&f| {
                let p = Poly::from_bits(word >> shift & ((1u64 << f) - 1));
                shift += f;
                p
            })
            .collect();
        let y: Vec<Poly> = (0..g.cols())
            .map(|j| inputs.iter().enumerate().map(|(p, &u)| u * g.get(p, j)).sum())
            .collect();
        out.insert(to_blocks(&y, n_blocks));
    }
    Ok(out)
}

/// All error sequences `e` of `zeta.len()` blocks avoiding the masked bits
/// whose full syndrome `e H^T(D)` equals `zeta` followed by zeros.
///
/// Without masks, every block from index `N` on is forced to zero.
pub fn brute_errors(
    h: &PolyMatrix,
    zeta: &BlockSequence,
    n_blocks: usize,
    masks: Option<&[u64]>,
    cfg: &OracleConfig,
) -> Result<BTreeSet<BlockSequence>> {
    if zeta.width() != h.rows() {
        return Err(Error::Dimension(format!(
            "syndrome blocks have width {}, H has {} rows",
            zeta.width(),
            h.rows()
        )));
    }
    let len = zeta.len();
    let width = h.cols();
    let full = (1u64 << width) - 1;
    let masks: Vec<u64> = match masks {
        Some(m) if m.len() != len => {
            return Err(Error::Dimension(format!(
                "{} masks for {len} sections",
                m.len()
            )))
        }
        Some(m) => m.to_vec(),
        None => (0..len).map(|k| if k < n_blocks { 0 } else { full }).collect(),
    };
    let free: Vec<(usize, usize)> = (0..len)
        .flat_map(|k| (0..width).map(move |j| (k, j)))
        .filter(|&(k, j)| masks[k] >> j & 1 == 0)
        .collect();
    cfg.check(n_blocks, free.len())?;
    let target: Vec<Poly> = (0..h.rows())
        .map(|i| Poly::from_coeffs(&zeta.column_bits(i)))
        .collect();
    let mut out = BTreeSet::new();
    for word in 0u64..1 << free.len() {
        let mut cols = vec![Poly::ZERO; width];
        for (b, &(k, j)) in free.iter().enumerate() {
            if word >> b & 1 == 1 {
                cols[j] += Poly::monomial(k as u32);
            }
        }
        let ok = (0..h.rows()).all(|i| {
            let s: Poly = cols.iter().enumerate().map(|(j, &e)| e * h.get(i, j)).sum();
            s == target[i]
        });
        if ok {
            out.insert(to_blocks(&cols, len));
        }
    }
    Ok(out)
}

/// Result of [`assert_equal_path_sets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub left_size: usize,
    pub right_size: usize,
    pub only_left: BTreeSet<BlockSequence>,
    pub only_right: BTreeSet<BlockSequence>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} ({} vs {} paths)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.left_size,
            self.right_size
        )?;
        for p in &self.only_left {
            writeln!(f, "  only left:  {p}")?;
        }
        for p in &self.only_right {
            writeln!(f, "  only right: {p}")?;
        }
        Ok(())
    }
}

pub fn assert_equal_path_sets(
    a: &BTreeSet<BlockSequence>,
    b: &BTreeSet<BlockSequence>,
) -> EquivalenceReport {
    EquivalenceReport {
        left_size: a.len(),
        right_size: b.len(),
        only_left: a.difference(b).cloned().collect(),
        only_right: b.difference(a).cloned().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> PolyMatrix {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> BlockSequence {
        s.parse().unwrap()
    }

    #[test]
    fn repetition_code() {
        let words = brute_codewords(&m("1,1"), 2, &OracleConfig::default()).unwrap();
        let expected: BTreeSet<_> = ["00 00", "11 00", "00 11", "11 11"].iter().map(|s| seq(s)).collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn example_2_codewords() {
        let words = brute_codewords(&m("D+D^2,D^2,1+D"), 4, &OracleConfig::default()).unwrap();
        assert_eq!(words.len(), 4);
        assert!(words.contains(&BlockSequence::zeros(3, 4)));
        assert!(words.contains(&seq("000 001 101 110")));
    }

    #[test]
    fn reduced_error_patterns() {
        let h = m("1,0,1;D,1+D,0");
        let zeta = seq("00 10 01 10 01");
        let masks = [0b100, 0, 0, 0, 0b011];
        let e = brute_errors(&h, &zeta, 4, Some(&masks), &OracleConfig::default()).unwrap();
        let expected: BTreeSet<_> = [
            "000 001 010 011 000",
            "000 001 111 100 000",
            "000 100 101 011 000",
            "000 100 000 100 000",
        ]
        .iter()
        .map(|s| seq(s))
        .collect();
        assert_eq!(e, expected);
    }

    #[test]
    fn unreduced_error_patterns() {
        let h = m("1,0,D;D,1+D,0");
        let e = brute_errors(&h, &seq("00 10 01 10 01"), 4, None, &OracleConfig::default()).unwrap();
        assert_eq!(e.len(), 4);
        assert!(e.contains(&seq("001 000 011 010 000")));
        let zero = brute_errors(&h, &BlockSequence::zeros(2, 5), 4, None, &OracleConfig::default()).unwrap();
        assert!(zero.contains(&BlockSequence::zeros(3, 5)));
    }

    #[test]
    fn caps() {
        let cfg = OracleConfig {
            max_horizon: 6,
            max_info_bits: 4,
        };
        assert!(matches!(
            brute_codewords(&m("1,1;0,1"), 6, &cfg),
            Err(Error::CapExceeded { .. })
        ));
        assert!(brute_codewords(&m("1,1"), 7, &OracleConfig::default()).is_err());
    }

    #[test]
    fn set_comparison() {
        let x = BTreeSet::from([seq("01")]);
        assert!(assert_equal_path_sets(&x, &x).passed());
        let r = assert_equal_path_sets(&x, &BTreeSet::new());
        assert!(!r.passed());
        assert_eq!(r.only_left, x);
    }
}
