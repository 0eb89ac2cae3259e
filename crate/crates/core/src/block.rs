//! Time-indexed sequences of fixed-width bit blocks (`y`, `e`, `z`, `zeta`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widest supported block.
pub const MAX_WIDTH: usize = 32;

/// A sequence of `width`-bit blocks. Component `j` (1-based in the text form,
/// leftmost character) of a block is stored in bit `j - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockSequence {
    width: usize,
    blocks: Vec<u64>,
}

impl BlockSequence {
    pub fn new(width: usize, blocks: Vec<u64>) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::Dimension(format!("block width {width} out of range")));
        }
        let limit = 1u64 << width;
        if let Some(b) = blocks.iter().find(|&&b| b >= limit) {
            return Err(Error::Dimension(format!("block {b:#b} wider than {width} bits")));
        }
        Ok(BlockSequence { width, blocks })
    }

    pub fn zeros(width: usize, len: usize) -> Self {
        assert!(width > 0 && width <= MAX_WIDTH);
        BlockSequence {
            width,
            blocks: vec![0; len],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Block at 0-based time index `k`.
    pub fn block(&self, k: usize) -> u64 {
        self.blocks[k]
    }

    pub fn bit(&self, k: usize, j: usize) -> bool {
        self.blocks[k] >> j & 1 == 1
    }

    pub fn set_bit(&mut self, k: usize, j: usize, v: bool) {
        if v {
            self.blocks[k] |= 1 << j;
        } else {
            self.blocks[k] &= !(1 << j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Total Hamming weight.
    pub fn weight(&self) -> u32 {
        self.blocks.iter().map(|b| b.count_ones()).sum()
    }

    /// Extends with all-zero blocks up to `len` blocks.
    pub fn padded(&self, len: usize) -> BlockSequence {
        let mut out = self.clone();
        if out.blocks.len() < len {
            out.blocks.resize(len, 0);
        }
        out
    }

    pub fn truncated(&self, len: usize) -> BlockSequence {
        BlockSequence {
            width: self.width,
            blocks: self.blocks[..len.min(self.blocks.len())].to_vec(),
        }
    }

    /// Blockwise XOR.
    pub fn xor(&self, other: &BlockSequence) -> Result<BlockSequence> {
        if self.width != other.width || self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{} sequences",
                self.len(),
                self.width,
                other.len(),
                other.width
            )));
        }
        Ok(BlockSequence {
            width: self.width,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Bits of component `j` over time, as a coefficient list.
    pub fn column_bits(&self, j: usize) -> Vec<u8> {
        self.blocks.iter().map(|b| (b >> j & 1) as u8).collect()
    }

    /// Text form of one block, component 1 first.
    pub fn format_block(&self, b: u64) -> String {
        (0..self.width)
            .map(|j| if b >> j & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl Ord for BlockSequence {
    /// Lexicographic on the concatenated bit string.
    fn cmp(&self, other: &Self) -> Ordering {
        let bits = |s: &BlockSequence| {
            s.blocks
                .iter()
                .flat_map(move |&b| (0..s.width).map(move |j| b >> j & 1))
                .collect::<Vec<_>>()
        };
        bits(self)
            .cmp(&bits(other))
            .then(self.width.cmp(&other.width))
    }
}

impl PartialOrd for BlockSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|&b| self.format_block(b)).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for BlockSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockSequence({self})")
    }
}

impl FromStr for BlockSequence {
    type Err = Error;
    /// Whitespace-separated blocks of `0`/`1` characters, all the same width.
    fn from_str(s: &str) -> Result<BlockSequence> {
        let mut width = None;
        let mut blocks = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("");
            for tok in content.split_whitespace() {
                let column = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
                let err = |message: String| Error::Parse {
                    line: lineno + 1,
                    column,
                    message,
                };
                let w = *width.get_or_insert(tok.len());
                if tok.len() != w {
                    return Err(err(format!("block '{tok}' has width {}, expected {w}", tok.len())));
                }
                if w > MAX_WIDTH {
                    return Err(err(format!("block width {w} exceeds {MAX_WIDTH}")));
                }
                let mut b = 0u64;
                for (j, c) in tok.chars().enumerate() {
                    match c {
                        '0' => {}
                        '1' => b |= 1 << j,
                        _ => return Err(err(format!("invalid bit '{c}'"))),
                    }
                }
                blocks.push(b);
            }
        }
        let width = width.ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "empty block sequence".into(),
        })?;
        BlockSequence::new(width, blocks)
    }
}
