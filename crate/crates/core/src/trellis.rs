//! Terminated code-trellises (from `G(D)`) and error-trellises (from the
//! syndrome former `H^T(D)`).
//!
//! State conventions, also used in the DOT output:
//!
//! * code-trellis: the controller-form registers of `G`, row after row; row
//!   `p` occupies `nu_p` consecutive bits with its oldest input in the lowest
//!   bit.
//! * error-trellis: the observer-form registers of `H^T`, row after row of
//!   `H`; bit `d - 1` of row `i`'s slice holds the pending contribution to
//!   syndrome component `i` at `d` steps in the future.
//!
//! Sections are stored explicitly. Per-section masks mark label bits that are
//! forced to zero, which is how the boundaries of shifted (reduced) trellises
//! are expressed.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use crate::block::BlockSequence;
use crate::error::{Error, Result};
use crate::gf2poly::PolyMatrix;

/// Cap on the state-space dimension.
pub const MAX_STATE_BITS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub from: u64,
    pub to: u64,
    pub label: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrellisKind {
    Code,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trellis {
    kind: TrellisKind,
    width: usize,
    state_bits: usize,
    sections: Vec<Vec<Branch>>,
}

impl Trellis {
    pub fn kind(&self) -> TrellisKind {
        self.kind
    }

    /// Bits per branch label.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn horizon(&self) -> usize {
        self.sections.len()
    }

    pub fn state_bits(&self) -> usize {
        self.state_bits
    }

    pub fn sections(&self) -> &[Vec<Branch>] {
        &self.sections
    }

    /// False when no path connects the initial and final zero states.
    pub fn is_feasible(&self) -> bool {
        self.sections.iter().all(|s| !s.is_empty())
    }

    /// Number of distinct states at each time index `0..=horizon`.
    pub fn states_per_time(&self) -> Vec<usize> {
        let mut out = vec![1];
        for sec in &self.sections {
            let to: HashSet<u64> = sec.iter().map(|b| b.to).collect();
            out.push(to.len());
        }
        out
    }

    /// Number of initial-to-final paths (counting parallel branches).
    pub fn path_count(&self) -> u128 {
        let mut counts: HashMap<u64, u128> = HashMap::from([(0, 1)]);
        for sec in &self.sections {
            let mut next: HashMap<u64, u128> = HashMap::new();
            for b in sec {
                if let Some(&c) = counts.get(&b.from) {
                    *next.entry(b.to).or_default() += c;
                }
            }
            counts = next;
        }
        counts.get(&0).copied().unwrap_or(0)
    }

    /// Graphviz rendering: one node per `(time, state)`, one edge per branch.
    pub fn to_dot(&self) -> String {
        let name = match self.kind {
            TrellisKind::Code => "code_trellis",
            TrellisKind::Error => "error_trellis",
        };
        let state = |s: u64| -> String {
            (0..self.state_bits)
                .map(|b| if s >> b & 1 == 1 { '1' } else { '0' })
                .collect()
        };
        let fmt_label = |l: u64| -> String {
            (0..self.width)
                .map(|j| if l >> j & 1 == 1 { '1' } else { '0' })
                .collect()
        };
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        let mut nodes: BTreeSet<(usize, u64)> = BTreeSet::from([(0, 0)]);
        for (k, sec) in self.sections.iter().enumerate() {
            for b in sec {
                nodes.insert((k, b.from));
                nodes.insert((k + 1, b.to));
            }
        }
        for (t, s) in &nodes {
            writeln!(out, "  \"t{t}/s{}\";", state(*s)).unwrap();
        }
        for (k, sec) in self.sections.iter().enumerate() {
            for b in sec {
                writeln!(
                    out,
                    "  \"t{k}/s{}\" -> \"t{}/s{}\" [label=\"{}\"];",
                    state(b.from),
                    k + 1,
                    state(b.to),
                    fmt_label(b.label)
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Coefficient blocks of one matrix row: `taps[t]` has bit `j` set when
/// `D^t` appears in entry `j`.
fn row_taps(m: &PolyMatrix, i: usize) -> Vec<u64> {
    let deg = m.row_degree(i).unwrap_or(0);
    (0..=deg)
        .map(|t| {
            m.row(i)
                .iter()
                .enumerate()
                .filter(|(_, p)| p.coeff(t))
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect()
}

fn parity(x: u64) -> u64 {
    (x.count_ones() & 1) as u64
}

fn check_masks(masks: Option<&[u64]>, horizon: usize) -> Result<()> {
    match masks {
        Some(m) if m.len() != horizon => Err(Error::Dimension(format!(
            "{} section masks for a horizon of {horizon}",
            m.len()
        ))),
        _ => Ok(()),
    }
}

/// Forward expansion from the zero state followed by backward pruning to the
/// zero state at `horizon`.
fn build<F>(horizon: usize, inputs: u64, mut step: F) -> Vec<Vec<Branch>>
where
    F: FnMut(usize, u64, u64) -> Option<(u64, u64)>,
{
    let mut sections: Vec<Vec<Branch>> = Vec::with_capacity(horizon);
    let mut frontier: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 0..horizon {
        let mut sec = BTreeSet::new();
        let mut next = BTreeSet::new();
        for &s in &frontier {
            for input in 0..inputs {
                if let Some((to, label)) = step(k, s, input) {
                    sec.insert(Branch { from: s, to, label });
                    next.insert(to);
                }
            }
        }
        sections.push(sec.into_iter().collect());
        frontier = next;
    }
    let mut alive: HashSet<u64> = HashSet::from([0]);
    for sec in sections.iter_mut().rev() {
        sec.retain(|b| alive.contains(&b.to));
        alive = sec.iter().map(|b| b.from).collect();
    }
    if sections.iter().any(Vec::is_empty) {
        sections.iter_mut().for_each(Vec::clear);
    }
    sections
}

/// Code-trellis of `g` terminated in the zero state after `n_blocks` sections.
pub fn build_code_trellis(g: &PolyMatrix, n_blocks: usize) -> Result<Trellis> {
    if n_blocks < g.memory() {
        return Err(Error::HorizonTooShort {
            horizon: n_blocks,
            memory: g.memory(),
        });
    }
    build_code_trellis_masked(g, n_blocks, None)
}

/// Code-trellis over `horizon` sections whose labels avoid the masked bits.
pub fn build_code_trellis_masked(
    g: &PolyMatrix,
    horizon: usize,
    masks: Option<&[u64]>,
) -> Result<Trellis> {
    check_masks(masks, horizon)?;
    let state_bits = g.overall_constraint_length();
    if state_bits > MAX_STATE_BITS {
        return Err(Error::StateSpaceTooLarge(state_bits));
    }
    let k = g.rows();
    let taps: Vec<Vec<u64>> = (0..k).map(|p| row_taps(g, p)).collect();
    let degs: Vec<usize> = (0..k).map(|p| g.row_degree(p).unwrap_or(0) as usize).collect();
    let offsets: Vec<usize> = degs
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();

    let sections = build(horizon, 1 << k, |sec, state, u| {
        let mut label = 0u64;
        let mut next = 0u64;
        for p in 0..k {
            let nu = degs[p];
            let slice = (state >> offsets[p]) & ((1u64 << nu) - 1);
            let up = u >> p & 1;
            if up == 1 {
                label ^= taps[p][0];
            }
            // u_{k-t} lives at bit nu - t of the slice
            for t in 1..=nu {
                if slice >> (nu - t) & 1 == 1 {
                    label ^= taps[p][t];
                }
            }
            if nu > 0 {
                let new_slice = (slice >> 1) | (up << (nu - 1));
                next |= new_slice << offsets[p];
            }
        }
        let mask = masks.map_or(0, |m| m[sec]);
        (label & mask == 0).then_some((next, label))
    });
    Ok(Trellis {
        kind: TrellisKind::Code,
        width: g.cols(),
        state_bits,
        sections,
    })
}

/// Forced-zero masks for an unshifted error-trellis: the last `memory(H)`
/// sections carry the imaginary all-zero blocks.
pub fn default_error_masks(h: &PolyMatrix, horizon: usize) -> Vec<u64> {
    let full = (1u64 << h.cols()) - 1;
    let real = horizon.saturating_sub(h.memory());
    (0..horizon).map(|k| if k < real { 0 } else { full }).collect()
}

/// Error-trellis for `syndrome` (length `N + memory(H)`), with the padding
/// sections forced to zero.
pub fn build_error_trellis(h: &PolyMatrix, syndrome: &BlockSequence) -> Result<Trellis> {
    if syndrome.len() < h.memory() {
        return Err(Error::Dimension(format!(
            "syndrome of {} blocks is shorter than memory {}",
            syndrome.len(),
            h.memory()
        )));
    }
    let masks = default_error_masks(h, syndrome.len());
    build_error_trellis_masked(h, syndrome, Some(&masks))
}

/// Error-trellis over `syndrome.len()` sections: a branch with label `e`
/// leaves state `s` when the syndrome former in state `s` maps `e` to the
/// syndrome block of that section.
pub fn build_error_trellis_masked(
    h: &PolyMatrix,
    syndrome: &BlockSequence,
    masks: Option<&[u64]>,
) -> Result<Trellis> {
    if syndrome.width() != h.rows() {
        return Err(Error::Dimension(format!(
            "syndrome blocks have width {}, H has {} rows",
            syndrome.width(),
            h.rows()
        )));
    }
    let horizon = syndrome.len();
    check_masks(masks, horizon)?;
    let state_bits = h.overall_constraint_length();
    if state_bits > MAX_STATE_BITS {
        return Err(Error::StateSpaceTooLarge(state_bits));
    }
    let m = h.rows();
    let taps: Vec<Vec<u64>> = (0..m).map(|i| row_taps(h, i)).collect();
    let degs: Vec<usize> = (0..m).map(|i| h.row_degree(i).unwrap_or(0) as usize).collect();
    let offsets: Vec<usize> = degs
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();

    let sections = build(horizon, 1 << h.cols(), |sec, state, e| {
        if e & masks.map_or(0, |m| m[sec]) != 0 {
            return None;
        }
        let mut out = 0u64;
        let mut next = 0u64;
        for i in 0..m {
            let nu = degs[i];
            let slice = (state >> offsets[i]) & ((1u64 << nu) - 1);
            let pending = if nu > 0 { slice & 1 } else { 0 };
            out |= (parity(e & taps[i][0]) ^ pending) << i;
            for d in 1..=nu {
                let carry = if d < nu { slice >> d & 1 } else { 0 };
                let bit = carry ^ parity(e & taps[i][d]);
                next |= bit << (offsets[i] + d - 1);
            }
        }
        (out == syndrome.block(sec)).then_some((next, e))
    });
    Ok(Trellis {
        kind: TrellisKind::Error,
        width: h.cols(),
        state_bits,
        sections,
    })
}

/// Dimension of the state space of the obvious (or adjoint-obvious)
/// realization of `m`.
pub fn state_space_dimension(m: &PolyMatrix) -> usize {
    m.overall_constraint_length()
}

/// Label sequences of all zero-to-zero paths, in lexicographic order.
pub fn enumerate_paths(t: &Trellis) -> BTreeSet<BlockSequence> {
    let mut out = BTreeSet::new();
    if !t.is_feasible() {
        return out;
    }
    let by_from: Vec<HashMap<u64, Vec<&Branch>>> = t
        .sections
        .iter()
        .map(|sec| {
            let mut m: HashMap<u64, Vec<&Branch>> = HashMap::new();
            for b in sec {
                m.entry(b.from).or_default().push(b);
            }
            m
        })
        .collect();
    let mut labels = Vec::with_capacity(t.horizon());
    walk(&by_from, 0, 0, &mut labels, t.width, &mut out);
    out
}

fn walk(
    by_from: &[HashMap<u64, Vec<&Branch>>],
    k: usize,
    state: u64,
    labels: &mut Vec<u64>,
    width: usize,
    out: &mut BTreeSet<BlockSequence>,
) {
    if k == by_from.len() {
        if state == 0 {
            out.insert(BlockSequence::new(width, labels.clone()).expect("label width"));
        }
        return;
    }
    if let Some(branches) = by_from[k].get(&state) {
        for b in branches {
            labels.push(b.label);
            walk(by_from, k + 1, b.to, labels, width, out);
            labels.pop();
        }
    }
}

/// Minimum Hamming-weight path; ties go to the lexicographically smallest
/// label sequence.
pub fn min_weight_path(t: &Trellis) -> Result<(BlockSequence, u32)> {
    if !t.is_feasible() || t.horizon() == 0 {
        return Err(Error::NoAdmissiblePath);
    }
    // best[k][s]: least weight from state s at time k to the end
    let mut best: Vec<HashMap<u64, u32>> = vec![HashMap::new(); t.horizon() + 1];
    best[t.horizon()].insert(0, 0);
    for k in (0..t.horizon()).rev() {
        let (head, tail) = best.split_at_mut(k + 1);
        for b in &t.sections[k] {
            if let Some(&rest) = tail[0].get(&b.to) {
                let w = rest + b.label.count_ones();
                head[k]
                    .entry(b.from)
                    .and_modify(|x| *x = (*x).min(w))
                    .or_insert(w);
            }
        }
    }
    let total = *best[0].get(&0).ok_or(Error::NoAdmissiblePath)?;

    let bit_key = |l: u64| -> Vec<u64> { (0..t.width).map(|j| l >> j & 1).collect() };
    let mut current: BTreeSet<u64> = BTreeSet::from([0]);
    let mut labels = Vec::with_capacity(t.horizon());
    for k in 0..t.horizon() {
        let optimal: Vec<&Branch> = t.sections[k]
            .iter()
            .filter(|b| current.contains(&b.from))
            .filter(|b| {
                let here = best[k][&b.from];
                best[k + 1]
                    .get(&b.to)
                    .is_some_and(|&rest| rest + b.label.count_ones() == here)
            })
            .collect();
        let label = optimal
            .iter()
            .map(|b| b.label)
            .min_by_key(|&l| bit_key(l))
            .ok_or(Error::NoAdmissiblePath)?;
        // keep only start states on an optimal path with the same best weight
        let min_here = optimal
            .iter()
            .filter(|b| b.label == label)
            .map(|b| best[k][&b.from])
            .min()
            .unwrap();
        current = optimal
            .iter()
            .filter(|b| b.label == label && best[k][&b.from] == min_here)
            .map(|b| b.to)
            .collect();
        labels.push(label);
    }
    Ok((BlockSequence::new(t.width, labels)?, total))
}
