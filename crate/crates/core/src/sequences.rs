//! Syndromes, shifted received/code sequences, boundary masks and the
//! end-to-end check that the reduced code-trellis and reduced error-trellis
//! describe the same shifted paths.
//!
//! Time frame. Column `j` of `H` scaled by `D^a_j` moves the error
//! subsequence as `e'_k = e_{k + a_j}`; a column of `G` scaled by `D^c_j`
//! moves the code subsequence as `y'_k = y_{k - c_j}`. Both are realized in
//! one window of `T` blocks as per-column delays `d_j = max(a) - a_j >= 0`
//! (cyclic rotation by `d_j`, where the wrapped positions are the all-zero
//! blocks outside the terminated code). Under C_SR the code-side delays
//! normalized the same way are identical, so `y' = z' + e'` holds blockwise.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::block::BlockSequence;
use crate::error::{Error, Result};
use crate::gf2poly::{GhPair, PolyMatrix};
use crate::transform::{simultaneous_reduce, ReductionReport, ShiftPlan};
use crate::trellis::{
    build_code_trellis, build_code_trellis_masked, build_error_trellis,
    build_error_trellis_masked, enumerate_paths, Trellis,
};

/// `zeta_k = z_k H^T(D)`, computed by direct causal convolution over the
/// length of `z` (no flush beyond it).
pub fn syndrome(z: &BlockSequence, h: &PolyMatrix) -> Result<BlockSequence> {
    if z.width() != h.cols() {
        return Err(Error::Dimension(format!(
            "received blocks have width {}, H has {} columns",
            z.width(),
            h.cols()
        )));
    }
    let mut out = BlockSequence::zeros(h.rows(), z.len());
    for k in 0..z.len() {
        for i in 0..h.rows() {
            let mut bit = false;
            for (j, p) in h.row(i).iter().enumerate() {
                let Some(deg) = p.degree() else { continue };
                for t in 0..=deg.min(k as u32) {
                    if p.coeff(t) && z.bit(k - t as usize, j) {
                        bit = !bit;
                    }
                }
            }
            out.set_bit(k, i, bit);
        }
    }
    Ok(out)
}

/// Rotates column `j` of `seq` by `shifts[j]` positions towards later time
/// (negative values move towards earlier time), modulo `seq.len()`.
fn rotate_columns(seq: &BlockSequence, shifts: &[i64]) -> Result<BlockSequence> {
    if shifts.len() != seq.width() {
        return Err(Error::Dimension(format!(
            "plan has {} columns, blocks have width {}",
            shifts.len(),
            seq.width()
        )));
    }
    let len = seq.len() as i64;
    let mut out = BlockSequence::zeros(seq.width(), seq.len());
    if len == 0 {
        return Ok(out);
    }
    for (j, &s) in shifts.iter().enumerate() {
        for k in 0..len {
            let src = (k - s).rem_euclid(len) as usize;
            out.set_bit(k as usize, j, seq.bit(src, j));
        }
    }
    Ok(out)
}

fn check_window(seq: &BlockSequence, n_blocks: usize, delays: &[u32]) -> Result<()> {
    let need = n_blocks + delays.iter().copied().max().unwrap_or(0) as usize;
    if seq.len() < need {
        return Err(Error::Dimension(format!(
            "sequence of {} blocks cannot hold N = {n_blocks} blocks shifted by up to {}",
            seq.len(),
            need - n_blocks
        )));
    }
    Ok(())
}

/// Shifts the columns of a received (or error) sequence according to the
/// `H`-side exponents of `plan`.
pub fn shift_received(z: &BlockSequence, plan: &ShiftPlan, n_blocks: usize) -> Result<BlockSequence> {
    let d = plan.error_delays();
    check_window(z, n_blocks, &d)?;
    rotate_columns(z, &d.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

/// Inverse of [`shift_received`].
pub fn unshift_received(z: &BlockSequence, plan: &ShiftPlan) -> Result<BlockSequence> {
    let d = plan.error_delays();
    rotate_columns(z, &d.iter().map(|&x| -(x as i64)).collect::<Vec<_>>())
}

/// Shifts the columns of a code sequence according to the `G`-side exponents
/// of `plan`, expressed in the same time frame as [`shift_received`].
pub fn shift_code(y: &BlockSequence, plan: &ShiftPlan, n_blocks: usize) -> Result<BlockSequence> {
    let d = plan.code_delays();
    check_window(y, n_blocks, &d)?;
    rotate_columns(y, &d.iter().map(|&x| x as i64).collect::<Vec<_>>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaskSide {
    Code,
    Error,
}

/// Forced-zero label bits of a shifted trellis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMasks {
    /// Time index `t` of the first section (the branch from `t - 1` to `t`).
    pub first_section: i64,
    /// Bit `j` set: component `j + 1` of that section's label must be 0.
    pub masks: Vec<u64>,
}

impl BoundaryMasks {
    /// Masks over `horizon` sections; sections past the window are fully
    /// forced to zero.
    pub fn extended(&self, width: usize, horizon: usize) -> Vec<u64> {
        let full = (1u64 << width) - 1;
        (0..horizon)
            .map(|k| self.masks.get(k).copied().unwrap_or(full))
            .collect()
    }
}

/// Positions of a shifted window of `N + max d` sections that alias the
/// all-zero blocks before `t = 1` or after `t = N`.
///
/// Error side masks are indexed from section 1; code side masks carry the
/// same positions in the code-trellis time frame, which is offset by the
/// plan's constant.
pub fn boundary_masks(plan: &ShiftPlan, n_blocks: usize, side: MaskSide) -> Result<BoundaryMasks> {
    let csr = plan.csr_constant()?;
    let d = plan.error_delays();
    let window = n_blocks + d.iter().copied().max().unwrap_or(0) as usize;
    let mut masks = vec![0u64; window];
    for (j, &dj) in d.iter().enumerate() {
        let dj = dj as usize;
        for (k, m) in masks.iter_mut().enumerate() {
            if k < dj || k >= n_blocks + dj {
                *m |= 1 << j;
            }
        }
    }
    let first_section = match side {
        MaskSide::Error => 1,
        MaskSide::Code => {
            let top = plan
                .columns()
                .iter()
                .map(|c| c.error_shift())
                .max()
                .unwrap_or(0);
            1 - (csr + top)
        }
    };
    Ok(BoundaryMasks {
        first_section,
        masks,
    })
}

/// Number of sections needed to hold the complete syndrome of any shifted
/// error sequence under the (row-reduced) parity-check matrix `h`.
pub fn shifted_horizon(h: &PolyMatrix, plan: &ShiftPlan, n_blocks: usize) -> usize {
    plan.error_delays()
        .iter()
        .enumerate()
        .map(|(j, &d)| n_blocks + d as usize + h.column_degree(j).unwrap_or(0) as usize)
        .max()
        .unwrap_or(n_blocks)
}

/// Reduced pair together with the horizon and forced-zero masks of its
/// shifted trellises.
#[derive(Clone, Debug)]
pub struct ShiftedFrame {
    pub reduction: ReductionReport,
    pub horizon: usize,
    pub error_masks: BoundaryMasks,
    pub code_masks: BoundaryMasks,
    /// Error-side masks over all `horizon` sections.
    pub masks: Vec<u64>,
}

impl ShiftedFrame {
    pub fn new(pair: &GhPair, plan: &ShiftPlan, n_blocks: usize) -> Result<Self> {
        let reduction = simultaneous_reduce(pair, plan)?;
        let horizon = shifted_horizon(reduction.reduced_pair.h(), plan, n_blocks);
        let error_masks = boundary_masks(plan, n_blocks, MaskSide::Error)?;
        let code_masks = boundary_masks(plan, n_blocks, MaskSide::Code)?;
        let masks = error_masks.extended(pair.n(), horizon);
        Ok(ShiftedFrame {
            reduction,
            horizon,
            error_masks,
            code_masks,
            masks,
        })
    }

    /// Real received blocks shifted into this frame.
    pub fn shift(&self, real: &BlockSequence, n_blocks: usize) -> Result<BlockSequence> {
        shift_received(&real.truncated(n_blocks).padded(self.horizon), &self.reduction.plan, n_blocks)
    }

    pub fn code_trellis(&self) -> Result<Trellis> {
        build_code_trellis_masked(self.reduction.reduced_pair.g(), self.horizon, Some(&self.masks))
    }

    pub fn error_trellis(&self, syndrome_shifted: &BlockSequence) -> Result<Trellis> {
        build_error_trellis_masked(self.reduction.reduced_pair.h(), syndrome_shifted, Some(&self.masks))
    }
}

/// Adds the shifted received sequence to every error path.
pub fn reconstruct_code_paths(
    z_shifted: &BlockSequence,
    error_paths: &BTreeSet<BlockSequence>,
) -> Result<BTreeSet<BlockSequence>> {
    error_paths.iter().map(|e| z_shifted.xor(e)).collect()
}

/// Outcome of comparing two path sets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PathSetComparison {
    pub only_left: BTreeSet<BlockSequence>,
    pub only_right: BTreeSet<BlockSequence>,
}

impl PathSetComparison {
    pub fn new(left: &BTreeSet<BlockSequence>, right: &BTreeSet<BlockSequence>) -> Self {
        PathSetComparison {
            only_left: left.difference(right).cloned().collect(),
            only_right: right.difference(left).cloned().collect(),
        }
    }

    pub fn is_equal(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

/// Report of [`verify_simultaneous_reduction`].
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub reduction: ReductionReport,
    pub n_blocks: usize,
    /// Received data with the imaginary blocks appended.
    pub received: BlockSequence,
    pub syndrome: BlockSequence,
    pub received_shifted: BlockSequence,
    pub syndrome_shifted: BlockSequence,
    pub error_masks: BoundaryMasks,
    pub code_masks: BoundaryMasks,
    pub code_states_before: usize,
    pub code_states_after: usize,
    pub error_states_before: usize,
    pub error_states_after: usize,
    pub code_paths_before: BTreeSet<BlockSequence>,
    pub error_paths_before: BTreeSet<BlockSequence>,
    pub code_paths_after: BTreeSet<BlockSequence>,
    pub error_paths_after: BTreeSet<BlockSequence>,
    /// Unreduced: code paths vs `z + e`.
    pub unreduced_check: PathSetComparison,
    /// Reduced: code-trellis paths vs `z' + e'`.
    pub reduced_check: PathSetComparison,
    /// Reduced code-trellis paths vs shifted unreduced code paths.
    pub shift_check: PathSetComparison,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.unreduced_check.is_equal()
            && self.reduced_check.is_equal()
            && self.shift_check.is_equal()
            && self.code_paths_after.len() == self.error_paths_after.len()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc {
            pass: bool,
            n_blocks: usize,
            g: Vec<String>,
            h: Vec<String>,
            g_reduced: Vec<String>,
            h_reduced: Vec<String>,
            received: String,
            syndrome: String,
            received_shifted: String,
            syndrome_shifted: String,
            code_states_before: usize,
            code_states_after: usize,
            error_states_before: usize,
            error_states_after: usize,
            code_paths: Vec<String>,
            error_paths: Vec<String>,
            mismatches: Vec<String>,
        }
        let r = &self.reduction;
        let doc = Doc {
            pass: self.passed(),
            n_blocks: self.n_blocks,
            g: r.original.g().row_strings(),
            h: r.original.h().row_strings(),
            g_reduced: r.reduced_pair.g().row_strings(),
            h_reduced: r.reduced_pair.h().row_strings(),
            received: self.received.to_string(),
            syndrome: self.syndrome.to_string(),
            received_shifted: self.received_shifted.to_string(),
            syndrome_shifted: self.syndrome_shifted.to_string(),
            code_states_before: self.code_states_before,
            code_states_after: self.code_states_after,
            error_states_before: self.error_states_before,
            error_states_after: self.error_states_after,
            code_paths: self.code_paths_after.iter().map(ToString::to_string).collect(),
            error_paths: self.error_paths_after.iter().map(ToString::to_string).collect(),
            mismatches: self.mismatch_lines(),
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    fn mismatch_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, c) in [
            ("unreduced", &self.unreduced_check),
            ("reduced", &self.reduced_check),
            ("shifted", &self.shift_check),
        ] {
            for p in &c.only_left {
                out.push(format!("{name}: only in code-trellis: {p}"));
            }
            for p in &c.only_right {
                out.push(format!("{name}: only in reconstruction: {p}"));
            }
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.reduction;
        writeln!(f, "G:   {}", r.original.g())?;
        writeln!(f, "H:   {}", r.original.h())?;
        writeln!(f, "G':  {}", r.reduced_pair.g())?;
        writeln!(f, "H':  {}", r.reduced_pair.h())?;
        writeln!(f, "N = {}", self.n_blocks)?;
        writeln!(f, "z    = {}", self.received)?;
        writeln!(f, "zeta = {}", self.syndrome)?;
        writeln!(f, "z'   = {}", self.received_shifted)?;
        writeln!(f, "zeta'= {}", self.syndrome_shifted)?;
        writeln!(
            f,
            "code states:  {} -> {}",
            self.code_states_before, self.code_states_after
        )?;
        writeln!(
            f,
            "error states: {} -> {}",
            self.error_states_before, self.error_states_after
        )?;
        writeln!(f, "error paths e':")?;
        for p in &self.error_paths_after {
            writeln!(f, "  {p}")?;
        }
        writeln!(f, "code paths y':")?;
        for p in &self.code_paths_after {
            writeln!(f, "  {p}")?;
        }
        for line in self.mismatch_lines() {
            writeln!(f, "mismatch {line}")?;
        }
        writeln!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Builds the original and reduced code/error trellises for received data
/// `z` and checks that they describe the same (shifted) paths.
///
/// `z` holds at least the `N` real blocks; any further blocks must be zero
/// (they are the imaginary padding).
pub fn verify_simultaneous_reduction(
    pair: &GhPair,
    plan: &ShiftPlan,
    z: &BlockSequence,
    n_blocks: usize,
) -> Result<VerificationReport> {
    if z.width() != pair.n() {
        return Err(Error::Dimension(format!(
            "received blocks have width {}, code length is {}",
            z.width(),
            pair.n()
        )));
    }
    if z.len() < n_blocks {
        return Err(Error::Dimension(format!(
            "received {} blocks, N = {n_blocks}",
            z.len()
        )));
    }
    if z.blocks()[n_blocks..].iter().any(|&b| b != 0) {
        return Err(Error::Dimension(
            "received blocks beyond N must be zero".into(),
        ));
    }
    let frame = ShiftedFrame::new(pair, plan, n_blocks)?;
    let (g, h) = (pair.g(), pair.h());
    let h_red = frame.reduction.reduced_pair.h();
    let real = z.truncated(n_blocks);

    // original trellises
    let padded_len = n_blocks + h.memory();
    let received = real.padded(padded_len);
    let zeta = syndrome(&received, h)?;
    let code_before = build_code_trellis(g, n_blocks)?;
    let error_before = build_error_trellis(h, &zeta)?;
    let code_paths_before: BTreeSet<BlockSequence> = enumerate_paths(&code_before)
        .into_iter()
        .map(|y| y.padded(padded_len))
        .collect();
    let error_paths_before = enumerate_paths(&error_before);
    let unreduced_check = PathSetComparison::new(
        &code_paths_before,
        &reconstruct_code_paths(&received, &error_paths_before)?,
    );

    // reduced trellises in the shifted frame
    let horizon = frame.horizon;
    let received_shifted = frame.shift(&real, n_blocks)?;
    let syndrome_shifted = syndrome(&received_shifted, h_red)?;
    let error_after = frame.error_trellis(&syndrome_shifted)?;
    let code_after = frame.code_trellis()?;
    let error_paths_after = enumerate_paths(&error_after);
    let code_paths_after = enumerate_paths(&code_after);
    let reduced_check = PathSetComparison::new(
        &code_paths_after,
        &reconstruct_code_paths(&received_shifted, &error_paths_after)?,
    );
    let shifted_code: BTreeSet<BlockSequence> = enumerate_paths(&code_before)
        .iter()
        .map(|y| shift_code(&y.padded(horizon), plan, n_blocks))
        .collect::<Result<_>>()?;
    let shift_check = PathSetComparison::new(&code_paths_after, &shifted_code);

    Ok(VerificationReport {
        n_blocks,
        code_states_before: 1 << code_before.state_bits(),
        code_states_after: 1 << code_after.state_bits(),
        error_states_before: 1 << error_before.state_bits(),
        error_states_after: 1 << error_after.state_bits(),
        reduction: frame.reduction,
        error_masks: frame.error_masks,
        code_masks: frame.code_masks,
        received,
        syndrome: zeta,
        received_shifted,
        syndrome_shifted,
        code_paths_before,
        error_paths_before,
        code_paths_after,
        error_paths_after,
        unreduced_check,
        reduced_check,
        shift_check,
    })
}
