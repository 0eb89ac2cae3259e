//! `G = ...` / `H = ...` pair files.

use simred_core::{Error, GhPair, PolyMatrix};

/// Matrices read from a pair file. The GH relation is not checked here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFile {
    pub g: PolyMatrix,
    pub h: PolyMatrix,
}

impl PairFile {
    pub fn into_pair(self) -> simred_core::Result<GhPair> {
        GhPair::new(self.g, self.h)
    }
}

pub fn format_pair(g: &PolyMatrix, h: &PolyMatrix) -> String {
    format!("G = {g}\nH = {h}\n")
}

pub fn parse_pair(text: &str) -> simred_core::Result<PairFile> {
    let mut g = None;
    let mut h = None;
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| Error::Parse {
            line,
            column,
            message,
        };
        let lead = content.len() - content.trim_start().len();
        let Some(eq) = content.find('=') else {
            return Err(err(lead + 1, "expected 'G = ...' or 'H = ...'".into()));
        };
        let name = content[..eq].trim();
        let slot = match name {
            "G" => &mut g,
            "H" => &mut h,
            _ => return Err(err(lead + 1, format!("unknown matrix name '{name}'"))),
        };
        if slot.is_some() {
            return Err(err(lead + 1, format!("{name} given twice")));
        }
        let body = &content[eq + 1..];
        let m: PolyMatrix = body.parse().map_err(|e| match e {
            Error::Parse { column, message, .. } => err(eq + 1 + column, message),
            other => other,
        })?;
        *slot = Some(m);
    }
    let missing = |name: &str| Error::Parse {
        line: last_line,
        column: 1,
        message: format!("missing '{name} = ...' line"),
    };
    Ok(PairFile {
        g: g.ok_or_else(|| missing("G"))?,
        h: h.ok_or_else(|| missing("H"))?,
    })
}
