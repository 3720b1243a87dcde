//! Line-based text format for lattices.
//!
//! ```text
//! lattice <name>
//! n <count>
//! bottom <id>
//! top <id>
//! name <id> <label>    # optional, one per element with a non-default label
//! cover <i> <j>        # j covers i
//! mul <i> <j> <k>      # i·j = k, one entry per unordered pair
//! ```
//!
//! `#` starts a comment. The writer emits covers of the Hasse diagram in
//! lexicographic order and `mul` entries with `i ≤ j`, so loading and
//! re-writing canonical output is byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::lattice::{order_from_covers, LatticeError, MultLattice};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("duplicate mul entry for ({i}, {j}) on line {line}")]
    DuplicateMul { i: usize, j: usize, line: usize },
    #[error("missing mul entry for ({i}, {j})")]
    MissingMul { i: usize, j: usize },
    #[error("cover relation has a cycle through {0}")]
    CoverCycle(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("expected {what}")))?;
    tok.parse::<usize>()
        .map_err(|_| syntax(line, format!("`{tok}` is not a valid {what}")))
}

/// Parses the text format.
pub fn parse(text: &str) -> Result<MultLattice, FormatError> {
    let mut name: Option<String> = None;
    let mut n: Option<usize> = None;
    let mut bottom: Option<usize> = None;
    let mut top: Option<usize> = None;
    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    let mut mul: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    let need_n = |n: Option<usize>, line: usize| -> Result<usize, FormatError> {
        n.ok_or_else(|| syntax(line, "`n` must precede element references"))
    };
    let in_range = |id: usize, n: usize| -> Result<usize, FormatError> {
        if id < n {
            Ok(id)
        } else {
            Err(LatticeError::OutOfRange { id, n }.into())
        }
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(key) = toks.next() else { continue };
        match key {
            "lattice" => {
                let v = toks.next().ok_or_else(|| syntax(line, "expected a name"))?;
                name = Some(v.to_string());
            }
            "n" => {
                let v = parse_num(toks.next(), line, "element count")?;
                if v == 0 {
                    return Err(LatticeError::Empty.into());
                }
                n = Some(v);
            }
            "bottom" => {
                let count = need_n(n, line)?;
                bottom = Some(in_range(parse_num(toks.next(), line, "id")?, count)?);
            }
            "top" => {
                let count = need_n(n, line)?;
                top = Some(in_range(parse_num(toks.next(), line, "id")?, count)?);
            }
            "name" => {
                let count = need_n(n, line)?;
                let id = in_range(parse_num(toks.next(), line, "id")?, count)?;
                let label = toks.next().ok_or_else(|| syntax(line, "expected a label"))?;
                if labels.insert(id, label.to_string()).is_some() {
                    return Err(syntax(line, format!("duplicate name for element {id}")));
                }
            }
            "cover" => {
                let count = need_n(n, line)?;
                let i = in_range(parse_num(toks.next(), line, "id")?, count)?;
                let j = in_range(parse_num(toks.next(), line, "id")?, count)?;
                if i == j {
                    return Err(FormatError::CoverCycle(i));
                }
                covers.push((i, j));
            }
            "mul" => {
                let count = need_n(n, line)?;
                let i = in_range(parse_num(toks.next(), line, "id")?, count)?;
                let j = in_range(parse_num(toks.next(), line, "id")?, count)?;
                let k = in_range(parse_num(toks.next(), line, "id")?, count)?;
                let cell = (i.min(j), i.max(j));
                if mul.insert(cell, k).is_some() {
                    return Err(FormatError::DuplicateMul {
                        i: cell.0,
                        j: cell.1,
                        line,
                    });
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(syntax(line, format!("unexpected token `{extra}`")));
        }
    }

    let name = name.ok_or(FormatError::MissingHeader("lattice"))?;
    let n = n.ok_or(FormatError::MissingHeader("n"))?;
    let bottom = bottom.ok_or(FormatError::MissingHeader("bottom"))?;
    let top = top.ok_or(FormatError::MissingHeader("top"))?;

    let leq = order_from_covers(n, &covers);
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(FormatError::CoverCycle(i));
            }
        }
    }
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            let k = *mul
                .get(&(i, j))
                .ok_or(FormatError::MissingMul { i, j })?;
            table[i][j] = k;
            table[j][i] = k;
        }
    }
    let names = if labels.is_empty() {
        Vec::new()
    } else {
        (0..n)
            .map(|i| labels.get(&i).cloned().unwrap_or_else(|| i.to_string()))
            .collect()
    };
    let lattice = MultLattice::from_order(name, names, leq, table)?;
    if lattice.bottom().index() != bottom {
        return Err(LatticeError::BoundMismatch {
            which: "bottom",
            declared: bottom,
            actual: lattice.bottom().index(),
        }
        .into());
    }
    if lattice.top().index() != top {
        return Err(LatticeError::BoundMismatch {
            which: "top",
            declared: top,
            actual: lattice.top().index(),
        }
        .into());
    }
    Ok(lattice)
}

fn token(s: &str) -> String {
    if s.is_empty() {
        return "_".to_string();
    }
    s.chars()
        .map(|c| if c.is_whitespace() || c == '#' { '_' } else { c })
        .collect()
}

/// Canonical text rendering.
pub fn write(l: &MultLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lattice {}", token(l.name()));
    let _ = writeln!(out, "n {}", l.len());
    let _ = writeln!(out, "bottom {}", l.bottom());
    let _ = writeln!(out, "top {}", l.top());
    if !l.has_default_names() {
        for a in l.elements() {
            if l.element_name(a) != a.to_string() {
                let _ = writeln!(out, "name {} {}", a, token(l.element_name(a)));
            }
        }
    }
    for (i, j) in l.covers() {
        let _ = writeln!(out, "cover {i} {j}");
    }
    for i in l.elements() {
        for j in l.elements().filter(|&j| j >= i) {
            let _ = writeln!(out, "mul {} {} {}", i, j, l.mul(i, j));
        }
    }
    out
}

pub fn load(path: &Path) -> Result<MultLattice, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

pub fn save(l: &MultLattice, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, write(l)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}
