//! Line-oriented text formats for tables, DFBQs, block files and designs.
//!
//! Line numbers in errors are 1-based and count every physical line of the
//! input, including blank and comment lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::alg::{CayleyTable, Permutation, MAX_ORDER};
use crate::design::{Block, BlockFamily};
use crate::dfbq::{verify_dfbq, Dfbq, DfbqError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}, column {column}: entry {entry} is out of range 0..{bound}")]
    Range { entry: usize, line: usize, column: usize, bound: usize },
    #[error(transparent)]
    Dfbq(#[from] DfbqError),
}

fn parse_err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Parse { line, reason: reason.into() }
}

/// Parses whitespace-separated non-negative integers on one line.
fn integers(line_no: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("column {}: not a non-negative integer: {tok:?}", i + 1)))
        })
        .collect()
}

/// Parses a table from numbered lines; blank lines are skipped.
fn table_from_lines<'a>(
    mut lines: impl Iterator<Item = (usize, &'a str)>,
    end_line: usize,
) -> Result<CayleyTable, FormatError> {
    let mut lines = lines.by_ref().filter(|(_, l)| !l.trim().is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(end_line, "missing order line"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| parse_err(header_line, format!("order must be an integer, found {:?}", header.trim())))?;
    if n == 0 || n > MAX_ORDER {
        return Err(parse_err(header_line, format!("order {n} is outside 1..={MAX_ORDER}")));
    }
    let mut entries = Vec::with_capacity(n * n);
    let mut last = header_line;
    for row in 0..n {
        let (line_no, text) =
            lines.next().ok_or_else(|| parse_err(last + 1, format!("missing row {}: expected {n} rows", row + 1)))?;
        last = line_no;
        let values = integers(line_no, text)?;
        if values.len() != n {
            return Err(parse_err(line_no, format!("ragged row: expected {n} entries, found {}", values.len())));
        }
        if let Some((col, &v)) = values.iter().enumerate().find(|&(_, &v)| v >= n) {
            return Err(FormatError::Range { entry: v, line: line_no, column: col + 1, bound: n });
        }
        entries.extend(values);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(line_no, format!("unexpected content after {n} rows")));
    }
    Ok(CayleyTable::new(n, entries).expect("entries range-checked"))
}

fn numbered(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l))
}

/// Parses the Cayley table format: the order `n`, then `n` rows of `n` entries.
pub fn parse_table(text: &str) -> Result<CayleyTable, FormatError> {
    table_from_lines(numbered(text), text.lines().count() + 1)
}

/// Formats a table so that [`parse_table`] returns it unchanged.
pub fn write_table(table: &CayleyTable) -> String {
    table.to_string()
}

/// Parses an `add` table, a line holding only `%`, then a `sub` table, and
/// checks the DFBQ axioms.
pub fn parse_dfbq(text: &str) -> Result<Dfbq, FormatError> {
    let (add, sub) = parse_table_pair(text)?;
    Ok(verify_dfbq(add, sub)?)
}

/// The two tables of a DFBQ file, without checking the axioms.
pub fn parse_table_pair(text: &str) -> Result<(CayleyTable, CayleyTable), FormatError> {
    let all: Vec<(usize, &str)> = numbered(text).collect();
    let split = all
        .iter()
        .position(|(_, l)| l.trim() == "%")
        .ok_or_else(|| parse_err(all.len() + 1, "missing '%' separator line"))?;
    let add = table_from_lines(all[..split].iter().copied(), all[split].0)?;
    let sub = table_from_lines(all[split + 1..].iter().copied(), all.len() + 1)?;
    Ok((add, sub))
}

/// True when the text contains a `%` separator line.
pub fn looks_like_dfbq(text: &str) -> bool {
    text.lines().any(|l| l.trim() == "%")
}

pub fn write_dfbq(d: &Dfbq) -> String {
    format!("{}%\n{}", d.add_table(), d.sub_table())
}

/// Parses a blocks file: one block per nonempty line, `#` starts a comment.
/// Returns each block with its line number.
pub fn parse_blocks(text: &str) -> Result<Vec<(usize, Block)>, FormatError> {
    let mut out = Vec::new();
    for (line_no, raw) in numbered(text) {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let values = integers(line_no, content)?;
        let block = Block::new(values).map_err(|_| parse_err(line_no, "block elements must be distinct"))?;
        out.push((line_no, block));
    }
    Ok(out)
}

/// Parses a blocks file over `{0..order-1}`; repeated blocks are kept.
pub fn parse_block_list(text: &str, order: usize) -> Result<Vec<Block>, FormatError> {
    let blocks = parse_blocks(text)?;
    if blocks.is_empty() {
        return Err(parse_err(text.lines().count() + 1, "no blocks"));
    }
    for (line_no, b) in &blocks {
        if let Some((col, x)) = b.elements().enumerate().find(|&(_, x)| x >= order) {
            return Err(FormatError::Range { entry: x, line: *line_no, column: col + 1, bound: order });
        }
    }
    Ok(blocks.into_iter().map(|(_, b)| b).collect())
}

/// Parses a blocks file into a family over `{0..order-1}`; blocks must be distinct.
pub fn parse_family(text: &str, order: usize) -> Result<BlockFamily, FormatError> {
    let blocks = parse_block_list(text, order)?;
    let lines: Vec<usize> = parse_blocks(text)?.into_iter().map(|(l, _)| l).collect();
    for i in 0..blocks.len() {
        if let Some(j) = (0..i).find(|&j| blocks[j] == blocks[i]) {
            return Err(parse_err(lines[i], format!("duplicate of the block on line {}", lines[j])));
        }
    }
    Ok(BlockFamily::new(order, blocks).expect("validated"))
}

/// Design output: a `v= b= k= lambda=` header, then the blocks in sorted order.
pub fn write_design(v: usize, blocks: &[Block], k: usize, lambda: usize) -> String {
    let mut sorted = blocks.to_vec();
    sorted.sort();
    let mut out = format!("v={v} b={} k={k} lambda={lambda}\n", sorted.len());
    for b in &sorted {
        let _ = writeln!(out, "{b}");
    }
    out
}

/// Parses a permutation as whitespace- or comma-separated images.
pub fn parse_permutation(text: &str) -> Result<Permutation, FormatError> {
    permutation_at(1, text)
}

fn permutation_at(line: usize, text: &str) -> Result<Permutation, FormatError> {
    let images = integers(line, &text.replace(',', " "))?;
    if images.is_empty() {
        return Err(parse_err(line, "empty permutation"));
    }
    Permutation::new(images).map_err(|e| parse_err(line, e.to_string()))
}

/// One permutation per nonempty line; `#` starts a comment.
pub fn parse_permutation_list(text: &str) -> Result<Vec<Permutation>, FormatError> {
    let mut out = Vec::new();
    for (line_no, raw) in numbered(text) {
        let content = raw.split('#').next().unwrap_or("");
        if !content.trim().is_empty() {
            out.push(permutation_at(line_no, content)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_z3() {
        assert_eq!(parse_table("3\n0 1 2\n1 2 0\n2 0 1").unwrap(), CayleyTable::cyclic(3));
        assert_eq!(parse_table("3\n\n0 1 2\n1 2 0\n2 0 1\n\n").unwrap(), CayleyTable::cyclic(3));
    }

    #[test]
    fn ragged_and_range() {
        assert_eq!(
            parse_table("3\n0 1 2\n1 2 0\n2 0"),
            Err(FormatError::Parse { line: 4, reason: "ragged row: expected 3 entries, found 2".into() })
        );
        assert_eq!(parse_table("2\n0 1\n1 2"), Err(FormatError::Range { entry: 2, line: 3, column: 2, bound: 2 }));
    }

    #[test]
    fn other_errors() {
        assert!(matches!(parse_table(""), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_table("x"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_table("2\n0 1"), Err(FormatError::Parse { line: 3, .. })));
        assert!(matches!(parse_table("2\n0 1\n1 0\n0 1"), Err(FormatError::Parse { line: 4, .. })));
        assert!(matches!(parse_table("2\n0 -1\n1 0"), Err(FormatError::Parse { line: 2, .. })));
    }

    #[test]
    fn table_round_trip() {
        let t = CayleyTable::from_fn(4, |a, b| (a * 3 + b) % 4).unwrap();
        assert_eq!(parse_table(&write_table(&t)).unwrap(), t);
    }

    #[test]
    fn dfbq_round_trip() {
        let d = verify_dfbq(CayleyTable::cyclic(5), CayleyTable::cyclic_subtraction(5)).unwrap();
        let text = write_dfbq(&d);
        assert!(looks_like_dfbq(&text));
        assert_eq!(parse_dfbq(&text).unwrap(), d);
        assert!(matches!(parse_dfbq("1\n0\n"), Err(FormatError::Parse { line: 3, .. })));
    }

    #[test]
    fn dfbq_axiom_failure_surfaces() {
        let text = "3\n0 1 2\n1 2 0\n2 0 1\n%\n3\n0 1 2\n1 2 0\n2 0 1\n";
        assert!(matches!(parse_dfbq(text), Err(FormatError::Dfbq(DfbqError::Axioms(_)))));
    }

    #[test]
    fn blocks_with_comments() {
        let fam = parse_family("# base blocks\n1 2 4  # Fano\n\n", 7).unwrap();
        assert_eq!(fam, BlockFamily::from_sets(7, &[&[1, 2, 4]]).unwrap());
        assert!(matches!(parse_family("1 1\n", 7), Err(FormatError::Parse { line: 1, .. })));
        assert_eq!(parse_family("0 1\n0 7\n", 7), Err(FormatError::Range { entry: 7, line: 2, column: 2, bound: 7 }));
        assert!(matches!(parse_family("0 1\n1 0\n", 7), Err(FormatError::Parse { line: 2, .. })));
    }

    #[test]
    fn block_list_keeps_repeats() {
        assert_eq!(parse_block_list("0 1\n1 0\n", 2).unwrap().len(), 2);
        assert!(matches!(parse_block_list("# none\n", 2), Err(FormatError::Parse { line: 2, .. })));
    }

    #[test]
    fn design_output() {
        let blocks = vec![Block::new(vec![2, 3]).unwrap(), Block::new(vec![0, 1]).unwrap()];
        assert_eq!(write_design(4, &blocks, 2, 1), "v=4 b=2 k=2 lambda=1\n0 1\n2 3\n");
    }

    #[test]
    fn permutations() {
        assert_eq!(parse_permutation("1 2 0").unwrap().images().collect::<Vec<_>>(), vec![1, 2, 0]);
        assert_eq!(parse_permutation("1,0").unwrap().images().collect::<Vec<_>>(), vec![1, 0]);
        assert!(parse_permutation("0 0").is_err());
        let list = parse_permutation_list("# shifts\n0 1 2\n1 2 0\n").unwrap();
        assert_eq!(list.len(), 2);
        assert!(matches!(parse_permutation_list("0 1\n0 2\n"), Err(FormatError::Parse { line: 2, .. })));
    }
}
