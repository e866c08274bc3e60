//! Text cache format for count tables.
//!
//! ```text
//! NCWALK v1 kind=omega n=6
//! 0 1 0 1
//! 1 1 0 1
//! ...
//! END 97
//! ```
//!
//! One line per nonzero cell, `(s, i, j)` ascending, decimal values.

use std::io::{self, BufRead, Write};

use num_bigint::BigUint;
use thiserror::Error;

use super::{CountTable, TableKind};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("bad header: {0}")]
    Header(String),
    #[error("unsupported cache version v{0}")]
    Version(String),
    #[error("line {line}: {message}")]
    Entry { line: usize, message: String },
    #[error("truncated file: no END line")]
    Truncated,
    #[error("END declares {declared} entries, file holds {found}")]
    Count { declared: usize, found: usize },
    #[error("recurrence check failed at ({s},{i},{j})")]
    Recurrence { s: usize, i: usize, j: usize },
}

/// Writes `table` in the cache format.
pub fn save_table<W: Write>(table: &CountTable, mut sink: W) -> io::Result<()> {
    writeln!(
        sink,
        "NCWALK v{} kind={} n={}",
        CACHE_VERSION,
        table.kind().name(),
        table.n()
    )?;
    let mut count = 0usize;
    for (s, i, j, v) in table.entries() {
        writeln!(sink, "{s} {i} {j} {v}")?;
        count += 1;
    }
    writeln!(sink, "END {count}")?;
    sink.flush()
}

fn parse_header(line: &str) -> Result<(TableKind, usize), CacheError> {
    let bad = || CacheError::Header(line.to_string());
    let mut parts = line.split_whitespace();
    if parts.next() != Some("NCWALK") {
        return Err(bad());
    }
    let version = parts.next().ok_or_else(bad)?;
    if version != format!("v{CACHE_VERSION}") {
        return Err(CacheError::Version(version.trim_start_matches('v').to_string()));
    }
    let kind = parts
        .next()
        .and_then(|p| p.strip_prefix("kind="))
        .and_then(TableKind::from_name)
        .ok_or_else(bad)?;
    let n = parts
        .next()
        .and_then(|p| p.strip_prefix("n="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((kind, n))
}

/// Reads a cache file, checking layout, ordering, the entry count, and the
/// defining recurrence on three cells: the top-layer origin, the largest
/// cell of the middle layer, and the last entry.
pub fn load_table<R: BufRead>(source: R) -> Result<CountTable, CacheError> {
    let mut lines = source.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(CacheError::Truncated),
    };
    let (kind, n) = parse_header(&header)?;
    let mut table = CountTable::zeros(kind, n);
    let mut last: Option<(usize, usize, usize)> = None;
    for (found, (index, line)) in lines.enumerate() {
        let line = line?;
        let number = index + 1;
        let entry_err = |message: &str| CacheError::Entry {
            line: number,
            message: message.to_string(),
        };
        if let Some(rest) = line.strip_prefix("END ") {
            let declared: usize = rest.trim().parse().map_err(|_| entry_err("bad END count"))?;
            if declared != found {
                return Err(CacheError::Count { declared, found });
            }
            spot_check(&table, last)?;
            return Ok(table);
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(entry_err("expected `<s> <i> <j> <value>`"));
        }
        let index: Vec<usize> = fields[..3]
            .iter()
            .map(|f| f.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| entry_err("bad index"))?;
        let (s, i, j) = (index[0], index[1], index[2]);
        let value: BigUint = fields[3].parse().map_err(|_| entry_err("bad value"))?;
        if !table.contains(s, i, j) {
            return Err(entry_err("cell outside the table layout"));
        }
        if last.is_some_and(|prev| prev >= (s, i, j)) {
            return Err(entry_err("entries out of order"));
        }
        table.set(s, i, j, value);
        last = Some((s, i, j));
    }
    Err(CacheError::Truncated)
}

fn spot_check(table: &CountTable, last: Option<(usize, usize, usize)>) -> Result<(), CacheError> {
    let layers = table.layer_count();
    if layers == 0 {
        return Ok(());
    }
    let top = layers - 1;
    let middle = layers / 2;
    let largest_middle = table
        .entries()
        .filter(|&(s, ..)| s == middle)
        .max_by(|x, y| x.3.cmp(y.3))
        .map(|(s, i, j, _)| (s, i, j))
        .unwrap_or((middle, 1, 0));
    let mut cells = vec![(top, 1, 0), largest_middle];
    cells.extend(last);
    for (s, i, j) in cells {
        if table.recurrence_value(s, i, j).as_ref() != Some(table.get(s, i, j)) {
            return Err(CacheError::Recurrence { s, i, j });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_omega, sigma_star_direct, SizeLimit};

    fn round_trip(table: &CountTable) -> Result<CountTable, CacheError> {
        let mut buf = Vec::new();
        save_table(table, &mut buf).unwrap();
        load_table(buf.as_slice())
    }

    fn saved(table: &CountTable) -> String {
        let mut buf = Vec::new();
        save_table(table, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn omega_round_trip() {
        let omega = build_omega(6, SizeLimit::default()).unwrap();
        let text = saved(&omega);
        assert!(text.starts_with("NCWALK v1 kind=omega n=6\n"));
        assert!(text.contains("\n12 1 0 202\n"));
        assert_eq!(round_trip(&omega).unwrap(), omega);
    }

    #[test]
    fn sigma_round_trip() {
        let sigma = sigma_star_direct(5);
        assert_eq!(round_trip(&sigma).unwrap(), sigma);
    }

    #[test]
    fn corrupted_entry_fails_recurrence() {
        let omega = build_omega(6, SizeLimit::default()).unwrap();
        let text = saved(&omega).replace("\n12 1 0 202\n", "\n12 1 0 203\n");
        assert!(matches!(
            load_table(text.as_bytes()),
            Err(CacheError::Recurrence { s: 12, i: 1, j: 0 })
        ));
    }

    #[test]
    fn header_versions() {
        assert!(parse_header("NCWALK v1 kind=omega n=6").is_ok());
        assert!(matches!(
            parse_header("NCWALK v2 kind=omega n=6"),
            Err(CacheError::Version(v)) if v == "2"
        ));
        assert!(parse_header("NCWALK v1 kind=beta n=6").is_err());
        assert!(parse_header("HELLO").is_err());
    }

    #[test]
    fn truncation_and_count() {
        let omega = build_omega(3, SizeLimit::default()).unwrap();
        let text = saved(&omega);
        let truncated = &text[..text.find("END").unwrap()];
        assert!(matches!(load_table(truncated.as_bytes()), Err(CacheError::Truncated)));
        let miscounted = text.replace("END ", "END 1");
        assert!(matches!(
            load_table(miscounted.as_bytes()),
            Err(CacheError::Count { .. })
        ));
        let shuffled = text.replacen("0 1 0 1\n1 1 0 1\n", "1 1 0 1\n0 1 0 1\n", 1);
        assert!(matches!(load_table(shuffled.as_bytes()), Err(CacheError::Entry { .. })));
    }
}
