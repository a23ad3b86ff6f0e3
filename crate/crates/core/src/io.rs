//! Graph and score file I/O.
//!
//! Three formats:
//! - text edge lists: one `u v` pair per line, `#` comments, optionally a
//!   SNAP-style `# Nodes: k` header fixing the vertex count;
//! - a binary CSR cache (magic `BCX1`, little-endian `n: u64`, `m: u64`,
//!   `row_offsets: (n+1) x u64`, `columns: 2m x u32`);
//! - score output as `vertex score` text lines or CSV, scores printed with
//!   six decimal places, sorted by vertex id.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};

const CACHE_MAGIC: &[u8; 4] = b"BCX1";

/// Parse a whitespace-separated edge list. The vertex count is
/// `1 + max vertex id` unless a `# Nodes: k` header comment is present.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<EdgeList> {
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut header_n: Option<usize> = None;
    let mut max_id: Option<u32> = None;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            // SNAP headers look like "# Nodes: 4039 Edges: 88234".
            let mut tokens = comment.split_whitespace();
            if tokens.next() == Some("Nodes:") {
                if let Some(k) = tokens.next().and_then(|t| t.parse::<usize>().ok()) {
                    header_n = Some(k);
                }
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let parse = |tok: Option<&str>, line_no: usize| -> Result<u32> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex ids".into(),
            })?;
            tok.parse::<u32>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let u = parse(tokens.next(), line_no)?;
        let v = parse(tokens.next(), line_no)?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "trailing tokens after vertex pair".into(),
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        pairs.push((u, v));
    }

    let n = header_n.unwrap_or_else(|| max_id.map_or(0, |m| m as usize + 1));
    Ok(EdgeList { n, pairs })
}

pub fn write_edge_list<W: Write>(mut writer: W, edges: &EdgeList) -> Result<()> {
    writeln!(writer, "# Nodes: {}", edges.n)?;
    for &(u, v) in &edges.pairs {
        writeln!(writer, "{u} {v}")?;
    }
    Ok(())
}

/// Serialize a graph into the binary cache format.
pub fn write_graph_cache<W: Write>(mut writer: W, g: &Graph) -> Result<()> {
    writer.write_all(CACHE_MAGIC)?;
    writer.write_all(&(g.vertex_count() as u64).to_le_bytes())?;
    writer.write_all(&g.edge_count().to_le_bytes())?;
    for off in g.row_offsets() {
        writer.write_all(&off.to_le_bytes())?;
    }
    for col in g.columns() {
        writer.write_all(&col.to_le_bytes())?;
    }
    Ok(())
}

/// Deserialize and validate a binary graph cache.
pub fn read_graph_cache<R: Read>(mut reader: R) -> Result<Graph> {
    let mut magic = [0u8; 4];
    reader.read_exact(&mut magic).map_err(truncated)?;
    if &magic != CACHE_MAGIC {
        return Err(Error::Cache(format!("bad magic {magic:?}")));
    }
    let n = read_u64(&mut reader)? as usize;
    let m = read_u64(&mut reader)?;
    let mut row_offsets = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        row_offsets.push(read_u64(&mut reader)?);
    }
    let mut columns = Vec::with_capacity(2 * m as usize);
    for _ in 0..2 * m {
        let mut buf = [0u8; 4];
        reader.read_exact(&mut buf).map_err(truncated)?;
        columns.push(u32::from_le_bytes(buf));
    }

    if row_offsets.first() != Some(&0)
        || row_offsets.last() != Some(&(2 * m))
        || row_offsets.windows(2).any(|w| w[0] > w[1])
        || columns.iter().any(|&c| c as usize >= n)
    {
        return Err(Error::Cache("inconsistent CSR layout".into()));
    }
    Ok(Graph::from_parts(n, m, row_offsets, columns))
}

/// True if the file starts with the binary cache magic.
pub fn is_graph_cache(path: &std::path::Path) -> bool {
    let mut magic = [0u8; 4];
    std::fs::File::open(path)
        .and_then(|mut f| f.read_exact(&mut magic))
        .map(|_| &magic == CACHE_MAGIC)
        .unwrap_or(false)
}

fn read_u64<R: Read>(reader: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    reader.read_exact(&mut buf).map_err(truncated)?;
    Ok(u64::from_le_bytes(buf))
}

fn truncated(e: std::io::Error) -> Error {
    Error::Cache(format!("truncated input: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreFormat {
    Text,
    Csv,
}

/// Write per-vertex scores sorted by vertex id.
pub fn write_scores<W: Write>(mut writer: W, scores: &[f64], format: ScoreFormat) -> Result<()> {
    if format == ScoreFormat::Csv {
        writeln!(writer, "vertex,score")?;
    }
    for (v, s) in scores.iter().enumerate() {
        match format {
            ScoreFormat::Text => writeln!(writer, "{v} {s:.6}")?,
            ScoreFormat::Csv => writeln!(writer, "{v},{s:.6}")?,
        }
    }
    Ok(())
}

/// Parse a score file written by [`write_scores`] (either format).
pub fn read_scores<R: BufRead>(reader: R) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed == "vertex,score" {
            continue;
        }
        let mut tokens = trimmed.split(|c: char| c == ',' || c.is_whitespace());
        let err = |msg: &str| Error::Parse {
            line: idx + 1,
            message: msg.into(),
        };
        let v: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("invalid vertex id"))?;
        let s: f64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| err("invalid score"))?;
        if v != out.len() {
            return Err(err("vertex ids must be dense and sorted"));
        }
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_undirected, families};

    #[test]
    fn parses_plain_pairs() {
        let edges = load_edge_list("0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(edges.n, 3);
        assert_eq!(edges.pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn skips_comments() {
        let edges = load_edge_list("# comment\n0 1\n".as_bytes()).unwrap();
        assert_eq!(edges.pairs.len(), 1);
        assert_eq!(edges.n, 2);
    }

    #[test]
    fn nodes_header_fixes_vertex_count() {
        let edges = load_edge_list("# Nodes: 7 Edges: 2\n0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(edges.n, 7);
    }

    #[test]
    fn reports_parse_error_with_line_number() {
        let err = load_edge_list("0 x\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }
        let err = load_edge_list("0 1\n2\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_input_gives_empty_list() {
        let edges = load_edge_list("".as_bytes()).unwrap();
        assert_eq!(edges.n, 0);
        assert!(edges.pairs.is_empty());
    }

    #[test]
    fn edge_list_roundtrip() {
        let edges = EdgeList {
            n: 5,
            pairs: vec![(0, 4), (1, 2)],
        };
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &edges).unwrap();
        let back = load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(back, edges);
    }

    #[test]
    fn cache_roundtrip() {
        let g = families::cycle(6);
        let mut buf = Vec::new();
        write_graph_cache(&mut buf, &g).unwrap();
        let back = read_graph_cache(buf.as_slice()).unwrap();
        assert_eq!(g, back);
        back.check_invariants();
    }

    #[test]
    fn cache_rejects_corruption() {
        let g = families::path(4);
        let mut buf = Vec::new();
        write_graph_cache(&mut buf, &g).unwrap();
        let mut bad_magic = buf.clone();
        bad_magic[0] = b'X';
        assert!(read_graph_cache(bad_magic.as_slice()).is_err());
        let truncated = &buf[..buf.len() - 2];
        assert!(read_graph_cache(truncated).is_err());
    }

    #[test]
    fn scores_roundtrip_both_formats() {
        let scores = vec![0.0, 2.0, 1.0 / 3.0];
        for format in [ScoreFormat::Text, ScoreFormat::Csv] {
            let mut buf = Vec::new();
            write_scores(&mut buf, &scores, format).unwrap();
            let back = read_scores(buf.as_slice()).unwrap();
            assert_eq!(back.len(), 3);
            for (a, b) in scores.iter().zip(&back) {
                assert!((a - b).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn graph_in_graph_out() {
        // Normalizing a parsed list equals normalizing the same pairs directly.
        let text = "# Nodes: 4\n0 1\n1 2\n2 3\n3 0\n1 0\n";
        let edges = load_edge_list(text.as_bytes()).unwrap();
        let g = build_undirected(&edges).unwrap();
        assert_eq!(g, families::cycle(4));
    }
}
