//! Line-oriented text format for hypergraphs.
//!
//! ```text
//! # optional comments
//! n r m flavor        flavor is `simple` or `multi`
//! v1 v2 ... vr        one line per edge, ascending vertex indices
//! ```
//!
//! The writer always emits normalized order, single spaces and LF line
//! endings, so `write(read(x))` equals `x` whenever `x` is normalized.

use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: edge has {found} vertices but the header declares r = {r}")]
    UniformityMismatch { line: usize, found: usize, r: usize },
    #[error("line {line}: vertex {vertex} out of range, n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge in a simple hypergraph")]
    DuplicateEdge { line: usize },
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse the text format. Comments start with `#` and run to the end of
/// the line; blank lines are ignored. Edge lines may list vertices in
/// any order, the result is normalized.
pub fn read_hypergraph(input: &str) -> Result<Hypergraph, FormatError> {
    let mut header: Option<(usize, usize, usize, bool)> = None;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (zero_line, raw) in input.lines().enumerate() {
        let line = zero_line + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match header {
            None => {
                let fields: Vec<&str> = content.split_whitespace().collect();
                if fields.len() != 4 {
                    return Err(parse_err(line, "header must be `n r m flavor`"));
                }
                let n: usize = fields[0]
                    .parse()
                    .map_err(|_| parse_err(line, "bad vertex count"))?;
                let r: usize = fields[1]
                    .parse()
                    .map_err(|_| parse_err(line, "bad uniformity"))?;
                let m: usize = fields[2]
                    .parse()
                    .map_err(|_| parse_err(line, "bad edge count"))?;
                let allow_multi = match fields[3] {
                    "simple" => false,
                    "multi" => true,
                    other => {
                        return Err(parse_err(
                            line,
                            format!("flavor must be `simple` or `multi`, got `{other}`"),
                        ))
                    }
                };
                if r == 0 {
                    return Err(parse_err(line, "uniformity must be at least 1"));
                }
                header = Some((n, r, m, allow_multi));
            }
            Some((_, r, m, _)) => {
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than {m} edge lines")));
                }
                let mut edge = Vec::with_capacity(r);
                for field in content.split_whitespace() {
                    let v: usize = field
                        .parse()
                        .map_err(|_| parse_err(line, format!("bad vertex index `{field}`")))?;
                    edge.push(v);
                }
                if edge.len() != r {
                    return Err(FormatError::UniformityMismatch {
                        line,
                        found: edge.len(),
                        r,
                    });
                }
                edges.push(edge);
                edge_lines.push(line);
            }
        }
    }

    let (n, r, m, allow_multi) = header.ok_or_else(|| parse_err(1, "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(
            edge_lines.last().copied().unwrap_or(1),
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Hypergraph::new(n, r, edges, allow_multi).map_err(|e| match e {
        HypergraphError::VertexOutOfRange { index, vertex, n } => FormatError::VertexOutOfRange {
            line: edge_lines[index],
            vertex,
            n,
        },
        HypergraphError::RepeatedVertex { index } => {
            parse_err(edge_lines[index], "edge repeats a vertex")
        }
        // duplicate detection happens after sorting, so point at the file
        // rather than a reordered position
        HypergraphError::DuplicateEdge { .. } => FormatError::DuplicateEdge {
            line: *edge_lines.last().unwrap_or(&1),
        },
        other => parse_err(1, other.to_string()),
    })
}

/// Serialize in normalized order: single spaces, LF endings, no trailing
/// whitespace.
pub fn write_hypergraph(h: &Hypergraph) -> String {
    let flavor = if h.allow_multi() { "multi" } else { "simple" };
    let mut out = format!("{} {} {} {}\n", h.n(), h.r(), h.m(), flavor);
    for edge in h.edges() {
        let words: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_triangle() {
        let text = "3 2 3 simple\n0 1\n1 2\n0 2\n";
        let h = read_hypergraph(text).unwrap();
        assert_eq!((h.n(), h.r(), h.m()), (3, 2, 3));
        assert_eq!(h.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let text = "# a triangle\n3 2 3 simple # header\n\n0 1\n1 2 # last two\n0 2\n";
        assert_eq!(read_hypergraph(text).unwrap().m(), 3);
    }

    #[test]
    fn round_trip_is_identity_on_normalized() {
        let text = "5 3 2 multi\n0 1 4\n0 1 4\n";
        let h = read_hypergraph(text).unwrap();
        assert_eq!(write_hypergraph(&h), text);
        // unnormalized input normalizes on write
        let messy = "3 2 3 simple\n2 1\n1 0\n0 2\n";
        let h = read_hypergraph(messy).unwrap();
        assert_eq!(write_hypergraph(&h), "3 2 3 simple\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn uniformity_mismatch_carries_line() {
        let text = "4 3 1 simple\n0 1\n";
        assert_eq!(
            read_hypergraph(text),
            Err(FormatError::UniformityMismatch {
                line: 2,
                found: 2,
                r: 3
            })
        );
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            read_hypergraph("3 2 1 simple\n0 5\n"),
            Err(FormatError::VertexOutOfRange { line: 2, vertex: 5, n: 3 })
        ));
        assert!(matches!(
            read_hypergraph("3 2 2 simple\n0 1\n1 0\n"),
            Err(FormatError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            read_hypergraph("3 2 2 simple\n0 1\n"),
            Err(FormatError::Parse { .. })
        ));
        assert!(matches!(
            read_hypergraph("3 2 1 weird\n0 1\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_hypergraph(""),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }
}
