//! Plain-text digraph format and DOT export.
//!
//! ```text
//! n m
//! u v      (m lines, 0-indexed, LF-terminated)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut lines = text.split('\n').enumerate();
    let missing = || Error::Parse {
        line: 1,
        msg: "missing header `n m`".into(),
    };
    let (_, header) = lines.next().ok_or_else(missing)?;
    let fields = parse_fields(header, 1)?;
    let (n, m) = match fields.as_slice() {
        [] => return Err(missing()),
        &[n, m] => (n, m),
        _ => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header must be `n m`, got {} fields", fields.len()),
            })
        }
    };
    let mut seen = HashSet::with_capacity(m);
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let Some((idx, line)) = lines.next() else {
            return Err(Error::Parse {
                line: arcs.len() + 2,
                msg: format!("expected {m} arcs, found {}", arcs.len()),
            });
        };
        let lineno = idx + 1;
        let (u, v) = match parse_fields(line, lineno)?.as_slice() {
            [u, v] => (*u, *v),
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("arc line must be `u v`, got {} fields", other.len()),
                })
            }
        };
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("endpoint out of range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("loop at vertex {u}"),
            });
        }
        if !seen.insert((u, v)) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("duplicate arc {u} {v}"),
            });
        }
        arcs.push((u, v));
    }
    for (idx, line) in lines {
        if !line.trim().is_empty() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("unexpected content after {m} arcs"),
            });
        }
    }
    Ok(Digraph::from_valid(n, arcs))
}

fn parse_fields(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("not a non-negative integer: `{t}`"),
            })
        })
        .collect()
}

/// Header plus arcs in lexicographic order.
pub fn write_digraph(d: &Digraph) -> String {
    let mut s = String::with_capacity(8 * (d.arc_count() + 1));
    let _ = writeln!(s, "{} {}", d.n(), d.arc_count());
    for &(u, v) in d.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn read_digraph_file(path: &std::path::Path) -> Result<Digraph> {
    parse_digraph(&std::fs::read_to_string(path)?)
}

pub fn to_dot(d: &Digraph, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph {name} {{");
    for v in 0..d.n() {
        let _ = writeln!(s, "  {v};");
    }
    for &(u, v) in d.arcs() {
        let _ = writeln!(s, "  {u} -> {v};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_bit_exact() {
        let d = Digraph::from_arc_list(3, [(2, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(write_digraph(&d), "3 3\n0 1\n1 2\n2 0\n");
        assert_eq!(write_digraph(&Digraph::empty(2)), "2 0\n");
    }

    #[test]
    fn parse_round_trip() {
        let d = Digraph::complete(4);
        assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d);
    }

    fn parse_err_line(text: &str) -> usize {
        match parse_digraph(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_err_line("3 2\n0 1\n1 1\n"), 3);
        assert_eq!(parse_err_line("3 3\n0 1\n1 2\n0 1\n"), 4);
        assert_eq!(parse_err_line("3 1\n0 3\n"), 2);
        assert_eq!(parse_err_line("3 2\n0 1\n"), 3);
        assert_eq!(parse_err_line("3\n"), 1);
        assert_eq!(parse_err_line("3 1\n0 x\n"), 2);
        assert_eq!(parse_err_line("3 1\n0 1\n1 2\n"), 3);
        assert_eq!(parse_err_line(""), 1);
    }

    #[test]
    fn dot_lists_every_arc() {
        let dot = to_dot(&Digraph::complete(2), "K2");
        assert!(dot.contains("0 -> 1;") && dot.contains("1 -> 0;"));
    }
}
