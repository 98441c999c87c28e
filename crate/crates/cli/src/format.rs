//! Text formats: EDGE files for graphs, SCRIPT files for construction
//! scripts, and the decimal weight convention shared by both.
//!
//! Weights travel as optionally signed decimals with at most six fractional
//! digits and live internally as integers scaled by a million, so every
//! computation stays exact and printing trims back to the shortest decimal.

use thiserror::Error;

use spcut_core::graph::{GraphError, Multigraph, Weight};
use spcut_core::sp::{SpOp, SpScript};

/// Internal integer units per written weight unit.
pub const SCALE: Weight = 1_000_000;

const MAX_FRACTION: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightParseError {
    #[error("not a decimal number")]
    Malformed,
    #[error("more than {MAX_FRACTION} fractional digits")]
    TooPrecise,
    #[error("weight out of range")]
    OutOfRange,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: self loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: more than {MAX_FRACTION} fractional digits")]
    WeightPrecisionExceeded { line: usize },
    #[error("line {line}: edge {edge} does not exist at this point")]
    BadEdgeRef { line: usize, edge: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads a decimal weight into scaled integer units.
pub fn parse_weight(text: &str) -> Result<Weight, WeightParseError> {
    let (negative, rest) = match text.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(WeightParseError::Malformed);
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(WeightParseError::Malformed);
    }
    if frac_part.len() > MAX_FRACTION {
        return Err(WeightParseError::TooPrecise);
    }
    let mut value: Weight = 0;
    for b in int_part.bytes() {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add((b - b'0') as Weight))
            .ok_or(WeightParseError::OutOfRange)?;
    }
    value = value
        .checked_mul(SCALE)
        .ok_or(WeightParseError::OutOfRange)?;
    let mut frac: Weight = 0;
    for b in frac_part.bytes() {
        frac = frac * 10 + (b - b'0') as Weight;
    }
    frac *= 10_i64.pow((MAX_FRACTION - frac_part.len()) as u32);
    value = value
        .checked_add(frac)
        .ok_or(WeightParseError::OutOfRange)?;
    Ok(if negative { -value } else { value })
}

/// Prints a scaled weight as the shortest equal decimal.
pub fn format_weight(w: Weight) -> String {
    let sign = if w < 0 { "-" } else { "" };
    let mag = w.unsigned_abs();
    let whole = mag / SCALE.unsigned_abs();
    let frac = mag % SCALE.unsigned_abs();
    if frac == 0 {
        return format!("{sign}{whole}");
    }
    let digits = format!("{frac:06}");
    format!("{sign}{whole}.{}", digits.trim_end_matches('0'))
}

fn want_token<'a>(
    tok: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<&'a str, FormatError> {
    tok.next()
        .ok_or_else(|| parse_err(line, format!("missing {what}")))
}

fn want_usize<'a>(
    tok: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<usize, FormatError> {
    want_token(tok, line, what)?
        .parse()
        .map_err(|_| parse_err(line, format!("{what} is not a number")))
}

fn want_weight<'a>(
    tok: &mut impl Iterator<Item = &'a str>,
    line: usize,
    what: &str,
) -> Result<Weight, FormatError> {
    let raw = want_token(tok, line, what)?;
    parse_weight(raw).map_err(|e| match e {
        WeightParseError::TooPrecise => FormatError::WeightPrecisionExceeded { line },
        other => parse_err(line, format!("{what}: {other}")),
    })
}

fn want_end<'a>(
    tok: &mut impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<(), FormatError> {
    match tok.next() {
        None => Ok(()),
        Some(extra) => Err(parse_err(line, format!("unexpected `{extra}`"))),
    }
}

/// EDGE format: comment lines `c ...`, one `p edge <n> <m>` header, then
/// `m` lines `e <u> <v> <w>` with 0-based vertices. Blank lines and CRLF
/// endings are tolerated; edge ids follow file order.
pub fn parse_graph_file(text: &str) -> Result<Multigraph, FormatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(usize, usize, Weight)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        let mut tok = s.split_whitespace();
        match tok.next().expect("nonempty line has a first token") {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                if want_token(&mut tok, line, "problem kind")? != "edge" {
                    return Err(parse_err(line, "expected `p edge <n> <m>`"));
                }
                let n = want_usize(&mut tok, line, "vertex count")?;
                let m = want_usize(&mut tok, line, "edge count")?;
                want_end(&mut tok, line)?;
                header = Some((line, n, m));
            }
            "e" => {
                let (_, n, m) = header
                    .ok_or_else(|| parse_err(line, "edge before the problem line"))?;
                let u = want_usize(&mut tok, line, "endpoint")?;
                let v = want_usize(&mut tok, line, "endpoint")?;
                let w = want_weight(&mut tok, line, "weight")?;
                want_end(&mut tok, line)?;
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("vertex beyond {}", n - 1)));
                }
                if u == v {
                    return Err(FormatError::SelfLoop { line, vertex: u });
                }
                if edges.len() == m {
                    return Err(parse_err(line, "more edges than declared"));
                }
                edges.push((u, v, w));
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    let (p_line, n, m) = header.ok_or_else(|| parse_err(1, "missing `p edge` line"))?;
    if edges.len() != m {
        return Err(parse_err(
            p_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Multigraph::build(n, &edges)?)
}

/// Inverse of [`parse_graph_file`] up to comments and blank lines.
pub fn print_graph(g: &Multigraph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e.u, e.v, format_weight(e.weight)));
    }
    out
}

/// SCRIPT format: a `base <w>` line, then `s <edge> <w1> <w2>` for series
/// splits and `p <edge> <w>` for parallel adds. Edge ids count up from 0 in
/// creation order (a split mints the left edge first); references to ids
/// not yet minted are rejected here, references to consumed ids at replay.
pub fn parse_script_file(text: &str) -> Result<SpScript, FormatError> {
    let mut base: Option<Weight> = None;
    let mut ops = Vec::new();
    let mut next_id = 1usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        let mut tok = s.split_whitespace();
        let tag = tok.next().expect("nonempty line has a first token");
        if tag == "c" {
            continue;
        }
        if base.is_none() {
            if tag != "base" {
                return Err(parse_err(line, "expected `base <w>` first"));
            }
            base = Some(want_weight(&mut tok, line, "base weight")?);
            want_end(&mut tok, line)?;
            continue;
        }
        match tag {
            "s" => {
                let edge = want_usize(&mut tok, line, "edge id")?;
                let left = want_weight(&mut tok, line, "left weight")?;
                let right = want_weight(&mut tok, line, "right weight")?;
                want_end(&mut tok, line)?;
                if edge >= next_id {
                    return Err(FormatError::BadEdgeRef { line, edge });
                }
                ops.push(SpOp::SeriesSplit { edge, left, right });
                next_id += 2;
            }
            "p" => {
                let edge = want_usize(&mut tok, line, "edge id")?;
                let weight = want_weight(&mut tok, line, "weight")?;
                want_end(&mut tok, line)?;
                if edge >= next_id {
                    return Err(FormatError::BadEdgeRef { line, edge });
                }
                ops.push(SpOp::ParallelAdd { edge, weight });
                next_id += 1;
            }
            other => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(SpScript {
        base_weight: base.ok_or_else(|| parse_err(1, "missing `base <w>` line"))?,
        ops,
    })
}

/// Inverse of [`parse_script_file`] up to comments and blank lines.
pub fn print_script(script: &SpScript) -> String {
    let mut out = format!("base {}\n", format_weight(script.base_weight));
    for op in &script.ops {
        match *op {
            SpOp::SeriesSplit { edge, left, right } => {
                out.push_str(&format!(
                    "s {edge} {} {}\n",
                    format_weight(left),
                    format_weight(right)
                ));
            }
            SpOp::ParallelAdd { edge, weight } => {
                out.push_str(&format!("p {edge} {}\n", format_weight(weight)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_round_trip() {
        for text in ["0", "5", "-5", "0.5", "-0.000001", "123.456789", "99"] {
            let w = parse_weight(text).unwrap();
            assert_eq!(format_weight(w), text.trim_start_matches('+'));
        }
        assert_eq!(parse_weight("5").unwrap(), 5 * SCALE);
        assert_eq!(parse_weight("+2.5").unwrap(), 2_500_000);
        assert_eq!(parse_weight("-.25").unwrap(), -250_000);
        assert_eq!(format_weight(5_000_000), "5");
        assert_eq!(format_weight(-2_500_000), "-2.5");
    }

    #[test]
    fn weight_rejections() {
        assert_eq!(parse_weight("abc"), Err(WeightParseError::Malformed));
        assert_eq!(parse_weight("1..2"), Err(WeightParseError::Malformed));
        assert_eq!(parse_weight(""), Err(WeightParseError::Malformed));
        assert_eq!(parse_weight("."), Err(WeightParseError::Malformed));
        assert_eq!(parse_weight("1.0000001"), Err(WeightParseError::TooPrecise));
        assert_eq!(
            parse_weight("99999999999999999999"),
            Err(WeightParseError::OutOfRange)
        );
    }

    #[test]
    fn graph_files_parse() {
        let g = parse_graph_file("p edge 3 3\ne 0 1 1\ne 0 2 2\ne 2 1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        let dump: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
        assert_eq!(
            dump,
            vec![(0, 1, SCALE), (0, 2, 2 * SCALE), (2, 1, 3 * SCALE)]
        );

        let crlf = "c comment\r\n\r\np edge 2 1\r\ne 0 1 5\r\n";
        let single = parse_graph_file(crlf).unwrap();
        assert_eq!((single.n(), single.m()), (2, 1));
        assert_eq!(single.edges()[0].weight, 5 * SCALE);
    }

    #[test]
    fn graph_file_rejections() {
        assert!(matches!(
            parse_graph_file("p edge 2 1\ne 0 0 1\n"),
            Err(FormatError::SelfLoop { line: 2, vertex: 0 })
        ));
        assert!(matches!(
            parse_graph_file("e 0 1 1\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph_file("p edge 2 2\ne 0 1 1\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph_file("p edge 2 1\ne 0 1 1.2345678\n"),
            Err(FormatError::WeightPrecisionExceeded { line: 2 })
        ));
        assert!(matches!(
            parse_graph_file("p edge 2 1\ne 0 5 1\n"),
            Err(FormatError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn graph_print_round_trips() {
        let text = "p edge 4 5\ne 0 1 1.5\ne 0 2 2\ne 2 1 3\ne 2 3 0.25\ne 3 1 -7\n";
        let g = parse_graph_file(text).unwrap();
        assert_eq!(print_graph(&g), text);
    }

    #[test]
    fn script_files_parse() {
        let script = parse_script_file("base 1\np 0 1\ns 1 2 3\n").unwrap();
        assert_eq!(script.base_weight, SCALE);
        assert_eq!(
            script.ops,
            vec![
                SpOp::ParallelAdd {
                    edge: 0,
                    weight: SCALE
                },
                SpOp::SeriesSplit {
                    edge: 1,
                    left: 2 * SCALE,
                    right: 3 * SCALE
                },
            ]
        );

        let bare = parse_script_file("base 7\n").unwrap();
        assert_eq!(bare.base_weight, 7 * SCALE);
        assert!(bare.ops.is_empty());
    }

    #[test]
    fn script_file_rejections() {
        assert!(matches!(
            parse_script_file("s 5 1 1\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_script_file(""),
            Err(FormatError::Parse { line: 1, .. })
        ));
        assert_eq!(
            parse_script_file("base 1\np 3 1\n"),
            Err(FormatError::BadEdgeRef { line: 2, edge: 3 })
        );
        // A split mints two ids, so the next line may reference both.
        assert!(parse_script_file("base 1\ns 0 1 1\np 2 1\n").is_ok());
        assert_eq!(
            parse_script_file("base 1\ns 0 1 1\np 3 1\n"),
            Err(FormatError::BadEdgeRef { line: 3, edge: 3 })
        );
    }

    #[test]
    fn script_print_round_trips() {
        let text = "base -1.5\ns 0 2 3\np 1 0.125\n";
        let script = parse_script_file(text).unwrap();
        assert_eq!(print_script(&script), text);
    }
}
