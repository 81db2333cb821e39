//! Text format for totally coloured graphs.
//!
//! ```text
//! n <n> alpha <num>/<den>
//! <vertex colours: n characters from {R, B}>
//! <u> <v> <R|B>          one line per present edge, u < v
//! ```

use std::io::{BufRead, Write};

use num_rational::Ratio;

use super::{Color, GraphBuilder, TotalColoredGraph};
use crate::error::{Error, Result};

pub fn write_coloring<W: Write>(g: &TotalColoredGraph, mut out: W) -> Result<()> {
    let alpha = g.alpha();
    writeln!(out, "n {} alpha {}/{}", g.n(), alpha.numer(), alpha.denom())?;
    let colors: String = g.vertex_colors().iter().map(|c| c.as_char()).collect();
    writeln!(out, "{colors}")?;
    for (u, v, c) in g.edges() {
        writeln!(out, "{u} {v} {}", c.as_char())?;
    }
    out.flush()?;
    Ok(())
}

pub fn coloring_to_string(g: &TotalColoredGraph) -> String {
    let mut buf = Vec::new();
    write_coloring(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("coloring output is ASCII")
}

pub(crate) fn parse_ratio(s: &str, line: usize) -> Result<Ratio<u64>> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: u64 = num
        .parse()
        .map_err(|_| Error::parse(line, format!("bad numerator in {s:?}")))?;
    let den: u64 = den
        .parse()
        .map_err(|_| Error::parse(line, format!("bad denominator in {s:?}")))?;
    if den == 0 {
        return Err(Error::parse(line, "zero denominator"));
    }
    Ok(Ratio::new(num, den))
}

pub fn read_coloring<R: BufRead>(input: R) -> Result<TotalColoredGraph> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let header = header?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, alpha) = match fields.as_slice() {
        ["n", n, "alpha", alpha] => {
            let n: usize = n
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad vertex count {n:?}")))?;
            (n, parse_ratio(alpha, ln)?)
        }
        _ => return Err(Error::parse(ln, "expected `n <n> alpha <num>/<den>`")),
    };

    let (ln, colors) = lines
        .next()
        .ok_or_else(|| Error::parse(2, "missing vertex colour line"))?;
    let colors = colors?;
    let colors = colors.trim();
    if colors.chars().count() != n {
        return Err(Error::parse(
            ln,
            format!("expected {n} vertex colours, found {}", colors.chars().count()),
        ));
    }
    let vertex_colors = colors
        .chars()
        .map(|c| Color::from_char(c).ok_or_else(|| Error::parse(ln, format!("bad colour {c:?}"))))
        .collect::<Result<Vec<_>>>()?;

    let mut builder = GraphBuilder::new(vertex_colors).alpha(alpha);
    for (ln, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [u, v, c] = parts.as_slice() else {
            return Err(Error::parse(ln, "expected `u v R|B`"));
        };
        let u: usize = u.parse().map_err(|_| Error::parse(ln, "bad vertex"))?;
        let v: usize = v.parse().map_err(|_| Error::parse(ln, "bad vertex"))?;
        if u >= v {
            return Err(Error::parse(ln, format!("edge {u} {v} must satisfy u < v")));
        }
        if u == 0 || v > n {
            return Err(Error::parse(ln, format!("vertex out of range 1..={n}")));
        }
        let color = match *c {
            "R" => Color::Red,
            "B" => Color::Blue,
            other => return Err(Error::parse(ln, format!("bad edge colour {other:?}"))),
        };
        builder
            .set_edge(u, v, color)
            .map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    builder.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphmodel::complete_random_coloring;

    #[test]
    fn round_trip() {
        let g = complete_random_coloring(12, 5).unwrap();
        let text = coloring_to_string(&g);
        let back = read_coloring(text.as_bytes()).unwrap();
        assert_eq!(g, back);
        assert_eq!(coloring_to_string(&back), text);
    }

    #[test]
    fn small_file() {
        let text = "n 3 alpha 0/1\nRBR\n1 2 R\n1 3 B\n2 3 B\n";
        let g = read_coloring(text.as_bytes()).unwrap();
        assert_eq!(g.edge_color(1, 3), Some(Color::Blue));
        assert_eq!(g.vertex_color(2), Color::Blue);
        assert_eq!(coloring_to_string(&g), text);
    }

    #[test]
    fn rejects_malformed() {
        let dup = "n 3 alpha 0/1\nRBR\n1 2 R\n1 2 B\n1 3 B\n2 3 B\n";
        assert!(read_coloring(dup.as_bytes()).is_err());
        let oob = "n 2 alpha 0/1\nRB\n1 3 R\n";
        assert!(read_coloring(oob.as_bytes()).is_err());
        let order = "n 2 alpha 0/1\nRB\n2 1 R\n";
        assert!(read_coloring(order.as_bytes()).is_err());
        let short = "n 3 alpha 0/1\nRB\n";
        assert!(read_coloring(short.as_bytes()).is_err());
        // missing edge with alpha = 0
        let incomplete = "n 3 alpha 0/1\nRBR\n1 2 R\n1 3 B\n";
        assert!(read_coloring(incomplete.as_bytes()).is_err());
        let allowed = "n 3 alpha 1/3\nRBR\n1 2 R\n1 3 B\n";
        assert!(read_coloring(allowed.as_bytes()).is_ok());
    }
}
