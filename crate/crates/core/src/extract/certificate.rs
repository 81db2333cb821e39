//! Forest certificate files:
//!
//! ```text
//! color R
//! edge 3 7
//! isolated 1
//! horizon 10 density 9/10
//! ```

use std::io::{BufRead, Write};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graphmodel::io::parse_ratio;
use crate::graphmodel::{Color, SimpleForest, TotalColoredGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct ForestCertificate {
    pub forest: SimpleForest,
    pub horizon: usize,
    pub density: Ratio<u64>,
}

impl ForestCertificate {
    pub fn new(forest: SimpleForest, horizon: usize) -> Result<Self> {
        let density = forest.density_at(horizon)?;
        Ok(ForestCertificate {
            forest,
            horizon,
            density,
        })
    }

    /// Validates the forest against `g` and recomputes the density.
    pub fn check(&self, g: &TotalColoredGraph) -> Result<()> {
        self.forest
            .validate(g)
            .map_err(|e| Error::invariant(format!("certificate forest is invalid: {e}")))?;
        if self.horizon > g.n() {
            return Err(Error::precondition(format!(
                "horizon {} exceeds n = {}",
                self.horizon,
                g.n()
            )));
        }
        let density = self.forest.density_at(self.horizon)?;
        if density != self.density {
            return Err(Error::invariant(format!(
                "claimed density {} but the forest has {density}",
                self.density
            )));
        }
        Ok(())
    }
}

pub fn write_certificate<W: Write>(cert: &ForestCertificate, mut out: W) -> Result<()> {
    writeln!(out, "color {}", cert.forest.color.as_char())?;
    for &(u, v) in &cert.forest.edges {
        writeln!(out, "edge {u} {v}")?;
    }
    for &v in &cert.forest.isolated {
        writeln!(out, "isolated {v}")?;
    }
    writeln!(
        out,
        "horizon {} density {}/{}",
        cert.horizon,
        cert.density.numer(),
        cert.density.denom()
    )?;
    Ok(())
}

fn number(line: usize, token: Option<&str>) -> Result<usize> {
    token
        .ok_or_else(|| Error::parse(line, "missing vertex"))?
        .parse()
        .map_err(|_| Error::parse(line, "expected a nonnegative integer"))
}

pub fn read_certificate<R: BufRead>(input: R) -> Result<ForestCertificate> {
    let mut color = None;
    let mut edges = Vec::new();
    let mut isolated = Vec::new();
    let mut tail = None;
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let no = idx + 1;
        let mut words = line.split_whitespace();
        let Some(head) = words.next() else { continue };
        if tail.is_some() {
            return Err(Error::parse(no, "content after the horizon line"));
        }
        match head {
            "color" if color.is_none() => {
                let c = words
                    .next()
                    .and_then(|w| {
                        let mut cs = w.chars();
                        let c = cs.next()?;
                        cs.next().is_none().then_some(c)
                    })
                    .and_then(Color::from_char)
                    .ok_or_else(|| Error::parse(no, "expected `color R` or `color B`"))?;
                color = Some(c);
            }
            _ if color.is_none() => return Err(Error::parse(no, "first line must be `color R|B`")),
            "edge" => {
                let u = number(no, words.next())?;
                let v = number(no, words.next())?;
                edges.push((u, v));
            }
            "isolated" => isolated.push(number(no, words.next())?),
            "horizon" => {
                let h = number(no, words.next())?;
                if words.next() != Some("density") {
                    return Err(Error::parse(no, "expected `horizon h density num/den`"));
                }
                let d = words
                    .next()
                    .ok_or_else(|| Error::parse(no, "missing density"))
                    .and_then(|w| parse_ratio(w, no))?;
                tail = Some((h, d));
            }
            other => return Err(Error::parse(no, format!("unknown record `{other}`"))),
        }
        if words.next().is_some() {
            return Err(Error::parse(no, "trailing tokens"));
        }
    }
    let color = color.ok_or_else(|| Error::parse(0, "empty certificate"))?;
    let (horizon, density) = tail.ok_or_else(|| Error::parse(0, "missing horizon line"))?;
    Ok(ForestCertificate {
        forest: SimpleForest {
            color,
            edges,
            isolated,
        },
        horizon,
        density,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ForestCertificate {
        ForestCertificate {
            forest: SimpleForest {
                color: Color::Blue,
                edges: vec![(1, 4), (2, 5)],
                isolated: vec![3],
            },
            horizon: 6,
            density: Ratio::new(5, 6),
        }
    }

    #[test]
    fn round_trip() {
        let mut buf = Vec::new();
        write_certificate(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("color B\nedge 1 4\n"));
        assert!(text.ends_with("horizon 6 density 5/6\n"));
        assert_eq!(read_certificate(&buf[..]).unwrap(), sample());
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "edge 1 2\n",
            "color X\nhorizon 1 density 1/1\n",
            "color R\nedge 1\nhorizon 1 density 1/1\n",
            "color R\nhorizon 1 density 1/0\n",
            "color R\nhorizon 2 density 1/2\nedge 1 2\n",
            "color R\nwat 3\nhorizon 1 density 1/1\n",
            "color R\nisolated 1 2\nhorizon 1 density 1/1\n",
        ] {
            assert!(read_certificate(bad.as_bytes()).is_err(), "{bad:?}");
        }
    }
}
