//! Plain-text ideal files.
//!
//! ```text
//! # construct: S(1,2)
//! # seed: 0
//! ring r=5 field=Fp:32003
//! x0*x3 - x1^2
//! ...
//! ```
//!
//! Lines starting with `#` are comments, the first other line is the ring
//! header, every later non-blank line is one generator.

use std::fmt::Write as _;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polycore::{parse_polynomial, Field, FieldSpec, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    /// Comment lines without the leading `# `.
    pub comments: Vec<String>,
    pub nvars: usize,
    pub field: FieldSpec,
    pub generators: Vec<String>,
}

impl IdealFile {
    pub fn from_ideal<F: Field>(ideal: &Ideal<F>, comments: Vec<String>) -> Self {
        let ring = ideal.ring();
        IdealFile {
            comments,
            nvars: ring.nvars(),
            field: ring.field().spec(),
            generators: ideal.generators().iter().map(|g| ring.format(g)).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut comments = Vec::new();
        let mut header = None;
        let mut generators = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            } else if line.is_empty() {
                continue;
            } else if header.is_none() {
                header = Some(parse_header(line)?);
            } else {
                generators.push(line.to_string());
            }
        }
        let (nvars, field) = header.ok_or_else(|| AlgebraError::IdealFile("missing 'ring r=.. field=..' header".into()))?;
        Ok(IdealFile { comments, nvars, field, generators })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "ring r={} field={}", self.nvars, self.field.header());
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out
    }

    /// Reads the generators over `field`, which may differ from the header's
    /// field (coefficients are reduced or kept exact as needed).
    pub fn to_ideal<F: Field>(&self, field: F) -> Result<Ideal<F>> {
        let ring = Ring::new(field, self.nvars)?;
        let gens = self
            .generators
            .iter()
            .map(|g| parse_polynomial(g, &ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// Value of a `key: value` comment.
    pub fn comment_value(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| c.strip_prefix(key)?.strip_prefix(':').map(str::trim))
    }
}

fn parse_header(line: &str) -> Result<(usize, FieldSpec)> {
    let bad = || AlgebraError::IdealFile(format!("bad header '{line}', want 'ring r=<n> field=<QQ|Fp:p>'"));
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err(bad());
    }
    let mut nvars = None;
    let mut field = None;
    for w in words {
        match w.split_once('=') {
            Some(("r", v)) => nvars = Some(v.parse::<usize>().map_err(|_| bad())?),
            Some(("field", v)) => field = Some(v.parse::<FieldSpec>()?),
            _ => return Err(bad()),
        }
    }
    match (nvars, field) {
        (Some(n), Some(f)) if n > 0 => Ok((n, f)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{PrimeField, Rationals};

    #[test]
    fn round_trip() {
        let ring = Ring::new(Rationals, 4).unwrap();
        let i = Ideal::parse(ring, &["x0*x2 - x1^2", "1/2*x0*x3 - x1*x2", "x1*x3 - x2^2"]).unwrap();
        let file = IdealFile::from_ideal(&i, vec!["construct: test".into(), "seed: 3".into()]);
        let text = file.render();
        assert!(text.starts_with("# construct: test\n# seed: 3\nring r=4 field=QQ\n"));
        let back = IdealFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_ideal(Rationals).unwrap().generators(), i.generators());
        assert_eq!(back.comment_value("seed"), Some("3"));
        let modp = back.to_ideal(PrimeField::new(7).unwrap()).unwrap();
        assert_eq!(modp.generators().len(), 3);
    }

    #[test]
    fn headers() {
        assert!(IdealFile::parse("x0\n").is_err());
        assert!(IdealFile::parse("ring r=3\n").is_err());
        assert!(IdealFile::parse("ring r=0 field=QQ\n").is_err());
        assert!(IdealFile::parse("ring r=3 field=Fp:4\n").is_err());
        let f = IdealFile::parse("\n# c\nring r=3 field=Fp:101\n\nx0^2\n").unwrap();
        assert_eq!((f.nvars, f.field, f.generators.len()), (3, FieldSpec::Prime(101), 1));
        let empty = IdealFile::parse("ring r=2 field=QQ\n").unwrap();
        assert!(empty.to_ideal(Rationals).unwrap().is_zero());
        assert!(IdealFile::parse("ring r=2 field=QQ\nx5\n").unwrap().to_ideal(Rationals).is_err());
    }
}
