//! File format and expression syntax.
//!
//! Algebras travel as JSON objects with 1-based bracket entries:
//!
//! ```json
//! {
//!   "name": "heisenberg(3)",
//!   "dim": 3,
//!   "brackets": [ { "i": 1, "j": 2, "k": 3, "c": "1" } ]
//! }
//! ```
//!
//! Constants are rational strings "p" or "p/q". Unknown fields,
//! repeated entries (including the mirrored form (j, i, k)), i = j,
//! out-of-range indices, and malformed rationals are all rejected at
//! parse time. Zero constants are accepted and dropped. Export is
//! canonical: entries sorted with i < j, pretty-printed, trailing
//! newline, so export(parse(export(a))) is byte-identical.
//!
//! Class expressions use the same syntax the library prints:
//! `expr := ['+'|'-'] term (('+'|'-') term)*`,
//! `term := rational '*' monomial | monomial | rational`,
//! `monomial := 'e'INT ('^' 'e'INT)*`. The result must be
//! homogeneous; a bare rational is a degree-0 element.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exterior::ExteriorElement;
use crate::lie::LieAlgebra;
use crate::linalg::{format_rational, parse_rational, Rational};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFileJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub brackets: Vec<BracketEntryJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntryJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

pub fn algebra_from_json(text: &str) -> Result<LieAlgebra> {
    let file: AlgebraFileJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let parse_err = |location: String, message: String| Error::Parse { location, message };
    if file.dim < 1 {
        return Err(parse_err(
            "dim".into(),
            "dimension must be at least 1".into(),
        ));
    }
    let mut seen: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut raw: Vec<((usize, usize, usize), Rational)> = Vec::new();
    for (idx, entry) in file.brackets.iter().enumerate() {
        let loc = || format!("brackets[{idx}]");
        for (field, v) in [("i", entry.i), ("j", entry.j), ("k", entry.k)] {
            if v < 1 || v > file.dim {
                return Err(parse_err(
                    loc(),
                    format!("{field} = {v} is outside 1..={}", file.dim),
                ));
            }
        }
        if entry.i == entry.j {
            return Err(parse_err(
                loc(),
                format!("i = j = {} names no bracket; [x, x] = 0", entry.i),
            ));
        }
        let slot = (entry.i.min(entry.j), entry.i.max(entry.j), entry.k);
        if !seen.insert(slot) {
            return Err(parse_err(
                loc(),
                format!(
                    "duplicate bracket ({}, {}) -> {} (mirrored entries count)",
                    entry.i, entry.j, entry.k
                ),
            ));
        }
        let c = match parse_rational(&entry.c) {
            Ok(c) => c,
            Err(Error::Parse { message, .. }) => {
                return Err(parse_err(loc(), format!("bad constant {:?}: {message}", entry.c)))
            }
            Err(other) => return Err(other),
        };
        if c.is_zero() {
            continue;
        }
        raw.push(((entry.i, entry.j, entry.k), c));
    }
    LieAlgebra::new(file.name.unwrap_or_default(), file.dim, raw)
}

pub fn algebra_to_json(algebra: &LieAlgebra) -> String {
    let file = AlgebraFileJson {
        name: if algebra.name().is_empty() {
            None
        } else {
            Some(algebra.name().to_string())
        },
        dim: algebra.dim(),
        brackets: algebra
            .brackets()
            .map(|(&(i, j, k), c)| BracketEntryJson {
                i,
                j,
                k,
                c: format_rational(c),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("plain data serializes");
    out.push('\n');
    out
}

struct ExprParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ambient: usize,
}

impl<'a> ExprParser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            location: format!("byte {}", self.pos),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| self.err("integer literal too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        Ok(value)
    }

    fn parse_rational_token(&mut self) -> Result<Rational> {
        let numer = self.parse_uint()?;
        let denom = if self.eat(b'/') {
            let d = self.parse_uint()?;
            if d == 0 {
                return Err(self.err("denominator must be nonzero"));
            }
            d
        } else {
            1
        };
        Ok(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    fn parse_generator(&mut self) -> Result<ExteriorElement> {
        if !self.eat(b'e') {
            return Err(self.err("expected a generator like e1"));
        }
        let idx = self.parse_uint()? as usize;
        ExteriorElement::generator(self.ambient, idx).map_err(|_| {
            self.err(format!(
                "generator e{idx} is outside e1..e{}",
                self.ambient
            ))
        })
    }

    fn parse_monomial(&mut self) -> Result<ExteriorElement> {
        let mut acc = self.parse_generator()?;
        loop {
            self.skip_ws();
            let mark = self.pos;
            if !self.eat(b'^') {
                break;
            }
            self.skip_ws();
            if self.peek() != Some(b'e') {
                self.pos = mark;
                return Err(self.err("'^' must be followed by a generator"));
            }
            let next = self.parse_generator()?;
            acc = acc.wedge(&next)?;
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<ExteriorElement> {
        self.skip_ws();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let coeff = self.parse_rational_token()?;
                self.skip_ws();
                if self.eat(b'*') {
                    self.skip_ws();
                    let mono = self.parse_monomial()?;
                    Ok(mono.scale(&coeff))
                } else {
                    Ok(ExteriorElement::scalar(self.ambient, coeff))
                }
            }
            Some(b'e') => self.parse_monomial(),
            _ => Err(self.err("expected a term (rational, rational*monomial, or monomial)")),
        }
    }

    fn parse_expr(&mut self) -> Result<ExteriorElement> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let first = self.parse_term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            self.skip_ws();
            let negate = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                break;
            };
            let term = self.parse_term()?;
            acc = acc.add(&if negate { term.neg() } else { term })?;
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(acc)
    }
}

/// Parse a class expression over `e1..e{ambient}`. The element must be
/// homogeneous (terms can cancel to zero, which is accepted).
pub fn parse_class_expression(ambient: usize, input: &str) -> Result<ExteriorElement> {
    let mut parser = ExprParser {
        bytes: input.as_bytes(),
        pos: 0,
        ambient,
    };
    let elem = parser.parse_expr()?;
    if !elem.is_homogeneous() {
        return Err(Error::Parse {
            location: "expression".into(),
            message: "terms have mixed degrees; a class must be homogeneous".into(),
        });
    }
    Ok(elem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::{rat, ratio};

    #[test]
    fn parse_round_trips_catalog() {
        for a in catalog::entries() {
            let text = algebra_to_json(&a);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back, a, "{}", a.name());
            assert_eq!(algebra_to_json(&back), text, "{} bytes", a.name());
            assert!(text.ends_with('\n'));
        }
    }

    #[test]
    fn parse_accepts_mirrored_and_drops_zeros() {
        let text = r#"{
            "dim": 3,
            "brackets": [
                { "i": 2, "j": 1, "k": 3, "c": "-1" },
                { "i": 1, "j": 3, "k": 2, "c": "0" }
            ]
        }"#;
        let a = algebra_from_json(text).unwrap();
        assert_eq!(a, catalog::heisenberg(3).unwrap().with_name(""));
    }

    #[test]
    fn schema_violations_are_parse_errors() {
        let cases: Vec<(&str, &str)> = vec![
            (r#"{"dim": 0, "brackets": []}"#, "dim"),
            (
                r#"{"dim": 2, "brackets": [{"i": 1, "j": 1, "k": 2, "c": "1"}]}"#,
                "i = j",
            ),
            (
                r#"{"dim": 2, "brackets": [{"i": 1, "j": 3, "k": 2, "c": "1"}]}"#,
                "range",
            ),
            (
                r#"{"dim": 3, "brackets": [
                    {"i": 1, "j": 2, "k": 3, "c": "1"},
                    {"i": 2, "j": 1, "k": 3, "c": "-1"}
                ]}"#,
                "mirrored duplicate",
            ),
            (
                r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 2, "c": "1.5"}]}"#,
                "decimal constant",
            ),
            (
                r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 2, "c": "1/0"}]}"#,
                "zero denominator",
            ),
            (
                r#"{"dim": 2, "brackets": [], "extra": true}"#,
                "unknown field",
            ),
            (
                r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 2, "c": "1", "x": 0}]}"#,
                "unknown bracket field",
            ),
            (r#"not json"#, "not json"),
        ];
        for (text, what) in cases {
            match algebra_from_json(text) {
                Err(Error::Parse { .. }) => {}
                other => panic!("{what}: expected a parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn expression_basics() {
        let x = |i| ExteriorElement::generator(4, i).unwrap();
        let parsed = parse_class_expression(4, "e1^e2 - e3^e4").unwrap();
        let expected = x(1)
            .wedge(&x(2))
            .unwrap()
            .sub(&x(3).wedge(&x(4)).unwrap())
            .unwrap();
        assert_eq!(parsed, expected);

        let parsed = parse_class_expression(4, "3/2*e1 + e2").unwrap();
        let expected = x(1).scale(&ratio(3, 2)).add(&x(2)).unwrap();
        assert_eq!(parsed, expected);

        assert_eq!(
            parse_class_expression(4, "-e1").unwrap(),
            x(1).neg()
        );
        assert_eq!(
            parse_class_expression(4, "2").unwrap(),
            ExteriorElement::scalar(4, rat(2))
        );
        // reversed factors pick up the sign
        assert_eq!(
            parse_class_expression(4, "e2^e1").unwrap(),
            x(1).wedge(&x(2)).unwrap().neg()
        );
        // cancellation to zero is fine
        assert!(parse_class_expression(4, "e1 - e1").unwrap().is_zero());
        // whitespace tolerated
        assert_eq!(
            parse_class_expression(4, "  e1 ^ e2  +  e3^e4 ").unwrap(),
            x(1)
                .wedge(&x(2))
                .unwrap()
                .add(&x(3).wedge(&x(4)).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn expression_rejects() {
        for bad in [
            "",
            "e1 + ",
            "e1 +",
            "e9",
            "e0",
            "1/0",
            "e1 ^",
            "e1 ^ 2",
            "2 e1",
            "e1 e2",
            "(e1)",
            "e1 + e1^e2",
            "1.5*e1",
        ] {
            match parse_class_expression(4, bad) {
                Err(Error::Parse { .. }) => {}
                other => panic!("{bad:?}: expected a parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn expression_round_trips_display() {
        let x = |i| ExteriorElement::generator(4, i).unwrap();
        let samples = vec![
            ExteriorElement::zero(4),
            ExteriorElement::scalar(4, ratio(-7, 3)),
            x(1).scale(&ratio(3, 2)),
            x(1).wedge(&x(2)).unwrap().neg(),
            x(1)
                .wedge(&x(3))
                .unwrap()
                .add(&x(2).wedge(&x(4)).unwrap().scale(&rat(-2)))
                .unwrap(),
        ];
        for elem in samples {
            let text = elem.to_string();
            let back = parse_class_expression(4, &text).unwrap();
            assert_eq!(back, elem, "{text}");
        }
    }
}
