//! Problem files: a line-oriented text format and an equivalent JSON format.
//!
//! ```text
//! # comment
//! ring x y
//! I: x^3 x^2*y^4 x*y^5 y^7
//! J: x y
//! witness reduction: x^3 y^7
//! witness reduction J: x y
//! witness joint: x^3@I y@J
//! witness complete: (x^3,x) (y^7,y)
//! witness decomp 1,1: x^3@J y@I
//! ```

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use rees_core::{DecompositionTerm, Monomial, MonomialIdeal};
use serde::{Deserialize, Serialize};

pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn perr<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompWitness {
    pub target: (u32, u32),
    pub terms: Vec<DecompTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompTerm {
    pub monomial: Exponents,
    pub degree: (u32, u32),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witnesses {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Vec<Exponents>>,
    #[serde(
        default,
        rename = "reduction_J",
        skip_serializing_if = "Option::is_none"
    )]
    pub reduction_j: Option<Vec<Exponents>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint: Option<(Exponents, Exponents)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<Vec<(Exponents, Exponents)>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decomp: Vec<DecompWitness>,
}

impl Witnesses {
    pub fn is_empty(&self) -> bool {
        *self == Witnesses::default()
    }
}

/// A parsed problem. Generator lists are kept exactly as written; the
/// ideals themselves are built on demand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub vars: Vec<String>,
    #[serde(rename = "I")]
    pub i: Vec<Exponents>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<Exponents>>,
    #[serde(default, skip_serializing_if = "Witnesses::is_empty")]
    pub witnesses: Witnesses,
}

impl ProblemSpec {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn ideal_i(&self) -> MonomialIdeal {
        to_ideal(self.nvars(), &self.i)
    }

    /// `J`, or the unit ideal when none was declared.
    pub fn ideal_j(&self) -> MonomialIdeal {
        match &self.j {
            Some(j) => to_ideal(self.nvars(), j),
            None => MonomialIdeal::unit(self.nvars()),
        }
    }

    pub fn has_j(&self) -> bool {
        self.j.is_some()
    }

    pub fn decomposition_terms(w: &DecompWitness) -> Vec<DecompositionTerm> {
        w.terms
            .iter()
            .map(|t| DecompositionTerm::new(Monomial::new(t.monomial.clone()), t.degree))
            .collect()
    }

    /// Checks variable names and exponent-vector lengths.
    pub fn validate(&self) -> Result<(), ParseError> {
        let mut seen = HashSet::new();
        for (k, v) in self.vars.iter().enumerate() {
            if !is_identifier(v) {
                return perr(1, k + 1, format!("invalid variable name {v:?}"));
            }
            if !seen.insert(v) {
                return perr(1, k + 1, format!("duplicate variable {v:?}"));
            }
        }
        if self.vars.is_empty() {
            return perr(1, 1, "no variables declared");
        }
        let n = self.nvars();
        let check = |e: &Exponents, what: &str| -> Result<(), ParseError> {
            if e.len() != n {
                return perr(
                    1,
                    1,
                    format!(
                        "{what}: exponent vector {e:?} has length {}, expected {n}",
                        e.len()
                    ),
                );
            }
            Ok(())
        };
        self.i.iter().try_for_each(|e| check(e, "I"))?;
        self.j.iter().flatten().try_for_each(|e| check(e, "J"))?;
        let w = &self.witnesses;
        w.reduction
            .iter()
            .flatten()
            .try_for_each(|e| check(e, "witness reduction"))?;
        w.reduction_j
            .iter()
            .flatten()
            .try_for_each(|e| check(e, "witness reduction J"))?;
        if let Some((a, b)) = &w.joint {
            check(a, "witness joint")?;
            check(b, "witness joint")?;
        }
        for (a, b) in w.complete.iter().flatten() {
            check(a, "witness complete")?;
            check(b, "witness complete")?;
        }
        for d in &w.decomp {
            d.terms
                .iter()
                .try_for_each(|t| check(&t.monomial, "witness decomp"))?;
        }
        Ok(())
    }
}

fn to_ideal(n: usize, gens: &[Exponents]) -> MonomialIdeal {
    // lengths are validated at parse time
    MonomialIdeal::minimalize(n, gens.iter().map(|e| Monomial::new(e.clone())))
        .expect("validated exponent vectors")
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses either format: a document whose first non-blank character is `{`
/// is JSON, anything else is the text format.
pub fn parse(input: &str) -> Result<ProblemSpec, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn parse_json(input: &str) -> Result<ProblemSpec, ParseError> {
    let spec: ProblemSpec = serde_json::from_str(input).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    /// 1-based column of a subslice of this line.
    fn column_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    fn err<T>(&self, part: &str, message: impl Into<String>) -> Result<T, ParseError> {
        perr(self.number, self.column_of(part), message)
    }
}

/// Whitespace-separated tokens as subslices of `s`.
fn tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c.is_whitespace())
        .filter(|t| !t.is_empty())
}

struct TextParser<'a> {
    vars: Vec<String>,
    line: Line<'a>,
}

impl<'a> TextParser<'a> {
    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    fn monomial(&self, tok: &'a str) -> Result<Exponents, ParseError> {
        let mut e = vec![0u32; self.vars.len()];
        if tok == "1" {
            return Ok(e);
        }
        let mut rest = tok;
        loop {
            let end = rest.find('*').unwrap_or(rest.len());
            let factor = &rest[..end];
            if factor.is_empty() {
                return self.line.err(factor, format!("empty factor in {tok:?}"));
            }
            let (name, power) = match factor.find('^') {
                Some(p) => (&factor[..p], Some(&factor[p + 1..])),
                None => (factor, None),
            };
            let idx = self
                .var_index(name)
                .ok_or(())
                .or_else(|_| self.line.err(name, format!("unknown variable {name:?}")))?;
            let k = match power {
                None => 1,
                Some(p) if p.starts_with('-') => {
                    return self.line.err(p, format!("negative exponent in {tok:?}"));
                }
                Some(p) => match p.parse::<u32>() {
                    Ok(k) => k,
                    Err(_) => return self.line.err(p, format!("invalid exponent {p:?}")),
                },
            };
            e[idx] = e[idx]
                .checked_add(k)
                .ok_or(())
                .or_else(|_| self.line.err(factor, "exponent overflow"))?;
            if end == rest.len() {
                return Ok(e);
            }
            rest = &rest[end + 1..];
        }
    }

    fn monomials(&self, body: &'a str) -> Result<Vec<Exponents>, ParseError> {
        tokens(body).map(|t| self.monomial(t)).collect()
    }

    /// `mon@I`, `mon@J` or `mon@a,b`.
    fn tagged(&self, tok: &'a str) -> Result<(Exponents, (u32, u32)), ParseError> {
        let Some(at) = tok.rfind('@') else {
            return self
                .line
                .err(tok, format!("expected <monomial>@<degree> in {tok:?}"));
        };
        let (mon, tag) = (&tok[..at], &tok[at + 1..]);
        let degree = match tag {
            "I" => (1, 0),
            "J" => (0, 1),
            _ => self.degree(tag)?,
        };
        Ok((self.monomial(mon)?, degree))
    }

    fn degree(&self, tag: &'a str) -> Result<(u32, u32), ParseError> {
        let parts: Vec<&str> = tag.split(',').collect();
        if let [a, b] = parts[..]
            && let (Ok(a), Ok(b)) = (a.parse(), b.parse())
        {
            return Ok((a, b));
        }
        self.line
            .err(tag, format!("expected a bidegree a,b, found {tag:?}"))
    }

    /// `(m1,m2)` pairs.
    fn pairs(&self, body: &'a str) -> Result<Vec<(Exponents, Exponents)>, ParseError> {
        tokens(body)
            .map(|t| {
                let inner = t
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or(())
                    .or_else(|_| {
                        self.line
                            .err(t, format!("expected (<mon>,<mon>), found {t:?}"))
                    })?;
                let Some((a, b)) = inner.split_once(',') else {
                    return self
                        .line
                        .err(t, format!("expected (<mon>,<mon>), found {t:?}"));
                };
                Ok((self.monomial(a)?, self.monomial(b)?))
            })
            .collect()
    }
}

pub fn parse_text(input: &str) -> Result<ProblemSpec, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut i: Option<Vec<Exponents>> = None;
    let mut j: Option<Vec<Exponents>> = None;
    let mut witnesses = Witnesses::default();

    for (idx, raw) in input.lines().enumerate() {
        let text = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let line = Line {
            number: idx + 1,
            text,
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }

        if let Some(rest) = trimmed.strip_prefix("ring") {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return line.err(trimmed, "unknown directive");
            }
            if vars.is_some() {
                return line.err(trimmed, "ring declared twice");
            }
            let mut names = Vec::new();
            for t in tokens(rest) {
                if !is_identifier(t) {
                    return line.err(t, format!("invalid variable name {t:?}"));
                }
                if names.iter().any(|n| n == t) {
                    return line.err(t, format!("duplicate variable {t:?}"));
                }
                names.push(t.to_string());
            }
            if names.is_empty() {
                return line.err(trimmed, "ring declares no variables");
            }
            vars = Some(names);
            continue;
        }

        let Some((head, body)) = trimmed.split_once(':') else {
            return line.err(trimmed, "expected `ring`, `I:`, `J:` or `witness ...:`");
        };
        let Some(names) = vars.clone() else {
            return line.err(trimmed, "`ring` must come first");
        };
        let p = TextParser { vars: names, line };
        let head_words: Vec<&str> = tokens(head).collect();
        match head_words[..] {
            ["I"] => {
                if i.is_some() {
                    return p.line.err(head, "I declared twice");
                }
                i = Some(p.monomials(body)?);
            }
            ["J"] => {
                if j.is_some() {
                    return p.line.err(head, "J declared twice");
                }
                j = Some(p.monomials(body)?);
            }
            ["witness", "reduction"] => witnesses.reduction = Some(p.monomials(body)?),
            ["witness", "reduction", "J"] => witnesses.reduction_j = Some(p.monomials(body)?),
            ["witness", "joint"] => {
                let toks: Vec<&str> = tokens(body).collect();
                let [a, b] = toks[..] else {
                    return p.line.err(body, "expected <mon>@I <mon>@J");
                };
                let (x, dx) = p.tagged(a)?;
                let (y, dy) = p.tagged(b)?;
                if dx != (1, 0) || dy != (0, 1) {
                    return p.line.err(body, "expected <mon>@I <mon>@J");
                }
                witnesses.joint = Some((x, y));
            }
            ["witness", "complete"] => witnesses.complete = Some(p.pairs(body)?),
            ["witness", "decomp", tag] => {
                let target = p.degree(tag)?;
                let terms = tokens(body)
                    .map(|t| {
                        p.tagged(t)
                            .map(|(monomial, degree)| DecompTerm { monomial, degree })
                    })
                    .collect::<Result<_, _>>()?;
                witnesses.decomp.push(DecompWitness { target, terms });
            }
            _ => {
                return p
                    .line
                    .err(head, format!("unknown directive {:?}", head.trim()));
            }
        }
    }

    let Some(vars) = vars else {
        return perr(1, 1, "missing `ring` line");
    };
    let Some(i) = i else {
        return perr(input.lines().count().max(1), 1, "missing `I:` line");
    };
    Ok(ProblemSpec {
        vars,
        i,
        j,
        witnesses,
    })
}

struct Mono<'a>(&'a [String], &'a Exponents);

impl fmt::Display for Mono<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = Monomial::new(self.1.clone());
        write!(f, "{}", m.display_with(self.0))
    }
}

fn degree_tag((a, b): (u32, u32)) -> String {
    match (a, b) {
        (1, 0) => "I".into(),
        (0, 1) => "J".into(),
        _ => format!("{a},{b}"),
    }
}

/// Renders the text format; `parse_text(&emit_text(s)) == s`.
pub fn emit_text(spec: &ProblemSpec) -> String {
    let v = &spec.vars;
    let list = |gens: &[Exponents]| {
        gens.iter()
            .map(|e| format!(" {}", Mono(v, e)))
            .collect::<String>()
    };
    let mut out = String::new();
    let _ = writeln!(out, "ring {}", v.join(" "));
    let _ = writeln!(out, "I:{}", list(&spec.i));
    if let Some(j) = &spec.j {
        let _ = writeln!(out, "J:{}", list(j));
    }
    let w = &spec.witnesses;
    if let Some(r) = &w.reduction {
        let _ = writeln!(out, "witness reduction:{}", list(r));
    }
    if let Some(r) = &w.reduction_j {
        let _ = writeln!(out, "witness reduction J:{}", list(r));
    }
    if let Some((x, y)) = &w.joint {
        let _ = writeln!(out, "witness joint: {}@I {}@J", Mono(v, x), Mono(v, y));
    }
    if let Some(pairs) = &w.complete {
        let body: String = pairs
            .iter()
            .map(|(a, b)| format!(" ({},{})", Mono(v, a), Mono(v, b)))
            .collect();
        let _ = writeln!(out, "witness complete:{body}");
    }
    for d in &w.decomp {
        let body: String = d
            .terms
            .iter()
            .map(|t| format!(" {}@{}", Mono(v, &t.monomial), degree_tag(t.degree)))
            .collect();
        let _ = writeln!(out, "witness decomp {},{}:{body}", d.target.0, d.target.1);
    }
    out
}

pub fn emit_json(spec: &ProblemSpec) -> String {
    serde_json::to_string(spec).expect("problem specs always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "ring x y\nI: x^3 x^2*y^4 x*y^5 y^7\nJ: x y\n";

    #[test]
    fn text_and_json_agree() {
        let a = parse(TEXT).unwrap();
        let b =
            parse(r#"{"vars":["x","y"],"I":[[3,0],[2,4],[1,5],[0,7]],"J":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.ideal_i().colength().unwrap(), 16);
        assert_eq!(a.ideal_j(), MonomialIdeal::maximal(2));
    }

    #[test]
    fn negative_exponent_is_reported_with_position() {
        let err = parse("ring x y\nI: x^-1").unwrap_err();
        assert_eq!((err.line, err.column), (2, 6));
        assert!(err.message.contains("negative"));
    }

    #[test]
    fn unknown_variable() {
        let err = parse("ring x y\nI: x z^2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 6));
        assert!(err.message.contains("\"z\""));
    }

    #[test]
    fn structural_errors() {
        assert!(parse("I: x").unwrap_err().message.contains("ring"));
        assert!(parse("ring x\n").unwrap_err().message.contains("I:"));
        assert!(
            parse("ring x x\nI: x")
                .unwrap_err()
                .message
                .contains("duplicate")
        );
        assert!(
            parse("ring x\nI: x\nI: x")
                .unwrap_err()
                .message
                .contains("twice")
        );
        assert!(
            parse("ring x\nI: x\nK: x")
                .unwrap_err()
                .message
                .contains("unknown directive")
        );
        assert!(parse(r#"{"vars":["x"],"I":[[1,2]]}"#).is_err());
        assert!(parse(r#"{"vars":["x"],"I":[[1]],"K":[]}"#).is_err());
    }

    #[test]
    fn comments_unit_and_witnesses() {
        let text = "# header\nring x y z\nI: 1 x*z # trailing\nwitness joint: x@I y^2@J\n\
                    witness complete: (x,z) (y,y)\nwitness decomp 1,1: x@I z@0,1\n";
        let s = parse(text).unwrap();
        assert_eq!(s.i, vec![vec![0, 0, 0], vec![1, 0, 1]]);
        assert_eq!(s.witnesses.joint, Some((vec![1, 0, 0], vec![0, 2, 0])));
        assert_eq!(s.witnesses.complete.as_ref().unwrap().len(), 2);
        assert_eq!(s.witnesses.decomp[0].target, (1, 1));
        assert_eq!(s.witnesses.decomp[0].terms[1].degree, (0, 1));
        assert_eq!(parse(&emit_text(&s)).unwrap(), s);
        assert_eq!(parse(&emit_json(&s)).unwrap(), s);
    }

    #[test]
    fn repeated_factors_accumulate() {
        let s = parse("ring x y\nI: x*x^2*y").unwrap();
        assert_eq!(s.i, vec![vec![3, 1]]);
    }
}
