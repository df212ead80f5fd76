//! Line-oriented text format for Floer data.
//!
//! ```text
//! # comment
//! [kind]
//! homology_sphere
//! [generators]
//! rho0 0
//! rho4 4
//! [differential]
//! [u]
//! rho4 rho0 2
//! [delta]
//! [delta_prime]
//! rho4 1
//! ```
//!
//! Matrix entries are `from to value`, meaning the image of `from` has
//! coefficient `value` on `to`. Vector entries are `generator value`.
//! Values are integers or `p/q`; no decimal forms are accepted.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{validate, FloerData, Generator, GradedComplex, Kind};
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational};

const SECTIONS: [&str; 6] = [
    "kind",
    "generators",
    "differential",
    "u",
    "delta",
    "delta_prime",
];

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `-?digits` or `-?digits/digits` with a nonzero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if !all_digits(num) || !all_digits(den) {
        return None;
    }
    let mut n = BigInt::from_str(num).ok()?;
    let d = BigInt::from_str(den).ok()?;
    if d.is_zero() {
        return None;
    }
    if s.starts_with('-') {
        n = -n;
    }
    Some(Rational::new(n, d))
}

pub fn serialize(d: &FloerData) -> String {
    let names: Vec<&str> = d.generators().iter().map(|g| g.name.as_str()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "[kind]\n{}", d.kind.name());
    out.push_str("[generators]\n");
    for g in d.generators() {
        let _ = writeln!(out, "{} {}", g.name, g.grading);
    }
    let matrix = |out: &mut String, title: &str, m: &RatMatrix| {
        let _ = writeln!(out, "[{title}]");
        let mut entries: Vec<(usize, usize, &Rational)> = m.iter().collect();
        entries.sort_by_key(|&(i, j, _)| (j, i));
        for (i, j, v) in entries {
            let _ = writeln!(out, "{} {} {}", names[j], names[i], format_rational(v));
        }
    };
    matrix(&mut out, "differential", d.differential());
    matrix(&mut out, "u", &d.u);
    let vector = |out: &mut String, title: &str, v: &[Rational]| {
        let _ = writeln!(out, "[{title}]");
        for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let _ = writeln!(out, "{} {}", names[i], format_rational(x));
        }
    };
    vector(&mut out, "delta", &d.delta);
    vector(&mut out, "delta_prime", &d.delta_prime);
    out
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..pos],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct Entry {
    line: usize,
    tokens: Vec<(String, usize)>,
}

pub fn parse(text: &str) -> Result<FloerData> {
    let mut sections: HashMap<&'static str, Vec<Entry>> = HashMap::new();
    let mut current: Option<&'static str> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(first) = toks.first() else { continue };
        if let Some(inner) = first.text.strip_prefix('[') {
            let name = inner
                .strip_suffix(']')
                .ok_or_else(|| syntax(line_no, first.column, "unterminated section header"))?;
            let key = SECTIONS.iter().find(|s| **s == name).ok_or_else(|| {
                syntax(line_no, first.column, format!("unknown section [{name}]"))
            })?;
            if let Some(extra) = toks.get(1) {
                return Err(syntax(
                    line_no,
                    extra.column,
                    "unexpected text after section header",
                ));
            }
            if sections.contains_key(key) {
                return Err(syntax(
                    line_no,
                    first.column,
                    format!("duplicate section [{name}]"),
                ));
            }
            sections.insert(key, Vec::new());
            current = Some(key);
            continue;
        }
        let key = current
            .ok_or_else(|| syntax(line_no, first.column, "entry before any section header"))?;
        let entry = Entry {
            line: line_no,
            tokens: toks
                .iter()
                .map(|t| (t.text.to_string(), t.column))
                .collect(),
        };
        sections
            .get_mut(key)
            .expect("section registered")
            .push(entry);
    }

    let end_line = text.lines().count().max(1);
    let take = |name: &str| sections.get(name).map(Vec::as_slice).unwrap_or(&[]);

    let kind = match take("kind") {
        [] => return Err(syntax(end_line, 1, "missing [kind] section or value")),
        [e] => {
            if e.tokens.len() != 1 {
                return Err(syntax(e.line, e.tokens[1].1, "kind takes a single value"));
            }
            Kind::parse(&e.tokens[0].0).ok_or_else(|| {
                syntax(
                    e.line,
                    e.tokens[0].1,
                    format!("unknown kind {}", e.tokens[0].0),
                )
            })?
        }
        [_, e, ..] => return Err(syntax(e.line, e.tokens[0].1, "kind takes a single value")),
    };

    let mut gens = Vec::new();
    let mut index = HashMap::new();
    for e in take("generators") {
        if e.tokens.len() != 2 {
            let col = e.tokens.get(2).map_or(e.tokens[0].1, |t| t.1);
            return Err(syntax(e.line, col, "generator lines are `name degree`"));
        }
        let (name, ncol) = &e.tokens[0];
        let (deg, dcol) = &e.tokens[1];
        let degree: i64 = deg
            .parse()
            .ok()
            .filter(|d| (0..8).contains(d))
            .ok_or_else(|| {
                syntax(
                    e.line,
                    *dcol,
                    format!("degree must be an integer 0-7, got {deg}"),
                )
            })?;
        if index.insert(name.clone(), gens.len()).is_some() {
            return Err(syntax(e.line, *ncol, format!("duplicate generator {name}")));
        }
        gens.push(Generator::new(name.clone(), degree));
    }
    let n = gens.len();

    let lookup = |e: &Entry, k: usize| -> Result<usize> {
        let (name, col) = &e.tokens[k];
        index
            .get(name)
            .copied()
            .ok_or_else(|| syntax(e.line, *col, format!("unknown generator {name}")))
    };
    let value = |e: &Entry, k: usize| -> Result<Rational> {
        let (text, col) = &e.tokens[k];
        parse_rational(text).ok_or_else(|| {
            syntax(
                e.line,
                *col,
                format!("expected an integer or p/q, got {text}"),
            )
        })
    };

    let matrix = |name: &str| -> Result<RatMatrix> {
        let mut m = RatMatrix::zeros(n, n);
        let mut seen = std::collections::HashSet::new();
        for e in take(name) {
            if e.tokens.len() != 3 {
                let col = e.tokens.get(3).map_or(e.tokens[0].1, |t| t.1);
                return Err(syntax(
                    e.line,
                    col,
                    format!("[{name}] entries are `from to value`"),
                ));
            }
            let (from, to) = (lookup(e, 0)?, lookup(e, 1)?);
            if !seen.insert((from, to)) {
                return Err(syntax(
                    e.line,
                    e.tokens[0].1,
                    format!("repeated [{name}] entry"),
                ));
            }
            m.set(to, from, value(e, 2)?);
        }
        Ok(m)
    };
    let vector = |name: &str| -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); n];
        let mut seen = std::collections::HashSet::new();
        for e in take(name) {
            if e.tokens.len() != 2 {
                let col = e.tokens.get(2).map_or(e.tokens[0].1, |t| t.1);
                return Err(syntax(
                    e.line,
                    col,
                    format!("[{name}] entries are `generator value`"),
                ));
            }
            let at = lookup(e, 0)?;
            if !seen.insert(at) {
                return Err(syntax(
                    e.line,
                    e.tokens[0].1,
                    format!("repeated [{name}] entry"),
                ));
            }
            v[at] = value(e, 1)?;
        }
        Ok(v)
    };

    let data = FloerData::new(
        GradedComplex::new(gens, matrix("differential")?),
        matrix("u")?,
        vector("delta")?,
        vector("delta_prime")?,
        kind,
    );
    if let Some(v) = validate(&data).violations.into_iter().next() {
        let invariant = v.invariant.name().to_string();
        let full = v.to_string();
        let message = full
            .strip_prefix(invariant.as_str())
            .unwrap_or(&full)
            .trim_start_matches(':')
            .trim()
            .to_string();
        return Err(Error::Semantic { invariant, message });
    }
    Ok(data)
}
