//! Symbolic classification tables and their instantiation.
//!
//! The shipped table files describe each classification row once, with
//! parameters and side conditions, instead of storing one line per
//! ambient size. This module parses that format and expands it at a
//! concrete ambient size, producing rows directly comparable with the
//! engine output.
//!
//! Line format (pipe-separated, `#` comments, blank lines ignored):
//!
//! ```text
//! params | conditions | template | component | kind          (group tables)
//! params | conditions | template | kind | maximal [| z2]     (algebra tables)
//! ```
//!
//! Templates substitute `<expr>` with the evaluated expression and
//! `@rep{body}{sep}{count}` with `count` copies of `body` joined by
//! `sep`. Components are written in the finite-group grammar and are
//! normalized through it before any comparison.

use crate::expr::{parse_conditions, parse_expr, Condition, Env};
use maxsub_core::normalizer::FiniteGroupExpr;
use std::fmt;

/// Family of a classification row, matching the subalgebra descriptor
/// variants that generate table rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Sum,
    Tensor,
    Unitary,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Sum => "sum",
            Family::Tensor => "tensor",
            Family::Unitary => "unitary",
        }
    }

    fn parse(token: &str) -> Result<Self, String> {
        match token {
            "sum" => Ok(Family::Sum),
            "tensor" => Ok(Family::Tensor),
            "unitary" => Ok(Family::Unitary),
            other => Err(format!("unknown family '{other}'")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Stored Z2-primitivity verdict of an algebra row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Z2Value {
    Z2Primitive,
    NotZ2,
    NotApplicable,
}

impl Z2Value {
    pub fn as_str(self) -> &'static str {
        match self {
            Z2Value::Z2Primitive => "z2_primitive",
            Z2Value::NotZ2 => "not_z2",
            Z2Value::NotApplicable => "-",
        }
    }

    fn parse(token: &str) -> Result<Self, String> {
        match token {
            "z2_primitive" => Ok(Z2Value::Z2Primitive),
            "not_z2" => Ok(Z2Value::NotZ2),
            "-" => Ok(Z2Value::NotApplicable),
            other => Err(format!("unknown z2 value '{other}'")),
        }
    }
}

/// One symbolic row of a group table.
#[derive(Clone, Debug)]
pub struct GroupRow {
    pub line: usize,
    pub params: Vec<char>,
    pub conditions: Vec<Condition>,
    pub label: String,
    pub component: String,
    pub family: Family,
}

/// One symbolic row of an algebra table.
#[derive(Clone, Debug)]
pub struct AlgebraRow {
    pub line: usize,
    pub params: Vec<char>,
    pub conditions: Vec<Condition>,
    pub label: String,
    pub family: Family,
    pub maximal: bool,
    pub z2: Option<Z2Value>,
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    pub rows: Vec<GroupRow>,
}

#[derive(Clone, Debug)]
pub struct AlgebraTable {
    pub rows: Vec<AlgebraRow>,
    pub has_z2: bool,
}

/// A fully instantiated group-table row at a concrete ambient size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConcreteGroupRow {
    pub family: Family,
    pub label: String,
    /// Canonical rendering in the finite-group grammar.
    pub component: String,
}

/// A fully instantiated algebra-table row at a concrete ambient size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConcreteAlgebraRow {
    pub family: Family,
    pub label: String,
    pub maximal: bool,
    /// `z2_primitive`, `not_z2`, or `-`; always `-` for odd sizes.
    pub z2: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for GoldenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for GoldenError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, GoldenError> {
    Err(GoldenError {
        line,
        message: message.into(),
    })
}

fn split_fields(line: &str) -> Vec<String> {
    line.split('|').map(|f| f.trim().to_string()).collect()
}

fn parse_params(field: &str, line: usize) -> Result<Vec<char>, GoldenError> {
    if field == "-" {
        return Ok(Vec::new());
    }
    let mut params = Vec::new();
    for tok in field.split_whitespace() {
        let mut chars = tok.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return fail(line, format!("parameter '{tok}' is not a single letter"));
        };
        if !c.is_ascii_lowercase() || c == 'n' {
            return fail(line, format!("invalid parameter name '{c}'"));
        }
        if params.contains(&c) {
            return fail(line, format!("duplicate parameter '{c}'"));
        }
        params.push(c);
    }
    Ok(params)
}

fn table_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

impl GroupTable {
    pub fn parse(text: &str) -> Result<Self, GoldenError> {
        let mut rows = Vec::new();
        for (line, body) in table_lines(text) {
            let fields = split_fields(body);
            if fields.len() != 5 {
                return fail(line, format!("expected 5 fields, found {}", fields.len()));
            }
            let params = parse_params(&fields[0], line)?;
            let conditions =
                parse_conditions(&fields[1]).map_err(|e| GoldenError { line, message: e.message })?;
            let family = Family::parse(&fields[4]).map_err(|m| GoldenError { line, message: m })?;
            rows.push(GroupRow {
                line,
                params,
                conditions,
                label: fields[2].clone(),
                component: fields[3].clone(),
                family,
            });
        }
        Ok(GroupTable { rows })
    }

    /// All rows that fire at ambient size `n`, in file order and, within
    /// a row, in ascending parameter order.
    pub fn instantiate(&self, n: usize) -> Result<Vec<ConcreteGroupRow>, GoldenError> {
        let mut out = Vec::new();
        for row in &self.rows {
            for env in assignments(&row.params, n) {
                if !row.conditions.iter().all(|c| c.holds(&env)) {
                    continue;
                }
                let label = expand_template(&row.label, &env)
                    .map_err(|m| GoldenError { line: row.line, message: m })?;
                let component_text = expand_template(&row.component, &env)
                    .map_err(|m| GoldenError { line: row.line, message: m })?;
                let component = FiniteGroupExpr::parse(&component_text).map_err(|m| GoldenError {
                    line: row.line,
                    message: format!("component '{component_text}': {m}"),
                })?;
                out.push(ConcreteGroupRow {
                    family: row.family,
                    label,
                    component: component.to_string(),
                });
            }
        }
        Ok(out)
    }
}

impl AlgebraTable {
    pub fn parse(text: &str, has_z2: bool) -> Result<Self, GoldenError> {
        let want = if has_z2 { 6 } else { 5 };
        let mut rows = Vec::new();
        for (line, body) in table_lines(text) {
            let fields = split_fields(body);
            if fields.len() != want {
                return fail(
                    line,
                    format!("expected {want} fields, found {}", fields.len()),
                );
            }
            let params = parse_params(&fields[0], line)?;
            let conditions =
                parse_conditions(&fields[1]).map_err(|e| GoldenError { line, message: e.message })?;
            let family = Family::parse(&fields[3]).map_err(|m| GoldenError { line, message: m })?;
            let maximal = match fields[4].as_str() {
                "maximal" => true,
                "nonmaximal" => false,
                other => return fail(line, format!("unknown maximality '{other}'")),
            };
            let z2 = if has_z2 {
                Some(Z2Value::parse(&fields[5]).map_err(|m| GoldenError { line, message: m })?)
            } else {
                None
            };
            rows.push(AlgebraRow {
                line,
                params,
                conditions,
                label: fields[2].clone(),
                family,
                maximal,
                z2,
            });
        }
        Ok(AlgebraTable { rows, has_z2 })
    }

    pub fn instantiate(&self, n: usize) -> Result<Vec<ConcreteAlgebraRow>, GoldenError> {
        let mut out = Vec::new();
        for row in &self.rows {
            for env in assignments(&row.params, n) {
                if !row.conditions.iter().all(|c| c.holds(&env)) {
                    continue;
                }
                let label = expand_template(&row.label, &env)
                    .map_err(|m| GoldenError { line: row.line, message: m })?;
                // The orientation question only arises at even sizes.
                let z2 = match row.z2 {
                    None => Z2Value::NotApplicable,
                    Some(_) if n % 2 == 1 => Z2Value::NotApplicable,
                    Some(v) => v,
                };
                out.push(ConcreteAlgebraRow {
                    family: row.family,
                    label,
                    maximal: row.maximal,
                    z2: z2.as_str().to_string(),
                });
            }
        }
        Ok(out)
    }
}

/// All bindings of the given parameters to values in 1..=n, lexicographic
/// in parameter order, with `n` always bound.
fn assignments(params: &[char], n: usize) -> Vec<Env> {
    let mut base = Env::new();
    base.bind('n', n as i128);
    let mut out = vec![base];
    for &p in params {
        let mut next = Vec::with_capacity(out.len() * n);
        for env in &out {
            for v in 1..=n {
                let mut e = env.clone();
                e.bind(p, v as i128);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Expands `<expr>` placeholders, then `@rep{body}{sep}{count}` groups.
fn expand_template(template: &str, env: &Env) -> Result<String, String> {
    let substituted = expand_placeholders(template, env)?;
    expand_reps(&substituted)
}

fn expand_placeholders(template: &str, env: &Env) -> Result<String, String> {
    let mut out = String::with_capacity(template.len());
    let mut rest = template;
    while let Some(start) = rest.find('<') {
        out.push_str(&rest[..start]);
        let after = &rest[start + 1..];
        let Some(end) = after.find('>') else {
            return Err(format!("unclosed '<' in template '{template}'"));
        };
        let expr_text = &after[..end];
        let expr = parse_expr(expr_text).map_err(|e| format!("placeholder '{expr_text}': {e}"))?;
        let value = expr
            .eval(env)
            .ok_or_else(|| format!("placeholder '{expr_text}' failed to evaluate"))?;
        out.push_str(&value.to_string());
        rest = &after[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

fn expand_reps(text: &str) -> Result<String, String> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(start) = rest.find("@rep{") {
        out.push_str(&rest[..start]);
        let mut tail = &rest[start + 4..];
        let mut groups = Vec::with_capacity(3);
        for _ in 0..3 {
            if !tail.starts_with('{') {
                return Err(format!("@rep needs three brace groups in '{text}'"));
            }
            let Some(end) = tail.find('}') else {
                return Err(format!("unclosed brace in '{text}'"));
            };
            groups.push(&tail[1..end]);
            tail = &tail[end + 1..];
        }
        let count: usize = groups[2]
            .trim()
            .parse()
            .map_err(|_| format!("@rep count '{}' is not a number", groups[2]))?;
        if count == 0 || count > 64 {
            return Err(format!("@rep count {count} out of range"));
        }
        let body = groups[0];
        let sep = groups[1];
        for i in 0..count {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(body);
        }
        rest = tail;
    }
    out.push_str(rest);
    Ok(out)
}
