//! Integer expressions and comparisons for the symbolic table files.
//!
//! The grammar is small: variables are single lowercase letters bound by
//! the row (plus `n`, always bound to the ambient size), literals are
//! nonnegative integers, and the operators are `+ - * / % ^` with
//! `gcd(a,b)` and parentheses. Evaluation is exact over i128; division is
//! Euclidean truncation and any overflow, division by zero, or negative
//! exponent makes the expression (and so a condition using it) fail.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(i128),
    Var(char),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Gcd(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

/// One conjunct of a row condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

/// Variable bindings for one instantiation attempt.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vars: BTreeMap<char, i128>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn bind(&mut self, name: char, value: i128) {
        self.vars.insert(name, value);
    }

    pub fn get(&self, name: char) -> Option<i128> {
        self.vars.get(&name).copied()
    }
}

impl Expr {
    /// Exact evaluation; `None` on unbound variables, overflow, division
    /// by zero, or negative exponents.
    pub fn eval(&self, env: &Env) -> Option<i128> {
        match self {
            Expr::Num(v) => Some(*v),
            Expr::Var(c) => env.get(*c),
            Expr::Gcd(a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                Some(gcd(a.checked_abs()?, b.checked_abs()?))
            }
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                match op {
                    BinOp::Add => a.checked_add(b),
                    BinOp::Sub => a.checked_sub(b),
                    BinOp::Mul => a.checked_mul(b),
                    BinOp::Div => {
                        if b == 0 {
                            None
                        } else {
                            a.checked_div(b)
                        }
                    }
                    BinOp::Mod => {
                        if b == 0 {
                            None
                        } else {
                            a.checked_rem(b)
                        }
                    }
                    BinOp::Pow => checked_pow(a, b),
                }
            }
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn checked_pow(base: i128, exp: i128) -> Option<i128> {
    if exp < 0 {
        return None;
    }
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

impl Condition {
    /// `false` on any evaluation failure: out-of-range bindings simply do
    /// not fire the row.
    pub fn holds(&self, env: &Env) -> bool {
        let (Some(l), Some(r)) = (self.lhs.eval(env), self.rhs.eval(env)) else {
            return false;
        };
        match self.op {
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
            CmpOp::Lt => l < r,
            CmpOp::Le => l <= r,
            CmpOp::Gt => l > r,
            CmpOp::Ge => l >= r,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for ExprError {}

fn err<T>(message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        message: message.into(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => err(format!("expected '{}', found end of input", c as char)),
        }
    }

    // additive := multiplicative (('+'|'-') multiplicative)*
    fn additive(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.multiplicative()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let rhs = self.multiplicative()?;
                    acc = Expr::Bin(BinOp::Add, Box::new(acc), Box::new(rhs));
                }
                Some(b'-') => {
                    self.bump();
                    let rhs = self.multiplicative()?;
                    acc = Expr::Bin(BinOp::Sub, Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    // multiplicative := power (('*'|'/'|'%') power)*
    fn multiplicative(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.power()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                Some(b'%') => BinOp::Mod,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.power()?;
            acc = Expr::Bin(op, Box::new(acc), Box::new(rhs));
        }
    }

    // power := atom ('^' power)?   (right associative)
    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let exp = self.power()?;
            Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.additive()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match text.parse::<i128>() {
                    Ok(v) => Ok(Expr::Num(v)),
                    Err(_) => err(format!("integer literal {text} out of range")),
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                // Either a variable or the gcd function.
                if self.src[self.pos..].starts_with(b"gcd") {
                    let after = self.src.get(self.pos + 3).copied();
                    if !matches!(after, Some(x) if x.is_ascii_lowercase()) {
                        self.pos += 3;
                        self.expect(b'(')?;
                        let a = self.additive()?;
                        self.expect(b',')?;
                        let b = self.additive()?;
                        self.expect(b')')?;
                        return Ok(Expr::Gcd(Box::new(a), Box::new(b)));
                    }
                }
                self.pos += 1;
                let next = self.src.get(self.pos).copied();
                if matches!(next, Some(x) if x.is_ascii_lowercase()) {
                    return err(format!(
                        "variables are single letters, found '{}{}'",
                        c as char,
                        next.unwrap() as char
                    ));
                }
                Ok(Expr::Var(c as char))
            }
            Some(c) => err(format!("unexpected character '{}'", c as char)),
            None => err("unexpected end of expression"),
        }
    }

    fn finished(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a full expression; trailing garbage is an error.
pub fn parse_expr(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser::new(src);
    let e = p.additive()?;
    if p.finished() {
        Ok(e)
    } else {
        err(format!("trailing input in expression '{src}'"))
    }
}

/// Parses a single comparison `expr OP expr`.
pub fn parse_condition(src: &str) -> Result<Condition, ExprError> {
    let ops = [
        ("!=", CmpOp::Ne),
        ("<=", CmpOp::Le),
        (">=", CmpOp::Ge),
        ("<", CmpOp::Lt),
        (">", CmpOp::Gt),
        ("=", CmpOp::Eq),
    ];
    for (text, op) in ops {
        if let Some(pos) = src.find(text) {
            let lhs = parse_expr(&src[..pos])?;
            let rhs = parse_expr(&src[pos + text.len()..])?;
            return Ok(Condition { lhs, op, rhs });
        }
    }
    err(format!("no comparison operator in condition '{src}'"))
}

/// Parses a comma-separated conjunction; an empty string means no
/// constraints.
pub fn parse_conditions(src: &str) -> Result<Vec<Condition>, ExprError> {
    let src = src.trim();
    if src.is_empty() || src == "-" {
        return Ok(Vec::new());
    }
    src.split(',').map(|part| parse_condition(part.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(char, i128)]) -> Env {
        let mut e = Env::new();
        for (c, v) in pairs {
            e.bind(*c, *v);
        }
        e
    }

    #[test]
    fn precedence_and_power() {
        let e = parse_expr("2+3*4").unwrap();
        assert_eq!(e.eval(&Env::new()), Some(14));
        let e = parse_expr("2^3^2").unwrap();
        assert_eq!(e.eval(&Env::new()), Some(512));
        let e = parse_expr("(2+3)*4").unwrap();
        assert_eq!(e.eval(&Env::new()), Some(20));
        let e = parse_expr("p^(l-1)").unwrap();
        assert_eq!(e.eval(&env(&[('p', 2), ('l', 4)])), Some(8));
    }

    #[test]
    fn gcd_and_div_mod() {
        let e = parse_expr("gcd(12,18)").unwrap();
        assert_eq!(e.eval(&Env::new()), Some(6));
        let e = parse_expr("gcd(p,q)").unwrap();
        assert_eq!(e.eval(&env(&[('p', 6), ('q', 4)])), Some(2));
        let e = parse_expr("(a/2)%2").unwrap();
        assert_eq!(e.eval(&env(&[('a', 6)])), Some(1));
        assert_eq!(parse_expr("1/0").unwrap().eval(&Env::new()), None);
    }

    #[test]
    fn overflow_is_none_not_panic() {
        let e = parse_expr("30^30").unwrap();
        assert_eq!(e.eval(&Env::new()), None);
        let e = parse_expr("10^20").unwrap();
        assert_eq!(e.eval(&Env::new()), Some(100_000_000_000_000_000_000));
    }

    #[test]
    fn conditions() {
        let c = parse_condition("n = p+q").unwrap();
        assert!(c.holds(&env(&[('n', 5), ('p', 3), ('q', 2)])));
        assert!(!c.holds(&env(&[('n', 5), ('p', 3), ('q', 3)])));
        let c = parse_condition("p % 4 != 2").unwrap();
        assert!(c.holds(&env(&[('p', 3)])));
        assert!(!c.holds(&env(&[('p', 6)])));
        let cs = parse_conditions("n = p*q, p > q, q >= 2").unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.holds(&env(&[('n', 6), ('p', 3), ('q', 2)]))));
        // Unbound variables fail closed.
        assert!(!parse_condition("x = 1").unwrap().holds(&Env::new()));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_expr("2+").is_err());
        assert!(parse_expr("pq").is_err());
        assert!(parse_expr("gcd(2)").is_err());
        assert!(parse_condition("p q").is_err());
        assert!(parse_expr("2 3").is_err());
    }
}
