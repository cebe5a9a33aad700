//! Input language: `eq (";" eq)*` with `eq := expr "=" expr` over `y, y', y'', …, y^(k)`.

use num_bigint::BigInt;

use crate::arith::extension::AlgebraicNumber;
use crate::arith::field::{Field, Q};
use crate::arith::roots::univariate_roots;
use crate::arith::upoly::UPoly;
use crate::error::{AodeError, Result};
use crate::poly::MultiPoly;
use crate::series::{ExpansionPoint, TruncatedSeries};
use crate::system::DiffSystem;

type P = MultiPoly<Q>;

/// Default cap on the derivative order, overridden by `AODE_MAX_ORDER`.
pub const DEFAULT_MAX_ORDER: usize = 16;

pub fn max_order_from_env() -> usize {
    std::env::var("AODE_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// A parsed system together with its source text.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceSystem {
    pub raw: String,
    pub system: DiffSystem,
    pub variable: String,
    pub max_order: usize,
    pub equation_count: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Y(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Semi,
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, max_order: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    let err = |line, col, msg: String| AodeError::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let step = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                step(1, &mut i, &mut col);
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Lexed {
                    tok: Tok::Num(s.parse().unwrap()),
                    line: l0,
                    col: c0,
                });
                continue;
            }
            'y' => {
                step(1, &mut i, &mut col);
                let mut order = 0;
                while i < chars.len() && chars[i] == '\'' {
                    order += 1;
                    step(1, &mut i, &mut col);
                }
                // y^(k) denotes the k-th derivative.
                if order == 0 && chars.get(i) == Some(&'^') && chars.get(i + 1) == Some(&'(') {
                    let mut j = i + 2;
                    while j < chars.len() && chars[j] == ' ' {
                        j += 1;
                    }
                    let ds = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let digits: String = chars[ds..j].iter().collect();
                    while j < chars.len() && chars[j] == ' ' {
                        j += 1;
                    }
                    if digits.is_empty() || chars.get(j) != Some(&')') {
                        return Err(err(line, col, "expected y^(k) with an integer k".into()));
                    }
                    order = digits
                        .parse()
                        .map_err(|_| err(line, col, "derivative order too large".into()))?;
                    col += j + 1 - i;
                    i = j + 1;
                }
                if order > max_order {
                    return Err(AodeError::OrderLimit {
                        order,
                        limit: max_order,
                    });
                }
                out.push(Lexed {
                    tok: Tok::Y(order),
                    line: l0,
                    col: c0,
                });
                continue;
            }
            'x' => return Err(AodeError::Autonomy { line, col }),
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            c if c.is_alphabetic() => {
                return Err(err(line, col, format!("unknown identifier starting with '{c}'")));
            }
            c => return Err(err(line, col, format!("unexpected character '{c}'"))),
        };
        out.push(Lexed { tok, line, col });
        step(1, &mut i, &mut col);
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |l| (l.line, l.col))
    }

    fn error(&self, msg: &str) -> AodeError {
        let (line, col) = self.here();
        AodeError::Parse {
            line,
            col,
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn system(&mut self) -> Result<Vec<P>> {
        let mut eqs = vec![self.equation()?];
        while self.eat(&Tok::Semi) {
            if self.peek().is_none() {
                break;
            }
            eqs.push(self.equation()?);
        }
        if self.peek().is_some() {
            return Err(self.error("expected ';' or end of input"));
        }
        Ok(eqs)
    }

    fn equation(&mut self) -> Result<P> {
        let lhs = self.expr()?;
        if self.eat(&Tok::Eq) {
            let rhs = self.expr()?;
            Ok(lhs.sub(&rhs))
        } else {
            Ok(lhs)
        }
    }

    fn expr(&mut self) -> Result<P> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(&Tok::Slash) {
                let at = self.here();
                self.pos += 1;
                let d = self.factor()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.inverse()),
                    _ => {
                        return Err(AodeError::Parse {
                            line: at.0,
                            col: at.1,
                            msg: "division only by non-zero constants".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<P> {
        if self.eat(&Tok::Minus) {
            return Ok(self.factor()?.neg());
        }
        if self.eat(&Tok::Plus) {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let paren = self.eat(&Tok::LParen);
            let e = match self.peek() {
                Some(Tok::Num(n)) => u32::try_from(n.clone()).map_err(|_| self.error("exponent too large"))?,
                _ => return Err(self.error("expected a non-negative integer exponent")),
            };
            self.pos += 1;
            if paren && !self.eat(&Tok::RParen) {
                return Err(self.error("expected ')'"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(P::constant(Q::from_integer(n)))
            }
            Some(Tok::Y(k)) => {
                self.pos += 1;
                Ok(P::var(k))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(_) => Err(self.error("expected a number, y-derivative or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a system with the derivative cap taken from the environment.
pub fn parse_system(text: &str) -> Result<SourceSystem> {
    parse_system_with(text, max_order_from_env())
}

pub fn parse_system_with(text: &str, max_order: usize) -> Result<SourceSystem> {
    let toks = lex(text, max_order)?;
    let lines: Vec<&str> = text.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser { toks, pos: 0, end };
    let eqs = p.system()?;
    if let Some(i) = eqs.iter().position(|e| e.is_zero()) {
        return Err(AodeError::NotDifferential(format!("equation {} is identically zero", i + 1)));
    }
    let system = DiffSystem::new(eqs)?;
    Ok(SourceSystem {
        raw: text.to_string(),
        max_order: system.order,
        equation_count: system.equations.len(),
        system,
        variable: "y".into(),
    })
}

/// Prints a system in the input language; parsing the result gives the same system.
pub fn print_system(s: &DiffSystem) -> String {
    s.equations
        .iter()
        .map(|e| format!("{} = 0", e.display_y()))
        .collect::<Vec<_>>()
        .join("; ")
}

fn series_error(col: usize, msg: impl Into<String>) -> AodeError {
    AodeError::Parse {
        line: 1,
        col,
        msg: msg.into(),
    }
}

fn parse_rational(t: &str, col: usize) -> Result<Q> {
    let t = t.trim();
    let t = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t);
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| series_error(col, format!("bad number '{t}'")))?;
    let d: BigInt = d.trim().parse().map_err(|_| series_error(col, format!("bad number '{t}'")))?;
    if d == BigInt::from(0) {
        return Err(series_error(col, "zero denominator"));
    }
    Ok(Q::new(n, d))
}

/// Splits at top-level `+`/`-`, keeping the sign with each term.
fn split_terms(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 1;
    let mut depth = 0;
    let mut prev = ' ';
    for (i, ch) in text.chars().enumerate() {
        if ch.is_whitespace() {
            continue;
        }
        let binary = matches!(ch, '+' | '-') && depth == 0 && !matches!(prev, '^' | ' ');
        if binary && !cur.is_empty() {
            out.push((start, std::mem::take(&mut cur)));
            start = i + 1;
        }
        if cur.is_empty() && !binary {
            start = i + 1;
        }
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        cur.push(ch);
        prev = ch;
    }
    if !cur.is_empty() {
        out.push((start, cur));
    }
    out
}

/// Parses `Σ c·x^e` with rational `c`, optionally times one common
/// `sqrt(k)`, into a series at `point`. Terms are taken as complete up to
/// `order` (in the local order of the point); the next unknown order is
/// `order + 1/n` with `n` the common denominator of the exponents.
pub fn parse_series(text: &str, point: ExpansionPoint, order: Option<&Q>) -> Result<TruncatedSeries<AlgebraicNumber>> {
    let mut sqrt_arg: Option<Q> = None;
    let mut raw: Vec<(Q, Q, bool)> = Vec::new();
    for (col, term) in split_terms(text) {
        let (neg, body) = match term.chars().next() {
            Some('-') => (true, &term[1..]),
            Some('+') => (false, &term[1..]),
            _ => (false, term.as_str()),
        };
        let mut coef = Q::from_integer(if neg { -1 } else { 1 }.into());
        let mut exp = Q::from_integer(0.into());
        let mut has_sqrt = false;
        for f in body.split('*') {
            if f.is_empty() {
                return Err(series_error(col, "empty factor"));
            }
            if let Some(arg) = f.strip_prefix("sqrt") {
                let k = parse_rational(arg, col)?;
                if sqrt_arg.as_ref().is_some_and(|s| *s != k) {
                    return Err(series_error(col, "at most one distinct square root is supported"));
                }
                if k <= Q::from_integer(0.into()) {
                    return Err(series_error(col, "square root of a non-positive number"));
                }
                sqrt_arg = Some(k);
                has_sqrt = true;
            } else if let Some(rest) = f.strip_prefix('x') {
                exp += match rest.strip_prefix('^') {
                    Some(e) => parse_rational(e, col)?,
                    None if rest.is_empty() => Q::from_integer(1.into()),
                    None => return Err(series_error(col, format!("unexpected '{rest}'"))),
                };
            } else {
                coef *= parse_rational(f, col)?;
            }
        }
        raw.push((exp, coef, has_sqrt));
    }
    let root = match &sqrt_arg {
        Some(k) => {
            let p = UPoly::new(vec![-k.clone(), Q::from_integer(0.into()), Q::from_integer(1.into())]);
            univariate_roots(&p).pop().expect("square root exists").value
        }
        None => AlgebraicNumber::one(),
    };
    let terms: Vec<(Q, AlgebraicNumber)> = raw
        .into_iter()
        .map(|(e, c, s)| {
            let c = AlgebraicNumber::from_rational(&c);
            (e, if s { c.times(&root) } else { c })
        })
        .collect();
    Ok(match order {
        None => TruncatedSeries::exact(point, terms),
        Some(n) => {
            let ram = crate::puiseux::ramification_of(terms.iter().map(|(e, _)| e));
            let step = Q::new(1.into(), ram.into());
            TruncatedSeries::with_precision(point, terms, n + step)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_text() {
        let y = parse_series("1 + x - 1/2*x^2 + 1/2*x^3", ExpansionPoint::Zero, Some(&Q::from_integer(3.into()))).unwrap();
        assert_eq!(y.terms().len(), 4);
        assert_eq!(y.kappa_precision(), Some(&Q::from_integer(4.into())));
        let r = parse_series("-sqrt(2)*x^(1/2)", ExpansionPoint::Zero, None).unwrap();
        assert_eq!(r.terms()[0].1.to_string(), "-sqrt(2)");
        assert!(parse_series("sqrt(2)*x + sqrt(3)", ExpansionPoint::Zero, None).is_err());
        assert!(parse_series("2*z", ExpansionPoint::Zero, None).is_err());
    }

    #[test]
    fn example_system() {
        let s = parse_system_with(
            "y*y'*y'' + y'^3 - y*y'' - y'^2 = 0; y*y' - 1 - y'^2 - y*y'' = 0",
            16,
        )
        .unwrap();
        assert_eq!(s.system.order, 2);
        assert_eq!(s.equation_count, 2);
        let again = parse_system_with(&print_system(&s.system), 16).unwrap();
        assert_eq!(again.system, s.system);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_system_with("x^2*y' - y + x = 0", 16),
            Err(AodeError::Autonomy { line: 1, col: 1 })
        ));
        assert!(matches!(
            parse_system_with("y^(20) = 1", 16),
            Err(AodeError::OrderLimit { order: 20, limit: 16 })
        ));
        assert!(matches!(
            parse_system_with("y' = \n  (1 +", 16),
            Err(AodeError::Parse { line: 2, .. })
        ));
        assert_eq!(
            parse_system_with("y^(4) + 1/2*y^2 = y'", 16).unwrap().system.order,
            4
        );
    }
}
