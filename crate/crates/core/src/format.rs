//! The presentation file format and the scalar / element expression grammar.
//!
//! ```text
//! # U_q(sl_3)^+
//! n = 3
//! order = lex
//! q.1.2 = q1_2
//! q.2.3 = q1_2
//! q.1.3 = q1_2^-1
//! p.1.3 = x2
//! ```
//!
//! Scalars: rationals `p/q`, parameters `q<i>_<j>` with `i<j`, `^` with an
//! integer (possibly negative) exponent, `*`, `+`, `-` and parentheses.
//! Elements: sums of terms `<scalar>*x<i>^<e>*...` with the `x` factors in
//! index order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::presentations::{AlgebraElement, Monomial, MonomialOrder, Presentation};
use crate::qscalar::{LaurentScalar, ParamIndex};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Param(usize, usize),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn digits(chars: &[char], pos: &mut usize) -> Option<String> {
    let start = *pos;
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    (*pos > start).then(|| chars[start..*pos].iter().collect())
}

fn small_index(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>().map_err(|_| format!("index `{s}` is too large"))
}

fn tokenize(src: &str) -> std::result::Result<Vec<Token>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push(t);
            pos += 1;
        } else if c.is_ascii_digit() {
            let d = digits(&chars, &mut pos).expect("at least one digit");
            out.push(Token::Int(d.parse().expect("decimal digits")));
        } else if c == 'q' {
            pos += 1;
            let i = digits(&chars, &mut pos).ok_or("expected `q<i>_<j>`")?;
            if chars.get(pos) != Some(&'_') {
                return Err("expected `q<i>_<j>`".into());
            }
            pos += 1;
            let j = digits(&chars, &mut pos).ok_or("expected `q<i>_<j>`")?;
            out.push(Token::Param(small_index(&i)?, small_index(&j)?));
        } else if c == 'x' {
            pos += 1;
            let i = digits(&chars, &mut pos).ok_or("expected `x<i>`")?;
            out.push(Token::Gen(small_index(&i)?));
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn new(src: &str, n: usize) -> std::result::Result<Self, String> {
        Ok(Self {
            tokens: tokenize(src)?,
            pos: 0,
            n,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_end(&self) -> std::result::Result<(), String> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(format!("unexpected trailing input at {t:?}")),
        }
    }

    fn index(&self, i: usize) -> std::result::Result<usize, String> {
        if i == 0 || i > self.n {
            Err(format!("generator index {i} out of range 1..={}", self.n))
        } else {
            Ok(i - 1)
        }
    }

    fn exponent(&mut self) -> std::result::Result<i64, String> {
        let neg = self.eat(&Token::Minus);
        match self.peek().cloned() {
            Some(Token::Int(k)) => {
                self.pos += 1;
                let k: i64 = k.try_into().map_err(|_| "exponent too large".to_string())?;
                Ok(if neg { -k } else { k })
            }
            _ => Err("expected an integer exponent".into()),
        }
    }

    fn scalar_expr(&mut self) -> std::result::Result<LaurentScalar, String> {
        let mut acc = self.scalar_term()?;
        loop {
            if self.eat(&Token::Plus) {
                acc = &acc + &self.scalar_term()?;
            } else if self.eat(&Token::Minus) {
                acc = &acc - &self.scalar_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn scalar_term(&mut self) -> std::result::Result<LaurentScalar, String> {
        if self.eat(&Token::Minus) {
            return Ok(-self.scalar_term()?);
        }
        let mut acc = self.scalar_power()?;
        while self.eat(&Token::Star) {
            acc = &acc * &self.scalar_power()?;
        }
        Ok(acc)
    }

    fn scalar_power(&mut self) -> std::result::Result<LaurentScalar, String> {
        let base = self.scalar_atom()?;
        if self.eat(&Token::Caret) {
            let k = self.exponent()?;
            return base.pow(k).map_err(|e| e.to_string());
        }
        Ok(base)
    }

    fn scalar_atom(&mut self) -> std::result::Result<LaurentScalar, String> {
        match self.peek().cloned() {
            Some(Token::Int(k)) => {
                self.pos += 1;
                if self.eat(&Token::Slash) {
                    match self.peek().cloned() {
                        Some(Token::Int(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            Ok(LaurentScalar::from_rational(BigRational::new(k, d)))
                        }
                        _ => Err("expected a nonzero denominator".into()),
                    }
                } else {
                    Ok(LaurentScalar::from_rational(BigRational::from_integer(k)))
                }
            }
            Some(Token::Param(i, j)) => {
                self.pos += 1;
                if i >= j {
                    return Err(format!("parameters require i<j (got q{i}_{j})"));
                }
                let (i, j) = (self.index(i)?, self.index(j)?);
                Ok(LaurentScalar::param(ParamIndex::new(i, j).map_err(|e| e.to_string())?))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let v = self.scalar_expr()?;
                if !self.eat(&Token::RParen) {
                    return Err("expected `)`".into());
                }
                Ok(v)
            }
            Some(Token::Gen(_)) => Err("generators are not allowed in a scalar".into()),
            Some(t) => Err(format!("unexpected {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }

    fn element_expr(&mut self) -> std::result::Result<AlgebraElement, String> {
        let mut acc = AlgebraElement::zero();
        let mut negate = self.eat(&Token::Minus);
        loop {
            let (m, c) = self.element_term()?;
            let c = if negate { -c } else { c };
            acc.add_term(m, &c);
            if self.eat(&Token::Plus) {
                negate = false;
            } else if self.eat(&Token::Minus) {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    /// `factor (* factor)*` where each factor is a scalar power or `x<i>^e`.
    fn element_term(&mut self) -> std::result::Result<(Monomial, LaurentScalar), String> {
        let mut coeff = LaurentScalar::one();
        let mut exps = vec![0u32; self.n];
        let mut last_gen: Option<usize> = None;
        loop {
            if let Some(Token::Gen(i)) = self.peek().cloned() {
                self.pos += 1;
                let i = self.index(i)?;
                if last_gen.is_some_and(|l| l > i) {
                    return Err("x factors must appear in index order".into());
                }
                last_gen = Some(i);
                let e = if self.eat(&Token::Caret) {
                    u32::try_from(self.exponent()?)
                        .map_err(|_| "generator exponents must be nonnegative".to_string())?
                } else {
                    1
                };
                exps[i] += e;
            } else {
                if last_gen.is_some() {
                    return Err("scalar factors must precede the x factors".into());
                }
                coeff = &coeff * &self.scalar_power()?;
            }
            if !self.eat(&Token::Star) {
                return Ok((Monomial::new(exps), coeff));
            }
        }
    }
}

/// Parses a scalar expression over `n` generators.
pub fn parse_scalar(src: &str, n: usize) -> std::result::Result<LaurentScalar, String> {
    let mut p = Parser::new(src, n)?;
    let v = p.scalar_expr()?;
    p.expect_end()?;
    Ok(v)
}

/// Parses an element expression over `n` generators.
pub fn parse_element(src: &str, n: usize) -> std::result::Result<AlgebraElement, String> {
    let mut p = Parser::new(src, n)?;
    let v = p.element_expr()?;
    p.expect_end()?;
    Ok(v)
}

/// Parses `q<i>_<j>=<rational>` as used by numeric evaluation.
pub fn parse_assignment(src: &str, n: usize) -> std::result::Result<(ParamIndex, BigRational), String> {
    let (key, value) = src
        .split_once('=')
        .ok_or_else(|| format!("expected `q<i>_<j>=<value>`, got `{src}`"))?;
    let key = parse_scalar(key, n)?;
    let param = match key.parameters().into_iter().collect::<Vec<_>>().as_slice() {
        [p] if key == LaurentScalar::param(*p) => *p,
        _ => return Err(format!("`{key}` is not a single parameter")),
    };
    let value = parse_scalar(value, n)?;
    if !value.parameters().is_empty() {
        return Err(format!("value `{value}` is not a rational number"));
    }
    let c = value.constant();
    if c == BigRational::from_integer(0.into()) {
        return Err(format!("parameter {param} cannot be assigned 0"));
    }
    Ok((param, c))
}

fn parse_list(src: &str) -> std::result::Result<Vec<u32>, String> {
    let trimmed = src.trim().trim_start_matches('[').trim_end_matches(']');
    trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| format!("`{s}` is not a nonnegative integer"))
        })
        .collect()
}

fn parse_pair(key: &str, rest: &str) -> std::result::Result<(usize, usize), String> {
    let mut parts = rest.split('.');
    let (Some(i), Some(j), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(format!("malformed key `{key}`"));
    };
    let i: usize = i.parse().map_err(|_| format!("malformed key `{key}`"))?;
    let j: usize = j.parse().map_err(|_| format!("malformed key `{key}`"))?;
    if i >= j {
        return Err(format!("parameters require i<j (key `{key}`)"));
    }
    Ok((i, j))
}

/// Parses a presentation file. Missing `q.i.j` entries default to the symbolic
/// parameter `q<i>_<j>`; `t` defaults to the length of `N`; `omega` to all ones;
/// `order` to `wgrlex`. The result is not validated.
pub fn parse_presentation(src: &str) -> Result<Presentation> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (k, raw) in src.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(line, format!("expected `key = value`, got `{content}`")));
        };
        let key = key.trim().to_string();
        if entries.contains_key(&key) {
            return Err(err(line, format!("duplicate key `{key}`")));
        }
        entries.insert(key, (line, value.trim().to_string()));
    }

    let Some((n_line, n_src)) = entries.remove("n") else {
        return Err(err(0, "missing required key `n`".into()));
    };
    let n: usize = n_src
        .parse()
        .map_err(|_| err(n_line, format!("`n` must be a positive integer, got `{n_src}`")))?;
    if n == 0 {
        return Err(err(n_line, "`n` must be at least 1".into()));
    }
    let mut pres = Presentation::new(n);

    let nilpotency = match entries.remove("N") {
        Some((line, v)) => parse_list(&v).map_err(|m| err(line, m))?,
        None => Vec::new(),
    };
    if let Some((line, v)) = entries.remove("t") {
        let t: usize = v
            .parse()
            .map_err(|_| err(line, format!("`t` must be a nonnegative integer, got `{v}`")))?;
        if t != nilpotency.len() {
            return Err(err(line, format!("t = {t} but N lists {} exponents", nilpotency.len())));
        }
    }
    pres = pres.with_nilpotency(nilpotency);
    if let Some((line, v)) = entries.remove("omega") {
        pres = pres.with_omega(parse_list(&v).map_err(|m| err(line, m))?);
    }
    if let Some((line, v)) = entries.remove("order") {
        pres = pres.with_order(v.parse::<MonomialOrder>().map_err(|m| err(line, m))?);
    }

    for (key, (line, value)) in entries {
        let (kind, rest) = match key.split_once('.') {
            Some((k @ ("q" | "p"), rest)) => (k, rest),
            _ => return Err(err(line, format!("unknown key `{key}`"))),
        };
        let (i, j) = parse_pair(&key, rest).map_err(|m| err(line, m))?;
        if i == 0 || j > n {
            return Err(err(line, format!("key `{key}` indexes outside 1..={n}")));
        }
        if kind == "q" {
            let v = parse_scalar(&value, n).map_err(|m| err(line, m))?;
            pres.set_q(i - 1, j - 1, v).map_err(|e| err(line, e.to_string()))?;
        } else {
            let v = parse_element(&value, n).map_err(|m| err(line, m))?;
            pres.set_p(i - 1, j - 1, v).map_err(|e| err(line, e.to_string()))?;
        }
    }
    Ok(pres)
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

/// Canonical text form; `parse_presentation` reads it back to an equal value.
pub fn print_presentation(pres: &Presentation) -> String {
    let mut out = format!("n = {}\nt = {}\n", pres.n(), pres.t());
    if pres.t() > 0 {
        out.push_str(&format!("N = {}\n", join(pres.nilpotency())));
    }
    out.push_str(&format!("order = {}\n", pres.order()));
    out.push_str(&format!("omega = {}\n", join(pres.omega())));
    for (p, v) in pres.q_table() {
        out.push_str(&format!("q.{}.{} = {}\n", p.i() + 1, p.j() + 1, v));
    }
    for ((i, j), v) in pres.lower_terms() {
        out.push_str(&format!("p.{}.{} = {}\n", i + 1, j + 1, v));
    }
    out
}
