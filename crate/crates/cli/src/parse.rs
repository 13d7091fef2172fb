//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := INT ['/' INT] | 'i' | var ['^' INT]
//! var    := 'x' DIGITS | 'x' | 'y' | 'z' | 'w'
//! ```
//!
//! `x1..xn` index variables from one; the letters `x, y, z, w` stand for the
//! first four. The two styles cannot be mixed in one input.

use std::collections::BTreeMap;

use logterm_core::{Exponent, GaussianRational, SparsePolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {pos}")]
pub struct ParseError {
    /// Character offset into the source text.
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> Self {
        Self {
            pos,
            message: message.into(),
        }
    }

    /// The message with the source line and a caret under the offending column.
    pub fn render(&self, source: &str) -> String {
        format!("{}\n  {}\n  {}^", self, source, " ".repeat(self.pos))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Style {
    Letters,
    Indexed,
}

/// A parsed polynomial whose variable count is not fixed yet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPolynomial {
    terms: Vec<(BTreeMap<usize, i64>, GaussianRational)>,
    /// One more than the largest variable index used (0 for constants).
    pub min_vars: usize,
}

impl ParsedPolynomial {
    /// Materializes the polynomial in `nvars` variables.
    pub fn into_polynomial(self, nvars: usize) -> Result<SparsePolynomial, ParseError> {
        if nvars < self.min_vars {
            return Err(ParseError::new(
                0,
                format!("uses {} variables but only {nvars} declared", self.min_vars),
            ));
        }
        let mut p = SparsePolynomial::zero(nvars);
        for (powers, c) in self.terms {
            let mut e = vec![0i64; nvars];
            for (i, k) in powers {
                e[i] += k;
            }
            p.add_term(Exponent(e), c);
        }
        Ok(p)
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
    style: Option<Style>,
}

impl Parser<'_> {
    fn pos(&mut self) -> usize {
        self.skip_ws();
        self.chars.get(self.at).map_or(self.src.chars().count(), |c| c.0)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|c| c.1.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|c| c.1)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.at += 1;
        c
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|c| c.1.is_ascii_digit()) {
            self.at += 1;
        }
        (self.at > start).then(|| self.chars[start..self.at].iter().map(|c| c.1).collect())
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let pos = self.pos();
        let d = self.digits().ok_or_else(|| ParseError::new(pos, "expected an integer"))?;
        Ok(d.parse().expect("ascii digits"))
    }

    fn set_style(&mut self, s: Style, pos: usize) -> Result<(), ParseError> {
        match self.style {
            Some(prev) if prev != s => Err(ParseError::new(pos, "cannot mix x1..xn with x, y, z, w")),
            _ => {
                self.style = Some(s);
                Ok(())
            }
        }
    }

    /// Variable index, after the leading letter has been consumed.
    fn variable(&mut self, letter: char, pos: usize) -> Result<usize, ParseError> {
        if letter == 'x' {
            if let Some(d) = self.digits() {
                self.set_style(Style::Indexed, pos)?;
                let k: usize = d.parse().map_err(|_| ParseError::new(pos, "variable index too large"))?;
                if k == 0 {
                    return Err(ParseError::new(pos, "variables are numbered from x1"));
                }
                return Ok(k - 1);
            }
        }
        self.set_style(Style::Letters, pos)?;
        Ok(match letter {
            'x' => 0,
            'y' => 1,
            'z' => 2,
            _ => 3,
        })
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        let pos = self.pos();
        if self.peek() == Some('-') {
            return Err(ParseError::new(pos, "negative exponents are not allowed"));
        }
        let k = self.integer()?;
        i64::try_from(k).map_err(|_| ParseError::new(pos, "exponent too large"))
    }

    fn term(&mut self, sign: i64) -> Result<(BTreeMap<usize, i64>, GaussianRational), ParseError> {
        let mut coeff = GaussianRational::from_integer(sign);
        let mut powers: BTreeMap<usize, i64> = BTreeMap::new();
        let mut factors = 0;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let mut q = BigRational::from_integer(num);
                    if self.peek() == Some('/') {
                        self.bump();
                        let dpos = self.pos();
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(ParseError::new(dpos, "division by zero"));
                        }
                        q /= BigRational::from_integer(den);
                    }
                    coeff = coeff * GaussianRational::from_rational(q);
                }
                Some('i') => {
                    self.bump();
                    coeff = coeff * GaussianRational::i();
                }
                Some(c @ ('x' | 'y' | 'z' | 'w')) => {
                    self.bump();
                    let v = self.variable(c, pos)?;
                    let k = self.exponent()?;
                    *powers.entry(v).or_insert(0) += k;
                }
                Some(c) if factors == 0 => {
                    return Err(ParseError::new(pos, format!("unexpected '{c}'")));
                }
                None if factors == 0 => return Err(ParseError::new(pos, "expected a term")),
                _ => break,
            }
            factors += 1;
            match self.peek() {
                Some('*') => {
                    self.bump();
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit() || matches!(c, 'i' | 'x' | 'y' | 'z' | 'w')) {
                        return Err(ParseError::new(self.pos(), "expected a factor after '*'"));
                    }
                }
                Some(c) if c.is_ascii_digit() || matches!(c, 'i' | 'x' | 'y' | 'z' | 'w') => {}
                _ => break,
            }
        }
        Ok((powers, coeff))
    }
}

/// Parses a polynomial, leaving the variable count open.
pub fn parse_polynomial_text(src: &str) -> Result<ParsedPolynomial, ParseError> {
    let mut p = Parser {
        chars: src.chars().enumerate().collect(),
        at: 0,
        src,
        style: None,
    };
    let mut terms = Vec::new();
    let mut sign = 1;
    match p.peek() {
        Some('-') => {
            p.bump();
            sign = -1;
        }
        Some('+') => {
            p.bump();
        }
        _ => {}
    }
    loop {
        terms.push(p.term(sign)?);
        match p.peek() {
            None => break,
            Some('+') => {
                p.bump();
                sign = 1;
            }
            Some('-') => {
                p.bump();
                sign = -1;
            }
            Some(c) => return Err(ParseError::new(p.pos(), format!("unexpected '{c}'"))),
        }
    }
    let min_vars = terms
        .iter()
        .flat_map(|(pw, _)| pw.keys().map(|k| k + 1))
        .max()
        .unwrap_or(0);
    Ok(ParsedPolynomial { terms, min_vars })
}

/// Parses a polynomial in exactly `nvars` variables, or as many as it uses.
pub fn parse_polynomial(src: &str, nvars: Option<usize>) -> Result<SparsePolynomial, ParseError> {
    let parsed = parse_polynomial_text(src)?;
    let n = nvars.unwrap_or(parsed.min_vars.max(1));
    parsed.into_polynomial(n)
}

/// Index of a variable in the output of [`parse_polynomial`], for display.
pub fn variable_name(i: usize, nvars: usize) -> String {
    if nvars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Writes a polynomial back in the input grammar.
pub fn format_polynomial(p: &SparsePolynomial) -> String {
    let n = p.nvars();
    let mut out = String::new();
    for (e, c) in p.terms() {
        let mono: Vec<String> = e
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, k)| **k != 0)
            .map(|(i, k)| {
                if *k == 1 {
                    variable_name(i, n)
                } else {
                    format!("{}^{k}", variable_name(i, n))
                }
            })
            .collect();
        for (coeff, negative) in format_coefficient(c) {
            out.push_str(match (out.is_empty(), negative) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            });
            match (coeff.as_str(), mono.is_empty()) {
                ("1", false) => out.push_str(&mono.join("*")),
                (_, true) => out.push_str(&coeff),
                _ => {
                    out.push_str(&coeff);
                    out.push('*');
                    out.push_str(&mono.join("*"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Real and imaginary parts as `(magnitude text, negative)` pieces; the
/// grammar has no parentheses, so `a + b i` becomes two terms.
fn format_coefficient(c: &GaussianRational) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    let (re, im) = (c.re(), c.im());
    if !re.is_zero() {
        let neg = *re < BigRational::zero();
        out.push((if neg { (-re).to_string() } else { re.to_string() }, neg));
    }
    if !im.is_zero() {
        let neg = *im < BigRational::zero();
        let mag = if neg { -im } else { im.clone() };
        out.push((if mag.is_one() { "i".into() } else { format!("{mag}*i") }, neg));
    }
    out
}
