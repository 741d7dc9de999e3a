//! Parsing and canonical printing of polynomial expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := ('-' | '+') factor | power
//! power   := primary ('^' integer)?
//! primary := rational | 'i' | variable | '(' expr ')'
//! rational:= integer ('/' integer)?
//! variable:= 'x' digits ('_' digits)?
//! ```
//!
//! `x3` is coordinate 3 (of particle 1); `x3_2` is coordinate 3 of particle
//! 2. The flat variable index is `(particle - 1) * m + (coordinate - 1)`
//! with `m` the largest coordinate index in use. `*` is the commutative
//! product; star products are applied at the command level, never inside an
//! expression. Errors carry a one-based character position.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use moyal_core::multi_index::MultiIndex;
use moyal_core::scalar::{format_rational, Scalar};
use moyal_core::PolyExpr;

/// A parse failure with its position in the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// One-based character position.
    pub position: usize,
    /// What the parser was looking for.
    pub expected: String,
    /// What it found instead.
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// A named variable: coordinate and particle, both one-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct VarName {
    pub coordinate: usize,
    pub particle: usize,
}

impl VarName {
    fn render(&self) -> String {
        if self.particle == 1 {
            format!("x{}", self.coordinate)
        } else {
            format!("x{}_{}", self.coordinate, self.particle)
        }
    }
}

/// Maps named variables to flat indices: `m` coordinates per particle,
/// `n` particles.
#[derive(Clone, Debug, PartialEq)]
pub struct VarLayout {
    pub coordinates: usize,
    pub particles: usize,
}

impl VarLayout {
    pub fn nvars(&self) -> usize {
        self.coordinates * self.particles
    }

    pub fn flat_index(&self, v: &VarName) -> usize {
        (v.particle - 1) * self.coordinates + (v.coordinate - 1)
    }

    pub fn name(&self, flat: usize) -> VarName {
        VarName {
            coordinate: flat % self.coordinates + 1,
            particle: flat / self.coordinates + 1,
        }
    }

    /// The layout covering a set of used variables.
    fn covering(vars: &BTreeSet<VarName>) -> VarLayout {
        let coordinates = vars.iter().map(|v| v.coordinate).max().unwrap_or(1);
        let particles = vars.iter().map(|v| v.particle).max().unwrap_or(1);
        VarLayout {
            coordinates,
            particles,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Ast {
    Constant(BigRational),
    ImaginaryUnit,
    Var(VarName),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

impl Ast {
    fn collect_vars(&self, out: &mut BTreeSet<VarName>) {
        match self {
            Ast::Var(v) => {
                out.insert(*v);
            }
            Ast::Neg(a) | Ast::Pow(a, _) => a.collect_vars(out),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            _ => {}
        }
    }

    fn lower(&self, layout: &VarLayout) -> PolyExpr {
        let nv = layout.nvars();
        match self {
            Ast::Constant(c) => PolyExpr::constant(nv, Scalar::from_real(c.clone())),
            Ast::ImaginaryUnit => PolyExpr::constant(nv, Scalar::i()),
            Ast::Var(v) => PolyExpr::coordinate(nv, layout.flat_index(v)),
            Ast::Neg(a) => -&a.lower(layout),
            Ast::Add(a, b) => &a.lower(layout) + &b.lower(layout),
            Ast::Sub(a, b) => &a.lower(layout) - &b.lower(layout),
            Ast::Mul(a, b) => &a.lower(layout) * &b.lower(layout),
            Ast::Pow(a, e) => {
                let base = a.lower(layout);
                let mut acc = PolyExpr::one(nv);
                for _ in 0..*e {
                    acc = &acc * &base;
                }
                acc
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Integer(BigInt),
    Imag,
    Var(VarName),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Integer(n) => format!("integer {n}"),
            Token::Imag => "'i'".into(),
            Token::Var(v) => format!("variable {}", v.render()),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::Open => "'('".into(),
            Token::Close => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn next_token(&mut self) -> Result<(Token, usize), ParseError> {
        self.skip_ws();
        let start = self.pos + 1; // one-based
        if self.pos >= self.chars.len() {
            return Ok((Token::End, start));
        }
        let c = self.chars[self.pos];
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() {
            let begin = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits: String = self.chars[begin..self.pos].iter().collect();
            let n: BigInt = digits.parse().expect("digit run parses");
            return Ok((Token::Integer(n), start));
        }
        if c == 'i' {
            self.pos += 1;
            return Ok((Token::Imag, start));
        }
        if c == 'x' {
            self.pos += 1;
            let coordinate = self.read_number(start, "coordinate digits after 'x'")?;
            let particle = if self.pos < self.chars.len() && self.chars[self.pos] == '_' {
                self.pos += 1;
                self.read_number(self.pos, "particle digits after '_'")?
            } else {
                1
            };
            if coordinate == 0 || particle == 0 {
                return Err(ParseError {
                    position: start,
                    expected: "one-based variable indices".into(),
                    found: "zero index".into(),
                });
            }
            return Ok((
                Token::Var(VarName {
                    coordinate,
                    particle,
                }),
                start,
            ));
        }
        Err(ParseError {
            position: start,
            expected: "a term".into(),
            found: format!("'{c}'"),
        })
    }

    fn read_number(&mut self, at: usize, what: &str) -> Result<usize, ParseError> {
        let begin = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if begin == self.pos {
            return Err(ParseError {
                position: at,
                expected: what.into(),
                found: self
                    .chars
                    .get(self.pos)
                    .map(|c| format!("'{c}'"))
                    .unwrap_or_else(|| "end of input".into()),
            });
        }
        let digits: String = self.chars[begin..self.pos].iter().collect();
        digits.parse().map_err(|_| ParseError {
            position: at,
            expected: "an index that fits in usize".into(),
            found: format!("'{}'", &self.text[begin.min(self.text.len())..]),
        })
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    cursor: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(text);
        let mut tokens = Vec::new();
        loop {
            let (t, at) = lexer.next_token()?;
            let end = t == Token::End;
            tokens.push((t, at));
            if end {
                break;
            }
        }
        Ok(Parser { tokens, cursor: 0 })
    }

    fn peek(&self) -> &(Token, usize) {
        &self.tokens[self.cursor]
    }

    fn bump(&mut self) -> (Token, usize) {
        let t = self.tokens[self.cursor].clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (t, at) = self.peek();
        ParseError {
            position: *at,
            expected: expected.into(),
            found: t.describe(),
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().0 {
                Token::Plus => {
                    self.bump();
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().0 == Token::Star {
            self.bump();
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        match self.peek().0 {
            Token::Minus => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.factor()?)))
            }
            Token::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.primary()?;
        if self.peek().0 == Token::Caret {
            self.bump();
            match self.bump() {
                (Token::Integer(n), at) => {
                    if n.is_negative() {
                        return Err(ParseError {
                            position: at,
                            expected: "a nonnegative integer exponent".into(),
                            found: format!("{n}"),
                        });
                    }
                    let e: u32 = n.try_into().map_err(|_| ParseError {
                        position: at,
                        expected: "an exponent that fits in u32".into(),
                        found: "larger integer".into(),
                    })?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                (t, at) => Err(ParseError {
                    position: at,
                    expected: "a nonnegative integer exponent".into(),
                    found: t.describe(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        match self.peek().0.clone() {
            Token::Integer(n) => {
                self.bump();
                // optional '/ integer' forms an exact rational literal
                if self.peek().0 == Token::Slash {
                    self.bump();
                    match self.bump() {
                        (Token::Integer(d), at) => {
                            if d.is_zero() {
                                return Err(ParseError {
                                    position: at,
                                    expected: "a nonzero denominator".into(),
                                    found: "0".into(),
                                });
                            }
                            Ok(Ast::Constant(BigRational::new(n, d)))
                        }
                        (t, at) => Err(ParseError {
                            position: at,
                            expected: "a denominator integer".into(),
                            found: t.describe(),
                        }),
                    }
                } else {
                    Ok(Ast::Constant(BigRational::from_integer(n)))
                }
            }
            Token::Imag => {
                self.bump();
                Ok(Ast::ImaginaryUnit)
            }
            Token::Var(v) => {
                self.bump();
                Ok(Ast::Var(v))
            }
            Token::Open => {
                self.bump();
                let inner = self.expr()?;
                match self.bump() {
                    (Token::Close, _) => Ok(inner),
                    (t, at) => Err(ParseError {
                        position: at,
                        expected: "')'".into(),
                        found: t.describe(),
                    }),
                }
            }
            _ => Err(self.error("a term")),
        }
    }
}

/// Parses a single expression; the layout covers exactly its variables.
pub fn parse_expression(text: &str) -> Result<(PolyExpr, VarLayout), ParseError> {
    let (polys, layout) = parse_expressions(&[text])?;
    Ok((polys.into_iter().next().unwrap(), layout))
}

/// Parses several expressions over one shared variable layout.
pub fn parse_expressions(texts: &[&str]) -> Result<(Vec<PolyExpr>, VarLayout), ParseError> {
    let mut asts = Vec::with_capacity(texts.len());
    let mut vars = BTreeSet::new();
    for text in texts {
        let mut parser = Parser::new(text)?;
        let ast = parser.expr()?;
        match parser.bump() {
            (Token::End, _) => {}
            (t, at) => {
                return Err(ParseError {
                    position: at,
                    expected: "'+', '-', '*', '^' or end of input".into(),
                    found: t.describe(),
                })
            }
        }
        ast.collect_vars(&mut vars);
        asts.push(ast);
    }
    let layout = VarLayout::covering(&vars);
    Ok((asts.iter().map(|a| a.lower(&layout)).collect(), layout))
}

/// Canonical text form: terms in descending graded-lex order, exact
/// coefficients, variables named through the layout.
pub fn print_poly(p: &PolyExpr, layout: &VarLayout) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&MultiIndex, &Scalar)> = p.terms().collect();
    terms.reverse();
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let mono = render_monomial(e, layout);
        let (sign_negative, body) = render_term(c, &mono);
        if idx == 0 {
            if sign_negative {
                out.push('-');
            }
        } else if sign_negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

fn render_monomial(e: &MultiIndex, layout: &VarLayout) -> String {
    let mut parts = Vec::new();
    for (flat, &exp) in e.exps().iter().enumerate() {
        if exp == 0 {
            continue;
        }
        let name = layout.name(flat).render();
        if exp == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{exp}"));
        }
    }
    parts.join("*")
}

/// Renders `coefficient * monomial`, factoring out an overall minus sign.
fn render_term(c: &Scalar, mono: &str) -> (bool, String) {
    let negative = if !c.re.is_zero() {
        c.re.is_negative()
    } else {
        c.im.is_negative()
    };
    let c = if negative { -c } else { c.clone() };
    let coeff = if c.is_one() {
        None
    } else if c.re.is_zero() && c.im.is_one() {
        Some("i".to_string())
    } else if c.im.is_zero() {
        Some(wrap_fraction(&format_rational(&c.re)))
    } else if c.re.is_zero() {
        Some(format!("{}*i", wrap_fraction(&format_rational(&c.im))))
    } else {
        Some(format!("({})", c.serialize()))
    };
    let body = match (coeff, mono.is_empty()) {
        (None, true) => "1".to_string(),
        (None, false) => mono.to_string(),
        (Some(cs), true) => cs,
        (Some(cs), false) => format!("{cs}*{mono}"),
    };
    (negative, body)
}

fn wrap_fraction(s: &str) -> String {
    if s.contains('/') {
        format!("({s})")
    } else {
        s.to_string()
    }
}
