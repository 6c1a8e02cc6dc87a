//! Text syntax for rational functions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := ['-'] atom ['^' uint]
//! atom   := ident | uint | '(' expr ')'
//! ```
//!
//! Identifiers are `[A-Za-z][A-Za-z0-9_']*`; whitespace is ignored. The
//! exponent binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use super::{RatFuncError, Rational, RationalFunction, Variables};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(Tok, usize), RatFuncError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        if b.is_ascii_alphabetic() {
            let mut end = start + 1;
            while end < bytes.len()
                && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_' || bytes[end] == b'\'')
            {
                end += 1;
            }
            self.pos = end;
            return Ok((Tok::Ident(self.src[start..end].to_string()), start));
        }
        if b.is_ascii_digit() {
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            self.pos = end;
            let n: BigInt = self.src[start..end].parse().expect("digits");
            return Ok((Tok::Int(n), start));
        }
        if matches!(b, b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')') {
            self.pos += 1;
            return Ok((Tok::Op(b as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap();
        Err(syntax(start, format!("unexpected character `{ch}`")))
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> RatFuncError {
    RatFuncError::Parse {
        offset,
        message: message.into(),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    vars: &'a Variables,
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(), RatFuncError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn expr(&mut self) -> Result<RationalFunction, RatFuncError> {
        let mut acc = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = self.tok {
            self.advance()?;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, RatFuncError> {
        let mut acc = self.factor()?;
        while let Tok::Op(c @ ('*' | '/')) = self.tok {
            let at = self.at;
            self.advance()?;
            let rhs = self.factor()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| syntax(at, "division by zero"))?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction, RatFuncError> {
        let negate = self.tok == Tok::Op('-');
        if negate {
            self.advance()?;
        }
        let base = self.atom()?;
        let value = if self.tok == Tok::Op('^') {
            self.advance()?;
            match std::mem::replace(&mut self.tok, Tok::End) {
                Tok::Int(n) => {
                    let at = self.at;
                    let k: u32 = n
                        .try_into()
                        .map_err(|_| syntax(at, "exponent too large"))?;
                    self.advance()?;
                    base.pow(k as i64)
                }
                _ => return Err(syntax(self.at, "expected a nonnegative integer exponent")),
            }
        } else {
            base
        };
        Ok(if negate { -&value } else { value })
    }

    fn atom(&mut self) -> Result<RationalFunction, RatFuncError> {
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Ident(name) => {
                let f = RationalFunction::var_named(self.vars, &name)?;
                self.advance()?;
                Ok(f)
            }
            Tok::Int(n) => {
                self.advance()?;
                Ok(RationalFunction::constant(self.vars, Rational::from_integer(n)))
            }
            Tok::Op('(') => {
                self.advance()?;
                let inner = self.expr()?;
                if self.tok != Tok::Op(')') {
                    return Err(syntax(self.at, "expected `)`"));
                }
                self.advance()?;
                Ok(inner)
            }
            Tok::End => Err(syntax(self.at, "unexpected end of input")),
            Tok::Op(c) => Err(syntax(self.at, format!("unexpected `{c}`"))),
        }
    }
}

/// Parse `text` over the variables `chart_vars`.
pub fn parse<S: AsRef<str>>(text: &str, chart_vars: &[S]) -> Result<RationalFunction, RatFuncError> {
    parse_in(text, &Variables::new(chart_vars)?)
}

/// Parse `text` over an existing variable universe.
pub fn parse_in(text: &str, vars: &Variables) -> Result<RationalFunction, RatFuncError> {
    let mut p = Parser {
        lexer: Lexer { src: text, pos: 0 },
        tok: Tok::End,
        at: 0,
        vars,
    };
    p.advance()?;
    let f = p.expr()?;
    if p.tok != Tok::End {
        return Err(syntax(p.at, "unexpected trailing input"));
    }
    Ok(f)
}
