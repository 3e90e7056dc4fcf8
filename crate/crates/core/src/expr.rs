//! Expression language for elements.
//!
//! ```text
//! program := ("let" ident "=" expr ";")* expr
//! expr    := ("+" | "-")? term (("+" | "-") term)*
//! term    := factor ("*"? factor)*            juxtaposition multiplies
//! factor  := atom ("'" | "^" int)*            ' is the adjoint
//! atom    := number | "i" | "I" | "U" | "u(" int ")" | "S(" int ")" | "(" expr ")" | ident
//! number  := int ("/" int)? "i"?              e.g. 3, 2/5, 1/3i
//! ```
//!
//! `I` is the unit, `i` the imaginary unit, `U = u(1)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::Element;
use crate::dynamics::SystemDescriptor;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Scalar(Coeff),
    Identity,
    Unitary(i64),
    Isometry(i64),
    Var(String),
    Adjoint(Box<Expr>),
    Pow(Box<Expr>, u32),
    Product(Box<Expr>, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
    Negation(Box<Expr>),
    Group(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub bindings: Vec<(String, Expr)>,
    pub body: Expr,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(c) => write!(f, "{c}"),
            Expr::Identity => write!(f, "I"),
            Expr::Unitary(1) => write!(f, "U"),
            Expr::Unitary(g) => write!(f, "u({g})"),
            Expr::Isometry(p) => write!(f, "S({p})"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Adjoint(e) => write!(f, "{e}'"),
            Expr::Pow(e, k) => write!(f, "{e}^{k}"),
            Expr::Product(a, b) => write!(f, "{a} {b}"),
            Expr::Sum(a, b) => write!(f, "{a} + {b}"),
            Expr::Difference(a, b) => write!(f, "{a} - {b}"),
            Expr::Negation(e) => write!(f, "-{e}"),
            Expr::Group(e) => write!(f, "({e})"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, e) in &self.bindings {
            write!(f, "let {name} = {e}; ")?;
        }
        write!(f, "{}", self.body)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt, bool),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Prime,
    LParen,
    RParen,
    Semi,
    Equals,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0, i0) = (line, col, i);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '\'' => Some(Tok::Prime),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        let tok = if let Some(t) = single {
            i += 1;
            t
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let ident_char = |ch: char| ch.is_alphanumeric() || ch == '_';
            let imag = i < chars.len()
                && chars[i] == 'i'
                && !(i + 1 < chars.len() && ident_char(chars[i + 1]));
            if imag {
                i += 1;
            } else if i < chars.len() && ident_char(chars[i]) {
                return Err(syntax(line, col + (i - start), "unexpected character after number"));
            }
            Tok::Int(digits.parse().expect("digits"), imag)
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        };
        col = c0 + (i - i0);
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    system: SystemDescriptor,
    scope: Vec<String>,
}

const RESERVED: [&str; 6] = ["I", "U", "u", "S", "i", "let"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut bindings = Vec::new();
        while *self.peek() == Tok::Ident("let".into()) {
            self.bump();
            let name = match self.bump() {
                Tok::Ident(n) if !RESERVED.contains(&n.as_str()) => n,
                _ => {
                    self.pos -= 1;
                    return Err(self.err("expected a binding name"));
                }
            };
            self.expect(Tok::Equals, "`=`")?;
            let e = self.expr()?;
            self.expect(Tok::Semi, "`;`")?;
            self.scope.push(name.clone());
            bindings.push((name, e));
        }
        let body = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(Program { bindings, body })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                Expr::Negation(Box::new(self.term()?))
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Difference(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Int(..) | Tok::LParen => true,
            Tok::Ident(n) => n != "let",
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.starts_atom() {
                return Ok(lhs);
            }
            lhs = Expr::Product(Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        loop {
            match self.peek() {
                Tok::Prime => {
                    self.bump();
                    e = Expr::Adjoint(Box::new(e));
                }
                Tok::Caret => {
                    self.bump();
                    let k = match self.bump() {
                        Tok::Int(k, false) => u32::try_from(&k).map_err(|_| self.err("exponent too large"))?,
                        _ => return Err(self.err("expected a nonnegative exponent")),
                    };
                    e = Expr::Pow(Box::new(e), k);
                }
                _ => return Ok(e),
            }
        }
    }

    fn int_arg(&mut self) -> Result<i64> {
        self.expect(Tok::LParen, "`(`")?;
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (l, c) = self.here();
        let v = match self.bump() {
            Tok::Int(v, false) => i64::try_from(&v).map_err(|_| syntax(l, c, "integer out of range"))?,
            _ => return Err(syntax(l, c, "expected an integer")),
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        let (l, c) = self.here();
        match self.bump() {
            Tok::Int(n, imag) => {
                let mut r = Rational::from_integer(n);
                let mut imag = imag;
                if *self.peek() == Tok::Slash {
                    if imag {
                        return Err(self.err("imaginary marker must follow the denominator"));
                    }
                    self.bump();
                    match self.bump() {
                        Tok::Int(d, im) if !d.is_zero() => {
                            r /= Rational::from_integer(d);
                            imag = im;
                        }
                        Tok::Int(..) => return Err(syntax(l, c, "zero denominator")),
                        _ => return Err(self.err("expected a denominator")),
                    }
                }
                Ok(Expr::Scalar(if imag {
                    Coeff::new(Rational::zero(), r)
                } else {
                    Coeff::real(r)
                }))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Group(Box::new(e)))
            }
            Tok::Ident(name) => match name.as_str() {
                "I" => Ok(Expr::Identity),
                "i" => Ok(Expr::Scalar(Coeff::i())),
                "U" => Ok(Expr::Unitary(1)),
                "u" => Ok(Expr::Unitary(self.int_arg()?)),
                "S" => {
                    let p = self.int_arg()?;
                    self.system.check(p)?;
                    Ok(Expr::Isometry(p))
                }
                _ if self.scope.contains(&name) => Ok(Expr::Var(name)),
                _ => Err(Error::UnknownIdentifier(name)),
            },
            Tok::End => Err(syntax(l, c, "unexpected end of input")),
            t => Err(syntax(l, c, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses a program, validating every `S(p)` against the system.
pub fn parse(source: &str, system: SystemDescriptor) -> Result<Program> {
    let mut p = Parser {
        toks: lex(source)?,
        pos: 0,
        system,
        scope: Vec::new(),
    };
    p.program()
}

fn eval_expr(e: &Expr, sys: SystemDescriptor, env: &HashMap<String, Element>) -> Result<Element> {
    Ok(match e {
        Expr::Scalar(c) => Element::scalar(sys, c.clone()),
        Expr::Identity => Element::one(sys),
        Expr::Unitary(g) => Element::unitary(sys, *g),
        Expr::Isometry(p) => Element::isometry(sys, *p)?,
        Expr::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnknownIdentifier(v.clone()))?,
        Expr::Adjoint(x) => eval_expr(x, sys, env)?.adjoint(),
        Expr::Pow(x, k) => eval_expr(x, sys, env)?.pow(*k),
        Expr::Product(a, b) => eval_expr(a, sys, env)?.checked_mul(&eval_expr(b, sys, env)?)?,
        Expr::Sum(a, b) => eval_expr(a, sys, env)?.checked_add(&eval_expr(b, sys, env)?)?,
        Expr::Difference(a, b) => eval_expr(a, sys, env)?.checked_sub(&eval_expr(b, sys, env)?)?,
        Expr::Negation(x) => -&eval_expr(x, sys, env)?,
        Expr::Group(x) => eval_expr(x, sys, env)?,
    })
}

pub fn eval(program: &Program, sys: SystemDescriptor) -> Result<Element> {
    let mut env = HashMap::new();
    for (name, e) in &program.bindings {
        let v = eval_expr(e, sys, &env)?;
        env.insert(name.clone(), v);
    }
    eval_expr(&program.body, sys, &env)
}

/// `parse` followed by `eval`.
pub fn evaluate(source: &str, sys: SystemDescriptor) -> Result<Element> {
    eval(&parse(source, sys)?, sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q2() -> SystemDescriptor {
        SystemDescriptor::q2()
    }

    #[test]
    fn covering_relation_source() {
        let e = evaluate("S(2)S(2)' + U S(2) S(2)' U'", q2()).unwrap();
        assert!(e.equals(&Element::one(q2())).unwrap());
        assert_eq!(evaluate("I", SystemDescriptor::Qn).unwrap(), Element::one(SystemDescriptor::Qn));
    }

    #[test]
    fn invalid_semigroup_element() {
        assert!(matches!(
            parse("S(3)", q2()),
            Err(Error::InvalidSemigroupElement { element: 3, .. })
        ));
    }

    #[test]
    fn scalars_and_operators() {
        let e = evaluate("1/3i * 3 I", q2()).unwrap();
        assert_eq!(e, Element::scalar(q2(), Coeff::i()));
        let e = evaluate("-2/4 + i", q2()).unwrap();
        assert_eq!(e, Element::scalar(q2(), Coeff::new(rat(-1, 2), rat(1, 1))));
        let e = evaluate("S(2)^3 - S(8)", q2()).unwrap();
        assert!(e.is_zero());
        let e = evaluate("u(-2) u(2)", q2()).unwrap();
        assert_eq!(e, Element::one(q2()));
        let e = evaluate("(U S(2))' ", q2()).unwrap();
        assert_eq!(e.to_string(), "u(-1) S(2)' u(1)");
    }

    #[test]
    fn bindings() {
        let src = "let s1 = U S(2);\nlet p = s1 s1';\n p + S(2) S(2)'";
        assert!(evaluate(src, q2()).unwrap().equals(&Element::one(q2())).unwrap());
        assert!(matches!(evaluate("foo + I", q2()), Err(Error::UnknownIdentifier(_))));
        assert!(matches!(evaluate("let U = I; U", q2()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("S(2) +\n  ) ", q2()) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse("S(2", q2()) {
            Err(Error::Syntax { line: 1, column: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse("2/0", q2()).is_err());
        assert!(parse("3x", q2()).is_err());
        assert!(parse("S(2) $", q2()).is_err());
    }

    #[test]
    fn printed_elements_reparse() {
        let src = "2/3 u(-3) S(4) S(2)' u(1) - 1/5i S(8)' + (1/2 - 3i) U";
        let e = evaluate(src, q2()).unwrap();
        let again = evaluate(&e.to_string(), q2()).unwrap();
        assert_eq!(again, e);
        let p = parse(src, q2()).unwrap();
        assert_eq!(eval(&parse(&p.to_string(), q2()).unwrap(), q2()).unwrap(), e);
    }
}
