//! Parser and evaluator for one-dimensional map expressions.
//!
//! Grammar: literals, the variable `x`, one named parameter, the operators
//! `+ - * / ^` (with unary minus), the functions `exp`, `sin`, `cos`, and
//! parentheses. Precedence is `^` above unary minus above `* /` above `+ -`,
//! with `^` right-associative. This grammar is part of the CLI contract.

use super::{DualValue, EvalError, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Exp,
    Sin,
    Cos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    /// The map variable `x`.
    Var,
    /// The named scalar parameter.
    Param,
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                toks.push(Token { tok, offset: i });
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("invalid number literal `{text}`"),
                })?;
                toks.push(Token {
                    tok: Tok::Num(value),
                    offset: start,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push(Token {
                    tok: Tok::Ident(src[start..i].to_string()),
                    offset: start,
                });
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    src_len: usize,
    param: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.offset)
            .unwrap_or(self.src_len)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op) = match self.peek() {
            Some(Tok::Plus) => Some(BinOp::Add),
            Some(Tok::Minus) => Some(BinOp::Sub),
            _ => None,
        } {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = match self.peek() {
            Some(Tok::Star) => Some(BinOp::Mul),
            Some(Tok::Slash) => Some(BinOp::Div),
            _ => None,
        } {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            // right-associative; the exponent may carry its own unary minus
            let exponent = self.unary()?;
            return Ok(Expr::Binary(
                BinOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.bump().map(|t| t.tok.clone()) {
            Some(Tok::Num(v)) => Ok(Expr::Number(v)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "exp" | "sin" | "cos" => {
                    let op = match name.as_str() {
                        "exp" => UnaryOp::Exp,
                        "sin" => UnaryOp::Sin,
                        _ => UnaryOp::Cos,
                    };
                    match self.peek() {
                        Some(Tok::LParen) => {
                            self.pos += 1;
                            let arg = self.expr()?;
                            self.expect_rparen()?;
                            Ok(Expr::Unary(op, Box::new(arg)))
                        }
                        _ => Err(ParseError::Syntax {
                            offset: self.offset(),
                            message: format!("expected `(` after function `{name}`"),
                        }),
                    }
                }
                _ if name == self.param => Ok(Expr::Param),
                _ => Err(ParseError::UnknownIdentifier { offset, name }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(other) => Err(ParseError::Syntax {
                offset,
                message: format!("expected operand, found `{}`", tok_text(&other)),
            }),
            None => Err(ParseError::Syntax {
                offset,
                message: "unexpected end of expression".to_string(),
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let offset = self.offset();
        match self.bump().map(|t| t.tok.clone()) {
            Some(Tok::RParen) => Ok(()),
            Some(other) => Err(ParseError::Syntax {
                offset,
                message: format!("expected `)`, found `{}`", tok_text(&other)),
            }),
            None => Err(ParseError::Syntax {
                offset,
                message: "expected `)`".to_string(),
            }),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(v) => v.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}

const RESERVED: [&str; 4] = ["x", "exp", "sin", "cos"];

/// Parses `src` into an AST, binding `param` as the single named parameter.
pub fn parse(src: &str, param: &str) -> Result<Expr, ParseError> {
    if src.trim().is_empty() {
        return Err(ParseError::Syntax {
            offset: 0,
            message: "empty expression".to_string(),
        });
    }
    if param.is_empty() || RESERVED.contains(&param) {
        return Err(ParseError::InvalidParameterName(param.to_string()));
    }
    let toks = tokenize(src)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        src_len: src.len(),
        param,
    };
    let ast = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(ParseError::Syntax {
            offset: parser.offset(),
            message: "trailing input after expression".to_string(),
        });
    }
    Ok(ast)
}

/// Scans `src` for the unique identifier that is neither `x` nor a function
/// name. Returns `None` when the expression has no free parameter.
pub fn infer_parameter_name(src: &str) -> Result<Option<String>, ParseError> {
    let toks = tokenize(src)?;
    let mut found: Option<(String, usize)> = None;
    for t in &toks {
        if let Tok::Ident(name) = &t.tok {
            if RESERVED.contains(&name.as_str()) {
                continue;
            }
            match &found {
                None => found = Some((name.clone(), t.offset)),
                Some((prev, _)) if prev == name => {}
                Some(_) => {
                    return Err(ParseError::UnknownIdentifier {
                        offset: t.offset,
                        name: name.clone(),
                    })
                }
            }
        }
    }
    Ok(found.map(|(n, _)| n))
}

fn checked_pow(base: f64, exponent: f64) -> Result<f64, EvalError> {
    if base == 0.0 && exponent < 0.0 {
        return Err(EvalError::ZeroToNegativePower);
    }
    if base < 0.0 && exponent.fract() != 0.0 {
        return Err(EvalError::NegativeBaseNonIntegerPower {
            base,
            exponent,
        });
    }
    Ok(base.powf(exponent))
}

/// Evaluates the expression at `x` with the parameter value `param`.
pub fn eval(ast: &Expr, x: f64, param: f64) -> Result<f64, EvalError> {
    Ok(match ast {
        Expr::Number(v) => *v,
        Expr::Var => x,
        Expr::Param => param,
        Expr::Unary(op, inner) => {
            let v = eval(inner, x, param)?;
            match op {
                UnaryOp::Neg => -v,
                UnaryOp::Exp => v.exp(),
                UnaryOp::Sin => v.sin(),
                UnaryOp::Cos => v.cos(),
            }
        }
        Expr::Binary(op, l, r) => {
            let a = eval(l, x, param)?;
            let b = eval(r, x, param)?;
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => {
                    if b == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    a / b
                }
                BinOp::Pow => checked_pow(a, b)?,
            }
        }
    })
}

/// Forward-mode evaluation: value and d/dx at `x`.
pub fn eval_dual(ast: &Expr, x: f64, param: f64) -> Result<DualValue, EvalError> {
    Ok(match ast {
        Expr::Number(v) => DualValue::constant(*v),
        Expr::Var => DualValue {
            value: x,
            derivative: 1.0,
        },
        Expr::Param => DualValue::constant(param),
        Expr::Unary(op, inner) => {
            let u = eval_dual(inner, x, param)?;
            match op {
                UnaryOp::Neg => DualValue {
                    value: -u.value,
                    derivative: -u.derivative,
                },
                UnaryOp::Exp => {
                    let e = u.value.exp();
                    DualValue {
                        value: e,
                        derivative: u.derivative * e,
                    }
                }
                UnaryOp::Sin => DualValue {
                    value: u.value.sin(),
                    derivative: u.derivative * u.value.cos(),
                },
                UnaryOp::Cos => DualValue {
                    value: u.value.cos(),
                    derivative: -u.derivative * u.value.sin(),
                },
            }
        }
        Expr::Binary(op, l, r) => {
            let a = eval_dual(l, x, param)?;
            let b = eval_dual(r, x, param)?;
            match op {
                BinOp::Add => DualValue {
                    value: a.value + b.value,
                    derivative: a.derivative + b.derivative,
                },
                BinOp::Sub => DualValue {
                    value: a.value - b.value,
                    derivative: a.derivative - b.derivative,
                },
                BinOp::Mul => DualValue {
                    value: a.value * b.value,
                    derivative: a.derivative * b.value + a.value * b.derivative,
                },
                BinOp::Div => {
                    if b.value == 0.0 {
                        return Err(EvalError::DivisionByZero);
                    }
                    DualValue {
                        value: a.value / b.value,
                        derivative: (a.derivative * b.value - a.value * b.derivative)
                            / (b.value * b.value),
                    }
                }
                BinOp::Pow => {
                    let value = checked_pow(a.value, b.value)?;
                    let derivative = if b.derivative == 0.0 {
                        // constant exponent c: d/dx u^c = c u^(c-1) u'
                        if a.derivative == 0.0 || b.value == 0.0 {
                            0.0
                        } else {
                            b.value * checked_pow(a.value, b.value - 1.0)? * a.derivative
                        }
                    } else {
                        // general exponent needs ln(base)
                        if a.value <= 0.0 {
                            return Err(EvalError::NegativeBaseNonIntegerPower {
                                base: a.value,
                                exponent: b.value,
                            });
                        }
                        value
                            * (b.derivative * a.value.ln()
                                + b.value * a.derivative / a.value)
                    };
                    DualValue { value, derivative }
                }
            }
        }
    })
}
