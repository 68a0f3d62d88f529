//! Lexer and recursive-descent parser for expressions, scalars, and
//! function-definition files.
//!
//! Grammar:
//!
//! ```text
//! expr      := term (('+' | '-') term)*
//! term      := factor (('*' | '/') factor)*
//! factor    := ['-'] atom ['^' nat]
//! atom      := number | 't' | 'sqrt2' | call | '(' expr ')'
//! call      := 'abs' '(' expr ')'
//!            | 'min' '(' expr ',' expr ')' | 'max' '(' expr ',' expr ')'
//!            | 'piecewise' '(' (pred ':' expr ',')* 'else' ':' expr ')'
//! pred      := andpred ('or' andpred)*
//! andpred   := predatom ('and' predatom)*
//! predatom  := 'rational' '(' 't' ')' | 't' cmp expr | '(' pred ')'
//! cmp       := '<' | '<=' | '>' | '>='
//! ```
//!
//! Numbers are unsigned decimal integers; rationals arise from division and
//! are folded at parse time, as is every other constant subexpression. The
//! bound of a comparison must fold to a constant. `#` starts a comment.

use num::bigint::BigInt;
use num::{Signed, Zero};

use super::{Expr, IntervalFunction, Predicate};
use crate::error::{ParseError, ParseErrorKind};
use crate::quad::{QuadNum, Rational};
use crate::scalar::{max_pair, min_pair};

type Pos = (usize, usize);

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Colon,
    Lt,
    Le,
    Gt,
    Ge,
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Lt => write!(f, "`<`"),
            Tok::Le => write!(f, "`<=`"),
            Tok::Gt => write!(f, "`>`"),
            Tok::Ge => write!(f, "`>=`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str, line0: usize, col0: usize) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = line0;
    let mut col = col0;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let n = digits.parse::<BigInt>().map_err(|_| ParseError {
                    line: pos.0,
                    col: pos.1,
                    kind: ParseErrorKind::MalformedNumber(digits.clone()),
                })?;
                out.push((Tok::Num(n), pos));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(name), pos));
            }
            '<' | '>' => {
                chars.next();
                col += 1;
                let eq = chars.peek() == Some(&'=');
                if eq {
                    chars.next();
                    col += 1;
                }
                let tok = match (c, eq) {
                    ('<', false) => Tok::Lt,
                    ('<', true) => Tok::Le,
                    ('>', false) => Tok::Gt,
                    _ => Tok::Ge,
                };
                out.push((tok, pos));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ':' => Tok::Colon,
                    other => {
                        return Err(ParseError {
                            line: pos.0,
                            col: pos.1,
                            kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                        })
                    }
                };
                chars.next();
                col += 1;
                out.push((tok, pos));
            }
        }
    }
    out.push((Tok::Eof, (line, col)));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err_at(&self, pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError { line: pos.0, col: pos.1, kind }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        self.err_at(self.pos(), kind)
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn expect(&mut self, want: Tok, ctx: &str) -> Result<Pos, ParseError> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(self.syntax(format!("expected {want} {ctx}, found {}", self.peek())))
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.syntax(format!("unexpected trailing {}", self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = fold_binary(BinOp::Add, lhs, rhs, self.pos())?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = fold_binary(BinOp::Sub, lhs, rhs, self.pos())?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = fold_binary(BinOp::Mul, lhs, rhs, self.pos())?;
                }
                Tok::Slash => {
                    let at = self.pos();
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = fold_binary(BinOp::Div, lhs, rhs, at)?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut e = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let (tok, pos) = self.bump();
            let n = match tok {
                Tok::Num(n) => u32::try_from(&n).map_err(|_| {
                    self.err_at(pos, ParseErrorKind::Syntax("exponent too large".into()))
                })?,
                other => {
                    return Err(self.err_at(
                        pos,
                        ParseErrorKind::Syntax(format!(
                            "exponent must be a nonnegative integer, found {other}"
                        )),
                    ))
                }
            };
            e = match e {
                Expr::Const(q) => Expr::Const(num::pow::pow(q, n as usize)),
                other => other.pow(n),
            };
        }
        if negate {
            e = match e {
                Expr::Const(q) => Expr::Const(-q),
                other => other.neg(),
            };
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(_) => {
                let (tok, _) = self.bump();
                let Tok::Num(n) = tok else { unreachable!() };
                Ok(Expr::Const(QuadNum::rational(Rational::from_integer(n))))
            }
            Tok::Ident(name) => match name.as_str() {
                "t" => {
                    self.bump();
                    Ok(Expr::Var)
                }
                "sqrt2" => {
                    self.bump();
                    Ok(Expr::Const(QuadNum::sqrt2()))
                }
                "abs" => {
                    self.bump();
                    self.expect(Tok::LParen, "after `abs`")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "to close `abs(`")?;
                    Ok(match arg {
                        Expr::Const(q) => Expr::Const(q.abs()),
                        other => other.abs(),
                    })
                }
                "min" | "max" => {
                    let is_min = name == "min";
                    self.bump();
                    self.expect(Tok::LParen, "after the function name")?;
                    let a = self.expr()?;
                    self.expect(Tok::Comma, "between the two arguments")?;
                    let b = self.expr()?;
                    self.expect(Tok::RParen, "to close the call")?;
                    Ok(match (a, b) {
                        (Expr::Const(x), Expr::Const(y)) => Expr::Const(if is_min {
                            min_pair(x, y)
                        } else {
                            max_pair(x, y)
                        }),
                        (a, b) => {
                            if is_min {
                                a.min(b)
                            } else {
                                a.max(b)
                            }
                        }
                    })
                }
                "piecewise" => {
                    self.bump();
                    self.piecewise()
                }
                "else" | "and" | "or" | "rational" => {
                    Err(self.syntax(format!("keyword `{name}` is not valid here")))
                }
                _ => Err(self.err(ParseErrorKind::UnknownIdentifier(name))),
            },
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "to close the group")?;
                Ok(e)
            }
            other => Err(self.syntax(format!("expected an expression, found {other}"))),
        }
    }

    fn piecewise(&mut self) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "after `piecewise`")?;
        let mut branches = Vec::new();
        loop {
            if *self.peek() == Tok::RParen {
                return Err(self.err(ParseErrorKind::MissingElse));
            }
            if *self.peek() == Tok::Ident("else".into()) {
                self.bump();
                self.expect(Tok::Colon, "after `else`")?;
                let otherwise = self.expr()?;
                self.expect(Tok::RParen, "to close `piecewise(` after the else-branch")?;
                return Ok(Expr::Piecewise(branches, Box::new(otherwise)));
            }
            let guard = self.predicate()?;
            self.expect(Tok::Colon, "after a piecewise guard")?;
            let body = self.expr()?;
            if *self.peek() == Tok::RParen {
                return Err(self.err(ParseErrorKind::MissingElse));
            }
            self.expect(Tok::Comma, "between piecewise branches")?;
            branches.push((guard, body));
        }
    }

    fn predicate(&mut self) -> Result<Predicate, ParseError> {
        let mut lhs = self.and_pred()?;
        while *self.peek() == Tok::Ident("or".into()) {
            self.bump();
            let rhs = self.and_pred()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn and_pred(&mut self) -> Result<Predicate, ParseError> {
        let mut lhs = self.pred_atom()?;
        while *self.peek() == Tok::Ident("and".into()) {
            self.bump();
            let rhs = self.pred_atom()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn pred_atom(&mut self) -> Result<Predicate, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if name == "rational" => {
                self.bump();
                self.expect(Tok::LParen, "after `rational`")?;
                self.expect(Tok::Ident("t".into()), "inside `rational(`")?;
                self.expect(Tok::RParen, "to close `rational(`")?;
                Ok(Predicate::Rational)
            }
            Tok::Ident(name) if name == "t" => {
                self.bump();
                let (op, _) = self.bump();
                let make: fn(QuadNum) -> Predicate = match op {
                    Tok::Lt => Predicate::Lt,
                    Tok::Le => Predicate::Le,
                    Tok::Gt => Predicate::Gt,
                    Tok::Ge => Predicate::Ge,
                    other => {
                        return Err(
                            self.syntax(format!("expected a comparison operator, found {other}"))
                        )
                    }
                };
                let at = self.pos();
                let bound = self.expr()?;
                match bound {
                    Expr::Const(c) => Ok(make(c)),
                    _ => Err(self.err_at(at, ParseErrorKind::NonConstantBound)),
                }
            }
            Tok::LParen => {
                self.bump();
                let p = self.predicate()?;
                self.expect(Tok::RParen, "to close the predicate group")?;
                Ok(p)
            }
            other => Err(self.syntax(format!("expected a predicate, found {other}"))),
        }
    }
}

enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies a binary operator, folding constant operands exactly. A constant
/// zero divisor is a parse error at `pos`; a variable divisor is guarded at
/// evaluation time instead.
fn fold_binary(op: BinOp, lhs: Expr, rhs: Expr, pos: Pos) -> Result<Expr, ParseError> {
    if let (Expr::Const(a), Expr::Const(b)) = (&lhs, &rhs) {
        let v = match op {
            BinOp::Add => a + b,
            BinOp::Sub => a - b,
            BinOp::Mul => a * b,
            BinOp::Div => {
                if b.is_zero() {
                    return Err(ParseError {
                        line: pos.0,
                        col: pos.1,
                        kind: ParseErrorKind::ConstantDivisionByZero,
                    });
                }
                a / b
            }
        };
        return Ok(Expr::Const(v));
    }
    Ok(match op {
        BinOp::Add => lhs.add(rhs),
        BinOp::Sub => lhs.sub(rhs),
        BinOp::Mul => lhs.mul(rhs),
        BinOp::Div => lhs.div(rhs),
    })
}

/// Parses a complete expression.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    parse_expr_at(src, 1, 1)
}

fn parse_expr_at(src: &str, line0: usize, col0: usize) -> Result<Expr, ParseError> {
    let toks = lex(src, line0, col0)?;
    let mut p = Parser { toks, i: 0 };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses the scalar textual form (`a`, `b*sqrt2`, `a+b*sqrt2`, …): any
/// constant expression is accepted and folded exactly.
pub fn parse_scalar(src: &str) -> Result<QuadNum, ParseError> {
    match parse_expr(src)? {
        Expr::Const(q) => Ok(q),
        _ => Err(ParseError {
            line: 1,
            col: 1,
            kind: ParseErrorKind::Syntax("expected a constant scalar, found `t`".into()),
        }),
    }
}

/// Parses a function-definition file:
///
/// ```text
/// # comment
/// f = <expr>
/// g = <expr>
/// omega = (<lo>, <hi>)
/// ```
///
/// One binding per line; all three bindings are required.
pub fn parse_function_def(src: &str) -> Result<IntervalFunction, ParseError> {
    let mut f: Option<Expr> = None;
    let mut g: Option<Expr> = None;
    let mut omega: Option<(QuadNum, QuadNum)> = None;

    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(ParseError {
                line: line_no,
                col: 1,
                kind: ParseErrorKind::Syntax("expected `name = value`".into()),
            });
        };
        let key = line[..eq].trim();
        let rhs = &line[eq + 1..];
        let rhs_col = eq + 2;
        let duplicate = |name: &str| ParseError {
            line: line_no,
            col: 1,
            kind: ParseErrorKind::DuplicateBinding(name.to_string()),
        };
        match key {
            "f" => {
                if f.is_some() {
                    return Err(duplicate("f"));
                }
                f = Some(parse_expr_at(rhs, line_no, rhs_col)?);
            }
            "g" => {
                if g.is_some() {
                    return Err(duplicate("g"));
                }
                g = Some(parse_expr_at(rhs, line_no, rhs_col)?);
            }
            "omega" => {
                if omega.is_some() {
                    return Err(duplicate("omega"));
                }
                omega = Some(parse_omega(rhs, line_no, rhs_col)?);
            }
            other => {
                return Err(ParseError {
                    line: line_no,
                    col: 1,
                    kind: ParseErrorKind::UnknownBinding(other.to_string()),
                })
            }
        }
    }

    let missing = |name: &'static str| ParseError {
        line: 1,
        col: 1,
        kind: ParseErrorKind::MissingBinding(name),
    };
    let f = f.ok_or_else(|| missing("f"))?;
    let g = g.ok_or_else(|| missing("g"))?;
    let omega = omega.ok_or_else(|| missing("omega"))?;
    IntervalFunction::new(f, g, omega).map_err(|_| ParseError {
        line: 1,
        col: 1,
        kind: ParseErrorKind::EmptyDomain,
    })
}

fn parse_omega(src: &str, line0: usize, col0: usize) -> Result<(QuadNum, QuadNum), ParseError> {
    let toks = lex(src, line0, col0)?;
    let mut p = Parser { toks, i: 0 };
    p.expect(Tok::LParen, "to open the domain")?;
    let lo_at = p.pos();
    let lo = p.expr()?;
    p.expect(Tok::Comma, "between the domain bounds")?;
    let hi_at = p.pos();
    let hi = p.expr()?;
    p.expect(Tok::RParen, "to close the domain")?;
    p.expect_eof()?;
    let constant = |e: Expr, at: Pos| match e {
        Expr::Const(q) => Ok(q),
        _ => Err(ParseError {
            line: at.0,
            col: at.1,
            kind: ParseErrorKind::Syntax("domain bounds must be constants".into()),
        }),
    };
    let lo = constant(lo, lo_at)?;
    let hi = constant(hi, hi_at)?;
    if lo >= hi {
        return Err(ParseError {
            line: line0,
            col: col0,
            kind: ParseErrorKind::EmptyDomain,
        });
    }
    Ok((lo, hi))
}
