//! Expression language for naming and combining catalog operators.
//!
//! Grammar (ASCII only):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | primary
//! primary := INT | IDENT | IDENT '(' args ')' | '(' expr ')'
//! args    := expr (',' expr)*
//! ```
//!
//! Division is restricted to scalar divisors and means left multiplication by
//! the inverse scalar. Name references resolve at elaboration time.

use num_bigint::BigInt;

use crate::catalog::{Catalog, Direction};
use crate::error::{Error, Result};
use crate::operator::{Operator, TermKey};
use crate::scalar::{FieldElem, Gaussian, Poly, Rat, RatFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(BigInt),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub token: Token,
    pub offset: usize,
}

/// Splits a single-line expression into tokens, reporting the byte offset of
/// any illegal character.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
            b'(' => {
                out.push(Spanned { token: Token::LParen, offset: pos });
                pos += 1;
            }
            b')' => {
                out.push(Spanned { token: Token::RParen, offset: pos });
                pos += 1;
            }
            b',' => {
                out.push(Spanned { token: Token::Comma, offset: pos });
                pos += 1;
            }
            b'+' => {
                out.push(Spanned { token: Token::Plus, offset: pos });
                pos += 1;
            }
            b'-' => {
                out.push(Spanned { token: Token::Minus, offset: pos });
                pos += 1;
            }
            b'*' => {
                out.push(Spanned { token: Token::Star, offset: pos });
                pos += 1;
            }
            b'/' => {
                out.push(Spanned { token: Token::Slash, offset: pos });
                pos += 1;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                let value: BigInt = digits.parse().expect("digits");
                out.push(Spanned { token: Token::Int(value), offset: start });
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric()) {
                    pos += 1;
                }
                out.push(Spanned {
                    token: Token::Ident(text[start..pos].to_string()),
                    offset: start,
                });
            }
            other => {
                return Err(Error::Parse {
                    offset: pos,
                    message: format!("illegal character 0x{other:02x} (ASCII names only)"),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Int(BigInt),
    Name(String, usize),
    Call(String, Vec<Ast>, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
}

struct Parser<'t> {
    tokens: &'t [Spanned],
    pos: usize,
    end: usize,
    depth: usize,
}

const MAX_DEPTH: usize = 200;

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |s| s.offset)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos).map(|s| &s.token);
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: &Token, what: &str) -> Result<()> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse { offset: self.offset(), message: format!("expected {what}") })
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::Parse {
                offset: self.offset(),
                message: "expression nesting too deep".into(),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Ast> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast> {
        self.enter()?;
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    let offset = self.offset();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Div(Box::new(lhs), Box::new(rhs), offset);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        self.enter()?;
        let node = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            Ast::Neg(Box::new(self.unary()?))
        } else {
            self.primary()?
        };
        self.depth -= 1;
        Ok(node)
    }

    fn primary(&mut self) -> Result<Ast> {
        self.enter()?;
        let offset = self.offset();
        let node = match self.bump() {
            Some(Token::Int(v)) => Ast::Int(v.clone()),
            Some(Token::Ident(name)) => {
                if self.peek() == Some(&Token::LParen) {
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.peek() == Some(&Token::Comma) {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(&Token::RParen, "')'")?;
                    Ast::Call(name.clone(), args, offset)
                } else {
                    Ast::Name(name.clone(), offset)
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(&Token::RParen, "')'")?;
                inner
            }
            _ => {
                return Err(Error::Parse { offset, message: "expected expression".into() });
            }
        };
        self.depth -= 1;
        Ok(node)
    }
}

/// Parses one expression, requiring the whole input to be consumed.
pub fn parse(text: &str) -> Result<Ast> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens: &tokens, pos: 0, end: text.len(), depth: 0 };
    let ast = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(Error::Parse {
            offset: parser.offset(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(ast)
}

fn int_arg(ast: &Ast) -> Result<usize> {
    match ast {
        Ast::Int(v) => usize::try_from(v.clone())
            .map_err(|_| Error::IndexOutOfRange("index argument must be a small nonnegative integer".into())),
        _ => Err(Error::IndexOutOfRange("index arguments must be integer literals".into())),
    }
}

/// Attaches the source position of the offending node to an error.
fn at(offset: usize, err: Error) -> Error {
    match err {
        parse @ Error::Parse { .. } => parse,
        other => Error::Parse { offset, message: other.to_string() },
    }
}

/// Evaluates an AST against the catalog namespace.
pub fn elaborate(ast: &Ast, cat: &Catalog) -> Result<Operator> {
    match ast {
        Ast::Int(v) => Ok(Operator::scalar(FieldElem::from_gaussian(Gaussian::from_rational(
            Rat::from_big(num_rational::BigRational::from_integer(v.clone())),
        )))),
        Ast::Name(name, offset) => resolve_name(name, cat).map_err(|e| at(*offset, e)),
        Ast::Call(name, args, offset) => {
            elaborate_call(name, args, cat).map_err(|e| at(*offset, e))
        }
        Ast::Neg(inner) => Ok(elaborate(inner, cat)?.neg()),
        Ast::Add(a, b) => Ok(elaborate(a, cat)?.add(&elaborate(b, cat)?)),
        Ast::Sub(a, b) => Ok(elaborate(a, cat)?.sub(&elaborate(b, cat)?)),
        Ast::Mul(a, b) => Ok(elaborate(a, cat)?.mul(&elaborate(b, cat)?)),
        Ast::Div(a, b, offset) => {
            let lhs = elaborate(a, cat)?;
            let rhs = elaborate(b, cat)?;
            let f = rhs.as_scalar().ok_or_else(|| at(*offset, Error::NonScalarDivisor))?;
            let inv = f.inv().map_err(|e| at(*offset, e))?;
            Ok(Operator::scalar(inv).mul(&lhs))
        }
    }
}

fn resolve_name(name: &str, cat: &Catalog) -> Result<Operator> {
    match name {
        "gamma0" | "gamma1" | "gamma2" | "gamma3" | "gamma4" | "gamma5" | "gamma6" => {
            let idx: usize = name[5..].parse().expect("digit");
            cat.gamma(idx)
        }
        "eps" => Ok(cat.epsilon_hat()),
        "C" => Ok(Operator::c_hat()),
        "i" => Ok(Operator::i()),
        "m" => Ok(Operator::scalar(FieldElem::m())),
        "w" => Ok(Operator::scalar(FieldElem::omega())),
        "D0" | "D1" | "D2" | "D3" => {
            let idx: usize = name[1..].parse().expect("digit");
            Ok(Operator::d(idx))
        }
        "X0" | "X1" | "X2" | "X3" => {
            let idx: usize = name[1..].parse().expect("digit");
            Ok(Operator::x(idx))
        }
        "HD" => Ok(cat.dirac_hamiltonian()),
        "Lfw" => Ok(cat.fw_operator()),
        "Ldirac" => Ok(cat.dirac_operator()),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn elaborate_call(name: &str, args: &[Ast], cat: &Catalog) -> Result<Operator> {
    let want = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Parse {
                offset: 0,
                message: format!("{name} takes {n} argument(s), got {}", args.len()),
            })
        }
    };
    match name {
        "s" => {
            want(2)?;
            cat.s_pair(int_arg(&args[0])?, int_arg(&args[1])?)
        }
        "sI" => {
            want(2)?;
            cat.s_i(int_arg(&args[0])?, int_arg(&args[1])?)
        }
        "sII" => {
            want(2)?;
            cat.s_ii(int_arg(&args[0])?, int_arg(&args[1])?)
        }
        "sTS" => {
            want(2)?;
            cat.s_ts(int_arg(&args[0])?, int_arg(&args[1])?)
        }
        "sV" => {
            want(2)?;
            cat.s_v(int_arg(&args[0])?, int_arg(&args[1])?)
        }
        "shat" => {
            want(2)?;
            cat.shat(int_arg(&args[0])?, int_arg(&args[1])?)
        }
        "comm" => {
            want(2)?;
            Ok(elaborate(&args[0], cat)?.commutator(&elaborate(&args[1], cat)?))
        }
        "acomm" => {
            want(2)?;
            Ok(elaborate(&args[0], cat)?.anticommutator(&elaborate(&args[1], cat)?))
        }
        "adj" => {
            want(1)?;
            Ok(elaborate(&args[0], cat)?.adjoint())
        }
        "par" => {
            want(1)?;
            Ok(elaborate(&args[0], cat)?.parity())
        }
        "conjV" => {
            want(1)?;
            cat.v_conjugator().conjugate(&elaborate(&args[0], cat)?, Direction::Inverse)
        }
        "conjW" => {
            want(1)?;
            cat.w_conjugator().conjugate(&elaborate(&args[0], cat)?, Direction::Forward)
        }
        other => Err(Error::UnknownName(format!("{other}(...)"))),
    }
}

// ---------------------------------------------------------------------------
// Canonical formatting
// ---------------------------------------------------------------------------

fn gaussian_factor_text(c: &Gaussian) -> String {
    if c.im.is_zero() {
        c.re.to_string()
    } else if c.re.is_zero() {
        if c.im.is_one() {
            "i".into()
        } else if c.im.neg().is_one() {
            "-i".into()
        } else {
            format!("{}*i", c.im)
        }
    } else {
        let mag = c.im.abs();
        let im = if mag.is_one() { "i".into() } else { format!("{mag}*i") };
        if c.im.is_negative() {
            format!("({} - {im})", c.re)
        } else {
            format!("({} + {im})", c.re)
        }
    }
}

fn poly_text(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut pieces = Vec::new();
    for (mono, coeff) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let mut factors = Vec::new();
        let ctext = gaussian_factor_text(coeff);
        let mut mono_factors = Vec::new();
        for (k, name) in crate::scalar::VAR_NAMES.iter().enumerate() {
            for _ in 0..mono.0[k] {
                mono_factors.push((*name).to_string());
            }
        }
        if mono_factors.is_empty() || ctext != "1" {
            factors.push(ctext);
        }
        factors.extend(mono_factors);
        pieces.push(factors.join("*"));
    }
    pieces.join(" + ")
}

fn ratfn_text(rf: &RatFn) -> String {
    if rf.den().is_one() {
        poly_text(rf.num())
    } else {
        format!("({})/({})", poly_text(rf.num()), poly_text(rf.den()))
    }
}

fn field_text(f: &FieldElem) -> String {
    if f.is_zero() {
        return "0".into();
    }
    if f.v.is_zero() {
        return ratfn_text(&f.u);
    }
    let vpart = format!("({})*w", ratfn_text(&f.v));
    if f.u.is_zero() {
        vpart
    } else {
        format!("{} + {vpart}", ratfn_text(&f.u))
    }
}

/// Canonical deterministic rendering: terms sorted by (X-powers, conjugation
/// flag), matrices decomposed over the sixteen gamma monomials. The output is
/// itself a valid expression; `elaborate(parse(format(op))) = op`.
pub fn format(op: &Operator, cat: &Catalog) -> String {
    if op.is_zero() {
        return "0".into();
    }
    let monomials = cat.gamma_monomials();
    let mut pieces = Vec::new();
    for (key, mat) in op.terms() {
        let opmat = mat;
        for (gname, gop, inv_scale) in &monomials {
            // coefficient = (1/(4*square)) * tr(gamma_S * M)
            let gmat = gop
                .terms()
                .next()
                .map(|(_, m)| m.clone())
                .expect("gamma monomial has one term");
            let coeff = gmat
                .mul(opmat)
                .trace()
                .scale(inv_scale)
                .scale(&Gaussian::from_ratio(1, 4));
            if coeff.is_zero() {
                continue;
            }
            pieces.push(piece_text(key, &coeff, gname));
        }
    }
    if pieces.is_empty() {
        "0".into()
    } else {
        pieces.join(" + ")
    }
}

fn piece_text(key: &TermKey, coeff: &FieldElem, gname: &str) -> String {
    let mut factors: Vec<String> = Vec::new();
    for mu in 0..4 {
        for _ in 0..key.x[mu] {
            factors.push(format!("X{mu}"));
        }
    }
    let ctext = field_text(coeff);
    let trivial_one = ctext == "1";
    if !trivial_one || (gname.is_empty() && !key.c) {
        // Parenthesize unless it is already a bare simple factor.
        let needs_parens = !(ctext.chars().all(|ch| ch.is_ascii_alphanumeric()));
        factors.push(if needs_parens { format!("({ctext})") } else { ctext });
    }
    if !gname.is_empty() {
        factors.push(gname.to_string());
    }
    if key.c {
        factors.push("C".to_string());
    }
    factors.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Conventions;

    fn cat() -> Catalog {
        Catalog::new(Conventions::default())
    }

    #[test]
    fn tokenize_examples() {
        let toks = tokenize("comm(s(1,2), s(2,3))").unwrap();
        assert_eq!(toks[0].token, Token::Ident("comm".into()));
        assert_eq!(toks[1].token, Token::LParen);
        assert_eq!(toks[4].token, Token::Int(BigInt::from(1)));
        let toks = tokenize("gamma0*gamma1").unwrap();
        assert_eq!(toks.len(), 3);
        let err = tokenize("γ").unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert_eq!(offset, 0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        // a - b - c parses as (a - b) - c
        let ast = parse("1 - 2 - 3").unwrap();
        assert_eq!(
            ast,
            Ast::Sub(
                Box::new(Ast::Sub(
                    Box::new(Ast::Int(1.into())),
                    Box::new(Ast::Int(2.into()))
                )),
                Box::new(Ast::Int(3.into()))
            )
        );
        // a + b*c parses as a + (b*c)
        let ast = parse("m + D1*w").unwrap();
        assert_eq!(
            ast,
            Ast::Add(
                Box::new(Ast::Name("m".into(), 0)),
                Box::new(Ast::Mul(
                    Box::new(Ast::Name("D1".into(), 4)),
                    Box::new(Ast::Name("w".into(), 7))
                ))
            )
        );
        // i*D1 + m
        let ast = parse("i*D1 + m").unwrap();
        assert!(matches!(ast, Ast::Add(_, _)));
        // nested calls
        let ast = parse("adj(comm(HD, eps))").unwrap();
        assert!(matches!(ast, Ast::Call(ref n, ref a, 0) if n == "adj" && a.len() == 1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse("s(1,"), Err(Error::Parse { .. })));
        assert!(matches!(parse("1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse("(1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("1 2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn elaborate_examples() {
        let cat = cat();
        // sII(1,2) = (i/2) identity
        let op = elaborate(&parse("sII(1,2)").unwrap(), &cat).unwrap();
        assert!(op.equals(&Operator::i().scale_gaussian(&Gaussian::from_ratio(1, 2))));
        // comm(s(1,2), eps) = 0
        let op = elaborate(&parse("comm(s(1,2), eps)").unwrap(), &cat).unwrap();
        assert!(op.is_zero());
        // C*C = 1
        let op = elaborate(&parse("C*C").unwrap(), &cat).unwrap();
        assert!(op.equals(&Operator::identity()));
        // division by a non-scalar is rejected, with the position attached
        let err = elaborate(&parse("HD/gamma1").unwrap(), &cat).unwrap_err();
        match err {
            Error::Parse { offset, message } => {
                assert_eq!(offset, 2);
                assert!(message.contains("scalar"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
        // unknown name carries its position
        let err = elaborate(&parse("m + nosuch").unwrap(), &cat).unwrap_err();
        match err {
            Error::Parse { offset, message } => {
                assert_eq!(offset, 4);
                assert!(message.contains("nosuch"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
        // gamma5 binds to the antilinear product
        let op = elaborate(&parse("gamma5").unwrap(), &cat).unwrap();
        let expect = elaborate(&parse("gamma1*gamma3*C").unwrap(), &cat).unwrap();
        assert!(op.equals(&expect));
    }

    #[test]
    fn format_examples() {
        let cat = cat();
        // (1/2) gamma0 gamma1
        let op = elaborate(&parse("s(0,1)").unwrap(), &cat).unwrap();
        assert_eq!(format(&op, &cat), "(1/2)*gamma0*gamma1");
        // zero renders as 0
        assert_eq!(format(&Operator::zero(), &cat), "0");
        // (i/2) identity collapses to a bare coefficient
        let op = Operator::i().scale_gaussian(&Gaussian::from_ratio(1, 2));
        assert_eq!(format(&op, &cat), "(1/2*i)");
    }

    #[test]
    fn format_round_trips() {
        let cat = cat();
        for expr in [
            "s(0,1)",
            "sII(3,1)",
            "sTS(0,2)",
            "shat(2,3)",
            "gamma5",
            "comm(sI(0,1), sI(0,2))",
            "HD",
            "Lfw",
            "X1*D1 + m*gamma4",
            "eps*s(1,5)",
        ] {
            let op = elaborate(&parse(expr).unwrap(), &cat).unwrap();
            let text = format(&op, &cat);
            let back = elaborate(&parse(&text).unwrap(), &cat).unwrap();
            assert!(back.equals(&op), "round trip failed for {expr}: {text}");
        }
    }

    #[test]
    fn no_panic_on_junk() {
        for junk in ["", "))", "s(", "1/*", "0/0", "m/(w - w)", "\u{1F600}", "((((((((("] {
            let _ = parse(junk).map(|ast| elaborate(&ast, &cat()));
        }
    }
}
