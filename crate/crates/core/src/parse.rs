//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | var | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Juxtaposition (`2x`, `x y`) is a syntax error.

use num_bigint::BigInt;

use crate::error::AlgebraError;
use crate::poly::Polynomial;
use crate::ring::{Monomial, RingSpec};

pub fn parse_polynomial(text: &str, ring: &RingSpec) -> Result<Polynomial, AlgebraError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, ring, end: text.len() };
    let poly = p.expr()?;
    if let Some(t) = p.tokens.get(p.pos) {
        return Err(AlgebraError::Syntax { pos: t.pos, msg: format!("unexpected {}", t.kind.describe()) });
    }
    Ok(poly)
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl Kind {
    fn describe(&self) -> String {
        match self {
            Kind::Int(n) => format!("integer `{n}`"),
            Kind::Ident(s) => format!("identifier `{s}`"),
            Kind::Plus => "`+`".into(),
            Kind::Minus => "`-`".into(),
            Kind::Star => "`*`".into(),
            Kind::Caret => "`^`".into(),
            Kind::LParen => "`(`".into(),
            Kind::RParen => "`)`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, AlgebraError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Kind::Plus,
            b'-' => Kind::Minus,
            b'*' => Kind::Star,
            b'^' => Kind::Caret,
            b'(' => Kind::LParen,
            b')' => Kind::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push(Token { kind: Kind::Int(n), pos: start });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { kind: Kind::Ident(text[start..i].to_string()), pos: start });
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(AlgebraError::Syntax { pos: start, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push(Token { kind, pos: start });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a RingSpec,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Kind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.pos)
    }

    fn expr(&mut self) -> Result<Polynomial, AlgebraError> {
        let negate_first = match self.peek() {
            Some(Kind::Minus) => {
                self.pos += 1;
                true
            }
            Some(Kind::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Kind::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Kind::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.factor()?;
        while let Some(Kind::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        // juxtaposition such as `2x` or `x y` is not allowed
        if let Some(k @ (Kind::Int(_) | Kind::Ident(_) | Kind::LParen)) = self.peek() {
            return Err(AlgebraError::Syntax {
                pos: self.here(),
                msg: format!("expected operator before {}", k.describe()),
            });
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, AlgebraError> {
        let base = self.base()?;
        if let Some(Kind::Caret) = self.peek() {
            self.pos += 1;
            let pos = self.here();
            match self.peek().cloned() {
                Some(Kind::Int(n)) => {
                    self.pos += 1;
                    let e: u32 =
                        n.try_into().map_err(|_| AlgebraError::Syntax { pos, msg: "exponent too large".into() })?;
                    let ring = self.ring;
                    return Ok(base.pow(e, ring.field(), ring.num_vars()));
                }
                other => {
                    return Err(AlgebraError::Syntax {
                        pos,
                        msg: match other {
                            Some(k) => format!("expected exponent, found {}", k.describe()),
                            None => "expected exponent, found end of input".into(),
                        },
                    })
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, AlgebraError> {
        let pos = self.here();
        let nvars = self.ring.num_vars();
        match self.peek().cloned() {
            Some(Kind::Int(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring.field().from_bigint(&n), nvars))
            }
            Some(Kind::Ident(name)) => {
                self.pos += 1;
                let v = self.ring.var_index(&name).ok_or(AlgebraError::UnknownVariable { name, pos })?;
                let mut m = Monomial::one(nvars);
                m.exps[v] = 1;
                Ok(Polynomial::monomial(m, self.ring.field()))
            }
            Some(Kind::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Kind::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(AlgebraError::Syntax { pos: self.here(), msg: "expected `)`".into() }),
                }
            }
            Some(k) => Err(AlgebraError::Syntax { pos, msg: format!("unexpected {}", k.describe()) }),
            None => Err(AlgebraError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::Homogeneity;
    use crate::ring::MultiDegree;

    fn ring12() -> RingSpec {
        RingSpec::from_names(&[&["x0", "x1"], &["y0", "y1"]], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn single_power() {
        let r = ring12();
        let p = parse_polynomial("x0^2", &r).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, Monomial::from_exps(&[2, 0, 0, 0]));
        assert!(p.terms()[0].1.is_one());
    }

    #[test]
    fn bihomogeneous_binomial() {
        let r = ring12();
        let p = parse_polynomial("x0*y1 + x1*y0", &r).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.multidegree_of(&r).unwrap(), Homogeneity::Homogeneous(MultiDegree(vec![1, 1])));
    }

    #[test]
    fn binomial_expansion_one_block() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::Rationals).unwrap();
        let p = parse_polynomial("(x+y)^2", &r).unwrap();
        assert_eq!(p.display(&r), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn three_blocks_degree() {
        let r = RingSpec::from_names(&[&["x"], &["y"], &["z"]], FieldSpec::Rationals).unwrap();
        let p = parse_polynomial("x*y*z", &r).unwrap();
        assert_eq!(p.multidegree_of(&r).unwrap(), Homogeneity::Homogeneous(MultiDegree(vec![1, 1, 1])));
        let q = parse_polynomial("x + y", &r).unwrap();
        assert_eq!(q.multidegree_of(&r).unwrap(), Homogeneity::NotHomogeneous);
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring12();
        assert_eq!(
            parse_polynomial("x0 + w", &r).unwrap_err(),
            AlgebraError::UnknownVariable { name: "w".into(), pos: 5 }
        );
        assert!(matches!(parse_polynomial("2x0", &r), Err(AlgebraError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_polynomial("x0 y0", &r), Err(AlgebraError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("(x0", &r), Err(AlgebraError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("x0^", &r), Err(AlgebraError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("x0 $ 1", &r), Err(AlgebraError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("", &r), Err(AlgebraError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn leading_minus_and_mod_p() {
        let r = RingSpec::from_names(&[&["x", "y"]], FieldSpec::PrimeField(7)).unwrap();
        let p = parse_polynomial("-x + 8*y", &r).unwrap();
        assert_eq!(p.display(&r), "-x + y");
        assert!(parse_polynomial("7*x", &r).unwrap().is_zero());
    }
}
