//! Construction expressions for finite rings and their text grammar.
//!
//! The grammar (whitespace-insensitive, decimal integers):
//!
//! ```text
//! Zn(12)  M(2,Zn(3))  Prod(Zn(4),Zn(3))  Quot(Zn(12),[4])
//! TrivExt(Zn(6))  T(2,Zn(2))  Skew(6)
//! ```

use std::fmt;

use crate::error::{Result, RingError};

/// AST describing how a finite ring is built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    /// Integers mod n, n >= 1.
    Zn(u64),
    /// k x k matrices over the base ring, k >= 1.
    Matrix(Box<RingExpr>, usize),
    /// Direct product, at least one factor.
    Product(Vec<RingExpr>),
    /// Quotient of the base by the two-sided ideal generated by the
    /// listed element indices (indices into the realized base ring).
    Quotient(Box<RingExpr>, Vec<usize>),
    /// Trivial extension R ⋉ R with the regular bimodule actions.
    TrivExt(Box<RingExpr>),
    /// k x k upper-triangular matrices over the base ring, k >= 2.
    Triangular(Box<RingExpr>, usize),
    /// The skew example: R = Z_n[t]/(t^2), σ(a+bt) = a, S = R[x;σ]/(x^2).
    /// Legal for n >= 2.
    Skew(u64),
}

impl RingExpr {
    pub fn zn(n: u64) -> Self {
        RingExpr::Zn(n)
    }

    pub fn matrix(k: usize, base: RingExpr) -> Self {
        RingExpr::Matrix(Box::new(base), k)
    }

    pub fn product<I: IntoIterator<Item = RingExpr>>(factors: I) -> Self {
        RingExpr::Product(factors.into_iter().collect())
    }

    pub fn quotient(base: RingExpr, gens: Vec<usize>) -> Self {
        RingExpr::Quotient(Box::new(base), gens)
    }

    pub fn triv_ext(base: RingExpr) -> Self {
        RingExpr::TrivExt(Box::new(base))
    }

    pub fn triangular(k: usize, base: RingExpr) -> Self {
        RingExpr::Triangular(Box::new(base), k)
    }

    pub fn skew(n: u64) -> Self {
        RingExpr::Skew(n)
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "Zn({n})"),
            RingExpr::Matrix(base, k) => write!(f, "M({k},{base})"),
            RingExpr::Product(factors) => {
                write!(f, "Prod(")?;
                for (i, fac) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{fac}")?;
                }
                write!(f, ")")
            }
            RingExpr::Quotient(base, gens) => {
                write!(f, "Quot({base},[")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "])")
            }
            RingExpr::TrivExt(base) => write!(f, "TrivExt({base})"),
            RingExpr::Triangular(base, k) => write!(f, "T({k},{base})"),
            RingExpr::Skew(n) => write!(f, "Skew({n})"),
        }
    }
}

/// Parse the text form of a ring expression.
pub fn parse_expr(input: &str) -> Result<RingExpr> {
    let mut p = Parser::new(input);
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(RingError::InvalidExpr(format!(
            "trailing input at byte {}: {:?}",
            p.pos,
            &input[p.pos..]
        )));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            src: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            other => Err(RingError::InvalidExpr(format!(
                "expected {:?} at byte {}, found {:?}",
                ch as char,
                self.pos,
                other.map(|c| c as char)
            ))),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(RingError::InvalidExpr(format!(
                "expected integer at byte {start}"
            )));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|e| RingError::InvalidExpr(format!("bad integer: {e}")))
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let name = self.ident();
        match name.as_str() {
            "Zn" => {
                self.expect(b'(')?;
                let n = self.integer()?;
                self.expect(b')')?;
                Ok(RingExpr::Zn(n))
            }
            "M" => {
                self.expect(b'(')?;
                let k = self.integer()? as usize;
                self.expect(b',')?;
                let base = self.expr()?;
                self.expect(b')')?;
                Ok(RingExpr::Matrix(Box::new(base), k))
            }
            "Prod" => {
                self.expect(b'(')?;
                let mut factors = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    factors.push(self.expr()?);
                }
                self.expect(b')')?;
                Ok(RingExpr::Product(factors))
            }
            "Quot" => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b',')?;
                self.expect(b'[')?;
                let mut gens = Vec::new();
                if self.peek() != Some(b']') {
                    gens.push(self.integer()? as usize);
                    while self.peek() == Some(b',') {
                        self.pos += 1;
                        gens.push(self.integer()? as usize);
                    }
                }
                self.expect(b']')?;
                self.expect(b')')?;
                Ok(RingExpr::Quotient(Box::new(base), gens))
            }
            "TrivExt" => {
                self.expect(b'(')?;
                let base = self.expr()?;
                self.expect(b')')?;
                Ok(RingExpr::TrivExt(Box::new(base)))
            }
            "T" => {
                self.expect(b'(')?;
                let k = self.integer()? as usize;
                self.expect(b',')?;
                let base = self.expr()?;
                self.expect(b')')?;
                Ok(RingExpr::Triangular(Box::new(base), k))
            }
            "Skew" => {
                self.expect(b'(')?;
                let n = self.integer()?;
                self.expect(b')')?;
                Ok(RingExpr::Skew(n))
            }
            other => Err(RingError::InvalidExpr(format!(
                "unknown constructor {other:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_constructors() {
        for (text, expr) in [
            ("Zn(12)", RingExpr::zn(12)),
            ("M(2,Zn(3))", RingExpr::matrix(2, RingExpr::zn(3))),
            (
                "Prod(Zn(4),Zn(3))",
                RingExpr::product([RingExpr::zn(4), RingExpr::zn(3)]),
            ),
            ("Quot(Zn(12),[4])", RingExpr::quotient(RingExpr::zn(12), vec![4])),
            ("TrivExt(Zn(6))", RingExpr::triv_ext(RingExpr::zn(6))),
            ("T(2,Zn(2))", RingExpr::triangular(2, RingExpr::zn(2))),
            ("Skew(6)", RingExpr::skew(6)),
        ] {
            assert_eq!(parse_expr(text).unwrap(), expr, "{text}");
        }
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(
            parse_expr(" Quot( Zn( 12 ) , [ 4 , 9 ] ) ").unwrap(),
            RingExpr::quotient(RingExpr::zn(12), vec![4, 9])
        );
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "Zn(12)",
            "M(2,Zn(3))",
            "Prod(Zn(4),Zn(3),Zn(2))",
            "Quot(Zn(12),[4,9])",
            "TrivExt(Zn(6))",
            "T(3,Zn(2))",
            "Skew(6)",
            "M(2,Prod(Zn(2),Zn(3)))",
        ] {
            let expr = parse_expr(text).unwrap();
            assert_eq!(expr.to_string(), text);
            assert_eq!(parse_expr(&expr.to_string()).unwrap(), expr);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("Foo(3)").is_err());
        assert!(parse_expr("Zn(12) extra").is_err());
        assert!(parse_expr("Zn()").is_err());
        assert!(parse_expr("M(2)").is_err());
    }
}
