//! Expression syntax shared by `normal-form` and `split`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' int)*
//! atom   := integer | 'q' | 'v' | 'q^{' int '/6}' | 'v^' int
//!         | 'X' digit digit | 'l+' | 'l-' | '(' expr ')'
//! ```
//!
//! A leading sign is accepted so that printed elements parse back. Negative
//! exponents are accepted only on invertible scalars.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use sl3_core::coeff::{Coeff, Laurent};
use sl3_core::qmatrix::{AlgebraError, Engine, Gen, NCElem};
use sl3_core::webs::AnnulusElem;
use sl3_core::LaurentZ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at {pos}: unexpected {found}, expected {expected}")]
    Unexpected { pos: usize, found: String, expected: &'static str },
    #[error("at {pos}: generator index {index} outside 11..33")]
    BadGenerator { pos: usize, index: String },
    #[error("at {pos}: exponent {exp} needs an invertible scalar base")]
    NegativePower { pos: usize, exp: i64 },
    #[error("at {pos}: number too large")]
    Overflow { pos: usize },
    #[error("at {pos}: {what} not allowed here")]
    WrongAtom { pos: usize, what: &'static str },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Parsed syntax tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    /// `v^k`.
    VPow(i64),
    /// Atoms carry their position for evaluation errors.
    Gen(Gen, usize),
    LoopPlus(usize),
    LoopMinus(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Base, exponent, and the exponent's position for error reporting.
    Pow(Box<Expr>, i64, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.src.get(self.pos) {
            None => "end of input".into(),
            Some(c) => format!("'{}'", *c as char),
        }
    }

    fn fail<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        Err(ParseError::Unexpected { pos: self.pos, found: self.found(), expected })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Literal without skipping whitespace inside it.
    fn expect_raw(&mut self, c: u8, expected: &'static str) -> Result<(), ParseError> {
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let d = self.digits();
        if d.is_empty() {
            return self.fail("an integer");
        }
        let n: i64 = d.parse().map_err(|_| ParseError::Overflow { pos: start })?;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.atom()?;
        while self.eat(b'^') {
            self.skip_ws();
            let pos = self.pos;
            let e = self.int()?;
            acc = Expr::Pow(Box::new(acc), e, pos);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(c) = self.peek() else { return self.fail("a term") };
        let start = self.pos;
        match c {
            b'0'..=b'9' => {
                let d = self.digits();
                Ok(Expr::Int(d.parse().expect("digits")))
            }
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.fail("')'");
                }
                Ok(e)
            }
            b'v' => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    Ok(Expr::VPow(self.int()?))
                } else {
                    Ok(Expr::VPow(1))
                }
            }
            b'q' => {
                self.pos += 1;
                if self.src.get(self.pos..self.pos + 2) == Some(b"^{") {
                    self.pos += 2;
                    let k = self.int()?;
                    self.skip_ws();
                    self.expect_raw(b'/', "'/6}'")?;
                    self.expect_raw(b'6', "'6}'")?;
                    self.skip_ws();
                    self.expect_raw(b'}', "'}'")?;
                    Ok(Expr::VPow(k))
                } else {
                    Ok(Expr::VPow(6))
                }
            }
            b'X' => {
                self.pos += 1;
                let idx: String = self.src[self.pos..].iter().take(2).map(|&b| b as char).collect();
                let bytes = idx.as_bytes();
                if bytes.len() < 2 || !bytes.iter().all(u8::is_ascii_digit) {
                    return self.fail("two generator digits");
                }
                self.pos += 2;
                let gen = Gen::new(bytes[0] - b'0', bytes[1] - b'0')
                    .map_err(|_| ParseError::BadGenerator { pos: start, index: idx.clone() })?;
                Ok(Expr::Gen(gen, start))
            }
            b'l' => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(b'+') => {
                        self.pos += 1;
                        Ok(Expr::LoopPlus(start))
                    }
                    Some(b'-') => {
                        self.pos += 1;
                        Ok(Expr::LoopMinus(start))
                    }
                    _ => self.fail("'+' or '-' after 'l'"),
                }
            }
            _ => self.fail("a term"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

/// A ring an [`Expr`] can be evaluated in.
trait Target {
    type Elem: Clone;
    fn int(&self, n: &BigInt) -> Self::Elem;
    fn v_pow(&self, k: i64) -> Self::Elem;
    fn gen(&self, g: Gen, pos: usize) -> Result<Self::Elem, ParseError>;
    fn loop_core(&self, plus: bool, pos: usize) -> Result<Self::Elem, ParseError>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ParseError>;
    /// `a^{-1}` when `a` is an invertible scalar.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

fn eval<T: Target>(t: &T, e: &Expr) -> Result<T::Elem, ParseError> {
    Ok(match e {
        Expr::Int(n) => t.int(n),
        Expr::VPow(k) => t.v_pow(*k),
        Expr::Gen(g, pos) => t.gen(*g, *pos)?,
        Expr::LoopPlus(pos) => t.loop_core(true, *pos)?,
        Expr::LoopMinus(pos) => t.loop_core(false, *pos)?,
        Expr::Neg(a) => t.neg(&eval(t, a)?),
        Expr::Add(a, b) => t.add(&eval(t, a)?, &eval(t, b)?),
        Expr::Sub(a, b) => t.add(&eval(t, a)?, &t.neg(&eval(t, b)?)),
        Expr::Mul(a, b) => t.mul(&eval(t, a)?, &eval(t, b)?)?,
        Expr::Pow(a, k, pos) => {
            let base = eval(t, a)?;
            let base = if *k < 0 {
                t.unit_inverse(&base).ok_or(ParseError::NegativePower { pos: *pos, exp: *k })?
            } else {
                base
            };
            let mut acc = t.int(&BigInt::one());
            for _ in 0..k.unsigned_abs() {
                acc = t.mul(&acc, &base)?;
            }
            acc
        }
    })
}

struct QuantumGroup<'a, C: Coeff>(&'a Engine<C>);

impl<C: Coeff<Int = BigInt>> Target for QuantumGroup<'_, C> {
    type Elem = NCElem<C>;

    fn int(&self, n: &BigInt) -> NCElem<C> {
        NCElem::scalar(C::from_int(self.0.ctx(), n.clone()))
    }
    fn v_pow(&self, k: i64) -> NCElem<C> {
        NCElem::scalar(C::v_pow(self.0.ctx(), k))
    }
    fn gen(&self, g: Gen, _: usize) -> Result<NCElem<C>, ParseError> {
        Ok(self.0.gen(g))
    }
    fn loop_core(&self, _: bool, pos: usize) -> Result<NCElem<C>, ParseError> {
        Err(ParseError::WrongAtom { pos, what: "a core loop" })
    }
    fn add(&self, a: &NCElem<C>, b: &NCElem<C>) -> NCElem<C> {
        a.add(b)
    }
    fn neg(&self, a: &NCElem<C>) -> NCElem<C> {
        a.neg()
    }
    fn mul(&self, a: &NCElem<C>, b: &NCElem<C>) -> Result<NCElem<C>, ParseError> {
        Ok(self.0.mul(a, b)?)
    }
    fn unit_inverse(&self, a: &NCElem<C>) -> Option<NCElem<C>> {
        if a.len() != 1 {
            return None;
        }
        let (m, c) = a.iter().next()?;
        if !m.is_one() {
            return None;
        }
        let inv = c.to_laurent().unit_inverse()?;
        Some(NCElem::scalar(C::from_laurent(self.0.ctx(), &inv)))
    }
}

struct Annulus;

impl Target for Annulus {
    type Elem = AnnulusElem;

    fn int(&self, n: &BigInt) -> AnnulusElem {
        AnnulusElem::from_terms([((0, 0), Laurent::constant(n.clone()))])
    }
    fn v_pow(&self, k: i64) -> AnnulusElem {
        AnnulusElem::from_terms([((0, 0), LaurentZ::v_pow(k))])
    }
    fn gen(&self, _: Gen, pos: usize) -> Result<AnnulusElem, ParseError> {
        Err(ParseError::WrongAtom { pos, what: "a generator" })
    }
    fn loop_core(&self, plus: bool, _: usize) -> Result<AnnulusElem, ParseError> {
        Ok(if plus { AnnulusElem::l_plus() } else { AnnulusElem::l_minus() })
    }
    fn add(&self, a: &AnnulusElem, b: &AnnulusElem) -> AnnulusElem {
        a.add(b)
    }
    fn neg(&self, a: &AnnulusElem) -> AnnulusElem {
        a.mul(&self.int(&-BigInt::one()))
    }
    fn mul(&self, a: &AnnulusElem, b: &AnnulusElem) -> Result<AnnulusElem, ParseError> {
        Ok(a.mul(b))
    }
    fn unit_inverse(&self, a: &AnnulusElem) -> Option<AnnulusElem> {
        let mut it = a.terms();
        let (k, c) = it.next()?;
        if it.next().is_some() || *k != (0, 0) {
            return None;
        }
        Some(AnnulusElem::from_terms([((0, 0), c.unit_inverse()?)]))
    }
}

/// Parses and normal-forms an element of the quantum group.
pub fn parse_expression<C: Coeff<Int = BigInt>>(engine: &Engine<C>, text: &str) -> Result<NCElem<C>, ParseError> {
    eval(&QuantumGroup(engine), &parse(text)?)
}

/// Parses a polynomial in `l+`, `l-` with Laurent coefficients.
pub fn parse_annulus(text: &str) -> Result<AnnulusElem, ParseError> {
    eval(&Annulus, &parse(text)?)
}


#[cfg(test)]
mod tests {
    use super::*;
    use sl3_core::coeff::Generic;
    use sl3_core::GenericEngine;

    fn engine() -> GenericEngine {
        GenericEngine::new(Generic)
    }

    #[test]
    fn minor_expression() {
        let e = engine();
        assert_eq!(parse_expression(&e, "X11*X22 - q*X12*X21").unwrap(), e.quantum_minor(3, 3).unwrap());
    }

    #[test]
    fn reordering_generates_the_correction() {
        let e = engine();
        let got = parse_expression(&e, "X22*X11").unwrap();
        let expected = parse_expression(&e, "X11*X22 - (q - q^{-6/6})*X12*X21").unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.to_string(), "X11*X22 - (v^6 - v^-6)*X12*X21");
    }

    #[test]
    fn zeroth_power_is_one() {
        let e = engine();
        assert_eq!(parse_expression(&e, "(X11 + X22 + X33)^0").unwrap(), NCElem::one());
    }

    #[test]
    fn scalar_forms_agree() {
        let e = engine();
        let a = parse_expression(&e, "q^{3/6}").unwrap();
        assert_eq!(a, parse_expression(&e, "v^3").unwrap());
        assert_eq!(parse_expression(&e, "q^-1*q").unwrap(), NCElem::one());
        assert_eq!(parse_expression(&e, "v^2^3").unwrap(), parse_expression(&e, "v^6").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = engine();
        let err = parse_expression(&e, "X11 + * X22").unwrap_err();
        assert!(matches!(err, ParseError::Unexpected { pos: 6, .. }), "{err}");
        let err = parse_expression(&e, "X14").unwrap_err();
        assert!(matches!(err, ParseError::BadGenerator { pos: 0, .. }), "{err}");
        let err = parse_expression(&e, "(X11 + 1").unwrap_err();
        assert!(matches!(err, ParseError::Unexpected { pos: 8, .. }), "{err}");
        let err = parse_expression(&e, "X11^-1").unwrap_err();
        assert!(matches!(err, ParseError::NegativePower { pos: 4, exp: -1 }), "{err}");
        let err = parse_expression(&e, "q^{1/5}").unwrap_err();
        assert!(matches!(err, ParseError::Unexpected { .. }), "{err}");
        assert!(parse_expression(&e, "l+").is_err());
    }

    #[test]
    fn annulus_polynomials() {
        let a = parse_annulus("l+^2 - 2*l-").unwrap();
        assert_eq!(a.to_string(), "l+^2 - 2*l-");
        assert_eq!(parse_annulus(&a.to_string()).unwrap(), a);
        assert!(parse_annulus("X11").is_err());
        assert!(parse_annulus("(1 + v)^-1").is_err());
    }
}
