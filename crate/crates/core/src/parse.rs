//! Text form of polynomials.
//!
//! ```text
//! poly     := sign? term (('+'|'-') term)*
//! term     := coeff ('*' factor)* | factor ('*' factor)*
//! factor   := var ('^' natural)?
//! var      := 'z' index | 'zb' index
//! coeff    := rational ('*' 'i')?
//!           | '(' sign? rational (('+'|'-') rational '*'? 'i')? ')'
//! rational := natural ('/' positive-natural)?
//! ```
//!
//! Whitespace is insignificant. `Display` on [`Poly`] emits this grammar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, ParseError, Result};
use crate::poly::{Context, Monomial, Poly, Var};
use crate::scalar::Scalar;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { src: text.as_bytes(), pos: 0 }
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

    /// Next byte without skipping whitespace.
    fn peek_raw(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn error(&mut self, msg: impl Into<String>) -> ParseError {
        self.skip_ws();
        let found = match self.src.get(self.pos) {
            Some(&c) => format!(", found '{}'", c as char),
            None => ", found end of input".to_string(),
        };
        ParseError::new(self.pos, format!("{}{found}", msg.into()))
    }

    fn natural(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string parses"))
    }

    fn small_natural(&mut self, what: &str) -> Result<usize, ParseError> {
        let start = self.pos;
        let n = self.natural()?;
        usize::try_from(n).map_err(|_| ParseError::new(start, format!("{what} too large")))
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let num = self.natural()?;
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let den = self.natural()?;
            if den.is_zero() {
                return Err(ParseError::new(at, "zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// After a `'*'`, decides whether an imaginary unit follows.
    fn at_imaginary_unit(&mut self) -> bool {
        self.peek() == Some(b'i')
    }
}

struct Parser<'a> {
    cur: Cursor<'a>,
    ctx: Context,
}

impl Parser<'_> {
    fn poly(&mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.ctx);
        let mut negate = self.cur.eat(b'-');
        loop {
            let (m, mut c) = self.term()?;
            if negate {
                c = -c;
            }
            out.add_term(m, &c);
            if self.cur.eat(b'+') {
                negate = false;
            } else if self.cur.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        if self.cur.peek().is_some() {
            return Err(self.cur.error("unexpected input").into());
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut mono = Monomial::one(&self.ctx);
        let coef = match self.cur.peek() {
            Some(b'z') => {
                self.factor(&mut mono)?;
                Scalar::one()
            }
            Some(b'(') => self.paren_coeff()?,
            Some(c) if c.is_ascii_digit() => {
                let r = self.cur.rational()?;
                let save = self.cur.pos;
                if self.cur.eat(b'*') && self.cur.at_imaginary_unit() {
                    self.cur.pos += 1;
                    Scalar::new(BigRational::zero(), r)
                } else {
                    self.cur.pos = save;
                    Scalar::real(r)
                }
            }
            _ => return Err(self.cur.error("expected a coefficient or variable").into()),
        };
        while self.cur.eat(b'*') {
            self.factor(&mut mono)?;
        }
        Ok((mono, coef))
    }

    fn paren_coeff(&mut self) -> Result<Scalar> {
        self.cur.expect(b'(')?;
        let neg_re = self.cur.eat(b'-');
        let mut re = self.cur.rational()?;
        if neg_re {
            re = -re;
        }
        let mut im = BigRational::zero();
        let sign = if self.cur.eat(b'+') {
            Some(BigRational::one())
        } else if self.cur.eat(b'-') {
            Some(-BigRational::one())
        } else {
            None
        };
        if let Some(s) = sign {
            im = s * self.cur.rational()?;
            self.cur.eat(b'*');
            self.cur.expect(b'i')?;
        }
        self.cur.expect(b')')?;
        Ok(Scalar::new(re, im))
    }

    fn factor(&mut self, mono: &mut Monomial) -> Result<()> {
        if self.cur.peek() != Some(b'z') {
            return Err(self.cur.error("expected a variable").into());
        }
        self.cur.pos += 1;
        let conj = self.cur.peek_raw() == Some(b'b');
        if conj {
            self.cur.pos += 1;
        }
        if !self.cur.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.cur.error("expected a variable index").into());
        }
        let index = self.cur.small_natural("variable index")?;
        let v = if conj { Var::Zb(index) } else { Var::Z(index) };
        v.check(&self.ctx)?;
        let e = if self.cur.eat(b'^') {
            let at = self.cur.pos;
            u32::try_from(self.cur.natural()?).map_err(|_| Error::from(ParseError::new(at, "exponent too large")))?
        } else {
            1
        };
        let mut m = Monomial::one(&self.ctx);
        for _ in 0..e {
            m = m.times_var(v);
        }
        *mono = mono.mul(&m);
        Ok(())
    }
}

pub fn parse_poly(text: &str, ctx: Context) -> Result<Poly> {
    Parser { cur: Cursor::new(text), ctx }.poly()
}

/// Parses a scalar in the report form `a/b`, `c/d*i`, `a/b+c/d*i` (signs allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut cur = Cursor::new(text);
    let neg = cur.eat(b'-');
    let mut first = cur.rational()?;
    if neg {
        first = -first;
    }
    let value = if cur.eat(b'*') {
        cur.expect(b'i')?;
        Scalar::new(BigRational::zero(), first)
    } else if cur.peek().is_some() {
        let s = if cur.eat(b'+') {
            BigRational::one()
        } else {
            cur.expect(b'-')?;
            -BigRational::one()
        };
        let im = s * cur.rational()?;
        cur.expect(b'*')?;
        cur.expect(b'i')?;
        Scalar::new(first, im)
    } else {
        Scalar::real(first)
    };
    if cur.peek().is_some() {
        return Err(cur.error("unexpected input").into());
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Bidegree;
    use proptest::prelude::*;

    fn ctx(p: usize) -> Context {
        Context::new(p).unwrap()
    }

    #[test]
    fn single_monomial() {
        let f = parse_poly("z3^2*zb1^2", ctx(2)).unwrap();
        assert_eq!(f.len(), 1);
        let m = Monomial::from_exponents(vec![0, 0, 2, 0], vec![2, 0, 0, 0]);
        assert_eq!(f.coefficient(&m), Scalar::one());
    }

    #[test]
    fn two_terms_with_fractions() {
        let f = parse_poly("1/3*z3^2*zb1^2 + 2/3*z2*z3*zb1*zb4", ctx(2)).unwrap();
        assert_eq!(f.len(), 2);
        let m = Monomial::from_exponents(vec![0, 1, 1, 0], vec![1, 0, 0, 1]);
        assert_eq!(f.coefficient(&m), Scalar::ratio(2, 3));
        assert_eq!(f.homogeneous_bidegree(), Some(Bidegree::new(2, 2)));
    }

    #[test]
    fn index_out_of_range_names_the_variable() {
        let err = parse_poly("z5", ctx(2)).unwrap_err();
        assert_eq!(err, Error::VariableOutOfRange { name: "z5".into(), index: 5, max: 4 });
        assert!(matches!(parse_poly("zb0", ctx(2)), Err(Error::VariableOutOfRange { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_poly("z1 + * z2", ctx(1)) {
            Err(Error::Parse(e)) => assert_eq!(e.pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("z1^", ctx(1)) {
            Err(Error::Parse(e)) => assert_eq!(e.pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("1/0*z1", ctx(1)), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("", ctx(1)), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("z1 z2", ctx(1)), Err(Error::Parse(_))));
    }

    #[test]
    fn complex_coefficients() {
        let c = ctx(1);
        let f = parse_poly("(1/2-3*i)*z1 + 2*i*zb2 - 1*i", c).unwrap();
        assert_eq!(f.coefficient(&Monomial::var(&c, Var::Z(1))), Scalar::complex(1, 2, -3, 1));
        assert_eq!(f.coefficient(&Monomial::var(&c, Var::Zb(2))), Scalar::complex(0, 1, 2, 1));
        assert_eq!(f.constant_term(), -Scalar::i());
        assert_eq!(f.to_string(), "(1/2-3*i)*z1 + 2*i*zb2 - 1*i");
    }

    #[test]
    fn repeated_factors_multiply() {
        let c = ctx(1);
        assert_eq!(parse_poly("z1*z1^2*zb1", c).unwrap(), parse_poly("z1^3*zb1", c).unwrap());
        assert_eq!(parse_poly("z1 - z1", c).unwrap(), Poly::zero(c));
        assert_eq!(parse_poly("0", c).unwrap().to_string(), "0");
    }

    #[test]
    fn scalar_text_round_trip() {
        for s in ["0", "-3/4", "1*i", "-1*i", "1/2-1/3*i", "5+2*i"] {
            assert_eq!(parse_scalar(s).unwrap().to_string(), s);
        }
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-6i64..=6, 1i64..=5, -6i64..=6, 1i64..=5).prop_map(|(a, b, c, d)| Scalar::complex(a, b, c, d))
    }

    fn arb_poly(p: usize) -> impl Strategy<Value = Poly> {
        let n = 2 * p;
        let mono = (prop::collection::vec(0u32..3, n), prop::collection::vec(0u32..3, n))
            .prop_map(|(a, b)| Monomial::from_exponents(a, b));
        prop::collection::vec((mono, arb_scalar()), 0..8)
            .prop_map(move |ts| Poly::from_terms(Context::new(p).unwrap(), ts))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_poly(2)) {
            let text = f.to_string();
            let g = parse_poly(&text, f.ctx()).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), text);
        }
    }
}
