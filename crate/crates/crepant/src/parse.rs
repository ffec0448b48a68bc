//! Parser for the canonical polynomial text form.
//!
//! The grammar covers everything the canonical printer emits plus the usual
//! human conveniences (parentheses, factored products, leading minus), so the
//! reference tables can be transcribed in the same shape their source prints
//! them:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := rational | generator | '(' expr ')'
//! ```
//!
//! Rational literals are `p` or `p/q` with optional sign. Every identifier
//! must name a generator of the supplied ring. The parser is total: any
//! input either yields a class or a [`ParseError`], never a panic, which is
//! what the fuzz targets exercise.

use crate::ring::{GradedClass, Ring, RingError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Largest exponent the parser accepts. Anything bigger is certainly zero in
/// a truncated ring and typically signals garbage input.
const MAX_EXPONENT: u32 = 512;

/// Deepest parenthesis nesting the parser will follow.
const MAX_DEPTH: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected character `{0}` at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unknown generator `{0}` at byte {1}")]
    UnknownGenerator(String, usize),
    #[error("division by zero in a rational literal at byte {0}")]
    ZeroDenominator(usize),
    #[error("exponent at byte {0} exceeds the supported maximum")]
    ExponentTooLarge(usize),
    #[error("expression nesting exceeds the supported depth")]
    TooDeep,
    #[error("trailing input at byte {0}")]
    TrailingInput(usize),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expr(&mut self, depth: u32) -> Result<GradedClass, ParseError> {
        if depth > MAX_DEPTH {
            return Err(ParseError::TooDeep);
        }
        let mut negate = false;
        while let Some(b) = self.peek() {
            match b {
                b'-' => {
                    negate = !negate;
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let first = self.term(depth)?;
        let mut acc = if negate { first.neg() } else { first };
        while let Some(b) = self.peek() {
            match b {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term(depth)?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term(depth)?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self, depth: u32) -> Result<GradedClass, ParseError> {
        let mut acc = self.factor(depth)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor(depth)?);
        }
        Ok(acc)
    }

    fn factor(&mut self, depth: u32) -> Result<GradedClass, ParseError> {
        let base = self.atom(depth)?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let exp = self.uint()?;
            if exp > MAX_EXPONENT {
                return Err(ParseError::ExponentTooLarge(at));
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self, depth: u32) -> Result<GradedClass, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr(depth + 1)?;
                match self.bump() {
                    Some(b')') => Ok(inner),
                    Some(other) => Err(ParseError::UnexpectedChar(other as char, self.pos - 1)),
                    None => Err(ParseError::UnexpectedEnd),
                }
            }
            Some(b'-') => {
                // unary minus inside a product, e.g. `2*-3`
                self.pos += 1;
                Ok(self.factor(depth)?.neg())
            }
            Some(b) if b.is_ascii_digit() => self.rational(),
            Some(b) if b.is_ascii_alphabetic() => {
                let at = self.pos;
                let name = self.ident();
                GradedClass::generator(self.ring, &name).map_err(|e| match e {
                    RingError::UnknownGenerator(n) => ParseError::UnknownGenerator(n, at),
                    _ => ParseError::UnexpectedChar(' ', at),
                })
            }
            Some(other) => Err(ParseError::UnexpectedChar(other as char, self.pos)),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while let Some(b) = self.bytes.get(self.pos) {
            if b.is_ascii_alphanumeric() || *b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while let Some(b) = self.bytes.get(self.pos) {
            if b.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return match self.bytes.get(self.pos) {
                Some(b) => Err(ParseError::UnexpectedChar(*b as char, self.pos)),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<BigInt>().expect("digit string"))
    }

    fn uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let n = self.digits()?;
        u32::try_from(&n).map_err(|_| ParseError::ExponentTooLarge(at))
    }

    fn rational(&mut self) -> Result<GradedClass, ParseError> {
        let numer = self.digits()?;
        let mut denom = BigInt::from(1);
        // a `/` only continues the literal when digits follow immediately;
        // this keeps `p/q` coefficients while leaving other uses of `/` to
        // the caller
        if self.bytes.get(self.pos) == Some(&b'/')
            && self
                .bytes
                .get(self.pos + 1)
                .is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            let at = self.pos;
            denom = self.digits()?;
            if denom.is_zero() {
                return Err(ParseError::ZeroDenominator(at));
            }
        }
        Ok(GradedClass::constant(
            self.ring,
            BigRational::new(numer, denom),
        ))
    }
}

/// Parses an expression into a class of the given ring.
pub fn parse_class(input: &str, ring: &Ring) -> Result<GradedClass, ParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        ring,
    };
    let class = p.expr(0)?;
    if p.peek().is_some() {
        return Err(ParseError::TrailingInput(p.pos));
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, RingDescriptor};

    fn ring() -> Ring {
        RingDescriptor::new(&[("H", 1), ("L", 1), ("S", 1), ("c1", 1), ("c2", 2)], 4).unwrap()
    }

    #[test]
    fn round_trips_canonical_output() {
        let ring = ring();
        let samples = [
            "12*L*c1 - 72*L^2",
            "0",
            "1/2 - L",
            "-L",
            "H^2 + 5*H*L + 6*L^2",
            "3 + 2*S^2 - 7/3*L*S",
        ];
        for text in samples {
            let parsed = parse_class(text, &ring).unwrap();
            let reprinted = parse_class(&parsed.to_string(), &ring).unwrap();
            assert_eq!(parsed, reprinted, "round trip failed for {text}");
        }
    }

    #[test]
    fn parses_factored_products() {
        let ring = ring();
        let factored = parse_class("6*(2*L + 3*L*S - S^2)", &ring).unwrap();
        let expanded = parse_class("12*L + 18*L*S - 6*S^2", &ring).unwrap();
        assert_eq!(factored, expanded);
        let powered = parse_class("(1 + 2*L)^2", &ring).unwrap();
        let by_hand = parse_class("1 + 4*L + 4*L^2", &ring).unwrap();
        assert_eq!(powered, by_hand);
    }

    #[test]
    fn parses_leading_and_nested_minus() {
        let ring = ring();
        let a = parse_class("-2*L + S - 1", &ring).unwrap();
        let b = parse_class("-(2*L - S + 1)", &ring).unwrap();
        assert_eq!(a, b);
        let double = parse_class("--L", &ring).unwrap();
        assert_eq!(double, parse_class("L", &ring).unwrap());
    }

    #[test]
    fn reports_unknown_generator() {
        let ring = ring();
        match parse_class("12*Q", &ring) {
            Err(ParseError::UnknownGenerator(name, _)) => assert_eq!(name, "Q"),
            other => panic!("expected unknown generator, got {other:?}"),
        }
    }

    #[test]
    fn reports_malformed_input() {
        let ring = ring();
        assert!(matches!(
            parse_class("", &ring),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_class("1 +", &ring),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_class("(1 + L", &ring),
            Err(ParseError::UnexpectedEnd)
        ));
        assert!(matches!(
            parse_class("2 ** L", &ring),
            Err(ParseError::UnexpectedChar('*', _))
        ));
        assert!(matches!(
            parse_class("1/0", &ring),
            Err(ParseError::ZeroDenominator(_))
        ));
        assert!(matches!(
            parse_class("L L", &ring),
            Err(ParseError::TrailingInput(_))
        ));
        assert!(matches!(
            parse_class("L^999999", &ring),
            Err(ParseError::ExponentTooLarge(_))
        ));
    }

    #[test]
    fn depth_limit_is_enforced() {
        let ring = ring();
        let deep = format!("{}L{}", "(".repeat(300), ")".repeat(300));
        assert_eq!(parse_class(&deep, &ring).unwrap_err(), ParseError::TooDeep);
        let fine = format!("{}L{}", "(".repeat(10), ")".repeat(10));
        assert_eq!(
            parse_class(&fine, &ring).unwrap(),
            GradedClass::generator(&ring, "L").unwrap()
        );
    }

    #[test]
    fn truncation_applies_while_parsing() {
        let ring = RingDescriptor::new(&[("L", 1)], 2).unwrap();
        let a = parse_class("(1 + L)^5", &ring).unwrap();
        assert_eq!(a.to_string(), "1 + 5*L + 10*L^2");
        // huge exponents of positive-weight atoms collapse to zero
        let z = parse_class("L^200", &ring).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn whitespace_is_insignificant() {
        let ring = ring();
        let a = parse_class("12*L*c1-72*L^2", &ring).unwrap();
        let b = parse_class("  12 * L * c1\t- 72 * L ^ 2 ", &ring).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.scale(&rat(1)), b);
    }
}
