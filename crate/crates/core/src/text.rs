//! Text syntax for elements.
//!
//! ```text
//! element := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | atom ('^' nat)?
//! atom    := number | 'H' | gen | gen 'hat' | 'hhat' | '(' element ')'
//! gen     := 'Xm2' | 'Xm1' | 'h' | 'Xp1' | 'Xp2'
//! ```
//!
//! Products are the diamond product, so `Xp1*H` normalizes to `(H + 1)*Xp1`.
//! Division is only allowed by invertible scalars.

use thiserror::Error;

use crate::algebra::{diamond, h_hat, hat_generator, AlgebraElement, Generator};
use crate::scalar::{DynamicalScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("cannot divide by `{divisor}` at position {pos}: not a unit of the scalar ring")]
    NotInvertible { pos: usize, divisor: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
            }
            let n: num_bigint::BigInt = digits.parse().expect("digits");
            out.push((pos, Token::Num(Rational::from_integer(n))));
        } else if c.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_alphanumeric() && d != '_' {
                    break;
                }
                name.push(d);
                chars.next();
            }
            out.push((pos, Token::Ident(name)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Token::Op(c)));
            chars.next();
        } else {
            return Err(ParseError::Syntax {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.index += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            message: message.to_string(),
        })
    }

    fn element(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = diamond(&acc, &self.factor()?);
            } else if self.eat('/') {
                let pos = self.pos();
                let divisor = self.factor()?;
                let inverse = divisor
                    .as_scalar()
                    .and_then(|s| s.invert().ok())
                    .ok_or_else(|| ParseError::NotInvertible {
                        pos,
                        divisor: divisor.to_string(),
                    })?;
                acc = diamond(&acc, &AlgebraElement::scalar(inverse));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<AlgebraElement, ParseError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n)) if n.is_integer() => {
                    self.index += 1;
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .or_else(|_| self.error("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return self.error("expected a natural-number exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<AlgebraElement, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.index += 1;
                Ok(AlgebraElement::scalar(DynamicalScalar::constant(n)))
            }
            Some(Token::Ident(name)) => {
                self.index += 1;
                match name.as_str() {
                    "H" => Ok(AlgebraElement::scalar(DynamicalScalar::h())),
                    "hhat" => Ok(h_hat()),
                    _ => match name.strip_suffix("hat").map(Generator::from_ascii) {
                        Some(Some(g)) => Ok(hat_generator(g)),
                        _ => Generator::from_ascii(&name)
                            .map(AlgebraElement::generator)
                            .ok_or(ParseError::UnknownSymbol { pos, name }),
                    },
                }
            }
            Some(Token::Op('(')) => {
                self.index += 1;
                let inner = self.element()?;
                if !self.eat(')') {
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(Token::Op(c)) => self.error(&format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses and normalizes an element.
pub fn parse_expression(text: &str) -> Result<AlgebraElement, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        index: 0,
        end: text.len(),
    };
    let value = parser.element()?;
    if parser.index != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(value)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(text: &str) -> Result<(AlgebraElement, AlgebraElement), ParseError> {
    let Some((lhs, rhs)) = text.split_once('=') else {
        return Err(ParseError::Syntax {
            pos: text.len(),
            message: "expected `=`".to_string(),
        });
    };
    let offset = lhs.len() + 1;
    let shifted = |e: ParseError| match e {
        ParseError::Syntax { pos, message } => ParseError::Syntax { pos: pos + offset, message },
        ParseError::UnknownSymbol { pos, name } => ParseError::UnknownSymbol { pos: pos + offset, name },
        ParseError::NotInvertible { pos, divisor } => ParseError::NotInvertible { pos: pos + offset, divisor },
    };
    Ok((parse_expression(lhs)?, parse_expression(rhs).map_err(shifted)?))
}

/// Parses an expression that must be a scalar in `R`.
pub fn parse_scalar(text: &str) -> Result<DynamicalScalar, ParseError> {
    let value = parse_expression(text)?;
    value.as_scalar().ok_or(ParseError::Syntax {
        pos: 0,
        message: format!("`{text}` is not a scalar"),
    })
}

/// Parses a rational constant such as `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    parse_scalar(text)?.as_constant().ok_or(ParseError::Syntax {
        pos: 0,
        message: format!("`{text}` is not a rational constant"),
    })
}

/// The ASCII form, which `parse_expression` reads back to the same element.
pub fn print_expression(a: &AlgebraElement) -> String {
    a.render(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::scalar::rat;

    #[test]
    fn odd_square() {
        let e = parse_expression("Xp1*Xp1").unwrap();
        let expected = AlgebraElement::term(
            DynamicalScalar::from_int(2) * DynamicalScalar::inv_h_minus(0),
            Monomial::new(0, 0, 1, 0, 1),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn scalar_h() {
        assert_eq!(
            parse_expression("H").unwrap(),
            AlgebraElement::scalar(DynamicalScalar::h())
        );
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
    }

    #[test]
    fn round_trip() {
        for text in [
            "(1 - 2/(H+1))*Xp1*Xp2",
            "Xp2*Xm2 + H^2*h^3",
            "(H^2 - 3*H + 2)/((H-1)*(H-2))",
            "1/2*Xm1*Xp1 - hhat",
            "0",
        ] {
            let a = parse_expression(text).unwrap();
            let b = parse_expression(&print_expression(&a)).unwrap();
            assert_eq!(a, b, "{text}");
        }
    }

    #[test]
    fn shift_through_generator() {
        let a = parse_expression("Xp1*H").unwrap();
        let b = parse_expression("(H+1)*Xp1").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_expression("Xp3"),
            Err(ParseError::UnknownSymbol { pos: 0, .. })
        ));
        assert!(matches!(
            parse_expression("Xp1 * (h"),
            Err(ParseError::Syntax { pos: 8, .. })
        ));
        assert!(matches!(
            parse_expression("1/(H^2+1)"),
            Err(ParseError::NotInvertible { .. })
        ));
        assert!(matches!(
            parse_expression("1/Xp1"),
            Err(ParseError::NotInvertible { .. })
        ));
        assert!(matches!(parse_expression("2 $"), Err(ParseError::Syntax { pos: 2, .. })));
    }
}
