//! Expression grammar (whitespace is insignificant, `ω` may be written for `w`):
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := 'rev' '(' pure ')' ['*' nat] | pure ['*' nat]
//! pure  := 'w' ['^' exp] | nat
//! exp   := nat | 'w' ['^' exp] | '(' expr ')' | '{' expr '}'
//! ```
//!
//! The exponent binds tighter than `*` and `+`, so `w^2*3` is `ω²·3`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{OrderType, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses an expression exactly as written; the result is not normalized.
pub fn parse(text: &str) -> Result<OrderType, ParseError> {
    let mut parser = Parser { src: text, pos: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{c}'")))
        }
    }

    fn eat_omega(&mut self) -> bool {
        self.eat('w') || self.eat('ω')
    }

    fn expr(&mut self) -> Result<OrderType, ParseError> {
        let mut terms = Vec::new();
        loop {
            if let Some(term) = self.term()? {
                terms.push(term);
            }
            if !self.eat('+') {
                break;
            }
        }
        Ok(OrderType::from_terms(terms))
    }

    fn term(&mut self) -> Result<Option<Term>, ParseError> {
        self.skip_ws();
        let reversed = self.src[self.pos..].starts_with("rev");
        let base = if reversed {
            self.pos += 3;
            self.expect('(')?;
            let inner = self.pure()?;
            self.expect(')')?;
            inner
        } else {
            self.pure()?
        };
        let multiplier = if self.eat('*') { self.nat()? } else { 1 };
        let term = match base {
            Term::Finite(m) => Term::Finite(
                m.checked_mul(multiplier)
                    .ok_or_else(|| self.error("number too large"))?,
            ),
            Term::Ordinal {
                exponent,
                coefficient,
            }
            | Term::Reversed {
                exponent,
                coefficient,
            } => {
                let coefficient = coefficient
                    .checked_mul(multiplier)
                    .ok_or_else(|| self.error("number too large"))?;
                if reversed {
                    Term::Reversed {
                        exponent,
                        coefficient,
                    }
                } else {
                    Term::Ordinal {
                        exponent,
                        coefficient,
                    }
                }
            }
        };
        Ok(if term.coefficient() == 0 {
            None
        } else {
            Some(term)
        })
    }

    fn pure(&mut self) -> Result<Term, ParseError> {
        if self.eat_omega() {
            let exponent = if self.eat('^') {
                self.exponent()?
            } else {
                OrderType::finite(1)
            };
            return Ok(Term::Ordinal {
                exponent,
                coefficient: 1,
            });
        }
        Ok(Term::Finite(self.nat()?))
    }

    fn exponent(&mut self) -> Result<OrderType, ParseError> {
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.eat('{') {
            let e = self.expr()?;
            self.expect('}')?;
            return Ok(e);
        }
        if self.eat_omega() {
            let exponent = if self.eat('^') {
                self.exponent()?
            } else {
                OrderType::finite(1)
            };
            return Ok(OrderType::from_terms([Term::Ordinal {
                exponent,
                coefficient: 1,
            }]));
        }
        let n = self.nat()?;
        Ok(OrderType::from_terms([Term::Finite(n)]))
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(self.error("expected a natural number or 'w'"));
        }
        let value = self.src[start..start + digits]
            .parse::<u64>()
            .map_err(|_| self.error("number too large"))?;
        self.pos += digits;
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let e = parse("w^2*3 + w*2 + 5").unwrap();
        assert_eq!(
            e.terms(),
            &[
                Term::Ordinal {
                    exponent: OrderType::finite(2),
                    coefficient: 3
                },
                Term::Ordinal {
                    exponent: OrderType::finite(1),
                    coefficient: 2
                },
                Term::Finite(5),
            ]
        );
        let r = parse("rev(w^2)").unwrap();
        assert_eq!(
            r.terms(),
            &[Term::Reversed {
                exponent: OrderType::finite(2),
                coefficient: 1
            }]
        );
        assert!(parse("0").unwrap().terms().is_empty());
        assert_eq!(parse(" ω ^ { ω + 2 } ").unwrap(), parse("w^(w+2)").unwrap());
    }

    #[test]
    fn unnormalized_result() {
        assert_eq!(parse("w + w^2").unwrap().terms().len(), 2);
    }

    #[test]
    fn errors_carry_position() {
        let err = parse("w^2 + ").unwrap_err();
        assert_eq!(err.position, 6);
        let err = parse("w^2 x").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(parse("rev(w").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "w^2*3 + w*2 + 5",
            "rev(w^2)*3",
            "w^w",
            "w^(w + 2)",
            "3 + rev(w)*2",
            "0",
            "w^w^2",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&alloc::format!("{e}")).unwrap(), e, "{s}");
        }
    }
}
