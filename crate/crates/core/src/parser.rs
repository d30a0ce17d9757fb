//! Recursive-descent parser for the formula language.
//!
//! Grammar, loosest binding first: `<->` and `->` (both right-associative),
//! then `|`, `&`, `!`, and the atoms `T`, `F`, `x<digits>`, `( ... )`.
//! Whitespace is insignificant. Variables are written `x1..xn` and must not
//! exceed the declared variable count.

use crate::error::{Error, Result};
use crate::logic::Formula;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Top,
    Bot,
    Var(usize),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(Token, usize)>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let Some(&c) = self.src.get(self.pos) else {
                out.push((Token::Eof, start));
                return Ok(out);
            };
            let token = match c {
                b'(' => {
                    self.pos += 1;
                    Token::LParen
                }
                b')' => {
                    self.pos += 1;
                    Token::RParen
                }
                b'!' => {
                    self.pos += 1;
                    Token::Not
                }
                b'&' => {
                    self.pos += 1;
                    Token::And
                }
                b'|' => {
                    self.pos += 1;
                    Token::Or
                }
                b'-' => {
                    if self.src.get(self.pos + 1) == Some(&b'>') {
                        self.pos += 2;
                        Token::Implies
                    } else {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: "expected `->`".into(),
                        });
                    }
                }
                b'<' => {
                    if self.src.get(self.pos + 1) == Some(&b'-')
                        && self.src.get(self.pos + 2) == Some(&b'>')
                    {
                        self.pos += 3;
                        Token::Iff
                    } else {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: "expected `<->`".into(),
                        });
                    }
                }
                b'T' => {
                    self.pos += 1;
                    Token::Top
                }
                b'F' => {
                    self.pos += 1;
                    Token::Bot
                }
                b'x' => self.variable(start)?,
                other => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("unexpected character `{}`", other as char),
                    });
                }
            };
            out.push((token, start));
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn variable(&mut self, start: usize) -> Result<Token> {
        self.pos += 1; // past `x`
        let digits_start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(Error::Syntax {
                pos: start,
                msg: "variable name must be `x` followed by digits".into(),
            });
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_string();
        let index: usize = name[1..].parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("variable index in `{name}` is out of range"),
        })?;
        if index == 0 || index > self.n_vars {
            return Err(Error::UnknownVariable {
                pos: start,
                name,
                n_vars: self.n_vars,
            });
        }
        Ok(Token::Var(index - 1))
    }
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn peek_pos(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        self.pos += 1;
        t
    }

    // iff := implication ('<->' iff)?
    fn iff(&mut self) -> Result<Formula> {
        let lhs = self.implication()?;
        if *self.peek() == Token::Iff {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    // implication := disjunction ('->' implication)?
    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Token::Implies {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Token::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        if *self.peek() == Token::Not {
            self.bump();
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let pos = self.peek_pos();
        match self.bump() {
            Token::Top => Ok(Formula::Top),
            Token::Bot => Ok(Formula::Bot),
            Token::Var(j) => Ok(Formula::Var(j)),
            Token::LParen => {
                let inner = self.iff()?;
                let pos = self.peek_pos();
                match self.bump() {
                    Token::RParen => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos,
                        msg: "expected `)`".into(),
                    }),
                }
            }
            other => Err(Error::Syntax {
                pos,
                msg: format!("expected a formula, found {other:?}"),
            }),
        }
    }
}

/// Parses `text` against a language of `n_vars` variables.
pub fn parse_formula(text: &str, n_vars: usize) -> Result<Formula> {
    let tokens = Lexer {
        src: text.as_bytes(),
        pos: 0,
        n_vars,
    }
    .tokens()?;
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.iff()?;
    if *parser.peek() != Token::Eof {
        return Err(Error::Syntax {
            pos: parser.peek_pos(),
            msg: "trailing input after formula".into(),
        });
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::logic::Formula::*;

    #[test]
    fn parses_negated_conjunct() {
        let f = parse_formula("x1 & !x2", 2).unwrap();
        assert_eq!(f, Formula::and(Var(0), Formula::not(Var(1))));
    }

    #[test]
    fn parses_constants() {
        assert_eq!(parse_formula("T", 2).unwrap(), Top);
        assert_eq!(parse_formula("F", 2).unwrap(), Bot);
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse_formula("x1 -> x2 -> x3", 3).unwrap();
        assert_eq!(
            f,
            Formula::implies(Var(0), Formula::implies(Var(1), Var(2)))
        );
    }

    #[test]
    fn iff_binds_loosest() {
        let f = parse_formula("x1 -> x2 <-> x3", 3).unwrap();
        assert_eq!(f, Formula::iff(Formula::implies(Var(0), Var(1)), Var(2)));
    }

    #[test]
    fn not_binds_tighter_than_and() {
        let f = parse_formula("!x1 & x2", 2).unwrap();
        assert_eq!(f, Formula::and(Formula::not(Var(0)), Var(1)));
    }

    #[test]
    fn and_binds_tighter_than_or() {
        let f = parse_formula("x1 | x2 & x3", 3).unwrap();
        assert_eq!(f, Formula::or(Var(0), Formula::and(Var(1), Var(2))));
    }

    #[test]
    fn reports_unknown_variable_with_position() {
        let err = parse_formula("x1 & x9", 2).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownVariable {
                pos: 5,
                name: "x9".into(),
                n_vars: 2
            }
        );
    }

    #[test]
    fn reports_syntax_error_with_position() {
        let err = parse_formula("x1 &", 2).unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 4, .. }));
        let err = parse_formula("x1 y2", 2).unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 3, .. }));
    }

    #[test]
    fn rejects_x_zero() {
        let err = parse_formula("x0", 2).unwrap_err();
        assert!(matches!(err, Error::UnknownVariable { .. }));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_formula("  x1&x2 ", 2).unwrap(),
            parse_formula("x1 & x2", 2).unwrap()
        );
    }
}
