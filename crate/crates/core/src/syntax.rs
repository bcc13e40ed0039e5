//! ASCII concrete syntax.
//!
//! ```text
//! formula := disj ( "->" formula )?          right associative
//! disj    := conj ( ("|" | "+") conj )*       left associative
//! conj    := unary ( ("&" | "*") unary )*     left associative
//! unary   := "~" unary | primary
//! primary := IDENT | "1" | "0" | "(" formula ")"
//! ```
//!
//! `1` is `⊤`, `0` is `⊥`; `*` and `+` are the choice connectives `⊓` and
//! `⊔`, which only CL2 formulas may contain. Negation and implication are
//! eliminated while parsing, so the result is always negation normal.

use thiserror::Error;

use crate::cl2::Cl2Formula;
use crate::formula::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("negation applied to nothing at position {position}")]
    DanglingNegation { position: usize },
    #[error("syntax error at position {position}: expected {expected}, found {found}")]
    Unexpected {
        position: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unknown character `{ch}` at position {position}")]
    BadChar { position: usize, ch: char },
    #[error("choice connective `{symbol}` at position {position} is not allowed in a CL6 formula")]
    ChoiceNotAllowed { position: usize, symbol: char },
}

impl ParseError {
    /// Byte offset of the error, when there is one.
    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::DanglingNegation { position }
            | ParseError::Unexpected { position, .. }
            | ParseError::BadChar { position, .. }
            | ParseError::ChoiceNotAllowed { position, .. } => Some(*position),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Zero,
    Not,
    And,
    Or,
    ChAnd,
    ChOr,
    Implies,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("`{n}`"),
            Tok::One => "`1`".into(),
            Tok::Zero => "`0`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::ChAnd => "`*`".into(),
            Tok::ChOr => "`+`".into(),
            Tok::Implies => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '*' => Tok::ChAnd,
            '+' => Tok::ChOr,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '1' => Tok::One,
            '0' => Tok::Zero,
            '-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::BadChar { position: i, ch });
            }
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            position: self.pos(),
            expected,
            found: self.peek().describe(),
        }
    }

    fn formula(&mut self) -> Result<Cl2Formula, ParseError> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Cl2Formula::Or(Box::new(lhs.negate()), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Cl2Formula, ParseError> {
        let mut acc = self.conj()?;
        loop {
            let choice = match self.peek() {
                Tok::Or => false,
                Tok::ChOr => true,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.conj()?;
            acc = if choice {
                Cl2Formula::ChOr(Box::new(acc), Box::new(rhs))
            } else {
                Cl2Formula::Or(Box::new(acc), Box::new(rhs))
            };
        }
    }

    fn conj(&mut self) -> Result<Cl2Formula, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let choice = match self.peek() {
                Tok::And => false,
                Tok::ChAnd => true,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.unary()?;
            acc = if choice {
                Cl2Formula::ChAnd(Box::new(acc), Box::new(rhs))
            } else {
                Cl2Formula::And(Box::new(acc), Box::new(rhs))
            };
        }
    }

    fn unary(&mut self) -> Result<Cl2Formula, ParseError> {
        if *self.peek() == Tok::Not {
            let position = self.pos();
            self.bump();
            if matches!(
                self.peek(),
                Tok::End | Tok::RParen | Tok::And | Tok::Or | Tok::ChAnd | Tok::ChOr | Tok::Implies
            ) {
                return Err(ParseError::DanglingNegation { position });
            }
            return Ok(self.unary()?.negate());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Cl2Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                // the lexer only produces identifiers that start with a letter
                let atom = Atom::named(&name).expect("lexer produced a valid identifier");
                Ok(Cl2Formula::Atom(atom))
            }
            Tok::One => {
                self.bump();
                Ok(Cl2Formula::Atom(Atom::Top))
            }
            Tok::Zero => {
                self.bump();
                Ok(Cl2Formula::Atom(Atom::Bottom))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("an atom, `1`, `0`, `~` or `(`")),
        }
    }
}

/// Parses a CL2 formula (choice connectives allowed).
pub fn parse_cl2_formula(text: &str) -> Result<Cl2Formula, ParseError> {
    let toks = lex(text)?;
    if toks.len() == 1 {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser { toks, at: 0 };
    let f = parser.formula()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(f)
}

/// Parses a CL6 formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let f = parse_cl2_formula(text)?;
    f.to_cl6().ok_or_else(|| {
        let (position, symbol) = text
            .char_indices()
            .find(|(_, c)| *c == '*' || *c == '+')
            .unwrap_or((0, '*'));
        ParseError::ChoiceNotAllowed { position, symbol }
    })
}

// binding strength: disjunctions 1, conjunctions 2, literals 3
fn level(f: &Cl2Formula) -> u8 {
    match f {
        Cl2Formula::Or(..) | Cl2Formula::ChOr(..) => 1,
        Cl2Formula::And(..) | Cl2Formula::ChAnd(..) => 2,
        Cl2Formula::Atom(_) | Cl2Formula::NegAtom(_) => 3,
    }
}

fn write_cl2(f: &Cl2Formula, out: &mut String) {
    let (l, r, op) = match f {
        Cl2Formula::Atom(a) => {
            out.push_str(&a.to_string());
            return;
        }
        Cl2Formula::NegAtom(a) => {
            out.push('~');
            out.push_str(&a.to_string());
            return;
        }
        Cl2Formula::And(l, r) => (l, r, " & "),
        Cl2Formula::Or(l, r) => (l, r, " | "),
        Cl2Formula::ChAnd(l, r) => (l, r, " * "),
        Cl2Formula::ChOr(l, r) => (l, r, " + "),
    };
    let own = level(f);
    // left associative: a left operand at the same level needs no parentheses
    write_operand(l, level(l) < own, out);
    out.push_str(op);
    write_operand(r, level(r) <= own, out);
}

fn write_operand(f: &Cl2Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_cl2(f, out);
        out.push(')');
    } else {
        write_cl2(f, out);
    }
}

pub fn print_cl2_formula(f: &Cl2Formula) -> String {
    let mut out = String::new();
    write_cl2(f, &mut out);
    out
}

/// Minimal-parentheses rendering that parses back to the same tree.
pub fn print_formula(f: &Formula) -> String {
    print_cl2_formula(&Cl2Formula::from(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(name: &str) -> Formula {
        Formula::Atom(Atom::elementary(name))
    }

    #[test]
    fn parse_examples() {
        let p = e("p");
        assert_eq!(
            parse_formula("p -> p & p").unwrap(),
            Formula::or(p.negate(), Formula::and(p.clone(), p.clone()))
        );
        assert_eq!(parse_formula("~1").unwrap(), Formula::bottom());
        assert_eq!(
            parse_formula("~(P & q)").unwrap(),
            Formula::or(
                Formula::NegAtom(Atom::general("P")),
                Formula::NegAtom(Atom::elementary("q"))
            )
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse_formula("p | q & r").unwrap(), parse_formula("p | (q & r)").unwrap());
        assert_eq!(parse_formula("p & q & r").unwrap(), parse_formula("(p & q) & r").unwrap());
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            parse_formula("~p | (~q | r)").unwrap()
        );
        assert_eq!(parse_formula("~~p").unwrap(), e("p"));
    }

    #[test]
    fn print_examples() {
        let p = e("p");
        let or = Formula::or(p.negate(), Formula::and(p.clone(), p.clone()));
        assert_eq!(print_formula(&or), "~p | p & p");
        assert_eq!(print_formula(&Formula::top()), "1");
        let f = Formula::and(Formula::or(e("p"), e("q")), e("r"));
        assert_eq!(print_formula(&f), "(p | q) & r");
        let f = Formula::or(e("p"), Formula::or(e("q"), e("r")));
        assert_eq!(print_formula(&f), "p | (q | r)");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_formula(""), Err(ParseError::Empty));
        assert_eq!(parse_formula("   "), Err(ParseError::Empty));
        assert_eq!(parse_formula("p & ~"), Err(ParseError::DanglingNegation { position: 4 }));
        assert_eq!(parse_formula("(~)"), Err(ParseError::DanglingNegation { position: 1 }));
        assert!(matches!(parse_formula("p &"), Err(ParseError::Unexpected { position: 3, .. })));
        assert!(matches!(parse_formula("(p"), Err(ParseError::Unexpected { position: 2, .. })));
        assert!(matches!(parse_formula("p q"), Err(ParseError::Unexpected { position: 2, .. })));
        assert_eq!(parse_formula("p $ q"), Err(ParseError::BadChar { position: 2, ch: '$' }));
        assert_eq!(
            parse_formula("p * q"),
            Err(ParseError::ChoiceNotAllowed { position: 2, symbol: '*' })
        );
    }

    #[test]
    fn cl2_syntax() {
        let f = parse_cl2_formula("~(p * Q) + r").unwrap();
        assert_eq!(print_cl2_formula(&f), "~p + ~Q + r");
        assert_eq!(parse_cl2_formula(&print_cl2_formula(&f)).unwrap(), f);
    }
}
