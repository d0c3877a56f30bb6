//! Element-expression grammar shared by the CLI and test fixtures:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := scalar | generator-name | '(' expr ')'
//! scalar := integer  (interpreted in the field)
//! ```
//!
//! Generator names come from the recursion; for a recursion with
//! generators a, b, c, d the letter names A, B, C, D expand to
//! `a-1`, .., `d-1`.

use std::collections::BTreeMap;

use crate::algrep::element::{letter_element, AlgebraElement, Letter};
use crate::error::{Error, Result};
use crate::exact::{FieldSpec, Scalar};
use crate::selfsim::WreathRecursion;

/// Name table for the grammar's atoms.
pub fn symbol_table(
    rec: &WreathRecursion,
    field: FieldSpec,
) -> Result<BTreeMap<String, AlgebraElement>> {
    let mut table = BTreeMap::new();
    for (i, g) in rec.generators().iter().enumerate() {
        let word =
            rec.word_from_symbols([crate::selfsim::GeneratorSymbol::new(i as u16)]);
        table.insert(g.name.clone(), AlgebraElement::from_word(word, field));
    }
    let has_abcd = ["a", "b", "c", "d"]
        .iter()
        .all(|n| rec.generator_index(n).is_some());
    if has_abcd {
        for l in Letter::ALL {
            table.insert(l.as_char().to_string(), letter_element(rec, field, l)?);
        }
    }
    Ok(table)
}

pub fn parse_element(
    input: &str,
    rec: &WreathRecursion,
    field: FieldSpec,
) -> Result<AlgebraElement> {
    let table = symbol_table(rec, field)?;
    parse_element_with(input, rec, field, &table)
}

pub fn parse_element_with(
    input: &str,
    rec: &WreathRecursion,
    field: FieldSpec,
    table: &BTreeMap<String, AlgebraElement>,
) -> Result<AlgebraElement> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        rec,
        field,
        table,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Int(i64),
    Name(String),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(n.parse().map_err(|_| {
                    Error::Parse(format!("integer literal {n} out of range"))
                })?));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Name(n));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    rec: &'a WreathRecursion,
    field: FieldSpec,
    table: &'a BTreeMap<String, AlgebraElement>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.mul(&self.factor()?, self.rec);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(e)) if e >= 0 => Ok(base.pow(e as u32, self.rec)),
                other => Err(Error::Parse(format!(
                    "expected a nonnegative exponent, got {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(AlgebraElement::scaled_word(
                crate::selfsim::GroupWord::identity(),
                Scalar::from_integer(n, self.field),
            )),
            Some(Tok::Name(n)) => self
                .table
                .get(&n)
                .cloned()
                .ok_or_else(|| Error::Parse(format!("unknown name {n:?}"))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(Error::Parse(format!("expected ')', got {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("expected an atom, got {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfsim::builtin_group;

    #[test]
    fn parses_letters_and_powers() {
        let rec = builtin_group("grigorchuk").unwrap();
        let f = FieldSpec::Gf(2);
        let ab = parse_element("A*B", &rec, f).unwrap();
        let a = parse_element("a-1", &rec, f).unwrap();
        let b = parse_element("b-1", &rec, f).unwrap();
        assert_eq!(ab, a.mul(&b, &rec));
        // 1 + (a+1) + (b+1) + (ad+a+d+1) = b + d + ad over GF(2)
        let x = parse_element("1+A+B+A*D", &rec, f).unwrap();
        assert_eq!(x.term_count(), 3);
        let sq = parse_element("(a*b)^2", &rec, f).unwrap();
        assert_eq!(sq, parse_element("a*b*a*b", &rec, f).unwrap());
        assert!(parse_element("A + ", &rec, f).is_err());
        assert!(parse_element("E", &rec, f).is_err());
    }

    #[test]
    fn scalars_interpret_in_field() {
        let rec = builtin_group("grigorchuk").unwrap();
        let three_gf3 = parse_element("3", &rec, FieldSpec::Gf(3)).unwrap();
        assert!(three_gf3.is_zero());
        let three_q = parse_element("3", &rec, FieldSpec::Rationals).unwrap();
        assert!(!three_q.is_zero());
        // a^2 - 1 = 0 as an element because a is involutive (free reduction)
        let z = parse_element("a^2-1", &rec, FieldSpec::Gf(3)).unwrap();
        assert!(z.is_zero());
    }
}
