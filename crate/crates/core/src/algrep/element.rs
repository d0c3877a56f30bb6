use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{FieldSpec, Scalar};
use crate::selfsim::{GroupWord, WreathRecursion};

/// An exact-field linear combination of group words: canonical form with
/// freely reduced words and no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    field: FieldSpec,
    terms: BTreeMap<GroupWord, Scalar>,
}

impl AlgebraElement {
    pub fn zero(field: FieldSpec) -> Self {
        AlgebraElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        AlgebraElement::from_word(GroupWord::identity(), field)
    }

    pub fn from_word(word: GroupWord, field: FieldSpec) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, field.one());
        AlgebraElement { field, terms }
    }

    pub fn scaled_word(word: GroupWord, c: Scalar) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(word, c);
        }
        AlgebraElement { field, terms }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: GroupWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.field, other.field, "mixed-field elements");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.field);
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.field);
        if c.is_zero() {
            return out;
        }
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a.mul(c));
        }
        out
    }

    /// Product; needs the recursion for free reduction of concatenated
    /// words.
    pub fn mul(&self, other: &AlgebraElement, rec: &WreathRecursion) -> AlgebraElement {
        assert_eq!(self.field, other.field, "mixed-field elements");
        let mut out = AlgebraElement::zero(self.field);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(rec.mul_words(wa, wb), ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32, rec: &WreathRecursion) -> AlgebraElement {
        let mut acc = AlgebraElement::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self, rec);
        }
        acc
    }

    pub fn to_display(&self, rec: &WreathRecursion) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w, c) in &self.terms {
            let word = rec.word_to_string(w);
            let t = if c.is_one() && !w.is_empty() {
                word
            } else if w.is_empty() {
                c.to_string()
            } else {
                format!("{c}*{word}")
            };
            parts.push(t);
        }
        parts.join("+")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}*[{} symbols]", w.len()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The four degree-1 letters of the char-2 Grigorchuk generating set:
/// `A = a-1, B = b-1, C = c-1, D = d-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'A' => Some(Letter::A),
            'B' => Some(Letter::B),
            'C' => Some(Letter::C),
            'D' => Some(Letter::D),
            _ => None,
        }
    }

    pub fn generator_name(&self) -> &'static str {
        match self {
            Letter::A => "a",
            Letter::B => "b",
            Letter::C => "c",
            Letter::D => "d",
        }
    }

    pub fn as_char(&self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
        }
    }
}

/// A monomial over the letters (free of relations; evaluation happens at
/// matrix level so long sigma-images never get expanded).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LetterWord(pub Vec<Letter>);

impl LetterWord {
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for c in s.chars() {
            if c.is_whitespace() || c == '*' {
                continue;
            }
            out.push(
                Letter::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?} in {s:?}")))?,
            );
        }
        Ok(LetterWord(out))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for LetterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// The letter basis as algebra elements, for a recursion whose generators
/// are named a, b, c, d.
pub fn letter_basis(rec: &WreathRecursion, field: FieldSpec) -> Result<[AlgebraElement; 4]> {
    let mut out = Vec::with_capacity(4);
    for l in Letter::ALL {
        out.push(letter_element(rec, field, l)?);
    }
    Ok(out.try_into().unwrap())
}

pub fn letter_element(rec: &WreathRecursion, field: FieldSpec, l: Letter) -> Result<AlgebraElement> {
    let gi = rec.generator_index(l.generator_name()).ok_or_else(|| {
        Error::invalid(format!(
            "group {} has no generator named {:?}; the letter basis needs a/b/c/d",
            rec.name(),
            l.generator_name()
        ))
    })?;
    let word = rec.word_from_symbols([crate::selfsim::GeneratorSymbol::new(gi)]);
    let g = AlgebraElement::from_word(word, field);
    Ok(g.sub(&AlgebraElement::one(field)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfsim::builtin_group;

    #[test]
    fn canonicalization_drops_zeros() {
        let rec = builtin_group("grigorchuk").unwrap();
        let f = FieldSpec::Gf(2);
        let a = AlgebraElement::from_word(rec.parse_word("a").unwrap(), f);
        let two_a = a.add(&a);
        assert!(two_a.is_zero());
        let one = AlgebraElement::one(f);
        // (a+1)^2 = a^2 + 2a + 1 = 0 over GF(2) since a^2 = 1
        let a1 = a.add(&one);
        assert!(a1.mul(&a1, &rec).is_zero());
    }

    #[test]
    fn letter_basis_relation() {
        // B + C + D evaluates to zero over GF(2); as an element of the group
        // ring it is b + c + d - 3 = b + c + d + 1 (char 2), nonzero as a
        // formal combination
        let rec = builtin_group("grigorchuk").unwrap();
        let [_, b, c, d] = letter_basis(&rec, FieldSpec::Gf(2)).unwrap();
        let s = b.add(&c).add(&d);
        assert_eq!(s.term_count(), 4);
    }

    #[test]
    fn letters_need_abcd_names() {
        let rec = builtin_group("odometer").unwrap();
        assert!(letter_basis(&rec, FieldSpec::Gf(2)).is_err());
    }
}
