use crate::algrep::{AlgebraElement, Letter, LetterWord};
use crate::error::{Error, Result};
use crate::selfsim::{GeneratorSymbol, GroupWord, WreathRecursion};

/// The three substitution variants. All are the same cycle on the torsion
/// letters with `a -> aca`; they differ in what they act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substitution {
    /// On group words over a, b, c, d (freely reduced afterwards).
    GroupSigma,
    /// On letter monomials over A, B, C, D (free, no reduction).
    Char2Sigma,
    /// On algebra elements: the group substitution applied inside every
    /// word of the combination, extended linearly.
    CharNe2Sigma,
}

fn letter_image(l: Letter) -> &'static [Letter] {
    match l {
        Letter::A => &[Letter::A, Letter::C, Letter::A],
        Letter::B => &[Letter::D],
        Letter::C => &[Letter::B],
        Letter::D => &[Letter::C],
    }
}

/// `A -> ACA, B -> D, C -> B, D -> C`, iterated n times.
pub fn sigma_apply_letters(w: &LetterWord, n: usize) -> LetterWord {
    let mut cur = w.clone();
    for _ in 0..n {
        let mut next = Vec::with_capacity(cur.0.len() * 2);
        for &l in &cur.0 {
            next.extend_from_slice(letter_image(l));
        }
        cur = LetterWord(next);
    }
    cur
}

fn word_image(rec: &WreathRecursion, sym: GeneratorSymbol) -> Result<Vec<GeneratorSymbol>> {
    let name = &rec.generators()[sym.index as usize].name;
    let image: &[&str] = match name.as_str() {
        "a" => &["a", "c", "a"],
        "b" => &["d"],
        "c" => &["b"],
        "d" => &["c"],
        other => {
            return Err(Error::invalid(format!(
                "sigma is defined on a, b, c, d; got generator {other:?}"
            )))
        }
    };
    let mut out = Vec::with_capacity(image.len());
    for n in image {
        let idx = rec
            .generator_index(n)
            .ok_or_else(|| Error::invalid(format!("recursion is missing generator {n:?}")))?;
        out.push(GeneratorSymbol {
            index: idx,
            // a, b, c, d are involutive here; sigma of an inverse symbol is
            // the reversed inverse image, which for involutive letters is
            // the image itself reversed
            inverse: false,
        });
    }
    if sym.inverse {
        out.reverse();
    }
    Ok(out)
}

/// `a -> aca, b -> d, d -> c, c -> b` on group words, freely reduced after
/// substitution; iterated n times.
pub fn sigma_apply_word(rec: &WreathRecursion, w: &GroupWord, n: usize) -> Result<GroupWord> {
    let mut cur = w.clone();
    for _ in 0..n {
        let mut next = GroupWord::identity();
        for &s in cur.symbols() {
            for t in word_image(rec, s)? {
                rec.push_reduced(&mut next, t);
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// The linear extension to algebra elements: substitute inside every word.
pub fn sigma_apply_element(
    rec: &WreathRecursion,
    x: &AlgebraElement,
    n: usize,
) -> Result<AlgebraElement> {
    let mut cur = x.clone();
    for _ in 0..n {
        let mut next = AlgebraElement::zero(cur.field());
        for (w, c) in cur.terms() {
            let img = sigma_apply_word(rec, w, 1)?;
            next = next.add(&AlgebraElement::scaled_word(img, c.clone()));
        }
        cur = next;
    }
    Ok(cur)
}
