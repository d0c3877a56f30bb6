use crate::algrep::{parse_element, AlgebraElement, LetterWord};
use crate::error::{Error, Result};
use crate::exact::FieldSpec;
use crate::present::sigma::{sigma_apply_element, sigma_apply_letters, sigma_apply_word, Substitution};
use crate::selfsim::{builtin_group, GeneratorSymbol, GroupWord, WreathRecursion};

/// Built-in relator presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// The group presentation: a^2, b^2, c^2, d^2, bcd and the families
    /// sigma^n(ad)^4, sigma^n(adacac)^4.
    GrigorchukGroup,
    /// Char-2 algebra: the twelve degree relators A^2, B^2, C^2, D^2,
    /// B+C+D, BC, CB, BD, DB, CD, DC, DAD plus sigma^n(CACACAC) and
    /// sigma^n(DACACAD).
    GrigorchukAlgChar2,
    /// Char != 2 algebra: a^2-1, .., bcd-1 plus
    /// sigma^n((d-1)a(d-1)) and sigma^n((d-1)a(d^acac - 1)).
    GrigorchukAlgCharNe2,
}

impl Preset {
    pub fn parse(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "grigorchuk-group" => Ok(Preset::GrigorchukGroup),
            "grigorchuk-alg-char2" => Ok(Preset::GrigorchukAlgChar2),
            "grigorchuk-alg-charne2" => Ok(Preset::GrigorchukAlgCharNe2),
            other => Err(Error::not_found(format!("unknown preset {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::GrigorchukGroup => "grigorchuk-group",
            Preset::GrigorchukAlgChar2 => "grigorchuk-alg-char2",
            Preset::GrigorchukAlgCharNe2 => "grigorchuk-alg-charne2",
        }
    }

    pub fn substitution(&self) -> Substitution {
        match self {
            Preset::GrigorchukGroup => Substitution::GroupSigma,
            Preset::GrigorchukAlgChar2 => Substitution::Char2Sigma,
            Preset::GrigorchukAlgCharNe2 => Substitution::CharNe2Sigma,
        }
    }
}

pub fn preset_names() -> &'static [&'static str] {
    &[
        "grigorchuk-group",
        "grigorchuk-alg-char2",
        "grigorchuk-alg-charne2",
    ]
}

/// A relator to check: a group word expected to act trivially, a letter
/// monomial or an algebra element expected to evaluate to zero.
#[derive(Debug, Clone)]
pub struct Relator {
    pub name: String,
    /// Expression in the element grammar (or plain word for group
    /// relators); this is what the golden files list.
    pub expr: String,
    pub body: RelatorBody,
}

#[derive(Debug, Clone)]
pub enum RelatorBody {
    /// Not freely reduced on purpose: a^2 must be checked as written.
    GroupWord(Vec<GeneratorSymbol>),
    Letters(LetterWord),
    Element(AlgebraElement),
}

/// A preset's base relators plus sigma-family seeds expanded to a depth.
#[derive(Debug, Clone)]
pub struct RelatorSet {
    pub preset: Preset,
    pub depth: usize,
    pub relators: Vec<Relator>,
}

/// Expands `base u { sigma^n(seed) : 0 <= n <= depth }`.
pub fn generate_relators(preset: Preset, depth: i64, field: FieldSpec) -> Result<RelatorSet> {
    if depth < 0 {
        return Err(Error::invalid("depth must be >= 0"));
    }
    let depth = depth as usize;
    let rec = builtin_group("grigorchuk")?;
    let mut relators = Vec::new();
    match preset {
        Preset::GrigorchukGroup => {
            for name in ["a", "b", "c", "d"] {
                let idx = rec.generator_index(name).unwrap();
                relators.push(Relator {
                    name: format!("{name}^2"),
                    expr: format!("{name}*{name}"),
                    body: RelatorBody::GroupWord(vec![
                        GeneratorSymbol::new(idx),
                        GeneratorSymbol::new(idx),
                    ]),
                });
            }
            relators.push(group_relator(&rec, "bcd", "b*c*d")?);
            for seed in ["ad", "adacac"] {
                let seed_word = rec.parse_word(seed)?;
                for n in 0..=depth {
                    let img = sigma_apply_word(&rec, &seed_word, n)?;
                    let pow4 = repeat_word(&img, 4);
                    relators.push(Relator {
                        name: format!("sigma^{n}({seed})^4"),
                        expr: word_expr(&rec, &pow4),
                        body: RelatorBody::GroupWord(pow4),
                    });
                }
            }
        }
        Preset::GrigorchukAlgChar2 => {
            if field.characteristic() != 2 {
                return Err(Error::invalid("grigorchuk-alg-char2 needs a char-2 field"));
            }
            for mono in [
                "AA", "BB", "CC", "DD", "BC", "CB", "BD", "DB", "CD", "DC", "DAD",
            ] {
                relators.push(letters_relator(mono));
            }
            relators.push(Relator {
                name: "B+C+D".into(),
                expr: "B+C+D".into(),
                body: RelatorBody::Element(parse_element("B+C+D", &rec, field)?),
            });
            for seed in ["CACACAC", "DACACAD"] {
                let seed_word = LetterWord::parse(seed)?;
                for n in 0..=depth {
                    let img = sigma_apply_letters(&seed_word, n);
                    relators.push(Relator {
                        name: format!("sigma^{n}({seed})"),
                        expr: img
                            .0
                            .iter()
                            .map(|l| l.as_char().to_string())
                            .collect::<Vec<_>>()
                            .join("*"),
                        body: RelatorBody::Letters(img),
                    });
                }
            }
        }
        Preset::GrigorchukAlgCharNe2 => {
            if field.characteristic() == 2 {
                return Err(Error::invalid("grigorchuk-alg-charne2 needs char != 2"));
            }
            for name in ["a", "b", "c", "d"] {
                relators.push(Relator {
                    name: format!("{name}^2-1"),
                    expr: format!("{name}^2-1"),
                    body: RelatorBody::Element(parse_element(
                        &format!("{name}^2-1"),
                        &rec,
                        field,
                    )?),
                });
            }
            relators.push(Relator {
                name: "bcd-1".into(),
                expr: "b*c*d-1".into(),
                body: RelatorBody::Element(parse_element("b*c*d-1", &rec, field)?),
            });
            // (d-1)a(d-1) and (d-1)a(d^acac - 1) with d^acac = caca d acac
            let seeds = [
                ("(d-1)*a*(d-1)", "(d-1)a(d-1)"),
                (
                    "(d-1)*a*(c*a*c*a*d*a*c*a*c-1)",
                    "(d-1)a(d^acac-1)",
                ),
            ];
            for (expr, label) in seeds {
                let seed = parse_element(expr, &rec, field)?;
                for n in 0..=depth {
                    let img = sigma_apply_element(&rec, &seed, n)?;
                    relators.push(Relator {
                        name: format!("sigma^{n}({label})"),
                        expr: element_expr(&rec, &img),
                        body: RelatorBody::Element(img),
                    });
                }
            }
        }
    }
    Ok(RelatorSet {
        preset,
        depth,
        relators,
    })
}

fn group_relator(rec: &WreathRecursion, name: &str, expr: &str) -> Result<Relator> {
    let word = rec.parse_word(name)?;
    Ok(Relator {
        name: name.to_string(),
        expr: expr.to_string(),
        body: RelatorBody::GroupWord(word.symbols().to_vec()),
    })
}

fn letters_relator(mono: &str) -> Relator {
    let w = LetterWord::parse(mono).expect("preset letters");
    Relator {
        name: mono.to_string(),
        expr: mono
            .chars()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("*"),
        body: RelatorBody::Letters(w),
    }
}

fn repeat_word(w: &GroupWord, times: usize) -> Vec<GeneratorSymbol> {
    let mut out = Vec::with_capacity(w.len() * times);
    for _ in 0..times {
        out.extend_from_slice(w.symbols());
    }
    out
}

fn word_expr(rec: &WreathRecursion, syms: &[GeneratorSymbol]) -> String {
    syms.iter()
        .map(|s| {
            let mut t = rec.generators()[s.index as usize].name.clone();
            if s.inverse {
                t.push('\'');
            }
            t
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn element_expr(rec: &WreathRecursion, e: &AlgebraElement) -> String {
    e.to_display(rec)
}
