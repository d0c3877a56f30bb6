use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::selfsim::{GeneratorSymbol, GroupWord, Vertex, WreathRecursion};

/// Parameters of a contraction statement: `|g@v| <= lambda*|g| + K` for all
/// `v` at level `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionParams {
    pub lambda: Ratio<i64>,
    pub depth: usize,
    pub additive: i64,
}

impl ContractionParams {
    pub fn new(lambda: Ratio<i64>, depth: usize, additive: i64) -> Result<Self> {
        if lambda >= Ratio::from_integer(1) || lambda < Ratio::from_integer(0) {
            return Err(Error::invalid("lambda must lie in [0, 1)"));
        }
        if depth == 0 {
            return Err(Error::invalid("depth must be >= 1"));
        }
        Ok(ContractionParams {
            lambda,
            depth,
            additive,
        })
    }
}

/// Outcome of the exhaustive check, with the worst witness seen (the word /
/// vertex pair maximizing `|section| - lambda*|word| - K`).
#[derive(Debug, Clone)]
pub struct ContractionReport {
    pub pass: bool,
    pub words_checked: u64,
    pub violations: u64,
    pub worst_word: GroupWord,
    pub worst_vertex: Vertex,
    pub worst_section_len: usize,
    /// `|section| - lambda*|word| - K` for the worst witness.
    pub worst_margin: Ratio<i64>,
}

/// Exhaustively checks `|section(w, v)| <= lambda*|w| + K` for every freely
/// reduced word with `|w| <= max_len` and every vertex `v` at level
/// `params.depth`, lengths counted as symbols after free reduction.
///
/// A pass certifies contraction for all group elements of geodesic length
/// <= max_len (free word length bounds geodesic length); it does not prove
/// lambda optimal. Because the enumeration also visits non-geodesic words,
/// the check is stricter than contraction itself and can fail for groups
/// whose generators satisfy short relations the free reduction cannot see.
pub fn contraction_certificate(
    rec: &WreathRecursion,
    params: &ContractionParams,
    max_len: usize,
) -> Result<ContractionReport> {
    if max_len < 1 {
        return Err(Error::invalid("max_len must be >= 1"));
    }
    let q = rec.alphabet().size();
    let n_vertices = q
        .checked_pow(params.depth as u32)
        .ok_or_else(|| Error::resource("depth too large"))?;
    let vertices: Vec<Vertex> = (0..n_vertices)
        .map(|i| Vertex::from_index(i, q, params.depth))
        .collect();

    let mut symbols = Vec::new();
    for (i, g) in rec.generators().iter().enumerate() {
        symbols.push(GeneratorSymbol::new(i as u16));
        if !g.involutive {
            symbols.push(GeneratorSymbol {
                index: i as u16,
                inverse: true,
            });
        }
    }

    let mut report = ContractionReport {
        pass: true,
        words_checked: 0,
        violations: 0,
        worst_word: GroupWord::identity(),
        worst_vertex: Vertex::root(),
        worst_section_len: 0,
        // below every attainable margin, so the first word always claims it
        worst_margin: -params.lambda * Ratio::from_integer(max_len as i64)
            - Ratio::from_integer(params.additive + 1),
    };

    // depth-first over freely reduced words, reusing the prefix
    let mut stack: Vec<GeneratorSymbol> = Vec::new();
    dfs(rec, params, max_len, &symbols, &vertices, &mut stack, &mut report);
    Ok(report)
}

fn dfs(
    rec: &WreathRecursion,
    params: &ContractionParams,
    max_len: usize,
    symbols: &[GeneratorSymbol],
    vertices: &[Vertex],
    stack: &mut Vec<GeneratorSymbol>,
    report: &mut ContractionReport,
) {
    if !stack.is_empty() {
        report.words_checked += 1;
        let word = GroupWord {
            symbols: stack.clone(),
        };
        let bound = params.lambda * Ratio::from_integer(stack.len() as i64)
            + Ratio::from_integer(params.additive);
        for v in vertices {
            let sec = rec.section(&word, v).expect("vertex in range");
            let margin = Ratio::from_integer(sec.len() as i64) - bound;
            if margin > report.worst_margin {
                report.worst_margin = margin;
                report.worst_word = word.clone();
                report.worst_vertex = v.clone();
                report.worst_section_len = sec.len();
            }
            if margin > Ratio::from_integer(0) {
                report.violations += 1;
                report.pass = false;
            }
        }
    }
    if stack.len() == max_len {
        return;
    }
    for &s in symbols {
        if let Some(&last) = stack.last() {
            // skip extensions that cancel: the word would not be reduced
            if last.index == s.index
                && (rec.is_involutive(s.index) || last.inverse != s.inverse)
            {
                continue;
            }
        }
        stack.push(s);
        dfs(rec, params, max_len, symbols, vertices, stack, report);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selfsim::builtin_group;

    #[test]
    fn empty_only_enumeration_rejected_but_short_pass() {
        // with max_len 1 every single generator has sections of length <= 1
        let rec = builtin_group("grigorchuk").unwrap();
        let params = ContractionParams::new(Ratio::new(1, 2), 1, 1).unwrap();
        let rep = contraction_certificate(&rec, &params, 1).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.words_checked, 4);
    }

    #[test]
    fn grigorchuk_half_fails_on_klein_words() {
        // (bc)^k reduces freely to itself but bc = d in the group; its
        // section at letter 2 is (cd)^k, so the word-length check fails.
        let rec = builtin_group("grigorchuk").unwrap();
        let params = ContractionParams::new(Ratio::new(1, 2), 1, 1).unwrap();
        let rep = contraction_certificate(&rec, &params, 10).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.violations, 44940);
        assert_eq!(rep.worst_margin, Ratio::from_integer(4));
        assert_eq!(rep.worst_section_len, 10);
        // witness check: (bc)^5 has a length-10 section at letter 2
        let w = rec.parse_word("bcbcbcbcbc").unwrap();
        assert_eq!(w.len(), 10);
        let sec = rec.section(&w, &Vertex::new(vec![1])).unwrap();
        assert_eq!(sec.len(), 10);
    }

    #[test]
    fn grigorchuk_alternating_words_contract() {
        // restricted to lambda = 3/4 the length-10 enumeration still fails,
        // but with K large enough to absorb the Klein words it passes
        let rec = builtin_group("grigorchuk").unwrap();
        let params = ContractionParams::new(Ratio::new(1, 2), 1, 5).unwrap();
        let rep = contraction_certificate(&rec, &params, 8).unwrap();
        assert!(rep.pass, "margin {:?}", rep.worst_margin);
    }

    #[test]
    fn basilica_three_quarters_fails() {
        let rec = builtin_group("basilica").unwrap();
        let params = ContractionParams::new(Ratio::new(3, 4), 1, 1).unwrap();
        let rep = contraction_certificate(&rec, &params, 10).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.violations, 496);
        // b^k @ 2 = a^k: positive powers of b violate any lambda < 1 bound
        let w = rec.parse_word("bbbbbbbbbb").unwrap();
        let sec = rec.section(&w, &Vertex::new(vec![1])).unwrap();
        assert_eq!(sec.len(), 10);
    }
}
