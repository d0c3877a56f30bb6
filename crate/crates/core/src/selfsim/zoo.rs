use crate::error::{Error, Result};
use crate::selfsim::{Alphabet, Generator, GroupWord, WreathRecursion};

/// Names accepted by [`builtin_group`].
pub fn zoo_names() -> &'static [&'static str] {
    &[
        "grigorchuk",
        "gupta_sidki",
        "fabrykowski_gupta_bg",
        "bsv",
        "basilica",
        "odometer",
        "lamplighter",
    ]
}

fn w(syms: &[(u16, bool)]) -> GroupWord {
    GroupWord {
        symbols: syms
            .iter()
            .map(|&(index, inverse)| crate::selfsim::GeneratorSymbol { index, inverse })
            .collect(),
    }
}

fn e() -> GroupWord {
    GroupWord::identity()
}

/// The built-in group zoo, with each recursion exactly as usually printed.
///
/// Permutations are given as mapping arrays on 0-based letters; `(1,2)` is
/// `[1,0]` and `(1,2,3)` is `[1,2,0]`.
pub fn builtin_group(name: &str) -> Result<WreathRecursion> {
    let rec = match name {
        "grigorchuk" => {
            // a = <1,1>(1,2), b = <a,c>, c = <a,d>, d = <1,b>; all involutive
            let (a, _b, c, d) = (0u16, 1u16, 2u16, 3u16);
            WreathRecursion::new(
                name,
                Alphabet::new(2)?,
                vec![
                    gen("a", true, vec![1, 0], vec![e(), e()]),
                    gen("b", true, vec![0, 1], vec![w(&[(a, false)]), w(&[(c, false)])]),
                    gen("c", true, vec![0, 1], vec![w(&[(a, false)]), w(&[(d, false)])]),
                    gen("d", true, vec![0, 1], vec![e(), w(&[(1, false)])]),
                ],
            )?
        }
        "gupta_sidki" => {
            // x = <1,1,1>(1,2,3), gamma = <gamma, x, x^-1>; both of order 3
            let (x, gamma) = (0u16, 1u16);
            WreathRecursion::new(
                name,
                Alphabet::new(3)?,
                vec![
                    gen("x", false, vec![1, 2, 0], vec![e(), e(), e()]),
                    gen(
                        "gamma",
                        false,
                        vec![0, 1, 2],
                        vec![w(&[(gamma, false)]), w(&[(x, false)]), w(&[(x, true)])],
                    ),
                ],
            )?
        }
        "fabrykowski_gupta_bg" => {
            // x = <1,1,1>(1,2,3), delta = <delta, x, x>
            let (x, delta) = (0u16, 1u16);
            WreathRecursion::new(
                name,
                Alphabet::new(3)?,
                vec![
                    gen("x", false, vec![1, 2, 0], vec![e(), e(), e()]),
                    gen(
                        "delta",
                        false,
                        vec![0, 1, 2],
                        vec![w(&[(delta, false)]), w(&[(x, false)]), w(&[(x, false)])],
                    ),
                ],
            )?
        }
        "bsv" => {
            // tau = <1, tau>(1,2), mu = <1, mu^-1>(1,2); torsion-free
            let (tau, mu) = (0u16, 1u16);
            WreathRecursion::new(
                name,
                Alphabet::new(2)?,
                vec![
                    gen("tau", false, vec![1, 0], vec![e(), w(&[(tau, false)])]),
                    gen("mu", false, vec![1, 0], vec![e(), w(&[(mu, true)])]),
                ],
            )?
        }
        "basilica" => {
            // a = <1, b>(1,2), b = <1, a>
            let (a, b) = (0u16, 1u16);
            WreathRecursion::new(
                name,
                Alphabet::new(2)?,
                vec![
                    gen("a", false, vec![1, 0], vec![e(), w(&[(b, false)])]),
                    gen("b", false, vec![0, 1], vec![e(), w(&[(a, false)])]),
                ],
            )?
        }
        "odometer" => {
            // tau = <1, tau>(1,2); acts on each layer as a 2^n-cycle
            WreathRecursion::new(
                name,
                Alphabet::new(2)?,
                vec![gen("tau", false, vec![1, 0], vec![e(), w(&[(0, false)])])],
            )?
        }
        "lamplighter" => {
            // a = <a, b>(1,2), b = <a, b>
            let (a, b) = (0u16, 1u16);
            WreathRecursion::new(
                name,
                Alphabet::new(2)?,
                vec![
                    gen("a", false, vec![1, 0], vec![w(&[(a, false)]), w(&[(b, false)])]),
                    gen("b", false, vec![0, 1], vec![w(&[(a, false)]), w(&[(b, false)])]),
                ],
            )?
        }
        _ => {
            return Err(Error::not_found(format!(
                "unknown group {name:?}; known: {}",
                zoo_names().join(", ")
            )))
        }
    };
    Ok(rec)
}

fn gen(name: &str, involutive: bool, perm: Vec<u8>, sections: Vec<GroupWord>) -> Generator {
    Generator {
        name: name.to_string(),
        involutive,
        perm,
        sections,
    }
}
