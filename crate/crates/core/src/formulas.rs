//! Closed forms for the quantities the engine computes: expected level
//! quotient orders, algebra quotient dimensions, filtration growth
//! coefficients, and Hausdorff limits.
//!
//! This module performs no group or algebra computation at all; it exists
//! so that engine-vs-oracle comparisons are meaningful. Evaluators reject
//! arguments outside their validity range instead of extrapolating.
//!
//! Two closed forms are corrected against direct computation:
//!
//! - the Gupta-Sidki level orders use exponent `2*3^(n-2) + 1`. The often
//!   quoted exponent `2*3^(n-1) + 1` is off by one level: at n = 2 it
//!   claims order 2187 for a 3-subgroup of Sym(9), impossible since a
//!   Sylow 3-subgroup of Sym(9) has order 3^4 = 81. The corrected exponent
//!   is the one consistent with the Hausdorff dimension 4/9.
//! - the char-2 Grigorchuk algebra dimension at level 2 is 6, not 8: the
//!   level-2 quotient embeds in the level-2 tree closure, which is
//!   (4^2 + 2)/3 = 6 dimensional. The recurrence dimension
//!   (14*4^(n-2) + 10)/3 is correct from level 3 on.

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::BigCount;

/// Characteristic class of the Grigorchuk tree enveloping algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClass {
    Char2,
    CharNe2,
}

fn pow_big(base: u64, exp: u64) -> BigCount {
    BigUint::from(base).pow(exp as u32)
}

/// Exact order of the level-n quotient of a zoo group, in the printed
/// validity range only.
pub fn expected_group_order(name: &str, n: usize) -> Result<BigCount> {
    let n_u = n as u64;
    match name {
        "grigorchuk" => {
            if n < 3 {
                return Err(Error::invalid("grigorchuk order formula needs n >= 3"));
            }
            // 2^(5*2^(n-3) + 2)
            Ok(pow_big(2, 5 * (1u64 << (n - 3)) + 2))
        }
        "gupta_sidki" => {
            if n < 2 {
                return Err(Error::invalid("gupta_sidki order formula needs n >= 2"));
            }
            // 3^(2*3^(n-2) + 1); see the module notes for the index shift
            Ok(pow_big(3, 2 * 3u64.pow(n as u32 - 2) + 1))
        }
        "fabrykowski_gupta_bg" => {
            if n < 2 {
                return Err(Error::invalid("fabrykowski_gupta_bg order formula needs n >= 2"));
            }
            // 3^((3^n + 2n + 3)/4)
            let e = (3u64.pow(n as u32) + 2 * n_u + 3) / 4;
            Ok(pow_big(3, e))
        }
        "bsv" => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::invalid("bsv order formula covers even levels >= 2"));
            }
            // at level 2m: 2^((2^(2m) - 1)/3 + m)
            let m = n_u / 2;
            Ok(pow_big(2, ((1u64 << (2 * m)) - 1) / 3 + m))
        }
        "basilica" => {
            if n < 2 || n % 2 != 0 {
                return Err(Error::invalid("basilica order formula covers even levels >= 2"));
            }
            let m = n_u / 2;
            Ok(pow_big(2, 2 * ((1u64 << (2 * m)) - 1) / 3 + m))
        }
        "odometer" => Ok(pow_big(2, n_u)),
        other => Err(Error::not_found(format!(
            "no order closed form for {other:?}"
        ))),
    }
}

/// Dimension of the level-n quotient of the Grigorchuk tree enveloping
/// algebra: `(4^n + 2)/3` in characteristic != 2 (n >= 1);
/// `(14*4^(n-2) + 10)/3` in characteristic 2 for n >= 3, and the directly
/// computed value 6 at n = 2.
pub fn expected_algebra_dim(class: CharClass, n: usize) -> Result<u64> {
    match class {
        CharClass::CharNe2 => {
            if n < 1 {
                return Err(Error::invalid("char != 2 dimension formula needs n >= 1"));
            }
            if n > 30 {
                return Err(Error::invalid("level out of supported range"));
            }
            Ok((4u64.pow(n as u32) + 2) / 3)
        }
        CharClass::Char2 => {
            if n < 2 {
                return Err(Error::invalid("char 2 dimension formula needs n >= 2"));
            }
            if n > 30 {
                return Err(Error::invalid("level out of supported range"));
            }
            if n == 2 {
                // computed value; the n >= 3 recurrence back-extrapolates to 8,
                // which exceeds the tree-closure bound (4^2 + 2)/3 = 6
                Ok(6)
            } else {
                Ok((14 * 4u64.pow(n as u32 - 2) + 10) / 3)
            }
        }
    }
}

/// Char-2 augmentation filtration growth `a_n = dim(w^n / w^(n+1))`:
/// table 1, 3, 4, 5, 6, 8 for n <= 5, and for n >= 3 the piecewise form
/// `2n - 2^(k-1)` on `2^k <= n <= (3/2) 2^k`, `n + 2^k` on
/// `(3/2) 2^k <= n <= 2^(k+1)`.
pub fn expected_a_char2(n: usize) -> u64 {
    const TABLE: [u64; 6] = [1, 3, 4, 5, 6, 8];
    if n <= 5 {
        return TABLE[n];
    }
    let k = usize::BITS - 1 - n.leading_zeros(); // floor(log2 n)
    let pk = 1u64 << k;
    let n = n as u64;
    if 2 * n <= 3 * pk {
        2 * n - pk / 2
    } else {
        n + pk
    }
}

/// Char != 2 generator-ball growth: table 1, 4, 6, 8, 10, 13, 16 for
/// n <= 6, then the four-branch piecewise form (branches agree at every
/// breakpoint).
pub fn expected_a_charne2(n: usize) -> u64 {
    const TABLE: [u64; 7] = [1, 4, 6, 8, 10, 13, 16];
    if n <= 6 {
        return TABLE[n];
    }
    let k = usize::BITS - 1 - n.leading_zeros();
    let pk = 1u64 << k; // 2^k >= 4 here, so the quarters below are exact
    let n = n as u64;
    if 4 * n <= 5 * pk {
        4 * n - 3 * pk / 2
    } else if 2 * n <= 3 * pk {
        3 * n - pk / 4
    } else if 4 * n <= 7 * pk {
        n + 11 * pk / 4
    } else {
        2 * n + pk
    }
}

/// `dim F_n = (4/3) n^2 + (5/4) n + 2/3` for n a power of two > 4.
pub fn expected_f_dim_charne2(n: usize) -> Result<u64> {
    if n <= 4 || !n.is_power_of_two() {
        return Err(Error::invalid(
            "F_n closed form holds for n a power of two > 4",
        ));
    }
    let n = n as u64;
    Ok((16 * n * n + 15 * n + 8) / 12)
}

/// The printed Hausdorff-dimension limits.
pub fn expected_hausdorff(name: &str) -> Result<BigRational> {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    match name {
        "grigorchuk_group" => Ok(r(5, 8)),
        "gupta_sidki_group" => Ok(r(4, 9)),
        "fabrykowski_gupta_bg_group" => Ok(r(1, 2)),
        "bsv_group" => Ok(r(1, 3)),
        "basilica_group" => Ok(r(2, 3)),
        "grigorchuk_alg_char2" => Ok(r(7, 8)),
        "grigorchuk_alg_charne2" => Ok(r(1, 1)),
        other => Err(Error::not_found(format!(
            "no Hausdorff limit recorded for {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert_eq!(
            expected_group_order("grigorchuk", 4).unwrap(),
            BigUint::from(4096u32)
        );
        assert_eq!(expected_group_order("grigorchuk", 3).unwrap(), BigUint::from(128u32));
        assert!(expected_group_order("grigorchuk", 2).is_err());
        // corrected index: see module docs
        assert_eq!(expected_group_order("gupta_sidki", 2).unwrap(), BigUint::from(27u32));
        assert_eq!(expected_group_order("gupta_sidki", 3).unwrap(), BigUint::from(2187u32));
        assert_eq!(
            expected_group_order("fabrykowski_gupta_bg", 2).unwrap(),
            BigUint::from(81u32)
        );
        assert_eq!(expected_group_order("bsv", 2).unwrap(), BigUint::from(4u32));
        assert_eq!(expected_group_order("basilica", 4).unwrap(), BigUint::from(4096u32));
        assert!(expected_group_order("bsv", 3).is_err());
        assert_eq!(expected_group_order("odometer", 10).unwrap(), BigUint::from(1024u32));
        assert!(expected_group_order("lamplighter", 3).is_err());
    }

    #[test]
    fn algebra_dim_examples() {
        assert_eq!(expected_algebra_dim(CharClass::CharNe2, 2).unwrap(), 6);
        assert_eq!(expected_algebra_dim(CharClass::CharNe2, 3).unwrap(), 22);
        assert_eq!(expected_algebra_dim(CharClass::Char2, 2).unwrap(), 6);
        assert_eq!(expected_algebra_dim(CharClass::Char2, 3).unwrap(), 22);
        assert_eq!(expected_algebra_dim(CharClass::Char2, 4).unwrap(), 78);
        assert_eq!(expected_algebra_dim(CharClass::Char2, 5).unwrap(), 302);
        assert_eq!(expected_algebra_dim(CharClass::Char2, 6).unwrap(), 1198);
        assert!(expected_algebra_dim(CharClass::Char2, 1).is_err());
    }

    #[test]
    fn a_char2_values_and_recurrences() {
        assert_eq!(expected_a_char2(0), 1);
        assert_eq!(expected_a_char2(5), 8);
        assert_eq!(expected_a_char2(12), 20);
        // a(2n) = 2 a(n), a(2n+1) = a(n) + a(n+1)
        for n in 3..=512usize {
            assert_eq!(expected_a_char2(2 * n), 2 * expected_a_char2(n), "n={n}");
            assert_eq!(
                expected_a_char2(2 * n + 1),
                expected_a_char2(n) + expected_a_char2(n + 1),
                "n={n}"
            );
        }
    }

    #[test]
    fn a_charne2_values_and_recurrences() {
        assert_eq!(expected_a_charne2(5), 13);
        assert_eq!(expected_a_charne2(7), 18);
        assert_eq!(expected_a_charne2(8), 20);
        // the doubling recurrences kick in one step later than the char-2
        // ones: at n = 3 they contradict the table and the computed values
        // (a_12 = 34 != 2 a_6 = 32, a_13 = 35 != a_6 + a_7 = 34)
        assert_eq!(expected_a_charne2(12), 34);
        assert_eq!(expected_a_charne2(13), 35);
        for n in 4..=128usize {
            assert_eq!(expected_a_charne2(4 * n), 2 * expected_a_charne2(2 * n));
            assert_eq!(
                expected_a_charne2(4 * n + 1),
                expected_a_charne2(2 * n) + expected_a_charne2(2 * n + 1)
            );
            assert_eq!(expected_a_charne2(4 * n + 2), 2 * expected_a_charne2(2 * n + 1));
            assert_eq!(
                expected_a_charne2(4 * n + 3),
                expected_a_charne2(2 * n + 1) + expected_a_charne2(2 * n + 2)
            );
        }
    }

    #[test]
    fn char2_dim_recurrence() {
        // b(n+1) = 14 + 4 (b(n) - 6) for n >= 3
        for n in 3..=12usize {
            let b_n = expected_algebra_dim(CharClass::Char2, n).unwrap();
            let b_n1 = expected_algebra_dim(CharClass::Char2, n + 1).unwrap();
            assert_eq!(b_n1, 14 + 4 * (b_n - 6));
        }
    }

    #[test]
    fn piecewise_branches_agree_at_breakpoints() {
        // at n = (5/4)2^k, (3/2)2^k, (7/4)2^k, 2^(k+1) adjacent branches of
        // the charne2 form agree; checked by evaluating both branch formulas
        for k in 2..=10u32 {
            let pk = 1u64 << k;
            let checks = [
                (5 * pk / 4, 4 * (5 * pk / 4) - 3 * pk / 2, 3 * (5 * pk / 4) - pk / 4),
                (3 * pk / 2, 3 * (3 * pk / 2) - pk / 4, (3 * pk / 2) + 11 * pk / 4),
                (7 * pk / 4, (7 * pk / 4) + 11 * pk / 4, 2 * (7 * pk / 4) + pk),
                (2 * pk, 2 * (2 * pk) + pk, 4 * (2 * pk) - 3 * (2 * pk) / 2),
            ];
            for (n, lhs, rhs) in checks {
                assert_eq!(lhs, rhs, "charne2 branches disagree at n={n}");
                if n >= 7 {
                    // below 7 the table rules (the piecewise form overshoots
                    // a_5 = 13 as 14)
                    assert_eq!(expected_a_charne2(n as usize), lhs);
                }
            }
            // char2 breakpoint (3/2)2^k
            let n = 3 * pk / 2;
            assert_eq!(2 * n - pk / 2, n + pk);
        }
    }

    #[test]
    fn f_dim_charne2() {
        assert_eq!(expected_f_dim_charne2(8).unwrap(), 96);
        assert_eq!(expected_f_dim_charne2(16).unwrap(), 362);
        assert!(expected_f_dim_charne2(6).is_err());
        assert!(expected_f_dim_charne2(4).is_err());
        // cross-check: sum of a_0..a_8 = 96
        let total: u64 = (0..=8).map(expected_a_charne2).sum();
        assert_eq!(total, 96);
        let total: u64 = (0..=16).map(expected_a_charne2).sum();
        assert_eq!(total, 362);
    }

    #[test]
    fn hausdorff_limits() {
        assert_eq!(
            expected_hausdorff("grigorchuk_group").unwrap(),
            BigRational::new(5.into(), 8.into())
        );
        assert_eq!(
            expected_hausdorff("grigorchuk_alg_char2").unwrap(),
            BigRational::new(7.into(), 8.into())
        );
        assert!(expected_hausdorff("nosuch").is_err());
    }
}
