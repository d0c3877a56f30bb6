use std::collections::HashSet;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};

use crate::algrep::element::{letter_basis, AlgebraElement, LetterWord};
use crate::algrep::matrix::{check_echelon_budget, LevelMatrix, SpanBasis};
use crate::error::{Error, Result};
use crate::exact::FieldSpec;
use crate::selfsim::{GeneratorSymbol, GroupWord, WreathRecursion};

/// Level caps for span-closure work. Defaults match the memory envelope of
/// a laptop core: 7 over GF(2), 5 over GF(p)/Q. Raise explicitly for the
/// deeper stabilization runs.
#[derive(Debug, Clone, Copy)]
pub struct AlgCaps {
    pub max_level_gf2: usize,
    pub max_level_other: usize,
}

impl Default for AlgCaps {
    fn default() -> Self {
        AlgCaps {
            max_level_gf2: 7,
            max_level_other: 5,
        }
    }
}

impl AlgCaps {
    pub fn cap(&self, field: FieldSpec) -> usize {
        match field {
            FieldSpec::Gf(2) => self.max_level_gf2,
            _ => self.max_level_other,
        }
    }

    pub fn with_levels(gf2: usize, other: usize) -> Self {
        AlgCaps {
            max_level_gf2: gf2,
            max_level_other: other,
        }
    }

    fn check(&self, field: FieldSpec, n: usize) -> Result<()> {
        if n > self.cap(field) {
            return Err(Error::resource(format!(
                "level {n} exceeds the {field} cap {}",
                self.cap(field)
            )));
        }
        Ok(())
    }
}

pub(crate) fn side_of(rec: &WreathRecursion, n: usize) -> Result<usize> {
    rec.alphabet()
        .size()
        .checked_pow(n as u32)
        .ok_or_else(|| Error::resource(format!("side q^{n} overflows")))
}

/// Level permutations of the generators (and their inverses on demand).
pub(crate) fn generator_level_perms(rec: &WreathRecursion, n: usize) -> Result<Vec<Vec<u32>>> {
    (0..rec.generators().len())
        .map(|i| {
            let w = GroupWord {
                symbols: vec![GeneratorSymbol::new(i as u16)],
            };
            Ok(crate::permgrp::level_permutation(rec, &w, n)?.into_mapping())
        })
        .collect()
}

/// Evaluates an element to its level-n matrix: the sum of `c_w` times the
/// permutation matrix of `pi^n(w)`, entry `(v, v^w) = 1`.
pub fn evaluate(rec: &WreathRecursion, x: &AlgebraElement, n: usize) -> Result<LevelMatrix> {
    let side = side_of(rec, n)?;
    let mut out = LevelMatrix::zero(n, side, x.field())?;
    for (w, c) in x.terms() {
        let perm = crate::permgrp::level_permutation(rec, w, n)?;
        for (v, &img) in perm.mapping().iter().enumerate() {
            out.add_at(v, img as usize, c);
        }
    }
    Ok(out)
}

/// Evaluates a letter monomial as a product of `(pi^n(g) - 1)` matrices,
/// never expanding it into group words.
pub fn evaluate_letter_word(
    rec: &WreathRecursion,
    field: FieldSpec,
    w: &LetterWord,
    n: usize,
) -> Result<LevelMatrix> {
    let side = side_of(rec, n)?;
    let mut acc = LevelMatrix::identity(n, side, field)?;
    let letters = letter_matrices(rec, field, n)?;
    for l in &w.0 {
        acc = acc.mul(&letters[*l as usize]);
    }
    Ok(acc)
}

pub(crate) fn letter_matrices(
    rec: &WreathRecursion,
    field: FieldSpec,
    n: usize,
) -> Result<[LevelMatrix; 4]> {
    let els = letter_basis(rec, field)?;
    let mut out = Vec::with_capacity(4);
    for e in &els {
        out.push(evaluate(rec, e, n)?);
    }
    Ok(out.try_into().unwrap())
}

// ---------------- span closures ----------------

/// Span of `pi^n(G)`: closure of the identity row under right
/// multiplication by the generator permutations.
pub fn algebra_span(
    rec: &WreathRecursion,
    field: FieldSpec,
    n: usize,
    caps: &AlgCaps,
) -> Result<SpanBasis> {
    caps.check(field, n)?;
    let side = side_of(rec, n)?;
    check_echelon_budget(n, side, field, side * side)?;
    let perms = generator_level_perms(rec, n)?;
    let mut basis = SpanBasis::new(n, side, field);
    let id = LevelMatrix::identity(n, side, field)?;
    let mut work = Vec::new();
    if let Some(row) = basis.insert(&id) {
        work.push(row);
    }
    while let Some(m) = work.pop() {
        for p in &perms {
            let cand = m.mul_perm(p);
            if let Some(row) = basis.insert(&cand) {
                work.push(row);
            }
        }
    }
    Ok(basis)
}

/// dim `pi^n(A)`.
pub fn algebra_dimension(
    rec: &WreathRecursion,
    field: FieldSpec,
    n: usize,
    caps: &AlgCaps,
) -> Result<usize> {
    if n == 0 {
        return Ok(1);
    }
    Ok(algebra_span(rec, field, n, caps)?.dim())
}

/// Two-sided ideal generated by `gens` inside `pi^n(A)`: the span of the
/// evaluated generators closed under left and right multiplication by the
/// group generator permutations. Empty `gens` is the zero ideal.
pub fn ideal_closure(
    rec: &WreathRecursion,
    field: FieldSpec,
    gens: &[AlgebraElement],
    n: usize,
    caps: &AlgCaps,
) -> Result<SpanBasis> {
    caps.check(field, n)?;
    let side = side_of(rec, n)?;
    check_echelon_budget(n, side, field, side * side)?;
    let seeds = gens
        .iter()
        .map(|g| evaluate(rec, g, n))
        .collect::<Result<Vec<_>>>()?;
    two_sided_closure(rec, field, n, seeds)
}

pub(crate) fn two_sided_closure(
    rec: &WreathRecursion,
    field: FieldSpec,
    n: usize,
    seeds: Vec<LevelMatrix>,
) -> Result<SpanBasis> {
    let side = side_of(rec, n)?;
    let perms = generator_level_perms(rec, n)?;
    let mut basis = SpanBasis::new(n, side, field);
    let mut work = Vec::new();
    for s in &seeds {
        if let Some(row) = basis.insert(s) {
            work.push(row);
        }
    }
    while let Some(m) = work.pop() {
        for p in &perms {
            for cand in [m.mul_perm(p), m.mul_perm_left(p)] {
                if let Some(row) = basis.insert(&cand) {
                    work.push(row);
                }
            }
        }
    }
    Ok(basis)
}

fn right_closure(
    rec: &WreathRecursion,
    field: FieldSpec,
    n: usize,
    seeds: impl IntoIterator<Item = LevelMatrix>,
) -> Result<SpanBasis> {
    let side = side_of(rec, n)?;
    let perms = generator_level_perms(rec, n)?;
    let mut basis = SpanBasis::new(n, side, field);
    let mut work = Vec::new();
    for s in seeds {
        if let Some(row) = basis.insert(&s) {
            work.push(row);
        }
    }
    while let Some(m) = work.pop() {
        for p in &perms {
            let cand = m.mul_perm(p);
            if let Some(row) = basis.insert(&cand) {
                work.push(row);
            }
        }
    }
    Ok(basis)
}

/// `K^power` at level n: since each `K^d` is an ideal,
/// `K^(d+1) = span{ k * g * v }` over basis rows `k` of `K^d`, ideal
/// generators `g` and words `v`, i.e. a right closure of `k * g` products.
pub(crate) fn ideal_power(
    rec: &WreathRecursion,
    field: FieldSpec,
    gens: &[AlgebraElement],
    power: u32,
    n: usize,
    caps: &AlgCaps,
) -> Result<SpanBasis> {
    if power == 0 {
        return Err(Error::invalid("ideal power must be >= 1"));
    }
    let mut cur = ideal_closure(rec, field, gens, n, caps)?;
    let gen_mats = gens
        .iter()
        .map(|g| evaluate(rec, g, n))
        .collect::<Result<Vec<_>>>()?;
    for _ in 1..power {
        let seeds: Vec<LevelMatrix> = cur
            .row_matrices()
            .flat_map(|k| gen_mats.iter().map(move |g| k.mul(g)))
            .collect();
        cur = right_closure(rec, field, n, seeds)?;
    }
    Ok(cur)
}

/// `M_{X^k}(K)` at level n: the span of all block embeds of the level-
/// `(n-k)` basis of K.
pub(crate) fn mat_ideal_span(
    rec: &WreathRecursion,
    field: FieldSpec,
    gens: &[AlgebraElement],
    k: u32,
    n: usize,
    caps: &AlgCaps,
) -> Result<SpanBasis> {
    let k = k as usize;
    if n <= k {
        return Err(Error::invalid(format!(
            "M_(X^{k})(K) at level {n} needs level > {k}"
        )));
    }
    let q = rec.alphabet().size();
    let inner = ideal_closure(rec, field, gens, n - k, caps)?;
    let side = side_of(rec, n)?;
    let blocks = q.pow(k as u32);
    let mut basis = SpanBasis::new(n, side, field);
    for m in inner.row_matrices() {
        for u in 0..blocks {
            for v in 0..blocks {
                basis.insert(&m.embed_block(q, k, u, v)?);
            }
        }
    }
    Ok(basis)
}

/// Augmentation powers over GF(2): `w^1` is the right closure of the four
/// letter matrices, and `w^(d+1) = span(w^d * letters)` needs no further
/// closure. Characteristic != 2 is refused: there `w^2 = w` (the
/// augmentation ideal is generated by idempotents (1-g)/2), so the power
/// filtration is degenerate and the generator-ball filtration is the
/// meaningful one.
pub(crate) fn aug_power_span(
    rec: &WreathRecursion,
    field: FieldSpec,
    d: u32,
    n: usize,
    caps: &AlgCaps,
) -> Result<SpanBasis> {
    if field != FieldSpec::Gf(2) {
        return Err(Error::invalid(
            "augmentation powers are computed over GF(2) only; in characteristic != 2 \
             the augmentation ideal is idempotent and the filtration is degenerate",
        ));
    }
    if d == 0 {
        return Err(Error::invalid("augmentation power must be >= 1"));
    }
    caps.check(field, n)?;
    let letters = letter_matrices(rec, field, n)?;
    let mut cur = right_closure(rec, field, n, letters.iter().cloned())?;
    for _ in 1..d {
        let side = side_of(rec, n)?;
        let mut next = SpanBasis::new(n, side, field);
        for m in cur.row_matrices() {
            for l in &letters {
                next.insert(&m.mul(l));
            }
        }
        cur = next;
    }
    Ok(cur)
}

// ---------------- reported operations ----------------

/// One level of the algebra Hausdorff sequence.
#[derive(Debug, Clone)]
pub struct HausdorffPoint {
    pub level: usize,
    pub dim: usize,
    /// `(dim / q^(2n)) * (q^2 - 1)/(dim P - 1)` - the asymptotic
    /// normalization.
    pub relative_asymptotic: BigRational,
    /// `dim / dim P_n` - relative to the level-n tree closure.
    pub relative_to_closure: BigRational,
}

/// Per level n = 1..n_max: dim `pi^n(A)` with both normalizations.
/// `dim P` is inferred as the dimension of the level-1 algebra.
pub fn algebra_hausdorff_sequence(
    rec: &WreathRecursion,
    field: FieldSpec,
    n_max: usize,
    caps: &AlgCaps,
) -> Result<Vec<HausdorffPoint>> {
    let q = rec.alphabet().size() as i64;
    let dim_p = algebra_dimension(rec, field, 1, caps)? as i64;
    if dim_p <= 1 {
        return Err(Error::invalid(
            "level-1 algebra is trivial; relative dimension undefined",
        ));
    }
    let mut out = Vec::new();
    // dim P_(n+1) = q^2 (dim P_n - 1) + dim P, dim P_1 = dim P
    let mut closure_dim = num_bigint::BigInt::from(dim_p);
    for n in 1..=n_max {
        let dim = algebra_dimension(rec, field, n, caps)?;
        let qq = num_bigint::BigInt::from(q * q);
        let denom_asym = num_traits::pow::pow(num_bigint::BigInt::from(q), 2 * n);
        let rel_asym = BigRational::new(
            num_bigint::BigInt::from(dim as i64) * (qq.clone() - 1),
            denom_asym * num_bigint::BigInt::from(dim_p - 1),
        );
        let rel_closure = BigRational::new(num_bigint::BigInt::from(dim as i64), closure_dim.clone());
        out.push(HausdorffPoint {
            level: n,
            dim,
            relative_asymptotic: rel_asym,
            relative_to_closure: rel_closure,
        });
        closure_dim = qq * (closure_dim - 1) + dim_p;
    }
    Ok(out)
}

/// Which generating family filters the algebra.
#[derive(Debug, Clone)]
pub enum FiltrationGens {
    /// The char-2 letters A, B, C, D: the augmentation-ideal grading.
    AugmentationLetters,
    /// The group generators themselves: the S-ball filtration.
    GeneratorBall,
    Custom(Vec<AlgebraElement>),
}

#[derive(Debug, Clone)]
pub struct FiltrationReport {
    /// `a_d = dim V_d - dim V_(d-1)` for d = 0..=d_max.
    pub dims: Vec<u64>,
    /// Level at which two consecutive levels agreed (the larger of the
    /// two); None if the cap was hit first.
    pub certified_level: Option<usize>,
    pub stable: bool,
}

/// Filtration growth with the level-stabilization contract: the sequence is
/// computed at increasing levels until two consecutive levels agree on all
/// of `a_0..a_dmax`.
pub fn filtration_dims(
    rec: &WreathRecursion,
    field: FieldSpec,
    gens: &FiltrationGens,
    d_max: usize,
    caps: &AlgCaps,
) -> Result<FiltrationReport> {
    if let FiltrationGens::AugmentationLetters = gens {
        if field != FieldSpec::Gf(2) {
            return Err(Error::invalid(
                "the augmentation-letter filtration is char-2 only: in characteristic != 2 \
                 the augmentation ideal is idempotent and its powers do not filter",
            ));
        }
    }
    if let FiltrationGens::Custom(v) = gens {
        if v.is_empty() {
            return Err(Error::invalid("filtration needs at least one generator"));
        }
    }
    let cap = caps.cap(field);
    let mut prev: Option<Vec<u64>> = None;
    for m in 1..=cap {
        let a = filtration_at_level(rec, field, gens, d_max, m)?;
        if let Some(p) = &prev {
            if *p == a {
                return Ok(FiltrationReport {
                    dims: a,
                    certified_level: Some(m),
                    stable: true,
                });
            }
        }
        prev = Some(a);
    }
    Ok(FiltrationReport {
        dims: prev.unwrap_or_default(),
        certified_level: None,
        stable: false,
    })
}

fn filtration_at_level(
    rec: &WreathRecursion,
    field: FieldSpec,
    gens: &FiltrationGens,
    d_max: usize,
    m: usize,
) -> Result<Vec<u64>> {
    let side = side_of(rec, m)?;
    enum Mult {
        Perms(Vec<Vec<u32>>),
        Mats(Vec<LevelMatrix>),
    }
    let mult = match gens {
        FiltrationGens::AugmentationLetters => {
            Mult::Mats(letter_matrices(rec, field, m)?.to_vec())
        }
        FiltrationGens::GeneratorBall => Mult::Perms(generator_level_perms(rec, m)?),
        FiltrationGens::Custom(els) => Mult::Mats(
            els.iter()
                .map(|e| evaluate(rec, e, m))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let mut basis = SpanBasis::new(m, side, field);
    let id = LevelMatrix::identity(m, side, field)?;
    let mut frontier = Vec::new();
    if let Some(row) = basis.insert(&id) {
        frontier.push(row);
    }
    let mut dims = vec![basis.dim() as u64];
    let mut a = vec![1u64];
    for _ in 1..=d_max {
        let mut next = Vec::new();
        for mat in &frontier {
            let cands: Vec<LevelMatrix> = match &mult {
                Mult::Perms(ps) => ps.iter().map(|p| mat.mul_perm(p)).collect(),
                Mult::Mats(ms) => ms.iter().map(|g| mat.mul(g)).collect(),
            };
            for c in cands {
                if let Some(row) = basis.insert(&c) {
                    next.push(row);
                }
            }
        }
        frontier = next;
        a.push(basis.dim() as u64 - dims.last().unwrap());
        dims.push(basis.dim() as u64);
    }
    Ok(a)
}

#[derive(Debug, Clone)]
pub struct IdealQuotientReport {
    pub codim: u64,
    pub k_mod_k2: u64,
    pub k_mod_mk: u64,
    /// True when the block span M_X(K) was contained in K at the certified
    /// level (it must be, for the quotient to make sense).
    pub inclusion_ok: bool,
    pub certified_level: Option<usize>,
    pub stable: bool,
}

/// codim K, dim K/K^2 and dim K/M_X(K), with the same stabilization
/// contract as [`filtration_dims`].
pub fn ideal_quotient_dims(
    rec: &WreathRecursion,
    field: FieldSpec,
    gens: &[AlgebraElement],
    caps: &AlgCaps,
) -> Result<IdealQuotientReport> {
    if gens.is_empty() {
        // zero ideal: codim = dim A at the cap, both quotients trivial
        let n = caps.cap(field);
        let dim = algebra_dimension(rec, field, n, caps)? as u64;
        return Ok(IdealQuotientReport {
            codim: dim,
            k_mod_k2: 0,
            k_mod_mk: 0,
            inclusion_ok: true,
            certified_level: Some(n),
            stable: true,
        });
    }
    let cap = caps.cap(field);
    let mut prev: Option<(u64, u64, u64, bool)> = None;
    let mut prev_k: Option<SpanBasis> = None;
    for m in 2..=cap {
        let a_dim = algebra_dimension(rec, field, m, caps)? as u64;
        let k = ideal_closure(rec, field, gens, m, caps)?;
        let gen_mats = gens
            .iter()
            .map(|g| evaluate(rec, g, m))
            .collect::<Result<Vec<_>>>()?;
        let k2_seeds: Vec<LevelMatrix> = k
            .row_matrices()
            .flat_map(|r| gen_mats.iter().map(move |g| r.mul(g)))
            .collect();
        let k2 = right_closure(rec, field, m, k2_seeds)?;
        let (mk_dim, inclusion_ok) = match &prev_k {
            None => (None, true),
            Some(inner) => {
                let q = rec.alphabet().size();
                let mut dim = 0u64;
                let mut ok = true;
                let mut span = SpanBasis::new(m, side_of(rec, m)?, field);
                for mat in inner.row_matrices() {
                    for u in 0..q {
                        for v in 0..q {
                            let big = mat.embed_block(q, 1, u, v)?;
                            if span.insert(&big).is_some() {
                                dim += 1;
                            }
                            if ok && !k.contains(&big) {
                                ok = false;
                            }
                        }
                    }
                }
                (Some(dim), ok)
            }
        };
        if let Some(mk_dim) = mk_dim {
            let cur = (
                a_dim - k.dim() as u64,
                k.dim() as u64 - k2.dim() as u64,
                k.dim() as u64 - mk_dim,
                inclusion_ok,
            );
            if prev == Some(cur) {
                return Ok(IdealQuotientReport {
                    codim: cur.0,
                    k_mod_k2: cur.1,
                    k_mod_mk: cur.2,
                    inclusion_ok: cur.3,
                    certified_level: Some(m),
                    stable: true,
                });
            }
            prev = Some(cur);
        }
        prev_k = Some(k);
    }
    match prev {
        Some((codim, k2, mk, ok)) => Ok(IdealQuotientReport {
            codim,
            k_mod_k2: k2,
            k_mod_mk: mk,
            inclusion_ok: ok,
            certified_level: None,
            stable: false,
        }),
        None => Err(Error::resource("cap too low to compute ideal quotients")),
    }
}

/// Subspace of `pi^n(A)` comparable by [`subspace_relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceSpec {
    /// Augmentation power `w^d` (char 2 only).
    AugPower(u32),
    /// `K^d` for the configured branching ideal.
    IdealPower(u32),
    /// `M_(X^k)(K)`.
    MatIdeal(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Subset,
    Neither,
}

pub fn subspace_span(
    rec: &WreathRecursion,
    field: FieldSpec,
    spec: SubspaceSpec,
    k_gens: &[AlgebraElement],
    n: usize,
    caps: &AlgCaps,
) -> Result<SpanBasis> {
    match spec {
        SubspaceSpec::AugPower(d) => aug_power_span(rec, field, d, n, caps),
        SubspaceSpec::IdealPower(d) => ideal_power(rec, field, k_gens, d, n, caps),
        SubspaceSpec::MatIdeal(k) => mat_ideal_span(rec, field, k_gens, k, n, caps),
    }
}

/// Exact inclusion test between two subspace spans at level n.
pub fn subspace_relation(
    rec: &WreathRecursion,
    field: FieldSpec,
    lhs: SubspaceSpec,
    rhs: SubspaceSpec,
    k_gens: &[AlgebraElement],
    n: usize,
    caps: &AlgCaps,
) -> Result<Relation> {
    let a = subspace_span(rec, field, lhs, k_gens, n, caps)?;
    let b = subspace_span(rec, field, rhs, k_gens, n, caps)?;
    let a_in_b = b.contains_all(&a);
    if a_in_b && a.dim() == b.dim() {
        Ok(Relation::Equal)
    } else if a_in_b {
        Ok(Relation::Subset)
    } else {
        Ok(Relation::Neither)
    }
}

#[derive(Debug, Clone)]
pub struct NilReport {
    /// Smallest k <= max_pow with x^k = 0 at the check level, if any.
    pub degree: Option<u32>,
    /// Level the certificate was evaluated at (zero at this level implies
    /// zero at every lower level).
    pub level: usize,
}

/// Smallest `k <= max_pow` with `x^k` evaluating to zero at the cap level.
pub fn nil_degree(
    rec: &WreathRecursion,
    field: FieldSpec,
    x: &AlgebraElement,
    max_pow: u32,
    caps: &AlgCaps,
) -> Result<NilReport> {
    if max_pow < 1 {
        return Err(Error::invalid("max_pow must be >= 1"));
    }
    let n = caps.cap(field);
    let m = evaluate(rec, x, n)?;
    Ok(NilReport {
        degree: nil_degree_of_matrix(&m, max_pow),
        level: n,
    })
}

/// Smallest `k <= max_pow` with `m^k = 0`, for an already evaluated matrix.
pub fn nil_degree_of_matrix(m: &LevelMatrix, max_pow: u32) -> Option<u32> {
    if m.is_zero() {
        return Some(1);
    }
    let mut acc = m.clone();
    for k in 2..=max_pow {
        acc = acc.mul(m);
        if acc.is_zero() {
            return Some(k);
        }
    }
    None
}

/// True iff lhs and rhs evaluate to the same matrix at every level up to
/// `n_max` (by the tower property it suffices to check the top level, but
/// all levels are walked so the first difference is reported).
pub fn product_identity_check(
    rec: &WreathRecursion,
    x: &AlgebraElement,
    y: &AlgebraElement,
    n_max: usize,
) -> Result<ProductCheck> {
    for n in 1..=n_max {
        if evaluate(rec, x, n)? != evaluate(rec, y, n)? {
            return Ok(ProductCheck {
                holds: false,
                first_failing_level: Some(n),
                level_max: n_max,
            });
        }
    }
    Ok(ProductCheck {
        holds: true,
        first_failing_level: None,
        level_max: n_max,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ProductCheck {
    pub holds: bool,
    pub first_failing_level: Option<usize>,
    pub level_max: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct DistinctPowersReport {
    /// Smallest level at which the powers x^0..x^k_max are pairwise
    /// distinct, if one exists below the cap.
    pub level: Option<usize>,
    pub k_max: u32,
    pub top_power_nonzero: bool,
}

/// Finds the smallest level at which `x^0, .., x^k_max` are pairwise
/// distinct.
pub fn distinct_powers(
    rec: &WreathRecursion,
    x: &AlgebraElement,
    k_max: u32,
    n_cap: usize,
) -> Result<DistinctPowersReport> {
    if k_max < 2 {
        return Err(Error::invalid("k_max must be >= 2"));
    }
    let mut top_nonzero = false;
    for n in 1..=n_cap {
        let m = evaluate(rec, x, n)?;
        let mut seen = HashSet::new();
        let side = m.side();
        let mut acc = LevelMatrix::identity(n, side, x.field())?;
        let mut distinct = true;
        for k in 0..=k_max {
            if k > 0 {
                acc = acc.mul(&m);
            }
            if !seen.insert(acc.key()) {
                distinct = false;
                break;
            }
        }
        if distinct {
            top_nonzero = !acc.is_zero();
            return Ok(DistinctPowersReport {
                level: Some(n),
                k_max,
                top_power_nonzero: top_nonzero,
            });
        }
    }
    Ok(DistinctPowersReport {
        level: None,
        k_max,
        top_power_nonzero: top_nonzero,
    })
}

#[derive(Debug, Clone)]
pub struct GradedNilReport {
    pub trials: u64,
    pub all_within_bound: bool,
    pub max_observed_degree: u32,
    pub bound: u32,
    pub level: usize,
}

/// Samples random homogeneous degree-d elements (GF(2) combinations of the
/// 4^d letter monomials) and verifies each is nil of degree at most 72d at
/// the cap level. Reports the maximum observed nil degree.
pub fn graded_nil_sample(
    rec: &WreathRecursion,
    degree: u32,
    trials: u64,
    seed: u64,
    caps: &AlgCaps,
) -> Result<GradedNilReport> {
    if !(1..=3).contains(&degree) {
        return Err(Error::invalid("degree must be 1, 2 or 3"));
    }
    if trials < 1 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    let field = FieldSpec::Gf(2);
    let n = caps.cap(field);
    let letters = letter_matrices(rec, field, n)?;
    // all 4^d degree-d monomial matrices
    let mut monomials = vec![LevelMatrix::identity(n, letters[0].side(), field)?];
    for _ in 0..degree {
        monomials = monomials
            .iter()
            .flat_map(|m| letters.iter().map(move |l| m.mul(l)))
            .collect();
    }
    let bound = 72 * degree;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut max_obs = 0u32;
    let mut all_ok = true;
    for _ in 0..trials {
        // nonzero coefficient mask over the monomials (the element itself
        // may still evaluate to zero, e.g. B + C + D)
        let x = loop {
            let mask: Vec<bool> = monomials.iter().map(|_| rng.gen_bool(0.5)).collect();
            if mask.iter().any(|&b| b) {
                let mut x = LevelMatrix::zero(n, letters[0].side(), field)?;
                for (m, &on) in monomials.iter().zip(&mask) {
                    if on {
                        x = x.add(m);
                    }
                }
                break x;
            }
        };
        match nil_degree_of_matrix(&x, bound) {
            Some(d) => max_obs = max_obs.max(d),
            None => all_ok = false,
        }
    }
    Ok(GradedNilReport {
        trials,
        all_within_bound: all_ok,
        max_observed_degree: max_obs,
        bound,
        level: n,
    })
}

/// Verifies the three block identities that exhibit the branching:
/// `psi(CACAC) = [[ADA, 0], [0, 0]]`, `psi(CADA) = [[AB, AB], [0, 0]]`,
/// `psi(ADAC) = [[BA, 0], [BA, 0]]`, read at level n against level n-1.
pub fn branch_block_identity(
    rec: &WreathRecursion,
    field: FieldSpec,
    n: usize,
) -> Result<bool> {
    if n < 2 {
        return Err(Error::invalid("block identities need level >= 2"));
    }
    let q = rec.alphabet().size();
    if q != 2 {
        return Err(Error::invalid("block identities are for the binary tree"));
    }
    let lw = |s: &str| LetterWord::parse(s).unwrap();
    let eval_n = |s: &str| evaluate_letter_word(rec, field, &lw(s), n);
    let eval_m = |s: &str| evaluate_letter_word(rec, field, &lw(s), n - 1);
    let zero = LevelMatrix::zero(n - 1, side_of(rec, n - 1)?, field)?;
    let cases: [(&str, [[&str; 2]; 2]); 3] = [
        ("CACAC", [["ADA", "0"], ["0", "0"]]),
        ("CADA", [["AB", "AB"], ["0", "0"]]),
        ("ADAC", [["BA", "0"], ["BA", "0"]]),
    ];
    for (word, pattern) in cases {
        let big = eval_n(word)?;
        for (u, row) in pattern.iter().enumerate() {
            for (v, cell) in row.iter().enumerate() {
                let expect = if *cell == "0" { zero.clone() } else { eval_m(cell)? };
                if big.block(q, 1, u, v) != expect {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Grigorchuk branching-ideal generators ADA, AB, BA as elements.
pub fn branching_ideal_char2(rec: &WreathRecursion, field: FieldSpec) -> Result<Vec<AlgebraElement>> {
    let [a, b, _, d] = letter_basis(rec, field)?;
    Ok(vec![
        a.mul(&d, rec).mul(&a, rec),
        a.mul(&b, rec),
        b.mul(&a, rec),
    ])
}

/// Char != 2 branching ideal generator `ab - ba`.
pub fn branching_ideal_charne2(
    rec: &WreathRecursion,
    field: FieldSpec,
) -> Result<Vec<AlgebraElement>> {
    let ab = AlgebraElement::from_word(rec.parse_word("a*b")?, field);
    let ba = AlgebraElement::from_word(rec.parse_word("b*a")?, field);
    Ok(vec![ab.sub(&ba)])
}

/// The invertible element `X = 1 + A + B + AD` and its inverse
/// `(1+B)(1+AC)(1+ACAC)(1+A)`.
pub fn laurent_x(rec: &WreathRecursion, field: FieldSpec) -> Result<(AlgebraElement, AlgebraElement)> {
    let one = AlgebraElement::one(field);
    let [a, b, c, d] = letter_basis(rec, field)?;
    let x = one.add(&a).add(&b).add(&a.mul(&d, rec));
    let ac = a.mul(&c, rec);
    let acac = ac.mul(&ac, rec);
    let xinv = one
        .add(&b)
        .mul(&one.add(&ac), rec)
        .mul(&one.add(&acac), rec)
        .mul(&one.add(&a), rec);
    Ok((x, xinv))
}
