//! Dense level matrices over GF(2) (bit-packed), GF(p) and Q, plus the
//! echelonized span bases every dimension result is read from.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{FieldSpec, Scalar};

/// Hard memory guard for a single matrix allocation.
const MAX_MATRIX_BYTES: usize = 1 << 29; // 512 MiB

/// Dense `side x side` matrix over an exact field at a fixed tree level.
///
/// Entry convention: `(v, v^w) = 1` for the permutation matrix of a word
/// acting on level-`level` vertices in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMatrix {
    pub(crate) level: usize,
    pub(crate) side: usize,
    pub(crate) field: FieldSpec,
    pub(crate) data: MatData,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum MatData {
    /// Row-major bit rows, `words_per_row` words each; padding bits zero.
    B { words_per_row: usize, words: Vec<u64> },
    /// Row-major residues.
    F { p: u64, entries: Vec<u64> },
    /// Row-major rationals.
    R { entries: Vec<BigRational> },
}

impl LevelMatrix {
    pub(crate) fn zero_raw(level: usize, side: usize, field: FieldSpec) -> Result<Self> {
        let bytes = match field {
            FieldSpec::Gf(2) => side * side.div_ceil(64) * 8,
            FieldSpec::Gf(_) => side * side * 8,
            FieldSpec::Rationals => side * side * 32,
        };
        if bytes > MAX_MATRIX_BYTES {
            return Err(Error::resource(format!(
                "level-{level} matrix would need ~{bytes} bytes"
            )));
        }
        let data = match field {
            FieldSpec::Gf(2) => MatData::B {
                words_per_row: side.div_ceil(64),
                words: vec![0; side * side.div_ceil(64)],
            },
            FieldSpec::Gf(p) => MatData::F {
                p,
                entries: vec![0; side * side],
            },
            FieldSpec::Rationals => MatData::R {
                entries: vec![BigRational::zero(); side * side],
            },
        };
        Ok(LevelMatrix {
            level,
            side,
            field,
            data,
        })
    }

    pub fn zero(level: usize, side: usize, field: FieldSpec) -> Result<Self> {
        Self::zero_raw(level, side, field)
    }

    pub fn identity(level: usize, side: usize, field: FieldSpec) -> Result<Self> {
        let mut m = Self::zero_raw(level, side, field)?;
        for v in 0..side {
            m.add_at(v, v, &field.one());
        }
        Ok(m)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Adds `c` at entry `(row, col)`.
    pub(crate) fn add_at(&mut self, row: usize, col: usize, c: &Scalar) {
        match &mut self.data {
            MatData::B { words_per_row, words } => {
                if !c.is_zero() {
                    words[row * *words_per_row + col / 64] ^= 1u64 << (col % 64);
                }
            }
            MatData::F { p, entries } => {
                let r = c.residue().expect("field mismatch");
                let e = &mut entries[row * self.side + col];
                *e = (*e + r) % *p;
            }
            MatData::R { entries } => {
                entries[row * self.side + col] += c.rational().expect("field mismatch");
            }
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        match &self.data {
            MatData::B { words_per_row, words } => {
                let bit = words[row * words_per_row + col / 64] >> (col % 64) & 1;
                Scalar::from_integer(bit as i64, self.field)
            }
            MatData::F { entries, .. } => {
                Scalar::from_integer(entries[row * self.side + col] as i64, self.field)
            }
            MatData::R { entries } => {
                Scalar::from_rational(entries[row * self.side + col].clone())
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            MatData::B { words, .. } => words.iter().all(|&w| w == 0),
            MatData::F { entries, .. } => entries.iter().all(|&e| e == 0),
            MatData::R { entries } => entries.iter().all(|e| e.is_zero()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match Self::identity(self.level, self.side, self.field) {
            Ok(id) => *self == id,
            Err(_) => false,
        }
    }

    pub fn add(&self, other: &LevelMatrix) -> LevelMatrix {
        assert_eq!((self.side, self.field), (other.side, other.field));
        let mut out = self.clone();
        match (&mut out.data, &other.data) {
            (MatData::B { words, .. }, MatData::B { words: ow, .. }) => {
                for (a, b) in words.iter_mut().zip(ow) {
                    *a ^= b;
                }
            }
            (MatData::F { p, entries }, MatData::F { entries: oe, .. }) => {
                for (a, b) in entries.iter_mut().zip(oe) {
                    *a = (*a + b) % *p;
                }
            }
            (MatData::R { entries }, MatData::R { entries: oe }) => {
                for (a, b) in entries.iter_mut().zip(oe) {
                    *a += b;
                }
            }
            _ => unreachable!(),
        }
        out
    }

    pub fn mul(&self, other: &LevelMatrix) -> LevelMatrix {
        assert_eq!((self.side, self.field), (other.side, other.field));
        let side = self.side;
        let mut out = LevelMatrix::zero_raw(self.level, side, self.field).expect("same size");
        match (&self.data, &other.data, &mut out.data) {
            (
                MatData::B { words_per_row, words },
                MatData::B { words: bw, .. },
                MatData::B { words: ow, .. },
            ) => {
                let wpr = *words_per_row;
                for i in 0..side {
                    let arow = &words[i * wpr..(i + 1) * wpr];
                    let orow_start = i * wpr;
                    for (k, &aw) in arow.iter().enumerate() {
                        let mut w = aw;
                        while w != 0 {
                            let j = k * 64 + w.trailing_zeros() as usize;
                            w &= w - 1;
                            let brow = &bw[j * wpr..(j + 1) * wpr];
                            for (t, &bword) in brow.iter().enumerate() {
                                ow[orow_start + t] ^= bword;
                            }
                        }
                    }
                }
            }
            (
                MatData::F { p, entries },
                MatData::F { entries: be, .. },
                MatData::F { entries: oe, .. },
            ) => {
                let p = *p;
                for i in 0..side {
                    for k in 0..side {
                        let a = entries[i * side + k];
                        if a == 0 {
                            continue;
                        }
                        let brow = &be[k * side..(k + 1) * side];
                        let orow = &mut oe[i * side..(i + 1) * side];
                        for (o, &b) in orow.iter_mut().zip(brow) {
                            if b != 0 {
                                *o = ((*o as u128 + a as u128 * b as u128) % p as u128) as u64;
                            }
                        }
                    }
                }
            }
            (MatData::R { entries }, MatData::R { entries: be }, MatData::R { entries: oe }) => {
                for i in 0..side {
                    for k in 0..side {
                        let a = &entries[i * side + k];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..side {
                            let b = &be[k * side + j];
                            if !b.is_zero() {
                                oe[i * side + j] += a * b;
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Right-multiplication by the permutation matrix of `perm` (entry
    /// `(v, perm[v]) = 1`), i.e. a column scatter; the cheap path all the
    /// span closures run on.
    pub(crate) fn mul_perm(&self, perm: &[u32]) -> LevelMatrix {
        let side = self.side;
        debug_assert_eq!(perm.len(), side);
        let mut out = LevelMatrix::zero_raw(self.level, side, self.field).expect("same size");
        match (&self.data, &mut out.data) {
            (MatData::B { words_per_row, words }, MatData::B { words: ow, .. }) => {
                let wpr = *words_per_row;
                for i in 0..side {
                    let arow = &words[i * wpr..(i + 1) * wpr];
                    for (k, &aw) in arow.iter().enumerate() {
                        let mut w = aw;
                        while w != 0 {
                            let j = k * 64 + w.trailing_zeros() as usize;
                            w &= w - 1;
                            let t = perm[j] as usize;
                            ow[i * wpr + t / 64] ^= 1u64 << (t % 64);
                        }
                    }
                }
            }
            (MatData::F { entries, .. }, MatData::F { entries: oe, .. }) => {
                for i in 0..side {
                    for j in 0..side {
                        let e = entries[i * side + j];
                        if e != 0 {
                            oe[i * side + perm[j] as usize] = e;
                        }
                    }
                }
            }
            (MatData::R { entries }, MatData::R { entries: oe }) => {
                for i in 0..side {
                    for j in 0..side {
                        let e = &entries[i * side + j];
                        if !e.is_zero() {
                            oe[i * side + perm[j] as usize] = e.clone();
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Left-multiplication by the permutation matrix of `perm`:
    /// `(P M)[i, j] = M[perm[i], j]`, a row gather.
    pub(crate) fn mul_perm_left(&self, perm: &[u32]) -> LevelMatrix {
        let side = self.side;
        let mut out = LevelMatrix::zero_raw(self.level, side, self.field).expect("same size");
        match (&self.data, &mut out.data) {
            (MatData::B { words_per_row, words }, MatData::B { words: ow, .. }) => {
                let wpr = *words_per_row;
                for i in 0..side {
                    let src = perm[i] as usize;
                    ow[i * wpr..(i + 1) * wpr].copy_from_slice(&words[src * wpr..(src + 1) * wpr]);
                }
            }
            (MatData::F { entries, .. }, MatData::F { entries: oe, .. }) => {
                for i in 0..side {
                    let src = perm[i] as usize;
                    oe[i * side..(i + 1) * side]
                        .copy_from_slice(&entries[src * side..(src + 1) * side]);
                }
            }
            (MatData::R { entries }, MatData::R { entries: oe }) => {
                for i in 0..side {
                    let src = perm[i] as usize;
                    oe[i * side..(i + 1) * side]
                        .clone_from_slice(&entries[src * side..(src + 1) * side]);
                }
            }
            _ => unreachable!(),
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> LevelMatrix {
        let mut acc = LevelMatrix::identity(self.level, self.side, self.field).expect("guarded");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The `(u, v)` block when the matrix is viewed as `q^k x q^k` blocks
    /// of level-`(level-k)` matrices (block row = first `k` letters of the
    /// source vertex).
    pub fn block(&self, q: usize, k: usize, u: usize, v: usize) -> LevelMatrix {
        let blocks = q.pow(k as u32);
        assert!(self.side % blocks == 0 && u < blocks && v < blocks);
        let h = self.side / blocks;
        let mut out = LevelMatrix::zero_raw(self.level - k, h, self.field).expect("smaller");
        for i in 0..h {
            for j in 0..h {
                let c = self.entry(u * h + i, v * h + j);
                if !c.is_zero() {
                    out.add_at(i, j, &c);
                }
            }
        }
        out
    }

    /// Embeds a level-`(level)` matrix as the `(u, v)` block of a level-
    /// `(level+k)` matrix, zeros elsewhere.
    pub fn embed_block(&self, q: usize, k: usize, u: usize, v: usize) -> Result<LevelMatrix> {
        let blocks = q.pow(k as u32);
        let side = self.side * blocks;
        let mut out = LevelMatrix::zero_raw(self.level + k, side, self.field)?;
        for i in 0..self.side {
            for j in 0..self.side {
                let c = self.entry(i, j);
                if !c.is_zero() {
                    out.add_at(u * self.side + i, v * self.side + j, &c);
                }
            }
        }
        Ok(out)
    }

    /// The natural truncation to the previous level: sum the last-letter
    /// block row, `T(M)[v, w] = sum_y M[(v, 0), (w, y)]`. On the image of
    /// the level-(n+1) representation this is the level-n representation.
    pub fn truncate(&self, q: usize) -> Result<LevelMatrix> {
        if self.level == 0 {
            return Err(Error::invalid("cannot truncate a level-0 matrix"));
        }
        let h = self.side / q;
        let mut out = LevelMatrix::zero_raw(self.level - 1, h, self.field)?;
        for v in 0..h {
            for w in 0..h {
                let mut acc = self.field.zero();
                for y in 0..q {
                    acc = acc.add(&self.entry(v * q, w * q + y));
                }
                if !acc.is_zero() {
                    out.add_at(v, w, &acc);
                }
            }
        }
        Ok(out)
    }

    /// Canonical byte encoding (used for exact distinctness tests).
    pub fn key(&self) -> Vec<u8> {
        match &self.data {
            MatData::B { words, .. } => words.iter().flat_map(|w| w.to_le_bytes()).collect(),
            MatData::F { entries, .. } => entries.iter().flat_map(|e| e.to_le_bytes()).collect(),
            MatData::R { entries } => {
                let mut out = Vec::new();
                for e in entries {
                    out.extend_from_slice(e.numer().to_string().as_bytes());
                    out.push(b'/');
                    out.extend_from_slice(e.denom().to_string().as_bytes());
                    out.push(b';');
                }
                out
            }
        }
    }
}

/// Row-echelonized basis of a subspace of vectorized level matrices.
/// Rows are fully forward-reduced: each row is zero before its pivot.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    pub(crate) level: usize,
    pub(crate) side: usize,
    pub(crate) field: FieldSpec,
    pivot_of: Vec<i32>,
    pub(crate) rows: Vec<EchRow>,
}

#[derive(Debug, Clone)]
pub(crate) enum EchRow {
    B(Vec<u64>),
    F(Vec<u64>),
    /// Integer rows with positive leading entry and content 1 (fraction-
    /// free representative of a rational row).
    R(Vec<BigInt>),
}

impl SpanBasis {
    pub fn new(level: usize, side: usize, field: FieldSpec) -> Self {
        let veclen = match field {
            FieldSpec::Gf(2) => side * side.div_ceil(64) * 64,
            _ => side * side,
        };
        SpanBasis {
            level,
            side,
            field,
            pivot_of: vec![-1; veclen],
            rows: Vec::new(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .pivot_of
            .iter()
            .enumerate()
            .filter(|(_, &r)| r >= 0)
            .map(|(j, _)| j)
            .collect();
        out.sort_unstable();
        out
    }

    fn to_row(&self, m: &LevelMatrix) -> EchRow {
        assert_eq!((m.side, m.field), (self.side, self.field), "basis/matrix mismatch");
        match &m.data {
            MatData::B { words, .. } => EchRow::B(words.clone()),
            MatData::F { entries, .. } => EchRow::F(entries.clone()),
            MatData::R { entries } => {
                // clear denominators, strip content, make leading positive
                let mut lcm = BigInt::one();
                for e in entries {
                    lcm = lcm.lcm(e.denom());
                }
                let mut row: Vec<BigInt> =
                    entries.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
                normalize_int_row(&mut row);
                EchRow::R(row)
            }
        }
    }

    pub(crate) fn row_to_matrix(&self, row: &EchRow) -> LevelMatrix {
        let mut m = LevelMatrix::zero_raw(self.level, self.side, self.field).expect("sized");
        match (row, &mut m.data) {
            (EchRow::B(v), MatData::B { words, .. }) => words.copy_from_slice(v),
            (EchRow::F(v), MatData::F { entries, .. }) => entries.copy_from_slice(v),
            (EchRow::R(v), MatData::R { entries }) => {
                for (e, n) in entries.iter_mut().zip(v) {
                    *e = BigRational::from_integer(n.clone());
                }
            }
            _ => unreachable!(),
        }
        m
    }

    /// Inserts the matrix; returns the reduced new basis row if it was
    /// independent of the current span.
    pub(crate) fn insert(&mut self, m: &LevelMatrix) -> Option<LevelMatrix> {
        let row = self.to_row(m);
        let reduced = self.reduce_row(row)?;
        let mat = self.row_to_matrix(&reduced);
        let pivot = row_leading(&reduced).expect("nonzero");
        self.pivot_of[pivot] = self.rows.len() as i32;
        self.rows.push(reduced);
        Some(mat)
    }

    pub fn insert_matrix(&mut self, m: &LevelMatrix) -> bool {
        self.insert(m).is_some()
    }

    pub fn contains(&self, m: &LevelMatrix) -> bool {
        let row = self.to_row(m);
        self.reduce_row(row).is_none()
    }

    /// Forward reduction; None if the row lies in the span.
    fn reduce_row(&self, mut row: EchRow) -> Option<EchRow> {
        loop {
            let j = row_leading(&row)?;
            let r = self.pivot_of[j];
            if r < 0 {
                if let EchRow::F(v) = &mut row {
                    // normalize leading entry to 1
                    let p = match self.field {
                        FieldSpec::Gf(p) => p,
                        _ => unreachable!(),
                    };
                    let inv = crate::exact::mod_inv(v[j], p);
                    for e in v.iter_mut() {
                        *e = (*e as u128 * inv as u128 % p as u128) as u64;
                    }
                }
                if let EchRow::R(v) = &mut row {
                    normalize_int_row(v);
                }
                return Some(row);
            }
            let r = r as usize;
            match (&mut row, &self.rows[r]) {
                (EchRow::B(v), EchRow::B(pr)) => {
                    for (a, b) in v.iter_mut().zip(pr) {
                        *a ^= b;
                    }
                }
                (EchRow::F(v), EchRow::F(pr)) => {
                    let p = match self.field {
                        FieldSpec::Gf(p) => p,
                        _ => unreachable!(),
                    };
                    let c = v[j] % p;
                    for (a, b) in v.iter_mut().zip(pr).skip(j) {
                        if *b != 0 {
                            let sub = (c as u128 * *b as u128 % p as u128) as u64;
                            *a = (*a + p - sub) % p;
                        }
                    }
                }
                (EchRow::R(v), EchRow::R(pr)) => {
                    // v = L * v - c * pr, with L = pivot leading, c = v[j]
                    let lead = pr[j].clone();
                    let c = v[j].clone();
                    for (a, b) in v.iter_mut().zip(pr) {
                        *a = &*a * &lead - &c * b;
                    }
                    normalize_int_row(v);
                }
                _ => unreachable!(),
            }
        }
    }

    /// True iff every basis row of `other` lies in this span.
    pub fn contains_all(&self, other: &SpanBasis) -> bool {
        other
            .rows
            .iter()
            .map(|r| other.row_to_matrix(r))
            .all(|m| self.contains(&m))
    }

    pub fn same_space(&self, other: &SpanBasis) -> bool {
        self.dim() == other.dim() && self.contains_all(other)
    }

    pub(crate) fn row_matrices(&self) -> impl Iterator<Item = LevelMatrix> + '_ {
        self.rows.iter().map(|r| self.row_to_matrix(r))
    }

    pub(crate) fn estimated_bytes(veclen: usize, rows: usize, field: FieldSpec) -> usize {
        match field {
            FieldSpec::Gf(2) => veclen / 8 * rows,
            FieldSpec::Gf(_) => veclen * 8 * rows,
            FieldSpec::Rationals => veclen * 32 * rows,
        }
    }
}

fn row_leading(row: &EchRow) -> Option<usize> {
    match row {
        EchRow::B(v) => {
            for (k, &w) in v.iter().enumerate() {
                if w != 0 {
                    return Some(k * 64 + w.trailing_zeros() as usize);
                }
            }
            None
        }
        EchRow::F(v) => v.iter().position(|&e| e != 0),
        EchRow::R(v) => v.iter().position(|e| !e.is_zero()),
    }
}

/// gcd-strips the row and flips signs so the leading entry is positive.
fn normalize_int_row(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for e in row.iter() {
        if !e.is_zero() {
            g = g.gcd(e);
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_neg = row
        .iter()
        .find(|e| !e.is_zero())
        .map(|e| e.is_negative())
        .unwrap_or(false);
    if lead_neg {
        g = -g;
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            if !e.is_zero() {
                *e = &*e / &g;
            }
        }
    }
}

/// Sanity guard used by ops that build echelons.
pub(crate) fn check_echelon_budget(
    level: usize,
    side: usize,
    field: FieldSpec,
    max_rows: usize,
) -> Result<()> {
    let veclen = side * side;
    let bytes = SpanBasis::estimated_bytes(veclen, max_rows, field);
    if bytes > MAX_MATRIX_BYTES * 2 {
        return Err(Error::resource(format!(
            "level-{level} span basis could need ~{bytes} bytes; raise caps knowingly"
        )));
    }
    Ok(())
}
