use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{IntVectorSet, QiError};

pub const MAX_MATRIX_LEVEL: u32 = 8;
pub const MAX_BASE_LEVEL: u32 = 8;
pub const MAX_LAMBDA_LEVEL: u32 = 6;

fn check_level(level: u32, max: u32) -> Result<(), QiError> {
    if (1..=max).contains(&level) {
        Ok(())
    } else {
        Err(QiError::LevelOutOfRange { level, max })
    }
}

/// `N_ν = 2^{ν−1}(2+ν)`, with `N_0 = 1`.
pub fn n_nu(nu: u32) -> u64 {
    if nu == 0 {
        1
    } else {
        (1u64 << (nu - 1)) * (2 + nu as u64)
    }
}

/// `N_ν` from `N_0 = 1` and `N_ν = 2N_{ν−1} + 2^{ν−1}`.
pub fn n_nu_recurrence(nu: u32) -> u64 {
    (1..=nu).fold(1, |n, v| 2 * n + (1u64 << (v - 1)))
}

/// The `2^ν × N_ν` matrix `A_ν` with entries in `{−1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QiMatrix {
    pub nu: u32,
    pub rows: Vec<Vec<i8>>,
}

impl QiMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.rows[0].len()
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[c] as i64).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.col_count()).map(|c| self.column(c)).collect()
    }

    pub fn column_set(&self) -> IntVectorSet {
        IntVectorSet::from_vectors(&self.columns()).expect("columns are nonzero and distinct")
    }
}

/// `A_1 = [[1, 1, 1], [1, −1, 0]]` and
/// `A_{ν+1} = [[A_ν, A_ν, I], [A_ν, −A_ν, 0]]`.
pub fn build_qi_matrix(nu: u32) -> Result<QiMatrix, QiError> {
    check_level(nu, MAX_MATRIX_LEVEL)?;
    let mut rows: Vec<Vec<i8>> = vec![vec![1, 1, 1], vec![1, -1, 0]];
    for _ in 1..nu {
        let n = rows.len();
        let mut next = Vec::with_capacity(2 * n);
        for (i, r) in rows.iter().enumerate() {
            let mut top = r.clone();
            top.extend_from_slice(r);
            top.extend((0..n).map(|c| (c == i) as i8));
            next.push(top);
        }
        for r in &rows {
            let mut bottom = r.clone();
            bottom.extend(r.iter().map(|&x| -x));
            bottom.extend(std::iter::repeat_n(0, n));
            next.push(bottom);
        }
        rows = next;
    }
    Ok(QiMatrix { nu, rows })
}

/// Positive integers `β_1 < β_2 < …` admitting no nontrivial relation
/// `Σ n_j β_j = 0` with `|n_j| ≤ B_j`, where `B_j = N_ν` for
/// `2^ν ≤ j < 2^{ν+1}` and `B_1 = N_1`. Built greedily as
/// `β_j = 1 + 2 Σ_{i<j} B_i β_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissociatedBase {
    pub nu_max: u32,
    /// `beta[j − 1] = β_j` for `j = 1..2^{ν_max+1}`.
    pub beta: Vec<BigInt>,
    pub bounds: Vec<u64>,
}

impl DissociatedBase {
    pub fn beta(&self, j: usize) -> &BigInt {
        &self.beta[j - 1]
    }

    pub fn bound(&self, j: usize) -> u64 {
        self.bounds[j - 1]
    }

    /// `β_{2^ν}, …, β_{2^{ν+1}−1}`.
    pub fn block(&self, nu: u32) -> &[BigInt] {
        let start = 1usize << nu;
        &self.beta[start - 1..2 * start - 1]
    }
}

fn bound_for(j: usize) -> u64 {
    if j == 1 {
        n_nu(1)
    } else {
        n_nu(usize::BITS - 1 - j.leading_zeros())
    }
}

pub fn build_dissociated_base(nu_max: u32) -> Result<DissociatedBase, QiError> {
    check_level(nu_max, MAX_BASE_LEVEL)?;
    let count = (1usize << (nu_max + 1)) - 1;
    let mut beta = Vec::with_capacity(count);
    let mut bounds = Vec::with_capacity(count);
    let mut weighted = BigInt::zero();
    for j in 1..=count {
        let b = BigInt::one() + &weighted * 2;
        let bound = bound_for(j);
        weighted += &b * bound;
        beta.push(b);
        bounds.push(bound);
    }
    Ok(DissociatedBase {
        nu_max,
        beta,
        bounds,
    })
}

/// `Λ = (γ_ℓ)`, the blocks `(β_{2^ν}, …, β_{2^{ν+1}−1}) · A_ν` for
/// `ν = 1..=ν_max`, concatenated block by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSet {
    pub nu_max: u32,
    pub gamma: Vec<BigInt>,
    /// `(ν, index range into gamma)` for every block.
    pub blocks: Vec<(u32, Range<usize>)>,
}

impl LambdaSet {
    pub fn block(&self, nu: u32) -> &[BigInt] {
        let (_, range) = &self.blocks[nu as usize - 1];
        &self.gamma[range.clone()]
    }

    /// The elements of blocks `1..=nu`.
    pub fn prefix(&self, nu: u32) -> &[BigInt] {
        &self.gamma[..self.blocks[nu as usize - 1].1.end]
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

pub fn build_lambda(nu_max: u32) -> Result<LambdaSet, QiError> {
    check_level(nu_max, MAX_LAMBDA_LEVEL)?;
    let base = build_dissociated_base(nu_max)?;
    let mut gamma = Vec::new();
    let mut blocks = Vec::new();
    for nu in 1..=nu_max {
        let a = build_qi_matrix(nu)?;
        let b = base.block(nu);
        let start = gamma.len();
        for c in 0..a.col_count() {
            let mut g = BigInt::zero();
            for (row, beta) in a.rows.iter().zip(b) {
                match row[c] {
                    1 => g += beta,
                    -1 => g -= beta,
                    _ => {}
                }
            }
            gamma.push(g);
        }
        blocks.push((nu, start..gamma.len()));
    }
    Ok(LambdaSet {
        nu_max,
        gamma,
        blocks,
    })
}
