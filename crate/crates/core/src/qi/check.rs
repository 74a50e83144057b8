use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::slice::ParallelSliceMut;
use serde::Serialize;

use super::QiError;

/// Largest set accepted by [`qi_check_bruteforce`] (`3^16` patterns).
pub const BRUTEFORCE_MAX: usize = 16;
/// Largest set accepted by [`qi_check_mitm`].
pub const MITM_MAX: usize = 32;
/// Default cap on the total number of stored half-sums.
pub const DEFAULT_MITM_BUDGET: u64 = 1 << 22;

/// Finite family of nonzero, pairwise distinct integer vectors of one common
/// dimension. Dimension 1 covers subsets of ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntVectorSet {
    dim: usize,
    elements: Vec<Vec<BigInt>>,
}

impl IntVectorSet {
    pub fn new(elements: Vec<Vec<BigInt>>) -> Result<Self, QiError> {
        let dim = elements.first().ok_or(QiError::EmptySet)?.len();
        for (index, e) in elements.iter().enumerate() {
            if e.len() != dim || dim == 0 {
                return Err(QiError::DimensionMismatch {
                    index,
                    dim: e.len(),
                    expected: dim.max(1),
                });
            }
            if e.iter().all(Zero::is_zero) {
                return Err(QiError::ZeroElement { index });
            }
        }
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&i, &j| elements[i].cmp(&elements[j]).then(i.cmp(&j)));
        for w in order.windows(2) {
            if elements[w[0]] == elements[w[1]] {
                return Err(QiError::DuplicateElement {
                    first: w[0].min(w[1]),
                    second: w[0].max(w[1]),
                });
            }
        }
        Ok(Self { dim, elements })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self, QiError> {
        Self::new(values.iter().map(|&v| vec![BigInt::from(v)]).collect())
    }

    pub fn from_bigints(values: &[BigInt]) -> Result<Self, QiError> {
        Self::new(values.iter().map(|v| vec![v.clone()]).collect())
    }

    pub fn from_vectors(vectors: &[Vec<i64>]) -> Result<Self, QiError> {
        Self::new(
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<BigInt>] {
        &self.elements
    }

    /// `Σ ε_j v_j`, computed exactly.
    pub fn combination(&self, eps: &[i8]) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.dim];
        for (e, v) in eps.iter().zip(&self.elements) {
            for (a, x) in acc.iter_mut().zip(v) {
                match e {
                    1 => *a += x,
                    -1 => *a -= x,
                    _ => {}
                }
            }
        }
        acc
    }

    /// True when `eps` is a nontrivial sign pattern with `Σ ε_j v_j = 0`.
    pub fn is_relation(&self, eps: &[i8]) -> bool {
        eps.len() == self.len()
            && eps.iter().all(|e| (-1..=1).contains(e))
            && eps.iter().any(|&e| e != 0)
            && self.combination(eps).iter().all(Zero::is_zero)
    }

    /// Every partial sum of `±v_j` fits comfortably in an `i128`.
    fn fits_i128(&self) -> bool {
        let mut total = BigInt::zero();
        for v in &self.elements {
            total += v.iter().map(|x| x.abs()).max().unwrap_or_default();
        }
        total.bits() < 120
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QiVerdict {
    pub independent: bool,
    /// Lexicographically first relation under the digit order `0 < 1 < −1`;
    /// its first nonzero entry is `+1`.
    pub witness: Option<Vec<i8>>,
    pub method: &'static str,
}

/// Exact additive group element used by the searches.
trait Lattice: Clone + Ord + Send + Sync {
    fn from_row(row: &[BigInt]) -> Self;
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Lattice for i128 {
    fn from_row(row: &[BigInt]) -> Self {
        row[0].to_i128().expect("range checked")
    }
    fn zero_like(&self) -> Self {
        0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Lattice for BigInt {
    fn from_row(row: &[BigInt]) -> Self {
        row[0].clone()
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl<T: Lattice> Lattice for Vec<T> {
    fn from_row(row: &[BigInt]) -> Self {
        row.iter().map(|x| T::from_row(std::slice::from_ref(x))).collect()
    }
    fn zero_like(&self) -> Self {
        self.iter().map(T::zero_like).collect()
    }
    fn add(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a.add(b)).collect()
    }
    fn sub(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a.sub(b)).collect()
    }
    fn is_zero(&self) -> bool {
        self.iter().all(T::is_zero)
    }
}

fn lattice<T: Lattice>(set: &IntVectorSet) -> Vec<T> {
    set.elements.iter().map(|v| T::from_row(v)).collect()
}

macro_rules! dispatch {
    ($set:expr, $f:ident $(, $arg:expr)*) => {{
        let set = $set;
        match (set.dim == 1, set.fits_i128()) {
            (true, true) => $f(&lattice::<i128>(set) $(, $arg)*),
            (true, false) => $f(&lattice::<BigInt>(set) $(, $arg)*),
            (false, true) => $f(&lattice::<Vec<i128>>(set) $(, $arg)*),
            (false, false) => $f(&lattice::<Vec<BigInt>>(set) $(, $arg)*),
        }
    }};
}

fn brute<T: Lattice>(v: &[T]) -> Option<Vec<i8>> {
    fn dfs<T: Lattice>(v: &[T], i: usize, sum: &T, eps: &mut Vec<i8>, nontrivial: bool) -> bool {
        if i == v.len() {
            return nontrivial && sum.is_zero();
        }
        for e in [0i8, 1, -1] {
            eps[i] = e;
            let next = match e {
                0 => sum.clone(),
                1 => sum.add(&v[i]),
                _ => sum.sub(&v[i]),
            };
            if dfs(v, i + 1, &next, eps, nontrivial || e != 0) {
                return true;
            }
        }
        eps[i] = 0;
        false
    }
    let mut eps = vec![0i8; v.len()];
    dfs(v, 0, &v[0].zero_like(), &mut eps, false).then_some(eps)
}

/// Exhaustive search over all `3^k` sign patterns.
pub fn qi_check_bruteforce(set: &IntVectorSet) -> Result<QiVerdict, QiError> {
    if set.len() > BRUTEFORCE_MAX {
        return Err(QiError::SizeCap {
            method: "exhaustive search (use the meet-in-the-middle check)",
            size: set.len(),
            cap: BRUTEFORCE_MAX,
        });
    }
    let witness = dispatch!(set, brute);
    Ok(QiVerdict {
        independent: witness.is_none(),
        witness,
        method: "bruteforce",
    })
}

const DIGITS: [i8; 3] = [0, 1, -1];

/// Half-sums indexed by pattern rank (base 3, first index most significant).
fn half_sums<T: Lattice>(v: &[T], zero: &T) -> Vec<T> {
    let mut sums = vec![zero.clone()];
    for x in v {
        let mut next = Vec::with_capacity(sums.len() * 3);
        for s in &sums {
            next.push(s.clone());
            next.push(s.add(x));
            next.push(s.sub(x));
        }
        sums = next;
    }
    sums
}

fn decode(mut rank: usize, len: usize, out: &mut [i8]) {
    for i in (0..len).rev() {
        out[i] = DIGITS[rank % 3];
        rank /= 3;
    }
}

fn mitm<T: Lattice>(v: &[T]) -> Option<Vec<i8>> {
    let k = v.len();
    let h = k / 2;
    let zero = v[0].zero_like();
    let left = half_sums(&v[..h], &zero);
    let mut right: Vec<(T, u32)> = half_sums(&v[h..], &zero)
        .into_iter()
        .enumerate()
        .map(|(r, s)| (s, r as u32))
        .collect();
    right.par_sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    for (lr, ls) in left.iter().enumerate() {
        let target = zero.sub(ls);
        let start = right.partition_point(|(s, _)| s.cmp(&target) == Ordering::Less);
        let hit = right[start..]
            .iter()
            .take_while(|(s, _)| *s == target)
            .find(|&&(_, rr)| lr != 0 || rr != 0);
        if let Some(&(_, rr)) = hit {
            let mut eps = vec![0i8; k];
            decode(lr, h, &mut eps[..h]);
            decode(rr as usize, k - h, &mut eps[h..]);
            return Some(eps);
        }
    }
    None
}

pub fn qi_check_mitm(set: &IntVectorSet) -> Result<QiVerdict, QiError> {
    qi_check_mitm_with_budget(set, DEFAULT_MITM_BUDGET)
}

/// Meet-in-the-middle search: all half-sums of the second half are sorted
/// with every tie kept, then each first-half sum is matched against them.
/// Returns the same witness as [`qi_check_bruteforce`].
pub fn qi_check_mitm_with_budget(set: &IntVectorSet, budget: u64) -> Result<QiVerdict, QiError> {
    let k = set.len();
    if k > MITM_MAX {
        return Err(QiError::SizeCap {
            method: "meet-in-the-middle search",
            size: k,
            cap: MITM_MAX,
        });
    }
    let left = 3u64.pow((k / 2) as u32);
    let right = 3u64.pow((k - k / 2) as u32);
    if left + right > budget {
        return Err(QiError::MemoryBudget {
            left,
            right,
            budget,
        });
    }
    let witness = dispatch!(set, mitm);
    Ok(QiVerdict {
        independent: witness.is_none(),
        witness,
        method: "mitm",
    })
}
