use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{build_dissociated_base, build_lambda, n_nu, QiError, MAX_LAMBDA_LEVEL};

/// Largest generator count for the exhaustive membership test.
pub const EXHAUSTIVE_MESH_MAX: usize = 16;
const MESH_BOX_CAP: u64 = 1 << 22;

/// `M = { Σ n_j γ_j : |n_j| ≤ m_j }`; unit bounds give `E = {−1, 0, 1}^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub generators: Vec<BigInt>,
    pub bounds: Vec<u32>,
}

impl Mesh {
    pub fn new(generators: Vec<BigInt>, bounds: Vec<u32>) -> Result<Self, QiError> {
        if generators.is_empty() {
            return Err(QiError::EmptyMesh);
        }
        assert_eq!(generators.len(), bounds.len(), "one bound per generator");
        for (index, g) in generators.iter().enumerate() {
            if g.is_zero() || generators[..index].contains(g) {
                return Err(QiError::BadGenerator { index });
            }
        }
        Ok(Self { generators, bounds })
    }

    pub fn unit(generators: Vec<BigInt>) -> Result<Self, QiError> {
        let k = generators.len();
        Self::new(generators, vec![1; k])
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// The β-block `β_{2^ν}, …, β_{2^{ν+1}−1}` with unit box, padded to `k`
    /// generators by `3^i · T`, where `T` exceeds twice the block span plus
    /// `reach`. Padding generators cannot contribute to any value of size at
    /// most `reach`.
    pub fn beta_block(nu: u32, k: usize, reach: &BigInt) -> Result<Self, QiError> {
        let base = build_dissociated_base(nu)?;
        let block = base.block(nu).to_vec();
        if k < block.len() || k >= 2 * block.len() {
            return Err(QiError::MeshSizeOutOfRange { k, nu });
        }
        let span: BigInt = block.iter().map(|b| b.abs()).sum();
        let t: BigInt = (span + reach.abs()) * 2 + BigInt::one();
        let mut generators = block;
        let mut pad = t;
        while generators.len() < k {
            generators.push(pad.clone());
            pad *= 3;
        }
        Self::unit(generators)
    }

    fn by_size(&self) -> Vec<(BigInt, BigInt)> {
        let mut g: Vec<(BigInt, BigInt)> = self
            .generators
            .iter()
            .zip(&self.bounds)
            .map(|(g, &m)| (g.clone(), BigInt::from(m)))
            .collect();
        g.sort_by_key(|a| a.0.abs());
        g
    }

    /// Sorted by size, every generator exceeds twice the bounded reach of
    /// the smaller ones, so bounded representations are unique and the
    /// greedy nearest-digit rule finds them.
    pub fn is_dissociated(&self) -> bool {
        let mut reach = BigInt::zero();
        for (g, m) in self.by_size() {
            if g.abs() <= &reach * 2 {
                return false;
            }
            reach += g.abs() * m;
        }
        true
    }

    /// Digits `n_j` (in generator order) with `Σ n_j γ_j = x`, if any.
    /// Only valid for dissociated meshes.
    fn greedy_digits(&self, x: &BigInt) -> Option<Vec<i64>> {
        let mut order: Vec<usize> = (0..self.k()).collect();
        order.sort_by(|&a, &b| self.generators[b].abs().cmp(&self.generators[a].abs()));
        let mut r = x.clone();
        let mut digits = vec![0i64; self.k()];
        for i in order {
            let g = &self.generators[i];
            let m = BigInt::from(self.bounds[i]);
            let q = r.div_floor(g);
            let best = [q.clone(), q + 1]
                .into_iter()
                .map(|n| n.clamp(-m.clone(), m.clone()))
                .min_by_key(|n| (&r - n * g).abs())
                .expect("two candidates");
            r -= &best * g;
            digits[i] = i64::try_from(&best).expect("bounded digit");
        }
        r.is_zero().then_some(digits)
    }

    fn box_size(&self, range: std::ops::Range<usize>) -> u64 {
        self.bounds[range]
            .iter()
            .fold(1u64, |acc, &m| acc.saturating_mul(2 * m as u64 + 1))
    }

    fn half_sums(&self, range: std::ops::Range<usize>) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero()];
        for i in range {
            let m = self.bounds[i] as i64;
            let g = &self.generators[i];
            sums = sums
                .iter()
                .flat_map(|s| (-m..=m).map(move |n| s + g * n))
                .collect();
        }
        sums
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeshMethod {
    Greedy,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeshCount {
    pub count: usize,
    /// Indices into the input set.
    pub members: Vec<usize>,
    pub method: MeshMethod,
}

/// Elements of `lambda` lying in `mesh`. Dissociated meshes use greedy
/// digit extraction; others fall back to meet-in-the-middle enumeration of
/// the box, which needs at most [`EXHAUSTIVE_MESH_MAX`] generators.
pub fn mesh_intersection(lambda: &[BigInt], mesh: &Mesh) -> Result<MeshCount, QiError> {
    let method = if mesh.is_dissociated() {
        MeshMethod::Greedy
    } else {
        MeshMethod::Exhaustive
    };
    mesh_intersection_with(lambda, mesh, method)
}

pub fn mesh_intersection_with(
    lambda: &[BigInt],
    mesh: &Mesh,
    method: MeshMethod,
) -> Result<MeshCount, QiError> {
    let members: Vec<usize> = match method {
        MeshMethod::Greedy => {
            if !mesh.is_dissociated() {
                return Err(QiError::AmbiguousMesh {
                    generators: mesh.k(),
                    cap: EXHAUSTIVE_MESH_MAX,
                });
            }
            let reach: BigInt = mesh
                .generators
                .iter()
                .zip(&mesh.bounds)
                .map(|(g, &m)| g.abs() * m)
                .sum();
            (0..lambda.len())
                .filter(|&i| lambda[i].abs() <= reach && mesh.greedy_digits(&lambda[i]).is_some())
                .collect()
        }
        MeshMethod::Exhaustive => {
            let k = mesh.k();
            if k > EXHAUSTIVE_MESH_MAX {
                return Err(QiError::AmbiguousMesh {
                    generators: k,
                    cap: EXHAUSTIVE_MESH_MAX,
                });
            }
            let h = k / 2;
            let size = mesh.box_size(0..h).saturating_add(mesh.box_size(h..k));
            if size > MESH_BOX_CAP {
                return Err(QiError::MeshBoxCap {
                    size,
                    cap: MESH_BOX_CAP,
                });
            }
            let left = mesh.half_sums(0..h);
            let mut right = mesh.half_sums(h..k);
            right.sort();
            (0..lambda.len())
                .filter(|&i| left.iter().any(|s| right.binary_search(&(&lambda[i] - s)).is_ok()))
                .collect()
        }
    };
    Ok(MeshCount {
        count: members.len(),
        members,
        method,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeshBoundRow {
    pub k: usize,
    pub count: usize,
    /// `¼ · k · log₂ k`.
    pub quarter_bound: f64,
    /// `½ · k · log₂ k`, reported at `k = 2^ν` only.
    pub half_bound: Option<f64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeshBoundReport {
    pub nu: u32,
    pub n_nu: u64,
    pub rows: Vec<MeshBoundRow>,
}

impl MeshBoundReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// For each `k ∈ [2^ν, 2^{ν+1})`, counts `Λ` (built through level `ν`) in
/// the β-block mesh padded to `k` generators and compares with
/// `¼ k log₂ k`; at `k = 2^ν` the count must also exceed `½ k log₂ k`.
pub fn verify_mesh_bound(nu: u32) -> Result<MeshBoundReport, QiError> {
    if !(1..=MAX_LAMBDA_LEVEL).contains(&nu) {
        return Err(QiError::LevelOutOfRange {
            level: nu,
            max: MAX_LAMBDA_LEVEL,
        });
    }
    let lambda = build_lambda(nu)?;
    let reach = lambda.gamma.iter().map(|g| g.abs()).max().unwrap_or_default();
    let k0 = 1usize << nu;
    let mut rows = Vec::with_capacity(k0);
    for k in k0..2 * k0 {
        let mesh = Mesh::beta_block(nu, k, &reach)?;
        let count = mesh_intersection(&lambda.gamma, &mesh)?.count;
        let log = (k as f64).log2();
        let quarter_bound = 0.25 * k as f64 * log;
        let half_bound = (k == k0).then_some(0.5 * k as f64 * log);
        let holds = count as f64 >= quarter_bound && half_bound.is_none_or(|h| count as f64 > h);
        rows.push(MeshBoundRow {
            k,
            count,
            quarter_bound,
            half_bound,
            holds,
        });
    }
    Ok(MeshBoundReport {
        nu,
        n_nu: n_nu(nu),
        rows,
    })
}
