//! Quasi-independent sets of integers and integer vectors.
//!
//! A finite family `v_1, …, v_k` is quasi-independent when
//! `Σ ε_j v_j = 0` with `ε_j ∈ {−1, 0, 1}` forces every `ε_j = 0`.
//! The module checks that property exhaustively or by meet-in-the-middle,
//! builds the recursive matrices `A_ν` and their flattening `Λ ⊂ ℤ`,
//! counts mesh intersections, and brackets Sidon constants.

mod check;
mod construct;
mod mesh;
mod sidon;

pub use check::{
    qi_check_bruteforce, qi_check_mitm, qi_check_mitm_with_budget, IntVectorSet, QiVerdict,
    BRUTEFORCE_MAX, DEFAULT_MITM_BUDGET, MITM_MAX,
};
pub use construct::{
    build_dissociated_base, build_lambda, build_qi_matrix, n_nu, n_nu_recurrence, DissociatedBase,
    LambdaSet, QiMatrix, MAX_BASE_LEVEL, MAX_LAMBDA_LEVEL, MAX_MATRIX_LEVEL,
};
pub use mesh::{
    mesh_intersection, verify_mesh_bound, Mesh, MeshBoundReport, MeshBoundRow, MeshCount,
    MeshMethod, EXHAUSTIVE_MESH_MAX,
};
pub use sidon::{
    sidon_lower_estimate, sidon_union_bound, SidonEstimate, SidonOptions, SIDON_MAX_SET,
    SIDON_ROUNDED, SIDON_SHARPER_KNOWN,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QiError {
    #[error("the set is empty")]
    EmptySet,
    #[error("vectors must share one dimension d >= 1 (element {index} has dimension {dim}, expected {expected})")]
    DimensionMismatch {
        index: usize,
        dim: usize,
        expected: usize,
    },
    #[error("element {index} is the zero vector")]
    ZeroElement { index: usize },
    #[error("elements {first} and {second} coincide")]
    DuplicateElement { first: usize, second: usize },
    #[error("{size} elements exceed the limit of {cap} for {method}")]
    SizeCap {
        method: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("half enumerations of {left} and {right} entries exceed the memory budget of {budget}")]
    MemoryBudget { left: u64, right: u64, budget: u64 },
    #[error("level {level} is outside 1..={max}")]
    LevelOutOfRange { level: u32, max: u32 },
    #[error("mesh needs at least one generator")]
    EmptyMesh,
    #[error("mesh generators must be nonzero and distinct (generator {index})")]
    BadGenerator { index: usize },
    #[error("{generators} generators are not dissociated and exceed the exhaustive limit of {cap}")]
    AmbiguousMesh { generators: usize, cap: usize },
    #[error("mesh box has {size} points, above the cap of {cap}")]
    MeshBoxCap { size: u64, cap: u64 },
    #[error("k = {k} lies outside [2^ν, 2^(ν+1)) for ν = {nu}")]
    MeshSizeOutOfRange { k: usize, nu: u32 },
    #[error("k must be at least 1")]
    ZeroUnion,
    #[error("grid of {grid} nodes does not exceed π·n = {bound:.3}")]
    GridTooCoarse { grid: usize, bound: f64 },
    #[error("{what} needs {requested}, above the cap of {cap}")]
    ResourceCap {
        what: &'static str,
        requested: u64,
        cap: u64,
    },
}

impl QiError {
    /// Refusals caused by size caps rather than invalid input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            QiError::SizeCap { .. }
                | QiError::MemoryBudget { .. }
                | QiError::AmbiguousMesh { .. }
                | QiError::MeshBoxCap { .. }
                | QiError::ResourceCap { .. }
        )
    }
}
