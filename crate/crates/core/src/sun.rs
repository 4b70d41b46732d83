//! Operator factory: generalized Gell-Mann SU(N) generator ladders,
//! collective spin operators, spin-j matrices, and embeddings of small
//! operators into an n-qubit register.
//!
//! Generator ordering is 0-based, blocks in the order symmetric →
//! antisymmetric → diagonal; within the off-diagonal blocks the index pairs
//! (a, b), a < b run lexicographically, and the k-th diagonal generator is
//! √(2/(k(k+1))) · diag(1, …, 1, −k, 0, …). For N = 2 this yields (σx, σy, σz).

use crate::error::{Error, Result};
use crate::linalg::{identity, is_hermitian, kron, max_abs, CMatrix, C_ONE};
use crate::pauli::Axis;
use num_complex::Complex64;

/// Which block of the generator ladder an index falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    /// (|a⟩⟨b| + |b⟩⟨a|)
    Symmetric(usize, usize),
    /// (−i|a⟩⟨b| + i|b⟩⟨a|)
    Antisymmetric(usize, usize),
    /// √(2/(k(k+1))) (Σ_{j<k}|j⟩⟨j| − k|k⟩⟨k|)
    Diagonal(usize),
}

/// The ordered family of N² − 1 traceless Hermitian generators of SU(N).
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    dim: usize,
    matrices: Vec<CMatrix>,
    kinds: Vec<GeneratorKind>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrix(&self, index: usize) -> Result<&CMatrix> {
        self.matrices.get(index).ok_or_else(|| {
            Error::Validation(format!(
                "generator index {index} out of range 0..{}",
                self.matrices.len()
            ))
        })
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn kind(&self, index: usize) -> Option<GeneratorKind> {
        self.kinds.get(index).copied()
    }

    /// Index of the symmetric generator for the pair (a, b), a < b.
    pub fn symmetric_index(&self, a: usize, b: usize) -> Result<usize> {
        self.pair_offset(a, b)
    }

    /// Index of the antisymmetric generator for the pair (a, b), a < b.
    pub fn antisymmetric_index(&self, a: usize, b: usize) -> Result<usize> {
        Ok(self.dim * (self.dim - 1) / 2 + self.pair_offset(a, b)?)
    }

    /// Index of the k-th diagonal generator, k = 1..N−1.
    pub fn diagonal_index(&self, k: usize) -> Result<usize> {
        if k == 0 || k >= self.dim {
            return Err(Error::Validation(format!("diagonal index {k} outside 1..{}", self.dim)));
        }
        Ok(self.dim * (self.dim - 1) + k - 1)
    }

    fn pair_offset(&self, a: usize, b: usize) -> Result<usize> {
        let n = self.dim;
        if a >= b || b >= n {
            return Err(Error::Validation(format!("bad generator pair ({a}, {b}) for N = {n}")));
        }
        // position of (a, b) in lexicographic order over a < b
        Ok(a * n - a * (a + 1) / 2 + (b - a - 1))
    }
}

/// The ordered SU(N) generator basis, N ≥ 2.
pub fn su_generators(n_dim: usize) -> Result<GeneratorBasis> {
    if n_dim < 2 {
        return Err(Error::Validation(format!("SU(N) needs N >= 2, got {n_dim}")));
    }
    let n = n_dim;
    let mut matrices = Vec::with_capacity(n * n - 1);
    let mut kinds = Vec::with_capacity(n * n - 1);
    for a in 0..n {
        for b in (a + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(a, b)] = C_ONE;
            m[(b, a)] = C_ONE;
            matrices.push(m);
            kinds.push(GeneratorKind::Symmetric(a, b));
        }
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(a, b)] = Complex64::new(0.0, -1.0);
            m[(b, a)] = Complex64::new(0.0, 1.0);
            matrices.push(m);
            kinds.push(GeneratorKind::Antisymmetric(a, b));
        }
    }
    for k in 1..n {
        let norm = (2.0 / (k as f64 * (k + 1) as f64)).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..k {
            m[(j, j)] = Complex64::new(norm, 0.0);
        }
        m[(k, k)] = Complex64::new(-(k as f64) * norm, 0.0);
        matrices.push(m);
        kinds.push(GeneratorKind::Diagonal(k));
    }
    Ok(GeneratorBasis {
        dim: n,
        matrices,
        kinds,
    })
}

fn pauli_dense(axis: Axis) -> CMatrix {
    use crate::pauli::SiteOp;
    match axis {
        Axis::X => SiteOp::X.dense(),
        Axis::Y => SiteOp::Y.dense(),
        Axis::Z => SiteOp::Z.dense(),
    }
}

/// Single-site Pauli on qubit `q` of an n-qubit register, dense.
pub fn local_pauli(n_qubits: usize, q: usize, axis: Axis) -> Result<CMatrix> {
    embed(&pauli_dense(axis), q, n_qubits)
}

/// Collective spin J_axis = (1/2) Σ_j σ^axis_j on 2^n dimensions.
pub fn collective_spin(n_qubits: usize, axis: Axis) -> Result<CMatrix> {
    if n_qubits == 0 {
        return Err(Error::Validation("collective spin needs n >= 1".into()));
    }
    let dim = checked_pow2(n_qubits)?;
    let mut sum = CMatrix::zeros(dim, dim);
    for q in 0..n_qubits {
        sum += local_pauli(n_qubits, q, axis)?;
    }
    Ok(sum * Complex64::new(0.5, 0.0))
}

/// Spin-s matrices for s = (dim − 1)/2 via the ladder construction;
/// basis ordered by decreasing magnetic number m = s, s−1, …, −s.
pub fn spin_j_operators(dim: usize) -> Result<(CMatrix, CMatrix, CMatrix)> {
    if dim < 2 {
        return Err(Error::Validation(format!("spin operators need dim >= 2, got {dim}")));
    }
    let s = (dim as f64 - 1.0) / 2.0;
    let m_of = |i: usize| s - i as f64;
    let mut jp = CMatrix::zeros(dim, dim);
    for i in 1..dim {
        let m = m_of(i);
        jp[(i - 1, i)] = Complex64::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
    let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
    let jz = CMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(m_of(i), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok((jx, jy, jz))
}

/// Spin operator along one axis, dimension 2^n (the high-spin encoding of an
/// n-qubit register).
pub fn spin_j_axis(dim: usize, axis: Axis) -> Result<CMatrix> {
    let (jx, jy, jz) = spin_j_operators(dim)?;
    Ok(match axis {
        Axis::X => jx,
        Axis::Y => jy,
        Axis::Z => jz,
    })
}

/// I^{⊗offset} ⊗ op ⊗ I^{⊗(n − offset − m)} for a d×d operator with d = 2^m.
pub fn embed(op: &CMatrix, offset: usize, n_qubits: usize) -> Result<CMatrix> {
    if op.nrows() != op.ncols() {
        return Err(Error::Validation("embed expects a square operator".into()));
    }
    let d = op.nrows();
    if !d.is_power_of_two() {
        return Err(Error::Validation(format!("operator dimension {d} is not a power of two")));
    }
    let m = d.trailing_zeros() as usize;
    if offset + m > n_qubits {
        return Err(Error::Validation(format!(
            "operator on {m} qubits at offset {offset} overflows {n_qubits}-qubit register"
        )));
    }
    checked_pow2(n_qubits)?;
    let left = identity(1 << offset);
    let right = identity(1 << (n_qubits - offset - m));
    Ok(kron(&kron(&left, op), &right))
}

fn checked_pow2(n_qubits: usize) -> Result<usize> {
    let cap = crate::dense_cap();
    if n_qubits > cap {
        return Err(Error::Resource(format!(
            "dense operator on {n_qubits} qubits exceeds cap {cap}"
        )));
    }
    Ok(1usize << n_qubits)
}

/// An ordered family {H_k} of Hermitian 2^n × 2^n matrices with labels
/// recording where each one came from.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    n_qubits: usize,
    operators: Vec<CMatrix>,
    labels: Vec<String>,
}

impl OperatorSet {
    pub fn new(n_qubits: usize, operators: Vec<CMatrix>, labels: Vec<String>) -> Result<OperatorSet> {
        let dim = checked_pow2(n_qubits)?;
        if operators.is_empty() {
            return Err(Error::Validation("empty operator set".into()));
        }
        if labels.len() != operators.len() {
            return Err(Error::Validation("one label per operator required".into()));
        }
        for (i, op) in operators.iter().enumerate() {
            if op.nrows() != dim || op.ncols() != dim {
                return Err(Error::Dimension(format!(
                    "operator {i} is {}×{}, expected {dim}×{dim}",
                    op.nrows(),
                    op.ncols()
                )));
            }
            if !is_hermitian(op, 1e-10) {
                return Err(Error::Domain(format!("operator {i} ('{}') is not Hermitian", labels[i])));
            }
        }
        Ok(OperatorSet {
            n_qubits,
            operators,
            labels,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The three collective spins (J_x, J_y, J_z).
    pub fn collective_spins(n_qubits: usize) -> Result<OperatorSet> {
        Self::collective_axes(n_qubits, &Axis::ALL)
    }

    /// Collective spins along the given axes.
    pub fn collective_axes(n_qubits: usize, axes: &[Axis]) -> Result<OperatorSet> {
        let ops = axes
            .iter()
            .map(|&a| collective_spin(n_qubits, a))
            .collect::<Result<Vec<_>>>()?;
        let labels = axes.iter().map(|a| format!("J{}", a.label())).collect();
        OperatorSet::new(n_qubits, ops, labels)
    }

    /// One (1/2)σ^axis_j per qubit: the local commuting family.
    pub fn local_halved(n_qubits: usize, axis: Axis) -> Result<OperatorSet> {
        let half = Complex64::new(0.5, 0.0);
        let ops = (0..n_qubits)
            .map(|q| local_pauli(n_qubits, q, axis).map(|m| m * half))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..n_qubits)
            .map(|q| format!("s{}_{}/2", axis.label(), q))
            .collect();
        OperatorSet::new(n_qubits, ops, labels)
    }

    /// Spin-(2^n−1)/2 operators along the given axes on the full register.
    pub fn spin_j_axes(n_qubits: usize, axes: &[Axis]) -> Result<OperatorSet> {
        let dim = checked_pow2(n_qubits)?;
        let ops = axes
            .iter()
            .map(|&a| spin_j_axis(dim, a))
            .collect::<Result<Vec<_>>>()?;
        let labels = axes
            .iter()
            .map(|a| format!("spinJ{}[dim{dim}]", a.label()))
            .collect();
        OperatorSet::new(n_qubits, ops, labels)
    }

    /// SU(2^m) generators by index, embedded at `offset`; `scale` is applied
    /// to every matrix (1 for the bare generators, 1/2 for the halved
    /// convention of the local commuting scenarios).
    pub fn sun_embedded(
        n_qubits: usize,
        gen_dim: usize,
        indices: &[usize],
        offset: usize,
        scale: f64,
    ) -> Result<OperatorSet> {
        let basis = su_generators(gen_dim)?;
        let s = Complex64::new(scale, 0.0);
        let mut ops = Vec::with_capacity(indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            let m = basis.matrix(i)?;
            ops.push(embed(&(m * s), offset, n_qubits)?);
            labels.push(format!("su{gen_dim}[{i}]@{offset}{}", if scale == 1.0 { "" } else { "/2" }));
        }
        OperatorSet::new(n_qubits, ops, labels)
    }

    /// SU(2^n) generators on the full register.
    pub fn sun_global(n_qubits: usize, indices: &[usize], scale: f64) -> Result<OperatorSet> {
        let dim = checked_pow2(n_qubits)?;
        Self::sun_embedded(n_qubits, dim, indices, 0, scale)
    }
}

/// Indices of the n symmetric SU(2^n) generators that couple |0…0⟩ to each
/// single-excitation basis state |0…010…0⟩ (qubit order, qubit 0 first).
/// Their graph-state moments do not depend on the edge set, which makes the
/// subset a convenient fixed choice for cross-class comparisons.
pub fn single_excitation_indices(n_qubits: usize) -> Result<Vec<usize>> {
    let dim = checked_pow2(n_qubits)?;
    let basis = su_generators(dim)?;
    (0..n_qubits)
        .map(|j| basis.symmetric_index(0, 1 << (n_qubits - 1 - j)))
        .collect()
}

/// The operator set for [`single_excitation_indices`].
pub fn single_excitation_subset(n_qubits: usize, scale: f64) -> Result<OperatorSet> {
    let indices = single_excitation_indices(n_qubits)?;
    OperatorSet::sun_global(n_qubits, &indices, scale)
}

/// All index triples of pairwise-commuting basis generators, up to `limit`
/// triples (exhaustive when `limit` is `usize::MAX`). Commutation is checked
/// numerically at tolerance 1e-12.
pub fn find_commuting_triples(basis: &GeneratorBasis, limit: usize) -> Vec<[usize; 3]> {
    let m = basis.len();
    let commutes = |a: usize, b: usize| -> bool {
        let ma = &basis.matrices()[a];
        let mb = &basis.matrices()[b];
        max_abs(&(ma * mb - mb * ma)) < 1e-12
    };
    let mut out = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if !commutes(i, j) {
                continue;
            }
            for k in (j + 1)..m {
                if commutes(i, k) && commutes(j, k) {
                    out.push([i, j, k]);
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// First all-diagonal triple when the basis has three diagonals, otherwise
/// the first commuting triple found. Diagonal triples always commute and give
/// graph-independent moments, so they are the documented default.
pub fn default_commuting_triple(basis: &GeneratorBasis) -> Option<[usize; 3]> {
    if basis.dim() >= 4 {
        let d = |k: usize| basis.diagonal_index(k).expect("in range");
        return Some([d(1), d(2), d(3)]);
    }
    find_commuting_triples(basis, 1).first().copied()
}
