//! Quantum Fisher information: the QFIM and its diagnostics, single-parameter
//! QFI, the θ → 0 limit form, closed-form neighborhood rules for local Pauli
//! dynamics, block-grouped encodings, averaged QFI, the Cramér-Rao bound, the
//! commutator attainability certificate, and the pure-state SLD oracle.

use crate::dynamics::ParamGenerators;
use crate::error::{Error, Result};
use crate::graphs::{DensityMatrix, Graph};
use crate::linalg::{trace_product, CMatrix};
use crate::pauli::Axis;
use crate::sun::OperatorSet;
use nalgebra::{DMatrix, DVector};

/// Purity slack accepted by the pure-state formulas.
pub const PURITY_TOL: f64 = 1e-8;

/// Relative singular-value threshold deciding invertibility.
pub const CONDITION_TOL: f64 = 1e-10;

/// A d×d QFIM with rank/invertibility diagnostics, the CRB trace when it
/// exists, and the worst pairwise commutator expectation (zero certifies a
/// saturable bound).
#[derive(Debug, Clone)]
pub struct QfimResult {
    pub matrix: DMatrix<f64>,
    pub rank: usize,
    pub invertible: bool,
    /// Tr(F⁻¹); present iff `invertible`.
    pub crb_trace: Option<f64>,
    /// max_{j<k} |Tr(ρ₀ [ℋ_j, ℋ_k])|.
    pub attainability: f64,
    /// Orthonormal basis of the null space (empty when invertible).
    pub null_space: Vec<Vec<f64>>,
}

impl QfimResult {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

fn purity_check(rho: &DensityMatrix) -> Result<()> {
    if !rho.is_pure(PURITY_TOL) {
        return Err(Error::Domain(format!(
            "pure-state formula on a mixed state (purity {})",
            rho.purity()
        )));
    }
    Ok(())
}

/// 4×(symmetrized covariance) of `ops` in `rho`, plus the worst pairwise
/// commutator expectation magnitude.
fn covariance_matrix(rho: &CMatrix, ops: &[CMatrix]) -> Result<(DMatrix<f64>, f64)> {
    let d = ops.len();
    let dim = rho.nrows();
    for (i, op) in ops.iter().enumerate() {
        if op.nrows() != dim || op.ncols() != dim {
            return Err(Error::Dimension(format!(
                "operator {i} is {}×{}, state is {dim}×{dim}",
                op.nrows(),
                op.ncols()
            )));
        }
    }
    // M_k = H_k ρ, so Tr(H_j H_k ρ) = Tr(H_j M_k)
    let products: Vec<CMatrix> = ops.iter().map(|op| op * rho).collect();
    let means: Vec<f64> = products.iter().map(|m| m.trace().re).collect();
    let mut f = DMatrix::zeros(d, d);
    let mut worst_comm: f64 = 0.0;
    for j in 0..d {
        for k in j..d {
            let t = trace_product(&ops[j], &products[k]);
            let val = 4.0 * (t.re - means[j] * means[k]);
            f[(j, k)] = val;
            f[(k, j)] = val;
            if k > j {
                // Tr(ρ [H_j, H_k]) = 2i Im Tr(ρ H_j H_k)
                worst_comm = worst_comm.max(2.0 * t.im.abs());
            }
        }
    }
    Ok((f, worst_comm))
}

fn diagnostics(matrix: DMatrix<f64>, attainability: f64) -> QfimResult {
    let d = matrix.nrows();
    let sym = (&matrix + matrix.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::new(sym);
    let max_abs_eig = eig.eigenvalues.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let cutoff = CONDITION_TOL * max_abs_eig.max(f64::MIN_POSITIVE);
    let mut rank = 0;
    let mut crb_trace = 0.0;
    let mut null_space = Vec::new();
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam.abs() > cutoff {
            rank += 1;
            crb_trace += 1.0 / lam;
        } else {
            null_space.push(eig.eigenvectors.column(i).iter().copied().collect());
        }
    }
    let invertible = rank == d;
    QfimResult {
        matrix,
        rank,
        invertible,
        crb_trace: invertible.then_some(crb_trace),
        attainability,
        null_space,
    }
}

/// QFIM of a pure state: F_jk = 4(Re Tr(ℋ_j ℋ_k ρ₀) − Tr(ℋ_j ρ₀) Tr(ℋ_k ρ₀)).
pub fn qfim(rho0: &DensityMatrix, gens: &ParamGenerators) -> Result<QfimResult> {
    purity_check(rho0)?;
    let (f, comm) = covariance_matrix(rho0.entries(), gens.matrices())?;
    Ok(diagnostics(f, comm))
}

/// θ → 0 limit QFIM, evaluated with the bare operators H_k.
pub fn qfim_limit(rho0: &DensityMatrix, ops: &OperatorSet) -> Result<QfimResult> {
    purity_check(rho0)?;
    let (f, comm) = covariance_matrix(rho0.entries(), ops.operators())?;
    Ok(diagnostics(f, comm))
}

/// Single-parameter QFI: F = 4(Tr(ρ₀ H²) − Tr(ρ₀ H)²).
pub fn qfi_single(rho0: &DensityMatrix, h: &CMatrix) -> Result<f64> {
    purity_check(rho0)?;
    let (f, _) = covariance_matrix(rho0.entries(), std::slice::from_ref(h))?;
    Ok(f[(0, 0)])
}

/// Closed-form QFIM for local (1/2)σ^axis dynamics on a graph state:
/// diagonal 1; X couples vertex pairs with identical neighborhoods, Y couples
/// adjacent pairs whose neighborhoods agree after swapping the two vertices
/// (N(j) Δ {k} = N(k) Δ {j} over GF(2)), Z couples nothing.
pub fn qfim_neighborhood_rule(g: &Graph, axis: Axis) -> Result<DMatrix<f64>> {
    if !g.no_isolated() {
        return Err(Error::Domain(format!(
            "neighborhood rule needs no isolated vertices (found {:?})",
            g.isolated_vertices()
        )));
    }
    let n = g.n();
    let mut f = DMatrix::identity(n, n);
    if matches!(axis, Axis::Z) {
        return Ok(f);
    }
    for j in 0..n {
        for k in (j + 1)..n {
            let coupled = match axis {
                Axis::X => g.neighbors(j) == g.neighbors(k),
                Axis::Y => g.neighbors(j) ^ (1 << k) == g.neighbors(k) ^ (1 << j),
                Axis::Z => unreachable!(),
            };
            if coupled {
                f[(j, k)] = 1.0;
                f[(k, j)] = 1.0;
            }
        }
    }
    Ok(f)
}

/// Block-summed QFIM for parameters encoded on disjoint vertex sets S_j:
/// J_{jm} = Σ_{k∈S_j} Σ_{l∈S_m} F_{kl} with F from the neighborhood rule.
/// The diagonal is the QFI of the subgraph encoding.
pub fn qfim_grouped(g: &Graph, partition: &[Vec<usize>], axis: Axis) -> Result<DMatrix<f64>> {
    let n = g.n();
    let mut seen = vec![false; n];
    for block in partition {
        if block.is_empty() {
            return Err(Error::Validation("empty partition block".into()));
        }
        for &v in block {
            if v >= n {
                return Err(Error::Validation(format!("vertex {v} out of range for n = {n}")));
            }
            if seen[v] {
                return Err(Error::Validation(format!("vertex {v} appears in two blocks")));
            }
            seen[v] = true;
        }
    }
    let rule = qfim_neighborhood_rule(g, axis)?;
    let d = partition.len();
    let mut j = DMatrix::zeros(d, d);
    for (a, sa) in partition.iter().enumerate() {
        for (b, sb) in partition.iter().enumerate() {
            let mut sum = 0.0;
            for &k in sa {
                for &l in sb {
                    sum += rule[(k, l)];
                }
            }
            j[(a, b)] = sum;
        }
    }
    Ok(j)
}

/// Averaged QFI: (4/|ops|) Σ_j (⟨H_j²⟩ − ⟨H_j⟩²). For the three collective
/// spins this is the usual multiparticle-entanglement witness with its 4/3
/// prefactor.
pub fn f_ave(rho0: &DensityMatrix, ops: &OperatorSet) -> Result<f64> {
    purity_check(rho0)?;
    let (f, _) = covariance_matrix(rho0.entries(), ops.operators())?;
    let d = ops.len() as f64;
    Ok(f.diagonal().iter().sum::<f64>() / d)
}

/// Total-variance Cramér-Rao bound Tr(F⁻¹)/μ for μ repetitions.
pub fn crb(result: &QfimResult, mu: u64) -> Result<f64> {
    if mu == 0 {
        return Err(Error::Validation("repetition count must be at least 1".into()));
    }
    match result.crb_trace {
        Some(t) => Ok(t / mu as f64),
        None => Err(Error::SingularQfim {
            rank: result.rank,
            dim: result.dim(),
            null_space: result.null_space.clone(),
        }),
    }
}

/// max_{j<k} |Tr(ρ₀ [ℋ_j, ℋ_k])|; values below tolerance certify that the
/// multiparameter bound is saturable.
pub fn attainability(rho0: &DensityMatrix, gens: &ParamGenerators) -> Result<f64> {
    purity_check(rho0)?;
    let (_, comm) = covariance_matrix(rho0.entries(), gens.matrices())?;
    Ok(comm)
}

/// Pure-state SLDs L_j = 2 ∂_j ρ_θ. Each derivative must be Hermitian and
/// traceless; ρ_θ must be pure. The result feeds [`qfim_from_sld`] as an
/// independent route to the QFIM.
pub fn sld_pure(rho_theta: &DensityMatrix, drho: &[CMatrix]) -> Result<Vec<CMatrix>> {
    purity_check(rho_theta)?;
    let dim = rho_theta.dim();
    let mut out = Vec::with_capacity(drho.len());
    for (j, d) in drho.iter().enumerate() {
        if d.nrows() != dim || d.ncols() != dim {
            return Err(Error::Dimension(format!("derivative {j} has wrong dimension")));
        }
        if !crate::linalg::is_hermitian(d, 1e-10) {
            return Err(Error::Domain(format!("derivative {j} is not Hermitian")));
        }
        if d.trace().norm() > 1e-10 {
            return Err(Error::Domain(format!("derivative {j} is not traceless")));
        }
        out.push(d * num_complex::Complex64::new(2.0, 0.0));
    }
    Ok(out)
}

/// F_jk = Re Tr(ρ_θ L_j L_k): the SLD route to the QFIM.
pub fn qfim_from_sld(rho_theta: &DensityMatrix, slds: &[CMatrix]) -> Result<DMatrix<f64>> {
    let d = slds.len();
    // Tr(ρ L_j L_k) = Tr(L_j (L_k ρ)) by cyclicity
    let products: Vec<CMatrix> = slds.iter().map(|l| l * rho_theta.entries()).collect();
    let mut f = DMatrix::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            f[(j, k)] = trace_product(&slds[j], &products[k]).re;
        }
    }
    Ok(f)
}

/// Eigenvalues of a real symmetric matrix, ascending (diagnostic helper).
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> DVector<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let mut vals = nalgebra::SymmetricEigen::new(sym).eigenvalues;
    vals.as_mut_slice().sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{param_generators_exact, DynamicsSpec};
    use crate::graphs::{catalog, Graph};
    use crate::sun::{spin_j_axis, OperatorSet};

    fn complete_state(n: usize) -> DensityMatrix {
        catalog("complete", n).unwrap().state_stabilizer().unwrap()
    }

    #[test]
    fn local_x_on_complete_three_is_identity() {
        let rho = complete_state(3);
        let set = OperatorSet::local_halved(3, Axis::X).unwrap();
        let spec = DynamicsSpec::new(set, vec![0.4, -0.2, 0.7]).unwrap();
        let gens = param_generators_exact(&spec).unwrap();
        let r = qfim(&rho, &gens).unwrap();
        assert!((&r.matrix - DMatrix::<f64>::identity(3, 3)).abs().max() < 1e-10);
        assert!(r.invertible);
        assert!((r.crb_trace.unwrap() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn local_y_on_complete_three_is_all_ones() {
        let rho = complete_state(3);
        let set = OperatorSet::local_halved(3, Axis::Y).unwrap();
        let r = qfim_limit(&rho, &set).unwrap();
        assert!(r.matrix.iter().all(|&v| (v - 1.0).abs() < 1e-10));
        assert_eq!(r.rank, 1);
        assert!(!r.invertible);
        assert!(r.crb_trace.is_none());
        assert_eq!(r.null_space.len(), 2);
    }

    #[test]
    fn collective_limit_is_diag_3_9_3() {
        let rho = complete_state(3);
        let set = OperatorSet::collective_spins(3).unwrap();
        let r = qfim_limit(&rho, &set).unwrap();
        let want = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 9.0, 3.0]));
        assert!((&r.matrix - want).abs().max() < 1e-10);
        assert!((crb(&r, 1).unwrap() - 7.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn limit_matches_small_theta_exact() {
        let rho = complete_state(3);
        let set = OperatorSet::collective_spins(3).unwrap();
        let limit = qfim_limit(&rho, &set).unwrap();
        let spec = DynamicsSpec::new(set, vec![1e-6; 3]).unwrap();
        let gens = param_generators_exact(&spec).unwrap();
        let at_eps = qfim(&rho, &gens).unwrap();
        assert!((&limit.matrix - &at_eps.matrix).abs().max() < 1e-4);
    }

    #[test]
    fn two_qubit_collective_xz_limit() {
        // XZ and ZX are stabilizers of the edge graph, so the cross moment
        // survives: the limit QFIM is [[2, 2], [2, 2]], not diagonal.
        let rho = complete_state(2);
        let set = OperatorSet::collective_axes(2, &[Axis::X, Axis::Z]).unwrap();
        let r = qfim_limit(&rho, &set).unwrap();
        for v in r.matrix.iter() {
            assert!((v - 2.0).abs() < 1e-12);
        }
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn qfi_heisenberg_and_sql_values() {
        let rho3 = complete_state(3);
        let jy = crate::sun::collective_spin(3, Axis::Y).unwrap();
        assert!((qfi_single(&rho3, &jy).unwrap() - 9.0).abs() < 1e-10);
        let rho4 = complete_state(4);
        for axis in [Axis::X, Axis::Z] {
            let j = crate::sun::collective_spin(4, axis).unwrap();
            assert!((qfi_single(&rho4, &j).unwrap() - 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn qfi_big_spin_beats_heisenberg() {
        let rho3 = complete_state(3);
        let jy = spin_j_axis(8, Axis::Y).unwrap();
        let f = qfi_single(&rho3, &jy).unwrap();
        assert!(f > 9.0);
        assert!((f - 15.379_661_545_128_69).abs() < 1e-9);
    }

    #[test]
    fn qfim_rejects_mixed_state() {
        let dim = 4;
        let mixed = DensityMatrix::new(crate::linalg::identity(dim) * num_complex::Complex64::new(0.25, 0.0)).unwrap();
        let set = OperatorSet::collective_spins(2).unwrap();
        assert!(matches!(qfim_limit(&mixed, &set), Err(Error::Domain(_))));
    }

    #[test]
    fn neighborhood_rule_star_leaves() {
        // star on 4 vertices: the three leaves share the neighborhood {0}
        let g = catalog("star", 4).unwrap();
        let f = qfim_neighborhood_rule(&g, Axis::X).unwrap();
        for j in 1..4 {
            for k in 1..4 {
                assert_eq!(f[(j, k)], 1.0);
            }
            assert_eq!(f[(0, j)], 0.0);
        }
    }

    #[test]
    fn neighborhood_rule_complete_y_all_ones() {
        let g = catalog("complete", 3).unwrap();
        let f = qfim_neighborhood_rule(&g, Axis::Y).unwrap();
        assert!(f.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn neighborhood_rule_chain_x_identity() {
        let g = catalog("chain", 4).unwrap();
        let f = qfim_neighborhood_rule(&g, Axis::X).unwrap();
        assert_eq!(f, DMatrix::identity(4, 4));
        let fz = qfim_neighborhood_rule(&g, Axis::Z).unwrap();
        assert_eq!(fz, DMatrix::identity(4, 4));
    }

    #[test]
    fn neighborhood_rule_rejects_isolated() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(qfim_neighborhood_rule(&g, Axis::X), Err(Error::Domain(_))));
    }

    #[test]
    fn grouped_singletons_reduce_to_rule() {
        let g = catalog("chain", 4).unwrap();
        let singles: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
        let j = qfim_grouped(&g, &singles, Axis::X).unwrap();
        assert_eq!(j, qfim_neighborhood_rule(&g, Axis::X).unwrap());
    }

    #[test]
    fn grouped_full_block_is_collective_qfi() {
        let g = catalog("complete", 4).unwrap();
        let j = qfim_grouped(&g, &[vec![0, 1, 2, 3]], Axis::X).unwrap();
        assert_eq!(j.nrows(), 1);
        assert!((j[(0, 0)] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn grouped_blocks_match_dense_evaluation() {
        let g = catalog("chain", 4).unwrap();
        let partition = vec![vec![0, 1], vec![2, 3]];
        let j = qfim_grouped(&g, &partition, Axis::X).unwrap();
        // dense route: H_j = (1/2) Σ_{k∈S_j} σ^x_k
        let rho = g.state_stabilizer().unwrap();
        let half = num_complex::Complex64::new(0.5, 0.0);
        let ops: Vec<CMatrix> = partition
            .iter()
            .map(|block| {
                let mut sum = CMatrix::zeros(16, 16);
                for &v in block {
                    sum += crate::sun::local_pauli(4, v, Axis::X).unwrap();
                }
                sum * half
            })
            .collect();
        let set = OperatorSet::new(4, ops, vec!["b0".into(), "b1".into()]).unwrap();
        let dense = qfim_limit(&rho, &set).unwrap();
        assert!((&j - &dense.matrix).abs().max() < 1e-10);
    }

    #[test]
    fn grouped_rejects_overlap() {
        let g = catalog("chain", 4).unwrap();
        let res = qfim_grouped(&g, &[vec![0, 1], vec![1, 2]], Axis::X);
        assert!(matches!(res, Err(Error::Validation(_))));
    }

    #[test]
    fn f_ave_complete_and_long_chain() {
        for n in 2..=5 {
            let rho = complete_state(n);
            let set = OperatorSet::collective_spins(n).unwrap();
            let want = (n * n + 2 * n) as f64 / 3.0;
            assert!((f_ave(&rho, &set).unwrap() - want).abs() < 1e-10, "complete n = {n}");
        }
        for n in 4..=6 {
            let rho = catalog("chain", n).unwrap().state_stabilizer().unwrap();
            let set = OperatorSet::collective_spins(n).unwrap();
            assert!((f_ave(&rho, &set).unwrap() - n as f64).abs() < 1e-10, "chain n = {n}");
        }
    }

    #[test]
    fn f_ave_short_chains_exceed_n() {
        // the 2-chain is the complete graph K2 and the 3-chain is the 3-star;
        // both carry more than the long-chain average
        let rho2 = catalog("chain", 2).unwrap().state_stabilizer().unwrap();
        let set2 = OperatorSet::collective_spins(2).unwrap();
        assert!((f_ave(&rho2, &set2).unwrap() - 8.0 / 3.0).abs() < 1e-10);
        let rho3 = catalog("chain", 3).unwrap().state_stabilizer().unwrap();
        let set3 = OperatorSet::collective_spins(3).unwrap();
        assert!((f_ave(&rho3, &set3).unwrap() - 11.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn f_ave_class_invariant_under_full_register_generators() {
        let set = crate::sun::single_excitation_subset(4, 1.0).unwrap();
        let values: Vec<f64> = crate::graphs::FOUR_VERTEX_CLASSES
            .iter()
            .map(|name| {
                let rho = catalog(name, 4).unwrap().state_stabilizer().unwrap();
                f_ave(&rho, &set).unwrap()
            })
            .collect();
        for v in &values {
            assert!((v - values[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn crb_values_and_singularity() {
        let id = diagnostics(DMatrix::identity(3, 3), 0.0);
        assert!((crb(&id, 1).unwrap() - 3.0).abs() < 1e-12);
        assert!((crb(&id, 4).unwrap() - 0.75).abs() < 1e-12);
        let d = diagnostics(
            DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 9.0, 3.0])),
            0.0,
        );
        assert!((crb(&d, 1).unwrap() - 7.0 / 9.0).abs() < 1e-12);
        let ones = diagnostics(DMatrix::from_element(3, 3, 1.0), 0.0);
        match crb(&ones, 1) {
            Err(Error::SingularQfim { rank, dim, null_space }) => {
                assert_eq!(rank, 1);
                assert_eq!(dim, 3);
                assert_eq!(null_space.len(), 2);
            }
            other => panic!("expected singular error, got {other:?}"),
        }
        assert!(matches!(crb(&id, 0), Err(Error::Validation(_))));
    }

    #[test]
    fn attainability_cases() {
        let rho = complete_state(3);
        // commuting family: exactly zero up to rounding
        let set = OperatorSet::local_halved(3, Axis::X).unwrap();
        let spec = DynamicsSpec::new(set, vec![0.3, 0.1, -0.4]).unwrap();
        let gens = param_generators_exact(&spec).unwrap();
        assert!(attainability(&rho, &gens).unwrap() < 1e-12);
        // collective spins at small theta: below 1e-2
        let set = OperatorSet::collective_spins(3).unwrap();
        let spec = DynamicsSpec::new(set, vec![1e-3; 3]).unwrap();
        let gens = param_generators_exact(&spec).unwrap();
        assert!(attainability(&rho, &gens).unwrap() < 1e-2);
        // single parameter: no pairs
        let jy = crate::sun::collective_spin(3, Axis::Y).unwrap();
        let set = OperatorSet::new(3, vec![jy], vec!["Jy".into()]).unwrap();
        let spec = DynamicsSpec::new(set, vec![0.2]).unwrap();
        let gens = param_generators_exact(&spec).unwrap();
        assert_eq!(attainability(&rho, &gens).unwrap(), 0.0);
    }

    #[test]
    fn sld_oracle_matches_qfim() {
        // theta = 0, local x: the SLD route reproduces the neighborhood rule.
        // chain(4) has all-distinct neighborhoods (identity QFIM); chain(3)
        // does not (its endpoints share the middle vertex), so its QFIM picks
        // up the off-diagonal pair.
        for n in [3usize, 4] {
            let g = catalog("chain", n).unwrap();
            let rho = g.state_stabilizer().unwrap();
            let set = OperatorSet::local_halved(n, Axis::X).unwrap();
            // at theta = 0 the derivative is i[ℋ_j, ρ] with ℋ_j = −H_j
            let i = num_complex::Complex64::new(0.0, 1.0);
            let drho: Vec<CMatrix> = set
                .operators()
                .iter()
                .map(|h| (rho.entries() * h - h * rho.entries()) * i)
                .collect();
            let slds = sld_pure(&rho, &drho).unwrap();
            let f = qfim_from_sld(&rho, &slds).unwrap();
            let rule = qfim_neighborhood_rule(&g, Axis::X).unwrap();
            assert!((&f - &rule).abs().max() < 1e-10, "n = {n}");
        }
        let rule3 = qfim_neighborhood_rule(&catalog("chain", 3).unwrap(), Axis::X).unwrap();
        assert_eq!(rule3[(0, 2)], 1.0);
        let rule4 = qfim_neighborhood_rule(&catalog("chain", 4).unwrap(), Axis::X).unwrap();
        assert_eq!(rule4, DMatrix::identity(4, 4));
    }

    #[test]
    fn sld_single_parameter_heisenberg() {
        let rho = complete_state(3);
        let jy = crate::sun::collective_spin(3, Axis::Y).unwrap();
        let i = num_complex::Complex64::new(0.0, 1.0);
        let drho = (rho.entries() * &jy - &jy * rho.entries()) * i;
        let slds = sld_pure(&rho, std::slice::from_ref(&drho)).unwrap();
        let f = qfim_from_sld(&rho, &slds).unwrap();
        assert!((f[(0, 0)] - 9.0).abs() < 1e-10);
    }

    #[test]
    fn sld_zero_derivative() {
        let rho = complete_state(2);
        let zero = CMatrix::zeros(4, 4);
        let slds = sld_pure(&rho, std::slice::from_ref(&zero)).unwrap();
        let f = qfim_from_sld(&rho, &slds).unwrap();
        assert_eq!(f[(0, 0)], 0.0);
    }

    #[test]
    fn sld_rejects_bad_inputs() {
        let rho = complete_state(2);
        let mut not_herm = CMatrix::zeros(4, 4);
        not_herm[(0, 1)] = num_complex::Complex64::new(1.0, 0.0);
        assert!(sld_pure(&rho, std::slice::from_ref(&not_herm)).is_err());
        let not_traceless = crate::linalg::identity(4);
        assert!(sld_pure(&rho, std::slice::from_ref(&not_traceless)).is_err());
    }
}
