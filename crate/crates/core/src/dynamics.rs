//! Parameterized dynamics: H(θ) = Σ_k θ_k H_k, its unitary U = exp(−iH),
//! and the generators ℋ_j = i(∂_j U†)U computed three ways — the exact
//! eigenbasis integral, the truncated nested-commutator series, and the
//! closed form available when the operators close an su(2) algebra.
//!
//! One sign convention is fixed crate-wide: ℋ_j := i(∂_j U†)U, so that at
//! θ → 0 (and for any commuting family) ℋ_j = −H_j. The closed form is
//! normalized to the same convention.

use crate::error::{Error, Result};
use crate::graphs::DensityMatrix;
use crate::linalg::{commutator, eigh, is_hermitian, max_abs, phi_factor, CMatrix};
use crate::sun::OperatorSet;
use num_complex::Complex64;

/// Whether structures are evaluated at the given θ or in the θ → 0 limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    General,
    Limit,
}

/// A parameter vector bound to an operator family.
#[derive(Debug, Clone)]
pub struct DynamicsSpec {
    operators: OperatorSet,
    theta: Vec<f64>,
    mode: EvalMode,
}

impl DynamicsSpec {
    pub fn new(operators: OperatorSet, theta: Vec<f64>) -> Result<DynamicsSpec> {
        if theta.len() != operators.len() {
            return Err(Error::Dimension(format!(
                "{} parameters for {} operators",
                theta.len(),
                operators.len()
            )));
        }
        Ok(DynamicsSpec {
            operators,
            theta,
            mode: EvalMode::General,
        })
    }

    /// θ → 0 evaluation of the same family.
    pub fn limit(operators: OperatorSet) -> DynamicsSpec {
        let d = operators.len();
        DynamicsSpec {
            operators,
            theta: vec![0.0; d],
            mode: EvalMode::Limit,
        }
    }

    pub fn operators(&self) -> &OperatorSet {
        &self.operators
    }

    pub fn theta(&self) -> &[f64] {
        match self.mode {
            EvalMode::General => &self.theta,
            EvalMode::Limit => &self.theta, // zeros by construction
        }
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.operators.dim()
    }

    pub fn param_count(&self) -> usize {
        self.theta.len()
    }

    pub fn with_theta(&self, theta: Vec<f64>) -> Result<DynamicsSpec> {
        DynamicsSpec::new(self.operators.clone(), theta)
    }
}

/// How a set of ℋ_j was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ExactEigen,
    Series(usize),
    ClosedFormSu2,
}

/// The d Hermitian generators ℋ_j of the parameterized family.
#[derive(Debug, Clone)]
pub struct ParamGenerators {
    matrices: Vec<CMatrix>,
    method: Method,
}

impl ParamGenerators {
    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// H(θ) = Σ_k θ_k H_k.
pub fn assemble_hamiltonian(spec: &DynamicsSpec) -> CMatrix {
    let dim = spec.dim();
    let mut h = CMatrix::zeros(dim, dim);
    for (t, op) in spec.theta().iter().zip(spec.operators().operators()) {
        h += op * Complex64::new(*t, 0.0);
    }
    h
}

/// U = exp(−iH) by eigendecomposition H = VΛV†.
pub fn unitary(h: &CMatrix) -> Result<CMatrix> {
    if !is_hermitian(h, 1e-10) {
        return Err(Error::Domain("unitary() expects a Hermitian matrix".into()));
    }
    let (vals, vecs) = eigh(h);
    let phases = CMatrix::from_diagonal(&vals.map(|l| Complex64::new(l.cos(), -l.sin())));
    Ok(&vecs * phases * vecs.adjoint())
}

/// ℋ_j = i(∂_j U†)U for every j, via the eigenbasis integral: with
/// H = VΛV† and Ã = V†(∂_j H)V, (ℋ̃_j)_{ab} = −Ã_{ab} φ(λ_a − λ_b).
pub fn param_generators_exact(spec: &DynamicsSpec) -> Result<ParamGenerators> {
    let h = assemble_hamiltonian(spec);
    let (vals, vecs) = eigh(&h);
    let vdag = vecs.adjoint();
    let matrices = spec
        .operators()
        .operators()
        .iter()
        .map(|dh| {
            let a = &vdag * dh * &vecs;
            let n = a.nrows();
            let scaled = CMatrix::from_fn(n, n, |r, c| -a[(r, c)] * phi_factor(vals[r] - vals[c]));
            &vecs * scaled * &vdag
        })
        .collect();
    Ok(ParamGenerators {
        matrices,
        method: Method::ExactEigen,
    })
}

/// Truncated series ℋ_j = −Σ_{m=0}^{order} i^m/(m+1)! (H^×)^m ∂_j H with a
/// convergence guard ‖term‖ < 1e−14.
pub fn param_generators_series(spec: &DynamicsSpec, order: usize) -> Result<ParamGenerators> {
    let h = assemble_hamiltonian(spec);
    let matrices = spec
        .operators()
        .operators()
        .iter()
        .map(|dh| {
            let mut term = dh.clone(); // (H^×)^m ∂H, starting at m = 0
            let mut coeff = Complex64::new(1.0, 0.0); // i^m/(m+1)!
            let mut acc = term.clone() * coeff;
            for m in 1..=order {
                term = commutator(&h, &term);
                coeff *= Complex64::new(0.0, 1.0) / Complex64::new((m + 1) as f64, 0.0);
                let contribution = &term * coeff;
                acc += &contribution;
                if max_abs(&contribution) < 1e-14 {
                    break;
                }
            }
            -acc
        })
        .collect();
    Ok(ParamGenerators {
        matrices,
        method: Method::Series(order),
    })
}

/// Closed form for families closing an su(2) algebra ([H₁,H₂] = iH₃ and
/// cyclic), normalized to the crate-wide sign convention:
/// ℋ_j = −(∂_jH + (1−cos ξ)/ξ² [iH, ∂_jH] + (1 − sin ξ/ξ)/ξ² [iH,[iH, ∂_jH]])
/// with ξ = ‖θ‖.
pub fn closed_form_su2(spec: &DynamicsSpec) -> Result<ParamGenerators> {
    let ops = spec.operators().operators();
    if ops.len() != 3 {
        return Err(Error::Domain(format!(
            "closed form needs exactly three operators, got {}",
            ops.len()
        )));
    }
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        let comm = commutator(&ops[a], &ops[b]);
        let want = &ops[c] * Complex64::new(0.0, 1.0);
        if crate::linalg::max_abs_diff(&comm, &want) > 1e-10 {
            return Err(Error::Domain(
                "operators do not close an su(2) algebra ([H1,H2] = iH3 and cyclic)".into(),
            ));
        }
    }
    let theta = spec.theta();
    let xi = theta.iter().map(|t| t * t).sum::<f64>().sqrt();
    let (c1, c2) = if xi < 1e-4 {
        (0.5 - xi * xi / 24.0, 1.0 / 6.0 - xi * xi / 120.0)
    } else {
        ((1.0 - xi.cos()) / (xi * xi), (1.0 - xi.sin() / xi) / (xi * xi))
    };
    let h = assemble_hamiltonian(spec);
    let ih = &h * Complex64::new(0.0, 1.0);
    let matrices = ops
        .iter()
        .map(|dh| {
            let c1_term = commutator(&ih, dh);
            let c2_term = commutator(&ih, &c1_term);
            -(dh + c1_term * Complex64::new(c1, 0.0) + c2_term * Complex64::new(c2, 0.0))
        })
        .collect();
    Ok(ParamGenerators {
        matrices,
        method: Method::ClosedFormSu2,
    })
}

/// ρ_θ = U ρ₀ U†.
pub fn evolve(rho0: &DensityMatrix, spec: &DynamicsSpec) -> Result<DensityMatrix> {
    if rho0.dim() != spec.dim() {
        return Err(Error::Dimension(format!(
            "state dimension {} vs operator dimension {}",
            rho0.dim(),
            spec.dim()
        )));
    }
    let u = unitary(&assemble_hamiltonian(spec))?;
    DensityMatrix::new(&u * rho0.entries() * u.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::catalog;
    use crate::linalg::{identity, max_abs_diff};
    use crate::pauli::Axis;
    use crate::sun::{collective_spin, OperatorSet};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent matrix exponential by scaling-and-squaring of the Taylor series.
    fn expm_oracle(a: &CMatrix) -> CMatrix {
        let norm = max_abs(a) * a.nrows() as f64;
        let s = norm.log2().ceil().max(0.0) as u32 + 2;
        let scaled = a / c(2f64.powi(s as i32), 0.0);
        let mut term = identity(a.nrows());
        let mut sum = term.clone();
        for k in 1..=25 {
            term = &term * &scaled / c(k as f64, 0.0);
            sum += &term;
        }
        for _ in 0..s {
            sum = &sum * &sum;
        }
        sum
    }

    fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let m = CMatrix::from_fn(dim, dim, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        (&m + m.adjoint()) * c(0.5, 0.0)
    }

    fn collective_set(n: usize) -> OperatorSet {
        OperatorSet::collective_spins(n).unwrap()
    }

    #[test]
    fn assemble_zero_theta() {
        let spec = DynamicsSpec::new(collective_set(2), vec![0.0; 3]).unwrap();
        assert!(max_abs(&assemble_hamiltonian(&spec)) < 1e-15);
    }

    #[test]
    fn assemble_single_term() {
        let sx = crate::sun::local_pauli(1, 0, Axis::X).unwrap();
        let set = OperatorSet::new(1, vec![sx.clone()], vec!["X".into()]).unwrap();
        let spec = DynamicsSpec::new(set, vec![1.0]).unwrap();
        assert!(max_abs_diff(&assemble_hamiltonian(&spec), &sx) < 1e-15);
    }

    #[test]
    fn assemble_scales_linearly_in_field() {
        let (th, ph) = (0.7f64, 0.3f64);
        let dir = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
        let spec_b = |b: f64| {
            DynamicsSpec::new(collective_set(2), dir.iter().map(|d| b * d).collect()).unwrap()
        };
        let h1 = assemble_hamiltonian(&spec_b(1.0));
        let h3 = assemble_hamiltonian(&spec_b(3.0));
        assert!(max_abs_diff(&h3, &(&h1 * c(3.0, 0.0))) < 1e-12);
    }

    #[test]
    fn unitary_of_zero_is_identity() {
        let u = unitary(&CMatrix::zeros(4, 4)).unwrap();
        assert!(max_abs_diff(&u, &identity(4)) < 1e-12);
    }

    #[test]
    fn unitary_half_pi_x_rotation() {
        let sx = crate::sun::local_pauli(1, 0, Axis::X).unwrap();
        let u = unitary(&(&sx * c(std::f64::consts::FRAC_PI_2, 0.0))).unwrap();
        let want = &sx * c(0.0, -1.0); // exp(−iπσx/2) = −iσx
        assert!(max_abs_diff(&u, &want) < 1e-12);
    }

    #[test]
    fn unitary_rejects_non_hermitian() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(unitary(&m), Err(Error::Domain(_))));
    }

    #[test]
    fn unitary_matches_expm_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let h = random_hermitian(8, &mut rng);
            let u = unitary(&h).unwrap();
            let oracle = expm_oracle(&(&h * c(0.0, -1.0)));
            assert!(max_abs_diff(&u, &oracle) < 1e-10);
            assert!(max_abs_diff(&(&u * u.adjoint()), &identity(8)) < 1e-10);
        }
    }

    #[test]
    fn exact_generators_at_zero_are_minus_ops() {
        let set = collective_set(2);
        let spec = DynamicsSpec::limit(set.clone());
        let gens = param_generators_exact(&spec).unwrap();
        for (g, op) in gens.matrices().iter().zip(set.operators()) {
            assert!(max_abs_diff(g, &(-op)) < 1e-12);
        }
    }

    #[test]
    fn commuting_family_is_theta_independent() {
        let set = OperatorSet::local_halved(3, Axis::X).unwrap();
        for theta in [vec![0.3, -0.2, 0.9], vec![1.5, 0.0, -2.0]] {
            let spec = DynamicsSpec::new(set.clone(), theta).unwrap();
            let gens = param_generators_exact(&spec).unwrap();
            for (g, op) in gens.matrices().iter().zip(set.operators()) {
                assert!(max_abs_diff(g, &(-op)) < 1e-10);
            }
            // every series order gives the same thing
            for order in [0, 3, 20] {
                let s = param_generators_series(&spec, order).unwrap();
                for (g, op) in s.matrices().iter().zip(set.operators()) {
                    assert!(max_abs_diff(g, &(-op)) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn series_order_zero_is_minus_partial() {
        let set = collective_set(2);
        let spec = DynamicsSpec::new(set.clone(), vec![0.4, -0.1, 0.2]).unwrap();
        let gens = param_generators_series(&spec, 0).unwrap();
        for (g, op) in gens.matrices().iter().zip(set.operators()) {
            assert!(max_abs_diff(g, &(-op)) < 1e-12);
        }
    }

    #[test]
    fn series_matches_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let set = collective_set(3);
        for _ in 0..5 {
            let theta: Vec<f64> = (0..3).map(|_| 0.28 * (rng.random::<f64>() - 0.5)).collect();
            let spec = DynamicsSpec::new(set.clone(), theta).unwrap();
            let exact = param_generators_exact(&spec).unwrap();
            let series = param_generators_series(&spec, 20).unwrap();
            for (a, b) in exact.matrices().iter().zip(series.matrices()) {
                assert!(max_abs_diff(a, b) < 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_matches_exact() {
        let set = collective_set(3);
        let spec = DynamicsSpec::new(set, vec![0.3, 0.2, 0.1]).unwrap();
        let exact = param_generators_exact(&spec).unwrap();
        let closed = closed_form_su2(&spec).unwrap();
        for (a, b) in exact.matrices().iter().zip(closed.matrices()) {
            assert!(max_abs_diff(a, b) < 1e-10);
        }
    }

    #[test]
    fn closed_form_small_theta_limit() {
        let set = collective_set(2);
        let jx = collective_spin(2, Axis::X).unwrap();
        let spec = DynamicsSpec::new(set, vec![1e-9, 0.0, 0.0]).unwrap();
        let closed = closed_form_su2(&spec).unwrap();
        assert!(max_abs_diff(&closed.matrices()[0], &(-jx)) < 1e-8);
    }

    #[test]
    fn closed_form_xi_is_rotation_invariant() {
        // equal-norm parameter vectors give the same coefficients; check via
        // agreement with the exact method on both
        let set = collective_set(2);
        for theta in [vec![0.5, 0.0, 0.0], vec![0.3, 0.4, 0.0], vec![0.0, 0.0, 0.5]] {
            let spec = DynamicsSpec::new(set.clone(), theta).unwrap();
            let exact = param_generators_exact(&spec).unwrap();
            let closed = closed_form_su2(&spec).unwrap();
            for (a, b) in exact.matrices().iter().zip(closed.matrices()) {
                assert!(max_abs_diff(a, b) < 1e-10);
            }
        }
    }

    #[test]
    fn closed_form_rejects_wrong_family() {
        let set = OperatorSet::local_halved(3, Axis::X).unwrap();
        let spec = DynamicsSpec::new(set, vec![0.1, 0.2, 0.3]).unwrap();
        assert!(matches!(closed_form_su2(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn generators_are_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let set = collective_set(3);
        for _ in 0..5 {
            let theta: Vec<f64> = (0..3).map(|_| rng.random::<f64>() - 0.5).collect();
            let spec = DynamicsSpec::new(set.clone(), theta).unwrap();
            for g in param_generators_exact(&spec).unwrap().matrices() {
                assert!(max_abs_diff(g, &g.adjoint()) < 1e-10);
            }
        }
    }

    #[test]
    fn evolve_identity_at_zero_and_purity() {
        let g = catalog("complete", 3).unwrap();
        let rho = g.state_stabilizer().unwrap();
        let set = collective_set(3);
        let spec = DynamicsSpec::new(set.clone(), vec![0.0; 3]).unwrap();
        let out = evolve(&rho, &spec).unwrap();
        assert!(max_abs_diff(out.entries(), rho.entries()) < 1e-12);
        let spec = DynamicsSpec::new(set, vec![0.7, -0.3, 0.4]).unwrap();
        let out = evolve(&rho, &spec).unwrap();
        assert!((out.purity() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn evolve_derivative_matches_commutator_form() {
        // ∂_j ρ_θ ≈ i U [ℋ_j, ρ₀] U† by central differences
        let g = catalog("complete", 2).unwrap();
        let rho = g.state_stabilizer().unwrap();
        let set = collective_set(2);
        let theta = vec![0.2, 0.1, -0.3];
        let spec = DynamicsSpec::new(set.clone(), theta.clone()).unwrap();
        let gens = param_generators_exact(&spec).unwrap();
        let u = unitary(&assemble_hamiltonian(&spec)).unwrap();
        let eps = 1e-5;
        for j in 0..3 {
            let mut tp = theta.clone();
            tp[j] += eps;
            let mut tm = theta.clone();
            tm[j] -= eps;
            let rp = evolve(&rho, &spec.with_theta(tp).unwrap()).unwrap();
            let rm = evolve(&rho, &spec.with_theta(tm).unwrap()).unwrap();
            let fd = (rp.entries() - rm.entries()) / c(2.0 * eps, 0.0);
            let analytic =
                &u * commutator(&gens.matrices()[j], rho.entries()) * u.adjoint() * c(0.0, 1.0);
            assert!(max_abs_diff(&fd, &analytic) < 1e-6, "j = {j}");
        }
    }

    #[test]
    fn evolve_rejects_dimension_mismatch() {
        let g = catalog("complete", 2).unwrap();
        let rho = g.state_stabilizer().unwrap();
        let spec = DynamicsSpec::new(collective_set(3), vec![0.0; 3]).unwrap();
        assert!(matches!(evolve(&rho, &spec), Err(Error::Dimension(_))));
    }
}
