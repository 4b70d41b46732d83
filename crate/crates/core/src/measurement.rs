//! POVMs, outcome distributions, and the classical Fisher information matrix
//! of a fixed measurement, with the analytic commutator route for the
//! probability derivatives.

use crate::dynamics::{assemble_hamiltonian, param_generators_exact, unitary, DynamicsSpec};
use crate::error::{Error, Result};
use crate::graphs::DensityMatrix;
use crate::linalg::{commutator, identity, is_hermitian, max_abs_diff, trace_product, CMatrix, CVector};
use crate::metrology::{qfim, symmetric_eigenvalues, QfimResult};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Outcomes with probability below this are excluded from the CFIM sum and
/// reported as dropped; at the operating points of interest every informative
/// outcome sits well above it.
pub const PROBABILITY_GUARD: f64 = 1e-12;

/// A positive operator-valued measure: PSD elements summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Povm> {
        let dim = match elements.first() {
            Some(e) => e.nrows(),
            None => return Err(Error::Validation("POVM needs at least one element".into())),
        };
        let mut sum = CMatrix::zeros(dim, dim);
        for (m, el) in elements.iter().enumerate() {
            if el.nrows() != dim || el.ncols() != dim {
                return Err(Error::Dimension(format!("POVM element {m} has mismatched dimension")));
            }
            if !is_hermitian(el, 1e-10) {
                return Err(Error::Domain(format!("POVM element {m} is not Hermitian")));
            }
            let eig = nalgebra::SymmetricEigen::new(el.clone());
            if eig.eigenvalues.iter().any(|&l| l < -1e-10) {
                return Err(Error::Domain(format!("POVM element {m} is not positive semidefinite")));
            }
            sum += el;
        }
        if max_abs_diff(&sum, &identity(dim)) > 1e-10 {
            return Err(Error::Domain("POVM elements do not sum to the identity".into()));
        }
        Ok(Povm { elements })
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The four Bell projectors, ordered (|00⟩+|11⟩), (|00⟩−|11⟩),
/// (|01⟩+|10⟩), (|01⟩−|10⟩), all over √2.
pub fn bell_basis() -> Povm {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let vecs = [
        [s, Complex64::ZERO, Complex64::ZERO, s],
        [s, Complex64::ZERO, Complex64::ZERO, -s],
        [Complex64::ZERO, s, s, Complex64::ZERO],
        [Complex64::ZERO, s, -s, Complex64::ZERO],
    ];
    let elements = vecs
        .iter()
        .map(|v| {
            let ket = CVector::from_row_slice(v);
            &ket * ket.adjoint()
        })
        .collect();
    Povm::new(elements).expect("Bell projectors form a POVM")
}

/// Projectors onto the computational basis of an n-qubit register.
pub fn computational_basis(n_qubits: usize) -> Result<Povm> {
    let cap = crate::dense_cap();
    if n_qubits > cap {
        return Err(Error::Resource(format!(
            "computational basis on {n_qubits} qubits exceeds cap {cap}"
        )));
    }
    let dim = 1usize << n_qubits;
    let elements = (0..dim)
        .map(|b| {
            let mut m = CMatrix::zeros(dim, dim);
            m[(b, b)] = Complex64::ONE;
            m
        })
        .collect();
    Povm::new(elements)
}

/// Born-rule outcome distribution p_m = Tr(Π_m ρ), clamped at zero and
/// renormalized to unit sum.
pub fn probabilities(rho: &DensityMatrix, povm: &Povm) -> Result<Vec<f64>> {
    if rho.dim() != povm.dim() {
        return Err(Error::Dimension(format!(
            "state dimension {} vs POVM dimension {}",
            rho.dim(),
            povm.dim()
        )));
    }
    let mut ps: Vec<f64> = povm
        .elements()
        .iter()
        .map(|el| trace_product(el, rho.entries()).re)
        .collect();
    for p in &mut ps {
        if *p < -1e-12 {
            return Err(Error::Domain(format!("outcome probability {p} below tolerance")));
        }
        *p = p.max(0.0);
    }
    let total: f64 = ps.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateMeasurement);
    }
    for p in &mut ps {
        *p /= total;
    }
    Ok(ps)
}

/// CFIM of a fixed measurement, with the evaluation-point distribution and
/// the indices excluded by the probability guard.
#[derive(Debug, Clone)]
pub struct CfimResult {
    pub matrix: DMatrix<f64>,
    pub probabilities: Vec<f64>,
    pub dropped_outcomes: Vec<usize>,
}

/// 𝓕c_jk = Σ_m (∂_j p_m)(∂_k p_m)/p_m with ∂_j p_m = Tr(Π_m · iU[ℋ_j, ρ₀]U†).
pub fn cfim(rho0: &DensityMatrix, spec: &DynamicsSpec, povm: &Povm) -> Result<CfimResult> {
    if rho0.dim() != spec.dim() {
        return Err(Error::Dimension("state vs dynamics dimension".into()));
    }
    if rho0.dim() != povm.dim() {
        return Err(Error::Dimension("state vs POVM dimension".into()));
    }
    let u = unitary(&assemble_hamiltonian(spec))?;
    let rho_theta = DensityMatrix::new(&u * rho0.entries() * u.adjoint())?;
    let ps = probabilities(&rho_theta, povm)?;
    let gens = param_generators_exact(spec)?;
    let i = Complex64::new(0.0, 1.0);
    let drho: Vec<CMatrix> = gens
        .matrices()
        .iter()
        .map(|h| &u * commutator(h, rho0.entries()) * u.adjoint() * i)
        .collect();
    let d = drho.len();
    let mut dropped = Vec::new();
    let mut kept = Vec::new();
    for (m, &p) in ps.iter().enumerate() {
        if p < PROBABILITY_GUARD {
            dropped.push(m);
        } else {
            kept.push((m, p));
        }
    }
    if kept.is_empty() {
        return Err(Error::DegenerateMeasurement);
    }
    let mut matrix = DMatrix::zeros(d, d);
    for &(m, p) in &kept {
        let dp: Vec<f64> = drho
            .iter()
            .map(|dr| trace_product(&povm.elements()[m], dr).re)
            .collect();
        for j in 0..d {
            for k in 0..d {
                matrix[(j, k)] += dp[j] * dp[k] / p;
            }
        }
    }
    Ok(CfimResult {
        matrix,
        probabilities: ps,
        dropped_outcomes: dropped,
    })
}

/// Side-by-side CFIM and QFIM with the entrywise gap and the eigenvalues of
/// the information slack F − F_c (all nonnegative when the measurement is
/// optimal up to tolerance).
#[derive(Debug, Clone)]
pub struct CfimComparison {
    pub cfim: CfimResult,
    pub qfim: QfimResult,
    pub max_entry_diff: f64,
    pub slack_eigenvalues: Vec<f64>,
}

pub fn cfim_vs_qfim(rho0: &DensityMatrix, spec: &DynamicsSpec, povm: &Povm) -> Result<CfimComparison> {
    let c = cfim(rho0, spec, povm)?;
    let gens = param_generators_exact(spec)?;
    let q = qfim(rho0, &gens)?;
    let slack = &q.matrix - &c.matrix;
    let max_entry_diff = slack.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let slack_eigenvalues = symmetric_eigenvalues(&slack).iter().copied().collect();
    Ok(CfimComparison {
        cfim: c,
        qfim: q,
        max_entry_diff,
        slack_eigenvalues,
    })
}

/// Parse the POVM text format:
/// ```text
/// # comments and blank lines are ignored
/// dim 4
/// elements 2
/// element
/// 1,0 0,0 0,0 0,0
/// ...three more rows...
/// element
/// ...
/// ```
/// Each matrix row lists `dim` entries "re,im", row-major.
pub fn parse_povm(text: &str) -> Result<Povm> {
    let mut dim: Option<usize> = None;
    let mut declared: Option<usize> = None;
    let mut elements: Vec<CMatrix> = Vec::new();
    let mut current: Vec<Vec<Complex64>> = Vec::new();
    let mut in_element = false;

    let finish = |current: &mut Vec<Vec<Complex64>>, elements: &mut Vec<CMatrix>, dim: usize, line: usize| -> Result<()> {
        if current.len() != dim {
            return Err(Error::Parse {
                line,
                msg: format!("element has {} rows, expected {dim}", current.len()),
            });
        }
        let flat: Vec<Complex64> = current.iter().flatten().copied().collect();
        elements.push(CMatrix::from_row_slice(dim, dim, &flat));
        current.clear();
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut it = body.split_whitespace();
        let head = it.next().unwrap();
        match head {
            "dim" => {
                let v = it
                    .next()
                    .ok_or(Error::Parse { line, msg: "expected a dimension".into() })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse { line, msg: format!("bad dimension: {e}") })?;
                if v == 0 {
                    return Err(Error::Parse { line, msg: "dimension must be positive".into() });
                }
                dim = Some(v);
            }
            "elements" => {
                let v = it
                    .next()
                    .ok_or(Error::Parse { line, msg: "expected a count".into() })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse { line, msg: format!("bad count: {e}") })?;
                declared = Some(v);
            }
            "element" => {
                let d = dim.ok_or(Error::Parse { line, msg: "'element' before 'dim'".into() })?;
                if in_element {
                    finish(&mut current, &mut elements, d, line)?;
                }
                in_element = true;
            }
            _ => {
                let d = dim.ok_or(Error::Parse { line, msg: "matrix row before 'dim'".into() })?;
                if !in_element {
                    return Err(Error::Parse { line, msg: "matrix row outside an element".into() });
                }
                let mut row = Vec::with_capacity(d);
                for tok in std::iter::once(head).chain(it) {
                    let (re, im) = tok.split_once(',').ok_or(Error::Parse {
                        line,
                        msg: format!("entry '{tok}' is not of the form re,im"),
                    })?;
                    let re = re.parse::<f64>().map_err(|e| Error::Parse {
                        line,
                        msg: format!("bad real part: {e}"),
                    })?;
                    let im = im.parse::<f64>().map_err(|e| Error::Parse {
                        line,
                        msg: format!("bad imaginary part: {e}"),
                    })?;
                    row.push(Complex64::new(re, im));
                }
                if row.len() != d {
                    return Err(Error::Parse {
                        line,
                        msg: format!("row has {} entries, expected {d}", row.len()),
                    });
                }
                current.push(row);
                if current.len() > d {
                    return Err(Error::Parse { line, msg: "too many rows in element".into() });
                }
            }
        }
    }
    let d = dim.ok_or(Error::Parse { line: 0, msg: "missing 'dim' header".into() })?;
    if in_element {
        finish(&mut current, &mut elements, d, text.lines().count())?;
    }
    if let Some(count) = declared {
        if elements.len() != count {
            return Err(Error::Validation(format!(
                "header declares {count} elements, found {}",
                elements.len()
            )));
        }
    }
    Povm::new(elements)
}

/// Serialize a POVM in the text format accepted by [`parse_povm`].
pub fn povm_to_text(povm: &Povm) -> String {
    let dim = povm.dim();
    let mut out = format!("dim {dim}\nelements {}\n", povm.len());
    for el in povm.elements() {
        out.push_str("element\n");
        for r in 0..dim {
            let row: Vec<String> = (0..dim).map(|c| format!("{},{}", el[(r, c)].re, el[(r, c)].im)).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}
