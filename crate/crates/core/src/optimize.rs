//! Seeded particle swarm minimization of Tr(F⁻¹) over the parameter box.
//!
//! The update rule is the standard constriction form
//! v ← w·v + c₁ r₁ (p − x) + c₂ r₂ (g − x) with velocities clamped to half
//! the box width per dimension and positions clipped to the box. Points where
//! the QFIM is singular score +∞, matching the treatment of non-invertible
//! QFIMs as non-estimable.

use crate::dynamics::{param_generators_exact, DynamicsSpec};
use crate::error::{Error, Result};
use crate::graphs::DensityMatrix;
use crate::metrology::qfim;
use crate::sun::OperatorSet;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SWARM: usize = 50;
pub const DEFAULT_ITERATIONS: usize = 200;
pub const DEFAULT_INERTIA: f64 = 0.729;
pub const DEFAULT_COGNITIVE: f64 = 1.494;
pub const DEFAULT_SOCIAL: f64 = 1.494;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Closed search interval per dimension.
    pub bounds: Vec<(f64, f64)>,
    pub seed: u64,
}

impl PsoConfig {
    /// Defaults with a [−π, π] box in every dimension.
    pub fn for_dimension(d: usize) -> PsoConfig {
        PsoConfig {
            swarm_size: DEFAULT_SWARM,
            iterations: DEFAULT_ITERATIONS,
            inertia: DEFAULT_INERTIA,
            cognitive: DEFAULT_COGNITIVE,
            social: DEFAULT_SOCIAL,
            bounds: vec![(-std::f64::consts::PI, std::f64::consts::PI); d],
            seed: DEFAULT_SEED,
        }
    }

    /// Same knobs with the box replaced (replicating a single interval when
    /// the dimension changes).
    pub fn with_dimension(&self, d: usize) -> PsoConfig {
        let bounds = if self.bounds.len() == d {
            self.bounds.clone()
        } else {
            vec![self.bounds.first().copied().unwrap_or((-std::f64::consts::PI, std::f64::consts::PI)); d]
        };
        PsoConfig {
            bounds,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 2 {
            return Err(Error::Validation("swarm size must be at least 2".into()));
        }
        if self.bounds.is_empty() {
            return Err(Error::Validation("bounds must be non-empty".into()));
        }
        if self.inertia <= 0.0 || self.cognitive <= 0.0 || self.social <= 0.0 {
            return Err(Error::Validation("PSO coefficients must be positive".into()));
        }
        for &(lo, hi) in &self.bounds {
            if !(lo < hi) {
                return Err(Error::Validation(format!("bad bound interval [{lo}, {hi}]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptResult {
    pub best_theta: Vec<f64>,
    pub best_value: f64,
    /// Global best after each iteration; non-increasing.
    pub history: Vec<f64>,
    pub evaluations: usize,
}

/// Minimize an arbitrary objective over the configured box. Objective values
/// that are NaN are treated as +∞.
pub fn minimize<F: FnMut(&[f64]) -> f64>(mut objective: F, cfg: &PsoConfig) -> Result<OptResult> {
    cfg.validate()?;
    let d = cfg.bounds.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let half_width: Vec<f64> = cfg.bounds.iter().map(|&(lo, hi)| (hi - lo) / 2.0).collect();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        let v = objective(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut pos: Vec<Vec<f64>> = Vec::with_capacity(cfg.swarm_size);
    let mut vel: Vec<Vec<f64>> = Vec::with_capacity(cfg.swarm_size);
    for _ in 0..cfg.swarm_size {
        let p: Vec<f64> = cfg.bounds.iter().map(|&(lo, hi)| rng.random_range(lo..=hi)).collect();
        let v: Vec<f64> = half_width.iter().map(|&w| rng.random_range(-w..=w)).collect();
        pos.push(p);
        vel.push(v);
    }
    let mut pbest = pos.clone();
    let mut pbest_val: Vec<f64> = pos.iter().map(|p| eval(p, &mut evals)).collect();
    let (mut gbest, mut gbest_val) = {
        let (i, &v) = pbest_val
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .expect("swarm is non-empty");
        (pbest[i].clone(), v)
    };

    let mut history = Vec::with_capacity(cfg.iterations);
    for _ in 0..cfg.iterations {
        for i in 0..cfg.swarm_size {
            for k in 0..d {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let v = cfg.inertia * vel[i][k]
                    + cfg.cognitive * r1 * (pbest[i][k] - pos[i][k])
                    + cfg.social * r2 * (gbest[k] - pos[i][k]);
                vel[i][k] = v.clamp(-half_width[k], half_width[k]);
                pos[i][k] = (pos[i][k] + vel[i][k]).clamp(cfg.bounds[k].0, cfg.bounds[k].1);
            }
            let val = eval(&pos[i], &mut evals);
            if val < pbest_val[i] {
                pbest_val[i] = val;
                pbest[i] = pos[i].clone();
                if val < gbest_val {
                    gbest_val = val;
                    gbest = pos[i].clone();
                }
            }
        }
        history.push(gbest_val);
    }

    if !gbest_val.is_finite() {
        return Err(Error::OptimizationFailed(
            "objective was infinite at every sampled point".into(),
        ));
    }
    Ok(OptResult {
        best_theta: gbest,
        best_value: gbest_val,
        history,
        evaluations: evals,
    })
}

/// The Tr(F⁻¹) objective for a state and operator family; singular QFIM
/// points (and any evaluation error) score +∞.
pub fn crb_objective<'a>(
    rho0: &'a DensityMatrix,
    ops: &'a OperatorSet,
) -> impl Fn(&[f64]) -> f64 + 'a {
    move |theta: &[f64]| {
        let spec = match DynamicsSpec::new(ops.clone(), theta.to_vec()) {
            Ok(s) => s,
            Err(_) => return f64::INFINITY,
        };
        let gens = match param_generators_exact(&spec) {
            Ok(g) => g,
            Err(_) => return f64::INFINITY,
        };
        match qfim(rho0, &gens) {
            Ok(r) => r.crb_trace.unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    }
}

/// Particle swarm minimization of Tr(F⁻¹(θ)).
pub fn minimize_crb(rho0: &DensityMatrix, ops: &OperatorSet, cfg: &PsoConfig) -> Result<OptResult> {
    if rho0.dim() != ops.dim() {
        return Err(Error::Dimension("state vs operator dimension".into()));
    }
    let cfg = cfg.with_dimension(ops.len());
    let obj = crb_objective(rho0, ops);
    minimize(obj, &cfg)
}

/// One family's minimum in a cross-family comparison.
#[derive(Debug, Clone)]
pub struct FamilyMinimum {
    pub label: String,
    pub result: OptResult,
}

/// Minima per dynamics family (in input order) and the ≤ verdict for each
/// adjacent pair.
#[derive(Debug, Clone)]
pub struct SunComparison {
    pub entries: Vec<FamilyMinimum>,
    /// verdicts[i] is true iff entries[i].min ≤ entries[i+1].min + 1e-12.
    pub verdicts: Vec<bool>,
}

/// Run [`minimize_crb`] on each family over the same state and compare the
/// minima of adjacent entries. Families are labeled by their first operator
/// label's prefix unless a single label describes the set.
pub fn compare_sun_minima(
    rho0: &DensityMatrix,
    families: &[(String, OperatorSet)],
    cfg: &PsoConfig,
) -> Result<SunComparison> {
    if families.is_empty() {
        return Err(Error::Validation("no families to compare".into()));
    }
    let mut entries = Vec::with_capacity(families.len());
    for (label, ops) in families {
        let result = minimize_crb(rho0, ops, cfg)?;
        entries.push(FamilyMinimum {
            label: label.clone(),
            result,
        });
    }
    let verdicts = entries
        .windows(2)
        .map(|w| w[0].result.best_value <= w[1].result.best_value + 1e-12)
        .collect();
    Ok(SunComparison { entries, verdicts })
}
