//! Undirected simple graphs, the named catalog, single-joint composition,
//! and graph-state construction by stabilizer product and by CZ circuit.

use crate::error::{Error, Result};
use crate::linalg::{identity, max_abs_diff, CMatrix, CVector};
use crate::pauli::{PauliString, Phase, StabilizerGroup};
use num_complex::Complex64;

/// Undirected simple graph on up to 64 vertices; adjacency rows are bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Build from an edge list. Self-loops and out-of-range vertices are
    /// rejected; duplicate edges collapse after normalization.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 || n > PauliString::MAX_QUBITS {
            return Err(Error::Validation(format!(
                "vertex count {n} outside 1..={}",
                PauliString::MAX_QUBITS
            )));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            if a == b {
                return Err(Error::Validation(format!("self-loop at vertex {a}")));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.adj[a] >> b) & 1 == 1
    }

    /// Normalized edge list (a < b), sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True when every vertex has degree ≥ 1 (the standing assumption for
    /// the estimation workflows; single-vertex sanity cases violate it).
    pub fn no_isolated(&self) -> bool {
        self.adj.iter().all(|&m| m != 0)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Number of 4-vertex subsets that are mutually adjacent (4-cliques).
    pub fn topological_number(&self) -> usize {
        let n = self.n;
        let mut count = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if !self.has_edge(a, b) {
                    continue;
                }
                for c in (b + 1)..n {
                    if !self.has_edge(a, c) || !self.has_edge(b, c) {
                        continue;
                    }
                    for d in (c + 1)..n {
                        if self.has_edge(a, d) && self.has_edge(b, d) && self.has_edge(c, d) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    /// Identify `joint_self` with `other`'s `joint_other`; the joint keeps
    /// its index in `self`, the remaining vertices of `other` follow.
    pub fn sjcr_connect(&self, joint_self: usize, other: &Graph, joint_other: usize) -> Result<Graph> {
        if joint_self >= self.n {
            return Err(Error::Validation(format!(
                "joint {joint_self} out of range for n = {}",
                self.n
            )));
        }
        if joint_other >= other.n {
            return Err(Error::Validation(format!(
                "joint {joint_other} out of range for n = {}",
                other.n
            )));
        }
        let n_new = self.n + other.n - 1;
        let map = |v: usize| -> usize {
            if v == joint_other {
                joint_self
            } else if v < joint_other {
                self.n + v
            } else {
                self.n + v - 1
            }
        };
        let mut edges = self.edges();
        for (a, b) in other.edges() {
            edges.push((map(a), map(b)));
        }
        Graph::new(n_new, &edges)
    }

    /// Apply a vertex permutation: vertex v goes to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Validation("permutation length mismatch".into()));
        }
        let edges: Vec<(usize, usize)> = self.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        Graph::new(self.n, &edges)
    }

    /// Stabilizer generators: the i-th has X at site i and Z on each neighbor.
    pub fn stabilizer_generators(&self) -> Vec<PauliString> {
        (0..self.n)
            .map(|i| {
                PauliString::new(self.n, 1 << i, self.adj[i], Phase::PlusOne)
                    .expect("valid by construction")
            })
            .collect()
    }

    pub fn stabilizer_group(&self) -> Result<StabilizerGroup> {
        StabilizerGroup::from_generators(self.stabilizer_generators())
    }

    /// Dense ρ₀ = Π_i (g_i + 1)/2.
    pub fn state_stabilizer(&self) -> Result<DensityMatrix> {
        let dim = self.dense_dim()?;
        let mut rho = identity(dim);
        let half = Complex64::new(0.5, 0.0);
        for g in self.stabilizer_generators() {
            let factor = (g.to_dense()? + identity(dim)) * half;
            rho = factor * rho;
        }
        DensityMatrix::new(rho)
    }

    /// |G⟩ = Π_{(a,b)∈E} CZ_{a,b} |+⟩^{⊗n}. Qubit 0 is the most significant
    /// bit of the basis index.
    pub fn state_circuit(&self) -> Result<StateVector> {
        let dim = self.dense_dim()?;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        let mut amps = CVector::from_element(dim, amp);
        for (a, b) in self.edges() {
            let ba = self.n - 1 - a;
            let bb = self.n - 1 - b;
            for idx in 0..dim {
                if (idx >> ba) & 1 == 1 && (idx >> bb) & 1 == 1 {
                    amps[idx] = -amps[idx];
                }
            }
        }
        StateVector::new(amps)
    }

    fn dense_dim(&self) -> Result<usize> {
        let cap = crate::dense_cap();
        if self.n > cap {
            return Err(Error::Resource(format!(
                "dense state on {} qubits exceeds cap {cap}",
                self.n
            )));
        }
        Ok(1usize << self.n)
    }
}

/// Named graph catalog. `triangle_pendant` and `diamond` exist only for n = 4;
/// together with chain, star, ring and complete they are the six connected
/// 4-vertex isomorphism classes.
pub fn catalog(name: &str, n: usize) -> Result<Graph> {
    let need = |cond: bool, msg: &str| -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(Error::Validation(msg.to_string()))
        }
    };
    match name {
        "complete" => {
            need(n >= 2, "complete graph needs n >= 2")?;
            let mut edges = Vec::new();
            for a in 0..n {
                for b in (a + 1)..n {
                    edges.push((a, b));
                }
            }
            Graph::new(n, &edges)
        }
        "chain" => {
            need(n >= 2, "chain needs n >= 2")?;
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Graph::new(n, &edges)
        }
        "ring" => {
            need(n >= 3, "ring needs n >= 3")?;
            let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            edges.push((n - 1, 0));
            Graph::new(n, &edges)
        }
        "star" => {
            need(n >= 2, "star needs n >= 2")?;
            let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
            Graph::new(n, &edges)
        }
        "triangle_pendant" => {
            need(n == 4, "triangle_pendant is defined for n = 4")?;
            Graph::new(4, &[(0, 1), (0, 2), (1, 2), (2, 3)])
        }
        "diamond" => {
            need(n == 4, "diamond is defined for n = 4")?;
            Graph::new(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
        }
        other => Err(Error::Validation(format!("unknown catalog graph '{other}'"))),
    }
}

/// The six connected 4-vertex classes, in a fixed reporting order.
pub const FOUR_VERTEX_CLASSES: [&str; 6] =
    ["chain", "star", "triangle_pendant", "ring", "diamond", "complete"];

/// Parse the edge-list text format: one "u v" pair per line, 0-based,
/// '#' comments and blank lines ignored; an optional first non-comment line
/// "n <count>" declares the vertex count (otherwise max index + 1).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut saw_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut it = body.split_whitespace();
        let first = it.next().unwrap();
        if first == "n" {
            if saw_content {
                return Err(Error::Parse {
                    line,
                    msg: "vertex-count declaration must precede edges".into(),
                });
            }
            let count = it
                .next()
                .ok_or(Error::Parse {
                    line,
                    msg: "expected a count after 'n'".into(),
                })?
                .parse::<usize>()
                .map_err(|e| Error::Parse {
                    line,
                    msg: format!("bad vertex count: {e}"),
                })?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line,
                    msg: "trailing tokens after vertex count".into(),
                });
            }
            declared_n = Some(count);
            saw_content = true;
            continue;
        }
        saw_content = true;
        let a = first.parse::<usize>().map_err(|e| Error::Parse {
            line,
            msg: format!("bad vertex index: {e}"),
        })?;
        let b = it
            .next()
            .ok_or(Error::Parse {
                line,
                msg: "expected two vertex indices".into(),
            })?
            .parse::<usize>()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("bad vertex index: {e}"),
            })?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: "trailing tokens after edge".into(),
            });
        }
        if a == b {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at vertex {a}"),
            });
        }
        edges.push((a, b));
    }
    let inferred = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let n = declared_n.unwrap_or(inferred);
    if n == 0 {
        return Err(Error::Parse {
            line: 0,
            msg: "no vertices declared or implied".into(),
        });
    }
    if inferred > n {
        return Err(Error::Validation(format!(
            "edge references vertex {} but n = {n}",
            inferred - 1
        )));
    }
    Graph::new(n, &edges)
}

/// Pure-state amplitudes of length 2^n, unit norm within 1e-12.
#[derive(Debug, Clone)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(amplitudes: CVector) -> Result<StateVector> {
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("state norm {norm} differs from 1")));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn density(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix { entries: m }
    }
}

/// Dense density matrix; Hermitian with unit trace within 1e-12.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<DensityMatrix> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::Dimension("density matrix must be square".into()));
        }
        if max_abs_diff(&entries, &entries.adjoint()) > 1e-10 {
            return Err(Error::Domain("density matrix is not Hermitian".into()));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::Domain(format!("density matrix trace {tr} differs from 1")));
        }
        Ok(DensityMatrix { entries })
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        crate::linalg::trace_product(&self.entries, &self.entries).re
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.purity() - 1.0).abs() <= tol
    }
}
