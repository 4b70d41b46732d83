//! Phased n-qubit Pauli strings in symplectic (x-bits, z-bits) form, and
//! stabilizer groups with exact expectation values.
//!
//! A string is stored as one x-bit and one z-bit per site plus a global phase
//! that is exactly one of the four fourth-roots of unity. Internally the
//! phase exponent refers to the product form i^e · ⊗_q X^{x_q} Z^{z_q}; the
//! public [`Phase`] is reported in the labeled convention where the site
//! operator for (x, z) = (1, 1) is Y itself. Keeping the phase as two bits
//! rather than a float keeps group membership tests exact.

use crate::error::{Error, Result};
use crate::linalg::{kron, CMatrix, C_ONE};
use num_complex::Complex64;

/// Measurement / dynamics axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn label(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::Validation(format!("unknown axis '{other}'"))),
        }
    }
}

/// One of the four fourth-roots of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    /// Exponent k with phase = i^k.
    pub fn exp(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    pub fn from_exp(k: u8) -> Phase {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn value(self) -> Complex64 {
        match self {
            Phase::PlusOne => Complex64::new(1.0, 0.0),
            Phase::PlusI => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Phase::PlusOne | Phase::MinusOne)
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Phase::PlusOne => "",
            Phase::PlusI => "i",
            Phase::MinusOne => "-",
            Phase::MinusI => "-i",
        }
    }
}

/// Site operator in the labeled convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteOp {
    I,
    X,
    Z,
    Y,
}

impl SiteOp {
    pub fn label(self) -> char {
        match self {
            SiteOp::I => 'I',
            SiteOp::X => 'X',
            SiteOp::Z => 'Z',
            SiteOp::Y => 'Y',
        }
    }

    pub fn dense(self) -> CMatrix {
        let z = Complex64::new(0.0, 0.0);
        let o = C_ONE;
        let i = Complex64::new(0.0, 1.0);
        match self {
            SiteOp::I => CMatrix::from_row_slice(2, 2, &[o, z, z, o]),
            SiteOp::X => CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
            SiteOp::Z => CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
            SiteOp::Y => CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        }
    }
}

/// A phased Pauli string on `n` qubits, n ≤ 64 (one machine word per bit plane).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    /// Exponent e of the internal product form i^e · ⊗ X^x Z^z.
    exp: u8,
}

impl PauliString {
    pub const MAX_QUBITS: usize = 64;

    fn check_n(n: usize) -> Result<()> {
        if n == 0 || n > Self::MAX_QUBITS {
            return Err(Error::Validation(format!(
                "qubit count {n} outside 1..={}",
                Self::MAX_QUBITS
            )));
        }
        Ok(())
    }

    pub fn identity(n: usize) -> Result<PauliString> {
        Self::check_n(n)?;
        Ok(PauliString { n, x: 0, z: 0, exp: 0 })
    }

    /// Build from bit planes and a phase in the labeled convention.
    pub fn new(n: usize, x_bits: u64, z_bits: u64, phase: Phase) -> Result<PauliString> {
        Self::check_n(n)?;
        let mask = mask(n);
        if x_bits & !mask != 0 || z_bits & !mask != 0 {
            return Err(Error::Validation("bit plane exceeds qubit count".into()));
        }
        let y = (x_bits & z_bits).count_ones() as u8;
        Ok(PauliString {
            n,
            x: x_bits,
            z: z_bits,
            exp: (phase.exp() + y) % 4,
        })
    }

    /// Single-site X, Y, or Z on qubit `q`.
    pub fn single(n: usize, q: usize, axis: Axis) -> Result<PauliString> {
        Self::check_n(n)?;
        if q >= n {
            return Err(Error::Validation(format!("qubit {q} out of range for n = {n}")));
        }
        let bit = 1u64 << q;
        let (x, z) = match axis {
            Axis::X => (bit, 0),
            Axis::Y => (bit, bit),
            Axis::Z => (0, bit),
        };
        PauliString::new(n, x, z, Phase::PlusOne)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    /// Phase in the labeled convention (site (1,1) read as Y).
    pub fn phase(&self) -> Phase {
        let y = (self.x & self.z).count_ones() as u8;
        Phase::from_exp(self.exp + 3 * (y % 4))
    }

    pub fn site(&self, q: usize) -> SiteOp {
        let x = (self.x >> q) & 1 == 1;
        let z = (self.z >> q) & 1 == 1;
        match (x, z) {
            (false, false) => SiteOp::I,
            (true, false) => SiteOp::X,
            (false, true) => SiteOp::Z,
            (true, true) => SiteOp::Y,
        }
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn is_identity_string(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Hermitian iff the labeled phase is ±1.
    pub fn is_hermitian(&self) -> bool {
        self.phase().is_real()
    }

    pub fn negated(&self) -> PauliString {
        PauliString {
            exp: (self.exp + 2) % 4,
            ..*self
        }
    }

    /// Group product with exact phase accumulation: each site where the left
    /// operand's Z overlaps the right operand's X contributes a −1.
    pub fn multiply(&self, rhs: &PauliString) -> Result<PauliString> {
        if self.n != rhs.n {
            return Err(Error::Dimension(format!(
                "pauli product on {} vs {} qubits",
                self.n, rhs.n
            )));
        }
        let antis = (self.z & rhs.x).count_ones() as u8;
        Ok(PauliString {
            n: self.n,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            exp: (self.exp + rhs.exp + 2 * (antis % 2)) % 4,
        })
    }

    /// True iff the two strings commute (symplectic product vanishes).
    pub fn commutes_with(&self, rhs: &PauliString) -> bool {
        let s = (self.x & rhs.z).count_ones() + (self.z & rhs.x).count_ones();
        s % 2 == 0
    }

    /// Dense 2^n × 2^n realization; qubit 0 is the leftmost tensor factor.
    pub fn to_dense(&self) -> Result<CMatrix> {
        let cap = crate::dense_cap();
        if self.n > cap {
            return Err(Error::Resource(format!(
                "dense Pauli on {} qubits exceeds cap {cap}",
                self.n
            )));
        }
        let mut out = CMatrix::from_element(1, 1, C_ONE);
        for q in 0..self.n {
            out = kron(&out, &self.site(q).dense());
        }
        Ok(out * self.phase().value())
    }

    /// Label such as "XZZ", "-YY", "iXZ" (qubit 0 leftmost).
    pub fn label(&self) -> String {
        let mut s = String::from(self.phase().prefix());
        for q in 0..self.n {
            s.push(self.site(q).label());
        }
        s
    }
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Stabilizer group generated by n independent, pairwise-commuting Hermitian
/// Pauli strings. Holds a GF(2) echelon form of the generators with full
/// phase bookkeeping, which makes membership and expectation queries O(n²)
/// word operations.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliString>,
    /// Echelonized generating set; `pivots[i]` is the leading bit column
    /// (x plane: columns 0..n, z plane: columns n..2n) of `rows[i]`.
    rows: Vec<PauliString>,
    pivots: Vec<usize>,
}

impl StabilizerGroup {
    pub fn from_generators(generators: Vec<PauliString>) -> Result<StabilizerGroup> {
        let n = match generators.first() {
            Some(g) => g.n(),
            None => return Err(Error::Validation("empty generator list".into())),
        };
        if generators.len() != n {
            return Err(Error::Validation(format!(
                "expected {} generators for {} qubits, got {}",
                n,
                n,
                generators.len()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.n() != n {
                return Err(Error::Dimension(format!("generator {i} acts on {} qubits", g.n())));
            }
            if !g.is_hermitian() {
                return Err(Error::Domain(format!("generator {i} is not Hermitian")));
            }
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if !g.commutes_with(h) {
                    return Err(Error::Domain(format!("generators {i} and {j} anticommute")));
                }
            }
        }
        let (rows, pivots) = echelonize(&generators)?;
        if rows.len() != n {
            return Err(Error::Domain(format!(
                "generators are dependent: rank {} < {}",
                rows.len(),
                n
            )));
        }
        Ok(StabilizerGroup {
            n,
            generators,
            rows,
            pivots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `p` against the echelon rows; the leftover is ±identity when
    /// ±p is a group element.
    fn reduce(&self, p: &PauliString) -> PauliString {
        let mut q = *p;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            if bit_at(&q, piv) {
                // all factors commute on the span, so the order is immaterial
                q = q.multiply(row).expect("same qubit count");
            }
        }
        q
    }

    /// Exact Tr(p ρ₀) for the stabilizer state ρ₀ = 2^{-n} Σ_{S∈group} S:
    /// +1 if p is in the group, −1 if −p is, 0 otherwise.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if p.n() != self.n {
            return Err(Error::Dimension(format!(
                "operator on {} qubits vs group on {}",
                p.n(),
                self.n
            )));
        }
        if !p.is_hermitian() {
            return Err(Error::Domain("expectation of a non-Hermitian Pauli string".into()));
        }
        let q = self.reduce(p);
        if !q.is_identity_string() {
            return Ok(0.0);
        }
        match q.phase() {
            Phase::PlusOne => Ok(1.0),
            Phase::MinusOne => Ok(-1.0),
            // a Hermitian string reduced by Hermitian rows cannot leave ±i
            other => Err(Error::Domain(format!(
                "inconsistent reduction phase {:?}",
                other
            ))),
        }
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        let q = self.reduce(p);
        q.is_identity_string() && q.phase() == Phase::PlusOne
    }

    /// Iterate all 2^n group elements (exponential; intended for n ≤ ~12).
    pub fn elements(&self) -> impl Iterator<Item = PauliString> + '_ {
        let n = self.rows.len();
        (0u64..(1u64 << n)).map(move |bits| {
            let mut acc = PauliString::identity(self.n).expect("valid n");
            for (i, row) in self.rows.iter().enumerate() {
                if (bits >> i) & 1 == 1 {
                    acc = acc.multiply(row).expect("same qubit count");
                }
            }
            acc
        })
    }
}

/// Column index of the symplectic bit vector: x plane first, then z plane.
fn bit_at(p: &PauliString, col: usize) -> bool {
    let n = p.n();
    if col < n {
        (p.x_bits() >> col) & 1 == 1
    } else {
        (p.z_bits() >> (col - n)) & 1 == 1
    }
}

/// GF(2) Gaussian elimination carrying full strings so phases stay exact.
fn echelonize(gens: &[PauliString]) -> Result<(Vec<PauliString>, Vec<usize>)> {
    let n = gens[0].n();
    let mut rows: Vec<PauliString> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for g in gens {
        let mut cur = *g;
        for (row, &piv) in rows.iter().zip(&pivots) {
            if bit_at(&cur, piv) {
                cur = cur.multiply(row)?;
            }
        }
        if cur.is_identity_string() {
            continue; // dependent generator
        }
        // rows are kept mutually reduced, so the leading column is fresh
        let piv = (0..2 * n).find(|&c| bit_at(&cur, c)).expect("non-identity");
        debug_assert!(!pivots.contains(&piv));
        for i in 0..rows.len() {
            if bit_at(&rows[i], piv) {
                rows[i] = rows[i].multiply(&cur)?;
            }
        }
        rows.push(cur);
        pivots.push(piv);
    }
    // keep rows ordered by pivot for reproducibility
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let rows = order.iter().map(|&i| rows[i]).collect();
    let pivots = order.iter().map(|&i| pivots[i]).collect();
    Ok((rows, pivots))
}
