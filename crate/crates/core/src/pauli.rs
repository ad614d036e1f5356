//! Pauli operators, Pauli channels, and the Walsh-Hadamard transform between
//! error probabilities and channel eigenvalues.
//!
//! Local Paulis on a gate's support (at most two qubits) are indexed by base-4
//! codes with I=0, X=1, Y=2, Z=3 and the first qubit in the most significant
//! digit, so the canonical order is I, X, Y, Z for one qubit and
//! II, IX, IY, IZ, XI, ... for two.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    pub fn from_code(code: u8) -> Pauli {
        match code & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            3 => Pauli::Z,
            _ => unreachable!(),
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    /// (x, z) symplectic bits.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn anticommutes(self, other: Pauli) -> bool {
        self != Pauli::I && other != Pauli::I && self != other
    }

    pub fn label(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Pauli on a small ordered support (1 or 2 qubits), stored as a base-4 code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalPauli {
    pub qubits: u8,
    pub code: u16,
}

impl LocalPauli {
    pub fn new(qubits: u8, code: u16) -> LocalPauli {
        debug_assert!(qubits >= 1 && qubits <= 2);
        debug_assert!((code as usize) < 4usize.pow(qubits as u32));
        LocalPauli { qubits, code }
    }

    pub fn identity(qubits: u8) -> LocalPauli {
        LocalPauli::new(qubits, 0)
    }

    pub fn is_identity(self) -> bool {
        self.code == 0
    }

    /// Pauli on the k-th qubit of the support (0 = most significant digit).
    pub fn factor(self, k: u8) -> Pauli {
        let shift = 2 * (self.qubits - 1 - k);
        Pauli::from_code(((self.code >> shift) & 3) as u8)
    }

    pub fn from_factors(factors: &[Pauli]) -> LocalPauli {
        let mut code = 0u16;
        for p in factors {
            code = (code << 2) | p.code() as u16;
        }
        LocalPauli::new(factors.len() as u8, code)
    }

    /// Number of local Paulis on this support, identity included.
    pub fn space_size(qubits: u8) -> usize {
        4usize.pow(qubits as u32)
    }

    pub fn anticommutes(self, other: LocalPauli) -> bool {
        debug_assert_eq!(self.qubits, other.qubits);
        let mut parity = false;
        for k in 0..self.qubits {
            parity ^= self.factor(k).anticommutes(other.factor(k));
        }
        parity
    }

    pub fn label(self) -> String {
        (0..self.qubits).map(|k| self.factor(k).label()).collect()
    }

    pub fn parse(s: &str) -> Result<LocalPauli> {
        let mut factors = Vec::new();
        for c in s.chars() {
            factors.push(match c {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return Err(Error::Parse(format!("bad Pauli label {s:?}"))),
            });
        }
        if factors.is_empty() || factors.len() > 2 {
            return Err(Error::Parse(format!("bad Pauli label {s:?}")));
        }
        Ok(LocalPauli::from_factors(&factors))
    }
}

/// Signed n-qubit Pauli in symplectic bit representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    /// True for overall sign −1.
    neg: bool,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl PauliString {
    pub fn identity(n: usize) -> PauliString {
        PauliString { n, x: vec![0; words(n)], z: vec![0; words(n)], neg: false }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> PauliString {
        let mut s = PauliString::identity(n);
        s.set(qubit, p);
        s
    }

    pub fn from_local(n: usize, targets: &[usize], local: LocalPauli) -> PauliString {
        debug_assert_eq!(targets.len(), local.qubits as usize);
        let mut s = PauliString::identity(n);
        for (k, &q) in targets.iter().enumerate() {
            s.set(q, local.factor(k as u8));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sign(&self) -> i8 {
        if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn negate(&mut self) {
        self.neg = !self.neg;
    }

    pub fn set_sign_positive(&mut self) {
        self.neg = false;
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 != 0
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 != 0
    }

    #[inline]
    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        let (w, b) = (q / 64, q % 64);
        self.x[w] = self.x[w] & !(1 << b) | (x as u64) << b;
        self.z[w] = self.z[w] & !(1 << b) | (z as u64) << b;
    }

    #[inline]
    pub fn set_x_bit(&mut self, q: usize, v: bool) {
        let (w, b) = (q / 64, q % 64);
        self.x[w] = self.x[w] & !(1 << b) | (v as u64) << b;
    }

    #[inline]
    pub fn set_z_bit(&mut self, q: usize, v: bool) {
        let (w, b) = (q / 64, q % 64);
        self.z[w] = self.z[w] & !(1 << b) | (v as u64) << b;
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().all(|&w| w == 0) && self.z.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(&x, &z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.get(q) != Pauli::I).collect()
    }

    /// Restriction to an ordered target list.
    pub fn restrict(&self, targets: &[usize]) -> LocalPauli {
        let factors: Vec<Pauli> = targets.iter().map(|&q| self.get(q)).collect();
        LocalPauli::from_factors(&factors)
    }

    /// Multiply by `other` on the right, tracking only the real sign
    /// (valid when the product is Hermitian up to ±1, as in frame algebra
    /// where phases i are paired).
    pub fn mul_ignoring_phase(&mut self, other: &PauliString) {
        debug_assert_eq!(self.n, other.n);
        for w in 0..self.x.len() {
            self.x[w] ^= other.x[w];
            self.z[w] ^= other.z[w];
        }
        self.neg ^= other.neg;
    }

    /// Symplectic inner product ⟨a,b⟩ ∈ {0,1}: 1 when the operators anticommute.
    pub fn symplectic(&self, other: &PauliString) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::QubitMismatch { left: self.n, right: other.n });
        }
        let mut acc = 0u64;
        for w in 0..self.x.len() {
            acc ^= (self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w]);
        }
        Ok(acc.count_ones() % 2 == 1)
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.neg {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        for q in 0..self.n {
            write!(f, "{}", self.get(q).label())?;
        }
        Ok(())
    }
}

/// Returns (−1)^⟨a,b⟩ where ⟨a,b⟩ is the symplectic form.
pub fn commutation_sign(a: &PauliString, b: &PauliString) -> Result<i8> {
    Ok(if a.symplectic(b)? { -1 } else { 1 })
}

/// Probability vector over a gate's supported Paulis, identity first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliChannel {
    pub qubits: u8,
    /// One probability per local Pauli code, identity at index 0.
    pub probs: Vec<f64>,
}

impl PauliChannel {
    pub fn identity(qubits: u8) -> PauliChannel {
        let mut probs = vec![0.0; LocalPauli::space_size(qubits)];
        probs[0] = 1.0;
        PauliChannel { qubits, probs }
    }

    pub fn new(qubits: u8, probs: Vec<f64>) -> Result<PauliChannel> {
        if probs.len() != LocalPauli::space_size(qubits) {
            return Err(Error::InvalidChannel(format!(
                "expected {} probabilities, got {}",
                LocalPauli::space_size(qubits),
                probs.len()
            )));
        }
        let c = PauliChannel { qubits, probs };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidChannel(format!("probabilities sum to {total}")));
        }
        if self.probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidChannel("probability outside [0,1]".into()));
        }
        Ok(())
    }

    /// Total non-identity probability.
    pub fn total_error(&self) -> f64 {
        self.probs[1..].iter().sum()
    }

    pub fn prob(&self, p: LocalPauli) -> f64 {
        self.probs[p.code as usize]
    }
}

/// Eigenvalues of a gate's Pauli noise channel for each non-identity supported
/// Pauli; the identity eigenvalue is fixed at 1 and never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateEigenvalues {
    pub qubits: u8,
    /// One eigenvalue per non-identity local Pauli, canonical order.
    pub values: Vec<f64>,
}

impl GateEigenvalues {
    pub fn value(&self, p: LocalPauli) -> f64 {
        debug_assert!(!p.is_identity());
        self.values[p.code as usize - 1]
    }
}

fn anticommute_codes(qubits: u8, a: usize, b: usize) -> bool {
    let pa = LocalPauli::new(qubits, a as u16);
    let pb = LocalPauli::new(qubits, b as u16);
    pa.anticommutes(pb)
}

/// Walsh-Hadamard transform: λ_a = Σ_b (−1)^⟨a,b⟩ p_b.
pub fn channel_to_eigenvalues(c: &PauliChannel) -> GateEigenvalues {
    let size = LocalPauli::space_size(c.qubits);
    let mut values = Vec::with_capacity(size - 1);
    for a in 1..size {
        let mut lambda = 0.0;
        for (b, &p) in c.probs.iter().enumerate() {
            if anticommute_codes(c.qubits, a, b) {
                lambda -= p;
            } else {
                lambda += p;
            }
        }
        values.push(lambda);
    }
    GateEigenvalues { qubits: c.qubits, values }
}

/// Inverse transform, including the implicit identity eigenvalue 1. The output
/// may lie outside the probability simplex and is not clipped here.
pub fn eigenvalues_to_channel(e: &GateEigenvalues) -> PauliChannel {
    let size = LocalPauli::space_size(e.qubits);
    let norm = 1.0 / size as f64;
    let mut probs = Vec::with_capacity(size);
    for b in 0..size {
        let mut p = 1.0; // identity eigenvalue
        for a in 1..size {
            let lambda = e.values[a - 1];
            if anticommute_codes(e.qubits, a, b) {
                p -= lambda;
            } else {
                p += lambda;
            }
        }
        probs.push(p * norm);
    }
    PauliChannel { qubits: e.qubits, probs }
}

/// Uniform probability total_error/(4^qubits − 1) on each non-identity Pauli.
pub fn depolarizing_channel(qubits: u8, total_error: f64) -> Result<PauliChannel> {
    if !(0.0..1.0).contains(&total_error) {
        return Err(Error::InvalidChannel(format!(
            "depolarizing rate {total_error} outside [0,1)"
        )));
    }
    let size = LocalPauli::space_size(qubits);
    let per = total_error / (size - 1) as f64;
    let mut probs = vec![per; size];
    probs[0] = 1.0 - total_error;
    PauliChannel::new(qubits, probs)
}

/// The reduced Walsh transform W̃ mapping identity-omitted probabilities to
/// identity-omitted eigenvalue deviations: λ_a − 1 = Σ_b W̃_{ab} p_b with
/// W̃_{ab} = (−1)^⟨a,b⟩ − 1. Symmetric and invertible; this is the
/// omission-adjusted transform used in the covariance calculus.
pub fn reduced_walsh(qubits: u8) -> nalgebra::DMatrix<f64> {
    let size = LocalPauli::space_size(qubits) - 1;
    nalgebra::DMatrix::from_fn(size, size, |a, b| {
        if anticommute_codes(qubits, a + 1, b + 1) {
            -2.0
        } else {
            0.0
        }
    })
}
