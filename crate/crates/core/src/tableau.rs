//! Stabilizer tableau simulator with symbolic measurement outcomes.
//!
//! Used as a verification oracle: measurement outcomes are affine GF(2)
//! functions of free variables introduced by non-deterministic measurements,
//! so a parity of outcomes is provably deterministic exactly when its free
//! variables cancel. Runs the full circuit without noise; faults can be
//! injected as explicit Pauli operators between layers.

use crate::circuit::{Circuit, GateKind};
use crate::pauli::PauliString;
use crate::{Error, Result};

/// An outcome bit as an affine function of measurement free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineBit {
    pub constant: bool,
    vars: Vec<u64>,
}

impl AffineBit {
    fn zero(words: usize) -> AffineBit {
        AffineBit { constant: false, vars: vec![0; words] }
    }

    pub fn is_deterministic(&self) -> bool {
        self.vars.iter().all(|&w| w == 0)
    }

    /// Indices of the free variables this bit depends on.
    pub fn var_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.vars.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn xor(&self, other: &AffineBit) -> AffineBit {
        let mut out = self.clone();
        out.constant ^= other.constant;
        for (a, b) in out.vars.iter_mut().zip(&other.vars) {
            *a ^= b;
        }
        out
    }
}

/// Aaronson-Gottesman style tableau with destabilizer rows 0..n, stabilizer
/// rows n..2n, and one scratch row.
pub struct Tableau {
    n: usize,
    words: usize,
    var_words: usize,
    x: Vec<Vec<u64>>,
    z: Vec<Vec<u64>>,
    phase_const: Vec<bool>,
    phase_vars: Vec<Vec<u64>>,
    num_vars: usize,
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl Tableau {
    /// All qubits in |0⟩. `max_vars` bounds the number of random measurements.
    pub fn new(n: usize, max_vars: usize) -> Tableau {
        let words = words_for(n);
        let var_words = words_for(max_vars.max(1));
        let rows = 2 * n + 1;
        let mut t = Tableau {
            n,
            words,
            var_words,
            x: vec![vec![0; words]; rows],
            z: vec![vec![0; words]; rows],
            phase_const: vec![false; rows],
            phase_vars: vec![vec![0; var_words]; rows],
            num_vars: 0,
        };
        for q in 0..n {
            t.x[q][q / 64] |= 1 << (q % 64); // destabilizer X_q
            t.z[n + q][q / 64] |= 1 << (q % 64); // stabilizer Z_q
        }
        t
    }

    #[inline]
    fn xb(&self, row: usize, q: usize) -> bool {
        self.x[row][q / 64] >> (q % 64) & 1 != 0
    }

    #[inline]
    fn zb(&self, row: usize, q: usize) -> bool {
        self.z[row][q / 64] >> (q % 64) & 1 != 0
    }

    #[inline]
    fn set_xb(&mut self, row: usize, q: usize, v: bool) {
        let (w, b) = (q / 64, q % 64);
        self.x[row][w] = self.x[row][w] & !(1 << b) | (v as u64) << b;
    }

    #[inline]
    fn set_zb(&mut self, row: usize, q: usize, v: bool) {
        let (w, b) = (q / 64, q % 64);
        self.z[row][w] = self.z[row][w] & !(1 << b) | (v as u64) << b;
    }

    fn xor_phase_vars(&mut self, dst: usize, src: usize) {
        for w in 0..self.var_words {
            let v = self.phase_vars[src][w];
            self.phase_vars[dst][w] ^= v;
        }
    }

    /// row_h ← row_i · row_h with exact phase tracking.
    fn rowsum(&mut self, h: usize, i: usize) {
        let mut g_sum: i32 = 0;
        for q in 0..self.n {
            let (x1, z1) = (self.xb(i, q) as i32, self.zb(i, q) as i32);
            let (x2, z2) = (self.xb(h, q) as i32, self.zb(h, q) as i32);
            g_sum += match (x1, z1) {
                (0, 0) => 0,
                (1, 1) => z2 - x2,
                (1, 0) => z2 * (2 * x2 - 1),
                (0, 1) => x2 * (1 - 2 * z2),
                _ => unreachable!(),
            };
        }
        let total = 2 * self.phase_const[h] as i32 + 2 * self.phase_const[i] as i32 + g_sum;
        debug_assert_eq!(total.rem_euclid(2), 0);
        self.phase_const[h] = total.rem_euclid(4) == 2;
        self.xor_phase_vars(h, i);
        for w in 0..self.words {
            let (xi, zi) = (self.x[i][w], self.z[i][w]);
            self.x[h][w] ^= xi;
            self.z[h][w] ^= zi;
        }
    }

    /// Apply a unitary gate to the tableau.
    pub fn apply(&mut self, kind: GateKind, targets: &[usize]) -> Result<()> {
        let rows = 2 * self.n;
        match kind {
            GateKind::H => {
                let q = targets[0];
                for r in 0..rows {
                    let (x, z) = (self.xb(r, q), self.zb(r, q));
                    if x && z {
                        self.phase_const[r] ^= true;
                    }
                    self.set_xb(r, q, z);
                    self.set_zb(r, q, x);
                }
            }
            GateKind::S => {
                let q = targets[0];
                for r in 0..rows {
                    let (x, z) = (self.xb(r, q), self.zb(r, q));
                    if x && z {
                        self.phase_const[r] ^= true;
                    }
                    self.set_zb(r, q, z ^ x);
                }
            }
            GateKind::X => {
                let q = targets[0];
                for r in 0..rows {
                    if self.zb(r, q) {
                        self.phase_const[r] ^= true;
                    }
                }
            }
            GateKind::Z => {
                let q = targets[0];
                for r in 0..rows {
                    if self.xb(r, q) {
                        self.phase_const[r] ^= true;
                    }
                }
            }
            GateKind::CX => {
                let (c, t) = (targets[0], targets[1]);
                for r in 0..rows {
                    let (xc, zc, xt, zt) =
                        (self.xb(r, c), self.zb(r, c), self.xb(r, t), self.zb(r, t));
                    if xc && zt && (xt == zc) {
                        self.phase_const[r] ^= true;
                    }
                    self.set_xb(r, t, xt ^ xc);
                    self.set_zb(r, c, zc ^ zt);
                }
            }
            GateKind::CZ => {
                let (c, t) = (targets[0], targets[1]);
                for r in 0..rows {
                    let (xc, zc, xt, zt) =
                        (self.xb(r, c), self.zb(r, c), self.xb(r, t), self.zb(r, t));
                    if xc && xt && (zc != zt) {
                        self.phase_const[r] ^= true;
                    }
                    self.set_zb(r, c, zc ^ xt);
                    self.set_zb(r, t, zt ^ xc);
                }
            }
            GateKind::Idle | GateKind::MeasureIdle => {}
            GateKind::MeasureZ | GateKind::ResetZ => {
                return Err(Error::UnsupportedGate(kind.name().into()))
            }
        }
        Ok(())
    }

    /// Conjugate the state by an explicit Pauli (fault injection).
    pub fn apply_pauli(&mut self, p: &PauliString) {
        for r in 0..2 * self.n {
            let mut anti = false;
            for q in 0..self.n.min(p.len()) {
                let row_p = crate::pauli::Pauli::from_bits(self.xb(r, q), self.zb(r, q));
                anti ^= row_p.anticommutes(p.get(q));
            }
            if anti {
                self.phase_const[r] ^= true;
            }
        }
    }

    /// Measure Z on `q`, returning the outcome as an affine bit.
    pub fn measure(&mut self, q: usize) -> AffineBit {
        let n = self.n;
        let scratch = 2 * n;
        if let Some(p) = (n..2 * n).find(|&r| self.xb(r, q)) {
            // Non-deterministic: introduce a fresh free variable.
            for r in 0..2 * n {
                if r != p && self.xb(r, q) {
                    self.rowsum(r, p);
                }
            }
            // Destabilizer p−n ← old stabilizer row p.
            self.x[p - n] = self.x[p].clone();
            self.z[p - n] = self.z[p].clone();
            self.phase_const[p - n] = self.phase_const[p];
            self.phase_vars[p - n] = self.phase_vars[p].clone();
            // New stabilizer ±Z_q with a fresh variable as the sign.
            let v = self.num_vars;
            self.num_vars += 1;
            assert!(v < self.var_words * 64, "tableau free-variable capacity exceeded");
            self.x[p] = vec![0; self.words];
            self.z[p] = vec![0; self.words];
            self.set_zb(p, q, true);
            self.phase_const[p] = false;
            self.phase_vars[p] = vec![0; self.var_words];
            self.phase_vars[p][v / 64] |= 1 << (v % 64);
            let mut out = AffineBit::zero(self.var_words);
            out.vars[v / 64] |= 1 << (v % 64);
            out
        } else {
            // Deterministic: accumulate into the scratch row.
            self.x[scratch] = vec![0; self.words];
            self.z[scratch] = vec![0; self.words];
            self.phase_const[scratch] = false;
            self.phase_vars[scratch] = vec![0; self.var_words];
            for i in 0..n {
                if self.xb(i, q) {
                    self.rowsum(scratch, i + n);
                }
            }
            AffineBit {
                constant: self.phase_const[scratch],
                vars: self.phase_vars[scratch].clone(),
            }
        }
    }

    /// Reset `q` to |0⟩: measure, then flip conditioned on the outcome.
    pub fn reset(&mut self, q: usize) {
        let outcome = self.measure(q);
        // Conditional X_q: rows with a Z component on q pick up the outcome.
        for r in 0..2 * self.n {
            if self.zb(r, q) {
                self.phase_const[r] ^= outcome.constant;
                for w in 0..self.var_words {
                    self.phase_vars[r][w] ^= outcome.vars[w];
                }
            }
        }
    }

    /// Execute a circuit, optionally injecting `fault` before the layer at
    /// index `fault.0`. Returns one affine outcome per measurement event.
    pub fn run(
        &mut self,
        circuit: &Circuit,
        fault: Option<(usize, &PauliString)>,
    ) -> Result<Vec<AffineBit>> {
        let mut outcomes = Vec::with_capacity(circuit.num_measurements());
        for (li, layer) in circuit.layers.iter().enumerate() {
            if let Some((fl, p)) = fault {
                if fl == li {
                    self.apply_pauli(p);
                }
            }
            for g in &layer.gates {
                match g.kind {
                    GateKind::MeasureZ => outcomes.push(self.measure(g.targets[0])),
                    GateKind::ResetZ => self.reset(g.targets[0]),
                    _ => self.apply(g.kind, &g.targets)?,
                }
            }
        }
        if let Some((fl, p)) = fault {
            if fl == circuit.layers.len() {
                self.apply_pauli(p);
            }
        }
        Ok(outcomes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Gate, Layer};
    use crate::pauli::Pauli;
    use std::sync::Arc;

    fn layer(kind: GateKind, targets: Vec<usize>) -> Layer {
        let c: crate::circuit::LayerContext = Arc::from("t");
        Layer::new(c.clone(), vec![Gate::new(kind, targets, c)]).unwrap()
    }

    #[test]
    fn fresh_qubit_measures_zero_deterministically() {
        let mut t = Tableau::new(2, 4);
        let m = t.measure(0);
        assert!(m.is_deterministic());
        assert!(!m.constant);
    }

    #[test]
    fn plus_state_measurement_is_random_then_repeatable() {
        let mut t = Tableau::new(1, 4);
        t.apply(GateKind::H, &[0]).unwrap();
        let m1 = t.measure(0);
        assert!(!m1.is_deterministic());
        let m2 = t.measure(0);
        // Repeated measurement gives the same affine bit.
        let diff = m1.xor(&m2);
        assert!(diff.is_deterministic());
        assert!(!diff.constant);
    }

    #[test]
    fn bell_pair_outcomes_correlate() {
        let mut t = Tableau::new(2, 4);
        t.apply(GateKind::H, &[0]).unwrap();
        t.apply(GateKind::CX, &[0, 1]).unwrap();
        let a = t.measure(0);
        let b = t.measure(1);
        let parity = a.xor(&b);
        assert!(parity.is_deterministic());
        assert!(!parity.constant);
    }

    #[test]
    fn x_before_measurement_flips_outcome() {
        let mut t = Tableau::new(1, 4);
        t.apply(GateKind::X, &[0]).unwrap();
        let m = t.measure(0);
        assert!(m.is_deterministic());
        assert!(m.constant);
    }

    #[test]
    fn reset_clears_state_and_pauli_injection_flips() {
        let mut t = Tableau::new(1, 8);
        t.apply(GateKind::H, &[0]).unwrap();
        t.reset(0);
        let m = t.measure(0);
        assert!(m.is_deterministic());
        assert!(!m.constant);

        let p = PauliString::single(1, 0, Pauli::X);
        t.apply_pauli(&p);
        let m = t.measure(0);
        assert!(m.is_deterministic());
        assert!(m.constant);
    }

    #[test]
    fn run_with_fault_flips_expected_measurement() {
        // [H][H] measures 0 deterministically; a Z fault between them flips
        // nothing, an X fault flips the X-basis frame and hence nothing either,
        // but a Z fault after the first H anticommutes with the traveling X.
        let layers = vec![
            layer(GateKind::H, vec![0]),
            layer(GateKind::H, vec![0]),
            layer(GateKind::MeasureZ, vec![0]),
        ];
        let circuit = Circuit::new(1, layers).unwrap();
        let mut clean = Tableau::new(1, 4);
        let base = clean.run(&circuit, None).unwrap();
        assert!(base[0].is_deterministic());
        assert!(!base[0].constant);

        let fault = PauliString::single(1, 0, Pauli::Z);
        let mut faulty = Tableau::new(1, 4);
        let with_fault = faulty.run(&circuit, Some((1, &fault))).unwrap();
        assert!(with_fault[0].is_deterministic());
        assert_ne!(base[0].constant, with_fault[0].constant);
    }
}
