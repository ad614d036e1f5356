//! Ground-truth circuit-level noise instances: log-normal Pauli noise and
//! tuned depolarizing noise.
//!
//! Noise is keyed by gate identity `(kind, targets, layer_context)`. Unitary
//! gates and measurement idles carry a full Pauli channel on their support;
//! measurements carry a classical outcome-flip probability and resets a flip
//! of the prepared state. Plain `Idle` locations are noiseless. Instances
//! also carry the preparation/measurement flip probabilities used by noise
//! characterisation experiment circuits, one per (qubit, basis).

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use crate::circuit::{GateId, GateKind};
use crate::pauli::{channel_to_eigenvalues, GateEigenvalues, LocalPauli, Pauli, PauliChannel};
use crate::{Error, Result};

/// Average error rates and log-normal shape parameters per noise class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParameters {
    /// Average single-qubit gate error rate.
    pub r1: f64,
    /// Average two-qubit gate error rate.
    pub r2: f64,
    /// Average measurement (and measurement idle) error rate.
    pub rm: f64,
    /// Average reset error rate.
    pub rr: f64,
    /// Separate measurement-idle rate; defaults to `rm`.
    pub rm_idle: Option<f64>,
    pub s1: f64,
    pub s2: f64,
    pub sm: f64,
    pub sr: f64,
}

impl Default for NoiseParameters {
    fn default() -> NoiseParameters {
        NoiseParameters {
            r1: 0.0005,
            r2: 0.004,
            rm: 0.008,
            rr: 0.002,
            rm_idle: None,
            s1: 0.5,
            s2: 0.5,
            sm: 0.25,
            sr: 0.25,
        }
    }
}

impl NoiseParameters {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("r1", self.r1),
            ("r2", self.r2),
            ("rm", self.rm),
            ("rr", self.rr),
            ("rm_idle", self.rm_idle.unwrap_or(self.rm)),
        ] {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Config(format!("rate {name}={r} outside (0,1)")));
            }
        }
        for (name, s) in [("s1", self.s1), ("s2", self.s2), ("sm", self.sm), ("sr", self.sr)] {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::Config(format!("shape {name}={s} must be ≥ 0")));
            }
        }
        Ok(())
    }

    pub fn rm_idle(&self) -> f64 {
        self.rm_idle.unwrap_or(self.rm)
    }

    /// (mean rate, shape) for the class of a gate kind; None for noiseless kinds.
    fn class_of(&self, kind: GateKind) -> Option<(f64, f64)> {
        match kind {
            GateKind::H | GateKind::S | GateKind::X | GateKind::Z => Some((self.r1, self.s1)),
            GateKind::CX | GateKind::CZ => Some((self.r2, self.s2)),
            GateKind::MeasureZ => Some((self.rm, self.sm)),
            GateKind::MeasureIdle => Some((self.rm_idle(), self.sm)),
            GateKind::ResetZ => Some((self.rr, self.sr)),
            GateKind::Idle => None,
        }
    }
}

/// A concrete noise assignment for a set of gate identities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseInstance {
    pub seed: Option<u64>,
    /// Pauli channels for unitary and measurement-idle gates.
    pub channels: BTreeMap<String, PauliChannel>,
    /// Outcome-flip probability per measurement gate.
    pub meas_flips: BTreeMap<String, f64>,
    /// Prepared-state flip probability per reset gate.
    pub reset_flips: BTreeMap<String, f64>,
    /// Preparation flip probability per (qubit, basis) for experiment circuits.
    pub spam_prep: BTreeMap<String, f64>,
    /// Measurement flip probability per (qubit, basis) for experiment circuits.
    pub spam_meas: BTreeMap<String, f64>,
}

pub fn spam_key(qubit: usize, basis: Pauli) -> String {
    format!("q{qubit} {}", basis.label())
}

/// Access interface shared by true instances and estimates.
pub trait NoiseModel {
    fn channel(&self, gate: &GateId) -> Result<&PauliChannel>;
    fn meas_flip(&self, gate: &GateId) -> Result<f64>;
    fn reset_flip(&self, gate: &GateId) -> Result<f64>;
    fn spam_prep(&self, qubit: usize, basis: Pauli) -> Result<f64>;
    fn spam_meas(&self, qubit: usize, basis: Pauli) -> Result<f64>;

    /// Eigenvalues of the gate's noise channel (identity omitted).
    fn gate_eigenvalues(&self, gate: &GateId) -> Result<GateEigenvalues> {
        Ok(channel_to_eigenvalues(self.channel(gate)?))
    }
}

impl NoiseModel for NoiseInstance {
    fn channel(&self, gate: &GateId) -> Result<&PauliChannel> {
        self.channels
            .get(&gate.to_string())
            .ok_or_else(|| Error::MissingNoise(gate.to_string()))
    }

    fn meas_flip(&self, gate: &GateId) -> Result<f64> {
        self.meas_flips
            .get(&gate.to_string())
            .copied()
            .ok_or_else(|| Error::MissingNoise(gate.to_string()))
    }

    fn reset_flip(&self, gate: &GateId) -> Result<f64> {
        self.reset_flips
            .get(&gate.to_string())
            .copied()
            .ok_or_else(|| Error::MissingNoise(gate.to_string()))
    }

    fn spam_prep(&self, qubit: usize, basis: Pauli) -> Result<f64> {
        self.spam_prep
            .get(&spam_key(qubit, basis))
            .copied()
            .ok_or_else(|| Error::MissingNoise(spam_key(qubit, basis)))
    }

    fn spam_meas(&self, qubit: usize, basis: Pauli) -> Result<f64> {
        self.spam_meas
            .get(&spam_key(qubit, basis))
            .copied()
            .ok_or_else(|| Error::MissingNoise(spam_key(qubit, basis)))
    }
}

fn sorted_ids(gate_ids: &[GateId]) -> Vec<GateId> {
    let mut ids = gate_ids.to_vec();
    ids.sort();
    ids.dedup();
    ids
}

fn lognormal_weight(rng: &mut ChaCha8Rng, mean: f64, shape: f64) -> f64 {
    let mu = mean.ln() - shape * shape / 2.0;
    let dist = LogNormal::new(mu, shape).expect("valid log-normal parameters");
    dist.sample(rng)
}

fn lognormal_channel(rng: &mut ChaCha8Rng, qubits: u8, mean_total: f64, shape: f64) -> PauliChannel {
    let size = LocalPauli::space_size(qubits);
    let per_mean = mean_total / (size - 1) as f64;
    let mut probs = vec![0.0; size];
    let mut total = 0.0;
    for p in probs.iter_mut().skip(1) {
        *p = lognormal_weight(rng, per_mean, shape);
        total += *p;
    }
    if total >= 1.0 {
        let scale = (1.0 - 1e-9) / total;
        probs.iter_mut().skip(1).for_each(|p| *p *= scale);
        total = 1.0 - 1e-9;
    }
    probs[0] = 1.0 - total;
    PauliChannel { qubits, probs }
}

fn lognormal_flip(rng: &mut ChaCha8Rng, mean: f64, shape: f64) -> f64 {
    lognormal_weight(rng, mean, shape).min(0.499_999)
}

/// Draw a log-normal noise instance for the given gate identities. Each
/// non-identity Pauli weight is log-normal with the class shape and a mean of
/// r_class divided by the number of non-identity Paulis; measurement, reset,
/// and SPAM flips are drawn analogously. Regenerating with the same
/// (parameters, gates, qubits, seed) reproduces the instance bit-exactly.
pub fn sample_lognormal_instance(
    params: &NoiseParameters,
    gate_ids: &[GateId],
    n_qubits: usize,
    seed: u64,
) -> Result<NoiseInstance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = NoiseInstance {
        seed: Some(seed),
        channels: BTreeMap::new(),
        meas_flips: BTreeMap::new(),
        reset_flips: BTreeMap::new(),
        spam_prep: BTreeMap::new(),
        spam_meas: BTreeMap::new(),
    };
    for id in sorted_ids(gate_ids) {
        let Some((rate, shape)) = params.class_of(id.kind) else {
            continue;
        };
        match id.kind {
            GateKind::MeasureZ => {
                inst.meas_flips.insert(id.to_string(), lognormal_flip(&mut rng, rate, shape));
            }
            GateKind::ResetZ => {
                inst.reset_flips.insert(id.to_string(), lognormal_flip(&mut rng, rate, shape));
            }
            _ => {
                let qubits = id.kind.arity() as u8;
                inst.channels
                    .insert(id.to_string(), lognormal_channel(&mut rng, qubits, rate, shape));
            }
        }
    }
    for q in 0..n_qubits {
        for basis in [Pauli::X, Pauli::Y, Pauli::Z] {
            inst.spam_prep
                .insert(spam_key(q, basis), lognormal_flip(&mut rng, params.rr, params.sr));
            inst.spam_meas
                .insert(spam_key(q, basis), lognormal_flip(&mut rng, params.rm, params.sm));
        }
    }
    Ok(inst)
}

/// Noise instance with every component error rate at its class average.
pub fn tuned_depolarizing_instance(
    params: &NoiseParameters,
    gate_ids: &[GateId],
    n_qubits: usize,
) -> Result<NoiseInstance> {
    params.validate()?;
    let mut inst = NoiseInstance {
        seed: None,
        channels: BTreeMap::new(),
        meas_flips: BTreeMap::new(),
        reset_flips: BTreeMap::new(),
        spam_prep: BTreeMap::new(),
        spam_meas: BTreeMap::new(),
    };
    for id in sorted_ids(gate_ids) {
        let Some((rate, _)) = params.class_of(id.kind) else {
            continue;
        };
        match id.kind {
            GateKind::MeasureZ => {
                inst.meas_flips.insert(id.to_string(), rate);
            }
            GateKind::ResetZ => {
                inst.reset_flips.insert(id.to_string(), rate);
            }
            _ => {
                let qubits = id.kind.arity() as u8;
                inst.channels
                    .insert(id.to_string(), crate::pauli::depolarizing_channel(qubits, rate)?);
            }
        }
    }
    for q in 0..n_qubits {
        for basis in [Pauli::X, Pauli::Y, Pauli::Z] {
            inst.spam_prep.insert(spam_key(q, basis), params.rr);
            inst.spam_meas.insert(spam_key(q, basis), params.rm);
        }
    }
    Ok(inst)
}

impl NoiseInstance {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<NoiseInstance> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn validate(&self) -> Result<()> {
        for c in self.channels.values() {
            c.validate()?;
        }
        for &p in self.meas_flips.values().chain(self.reset_flips.values()) {
            if !(0.0..=0.5).contains(&p) {
                return Err(Error::InvalidChannel(format!("flip probability {p}")));
            }
        }
        Ok(())
    }
}
