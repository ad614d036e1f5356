use aces_qec::circuit::*;
use aces_qec::frame::detector_frame_propagate;
use aces_qec::pauli::{Pauli, PauliString};
use aces_qec::tableau::Tableau;
use std::sync::Arc;

fn single(kind: GateKind, targets: Vec<usize>, name: &str) -> Layer {
    let c: LayerContext = Arc::from(name);
    Layer::new(c.clone(), vec![Gate::new(kind, targets, c)]).unwrap()
}

fn check(circuit: &Circuit, fault_layer: usize, fault: &PauliString) -> bool {
    let flips = detector_frame_propagate(circuit, fault_layer, fault).unwrap();
    let max_vars = circuit.num_measurements() + 4;
    let mut clean = Tableau::new(circuit.n_qubits, max_vars);
    let base = clean.run(circuit, None).unwrap();
    let mut faulty = Tableau::new(circuit.n_qubits, max_vars);
    let with_fault = faulty.run(circuit, Some((fault_layer, fault))).unwrap();
    for (ev, (a, b)) in base.iter().zip(&with_fault).enumerate() {
        let diff = a.xor(b);
        if !diff.is_deterministic() || diff.constant != flips.contains(&ev) {
            return false;
        }
    }
    true
}

fn main() {
    // exhaustive search over tiny circuits: 2 qubits, 2 unitary layers + meas
    let kinds = [GateKind::H, GateKind::S, GateKind::X, GateKind::Z, GateKind::CX, GateKind::CZ];
    for &k1 in &kinds {
        for &k2 in &kinds {
            for f in 1..16u16 {
                for fl in 0..3usize {
                    let t1 = if k1.arity() == 2 { vec![0, 1] } else { vec![0] };
                    let t2 = if k2.arity() == 2 { vec![1, 0] } else { vec![1] };
                    let mut layers = vec![single(k1, t1.clone(), "a"), single(k2, t2.clone(), "b")];
                    let c: LayerContext = Arc::from("m");
                    layers.push(
                        Layer::new(
                            c.clone(),
                            vec![
                                Gate::new(GateKind::MeasureZ, vec![0], c.clone()),
                                Gate::new(GateKind::MeasureZ, vec![1], c.clone()),
                            ],
                        )
                        .unwrap(),
                    );
                    let circuit = Circuit::new(2, layers).unwrap();
                    let fault = PauliString::from_local(2, &[0, 1], aces_qec::pauli::LocalPauli::new(2, f));
                    if !check(&circuit, fl, &fault) {
                        println!("FAIL k1={k1:?} t1={t1:?} k2={k2:?} t2={t2:?} fault={f} layer={fl}");
                        return;
                    }
                }
            }
        }
    }
    println!("tiny circuits all agree");
}
