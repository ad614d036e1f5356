use aces_qec::circuit::*;
use aces_qec::pauli::{LocalPauli, Pauli, PauliString};
use aces_qec::surface::*;

fn main() {
    let spec = MemoryExperimentSpec { distance: 3, rounds: 4, basis: MemoryBasis::Z };
    let (circuit, _, _) = build_memory_circuit(&spec).unwrap();
    let gate = circuit.layers[14].gates[0].clone();
    let mut frame = PauliString::from_local(circuit.n_qubits, &gate.targets, LocalPauli::parse("XZ").unwrap());
    println!("start support: {:?}", frame.support());
    for li in 15..circuit.layers.len() {
        let layer = &circuit.layers[li];
        for g in &layer.gates {
            match g.kind {
                GateKind::MeasureZ => {
                    if frame.x_bit(g.targets[0]) {
                        println!("L{li} {} FLIP meas q{}", layer.context, g.targets[0]);
                    }
                }
                GateKind::ResetZ => {
                    frame.set(g.targets[0], Pauli::I);
                }
                _ => {
                    conjugate(g.kind, &g.targets, &mut frame).unwrap();
                }
            }
        }
        println!("after L{li} ({}): {:?}", layer.context, frame.support().iter().map(|&q| (q, frame.get(q).label())).collect::<Vec<_>>());
        if frame.support().is_empty() { break; }
    }
}
