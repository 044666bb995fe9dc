//! Plumbing shared by the routers: a full physical permutation, timeouts and
//! result assembly.

use std::time::{Duration, Instant};

use crate::circuit::{Gate, QuantumCircuit};
use crate::evaluation::measured;
use crate::mappers::{FailureReason, Layout, MappedCircuit, MapperParams};

/// Wall-clock budget. `None` never expires.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline(Option<Instant>);

impl Deadline {
    pub(crate) fn from_params(params: &MapperParams) -> Deadline {
        Deadline(params.timeout_s.map(|s| Instant::now() + Duration::from_secs_f64(s)))
    }

    pub(crate) fn check(&self) -> Result<(), FailureReason> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(FailureReason::Timeout),
            _ => Ok(()),
        }
    }
}

/// Bijection between "virtual" and physical qubits. Virtual ids `0..n` are the
/// circuit's logical qubits; the rest stand for free physical slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PhysLayout {
    pub(crate) l2p: Vec<usize>,
    pub(crate) p2l: Vec<usize>,
}

impl PhysLayout {
    /// Free physical qubits receive the spare virtual ids in index order.
    pub(crate) fn extend(layout: &Layout, num_physical: usize) -> PhysLayout {
        let mut l2p = layout.as_slice().to_vec();
        let mut used = vec![false; num_physical];
        for &p in &l2p {
            used[p] = true;
        }
        l2p.extend((0..num_physical).filter(|&p| !used[p]));
        PhysLayout::from_l2p(l2p)
    }

    pub(crate) fn from_l2p(l2p: Vec<usize>) -> PhysLayout {
        let mut p2l = vec![0; l2p.len()];
        for (l, &p) in l2p.iter().enumerate() {
            p2l[p] = l;
        }
        PhysLayout { l2p, p2l }
    }

    #[inline]
    pub(crate) fn swap_physical(&mut self, p: usize, q: usize) {
        let (lp, lq) = (self.p2l[p], self.p2l[q]);
        self.p2l.swap(p, q);
        self.l2p[lp] = q;
        self.l2p[lq] = p;
    }

    pub(crate) fn to_layout(&self, num_logical: usize) -> Layout {
        Layout::new(self.l2p[..num_logical].to_vec()).expect("permutation restricts to an injection")
    }

    #[inline]
    pub(crate) fn place(&self, gate: &Gate) -> Gate {
        gate.remapped(|q| self.l2p[q])
    }
}

pub(crate) fn assemble(
    num_physical: usize,
    gates: Vec<Gate>,
    initial: Layout,
    final_layout: Layout,
) -> Result<MappedCircuit, FailureReason> {
    let circuit = QuantumCircuit::from_gates(num_physical, gates)
        .map_err(|e| FailureReason::Internal(format!("router emitted an invalid gate: {e}")))?;
    Ok(measured(circuit, initial, final_layout))
}
