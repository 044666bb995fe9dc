//! Weighted Pauli-string Hamiltonians and their JSON file format.
//!
//! ```json
//! {"num_qubits":2,"provenance":"...","terms":[
//! {"coeff":0.5,"pauli":"ZZ"}
//! ]}
//! ```
//!
//! The leftmost character of a Pauli string acts on qubit 0. `provenance` is
//! optional free text describing where the terms came from.

use std::fmt;

use serde::Deserialize;

use crate::error::HamiltonianError;
use crate::io::float::format_g17;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub paulis: Vec<Pauli>,
    pub coeff: f64,
}

impl PauliTerm {
    /// Builds a term from a string like `"XIZ"`.
    pub fn parse(pauli: &str, coeff: f64) -> Result<PauliTerm, HamiltonianError> {
        let paulis = pauli
            .chars()
            .map(|c| Pauli::from_char(c).ok_or(HamiltonianError::InvalidCharacter { term: 0, character: c }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PauliTerm { paulis, coeff })
    }

    /// Qubits carrying a non-identity Pauli, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.paulis
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != Pauli::I)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.paulis.iter().filter(|p| **p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    pub fn pauli_string(&self) -> String {
        self.paulis.iter().map(|p| p.as_char()).collect()
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", format_g17(self.coeff), self.pauli_string())
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Hamiltonian {
    pub num_qubits: usize,
    pub terms: Vec<PauliTerm>,
    pub provenance: Option<String>,
}

impl Hamiltonian {
    pub fn new(num_qubits: usize, terms: Vec<PauliTerm>) -> Result<Self, HamiltonianError> {
        for (i, term) in terms.iter().enumerate() {
            if term.paulis.len() != num_qubits {
                return Err(HamiltonianError::LengthMismatch {
                    term: i,
                    expected: num_qubits,
                    found: term.paulis.len(),
                });
            }
            if !term.coeff.is_finite() {
                return Err(HamiltonianError::NonFiniteCoefficient { term: i });
            }
        }
        Ok(Hamiltonian { num_qubits, terms, provenance: None })
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = Some(provenance.into());
        self
    }

    /// Number of terms acting on exactly two qubits.
    pub fn two_qubit_interactions(&self) -> usize {
        self.terms.iter().filter(|t| t.weight() == 2).count()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HamiltonianDoc {
    num_qubits: usize,
    terms: Vec<TermDoc>,
    #[serde(default)]
    provenance: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    pauli: String,
    coeff: f64,
}

pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian, HamiltonianError> {
    let doc: HamiltonianDoc = serde_json::from_str(text)?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (i, t) in doc.terms.into_iter().enumerate() {
        let term = PauliTerm::parse(&t.pauli, t.coeff).map_err(|e| match e {
            HamiltonianError::InvalidCharacter { character, .. } => {
                HamiltonianError::InvalidCharacter { term: i, character }
            }
            other => other,
        })?;
        terms.push(term);
    }
    let h = Hamiltonian::new(doc.num_qubits, terms)?;
    Ok(Hamiltonian { provenance: doc.provenance, ..h })
}

/// Canonical text: keys sorted, one term per line, coefficients printed with
/// 17 significant digits.
pub fn emit_hamiltonian(h: &Hamiltonian) -> String {
    let mut out = format!("{{\"num_qubits\":{}", h.num_qubits);
    if let Some(p) = &h.provenance {
        out.push_str(",\"provenance\":");
        out.push_str(&serde_json::to_string(p).expect("strings always serialize"));
    }
    out.push_str(",\"terms\":[");
    for (i, term) in h.terms.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str(&format!(
            "{{\"coeff\":{},\"pauli\":\"{}\"}}",
            format_g17(term.coeff),
            term.pauli_string()
        ));
    }
    if !h.terms.is_empty() {
        out.push('\n');
    }
    out.push_str("]}");
    out
}
