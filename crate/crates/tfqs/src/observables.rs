//! Reduced density matrices and the probabilities read off from them.
//!
//! The environment is traced out by matching photon labels: two basis
//! elements contribute a density-matrix entry only when their photon lists
//! coincide exactly.  The resulting matrix is Hermitian and positive
//! semidefinite, but its trace is left as computed: all laws except the
//! conformable one with the linear complex-time substitution drift away
//! from trace one when beta < 1, and that drift is an observable here, not
//! an error.  Probabilities of specific outcomes are therefore reported as
//! ratios against the total.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{QubitCount, TaggedStateVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ObservablesError {
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("degenerate state: {0}")]
    DegenerateState(String),
}

pub type ObservablesResult<T> = Result<T, ObservablesError>;

const LABELS_ONE: [&str; 2] = ["g", "e"];
const LABELS_TWO: [&str; 4] = ["gg", "ge", "eg", "ee"];

/// Density matrix of the atoms in the computational basis {|g>, |e>} or
/// {|gg>, |ge>, |eg>, |ee>}.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDensityMatrix {
    qubits: QubitCount,
    entries: DMatrix<Complex64>,
}

impl SystemDensityMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Names of the computational basis states, in row order.
    pub fn basis_labels(&self) -> &'static [&'static str] {
        match self.qubits {
            QubitCount::One => &LABELS_ONE,
            QubitCount::Two => &LABELS_TWO,
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entries[(i, i)]).sum()
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue, computed through the real symmetric embedding
    /// [[X, -Y], [Y, X]] of X + iY (same spectrum, doubled multiplicity).
    pub fn min_eigenvalue(&self) -> f64 {
        let d = self.dim();
        let mut real = DMatrix::zeros(2 * d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                let z = self.entries[(i, j)];
                real[(i, j)] = z.re;
                real[(i + d, j + d)] = z.re;
                real[(i, j + d)] = -z.im;
                real[(i + d, j)] = z.im;
            }
        }
        // symmetrize away the Hermitian roundoff defect before the solve
        let sym = (&real + real.transpose()) * 0.5;
        sym.symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Traces out the photon labels: entry (s, s') collects
/// amp_i * conj(amp_j) over all element pairs whose photon lists are equal,
/// where s and s' are the atomic labels of elements i and j.
pub fn reduce(psi: &TaggedStateVector) -> ObservablesResult<SystemDensityMatrix> {
    let basis = psi.basis();
    let qubits = basis.qubits();
    let l = qubits.count();
    for el in basis.elements() {
        if el.atoms().len() != l || el.photons().len() != l {
            return Err(ObservablesError::BasisMismatch(format!(
                "element {el} does not carry {l} atom and photon labels"
            )));
        }
    }
    let dim = qubits.system_dim();
    let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    let amps = psi.amps();
    for (i, ei) in basis.elements().iter().enumerate() {
        for (j, ej) in basis.elements().iter().enumerate() {
            if ei.photons() == ej.photons() {
                entries[(ei.system_index(), ej.system_index())] += amps[i] * amps[j].conj();
            }
        }
    }
    Ok(SystemDensityMatrix { qubits, entries })
}

/// The total probability: the trace of the reduced density matrix.  Equal
/// to 1 only for norm-preserving evolution.
pub fn total_probability(rho: &SystemDensityMatrix) -> f64 {
    rho.trace().re
}

/// Probability of finding every atom excited (|e> or |ee>), as the ratio
/// of that population to the total probability.
pub fn excited_probability(rho: &SystemDensityMatrix) -> ObservablesResult<f64> {
    let total = total_probability(rho);
    if total <= 1e-14 {
        return Err(ObservablesError::DegenerateState(format!(
            "total probability {total:.3e} is too small to normalize against"
        )));
    }
    let last = rho.dim() - 1;
    Ok(rho.entry(last, last).re / total)
}

/// Concurrence of the initial two-qubit state with weights (a, b), equal
/// to 2ab.  Callers are expected to pass normalized weights.
pub fn concurrence_initial(a: f64, b: f64) -> f64 {
    2.0 * a * b
}

/// Counts indices whose value exceeds both neighbors by more than `tol`.
/// Endpoints never count.  Used as the oscillation witness on sampled
/// probability curves.
pub fn strict_local_maxima(values: &[f64], tol: f64) -> usize {
    values
        .windows(3)
        .filter(|w| w[1] > w[0] + tol && w[1] > w[2] + tol)
        .count()
}
