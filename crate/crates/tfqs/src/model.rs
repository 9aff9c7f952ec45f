//! Resonant interaction Hamiltonians, spectra, and initial states.
//!
//! Each two-level atom exchanges one excitation with its own cavity mode, on
//! resonance (zero detuning).  Starting from l excited atoms and n photons in
//! every cavity, the dynamics stays inside a small excitation block:
//!
//! * one qubit: basis [(g, n+1), (e, n)], H = [[0, G], [G, 0]]
//!   with G = lambda * sqrt(n + 1);
//! * two qubits: basis [(gg, n+1 n+1), (ge, n+1 n), (eg, n n+1), (ee, n n)],
//!   H = G * [[0,1,1,0], [1,0,0,1], [1,0,0,1], [0,1,1,0]], plus the
//!   decoupled element (gg, n n) that no interaction term reaches.
//!
//! The two-qubit initial state a|gg,nn> + b|ee,nn> puts weight only on the
//! decoupled element and the last block element, with a, b >= 0 and
//! a^2 + b^2 = 1; its concurrence is 2ab.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type ModelResult<T> = Result<T, ModelError>;

/// Number of atom-cavity pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QubitCount {
    One,
    Two,
}

impl QubitCount {
    pub fn from_u8(l: u8) -> ModelResult<Self> {
        match l {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            _ => Err(ModelError::InvalidParameter(format!(
                "qubit count must be 1 or 2, got {l}"
            ))),
        }
    }

    pub fn count(self) -> usize {
        match self {
            Self::One => 1,
            Self::Two => 2,
        }
    }

    /// Dimension of the coupled excitation block.
    pub fn block_dim(self) -> usize {
        match self {
            Self::One => 2,
            Self::Two => 4,
        }
    }

    /// Dimension of the atomic (system) Hilbert space, 2^l.
    pub fn system_dim(self) -> usize {
        1 << self.count()
    }
}

/// Model parameters: coupling strength, initial photon number per cavity,
/// number of qubits.  The detuning is identically zero; the resonant block
/// structure above is only valid there, so nonzero values are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    coupling: f64,
    photon_number: u32,
    qubits: QubitCount,
    detuning: f64,
}

impl ModelParams {
    pub fn new(coupling: f64, photon_number: u32, qubits: QubitCount) -> ModelResult<Self> {
        Self::with_detuning(coupling, photon_number, qubits, 0.0)
    }

    pub fn with_detuning(
        coupling: f64,
        photon_number: u32,
        qubits: QubitCount,
        detuning: f64,
    ) -> ModelResult<Self> {
        if !coupling.is_finite() || !(0.0..=1.0).contains(&coupling) {
            return Err(ModelError::InvalidParameter(format!(
                "coupling must lie in [0, 1], got {coupling}"
            )));
        }
        if detuning != 0.0 {
            return Err(ModelError::InvalidParameter(format!(
                "only resonant dynamics is supported (detuning = 0), got {detuning}"
            )));
        }
        Ok(Self { coupling, photon_number, qubits, detuning })
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn photon_number(&self) -> u32 {
        self.photon_number
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    /// The block coupling G = lambda * sqrt(n + 1).
    pub fn block_coupling(&self) -> f64 {
        self.coupling * ((self.photon_number as f64) + 1.0).sqrt()
    }
}

/// State of one atom in a basis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomState {
    Ground,
    Excited,
}

impl AtomState {
    fn letter(self) -> char {
        match self {
            Self::Ground => 'g',
            Self::Excited => 'e',
        }
    }
}

/// One product-basis label: the joint atomic state and the photon number of
/// every cavity.  Two elements belong to the same environment sector exactly
/// when their photon lists are equal; that equality is what the partial
/// trace in [`crate::observables::reduce`] keys on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    atoms: Vec<AtomState>,
    photons: Vec<u64>,
}

impl BasisElement {
    fn new(atoms: Vec<AtomState>, photons: Vec<u64>) -> Self {
        assert_eq!(atoms.len(), photons.len());
        Self { atoms, photons }
    }

    pub fn atoms(&self) -> &[AtomState] {
        &self.atoms
    }

    pub fn photons(&self) -> &[u64] {
        &self.photons
    }

    /// Index of the atomic label in the computational basis
    /// {|g..g>, ..., |e..e>}, first atom most significant.
    pub fn system_index(&self) -> usize {
        self.atoms
            .iter()
            .fold(0, |acc, a| (acc << 1) | usize::from(*a == AtomState::Excited))
    }
}

impl std::fmt::Display for BasisElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|")?;
        for a in &self.atoms {
            write!(f, "{}", a.letter())?;
        }
        write!(f, ";")?;
        for (k, n) in self.photons.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ">")
    }
}

/// The ordered basis the propagator works in: the excitation block first,
/// then any decoupled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeBasis {
    qubits: QubitCount,
    elements: Vec<BasisElement>,
}

impl CompositeBasis {
    pub fn for_params(params: &ModelParams) -> Self {
        use AtomState::{Excited as E, Ground as G};
        let n = params.photon_number() as u64;
        let elements = match params.qubits() {
            QubitCount::One => vec![
                BasisElement::new(vec![G], vec![n + 1]),
                BasisElement::new(vec![E], vec![n]),
            ],
            QubitCount::Two => vec![
                BasisElement::new(vec![G, G], vec![n + 1, n + 1]),
                BasisElement::new(vec![G, E], vec![n + 1, n]),
                BasisElement::new(vec![E, G], vec![n, n + 1]),
                BasisElement::new(vec![E, E], vec![n, n]),
                BasisElement::new(vec![G, G], vec![n, n]),
            ],
        };
        Self { qubits: params.qubits(), elements }
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// How many leading elements the Hamiltonian couples.
    pub fn block_len(&self) -> usize {
        self.qubits.block_dim()
    }
}

/// A state vector with one complex amplitude per basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedStateVector {
    basis: CompositeBasis,
    amps: Vec<Complex64>,
}

impl TaggedStateVector {
    pub fn new(basis: CompositeBasis, amps: Vec<Complex64>) -> ModelResult<Self> {
        if basis.len() != amps.len() {
            return Err(ModelError::InvalidParameter(format!(
                "{} amplitudes for a basis of {} elements",
                amps.len(),
                basis.len()
            )));
        }
        Ok(Self { basis, amps })
    }

    pub fn basis(&self) -> &CompositeBasis {
        &self.basis
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Initial-state weights for the two-qubit case, a|gg,nn> + b|ee,nn>.
/// Both must be non-negative with a^2 + b^2 = 1.  The one-qubit case always
/// starts from |e, n> and ignores these weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    a: f64,
    b: f64,
}

impl InitialState {
    pub fn new(a: f64, b: f64) -> ModelResult<Self> {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            return Err(ModelError::InvalidParameter(format!(
                "weights must lie in [0, 1], got a = {a}, b = {b}"
            )));
        }
        let norm = a * a + b * b;
        if (norm - 1.0).abs() > 1e-12 {
            return Err(ModelError::InvalidParameter(format!(
                "weights must satisfy a^2 + b^2 = 1, got {norm}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Splits an initial concurrence C0 = 2ab into weights (a, b), taking the
/// branch with b >= a: b^2 = (1 + sqrt(1 - C0^2)) / 2.
///
/// C0 = 0 gives (0, 1) and C0 = 1 gives (1/sqrt(2), 1/sqrt(2)).
pub fn ab_from_concurrence(c0: f64) -> ModelResult<InitialState> {
    if !(0.0..=1.0).contains(&c0) {
        return Err(ModelError::InvalidParameter(format!(
            "concurrence must lie in [0, 1], got {c0}"
        )));
    }
    let b = ((1.0 + (1.0 - c0 * c0).sqrt()) / 2.0).sqrt();
    let a = c0 / (2.0 * b);
    InitialState::new(a, b)
}

/// The interaction Hamiltonian on the excitation block (real symmetric).
pub fn build_hamiltonian(params: &ModelParams) -> DMatrix<f64> {
    let g = params.block_coupling();
    match params.qubits() {
        QubitCount::One => DMatrix::from_row_slice(2, 2, &[0.0, g, g, 0.0]),
        QubitCount::Two => DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, g, g, 0.0, //
                g, 0.0, 0.0, g, //
                g, 0.0, 0.0, g, //
                0.0, g, g, 0.0,
            ],
        ),
    }
}

/// State at t = 0 over [`CompositeBasis::for_params`]: |e, n> for one qubit;
/// b on (ee, nn) plus a on the decoupled (gg, nn) for two.
pub fn initial_state(params: &ModelParams, init: &InitialState) -> TaggedStateVector {
    let basis = CompositeBasis::for_params(params);
    let amps = match params.qubits() {
        QubitCount::One => vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        QubitCount::Two => vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(init.b(), 0.0),
            Complex64::new(init.a(), 0.0),
        ],
    };
    TaggedStateVector::new(basis, amps).expect("basis and amplitude lengths match")
}

/// Eigenvalues (descending) and a deterministic orthonormal eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<DVector<f64>>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[DVector<f64>] {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (alpha, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            m += v * v.transpose() * *alpha;
        }
        m
    }
}

/// Diagonalizes a real symmetric matrix with a reproducible output:
/// eigenvalues sorted descending, eigenvalues closer than 1e-8 * scale
/// treated as one cluster, each cluster's basis rebuilt by Gram-Schmidt of
/// the projected standard basis vectors in index order, and every vector's
/// first significant component made positive.  Degenerate subspaces (the
/// two-qubit zero eigenvalue, or everything at lambda = 0) therefore always
/// come out the same way.
///
/// Fails with `NumericalFailure` when the reconstruction residual exceeds
/// 1e-10 * max(1, |H|).
pub fn spectral_decompose(h: &DMatrix<f64>) -> ModelResult<SpectralDecomposition> {
    let dim = h.nrows();
    if dim != h.ncols() || dim == 0 {
        return Err(ModelError::InvalidParameter(format!(
            "expected a square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let sym_defect = (h - h.transpose()).abs().max();
    let scale = h.abs().max().max(1.0);
    if sym_defect > 1e-12 * scale {
        return Err(ModelError::InvalidParameter(format!(
            "matrix is not symmetric (defect {sym_defect:.2e})"
        )));
    }

    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("symmetric eigenvalues are finite")
    });

    let cluster_tol = 1e-8 * scale;
    let mut eigenvalues = Vec::with_capacity(dim);
    let mut eigenvectors: Vec<DVector<f64>> = Vec::with_capacity(dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim
            && (eig.eigenvalues[order[start]] - eig.eigenvalues[order[end]]).abs() <= cluster_tol
        {
            end += 1;
        }
        let members = &order[start..end];
        let mean =
            members.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / (members.len() as f64);

        // projector onto the cluster subspace; basis-independent
        let mut proj = DMatrix::zeros(dim, dim);
        for &i in members {
            let v = eig.eigenvectors.column(i);
            proj += v * v.transpose();
        }

        let mut cluster_basis: Vec<DVector<f64>> = Vec::with_capacity(members.len());
        for k in 0..dim {
            if cluster_basis.len() == members.len() {
                break;
            }
            let mut w: DVector<f64> = proj.column(k).into();
            for v in &cluster_basis {
                let overlap = v.dot(&w);
                w -= v * overlap;
            }
            let norm = w.norm();
            if norm > 1e-6 {
                w /= norm;
                fix_sign(&mut w);
                cluster_basis.push(w);
            }
        }
        if cluster_basis.len() != members.len() {
            return Err(ModelError::NumericalFailure(format!(
                "could not span a {}-fold eigenvalue cluster at {mean:.6e}",
                members.len()
            )));
        }
        for w in cluster_basis {
            eigenvalues.push(mean);
            eigenvectors.push(w);
        }
        start = end;
    }

    let sd = SpectralDecomposition { eigenvalues, eigenvectors };
    let residual = (sd.reconstruct() - h).abs().max();
    if residual > 1e-10 * scale {
        return Err(ModelError::NumericalFailure(format!(
            "spectral reconstruction residual {residual:.2e} exceeds 1e-10 * {scale:.2e}"
        )));
    }
    Ok(sd)
}

fn fix_sign(v: &mut DVector<f64>) {
    for k in 0..v.len() {
        if v[k].abs() > 1e-9 {
            if v[k] < 0.0 {
                *v = -&*v;
            }
            return;
        }
    }
}
