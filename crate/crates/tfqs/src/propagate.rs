//! Time evolution under the four fractional-order evolution laws.
//!
//! Every law acts on a Hamiltonian eigenvalue alpha as a scalar factor
//! f(alpha, t); the state at time t is assembled from the spectral
//! decomposition as psi(t) = sum_q f(alpha_q, t) <u_q|psi0> |u_q>, with any
//! decoupled component carried through unchanged.  The factors are
//!
//! * Naber I:   E_beta((-i t)^beta alpha)
//! * Naber II:  E_beta(-i t^beta alpha)
//! * XGF:       exp((-i)^beta t^beta alpha / beta)
//! * new law:   exp(-i t^beta alpha / beta)
//!
//! with E_beta the Mittag-Leffler function from [`crate::mlf`].  The power
//! (-i)^beta is always the principal branch exp(-i pi beta / 2), so
//! (-i t)^beta = t^beta exp(-i pi beta / 2) for t >= 0; that branch is what
//! reproduces exp(-i alpha t) for every law at beta = 1.  Time is
//! dimensionless and restricted to t >= 0, where t^beta is unambiguous.
//!
//! [`closed_form_amplitudes`] rebuilds the same states from hand-expanded
//! amplitude formulas with hard-coded eigenvector coefficients, bypassing
//! [`crate::model::spectral_decompose`] entirely.  It exists as an
//! independent cross-check of [`evolve`]; production paths use `evolve`.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use thiserror::Error;

use crate::mlf::{self, MlfError};
use crate::model::{
    initial_state, CompositeBasis, InitialState, ModelError, ModelParams, QubitCount,
    SpectralDecomposition, TaggedStateVector,
};

#[derive(Debug, Error)]
pub enum PropagateError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid time: {0}")]
    InvalidTime(String),
    #[error("evolution factor overflowed double range ({0})")]
    Overflow(String),
    #[error(transparent)]
    Mlf(#[from] MlfError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub type PropagateResult<T> = Result<T, PropagateError>;

/// Order beta of the time derivative, restricted to (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(beta: f64) -> PropagateResult<Self> {
        if !beta.is_finite() || beta <= 0.0 || beta > 1.0 {
            return Err(PropagateError::InvalidParameter(format!(
                "fractional order must lie in (0, 1], got {beta}"
            )));
        }
        Ok(Self(beta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Which fractional derivative a law is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeKind {
    Caputo,
    Conformable,
}

/// Static facts about one evolution law: the derivative it fractionalizes,
/// the complex-time substitution that places the imaginary unit, the scalar
/// factor applied to an eigenvalue, and whether the law is local in time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantInfo {
    pub derivative: DerivativeKind,
    pub time_substitution: &'static str,
    pub evolution_factor: &'static str,
    pub time_local: bool,
}

/// The four evolution laws.  The declaration order is the canonical sort
/// order used for sweep output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TfseVariant {
    NaberI,
    NaberII,
    Xgf,
    NewTfse,
}

impl TfseVariant {
    pub const ALL: [TfseVariant; 4] =
        [Self::NaberI, Self::NaberII, Self::Xgf, Self::NewTfse];

    /// Short name used on the command line and in CSV output.
    pub fn cli_name(self) -> &'static str {
        match self {
            Self::NaberI => "naber1",
            Self::NaberII => "naber2",
            Self::Xgf => "xgf",
            Self::NewTfse => "new",
        }
    }

    pub fn from_cli_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.cli_name() == name)
    }

    /// Human-readable name used in plot legends and titles.
    pub fn label(self) -> &'static str {
        match self {
            Self::NaberI => "Naber I",
            Self::NaberII => "Naber II",
            Self::Xgf => "XGF",
            Self::NewTfse => "New",
        }
    }

    pub fn info(self) -> VariantInfo {
        match self {
            Self::NaberI => VariantInfo {
                derivative: DerivativeKind::Caputo,
                time_substitution: "t -> t/i",
                evolution_factor: "E_beta((-i t)^beta H)",
                time_local: false,
            },
            Self::NaberII => VariantInfo {
                derivative: DerivativeKind::Caputo,
                time_substitution: "t -> t/i^(1/beta)",
                evolution_factor: "E_beta(-i t^beta H)",
                time_local: false,
            },
            Self::Xgf => VariantInfo {
                derivative: DerivativeKind::Conformable,
                time_substitution: "t -> t/(i beta^(1/beta))",
                evolution_factor: "exp((-i)^beta t^beta H / beta)",
                time_local: true,
            },
            Self::NewTfse => VariantInfo {
                derivative: DerivativeKind::Conformable,
                time_substitution: "t -> t/(i beta)^(1/beta)",
                evolution_factor: "exp(-i t^beta H / beta)",
                time_local: true,
            },
        }
    }
}

/// Everything needed to evolve one prepared system: the law, the order, the
/// Hamiltonian spectrum, and the initial state over the matching basis.
#[derive(Debug, Clone)]
pub struct EvolutionSpec {
    variant: TfseVariant,
    beta: FractionalOrder,
    spectrum: SpectralDecomposition,
    psi0: TaggedStateVector,
}

impl EvolutionSpec {
    pub fn new(
        variant: TfseVariant,
        beta: FractionalOrder,
        spectrum: SpectralDecomposition,
        psi0: TaggedStateVector,
    ) -> PropagateResult<Self> {
        if spectrum.dim() != psi0.basis().block_len() {
            return Err(PropagateError::InvalidParameter(format!(
                "spectrum dimension {} does not match the {}-element coupled block",
                spectrum.dim(),
                psi0.basis().block_len()
            )));
        }
        let norm = psi0.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(PropagateError::InvalidParameter(format!(
                "initial state must be normalized, got |psi0|^2 = {norm}"
            )));
        }
        Ok(Self { variant, beta, spectrum, psi0 })
    }

    /// Builds the Hamiltonian, decomposes it, and prepares the initial
    /// state for the given model in one step.
    pub fn for_model(
        variant: TfseVariant,
        beta: FractionalOrder,
        params: &ModelParams,
        init: &InitialState,
    ) -> PropagateResult<Self> {
        let spectrum = crate::model::spectral_decompose(&crate::model::build_hamiltonian(params))?;
        Self::new(variant, beta, spectrum, initial_state(params, init))
    }

    pub fn variant(&self) -> TfseVariant {
        self.variant
    }

    pub fn beta(&self) -> FractionalOrder {
        self.beta
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn psi0(&self) -> &TaggedStateVector {
        &self.psi0
    }
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// exp(-i pi beta / 2), the principal branch of (-i)^beta.
fn principal_root(beta: f64) -> Complex64 {
    Complex64::from_polar(1.0, -FRAC_PI_2 * beta)
}

/// The scalar evolution factor a law applies to eigenvalue `alpha` at time
/// `t`.  Exactly 1 at t = 0 and at alpha = 0 for every law.
pub fn teo_scalar(
    variant: TfseVariant,
    beta: FractionalOrder,
    alpha: f64,
    t: f64,
) -> PropagateResult<Complex64> {
    if !t.is_finite() || t < 0.0 {
        return Err(PropagateError::InvalidTime(format!(
            "evolution is defined for finite t >= 0, got {t}"
        )));
    }
    if !alpha.is_finite() {
        return Err(PropagateError::InvalidParameter(format!(
            "eigenvalue must be finite, got {alpha}"
        )));
    }
    if t == 0.0 || alpha == 0.0 {
        return Ok(ONE);
    }
    let b = beta.value();
    let x = t.powf(b) * alpha;
    let factor = match variant {
        TfseVariant::NaberI => mlf::ml(b, principal_root(b) * x, mlf::DEFAULT_TOLERANCE)?,
        TfseVariant::NaberII => mlf::ml(b, Complex64::new(0.0, -x), mlf::DEFAULT_TOLERANCE)?,
        TfseVariant::Xgf => (principal_root(b) * (x / b)).exp(),
        TfseVariant::NewTfse => Complex64::new(0.0, -x / b).exp(),
    };
    if !factor.re.is_finite() || !factor.im.is_finite() {
        return Err(PropagateError::Overflow(format!(
            "{} at beta = {}, alpha = {alpha}, t = {t}",
            variant.label(),
            beta
        )));
    }
    Ok(factor)
}

/// Evolves the prepared state to time `t` through the spectral
/// decomposition.  At t = 0 the initial state is returned exactly;
/// amplitudes outside the coupled block pass through unchanged.
pub fn evolve(spec: &EvolutionSpec, t: f64) -> PropagateResult<TaggedStateVector> {
    if !t.is_finite() || t < 0.0 {
        return Err(PropagateError::InvalidTime(format!(
            "evolution is defined for finite t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(spec.psi0.clone());
    }
    let basis = spec.psi0.basis();
    let block = basis.block_len();
    let psi0 = spec.psi0.amps();
    let mut amps = vec![Complex64::new(0.0, 0.0); basis.len()];
    for (alpha, u) in spec.spectrum.eigenvalues().iter().zip(spec.spectrum.eigenvectors()) {
        let factor = teo_scalar(spec.variant, spec.beta, *alpha, t)?;
        let mut overlap = Complex64::new(0.0, 0.0);
        for i in 0..block {
            overlap += psi0[i] * u[i];
        }
        let weight = factor * overlap;
        for i in 0..block {
            amps[i] += weight * u[i];
        }
    }
    amps[block..].copy_from_slice(&psi0[block..]);
    Ok(TaggedStateVector::new(basis.clone(), amps)?)
}

// Eigenvector coefficients used by the hand-expanded amplitudes: the
// one-qubit eigenvectors (a', +-b') and the two-qubit ones (c, +-d, +-f, h)
// with the zero-eigenvalue pair (m, 0, 0, -k), all at the symmetric values
// a' = b' = m = k = sqrt(2)/2 and c = d = f = h = 1/2.  Only the products
// below enter the amplitudes, and all of them are exact in f64.
const APBP: f64 = 0.5; // a'b'
const BPBP: f64 = 0.5; // b'^2
const CH: f64 = 0.25; // ch = dh = fh = h^2
const MK: f64 = 0.5; // mk = k^2

/// The factor pair (f at +g, f at -g) for block coupling `g`, written out
/// from each law's explicit solution rather than routed through
/// [`teo_scalar`].
fn factor_pair(
    variant: TfseVariant,
    beta: FractionalOrder,
    g: f64,
    t: f64,
) -> PropagateResult<(Complex64, Complex64)> {
    let b = beta.value();
    let x = t.powf(b) * g;
    let pair = match variant {
        TfseVariant::NaberI => {
            let w = principal_root(b) * x;
            (mlf::ml(b, w, mlf::DEFAULT_TOLERANCE)?, mlf::ml(b, -w, mlf::DEFAULT_TOLERANCE)?)
        }
        TfseVariant::NaberII => (
            mlf::ml(b, Complex64::new(0.0, -x), mlf::DEFAULT_TOLERANCE)?,
            mlf::ml(b, Complex64::new(0.0, x), mlf::DEFAULT_TOLERANCE)?,
        ),
        TfseVariant::Xgf => {
            let w = principal_root(b) * (x / b);
            (w.exp(), (-w).exp())
        }
        TfseVariant::NewTfse => {
            let w = Complex64::new(0.0, -x / b);
            (w.exp(), (-w).exp())
        }
    };
    if !(pair.0.re.is_finite() && pair.0.im.is_finite() && pair.1.re.is_finite() && pair.1.im.is_finite()) {
        return Err(PropagateError::Overflow(format!(
            "{} at beta = {beta}, coupling = {g}, t = {t}",
            variant.label()
        )));
    }
    Ok(pair)
}

/// Amplitudes at time `t` from the hand-expanded solution of each law,
/// with the eigenvector coefficients above hard-coded.  Independent of the
/// numerical spectral decomposition; used to cross-validate [`evolve`].
pub fn closed_form_amplitudes(
    variant: TfseVariant,
    params: &ModelParams,
    init: &InitialState,
    beta: FractionalOrder,
    t: f64,
) -> PropagateResult<TaggedStateVector> {
    if !t.is_finite() || t < 0.0 {
        return Err(PropagateError::InvalidTime(format!(
            "evolution is defined for finite t >= 0, got {t}"
        )));
    }
    let basis = CompositeBasis::for_params(params);
    let lam = params.block_coupling();
    let amps = match params.qubits() {
        QubitCount::One => {
            let (fa, fb) = factor_pair(variant, beta, lam, t)?;
            vec![(fa - fb) * APBP, (fa + fb) * BPBP]
        }
        QubitCount::Two => {
            let (fa, fb) = factor_pair(variant, beta, 2.0 * lam, t)?;
            let b = init.b();
            vec![
                (fa + fb) * (CH * b) - MK * b,
                (fa - fb) * (CH * b),
                (fa - fb) * (CH * b),
                (fa + fb) * (CH * b) + Complex64::new(MK * b, 0.0),
                Complex64::new(init.a(), 0.0),
            ]
        }
    };
    Ok(TaggedStateVector::new(basis, amps)?)
}
