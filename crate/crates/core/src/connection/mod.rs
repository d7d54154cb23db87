//! The connection matrices of the F₄ Pfaffian system in its several frames,
//! the intersection data, and exact verifiers for the identities relating them.

mod params;
pub mod printed;
mod scalar_pde;
pub(crate) mod sym;
mod verify;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use params::{ParameterDictionary, ResidueRow};
pub use scalar_pde::{
    derive_scalar_pde, verify_scalar_pde, EliminationError, ScalarOperator, ScalarPde,
};
pub use verify::*;

use crate::algebra::{Polynomial, RationalFunction, Var};
use crate::forms::{CoordinateMap, FMatrix, FormsError, MatrixOneForm};
use sym::{i, y1, y2};

pub const X_COORDS: (Var, Var) = (Var::X1, Var::X2);
pub const Y_COORDS: (Var, Var) = (Var::Y1, Var::Y2);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frame {
    Phi,
    PhiTilde,
    PhiHat,
    Derivative,
}

/// Components of the pole divisor of Ξ̂ in the y-plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisorLabel {
    Y1,
    Y2,
    Y1m1,
    Y2m1,
    Line,
}

impl DivisorLabel {
    pub const ALL: [DivisorLabel; 5] = [
        DivisorLabel::Y1,
        DivisorLabel::Y2,
        DivisorLabel::Y1m1,
        DivisorLabel::Y2m1,
        DivisorLabel::Line,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DivisorLabel::Y1 => "y1",
            DivisorLabel::Y2 => "y2",
            DivisorLabel::Y1m1 => "y1m1",
            DivisorLabel::Y2m1 => "y2m1",
            DivisorLabel::Line => "line",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.name() == s)
    }

    /// The defining polynomial of the divisor.
    pub fn polynomial(self) -> Polynomial {
        let (a, b) = (Polynomial::var(Var::Y1), Polynomial::var(Var::Y2));
        match self {
            DivisorLabel::Y1 => a,
            DivisorLabel::Y2 => b,
            DivisorLabel::Y1m1 => a - Polynomial::one(),
            DivisorLabel::Y2m1 => b - Polynomial::one(),
            DivisorLabel::Line => a + b - Polynomial::one(),
        }
    }
}

/// `residue · dlog(divisor)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogTerm {
    pub label: DivisorLabel,
    pub residue: FMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionSystem {
    pub frame: Frame,
    pub form: MatrixOneForm,
    pub divisors: Vec<LogTerm>,
}

impl ConnectionSystem {
    /// Assembles `Σ residue · dlog(divisor)` in the y-coordinates.
    pub fn from_log_terms(frame: Frame, terms: Vec<LogTerm>) -> Self {
        let n = terms.first().map_or(4, |t| t.residue.rows());
        let mut parts = [FMatrix::zeros(n, n), FMatrix::zeros(n, n)];
        for t in &terms {
            let d: RationalFunction = t.label.polynomial().into();
            for (k, v) in [Var::Y1, Var::Y2].into_iter().enumerate() {
                let c = &d.partial(v) / &d;
                if !c.is_zero() {
                    parts[k] = &parts[k] + &t.residue.scale(&c);
                }
            }
        }
        let [p0, p1] = parts;
        ConnectionSystem {
            frame,
            form: MatrixOneForm {
                coords: Y_COORDS,
                parts: [p0, p1],
            },
            divisors: terms,
        }
    }

    pub fn residue(&self, label: DivisorLabel) -> Option<&FMatrix> {
        self.divisors
            .iter()
            .find(|t| t.label == label)
            .map(|t| &t.residue)
    }
}

/// Ξ = Ξ¹dx₁ + Ξ²dx₂ in the frame φ₁..φ₄.
pub fn build_xi(_dict: &ParameterDictionary) -> ConnectionSystem {
    ConnectionSystem {
        frame: Frame::Phi,
        form: MatrixOneForm {
            coords: X_COORDS,
            parts: [printed::xi1(), printed::xi2()],
        },
        divisors: Vec::new(),
    }
}

/// Ξ̃ as printed (not computed).
pub fn build_xi_tilde_printed(_dict: &ParameterDictionary) -> ConnectionSystem {
    ConnectionSystem {
        frame: Frame::PhiTilde,
        form: MatrixOneForm {
            coords: Y_COORDS,
            parts: [printed::xi_tilde1(), printed::xi_tilde2()],
        },
        divisors: Vec::new(),
    }
}

/// Ξ̂ assembled from its printed residues.
pub fn build_xi_hat(_dict: &ParameterDictionary) -> ConnectionSystem {
    let ii = printed::i31();
    let conj = |m: &FMatrix| &(&ii * m) * &ii;
    let (h1, h2, h3) = (printed::xi_hat1(), printed::xi_hat2(), printed::xi_hat3());
    ConnectionSystem::from_log_terms(
        Frame::PhiHat,
        vec![
            LogTerm {
                label: DivisorLabel::Y1,
                residue: h1.clone(),
            },
            LogTerm {
                label: DivisorLabel::Y2,
                residue: h2.clone(),
            },
            LogTerm {
                label: DivisorLabel::Y1m1,
                residue: conj(&h2),
            },
            LogTerm {
                label: DivisorLabel::Y2m1,
                residue: conj(&h1),
            },
            LogTerm {
                label: DivisorLabel::Line,
                residue: h3,
            },
        ],
    )
}

/// Θ = G_∂ Ξ G_∂⁻¹ + dG_∂ G_∂⁻¹ for the frame `(f, x₁∂₁f, x₂∂₂f, x₁x₂∂₁∂₂f)`.
pub fn build_derivative_frame(dict: &ParameterDictionary) -> Result<ConnectionSystem, FormsError> {
    let xi = build_xi(dict);
    Ok(ConnectionSystem {
        frame: Frame::Derivative,
        form: xi.form.gauge_transform(&printed::g_partial())?,
        divisors: Vec::new(),
    })
}

/// `x₁ = y₁(1−y₂)`, `x₂ = (1−y₁)y₂` with its Jacobian.
pub fn double_cover_map() -> CoordinateMap {
    let mut bindings = HashMap::new();
    bindings.insert(Var::X1, y1() * (i(1) - y2()));
    bindings.insert(Var::X2, (i(1) - y1()) * y2());
    CoordinateMap {
        source: X_COORDS,
        target: Y_COORDS,
        bindings,
        jacobian: [[i(1) - y2(), -y1()], [-y2(), i(1) - y1()]],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionData {
    pub c: FMatrix,
    pub c_aij: FMatrix,
    pub chat: FMatrix,
    pub c1: FMatrix,
    pub c2: FMatrix,
    /// e₂ … e₆.
    pub e: [Vec<RationalFunction>; 5],
}

impl IntersectionData {
    /// `e_k` for `k ∈ 2..=6`.
    pub fn e(&self, k: usize) -> &[RationalFunction] {
        &self.e[k - 2]
    }

    pub fn e_row(&self, k: usize) -> FMatrix {
        FMatrix::row_vector(self.e(k).to_vec())
    }
}

pub fn build_intersection(_dict: &ParameterDictionary) -> IntersectionData {
    IntersectionData {
        c: printed::c_lambda(),
        c_aij: printed::c_aij(),
        chat: printed::c_hat(),
        c1: printed::c_hat1(),
        c2: printed::c_hat2(),
        e: printed::e_vectors(),
    }
}
