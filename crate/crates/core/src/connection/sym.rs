//! Short constructors for the symbols that appear in the printed matrices.

use crate::algebra::{r_of_x, ri, RationalFunction, Var};

pub(crate) fn l(i: usize) -> RationalFunction {
    match i {
        1 => Var::L1.into(),
        2 => Var::L2.into(),
        3 => Var::L3.into(),
        4 => Var::L4.into(),
        _ => panic!("lambda index {i} out of range"),
    }
}

/// λ₀ = −(λ₁+λ₂+2λ₃+λ₄)
pub(crate) fn l0() -> RationalFunction {
    -(l(1) + l(2) + ri(2) * l(3) + l(4))
}

/// λ₁₂₃ = λ₁+λ₂+λ₃
pub(crate) fn l123() -> RationalFunction {
    l(1) + l(2) + l(3)
}

/// λ₁₃₄⁻ = −(λ₁+λ₃+λ₄)
pub(crate) fn l134m() -> RationalFunction {
    -(l(1) + l(3) + l(4))
}

/// λ₂₃₄⁻ = −(λ₂+λ₃+λ₄)
pub(crate) fn l234m() -> RationalFunction {
    -(l(2) + l(3) + l(4))
}

pub(crate) fn x1() -> RationalFunction {
    Var::X1.into()
}

pub(crate) fn x2() -> RationalFunction {
    Var::X2.into()
}

pub(crate) fn y1() -> RationalFunction {
    Var::Y1.into()
}

pub(crate) fn y2() -> RationalFunction {
    Var::Y2.into()
}

pub(crate) fn rx() -> RationalFunction {
    r_of_x().into()
}

pub(crate) fn i(c: i64) -> RationalFunction {
    ri(c)
}
