use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of variables in the global table.
pub const NVARS: usize = 10;

/// The fixed variable table shared by every polynomial.
///
/// The order is significant: it fixes the exponent layout of [`Monomial`],
/// the lexicographic tie-break of the monomial order, and the JSON schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    L1,
    L2,
    L3,
    L4,
    X1,
    X2,
    Y1,
    Y2,
    S1,
    S2,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::L1,
        Var::L2,
        Var::L3,
        Var::L4,
        Var::X1,
        Var::X2,
        Var::Y1,
        Var::Y2,
        Var::S1,
        Var::S2,
    ];

    pub const LAMBDAS: [Var; 4] = [Var::L1, Var::L2, Var::L3, Var::L4];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::L1 => "l1",
            Var::L2 => "l2",
            Var::L3 => "l3",
            Var::L4 => "l4",
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::Y1 => "y1",
            Var::Y2 => "y2",
            Var::S1 => "s1",
            Var::S2 => "s2",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Var::L1 => "\\lambda_1",
            Var::L2 => "\\lambda_2",
            Var::L3 => "\\lambda_3",
            Var::L4 => "\\lambda_4",
            Var::X1 => "x_1",
            Var::X2 => "x_2",
            Var::Y1 => "y_1",
            Var::Y2 => "y_2",
            Var::S1 => "s_1",
            Var::S2 => "s_2",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }

    pub fn is_lambda(self) -> bool {
        self.index() < 4
    }

    #[inline]
    pub(crate) fn bit(self) -> u16 {
        1 << self.index()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over the global variable table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) [u8; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn from_exponents(exps: [u8; NVARS]) -> Self {
        Monomial(exps)
    }

    pub fn var(v: Var, e: u8) -> Self {
        let mut m = Monomial::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn exponents(&self) -> &[u8; NVARS] {
        &self.0
    }

    #[inline]
    pub fn exponent(&self, v: Var) -> u8 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u8; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = [0u8; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].min(other.0[i]);
        }
        Monomial(out)
    }

    pub(crate) fn var_mask(&self) -> u16 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub(crate) fn with_exponent(mut self, v: Var, e: u8) -> Monomial {
        self.0[v.index()] = e;
        self
    }

    /// Sum of the exponents of λ₁..λ₄.
    pub fn lambda_degree(&self) -> u32 {
        self.0[..4].iter().map(|&e| e as u32).sum()
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `l1 > l2 > ... > s2`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
