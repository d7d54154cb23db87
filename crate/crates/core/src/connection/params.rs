use serde::Serialize;

use super::sym::{i, l, l0, l123, l134m, l234m};
use crate::algebra::RationalFunction;

/// One row of the residue table of the pole divisor of ω.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueRow {
    pub divisor: &'static str,
    pub lambda_name: &'static str,
    pub lambda: RationalFunction,
    pub aij_name: &'static str,
    /// The residue written in the `a_ij, b_ij` symbols (signed).
    pub aij: RationalFunction,
    /// The residue written in `a, b, c₁, c₂`.
    pub abc: RationalFunction,
}

/// The symbolic dictionary between `λ₁..λ₄`, `(a, b, c₁, c₂)` and the
/// `a_ij, b_ij`. The original parameters are recovered from the λ's by
/// inverting `λ₁=a−c₂+1, λ₂=a−c₁+1, λ₃=c₁+c₂−a−2, λ₄=−b`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParameterDictionary;

impl ParameterDictionary {
    pub fn lambda(&self, k: usize) -> RationalFunction {
        l(k)
    }

    pub fn lambda0(&self) -> RationalFunction {
        l0()
    }

    pub fn lambda123(&self) -> RationalFunction {
        l123()
    }

    pub fn lambda134m(&self) -> RationalFunction {
        l134m()
    }

    pub fn lambda234m(&self) -> RationalFunction {
        l234m()
    }

    pub fn a(&self) -> RationalFunction {
        l(1) + l(2) + l(3)
    }

    pub fn b(&self) -> RationalFunction {
        -l(4)
    }

    pub fn c1(&self) -> RationalFunction {
        l(1) + l(3) + i(1)
    }

    pub fn c2(&self) -> RationalFunction {
        l(2) + l(3) + i(1)
    }

    /// `a_ij` for `i, j ∈ {0, 1}`.
    pub fn a_ij(&self, ii: u8, jj: u8) -> RationalFunction {
        self.a() - self.c1() * i(ii as i64) - self.c2() * i(jj as i64) + i((ii + jj) as i64)
    }

    pub fn b_ij(&self, ii: u8, jj: u8) -> RationalFunction {
        self.b() - self.c1() * i(ii as i64) - self.c2() * i(jj as i64) + i((ii + jj) as i64)
    }

    /// The defining relations and the identities `λ₀=b₁₁`, `λ₁₂₃=a₀₀`,
    /// `λ₁₃₄⁻=b₁₀`, `λ₂₃₄⁻=b₀₁`; returns the names of those that fail.
    pub fn failed_identities(&self) -> Vec<&'static str> {
        let checks: [(&str, RationalFunction, RationalFunction); 8] = [
            ("lambda1 = a-c2+1", l(1), self.a() - self.c2() + i(1)),
            ("lambda2 = a-c1+1", l(2), self.a() - self.c1() + i(1)),
            (
                "lambda3 = c1+c2-a-2",
                l(3),
                self.c1() + self.c2() - self.a() - i(2),
            ),
            ("lambda4 = -b", l(4), -self.b()),
            ("lambda0 = b11", l0(), self.b_ij(1, 1)),
            ("lambda123 = a00", l123(), self.a_ij(0, 0)),
            ("lambda134- = b10", l134m(), self.b_ij(1, 0)),
            ("lambda234- = b01", l234m(), self.b_ij(0, 1)),
        ];
        checks
            .into_iter()
            .filter(|(_, a, b)| a != b)
            .map(|(n, _, _)| n)
            .collect()
    }

    /// Residues of ω along the components of its pole divisor.
    pub fn residue_table(&self) -> Vec<ResidueRow> {
        let (a, b, c1, c2) = (self.a(), self.b(), self.c1(), self.c2());
        vec![
            ResidueRow {
                divisor: "E_inf",
                lambda_name: "lambda0",
                lambda: l0(),
                aij_name: "b11",
                aij: self.b_ij(1, 1),
                abc: b.clone() - c1.clone() - c2.clone() + i(2),
            },
            ResidueRow {
                divisor: "s1=0",
                lambda_name: "lambda1",
                lambda: l(1),
                aij_name: "a01",
                aij: self.a_ij(0, 1),
                abc: a.clone() - c2.clone() + i(1),
            },
            ResidueRow {
                divisor: "s2=0",
                lambda_name: "lambda2",
                lambda: l(2),
                aij_name: "a10",
                aij: self.a_ij(1, 0),
                abc: a.clone() - c1.clone() + i(1),
            },
            ResidueRow {
                divisor: "Q=0",
                lambda_name: "lambda3",
                lambda: l(3),
                aij_name: "-a11",
                aij: -self.a_ij(1, 1),
                abc: -a.clone() + c1.clone() + c2.clone() - i(2),
            },
            ResidueRow {
                divisor: "L=0",
                lambda_name: "lambda4",
                lambda: l(4),
                aij_name: "-b00",
                aij: -self.b_ij(0, 0),
                abc: -b.clone(),
            },
            ResidueRow {
                divisor: "E_0",
                lambda_name: "lambda123",
                lambda: l123(),
                aij_name: "a00",
                aij: self.a_ij(0, 0),
                abc: a,
            },
            ResidueRow {
                divisor: "s1=inf",
                lambda_name: "lambda134-",
                lambda: l134m(),
                aij_name: "b10",
                aij: self.b_ij(1, 0),
                abc: b.clone() - c1 + i(1),
            },
            ResidueRow {
                divisor: "s2=inf",
                lambda_name: "lambda234-",
                lambda: l234m(),
                aij_name: "b01",
                aij: self.b_ij(0, 1),
                abc: b - c2 + i(1),
            },
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_identities_hold() {
        assert!(ParameterDictionary.failed_identities().is_empty());
    }

    #[test]
    fn residue_table_columns_agree() {
        for row in ParameterDictionary.residue_table() {
            assert_eq!(row.lambda, row.aij, "{}", row.divisor);
            assert_eq!(row.lambda, row.abc, "{}", row.divisor);
        }
    }

    #[test]
    fn exponent_one_minus_c1() {
        let d = ParameterDictionary;
        assert_eq!(-(d.lambda(1) + d.lambda(3)), i(1) - d.c1());
        assert_eq!(-(d.lambda(2) + d.lambda(3)), i(1) - d.c2());
    }
}
