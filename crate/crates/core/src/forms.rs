//! Matrices of rational functions and matrix-valued differential forms in a
//! two-coordinate basis.
//!
//! Two-forms are stored as the coefficient of `d⟨c₁⟩ ∧ d⟨c₂⟩` for the ordered
//! coordinate pair `(c₁, c₂)`; every sign below follows from that orientation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{rf_latex, AlgebraError, RationalFunction, Var};
use crate::parallel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("matrix is singular (determinant {det})")]
    Singular { det: RationalFunction },
    #[error("coordinate mismatch: {left:?} vs {right:?}")]
    CoordinateMismatch { left: (Var, Var), right: (Var, Var) },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Dense matrix of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMatrix {
            rows,
            cols,
            data: vec![RationalFunction::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<RationalFunction>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        FMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn<F: Fn(usize, usize) -> RationalFunction + Sync + Send>(
        rows: usize,
        cols: usize,
        f: F,
    ) -> Self {
        let data = parallel::map_range(rows * cols, |k| f(k / cols, k % cols));
        FMatrix { rows, cols, data }
    }

    pub fn row_vector(entries: Vec<RationalFunction>) -> Self {
        Self::from_rows(vec![entries])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &RationalFunction)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| ((k / cols, k % cols), v))
    }

    pub fn row(&self, i: usize) -> Vec<RationalFunction> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<RationalFunction>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn map<F: Fn(&RationalFunction) -> RationalFunction + Sync + Send>(&self, f: F) -> Self {
        FMatrix {
            rows: self.rows,
            cols: self.cols,
            data: parallel::map(&self.data, f),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for ((i, j), v) in self.entries() {
            out.set(j, i, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.map(|e| e * c)
    }

    pub fn partial(&self, v: Var) -> Self {
        self.map(|e| e.partial(v))
    }

    pub fn negate_lambda(&self) -> Self {
        self.map(|e| e.negate_lambda())
    }

    pub fn substitute(
        &self,
        bindings: &HashMap<Var, RationalFunction>,
    ) -> Result<Self, AlgebraError> {
        let data: Result<Vec<_>, _> = parallel::map(&self.data, |e| e.substitute(bindings))
            .into_iter()
            .collect();
        Ok(FMatrix {
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }

    pub fn trace(&self) -> RationalFunction {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// First position where `self` and `other` differ.
    pub fn first_difference(&self, other: &FMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.entries()
            .find(|((i, j), v)| *v != other.get(*i, *j))
            .map(|(ij, _)| ij)
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries().find(|(_, v)| !v.is_zero()).map(|(ij, _)| ij)
    }

    pub fn checked_mul(&self, rhs: &FMatrix) -> Result<FMatrix, FormsError> {
        if self.cols != rhs.rows {
            return Err(FormsError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(FMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self.get(i, k).is_zero() && !rhs.get(k, j).is_zero())
                .map(|k| self.get(i, k) * rhs.get(k, j))
                .sum()
        }))
    }

    /// Row echelon elimination over the rational function field, choosing the
    /// sparsest available pivot. Returns the determinant.
    pub fn determinant(&self) -> Result<RationalFunction, FormsError> {
        if !self.is_square() {
            return Err(FormsError::Dimension(
                "determinant of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = RationalFunction::one();
        for col in 0..n {
            let Some(p) = pick_pivot(&a, col, col) else {
                return Ok(RationalFunction::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let piv = a[col][col].clone();
            det = &det * &piv;
            let inv = piv.recip()?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &inv;
                for c in col..n {
                    if a[col][c].is_zero() {
                        continue;
                    }
                    let t = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<FMatrix, FormsError> {
        if !self.is_square() {
            return Err(FormsError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv = FMatrix::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = pick_pivot(&a, col, col) else {
                return Err(FormsError::Singular {
                    det: RationalFunction::zero(),
                });
            };
            a.swap(p, col);
            inv.swap(p, col);
            let pinv = a[col][col].recip()?;
            for c in 0..n {
                a[col][c] = &a[col][c] * &pinv;
                inv[col][c] = &inv[col][c] * &pinv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        let t = &factor * &a[col][c];
                        a[r][c] = &a[r][c] - &t;
                    }
                    if !inv[col][c].is_zero() {
                        let t = &factor * &inv[col][c];
                        inv[r][c] = &inv[r][c] - &t;
                    }
                }
            }
        }
        Ok(FMatrix::from_rows(inv))
    }

    /// Coefficients `[c₀, …, cₙ]` of `det(t·I − self) = Σ cₖ tᵏ` by the
    /// Faddeev–LeVerrier trace recursion.
    pub fn characteristic_polynomial(&self) -> Result<Vec<RationalFunction>, FormsError> {
        if !self.is_square() {
            return Err(FormsError::Dimension(
                "characteristic polynomial of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut coeffs = vec![RationalFunction::zero(); n + 1];
        coeffs[n] = RationalFunction::one();
        let mut m = FMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.checked_mul(&m)?;
            for i in 0..n {
                let d = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, d);
            }
            m = next;
            let am = self.checked_mul(&m)?;
            coeffs[n - k] = -(&am.trace() / &RationalFunction::int(k as i64));
        }
        Ok(coeffs)
    }

    /// Basis of `{v : self · v = 0}` from the reduced row echelon form.
    pub fn null_space(&self) -> Result<Vec<Vec<RationalFunction>>, FormsError> {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(p) = pick_pivot(&a, col, row) else {
                continue;
            };
            a.swap(p, row);
            let inv = a[row][col].recip()?;
            for c in col..n {
                a[row][c] = &a[row][c] * &inv;
            }
            for r in 0..m {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in col..n {
                    if !a[row][c].is_zero() {
                        let t = &f * &a[row][c];
                        a[r][c] = &a[r][c] - &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        Ok(free
            .iter()
            .map(|&fc| {
                let mut v = vec![RationalFunction::zero(); n];
                v[fc] = RationalFunction::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&a[r][fc];
                }
                v
            })
            .collect())
    }

    pub fn latex(&self) -> String {
        let mut out = String::from("\\begin{pmatrix}\n");
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rf_latex).collect();
            out.push_str(&row.join(" & "));
            out.push_str(if i + 1 == self.rows { "\n" } else { " \\\\\n" });
        }
        out.push_str("\\end{pmatrix}");
        out
    }
}

fn pick_pivot(a: &[Vec<RationalFunction>], col: usize, from: usize) -> Option<usize> {
    (from..a.len())
        .filter(|&r| !a[r][col].is_zero())
        .min_by_key(|&r| a[r][col].numerator().len() + a[r][col].denominator().len())
}

impl<'a> Mul<&'a FMatrix> for &'a FMatrix {
    type Output = FMatrix;
    fn mul(self, rhs: &'a FMatrix) -> FMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl<'a> Add<&'a FMatrix> for &'a FMatrix {
    type Output = FMatrix;
    fn add(self, rhs: &'a FMatrix) -> FMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        FMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl<'a> Sub<&'a FMatrix> for &'a FMatrix {
    type Output = FMatrix;
    fn sub(self, rhs: &'a FMatrix) -> FMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        FMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &FMatrix {
    type Output = FMatrix;
    fn neg(self) -> FMatrix {
        self.map(|e| -e)
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for FMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<RationalFunction>>::deserialize(d)?;
        let c = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(FMatrix::from_rows(rows))
    }
}

/// `parts[0] d⟨coords.0⟩ + parts[1] d⟨coords.1⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixOneForm {
    pub coords: (Var, Var),
    pub parts: [FMatrix; 2],
}

/// `part d⟨coords.0⟩ ∧ d⟨coords.1⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixTwoForm {
    pub coords: (Var, Var),
    pub part: FMatrix,
}

impl MatrixTwoForm {
    pub fn is_zero(&self) -> bool {
        self.part.is_zero()
    }
}

impl MatrixOneForm {
    pub fn new(coords: (Var, Var), first: FMatrix, second: FMatrix) -> Result<Self, FormsError> {
        if (first.rows(), first.cols()) != (second.rows(), second.cols()) {
            return Err(FormsError::Dimension(
                "one-form parts differ in shape".into(),
            ));
        }
        Ok(MatrixOneForm {
            coords,
            parts: [first, second],
        })
    }

    pub fn zero(coords: (Var, Var), n: usize) -> Self {
        MatrixOneForm {
            coords,
            parts: [FMatrix::zeros(n, n), FMatrix::zeros(n, n)],
        }
    }

    /// Entrywise differential `dM = ∂₁M d⟨c₁⟩ + ∂₂M d⟨c₂⟩`.
    pub fn differential(m: &FMatrix, coords: (Var, Var)) -> Self {
        MatrixOneForm {
            coords,
            parts: [m.partial(coords.0), m.partial(coords.1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.parts[0].rows()
    }

    pub fn map<F: Fn(&FMatrix) -> FMatrix>(&self, f: F) -> Self {
        MatrixOneForm {
            coords: self.coords,
            parts: [f(&self.parts[0]), f(&self.parts[1])],
        }
    }

    pub fn negate_lambda(&self) -> Self {
        self.map(|m| m.negate_lambda())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FormsError> {
        self.same_coords(other)?;
        Ok(MatrixOneForm {
            coords: self.coords,
            parts: [
                &self.parts[0] + &other.parts[0],
                &self.parts[1] + &other.parts[1],
            ],
        })
    }

    fn same_coords(&self, other: &Self) -> Result<(), FormsError> {
        if self.coords != other.coords {
            return Err(FormsError::CoordinateMismatch {
                left: self.coords,
                right: other.coords,
            });
        }
        Ok(())
    }

    /// `dξ = (−∂₂ξ₁ + ∂₁ξ₂) d⟨c₁⟩∧d⟨c₂⟩`.
    pub fn exterior_derivative(&self) -> MatrixTwoForm {
        let a = self.parts[0].partial(self.coords.1);
        let b = self.parts[1].partial(self.coords.0);
        MatrixTwoForm {
            coords: self.coords,
            part: &b - &a,
        }
    }

    /// `ξ∧η = (ξ₁η₂ − ξ₂η₁) d⟨c₁⟩∧d⟨c₂⟩`.
    pub fn wedge(&self, other: &Self) -> Result<MatrixTwoForm, FormsError> {
        self.same_coords(other)?;
        let a = self.parts[0].checked_mul(&other.parts[1])?;
        let b = self.parts[1].checked_mul(&other.parts[0])?;
        Ok(MatrixTwoForm {
            coords: self.coords,
            part: &a - &b,
        })
    }

    /// `G ξ G⁻¹ + dG G⁻¹`.
    pub fn gauge_transform(&self, g: &FMatrix) -> Result<Self, FormsError> {
        let ginv = g.inverse()?;
        let dg = Self::differential(g, self.coords);
        let part = |k: usize| -> Result<FMatrix, FormsError> {
            let conj = g.checked_mul(&self.parts[k])?.checked_mul(&ginv)?;
            Ok(&conj + &dg.parts[k].checked_mul(&ginv)?)
        };
        Ok(MatrixOneForm {
            coords: self.coords,
            parts: [part(0)?, part(1)?],
        })
    }

    /// Pull-back along a coordinate map.
    pub fn pullback(&self, map: &CoordinateMap) -> Result<Self, FormsError> {
        if self.coords != map.source {
            return Err(FormsError::CoordinateMismatch {
                left: self.coords,
                right: map.source,
            });
        }
        let a = self.parts[0].substitute(&map.bindings)?;
        let b = self.parts[1].substitute(&map.bindings)?;
        let j = &map.jacobian;
        let part = |k: usize| -> FMatrix { &a.scale(&j[0][k]) + &b.scale(&j[1][k]) };
        Ok(MatrixOneForm {
            coords: map.target,
            parts: [part(0), part(1)],
        })
    }

    /// Evaluates the substitution `bindings` entrywise without changing the
    /// differentials (used to specialize parameters).
    pub fn substitute_entries(
        &self,
        bindings: &HashMap<Var, RationalFunction>,
    ) -> Result<Self, FormsError> {
        Ok(MatrixOneForm {
            coords: self.coords,
            parts: [
                self.parts[0].substitute(bindings)?,
                self.parts[1].substitute(bindings)?,
            ],
        })
    }
}

impl MatrixTwoForm {
    pub fn pullback(&self, map: &CoordinateMap) -> Result<Self, FormsError> {
        if self.coords != map.source {
            return Err(FormsError::CoordinateMismatch {
                left: self.coords,
                right: map.source,
            });
        }
        let j = &map.jacobian;
        let jdet = &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0]);
        Ok(MatrixTwoForm {
            coords: map.target,
            part: self.part.substitute(&map.bindings)?.scale(&jdet),
        })
    }
}

/// Substitution `source ↦ expressions in target` with its Jacobian:
/// `d(source.i) = jacobian[i][0] d(target.0) + jacobian[i][1] d(target.1)`.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    pub source: (Var, Var),
    pub target: (Var, Var),
    pub bindings: HashMap<Var, RationalFunction>,
    pub jacobian: [[RationalFunction; 2]; 2],
}

impl CoordinateMap {
    pub fn identity(coords: (Var, Var)) -> Self {
        let mut bindings = HashMap::new();
        bindings.insert(coords.0, RationalFunction::var(coords.0));
        bindings.insert(coords.1, RationalFunction::var(coords.1));
        CoordinateMap {
            source: coords,
            target: coords,
            bindings,
            jacobian: [
                [RationalFunction::one(), RationalFunction::zero()],
                [RationalFunction::zero(), RationalFunction::one()],
            ],
        }
    }

    /// Jacobian of the bindings computed by differentiation, for
    /// cross-checking a supplied one.
    pub fn derived_jacobian(&self) -> [[RationalFunction; 2]; 2] {
        let f = |i: usize, k: usize| {
            let v = if i == 0 { self.source.0 } else { self.source.1 };
            let t = if k == 0 { self.target.0 } else { self.target.1 };
            self.bindings
                .get(&v)
                .map(|b| b.partial(t))
                .unwrap_or_else(RationalFunction::zero)
        };
        [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
    }
}
