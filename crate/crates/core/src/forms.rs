//! Square matrices over Λ, hermitian forms, and isometries.
//!
//! Sesquilinear convention: a form with Gram matrix G evaluates as
//!
//! ```text
//! λ(u, v) = Σ_ij u_i · G_ij · ι(v_j)
//! ```
//!
//! linear in the first slot and conjugate-linear in the second, so that
//! λ(α·e, α·e) = α·ι(α)·λ(e, e). Matrices act on column coordinate vectors,
//! hence Φ is an isometry iff Φᵀ·G·ι(Φ) = G.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not hermitian: entry ({0},{1}) is not the involute of ({1},{0})")]
    NotHermitian(usize, usize),
    #[error("entry ({0},{1}) is not divisible by z")]
    NotDivisible(usize, usize),
    #[error("transvection not applicable: {0}")]
    NotApplicable(String),
    #[error("matrix rows have unequal length")]
    NotSquare,
}

/// A square matrix with entries in Λ, stored row-major.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<LaurentPoly>>", try_from = "Vec<Vec<LaurentPoly>>")]
pub struct Matrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl From<Matrix> for Vec<Vec<LaurentPoly>> {
    fn from(m: Matrix) -> Self {
        m.rows()
    }
}

impl TryFrom<Vec<Vec<LaurentPoly>>> for Matrix {
    type Error = FormError;
    fn try_from(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, FormError> {
        Matrix::from_rows(rows)
    }
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![LaurentPoly::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Self {
        let mut m = Matrix::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, FormError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(FormError::NotSquare);
        }
        Ok(Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<LaurentPoly>]) -> Result<Self, FormError> {
        let dim = cols.len();
        let mut m = Matrix::zeros(dim);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != dim {
                return Err(FormError::DimensionMismatch {
                    expected: dim,
                    found: col.len(),
                });
            }
            for (i, e) in col.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.entries
            .chunks(self.dim.max(1))
            .map(|r| r.to_vec())
            .take(self.dim)
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Entrywise involution.
    pub fn involute(&self) -> Self {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(LaurentPoly::involute).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().involute()
    }

    pub fn scale(&self, s: &LaurentPoly) -> Self {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, FormError> {
        check_dim(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, FormError> {
        check_dim(self.dim, rhs.dim)?;
        Ok(Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Φ·v for a column vector v.
    pub fn apply(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, FormError> {
        check_dim(self.dim, v.len())?;
        Ok((0..self.dim)
            .map(|i| {
                let mut acc = LaurentPoly::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += &(a * vj);
                    }
                }
                acc
            })
            .collect())
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let n = self.dim + rhs.dim;
        let mut m = Matrix::zeros(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.dim {
            for j in 0..rhs.dim {
                m.set(self.dim + i, self.dim + j, rhs.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        self.first_non_hermitian().is_none()
    }

    fn first_non_hermitian(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i..self.dim {
                if *self.get(i, j) != self.get(j, i).involute() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division
    /// is exact in Λ.
    pub fn determinant(&self) -> LaurentPoly {
        let n = self.dim;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut a = self.rows();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return LaurentPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .exact_div(&prev)
                        .expect("Bareiss quotients are exact over an integral domain");
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), FormError> {
    if expected == found {
        Ok(())
    } else {
        Err(FormError::DimensionMismatch { expected, found })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `is_hermitian` for a raw matrix.
pub fn is_hermitian(m: &Matrix) -> bool {
    m.is_hermitian()
}

/// A hermitian form on Λ^d given by its Gram matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct HermitianForm {
    gram: Matrix,
}

impl From<HermitianForm> for Matrix {
    fn from(f: HermitianForm) -> Matrix {
        f.gram
    }
}

impl TryFrom<Matrix> for HermitianForm {
    type Error = FormError;
    fn try_from(m: Matrix) -> Result<Self, FormError> {
        HermitianForm::new(m)
    }
}

impl fmt::Debug for HermitianForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HermitianForm({:?})", self.gram)
    }
}

impl HermitianForm {
    pub fn new(gram: Matrix) -> Result<Self, FormError> {
        match gram.first_non_hermitian() {
            Some((i, j)) => Err(FormError::NotHermitian(i, j)),
            None => Ok(HermitianForm { gram }),
        }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    /// λ(u, v) = Σ u_i G_ij ι(v_j).
    pub fn evaluate(&self, u: &[LaurentPoly], v: &[LaurentPoly]) -> Result<LaurentPoly, FormError> {
        check_dim(self.dim(), u.len())?;
        check_dim(self.dim(), v.len())?;
        let vbar: Vec<LaurentPoly> = v.iter().map(LaurentPoly::involute).collect();
        let gv = self.gram.apply(&vbar)?;
        let mut acc = LaurentPoly::zero();
        for (ui, gvi) in u.iter().zip(&gv) {
            if !ui.is_zero() && !gvi.is_zero() {
                acc += &(ui * gvi);
            }
        }
        Ok(acc)
    }

    /// The form scaled entrywise by a symmetric element.
    pub fn scale(&self, s: &LaurentPoly) -> Result<Self, FormError> {
        HermitianForm::new(self.gram.scale(s))
    }

    /// Entrywise exact division by z.
    pub fn divide_by_z(&self) -> Result<Self, FormError> {
        let n = self.dim();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let q = div_by_z(self.gram.get(i, j)).ok_or(FormError::NotDivisible(i, j))?;
                out.set(i, j, q);
            }
        }
        Ok(HermitianForm { gram: out })
    }

    /// True iff the Gram determinant is a unit ±x^k.
    pub fn is_unimodular(&self) -> bool {
        self.gram.determinant().is_unit()
    }

    /// The form Pᵀ·G·ι(P), whose entries are λ(p_i, p_j) for the columns
    /// p_i of `p`.
    pub fn congruent(&self, p: &Matrix) -> Result<Self, FormError> {
        let g = p.transpose().mul(&self.gram)?.mul(&p.involute())?;
        HermitianForm::new(g)
    }

    pub fn direct_sum(&self, rhs: &HermitianForm) -> Self {
        HermitianForm {
            gram: self.gram.direct_sum(&rhs.gram),
        }
    }
}

pub fn evaluate(
    form: &HermitianForm,
    u: &[LaurentPoly],
    v: &[LaurentPoly],
) -> Result<LaurentPoly, FormError> {
    form.evaluate(u, v)
}

pub fn divide_form_by_z(form: &HermitianForm) -> Result<HermitianForm, FormError> {
    form.divide_by_z()
}

pub fn is_unimodular(form: &HermitianForm) -> bool {
    form.is_unimodular()
}

/// Exact quotient by z, or `None` when the element is not in zΛ = I².
pub fn div_by_z(a: &LaurentPoly) -> Option<LaurentPoly> {
    a.exact_div_one_minus_x()
        .and_then(|q| q.exact_div_one_minus_x_inv())
        .ok()
}

pub fn is_divisible_by_z(a: &LaurentPoly) -> bool {
    div_by_z(a).is_some()
}

/// A square matrix proposed as an isometry. Nothing about it is trusted:
/// callers check it with [`verify_isometry`].
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IsometryMatrix {
    mat: Matrix,
}

impl fmt::Debug for IsometryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IsometryMatrix({:?})", self.mat)
    }
}

impl IsometryMatrix {
    pub fn new(mat: Matrix) -> Self {
        IsometryMatrix { mat }
    }

    pub fn identity(dim: usize) -> Self {
        IsometryMatrix::new(Matrix::identity(dim))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn apply(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>, FormError> {
        self.mat.apply(v)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &IsometryMatrix) -> Result<IsometryMatrix, FormError> {
        Ok(IsometryMatrix::new(self.mat.mul(&rhs.mat)?))
    }
}

/// Φᵀ·G·ι(Φ) = G.
pub fn verify_isometry(form: &HermitianForm, phi: &IsometryMatrix) -> Result<bool, FormError> {
    check_dim(form.dim(), phi.dim())?;
    let lhs = phi
        .mat
        .transpose()
        .mul(&form.gram)?
        .mul(&phi.mat.involute())?;
    Ok(lhs == form.gram)
}

/// Every entry of Φ − 1 lies in zΛ.
pub fn is_congruent_to_identity_mod_z(phi: &IsometryMatrix) -> bool {
    let n = phi.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let e = if i == j {
                phi.mat.get(i, j) - &LaurentPoly::one()
            } else {
                phi.mat.get(i, j).clone()
            };
            e.is_zero() || is_divisible_by_z(&e)
        })
    })
}

/// Eichler transvection
///
/// ```text
/// T(y) = y + λ(y, v)·u − λ(y, u)·v + a·λ(y, u)·u
/// ```
///
/// for isotropic u, v ⊥ u and a constant with a + ι(a) = −λ(v, v). The
/// output is verified before it is returned.
pub fn eichler_transvection(
    form: &HermitianForm,
    u: &[LaurentPoly],
    v: &[LaurentPoly],
    a: &LaurentPoly,
) -> Result<IsometryMatrix, FormError> {
    let n = form.dim();
    check_dim(n, u.len())?;
    check_dim(n, v.len())?;
    if !form.evaluate(u, u)?.is_zero() {
        return Err(FormError::NotApplicable("u is not isotropic".into()));
    }
    if !form.evaluate(u, v)?.is_zero() {
        return Err(FormError::NotApplicable(
            "u and v are not orthogonal".into(),
        ));
    }
    let vv = form.evaluate(v, v)?;
    if (a + &a.involute()) != -vv {
        return Err(FormError::NotApplicable("a + ι(a) ≠ −λ(v, v)".into()));
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![LaurentPoly::zero(); n];
        e[j] = LaurentPoly::one();
        let yv = form.evaluate(&e, v)?;
        let yu = form.evaluate(&e, u)?;
        let au = a * &yu;
        let col: Vec<LaurentPoly> = (0..n)
            .map(|i| {
                let mut c = e[i].clone();
                c += &(&yv * &u[i]);
                c -= &(&yu * &v[i]);
                c += &(&au * &u[i]);
                c
            })
            .collect();
        cols.push(col);
    }
    let t = IsometryMatrix::new(Matrix::from_columns(&cols)?);
    if verify_isometry(form, &t)? {
        Ok(t)
    } else {
        Err(FormError::NotApplicable("self-verification failed".into()))
    }
}

/// [`eichler_transvection`] with the canonical constant a, the split of
/// −λ(v, v) into a + ι(a). Needs λ(v, v) to have even constant term.
pub fn transvection(
    form: &HermitianForm,
    u: &[LaurentPoly],
    v: &[LaurentPoly],
) -> Result<IsometryMatrix, FormError> {
    let vv = form.evaluate(v, v)?;
    let a = (-vv)
        .symmetric_half()
        .ok_or_else(|| FormError::NotApplicable("λ(v, v) has odd constant term".into()))?;
    eichler_transvection(form, u, v, &a)
}

/// Integer-coefficient helper used by tests and generators.
pub fn int_vector(v: &[i64]) -> Vec<LaurentPoly> {
    v.iter()
        .map(|&c| LaurentPoly::constant(BigInt::from(c)))
        .collect()
}
