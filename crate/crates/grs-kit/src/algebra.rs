//! Exact rational linear algebra: scalars, vectors, matrices, solving and
//! positive-definiteness testing. No floating point anywhere; every scalar is
//! an arbitrary-precision rational in lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p`, `-p` or `p/q`. Rejects fractions not in lowest terms and
/// non-positive denominators, so file data stays canonical.
pub fn parse_rat(s: &str) -> Result<Rat, AlgebraError> {
    let bad = || AlgebraError::BadScalar(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d <= BigInt::zero() {
            return Err(bad());
        }
        if num_integer::Integer::gcd(&n, &d) != BigInt::one() {
            return Err(AlgebraError::NotReduced(s.to_string()));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = s.trim().parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("scalar `{0}` is not in lowest terms")]
    NotReduced(String),
}

/// Coordinate vector of exact rationals. Value equality is coordinate-wise,
/// and the derived `Ord` gives every root set a canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVec(pub Vec<Rat>);

impl RootVec {
    pub fn zero(dim: usize) -> Self {
        RootVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        RootVec(v)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RootVec(coords.iter().map(|&c| rint(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn neg(&self) -> Self {
        RootVec(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rat) -> Self {
        RootVec(self.0.iter().map(|c| c * k).collect())
    }

    /// All coordinates integral.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.denom().is_one())
    }

    /// If `self = k * other` for a rational `k`, return `k`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rat> {
        if self.dim() != other.dim() || other.is_zero() {
            return None;
        }
        let j = other.0.iter().position(|c| !c.is_zero())?;
        let k = &self.0[j] / &other.0[j];
        if self == &other.scale(&k) {
            Some(k)
        } else {
            None
        }
    }

    pub fn to_string_plain(&self) -> String {
        self.0
            .iter()
            .map(fmt_rat)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(fmt_rat).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(fmt_rat).collect::<Vec<_>>().join(","))
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: Vec<Vec<Rat>>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "[{}]", row.iter().map(fmt_rat).collect::<Vec<_>>().join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn new(rows: Vec<Vec<Rat>>) -> Self {
        if let Some(w) = rows.first().map(|r| r.len()) {
            assert!(rows.iter().all(|r| r.len() == w), "ragged matrix");
        }
        Mat { rows }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Mat::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| rint(c)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![Rat::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Rat::one();
        }
        Mat { rows }
    }

    pub fn zero(r: usize, c: usize) -> Self {
        Mat {
            rows: vec![vec![Rat::zero(); c]; r],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn transpose(&self) -> Mat {
        let (r, c) = (self.nrows(), self.ncols());
        let mut t = Mat::zero(c, r);
        for i in 0..r {
            for j in 0..c {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.ncols(), other.nrows(), "matrix product shape");
        let (r, k, c) = (self.nrows(), self.ncols(), other.ncols());
        let mut out = Mat::zero(r, c);
        for i in 0..r {
            for j in 0..c {
                let mut acc = Rat::zero();
                for l in 0..k {
                    if !self.rows[i][l].is_zero() && !other.rows[l][j].is_zero() {
                        acc += &self.rows[i][l] * &other.rows[l][j];
                    }
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    pub fn apply(&self, v: &RootVec) -> RootVec {
        assert_eq!(self.ncols(), v.dim(), "matrix apply shape");
        RootVec(
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&v.0)
                        .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    /// In-place reduced row echelon form. Pivots: leftmost nonzero column,
    /// first nonzero row, no scaling heuristics. Returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (r, c) = (self.nrows(), self.ncols());
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row == r {
                break;
            }
            let Some(p) = (row..r).find(|&i| !self.rows[i][col].is_zero()) else {
                continue;
            };
            self.rows.swap(row, p);
            let inv = self.rows[row][col].clone();
            for x in self.rows[row].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..r {
                if i != row && !self.rows[i][col].is_zero() {
                    let f = self.rows[i][col].clone();
                    for j in 0..c {
                        let s = &self.rows[row][j] * &f;
                        self.rows[i][j] = &self.rows[i][j] - &s;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.nrows(), self.ncols(), "determinant of square matrix");
        let n = self.nrows();
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.rows[i][col].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                m.rows.swap(col, p);
                det = -det;
            }
            let pivot = m.rows[col][col].clone();
            det *= &pivot;
            for i in col + 1..n {
                if !m.rows[i][col].is_zero() {
                    let f = &m.rows[i][col] / &pivot;
                    for j in col..n {
                        let s = &m.rows[col][j] * &f;
                        m.rows[i][j] = &m.rows[i][j] - &s;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.nrows(), self.ncols());
        let n = self.nrows();
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.rows[i][j] = self.rows[i][j].clone();
            }
            aug.rows[i][n + i] = Rat::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Mat::new(
            aug.rows.into_iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }

    /// Rows of a canonical (RREF) basis of the kernel of `self`.
    pub fn kernel_basis(&self) -> Vec<RootVec> {
        let c = self.ncols();
        let (red, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; c];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..c {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); c];
            v[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red.rows[i][free].clone();
            }
            basis.push(RootVec(v));
        }
        basis
    }

    /// Whether `v` lies in the row space of an RREF matrix.
    pub fn rref_contains(&self, v: &RootVec) -> bool {
        let mut w = v.clone();
        for (row, &p) in self.rows.iter().zip(self.pivot_cols().iter()) {
            if !w.0[p].is_zero() {
                let f = w.0[p].clone();
                for j in 0..w.dim() {
                    let s = &row[j] * &f;
                    w.0[j] = &w.0[j] - &s;
                }
            }
        }
        w.is_zero()
    }

    /// Pivot columns of a matrix already in RREF.
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter_map(|row| row.iter().position(|x| !x.is_zero()))
            .collect()
    }
}

/// An affine space of solutions: `particular + span(basis)`. For homogeneous
/// systems the particular part is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSpace {
    pub particular: Option<RootVec>,
    pub basis: Vec<RootVec>,
}

impl LinSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solve `coefficients * x = rhs` exactly. Returns `None` when the system is
/// contradictory; the kernel basis is canonical (RREF-derived).
pub fn solve_linear(coefficients: &Mat, rhs: &[Rat]) -> Result<Option<LinSpace>, AlgebraError> {
    if coefficients.nrows() != rhs.len() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{} rows vs rhs of length {}",
            coefficients.nrows(),
            rhs.len()
        )));
    }
    let n = coefficients.ncols();
    let homogeneous = rhs.iter().all(|x| x.is_zero());
    let mut aug = Mat::new(
        coefficients
            .rows
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect(),
    );
    let pivots = aug.rref_in_place();
    if pivots.contains(&n) {
        return Ok(None);
    }
    let coeff_rref = Mat::new(aug.rows.iter().map(|row| row[..n].to_vec()).collect());
    let basis = coeff_rref.kernel_basis();
    let particular = if homogeneous {
        None
    } else {
        let mut x = vec![Rat::zero(); n];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.rows[i][n].clone();
        }
        Some(RootVec(x))
    };
    Ok(Some(LinSpace { particular, basis }))
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymForm {
    mat: Mat,
}

impl SymForm {
    pub fn new(mat: Mat) -> Result<Self, AlgebraError> {
        let n = mat.nrows();
        if mat.ncols() != n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} is not square",
                n,
                mat.ncols()
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if mat.rows[i][j] != mat.rows[j][i] {
                    return Err(AlgebraError::NotSymmetric);
                }
            }
        }
        Ok(SymForm { mat })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        SymForm::new(Mat::from_ints(rows)).expect("symmetric integer matrix")
    }

    pub fn identity(n: usize) -> Self {
        SymForm {
            mat: Mat::identity(n),
        }
    }

    pub fn rank_dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.mat.rows[i][j]
    }

    /// The scalar product `(x, y)` under this form.
    pub fn pair(&self, x: &RootVec, y: &RootVec) -> Rat {
        let gy = self.mat.apply(y);
        x.0.iter()
            .zip(&gy.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn quad(&self, x: &RootVec) -> Rat {
        self.pair(x, x)
    }

    /// Sylvester criterion over exact rationals: positive definite iff all
    /// leading principal minors are positive.
    pub fn is_positive_definite(&self) -> bool {
        self.leading_principal_minors()
            .iter()
            .all(|m| m.is_positive())
    }

    pub fn leading_principal_minors(&self) -> Vec<Rat> {
        let n = self.mat.nrows();
        (1..=n)
            .map(|k| {
                Mat::new(
                    self.mat.rows[..k]
                        .iter()
                        .map(|row| row[..k].to_vec())
                        .collect(),
                )
                .det()
            })
            .collect()
    }

    /// Change of basis: the form on coordinates `x` with columns of `s` as the
    /// new basis vectors, i.e. `sᵀ G s`.
    pub fn change_basis(&self, s: &Mat) -> Result<SymForm, AlgebraError> {
        SymForm::new(s.transpose().mul(&self.mat).mul(s))
    }
}

/// Matrix of the form-orthogonal projection with kernel `span(subspace_basis)`
/// and image its orthogonal complement. Satisfies `P∘P = P` and
/// self-adjointness with respect to the form.
pub fn orthogonal_projection(
    form: &SymForm,
    subspace_basis: &[RootVec],
) -> Result<Mat, AlgebraError> {
    if !form.is_positive_definite() {
        return Err(AlgebraError::NotPositiveDefinite);
    }
    let n = form.rank_dim();
    let k = subspace_basis.len();
    let mut b = Mat::zero(n, k);
    for (j, v) in subspace_basis.iter().enumerate() {
        if v.dim() != n {
            return Err(AlgebraError::DimensionMismatch(format!(
                "basis vector of dim {} in rank-{} space",
                v.dim(),
                n
            )));
        }
        for i in 0..n {
            b.rows[i][j] = v.0[i].clone();
        }
    }
    if b.rank() != k {
        return Err(AlgebraError::DependentBasis);
    }
    let bt_g = b.transpose().mul(form.matrix());
    let gram = bt_g.mul(&b);
    let gram_inv = gram.inverse().ok_or(AlgebraError::DependentBasis)?;
    let correction = b.mul(&gram_inv).mul(&bt_g);
    let mut p = Mat::identity(n);
    for i in 0..n {
        for j in 0..n {
            p.rows[i][j] = &p.rows[i][j] - &correction.rows[i][j];
        }
    }
    Ok(p)
}
