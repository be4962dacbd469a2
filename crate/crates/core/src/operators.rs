//! Integer operator matrices attached to an ordered element list: the signed
//! exterior derivative `d`, Dirac matrix `D = d + dᵀ`, Hodge Laplacian
//! `L = D²` with its per-degree blocks, the parity operator `P`, the
//! connection Laplacian `H`, and the Witten deformation of `d`.
//!
//! All construction is exact integer arithmetic; only the Witten deformation
//! produces a real-valued matrix.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::complex::{block_offsets, Simplex};

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("weight function has {got} values but the operator has {want} rows")]
    WeightLength { got: usize, want: usize },
    #[error("weight function or deformation parameter is not finite")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense integer matrix with optional per-degree block boundaries
/// `b_0 = 0 ≤ b_1 ≤ … ≤ b_{d+1} = n` (indices where the form degree changes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
    blocks: Option<Vec<usize>>,
}

impl SignedMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SignedMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
            blocks: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SignedMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        SignedMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            blocks: None,
        }
    }

    pub fn with_blocks(mut self, blocks: Vec<usize>) -> Self {
        self.blocks = Some(blocks);
        self
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Block boundaries, when the matrix carries them.
    pub fn blocks(&self) -> Option<&[usize]> {
        self.blocks.as_deref()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> SignedMatrix {
        let mut t = SignedMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t.blocks = self.blocks.clone();
        t
    }

    pub fn add(&self, other: &SignedMatrix) -> SignedMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).expect("integer overflow in add"))
            .collect();
        SignedMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
            blocks: self.blocks.clone().or_else(|| other.blocks.clone()),
        }
    }

    pub fn matmul(&self, other: &SignedMatrix) -> SignedMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = SignedMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) as i128 + a as i128 * other.get(k, j) as i128;
                    out.set(i, j, i64::try_from(v).expect("integer overflow in matmul"));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    pub fn trace(&self) -> i64 {
        self.diagonal().iter().sum()
    }

    /// The square sub-matrix on rows/columns `[lo, hi)`.
    pub fn principal_submatrix(&self, lo: usize, hi: usize) -> SignedMatrix {
        let mut out = SignedMatrix::zeros(hi - lo, hi - lo);
        for i in lo..hi {
            for j in lo..hi {
                out.set(i - lo, j - lo, self.get(i, j));
            }
        }
        out
    }

    /// Rectangular sub-matrix on the given row and column ranges.
    pub fn slice(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> SignedMatrix {
        let mut out = SignedMatrix::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    /// Sub-matrix on the given (strictly increasing) index set.
    pub fn submatrix(&self, idx: &[usize]) -> SignedMatrix {
        let mut out = SignedMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) as f64)
    }

    /// Adds `c` to the diagonal (the matrix must be square).
    pub fn plus_diagonal(&self, c: i64) -> SignedMatrix {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, i, out.get(i, i).checked_add(c).expect("overflow"));
        }
        out
    }
}

/// The signed incidence number of the pair `(x, y)`: zero unless `y ⊂ x`
/// with `|x| = |y| + 1`, otherwise `(-1)^p` where `p` is the position of the
/// vertex `x \ y` within the ascending list `x`.
pub fn incidence_sign(x: &Simplex, y: &Simplex) -> i64 {
    if x.cardinality() != y.cardinality() + 1 {
        return 0;
    }
    let xs = x.vertices();
    let ys = y.vertices();
    let mut missing = None;
    let mut j = 0;
    for (i, &v) in xs.iter().enumerate() {
        if j < ys.len() && ys[j] == v {
            j += 1;
        } else if missing.is_none() {
            missing = Some(i);
        } else {
            return 0; // two vertices of x are outside y: not a face pair
        }
    }
    if j != ys.len() {
        return 0;
    }
    match missing {
        Some(p) if p % 2 == 0 => 1,
        Some(_) => -1,
        None => 0,
    }
}

/// The exterior derivative of a canonically ordered element list:
/// `d[i][j] = incidence_sign(S[i], S[j])`. Strictly lower-block-triangular
/// with respect to the dimension blocks; `d·d = 0` whenever the list is a
/// whole complex, an open set, or a closed set.
pub fn exterior_derivative(elements: &[Simplex]) -> SignedMatrix {
    let offs = block_offsets(elements);
    let n = elements.len();
    let mut d = SignedMatrix::zeros(n, n);
    // only pairs with a one-step dimension gap can be incident
    for k in 0..offs.len().saturating_sub(2) {
        let (clo, chi) = (offs[k], offs[k + 1]);
        let (rlo, rhi) = (offs[k + 1], offs[k + 2]);
        for i in rlo..rhi {
            for j in clo..chi {
                d.set(i, j, incidence_sign(&elements[i], &elements[j]));
            }
        }
    }
    d.with_blocks(offs)
}

/// The Dirac matrix `D = d + dᵀ`, symmetric, with block boundaries.
pub fn dirac(elements: &[Simplex]) -> SignedMatrix {
    let d = exterior_derivative(elements);
    let dt = d.transpose();
    d.add(&dt)
}

/// The Hodge Laplacian `L = D²` together with its per-degree blocks
/// `L_k = d_kᵀ d_k + d_{k-1} d_{k-1}ᵀ` of size `f_k × f_k` (possibly 0×0).
#[derive(Clone, Debug)]
pub struct Hodge {
    full: SignedMatrix,
    blocks: Vec<SignedMatrix>,
}

impl Hodge {
    pub fn full(&self) -> &SignedMatrix {
        &self.full
    }

    pub fn blocks(&self) -> &[SignedMatrix] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &SignedMatrix {
        &self.blocks[k]
    }

    pub fn n(&self) -> usize {
        self.full.nrows()
    }
}

/// Builds the Hodge Laplacian of an ordered element list.
///
/// The blocks are assembled from the derivative blocks `d_k` (the
/// `(k+1, k)` block of `d`), which agrees entry-for-entry with the full
/// product `D·D` on whole complexes and open/closed sets.
pub fn hodge(elements: &[Simplex]) -> Hodge {
    let d = exterior_derivative(elements);
    let offs = d.blocks().expect("derivative carries offsets").to_vec();
    let nblocks = offs.len().saturating_sub(1);
    let mut blocks = Vec::with_capacity(nblocks);
    for k in 0..nblocks {
        let fk = offs[k + 1] - offs[k];
        let mut lk = SignedMatrix::zeros(fk, fk);
        // up-part dᵀ_k d_k
        if k + 2 <= nblocks {
            let (rlo, rhi) = (offs[k + 1], offs[k + 2]);
            for i in 0..fk {
                for j in 0..fk {
                    let mut acc: i128 = 0;
                    for r in rlo..rhi {
                        acc += d.get(r, offs[k] + i) as i128 * d.get(r, offs[k] + j) as i128;
                    }
                    lk.set(i, j, i64::try_from(acc).expect("overflow"));
                }
            }
        }
        // down-part d_{k-1} d_{k-1}ᵀ
        if k > 0 {
            let (clo, chi) = (offs[k - 1], offs[k]);
            for i in 0..fk {
                for j in 0..fk {
                    let mut acc: i128 = lk.get(i, j) as i128;
                    for c in clo..chi {
                        acc += d.get(offs[k] + i, c) as i128 * d.get(offs[k] + j, c) as i128;
                    }
                    lk.set(i, j, i64::try_from(acc).expect("overflow"));
                }
            }
        }
        blocks.push(lk);
    }
    let n = elements.len();
    let mut full = SignedMatrix::zeros(n, n);
    for (k, b) in blocks.iter().enumerate() {
        let lo = offs[k];
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                full.set(lo + i, lo + j, b.get(i, j));
            }
        }
    }
    Hodge {
        full: full.with_blocks(offs),
        blocks,
    }
}

/// The parity operator `P = diag((-1)^{dim x})`.
pub fn parity(elements: &[Simplex]) -> SignedMatrix {
    let n = elements.len();
    let mut p = SignedMatrix::zeros(n, n);
    for (i, s) in elements.iter().enumerate() {
        p.set(i, i, if s.dimension() % 2 == 0 { 1 } else { -1 });
    }
    p.with_blocks(block_offsets(elements))
}

/// The connection Laplacian: `H[x][y] = 1` iff `x ∩ y` is non-empty.
pub fn connection_laplacian(elements: &[Simplex]) -> SignedMatrix {
    let n = elements.len();
    let mut h = SignedMatrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, 1);
        for j in 0..i {
            if elements[i].intersects(&elements[j]) {
                h.set(i, j, 1);
                h.set(j, i, 1);
            }
        }
    }
    h.with_blocks(block_offsets(elements))
}

/// A weight function `g` on the elements together with the deformation
/// parameter `s`; the reference use is `g: G → {0,1}`.
#[derive(Clone, Debug)]
pub struct WeightFunction {
    values: Vec<f64>,
    s: f64,
}

impl WeightFunction {
    pub fn new(values: Vec<f64>, s: f64) -> Result<Self, OperatorError> {
        if !s.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(OperatorError::NonFinite);
        }
        Ok(WeightFunction { values, s })
    }

    /// Indicator of the given element indices, as a 0/1 weight.
    pub fn indicator(n: usize, support: &[usize], s: f64) -> Result<Self, OperatorError> {
        let mut values = vec![0.0; n];
        for &i in support {
            values[i] = 1.0;
        }
        WeightFunction::new(values, s)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn s(&self) -> f64 {
        self.s
    }
}

/// The Witten deformation `d_s = E^{-1} d E` with `E = diag(e^{s·g(x)})`.
/// The deformed Laplacian `(d_s + d_sᵀ)²` keeps the per-block kernel
/// dimensions of `L`.
pub fn witten_deform(
    d: &SignedMatrix,
    weight: &WeightFunction,
) -> Result<DMatrix<f64>, OperatorError> {
    if !d.is_square() {
        return Err(OperatorError::NotSquare {
            rows: d.nrows(),
            cols: d.ncols(),
        });
    }
    if weight.values.len() != d.nrows() {
        return Err(OperatorError::WeightLength {
            got: weight.values.len(),
            want: d.nrows(),
        });
    }
    let n = d.nrows();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = d.get(i, j);
            if v != 0 {
                let scale = (weight.s * (weight.values[j] - weight.values[i])).exp();
                out[(i, j)] = v as f64 * scale;
            }
        }
    }
    Ok(out)
}
