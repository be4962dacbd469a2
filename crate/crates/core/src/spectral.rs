//! Spectra and spectral invariants: the symmetric eigensolver front-end,
//! left-padded spectrum comparison, exact Betti vectors, pseudo
//! determinants, forest determinants, traces, and analytic torsion.
//!
//! Operator construction stays in exact integers; this module is where
//! floating point enters (eigenvalues) and where exact big-integer routes
//! are preferred whenever feasible (ranks, determinants, characteristic
//! polynomials up to 64×64 per block).

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::complex::Simplex;
use crate::exact;
use crate::operators::{exterior_derivative, Hodge, SignedMatrix};

/// Matrices up to this size get exact characteristic-polynomial pseudo
/// determinants; larger ones fall back to eigenvalue products.
pub const EXACT_PSEUDO_DET_LIMIT: usize = 64;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("cannot pad a spectrum of length {len} to shorter length {target}")]
    PadTooShort { len: usize, target: usize },
    #[error("negative eigenvalue {0:.6e} beyond tolerance; left-padding would break order")]
    NegativeEigenvalue(f64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Ascending eigenvalues with a scale-aware zero-classification tolerance
/// and an optional left-padding length.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    zero_tol: f64,
    pad_len: Option<usize>,
}

/// Zero-classification tolerance: `max(n,1) · 2^-45 · max(1, λ_max)`.
fn zero_tolerance(n: usize, lambda_max: f64) -> f64 {
    (n.max(1) as f64) * 2f64.powi(-45) * lambda_max.abs().max(1.0)
}

impl Spectrum {
    pub fn empty() -> Self {
        Spectrum {
            values: Vec::new(),
            zero_tol: zero_tolerance(0, 0.0),
            pad_len: None,
        }
    }

    /// Wraps an ascending list of eigenvalues.
    pub fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        let lambda_max = values.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
        let zero_tol = zero_tolerance(values.len(), lambda_max);
        Spectrum {
            values,
            zero_tol,
            pad_len: None,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    pub fn pad_len(&self) -> Option<usize> {
        self.pad_len
    }

    /// Largest absolute eigenvalue (zero for an empty spectrum).
    pub fn lambda_max(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(0.0f64, |a, b| a.max(b.abs()))
    }

    /// Eigenvalues with `|λ| ≤ zero_tol` counted as zero.
    pub fn count_zero(&self) -> usize {
        self.values
            .iter()
            .filter(|v| v.abs() <= self.zero_tol)
            .count()
    }

    pub fn nonzero_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values
            .iter()
            .copied()
            .filter(|v| v.abs() > self.zero_tol)
    }
}

/// Computes all eigenvalues of a symmetric real matrix, ascending.
/// 0×0 input yields the empty spectrum.
pub fn eigenvalues_sym(m: &DMatrix<f64>) -> Result<Spectrum, SpectralError> {
    if m.nrows() != m.ncols() {
        return Err(SpectralError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    if m.iter().any(|v| !v.is_finite()) {
        return Err(SpectralError::NonFinite);
    }
    let max_abs = m.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    let sym_tol = 1e-12 * max_abs.max(1.0);
    let mut max_asym = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            max_asym = max_asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if max_asym > sym_tol {
        return Err(SpectralError::NotSymmetric(max_asym));
    }
    if n == 0 {
        return Ok(Spectrum::empty());
    }
    let mut values: Vec<f64> = if n == 1 {
        vec![m[(0, 0)]]
    } else {
        nalgebra::linalg::SymmetricEigen::new(m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    };
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(Spectrum::from_sorted(values))
}

/// Eigenvalues of an integer symmetric matrix.
pub fn eigenvalues_sym_int(m: &SignedMatrix) -> Result<Spectrum, SpectralError> {
    eigenvalues_sym(&m.to_f64())
}

/// Per-block spectra of a Hodge Laplacian.
pub fn hodge_spectra(h: &Hodge) -> Result<Vec<Spectrum>, SpectralError> {
    h.blocks().iter().map(eigenvalues_sym_int).collect()
}

/// Merges block spectra into one ascending spectrum with a global
/// tolerance; deterministic regardless of input grouping.
pub fn merge_spectra(specs: &[Spectrum]) -> Spectrum {
    let mut values: Vec<f64> = specs
        .iter()
        .flat_map(|s| s.values.iter().copied())
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Spectrum::from_sorted(values)
}

/// Left-pads an ascending non-negative spectrum with zeros to length `n`.
pub fn pad_left(spec: &Spectrum, n: usize) -> Result<Spectrum, SpectralError> {
    if n < spec.len() {
        return Err(SpectralError::PadTooShort {
            len: spec.len(),
            target: n,
        });
    }
    if let Some(&first) = spec.values.first() {
        if first < -spec.zero_tol {
            return Err(SpectralError::NegativeEigenvalue(first));
        }
    }
    let mut values = vec![0.0; n - spec.len()];
    values.extend_from_slice(&spec.values);
    Ok(Spectrum {
        values,
        zero_tol: spec.zero_tol,
        pad_len: Some(n),
    })
}

/// Per-degree kernel dimensions of the Hodge blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BettiVector {
    counts: Vec<usize>,
}

impl BettiVector {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `Σ_k (-1)^k b_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Counts extended with zeros to the given length.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.counts.clone();
        v.resize(len.max(v.len()), 0);
        v
    }
}

impl From<Vec<usize>> for BettiVector {
    fn from(counts: Vec<usize>) -> Self {
        BettiVector { counts }
    }
}

/// Exact Betti vector of a whole complex, open set, or closed set:
/// `b_k = f_k - rank(L_k)`, evaluated as `f_k - rank(d_k) - rank(d_{k-1})`
/// with ranks over the rationals (fraction-free elimination). The two forms
/// agree because `d² = 0` splits `rank(L_k)` into the up- and down-ranks.
pub fn betti_exact(elements: &[Simplex]) -> BettiVector {
    let d = exterior_derivative(elements);
    let offs = d.blocks().expect("derivative carries offsets").to_vec();
    let nblocks = offs.len().saturating_sub(1);
    let mut up_rank = vec![0usize; nblocks + 1]; // rank(d_k), with d_{last} = 0
    for k in 0..nblocks.saturating_sub(1) {
        let blk = d.slice(offs[k + 1]..offs[k + 2], offs[k]..offs[k + 1]);
        up_rank[k] = exact::bareiss_rank(&blk);
    }
    let counts = (0..nblocks)
        .map(|k| {
            let fk = offs[k + 1] - offs[k];
            let down = if k == 0 { 0 } else { up_rank[k - 1] };
            fk - up_rank[k] - down
        })
        .collect();
    BettiVector { counts }
}

fn bigint_ln_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 900 {
        x.abs().to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        let top = (x.abs() >> shift).to_f64().unwrap();
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// The product of the non-zero eigenvalues of a symmetric integer matrix,
/// exact when the matrix is small enough for the characteristic-polynomial
/// route, otherwise approximated from the eigenvalues above the zero
/// tolerance. The logarithmic mirror is always available.
#[derive(Clone, Debug, Serialize)]
pub struct PseudoDet {
    #[serde(serialize_with = "ser_opt_bigint")]
    pub exact: Option<BigInt>,
    /// Natural log of the absolute value.
    pub log_abs: f64,
    pub sign: i8,
}

fn ser_opt_bigint<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl PseudoDet {
    pub fn one() -> Self {
        PseudoDet {
            exact: Some(BigInt::one()),
            log_abs: 0.0,
            sign: 1,
        }
    }

    pub fn from_exact(x: BigInt) -> Self {
        let sign = if x.is_zero() {
            0
        } else if x.is_negative() {
            -1
        } else {
            1
        };
        let log_abs = bigint_ln_abs(&x);
        PseudoDet {
            exact: Some(x),
            log_abs,
            sign,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Float mirror; may overflow to infinity for very large exact values.
    pub fn approx(&self) -> f64 {
        self.sign as f64 * self.log_abs.exp()
    }

    /// Multiplies two values, combining exactness.
    pub fn mul(&self, other: &PseudoDet) -> PseudoDet {
        let exact = match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        PseudoDet {
            exact,
            log_abs: self.log_abs + other.log_abs,
            sign: self.sign * other.sign,
        }
    }

    /// Is `self ≤ other`, using exact comparison when both sides are exact,
    /// otherwise a relative comparison in log space.
    pub fn le(&self, other: &PseudoDet, rel_tol: f64) -> bool {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => a <= b,
            _ => {
                // positive quantities compared by logs
                self.log_abs <= other.log_abs + rel_tol
            }
        }
    }

    /// `ln(other) - ln(self)`, the log-space slack of `self ≤ other`.
    pub fn log_margin(&self, other: &PseudoDet) -> f64 {
        other.log_abs - self.log_abs
    }
}

/// Pseudo determinant of a symmetric integer matrix. 0×0 gives 1 (the empty
/// product); an all-zero spectrum also gives 1.
pub fn pseudo_det(m: &SignedMatrix) -> Result<PseudoDet, SpectralError> {
    if !m.is_square() {
        return Err(SpectralError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() <= EXACT_PSEUDO_DET_LIMIT {
        Ok(PseudoDet::from_exact(exact::pseudo_det_exact(m)))
    } else {
        let spec = eigenvalues_sym_int(m)?;
        let mut log_abs = 0.0;
        let mut sign = 1i8;
        for v in spec.nonzero_values() {
            log_abs += v.abs().ln();
            if v < 0.0 {
                sign = -sign;
            }
        }
        Ok(PseudoDet {
            exact: None,
            log_abs,
            sign,
        })
    }
}

/// Exact trace.
pub fn trace(m: &SignedMatrix) -> i64 {
    m.trace()
}

/// Exact forest determinant `det(M + I)`.
pub fn forest_det(m: &SignedMatrix) -> BigInt {
    exact::det_exact(&m.plus_diagonal(1))
}

/// Pseudo determinant of a Hodge Laplacian, block by block. Blocks beyond
/// the exact limit use eigenvalue products with the zero count pinned by the
/// exact Betti number of the block — never by a floating tolerance.
pub fn hodge_det(elements: &[Simplex]) -> Result<PseudoDet, SpectralError> {
    let h = crate::operators::hodge(elements);
    let betti = betti_exact(elements);
    let mut acc = PseudoDet::one();
    for (k, blk) in h.blocks().iter().enumerate() {
        let v = if blk.nrows() <= EXACT_PSEUDO_DET_LIMIT {
            PseudoDet::from_exact(exact::pseudo_det_exact(blk))
        } else {
            let spec = eigenvalues_sym_int(blk)?;
            let zeros = betti.counts()[k];
            let log_abs: f64 = spec.values()[zeros..]
                .iter()
                .map(|v| v.abs().max(f64::MIN_POSITIVE).ln())
                .sum();
            PseudoDet {
                exact: None,
                log_abs,
                sign: 1,
            }
        };
        acc = acc.mul(&v);
    }
    Ok(acc)
}

/// `det(L + I)` of a Hodge Laplacian, block by block; exact for blocks
/// within the exact limit, logarithmic beyond it.
pub fn hodge_forest_det(elements: &[Simplex]) -> Result<PseudoDet, SpectralError> {
    let h = crate::operators::hodge(elements);
    let mut acc = PseudoDet::one();
    for blk in h.blocks() {
        let v = if blk.nrows() <= EXACT_PSEUDO_DET_LIMIT {
            PseudoDet::from_exact(exact::det_exact(&blk.plus_diagonal(1)))
        } else {
            let spec = eigenvalues_sym_int(blk)?;
            let log_abs: f64 = spec.values().iter().map(|v| v.max(0.0).ln_1p()).sum();
            PseudoDet {
                exact: None,
                log_abs,
                sign: 1,
            }
        };
        acc = acc.mul(&v);
    }
    Ok(acc)
}

fn ser_opt_rational<S: serde::Serializer>(
    v: &Option<BigRational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// A positive rational quantity with a log-space mirror.
#[derive(Clone, Debug, Serialize)]
pub struct RatioValue {
    #[serde(serialize_with = "ser_opt_rational")]
    pub exact: Option<BigRational>,
    pub log: f64,
}

/// Analytic torsion together with its cross-check, the super pseudo
/// determinant of the up-blocks `d_kᵀ d_k`.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub torsion: RatioValue,
    pub super_pseudo_det: RatioValue,
    /// Whether the two formulas agree (exactly when both exact, else to
    /// relative 1e-6 in log space). A mismatch is reported, never silently
    /// resolved.
    pub agree: bool,
}

fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    let mut acc = BigRational::one();
    let b = if exp >= 0 { base.clone() } else { base.recip() };
    for _ in 0..exp.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// Analytic torsion `A(G) = Π_k Det(L_k)^{k(-1)^{k+1}}` of a whole complex,
/// with the independent route `Π_k Det(d_kᵀ d_k)^{(-1)^k}` reported next to
/// it.
pub fn analytic_torsion(elements: &[Simplex]) -> Result<TorsionReport, SpectralError> {
    let h = crate::operators::hodge(elements);
    let block_dets: Vec<PseudoDet> = h
        .blocks()
        .iter()
        .map(pseudo_det)
        .collect::<Result<_, _>>()?;

    let mut torsion_exact = Some(BigRational::one());
    let mut torsion_log = 0.0f64;
    for (k, det) in block_dets.iter().enumerate() {
        let exp = if k % 2 == 0 { -(k as i64) } else { k as i64 };
        torsion_log += exp as f64 * det.log_abs;
        torsion_exact = match (torsion_exact, &det.exact) {
            (Some(acc), Some(e)) => Some(acc * rational_pow(&BigRational::from(e.clone()), exp)),
            _ => None,
        };
    }

    let d = exterior_derivative(elements);
    let offs = d.blocks().expect("derivative carries offsets").to_vec();
    let nblocks = offs.len().saturating_sub(1);
    let mut super_exact = Some(BigRational::one());
    let mut super_log = 0.0f64;
    for k in 0..nblocks {
        let up = if k + 1 < nblocks {
            let dk = d.slice(offs[k + 1]..offs[k + 2], offs[k]..offs[k + 1]);
            let dkt = dk.transpose();
            dkt.matmul(&dk)
        } else {
            SignedMatrix::zeros(offs[k + 1] - offs[k], offs[k + 1] - offs[k])
        };
        let det = pseudo_det(&up)?;
        let exp: i64 = if k % 2 == 0 { 1 } else { -1 };
        super_log += exp as f64 * det.log_abs;
        super_exact = match (super_exact, &det.exact) {
            (Some(acc), Some(e)) => Some(acc * rational_pow(&BigRational::from(e.clone()), exp)),
            _ => None,
        };
    }

    let agree = match (&torsion_exact, &super_exact) {
        (Some(a), Some(b)) => a == b,
        _ => (torsion_log - super_log).abs() <= 1e-6 * torsion_log.abs().max(1.0),
    };
    Ok(TorsionReport {
        torsion: RatioValue {
            exact: torsion_exact,
            log: torsion_log,
        },
        super_pseudo_det: RatioValue {
            exact: super_exact,
            log: super_log,
        },
        agree,
    })
}
