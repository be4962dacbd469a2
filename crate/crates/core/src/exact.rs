//! Exact integer linear algebra: fraction-free Gaussian elimination for
//! ranks, Chinese-remainder determinants and characteristic polynomials
//! over word-sized primes, and the division-free Berkowitz algorithm as an
//! independent reference route. These back every quantity the library
//! reports as exact (Betti numbers, determinants, pseudo determinants,
//! torsion).

#![allow(clippy::needless_range_loop)] // index-based elimination loops

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::operators::SignedMatrix;

/// Rank over the rationals via Bareiss fraction-free elimination. Exact for
/// any integer matrix; no tolerances involved. Runs in `i128` and escalates
/// to big integers only if an intermediate minor overflows.
pub fn bareiss_rank(m: &SignedMatrix) -> usize {
    bareiss_rank_i128(m).unwrap_or_else(|| bareiss_rank_bigint(m))
}

fn bareiss_rank_i128(m: &SignedMatrix) -> Option<usize> {
    let (rows, cols) = (m.nrows(), m.ncols());
    if rows == 0 || cols == 0 {
        return Some(0);
    }
    let mut a: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j) as i128).collect())
        .collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col];
        for r in (rank + 1)..rows {
            let factor = a[r][col];
            for c in col..cols {
                let v = a[r][c]
                    .checked_mul(pivot)?
                    .checked_sub(factor.checked_mul(a[rank][c])?)?;
                a[r][c] = v / prev; // exact division (Bareiss)
            }
            a[r][col] = 0;
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_rank_bigint(m: &SignedMatrix) -> usize {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..cols).map(|j| BigInt::from(m.get(i, j))).collect())
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in (rank + 1)..rows {
            let factor = a[r][col].clone();
            for c in col..cols {
                let v = (&a[r][c] * &pivot - &factor * &a[rank][c]).div_floor(&prev);
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Word-sized modular arithmetic (Montgomery form) for CRT reconstruction.

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..(s - 1) {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending sequence of distinct primes just below 2^62.
fn primes_below_2_62(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(candidate) {
            out.push(candidate);
        }
        candidate -= 2;
    }
    out
}

/// Montgomery arithmetic modulo an odd prime below 2^63.
#[derive(Clone, Copy)]
struct Mont {
    p: u64,
    /// -p^{-1} mod 2^64
    p_inv_neg: u64,
    /// 2^128 mod p, for conversion into Montgomery form
    r2: u64,
}

impl Mont {
    fn new(p: u64) -> Self {
        // Newton iteration for the inverse of p modulo 2^64
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = (u64::MAX % p) + 1; // 2^64 mod p
        let r2 = mul_mod(r, r, p);
        Mont {
            p,
            p_inv_neg: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_inv_neg);
        let t2 = (t.wrapping_add(m as u128 * self.p as u128) >> 64) as u64;
        if t2 >= self.p {
            t2 - self.p
        } else {
            t2
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    fn encode(&self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    #[inline]
    fn decode(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        // base in Montgomery form; result in Montgomery form
        let mut acc = self.encode(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn lift(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.encode(r)
    }
}

/// Determinant modulo `p` by Gaussian elimination in Montgomery form.
fn det_mod_p(m: &SignedMatrix, mont: &Mont) -> u64 {
    let n = m.nrows();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| mont.lift(m.get(i, j))).collect())
        .collect();
    let mut det = mont.encode(1);
    let mut negate = false;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(col, piv);
            negate = !negate;
        }
        let pivot = a[col][col];
        det = mont.mul(det, pivot);
        let inv = mont.inv(pivot);
        for r in (col + 1)..n {
            if a[r][col] == 0 {
                continue;
            }
            let factor = mont.mul(a[r][col], inv);
            for c in col..n {
                let sub = mont.mul(factor, a[col][c]);
                a[r][c] = mont.sub(a[r][c], sub);
            }
        }
    }
    let v = mont.decode(det);
    if negate && v != 0 {
        mont.p - v
    } else {
        v
    }
}

/// Base-2 log of the Hadamard bound on `|det|`, from row norms.
fn hadamard_log2(m: &SignedMatrix) -> f64 {
    let n = m.nrows();
    let mut log2 = 0.0f64;
    for i in 0..n {
        let s: f64 = (0..n).map(|j| (m.get(i, j) as f64).powi(2)).sum();
        if s == 0.0 {
            return f64::NEG_INFINITY; // a zero row: det = 0
        }
        log2 += 0.5 * s.log2();
    }
    log2
}

/// Incremental Garner reconstruction of a signed integer from residues.
struct Crt {
    modulus: BigInt,
    value: BigInt,
}

impl Crt {
    fn new() -> Self {
        Crt {
            modulus: BigInt::one(),
            value: BigInt::zero(),
        }
    }

    fn push(&mut self, residue: u64, p: u64) {
        let pb = BigInt::from(p);
        let cur = ((&self.value) % &pb + &pb) % &pb;
        let mut delta = (BigInt::from(residue) - cur) % &pb;
        if delta.is_negative() {
            delta += &pb;
        }
        let minv = mod_inverse(&self.modulus, &pb);
        let t = (delta * minv) % &pb;
        self.value += &self.modulus * t;
        self.modulus *= &pb;
    }

    fn symmetric(mut self) -> BigInt {
        let half = &self.modulus / 2;
        if self.value > half {
            self.value -= &self.modulus;
        }
        self.value
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "moduli must be coprime");
    ((e.x % m) + m) % m
}

/// Exact determinant of a square integer matrix: determinants modulo enough
/// word-sized primes to exceed the Hadamard bound, recombined by CRT.
pub fn det_exact(m: &SignedMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let bound_log2 = hadamard_log2(m);
    if bound_log2 == f64::NEG_INFINITY {
        return BigInt::zero();
    }
    // product of primes must exceed 2 * |det|
    let needed = ((bound_log2 + 2.0) / 61.9).ceil().max(1.0) as usize;
    let primes = primes_below_2_62(needed);
    let mut crt = Crt::new();
    for &p in &primes {
        let mont = Mont::new(p);
        crt.push(det_mod_p(m, &mont), p);
    }
    crt.symmetric()
}

// ---------------------------------------------------------------------------
// Characteristic polynomials.

/// Coefficients of `det(xI - M)` in ascending powers of `x`
/// (length `n + 1`, leading coefficient one), by the division-free
/// Berkowitz algorithm over big integers. Independent reference route for
/// [`char_poly`]; cost grows as n^4.
pub fn char_poly_berkowitz(m: &SignedMatrix) -> Vec<BigInt> {
    assert!(
        m.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.nrows();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let a = |i: usize, j: usize| BigInt::from(m.get(i, j));
    // c holds the coefficients for the leading principal k×k minor in
    // descending powers; starts at k = 0 with the constant polynomial 1.
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=n {
        // first column of the (k+1)×k Toeplitz matrix:
        // [1, -a_kk, -(R C), -(R A C), ..., -(R A^{k-2} C)]
        let mut t = Vec::with_capacity(k + 1);
        t.push(BigInt::one());
        t.push(-a(k - 1, k - 1));
        if k >= 2 {
            // R = row k-1 over the leading k-1 columns, C = column k-1
            let mut vec_c: Vec<BigInt> = (0..k - 1).map(|i| a(i, k - 1)).collect();
            for _ in 0..k - 1 {
                let dot: BigInt = (0..k - 1).map(|j| a(k - 1, j) * &vec_c[j]).sum();
                t.push(-dot);
                let next: Vec<BigInt> = (0..k - 1)
                    .map(|i| (0..k - 1).map(|j| a(i, j) * &vec_c[j]).sum())
                    .collect();
                vec_c = next;
            }
            t.truncate(k + 1);
        }
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, item) in next.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    acc += &t[i - j] * cj;
                }
            }
            *item = acc;
        }
        c = next;
    }
    c.reverse(); // ascending powers
    c
}

/// Characteristic polynomial of `m` modulo `p`: Hessenberg reduction by
/// similarity transforms, then the Hessenberg expansion recurrence.
/// Returns coefficients of `det(xI - M) mod p`, ascending, out of
/// Montgomery form.
fn char_poly_mod_p(m: &SignedMatrix, mont: &Mont) -> Vec<u64> {
    let n = m.nrows();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| mont.lift(m.get(i, j))).collect())
        .collect();
    // Hessenberg reduction
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = ((k + 1)..n).find(|&r| a[r][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            a.swap(piv, k + 1);
            for row in a.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = mont.inv(a[k + 1][k]);
        for i in (k + 2)..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = mont.mul(a[i][k], inv);
            // rows: a[i][*] -= f * a[k+1][*]
            for c in k..n {
                let sub = mont.mul(f, a[k + 1][c]);
                a[i][c] = mont.sub(a[i][c], sub);
            }
            // columns: a[*][k+1] += f * a[*][i]
            for row in a.iter_mut() {
                let add = mont.mul(f, row[i]);
                row[k + 1] = mont.add(row[k + 1], add);
            }
        }
    }
    // char polys of leading principal blocks, coefficients ascending,
    // in Montgomery form
    let one_m = mont.encode(1);
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![one_m]);
    for k in 1..=n {
        let prev = &polys[k - 1];
        // (x - h_{kk}) * p_{k-1}
        let mut next = vec![0u64; k + 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = mont.add(next[i + 1], c);
            let sub = mont.mul(a[k - 1][k - 1], c);
            next[i] = mont.sub(next[i], sub);
        }
        // - sum over i of h_{i,k} * (prod_{j=i..k-1} h_{j+1,j}) * p_{i-1}
        let mut subdiag = one_m;
        for i in (1..k).rev() {
            subdiag = mont.mul(subdiag, a[i][i - 1]);
            let coeff = mont.mul(a[i - 1][k - 1], subdiag);
            if coeff == 0 {
                continue;
            }
            for (s, &c) in polys[i - 1].iter().enumerate() {
                let sub = mont.mul(coeff, c);
                next[s] = mont.sub(next[s], sub);
            }
        }
        polys.push(next);
    }
    polys
        .pop()
        .unwrap()
        .into_iter()
        .map(|c| mont.decode(c))
        .collect()
}

/// Coefficients of `det(xI - M)` in ascending powers (length `n + 1`,
/// leading coefficient one), exactly: per-prime Hessenberg characteristic
/// polynomials recombined by CRT, with the prime count certified by a
/// Gershgorin bound on the coefficients.
pub fn char_poly(m: &SignedMatrix) -> Vec<BigInt> {
    assert!(
        m.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.nrows();
    if n == 0 {
        return vec![BigInt::one()];
    }
    // |λ| ≤ R (max absolute row sum) for every eigenvalue, so
    // |c_{n-m}| = |e_m(λ)| ≤ C(n,m) R^m ≤ 2^n max(R,1)^n.
    let r = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(1)
        .max(1);
    let bound_log2 = n as f64 * (1.0 + (r as f64).log2());
    let needed = ((bound_log2 + 2.0) / 61.9).ceil().max(1.0) as usize;
    let primes = primes_below_2_62(needed);
    let mut crts: Vec<Crt> = (0..=n).map(|_| Crt::new()).collect();
    for &p in &primes {
        let mont = Mont::new(p);
        let coeffs = char_poly_mod_p(m, &mont);
        for (crt, &c) in crts.iter_mut().zip(&coeffs) {
            crt.push(c, p);
        }
    }
    crts.into_iter().map(Crt::symmetric).collect()
}

/// The product of the non-zero eigenvalues, exactly: the lowest-order
/// non-zero characteristic polynomial coefficient with the sign chosen so
/// that positive semi-definite matrices give positive values. A matrix with
/// all-zero spectrum (including 0×0) yields 1, the empty product.
pub fn pseudo_det_exact(m: &SignedMatrix) -> BigInt {
    let coeffs = char_poly(m);
    let n = m.nrows();
    let z = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("leading coefficient is one");
    let v = coeffs[z].clone();
    if (n - z).is_multiple_of(2) {
        v
    } else {
        -v
    }
}
