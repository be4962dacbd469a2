//! Independent Betti oracle: brute-force Gaussian elimination over exact
//! rationals applied directly to the Hodge blocks `L_k`. Written separately
//! from the library's rank route (which eliminates the derivative blocks
//! over big integers), so the two can cross-check each other.

#![allow(clippy::needless_range_loop)]

use hodge_core::complex::{Complex, Graph, Simplex};
use hodge_core::operators::hodge;
use hodge_core::spectral::betti_exact;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sx(v: &[u32]) -> Simplex {
    Simplex::new(v.to_vec()).unwrap()
}

/// Plain rational row reduction; returns the rank.
fn rational_rank(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> i64) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| BigRational::from(BigInt::from(entry(i, j))))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for c in col..cols {
            let v = &a[rank][c] / &pivot;
            a[rank][c] = v;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let v = &a[r][c] - &f * &a[rank][c];
                    a[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Oracle: `b_k = f_k - rank(L_k)` with the rank taken on the Hodge block
/// itself.
fn betti_oracle(elements: &[Simplex]) -> Vec<usize> {
    let h = hodge(elements);
    h.blocks()
        .iter()
        .map(|b| b.nrows() - rational_rank(b.nrows(), b.ncols(), |i, j| b.get(i, j)))
        .collect()
}

fn octahedron() -> Complex {
    // K6 minus the perfect matching {1,4},{2,5},{3,6}
    let mut edges = Vec::new();
    for i in 1..=6u32 {
        for j in (i + 1)..=6 {
            if !matches!((i, j), (1, 4) | (2, 5) | (3, 6)) {
                edges.push((i, j));
            }
        }
    }
    Complex::whitney(&Graph::new(vec![], edges).unwrap())
}

#[test]
fn oracle_agrees_on_fixed_list() {
    let interval = Complex::closure(&[sx(&[1, 2])]).unwrap();
    let circle = Complex::closure(&[sx(&[1, 2]), sx(&[2, 3]), sx(&[3, 4]), sx(&[4, 1])]).unwrap();
    let triangle = Complex::closure(&[sx(&[1, 2, 3])]).unwrap();
    let two_points = Complex::closure(&[sx(&[1]), sx(&[2])]).unwrap();
    // a closed piece of the octahedron sphere with ≤ 12 elements
    let octa_restricted = Complex::closure(&[sx(&[1, 2, 3]), sx(&[2, 3, 5])]).unwrap();
    assert!(octa_restricted.len() <= 12);

    for (name, c) in [
        ("interval", interval),
        ("circle", circle),
        ("triangle", triangle),
        ("two_points", two_points),
        ("octa_restricted", octa_restricted),
    ] {
        let got = betti_exact(c.elements());
        let want = betti_oracle(c.elements());
        assert_eq!(got.counts(), want.as_slice(), "{name}");
    }
}

#[test]
fn oracle_agrees_on_octahedron_and_its_split() {
    let octa = octahedron();
    assert_eq!(octa.f_vector(), &[6, 12, 8]);
    assert_eq!(betti_exact(octa.elements()).counts(), &[1, 0, 1]);
    assert_eq!(betti_oracle(octa.elements()), vec![1, 0, 1]);

    // open ball (star of a vertex) + closed ball decomposition of the sphere
    let u = octa.star(&sx(&[1])).unwrap();
    let k = octa.complement(&u).unwrap();
    assert_eq!(betti_exact(u.elements()).counts(), &[0, 0, 1]);
    assert_eq!(betti_exact(k.elements()).counts(), &[1, 0, 0]);
    assert_eq!(betti_oracle(u.elements()), vec![0, 0, 1]);
    assert_eq!(betti_oracle(k.elements()), vec![1, 0, 0]);
}

#[test]
fn oracle_agrees_on_open_sets_and_random_families() {
    let circle = Complex::closure(&[sx(&[1, 2]), sx(&[2, 3]), sx(&[3, 4]), sx(&[4, 1])]).unwrap();
    let u = circle
        .subset(vec![
            sx(&[3]),
            sx(&[4]),
            sx(&[2, 3]),
            sx(&[3, 4]),
            sx(&[1, 4]),
        ])
        .unwrap();
    assert_eq!(betti_oracle(u.elements()), vec![0, 1]);
    assert_eq!(betti_exact(u.elements()).counts(), &[0, 1]);

    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    for _ in 0..25 {
        let g = Complex::whitney(&Graph::gnp(7, 0.45, &mut rng));
        let s = g.random_open_set_with(3, &mut rng).unwrap();
        let k = g.complement(&s).unwrap();
        for els in [g.elements(), s.elements(), k.elements()] {
            assert_eq!(betti_exact(els).counts(), betti_oracle(els).as_slice());
        }
    }
}
