//! Property tests over randomized families: topology invariants (closure,
//! duality, filtrations), operator identities (d² = 0, anti-commutation,
//! restriction consistency), and the spectral tolerance policy (exact Betti
//! vs float nullity, trace and pseudo-determinant sanity).

use hodge_core::complex::{block_offsets, euler_characteristic, f_vector, Complex, Graph, Simplex};
use hodge_core::operators::{
    dirac, exterior_derivative, hodge, parity, witten_deform, WeightFunction,
};
use hodge_core::spectral::{
    betti_exact, eigenvalues_sym, eigenvalues_sym_int, hodge_spectra, merge_spectra, pseudo_det,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random small complex: closure of a few random facets.
fn arb_complex() -> impl Strategy<Value = Complex> {
    proptest::collection::vec(proptest::collection::btree_set(0u32..10, 1..=4), 1..=5).prop_map(
        |facets| {
            let simplices: Vec<Simplex> = facets
                .into_iter()
                .map(|s| Simplex::new(s.into_iter().collect()).unwrap())
                .collect();
            Complex::closure(&simplices).unwrap()
        },
    )
}

/// Random Whitney complex from a seeded G(nv, p).
fn arb_whitney() -> impl Strategy<Value = (Complex, u64)> {
    (4u32..=8, 0u64..1_000_000).prop_map(|(nv, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.gen_range(0.25..0.65);
        (Complex::whitney(&Graph::gnp(nv, p, &mut rng)), seed)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_idempotent(c in arb_complex()) {
        let again = Complex::closure(c.elements()).unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn stars_are_open_and_unions_of_stars_are_open((c, seed) in arb_whitney()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        for _ in 0..3 {
            let i = rng.gen_range(0..c.len());
            let star = c.star(&c.elements()[i].clone()).unwrap();
            prop_assert!(star.is_open());
        }
        let u = c.random_open_set_with(4, &mut rng).unwrap();
        prop_assert!(u.is_open());
    }

    #[test]
    fn complement_duality((c, seed) in arb_whitney()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x77);
        let u = c.random_open_set_with(rng.gen_range(1..=4), &mut rng).unwrap();
        let k = c.complement(&u).unwrap();
        prop_assert!(u.is_open());
        prop_assert!(k.is_closed());
        // and back
        let u2 = c.complement(&k).unwrap();
        prop_assert_eq!(u2.elements(), u.elements());
        // partition identities for f-vector and Euler characteristic
        let len = c.f_vector().len();
        let mut fu = u.f_vector(); fu.resize(len, 0);
        let mut fk = k.f_vector(); fk.resize(len, 0);
        let sum: Vec<usize> = fu.iter().zip(&fk).map(|(a, b)| a + b).collect();
        prop_assert_eq!(sum.as_slice(), c.f_vector());
        prop_assert_eq!(
            u.euler_characteristic() + k.euler_characteristic(),
            c.euler_characteristic()
        );
    }

    #[test]
    fn canonical_filtration_prefixes_are_complexes((c, _) in arb_whitney()) {
        let filt = c.canonical_filtration();
        prop_assert!(filt.is_valid_for(&c));
        // Euler–Poincaré holds along every prefix
        for k in 0..=c.len() {
            let p = c.prefix(k);
            let chi_f = euler_characteristic(p.elements());
            let chi_b = betti_exact(p.elements()).euler_characteristic();
            prop_assert_eq!(chi_f, chi_b);
        }
    }

    #[test]
    fn derivative_squares_to_zero_on_open_and_closed_sets((c, seed) in arb_whitney()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1234);
        let u = c.random_open_set_with(rng.gen_range(1..=5), &mut rng).unwrap();
        let k = c.complement(&u).unwrap();
        for els in [c.elements(), u.elements(), k.elements()] {
            let d = exterior_derivative(els);
            prop_assert!(d.matmul(&d).is_zero());
            let p = parity(els);
            let dm = dirac(els);
            prop_assert!(p.matmul(&dm).add(&dm.matmul(&p)).is_zero());
        }
    }

    #[test]
    fn dirac_restriction_consistency((c, seed) in arb_whitney()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9999);
        let u = c.random_open_set_with(rng.gen_range(1..=4), &mut rng).unwrap();
        let k = c.complement(&u).unwrap();
        let dg = dirac(c.elements());
        for s in [&u, &k] {
            let idx: Vec<usize> = s
                .elements()
                .iter()
                .map(|x| c.index_of(x).unwrap())
                .collect();
            let restricted = dg.submatrix(&idx);
            let ds = dirac(s.elements());
            // compare entrywise (block metadata differs)
            prop_assert_eq!(restricted.nrows(), ds.nrows());
            for i in 0..ds.nrows() {
                for j in 0..ds.ncols() {
                    prop_assert_eq!(restricted.get(i, j), ds.get(i, j));
                }
            }
        }
    }

    #[test]
    fn hodge_block_structure_is_exact((c, seed) in arb_whitney()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4242);
        let u = c.random_open_set_with(rng.gen_range(1..=4), &mut rng).unwrap();
        for els in [c.elements(), u.elements()] {
            let dm = dirac(els);
            let square = dm.matmul(&dm);
            let h = hodge(els);
            // off-block entries of D² vanish exactly and blocks agree
            for i in 0..h.n() {
                for j in 0..h.n() {
                    prop_assert_eq!(square.get(i, j), h.full().get(i, j));
                }
            }
            let offs = block_offsets(els);
            for (k, b) in h.blocks().iter().enumerate() {
                prop_assert_eq!(b.nrows(), offs[k + 1] - offs[k]);
            }
            prop_assert_eq!(h.blocks().len(), f_vector(els).len());
        }
    }

    #[test]
    fn betti_matches_float_nullity((c, seed) in arb_whitney()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1111);
        let u = c.random_open_set_with(rng.gen_range(1..=4), &mut rng).unwrap();
        let k = c.complement(&u).unwrap();
        for els in [c.elements(), u.elements(), k.elements()] {
            let h = hodge(els);
            let betti = betti_exact(els);
            let specs = hodge_spectra(&h).unwrap();
            let float_nullity: Vec<usize> = specs.iter().map(|s| s.count_zero()).collect();
            prop_assert_eq!(betti.counts(), float_nullity.as_slice());
        }
    }

    #[test]
    fn eigensolver_trace_and_pseudo_det_sanity((c, _) in arb_whitney()) {
        let h = hodge(c.elements());
        let spec = eigenvalues_sym_int(h.full()).unwrap();
        let sum: f64 = spec.values().iter().sum();
        let tr = h.full().trace() as f64;
        prop_assert!((sum - tr).abs() <= 1e-8 * tr.abs().max(1.0));
        if h.n() <= 50 {
            let exact = pseudo_det(h.full()).unwrap().exact.unwrap();
            let float: f64 = spec.nonzero_values().product();
            let exact_f = exact.to_f64().unwrap();
            prop_assert!(
                (float - exact_f).abs() <= 1e-6 * exact_f.abs().max(1.0),
                "float {} vs exact {}",
                float,
                exact_f
            );
        }
    }

    #[test]
    fn pad_left_of_merged_blocks_is_monotone_sound((c, _) in arb_whitney()) {
        // merged block spectra and the full matrix spectrum agree
        let h = hodge(c.elements());
        let merged = merge_spectra(&hodge_spectra(&h).unwrap());
        let full = eigenvalues_sym_int(h.full()).unwrap();
        prop_assert_eq!(merged.len(), full.len());
        for (a, b) in merged.values().iter().zip(full.values()) {
            prop_assert!((a - b).abs() <= 1e-8 * full.lambda_max().max(1.0));
        }
    }

    #[test]
    fn witten_deformation_preserves_block_nullity((c, seed) in arb_whitney()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbeef);
        let els = c.elements();
        let d = exterior_derivative(els);
        let g: Vec<f64> = (0..els.len())
            .map(|_| if rng.gen_bool(0.5) { 1.0 } else { 0.0 })
            .collect();
        let betti = betti_exact(els);
        let offs = block_offsets(els);
        for s in [0.5, 1.0, 2.0] {
            let w = WeightFunction::new(g.clone(), s).unwrap();
            let ds = witten_deform(&d, &w).unwrap();
            let dirac_s = &ds + ds.transpose();
            let ls = &dirac_s * &dirac_s;
            for k in 0..offs.len() - 1 {
                let blk = ls.view((offs[k], offs[k]), (offs[k + 1] - offs[k], offs[k + 1] - offs[k]));
                let spec = eigenvalues_sym(&blk.into_owned()).unwrap();
                prop_assert_eq!(
                    spec.count_zero(),
                    betti.counts()[k],
                    "block {} at s = {}",
                    k,
                    s
                );
            }
        }
    }
}
