use biquad_core::classify::enumerate_diagonal_auts;
use biquad_core::modp::smooth_by_reduction;
use biquad_core::smooth::is_smooth;
use biquad_core::{BiPoly, CycloScalar, DiagonalAut, Mat2, RootOfUnity, SurfaceAut};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

const CONDUCTORS: [u32; 12] = [1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24];
const EMBED_TOL: f64 = 1e-9;

fn scalar_from(n: u32, coeffs: &[i64]) -> CycloScalar {
    let v = coeffs
        .iter()
        .map(|&k| BigRational::from_integer(BigInt::from(k)))
        .collect();
    CycloScalar::from_power_coeffs(n, v)
}

fn scalar() -> impl Strategy<Value = CycloScalar> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n as usize).prop_map(move |c| scalar_from(n, &c))
    })
}

/// The embedding `z_N -> exp(2 pi i / N)`.
fn embed(x: &CycloScalar) -> Complex64 {
    let n = x.conductor() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| Complex64::from_polar(c.to_f64().unwrap(), 2.0 * std::f64::consts::PI * k as f64 / n))
        .sum()
}

fn close(u: Complex64, v: Complex64) -> bool {
    (u - v).norm() <= EMBED_TOL * (1.0 + u.norm().max(v.norm()))
}

fn bipoly(a: u32, b: u32) -> impl Strategy<Value = BiPoly> {
    let len = ((a + 1) * (b + 1)) as usize;
    prop::collection::vec(-2i64..=2, len).prop_map(move |c| {
        BiPoly::from_terms(
            a,
            b,
            c.into_iter()
                .enumerate()
                .map(|(k, v)| (((k as u32) / (b + 1), (k as u32) % (b + 1)), CycloScalar::from_integer(v))),
        )
    })
}

/// About half the coefficients zero, so that singular curves turn up.
fn sparse_bipoly(a: u32, b: u32) -> impl Strategy<Value = BiPoly> {
    let len = ((a + 1) * (b + 1)) as usize;
    prop::collection::vec(prop_oneof![Just(0i64), -3i64..=3], len).prop_map(move |c| {
        BiPoly::from_terms(
            a,
            b,
            c.into_iter()
                .enumerate()
                .map(|(k, v)| (((k as u32) / (b + 1), (k as u32) % (b + 1)), CycloScalar::from_integer(v))),
        )
    })
}

fn mat() -> impl Strategy<Value = Mat2> {
    (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2)
        .prop_filter("invertible", |&(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| Mat2::from_ints(a, b, c, d))
}

fn aut() -> impl Strategy<Value = SurfaceAut> {
    (any::<bool>(), mat(), mat()).prop_map(|(s, a, b)| SurfaceAut::new(s, a, b).unwrap())
}

fn proportional(p: &BiPoly, q: &BiPoly) -> bool {
    let Some((&(i, j), c)) = p.terms().iter().next() else {
        return q.is_zero();
    };
    let d = q.coeff(i, j);
    !d.is_zero() && p.scale(&d) == q.scale(c)
}

fn diagonal(n_max: u32) -> impl Strategy<Value = DiagonalAut> {
    (1..=n_max).prop_flat_map(|n| (0..n as i64, 0..n as i64).prop_map(move |(r1, r2)| DiagonalAut::new(n, r1, r2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_a_homomorphism(x in scalar(), y in scalar()) {
        prop_assert!(close(embed(&(&x + &y)), embed(&x) + embed(&y)));
        prop_assert!(close(embed(&(&x * &y)), embed(&x) * embed(&y)));
        if !y.is_zero() {
            let q = x.checked_div(&y).unwrap();
            prop_assert!(close(embed(&q) * embed(&y), embed(&x)));
        }
    }

    #[test]
    fn roots_of_unity_are_recognized(n in 1u32..=30, k in 0u32..30) {
        let r = RootOfUnity::new(n, k);
        prop_assert_eq!(CycloScalar::zeta_pow(n, k as i64).as_root_of_unity(), Some(r));
        prop_assert!(r.pow(r.order as i64).is_one());
        prop_assert_eq!(CycloScalar::from_integer(2).as_root_of_unity(), None);
    }

    #[test]
    fn pullback_is_contravariant(f in bipoly(2, 2), g in aut(), h in aut()) {
        let lhs = f.pullback(&g.compose(&h));
        let rhs = f.pullback(&g).pullback(&h);
        prop_assert!(proportional(&lhs, &rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn pullback_by_an_inverse_undoes(f in bipoly(3, 3), g in aut()) {
        let back = f.pullback(&g).pullback(&g.inverse());
        prop_assert!(proportional(&back, &f));
    }

    #[test]
    fn weights_match_substitution(f in bipoly(3, 4), d in diagonal(24)) {
        prop_assert_eq!(f.pullback(&d.to_aut()), f.scale_by_weights(&d));
    }

    #[test]
    fn diagonal_enumeration_is_a_group(
        a in 3u32..=4,
        b in 3u32..=4,
        picks in prop::collection::btree_set((0u32..=4, 0u32..=4), 2..5),
    ) {
        let terms = picks
            .into_iter()
            .filter(|&(i, j)| i <= a && j <= b)
            .map(|ij| (ij, CycloScalar::one()));
        let f = BiPoly::from_terms(a, b, terms);
        prop_assume!(!f.is_zero());
        let en = enumerate_diagonal_auts(&f, a * b).unwrap();
        prop_assert!(en.certificates.iter().all(|c| c.holds_for(&f)));
        for x in &en.automorphisms {
            for y in &en.automorphisms {
                let z = x.compose(y);
                if !z.is_identity() && z.n <= a * b {
                    prop_assert!(en.automorphisms.contains(&z), "{} o {} = {} missing", x, y, z);
                }
            }
        }
        if en.closed {
            prop_assert_eq!(en.structure.iter().product::<u64>(), en.group_order());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_certificate_agrees_with_elimination(
        f in prop_oneof![sparse_bipoly(2, 2), sparse_bipoly(3, 2), sparse_bipoly(2, 3)],
    ) {
        prop_assume!(!f.is_zero());
        let exact = is_smooth(&f).unwrap().smooth;
        prop_assert_eq!(smooth_by_reduction(&f).is_some(), exact, "{}", f);
    }
}

#[test]
fn embedding_tolerance_is_meaningful() {
    // 1 + z_5 + ... + z_5^4 is exactly zero; a near miss has to fail.
    let s = scalar_from(5, &[1, 1, 1, 1, 1]);
    assert!(s.is_zero());
    assert!(close(embed(&s), Complex64::zero()));
    assert!(!close(Complex64::new(1e-6, 0.0), Complex64::zero()));
}
