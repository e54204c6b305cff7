use std::collections::BTreeMap;

use biquad::parse::{parse_aut, parse_bipoly, parse_scalar};
use biquad::verify::family_specs;
use biquad_core::families::build_family;
use biquad_core::{BiPoly, CycloScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_POLYS: usize = 50;
const SEED: u64 = 11;

fn round_trip(f: &BiPoly) {
    let text = f.to_string();
    let parsed = parse_bipoly(&text).unwrap_or_else(|e| panic!("{}: {}", text, e));
    assert_eq!(&parsed.poly, f, "{}", text);
    assert_eq!(parsed.bidegree, f.bidegree());
    assert_eq!(parsed.poly.to_string(), text);
}

#[test]
fn every_family_instance() {
    let specs = family_specs((4, 6), (4, 6));
    assert!(specs.len() > 300);
    for spec in &specs {
        let fam = build_family(spec).unwrap();
        round_trip(&fam.poly);
        assert_eq!(parse_aut(&fam.aut.to_aut().to_string()).unwrap(), fam.aut.to_aut());
        assert_eq!(parse_scalar(&spec.s.to_string()).unwrap(), spec.s);
    }
}

fn random_scalar(rng: &mut ChaCha8Rng) -> CycloScalar {
    let n = [1, 3, 4, 5, 8, 12][rng.gen_range(0..6)];
    let mut acc = CycloScalar::zero();
    for k in 0..rng.gen_range(1..=3) {
        let c = CycloScalar::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)).unwrap();
        acc = &acc + &(&c * &CycloScalar::zeta_pow(n, k));
    }
    acc
}

#[test]
fn seeded_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut done = 0;
    while done < RANDOM_POLYS {
        let (a, b) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let mut terms = BTreeMap::new();
        for _ in 0..rng.gen_range(1..=6) {
            terms.insert((rng.gen_range(0..=a), rng.gen_range(0..=b)), random_scalar(&mut rng));
        }
        let f = BiPoly::from_terms(a, b, terms);
        if f.is_zero() {
            continue;
        }
        round_trip(&f);
        done += 1;
    }
}
