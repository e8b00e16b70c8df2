use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use circulant::bigint::{
    carry_propagate, choose_params, schoolbook_mul, ssa_mul_traced, ssa_mul_with, BigNumber,
    SsaConfig, SsaPlan,
};
use circulant::circulant::{mul_vec_naive, mul_vec_recursive, FCirculant, ProductStats};
use circulant::fermat::{fermat_mul, mul_pow2, FermatElem};
use circulant::fft::{circulant_mul_classic, TransformPlan};
use circulant::mersenne::{build_root_context, fp_reduce, Fp, Fp2, Fp2Ring, P};
use circulant::poly::{
    poly_mul_schoolbook, poly_mul_with, Backend, Engine, PolyMulOptions, Polynomial,
};
use circulant::ring::{FExponent, Ring, RootContext};
use circulant::text::{format_polynomial, parse_polynomial};

const PW: u128 = P as u128;

fn to_biguint(limbs: &[u64]) -> BigUint {
    BigUint::new(
        limbs
            .iter()
            .flat_map(|&w| [w as u32, (w >> 32) as u32])
            .collect(),
    )
}

fn fermat_oracle(k: u32) -> BigUint {
    (BigUint::from(1u8) << k) + 1u8
}

fn fp2_strategy() -> impl Strategy<Value = Fp2> {
    (0..P as u64, 0..P as u64).prop_map(|(a, b)| Fp2::new(Fp::new(a), Fp::new(b)))
}

fn fermat_strategy() -> impl Strategy<Value = (u32, Vec<u64>, Vec<u64>)> {
    prop::sample::select(vec![4u32, 8, 16, 32, 64, 128, 192, 256]).prop_flat_map(|k| {
        let words = k as usize / 64 + 1;
        (
            Just(k),
            prop::collection::vec(any::<u64>(), words),
            prop::collection::vec(any::<u64>(), words),
        )
    })
}

#[test]
fn reduce_matches_wide_oracle_on_many_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100_000 {
        let (x, y) = (rng.gen_range(0..P as u64), rng.gen_range(0..P as u64));
        assert_eq!(
            fp_reduce(x * y).value() as u128,
            (x as u128 * y as u128) % PW
        );
    }
}

#[test]
fn square_roots_of_every_table_exponent() {
    let depth = 10;
    let ctx = build_root_context(depth).unwrap();
    for k in 0..depth {
        for e in 0..1u64 << k {
            let f = FExponent::new(k, e).unwrap();
            let (s, t) = ctx.sqrt_f(f).unwrap();
            let (rs, rt) = (ctx.root(s), ctx.root(t));
            assert_eq!(rs.mul(rs), ctx.root(f), "({k}, {e})");
            assert_eq!(rt, rs.neg(), "({k}, {e})");
        }
    }
}

#[test]
fn ssa_three_recursion_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let config = SsaConfig { threshold_words: 4 };
    let x = BigNumber::from_limbs((0..1600).map(|_| rng.gen()).collect());
    let y = BigNumber::from_limbs((0..1500).map(|_| rng.gen()).collect());
    let (got, trace) = ssa_mul_traced(&x, &y, &config);
    assert!(trace.max_depth >= 3, "{trace:?}");
    assert_eq!(got, schoolbook_mul(&x, &y));
}

proptest! {
    #[test]
    fn reduce_any_u64(x in any::<u64>()) {
        prop_assert_eq!(fp_reduce(x).value() as u64, x % P as u64);
    }

    #[test]
    fn fp2_mul_matches_oracle(x in fp2_strategy(), y in fp2_strategy()) {
        let (a, b) = (x.a.value() as u128, x.b.value() as u128);
        let (c, d) = (y.a.value() as u128, y.b.value() as u128);
        let z = x.mul(y);
        prop_assert_eq!(z.a.value() as u128, (a * c + 3 * (b * d % PW)) % PW);
        prop_assert_eq!(z.b.value() as u128, (a * d + b * c) % PW);
    }

    #[test]
    fn fp2_base_field_is_closed(a in 0..P as u64, c in 0..P as u64) {
        let z = Fp2::from_fp(Fp::new(a)).mul(Fp2::from_fp(Fp::new(c)));
        prop_assert!(z.is_base());
    }

    #[test]
    fn fermat_mul_matches_oracle((k, x, y) in fermat_strategy()) {
        let m = fermat_oracle(k);
        let (fx, fy) = (FermatElem::from_limbs(k, &x), FermatElem::from_limbs(k, &y));
        prop_assert_eq!(to_biguint(fx.limbs()), to_biguint(&x) % &m);
        let z = fermat_mul(&fx, &fy).unwrap();
        prop_assert_eq!(to_biguint(z.limbs()), (to_biguint(&x) * to_biguint(&y)) % &m);
    }

    #[test]
    fn shift_equals_power_of_two_product((k, x, _) in fermat_strategy(), frac in 0.0f64..1.0) {
        let fx = FermatElem::from_limbs(k, &x);
        let e = (frac * 4.0 * k as f64) as u64;
        let mut pow = FermatElem::one(k);
        for _ in 0..e % (2 * k as u64) {
            pow = fermat_mul(&pow, &FermatElem::from_u64(k, 2)).unwrap();
        }
        prop_assert_eq!(mul_pow2(&fx, e as i64), fermat_mul(&fx, &pow).unwrap());
        prop_assert_eq!(mul_pow2(&mul_pow2(&fx, e as i64), -(e as i64)), fx);
    }

    #[test]
    fn recursive_classic_and_naive_agree(
        log_n in 0u32..=8,
        level in 0u32..=3,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = build_root_context(12).unwrap();
        let n = 1usize << log_n;
        let gen = |r: &mut ChaCha8Rng| Fp2::new(Fp::new(r.gen_range(0..P as u64)), Fp::new(r.gen_range(0..P as u64)));
        let f = FExponent::new(level, rng.gen_range(0..1u64 << level)).unwrap();
        let row: Vec<Fp2> = (0..n).map(|_| gen(&mut rng)).collect();
        let b: Vec<Fp2> = (0..n).map(|_| gen(&mut rng)).collect();
        let a = FCirculant::new(row.clone(), f).unwrap();
        let fast = mul_vec_recursive(&ctx, &a, &b, &mut ProductStats::default()).unwrap();
        prop_assert_eq!(&fast, &mul_vec_naive(&ctx, &a, &b).unwrap());
        if f == FExponent::ONE {
            let plan = TransformPlan::new(&ctx, n).unwrap();
            prop_assert_eq!(&fast, &circulant_mul_classic(&row, &b, &plan, &mut ProductStats::default()).unwrap());
        }
    }

    #[test]
    fn subfield_inputs_give_subfield_outputs(log_n in 0u32..=7, negacyclic: bool, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = build_root_context(8).unwrap();
        let n = 1usize << log_n;
        let base = |r: &mut ChaCha8Rng| Fp2Ring.from_u64(r.gen_range(0..P as u64));
        let f = if negacyclic { FExponent::MINUS_ONE } else { FExponent::ONE };
        let a = FCirculant::new((0..n).map(|_| base(&mut rng)).collect(), f).unwrap();
        let b: Vec<Fp2> = (0..n).map(|_| base(&mut rng)).collect();
        let out = mul_vec_recursive(&ctx, &a, &b, &mut ProductStats::default()).unwrap();
        prop_assert!(out.iter().all(|x| x.is_base()));
    }

    #[test]
    fn poly_engines_agree_and_length_law(
        p in prop::collection::vec(-(1i64 << 20)..(1i64 << 20), 0..80),
        q in prop::collection::vec(-(1i64 << 20)..(1i64 << 20), 0..80),
    ) {
        let (p, q) = (Polynomial::from_i64s(&p), Polynomial::from_i64s(&q));
        let want = poly_mul_schoolbook(&p, &q);
        let expected_len = if p.is_empty() || q.is_empty() { 0 } else { p.len() + q.len() - 1 };
        prop_assert_eq!(want.len(), expected_len);
        for engine in [Engine::Circulant, Engine::Classic] {
            for backend in [Backend::Auto, Backend::Fermat] {
                let opts = PolyMulOptions { engine, backend, ..Default::default() };
                prop_assert_eq!(&poly_mul_with(&p, &q, &opts).unwrap(), &want);
            }
        }
    }

    #[test]
    fn unchecked_mersenne_is_a_ring_homomorphism(
        p in prop::collection::vec(any::<i64>(), 1..40),
        q in prop::collection::vec(any::<i64>(), 1..40),
    ) {
        let (p, q) = (Polynomial::from_i64s(&p), Polynomial::from_i64s(&q));
        let modulus = BigInt::from(P);
        let reduce = |c: &BigInt| ((c % &modulus) + &modulus) % &modulus;
        let want = poly_mul_schoolbook(&p, &q);
        for engine in [Engine::Circulant, Engine::Classic] {
            let opts = PolyMulOptions { engine, backend: Backend::Mersenne, exact_check: false, ..Default::default() };
            let got = poly_mul_with(&p, &q, &opts).unwrap();
            prop_assert_eq!(got.len(), want.len());
            for (g, w) in got.coeffs().iter().zip(want.coeffs()) {
                prop_assert_eq!(reduce(g), reduce(w));
            }
        }
    }

    #[test]
    fn ssa_matches_schoolbook(
        x in prop::collection::vec(any::<u64>(), 0..120),
        y in prop::collection::vec(any::<u64>(), 0..120),
        threshold in 4usize..80,
    ) {
        let (x, y) = (BigNumber::from_limbs(x), BigNumber::from_limbs(y));
        let config = SsaConfig { threshold_words: threshold };
        prop_assert_eq!(ssa_mul_with(&x, &y, &config), schoolbook_mul(&x, &y));
    }

    #[test]
    fn ssa_commutes_and_distributes(
        x in prop::collection::vec(any::<u64>(), 1..60),
        y in prop::collection::vec(any::<u64>(), 1..60),
        z in prop::collection::vec(any::<u64>(), 1..60),
    ) {
        let (x, y, z) = (BigNumber::from_limbs(x), BigNumber::from_limbs(y), BigNumber::from_limbs(z));
        let config = SsaConfig { threshold_words: 4 };
        let mul = |a: &BigNumber, b: &BigNumber| ssa_mul_with(a, b, &config);
        prop_assert_eq!(mul(&x, &y), mul(&y, &x));
        prop_assert_eq!(mul(&x, &(&y + &z)), &mul(&x, &y) + &mul(&x, &z));
    }

    #[test]
    fn chosen_params_are_safe(total_bits in 1u64..(1 << 36)) {
        if let SsaPlan::Split(params) = choose_params(total_bits) {
            prop_assert_eq!(params.validate(), Ok(()));
            prop_assert!((params.parts as u64 - 1) * params.part_bits >= total_bits);
            let sqrt = (total_bits as f64).sqrt();
            prop_assert!(params.parts as f64 >= sqrt && (params.parts as f64) < 2.0 * sqrt + 4.0);
        }
    }

    #[test]
    fn carry_propagation_is_positional_sum(
        parts in prop::collection::vec(any::<u64>(), 0..20),
        part_bits in 1u64..130,
    ) {
        let coeffs: Vec<BigNumber> = parts.iter().map(|&c| BigNumber::from_u64(c)).collect();
        let want = parts
            .iter()
            .enumerate()
            .fold(BigUint::default(), |acc, (i, &c)| acc + (BigUint::from(c) << (i as u64 * part_bits)));
        prop_assert_eq!(to_biguint(carry_propagate(&coeffs, part_bits).limbs()), want);
    }

    #[test]
    fn decimal_roundtrip(digits in "[0-9]{1,200}") {
        let n: BigNumber = digits.parse().unwrap();
        let oracle: BigUint = digits.parse().unwrap();
        prop_assert_eq!(to_biguint(n.limbs()), oracle.clone());
        prop_assert_eq!(n.to_decimal(), oracle.to_string());
    }

    #[test]
    fn polynomial_text_roundtrip(coeffs in prop::collection::vec(any::<i64>(), 0..30)) {
        let p = Polynomial::from_i64s(&coeffs);
        prop_assert_eq!(parse_polynomial(&format_polynomial(&p), 1).unwrap(), p);
    }
}
