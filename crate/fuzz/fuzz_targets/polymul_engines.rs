#![no_main]

use circulant::poly::{poly_mul_schoolbook, poly_mul_with, Backend, Engine, PolyMulOptions};
use circulant::text::parse_polynomials;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(polys) = parse_polynomials(text) else {
        return;
    };
    let [p, q] = polys.as_slice() else {
        return;
    };
    if p.len() + q.len() > 2048 {
        return;
    }
    let want = poly_mul_schoolbook(p, q);
    for engine in [Engine::Circulant, Engine::Classic] {
        for backend in [Backend::Auto, Backend::Fermat] {
            let opts = PolyMulOptions {
                engine,
                backend,
                ..Default::default()
            };
            assert_eq!(poly_mul_with(p, q, &opts).unwrap(), want);
        }
    }
});
