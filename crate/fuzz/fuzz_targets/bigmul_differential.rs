#![no_main]

use circulant::bigint::{schoolbook_mul, ssa_mul_with, BigNumber, SsaConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let threshold = 4 + data[0] as usize % 60;
    let rest = &data[1..];
    let split = rest.len() / 2 + rest.len() % 3;
    let (x, y) = rest.split_at(split.min(rest.len()));
    let (x, y) = (BigNumber::from_le_bytes(x), BigNumber::from_le_bytes(y));
    let config = SsaConfig {
        threshold_words: threshold,
    };
    assert_eq!(ssa_mul_with(&x, &y, &config), schoolbook_mul(&x, &y));
});
