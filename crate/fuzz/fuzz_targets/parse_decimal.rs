#![no_main]

use circulant::bigint::BigNumber;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(n) = data.parse::<BigNumber>() {
        let s = n.to_decimal();
        let trimmed = data.trim_start_matches('0');
        assert_eq!(s, if trimmed.is_empty() { "0" } else { trimmed });
        assert_eq!(s.parse::<BigNumber>().unwrap(), n);
    }
});
