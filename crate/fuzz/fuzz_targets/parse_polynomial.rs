#![no_main]

use circulant::text::{format_polynomial, parse_polynomials};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_polynomials(text) {
        Ok(polys) => {
            // Formatting then parsing is the identity.
            for p in &polys {
                let line = format_polynomial(p);
                let again = circulant::text::parse_polynomial(&line, 1).unwrap();
                assert_eq!(&again, p);
            }
        }
        Err(e) => {
            assert!(e.line >= 1 && e.column >= 1);
        }
    }
});
