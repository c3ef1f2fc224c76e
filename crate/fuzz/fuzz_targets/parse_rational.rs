#![no_main]

use graphon_ham::rational::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // Cap the size: decimal scales grow as 10^len.
    if s.len() > 4096 {
        return;
    }
    if let Ok(r) = parse_rational(s) {
        let text = format_rational(&r);
        assert_eq!(parse_rational(&text).unwrap(), r, "{s:?} -> {text:?}");
    }
});
