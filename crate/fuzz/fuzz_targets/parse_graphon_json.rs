#![no_main]

use graphon_ham::harness::{graphon_to_json, parse_graphon_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_graphon_json(s) {
        let text = graphon_to_json(&w).to_string();
        assert_eq!(parse_graphon_json(&text).unwrap(), w);
    }
});
