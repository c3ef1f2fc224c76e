#![no_main]

use graphon_ham::harness::parse_int_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_int_list(s) {
        let text = v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_int_list(&text).unwrap(), v);
    }
});
