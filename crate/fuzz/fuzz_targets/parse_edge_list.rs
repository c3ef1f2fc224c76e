#![no_main]

use graphon_ham::sampling::parse_edge_list;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_edge_list(s) {
        let text = g.to_edge_list();
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }
});
