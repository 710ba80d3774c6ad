#![no_main]

use libfuzzer_sys::fuzz_target;
use sopsigma::json::{parse_poset, poset_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_poset(text) {
        // Output is closed, so a second pass must be a fixed point.
        let once = poset_to_json(&p);
        let again = parse_poset(&once).expect("own output parses");
        assert_eq!(again, p);
        assert_eq!(poset_to_json(&again), once);
    }
});
