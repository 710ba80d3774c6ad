#![no_main]

use libfuzzer_sys::fuzz_target;
use sopsigma::json::{parse_pattern, pattern_to_json};
use sopsigma::pattern::{check_maximality, validate_pattern};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = parse_pattern(text) else {
        return;
    };
    let once = pattern_to_json(&p);
    assert_eq!(parse_pattern(&once).expect("own output parses"), p);
    let _ = validate_pattern(&p);
    if p.indices().len() <= 64 && p.consistent().len() <= 64 {
        let _ = check_maximality(&p);
    }
});
