#![no_main]

use libfuzzer_sys::fuzz_target;
use sopsigma::json::{parse_set_system, set_system_to_json};
use sopsigma::setsystem::inclusion_poset;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = parse_set_system(text) {
            let once = set_system_to_json(&s);
            assert_eq!(parse_set_system(&once).expect("own output parses"), s);
            if s.sets().len() <= 256 {
                let (p, rep) = inclusion_poset(&s);
                assert_eq!(rep.len(), s.sets().len());
                assert!(p.len() <= s.sets().len());
            }
        }
    }
});
