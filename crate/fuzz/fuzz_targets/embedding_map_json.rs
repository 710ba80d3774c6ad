#![no_main]

use libfuzzer_sys::fuzz_target;
use sopsigma::json::{map_to_json, parse_embedding_map};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(map) = parse_embedding_map(text) {
            assert_eq!(parse_embedding_map(&map_to_json(&map)).unwrap(), map);
        }
    }
});
