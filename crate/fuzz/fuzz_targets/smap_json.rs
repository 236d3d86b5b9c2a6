// SPDX-License-Identifier: Apache-2.0
#![no_main]

use koethe::criteria::SMap;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(s) = SMap::from_json_str(text) else { return };
    let again = SMap::from_json_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(s, again);
    for k in 1..=16 {
        if let Ok(m) = s.eval(k) {
            assert!(m >= 1);
        }
    }
});
