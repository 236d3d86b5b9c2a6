// SPDX-License-Identifier: Apache-2.0
#![no_main]

use koethe::operators::Symbol;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(sym) = Symbol::from_json_str(text) else { return };
    let again = Symbol::from_json_str(&serde_json::to_string(&sym).unwrap()).unwrap();
    assert_eq!(sym, again);
    for part in [&sym.lower, &sym.upper].into_iter().flatten() {
        for j in 0..8 {
            let _ = part.log_abs(j);
        }
    }
});
