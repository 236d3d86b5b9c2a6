// SPDX-License-Identifier: Apache-2.0
#![no_main]

use koethe_cli::{format_vector, parse_vector};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(v) = parse_vector(text) else { return };
    assert!(v.iter().all(|x| x.is_finite()));
    let back = parse_vector(&format_vector(&v)).unwrap();
    assert_eq!(
        v.iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
        back.iter().map(|x| x.to_bits()).collect::<Vec<_>>()
    );
});
