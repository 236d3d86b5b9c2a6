// SPDX-License-Identifier: Apache-2.0
#![no_main]

use koethe::spaces::SpaceDescriptor;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(space) = SpaceDescriptor::from_json_str(text) else { return };
    // accepted descriptors survive a round trip and evaluate without panicking
    let again = SpaceDescriptor::from_json_str(&serde_json::to_string(&space).unwrap()).unwrap();
    assert_eq!(space, again);
    for n in 1..=4 {
        let _ = space.weight(n, 1);
    }
});
