// SPDX-License-Identifier: Apache-2.0
#![no_main]

use koethe_cli::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cfg) = ExperimentConfig::from_json_str(text) else { return };
    // a validated config stays valid through serialization
    let again = ExperimentConfig::from_json_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(cfg, again);
});
