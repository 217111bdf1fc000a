#![no_main]

use libfuzzer_sys::fuzz_target;
use pfcount::instance::Instance;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = Instance::parse(text);
    }
});
