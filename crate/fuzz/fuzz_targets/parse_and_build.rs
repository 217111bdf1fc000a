#![no_main]

use libfuzzer_sys::fuzz_target;
use pfcount::instance::{Instance, Target};
use pfcount::matroid::{count_common_bases, count_parity_bases, Limits};

// Small budgets keep every input cheap; errors are fine, panics are not.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(inst) = Instance::parse(text) else { return };
    let limits = Limits::uniform(8);
    if let Ok(red) = inst.build(None) {
        if red.target.len() <= 24 {
            let _ = match &red.target {
                Target::Pair(p) => count_common_bases(p).map(|_| ()),
                Target::Parity(p) => count_parity_bases(p).map(|_| ()),
            };
        }
        if let Ok(en) = inst.enumerate(None, &limits) {
            let _ = red.sign_checks(&inst, &en);
        }
    }
});
