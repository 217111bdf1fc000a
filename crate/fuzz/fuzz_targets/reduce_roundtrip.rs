#![no_main]

use libfuzzer_sys::fuzz_target;
use pfcount::instance::{pair_text, parity_text, Instance, Target};

// Whatever builds must emit a raw instance that parses back to the same matrices.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(inst) = Instance::parse(text) else { return };
    let Ok(red) = inst.build(None) else { return };
    let emitted = match &red.target {
        Target::Pair(p) => pair_text(p, Some(&red.weights)),
        Target::Parity(p) => parity_text(p, Some(&red.weights)),
    };
    let back = Instance::parse(&emitted).expect("emitted text parses");
    let again = back.build(None).expect("emitted text builds");
    let emitted2 = match &again.target {
        Target::Pair(p) => pair_text(p, Some(&again.weights)),
        Target::Parity(p) => parity_text(p, Some(&again.weights)),
    };
    assert_eq!(emitted, emitted2);
});
