#![no_main]

// Drives the full decode pipeline with arbitrary (but structurally valid)
// received bases: byte 0 picks mu, byte 1 the row count, then 8 bytes per
// row give four field elements. Decoding must never panic, and unique-mode
// outputs must respect the message degree bound.

use std::sync::OnceLock;

use fscode_core::algebra::FiniteField;
use fscode_core::channel::ReceivedWord;
use fscode_core::code::FSCodeParams;
use fscode_core::decoder::{decode_list, decode_unique, DecodeResult};
use libfuzzer_sys::fuzz_target;

static PARAMS: OnceLock<FSCodeParams> = OnceLock::new();

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let params = PARAMS.get_or_init(|| FSCodeParams::new(2, 9, 3, 3, 4, 2).unwrap());
    let field = params.field();
    let mu = 1 + (data[0] % 4) as usize;
    let n_rows = (data[1] % 8) as usize;

    let mut rows = Vec::with_capacity(n_rows);
    let mut off = 2;
    for _ in 0..n_rows {
        if off + 8 > data.len() {
            break;
        }
        let row: Vec<_> = (0..4)
            .map(|i| {
                let v = u16::from_le_bytes([data[off + 2 * i], data[off + 2 * i + 1]]);
                field.elem(v as u64 % field.order())
            })
            .collect();
        rows.push(row);
        off += 8;
    }

    let Ok(rw) = ReceivedWord::try_new(field, rows, params.h()) else {
        return;
    };
    let (result, trace) = decode_unique(params, &rw, mu);
    if let DecodeResult::Unique(m) = &result {
        assert!(m.poly().qdeg().map_or(true, |d| d < params.k()));
    }
    assert!(trace.polys_used <= trace.d_i.max(mu));

    let (result, _) = decode_list(params, &rw, 1 << 12);
    if let DecodeResult::List(list) = &result {
        assert!(list.len() <= 1 << 12);
    }
});
