//! Raw bytes ↔ message symbols.
//!
//! Each byte expands to a fixed-width group of base-q digits (the smallest w
//! with q^w ≥ 256: 8 bits for q = 2, 6 trits for q = 3), least-significant
//! digit first. A 4-byte little-endian length prefix precedes the data so
//! decoding can strip the zero padding that fills the final symbols. The
//! digit stream packs into message symbols m digits at a time, making the
//! mapping a bijection between byte strings that fit and padded messages.

use rankpke::linalg::FieldVector;
use rankpke::{Error, FieldElement, Result, SchemeParams};

/// Smallest w with q^w ≥ 256, i.e. ⌈8 / log₂ q⌉.
fn digits_per_byte(q: u8) -> usize {
    let mut w = 0;
    let mut span = 1u32;
    while span < 256 {
        span *= q as u32;
        w += 1;
    }
    w
}

/// Bytes a message can carry: total digit slots over w, minus the prefix.
pub fn capacity_bytes(params: &SchemeParams) -> usize {
    let slots = params.msg_len() * params.m();
    (slots / digits_per_byte(params.q())).saturating_sub(4)
}

pub fn encode(params: &SchemeParams, raw: &[u8]) -> Result<FieldVector> {
    let cap = capacity_bytes(params);
    if raw.len() > cap {
        return Err(Error::InvalidParams(format!(
            "message is {} bytes but these parameters carry at most {cap}",
            raw.len()
        )));
    }
    let q = params.q();
    let w = digits_per_byte(q);
    let m = params.m();

    let mut digits = Vec::with_capacity((4 + raw.len()) * w);
    let prefix = (raw.len() as u32).to_le_bytes();
    for &b in prefix.iter().chain(raw) {
        let mut v = b as u32;
        for _ in 0..w {
            digits.push((v % q as u32) as u8);
            v /= q as u32;
        }
    }
    digits.resize(params.msg_len() * m, 0);

    let field = params.field();
    digits.chunks(m).map(|c| field.element(c)).collect()
}

pub fn decode(params: &SchemeParams, msg: &[FieldElement]) -> Result<Vec<u8>> {
    let q = params.q() as u32;
    let w = digits_per_byte(params.q());

    let digits: Vec<u8> = msg.iter().flat_map(|e| e.coeffs().to_vec()).collect();
    let mut bytes = Vec::with_capacity(digits.len() / w);
    for group in digits.chunks_exact(w) {
        let mut v = 0u32;
        for &d in group.iter().rev() {
            v = v * q + d as u32;
        }
        if v > 255 {
            return Err(Error::Format(format!(
                "digit group decodes to {v}, not a byte"
            )));
        }
        bytes.push(v as u8);
    }

    if bytes.len() < 4 {
        return Err(Error::Format("message too short for a length prefix".into()));
    }
    let len = u32::from_le_bytes(bytes[..4].try_into().unwrap()) as usize;
    if len > bytes.len() - 4 {
        return Err(Error::Format(format!(
            "length prefix {len} exceeds the {} decoded bytes",
            bytes.len() - 4
        )));
    }
    Ok(bytes[4..4 + len].to_vec())
}
