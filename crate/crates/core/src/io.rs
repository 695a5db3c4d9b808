//! JSON wire formats: code parameter descriptors, field descriptors, message
//! polynomials, codewords, received words, and the simulation config.
//!
//! Field elements travel as canonical integers (sum c_i q^i). All parsers
//! validate range and structural invariants; none of them panic on malformed
//! input.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{ExtField, FiniteField};
use crate::channel::ReceivedWord;
use crate::code::{Codeword, FSCodeParams, Message};
use crate::linpoly::LinPoly;
use crate::sim::SimConfig;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl IoError {
    fn invalid(e: impl std::fmt::Display) -> Self {
        IoError::Invalid(e.to_string())
    }
}

/// Code parameter descriptor: {"q", "m", "h", "n_t", "k", "s"}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsSpec {
    pub q: u64,
    pub m: usize,
    pub h: usize,
    pub n_t: usize,
    pub k: usize,
    pub s: usize,
}

pub fn parse_params_json(bytes: &[u8]) -> Result<FSCodeParams, IoError> {
    let spec: ParamsSpec = serde_json::from_slice(bytes)?;
    FSCodeParams::new(spec.q, spec.m, spec.h, spec.n_t, spec.k, spec.s).map_err(IoError::invalid)
}

pub fn params_to_json(params: &FSCodeParams) -> Value {
    serde_json::json!({
        "q": params.q(),
        "m": params.m(),
        "h": params.h(),
        "n_t": params.n_t(),
        "k": params.k(),
        "s": params.s(),
    })
}

/// Field descriptor: {"q", "m", "modulus": [c_0, ..., c_m]}.
pub fn field_descriptor_json(field: &ExtField) -> Value {
    serde_json::json!({
        "q": field.q(),
        "m": field.m(),
        "modulus": field.modulus(),
    })
}

#[derive(Debug, Deserialize)]
struct FieldSpec {
    q: u64,
    m: usize,
    modulus: Vec<u64>,
}

pub fn parse_field_descriptor(bytes: &[u8]) -> Result<ExtField, IoError> {
    let spec: FieldSpec = serde_json::from_slice(bytes)?;
    ExtField::with_modulus(spec.q, spec.m, &spec.modulus).map_err(IoError::invalid)
}

/// Message polynomial: a JSON array of canonical integers, low q-degree
/// first.
pub fn parse_message_json(params: &FSCodeParams, bytes: &[u8]) -> Result<Message, IoError> {
    let coeffs: Vec<u64> = serde_json::from_slice(bytes)?;
    let poly =
        LinPoly::from_canonical_coeffs(params.field(), &coeffs).map_err(IoError::invalid)?;
    Message::new(params, poly).map_err(IoError::invalid)
}

pub fn message_to_json(msg: &Message) -> Value {
    Value::from(msg.poly().canonical_coeffs())
}

#[derive(Debug, Serialize, Deserialize)]
struct ReceivedWordSpec {
    n_r: usize,
    rows: Vec<Vec<u64>>,
}

/// Received word: {"n_r", "rows": [[canonical ints]]}; rows must be
/// independent vectors of width h+1.
pub fn parse_received_word_json(
    params: &FSCodeParams,
    bytes: &[u8],
) -> Result<ReceivedWord, IoError> {
    let spec: ReceivedWordSpec = serde_json::from_slice(bytes)?;
    if spec.rows.len() != spec.n_r {
        return Err(IoError::Invalid(format!(
            "n_r = {} but {} rows given",
            spec.n_r,
            spec.rows.len()
        )));
    }
    let field = params.field();
    let rows = spec
        .rows
        .iter()
        .map(|row| row.iter().map(|&v| field.try_elem(v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(IoError::invalid)?;
    ReceivedWord::try_new(field, rows, params.h()).map_err(IoError::invalid)
}

pub fn received_word_to_json(rw: &ReceivedWord) -> Value {
    let rows: Vec<Vec<u64>> = rw
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| e.canonical()).collect())
        .collect();
    serde_json::json!({ "n_r": rw.n_r(), "rows": rows })
}

/// Codeword JSON mirrors the received word layout.
pub fn codeword_to_json(cw: &Codeword) -> Value {
    let rows: Vec<Vec<u64>> = cw
        .rows()
        .iter()
        .map(|r| r.iter().map(|e| e.canonical()).collect())
        .collect();
    serde_json::json!({ "n_t": cw.n_t(), "rows": rows })
}

/// Parses and validates a simulation config.
pub fn parse_sim_config(bytes: &[u8]) -> Result<SimConfig, IoError> {
    let cfg: SimConfig = serde_json::from_slice(bytes)?;
    cfg.validate().map_err(IoError::invalid)?;
    Ok(cfg)
}

/// A sweep file: either a single config object or an array of them.
pub fn parse_sim_configs(bytes: &[u8]) -> Result<Vec<SimConfig>, IoError> {
    let v: Value = serde_json::from_slice(bytes)?;
    let list = match v {
        Value::Array(items) => items,
        other => vec![other],
    };
    list.into_iter()
        .map(|item| {
            let cfg: SimConfig = serde_json::from_value(item)?;
            cfg.validate().map_err(IoError::invalid)?;
            Ok(cfg)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::encode;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn main_params() -> FSCodeParams {
        FSCodeParams::new(2, 9, 3, 3, 4, 2).unwrap()
    }

    #[test]
    fn params_round_trip() {
        let p = main_params();
        let json = serde_json::to_vec(&params_to_json(&p)).unwrap();
        let p2 = parse_params_json(&json).unwrap();
        assert_eq!(p2.field().id(), p.field().id());
        assert_eq!((p2.h(), p2.n_t(), p2.k(), p2.s()), (3, 3, 4, 2));

        assert!(parse_params_json(b"{").is_err());
        assert!(parse_params_json(br#"{"q":2,"m":9,"h":4,"n_t":3,"k":4,"s":2}"#).is_err());
        assert!(parse_params_json(br#"{"q":6,"m":9,"h":3,"n_t":3,"k":4,"s":2}"#).is_err());
    }

    #[test]
    fn field_descriptor_round_trip() {
        let p = main_params();
        let json = serde_json::to_vec(&field_descriptor_json(p.field())).unwrap();
        let f = parse_field_descriptor(&json).unwrap();
        assert_eq!(f.id(), p.field().id());
        assert!(parse_field_descriptor(br#"{"q":2,"m":2,"modulus":[1,0,1]}"#).is_err());
    }

    #[test]
    fn message_round_trip_and_validation() {
        let p = main_params();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let msg = Message::random(&p, &mut rng);
        let json = serde_json::to_vec(&message_to_json(&msg)).unwrap();
        assert_eq!(parse_message_json(&p, &json).unwrap(), msg);

        // out-of-range coefficient
        assert!(parse_message_json(&p, b"[512]").is_err());
        // degree too large
        assert!(parse_message_json(&p, b"[0,0,0,0,1]").is_err());
        // trailing zeros trim to a valid low-degree message
        assert!(parse_message_json(&p, b"[1,0,0,0,0,0]").is_ok());
        assert!(parse_message_json(&p, b"not json").is_err());
    }

    #[test]
    fn received_word_round_trip_and_validation() {
        let p = main_params();
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let cw = encode(&p, &Message::random(&p, &mut rng));
        let rw = ReceivedWord::new(p.field(), cw.rows().to_vec(), p.h());
        let json = serde_json::to_vec(&received_word_to_json(&rw)).unwrap();
        let rw2 = parse_received_word_json(&p, &json).unwrap();
        assert_eq!(rw, rw2);

        // n_r mismatch
        assert!(parse_received_word_json(&p, br#"{"n_r":2,"rows":[[1,0,0,0]]}"#).is_err());
        // wrong width
        assert!(parse_received_word_json(&p, br#"{"n_r":1,"rows":[[1,0]]}"#).is_err());
        // dependent rows
        assert!(parse_received_word_json(
            &p,
            br#"{"n_r":2,"rows":[[1,0,0,0],[1,0,0,0]]}"#
        )
        .is_err());
        // out of range entry
        assert!(parse_received_word_json(&p, br#"{"n_r":1,"rows":[[600,0,0,0]]}"#).is_err());
        // empty is fine
        assert_eq!(
            parse_received_word_json(&p, br#"{"n_r":0,"rows":[]}"#).unwrap().n_r(),
            0
        );
    }

    #[test]
    fn sim_config_parsing() {
        let good = br#"{"q":2,"m":9,"h":3,"n_t":3,"k":4,"s":2,"delta":0,"gamma":2,
                        "mode":"unique","mu":2,"trials":100,"master_seed":7,"workers":2}"#;
        let cfg = parse_sim_config(good).unwrap();
        assert_eq!(cfg.trials, 100);
        assert!(matches!(cfg.mode, crate::sim::DecodeMode::Unique));

        // defaults: delta/gamma/mode/mu/master_seed/workers
        let minimal = br#"{"q":2,"m":9,"h":3,"n_t":3,"k":4,"s":2,"trials":1}"#;
        let cfg = parse_sim_config(minimal).unwrap();
        assert_eq!(cfg.mu, 1);
        assert_eq!(cfg.gamma, 0);

        assert!(parse_sim_config(br#"{"q":2,"m":9,"h":3,"n_t":3,"k":4,"s":2,"trials":0}"#)
            .is_err());
        assert!(parse_sim_config(b"[]").is_err());

        let sweep = br#"[{"q":2,"m":9,"h":3,"n_t":3,"k":4,"s":2,"trials":1},
                         {"q":2,"m":8,"h":1,"n_t":4,"k":2,"s":1,"trials":2}]"#;
        assert_eq!(parse_sim_configs(sweep).unwrap().len(), 2);
    }
}
