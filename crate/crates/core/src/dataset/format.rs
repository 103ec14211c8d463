//! The `VMFE` binary container.
//!
//! All integers and floats are little-endian.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "VMFE"
//!      4     4  u32 version (1)
//!      8     1  u8 role (0 = embeddings, 1 = model)
//!      9     4  u32 d
//!     13     8  u64 N (rows; C for a model)
//!     21     4  u32 C (class count)
//!     25        role 0: N × u32 labels, then N × d f32 (row-major)
//!               role 1: C × d f32 weights, then C f32 biases
//! ```
//!
//! Class display names live in an optional JSON sidecar next to the file,
//! `<stem>.classes.json`, mapping class id to name.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{EmbeddingDataset, Split};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"VMFE";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Role {
    Embeddings = 0,
    Model = 1,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad magic bytes {found:?}, expected \"VMFE\"")]
    BadMagic { found: [u8; 4] },

    #[error("unsupported format version {0}, expected {VERSION}")]
    UnsupportedVersion(u32),

    #[error("unknown role byte {0}")]
    UnknownRole(u8),

    #[error("expected a {expected:?} file, found {found:?}")]
    WrongRole { expected: Role, found: Role },

    #[error("truncated payload: header declares {expected} bytes, file has {actual}")]
    Truncated { expected: u64, actual: u64 },

    #[error("{extra} trailing bytes after payload")]
    TrailingBytes { extra: u64 },

    #[error("row {row}: label {label} >= declared class count {num_classes}")]
    LabelOutOfRange { row: u64, label: u32, num_classes: u32 },

    #[error("invalid header: {0}")]
    InvalidHeader(String),
}

/// Weights and biases of a linear head as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPayload {
    pub dim: usize,
    pub num_classes: usize,
    /// `num_classes × dim`, row-major.
    pub weights: Vec<f32>,
    pub biases: Vec<f32>,
}

struct Header {
    role: Role,
    dim: u32,
    rows: u64,
    num_classes: u32,
}

fn write_header(out: &mut Vec<u8>, h: &Header) {
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(h.role as u8);
    out.extend_from_slice(&h.dim.to_le_bytes());
    out.extend_from_slice(&h.rows.to_le_bytes());
    out.extend_from_slice(&h.num_classes.to_le_bytes());
}

fn read_header(bytes: &[u8]) -> Result<Header, FormatError> {
    if bytes.len() < 4 || bytes[..4] != MAGIC {
        let mut found = [0u8; 4];
        let n = bytes.len().min(4);
        found[..n].copy_from_slice(&bytes[..n]);
        return Err(FormatError::BadMagic { found });
    }
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::Truncated {
            expected: HEADER_LEN as u64,
            actual: bytes.len() as u64,
        });
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    let role = match bytes[8] {
        0 => Role::Embeddings,
        1 => Role::Model,
        other => return Err(FormatError::UnknownRole(other)),
    };
    Ok(Header {
        role,
        dim: u32::from_le_bytes(bytes[9..13].try_into().unwrap()),
        rows: u64::from_le_bytes(bytes[13..21].try_into().unwrap()),
        num_classes: u32::from_le_bytes(bytes[21..25].try_into().unwrap()),
    })
}

fn expect_len(bytes: &[u8], payload: Option<u64>) -> Result<usize, FormatError> {
    let expected = payload
        .and_then(|p| p.checked_add(HEADER_LEN as u64))
        .ok_or_else(|| FormatError::InvalidHeader("payload size overflows".into()))?;
    let actual = bytes.len() as u64;
    if actual < expected {
        return Err(FormatError::Truncated { expected, actual });
    }
    if actual > expected {
        return Err(FormatError::TrailingBytes {
            extra: actual - expected,
        });
    }
    Ok(expected as usize)
}

fn f32s(bytes: &[u8]) -> Vec<f32> {
    bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect()
}

pub fn encode_embeddings(dataset: &EmbeddingDataset) -> Vec<u8> {
    let n = dataset.len();
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * n * (1 + dataset.dim()));
    write_header(
        &mut out,
        &Header {
            role: Role::Embeddings,
            dim: dataset.dim() as u32,
            rows: n as u64,
            num_classes: dataset.num_classes() as u32,
        },
    );
    for &l in dataset.labels() {
        out.extend_from_slice(&l.to_le_bytes());
    }
    for &v in dataset.data() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_embeddings(bytes: &[u8]) -> Result<EmbeddingDataset, FormatError> {
    let h = read_header(bytes)?;
    if h.role != Role::Embeddings {
        return Err(FormatError::WrongRole {
            expected: Role::Embeddings,
            found: h.role,
        });
    }
    if h.dim < 2 {
        return Err(FormatError::InvalidHeader(format!("dimension {} < 2", h.dim)));
    }
    let payload = h
        .rows
        .checked_mul(4)
        .and_then(|labels| h.rows.checked_mul(h.dim as u64)?.checked_mul(4)?.checked_add(labels));
    expect_len(bytes, payload)?;

    let n = h.rows as usize;
    let label_end = HEADER_LEN + 4 * n;
    let labels: Vec<u32> = bytes[HEADER_LEN..label_end]
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if let Some((row, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= h.num_classes) {
        return Err(FormatError::LabelOutOfRange {
            row: row as u64,
            label,
            num_classes: h.num_classes,
        });
    }
    let data = f32s(&bytes[label_end..]);
    Ok(EmbeddingDataset::from_parts_unchecked(
        h.dim as usize,
        h.num_classes as usize,
        labels,
        data,
    ))
}

pub fn encode_model(model: &ModelPayload) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * (model.weights.len() + model.biases.len()));
    write_header(
        &mut out,
        &Header {
            role: Role::Model,
            dim: model.dim as u32,
            rows: model.num_classes as u64,
            num_classes: model.num_classes as u32,
        },
    );
    for &v in model.weights.iter().chain(&model.biases) {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_model(bytes: &[u8]) -> Result<ModelPayload, FormatError> {
    let h = read_header(bytes)?;
    if h.role != Role::Model {
        return Err(FormatError::WrongRole {
            expected: Role::Model,
            found: h.role,
        });
    }
    if h.rows != h.num_classes as u64 {
        return Err(FormatError::InvalidHeader(format!(
            "model rows {} differ from class count {}",
            h.rows, h.num_classes
        )));
    }
    let c = h.num_classes as u64;
    let payload = c
        .checked_mul(h.dim as u64)
        .and_then(|w| w.checked_add(c)?.checked_mul(4));
    expect_len(bytes, payload)?;
    let floats = f32s(&bytes[HEADER_LEN..]);
    let split = (c * h.dim as u64) as usize;
    Ok(ModelPayload {
        dim: h.dim as usize,
        num_classes: c as usize,
        weights: floats[..split].to_vec(),
        biases: floats[split..].to_vec(),
    })
}

/// Sidecar path holding class display names: `<stem>.classes.json`.
pub fn class_names_path(path: &Path) -> PathBuf {
    path.with_extension("classes.json")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `dataset` and, when it carries class names, the JSON sidecar.
pub fn write_embeddings(dataset: &EmbeddingDataset, path: &Path) -> Result<()> {
    fs::write(path, encode_embeddings(dataset)).map_err(io_err(path))?;
    if let Some(names) = dataset.class_names() {
        let side = class_names_path(path);
        let json = serde_json::to_string_pretty(names).map_err(|source| Error::Json {
            path: side.clone(),
            source,
        })?;
        fs::write(&side, json).map_err(io_err(&side))?;
    }
    Ok(())
}

/// Reads a role-0 file; picks up the class-name sidecar when present.
pub fn read_embeddings(path: &Path) -> Result<EmbeddingDataset> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    let mut dataset = decode_embeddings(&bytes)?;
    dataset.set_split(Split::Unspecified);
    let side = class_names_path(path);
    if side.exists() {
        let text = fs::read_to_string(&side).map_err(io_err(&side))?;
        let names: BTreeMap<u32, String> = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: side.clone(),
            source,
        })?;
        dataset.set_class_names(Some(names));
    }
    Ok(dataset)
}

pub fn write_model(model: &ModelPayload, path: &Path) -> Result<()> {
    fs::write(path, encode_model(model)).map_err(io_err(path))
}

pub fn read_model(path: &Path) -> Result<ModelPayload> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    Ok(decode_model(&bytes)?)
}
