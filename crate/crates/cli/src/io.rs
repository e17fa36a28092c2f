//! File formats: JSON arrays of field values and raw bitstreams.

use std::path::Path;

use linsdel::{Error, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// How symbol files are laid out on disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Raw,
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Usage(format!("{}: {e}", path.display()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Writes to `path`, or standard output when absent.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| io_err(p, e)),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(bytes)
                .map_err(|e| Error::Usage(format!("stdout: {e}")))
        }
    }
}

/// 8-byte little-endian bit count, then the bits most significant first,
/// zero-padded to a whole byte.
pub fn encode_bits(bits: &[bool]) -> Vec<u8> {
    let mut out = (bits.len() as u64).to_le_bytes().to_vec();
    for chunk in bits.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)));
        out.push(byte);
    }
    out
}

pub fn decode_bits(bytes: &[u8]) -> Result<Vec<bool>> {
    let bad = |msg: &str| Error::Usage(format!("raw bitstream: {msg}"));
    let header: [u8; 8] = bytes
        .get(..8)
        .and_then(|h| h.try_into().ok())
        .ok_or_else(|| bad("missing length prefix"))?;
    let len = u64::from_le_bytes(header) as usize;
    let body = &bytes[8..];
    if body.len() != len.div_ceil(8) {
        return Err(bad("length prefix disagrees with payload"));
    }
    Ok((0..len).map(|i| (body[i / 8] >> (7 - i % 8)) & 1 == 1).collect())
}

pub fn read_symbols(path: &Path, format: Format) -> Result<Vec<u32>> {
    match format {
        Format::Raw => {
            let bytes = std::fs::read(path).map_err(|e| io_err(path, e))?;
            Ok(decode_bits(&bytes)?.into_iter().map(u32::from).collect())
        }
        Format::Json => read_json(path),
        Format::Csv => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| Error::Usage(format!("not a symbol: {s}"))))
                .collect()
        }
    }
}

pub fn write_symbols(path: Option<&Path>, symbols: &[u32], format: Format) -> Result<()> {
    match format {
        Format::Raw => {
            if symbols.iter().any(|&s| s > 1) {
                return Err(Error::Usage("raw format needs binary symbols".into()));
            }
            let bits: Vec<bool> = symbols.iter().map(|&s| s == 1).collect();
            emit(path, &encode_bits(&bits))
        }
        Format::Json => emit(path, (serde_json::to_string(symbols).expect("array") + "\n").as_bytes()),
        Format::Csv => {
            let line: Vec<String> = symbols.iter().map(u32::to_string).collect();
            emit(path, (line.join(",") + "\n").as_bytes())
        }
    }
}
