use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use hsplab::{Error, Result};

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

pub fn json<T: Serialize>(command: &str, body: &T) -> Result<String> {
    let env = Envelope {
        schema: SCHEMA,
        command,
        body,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// RFC 4180 rows under a header.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Cache(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Cache(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Cache(e.to_string()))
        }
    }
}
