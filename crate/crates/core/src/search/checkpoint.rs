//! Append-only progress file for long exhaustive runs.
//!
//! ```text
//! kk-checkpoint 1
//! params v_max=8 r=3 s=4 x=25 prefix=12
//! chunk 17 12 0x0a3f01
//! chunk 18 - -
//! ```
//!
//! Each `chunk` line records one finished chunk: its best `k_s` and
//! decision vector, or `-` when every graph in it was pruned.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use super::SearchError;

pub(crate) type ChunkResult = Option<(u64, u32)>;

const MAGIC: &str = "kk-checkpoint 1";

pub struct Checkpoint {
    path: PathBuf,
    params: String,
    done: BTreeMap<u32, ChunkResult>,
    file: Option<File>,
}

fn bad(path: &Path, line: usize, msg: impl std::fmt::Display) -> SearchError {
    SearchError::Checkpoint(format!("{}:{line}: {msg}", path.display()))
}

impl Checkpoint {
    /// Opens `path`, resuming if it exists. Fails if the file was written for
    /// different search parameters.
    pub fn open(path: &Path, v_max: usize, r: usize, s: usize, x: u64, prefix: usize) -> Result<Self, SearchError> {
        let params = format!("params v_max={v_max} r={r} s={s} x={x} prefix={prefix}");
        let mut done = BTreeMap::new();
        let fresh = !path.exists();
        if !fresh {
            let reader = BufReader::new(File::open(path)?);
            let mut lines = reader.lines().enumerate();
            let mut header = |expect: &str| -> Result<(), SearchError> {
                match lines.next() {
                    Some((i, line)) => {
                        let line = line?;
                        if line.trim() != expect {
                            return Err(bad(path, i + 1, format!("expected {expect:?}, found {line:?}")));
                        }
                        Ok(())
                    }
                    None => Err(bad(path, 1, "missing header")),
                }
            };
            header(MAGIC)?;
            header(&params)?;
            for (i, line) in lines {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                let [tag, chunk, value, mask] = fields[..] else {
                    return Err(bad(path, i + 1, "expected `chunk <id> <value> <mask>`"));
                };
                if tag != "chunk" {
                    return Err(bad(path, i + 1, format!("unknown record {tag:?}")));
                }
                let chunk: u32 = chunk.parse().map_err(|_| bad(path, i + 1, "bad chunk id"))?;
                let result = match (value, mask) {
                    ("-", "-") => None,
                    (v, m) => {
                        let v = v.parse().map_err(|_| bad(path, i + 1, "bad value"))?;
                        let m = m
                            .strip_prefix("0x")
                            .and_then(|h| u32::from_str_radix(h, 16).ok())
                            .ok_or_else(|| bad(path, i + 1, "bad mask"))?;
                        Some((v, m))
                    }
                };
                done.insert(chunk, result);
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        if fresh {
            writeln!(file, "{MAGIC}\n{params}")?;
            file.flush()?;
        }
        Ok(Self {
            path: path.to_path_buf(),
            params,
            done,
            file: Some(file),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn params(&self) -> &str {
        &self.params
    }

    pub(crate) fn done(&self) -> &BTreeMap<u32, ChunkResult> {
        &self.done
    }

    pub fn completed_chunks(&self) -> usize {
        self.done.len()
    }

    pub(crate) fn record(&mut self, chunk: u32, result: ChunkResult) -> Result<(), SearchError> {
        let file = self.file.as_mut().expect("checkpoint opened for writing");
        match result {
            Some((v, m)) => writeln!(file, "chunk {chunk} {v} {m:#x}")?,
            None => writeln!(file, "chunk {chunk} - -")?,
        }
        file.flush()?;
        self.done.insert(chunk, result);
        Ok(())
    }
}
