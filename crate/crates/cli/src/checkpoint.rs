//! Census checkpoints: a versioned text file holding the run parameters, a
//! bitmap of finished partitions, the survivors found so far as graph6
//! lines, and a SHA-256 of everything above the last line.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use salem_core::e8::ROOT_COUNT;
use salem_core::graph6::{parse_graph6, write_graph6};
use salem_core::Graph;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

const MAGIC: &str = "salemgraph-checkpoint";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub max_vertices: usize,
    pub extras: usize,
    /// Finished partitions, by root index.
    pub done: BTreeSet<usize>,
    pub survivors: Vec<Graph>,
}

fn digest(body: &str) -> String {
    Sha256::digest(body.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn bitmap(done: &BTreeSet<usize>) -> String {
    let mut bytes = vec![0u8; ROOT_COUNT.div_ceil(8)];
    for &p in done {
        bytes[p / 8] |= 1 << (p % 8);
    }
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_bitmap(s: &str) -> Option<BTreeSet<usize>> {
    if s.len() != ROOT_COUNT.div_ceil(8) * 2 {
        return None;
    }
    let mut done = BTreeSet::new();
    for i in 0..s.len() / 2 {
        let b = u8::from_str_radix(s.get(2 * i..2 * i + 2)?, 16).ok()?;
        for bit in 0..8 {
            if b >> bit & 1 == 1 {
                done.insert(8 * i + bit);
            }
        }
    }
    Some(done)
}

impl Checkpoint {
    pub fn new(max_vertices: usize, extras: usize) -> Self {
        Checkpoint { max_vertices, extras, done: BTreeSet::new(), survivors: Vec::new() }
    }

    pub fn render(&self) -> Result<String> {
        let mut body = String::new();
        writeln!(body, "{MAGIC} {VERSION}").unwrap();
        writeln!(body, "max-vertices {}", self.max_vertices).unwrap();
        writeln!(body, "extras {}", self.extras).unwrap();
        writeln!(body, "done {}", bitmap(&self.done)).unwrap();
        writeln!(body, "survivors {}", self.survivors.len()).unwrap();
        let mut lines = self.survivors.iter().map(write_graph6).collect::<salem_core::Result<Vec<_>>>()?;
        lines.sort();
        for l in lines {
            writeln!(body, "{l}").unwrap();
        }
        let sum = digest(&body);
        Ok(format!("{body}sha256 {sum}\n"))
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let bad = |message: &str| CliError::Checkpoint { path: path.to_owned(), message: message.to_owned() };
        let body_end = text.trim_end_matches('\n').rfind('\n').map_or(0, |i| i + 1);
        let (body, last) = text.split_at(body_end);
        let sum = last.trim().strip_prefix("sha256 ").ok_or_else(|| bad("missing checksum line"))?;
        if digest(body) != sum {
            return Err(bad("checksum mismatch"));
        }
        let mut lines = body.lines();
        let mut field = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad("truncated header"))?;
            line.strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .map(str::to_owned)
                .ok_or_else(|| bad(&format!("expected {key}")))
        };
        let version: u32 = field(MAGIC)?.parse().map_err(|_| bad("bad version"))?;
        if version != VERSION {
            return Err(bad(&format!("unsupported version {version}")));
        }
        let max_vertices = field("max-vertices")?.parse().map_err(|_| bad("bad max-vertices"))?;
        let extras = field("extras")?.parse().map_err(|_| bad("bad extras"))?;
        let done = parse_bitmap(&field("done")?).ok_or_else(|| bad("bad partition bitmap"))?;
        let count: usize = field("survivors")?.parse().map_err(|_| bad("bad survivor count"))?;
        let survivors = lines.map(parse_graph6).collect::<salem_core::Result<Vec<_>>>()?;
        if survivors.len() != count {
            return Err(bad("survivor count mismatch"));
        }
        Ok(Checkpoint { max_vertices, extras, done, survivors })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Checkpoint::parse(&text, path)
    }

    /// Writes to a temporary sibling and renames, so a crash never leaves a
    /// half-written checkpoint.
    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.render()?).map_err(|e| CliError::io(&tmp, e))?;
        std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
    }
}
