use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::report::Report;

pub const CODE_VERSION: &str = concat!("gct-", env!("CARGO_PKG_VERSION"));

/// Inputs and outcome of one command run, stored alongside every cached result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub code_version: String,
    pub elapsed_ms: u128,
    pub result_digest: String,
}

impl RunManifest {
    /// Content address of the inputs: everything except timing and result.
    pub fn input_digest(&self) -> String {
        #[derive(Serialize)]
        struct Inputs<'a> {
            command: &'a str,
            parameters: &'a BTreeMap<String, String>,
            seed: u64,
            code_version: &'a str,
        }
        let text = serde_json::to_string(&Inputs {
            command: &self.command,
            parameters: &self.parameters,
            seed: self.seed,
            code_version: &self.code_version,
        })
        .expect("inputs serialize");
        sha256_hex(text.as_bytes())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CachedRun {
    pub manifest: RunManifest,
    pub report: Report,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn report_digest(report: &Report) -> String {
    sha256_hex(serde_json::to_string(report).expect("report serializes").as_bytes())
}

/// `$GCT_CACHE_DIR`, else `$XDG_CACHE_HOME/gct`, else `~/.cache/gct`.
pub fn default_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("GCT_CACHE_DIR") {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Path::new(&d).join("gct");
    }
    match std::env::var_os("HOME") {
        Some(h) => Path::new(&h).join(".cache").join("gct"),
        None => PathBuf::from(".gct-cache"),
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored run for these inputs; unreadable or corrupt entries are misses.
    pub fn load(&self, key: &str) -> Option<CachedRun> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let run: CachedRun = serde_json::from_str(&text).ok()?;
        (run.manifest.input_digest() == key && report_digest(&run.report) == run.manifest.result_digest)
            .then_some(run)
    }

    pub fn store(&self, run: &CachedRun) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = run.manifest.input_digest();
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, serde_json::to_string_pretty(run).expect("run serializes"))?;
        fs::rename(tmp, self.path(&key))
    }
}
