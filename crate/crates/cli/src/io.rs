use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use epicyclic::barcat::{FinCategory, Monoid};
use epicyclic::schema::{parse_document, Document};
use epicyclic::simplicial::{builtin, SimplicialSet};

/// Where relative output paths land.
#[derive(Clone, Debug)]
pub struct Output {
    pub dir: Option<PathBuf>,
}

impl Output {
    pub fn resolve(&self, path: &Path) -> PathBuf {
        match &self.dir {
            Some(dir) if path.is_relative() => dir.join(path),
            _ => path.to_path_buf(),
        }
    }

    /// Writes `contents` to `path` (resolved against the output directory)
    /// by way of a temporary file in the same directory, so readers never
    /// see a partial file.
    pub fn write(&self, path: &Path, contents: &str) -> Result<PathBuf> {
        let path = self.resolve(path);
        let parent = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&parent).with_context(|| format!("creating {}", parent.display()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&parent).with_context(|| format!("writing into {}", parent.display()))?;
        tmp.write_all(contents.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }

    /// Prints `json` to stdout, or writes it to `emit` when given.
    pub fn emit(&self, emit: Option<&Path>, json: &str) -> Result<()> {
        match emit {
            Some(p) => {
                let written = self.write(p, json)?;
                eprintln!("wrote {}", written.display());
            }
            None => print!("{json}"),
        }
        Ok(())
    }
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_document(&text)?)
}

/// A simplicial set from a file or a builtin name.
pub fn load_complex(input: Option<&Path>, builtin_name: Option<&str>, truncation: usize) -> Result<(String, SimplicialSet)> {
    match (input, builtin_name) {
        (Some(path), None) => match read_document(path)? {
            Document::Simplicial(doc) => Ok((path.display().to_string(), doc.to_set()?)),
            other => Err(epicyclic::Error::Schema(format!("expected a simplicial document, found kind `{}`", other.kind())).into()),
        },
        (None, Some(name)) => match builtin(name, truncation) {
            Some(x) => Ok((name.to_string(), x)),
            None => bail!(usage(format!("unknown builtin complex `{name}`; expected circle, sphere2 or point"))),
        },
        _ => bail!(usage("give exactly one of --input or --builtin")),
    }
}

/// A category from a monoid or category file, or a builtin monoid name.
pub fn load_category(spec: &str) -> Result<(String, FinCategory)> {
    let path = Path::new(spec);
    if path.exists() {
        return match read_document(path)? {
            Document::Monoid(doc) => Ok((spec.to_string(), doc.to_monoid()?.as_category())),
            Document::Category(doc) => Ok((spec.to_string(), doc.to_category()?)),
            other => Err(epicyclic::Error::Schema(format!(
                "expected a monoid or category document, found kind `{}`",
                other.kind()
            ))
            .into()),
        };
    }
    match Monoid::builtin(spec) {
        Some(m) => Ok((spec.to_string(), m.as_category())),
        None => bail!(usage(format!("`{spec}` is neither a file nor a builtin monoid (z<n>, s3, idem2, trivial)"))),
    }
}

/// A command-line usage problem, reported with exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> Usage {
    Usage(msg.into())
}
