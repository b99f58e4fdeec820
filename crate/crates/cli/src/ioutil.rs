//! Archive plumbing: read records from a file or stdin, write them to a
//! file or stdout.

use std::io::Read as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::Context;
use hcspace_core::archive::{read_archive, ArchiveWriter, InstanceRecord};

/// Reads a full archive from `path`, or from stdin when absent.
pub fn read_records(path: Option<&Path>) -> anyhow::Result<Vec<InstanceRecord>> {
    let (text, name) = match path {
        Some(p) => (
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            p.display().to_string(),
        ),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading archive from stdin")?;
            (buf, "<stdin>".to_string())
        }
    };
    read_archive(&text).with_context(|| format!("parsing archive {name}"))
}

/// Writes a full record set to `path` (replacing its contents), or to
/// stdout when absent. Used by transforming commands whose output is the
/// complete updated set.
pub fn write_records(path: Option<&Path>, records: &[InstanceRecord]) -> anyhow::Result<()> {
    let text = hcspace_core::archive::to_archive_text(records);
    match path {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .context("writing archive to stdout")?;
        }
    }
    Ok(())
}

/// Appends records to `path` (line-atomic), or prints them to stdout when
/// absent. Used by producing commands that grow a dataset.
pub fn append_records(path: Option<&Path>, records: &[InstanceRecord]) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            let mut w =
                ArchiveWriter::open(p).with_context(|| format!("opening {}", p.display()))?;
            for r in records {
                w.append(r)
                    .with_context(|| format!("appending to {}", p.display()))?;
            }
        }
        None => {
            let text = hcspace_core::archive::to_archive_text(records);
            std::io::stdout()
                .write_all(text.as_bytes())
                .context("writing archive to stdout")?;
        }
    }
    Ok(())
}

/// Writes arbitrary text to `path`, or stdout when absent.
pub fn write_text(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .context("writing to stdout")?;
            Ok(())
        }
    }
}
