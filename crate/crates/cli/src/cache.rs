//! On-disk cache of ladder checkpoint tables and Gram windows.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use zeta_ladder::correlation::u1;
use zeta_ladder::experiments::{spec_hash, Context};
use zeta_ladder::gram::{GramKind, GramNode};
use zeta_ladder::ladder::{LadderTable, CACHE_VERSION};

const GRAM_VERSION: &str = "zeta-ladder-gram v1";
const GRAM_HEADER: &str = "kind,index,offset,height";

/// Bumped whenever the weight ω or the table layout changes.
const OMEGA_VERSION: &str = "omega-v1";

/// What the cache did for one artifact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Disabled,
    Hit,
    Stored,
    Unused,
}

#[derive(Debug, Clone, Serialize)]
pub struct CacheReport {
    pub ladder: CacheStatus,
    pub window: CacheStatus,
    pub ladder_file: Option<PathBuf>,
    pub window_file: Option<PathBuf>,
}

fn ladder_key(ctx: &Context) -> String {
    let key = (
        ctx.t().to_bits(),
        ctx.table_extent().to_bits(),
        OMEGA_VERSION,
        CACHE_VERSION,
        ctx.config().ladder,
    );
    spec_hash(&key)
}

fn window_key(t: f64) -> String {
    let key = (
        GramKind::Theta.name(),
        t.to_bits(),
        (t + u1(t)).to_bits(),
        0.0f64.to_bits(),
        GRAM_VERSION,
    );
    spec_hash(&key)
}

fn write_nodes<W: Write>(nodes: &[GramNode], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{GRAM_VERSION}")?;
    writeln!(w, "{GRAM_HEADER}")?;
    for n in nodes {
        writeln!(w, "{},{},{:.16e},{:.16e}", n.kind.name(), n.index, n.offset, n.height)?;
    }
    w.flush()
}

fn read_nodes<R: BufRead>(r: R) -> Option<Vec<GramNode>> {
    let mut lines = r.lines();
    if lines.next()?.ok()?.trim() != GRAM_VERSION || lines.next()?.ok()?.trim() != GRAM_HEADER {
        return None;
    }
    let mut nodes = Vec::new();
    for line in lines {
        let line = line.ok()?;
        let mut f = line.split(',');
        let kind = match f.next()? {
            "theta_seq" => GramKind::Theta,
            "theta1_seq" => GramKind::Theta1,
            _ => return None,
        };
        nodes.push(GramNode {
            kind,
            index: f.next()?.parse().ok()?,
            offset: f.next()?.parse().ok()?,
            height: f.next()?.parse().ok()?,
        });
    }
    Some(nodes)
}

fn store(path: &Path, write: impl FnOnce(BufWriter<File>) -> std::io::Result<()>) -> std::io::Result<()> {
    // write then rename so a crash never leaves a truncated file behind
    let tmp = path.with_extension("tmp");
    write(BufWriter::new(File::create(&tmp)?))?;
    fs::rename(tmp, path)
}

/// Preloads `ctx` from `dir`, computing and storing whatever is missing.
/// Cache trouble is reported on stderr and never fails the run.
pub fn prepare(ctx: &Context, dir: Option<&Path>, need_ladder: bool, need_window: bool) -> zeta_ladder::Result<CacheReport> {
    let Some(dir) = dir else {
        return Ok(CacheReport {
            ladder: CacheStatus::Disabled,
            window: CacheStatus::Disabled,
            ladder_file: None,
            window_file: None,
        });
    };
    if let Err(e) = fs::create_dir_all(dir) {
        eprintln!("warning: cache directory {}: {e}", dir.display());
    }
    let mut report = CacheReport {
        ladder: CacheStatus::Unused,
        window: CacheStatus::Unused,
        ladder_file: None,
        window_file: None,
    };

    if need_window {
        let path = dir.join(format!("gram_theta_seq_{}.csv", window_key(ctx.t())));
        let cached = File::open(&path).ok().and_then(|f| read_nodes(BufReader::new(f)));
        report.window = match cached {
            Some(nodes) => {
                ctx.preload_window(nodes);
                CacheStatus::Hit
            }
            None => {
                let nodes = ctx.window()?;
                if let Err(e) = store(&path, |w| write_nodes(nodes, w)) {
                    eprintln!("warning: cannot store {}: {e}", path.display());
                }
                CacheStatus::Stored
            }
        };
        report.window_file = Some(path);
    }

    if need_ladder {
        let path = dir.join(format!("ladder_{}.csv", ladder_key(ctx)));
        let cached = File::open(&path)
            .ok()
            .and_then(|f| LadderTable::read_csv(BufReader::new(f)).ok());
        report.ladder = match cached.map(|tab| ctx.preload_table(tab)) {
            Some(Ok(())) => CacheStatus::Hit,
            _ => {
                let tab = ctx.table()?;
                if let Err(e) = store(&path, |mut w| {
                    tab.write_csv(&mut w)?;
                    w.flush()
                }) {
                    eprintln!("warning: cannot store {}: {e}", path.display());
                }
                CacheStatus::Stored
            }
        };
        report.ladder_file = Some(path);
    }
    Ok(report)
}
