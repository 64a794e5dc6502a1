//! Text serialization of a checkpoint table.
//!
//! Line 1 is a version tag, line 2 the scalar header, then one row per
//! checkpoint: φ₁(t_k), then for every checkpoint but the last the panel
//! peak, density and antiderivative coefficients. Numbers carry 17
//! significant digits so a reload is bit-exact.

use std::io::{BufRead, Write};

use super::{LadderTable, Panel, PANEL_NODES};
use crate::error::{Error, Result};
use crate::zeta::ZEvalConfig;

pub const CACHE_VERSION: &str = "zeta-ladder-checkpoints v1";

const HEADER: &str = "anchor_hat,anchor_image,extent,step,correction_order,min_height,oracle_terms";

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(format!("ladder cache: {}", msg.into()))
}

fn join(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(|v| format!("{v:.16e}")).collect::<Vec<_>>().join(",")
}

fn parse_row(line: &str) -> Result<Vec<f64>> {
    line.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad(format!("unparsable field {s:?}"))))
        .collect()
}

impl LadderTable {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{CACHE_VERSION}")?;
        writeln!(w, "{HEADER}")?;
        writeln!(
            w,
            "{},{},{},{}",
            join([self.anchor_hat, self.anchor_image, self.extent, self.step]),
            self.z.correction_order,
            join([self.z.min_height]),
            self.z.oracle_terms
        )?;
        for (k, &phi) in self.phi.iter().enumerate() {
            match self.panels.get(k) {
                Some(p) => writeln!(
                    w,
                    "{},{},{},{}",
                    join([phi]),
                    join([p.peak]),
                    join(p.density),
                    join(p.antiderivative)
                )?,
                None => writeln!(w, "{}", join([phi]))?,
            }
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().map(|l| l.map_err(|e| bad(e.to_string())));
        let mut next = || lines.next().transpose();
        if next()?.as_deref().map(str::trim) != Some(CACHE_VERSION) {
            return Err(bad("unknown version"));
        }
        if next()?.as_deref().map(str::trim) != Some(HEADER) {
            return Err(bad("missing header"));
        }
        let head = parse_row(&next()?.ok_or_else(|| bad("missing scalars"))?)?;
        if head.len() != 7 {
            return Err(bad("scalar row needs 7 fields"));
        }
        let z = ZEvalConfig {
            correction_order: head[4] as usize,
            min_height: head[5],
            oracle_terms: head[6] as usize,
        };
        let width = 2 + PANEL_NODES + PANEL_NODES + 1;
        let mut phi = Vec::new();
        let mut panels = Vec::new();
        let mut closed = false;
        while let Some(line) = next()? {
            if line.trim().is_empty() {
                continue;
            }
            if closed {
                return Err(bad("rows after the final checkpoint"));
            }
            let row = parse_row(&line)?;
            phi.push(row[0]);
            if row.len() == 1 {
                closed = true;
            } else if row.len() == width {
                panels.push(Panel {
                    peak: row[1],
                    density: row[2..2 + PANEL_NODES].try_into().expect("width checked"),
                    antiderivative: row[2 + PANEL_NODES..].try_into().expect("width checked"),
                });
            } else {
                return Err(bad(format!("row of {} fields", row.len())));
            }
        }
        if !closed || panels.is_empty() {
            return Err(bad("truncated table"));
        }
        if phi.windows(2).any(|w| !(w[1] >= w[0])) {
            return Err(bad("checkpoints not monotone"));
        }
        Ok(LadderTable {
            anchor_hat: head[0],
            anchor_image: head[1],
            extent: head[2],
            step: head[3],
            z,
            phi,
            panels,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::{build_table, LadderSpec};

    #[test]
    fn reload_is_bit_exact() {
        let tab = build_table(1e5, 20.0, &LadderSpec::default()).unwrap();
        let mut buf = Vec::new();
        tab.write_csv(&mut buf).unwrap();
        let back = LadderTable::read_csv(&buf[..]).unwrap();
        assert_eq!(back, tab);
        assert!(!String::from_utf8(buf).unwrap().contains('\r'));
    }

    #[test]
    fn truncated_file_rejected() {
        let tab = build_table(1e5, 5.0, &LadderSpec::default()).unwrap();
        let mut buf = Vec::new();
        tab.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(LadderTable::read_csv(cut.as_bytes()).is_err());
        assert!(LadderTable::read_csv("nonsense\n".as_bytes()).is_err());
    }
}
