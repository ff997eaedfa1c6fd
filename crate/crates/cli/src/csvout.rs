//! CSV emission: a `# config_hash` comment, a mandatory header, then rows in
//! deterministic sweep order. Optionally a companion gnuplot script.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    fn render(&self, config_hash: u64, config_line: &str) -> String {
        let mut s = String::new();
        s.push_str(&format!("# config_hash=0x{config_hash:016x}\n"));
        s.push_str(&format!("# config: {config_line}\n"));
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }

    /// Write to `out` (or stdout when `None`). Returns the CSV path if any.
    pub fn write(
        &self,
        out: Option<&Path>,
        config_hash: u64,
        config_line: &str,
    ) -> Result<Option<PathBuf>> {
        let text = self.render(config_hash, config_line);
        match out {
            Some(path) => {
                let mut f = std::fs::File::create(path)
                    .with_context(|| format!("cannot create {}", path.display()))?;
                f.write_all(text.as_bytes())?;
                Ok(Some(path.to_path_buf()))
            }
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(None)
            }
        }
    }

    /// A gnuplot script plotting every numeric column against the first.
    pub fn write_gnuplot(&self, csv_path: &Path) -> Result<PathBuf> {
        let gp_path = csv_path.with_extension("gp");
        let mut s = String::new();
        s.push_str("set datafile separator ','\n");
        s.push_str("set key outside\n");
        s.push_str(&format!("set xlabel '{}'\n", self.columns[0]));
        s.push_str("set ylabel 'bps/Hz'\n");
        let mut plots = Vec::new();
        for (i, name) in self.columns.iter().enumerate().skip(1) {
            // plot only numeric columns
            if self.rows.iter().all(|r| r[i].parse::<f64>().is_ok()) {
                plots.push(format!(
                    "'{}' using 1:{} with linespoints title '{name}'",
                    csv_path.file_name().unwrap().to_string_lossy(),
                    i + 1
                ));
            }
        }
        s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
        std::fs::write(&gp_path, s).with_context(|| format!("cannot write {}", gp_path.display()))?;
        Ok(gp_path)
    }
}

pub fn fmt(v: f64) -> String {
    format!("{v:.6}")
}
