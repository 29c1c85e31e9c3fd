use crate::error::CliError;

/// Columns shared by the fig5-fig8 sweeps.
pub const SWEEP_COLUMNS: [&str; 10] = ["x", "W00", "xi_bar", "theta_bar", "theta0", "Vx", "Vp", "C", "g", "s"];

/// One sweep point. Wigner quantities are after losses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub w00: f64,
    pub xi_bar: f64,
    pub theta_bar: f64,
    pub theta0: f64,
    pub vx: f64,
    pub vp: f64,
    pub c: f64,
    pub g: f64,
    pub s: f64,
}

impl SweepRow {
    pub fn to_vec(&self) -> Vec<f64> {
        vec![self.x, self.w00, self.xi_bar, self.theta_bar, self.theta0, self.vx, self.vp, self.c, self.g, self.s]
    }

    pub fn from_slice(v: &[f64]) -> Option<Self> {
        let &[x, w00, xi_bar, theta_bar, theta0, vx, vp, c, g, s] = v else { return None };
        Some(Self { x, w00, xi_bar, theta_bar, theta0, vx, vp, c, g, s })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub command: String,
    /// Meaning of the `x` column.
    pub x_label: String,
    pub version: String,
    pub timestamp: String,
    /// Effective configuration as TOML.
    pub config: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub meta: Metadata,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepResult {
    pub fn from_sweep(meta: Metadata, rows: &[SweepRow]) -> Self {
        Self {
            meta,
            columns: SWEEP_COLUMNS.iter().map(|c| c.to_string()).collect(),
            rows: rows.iter().map(SweepRow::to_vec).collect(),
        }
    }

    /// Typed rows, when the table has the sweep layout.
    pub fn sweep_rows(&self) -> Option<Vec<SweepRow>> {
        if self.columns != SWEEP_COLUMNS {
            return None;
        }
        self.rows.iter().map(|r| SweepRow::from_slice(r)).collect()
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command: {}\n", self.meta.command));
        out.push_str(&format!("# x: {}\n", self.meta.x_label));
        out.push_str(&format!("# version: {}\n", self.meta.version));
        out.push_str(&format!("# timestamp: {}\n", self.meta.timestamp));
        out.push_str("# config:\n");
        for line in self.meta.config.lines() {
            out.push_str(&format!("# | {line}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:.11e}"))).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut header = Vec::new();
        let mut config = Vec::new();
        let mut body = String::new();
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# | ") {
                config.push(rest);
            } else if line == "# |" {
                config.push("");
            } else if let Some(rest) = line.strip_prefix("# ") {
                header.push(rest);
            } else {
                body.push_str(line);
                body.push('\n');
            }
        }
        let field = |key: &str| -> Result<String, CliError> {
            header
                .iter()
                .find_map(|h| h.strip_prefix(key).and_then(|v| v.strip_prefix(": ")))
                .map(str::to_string)
                .ok_or_else(|| CliError::Parse(format!("missing `{key}` header")))
        };
        let mut config_text = config.join("\n");
        if !config.is_empty() {
            config_text.push('\n');
        }
        let meta = Metadata {
            command: field("command")?,
            x_label: field("x")?,
            version: field("version")?,
            timestamp: field("timestamp")?,
            config: config_text,
        };
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        let columns: Vec<String> =
            reader.headers().map_err(|e| CliError::Parse(e.to_string()))?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| CliError::Parse(e.to_string()))?;
            let row = record
                .iter()
                .map(|v| v.trim().parse::<f64>().map_err(|e| CliError::Parse(format!("{v:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Ok(Self { meta, columns, rows })
    }

    /// CSV without the metadata header; stable across runs with equal inputs.
    pub fn csv_body(&self) -> String {
        self.to_csv().lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SweepResult {
        let meta = Metadata {
            command: "fig5".into(),
            x_label: "s".into(),
            version: "0.1.0".into(),
            timestamp: "2026-01-01T00:00:00Z".into(),
            config: "[geometry]\nw_um = 120.0\n\n[losses]\neta_hom = 0.93\n".into(),
        };
        let rows: Vec<SweepRow> = (0..4)
            .map(|i| {
                let x = 0.1 + i as f64 / 7.0;
                SweepRow { x, w00: -x / 3.0, xi_bar: 0.9, theta_bar: 0.5, theta0: 0.45, vx: 1.8, vp: 0.6, c: -0.3, g: 0.5, s: x }
            })
            .collect();
        SweepResult::from_sweep(meta, &rows)
    }

    #[test]
    fn csv_round_trip() {
        let r = sample();
        let text = r.to_csv();
        let back = SweepResult::from_csv(&text).unwrap();
        assert_eq!(back.meta, r.meta);
        assert_eq!(back.columns, r.columns);
        for (a, b) in back.rows.iter().flatten().zip(r.rows.iter().flatten()) {
            assert!((a - b).abs() <= 5e-12 * b.abs());
        }
        // once rounded to the emitted precision, the round trip is exact
        assert_eq!(SweepResult::from_csv(&back.to_csv()).unwrap(), back);
        assert_eq!(back.to_csv(), text);
        assert_eq!(back.sweep_rows().unwrap().len(), 4);
    }

    #[test]
    fn twelve_significant_digits() {
        let body = sample().csv_body();
        let first = body.lines().nth(1).unwrap();
        assert!(first.starts_with("1.00000000000e-1,"), "{first}");
    }
}
