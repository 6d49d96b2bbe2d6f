use std::io::Write;

/// One output row; column order is fixed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Row {
    pub key: String,
    /// `s` for universal keys, `m` for Eisenstein keys.
    pub s: String,
    /// `t` for universal keys, `A` for Eisenstein keys.
    pub t: String,
    pub group_order: Option<u128>,
    pub n: Option<usize>,
    pub verdict: String,
    pub aut_order: Option<u128>,
    pub seconds: Option<f64>,
}

pub const HEADER: [&str; 8] = ["key", "s", "t", "group_order", "N", "verdict", "aut_order", "seconds"];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), T::to_string)
}

impl Row {
    fn fields(&self) -> [String; 8] {
        [
            self.key.clone(),
            self.s.clone(),
            self.t.clone(),
            opt(&self.group_order),
            opt(&self.n),
            self.verdict.clone(),
            opt(&self.aut_order),
            self.seconds.map_or(String::new(), |s| format!("{s:.3}")),
        ]
    }
}

pub fn write_csv(out: impl Write, rows: &[Row]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()
}

pub fn write_markdown(mut out: impl Write, rows: &[Row]) -> std::io::Result<()> {
    writeln!(out, "| {} |", HEADER.join(" | "))?;
    writeln!(out, "|{}", "---|".repeat(HEADER.len()))?;
    for r in rows {
        writeln!(out, "| {} |", r.fields().join(" | "))?;
    }
    Ok(())
}
