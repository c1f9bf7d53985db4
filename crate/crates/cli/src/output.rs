use std::io::Write;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: &'static str,
    command: &'a str,
    parameters: &'a Value,
    results: &'a Value,
}

/// A command's output in both renderings.
pub struct Report {
    pub command: &'static str,
    pub parameters: Value,
    pub results: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// False when a verification the command performs did not hold.
    pub verified: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let env = Envelope {
                    schema_version: "1",
                    command: self.command,
                    parameters: &self.parameters,
                    results: &self.results,
                };
                let mut s = serde_json::to_string_pretty(&env).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }

    pub fn print(&self, format: Format) {
        let out = self.render(format);
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(out.as_bytes());
        let _ = stdout.flush();
    }
}
