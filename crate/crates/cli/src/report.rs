use std::io::{self, IsTerminal, Write};

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Two-column `quantity,value` table.
    pub fn key_values(pairs: Vec<(&str, String)>) -> Self {
        let mut t = Table::new(&["quantity", "value"]);
        for (k, v) in pairs {
            t.push(vec![k.to_string(), v]);
        }
        t
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Everything a subcommand produces; rendering is decided afterwards.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub tables: Vec<Table>,
    /// Human-readable summary lines. Go to stdout after a table, to stderr
    /// otherwise so machine-readable output stays clean.
    pub notes: Vec<String>,
    /// False when a verification found a counterexample.
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, table: Table) -> Self {
        Report {
            json,
            tables: vec![table],
            notes: Vec::new(),
            ok: true,
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.json)?,
            Format::Csv => {
                for (i, table) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    write_csv(table, out)?;
                }
            }
            Format::Table => {
                let bold = styled();
                for (i, table) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    write_table(table, bold, out)?;
                }
                for line in &self.notes {
                    writeln!(out, "{line}")?;
                }
            }
        }
        if format != Format::Table {
            for line in &self.notes {
                eprintln!("{line}");
            }
        }
        Ok(())
    }
}

fn styled() -> bool {
    std::env::var_os("NO_COLOR").is_none() && io::stdout().is_terminal()
}

fn write_csv(table: &Table, out: &mut impl Write) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(&table.header)?;
    for row in &table.rows {
        writer.write_record(row)?;
    }
    writer.flush()
}

fn write_table(table: &Table, bold: bool, out: &mut impl Write) -> io::Result<()> {
    let mut widths: Vec<usize> = table.header.iter().map(|h| h.chars().count()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let header = line(&table.header);
    if bold {
        writeln!(out, "\x1b[1m{header}\x1b[0m")?;
    } else {
        writeln!(out, "{header}")?;
    }
    for row in &table.rows {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}
