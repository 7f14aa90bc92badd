//! CSV output with a `#`-prefixed metadata header. Everything is buffered
//! and only written once the command has succeeded.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_rational::BigRational;

#[derive(Default)]
pub struct Report {
    out: Vec<u8>,
}

impl Report {
    pub fn comment(&mut self, line: impl fmt::Display) -> io::Result<()> {
        writeln!(self.out, "# {line}")
    }

    pub fn table<I>(&mut self, header: &[&str], rows: I) -> io::Result<()>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let mut w = csv::Writer::from_writer(&mut self.out);
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush()
    }

    pub fn finish(self, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(p) => fs::write(p, &self.out),
            None => {
                let mut stdout = io::stdout().lock();
                stdout.write_all(&self.out)?;
                stdout.flush()
            }
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
