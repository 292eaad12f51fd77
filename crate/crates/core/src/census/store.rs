//! Output formats for sweep records and the resumable JSON-lines store.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::SweepRecord;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "jsonl" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(Error::Domain(format!("unknown format '{s}' (json, csv, table)"))),
        }
    }
}

pub const CSV_COLUMNS: &[&str] = &[
    "map_hash",
    "p",
    "good_reduction",
    "n_points",
    "n_periodic",
    "proportion",
    "proportion_decimal",
    "image_sizes",
    "max_tail",
    "max_cycle",
    "residues",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn joined(r: &SweepRecord) -> (String, String) {
    let images = r.image_sizes.iter().map(u64::to_string).collect::<Vec<_>>().join(";");
    let residues = r.residues.iter().map(|(m, v)| format!("{m}:{v}")).collect::<Vec<_>>().join(";");
    (images, residues)
}

pub fn json_line(r: &SweepRecord) -> String {
    serde_json::to_string(r).expect("records always serialize")
}

/// One CSV row; list-valued fields are `;`-separated.
pub fn csv_row(r: &SweepRecord) -> String {
    let (images, residues) = joined(r);
    [
        r.map_hash.clone(),
        r.p.to_string(),
        r.good_reduction.to_string(),
        r.n_points.to_string(),
        opt(&r.n_periodic),
        opt(&r.proportion),
        r.proportion_decimal.map(|x| format!("{x:.6}")).unwrap_or_default(),
        images,
        opt(&r.max_tail),
        opt(&r.max_cycle),
        residues,
    ]
    .join(",")
}

const TABLE_WIDTHS: [usize; 8] = [10, 5, 10, 14, 10, 20, 9, 10];

pub fn table_header() -> String {
    let cols = ["p", "good", "n_periodic", "proportion", "decimal", "image_sizes", "max_tail", "max_cycle"];
    cols.iter().zip(TABLE_WIDTHS).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join(" ")
}

pub fn table_row(r: &SweepRecord) -> String {
    let (images, _) = joined(r);
    let cells = [
        r.p.to_string(),
        if r.good_reduction { "yes" } else { "no" }.to_string(),
        opt(&r.n_periodic),
        opt(&r.proportion),
        r.proportion_decimal.map(|x| format!("{x:.6}")).unwrap_or_default(),
        images,
        opt(&r.max_tail),
        opt(&r.max_cycle),
    ];
    cells.iter().zip(TABLE_WIDTHS).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join(" ")
}

/// Streams records in one format, writing the header first where needed.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    header_pending: bool,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        RecordWriter { out, format, header_pending: format != Format::Json }
    }

    /// For appending to a file that already has its header.
    pub fn without_header(mut self) -> Self {
        self.header_pending = false;
        self
    }

    pub fn write(&mut self, r: &SweepRecord) -> Result<()> {
        if self.header_pending {
            let header = match self.format {
                Format::Csv => CSV_COLUMNS.join(","),
                Format::Table => table_header(),
                Format::Json => unreachable!(),
            };
            writeln!(self.out, "{header}")?;
            self.header_pending = false;
        }
        let line = match self.format {
            Format::Json => json_line(r),
            Format::Csv => csv_row(r),
            Format::Table => table_row(r),
        };
        writeln!(self.out, "{line}")?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Existing state of a JSON-lines store.
#[derive(Clone, Debug, Default)]
pub struct ResumeState {
    pub records: Vec<SweepRecord>,
    /// Primes already present for the requested map.
    pub done: HashSet<u64>,
    /// Bytes dropped from an interrupted final line.
    pub truncated: u64,
}

/// Opens `path` for appending after dropping any partial trailing line, and
/// returns the records already stored for `hash`.
pub fn open_for_resume(path: &Path, hash: &str) -> Result<(File, ResumeState)> {
    let mut file = OpenOptions::new().read(true).write(true).create(true).truncate(false).open(path)?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes)?;
    let keep = match bytes.iter().rposition(|&b| b == b'\n') {
        Some(i) => i + 1,
        None => 0,
    };
    let truncated = (bytes.len() - keep) as u64;
    if truncated > 0 {
        file.set_len(keep as u64)?;
    }
    file.seek(SeekFrom::End(0))?;
    let mut state = ResumeState { truncated, ..Default::default() };
    for (i, line) in BufReader::new(&bytes[..keep]).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: SweepRecord = serde_json::from_str(&line)
            .map_err(|e| Error::Io(format!("{}:{}: {e}", path.display(), i + 1)))?;
        if rec.map_hash == hash {
            state.done.insert(rec.p);
        }
        state.records.push(rec);
    }
    Ok((file, state))
}

/// Reads every record of a JSON-lines store.
pub fn read_jsonl(path: &Path) -> Result<Vec<SweepRecord>> {
    let file = File::open(path)?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Io(format!("{}:{}: {e}", path.display(), i + 1)))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn rec(p: u64) -> SweepRecord {
        SweepRecord {
            map_hash: "abc".into(),
            p,
            good_reduction: true,
            n_points: p + 1,
            n_periodic: Some(3),
            proportion: Some(format!("3/{}", p + 1)),
            proportion_decimal: Some(0.5),
            image_sizes: vec![4, 3],
            max_tail: Some(1),
            max_cycle: Some(2),
            residues: BTreeMap::from([(4, p % 4)]),
        }
    }

    #[test]
    fn json_roundtrip_and_field_names() {
        let line = json_line(&rec(5));
        assert!(line.starts_with(r#"{"map_hash":"abc","p":5,"good_reduction":true"#));
        assert!(line.contains(r#""proportion":"3/6""#));
        assert!(line.contains(r#""residues":{"4":1}"#));
        assert_eq!(serde_json::from_str::<SweepRecord>(&line).unwrap(), rec(5));
    }

    #[test]
    fn csv_matches_columns() {
        let row = csv_row(&rec(5));
        assert_eq!(row.split(',').count(), CSV_COLUMNS.len());
        assert_eq!(row, "abc,5,true,6,3,3/6,0.500000,4;3,1,2,4:1");
        let mut w = RecordWriter::new(Vec::new(), Format::Csv);
        w.write(&rec(5)).unwrap();
        let s = String::from_utf8(w.into_inner()).unwrap();
        assert!(s.starts_with("map_hash,p,"));
    }

    #[test]
    fn resume_truncates_partial_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        let full = format!("{}\n{}\n", json_line(&rec(3)), json_line(&rec(5)));
        std::fs::write(&path, format!("{full}{{\"map_hash\":\"ab")).unwrap();
        let (file, state) = open_for_resume(&path, "abc").unwrap();
        drop(file);
        assert_eq!(state.done, HashSet::from([3, 5]));
        assert_eq!(state.truncated, 15);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), full);
        let (_, other) = open_for_resume(&path, "zzz").unwrap();
        assert!(other.done.is_empty());
        assert_eq!(other.records.len(), 2);
    }
}
