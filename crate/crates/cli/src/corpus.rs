//! CSV formats: solution corpora (`k,x,y,z`) in, report rows out.

use std::io::Read;

use cubes_core::residue::{class_of, Residue};
use cubes_core::search::{verify, Representation, SearchError, SearchResult};
use num_bigint::BigInt;

use crate::CliError;

pub const SEARCH_HEADER: [&str; 6] = ["k", "x", "y", "z", "class", "path"];
pub const REPORT_HEADER: [&str; 9] = [
    "k",
    "x",
    "y",
    "z",
    "valid",
    "class",
    "path",
    "signed_path",
    "diagnostic",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRow {
    /// 1-based line in the source file.
    pub line: u64,
    pub k: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFailure {
    pub line: u64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub k: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub class: Residue,
    pub outcome: Result<Representation, String>,
}

impl ReportRow {
    pub fn check(row: &CorpusRow) -> Self {
        let outcome = verify(&row.x, &row.y, &row.z, &row.k).map_err(|e| match e {
            SearchError::Mismatch(m) => match m.infeasible_class {
                Some(c) => format!("sum={}; k is in infeasible class {c}", m.actual),
                None => format!("sum={}", m.actual),
            },
            other => other.to_string(),
        });
        ReportRow {
            k: row.k.clone(),
            x: row.x.clone(),
            y: row.y.clone(),
            z: row.z.clone(),
            class: class_of(&row.k),
            outcome,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.outcome.is_ok()
    }

    fn record(&self) -> [String; 9] {
        let (valid, path, signed, diag) = match &self.outcome {
            Ok(r) => (
                "true",
                r.path().to_string(),
                r.signed_path().to_string(),
                String::new(),
            ),
            Err(d) => ("false", String::new(), String::new(), d.clone()),
        };
        [
            self.k.to_string(),
            self.x.to_string(),
            self.y.to_string(),
            self.z.to_string(),
            valid.to_string(),
            self.class.to_string(),
            path,
            signed,
            diag,
        ]
    }
}

fn parse_int(field: &str, name: &str) -> Result<BigInt, String> {
    let t = field.trim();
    t.parse::<BigInt>()
        .map_err(|_| format!("column {name}: {t:?} is not an integer"))
}

/// Reads rows from CSV with a header naming at least `k`, `x`, `y` and `z`.
/// Other columns are ignored. Bad rows are collected, not fatal.
pub fn read_corpus<R: Read>(input: R) -> Result<(Vec<CorpusRow>, Vec<ParseFailure>), CliError> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("cannot read CSV header: {e}")))?
        .clone();
    let column = |name: &str| -> Result<usize, CliError> {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| CliError::Usage(format!("CSV header is missing column {name:?}")))
    };
    let cols = [column("k")?, column("x")?, column("y")?, column("z")?];

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                failures.push(ParseFailure {
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let parsed: Result<Vec<BigInt>, String> = cols
            .iter()
            .zip(["k", "x", "y", "z"])
            .map(|(&i, name)| match record.get(i) {
                Some(f) => parse_int(f, name),
                None => Err(format!("column {name} is missing")),
            })
            .collect();
        match parsed {
            Ok(v) => {
                let [k, x, y, z]: [BigInt; 4] = v.try_into().expect("four columns");
                rows.push(CorpusRow { line, k, x, y, z });
            }
            Err(message) => failures.push(ParseFailure { line, message }),
        }
    }
    Ok((rows, failures))
}

fn to_csv<I>(header: &[&str], records: I) -> String
where
    I: IntoIterator,
    I::Item: IntoIterator,
    <I::Item as IntoIterator>::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in records {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII CSV")
}

/// `k,x,y,z,class,path`, one row per representation; skipped targets have no rows.
pub fn search_csv(results: &[SearchResult]) -> String {
    to_csv(
        &SEARCH_HEADER,
        results.iter().flat_map(|r| {
            r.representations.iter().map(|p| {
                [
                    p.k().to_string(),
                    p.x().to_string(),
                    p.y().to_string(),
                    p.z().to_string(),
                    p.class().to_string(),
                    p.path().to_string(),
                ]
            })
        }),
    )
}

pub fn report_csv(rows: &[ReportRow]) -> String {
    to_csv(&REPORT_HEADER, rows.iter().map(ReportRow::record))
}
