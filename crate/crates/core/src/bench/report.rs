use std::fs;
use std::path::Path;

use serde::Serialize;

use super::{BenchConfig, BenchRecord};
use crate::error::{Error, Result};
use crate::linalg::io::fmt_f64;

pub const CSV_HEADER: [&str; 10] = [
    "problem",
    "shape",
    "solver",
    "n",
    "rho",
    "iterations",
    "converged",
    "seconds",
    "seed",
    "min_v",
];

fn fmt_real(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else {
        fmt_f64(x)
    }
}

/// CSV text for `records`: header plus one LF-terminated row each.
pub fn records_to_csv(records: &[BenchRecord]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record([
            r.problem.clone(),
            r.shape.clone(),
            r.solver.clone(),
            r.n.to_string(),
            fmt_real(r.rho),
            r.iterations.to_string(),
            r.converged.to_string(),
            fmt_real(r.seconds),
            r.seed.to_string(),
            fmt_real(r.min_v),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn emit_csv(records: &[BenchRecord], path: &Path) -> Result<()> {
    fs::write(path, records_to_csv(records)).map_err(|e| Error::io(path, e))
}

/// Parses text produced by [`records_to_csv`].
pub fn parse_csv(text: &str) -> std::result::Result<Vec<BenchRecord>, String> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected header: {header:?}"));
    }
    let mut out = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| e.to_string())?;
        let field = |i: usize| row.get(i).ok_or_else(|| format!("row {}: missing field {i}", line + 1));
        let real = |i: usize| -> std::result::Result<f64, String> {
            let s = field(i)?;
            s.parse::<f64>().map_err(|e| format!("row {}: {e}: {s:?}", line + 1))
        };
        let int = |i: usize| -> std::result::Result<u64, String> {
            let s = field(i)?;
            s.parse::<u64>().map_err(|e| format!("row {}: {e}: {s:?}", line + 1))
        };
        out.push(BenchRecord {
            problem: field(0)?.to_string(),
            shape: field(1)?.to_string(),
            solver: field(2)?.to_string(),
            n: int(3)? as usize,
            rho: real(4)?,
            iterations: int(5)? as usize,
            converged: field(6)?.parse().map_err(|e| format!("row {}: {e}", line + 1))?,
            seconds: real(7)?,
            seed: int(8)?,
            min_v: real(9)?,
        });
    }
    Ok(out)
}

#[derive(Serialize)]
struct ResultsJson<'a> {
    config: &'a BenchConfig,
    records: &'a [BenchRecord],
}

/// `{"config": ..., "records": [...]}`.
pub fn emit_json(config: &BenchConfig, records: &[BenchRecord], path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&ResultsJson { config, records })
        .expect("results serialize")
        + "\n";
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// JSON has no infinity; the failed-solve sentinel is written as `"inf"`.
pub(super) mod inf_as_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if *x == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*x)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Repr::Str(s) => Err(de::Error::custom(format!("expected number or \"inf\", got {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(rho: f64) -> BenchRecord {
        BenchRecord {
            problem: "test1".into(),
            shape: "square".into(),
            solver: "trnnc".into(),
            n: 30,
            rho,
            iterations: 12,
            converged: true,
            seconds: 0.0,
            seed: 42,
            min_v: 0.0,
        }
    }

    #[test]
    fn header_and_one_row() {
        let text = records_to_csv(&[record(0.25)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "problem,shape,solver,n,rho,iterations,converged,seconds,seed,min_v");
        assert!(text.ends_with('\n') && !text.contains('\r'));
        assert_eq!(
            lines[1],
            "test1,square,trnnc,30,2.5000000000000000e-1,12,true,0.0000000000000000e0,42,0.0000000000000000e0"
        );
    }

    #[test]
    fn infinity_sentinel() {
        let text = records_to_csv(&[record(f64::INFINITY)]);
        assert!(text.lines().nth(1).unwrap().contains(",inf,"));
        assert_eq!(parse_csv(&text).unwrap()[0].rho, f64::INFINITY);
        let json = serde_json::to_string(&record(f64::INFINITY)).unwrap();
        assert!(json.contains("\"rho\":\"inf\""));
        let back: BenchRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.rho, f64::INFINITY);
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(parse_csv("a,b\n1,2\n").is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip(
            rho in prop_oneof![Just(f64::INFINITY), 0.0f64..1e12],
            iterations in 0usize..100_000,
            converged: bool,
            seconds in 0.0f64..100.0,
            seed: u64,
            min_v in -1e3f64..=0.0,
        ) {
            let r = BenchRecord { rho, iterations, converged, seconds, seed, min_v, ..record(0.0) };
            let back = parse_csv(&records_to_csv(std::slice::from_ref(&r))).unwrap();
            prop_assert_eq!(back, vec![r]);
        }
    }
}
