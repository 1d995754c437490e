//! JSON report documents.
//!
//! Every check serializes to one document with schema id "ifn-report/1"
//! and fields {schema, check_id, params, seed, verdict, profiles[],
//! witnesses[], notes[]}. Floats are written in scientific notation with
//! 17 significant digits, so documents are byte-identical across re-runs
//! with the same seed and round-trip exactly back to f64.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::limits::{CheckReport, ProfileEntry, ReportWitness, Verdict};
use crate::params::CheckParams;
use crate::theorems::SuiteReport;

pub const REPORT_SCHEMA: &str = "ifn-report/1";

/// Compact JSON with f64 pinned to 17 significant digits.
struct SigFigFormatter;

impl Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if !value.is_finite() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "reports must not contain non-finite numbers",
            ));
        }
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, value as f64)
    }
}

/// Serialize any value with the report float convention.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Serialize(e.to_string()))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Serialize(e.to_string()))
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    schema: &'static str,
    check_id: &'a str,
    params: &'a CheckParams,
    seed: u64,
    verdict: Verdict,
    profiles: &'a [ProfileEntry],
    witnesses: &'a [ReportWitness],
    notes: Vec<&'a str>,
}

/// Render a check report as its JSON document. Input summaries fold into
/// the notes array; in-memory timing is intentionally absent.
pub fn check_report_to_json(report: &CheckReport) -> Result<String> {
    let notes: Vec<&str> = report
        .inputs
        .iter()
        .chain(report.notes.iter())
        .map(String::as_str)
        .collect();
    to_json_string(&CheckDoc {
        schema: REPORT_SCHEMA,
        check_id: &report.check_id,
        params: &report.params,
        seed: report.seed,
        verdict: report.verdict,
        profiles: &report.profiles,
        witnesses: &report.witnesses,
        notes,
    })
}

#[derive(Serialize)]
struct SuiteDoc<'a> {
    schema: &'static str,
    check_id: &'a str,
    params: &'a CheckParams,
    seed: u64,
    verdict: Verdict,
    profiles: &'a [crate::theorems::CaseResult],
    witnesses: Vec<&'a crate::theorems::CaseResult>,
    notes: &'a [String],
}

/// Render a theorem-suite report; cases take the place of profiles and
/// failing cases repeat under witnesses.
pub fn suite_report_to_json(report: &SuiteReport) -> Result<String> {
    let witnesses: Vec<_> = report.cases.iter().filter(|c| !c.ok).collect();
    to_json_string(&SuiteDoc {
        schema: REPORT_SCHEMA,
        check_id: &report.suite_id,
        params: &report.params,
        seed: report.seed,
        verdict: report.verdict,
        profiles: &report.cases,
        witnesses,
        notes: &report.notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::limit_check;
    use crate::space::IFNSpace;
    use crate::vector::Vector;

    #[test]
    fn floats_carry_seventeen_significant_digits() {
        let json = to_json_string(&vec![0.1f64, 1.0, 2.0f64.powi(-29)]).unwrap();
        assert!(json.contains("1.0000000000000001e-1"), "{json}");
        assert!(json.contains("1.0000000000000000e0"), "{json}");
        assert!(json.contains("1.8626451492309570e-9"), "{json}");
    }

    #[test]
    fn formatted_floats_round_trip() {
        for v in [0.1f64, 1.0 / 3.0, 6.0 / 7.0, 1e-300, 123456.789] {
            let s = format!("{v:.16e}");
            let back: f64 = s.parse().unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "{s}");
        }
    }

    #[test]
    fn check_documents_have_the_schema_and_reproduce() {
        let params = crate::CheckParams::default().with_sample_count(50);
        let run = || {
            let profile =
                limit_check("r", Vector::scalar, &IFNSpace::scalar_standard(), &params).unwrap();
            let mut report = CheckReport::new("demo", &params);
            report.push_profile(profile);
            check_report_to_json(&report).unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\":\"ifn-report/1\""));
        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(value["verdict"], "pass");
    }
}
