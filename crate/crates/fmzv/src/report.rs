//! Machine-readable run reports: versioned JSON and RFC-quoted CSV.
//!
//! Reports are deterministic for a fixed configuration; the only
//! nondeterministic data, per-case wall time, sits in its own `wall_ms`
//! field so consumers can strip it before comparing runs.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::appendix::AppendixRow;
use crate::error::Result;
use crate::index::binom_int;
use crate::theorems::{CaseOutcome, Side, Status};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub cases: Vec<CaseOutcome>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, cases: Vec<CaseOutcome>) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Inconclusive => summary.inconclusive += 1,
            }
        }
        Report {
            schema: SCHEMA,
            command: command.into(),
            cases,
            summary,
        }
    }

    /// 0 on pass, 1 on any failure, 3 when the run produced nothing but
    /// inconclusive cases (window too small, precision too low).
    pub fn exit_code(&self) -> u8 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.pass == 0 && self.summary.inconclusive > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record([
            "case",
            "theorem_id",
            "side",
            "n",
            "status",
            "primes_compared",
            "mismatched",
            "skipped",
            "max_abs_error",
            "wall_ms",
        ])?;
        for c in &self.cases {
            wtr.write_record([
                c.case.clone(),
                c.theorem_id.clone(),
                side_str(c.side).to_string(),
                c.n.to_string(),
                status_str(c.status).to_string(),
                join_u64(&c.primes_compared),
                join_u64(&c.mismatched),
                c.skipped
                    .iter()
                    .map(|(p, why)| format!("{p}={why}"))
                    .collect::<Vec<_>>()
                    .join("; "),
                c.max_abs_error
                    .map(|e| format!("{e:e}"))
                    .unwrap_or_default(),
                c.wall_ms.to_string(),
            ])?;
        }
        finish_csv(wtr)
    }

    /// One console line per case, for progress output.
    pub fn console_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&console_line(c));
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} inconclusive\n",
            self.summary.pass, self.summary.fail, self.summary.inconclusive
        ));
        out
    }
}

pub fn console_line(c: &CaseOutcome) -> String {
    let tag = match c.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
    };
    let detail = match c.side {
        Side::A => format!("{} primes", c.primes_compared.len()),
        Side::S => match c.max_abs_error {
            Some(e) => format!("err {e:.1e}"),
            None => "no error bound".to_string(),
        },
        Side::Exact => "exact".to_string(),
    };
    format!("{tag:<12} {} [{detail}]", c.case)
}

fn side_str(s: Side) -> &'static str {
    match s {
        Side::A => "A",
        Side::S => "S",
        Side::Exact => "Exact",
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
    }
}

fn join_u64(v: &[u64]) -> String {
    v.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn finish_csv(wtr: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = wtr
        .into_inner()
        .map_err(|e| crate::error::Error::capability(format!("csv flush: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `num/den`, with the denominator elided when it is 1.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `value mod p^n`.
pub fn fmt_residue(v: u64, p: u64, n: u32) -> String {
    format!("{v} mod {p}^{n}")
}

/// CSV of the binomial-decomposition grid.
pub fn appendix_csv(rows: &[AppendixRow]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record([
        "a",
        "b",
        "I",
        "II",
        "III",
        "IV",
        "V",
        "VI",
        "C_bruteforce",
        "C_closed",
        "C_expected",
        "status",
    ])?;
    for r in rows {
        let mut rec: Vec<String> = vec![r.a.to_string(), r.b.to_string()];
        rec.extend(r.parts.iter().map(|p| p.to_string()));
        rec.push(r.c_bruteforce.to_string());
        rec.push(r.c_closed.to_string());
        rec.push(r.c_expected.to_string());
        rec.push(if r.ok { "ok" } else { "mismatch" }.to_string());
        wtr.write_record(rec)?;
    }
    finish_csv(wtr)
}

/// One row per `(k, r)` of the depth-`r`, weight-`k` sum formula: how many
/// indices are summed and the closed-form coefficients in front of
/// `z(k+1) x`.
#[derive(Debug, Clone)]
pub struct SumGridRow {
    pub k: u32,
    pub r: u32,
    pub indices: num_bigint::BigInt,
    pub coeff: num_bigint::BigInt,
    pub coeff_star: num_bigint::BigInt,
    pub zfrak_arg: u32,
}

pub fn sumf2_grid(kmax: u32) -> Vec<SumGridRow> {
    let mut rows = Vec::new();
    for k in 2..=kmax.max(1) {
        for r in 1..k {
            let c = binom_int(k as i64, r as i64);
            let sign = if (r - 1) % 2 == 0 { 1 } else { -1 };
            rows.push(SumGridRow {
                k,
                r,
                indices: binom_int(k as i64 - 1, r as i64 - 1),
                coeff: c.clone() * sign,
                coeff_star: c,
                zfrak_arg: k + 1,
            });
        }
    }
    rows
}

pub fn sumf2_csv(rows: &[SumGridRow]) -> Result<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["k", "r", "indices", "coeff", "coeff_star", "zfrak_arg"])?;
    for r in rows {
        wtr.write_record([
            r.k.to_string(),
            r.r.to_string(),
            r.indices.to_string(),
            r.coeff.to_string(),
            r.coeff_star.to_string(),
            r.zfrak_arg.to_string(),
        ])?;
    }
    finish_csv(wtr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    fn outcome(status: Status) -> CaseOutcome {
        CaseOutcome {
            case: "dep1 k=3 n=2".into(),
            theorem_id: "dep1".into(),
            params: BTreeMap::from([("k".to_string(), 3i64)]),
            side: Side::A,
            n: 2,
            primes_compared: vec![11, 13],
            skipped: vec![(7, "below congruence threshold".into())],
            mismatched: vec![],
            status,
            max_abs_error: None,
            wall_ms: 5,
        }
    }

    #[test]
    fn exit_codes_follow_contract() {
        assert_eq!(Report::new("x", vec![outcome(Status::Pass)]).exit_code(), 0);
        assert_eq!(Report::new("x", vec![outcome(Status::Fail)]).exit_code(), 1);
        assert_eq!(
            Report::new("x", vec![outcome(Status::Inconclusive)]).exit_code(),
            3
        );
        assert_eq!(
            Report::new(
                "x",
                vec![outcome(Status::Pass), outcome(Status::Inconclusive)]
            )
            .exit_code(),
            0
        );
        assert_eq!(Report::new("x", vec![]).exit_code(), 0);
    }

    #[test]
    fn json_has_schema_and_fields() {
        let r = Report::new("verify --id dep1", vec![outcome(Status::Pass)]);
        let json = r.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["cases"][0]["theorem_id"], "dep1");
        assert_eq!(v["cases"][0]["side"], "A");
        assert_eq!(v["cases"][0]["status"], "pass");
        assert_eq!(v["cases"][0]["skipped"][0][0], 7);
        assert!(v["cases"][0].get("max_abs_error").is_none());
        assert!(v["cases"][0]["wall_ms"].is_number());
    }

    #[test]
    fn csv_quotes_embedded_commas() {
        let mut c = outcome(Status::Pass);
        c.case = "symsum k=(1,2) n=2".into();
        let r = Report::new("verify", vec![c]);
        let csv = r.to_csv().unwrap();
        assert!(csv.starts_with("case,theorem_id,side,n,status"));
        assert!(csv.contains("\"symsum k=(1,2) n=2\""));
        assert!(csv.contains("7=below congruence threshold"));
    }

    #[test]
    fn rational_and_residue_formatting() {
        assert_eq!(
            fmt_rational(&BigRational::new(BigInt::from(-9), BigInt::from(2))),
            "-9/2"
        );
        assert_eq!(fmt_rational(&BigRational::from(BigInt::from(4))), "4");
        assert_eq!(fmt_residue(278, 7, 3), "278 mod 7^3");
    }

    #[test]
    fn sum_grid_shapes() {
        let rows = sumf2_grid(10);
        assert_eq!(rows.len(), 45);
        assert!(sumf2_grid(1).is_empty());
        let csv = sumf2_csv(&sumf2_grid(1)).unwrap();
        assert_eq!(csv.lines().count(), 1); // header only
                                            // k=4, r=2: 3 indices, coefficient -6 plain, +6 star.
        let row = rows.iter().find(|r| r.k == 4 && r.r == 2).unwrap();
        assert_eq!(row.indices, BigInt::from(3));
        assert_eq!(row.coeff, BigInt::from(-6));
        assert_eq!(row.coeff_star, BigInt::from(6));
    }
}
