//! Command reports: a human rendering and a machine form.
//!
//! The machine form is nested key-value text with a fixed field order and no
//! timings, so equal inputs give byte-identical output:
//!
//! ```text
//! report {
//!   command: "day-tensor F G"
//!   status: pass
//!   check "day-tensor F G" {
//!     status: pass
//!     value "0": "14"
//!   }
//! }
//! ```

use std::fmt::Write;
use std::time::Duration;

use crate::error::CliError;
use crate::lexer::{quote, Cursor, Tok};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub values: Vec<(String, String)>,
    pub witnesses: Vec<String>,
    pub certificates: Vec<String>,
    /// Only shown in the human form.
    pub elapsed: Option<Duration>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            values: Vec::new(),
            witnesses: Vec::new(),
            certificates: Vec::new(),
            elapsed: None,
        }
    }

    pub fn value(mut self, key: impl Into<String>, v: impl ToString) -> Self {
        self.values.push((key.into(), v.to_string()));
        self
    }

    pub fn certificate(mut self, c: impl Into<String>) -> Self {
        self.certificates.push(c.into());
        self
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        self.witnesses.push(witness.into());
    }

    pub fn skip(mut self, why: impl Into<String>) -> Self {
        self.status = Status::Skip;
        self.witnesses.push(why.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        out.push_str("report {\n");
        let _ = writeln!(out, "  command: {}", quote(&self.command));
        let _ = writeln!(out, "  status: {}", self.status().as_str());
        for c in &self.checks {
            let _ = writeln!(out, "  check {} {{", quote(&c.name));
            let _ = writeln!(out, "    status: {}", c.status.as_str());
            for (k, v) in &c.values {
                let _ = writeln!(out, "    value {}: {}", quote(k), quote(v));
            }
            for w in &c.witnesses {
                let _ = writeln!(out, "    witness: {}", quote(w));
            }
            for cert in &c.certificates {
                let _ = writeln!(out, "    certificate: {}", quote(cert));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dayconv {}", self.command);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            match c.elapsed {
                Some(d) => {
                    let _ = writeln!(out, "  {tag}  {}  ({:.1} ms)", c.name, d.as_secs_f64() * 1000.0);
                }
                None => {
                    let _ = writeln!(out, "  {tag}  {}", c.name);
                }
            }
            for (k, v) in &c.values {
                let _ = writeln!(out, "        {k} ↦ {v}");
            }
            for w in &c.witnesses {
                let _ = writeln!(out, "        witness: {w}");
            }
            for cert in &c.certificates {
                let _ = writeln!(out, "        certificate: {cert}");
            }
        }
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        let _ = writeln!(
            out,
            "summary: {} passed, {} failed, {} skipped",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skip)
        );
        out
    }

    pub fn parse_machine(text: &str) -> Result<Report, CliError> {
        let mut cur = Cursor::new(text)?;
        cur.skip_newlines();
        cur.keyword("report")?;
        cur.expect("{")?;
        cur.skip_newlines();
        cur.keyword("command")?;
        cur.expect(":")?;
        let command = cur.string()?;
        cur.skip_newlines();
        cur.keyword("status")?;
        cur.expect(":")?;
        let status_pos = cur.pos();
        let status = status(&mut cur)?;
        let mut report = Report::new(command);
        loop {
            cur.skip_newlines();
            if cur.eat("}") {
                break;
            }
            cur.keyword("check")?;
            let mut check = Check::new(cur.string()?);
            cur.expect("{")?;
            cur.skip_newlines();
            cur.keyword("status")?;
            cur.expect(":")?;
            check.status = status_of(&mut cur)?;
            loop {
                cur.skip_newlines();
                if cur.eat("}") {
                    break;
                }
                let (key, pos) = cur.ident()?;
                match key.as_str() {
                    "value" => {
                        let k = cur.string()?;
                        cur.expect(":")?;
                        check.values.push((k, cur.string()?));
                    }
                    "witness" => {
                        cur.expect(":")?;
                        check.witnesses.push(cur.string()?);
                    }
                    "certificate" => {
                        cur.expect(":")?;
                        check.certificates.push(cur.string()?);
                    }
                    _ => return Err(CliError::syntax(pos, format!("unknown report field `{key}`"))),
                }
            }
            report.checks.push(check);
        }
        if !cur.at_end() {
            return Err(CliError::syntax(cur.pos(), "trailing input after report"));
        }
        if report.status() != status {
            return Err(CliError::validation(status_pos, "overall status disagrees with the checks"));
        }
        Ok(report)
    }
}

fn status(cur: &mut Cursor) -> Result<Status, CliError> {
    match status_of(cur)? {
        Status::Skip => Err(CliError::syntax(cur.pos(), "overall status is pass or fail")),
        s => Ok(s),
    }
}

fn status_of(cur: &mut Cursor) -> Result<Status, CliError> {
    let pos = cur.pos();
    match cur.next() {
        Some((Tok::Ident(s), _)) if s == "pass" => Ok(Status::Pass),
        Some((Tok::Ident(s), _)) if s == "fail" => Ok(Status::Fail),
        Some((Tok::Ident(s), _)) if s == "skip" => Ok(Status::Skip),
        _ => Err(CliError::syntax(pos, "expected pass, fail or skip")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("verify-theorems --max-n 2");
        r.checks.push(Check::new("day-tensor F G").value("0", 14).value("1", 11).certificate("iso y0 ⊛ y1 ≅ y1"));
        let mut bad = Check::new("coherence \"odd\" name");
        bad.fail("pentagon at (0, 1, 1)\nsecond line");
        r.checks.push(bad);
        r.checks.push(Check::new("skipped").skip("not requested"));
        r
    }

    #[test]
    fn machine_form_round_trips() {
        let r = sample();
        let text = r.to_machine();
        let back = Report::parse_machine(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_machine(), text);
        assert!(!back.passed());
    }

    #[test]
    fn timing_stays_out_of_the_machine_form() {
        let mut r = sample();
        let before = r.to_machine();
        r.checks[0].elapsed = Some(Duration::from_millis(7));
        assert_eq!(r.to_machine(), before);
        assert!(r.to_human().contains("(7.0 ms)"));
    }

    #[test]
    fn inconsistent_status_is_rejected() {
        let text = sample().to_machine().replacen("  status: fail", "  status: pass", 1);
        let err = Report::parse_machine(&text).unwrap_err();
        assert_eq!(err.code(), "E-VALIDATION");
        assert!(Report::parse_machine("report {").is_err());
    }
}
