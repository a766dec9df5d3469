use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: String,
    pub expected: String,
    /// `None` for exact checks.
    pub tolerance: Option<f64>,
    pub reference: String,
}

impl Check {
    pub fn exact(name: &str, ok: bool, measured: impl fmt::Display, expected: impl fmt::Display, reference: &str) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured: measured.to_string(),
            expected: expected.to_string(),
            tolerance: None,
            reference: reference.into(),
        }
    }

    pub fn numeric(
        name: &str,
        ok: bool,
        measured: impl fmt::Display,
        expected: impl fmt::Display,
        tolerance: f64,
        reference: &str,
    ) -> Check {
        Check {
            tolerance: Some(tolerance),
            ..Check::exact(name, ok, measured, expected, reference)
        }
    }

    pub fn skip(name: &str, reason: impl fmt::Display, reference: &str) -> Check {
        Check {
            name: name.into(),
            status: Status::Skip,
            measured: reason.to_string(),
            expected: "-".into(),
            tolerance: None,
            reference: reference.into(),
        }
    }

    /// A failure carrying an error message as the measured value.
    pub fn error(name: &str, err: impl fmt::Display, reference: &str) -> Check {
        Check::exact(name, false, err, "-", reference)
    }
}

/// Spaces would break the `key=value` split, so they become underscores.
fn field(s: &str) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.replace(char::is_whitespace, "_")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tol = self.tolerance.map_or("exact".to_string(), |t| format!("{t:e}"));
        write!(
            f,
            "check={} status={} measured={} expected={} tol={} ref={}",
            field(&self.name),
            self.status,
            field(&self.measured),
            field(&self.expected),
            tol,
            field(&self.reference)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> usize {
        self.count(Status::Fail)
    }

    /// Number of failed checks, capped at 125.
    pub fn exit_code(&self) -> u8 {
        self.failures().min(125) as u8
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s.push_str(&format!(
            "summary pass={} fail={} skip={}\n",
            self.count(Status::Pass),
            self.failures(),
            self.count(Status::Skip)
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let c = Check::numeric("ratio", true, "-1.0 + 0i", -1, 1e-4, "fricke-sign");
        assert_eq!(
            c.to_string(),
            "check=ratio status=pass measured=-1.0_+_0i expected=-1 tol=1e-4 ref=fricke-sign"
        );
        let e = Check::exact("order", false, 719, 720, "enumeration");
        assert!(e.to_string().contains("tol=exact"));
    }

    #[test]
    fn exit_code_is_capped() {
        let mut r = Report::default();
        r.extend((0..200).map(|_| Check::exact("x", false, 0, 1, "-")));
        assert_eq!(r.exit_code(), 125);
        r.checks.truncate(3);
        assert_eq!(r.exit_code(), 3);
        r.checks.push(Check::skip("y", "n/a", "-"));
        assert_eq!(r.failures(), 3);
    }
}
