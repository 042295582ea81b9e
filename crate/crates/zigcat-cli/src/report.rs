use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// informational output of a non-check command
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witness: String,
}

impl Report {
    pub fn new(check: &str, instance: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            instance: instance.into(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            witness: witness.into(),
        }
    }

    pub fn info(check: &str, instance: impl Into<String>, witness: impl Into<String>) -> Self {
        Report { check: check.into(), instance: instance.into(), verdict: Verdict::Info, witness: witness.into() }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

/// Text mode prints info witnesses as they are and check results one per line.
pub fn render(reports: &[Report], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Structured => {
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("report serialises"));
                out.push('\n');
            }
        }
        Format::Text => {
            let mut checks = 0;
            let mut passed = 0;
            for r in reports {
                match r.verdict {
                    Verdict::Info if r.witness.contains('\n') => {
                        out.push_str(&r.witness);
                        if !r.witness.ends_with('\n') {
                            out.push('\n');
                        }
                    }
                    Verdict::Info => out.push_str(&format!("{} {}: {}\n", r.check, r.instance, r.witness)),
                    v => {
                        checks += 1;
                        let tag = if v == Verdict::Pass {
                            passed += 1;
                            "PASS"
                        } else {
                            "FAIL"
                        };
                        if r.witness.is_empty() {
                            out.push_str(&format!("{} {} {}\n", tag, r.check, r.instance));
                        } else {
                            out.push_str(&format!("{} {} {}: {}\n", tag, r.check, r.instance, r.witness));
                        }
                    }
                }
            }
            if checks > 0 {
                out.push_str(&format!("{}/{} passed\n", passed, checks));
            }
        }
    }
    out
}

pub fn parse_structured(text: &str) -> serde_json::Result<Vec<Report>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}
