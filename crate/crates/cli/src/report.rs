use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unknown => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageReport {
    pub name: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl StageReport {
    pub fn new(name: impl Into<String>, outcome: impl Into<String>, witness: Option<Value>) -> Self {
        StageReport {
            name: name.into(),
            outcome: outcome.into(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub stages: Vec<StageReport>,
    pub determinism_seed: u64,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Pass,
            stages: Vec::new(),
            determinism_seed: seed,
        }
    }

    pub fn stage(&mut self, name: impl Into<String>, outcome: impl Into<String>, witness: Option<Value>) {
        self.stages.push(StageReport::new(name, outcome, witness));
    }

    /// Records a failure; a failure outranks an unknown.
    pub fn fail(&mut self) {
        self.status = Status::Fail;
    }

    pub fn unknown(&mut self) {
        if self.status == Status::Pass {
            self.status = Status::Unknown;
        }
    }

    pub fn error(&mut self, stage: &str, e: &CliError) {
        self.stage(stage, "error", Some(e.witness()));
        self.fail();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {} (seed {})\n", self.command, self.status.as_str(), self.determinism_seed);
        for st in &self.stages {
            s.push_str(&format!("  {}: {}", st.name, st.outcome));
            if let Some(w) = &st.witness {
                s.push_str(&format!("  {w}"));
            }
            s.push('\n');
        }
        s
    }
}
