//! Command reports with matching human and JSON renderings. The two
//! formats carry the same information; verdict order is deterministic.

use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct VerdictLine {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Count {
    pub name: String,
    pub value: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Vec<VerdictLine>,
    pub counts: Vec<Count>,
    pub elapsed_ms: u128,
    #[serde(skip)]
    started: Option<Instant>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            verdicts: Vec::new(),
            counts: Vec::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn verdict(&mut self, check: impl Into<String>, pass: bool, witness: Option<String>) {
        self.verdicts.push(VerdictLine {
            check: check.into(),
            pass,
            witness,
        });
    }

    pub fn count(&mut self, name: impl Into<String>, value: u64) {
        self.counts.push(Count {
            name: name.into(),
            value,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn finish(&mut self) {
        if let Some(s) = self.started.take() {
            self.elapsed_ms = s.elapsed().as_millis();
        }
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for v in &self.verdicts {
            let tag = if v.pass { "PASS" } else { "FAIL" };
            match &v.witness {
                Some(w) => out.push_str(&format!("{tag} {} ({w})\n", v.check)),
                None => out.push_str(&format!("{tag} {}\n", v.check)),
            }
        }
        for c in &self.counts {
            out.push_str(&format!("count {} = {}\n", c.name, c.value));
        }
        out.push_str(&format!("elapsed {} ms\n", self.elapsed_ms));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
