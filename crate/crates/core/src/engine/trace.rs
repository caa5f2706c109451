use serde::Serialize;

use super::Potential;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EventTag {
    Overflow,
    ChainStep,
    ChainCommit,
    RepairX,
    RepairXt,
    RepairZ,
    /// The partition was restored to an earlier chain snapshot. `vertex` is
    /// the chain vertex whose step the snapshot precedes.
    Rollback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveEvent {
    pub tag: EventTag,
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
    pub potential: Potential,
    /// Set on events after which the partition is kept for good.
    pub commit: bool,
}

/// Audit log of a solve run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveTrace {
    pub initial: Option<Potential>,
    pub events: Vec<MoveEvent>,
}

impl MoveTrace {
    pub fn commits(&self) -> impl Iterator<Item = &MoveEvent> {
        self.events.iter().filter(|e| e.commit)
    }

    /// True when the initial potential followed by every commit potential is
    /// strictly decreasing.
    pub fn commits_strictly_decrease(&self) -> bool {
        let mut last = self.initial;
        for e in self.commits() {
            if last.is_some_and(|prev| e.potential >= prev) {
                return false;
            }
            last = Some(e.potential);
        }
        true
    }

    /// JSON Lines, one event per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("trace events serialize"));
            out.push('\n');
        }
        out
    }
}
