use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const RESUME_VERSION: u32 = 1;
const HEADER: &str = "armstrong-resume";

/// Search frontier: the restart in progress and the candidate index taken
/// at every depth of the current branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResumeState {
    /// `gdd` or `base-partition`.
    pub kind: String,
    /// Search parameters, compared on resume.
    pub params: String,
    pub seed: u64,
    pub restart: u64,
    /// Nodes already spent inside `restart`.
    pub restart_nodes: u64,
    /// Nodes spent overall.
    pub nodes: u64,
    pub path: Vec<usize>,
}

impl ResumeState {
    pub fn to_text(&self) -> String {
        format!(
            "{HEADER} v={RESUME_VERSION}\n{}\n",
            serde_json::to_string(self).expect("resume state serializes")
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        let version = header
            .strip_prefix(HEADER)
            .and_then(|r| r.trim().strip_prefix("v="))
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("expected '{HEADER} v=<version>'"),
            })?;
        if version != RESUME_VERSION.to_string() {
            return Err(Error::Parse {
                line: 1,
                msg: format!("resume format version {version}, this build reads {RESUME_VERSION}"),
            });
        }
        let body: String = lines.collect::<Vec<_>>().join("\n");
        serde_json::from_str(&body).map_err(|e| Error::Parse {
            line: e.line() + 1,
            msg: e.to_string(),
        })
    }

    pub(crate) fn check(&self, kind: &str, params: &str) -> Result<()> {
        if self.kind != kind || self.params != params {
            return Err(Error::Precondition(format!(
                "resume file is for {} [{}], not {kind} [{params}]",
                self.kind, self.params
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_version() {
        let s = ResumeState {
            kind: "gdd".into(),
            params: "k=4 type=2^7".into(),
            seed: 3,
            restart: 2,
            restart_nodes: 7,
            nodes: 99,
            path: vec![0, 4, 1],
        };
        assert_eq!(ResumeState::parse(&s.to_text()).unwrap(), s);
        let bumped = s.to_text().replacen("v=1", "v=2", 1);
        assert!(matches!(
            ResumeState::parse(&bumped),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(ResumeState::parse("").is_err());
        assert!(s.check("gdd", "k=4 type=2^10").is_err());
        assert!(s.check("gdd", "k=4 type=2^7").is_ok());
    }
}
