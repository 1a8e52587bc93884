//! JSON checkpoints holding everything a run needs to continue bit-exactly.

use crate::diagnostics::FlowDiagnostics;
use crate::error::FlowError;
use crate::state::{FlowKind, FlowState};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub kind: FlowKind,
    pub state: FlowState,
    pub series: Vec<FlowDiagnostics>,
    /// Consecutive steps below the convergence tolerance so far.
    pub quiet_steps: usize,
}

impl Checkpoint {
    pub fn new(state: &FlowState, series: &[FlowDiagnostics], quiet_steps: usize) -> Self {
        Checkpoint { version: CHECKPOINT_VERSION, kind: state.kind, state: state.clone(), series: series.to_vec(), quiet_steps }
    }

    /// Writes through a temporary file so a crash never leaves a torn checkpoint.
    pub fn write(&self, path: &Path) -> Result<(), FlowError> {
        let text = serde_json::to_string(self).map_err(|e| FlowError::State(format!("checkpoint encoding: {e}")))?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, FlowError> {
        let resume = |m: String| FlowError::Resume(format!("{}: {m}", path.display()));
        let text = std::fs::read_to_string(path).map_err(|e| resume(e.to_string()))?;
        let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| resume(e.to_string()))?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(resume(format!("version {} (expected {CHECKPOINT_VERSION})", cp.version)));
        }
        cp.state.validate().map_err(|e| resume(e.to_string()))?;
        Ok(cp)
    }

    /// The checkpoint must come from a run of the same flow on the same grid.
    pub fn check(&self, initial: &FlowState) -> Result<(), FlowError> {
        if self.kind != initial.kind || self.state.kind != initial.kind {
            return Err(FlowError::Resume(format!("checkpoint is a {:?} run, scenario is {:?}", self.kind, initial.kind)));
        }
        if self.state.grid != initial.grid {
            return Err(FlowError::Resume("checkpoint grid differs from the scenario grid".into()));
        }
        Ok(())
    }
}
