//! Run configuration: one TOML file with a `[[scenario]]` table per scenario.

use crate::error::CliError;
use flow_solvers::StepperConfig;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    IdentitySuite,
    SurfaceFlow,
    FuyauFlow,
    IwasawaFlow,
    LieFlow,
    HodgeAeppli,
    EomReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Flow,
    Hodge,
}

impl ScenarioKind {
    pub fn command(self) -> Command {
        use ScenarioKind::*;
        match self {
            IdentitySuite | EomReport => Command::Verify,
            SurfaceFlow | FuyauFlow | IwasawaFlow | LieFlow => Command::Flow,
            HodgeAeppli => Command::Hodge,
        }
    }

    pub fn name(self) -> &'static str {
        use ScenarioKind::*;
        match self {
            IdentitySuite => "identity_suite",
            SurfaceFlow => "surface_flow",
            FuyauFlow => "fuyau_flow",
            IwasawaFlow => "iwasawa_flow",
            LieFlow => "lie_flow",
            HodgeAeppli => "hodge_aeppli",
            EomReport => "eom_report",
        }
    }
}

/// Conformally balanced test metric for the conditional identities.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    #[default]
    Iwasawa,
    /// `diag(e^u, e^{−u}, 1)`: still flagged balanced, but it is not.
    SabotagedIwasawa,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algebra {
    #[default]
    Sl2c,
    Abelian,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HodgeReference {
    /// `(ĝ, ĥ)` drawn from each seed in `reference_seeds`.
    #[default]
    Random,
    /// `(ĝ, ĥ) = (g, h)`.
    Same,
    /// `ĝ` flat, `ĥ = h`.
    Flat,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleChoice {
    /// Random rank-3 metric depending on `(z¹, z²)`.
    #[default]
    Planar,
    /// The rank-3 bundle with `g^{μν̄}F_{μν̄} = 0` on the Iwasawa family.
    Hym,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Largest Fourier frequency of random fields.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitude: Option<f64>,
    /// Number of modes in a random Iwasawa `u`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    /// Points per axis of the spectral grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    /// Number of random metrics per identity suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<usize>,
    /// Random evaluation points per metric.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<Fixture>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_prime: Option<f64>,
    /// Fu–Yau initial data `u₀ = log M`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    /// Amplitude of the surface curvature `κ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_amplitude: Option<f64>,
    /// Factor applied to the initial `e^{f₀}` of the surface flow.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Algebra>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<HodgeReference>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_seeds: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleChoice>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unconditional: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditional: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputParams {
    /// Time series file name inside the scenario directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
    /// Checkpoint every this many steps (0 disables).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint_every: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Output subdirectory; letters, digits, `-` and `_`.
    pub name: String,
    pub kind: ScenarioKind,
    #[serde(default, skip_serializing_if = "is_default")]
    pub geometry: GeometryParams,
    #[serde(default, skip_serializing_if = "is_default")]
    pub physics: PhysicsParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stepper: Option<StepperConfig>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub tolerance: ToleranceParams,
    #[serde(default, skip_serializing_if = "is_default")]
    pub hodge: HodgeParams,
    #[serde(default, skip_serializing_if = "is_default")]
    pub output: OutputParams,
}

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Seed for scenarios that do not set their own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(rename = "scenario")]
    pub scenarios: Vec<ScenarioConfig>,
}

pub const DEFAULT_SEED: u64 = 1;

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let c: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Replaces every scenario seed.
    pub fn override_seed(&mut self, seed: u64) {
        self.seed = Some(seed);
        for s in &mut self.scenarios {
            s.geometry.seed = Some(seed);
        }
    }

    pub fn seed_of(&self, s: &ScenarioConfig) -> u64 {
        s.geometry.seed.or(self.seed).unwrap_or(DEFAULT_SEED)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.scenarios.is_empty() {
            return Err(CliError::Config("no [[scenario]] tables".into()));
        }
        let mut names = BTreeSet::new();
        for s in &self.scenarios {
            s.validate()?;
            if !names.insert(s.name.as_str()) {
                return Err(CliError::Config(format!("duplicate scenario name `{}`", s.name)));
            }
        }
        Ok(())
    }
}

fn check<T: PartialOrd + std::fmt::Debug + Copy>(
    scenario: &str,
    key: &str,
    v: Option<T>,
    lo: T,
    hi: T,
) -> Result<(), CliError> {
    match v {
        Some(x) if !(lo <= x && x <= hi) => {
            Err(CliError::Config(format!("scenario `{scenario}`: {key} = {x:?} is outside [{lo:?}, {hi:?}]")))
        }
        _ => Ok(()),
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let n = self.name.as_str();
        if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(CliError::Config(format!("invalid scenario name `{n}`")));
        }
        let g = &self.geometry;
        let p = &self.physics;
        use ScenarioKind::*;
        check(n, "geometry.cutoff", g.cutoff, 1, 4)?;
        check(n, "geometry.modes", g.modes, 1, 16)?;
        check(n, "geometry.metrics", g.metrics, 1, 1000)?;
        check(n, "geometry.points", g.points, 1, 1000)?;
        check(n, "geometry.quadrature", g.quadrature, 2, 64)?;
        check(n, "physics.alpha_prime", p.alpha_prime, 0.0, 1.0)?;
        check(n, "physics.kappa_amplitude", p.kappa_amplitude, 0.0, 10.0)?;
        check(n, "physics.initial_scale", p.initial_scale, 1e-12, 1e6)?;
        check(n, "physics.rho0", p.rho0, 1e-6, 1e6)?;
        check(n, "physics.m", p.m, 1e-6, 1e6)?;
        for (key, t) in [
            ("tolerance.unconditional", self.tolerance.unconditional),
            ("tolerance.conditional", self.tolerance.conditional),
            ("tolerance.hodge", self.tolerance.hodge),
        ] {
            check(n, key, t, 0.0, 1.0)?;
        }
        match self.kind {
            IdentitySuite => check(n, "geometry.amplitude", g.amplitude, 0.0, 0.1)?,
            HodgeAeppli => {
                check(n, "geometry.amplitude", g.amplitude, 0.0, 0.1)?;
                check(n, "geometry.grid", g.grid, 2, 24)?;
            }
            SurfaceFlow => check(n, "geometry.grid", g.grid, 4, 256)?,
            FuyauFlow | IwasawaFlow => {
                check(n, "geometry.grid", g.grid, 4, 32)?;
                check(n, "geometry.amplitude", g.amplitude, 0.0, 2.0)?;
            }
            EomReport => check(n, "geometry.amplitude", g.amplitude, 0.0, 2.0)?,
            LieFlow => {}
        }
        if matches!(self.kind, FuyauFlow | HodgeAeppli) && p.alpha_prime == Some(0.0) {
            return Err(CliError::Config(format!("scenario `{n}`: {} needs physics.alpha_prime > 0", self.kind.name())));
        }
        if self.hodge.reference_seeds.as_ref().is_some_and(|v| v.is_empty()) {
            return Err(CliError::Config(format!("scenario `{n}`: hodge.reference_seeds is empty")));
        }
        if let Some(st) = &self.stepper {
            if self.kind.command() != Command::Flow {
                return Err(CliError::Config(format!("scenario `{n}`: [stepper] only applies to flows")));
            }
            st.validate().map_err(|e| CliError::Config(format!("scenario `{n}`: {e}")))?;
        }
        for f in [&self.output.csv, &self.output.checkpoint].into_iter().flatten() {
            if f.is_empty() || f.contains('/') || f.contains('\\') || f == "." || f == ".." {
                return Err(CliError::Config(format!("scenario `{n}`: output file `{f}` must be a plain file name")));
            }
        }
        Ok(())
    }
}
