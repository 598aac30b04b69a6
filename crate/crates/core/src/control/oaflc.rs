use crate::dsl;
use crate::fuzzy::FuzzyInferenceSystem;
use crate::sim::VelocityCommand;

use super::tflc::motion_outputs;
use super::{ControlError, SectorDistances};

/// Obstacle-avoidance controller over the three sector minima.
#[derive(Debug, Clone, PartialEq)]
pub struct Oaflc {
    fis: FuzzyInferenceSystem,
    /// Input position of left, center, right.
    order: [usize; 3],
    v: usize,
    omega: usize,
}

impl Oaflc {
    /// Requires exactly the inputs `left`, `center`, `right` and at least the
    /// outputs `v` and `omega`.
    pub fn from_system(fis: FuzzyInferenceSystem) -> Result<Self, ControlError> {
        let names = ["left", "center", "right"];
        let mut order = [0; 3];
        for (slot, name) in order.iter_mut().zip(names) {
            *slot = fis
                .input_index(name)
                .ok_or_else(|| ControlError::Interface(format!("missing input `{name}`")))?;
        }
        if fis.inputs().len() != 3 {
            return Err(ControlError::Interface(format!(
                "expected exactly the inputs {names:?}"
            )));
        }
        let (v, omega) = motion_outputs(&fis)?;
        Ok(Self {
            fis,
            order,
            v,
            omega,
        })
    }

    pub fn from_source(source: &str) -> Result<Self, ControlError> {
        Self::from_system(dsl::parse(source)?)
    }

    pub fn system(&self) -> &FuzzyInferenceSystem {
        &self.fis
    }

    pub fn command(&self, sectors: &SectorDistances) -> VelocityCommand {
        let mut inputs = [0.0; 3];
        for (value, slot) in [sectors.left, sectors.center, sectors.right]
            .into_iter()
            .zip(self.order)
        {
            inputs[slot] = value;
        }
        let out = self
            .fis
            .infer(&inputs)
            .expect("a validated rule base always fires");
        VelocityCommand::new(out[self.v], out[self.omega])
    }
}
