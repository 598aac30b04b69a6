use crate::dsl;
use crate::fuzzy::FuzzyInferenceSystem;
use crate::sim::{RobotState, VelocityCommand};

use super::{heading_error, ControlError, GoalSpec};

/// Goal-tracking controller: distance and heading error in, `(v, omega)` out.
#[derive(Debug, Clone, PartialEq)]
pub struct Tflc {
    fis: FuzzyInferenceSystem,
    distance: usize,
    v: usize,
    omega: usize,
}

impl Tflc {
    /// Requires exactly the inputs `distance` and `heading` and at least the
    /// outputs `v` and `omega`.
    pub fn from_system(fis: FuzzyInferenceSystem) -> Result<Self, ControlError> {
        let (distance, _) = two_inputs(&fis, "distance", "heading")?;
        let (v, omega) = motion_outputs(&fis)?;
        Ok(Self {
            fis,
            distance,
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

    /// Command from raw inputs; both are clamped to their universes.
    pub fn infer(&self, distance: f64, heading_error: f64) -> VelocityCommand {
        let inputs = if self.distance == 0 {
            [distance, heading_error]
        } else {
            [heading_error, distance]
        };
        let out = self
            .fis
            .infer(&inputs)
            .expect("a validated rule base always fires");
        VelocityCommand::new(out[self.v], out[self.omega])
    }

    pub fn command(&self, state: &RobotState, goal: &GoalSpec) -> VelocityCommand {
        self.infer(goal.distance_from(state), heading_error(state, goal))
    }
}

fn two_inputs(
    fis: &FuzzyInferenceSystem,
    a: &str,
    b: &str,
) -> Result<(usize, usize), ControlError> {
    let names: Vec<&str> = fis.inputs().iter().map(|v| v.name.as_str()).collect();
    match (fis.input_index(a), fis.input_index(b)) {
        (Some(ia), Some(ib)) if names.len() == 2 => Ok((ia, ib)),
        _ => Err(ControlError::Interface(format!(
            "expected inputs `{a}` and `{b}`, found {names:?}"
        ))),
    }
}

pub(super) fn motion_outputs(fis: &FuzzyInferenceSystem) -> Result<(usize, usize), ControlError> {
    match (fis.output_index("v"), fis.output_index("omega")) {
        (Some(v), Some(omega)) => Ok((v, omega)),
        _ => Err(ControlError::Interface(
            "expected outputs `v` and `omega`".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::TFLC_SOURCE;
    use std::f64::consts::PI;

    fn tflc() -> Tflc {
        Tflc::from_source(TFLC_SOURCE).unwrap()
    }

    #[test]
    fn shipped_table_examples() {
        let c = tflc();
        assert_eq!(c.infer(5.0, 0.0), VelocityCommand::new(0.6, 0.0));
        assert_eq!(c.infer(5.0, PI / 2.0), VelocityCommand::new(0.1, 1.5));
        assert_eq!(c.infer(5.0, -PI / 2.0), VelocityCommand::new(0.1, -1.5));
        for h in [-PI / 2.0, -0.3, 0.0, 1.0, PI] {
            let cmd = c.infer(0.0, h);
            assert_eq!(cmd.v(), 0.0);
            assert_eq!(cmd.omega(), 0.0);
        }
    }

    #[test]
    fn brute_force_far_aligned() {
        // distance 5 clamps to 3: only Far has weight; heading 0: only Aligned.
        let fis = tflc().fis;
        let f = fis.fuzzify(&[5.0, 0.0]).unwrap();
        let fired: Vec<_> = fis
            .rules()
            .iter()
            .filter(|r| fis.firing_strength(r, &f).unwrap() > 0.0)
            .collect();
        assert_eq!(fired.len(), 1);
        assert_eq!(fired[0].consequent_for("v"), Some(0.6));
        assert_eq!(fired[0].consequent_for("omega"), Some(0.0));
    }

    #[test]
    fn rejects_wrong_interface() {
        let oaflc = dsl::parse(crate::control::OAFLC_SOURCE).unwrap();
        assert!(matches!(
            Tflc::from_system(oaflc),
            Err(ControlError::Interface(_))
        ));
    }

    #[test]
    fn input_order_is_respected() {
        let swapped = "\
input heading -3.141592653589793 3.141592653589793 rad
term heading Any trap -3.141592653589793 -3.141592653589793 3.141592653589793 3.141592653589793
input distance 0 3 m
term distance Close trap 0 0 1 2
term distance Away trap 1 2 3 3
output omega -1 1 rad/s
output v -0.7 0.7 m/s
rule if heading is Any and distance is Close then v=0, omega=0
rule if heading is Any and distance is Away then v=0.5, omega=0
";
        let c = Tflc::from_source(swapped).unwrap();
        assert_eq!(c.infer(3.0, 0.0), VelocityCommand::new(0.5, 0.0));
    }
}
