use std::fs;
use std::path::{Path, PathBuf};

use crate::control::{FusionPolicy, GoalSpec};
use crate::sim::{RobotState, World};

use super::{RunError, ScenarioConfig};

/// Contents of a `.scn` file before the world is loaded.
///
/// ```text
/// world <path>            # optional; relative to the scenario file
/// start <x> <y> <theta>
/// goal <x> <y>
/// dt <s>                  # default 0.05
/// max_time <s>            # default 120
/// fusion <d_low> <d_high> # default 0.5 1.5
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub world: Option<PathBuf>,
    pub start: (f64, f64, f64),
    pub goal: (f64, f64),
    pub dt: f64,
    pub max_time: f64,
    pub fusion: (f64, f64),
}

impl ScenarioFile {
    pub fn parse(source: &str) -> Result<Self, RunError> {
        let mut world = None;
        let mut start = None;
        let mut goal = None;
        let mut dt = ScenarioConfig::DEFAULT_DT;
        let mut max_time = ScenarioConfig::DEFAULT_MAX_TIME;
        let mut fusion = {
            let p = FusionPolicy::default();
            (p.d_low(), p.d_high())
        };
        for (index, raw) in source.lines().enumerate() {
            let line = index + 1;
            let err = |message: String| RunError::ScenarioSyntax { line, message };
            let text = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = text.split_whitespace().collect();
            let Some((&keyword, args)) = words.split_first() else {
                continue;
            };
            let numbers = |n: usize| -> Result<Vec<f64>, RunError> {
                if args.len() != n {
                    return Err(err(format!(
                        "`{keyword}` takes {n} values, found {}",
                        args.len()
                    )));
                }
                args.iter()
                    .map(|a| {
                        a.parse::<f64>()
                            .ok()
                            .filter(|v| v.is_finite())
                            .ok_or_else(|| err(format!("`{a}` is not a number")))
                    })
                    .collect()
            };
            match keyword {
                "world" => {
                    if args.len() != 1 {
                        return Err(err("`world` takes one path".into()));
                    }
                    world = Some(PathBuf::from(args[0]));
                }
                "start" => {
                    let v = numbers(3)?;
                    start = Some((v[0], v[1], v[2]));
                }
                "goal" => {
                    let v = numbers(2)?;
                    goal = Some((v[0], v[1]));
                }
                "dt" => dt = numbers(1)?[0],
                "max_time" => max_time = numbers(1)?[0],
                "fusion" => {
                    let v = numbers(2)?;
                    fusion = (v[0], v[1]);
                }
                other => return Err(err(format!("unknown keyword `{other}`"))),
            }
        }
        let missing = |what: &str| RunError::ScenarioSyntax {
            line: source.lines().count().max(1),
            message: format!("missing `{what}` line"),
        };
        Ok(Self {
            world,
            start: start.ok_or_else(|| missing("start"))?,
            goal: goal.ok_or_else(|| missing("goal"))?,
            dt,
            max_time,
            fusion,
        })
    }

    /// Builds a checked configuration around an already loaded world.
    pub fn into_config(self, world: World) -> Result<ScenarioConfig, RunError> {
        let (x, y, theta) = self.start;
        let config = ScenarioConfig {
            world,
            start: RobotState::new(x, y, theta),
            goal: GoalSpec::new(self.goal.0, self.goal.1),
            dt: self.dt,
            max_time: self.max_time,
            fusion: FusionPolicy::new(self.fusion.0, self.fusion.1)?,
        };
        config.validate()?;
        Ok(config)
    }
}

/// Reads a world file.
pub fn load_world(path: &Path) -> Result<World, RunError> {
    let text =
        fs::read_to_string(path).map_err(|e| RunError::Io(path.to_path_buf(), e.to_string()))?;
    text.parse()
        .map_err(|e| RunError::World(path.to_path_buf(), e))
}

/// Reads a scenario file and the world it names, resolving the world path
/// against the scenario's directory.
pub fn load_scenario(path: &Path) -> Result<(ScenarioFile, World), RunError> {
    let text =
        fs::read_to_string(path).map_err(|e| RunError::Io(path.to_path_buf(), e.to_string()))?;
    let file = ScenarioFile::parse(&text)?;
    let world = match &file.world {
        Some(rel) => {
            let base = path.parent().unwrap_or(Path::new("."));
            load_world(&base.join(rel))?
        }
        None => World::empty(),
    };
    Ok((file, world))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_defaults() {
        let f = ScenarioFile::parse("start 0 0 0\ngoal 2 0 # ahead\n").unwrap();
        assert_eq!(f.world, None);
        assert_eq!(f.dt, 0.05);
        assert_eq!(f.max_time, 120.0);
        assert_eq!(f.fusion, (0.5, 1.5));
        assert_eq!(f.goal, (2.0, 0.0));
    }

    #[test]
    fn reports_lines() {
        let cases = [
            ("start 0 0\ngoal 1 1\n", 1),
            ("start 0 0 0\ngoal 1 x\n", 2),
            ("start 0 0 0\ngoal 1 1\nspeed 3\n", 3),
            ("start 0 0 0\n", 1),
        ];
        for (src, line) in cases {
            match ScenarioFile::parse(src) {
                Err(RunError::ScenarioSyntax { line: l, .. }) => assert_eq!(l, line, "{src}"),
                other => panic!("{src:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn config_validation() {
        let f = ScenarioFile::parse("start 0 0 0\ngoal 1 0\ndt 0.6\n").unwrap();
        assert!(matches!(
            f.into_config(World::empty()),
            Err(RunError::InvalidConfig(_))
        ));
        let f = ScenarioFile::parse("start 0 0 0\ngoal 1 0\nfusion 1 0.5\n").unwrap();
        assert!(f.into_config(World::empty()).is_err());
        let f = ScenarioFile::parse("start 0 0 0\ngoal 9 0\n").unwrap();
        let walled: World = "bounds -1 -1 5 5\n".parse().unwrap();
        assert!(f.into_config(walled).is_err());
        let f = ScenarioFile::parse("start 1 0 0\ngoal 3 0\n").unwrap();
        let blocked: World = "circle 1.2 0 0.3\n".parse().unwrap();
        assert!(f.into_config(blocked).is_err());
    }
}
