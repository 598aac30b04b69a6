use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::{FuzzyError, LinguisticVariable};

/// Maximum deviation from 1 tolerated when checking partition-of-unity.
pub const PARTITION_TOLERANCE: f64 = 1e-9;

/// Conjunction operator applied to antecedent degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TNorm {
    #[default]
    Product,
    Minimum,
}

impl TNorm {
    pub fn combine(self, degrees: impl IntoIterator<Item = f64>) -> f64 {
        match self {
            TNorm::Product => degrees.into_iter().product(),
            TNorm::Minimum => degrees.into_iter().fold(1.0, f64::min),
        }
    }
}

/// A crisp output with the range its inferred value is clamped to.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputVariable {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub unit: String,
}

impl OutputVariable {
    pub fn new(name: impl Into<String>, min: f64, max: f64, unit: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            min,
            max,
            unit: unit.into(),
        }
    }
}

/// One `variable is label` conjunct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Condition {
    pub variable: String,
    pub label: String,
}

/// A zero-order TSK rule: conjunctive antecedent, constant consequents.
#[derive(Debug, Clone, PartialEq)]
pub struct TskRule {
    pub antecedent: Vec<Condition>,
    pub consequent: Vec<(String, f64)>,
}

impl TskRule {
    pub fn new() -> Self {
        Self {
            antecedent: Vec::new(),
            consequent: Vec::new(),
        }
    }

    pub fn when(mut self, variable: impl Into<String>, label: impl Into<String>) -> Self {
        self.antecedent.push(Condition {
            variable: variable.into(),
            label: label.into(),
        });
        self
    }

    pub fn then(mut self, output: impl Into<String>, value: f64) -> Self {
        self.consequent.push((output.into(), value));
        self
    }

    pub fn consequent_for(&self, output: &str) -> Option<f64> {
        self.consequent
            .iter()
            .find(|(name, _)| name == output)
            .map(|(_, z)| *z)
    }
}

impl Default for TskRule {
    fn default() -> Self {
        Self::new()
    }
}

/// Membership degrees of every input term for one set of crisp inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Fuzzified<'a> {
    entries: Vec<(&'a str, Vec<(&'a str, f64)>)>,
}

impl<'a> Fuzzified<'a> {
    pub fn new() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn insert(&mut self, variable: &'a str, degrees: Vec<(&'a str, f64)>) {
        self.entries.push((variable, degrees));
    }

    pub fn variable(&self, variable: &str) -> Option<&[(&'a str, f64)]> {
        self.entries
            .iter()
            .find(|(name, _)| *name == variable)
            .map(|(_, d)| d.as_slice())
    }

    pub fn degree(&self, variable: &str, label: &str) -> Option<f64> {
        self.variable(variable)?
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, d)| *d)
    }
}

impl Default for Fuzzified<'_> {
    fn default() -> Self {
        Self::new()
    }
}

/// Where in a system a [`Violation`] was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Location {
    System,
    Input(usize),
    Term { input: usize, term: usize },
    Output(usize),
    Rule(usize),
    Conjunct { rule: usize, conjunct: usize },
    Consequent { rule: usize, index: usize },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Location::System => write!(f, "system"),
            Location::Input(i) => write!(f, "input #{}", i + 1),
            Location::Term { input, term } => write!(f, "input #{} term #{}", input + 1, term + 1),
            Location::Output(i) => write!(f, "output #{}", i + 1),
            Location::Rule(r) => write!(f, "rule #{}", r + 1),
            Location::Conjunct { rule, conjunct } => {
                write!(f, "rule #{} condition #{}", rule + 1, conjunct + 1)
            }
            Location::Consequent { rule, index } => {
                write!(f, "rule #{} consequent #{}", rule + 1, index + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NoInputs,
    NoOutputs,
    EmptyUniverse,
    DuplicateVariable,
    DuplicateLabel,
    MalformedTerm,
    CoverageGap,
    NotPartition,
    EmptyAntecedent,
    UnknownVariable,
    UnknownLabel,
    RepeatedCondition,
    UnknownOutput,
    RepeatedAssignment,
    NonFiniteConsequent,
    MissingConsequent,
    DuplicateRule,
    IncompleteRuleBase,
}

/// A broken invariant, reported as data by [`FuzzyInferenceSystem::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Location,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// A zero-order Takagi-Sugeno-Kang inference system.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyInferenceSystem {
    inputs: Vec<LinguisticVariable>,
    outputs: Vec<OutputVariable>,
    rules: Vec<TskRule>,
    tnorm: TNorm,
}

impl FuzzyInferenceSystem {
    /// Builds a system and rejects it unless [`validate`](Self::validate)
    /// reports nothing.
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        outputs: Vec<OutputVariable>,
        rules: Vec<TskRule>,
    ) -> Result<Self, FuzzyError> {
        let fis = Self::from_parts(inputs, outputs, rules);
        let violations = fis.validate();
        if violations.is_empty() {
            Ok(fis)
        } else {
            Err(FuzzyError::Invalid(violations))
        }
    }

    /// Assembles a system without checking it. Inference on an unchecked
    /// system reports configuration errors lazily.
    pub fn from_parts(
        inputs: Vec<LinguisticVariable>,
        outputs: Vec<OutputVariable>,
        rules: Vec<TskRule>,
    ) -> Self {
        Self {
            inputs,
            outputs,
            rules,
            tnorm: TNorm::Product,
        }
    }

    pub fn with_tnorm(mut self, tnorm: TNorm) -> Self {
        self.tnorm = tnorm;
        self
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[OutputVariable] {
        &self.outputs
    }

    pub fn rules(&self) -> &[TskRule] {
        &self.rules
    }

    pub fn tnorm(&self) -> TNorm {
        self.tnorm
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|v| v.name == name)
    }

    pub fn output_index(&self, name: &str) -> Option<usize> {
        self.outputs.iter().position(|v| v.name == name)
    }

    /// Fuzzifies one crisp value per input, given in input order.
    pub fn fuzzify(&self, crisp: &[f64]) -> Result<Fuzzified<'_>, FuzzyError> {
        if crisp.len() != self.inputs.len() {
            return Err(FuzzyError::InputArity {
                expected: self.inputs.len(),
                got: crisp.len(),
            });
        }
        let mut fuzzified = Fuzzified::new();
        for (var, &x) in self.inputs.iter().zip(crisp) {
            if !x.is_finite() {
                return Err(FuzzyError::NonFiniteInput(var.name.clone()));
            }
            fuzzified.insert(&var.name, var.fuzzify(x));
        }
        Ok(fuzzified)
    }

    /// Firing strength of `rule` under this system's t-norm.
    pub fn firing_strength(
        &self,
        rule: &TskRule,
        fuzzified: &Fuzzified<'_>,
    ) -> Result<f64, FuzzyError> {
        firing_strength(self.tnorm, rule, fuzzified)
    }

    /// Crisp outputs, in output order, for crisp inputs given in input order.
    pub fn infer(&self, crisp: &[f64]) -> Result<Vec<f64>, FuzzyError> {
        let fuzzified = self.fuzzify(crisp)?;
        let mut weighted = vec![0.0; self.outputs.len()];
        let mut total = 0.0;
        for rule in &self.rules {
            let w = self.firing_strength(rule, &fuzzified)?;
            if w == 0.0 {
                continue;
            }
            for (acc, out) in weighted.iter_mut().zip(&self.outputs) {
                let z = rule
                    .consequent_for(&out.name)
                    .ok_or_else(|| FuzzyError::MissingConsequent(out.name.clone()))?;
                *acc += w * z;
            }
            total += w;
        }
        if total == 0.0 {
            return Err(FuzzyError::NoRuleFired);
        }
        Ok(weighted
            .iter()
            .zip(&self.outputs)
            .map(|(acc, out)| (acc / total).clamp(out.min, out.max))
            .collect())
    }

    /// Name-keyed variant of [`infer`](Self::infer).
    pub fn infer_named(
        &self,
        crisp: &HashMap<&str, f64>,
    ) -> Result<BTreeMap<String, f64>, FuzzyError> {
        let values = self
            .inputs
            .iter()
            .map(|v| {
                crisp
                    .get(v.name.as_str())
                    .copied()
                    .ok_or_else(|| FuzzyError::MissingInput(v.name.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let out = self.infer(&values)?;
        Ok(self
            .outputs
            .iter()
            .map(|o| o.name.clone())
            .zip(out)
            .collect())
    }

    /// Every broken invariant, in structural order. Empty iff the system is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut found = Vec::new();
        let mut push = |kind, location, message: String| {
            found.push(Violation {
                kind,
                location,
                message,
            })
        };

        if self.inputs.is_empty() {
            push(
                ViolationKind::NoInputs,
                Location::System,
                "no input variables".into(),
            );
        }
        if self.outputs.is_empty() {
            push(
                ViolationKind::NoOutputs,
                Location::System,
                "no output variables".into(),
            );
        }

        let mut names = HashSet::new();
        for (i, var) in self.inputs.iter().enumerate() {
            if !names.insert(var.name.as_str()) {
                push(
                    ViolationKind::DuplicateVariable,
                    Location::Input(i),
                    format!("variable `{}` declared twice", var.name),
                );
            }
            if !(var.min.is_finite() && var.max.is_finite() && var.min < var.max) {
                push(
                    ViolationKind::EmptyUniverse,
                    Location::Input(i),
                    format!(
                        "universe [{}, {}] of `{}` is empty",
                        var.min, var.max, var.name
                    ),
                );
                continue;
            }
            let mut labels = HashSet::new();
            let mut terms_ok = true;
            for (t, term) in var.terms.iter().enumerate() {
                if !labels.insert(term.label.as_str()) {
                    terms_ok = false;
                    push(
                        ViolationKind::DuplicateLabel,
                        Location::Term { input: i, term: t },
                        format!("label `{}` declared twice for `{}`", term.label, var.name),
                    );
                }
                if !term.mf.is_well_formed() {
                    terms_ok = false;
                    push(
                        ViolationKind::MalformedTerm,
                        Location::Term { input: i, term: t },
                        format!(
                            "breakpoints of `{} {}` are not ordered: {}",
                            var.name, term.label, term.mf
                        ),
                    );
                }
            }
            if terms_ok {
                if let Some(v) = check_partition(i, var) {
                    push(v.kind, v.location, v.message);
                }
            }
        }

        for (o, out) in self.outputs.iter().enumerate() {
            if !names.insert(out.name.as_str()) {
                push(
                    ViolationKind::DuplicateVariable,
                    Location::Output(o),
                    format!("variable `{}` declared twice", out.name),
                );
            }
            if !(out.min.is_finite() && out.max.is_finite() && out.min < out.max) {
                push(
                    ViolationKind::EmptyUniverse,
                    Location::Output(o),
                    format!(
                        "range [{}, {}] of output `{}` is empty",
                        out.min, out.max, out.name
                    ),
                );
            }
        }

        // Coverage bookkeeping over every combination of input labels.
        let radix: Vec<usize> = self.inputs.iter().map(|v| v.terms.len()).collect();
        let combinations = radix.iter().product::<usize>();
        let mut owner: Vec<Option<usize>> = vec![None; combinations];
        let mut all_rules_resolved = true;

        for (r, rule) in self.rules.iter().enumerate() {
            if rule.antecedent.is_empty() {
                all_rules_resolved = false;
                push(
                    ViolationKind::EmptyAntecedent,
                    Location::Rule(r),
                    "rule has no conditions".into(),
                );
            }
            let mut fixed: Vec<Option<usize>> = vec![None; self.inputs.len()];
            let mut resolved = true;
            for (c, cond) in rule.antecedent.iter().enumerate() {
                let location = Location::Conjunct {
                    rule: r,
                    conjunct: c,
                };
                let Some(vi) = self.input_index(&cond.variable) else {
                    resolved = false;
                    push(
                        ViolationKind::UnknownVariable,
                        location,
                        format!("unknown input variable `{}`", cond.variable),
                    );
                    continue;
                };
                let Some(ti) = self.inputs[vi].term_index(&cond.label) else {
                    resolved = false;
                    push(
                        ViolationKind::UnknownLabel,
                        location,
                        format!("`{}` has no term `{}`", cond.variable, cond.label),
                    );
                    continue;
                };
                if fixed[vi].is_some() {
                    resolved = false;
                    push(
                        ViolationKind::RepeatedCondition,
                        location,
                        format!("`{}` constrained more than once", cond.variable),
                    );
                    continue;
                }
                fixed[vi] = Some(ti);
            }

            let mut assigned = HashSet::new();
            for (k, (name, z)) in rule.consequent.iter().enumerate() {
                let location = Location::Consequent { rule: r, index: k };
                if self.output_index(name).is_none() {
                    push(
                        ViolationKind::UnknownOutput,
                        location,
                        format!("unknown output `{name}`"),
                    );
                } else if !assigned.insert(name.as_str()) {
                    push(
                        ViolationKind::RepeatedAssignment,
                        location,
                        format!("output `{name}` assigned twice"),
                    );
                } else if !z.is_finite() {
                    push(
                        ViolationKind::NonFiniteConsequent,
                        location,
                        format!("output `{name}` is not finite"),
                    );
                }
            }
            for out in &self.outputs {
                if !assigned.contains(out.name.as_str()) {
                    push(
                        ViolationKind::MissingConsequent,
                        Location::Rule(r),
                        format!("rule does not assign output `{}`", out.name),
                    );
                }
            }

            if !resolved || rule.antecedent.is_empty() {
                all_rules_resolved = false;
                continue;
            }
            let covered = matching_combinations(&radix, &fixed);
            if let Some(previous) = covered.iter().find_map(|&k| owner[k]) {
                push(
                    ViolationKind::DuplicateRule,
                    Location::Rule(r),
                    format!(
                        "rule overlaps rule #{} on at least one label combination",
                        previous + 1
                    ),
                );
                continue;
            }
            for k in covered {
                owner[k] = Some(r);
            }
        }

        if all_rules_resolved && !self.inputs.is_empty() {
            let missing: Vec<usize> = (0..combinations).filter(|&k| owner[k].is_none()).collect();
            if let Some(&first) = missing.first() {
                push(
                    ViolationKind::IncompleteRuleBase,
                    Location::System,
                    format!(
                        "incomplete rule base: {} of {} label combinations uncovered, first is ({})",
                        missing.len(),
                        combinations,
                        self.describe_combination(first, &radix)
                    ),
                );
            }
        }
        found
    }

    fn describe_combination(&self, mut index: usize, radix: &[usize]) -> String {
        let mut parts = Vec::with_capacity(radix.len());
        for (var, &n) in self.inputs.iter().zip(radix).rev() {
            parts.push(format!("{} is {}", var.name, var.terms[index % n].label));
            index /= n;
        }
        parts.reverse();
        parts.join(", ")
    }
}

/// Product (or minimum) of the antecedent degrees of `rule`.
pub fn firing_strength(
    tnorm: TNorm,
    rule: &TskRule,
    fuzzified: &Fuzzified<'_>,
) -> Result<f64, FuzzyError> {
    if rule.antecedent.is_empty() {
        return Err(FuzzyError::EmptyAntecedent);
    }
    let degrees = rule
        .antecedent
        .iter()
        .map(|c| {
            fuzzified
                .degree(&c.variable, &c.label)
                .ok_or_else(|| FuzzyError::UnknownTerm {
                    variable: c.variable.clone(),
                    label: c.label.clone(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(tnorm.combine(degrees))
}

/// Mixed-radix indices of all label combinations agreeing with `fixed`.
fn matching_combinations(radix: &[usize], fixed: &[Option<usize>]) -> Vec<usize> {
    let mut indices = vec![0usize];
    for (&n, f) in radix.iter().zip(fixed) {
        let choices: Vec<usize> = match f {
            Some(t) => vec![*t],
            None => (0..n).collect(),
        };
        indices = indices
            .iter()
            .flat_map(|base| choices.iter().map(move |c| base * n + c))
            .collect();
    }
    indices
}

/// Degrees are linear between critical points, so checking the sum at
/// every critical point and interval midpoint is exhaustive.
fn check_partition(index: usize, var: &LinguisticVariable) -> Option<Violation> {
    if var.terms.is_empty() {
        return Some(Violation {
            kind: ViolationKind::CoverageGap,
            location: Location::Input(index),
            message: format!("`{}` has no terms", var.name),
        });
    }
    let points = var.critical_points();
    let probes = points
        .iter()
        .copied()
        .chain(points.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    let mut worst: Option<(f64, f64)> = None;
    for x in probes {
        let sum: f64 = var.degrees(x).iter().sum();
        if sum == 0.0 {
            return Some(Violation {
                kind: ViolationKind::CoverageGap,
                location: Location::Input(index),
                message: format!("no term of `{}` covers {x}", var.name),
            });
        }
        let err = (sum - 1.0).abs();
        if err >= PARTITION_TOLERANCE && worst.is_none_or(|(e, _)| err > e) {
            worst = Some((err, x));
        }
    }
    worst.map(|(_, x)| Violation {
        kind: ViolationKind::NotPartition,
        location: Location::Input(index),
        message: format!(
            "terms of `{}` do not sum to 1 at {x} (sum {})",
            var.name,
            var.degrees(x).iter().sum::<f64>()
        ),
    })
}
