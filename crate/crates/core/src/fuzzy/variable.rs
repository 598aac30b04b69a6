use super::MembershipFunction;

/// A labelled fuzzy set belonging to a [`LinguisticVariable`].
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub label: String,
    pub mf: MembershipFunction,
}

/// A named input with a closed universe partitioned into labelled terms.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    pub name: String,
    pub min: f64,
    pub max: f64,
    /// Documentation only; no unit conversion is performed.
    pub unit: String,
    pub terms: Vec<Term>,
}

impl LinguisticVariable {
    pub fn new(name: impl Into<String>, min: f64, max: f64, unit: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            min,
            max,
            unit: unit.into(),
            terms: Vec::new(),
        }
    }

    /// Builder-style term insertion.
    pub fn with_term(mut self, label: impl Into<String>, mf: MembershipFunction) -> Self {
        self.terms.push(Term {
            label: label.into(),
            mf,
        });
        self
    }

    pub fn term_index(&self, label: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.label == label)
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.min, self.max)
    }

    /// Degrees of every term, in term order, after clamping `x` to the universe.
    pub fn degrees(&self, x: f64) -> Vec<f64> {
        let x = self.clamp(x);
        self.terms.iter().map(|t| t.mf.degree(x)).collect()
    }

    /// Label/degree pairs for `x` clamped to the universe.
    pub fn fuzzify(&self, x: f64) -> Vec<(&str, f64)> {
        let x = self.clamp(x);
        self.terms
            .iter()
            .map(|t| (t.label.as_str(), t.mf.degree(x)))
            .collect()
    }

    /// Points between which every term is linear: all breakpoints inside
    /// the universe plus the universe ends, sorted and deduplicated.
    pub fn critical_points(&self) -> Vec<f64> {
        let mut points: Vec<f64> = self
            .terms
            .iter()
            .flat_map(|t| t.mf.breakpoints())
            .filter(|p| *p > self.min && *p < self.max)
            .chain([self.min, self.max])
            .collect();
        points.sort_by(f64::total_cmp);
        points.dedup();
        points
    }
}
