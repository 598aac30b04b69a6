#![allow(dead_code)]

use fuzzynav_core::fuzzy::{OutputVariable, TskRule};
use fuzzynav_core::{FuzzyInferenceSystem, LinguisticVariable, MembershipFunction};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random partition of `[min, max]` into `k` terms: shoulders at both
/// ends, trapezoids or triangles in between, neighbours crossing linearly.
pub fn random_variable(rng: &mut impl Rng, name: &str, k: usize) -> LinguisticVariable {
    let min: f64 = rng.gen_range(-10.0..10.0);
    let max = min + rng.gen_range(0.5..20.0);
    let mut cuts: Vec<f64> = (0..2 * (k - 1)).map(|_| rng.gen_range(min..max)).collect();
    cuts.sort_by(f64::total_cmp);
    // Ramps must have positive width for the partition to stay linear.
    for i in 1..cuts.len() {
        if cuts[i] <= cuts[i - 1] {
            cuts[i] = cuts[i - 1] + 1e-6;
        }
    }
    // Some middle terms lose their plateau and become triangles.
    let triangle: Vec<bool> = (0..k)
        .map(|j| j > 0 && j < k - 1 && rng.gen_bool(0.5))
        .collect();
    for j in 1..k.saturating_sub(1) {
        if triangle[j] {
            cuts[2 * j] = cuts[2 * j - 1];
        }
    }
    let mut var = LinguisticVariable::new(name, min, max.max(cuts[cuts.len() - 1] + 1e-6), "u");
    let hi = var.max;
    for j in 0..k {
        let label = format!("T{j}");
        let mf = if j == 0 {
            MembershipFunction::trapezoidal(min, min, cuts[0], cuts[1])
        } else if j == k - 1 {
            MembershipFunction::trapezoidal(cuts[2 * j - 2], cuts[2 * j - 1], hi, hi)
        } else {
            let (a, b, c, d) = (
                cuts[2 * j - 2],
                cuts[2 * j - 1],
                cuts[2 * j],
                cuts[2 * j + 1],
            );
            if triangle[j] {
                MembershipFunction::triangular(a, b, d)
            } else {
                MembershipFunction::trapezoidal(a, b, c, d)
            }
        };
        var = var.with_term(label, mf);
    }
    var
}

/// A valid system with 1..=3 inputs of 2..=3 terms, 1..=2 outputs and the
/// full rule table (at most 27 rules).
pub fn random_system(rng: &mut impl Rng) -> FuzzyInferenceSystem {
    let n_in = rng.gen_range(1..=3);
    let inputs: Vec<_> = (0..n_in)
        .map(|i| {
            let k = rng.gen_range(2..=3);
            random_variable(rng, &format!("in{i}"), k)
        })
        .collect();
    let n_out = rng.gen_range(1..=2);
    let outputs: Vec<_> = (0..n_out)
        .map(|o| OutputVariable::new(format!("out{o}"), -5.0, 5.0, "u"))
        .collect();
    let sizes: Vec<usize> = inputs.iter().map(|v| v.terms.len()).collect();
    let total: usize = sizes.iter().product();
    let mut rules = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut rule = TskRule::new();
        for (var, &k) in inputs.iter().zip(&sizes) {
            rule = rule.when(&var.name, &var.terms[code % k].label);
            code /= k;
        }
        for out in &outputs {
            rule = rule.then(&out.name, rng.gen_range(-6.0..6.0));
        }
        rules.push(rule);
    }
    FuzzyInferenceSystem::new(inputs, outputs, rules).expect("generated system is valid")
}

/// Crisp inputs, sometimes outside the universe to exercise clamping.
pub fn random_inputs(rng: &mut impl Rng, fis: &FuzzyInferenceSystem) -> Vec<f64> {
    fis.inputs()
        .iter()
        .map(|v| {
            let span = v.max - v.min;
            rng.gen_range(v.min - 0.1 * span..v.max + 0.1 * span)
        })
        .collect()
}

/// Membership by linear interpolation through the shape's corner points,
/// written independently of the library's piecewise formulas.
pub fn oracle_degree(mf: &MembershipFunction, x: f64) -> f64 {
    let (a, b, c, d) = match *mf {
        MembershipFunction::Triangular { a, b, c } => (a, b, b, c),
        MembershipFunction::Trapezoidal { a, b, c, d } => (a, b, c, d),
    };
    if a == d {
        return if x == a { 1.0 } else { 0.0 };
    }
    if a == b && x <= c {
        return 1.0;
    }
    if c == d && x >= b {
        return 1.0;
    }
    let knots = [(a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)];
    if x <= a || x >= d {
        return 0.0;
    }
    for w in knots.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x >= x0 && x <= x1 {
            if x1 == x0 {
                return y1;
            }
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    0.0
}

/// Brute-force zero-order TSK: product of clamped-input degrees per rule,
/// weighted average per output, clamped to the output range.
pub fn oracle_infer(fis: &FuzzyInferenceSystem, crisp: &[f64]) -> Option<Vec<f64>> {
    let mut num = vec![0.0; fis.outputs().len()];
    let mut den = 0.0;
    for rule in fis.rules() {
        let mut w = 1.0;
        for cond in &rule.antecedent {
            let i = fis.inputs().iter().position(|v| v.name == cond.variable)?;
            let var = &fis.inputs()[i];
            let x = crisp[i].max(var.min).min(var.max);
            let term = var.terms.iter().find(|t| t.label == cond.label)?;
            w *= oracle_degree(&term.mf, x);
        }
        for (o, out) in fis.outputs().iter().enumerate() {
            let z = rule.consequent.iter().find(|(n, _)| *n == out.name)?.1;
            num[o] += w * z;
        }
        den += w;
    }
    if den == 0.0 {
        return None;
    }
    Some(
        num.iter()
            .zip(fis.outputs())
            .map(|(n, o)| (n / den).max(o.min).min(o.max))
            .collect(),
    )
}
