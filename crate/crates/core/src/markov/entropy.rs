//! Entropy production and the Gallavotti-Cohen symmetry.
//!
//! Channels are grouped by (from, to, increment signature); the reverse of a
//! group is the group (to, from, -increments). Working at channel level
//! rather than on aggregated matrix elements keeps multi-reservoir models
//! honest: the two parallel injection channels of the quantum dot carry
//! different entropy increments even though they connect the same states.

use super::{scgf, MarkovError, MarkovGenerator, TiltedGenerator};
use crate::markov::stationary_distribution;
use std::collections::HashMap;

type GroupKey = (usize, usize, Vec<u64>);

fn inc_key(increments: &[f64], negate: bool) -> Vec<u64> {
    increments
        .iter()
        .map(|&q| {
            let v = if negate { -q } else { q };
            // normalize -0.0 so q and -(-q) hash identically
            (if v == 0.0 { 0.0 } else { v }).to_bits()
        })
        .collect()
}

fn grouped_rates(gen: &MarkovGenerator) -> HashMap<GroupKey, f64> {
    let mut groups: HashMap<GroupKey, f64> = HashMap::new();
    for t in gen.transitions() {
        *groups.entry((t.from, t.to, inc_key(&t.increments, false))).or_insert(0.0) += t.rate;
    }
    groups
}

/// Per-channel entropy increments ln(w / w_rev), or an error naming the first
/// one-way channel.
fn entropy_increments(gen: &MarkovGenerator) -> Result<Vec<f64>, MarkovError> {
    let groups = grouped_rates(gen);
    let mut incs = Vec::with_capacity(gen.transitions().len());
    for t in gen.transitions() {
        let fwd = groups[&(t.from, t.to, inc_key(&t.increments, false))];
        let rev = groups
            .get(&(t.to, t.from, inc_key(&t.increments, true)))
            .copied()
            .ok_or(MarkovError::IrreversibleTransition { from: t.from, to: t.to })?;
        incs.push((fwd / rev).ln());
    }
    Ok(incs)
}

/// Append the entropy observable q = s (log-rate-ratio increments).
pub fn with_entropy_observable(gen: &MarkovGenerator) -> Result<MarkovGenerator, MarkovError> {
    let incs = entropy_increments(gen)?;
    gen.with_observable("entropy", &incs)
}

/// Steady-state entropy production rate
/// s* = sum over channels of w P_st(from) ln(w / w_rev) >= 0.
pub fn entropy_production_rate(gen: &MarkovGenerator) -> Result<f64, MarkovError> {
    let groups = grouped_rates(gen);
    let p = stationary_distribution(gen)?;
    let mut s = 0.0;
    for ((from, to, key), &w) in &groups {
        let neg_key: Vec<u64> =
            key.iter().map(|&b| inc_key(&[f64::from_bits(b)], true)[0]).collect();
        let rev = groups
            .get(&(*to, *from, neg_key))
            .copied()
            .ok_or(MarkovError::IrreversibleTransition { from: *from, to: *to })?;
        s += w * p[*from] * (w / rev).ln();
    }
    Ok(s)
}

/// Maximum of |mu(lambda) - mu(-1-lambda)| under the entropy tilt over a
/// lambda grid on [-2, 1]. Vanishes (<= 1e-9) for any reversible generator.
pub fn gc_symmetry_defect(gen: &MarkovGenerator) -> Result<f64, MarkovError> {
    let tilted_gen = with_entropy_observable(gen)?;
    let slot = tilted_gen.observable_names().len() - 1;
    let mu = |lambda: f64| -> Result<f64, MarkovError> {
        let mut tilt = vec![0.0; tilted_gen.observable_names().len()];
        tilt[slot] = lambda;
        Ok(scgf(&TiltedGenerator::new(&tilted_gen, &tilt)?)?.eigenvalue)
    };
    let mut defect = 0.0f64;
    let mut lambda = -2.0;
    while lambda <= 1.0 + 1e-12 {
        defect = defect.max((mu(lambda)? - mu(-1.0 - lambda)?).abs());
        lambda += 0.25;
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{quantum_dot_generator, ssep_generator, SsepParams};

    #[test]
    fn quantum_dot_entropy_production() {
        // (2,1,1,1): s* = (1/5) ln 2, from the channel-resolved sum with
        // P = (2/5, 3/5)
        let gen = quantum_dot_generator(2.0, 1.0, 1.0, 1.0).unwrap();
        let s = entropy_production_rate(&gen).unwrap();
        assert!((s - 2.0f64.ln() / 5.0).abs() < 1e-13, "{s}");
    }

    #[test]
    fn detailed_balance_gives_zero_entropy_production() {
        // alpha beta = gamma delta
        let gen = quantum_dot_generator(1.0, 1.0, 1.0, 1.0).unwrap();
        let s = entropy_production_rate(&gen).unwrap();
        assert!(s.abs() < 1e-12, "{s}");
    }

    #[test]
    fn one_way_transition_is_an_error() {
        let gen = ssep_generator(&SsepParams::open(2, [1.0, 0.0, 1.0, 0.0])).unwrap();
        assert!(matches!(
            entropy_production_rate(&gen),
            Err(MarkovError::IrreversibleTransition { .. })
        ));
    }

    #[test]
    fn gc_defect_small_for_quantum_dot() {
        let gen = quantum_dot_generator(2.0, 1.0, 1.0, 1.0).unwrap();
        let d = gc_symmetry_defect(&gen).unwrap();
        assert!(d < 1e-10, "{d}");
    }

    #[test]
    fn entropy_tilt_matrix_matches_power_combination() {
        // entries M^{1+lambda}(C',C) M^{-lambda}(C,C') channel by channel
        let (a, g, b, d) = (2.0, 0.7, 1.3, 0.4);
        let gen = quantum_dot_generator(a, g, b, d).unwrap();
        let gen_s = with_entropy_observable(&gen).unwrap();
        let lam = 0.6;
        let mut tilt = vec![0.0; gen_s.observable_names().len()];
        *tilt.last_mut().unwrap() = lam;
        let m = TiltedGenerator::new(&gen_s, &tilt).unwrap().matrix();
        let up = a.powf(1.0 + lam) * g.powf(-lam) + d.powf(1.0 + lam) * b.powf(-lam);
        let down = g.powf(1.0 + lam) * a.powf(-lam) + b.powf(1.0 + lam) * d.powf(-lam);
        assert!((m[(1, 0)] - up).abs() < 1e-12);
        assert!((m[(0, 1)] - down).abs() < 1e-12);
    }
}
