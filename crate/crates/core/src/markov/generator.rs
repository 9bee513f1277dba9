//! Generator construction, validation and the stationary state.

use super::MarkovError;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// One jump channel. Parallel channels between the same pair of states are
/// allowed and kept distinct, so per-channel counting observables (fluxes
/// through different reservoirs, entropy increments) stay well defined.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub rate: f64,
    #[serde(rename = "inc")]
    pub increments: Vec<f64>,
}

/// Continuous-time generator with the implicit diagonal convention
/// M(C,C) = -sum of the outgoing rates of C.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovGenerator {
    n_states: usize,
    transitions: Vec<Transition>,
    observable_names: Vec<String>,
    diagonal: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    n_states: usize,
    observables: Vec<String>,
    transitions: Vec<Transition>,
}

/// Validate and build a generator. Rates must be positive, self-loops are
/// rejected (the diagonal is implicit) and the chain restricted to its
/// positive-rate transitions must be irreducible.
pub fn build_generator(
    n_states: usize,
    transitions: Vec<Transition>,
    observable_names: Vec<String>,
) -> Result<MarkovGenerator, MarkovError> {
    if n_states == 0 {
        return Err(MarkovError::InvalidDocument("n_states must be positive".into()));
    }
    let n_obs = observable_names.len();
    for t in &transitions {
        if t.from >= n_states {
            return Err(MarkovError::IndexOutOfRange { index: t.from, n_states });
        }
        if t.to >= n_states {
            return Err(MarkovError::IndexOutOfRange { index: t.to, n_states });
        }
        if t.from == t.to {
            return Err(MarkovError::SelfLoop(t.from));
        }
        if !(t.rate > 0.0) || !t.rate.is_finite() {
            return Err(MarkovError::NegativeRate { from: t.from, to: t.to, rate: t.rate });
        }
        if t.increments.len() != n_obs {
            return Err(MarkovError::DimensionMismatch { expected: n_obs, got: t.increments.len() });
        }
    }
    let mut diagonal = vec![0.0; n_states];
    for t in &transitions {
        diagonal[t.from] -= t.rate;
    }
    let gen = MarkovGenerator { n_states, transitions, observable_names, diagonal };
    if !gen.is_irreducible() {
        return Err(MarkovError::NonIrreducible);
    }
    Ok(gen)
}

impl MarkovGenerator {
    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn observable_names(&self) -> &[String] {
        &self.observable_names
    }

    pub fn observable_index(&self, name: &str) -> Option<usize> {
        self.observable_names.iter().position(|n| n == name)
    }

    /// Diagonal entries M(C,C).
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn max_rate(&self) -> f64 {
        self.transitions.iter().fold(0.0, |m, t| m.max(t.rate))
    }

    /// Dense matrix in the column convention of the master equation:
    /// dP/dt = M P with M[(to, from)] holding the rate from -> to.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n_states;
        let mut m = DMatrix::zeros(n, n);
        for t in &self.transitions {
            m[(t.to, t.from)] += t.rate;
        }
        for (c, d) in self.diagonal.iter().enumerate() {
            m[(c, c)] = *d;
        }
        m
    }

    /// Strong connectivity of the positive-rate transition graph, checked by
    /// forward and backward reachability from state 0.
    fn is_irreducible(&self) -> bool {
        let fwd = self.reachable(false);
        let bwd = self.reachable(true);
        fwd.iter().all(|&r| r) && bwd.iter().all(|&r| r)
    }

    fn reachable(&self, reversed: bool) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.n_states];
        for t in &self.transitions {
            let (a, b) = if reversed { (t.to, t.from) } else { (t.from, t.to) };
            adj[a].push(b);
        }
        let mut seen = vec![false; self.n_states];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &d in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen
    }

    /// Append an observable; every transition must receive one increment.
    pub fn with_observable(&self, name: &str, increments: &[f64]) -> Result<MarkovGenerator, MarkovError> {
        if increments.len() != self.transitions.len() {
            return Err(MarkovError::DimensionMismatch {
                expected: self.transitions.len(),
                got: increments.len(),
            });
        }
        let mut gen = self.clone();
        gen.observable_names.push(name.to_string());
        for (t, &q) in gen.transitions.iter_mut().zip(increments) {
            t.increments.push(q);
        }
        Ok(gen)
    }

    pub fn to_json(&self) -> String {
        let doc = GeneratorDoc {
            n_states: self.n_states,
            observables: self.observable_names.clone(),
            transitions: self.transitions.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("generator serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<MarkovGenerator, MarkovError> {
        let doc: GeneratorDoc =
            serde_json::from_str(text).map_err(|e| MarkovError::InvalidDocument(e.to_string()))?;
        build_generator(doc.n_states, doc.transitions, doc.observables)
    }
}

/// Stationary distribution of a validated generator: solves M P = 0 with
/// sum(P) = 1. Dense LU on the augmented system up to 4096 states, power
/// iteration on the uniformized chain I + M/s (s = 2 max|diag|) beyond that.
pub fn stationary_distribution(gen: &MarkovGenerator) -> Result<DVector<f64>, MarkovError> {
    let n = gen.n_states();
    let p = if n <= 4096 {
        let mut m = gen.matrix();
        for j in 0..n {
            m[(0, j)] = 1.0;
        }
        let mut b = DVector::zeros(n);
        b[0] = 1.0;
        let lu = m.lu();
        lu.solve(&b).ok_or(MarkovError::SingularSystem)?
    } else {
        uniformized_power(gen)
    };
    let mut p = p;
    // clip solver noise and renormalize
    for v in p.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let total: f64 = p.iter().sum();
    if total <= 0.0 {
        return Err(MarkovError::SingularSystem);
    }
    p /= total;
    let resid = (gen.matrix() * &p).amax();
    if resid > 1e-12 * gen.max_rate().max(1.0) {
        return Err(MarkovError::SingularSystem);
    }
    Ok(p)
}

fn uniformized_power(gen: &MarkovGenerator) -> DVector<f64> {
    let n = gen.n_states();
    let s = 2.0 * gen.diagonal().iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let mut p = DVector::from_element(n, 1.0 / n as f64);
    let mut next = DVector::zeros(n);
    for _ in 0..2_000_000usize {
        // next = (I + M/s) p
        next.copy_from(&p);
        for t in gen.transitions() {
            next[t.to] += t.rate / s * p[t.from];
            next[t.from] -= t.rate / s * p[t.from];
        }
        let diff = (&next - &p).amax();
        std::mem::swap(&mut p, &mut next);
        if diff < 1e-16 {
            break;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::quantum_dot_generator;

    #[test]
    fn quantum_dot_stationary_matches_balance_solve() {
        // (alpha, gamma, beta, delta) = (2, 1, 1, 1): P1 = 3/5, P0 = 2/5
        let gen = quantum_dot_generator(2.0, 1.0, 1.0, 1.0).unwrap();
        let p = stationary_distribution(&gen).unwrap();
        assert!((p[0] - 0.4).abs() < 1e-13);
        assert!((p[1] - 0.6).abs() < 1e-13);
    }

    #[test]
    fn symmetric_two_state_is_half_half() {
        let gen = build_generator(
            2,
            vec![
                Transition { from: 0, to: 1, rate: 3.0, increments: vec![] },
                Transition { from: 1, to: 0, rate: 3.0, increments: vec![] },
            ],
            vec![],
        )
        .unwrap();
        let p = stationary_distribution(&gen).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-14 && (p[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn one_way_chain_is_rejected() {
        let r = build_generator(
            2,
            vec![Transition { from: 0, to: 1, rate: 1.0, increments: vec![] }],
            vec![],
        );
        assert!(matches!(r, Err(MarkovError::NonIrreducible)));
    }

    #[test]
    fn negative_rate_is_rejected() {
        let r = build_generator(
            2,
            vec![
                Transition { from: 0, to: 1, rate: -1.0, increments: vec![] },
                Transition { from: 1, to: 0, rate: 1.0, increments: vec![] },
            ],
            vec![],
        );
        assert!(matches!(r, Err(MarkovError::NegativeRate { .. })));
    }

    #[test]
    fn bad_index_and_self_loop() {
        let r = build_generator(
            2,
            vec![Transition { from: 0, to: 5, rate: 1.0, increments: vec![] }],
            vec![],
        );
        assert!(matches!(r, Err(MarkovError::IndexOutOfRange { .. })));
        let r = build_generator(
            2,
            vec![Transition { from: 1, to: 1, rate: 1.0, increments: vec![] }],
            vec![],
        );
        assert!(matches!(r, Err(MarkovError::SelfLoop(1))));
    }

    #[test]
    fn json_roundtrip_preserves_generator() {
        let gen = quantum_dot_generator(2.0, 1.0, 1.0, 0.5).unwrap();
        let text = gen.to_json();
        assert!(text.contains("\"n_states\""));
        assert!(text.contains("\"inc\""));
        let back = MarkovGenerator::from_json(&text).unwrap();
        assert_eq!(gen, back);
    }
}
