//! Shared inputs for the escape-time benchmarks.

use tribrot::{Tricomplex, Unit};

/// `n` parameters on a deterministic spiral through the closed discus of
/// radius `radius`, spread over all eight coefficients.
pub fn spiral_params(n: usize, radius: f64) -> Vec<Tricomplex> {
    (0..n)
        .map(|k| {
            let t = k as f64 / n.max(1) as f64;
            let r = radius * t.sqrt() / 8f64.sqrt();
            let mut x = [0.0; 8];
            for (u, v) in Unit::ALL.iter().zip(x.iter_mut()) {
                let phase = (u.index() as f64 + 1.0) * 2.399963 * k as f64;
                *v = r * phase.cos();
            }
            Tricomplex::new(x)
        })
        .collect()
}
