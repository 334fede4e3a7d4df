use rayon::prelude::*;
use serde::Serialize;

use crate::data::distance;
use crate::error::{Error, Result};
use crate::mechanisms::PriorSpec;
use crate::rng::RngStream;

const CHUNK: usize = 1 << 16;

/// Monte Carlo estimate of `I(t) = -log prior(outside the t-ball of E)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    /// The estimate, or `log(samples)` when no draw landed outside.
    pub value: f64,
    /// Set when every draw landed inside; `value` is then a lower bound.
    pub lower_bound: bool,
    pub outside: u64,
    pub samples: u64,
}

/// Direct prior sampling. Draws are split into fixed-size chunks, each
/// with its own sub-stream, so the result does not depend on thread count.
pub fn rate_function_mc(
    prior: &PriorSpec,
    e: &[Vec<f64>],
    t: f64,
    samples: u64,
    stream: RngStream,
) -> Result<RateEstimate> {
    if samples == 0 {
        return Err(Error::Precondition("samples must be at least 1".into()));
    }
    if e.is_empty() || e.iter().any(|x| x.len() != prior.dim()) {
        return Err(Error::Precondition(
            "E must be a nonempty set of prior-dimension points".into(),
        ));
    }
    let chunks = samples.div_ceil(CHUNK as u64);
    let outside: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream.derive(&[c]).rng();
            let len = (samples - c * CHUNK as u64).min(CHUNK as u64);
            let mut hits = 0u64;
            for _ in 0..len {
                let x = prior.sample(&mut rng);
                if e.iter().all(|p| distance(&x, p) > t) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let n = samples as f64;
    Ok(if outside == 0 {
        RateEstimate {
            value: n.ln(),
            lower_bound: true,
            outside,
            samples,
        }
    } else {
        RateEstimate {
            value: -(outside as f64 / n).ln(),
            lower_bound: false,
            outside,
            samples,
        }
    })
}
