use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::data::Dataset;
use crate::depth::{DepthEvaluator, DepthKind};
use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::{ChainConfig, MechanismConfig, MechanismResult, PriorSpec, SamplerKind, STREAM_CHAIN};

const MALA_TARGET_ACCEPTANCE: f64 = 0.57;
const RWM_TARGET_ACCEPTANCE: f64 = 0.23;
const TUNE_BATCH: usize = 50;
const TUNE_ROUNDS: usize = 40;
const TUNE_BAND: f64 = 0.08;

/// Kept draws of one chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainOutput {
    pub draws: Vec<Vec<f64>>,
    /// Acceptance rate over burn-in and sampling (tuning excluded).
    pub acceptance_rate: f64,
    pub step_size: f64,
    pub transitions: usize,
}

#[derive(Clone, Copy)]
enum Proposal {
    Langevin,
    RandomWalk,
}

struct State {
    theta: Vec<f64>,
    log_target: f64,
    grad: Vec<f64>,
}

struct Target<'e, 'a> {
    depth: &'e DepthEvaluator<'a>,
    prior: &'e PriorSpec,
    beta: f64,
    proposal: Proposal,
}

impl Target<'_, '_> {
    fn state(&self, theta: Vec<f64>) -> State {
        let lp = self.prior.log_density(&theta);
        match self.proposal {
            Proposal::Langevin => {
                let (v, g) = self
                    .depth
                    .depth_with_gradient(&theta)
                    .expect("Langevin targets are differentiable");
                let gp = self.prior.grad_log_density(&theta);
                let grad = g.iter().zip(&gp).map(|(a, b)| self.beta * a + b).collect();
                State {
                    theta,
                    log_target: self.beta * v + lp,
                    grad,
                }
            }
            Proposal::RandomWalk => {
                let log_target = if lp == f64::NEG_INFINITY {
                    lp
                } else {
                    self.beta * self.depth.depth(&theta) + lp
                };
                State {
                    theta,
                    log_target,
                    grad: Vec::new(),
                }
            }
        }
    }

    /// One Metropolis-Hastings transition; returns whether it accepted.
    fn step(&self, cur: &mut State, h: f64, rng: &mut ChaCha20Rng) -> bool {
        let d = cur.theta.len();
        let xi: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let prop: Vec<f64> = match self.proposal {
            Proposal::Langevin => (0..d)
                .map(|i| cur.theta[i] + 0.5 * h * cur.grad[i] + h.sqrt() * xi[i])
                .collect(),
            Proposal::RandomWalk => (0..d).map(|i| cur.theta[i] + h * xi[i]).collect(),
        };
        let u: f64 = rng.random();
        if !self.prior.contains(&prop) {
            return false;
        }
        let next = self.state(prop);
        let mut log_alpha = next.log_target - cur.log_target;
        if let Proposal::Langevin = self.proposal {
            log_alpha += langevin_log_q(&cur.theta, &next, h) - langevin_log_q(&next.theta, cur, h);
        }
        if log_alpha.is_nan() {
            return false;
        }
        if u.ln() < log_alpha {
            *cur = next;
            true
        } else {
            false
        }
    }
}

/// `log q(to | from)` up to a constant for the Langevin proposal.
fn langevin_log_q(to: &[f64], from: &State, h: f64) -> f64 {
    let r2: f64 = to
        .iter()
        .zip(&from.theta)
        .zip(&from.grad)
        .map(|((t, f), g)| {
            let z = t - f - 0.5 * h * g;
            z * z
        })
        .sum();
    -r2 / (2.0 * h)
}

fn run_chain(
    target: &Target<'_, '_>,
    chain: &ChainConfig,
    h0: f64,
    accept_goal: f64,
    rng: &mut ChaCha20Rng,
) -> Result<ChainOutput> {
    chain.validate()?;
    let d = target.depth.data().d();
    let init = chain
        .init
        .clone()
        .unwrap_or_else(|| target.prior.center().to_vec());
    if init.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: init.len(),
        });
    }
    if !target.prior.contains(&init) {
        return Err(Error::Precondition(
            "chain start lies outside the prior support".into(),
        ));
    }
    let mut cur = target.state(init);

    let h = match chain.step_size {
        Some(h) => h,
        None => tune(target, &mut cur, h0, accept_goal, rng),
    };
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "step size must be positive, got {h}"
        )));
    }

    let mut accepted = 0usize;
    for _ in 0..chain.burn_in {
        accepted += usize::from(target.step(&mut cur, h, rng));
    }
    let mut draws = Vec::with_capacity(chain.kept);
    for _ in 0..chain.kept {
        for _ in 0..chain.thinning {
            accepted += usize::from(target.step(&mut cur, h, rng));
        }
        draws.push(cur.theta.clone());
    }
    let transitions = chain.burn_in + chain.kept * chain.thinning;
    Ok(ChainOutput {
        draws,
        acceptance_rate: accepted as f64 / transitions as f64,
        step_size: h,
        transitions,
    })
}

/// Doubling/halving search toward `goal` acceptance, then frozen.
fn tune(
    target: &Target<'_, '_>,
    cur: &mut State,
    h0: f64,
    goal: f64,
    rng: &mut ChaCha20Rng,
) -> f64 {
    let mut h = h0;
    let mut last_dir = 0i8;
    let mut factor = 2.0;
    for _ in 0..TUNE_ROUNDS {
        let acc =
            (0..TUNE_BATCH).filter(|_| target.step(cur, h, rng)).count() as f64 / TUNE_BATCH as f64;
        let dir = if acc > goal + TUNE_BAND {
            1
        } else if acc < goal - TUNE_BAND {
            -1
        } else {
            break;
        };
        if last_dir != 0 && dir != last_dir {
            factor = f64::sqrt(factor);
        }
        last_dir = dir;
        h = if dir > 0 { h * factor } else { h / factor };
    }
    h
}

fn chain_rng(stream: RngStream) -> ChaCha20Rng {
    stream.derive(&[STREAM_CHAIN]).rng()
}

/// Langevin chain on `beta * SIDD + log prior` with a Gaussian prior.
pub fn mala_chain(
    depth: &DepthEvaluator<'_>,
    prior: &PriorSpec,
    beta: f64,
    chain: &ChainConfig,
    stream: RngStream,
) -> Result<ChainOutput> {
    if !matches!(depth.kind(), DepthKind::Sidd { .. }) {
        return Err(Error::UnsupportedSampler(format!(
            "MALA needs a differentiable depth (sidd), got {}; use rwm",
            depth.kind()
        )));
    }
    if !matches!(prior, PriorSpec::Gaussian { .. }) {
        return Err(Error::UnsupportedSampler(
            "MALA needs a smooth prior; use rwm with a cube prior".into(),
        ));
    }
    let target = Target {
        depth,
        prior,
        beta,
        proposal: Proposal::Langevin,
    };
    let d = depth.data().d() as f64;
    let h0 = 0.1 * prior.scale().powi(2) / d;
    run_chain(
        &target,
        chain,
        h0,
        MALA_TARGET_ACCEPTANCE,
        &mut chain_rng(stream),
    )
}

/// Random-walk Metropolis chain; works for every depth and prior.
pub fn rwm_chain(
    depth: &DepthEvaluator<'_>,
    prior: &PriorSpec,
    beta: f64,
    chain: &ChainConfig,
    stream: RngStream,
) -> Result<ChainOutput> {
    let target = Target {
        depth,
        prior,
        beta,
        proposal: Proposal::RandomWalk,
    };
    let d = depth.data().d() as f64;
    let h0 = 0.1 * prior.scale() / d.sqrt();
    run_chain(
        &target,
        chain,
        h0,
        RWM_TARGET_ACCEPTANCE,
        &mut chain_rng(stream),
    )
}

fn finish(beta: f64, stream: RngStream, sampler: SamplerKind, out: ChainOutput) -> MechanismResult {
    MechanismResult {
        theta: out.draws.last().expect("at least one kept draw").clone(),
        beta,
        acceptance_rate: out.acceptance_rate,
        seed: stream,
        sampler,
        step_size: out.step_size,
        chain_length: out.transitions,
    }
}

/// Private median by MALA; the returned draw is the chain's final state.
pub fn mala_sample(
    data: &Dataset,
    cfg: &MechanismConfig,
    stream: RngStream,
) -> Result<MechanismResult> {
    let beta = cfg.beta(data)?;
    let depth = cfg.evaluator(data, stream)?;
    let out = mala_chain(&depth, &cfg.prior, beta, &cfg.chain, stream)?;
    Ok(finish(beta, stream, SamplerKind::Mala, out))
}

/// Private median by random-walk Metropolis.
pub fn rwm_sample(
    data: &Dataset,
    cfg: &MechanismConfig,
    stream: RngStream,
) -> Result<MechanismResult> {
    let beta = cfg.beta(data)?;
    let depth = cfg.evaluator(data, stream)?;
    let out = rwm_chain(&depth, &cfg.prior, beta, &cfg.chain, stream)?;
    Ok(finish(beta, stream, SamplerKind::Rwm, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanisms::DirectionSpec;

    fn data_1d() -> Dataset {
        Dataset::new(vec![-1.0, -0.2, 0.1, 0.4, 1.3], 5, 1).unwrap()
    }

    fn mean_var(xs: &[Vec<f64>]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().map(|x| x[0]).sum::<f64>() / n;
        let v = xs.iter().map(|x| (x[0] - m).powi(2)).sum::<f64>() / n;
        (m, v)
    }

    #[test]
    fn zero_beta_mala_samples_prior() {
        let data = data_1d();
        let ev =
            DepthEvaluator::with_directions(&data, DepthKind::sidd(10.0).unwrap(), None).unwrap();
        let prior = PriorSpec::gaussian(vec![1.0], 2.0).unwrap();
        let chain = ChainConfig {
            burn_in: 500,
            kept: 20_000,
            thinning: 2,
            ..Default::default()
        };
        let out = mala_chain(&ev, &prior, 0.0, &chain, RngStream::new(5, 0)).unwrap();
        let (m, v) = mean_var(&out.draws);
        assert!((m - 1.0).abs() < 0.1, "mean {m}");
        assert!((v - 4.0).abs() < 0.4, "var {v}");
    }

    #[test]
    fn zero_beta_rwm_samples_cube() {
        let data = data_1d();
        let ev = DepthEvaluator::with_directions(&data, DepthKind::Hd, None).unwrap();
        let prior = PriorSpec::cube(vec![0.0], 2.0).unwrap();
        let chain = ChainConfig {
            burn_in: 500,
            kept: 20_000,
            thinning: 2,
            ..Default::default()
        };
        let out = rwm_chain(&ev, &prior, 0.0, &chain, RngStream::new(6, 0)).unwrap();
        assert!(out.draws.iter().all(|x| x[0].abs() <= 1.0));
        let (m, v) = mean_var(&out.draws);
        assert!(m.abs() < 0.06, "mean {m}");
        assert!((v - 1.0 / 3.0).abs() < 0.04, "var {v}");
    }

    #[test]
    fn replays_bit_for_bit() {
        let data = Dataset::from_rows(&[[0.0, 1.0], [1.0, -1.0], [0.5, 0.2], [-0.3, 0.4]]).unwrap();
        let mut cfg = MechanismConfig::new(
            2.0,
            DepthKind::sidd(10.0).unwrap(),
            PriorSpec::gaussian(vec![0.0, 0.0], 3.0).unwrap(),
            SamplerKind::Mala,
        );
        cfg.directions = DirectionSpec::Sampled { count: 20 };
        cfg.chain.burn_in = 100;
        cfg.chain.kept = 10;
        let a = mala_sample(&data, &cfg, RngStream::new(9, 1)).unwrap();
        let b = mala_sample(&data, &cfg, RngStream::new(9, 1)).unwrap();
        assert_eq!(a, b);
        let c = mala_sample(&data, &cfg, RngStream::new(9, 2)).unwrap();
        assert_ne!(a.theta, c.theta);
        cfg.sampler = SamplerKind::Rwm;
        cfg.depth = DepthKind::Hd;
        let a = rwm_sample(&data, &cfg, RngStream::new(9, 1)).unwrap();
        let b = rwm_sample(&data, &cfg, RngStream::new(9, 1)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mala_rejects_unsupported_targets() {
        let data = data_1d();
        let prior = PriorSpec::gaussian(vec![0.0], 1.0).unwrap();
        let hd = DepthEvaluator::with_directions(&data, DepthKind::Hd, None).unwrap();
        let chain = ChainConfig::default();
        assert!(matches!(
            mala_chain(&hd, &prior, 1.0, &chain, RngStream::new(0, 0)),
            Err(Error::UnsupportedSampler(_))
        ));
        let sidd =
            DepthEvaluator::with_directions(&data, DepthKind::sidd(5.0).unwrap(), None).unwrap();
        let cube = PriorSpec::cube(vec![0.0], 1.0).unwrap();
        assert!(matches!(
            mala_chain(&sidd, &cube, 1.0, &chain, RngStream::new(0, 0)),
            Err(Error::UnsupportedSampler(_))
        ));
    }

    #[test]
    fn zero_step_size_is_rejected() {
        let data = data_1d();
        let ev =
            DepthEvaluator::with_directions(&data, DepthKind::sidd(5.0).unwrap(), None).unwrap();
        let prior = PriorSpec::gaussian(vec![0.0], 1.0).unwrap();
        let chain = ChainConfig {
            step_size: Some(0.0),
            ..Default::default()
        };
        assert!(mala_chain(&ev, &prior, 1.0, &chain, RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn tuning_reaches_a_sensible_acceptance() {
        let data = data_1d();
        let ev = DepthEvaluator::with_directions(&data, DepthKind::Idd, None).unwrap();
        let prior = PriorSpec::gaussian(vec![0.0], 5.0).unwrap();
        let out = rwm_chain(
            &ev,
            &prior,
            20.0,
            &ChainConfig::default(),
            RngStream::new(1, 0),
        )
        .unwrap();
        assert!(
            out.acceptance_rate > 0.08 && out.acceptance_rate < 0.5,
            "{}",
            out.acceptance_rate
        );
    }
}
