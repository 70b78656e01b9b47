//! Reproducible random instances.
//!
//! The stream is pinned so instance files are bit-identical across
//! implementations: splitmix64 expands the seed into four state words,
//! xoshiro256** produces the outputs, and each uniform real in `[0, 1)` is
//! `(output >> 11) · 2⁻⁵³`. Entries are drawn in the order `A` (row-major),
//! `b`, `A₁` (row-major), `b₁`, `c`, `d`.
//!
//! Batches generated concurrently should use distinct seeds; the benchmark
//! uses `seed + batch index`.

use serde::{Deserialize, Serialize};

use crate::monotonicity::{self, check_paramonotone};
use crate::{AffineFractionalInstance, BoxSet, Error, Matrix, Result, Scalar, Vector};

/// One splitmix64 step: advances `state` and returns the mixed output.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[low, high)`.
    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.next_f64()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub entry_low: f64,
    pub entry_high: f64,
    pub box_low: f64,
    pub box_high: f64,
    /// Redraw instances that fail the paramonotonicity certificate.
    pub require_paramonotone: bool,
    pub max_rejections: usize,
}

impl GeneratorConfig {
    /// Entries uniform on `[0, 1)`, box `[1, 3]^n`, no filtering.
    pub fn new(n: usize, count: usize, seed: u64) -> Self {
        Self {
            n,
            count,
            seed,
            entry_low: 0.0,
            entry_high: 1.0,
            box_low: 1.0,
            box_high: 3.0,
            require_paramonotone: false,
            max_rejections: 10_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("dimension must be at least 1".into()));
        }
        if !(self.entry_low < self.entry_high) {
            return Err(Error::Config("entry_low must be below entry_high".into()));
        }
        if !(self.box_low < self.box_high) {
            return Err(Error::Config("box_low must be below box_high".into()));
        }
        Ok(())
    }
}

fn draw_instance<T: Scalar>(
    rng: &mut Xoshiro256StarStar,
    cfg: &GeneratorConfig,
    feasible: &BoxSet<T>,
) -> Result<AffineFractionalInstance<T>> {
    let n = cfg.n;
    let mut draw = |len: usize| -> Vec<T> {
        (0..len)
            .map(|_| T::lit(rng.uniform(cfg.entry_low, cfg.entry_high)))
            .collect()
    };
    let a = Matrix::new(n, n, draw(n * n))?;
    let b = Vector::new(draw(n))?;
    let a1 = Matrix::new(n, n, draw(n * n))?;
    let b1 = Vector::new(draw(n))?;
    let c = Vector::new(draw(n))?;
    let d = draw(1)[0];
    AffineFractionalInstance::new(a, b, a1, b1, c, d, feasible.clone())
}

/// Draws `config.count` instances from a single stream seeded by
/// `config.seed`. Rejected draws (nonpositive denominator, or failing the
/// paramonotonicity filter when enabled) are skipped and the stream continues.
pub fn generate_instances<T: Scalar>(config: &GeneratorConfig) -> Result<Vec<AffineFractionalInstance<T>>> {
    config.validate()?;
    let feasible = BoxSet::cube(config.n, T::lit(config.box_low), T::lit(config.box_high))?;
    let mut rng = Xoshiro256StarStar::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity(config.count);
    let mut rejections = 0usize;
    while out.len() < config.count {
        let accepted = match draw_instance(&mut rng, config, &feasible) {
            Ok(inst) => {
                if config.require_paramonotone
                    && !check_paramonotone(&inst, T::lit(monotonicity::DEFAULT_TOL))?.verdict
                {
                    None
                } else {
                    Some(inst)
                }
            }
            Err(Error::Field { .. }) => None,
            Err(e) => return Err(e),
        };
        match accepted {
            Some(inst) => out.push(inst),
            None => {
                rejections += 1;
                if rejections > config.max_rejections {
                    let tried = out.len() + rejections;
                    return Err(Error::Generation {
                        rejections,
                        acceptance_rate: out.len() as f64 / tried as f64,
                    });
                }
            }
        }
    }
    Ok(out)
}
