//! Seeded rejection sampler for random standard-form states.
//!
//! Candidates are drawn as `a, b ~ U[1, a_max]`, `c1 ~ U[0, sqrt(ab))`,
//! `c2 ~ U(-c1, c1]` and rejected when unphysical (or, optionally, when
//! separable). The symmetric and balanced filters are constructive: they set
//! `b = a` or `c2 = -c1` on the candidate before the physicality test.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gstate::StandardForm;
use crate::measures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    #[default]
    Generic,
    /// `a = b`
    Symmetric,
    /// `c1 = -c2`
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub a_max: f64,
    pub entangled_only: bool,
    pub symmetry: Symmetry,
    pub max_attempts: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { a_max: 5.0, entangled_only: false, symmetry: Symmetry::Generic, max_attempts: 100_000 }
    }
}

impl SamplerConfig {
    pub fn entangled(mut self) -> Self {
        self.entangled_only = true;
        self
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    /// Human-readable description written into output metadata.
    pub fn describe(&self) -> String {
        let filter = match self.symmetry {
            Symmetry::Generic => "",
            Symmetry::Symmetric => "; b := a",
            Symmetry::Balanced => "; c2 := -c1",
        };
        format!(
            "a,b~U[1,{}]; c1~U[0,sqrt(ab)); c2~U(-c1,c1]{}; reject unphysical{}",
            self.a_max,
            filter,
            if self.entangled_only { " and separable" } else { "" }
        )
    }

    fn validate(&self) -> Result<()> {
        if !(self.a_max >= 1.0) || !self.a_max.is_finite() {
            return Err(Error::InvalidArgument(format!("a_max must be >= 1, got {}", self.a_max)));
        }
        if self.max_attempts == 0 {
            return Err(Error::InvalidArgument("rejection budget must be positive".into()));
        }
        Ok(())
    }
}

/// Owns its generator; independent instances with distinct seeds may run on
/// separate threads.
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha8Rng,
    config: SamplerConfig,
}

impl StateSampler {
    pub fn new(seed: u64, config: SamplerConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { rng: ChaCha8Rng::seed_from_u64(seed), config })
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.config
    }

    pub fn sample(&mut self) -> Result<StandardForm> {
        let cfg = self.config;
        for _ in 0..cfg.max_attempts {
            let a = self.uniform(1.0, cfg.a_max);
            let mut b = self.uniform(1.0, cfg.a_max);
            if cfg.symmetry == Symmetry::Symmetric {
                b = a;
            }
            let c1 = self.uniform(0.0, (a * b).sqrt());
            // (-c1, c1]
            let mut c2 = c1 - self.uniform(0.0, 2.0 * c1);
            if cfg.symmetry == Symmetry::Balanced {
                c2 = -c1;
            }
            let candidate = StandardForm::normalized(a, b, c1, c2);
            if !candidate.is_physical_candidate() {
                continue;
            }
            if cfg.entangled_only && measures::is_separable(&candidate) {
                continue;
            }
            return Ok(candidate);
        }
        Err(Error::SamplerBudget { attempts: cfg.max_attempts })
    }

    pub fn sample_n(&mut self, n: usize) -> Result<Vec<StandardForm>> {
        (0..n).map(|_| self.sample()).collect()
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi > lo {
            self.rng.gen_range(lo..hi)
        } else {
            lo
        }
    }
}

/// One state from a fresh sampler seeded with `seed`.
pub fn random_state(seed: u64, config: &SamplerConfig) -> Result<StandardForm> {
    StateSampler::new(seed, *config)?.sample()
}
