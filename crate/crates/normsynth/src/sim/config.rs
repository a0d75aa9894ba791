use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Real;

/// Parameters of the simulated society and of the Monte-Carlo evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SocietyConfig {
    /// Number of agents; must be divisible by `num_groups`.
    pub num_agents: usize,
    /// Number of equally sized wealth groups.
    pub num_groups: usize,
    /// Interest applied to the collected taxes before redistribution.
    pub invest_rate: Real,
    /// Probability that an agent is a tax evader (sampled once per path).
    pub evader_prob: Real,
    /// Lower bound of the uniform initial wealth distribution.
    pub wealth_init_low: Real,
    /// Upper bound of the uniform initial wealth distribution.
    pub wealth_init_high: Real,
    /// Number of simulation steps per path.
    pub path_length: usize,
    /// Number of Monte-Carlo paths averaged per objective evaluation.
    pub num_samples: usize,
}

impl Default for SocietyConfig {
    fn default() -> Self {
        SocietyConfig {
            num_agents: 200,
            num_groups: 5,
            invest_rate: 0.05,
            evader_prob: 0.05,
            wealth_init_low: 0.0,
            wealth_init_high: 100.0,
            path_length: 10,
            num_samples: 10,
        }
    }
}

impl SocietyConfig {
    /// Validates every bound; returns a configuration error naming the first
    /// violated one.
    pub fn validate(&self) -> Result<()> {
        if self.num_groups == 0 {
            return Err(Error::Config("num_groups must be at least 1".into()));
        }
        if self.num_agents == 0 {
            return Err(Error::Config("num_agents must be at least 1".into()));
        }
        if self.num_agents % self.num_groups != 0 {
            return Err(Error::Config(format!(
                "num_agents ({}) must be divisible by num_groups ({})",
                self.num_agents, self.num_groups
            )));
        }
        if !self.invest_rate.is_finite() || self.invest_rate < 0.0 {
            return Err(Error::Config(format!(
                "invest_rate must be finite and >= 0, got {}",
                self.invest_rate
            )));
        }
        if !self.evader_prob.is_finite() || !(0.0..=1.0).contains(&self.evader_prob) {
            return Err(Error::Config(format!(
                "evader_prob must lie in [0, 1], got {}",
                self.evader_prob
            )));
        }
        if !self.wealth_init_low.is_finite() || !self.wealth_init_high.is_finite() {
            return Err(Error::Config("initial wealth bounds must be finite".into()));
        }
        if self.wealth_init_low < 0.0 {
            return Err(Error::Config(format!(
                "wealth_init_low must be >= 0, got {}",
                self.wealth_init_low
            )));
        }
        if self.wealth_init_low > self.wealth_init_high {
            return Err(Error::Config(format!(
                "wealth_init_low ({}) must not exceed wealth_init_high ({})",
                self.wealth_init_low, self.wealth_init_high
            )));
        }
        if self.path_length == 0 {
            return Err(Error::Config("path_length must be at least 1".into()));
        }
        if self.num_samples == 0 {
            return Err(Error::Config("num_samples must be at least 1".into()));
        }
        Ok(())
    }

    /// Agents per wealth group.
    pub fn group_size(&self) -> usize {
        self.num_agents / self.num_groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = SocietyConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.group_size(), 40);
    }

    #[test]
    fn divisibility_is_enforced() {
        let cfg = SocietyConfig {
            num_agents: 201,
            ..SocietyConfig::default()
        };
        let err = cfg.validate().unwrap_err();
        assert!(matches!(err, Error::Config(_)), "got {err:?}");
        assert!(err.to_string().contains("divisible"));
    }

    #[test]
    fn zero_path_length_is_rejected() {
        let cfg = SocietyConfig {
            path_length: 0,
            ..SocietyConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn degenerate_wealth_range_is_allowed() {
        // low == high yields an all-equal society (used by the Gini-zero case).
        let cfg = SocietyConfig {
            wealth_init_low: 50.0,
            wealth_init_high: 50.0,
            ..SocietyConfig::default()
        };
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn inverted_wealth_range_is_rejected() {
        let cfg = SocietyConfig {
            wealth_init_low: 60.0,
            wealth_init_high: 50.0,
            ..SocietyConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn evader_prob_bounds_are_enforced() {
        for bad in [-0.1, 1.1, Real::NAN] {
            let cfg = SocietyConfig {
                evader_prob: bad,
                ..SocietyConfig::default()
            };
            assert!(cfg.validate().is_err(), "evader_prob {bad} accepted");
        }
    }
}
