use std::time::Duration;

use medial::fpgroup::DEFAULT_MAX_COSETS;
use medial::graphsym::{SearchLimits, DEFAULT_MAX_VERTICES};
use medial::matgroup::DEFAULT_MAX_ELEMENTS;
use medial::polytope::BuildLimits;

/// Effective limits after merging defaults, the config file and flags.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub max_cosets: usize,
    pub max_elements: usize,
    pub max_vertices: usize,
    /// Seconds allowed for each automorphism search.
    pub time_budget: Option<f64>,
    pub jobs: usize,
    pub timing: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_cosets: DEFAULT_MAX_COSETS,
            max_elements: DEFAULT_MAX_ELEMENTS,
            max_vertices: DEFAULT_MAX_VERTICES,
            time_budget: None,
            jobs: 1,
            timing: false,
        }
    }
}

impl Settings {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_config(&mut self, text: &str) -> Result<(), String> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            let bad = |what: &str| format!("config line {}: {key} needs {what}, got {value:?}", i + 1);
            let count = || value.parse::<usize>().ok().filter(|&v| v > 0).ok_or_else(|| bad("a positive integer"));
            match key.as_str() {
                "max-cosets" => self.max_cosets = count()?,
                "max-elements" => self.max_elements = count()?,
                "max-vertices" => self.max_vertices = count()?,
                "jobs" => self.jobs = count()?,
                "time-budget" => {
                    let secs = value.parse::<f64>().ok().filter(|&v| v > 0.0).ok_or_else(|| bad("positive seconds"))?;
                    self.time_budget = Some(secs);
                }
                "timing" => self.timing = value.parse().map_err(|_| bad("true or false"))?,
                _ => return Err(format!("config line {}: unknown key {key:?}", i + 1)),
            }
        }
        Ok(())
    }

    pub fn build_limits(&self) -> BuildLimits {
        BuildLimits { max_cosets: self.max_cosets, max_elements: self.max_elements }
    }

    /// Search limits with the deadline starting now.
    pub fn search_limits(&self) -> SearchLimits {
        let limits = SearchLimits::default().with_max_vertices(self.max_vertices);
        match self.time_budget {
            Some(s) => limits.with_time_budget(Duration::from_secs_f64(s)),
            None => limits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let mut s = Settings::default();
        s.apply_config("# limits\nmax_cosets = 500\ntime-budget=2.5\n\njobs = 3 # threads\n").unwrap();
        assert_eq!(s.max_cosets, 500);
        assert_eq!(s.time_budget, Some(2.5));
        assert_eq!(s.jobs, 3);
        assert!(s.apply_config("max-cosets = 0").is_err());
        assert!(s.apply_config("colour = red").is_err());
        assert!(s.apply_config("no equals sign").is_err());
    }
}
