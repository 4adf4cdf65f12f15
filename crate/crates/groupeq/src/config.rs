//! `groupeq.conf`: `key = value` lines, `#` comments.
//!
//! Looked up at `--config`, then `$GROUPEQ_CONFIG`, then `./groupeq.conf`.
//! Command-line flags override the file.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use groupeq_core::Caps;

use crate::formats::content_lines;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub caps: Caps,
    /// Primes reported by `analyze-system`.
    pub primes: Vec<u64>,
    pub format: Format,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            caps: Caps::default(),
            primes: vec![2, 3, 5, 7, 11, 13],
            format: Format::Text,
            jobs: 1,
            seed: 0,
        }
    }
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(key: &str, v: &str) -> anyhow::Result<T> {
    let n: T = v.parse().map_err(|_| anyhow!("`{key}`: `{v}` is not a number"))?;
    if n <= T::default() {
        bail!("`{key}` must be positive");
    }
    Ok(n)
}

pub fn parse_primes(v: &str) -> anyhow::Result<Vec<u64>> {
    v.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let p: u64 = t.trim().parse().map_err(|_| anyhow!("`{t}` is not a number"))?;
            if !groupeq_core::arith::is_prime(p) {
                bail!("{p} is not prime");
            }
            Ok(p)
        })
        .collect()
}

impl Config {
    pub fn set(&mut self, key: &str, v: &str) -> anyhow::Result<()> {
        match key {
            "caps.group_order" => self.caps.group_order = positive(key, v)?,
            "caps.wreath_order" => self.caps.wreath_order = positive(key, v)?,
            "caps.subgroup_order" => self.caps.subgroup_order = positive(key, v)?,
            "caps.isomorphism_order" => self.caps.isomorphism_order = positive(key, v)?,
            "caps.brute_force_work" => self.caps.brute_force_work = positive(key, v)?,
            "caps.enumeration_order" => self.caps.enumeration_order = positive(key, v)?,
            "primes" => self.primes = parse_primes(v)?,
            "format" => {
                self.format = match v {
                    "text" => Format::Text,
                    "structured" => Format::Structured,
                    _ => bail!("`format` must be `text` or `structured`"),
                }
            }
            "jobs" => self.jobs = positive(key, v)?,
            "seed" => self.seed = v.parse().map_err(|_| anyhow!("`seed`: `{v}` is not a number"))?,
            _ => bail!("unknown key `{key}`"),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> anyhow::Result<Config> {
        let mut c = Config::default();
        for (ln, l) in content_lines(text) {
            let (k, v) = l
                .split_once('=')
                .ok_or_else(|| anyhow!("line {ln}: expected key = value"))?;
            c.set(k.trim(), v.trim()).with_context(|| format!("line {ln}"))?;
        }
        Ok(c)
    }

    /// The file named by `explicit`, else `$GROUPEQ_CONFIG`, else
    /// `groupeq.conf` in the working directory if present, else defaults.
    pub fn load(explicit: Option<&Path>) -> anyhow::Result<Config> {
        let path: Option<PathBuf> = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => match std::env::var_os("GROUPEQ_CONFIG") {
                Some(p) => Some(PathBuf::from(p)),
                None => Some(PathBuf::from("groupeq.conf")).filter(|p| p.is_file()),
            },
        };
        match path {
            None => Ok(Config::default()),
            Some(p) => {
                let text = std::fs::read_to_string(&p).with_context(|| format!("config {}", p.display()))?;
                Config::parse(&text).with_context(|| format!("config {}", p.display()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_errors() {
        let c =
            Config::parse("# caps\ncaps.group_order = 100\nprimes=2,3\nformat = structured\njobs=4\nseed=9\n").unwrap();
        assert_eq!(c.caps.group_order, 100);
        assert_eq!(c.primes, [2, 3]);
        assert_eq!((c.format, c.jobs, c.seed), (Format::Structured, 4, 9));
        assert!(Config::parse("jobs=0\n").is_err());
        assert!(Config::parse("caps.group_order=-1\n").is_err());
        assert!(Config::parse("primes=4\n").is_err());
        assert!(Config::parse("colour=blue\n").is_err());
        assert!(Config::parse("nonsense\n").is_err());
    }
}
