//! λ-schedules: which sites of which circuit layer get `H·S` instead of `H`.
//!
//! A schedule is stored from the point of view of the *virtual* chain read sideways:
//! `rows[layer][q]` says whether virtual qubit `q` (0-based) gets an `S` at virtual
//! step `layer + 1`. Rows repeat cyclically.
//!
//! The built-in presets are written in physical coordinates `λ(i, t)` where `i` is the
//! site along the chain and `t = 1..k` the circuit time step. Reading the circuit
//! sideways turns site `i` into virtual step `i` and time step `t` into virtual qubit
//! `k - t` (0-based): the last layer, which sits next to the measurements, is virtual
//! qubit 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaSchedule {
    k: usize,
    rows: Vec<Vec<bool>>,
}

impl LambdaSchedule {
    pub fn new(k: usize, rows: Vec<Vec<bool>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("schedule needs k >= 1".into()));
        }
        if rows.is_empty() {
            return Err(Error::Domain("schedule needs at least one layer".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != k) {
            return Err(Error::Domain(format!(
                "schedule row has {} entries, expected k = {k}",
                r.len()
            )));
        }
        Ok(LambdaSchedule { k, rows })
    }

    pub fn uniform(k: usize, with_s: bool) -> Result<Self> {
        Self::new(k, vec![vec![with_s; k]])
    }

    pub fn all_ones(k: usize) -> Result<Self> {
        Self::uniform(k, true)
    }

    pub fn all_zeros(k: usize) -> Result<Self> {
        Self::uniform(k, false)
    }

    /// Builds a schedule from a physical-coordinate rule `λ(i, t)` with a repeat length in `i`.
    pub fn from_physical_rule(
        k: usize,
        site_period: usize,
        rule: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let rows = (1..=site_period.max(1))
            .map(|i| (0..k).map(|q| rule(i, k - q)).collect())
            .collect();
        Self::new(k, rows)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn period_t(&self) -> usize {
        self.rows.len()
    }

    /// Row for virtual step `layer` (1-based, applied cyclically).
    pub fn layer(&self, layer: usize) -> &[bool] {
        assert!(layer >= 1, "layers are numbered from 1");
        &self.rows[(layer - 1) % self.rows.len()]
    }

    pub fn entry(&self, layer: usize, qubit: usize) -> bool {
        self.layer(layer)[qubit]
    }

    /// `λ(i, t)` in physical coordinates: site `i` (1-based), time step `t` in `1..=k`.
    pub fn physical(&self, site: usize, time_step: usize) -> bool {
        assert!((1..=self.k).contains(&time_step));
        self.entry(site, self.k - time_step)
    }

    /// True when every layer is identical (a single Floquet layer).
    pub fn is_time_independent(&self) -> bool {
        self.rows.iter().all(|r| r == &self.rows[0])
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.k, self.rows.len());
        for r in &self.rows {
            s.extend(r.iter().map(|&b| if b { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }
}

impl FromStr for LambdaSchedule {
    type Err = Error;

    /// Plain-text format: `k period_t` on the first line, then `period_t` lines of `k`
    /// characters from `{0,1}`. Blank lines and `#` comments are ignored.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty schedule".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [k, period_t] = nums[..] else {
            return Err(Error::Parse("header must be \"k period_t\"".into()));
        };
        let rows = lines
            .map(|l| {
                l.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Parse(format!("bad schedule character {c:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != period_t {
            return Err(Error::Parse(format!(
                "header promises {period_t} rows, found {}",
                rows.len()
            )));
        }
        LambdaSchedule::new(k, rows)
    }
}

impl fmt::Display for LambdaSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The ten λ families compared in the circuit-family tables, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

impl Preset {
    pub const ALL: [Preset; 10] = [
        Preset::A,
        Preset::B,
        Preset::C,
        Preset::D,
        Preset::E,
        Preset::F,
        Preset::G,
        Preset::H,
        Preset::I,
        Preset::J,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::A => "a",
            Preset::B => "b",
            Preset::C => "c",
            Preset::D => "d",
            Preset::E => "e",
            Preset::F => "f",
            Preset::G => "g",
            Preset::H => "h",
            Preset::I => "i",
            Preset::J => "j",
        }
    }

    pub fn rule_text(self) -> &'static str {
        match self {
            Preset::A => "lambda(i,t) = 1",
            Preset::B => "lambda(i,t) = 0",
            Preset::C => "lambda(i,t) = [k - t = 1 mod 2]",
            Preset::D => "lambda(i,t) = [k - t = 1 mod 4]",
            Preset::E => "lambda(i,t) = [i = 1 mod 2]",
            Preset::F => "lambda(i,t) = [i = 1 mod 4]",
            Preset::G => "lambda(i,t) = [i = 1 mod 16]",
            Preset::H => "lambda(i,t) = [i = 1 mod 2 and k - t = 0 mod 2]",
            Preset::I => "lambda(i,t) = [t = 2]",
            Preset::J => "lambda(i,t) = [t = 1]",
        }
    }

    /// Repeat length of the rule along the chain.
    pub fn site_period(self) -> usize {
        match self {
            Preset::E | Preset::H => 2,
            Preset::F => 4,
            Preset::G => 16,
            _ => 1,
        }
    }

    pub fn lambda(self, k: usize, site: usize, t: usize) -> bool {
        match self {
            Preset::A => true,
            Preset::B => false,
            Preset::C => (k - t) % 2 == 1,
            Preset::D => (k - t) % 4 == 1,
            Preset::E => site % 2 == 1,
            Preset::F => site % 4 == 1,
            Preset::G => site % 16 == 1,
            Preset::H => site % 2 == 1 && (k - t).is_multiple_of(2),
            Preset::I => t == 2,
            Preset::J => t == 1,
        }
    }

    pub fn schedule(self, k: usize) -> Result<LambdaSchedule> {
        LambdaSchedule::from_physical_rule(k, self.site_period(), |i, t| self.lambda(k, i, t))
    }

    pub fn explain(self) -> String {
        format!(
            "preset {}: {}; i = site along the chain (virtual step), t = 1..k circuit layer \
             (virtual qubit k - t, counted from 0); S applied where lambda = 1; \
             repeats every {} site(s)",
            self.name(),
            self.rule_text(),
            self.site_period()
        )
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" | "all-ones" | "ones" => Ok(Preset::A),
            "b" | "all-zeros" | "zeros" => Ok(Preset::B),
            "c" => Ok(Preset::C),
            "d" => Ok(Preset::D),
            "e" => Ok(Preset::E),
            "f" => Ok(Preset::F),
            "g" => Ok(Preset::G),
            "h" => Ok(Preset::H),
            "i" => Ok(Preset::I),
            "j" => Ok(Preset::J),
            other => Err(Error::Parse(format!("unknown preset {other:?}"))),
        }
    }
}
