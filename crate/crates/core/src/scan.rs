//! Parameter sweeps over `(d, g, r)` boxes.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{brill_noether_number, expected_gonality, Params, PARAM_MAX};
use crate::lattice::DivClass;
use crate::parallel::{map_ordered, Execution};
use crate::qform::DEFAULT_BOUND;
use crate::report::dec;
use crate::verifier::{
    compute_alpha, h1_normal_vanishes, theorem1_applicable, theorem3_applicable_with_bound,
    AlphaOptions, DerivedPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanFilter {
    #[default]
    All,
    /// Rows where the space-curve hypotheses hold (`r = 3` only).
    Thm1,
    /// Rows where the K3 gonality theorem applies.
    Thm3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub d: RangeInclusive<i64>,
    pub g: RangeInclusive<i64>,
    pub r: RangeInclusive<i64>,
    pub filter: ScanFilter,
    pub bound: u64,
    pub strict_a: bool,
}

impl ScanConfig {
    pub fn new(d: RangeInclusive<i64>, g: RangeInclusive<i64>, r: RangeInclusive<i64>) -> Result<Self> {
        let check = |name: &str, range: &RangeInclusive<i64>, min: i64| {
            if range.start() > range.end() {
                return Err(Error::InvalidParams(format!(
                    "{name} range {}..{} is empty or descending",
                    range.start(),
                    range.end()
                )));
            }
            if *range.start() < min || *range.end() > PARAM_MAX {
                return Err(Error::InvalidParams(format!(
                    "{name} range {}..{} must lie within {min}..{PARAM_MAX}",
                    range.start(),
                    range.end()
                )));
            }
            Ok(())
        };
        check("d", &d, 1)?;
        check("g", &g, 0)?;
        check("r", &r, 1)?;
        Ok(ScanConfig { d, g, r, filter: ScanFilter::All, bound: DEFAULT_BOUND, strict_a: false })
    }

    pub fn with_filter(mut self, filter: ScanFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn with_bound(mut self, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidParams("search bound must be >= 1".to_string()));
        }
        self.bound = bound;
        Ok(self)
    }

    pub fn with_strict_a(mut self, strict_a: bool) -> Self {
        self.strict_a = strict_a;
        self
    }

    /// Every triple in the box, ordered by `d`, then `g`, then `r`.
    pub fn triples(&self) -> Vec<Params> {
        let mut out = Vec::new();
        for d in self.d.clone() {
            for g in self.g.clone() {
                for r in self.r.clone() {
                    out.push(Params::new(d, g, r).expect("ranges validated at construction"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedFlag {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    #[serde(with = "dec")]
    pub d: i64,
    #[serde(with = "dec")]
    pub g: i64,
    #[serde(with = "dec")]
    pub r: i64,
    #[serde(with = "dec")]
    pub rho: i64,
    #[serde(with = "dec")]
    pub expected_gonality: i64,
    pub thm3_flags: Vec<NamedFlag>,
    pub thm3_ok: bool,
    /// Present exactly when the gonality theorem applies.
    #[serde(with = "dec::option", default)]
    pub alpha: Option<i128>,
    pub minimizers: Option<Vec<DivClass>>,
    /// `r = 3` only.
    pub h1_vanishes: Option<bool>,
    /// `r = 3` only.
    pub thm1_applicable: Option<bool>,
    pub derived_pairs: Option<Vec<DerivedPair>>,
}

impl ScanRow {
    pub fn params(&self) -> Result<Params> {
        Params::new(self.d, self.g, self.r)
    }
}

/// Computes the full row for one triple.
pub fn evaluate(p: &Params, bound: u64, strict_a: bool) -> Result<ScanRow> {
    let hypotheses = theorem3_applicable_with_bound(p, bound);
    let thm3_ok = hypotheses.ok();
    let (alpha, minimizers) = if thm3_ok {
        let opts = AlphaOptions { strict_a, enforce_hypotheses: true, bound: Some(bound) };
        let report = compute_alpha(p, opts)?;
        (report.alpha, Some(report.minimizers))
    } else {
        (None, None)
    };
    let (h1_vanishes, thm1_applicable, derived_pairs) = if p.r() == 3 {
        let thm1 = theorem1_applicable(p.d(), p.g());
        let ok = thm1.ok();
        (Some(h1_normal_vanishes(p.d(), p.g())), Some(ok), ok.then_some(thm1.derived))
    } else {
        (None, None, None)
    };
    Ok(ScanRow {
        d: p.d(),
        g: p.g(),
        r: p.r(),
        rho: brill_noether_number(p).value(),
        expected_gonality: expected_gonality(p),
        thm3_flags: hypotheses
            .flags
            .into_iter()
            .map(|f| NamedFlag { name: f.name, holds: f.holds })
            .collect(),
        thm3_ok,
        alpha,
        minimizers,
        h1_vanishes,
        thm1_applicable,
        derived_pairs,
    })
}

fn keep(row: &ScanRow, filter: ScanFilter) -> bool {
    match filter {
        ScanFilter::All => true,
        ScanFilter::Thm1 => row.thm1_applicable == Some(true),
        ScanFilter::Thm3 => row.thm3_ok,
    }
}

/// Evaluates every triple of the box and keeps the rows passing the filter.
///
/// Rows come back in `(d, g, r)` order under either execution mode; the first
/// error in that order is returned.
pub fn run_scan(cfg: &ScanConfig, exec: Execution) -> Result<Vec<ScanRow>> {
    let triples = cfg.triples();
    let rows = map_ordered(&triples, exec, |p| evaluate(p, cfg.bound, cfg.strict_a));
    let mut out = Vec::new();
    for row in rows {
        let row = row?;
        if keep(&row, cfg.filter) {
            out.push(row);
        }
    }
    Ok(out)
}

/// Recomputes a row from its parameters and compares every field.
pub fn reverify(row: &ScanRow, bound: u64, strict_a: bool) -> Result<bool> {
    Ok(evaluate(&row.params()?, bound, strict_a)? == *row)
}
