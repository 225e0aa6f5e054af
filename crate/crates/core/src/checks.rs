//! Named identity checks, each producing a [`CheckReport`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;

use crate::arith::partition_count;
use crate::bps::{calibrate_mpt, kkv_y1_check};
use crate::combinat::{
    class_of_sequence, enumerate_admissible, gbl_contribution_sum, is_pyramidal, BlowupEvaluator,
    BlowupValue, DEFAULT_MAX_DEPTH,
};
use crate::k3counts::{fiber_count, gathmann_check, gbl_series, lee_leung_n12, FiberCountInput};
use crate::modular::{f_series, quasimodular_check_f_g};
use crate::nl_stu::{harvey_moore_compare, yz_pipeline_check, DeltaZeroPolicy, HarveyMooreSign};
use crate::report::CheckReport;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Gathmann,
    LeeLeung,
    Quasimodular,
    Pyramidal,
    Cremona,
    KkvY1,
    MptConsistency,
    HarveyMoore,
    YzPipeline,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Gathmann,
        Suite::LeeLeung,
        Suite::Quasimodular,
        Suite::Pyramidal,
        Suite::Cremona,
        Suite::KkvY1,
        Suite::MptConsistency,
        Suite::HarveyMoore,
        Suite::YzPipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gathmann => "gathmann",
            Suite::LeeLeung => "lee-leung",
            Suite::Quasimodular => "quasimodular",
            Suite::Pyramidal => "pyramidal",
            Suite::Cremona => "cremona",
            Suite::KkvY1 => "kkv-y1",
            Suite::MptConsistency => "mpt-consistency",
            Suite::HarveyMoore => "harvey-moore",
            Suite::YzPipeline => "yz-pipeline",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown check suite `{s}`")))
    }
}

/// Knobs shared by all suites. `trunc` overrides each suite's default
/// window where the suite has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub trunc: Option<i64>,
    pub depth: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            trunc: None,
            depth: DEFAULT_MAX_DEPTH,
        }
    }
}

/// The coprime degree pairs exercised by the STU pipeline check.
pub const PIPELINE_PAIRS: [(i64, i64); 6] = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3)];

pub fn run(suite: Suite, config: &CheckConfig) -> Result<CheckReport> {
    let name = suite.name();
    match suite {
        Suite::Gathmann => {
            let r = gathmann_check();
            Ok(CheckReport::new(name, r.pass, r))
        }
        Suite::LeeLeung => lee_leung(name),
        Suite::Quasimodular => {
            let trunc = config.trunc.unwrap_or(14);
            let per_genus: Vec<bool> = (0..=4).map(|g| quasimodular_check_f_g(g, trunc)).collect();
            let pass = per_genus.iter().all(|&b| b);
            Ok(CheckReport::new(
                name,
                pass,
                json!({ "trunc": trunc, "genus_0_to_4": per_genus }),
            ))
        }
        Suite::Pyramidal => pyramidal(name),
        Suite::Cremona => cremona(name, config.depth),
        Suite::KkvY1 => {
            let p_max = config.trunc.unwrap_or(12);
            let p_max =
                u32::try_from(p_max).map_err(|_| Error::OutOfRange("trunc must be >= 0".into()))?;
            let pass = kkv_y1_check(p_max);
            Ok(CheckReport::new(name, pass, json!({ "p_max": p_max })))
        }
        Suite::MptConsistency => {
            let c = calibrate_mpt(3, 5)?;
            let pass = c.unsigned_matches != c.signed_matches && c.chosen.is_some();
            Ok(CheckReport::new(name, pass, c))
        }
        Suite::HarveyMoore => {
            let t = config.trunc.unwrap_or(8);
            let f = f_series(t * t);
            let corrected = harvey_moore_compare(&f, t, t, HarveyMooreSign::Corrected)?;
            let printed = harvey_moore_compare(&f, t, t, HarveyMooreSign::AsPrinted)?;
            let pass = corrected.agrees && !printed.agrees;
            Ok(CheckReport::new(
                name,
                pass,
                json!({ "corrected": corrected, "as_printed": printed }),
            ))
        }
        Suite::YzPipeline => pipeline(name),
    }
}

/// Runs every suite in order.
pub fn run_all(config: &CheckConfig) -> Result<Vec<CheckReport>> {
    Suite::ALL.into_iter().map(|s| run(s, config)).collect()
}

fn lee_leung(name: &str) -> Result<CheckReport> {
    let f1 = gbl_series(1, 14);
    let mut rows = Vec::new();
    let mut pass = true;
    for p in 1..=4u32 {
        let value = lee_leung_n12(p)?;
        let expected = f1.count(4 * p as i64 - 3) + f1.count(p as i64) * 2;
        pass &= value == expected;
        rows.push(json!({ "p": p, "n12": value.to_string(), "expected": expected.to_string() }));
    }
    Ok(CheckReport::new(name, pass, rows))
}

fn pyramidal(name: &str) -> Result<CheckReport> {
    let mut counts = Vec::new();
    let mut pass = true;
    for a in 1..=12usize {
        let count = enumerate_admissible(a)
            .iter()
            .filter(|s| is_pyramidal(s))
            .count();
        let expected = partition_count(a);
        pass &= expected == count.into();
        counts.push(json!({ "a": a, "pyramidal": count, "partitions": expected.to_string() }));
    }
    let mut sums = Vec::new();
    for g in 0..=2usize {
        let series = gbl_series(g, 7);
        for p in 0..=6usize {
            let brute = gbl_contribution_sum(g, p);
            let expected = series.count(p as i64);
            pass &= brute == expected;
            sums.push(json!({ "g": g, "p": p, "sum": brute.to_string() }));
        }
    }
    Ok(CheckReport::new(
        name,
        pass,
        json!({ "counts": counts, "contribution_sums": sums }),
    ))
}

fn cremona(name: &str, depth: usize) -> Result<CheckReport> {
    let mut evaluator = BlowupEvaluator::new(depth);
    let (mut checked, mut undecided, mut mismatched) = (0usize, 0usize, 0usize);
    for a in 1..=8 {
        for s in enumerate_admissible(a) {
            checked += 1;
            match evaluator.eval(&class_of_sequence(&s)) {
                BlowupValue::Undecided => undecided += 1,
                v => mismatched += usize::from((v == BlowupValue::One) != is_pyramidal(&s)),
            }
        }
    }
    let pass = undecided == 0 && mismatched == 0;
    Ok(CheckReport::new(
        name,
        pass,
        json!({ "depth": depth, "sequences": checked, "undecided": undecided, "mismatched": mismatched }),
    ))
}

fn pipeline(name: &str) -> Result<CheckReport> {
    let mut pass = true;
    let mut reports = Vec::new();
    let mut constants = Vec::new();
    for (d1, d2) in PIPELINE_PAIRS {
        let r = yz_pipeline_check(d1, d2, DeltaZeroPolicy::Include)?;
        pass &= r.pass;
        constants.push(r.calibration.clone());
        reports.push(r);
    }
    constants.dedup();
    pass &= constants.len() == 1;
    let k3_fibers = fiber_count(FiberCountInput {
        e_total: 24,
        e_genfiber: 0,
        e_base: 2,
    });
    let stu_fibers = fiber_count(FiberCountInput {
        e_total: -480,
        e_genfiber: 24,
        e_base: 2,
    });
    pass &= k3_fibers == 24 && stu_fibers.abs() == 528;
    Ok(CheckReport::new(
        name,
        pass,
        json!({
            "calibration_constant": constants.first().cloned().flatten(),
            "pairs": reports,
            "k3_singular_fibers": k3_fibers,
            "stu_singular_fibers": stu_fibers.abs(),
        }),
    ))
}
