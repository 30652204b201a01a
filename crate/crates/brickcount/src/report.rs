//! Serializable reports and their table, CSV and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use brickcount_core::bounds::{self, BoundKind, BoundReport, Method, Rounding, Witness};
use brickcount_core::tape::{DecodeOutcome, Tape};
use brickcount_core::{BrickShape, CountLedger, Orientation, Placement};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Fields that legitimately differ between identical runs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Metadata {
    pub elapsed_seconds: f64,
    pub workers: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    pub total: u64,
    /// Keyed by height.
    pub by_height: BTreeMap<u32, u64>,
    pub anchored: u64,
    pub node_visits: u64,
}

impl From<&CountLedger> for CountRow {
    fn from(l: &CountLedger) -> Self {
        CountRow { n: l.n, total: l.total, by_height: l.by_height.clone(), anchored: l.anchored, node_visits: l.node_visits }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BottleneckRow {
    pub n: usize,
    pub single_top: u64,
    pub bottleneck_free: u64,
    pub node_visits: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CountReport {
    pub shape: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rows: Vec<CountRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub bottleneck: Vec<BottleneckRow>,
    pub metadata: Metadata,
}

impl CountReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => self.csv(),
            Format::Table => self.table(),
        }
    }

    fn max_height(&self) -> u32 {
        self.rows.iter().flat_map(|r| r.by_height.keys().copied()).max().unwrap_or(0)
    }

    fn csv(&self) -> String {
        let mut s = String::new();
        if !self.rows.is_empty() {
            let hmax = self.max_height();
            s.push('n');
            for m in 1..=hmax {
                let _ = write!(s, ",m={m}");
            }
            s.push_str(",T,a\n");
            for r in &self.rows {
                let _ = write!(s, "{}", r.n);
                for m in 1..=hmax {
                    match r.by_height.get(&m) {
                        Some(v) => {
                            let _ = write!(s, ",{v}");
                        }
                        None => s.push(','),
                    }
                }
                let _ = writeln!(s, ",{},{}", r.total, r.anchored);
            }
        }
        if !self.bottleneck.is_empty() {
            s.push_str("n,b,c\n");
            for r in &self.bottleneck {
                let _ = writeln!(s, "{},{},{}", r.n, r.single_top, r.bottleneck_free);
            }
        }
        s
    }

    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "shape {}", self.shape);
        if !self.rows.is_empty() {
            let _ = writeln!(s, "\n{:>3} {:>14} {:>14}", "n", "T(n)", "a_n");
            for r in &self.rows {
                let _ = writeln!(s, "{:>3} {:>14} {:>14}", r.n, r.total, r.anchored);
            }
            let hmax = self.max_height();
            let _ = write!(s, "\n{:>8}", "H(n,m)");
            for m in 1..=hmax {
                let _ = write!(s, " {:>12}", format!("m={m}"));
            }
            s.push('\n');
            for r in &self.rows {
                let _ = write!(s, "{:>8}", format!("n={}", r.n));
                for m in 1..=hmax {
                    let cell = r.by_height.get(&m).map(|v| v.to_string()).unwrap_or_default();
                    let _ = write!(s, " {cell:>12}");
                }
                s.push('\n');
            }
        }
        if !self.bottleneck.is_empty() {
            let _ = writeln!(s, "\n{:>3} {:>14} {:>14}", "n", "b_n", "c_n");
            for r in &self.bottleneck {
                let _ = writeln!(s, "{:>3} {:>14} {:>14}", r.n, r.single_top, r.bottleneck_free);
            }
        }
        let _ = writeln!(s, "\nelapsed {:.2}s, workers {}", self.metadata.elapsed_seconds, self.metadata.workers);
        s
    }
}

/// One bound as emitted by `bounds`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoundRecord {
    pub kind: String,
    pub method: String,
    pub params: serde_json::Value,
    /// Two decimals, rounded outward.
    pub value: String,
    pub rounding: String,
    pub witness: serde_json::Value,
}

impl BoundRecord {
    pub fn from_report(r: &BoundReport) -> Self {
        BoundRecord {
            kind: kind_name(r.kind).into(),
            method: r.method.tag().into(),
            params: method_params(&r.method),
            value: r.value_string(),
            rounding: rounding_name(r.rounding).into(),
            witness: witness_json(&r.witness),
        }
    }
}

fn kind_name(k: BoundKind) -> &'static str {
    match k {
        BoundKind::Upper => "upper",
        BoundKind::Lower => "lower",
        BoundKind::Exact => "exact",
        BoundKind::Estimate => "estimate",
    }
}

fn rounding_name(r: Rounding) -> &'static str {
    match r {
        Rounding::Up => "up",
        Rounding::Down => "down",
        Rounding::Exact => "exact",
        Rounding::Nearest => "nearest",
    }
}

fn method_params(m: &Method) -> serde_json::Value {
    use serde_json::json;
    match m {
        Method::CrudeUpper | Method::CrudeLower => json!({}),
        Method::Partition { top, reduced } => json!({ "top": top, "reduced": reduced }),
        Method::BottleneckSum { terms } => json!({ "terms": terms }),
        Method::BottleneckTail { terms, growth } => json!({ "terms": terms, "growth": growth }),
        Method::LogSlope { n } | Method::SuccessiveRatio { n } => json!({ "n": n }),
    }
}

fn witness_json(w: &Witness) -> serde_json::Value {
    use serde_json::json;
    match w {
        Witness::Value(v) => json!({ "exact": v.to_string(), "approx": bounds::approx_value(v) }),
        Witness::Root { poly, root, at, value } => json!({
            "polynomial": poly.to_string(),
            "root_low": bounds::approx_value(&root.lo),
            "root_high": bounds::approx_value(&root.hi),
            "root_width": bounds::approx_value(&root.width()),
            "evaluated_at": bounds::approx_value(at),
            "exact_bound": bounds::approx_value(value),
        }),
        Witness::Counts { cs, root } => json!({
            "counts": cs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "root_low": bounds::approx_value(&root.lo),
            "root_high": bounds::approx_value(&root.hi),
        }),
        Witness::Data(d) => json!({ "data": d }),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PartitionNote {
    pub tuple: String,
    pub witness_found: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoundsReport {
    pub shape: String,
    pub bounds: Vec<BoundRecord>,
    /// Best rigorous `[lower, upper]`.
    pub interval: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub partitions: Vec<PartitionNote>,
    pub metadata: Metadata,
}

fn two_decimals(h: i64) -> String {
    let sign = if h < 0 { "-" } else { "" };
    format!("{sign}{}.{:02}", h.unsigned_abs() / 100, h.unsigned_abs() % 100)
}

impl BoundsReport {
    pub fn new(shape: BrickShape, reports: &[BoundReport], partitions: Vec<PartitionNote>, metadata: Metadata) -> Self {
        BoundsReport {
            shape: shape.to_string(),
            bounds: reports.iter().map(BoundRecord::from_report).collect(),
            interval: bounds::interval(reports).map(|(lo, hi)| [two_decimals(lo), two_decimals(hi)]),
            partitions,
            metadata,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut s = String::from("kind,method,params,value,rounding\n");
                for b in &self.bounds {
                    let params = b.params.to_string().replace('"', "\"\"");
                    let _ = writeln!(s, "{},{},\"{}\",{},{}", b.kind, b.method, params, b.value, b.rounding);
                }
                s
            }
            Format::Table => {
                let mut s = format!("shape {}\n\n", self.shape);
                let _ = writeln!(s, "{:<9} {:<17} {:>10}  parameters", "kind", "method", "value");
                for b in &self.bounds {
                    let params = if b.params.as_object().is_some_and(|o| o.is_empty()) { String::new() } else { b.params.to_string() };
                    let _ = writeln!(s, "{:<9} {:<17} {:>10}  {}", b.kind, b.method, b.value, params);
                }
                if let Some([lo, hi]) = &self.interval {
                    let _ = writeln!(s, "\n{lo} <= h <= {hi}");
                }
                for p in &self.partitions {
                    let found = if p.witness_found { "partition witness found" } else { "no partition witness found" };
                    let _ = writeln!(s, "tuple {}: {found}", p.tuple);
                }
                s
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BrickRecord {
    pub x: i32,
    pub y: i32,
    pub z: i32,
    pub orientation: String,
}

impl From<&Placement> for BrickRecord {
    fn from(p: &Placement) -> Self {
        let orientation = match p.rot {
            Orientation::Axis => "axis",
            Orientation::Rotated => "rotated",
        };
        BrickRecord { x: p.x, y: p.y, z: p.z, orientation: orientation.into() }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TapeReport {
    pub shape: String,
    pub n: usize,
    pub tape: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub terminal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub terminal_number: Option<u8>,
    /// Entries read before the failure.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub position: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub bricks: Vec<BrickRecord>,
}

impl TapeReport {
    pub fn new(tape: &Tape, outcome: &DecodeOutcome) -> Self {
        let mut r = TapeReport {
            shape: tape.shape().to_string(),
            n: tape.n(),
            tape: tape.to_string(),
            ok: false,
            terminal: None,
            terminal_number: None,
            position: None,
            bricks: Vec::new(),
        };
        match outcome {
            DecodeOutcome::Building(c) => {
                r.ok = true;
                r.bricks = c.placements().iter().map(BrickRecord::from).collect();
            }
            DecodeOutcome::Fail { state, position } => {
                r.terminal = Some(state.name().into());
                r.terminal_number = Some(state.number());
                r.position = Some(*position);
            }
        }
        r
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                if self.ok {
                    let mut s = String::from("brick,x,y,z,orientation\n");
                    for (i, b) in self.bricks.iter().enumerate() {
                        let _ = writeln!(s, "{},{},{},{},{}", i + 1, b.x, b.y, b.z, b.orientation);
                    }
                    s
                } else {
                    format!(
                        "terminal,number,position\n{},{},{}\n",
                        self.terminal.as_deref().unwrap_or(""),
                        self.terminal_number.unwrap_or(0),
                        self.position.unwrap_or(0)
                    )
                }
            }
            Format::Table => {
                if self.ok {
                    let mut s = format!("OK: {} bricks\n", self.bricks.len());
                    for (i, b) in self.bricks.iter().enumerate() {
                        let _ = writeln!(s, "  block {:>2}: ({}, {}, {}) {}", i + 1, b.x, b.y, b.z, b.orientation);
                    }
                    s
                } else {
                    format!(
                        "FAIL: {} (terminal state {}) after reading {} entries\n",
                        self.terminal.as_deref().unwrap_or(""),
                        self.terminal_number.unwrap_or(0),
                        self.position.unwrap_or(0)
                    )
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Desk,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub tier: Tier,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerifyReport {
    pub tier: Tier,
    pub checks: Vec<CheckRecord>,
    pub passed: usize,
    pub failed: usize,
    pub metadata: Metadata,
}

impl VerifyReport {
    pub fn new(tier: Tier, checks: Vec<CheckRecord>, metadata: Metadata) -> Self {
        let failed = checks.iter().filter(|c| c.status == Status::Fail).count();
        VerifyReport { tier, passed: checks.len() - failed, failed, checks, metadata }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut s = String::from("name,tier,status,detail\n");
                for c in &self.checks {
                    let _ = writeln!(
                        s,
                        "{},{},{},\"{}\"",
                        c.name,
                        tier_name(c.tier),
                        status_name(c.status),
                        c.detail.replace('"', "\"\"")
                    );
                }
                s
            }
            Format::Table => {
                let mut s = String::new();
                for c in &self.checks {
                    let _ = writeln!(s, "{:<4} {:<34} {}", status_name(c.status).to_uppercase(), c.name, c.detail);
                }
                let _ = writeln!(s, "\n{} passed, {} failed ({} tier)", self.passed, self.failed, tier_name(self.tier));
                for c in self.failures() {
                    let _ = writeln!(s, "failed: {}", c.name);
                }
                s
            }
        }
    }
}

pub fn tier_name(t: Tier) -> &'static str {
    match t {
        Tier::Desk => "desk",
        Tier::Extended => "extended",
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CountReport {
        let mut h = BTreeMap::new();
        h.insert(2, 500);
        h.insert(3, 1060);
        CountReport {
            shape: "2x4".into(),
            rows: vec![CountRow { n: 3, total: 1560, by_height: h, anchored: 2596, node_visits: 10 }],
            bottleneck: Vec::new(),
            metadata: Metadata { elapsed_seconds: 0.5, workers: 2 },
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: CountReport = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().render(Format::Csv), "n,m=1,m=2,m=3,T,a\n3,,500,1060,1560,2596\n");
    }

    #[test]
    fn hundredths() {
        assert_eq!(two_decimals(20382), "203.82");
        assert_eq!(two_decimals(100), "1.00");
        assert_eq!(two_decimals(-5), "-0.05");
    }
}
