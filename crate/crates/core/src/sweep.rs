//! Parameter sweeps, branch-crossing detection and CSV output.
//!
//! A sudden change of LQU (or LQFI) along a smooth parameter path is a point
//! where the active branch switches, i.e. a root of `branch0 - branch1`. The
//! measure itself stays continuous and acquires a kink there. Crossings are
//! bracketed on a uniform grid and refined by bisection.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::closed_form::{Branch, CorrelationBranches};
use crate::thermal::{gibbs_state, HamiltonianParams, Temperature};
use crate::{Error, Result};

pub const DEFAULT_POINTS: usize = 400;
pub const DEFAULT_T_LOW: f64 = 0.01;
/// Refined brackets are no wider than `BRACKET_TOL * max(1, |x|)`.
pub const BRACKET_TOL: f64 = 1e-10;
pub const MAX_BISECTIONS: usize = 200;
/// Grid nodes with `|branch0 - branch1|` below this are tangency candidates.
pub const TOUCH_TOL: f64 = 1e-13;

pub const CSV_HEADER: &str = "x,U0,U1,U,F0,F1,F,active_U,active_F";

/// Swept quantity: the temperature or one of the ten couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    T,
    Param(&'static str),
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::T => "T",
            Axis::Param(n) => n,
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "T" {
            return Ok(Axis::T);
        }
        HamiltonianParams::NAMES
            .iter()
            .find(|&&n| n == s)
            .map(|&n| Axis::Param(n))
            .ok_or_else(|| Error::Parse(format!("unknown sweep axis `{s}`")))
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub base: HamiltonianParams,
    /// Temperature for sweeps along a coupling; ignored when `axis` is `T`.
    pub t: f64,
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSweep(msg));
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return bad(format!("need lo < hi, got [{}, {}]", self.lo, self.hi));
        }
        if self.n < 2 {
            return bad(format!("need at least 2 grid points, got {}", self.n));
        }
        if !self.base.is_finite() {
            return bad("non-finite Hamiltonian parameter".into());
        }
        match self.axis {
            Axis::T if self.lo <= 0.0 => bad(format!("temperature axis needs lo > 0, got {}", self.lo)),
            Axis::Param(_) if !(self.t > 0.0 && self.t.is_finite()) => {
                Err(Error::NonpositiveTemperature(self.t))
            }
            _ => Ok(()),
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| if i + 1 == self.n { self.hi } else { self.lo + step * i as f64 })
            .collect()
    }

    /// Parameters and temperature at abscissa `x`.
    pub fn point(&self, x: f64) -> Result<(HamiltonianParams, Temperature)> {
        let mut params = self.base;
        let t = match self.axis {
            Axis::T => x,
            Axis::Param(name) => {
                params.set(name, x)?;
                self.t
            }
        };
        Ok((params, Temperature::new(t)?))
    }

    pub fn evaluate(&self, x: f64) -> Result<CorrelationBranches> {
        let (params, t) = self.point(x)?;
        gibbs_state(&params, t)?.correlations()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub x: f64,
    pub u0: f64,
    pub u1: f64,
    pub u: f64,
    pub f0: f64,
    pub f1: f64,
    pub f: f64,
    pub active_u: Branch,
    pub active_f: Branch,
}

impl SweepRecord {
    pub fn new(x: f64, c: &CorrelationBranches) -> Self {
        Self {
            x,
            u0: c.u0,
            u1: c.u1,
            u: c.u,
            f0: c.f0,
            f1: c.f1,
            f: c.f,
            active_u: c.active_u,
            active_f: c.active_f,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Lqu,
    Lqfi,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Lqu => "LQU",
            Measure::Lqfi => "LQFI",
        }
    }

    /// `branch0 - branch1` for this measure.
    pub fn gap(self, c: &CorrelationBranches) -> f64 {
        match self {
            Measure::Lqu => c.u0 - c.u1,
            Measure::Lqfi => c.f0 - c.f1,
        }
    }

    fn record_gap(self, r: &SweepRecord) -> f64 {
        match self {
            Measure::Lqu => r.u0 - r.u1,
            Measure::Lqfi => r.f0 - r.f1,
        }
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LQU" => Ok(Measure::Lqu),
            "LQFI" => Ok(Measure::Lqfi),
            other => Err(Error::Parse(format!("unknown measure `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransitionKind {
    /// The branches cross and the active branch switches.
    Crossing,
    /// The branches touch on the grid without changing order.
    Tangency,
}

impl TransitionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TransitionKind::Crossing => "crossing",
            TransitionKind::Tangency => "tangency",
        }
    }
}

impl FromStr for TransitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crossing" => Ok(TransitionKind::Crossing),
            "tangency" => Ok(TransitionKind::Tangency),
            other => Err(Error::Parse(format!("unknown transition kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEvent {
    pub measure: Measure,
    pub kind: TransitionKind,
    pub x_star: f64,
    pub bracket: (f64, f64),
    pub branch_from: Branch,
    pub branch_to: Branch,
    /// False when bisection hit its iteration cap before the bracket shrank
    /// to tolerance.
    pub refined: bool,
}

impl TransitionEvent {
    pub fn is_crossing(&self) -> bool {
        self.kind == TransitionKind::Crossing
    }
}

/// Number of branch crossings (tangencies excluded) for one measure.
pub fn count_crossings(events: &[TransitionEvent], measure: Measure) -> usize {
    events
        .iter()
        .filter(|e| e.measure == measure && e.is_crossing())
        .count()
}

pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|x| Ok(SweepRecord::new(x, &spec.evaluate(x)?)))
        .collect()
}

/// Active branch on the side of a crossing where `gap` has this sign.
fn side_label(gap: f64) -> Branch {
    if gap > 0.0 {
        Branch::Branch1
    } else {
        Branch::Branch0
    }
}

fn bisect(spec: &SweepSpec, measure: Measure, mut lo: f64, mut hi: f64, g_lo: f64) -> Result<(f64, f64, bool)> {
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BRACKET_TOL * mid.abs().max(1.0) {
            return Ok((lo, hi, true));
        }
        let g_mid = measure.gap(&spec.evaluate(mid)?);
        if (g_mid > 0.0) == (g_lo > 0.0) && g_mid != 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    Ok((lo, hi, hi - lo <= BRACKET_TOL * mid.abs().max(1.0)))
}

fn scan_measure(spec: &SweepSpec, records: &[SweepRecord], measure: Measure) -> Result<Vec<TransitionEvent>> {
    let gaps: Vec<f64> = records.iter().map(|r| measure.record_gap(r)).collect();
    let mut events = Vec::new();
    let mut prev: Option<usize> = None;
    let mut touched: Vec<usize> = Vec::new();

    let tangency = |idx: &[usize], label: Branch| TransitionEvent {
        measure,
        kind: TransitionKind::Tangency,
        x_star: records[idx[idx.len() / 2]].x,
        bracket: (records[idx[0]].x, records[idx[idx.len() - 1]].x),
        branch_from: label,
        branch_to: label,
        refined: false,
    };

    for (i, &g) in gaps.iter().enumerate() {
        if g.abs() < TOUCH_TOL {
            touched.push(i);
            continue;
        }
        if let Some(j) = prev {
            let g_prev = gaps[j];
            if (g > 0.0) != (g_prev > 0.0) {
                let (lo, hi, refined) = bisect(spec, measure, records[j].x, records[i].x, g_prev)?;
                events.push(TransitionEvent {
                    measure,
                    kind: TransitionKind::Crossing,
                    x_star: 0.5 * (lo + hi),
                    bracket: (lo, hi),
                    branch_from: side_label(g_prev),
                    branch_to: side_label(g),
                    refined,
                });
            } else if !touched.is_empty() {
                events.push(tangency(&touched, side_label(g)));
            }
        } else if !touched.is_empty() {
            events.push(tangency(&touched, side_label(g)));
        }
        touched.clear();
        prev = Some(i);
    }
    if !touched.is_empty() {
        let label = prev.map_or(Branch::Tie, |j| side_label(gaps[j]));
        events.push(tangency(&touched, label));
    }
    Ok(events)
}

/// Sweep and locate every branch switch of LQU and LQFI, in grid order per
/// measure (LQU events first).
pub fn detect_transitions_with_records(spec: &SweepSpec) -> Result<(Vec<SweepRecord>, Vec<TransitionEvent>)> {
    let records = sweep(spec)?;
    let mut events = scan_measure(spec, &records, Measure::Lqu)?;
    events.extend(scan_measure(spec, &records, Measure::Lqfi)?);
    Ok((records, events))
}

pub fn detect_transitions(spec: &SweepSpec) -> Result<Vec<TransitionEvent>> {
    Ok(detect_transitions_with_records(spec)?.1)
}

/// `%.12g`-style rendering: 12 significant digits, trailing zeros trimmed.
pub fn format_sig12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= DIGITS {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn emit_csv<W: Write + ?Sized>(records: &[SweepRecord], events: &[TransitionEvent], sink: &mut W) -> Result<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            sink,
            "{},{},{},{},{},{},{},{},{}",
            format_sig12(r.x),
            format_sig12(r.u0),
            format_sig12(r.u1),
            format_sig12(r.u),
            format_sig12(r.f0),
            format_sig12(r.f1),
            format_sig12(r.f),
            r.active_u,
            r.active_f
        )?;
    }
    for e in events {
        writeln!(
            sink,
            "#transition,{},{},{},{},{},{},{},{}",
            e.measure.as_str(),
            e.kind.as_str(),
            format_sig12(e.x_star),
            format_sig12(e.bracket.0),
            format_sig12(e.bracket.1),
            e.branch_from,
            e.branch_to,
            e.refined
        )?;
    }
    sink.flush()?;
    Ok(())
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a number: `{s}`")))
}

/// Reads back what [`emit_csv`] wrote.
pub fn parse_csv(text: &str) -> Result<(Vec<SweepRecord>, Vec<TransitionEvent>)> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(Error::Parse(format!("unexpected CSV header {other:?}"))),
    }
    let mut records = Vec::new();
    let mut events = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if let Some(rest) = line.strip_prefix("#transition,") {
            let f: Vec<&str> = rest.split(',').collect();
            if f.len() != 8 {
                return Err(Error::Parse(format!("malformed transition line `{line}`")));
            }
            events.push(TransitionEvent {
                measure: f[0].parse()?,
                kind: f[1].parse()?,
                x_star: parse_f64(f[2])?,
                bracket: (parse_f64(f[3])?, parse_f64(f[4])?),
                branch_from: f[5].parse()?,
                branch_to: f[6].parse()?,
                refined: f[7] == "true",
            });
            continue;
        }
        if fields.len() != 9 {
            return Err(Error::Parse(format!("expected 9 fields in `{line}`")));
        }
        records.push(SweepRecord {
            x: parse_f64(fields[0])?,
            u0: parse_f64(fields[1])?,
            u1: parse_f64(fields[2])?,
            u: parse_f64(fields[3])?,
            f0: parse_f64(fields[4])?,
            f1: parse_f64(fields[5])?,
            f: parse_f64(fields[6])?,
            active_u: fields[7].parse()?,
            active_f: fields[8].parse()?,
        });
    }
    Ok((records, events))
}
