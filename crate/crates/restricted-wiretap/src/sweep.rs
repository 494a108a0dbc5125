//! Parameter sweeps and the figure presets.
//!
//! A sweep is described by flat `key=value` text. A value is either a scalar
//! (pinned for every row) or a grid, which becomes a CSV column:
//!
//! ```text
//! name=fig8
//! target=dr,rr
//! eta=0.7
//! ne=1
//! mu=inf
//! kappa=lin:0.02:1:50
//! ```
//!
//! Grids are `lin:min:max:count`, `log:min:max:count` or `list:v1,v2,...`.
//! `mu=inf` selects the asymptotic rate formulas, and for BB84 targets it
//! means "optimize the signal strength".

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bb84::{self, Bb84Params, Eve, MuSearch};
use crate::bounds;
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::rates;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "WIRETAP_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Dr,
    Rr,
    Ccq,
    ErUb,
    Plob,
    Bb84Unrestricted,
    Bb84Restricted,
}

impl Target {
    pub const ALL: [Target; 7] = [
        Target::Dr,
        Target::Rr,
        Target::Ccq,
        Target::ErUb,
        Target::Plob,
        Target::Bb84Unrestricted,
        Target::Bb84Restricted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Dr => "dr",
            Target::Rr => "rr",
            Target::Ccq => "ccq",
            Target::ErUb => "er_ub",
            Target::Plob => "plob",
            Target::Bb84Unrestricted => "bb84_unrestricted",
            Target::Bb84Restricted => "bb84_restricted",
        }
    }

    /// Output columns, in order.
    pub fn columns(self) -> Vec<String> {
        let n = self.name();
        match self {
            Target::Dr | Target::Rr | Target::Ccq => vec![format!("{n}_raw"), n.to_string()],
            Target::ErUb | Target::Plob => vec![n.to_string()],
            Target::Bb84Unrestricted | Target::Bb84Restricted => {
                vec![n.to_string(), format!("{n}_mu")]
            }
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Spec(format!("target: unknown target '{s}'")))
    }
}

/// Sweepable and pinnable parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Eta,
    LossDb,
    Kappa,
    NE,
    Mu,
    Beta,
    Rate,
    Nd,
    Fl,
    EtaQ,
    EtaE,
}

impl Param {
    pub const ALL: [Param; 11] = [
        Param::Eta,
        Param::LossDb,
        Param::Kappa,
        Param::NE,
        Param::Mu,
        Param::Beta,
        Param::Rate,
        Param::Nd,
        Param::Fl,
        Param::EtaQ,
        Param::EtaE,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Param::Eta => "eta",
            Param::LossDb => "loss_db",
            Param::Kappa => "kappa",
            Param::NE => "ne",
            Param::Mu => "mu",
            Param::Beta => "beta",
            Param::Rate => "rate",
            Param::Nd => "nd",
            Param::Fl => "fl",
            Param::EtaQ => "eta_q",
            Param::EtaE => "eta_e",
        }
    }

    fn default_value(self) -> Option<f64> {
        match self {
            Param::Kappa | Param::Beta | Param::EtaQ => Some(1.0),
            Param::NE => Some(0.0),
            Param::Mu => Some(f64::INFINITY),
            Param::Rate => Some(1e9),
            Param::Nd => Some(1e-4),
            Param::Fl => Some(1.1),
            Param::Eta | Param::LossDb | Param::EtaE => None,
        }
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.key() == s)
            .ok_or_else(|| Error::Spec(format!("{s}: unknown key")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// Values taken by one swept parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Axis {
    Grid {
        min: f64,
        max: f64,
        count: usize,
        scale: Scale,
    },
    List(Vec<f64>),
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::List(v) => v.clone(),
            Axis::Grid { min, count: 1, .. } => vec![*min],
            Axis::Grid {
                min,
                max,
                count,
                scale,
            } => (0..*count)
                .map(|i| {
                    let f = i as f64 / (*count - 1) as f64;
                    match scale {
                        Scale::Linear => min + (max - min) * f,
                        Scale::Log => (min.ln() + (max.ln() - min.ln()) * f).exp(),
                    }
                })
                .collect(),
        }
    }

    fn describe(&self) -> String {
        match self {
            Axis::List(v) => format!(
                "list:{}",
                v.iter().map(|x| fmt_g(*x)).collect::<Vec<_>>().join(",")
            ),
            Axis::Grid {
                min,
                max,
                count,
                scale,
            } => {
                let tag = if *scale == Scale::Log { "log" } else { "lin" };
                format!("{tag}:{}:{}:{count}", fmt_g(*min), fmt_g(*max))
            }
        }
    }
}

fn parse_number(key: &str, s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Spec(format!("{key}: cannot parse '{s}' as a number")))?;
    if v.is_nan() {
        return Err(Error::Spec(format!("{key}: NaN is not a value")));
    }
    Ok(v)
}

enum Value {
    Scalar(f64),
    Axis(Axis),
}

fn parse_value(key: &str, s: &str) -> Result<Value> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("list:") {
        let v = rest
            .split(',')
            .map(|x| parse_number(key, x))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Value::Axis(Axis::List(v)));
    }
    for (tag, scale) in [("lin:", Scale::Linear), ("log:", Scale::Log)] {
        if let Some(rest) = s.strip_prefix(tag) {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::Spec(format!("{key}: expected {tag}min:max:count")));
            }
            let min = parse_number(key, parts[0])?;
            let max = parse_number(key, parts[1])?;
            let count: usize = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::Spec(format!("{key}: bad count '{}'", parts[2])))?;
            if count == 0 {
                return Err(Error::Spec(format!("{key}: grid count must be >= 1")));
            }
            if !(min.is_finite() && max.is_finite()) || max < min {
                return Err(Error::Spec(format!("{key}: need finite min <= max")));
            }
            if scale == Scale::Log && min <= 0.0 {
                return Err(Error::Spec(format!("{key}: log grid needs min > 0")));
            }
            return Ok(Value::Axis(Axis::Grid {
                min,
                max,
                count,
                scale,
            }));
        }
    }
    Ok(Value::Scalar(parse_number(key, s)?))
}

/// A complete sweep description.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub targets: Vec<Target>,
    /// Swept parameters in column order; the first varies slowest.
    pub axes: Vec<(Param, Axis)>,
    pub fixed: BTreeMap<Param, f64>,
    pub output: Option<PathBuf>,
    /// Also write a gnuplot script next to the CSV.
    pub plot: bool,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            name: "sweep".into(),
            targets: vec![Target::Dr, Target::Rr],
            axes: Vec::new(),
            fixed: BTreeMap::new(),
            output: None,
            plot: false,
        }
    }
}

impl SweepSpec {
    /// Parses `key=value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = SweepSpec::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Spec(format!("line {}: expected key=value", n + 1)))?;
            spec.set(k.trim(), v.trim())?;
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Sets one key, replacing any earlier value for it.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "name" => self.name = value.to_string(),
            "target" | "targets" => {
                self.targets = if value == "all" {
                    Target::ALL.to_vec()
                } else {
                    value
                        .split(',')
                        .map(|t| t.trim().parse())
                        .collect::<Result<Vec<_>>>()?
                };
            }
            "output" | "out" => self.output = Some(PathBuf::from(value)),
            "plot" => {
                self.plot = match value {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    _ => return Err(Error::Spec(format!("plot: expected true/false, got '{value}'"))),
                }
            }
            _ => {
                let p: Param = key.parse()?;
                self.remove(p);
                match parse_value(key, value)? {
                    Value::Scalar(v) => {
                        self.fixed.insert(p, v);
                    }
                    Value::Axis(a) => self.axes.push((p, a)),
                }
            }
        }
        Ok(())
    }

    /// Pins a parameter, dropping any grid for it.
    pub fn pin(&mut self, p: Param, v: f64) {
        self.remove(p);
        self.fixed.insert(p, v);
    }

    fn remove(&mut self, p: Param) {
        self.fixed.remove(&p);
        self.axes.retain(|(q, _)| *q != p);
        // the two ways of giving the transmissivity exclude each other
        let other = match p {
            Param::Eta => Some(Param::LossDb),
            Param::LossDb => Some(Param::Eta),
            _ => None,
        };
        if let Some(o) = other {
            self.fixed.remove(&o);
            self.axes.retain(|(q, _)| *q != o);
        }
    }

    fn has(&self, p: Param) -> bool {
        self.fixed.contains_key(&p) || self.axes.iter().any(|(q, _)| *q == p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::Spec("target: no targets given".into()));
        }
        if self.has(Param::Eta) && self.has(Param::LossDb) {
            return Err(Error::Spec("eta: give either eta or loss_db, not both".into()));
        }
        if !self.has(Param::Eta) && !self.has(Param::LossDb) {
            return Err(Error::Spec("eta: one of eta or loss_db is required".into()));
        }
        for (i, (p, _)) in self.axes.iter().enumerate() {
            if self.axes[..i].iter().any(|(q, _)| q == p) {
                return Err(Error::Spec(format!("{}: swept twice", p.key())));
            }
        }
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.axes.iter().map(|(_, a)| a.values().len()).product()
    }

    pub fn columns(&self) -> Vec<String> {
        let mut c: Vec<String> = self.axes.iter().map(|(p, _)| p.key().to_string()).collect();
        c.extend(self.targets.iter().flat_map(|t| t.columns()));
        c.push("error".into());
        c
    }

    /// Canonical text form, parseable by [`SweepSpec::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("name={}\n", self.name);
        let t: Vec<&str> = self.targets.iter().map(|t| t.name()).collect();
        s += &format!("target={}\n", t.join(","));
        for (p, v) in &self.fixed {
            s += &format!("{}={}\n", p.key(), fmt_g(*v));
        }
        for (p, a) in &self.axes {
            s += &format!("{}={}\n", p.key(), a.describe());
        }
        if self.plot {
            s += "plot=true\n";
        }
        s
    }
}

/// One fully resolved grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    values: BTreeMap<Param, f64>,
}

impl Point {
    pub fn get(&self, p: Param) -> Option<f64> {
        self.values.get(&p).copied()
    }

    fn or_default(&self, p: Param) -> Result<f64> {
        self.get(p)
            .or_else(|| p.default_value())
            .ok_or_else(|| Error::Spec(format!("{}: no value", p.key())))
    }

    pub fn eta(&self) -> Result<f64> {
        match (self.get(Param::Eta), self.get(Param::LossDb)) {
            (Some(e), _) => Ok(e),
            (None, Some(db)) => Ok(10f64.powf(-db / 10.0)),
            (None, None) => Err(Error::Spec("eta: no value".into())),
        }
    }

    fn channel(&self) -> Result<(f64, f64, f64, f64)> {
        Ok((
            self.eta()?,
            self.or_default(Param::Kappa)?,
            self.or_default(Param::NE)?,
            self.or_default(Param::Mu)?,
        ))
    }

    fn bb84(&self) -> Result<Bb84Params> {
        let (eta, kappa, _, mu) = self.channel()?;
        let eta_e = match self.get(Param::EtaE) {
            Some(e) => e,
            None => bb84::eve_transmissivity(kappa, eta, self.or_default(Param::EtaQ)?)?,
        };
        // an infinite mu is replaced by the optimum before any rate is taken
        let mu = if mu.is_finite() { mu } else { 0.0 };
        Bb84Params::new(
            self.or_default(Param::Rate)?,
            eta,
            eta_e,
            self.or_default(Param::Nd)?,
            self.or_default(Param::Fl)?,
            mu,
        )
    }
}

fn points(spec: &SweepSpec) -> Vec<Point> {
    let grids: Vec<(Param, Vec<f64>)> = spec.axes.iter().map(|(p, a)| (*p, a.values())).collect();
    let mut out = vec![Point {
        values: spec.fixed.clone(),
    }];
    for (p, vals) in &grids {
        out = out
            .into_iter()
            .flat_map(|pt| {
                vals.iter().map(move |v| {
                    let mut pt = pt.clone();
                    pt.values.insert(*p, *v);
                    pt
                })
            })
            .collect();
    }
    out
}

fn evaluate(target: Target, pt: &Point) -> Result<Vec<f64>> {
    let (eta, kappa, n_e, mu) = pt.channel()?;
    match target {
        Target::Dr | Target::Rr => {
            let r = if target == Target::Dr {
                rates::dr_rate(eta, kappa, n_e, mu)?
            } else {
                rates::rr_rate(eta, kappa, n_e, mu)?
            };
            Ok(vec![r.raw, r.clamped()])
        }
        Target::Ccq => {
            if !mu.is_finite() {
                return Err(Error::Spec("ccq: needs a finite mu".into()));
            }
            let r = rates::ccq_rate(ChannelParams::new(eta, kappa, n_e, mu)?, pt.or_default(Param::Beta)?)?;
            Ok(vec![r.raw, r.clamped()])
        }
        Target::ErUb => Ok(vec![bounds::er_upper_bound(eta, kappa, n_e)?]),
        Target::Plob => Ok(vec![rates::plob(eta)?]),
        Target::Bb84Unrestricted | Target::Bb84Restricted => {
            let eve = if target == Target::Bb84Restricted {
                Eve::Restricted
            } else {
                Eve::Unrestricted
            };
            let p = pt.bb84()?;
            if mu.is_finite() {
                Ok(vec![eve.rate(&p)?, mu])
            } else {
                let opt = bb84::optimize_mu(&p, eve, MuSearch::default())?;
                Ok(vec![opt.skr, opt.mu])
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    /// Axis values followed by target outputs; `None` where a target failed.
    pub values: Vec<Option<f64>>,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl SweepResult {
    pub fn error_rows(&self) -> usize {
        self.rows.iter().filter(|r| !r.error.is_empty()).count()
    }

    /// Values of one column, `None` for failed cells.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values[i]).collect())
    }
}

/// Evaluates every grid point. Numeric failures land in the row's error
/// column; only an invalid spec fails the whole run.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let pts = points(spec);
    let rows = pts
        .par_iter()
        .map(|pt| {
            let mut values: Vec<Option<f64>> =
                spec.axes.iter().map(|(p, _)| pt.get(*p)).collect();
            let mut errors = Vec::new();
            for t in &spec.targets {
                match evaluate(*t, pt) {
                    Ok(v) => values.extend(v.into_iter().map(Some)),
                    Err(e) => {
                        values.extend(t.columns().iter().map(|_| None));
                        errors.push(format!("{}: {e}", t.name()));
                    }
                }
            }
            Row {
                values,
                error: errors.join("; "),
            }
        })
        .collect();
    Ok(SweepResult {
        spec: spec.clone(),
        columns: spec.columns(),
        rows,
    })
}

/// `%.12g`-style formatting.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    const DIGITS: i32 = 12;
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Writes the CSV: `#` metadata lines, a header, then one row per point.
pub fn write_csv<W: Write>(result: &SweepResult, out: W, timestamp: bool) -> Result<()> {
    let mut out = out;
    if timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        writeln!(out, "# generated unix_time={secs}")?;
    }
    writeln!(out, "# sweep {}", result.spec.name)?;
    for (p, v) in &result.spec.fixed {
        writeln!(out, "# {}={}", p.key(), fmt_g(*v))?;
    }
    let uses_bb84 = result
        .spec
        .targets
        .iter()
        .any(|t| matches!(t, Target::Bb84Restricted | Target::Bb84Unrestricted));
    if uses_bb84 && !result.spec.fixed.contains_key(&Param::EtaE) {
        writeln!(out, "# eta_e=kappa*(1-eta/eta_q)")?;
    }
    if uses_bb84 && result.spec.fixed.get(&Param::Mu) == Some(&f64::INFINITY) {
        writeln!(out, "# bb84 mu optimized over [1e-3, 10]")?;
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&result.columns)?;
    for row in &result.rows {
        let mut rec: Vec<String> = row
            .values
            .iter()
            .map(|v| v.map(fmt_g).unwrap_or_default())
            .collect();
        rec.push(row.error.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// A gnuplot script plotting every output column against the fastest axis.
pub fn gnuplot_script(result: &SweepResult, csv_name: &str) -> String {
    let spec = &result.spec;
    let n_axes = spec.axes.len();
    let x_col = n_axes.max(1);
    let x = spec.axes.last().map(|(p, _)| p.key()).unwrap_or("row");
    let log_x = matches!(spec.axes.last(), Some((_, Axis::Grid { scale: Scale::Log, .. })));
    let mut s = String::new();
    s += "set datafile separator ','\n";
    s += "set key autotitle columnhead\n";
    s += &format!("set xlabel '{x}'\n");
    if log_x {
        s += "set logscale x\n";
    }
    let n_out = result.columns.len() - n_axes - 1;
    let plots: Vec<String> = (0..n_out)
        .filter(|k| !result.columns[n_axes + k].ends_with("_raw"))
        .map(|k| format!("'{csv_name}' using {x_col}:{} with lines", n_axes + k + 1))
        .collect();
    s += &format!("plot {}\n", plots.join(", \\\n     "));
    s
}

const PRESETS: &[(&str, &str)] = &[
    ("fig3a", "target=dr,rr\neta=0.6\nmu=inf\nkappa=log:0.001:1:61\n"),
    ("fig3b", "target=dr,rr,plob\nkappa=0.1\nmu=inf\nloss_db=lin:0.5:30:60\n"),
    (
        "fig4",
        "target=dr,rr\neta=0.6\nne=0.1\nkappa=list:0.1,0.5,0.9\nmu=log:0.01:10000:61\n",
    ),
    ("fig6", "target=dr,rr\neta=0.8\nkappa=0.4\nmu=inf\nne=lin:0:2:41\n"),
    ("fig7", "target=dr,rr\nkappa=0.6\nne=1\nmu=inf\neta=lin:0.02:0.98:49\n"),
    ("fig8", "target=dr,rr\neta=0.7\nne=1\nmu=inf\nkappa=lin:0.02:1:50\n"),
    (
        "fig9",
        "target=dr,rr,er_ub,plob\nne=0\nmu=inf\nkappa=list:0.01,0.1,0.5\nloss_db=lin:0.5:20:40\n",
    ),
    (
        "fig10",
        "target=dr,rr,er_ub\nkappa=0.1\nmu=inf\nne=list:0,0.05,0.5\nloss_db=lin:0.5:20:40\n",
    ),
    (
        "fig11",
        "target=rr,plob\nne=0.1\nmu=inf\nkappa=list:0.01,0.1,0.3,0.5,1\nloss_db=lin:0.5:30:60\n",
    ),
    (
        "fig12",
        "target=rr,plob\nkappa=0.1\nmu=inf\nne=list:0,0.01,0.1,0.5,1\nloss_db=lin:0.5:30:60\n",
    ),
    (
        "fig13",
        "target=rr,ccq,bb84_restricted\nloss_db=10\nne=0\nnd=0\nfl=1\nbeta=1\nkappa=list:0.01,0.1,1\nmu=log:0.001:100:51\n",
    ),
    (
        "fig14",
        "target=rr,ccq,bb84_restricted\nloss_db=10\nkappa=0.1\nne=0.0005\nnd=0.0005\nfl=1\nbeta=1\nmu=log:0.001:100:51\n",
    ),
    (
        "fig15",
        "target=rr,ccq,bb84_restricted\nloss_db=10\nkappa=0.1\nne=0.0005\nnd=0.0005\nfl=1.1\nbeta=0.95\nmu=log:0.001:100:51\n",
    ),
    (
        "fig16",
        "target=bb84_unrestricted,bb84_restricted\nrate=1e9\nnd=0.0001\nfl=1.1\nmu=inf\nkappa=list:0.01,0.1,1\nloss_db=lin:1:40:40\n",
    ),
    (
        "fig17",
        "target=rr,bb84_restricted,er_ub,plob\nkappa=0.1\nne=0.5\nnd=0.5\nfl=1.1\nmu=inf\nloss_db=lin:0.5:20:40\n",
    ),
    (
        "fig18",
        "target=bb84_unrestricted,bb84_restricted\nrate=1e9\neta=0.005\nnd=0.0001\nfl=1.1\nkappa=list:0.01,0.1\nmu=log:0.001:10:81\n",
    ),
];

pub fn preset_names() -> Vec<&'static str> {
    PRESETS.iter().map(|(n, _)| *n).collect()
}

pub fn preset(name: &str) -> Option<SweepSpec> {
    let (n, body) = PRESETS.iter().find(|(n, _)| *n == name)?;
    let mut spec = SweepSpec::parse(&format!("name={n}\n{body}")).expect("preset specs parse");
    spec.name = n.to_string();
    Some(spec)
}

/// Every named figure preset.
pub fn presets() -> Vec<SweepSpec> {
    preset_names().into_iter().filter_map(preset).collect()
}

/// Resolves `arg` as a preset name, or else as a spec file path.
pub fn load_spec(arg: &str) -> Result<SweepSpec> {
    if let Some(p) = preset(arg) {
        return Ok(p);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| Error::Spec(format!("'{arg}' is neither a preset nor a readable spec file: {e}")))?;
    SweepSpec::parse(&text)
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
