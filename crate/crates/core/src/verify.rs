//! Exhaustive verification of the algebraic and combinatorial statements
//! about grid polyominoes, one instance or a whole family at a time.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bijection::bijection_report_for;
use crate::complex::{check_purity, AntiDiagonalGraph, FVector, VertexSet, DEFAULT_FACET_CAP};
use crate::error::{Error, Result};
use crate::grid::{generate_grid, recognize_grid, GridSpec, GridStructure};
use crate::ideal::{ideal_height, koenig_type_with_budget, DEFAULT_SEARCH_BUDGET};
use crate::numeric::{binomial, is_palindromic, trim};
use crate::polyomino::Polyomino;
use crate::rook::{rook_number, rook_polynomial};
use crate::shelling::{first_facet_points, FacetList};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertExpansion {
    /// `H(0), ..., H(N)`.
    pub coefficients: Vec<u128>,
    pub h_polynomial: Vec<i128>,
    pub krull_dim: usize,
}

/// Coefficients of `h(t) / (1 - t)^d` up to `t^n`.
pub fn hilbert_from_h(h: &[i128], d: usize, n: usize) -> Result<Vec<u128>> {
    (0..=n)
        .map(|k| {
            let mut acc: i128 = 0;
            for (i, &hi) in h.iter().enumerate().take(k + 1) {
                let c = if d == 0 {
                    u128::from(k == i)
                } else {
                    binomial((d - 1 + k - i) as u64, (k - i) as u64).ok_or(Error::Overflow("Hilbert function"))?
                };
                let term = i128::try_from(c)
                    .ok()
                    .and_then(|c| c.checked_mul(hi))
                    .ok_or(Error::Overflow("Hilbert function"))?;
                acc = acc.checked_add(term).ok_or(Error::Overflow("Hilbert function"))?;
            }
            u128::try_from(acc).map_err(|_| Error::Overflow("negative Hilbert function value"))
        })
        .collect()
}

/// The h-vector from face counts, trimmed, with the Krull dimension.
fn h_vector(p: &Polyomino) -> Result<(Vec<i128>, usize)> {
    recognize_grid(p).map_err(Error::NotGrid)?;
    let f = FVector(AntiDiagonalGraph::new(p)?.independence_counts()?);
    let d = f.top_size();
    Ok((trim(&crate::complex::h_from_f(&f, d)?), d))
}

pub fn hilbert_expansion(p: &Polyomino, n: usize) -> Result<HilbertExpansion> {
    let (h, d) = h_vector(p)?;
    Ok(HilbertExpansion { coefficients: hilbert_from_h(&h, d, n)?, h_polynomial: h, krull_dim: d })
}

/// `deg h(t)`.
pub fn regularity(p: &Polyomino) -> Result<usize> {
    Ok(h_vector(p)?.0.len() - 1)
}

/// `regularity`, failing unless it equals the rook number.
pub fn regularity_checked(p: &Polyomino) -> Result<usize> {
    let reg = regularity(p)?;
    let rook = rook_number(p);
    if reg != rook {
        return Err(Error::RegularityMismatch { regularity: reg, rook_number: rook });
    }
    Ok(reg)
}

/// One hole and exactly four maximal blocks of rank at least two, all of rank three.
pub fn structurally_gorenstein(p: &Polyomino) -> bool {
    let blocks = p.proper_blocks();
    p.holes().len() == 1 && blocks.len() == 4 && blocks.iter().all(|b| b.rank() == 3)
}

/// `(algebraic, structural)`: palindromic h-vector, and the block description.
pub fn gorenstein(p: &Polyomino) -> Result<(bool, bool)> {
    Ok((is_palindromic(&h_vector(p)?.0), structurally_gorenstein(p)))
}

pub fn gorenstein_checked(p: &Polyomino) -> Result<(bool, bool)> {
    let (algebraic, structural) = gorenstein(p)?;
    if algebraic != structural {
        return Err(Error::GorensteinMismatch { algebraic, structural });
    }
    Ok((algebraic, structural))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Count skipped checks as failures.
    pub strict: bool,
    pub max_cells: usize,
    pub max_facets: usize,
    /// Largest facet count for which restrictions are found by direct
    /// intersection; above it, by single-vertex exchange.
    pub brute_force_cap: usize,
    pub koenig_budget: u64,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            strict: false,
            max_cells: 60,
            max_facets: DEFAULT_FACET_CAP,
            brute_force_cap: 5000,
            koenig_budget: DEFAULT_SEARCH_BUDGET,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: &'static str,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub instance: String,
    pub entries: Vec<CheckEntry>,
    /// Milliseconds per check, only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<&'static str, f64>>,
}

impl TheoremReport {
    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn passed(&self, strict: bool) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass || (!strict && e.status == Status::Skipped))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }
}

fn check(ok: bool, details: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, details)
}

fn list_of<T: std::fmt::Debug>(v: &[T]) -> String {
    format!("{v:?}").replace(' ', "")
}

struct Recorder {
    entries: Vec<CheckEntry>,
    timings: Option<BTreeMap<&'static str, f64>>,
}

impl Recorder {
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> (Status, String)) {
        let start = Instant::now();
        let (status, details) = f();
        if let Some(t) = &mut self.timings {
            t.insert(name, start.elapsed().as_secs_f64() * 1e3);
        }
        self.entries.push(CheckEntry { name, status, details });
    }
}

/// A name for the instance: its grid parameters.
fn instance_name(structure: &GridStructure) -> String {
    structure.spec().to_string()
}

/// Run every check on a grid polyomino.
pub fn verify_all(p: &Polyomino, opts: &VerifyOptions) -> Result<TheoremReport> {
    let structure = recognize_grid(p).map_err(Error::NotGrid)?;
    if p.rank() > opts.max_cells {
        return Err(Error::SizeGuardExceeded(format!("{} cells, limit {}", p.rank(), opts.max_cells)));
    }
    let list = FacetList::new(p, opts.max_facets)?;
    Ok(verify_facet_list(&structure, &list, opts))
}

/// Run every check against a given facet list, which should be the
/// descending facet list of the polyomino. Never stops at a failure.
pub fn verify_facet_list(structure: &GridStructure, list: &FacetList, opts: &VerifyOptions) -> TheoremReport {
    let p = list.polyomino();
    let g = list.graph();
    let facets = list.facets();
    let vertices = p.vertices().len();
    let rank = p.rank();
    let holes = structure.r() * structure.s();
    let mut rec = Recorder { entries: Vec::new(), timings: opts.timings.then(BTreeMap::new) };

    let f = g.independence_counts().map(FVector);
    let d = f.as_ref().map(|f| f.top_size()).ok();

    rec.run("krull_dim", || match d {
        Some(d) => check(d == vertices - rank, format!("dimension {d}, |V| - rank = {}", vertices - rank)),
        None => (Status::Skipped, "face counts unavailable".into()),
    });
    rec.run("height", || match (ideal_height(p), d) {
        (Ok(h), Some(d)) => check(h == rank && vertices - d == rank, format!("height {}, rank {rank}", vertices - d)),
        (Err(e), _) => (Status::Fail, e.to_string()),
        _ => (Status::Skipped, "face counts unavailable".into()),
    });
    rec.run("koenig_necessary", || {
        let slack = vertices as i64 - 2 * rank as i64;
        let ok = if holes > 1 { slack < 0 } else { slack >= 0 };
        check(ok, format!("{holes} holes, |V| - 2 rank = {slack}"))
    });
    rec.run("koenig_equivalence", || match koenig_type_with_budget(p, opts.koenig_budget) {
        Ok(k) => {
            let valid = !k.is_koenig || k.witness_is_valid(p);
            check(
                k.is_koenig == (holes == 1) && valid,
                format!("{holes} holes, koenig {}, reason {:?}, witness valid {valid}", k.is_koenig, k.reason),
            )
        }
        Err(e) => (Status::Fail, e.to_string()),
    });
    rec.run("purity", || match check_purity(facets, vertices - rank) {
        Ok(()) => (Status::Pass, format!("{} facets of size {}", facets.len(), vertices - rank)),
        Err(e) => (Status::Fail, e.to_string()),
    });

    let steps: Vec<_> = facets.iter().map(|&f| list.steps_of(f)).collect();
    let counts: Vec<usize> = steps.iter().map(Vec::len).collect();

    rec.run("shelling_intersections", || {
        let mut problems = Vec::new();
        let expected_first = g.to_set(&first_facet_points(structure)).ok();
        if facets.first().copied() != expected_first {
            problems.push("first facet is not F_0".to_string());
        }
        if let Some(j) = (1..facets.len()).find(|&j| crate::complex::lex_cmp(facets[j - 1], facets[j]).is_le()) {
            problems.push(format!("facets #{} and #{j} out of order", j - 1));
        }
        let brute = facets.len() <= opts.brute_force_cap;
        for (j, s) in steps.iter().enumerate() {
            if brute {
                if let Err(e) = list.brute_force_restriction(j) {
                    problems.push(e.to_string());
                }
            } else {
                let corners = s.iter().fold(VertexSet::EMPTY, |acc, s| acc.with(g.index_of(s.corner).unwrap()));
                if list.exchange_restriction(j) != corners {
                    problems.push(format!("facet #{j}: codimension-one restriction differs from step corners"));
                }
            }
            if problems.len() >= 5 {
                break;
            }
        }
        let method = if brute { "intersection" } else { "exchange" };
        match problems.is_empty() {
            true => (Status::Pass, format!("{} facets checked by {method}", facets.len())),
            false => (Status::Fail, problems.join("; ")),
        }
    });
    rec.run("step_shapes", || {
        let mut by_shape: BTreeMap<String, usize> = BTreeMap::new();
        let mut problems = Vec::new();
        for (j, (&f, s)) in facets.iter().zip(&steps).enumerate() {
            for step in s {
                match list.validate_step_shape(step, f) {
                    Ok(class) => *by_shape.entry(format!("{class:?}")).or_default() += 1,
                    Err(e) if problems.len() < 5 => problems.push(format!("facet #{j}: {e}")),
                    Err(_) => {}
                }
            }
        }
        match problems.is_empty() {
            true => (Status::Pass, format!("{by_shape:?}")),
            false => (Status::Fail, problems.join("; ")),
        }
    });

    let h_shell: Vec<i128> = FacetList::h_from_counts(&counts).into_iter().map(i128::from).collect();
    let h_f = f.as_ref().ok().and_then(|f| crate::complex::h_from_f(f, f.top_size()).ok()).map(|h| trim(&h));
    let rook: Vec<i128> = rook_polynomial(p).0.into_iter().map(|r| r as i128).collect();

    rec.run("h_equals_rook", || match &h_f {
        Some(h_f) => {
            let sum: i128 = h_shell.iter().sum();
            check(
                &h_shell == h_f && h_f == &rook && sum == facets.len() as i128,
                format!("shelling {}, face counts {}, rook {}", list_of(&h_shell), list_of(h_f), list_of(&rook)),
            )
        }
        None => (Status::Skipped, "face counts unavailable".into()),
    });
    rec.run("rook_bijection", || {
        let b = bijection_report_for(list);
        let mut details = format!("facets by steps {}, rooks {}", list_of(&b.facet_counts), list_of(&b.rook_counts));
        if let Some((x, y)) = &b.collision {
            let _ = write!(details, "; collision {:?} / {:?}", x.points(), y.points());
        }
        if !b.steps_determine_facet {
            details.push_str("; two facets share their steps");
        }
        if let Some(v) = b.violations.first() {
            let _ = write!(details, "; {v}");
        }
        check(b.is_bijection(), details)
    });
    rec.run("regularity", || match &h_f {
        Some(h) => {
            let reg = h.len() - 1;
            let rn = rook.len() - 1;
            check(reg == rn, format!("deg h = {reg}, rook number {rn}"))
        }
        None => (Status::Skipped, "face counts unavailable".into()),
    });
    rec.run("gorenstein_equivalence", || match &h_f {
        Some(h) => {
            let (algebraic, structural) = (is_palindromic(h), structurally_gorenstein(p));
            check(
                algebraic == structural,
                format!("palindromic {algebraic}, one hole with four rank-3 blocks {structural}"),
            )
        }
        None => (Status::Skipped, "face counts unavailable".into()),
    });

    TheoremReport {
        schema: SCHEMA_VERSION,
        instance: instance_name(structure),
        entries: rec.entries,
        timings: rec.timings,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepEntry {
    pub spec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub entries: Vec<SweepEntry>,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }
}

/// Verify every spec of a family; a failing or oversized instance never
/// stops the others.
pub fn sweep(specs: &[GridSpec], opts: &VerifyOptions) -> SweepReport {
    let mut report = SweepReport { schema: SCHEMA_VERSION, entries: Vec::new(), passed: 0, failed: 0, errors: 0 };
    for spec in specs {
        let result = generate_grid(spec).and_then(|(p, _)| verify_all(&p, opts));
        let entry = match result {
            Ok(r) => {
                if r.passed(opts.strict) {
                    report.passed += 1;
                } else {
                    report.failed += 1;
                }
                SweepEntry { spec: spec.to_string(), report: Some(r), error: None }
            }
            Err(e) => {
                report.errors += 1;
                SweepEntry { spec: spec.to_string(), report: None, error: Some(e.to_string()) }
            }
        };
        report.entries.push(entry);
    }
    report
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skip",
    }
}

/// Check names with their status and details, one per line.
pub fn render_report(r: &TheoremReport) -> String {
    let mut out = format!("instance {}\n", r.instance);
    for e in &r.entries {
        let _ = writeln!(out, "  {:<24} {:<4}  {}", e.name, status_word(e.status), e.details);
    }
    if let Some(t) = &r.timings {
        for (name, ms) in t {
            let _ = writeln!(out, "  time {name:<19} {ms:.3} ms");
        }
    }
    out
}

/// One row per instance, one column per check.
pub fn render_sweep(s: &SweepReport) -> String {
    let names: Vec<&str> = s
        .entries
        .iter()
        .find_map(|e| e.report.as_ref())
        .map(|r| r.entries.iter().map(|e| e.name).collect())
        .unwrap_or_default();
    let width = s.entries.iter().map(|e| e.spec.len()).max().unwrap_or(0).max(8);
    let mut out = format!("{:<width$}", "instance");
    for (i, _) in names.iter().enumerate() {
        let _ = write!(out, " {:<4}", format!("c{i}"));
    }
    out.push('\n');
    for e in &s.entries {
        let _ = write!(out, "{:<width$}", e.spec);
        match (&e.report, &e.error) {
            (Some(r), _) => {
                for c in &r.entries {
                    let _ = write!(out, " {:<4}", status_word(c.status));
                }
            }
            (None, Some(err)) => {
                let _ = write!(out, " error: {err}");
            }
            _ => {}
        }
        out.push('\n');
    }
    let mut out: String = out.lines().map(|l| l.trim_end().to_string() + "\n").collect();
    for (i, n) in names.iter().enumerate() {
        let _ = writeln!(out, "c{i} = {n}");
    }
    let _ = writeln!(out, "{} passed, {} failed, {} errors", s.passed, s.failed, s.errors);
    out
}
