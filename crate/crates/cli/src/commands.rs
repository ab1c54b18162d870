//! The subcommands, independent of argument parsing.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use normone::cohomology::sha2_omega;
use normone::fpgroups::{preimage_an, verify_commutator_claim};
use normone::permcore::{are_conjugate_subgroups, core, subgroup_classes};
use normone::resolutions::{norm_one_report, ResolutionRecord};
use normone::{Error, Limits, PermGroup, Permutation, SubgroupHandle};

use crate::cache::Cache;
use crate::parse::{parse_generators, parse_group_spec, GroupSpec, ParseError};
use crate::record::ResultRecord;

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input (exit 2).
    Input(String),
    /// A size cap was hit (exit 3).
    Cap(String),
    /// An internal consistency check failed (exit 4).
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Internal(m) => m,
        }
    }

    fn parse(input: &str, e: ParseError) -> CliError {
        CliError::Input(e.render(input))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        if e.is_cap() {
            return CliError::Cap(e.to_string());
        }
        match e {
            Error::Internal(_)
            | Error::NotEquivariant { .. }
            | Error::DimensionMismatch(_)
            | Error::NotContained(_)
            | Error::GroupMismatch => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// How the subgroup is given on the command line.
#[derive(Clone, Debug)]
pub enum SubgroupChoice {
    /// Comma-separated generators in cycle notation.
    Generators(String),
    /// Stabilizer of a point (1-based).
    PointStabilizer(usize),
    /// 0-based index into the subgroup class list.
    Class(usize),
    /// Every class of index at least 2.
    AllClasses,
}

pub fn build_group(spec: &str, limits: &Limits) -> CliResult<(GroupSpec, PermGroup)> {
    let parsed = parse_group_spec(spec, limits).map_err(|e| CliError::parse(spec, e))?;
    let g = parsed.kind().build_with(limits.clone())?;
    Ok((parsed, g))
}

pub fn select_subgroups(g: &PermGroup, choice: &SubgroupChoice) -> CliResult<Vec<SubgroupHandle>> {
    Ok(match choice {
        SubgroupChoice::Generators(text) => {
            let gens = parse_generators(text, Some(g.degree())).map_err(|e| CliError::parse(text, e))?;
            vec![SubgroupHandle::new(g, gens)?]
        }
        SubgroupChoice::PointStabilizer(k) => vec![SubgroupHandle::point_stabilizer(g, *k)?],
        SubgroupChoice::Class(i) => {
            let classes = subgroup_classes(g)?;
            let n = classes.len();
            vec![classes
                .into_iter()
                .nth(*i)
                .ok_or_else(|| CliError::Input(format!("class index {i} out of range (0..{n})")))?]
        }
        SubgroupChoice::AllClasses => subgroup_classes(g)?.into_iter().filter(|h| h.index() >= 2).collect(),
    })
}

pub fn describe(h: &SubgroupHandle) -> String {
    if h.generators().is_empty() {
        return "()".to_string();
    }
    h.generators().iter().map(Permutation::to_string).collect::<Vec<_>>().join(",")
}

/// Computes (or loads) the record for one subgroup; warnings go to `log`.
pub fn compute_one(
    spec: &GroupSpec,
    g: &PermGroup,
    h: &SubgroupHandle,
    cache: Option<&Cache>,
    log: &mut Vec<String>,
) -> CliResult<ResultRecord> {
    let group = spec.to_string();
    let subgroup = describe(h);
    let key = Cache::key(&group, &subgroup);
    if let Some(c) = cache {
        match c.load::<ResultRecord>(&key, "") {
            Ok(Some(rec)) => {
                log.push(format!("cache hit for {group} / {subgroup}"));
                return Ok(rec);
            }
            Ok(None) => {}
            Err(e) => log.push(format!("warning: unreadable cache entry ({e}); recomputing")),
        }
    }
    let t = Instant::now();
    let report = norm_one_report(g, h)?;
    if report.invariant.free_rank != 0 {
        return Err(CliError::Internal("H^1 of a flasque module came out infinite".into()));
    }
    for w in &report.warnings {
        log.push(format!("warning: {w}"));
    }
    let rec = ResultRecord::new(&group, &subgroup, &report, t.elapsed().as_millis() as u64);
    if let Some(c) = cache {
        let res: ResolutionRecord = report.resolution.to_record(&group);
        if let Err(e) = c.store(&key, "", &rec).and_then(|_| c.store(&key, ".resolution", &res)) {
            log.push(format!("warning: could not write cache ({e})"));
        }
    }
    Ok(rec)
}

/// `compute`: one JSON object per line on `out`, summaries on `err`.
pub fn cmd_compute(
    spec: &str,
    choice: &SubgroupChoice,
    limits: &Limits,
    cache: Option<&Cache>,
    out: &mut impl Write,
    err: &mut impl Write,
) -> CliResult<()> {
    let (parsed, g) = build_group(spec, limits)?;
    let subgroups = select_subgroups(&g, choice)?;
    let results: Vec<(CliResult<ResultRecord>, Vec<String>)> = subgroups
        .par_iter()
        .map(|h| {
            let mut log = Vec::new();
            let r = compute_one(&parsed, &g, h, cache, &mut log);
            (r, log)
        })
        .collect();
    for (r, log) in results {
        for line in log {
            let _ = writeln!(err, "{line}");
        }
        let rec = r?;
        let _ = writeln!(err, "{} / <{}>: H^1 = [{}], {} ({} ms)", rec.group, rec.subgroup, rec.h1.join(", "), rec.verdict, rec.ms);
        writeln!(out, "{}", rec.to_json()).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassLine {
    index: usize,
    order: u64,
    generators: String,
    cyclic: bool,
    normal: bool,
    core_trivial: bool,
}

/// `classes`: one JSON line per conjugacy class of subgroups.
pub fn cmd_classes(spec: &str, limits: &Limits, out: &mut impl Write) -> CliResult<usize> {
    let (_, g) = build_group(spec, limits)?;
    let classes = subgroup_classes(&g)?;
    for (index, h) in classes.iter().enumerate() {
        let line = ClassLine {
            index,
            order: h.order(),
            generators: describe(h),
            cyclic: h.is_cyclic()?,
            normal: h.is_normal(),
            core_trivial: core(&g, h)?.order() == 1,
        };
        writeln!(out, "{}", serde_json::to_string(&line).expect("plain data")).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(classes.len())
}

#[derive(Serialize)]
pub struct SchurReport {
    pub n: usize,
    pub cover_order: usize,
    pub preimage_order: usize,
    pub index: usize,
    pub claim: bool,
    pub ok: bool,
}

/// `verify-schur`: orders of `U` and `V` and the commutator identity.
pub fn cmd_verify_schur(n: usize, limits: &Limits, out: &mut impl Write) -> CliResult<SchurReport> {
    let v = preimage_an(n, limits.max_cosets)?;
    let claim = verify_commutator_claim(n, limits.max_cosets)?;
    let factorial: usize = (1..=n).product();
    let ok = claim && v.cover_order == 2 * factorial && v.order == factorial && v.index() == 2;
    let r = SchurReport { n, cover_order: v.cover_order, preimage_order: v.order, index: v.index(), claim, ok };
    writeln!(out, "{}", serde_json::to_string(&r).expect("plain data")).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(r)
}

#[derive(Serialize)]
struct OracleLine {
    group: String,
    subgroup: String,
    sha2_omega: Vec<String>,
    h1: Vec<String>,
    agree: bool,
}

/// `sha-oracle`: `H^1(G, M)` next to `Sha^2_omega(G, J_{G/H})`.
pub fn cmd_sha_oracle(spec: &str, choice: &SubgroupChoice, limits: &Limits, out: &mut impl Write) -> CliResult<bool> {
    let (parsed, g) = build_group(spec, limits)?;
    let mut all = true;
    for h in select_subgroups(&g, choice)? {
        let sha = sha2_omega(&g, &h)?;
        let inv = norm_one_report(&g, &h)?.invariant;
        let line = OracleLine {
            group: parsed.to_string(),
            subgroup: describe(&h),
            sha2_omega: sha.torsion_strings(),
            h1: inv.torsion_strings(),
            agree: sha == inv,
        };
        all &= line.agree;
        writeln!(out, "{}", serde_json::to_string(&line).expect("plain data")).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    if !all {
        return Err(CliError::Internal("the two routes disagree".into()));
    }
    Ok(all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

/// `verify-paper`: the alternating-group table. Returns the outcomes in
/// order; A7 is reported as skipped when a cap stops it.
pub fn cmd_verify_paper(limits: &Limits, out: &mut impl Write) -> CliResult<Vec<Outcome>> {
    let mut outcomes = Vec::new();
    let mut line = |name: &str, o: Outcome, detail: String, ms: u128, out: &mut dyn Write| {
        let tag = match o {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIPPED",
        };
        let _ = writeln!(out, "{tag:7} {name:28} {detail} ({ms} ms)");
        outcomes.push(o);
    };
    let cases: [(&str, &str, SubgroupChoice, &[&str], bool); 5] = [
        ("A4 / A3", "A4", SubgroupChoice::PointStabilizer(4), &["2"], false),
        ("A5 / A4", "A5", SubgroupChoice::PointStabilizer(5), &[], false),
        ("A6 / <(1 2 3 4 5),(1 2 3)>", "A6", SubgroupChoice::Generators("(1 2 3 4 5),(1 2 3)".into()), &[], false),
        ("A6 / <(1 2 3 4 5),(1 4)(5 6)>", "A6", SubgroupChoice::Generators("(1 2 3 4 5),(1 4)(5 6)".into()), &[], false),
        ("A7 / A6", "A7", SubgroupChoice::PointStabilizer(7), &[], true),
    ];
    for (name, spec, choice, want, may_skip) in cases {
        let t = Instant::now();
        let result = build_group(spec, limits).and_then(|(_, g)| {
            let h = select_subgroups(&g, &choice)?.remove(0);
            Ok(norm_one_report(&g, &h)?.invariant)
        });
        let ms = t.elapsed().as_millis();
        match result {
            Ok(inv) => {
                let got = inv.torsion_strings();
                let ok = inv.free_rank == 0 && got == want;
                let o = if ok { Outcome::Pass } else { Outcome::Fail };
                line(name, o, format!("H^1 = [{}], expected [{}]", got.join(", "), want.join(", ")), ms, out);
            }
            Err(CliError::Cap(m)) if may_skip => line(name, Outcome::Skipped, format!("cap exceeded: {m}"), ms, out),
            Err(e) => line(name, Outcome::Fail, e.message().to_string(), ms, out),
        }
    }
    let t = Instant::now();
    let conj = build_group("A6", limits).and_then(|(_, g)| {
        let h1 = select_subgroups(&g, &SubgroupChoice::Generators("(1 2 3 4 5),(1 2 3)".into()))?.remove(0);
        let h2 = select_subgroups(&g, &SubgroupChoice::Generators("(1 2 3 4 5),(1 4)(5 6)".into()))?.remove(0);
        Ok((are_conjugate_subgroups(&g, &h1, &h2)?, h1.order(), h2.order()))
    });
    let ms = t.elapsed().as_millis();
    match conj {
        Ok((c, o1, o2)) => {
            let o = if !c && o1 == 60 && o2 == 60 { Outcome::Pass } else { Outcome::Fail };
            line("A6: H1, H2 not conjugate", o, format!("orders {o1}, {o2}, conjugate = {c}"), ms, out);
        }
        Err(e) => line("A6: H1, H2 not conjugate", Outcome::Fail, e.message().to_string(), ms, out),
    }
    Ok(outcomes)
}
