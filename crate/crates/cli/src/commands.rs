//! The five subcommands. Each returns a [`Report`] and, for commands that
//! produce an instance, the document to write to `--out`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use morita_core::algebra::enumerate::CorpusCaps;
use morita_core::algebra::RingCalculus;
use morita_core::bicat::{coherence_suite, CoherenceLaw};
use morita_core::cstar::{certify_equivalence_cstar, CstarCalculus, CstarCondition, CstarVerdict};
use morita_core::groupoid::{
    check_biprincipal, morita_decide, morita_invariants, rep_report, GroupoidCalculus, MoritaVerdict,
};
use morita_core::morita::{
    certify_equivalence, induced_functor_report, search_equivalence, BoundedMoritaVerdict, EquivalenceCertificate,
    EquivalenceVerdict, Stage,
};
use morita_core::{ArrowCalculus, Bibundle, Bimodule, ExactMatrix, IsoOutcome, IsoSearch, MultiplicityBimodule};
use serde_json::{json, Value};

use crate::document::{build, read_document, to_document, Instance, InstanceDocument};
use crate::report::{Report, Status};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Calculus {
    Rings,
    Cstar,
    Groupoids,
}

#[derive(Clone, Debug)]
pub enum Command {
    Validate { files: Vec<PathBuf> },
    Compose { calculus: Calculus, lhs: PathBuf, rhs: PathBuf },
    Coherence { calculus: Calculus, files: Vec<PathBuf>, samples: usize },
    Morita { calculus: Calculus, files: Vec<PathBuf> },
    RepCheck { calculus: Calculus, file: PathBuf },
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    /// Tuple, dimension or size cap; each command has its own default.
    pub cap: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub report: Report,
    /// Instance produced by `compose` and `morita`, if any.
    pub document: Option<InstanceDocument>,
}

impl CommandOutput {
    fn report_only(report: Report) -> Self {
        CommandOutput { report, document: None }
    }
}

pub fn run(cmd: &Command, opts: &Options) -> CommandOutput {
    match cmd {
        Command::Validate { files } => CommandOutput::report_only(validate(files, opts)),
        Command::Compose { calculus, lhs, rhs } => compose(*calculus, lhs, rhs, opts),
        Command::Coherence { calculus, files, samples } => {
            CommandOutput::report_only(coherence(*calculus, files, *samples, opts))
        }
        Command::Morita { calculus, files } => morita(*calculus, files, opts),
        Command::RepCheck { calculus, file } => CommandOutput::report_only(rep_check(*calculus, file, opts)),
    }
}

fn load(path: &Path) -> Result<(InstanceDocument, Instance), CliError> {
    let doc = read_document(path)?;
    let inst = build(&doc)?;
    Ok((doc, inst))
}

fn load_all(paths: &[PathBuf], report: &mut Report) -> Option<Vec<(InstanceDocument, Instance)>> {
    let mut out = Vec::new();
    for p in paths {
        match load(p) {
            Ok(x) => out.push(x),
            Err(e) => {
                report.error("load", &e);
                return None;
            }
        }
    }
    Some(out)
}

fn rows(m: &ExactMatrix) -> Vec<Vec<u32>> {
    m.to_rows()
}

fn wrong_kind(doc: &InstanceDocument, expected: &str) -> CliError {
    CliError::Usage(format!("`{}` is a {} document, expected {expected}", doc.name, doc.kind.as_str()))
}

fn as_bimodule(doc: &InstanceDocument, inst: &Instance) -> Result<Bimodule, CliError> {
    match inst {
        Instance::Bimodule(m) => Ok(m.clone()),
        _ => Err(wrong_kind(doc, "a bimodule")),
    }
}

fn as_correspondence(doc: &InstanceDocument, inst: &Instance) -> Result<MultiplicityBimodule, CliError> {
    match inst {
        Instance::Correspondence(e) => Ok(e.clone()),
        _ => Err(wrong_kind(doc, "a correspondence")),
    }
}

fn as_bibundle(doc: &InstanceDocument, inst: &Instance) -> Result<Bibundle, CliError> {
    match inst {
        Instance::Bibundle(b) => Ok(b.clone()),
        _ => Err(wrong_kind(doc, "a bibundle")),
    }
}

// ----------------------------------------------------------------- validate

pub fn validate(files: &[PathBuf], opts: &Options) -> Report {
    let mut report = Report::new("validate", opts.seed);
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    for path in files {
        let label = path.display().to_string();
        match read_document(path) {
            Err(e) => report.error(&label, &e),
            Ok(doc) => {
                *names.entry(doc.name.clone()).or_default() += 1;
                match build(&doc) {
                    Ok(inst) => {
                        let mut w = json!({"kind": doc.kind.as_str(), "name": doc.name});
                        w["summary"] = inst.summary();
                        report.stage(label, "valid", Some(w));
                    }
                    Err(e) => {
                        report.stage(label, "invalid", Some(e.witness()));
                        report.fail();
                    }
                }
            }
        }
    }
    let duplicates: Vec<&String> = names.iter().filter(|(_, &c)| c > 1).map(|(n, _)| n).collect();
    if duplicates.is_empty() {
        report.stage("unique-names", "holds", None);
    } else {
        report.stage("unique-names", "fails", Some(json!({"duplicates": duplicates})));
        report.fail();
    }
    report
}

// ------------------------------------------------------------------ compose

/// Composes `f` then `g`, checks the unitors of the composite and, when an
/// operand is a unit, that the composite is isomorphic to the other one.
fn compose_in<C>(
    calc: &C,
    f: &C::Cell,
    g: &C::Cell,
    size: impl Fn(&C::Cell) -> Value,
    report: &mut Report,
) -> Option<C::Cell>
where
    C: ArrowCalculus,
    C::Cell: PartialEq,
{
    let h = match calc.compose(f, g) {
        Ok(h) => h,
        Err(e) => {
            report.error("compose", &e.into());
            return None;
        }
    };
    report.stage(
        "compose",
        "ok",
        Some(json!({"lhs": size(f), "rhs": size(g), "result": size(&h)})),
    );
    let unitors = calc.left_unitor(&h).map(|u| calc.is_iso(&u)).unwrap_or(false)
        && calc.right_unitor(&h).map(|u| calc.is_iso(&u)).unwrap_or(false);
    report.stage("unitors", if unitors { "iso" } else { "not-iso" }, None);
    if !unitors {
        report.fail();
    }
    let operand = if *f == calc.unit(&calc.source(f)) {
        Some(("left-unit", g))
    } else if *g == calc.unit(&calc.target(g)) {
        Some(("right-unit", f))
    } else {
        None
    };
    if let Some((name, other)) = operand {
        match calc.find_iso(&h, other) {
            Ok(IsoOutcome::Found(_)) => report.stage(name, "iso-found", None),
            Ok(IsoOutcome::Absent { proven }) => {
                report.stage(name, "absent", Some(json!({"proven": proven})));
                report.fail();
            }
            Err(e) => report.error(name, &e.into()),
        }
    }
    Some(h)
}

pub fn compose(calculus: Calculus, lhs: &Path, rhs: &Path, opts: &Options) -> CommandOutput {
    let mut report = Report::new("compose", opts.seed);
    let Some(loaded) = load_all(&[lhs.to_path_buf(), rhs.to_path_buf()], &mut report) else {
        return CommandOutput::report_only(report);
    };
    let (ld, li) = &loaded[0];
    let (rd, ri) = &loaded[1];
    let name = format!("{}.{}", ld.name, rd.name);
    let result = match calculus {
        Calculus::Rings => (|| -> Result<Option<Instance>, CliError> {
            let (f, g) = (as_bimodule(ld, li)?, as_bimodule(rd, ri)?);
            let calc = RingCalculus::new(IsoSearch::with_seed(opts.seed));
            let size = |m: &Bimodule| json!({"dim": m.dim()});
            Ok(compose_in(&calc, &f, &g, size, &mut report).map(Instance::Bimodule))
        })(),
        Calculus::Cstar => (|| {
            let (f, g) = (as_correspondence(ld, li)?, as_correspondence(rd, ri)?);
            let size = |e: &MultiplicityBimodule| json!({"mult": e.mult()});
            Ok(compose_in(&CstarCalculus, &f, &g, size, &mut report).map(Instance::Correspondence))
        })(),
        Calculus::Groupoids => (|| {
            let (f, g) = (as_bibundle(ld, li)?, as_bibundle(rd, ri)?);
            let size = |b: &Bibundle| json!({"carrier": b.len()});
            Ok(compose_in(&GroupoidCalculus, &f, &g, size, &mut report).map(Instance::Bibundle))
        })(),
    };
    match result {
        Ok(inst) => CommandOutput {
            document: inst.map(|i| to_document(&name, &i)),
            report,
        },
        Err(e) => {
            report.error("load", &e);
            CommandOutput::report_only(report)
        }
    }
}

// ---------------------------------------------------------------- coherence

fn coherence_in<C: ArrowCalculus>(
    calc: &C,
    cells: &[C::Cell],
    names: &[String],
    cap: usize,
    samples: usize,
    seed: u64,
    report: &mut Report,
) {
    report.stage(
        "cells",
        "loaded",
        Some(json!({"count": cells.len(), "calculus": calc.name(), "strict": calc.is_strict()})),
    );
    let results = match coherence_suite(calc, cells, cap, samples, seed) {
        Ok(r) => r,
        Err(e) => return report.error("suite", &e.into()),
    };
    let mut by_law: BTreeMap<CoherenceLaw, (usize, Vec<Value>)> = BTreeMap::new();
    for (tuple, r) in &results {
        let entry = by_law.entry(r.law).or_default();
        entry.0 += 1;
        if !r.holds {
            let cells: Vec<&str> = tuple.iter().map(|&i| names[i].as_str()).collect();
            entry.1.push(json!({"cells": cells, "witness": r.witness}));
        }
    }
    for (law, (count, failures)) in by_law {
        let name = serde_json::to_value(law).expect("laws serialize");
        let name = name.as_str().unwrap_or_default().to_string();
        let mut w = json!({"tuples": count});
        if calc.is_strict() {
            w["strict"] = json!(true);
        }
        if failures.is_empty() {
            report.stage(name, "holds", Some(w));
        } else {
            w["failures"] = json!(failures);
            report.stage(name, "fails", Some(w));
            report.fail();
        }
    }
}

pub fn coherence(calculus: Calculus, files: &[PathBuf], samples: usize, opts: &Options) -> Report {
    let mut report = Report::new("coherence", opts.seed);
    let cap = opts.cap.unwrap_or(4);
    let Some(loaded) = load_all(files, &mut report) else {
        return report;
    };
    let names: Vec<String> = loaded.iter().map(|(d, _)| d.name.clone()).collect();
    let result = match calculus {
        Calculus::Rings => loaded
            .iter()
            .map(|(d, i)| as_bimodule(d, i))
            .collect::<Result<Vec<_>, _>>()
            .map(|cells| {
                let calc = RingCalculus::new(IsoSearch::with_seed(opts.seed));
                coherence_in(&calc, &cells, &names, cap, samples, opts.seed, &mut report)
            }),
        Calculus::Cstar => loaded
            .iter()
            .map(|(d, i)| as_correspondence(d, i))
            .collect::<Result<Vec<_>, _>>()
            .map(|cells| coherence_in(&CstarCalculus, &cells, &names, cap, samples, opts.seed, &mut report)),
        Calculus::Groupoids => loaded
            .iter()
            .map(|(d, i)| as_bibundle(d, i))
            .collect::<Result<Vec<_>, _>>()
            .map(|cells| coherence_in(&GroupoidCalculus, &cells, &names, cap, samples, opts.seed, &mut report)),
    };
    if let Err(e) = result {
        report.error("load", &e);
    }
    report
}

// ------------------------------------------------------------------- morita

fn certificate_witnesses(c: &EquivalenceCertificate) -> [Value; 5] {
    [
        json!({"generators": c.right_projective.generator_count()}),
        json!({"generators": c.left_projective.generator_count()}),
        json!({"map": rows(&c.end_iso.map), "inverse": rows(&c.end_iso.inverse_map)}),
        json!({"dim": c.unit_left.source.dim(), "matrix": rows(&c.unit_left.matrix)}),
        json!({"dim": c.unit_right.source.dim(), "matrix": rows(&c.unit_right.matrix)}),
    ]
}

fn morita_rings_candidate(m: &Bimodule, name: &str, opts: &Options, report: &mut Report) -> Option<InstanceDocument> {
    let search = IsoSearch::with_seed(opts.seed);
    let verdict = match certify_equivalence(m, &search) {
        Ok(v) => v,
        Err(e) => {
            report.error("certify", &e.into());
            return None;
        }
    };
    match verdict {
        EquivalenceVerdict::Certified(c) => {
            for (stage, w) in Stage::ALL.iter().zip(certificate_witnesses(&c)) {
                report.stage(stage.name(), "passed", Some(w));
            }
            let inverse = Instance::Bimodule(c.inverse.clone());
            Some(to_document(&format!("{name}.inverse"), &inverse))
        }
        EquivalenceVerdict::Refuted(r) => {
            let at = Stage::ALL.iter().position(|&s| s == r.stage).unwrap_or(0);
            for (k, stage) in Stage::ALL.iter().enumerate() {
                match k.cmp(&at) {
                    std::cmp::Ordering::Less => report.stage(stage.name(), "passed", None),
                    std::cmp::Ordering::Equal => report.stage(
                        stage.name(),
                        "refuted",
                        Some(json!({"proven": r.proven, "detail": r.detail})),
                    ),
                    std::cmp::Ordering::Greater => report.stage(stage.name(), "not-reached", None),
                }
            }
            if r.proven {
                report.fail();
            } else {
                report.unknown();
            }
            None
        }
    }
}

fn morita_rings_search(
    (rd, ri): &(InstanceDocument, Instance),
    (sd, si): &(InstanceDocument, Instance),
    opts: &Options,
    report: &mut Report,
) -> Result<Option<InstanceDocument>, CliError> {
    let (Instance::Algebra(r), Instance::Algebra(s)) = (ri, si) else {
        return Err(CliError::Usage("rings: pass one bimodule or two algebras".into()));
    };
    let cap = opts.cap.unwrap_or(2);
    let verdict = search_equivalence(r, s, cap, &CorpusCaps::default(), &IsoSearch::with_seed(opts.seed))?;
    Ok(match verdict {
        BoundedMoritaVerdict::Equivalent(c) => {
            report.stage("search", "equivalence-found", Some(json!({"cap": cap, "dim": c.bimodule.dim()})));
            for (stage, w) in Stage::ALL.iter().zip(certificate_witnesses(&c)) {
                report.stage(stage.name(), "passed", Some(w));
            }
            Some(to_document(&format!("{}~{}", rd.name, sd.name), &Instance::Bimodule(c.bimodule.clone())))
        }
        BoundedMoritaVerdict::Unknown {
            cap,
            candidates,
            none_within_cap_proven,
        } => {
            report.stage(
                "search",
                "none-within-cap",
                Some(json!({"cap": cap, "candidates": candidates, "proven": none_within_cap_proven})),
            );
            report.unknown();
            None
        }
    })
}

fn morita_cstar(e: &MultiplicityBimodule, name: &str, report: &mut Report) -> Option<InstanceDocument> {
    let order = [CstarCondition::Full, CstarCondition::CompactsIso, CstarCondition::RoundTrip];
    let names = ["full", "compacts-iso", "round-trip"];
    match certify_equivalence_cstar(e) {
        CstarVerdict::Certified {
            conjugate,
            forward,
            backward,
            compacts,
        } => {
            report.stage(names[0], "passed", None);
            report.stage(names[1], "passed", Some(json!(compacts)));
            report.stage(
                names[2],
                "passed",
                Some(json!({"forward": forward.mult(), "backward": backward.mult()})),
            );
            Some(to_document(&format!("{name}.conjugate"), &Instance::Correspondence(conjugate)))
        }
        CstarVerdict::Refuted { condition, compacts } => {
            let at = order.iter().position(|&c| c == condition).unwrap_or(0);
            for (k, n) in names.iter().enumerate() {
                match k.cmp(&at) {
                    std::cmp::Ordering::Less => report.stage(*n, "passed", None),
                    std::cmp::Ordering::Equal => report.stage(*n, "refuted", Some(json!(compacts))),
                    std::cmp::Ordering::Greater => report.stage(*n, "not-reached", None),
                }
            }
            report.fail();
            None
        }
    }
}

fn morita_groupoids(
    (gd, gi): &(InstanceDocument, Instance),
    (hd, hi): &(InstanceDocument, Instance),
    report: &mut Report,
) -> Result<Option<InstanceDocument>, CliError> {
    let (Instance::Groupoid(g), Instance::Groupoid(h)) = (gi, hi) else {
        return Err(CliError::Usage("groupoids: pass one bibundle or two groupoids".into()));
    };
    let (og, oh) = (morita_invariants(g).orbits.len(), morita_invariants(h).orbits.len());
    let orbits = json!({"left": og, "right": oh});
    Ok(match morita_decide(g, h) {
        MoritaVerdict::Equivalent { certificate, matching } => {
            report.stage("orbits", "match", Some(orbits));
            report.stage("isotropy", "match", Some(json!({"matching": matching})));
            let check = check_biprincipal(&certificate);
            report.stage(
                "certificate",
                if check.holds { "biprincipal" } else { "not-biprincipal" },
                Some(json!({"carrier": certificate.len(), "principality": check})),
            );
            if !check.holds {
                report.fail();
            }
            Some(to_document(&format!("{}~{}", gd.name, hd.name), &Instance::Bibundle(certificate)))
        }
        MoritaVerdict::NotEquivalent { obstruction } => {
            let orbit_obstruction = matches!(obstruction, morita_core::groupoid::MoritaObstruction::OrbitCount { .. });
            report.stage("orbits", if orbit_obstruction { "differ" } else { "match" }, Some(orbits));
            if !orbit_obstruction {
                report.stage("isotropy", "differ", Some(json!(obstruction)));
            }
            report.fail();
            None
        }
        MoritaVerdict::Unknown { reason } => {
            report.stage("orbits", "match", Some(orbits));
            report.stage("isotropy", "unknown", Some(json!({"reason": reason})));
            report.unknown();
            None
        }
    })
}

pub fn morita(calculus: Calculus, files: &[PathBuf], opts: &Options) -> CommandOutput {
    let mut report = Report::new("morita", opts.seed);
    let Some(loaded) = load_all(files, &mut report) else {
        return CommandOutput::report_only(report);
    };
    let result = match (calculus, loaded.as_slice()) {
        (Calculus::Rings, [(d, i)]) => {
            as_bimodule(d, i).map(|m| morita_rings_candidate(&m, &d.name, opts, &mut report))
        }
        (Calculus::Rings, [a, b]) => morita_rings_search(a, b, opts, &mut report),
        (Calculus::Cstar, [(d, i)]) => as_correspondence(d, i).map(|e| morita_cstar(&e, &d.name, &mut report)),
        (Calculus::Groupoids, [(d, i)]) => as_bibundle(d, i).map(|b| {
            let check = check_biprincipal(&b);
            report.stage("left-principal", verdict(check.left.holds), Some(json!(check.left)));
            report.stage("right-principal", verdict(check.right.holds), Some(json!(check.right)));
            if !check.holds {
                report.fail();
            }
            None
        }),
        (Calculus::Groupoids, [a, b]) => morita_groupoids(a, b, &mut report),
        _ => Err(CliError::Usage(format!("morita takes one or two instances, got {}", loaded.len()))),
    };
    match result {
        Ok(document) => CommandOutput { report, document },
        Err(e) => {
            report.error("arguments", &e);
            CommandOutput::report_only(report)
        }
    }
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

// ---------------------------------------------------------------- rep-check

pub fn rep_check(calculus: Calculus, file: &Path, opts: &Options) -> Report {
    let mut report = Report::new("rep-check", opts.seed);
    let Some(loaded) = load_all(&[file.to_path_buf()], &mut report) else {
        return report;
    };
    let (d, i) = &loaded[0];
    let result = match calculus {
        Calculus::Rings => as_bimodule(d, i).and_then(|m| {
            let search = IsoSearch::with_seed(opts.seed);
            let cap = opts.cap.unwrap_or(2);
            let cert = match certify_equivalence(&m, &search)? {
                EquivalenceVerdict::Certified(c) => c,
                EquivalenceVerdict::Refuted(r) => {
                    return Err(morita_core::Error::NotCertified(format!("{}: {}", r.stage.name(), r.detail)).into())
                }
            };
            report.stage("certified", "holds", None);
            let r = induced_functor_report(Some(&cert), cap, &CorpusCaps::default(), &search)?;
            report.stage(
                "hom-dimensions",
                verdict(r.hom_dimensions_preserved),
                Some(json!({"pairs": r.hom_pairs_checked, "module_dims": r.module_dims, "image_dims": r.image_dims})),
            );
            report.stage("injective-on-classes", verdict(r.injective_on_classes), None);
            report.stage(
                "round-trips",
                verdict(r.round_trips_ok == r.round_trips_checked),
                Some(json!({"ok": r.round_trips_ok, "checked": r.round_trips_checked, "exhaustive": r.exhaustive})),
            );
            if !r.failures.is_empty() {
                report.stage("failures", "listed", Some(json!(r.failures)));
            }
            Ok(r.passes())
        }),
        Calculus::Groupoids => as_bibundle(d, i).and_then(|b| {
            let r = rep_report(&b, opts.cap.unwrap_or(4))?;
            report.stage("certified", "holds", None);
            report.stage(
                "map-counts",
                verdict(r.map_counts_preserved),
                Some(json!({"pairs": r.map_pairs_checked, "action_sizes": r.action_sizes, "induced_sizes": r.induced_sizes})),
            );
            report.stage("injective-on-classes", verdict(r.injective_on_classes), None);
            report.stage("round-trips", verdict(r.round_trips_ok), None);
            report.stage("unit-induction", verdict(r.unit_induction_ok), None);
            report.stage("action-groupoids", verdict(r.action_groupoids_equivalent), None);
            if !r.failures.is_empty() {
                report.stage("failures", "listed", Some(json!(r.failures)));
            }
            Ok(r.passes())
        }),
        Calculus::Cstar => Err(CliError::Usage("rep-check supports the rings and groupoids calculi".into())),
    };
    match result {
        Ok(true) => {}
        Ok(false) => report.fail(),
        Err(e) => report.error("certified", &e),
    }
    report
}

impl From<Status> for std::process::ExitCode {
    fn from(s: Status) -> Self {
        std::process::ExitCode::from(s.exit_code())
    }
}
