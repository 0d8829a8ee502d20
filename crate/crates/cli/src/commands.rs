use std::fs;
use std::path::Path;
use std::sync::Mutex;
use std::time::Duration;

use qdf_core::alg::{classify as classify_table, isotopic_to_group};
use qdf_core::design::{self, is_2design, Block, BlockFamily, DesignError, DevEquality};
use qdf_core::dfbq::{self, general_construct, general_decompose, Dfbq, DfbqError, GroupPresentation};
use qdf_core::format::{
    looks_like_dfbq, parse_block_list, parse_dfbq, parse_family, parse_permutation, parse_permutation_list,
    parse_table, parse_table_pair, write_design, write_dfbq, write_table, FormatError,
};
use qdf_core::search::{
    block_battery, enumerate_dfbq, enumerate_dfbq_par, enumerate_latin, enumerate_latin_par,
    exhaustive_structure_check, find_difference_families, labeled_groups, sampling, Dedup, EnumerationReport, Mode,
    SearchError, SearchParams,
};
use qdf_core::CayleyTable;
use serde_json::{json, Value};

use crate::outcome::{from_design_error, from_dfbq_error, CliError, CmdResult, Outcome};
use crate::{Kind, ModeArg};

/// Early exit from a verb: either a violation to report or an input error.
enum Stop {
    Violation(Outcome),
    Error(CliError),
}

impl From<CliError> for Stop {
    fn from(e: CliError) -> Self {
        Stop::Error(e)
    }
}

impl From<SearchError> for Stop {
    fn from(e: SearchError) -> Self {
        Stop::Error(CliError(e.to_string()))
    }
}

fn stop(r: CmdResult) -> Stop {
    match r {
        Ok(outcome) => Stop::Violation(outcome),
        Err(e) => Stop::Error(e),
    }
}

fn dfbq_stop(e: DfbqError) -> Stop {
    stop(from_dfbq_error(e))
}

fn design_stop(e: DesignError) -> Stop {
    stop(from_design_error(e))
}

fn run(body: impl FnOnce() -> Result<Outcome, Stop>) -> CmdResult {
    match body() {
        Ok(o) | Err(Stop::Violation(o)) => Ok(o),
        Err(Stop::Error(e)) => Err(e),
    }
}

fn error(msg: impl Into<String>) -> Stop {
    Stop::Error(CliError(msg.into()))
}

fn read(path: &Path) -> Result<String, Stop> {
    fs::read_to_string(path).map_err(|e| error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Stop> {
    fs::write(path, text).map_err(|e| error(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: FormatError) -> Stop {
    match e {
        FormatError::Dfbq(e) => dfbq_stop(e),
        other => error(format!("{}: {other}", path.display())),
    }
}

fn table_at(path: &Path) -> Result<CayleyTable, Stop> {
    parse_table(&read(path)?).map_err(|e| in_file(path, e))
}

fn dfbq_at(path: &Path) -> Result<Dfbq, Stop> {
    parse_dfbq(&read(path)?).map_err(|e| in_file(path, e))
}

/// A DFBQ file, or a group table standing for its subtraction DFBQ.
fn structure_at(path: &Path) -> Result<Dfbq, Stop> {
    let text = read(path)?;
    if looks_like_dfbq(&text) {
        return parse_dfbq(&text).map_err(|e| in_file(path, e));
    }
    let table = parse_table(&text).map_err(|e| in_file(path, e))?;
    let group = GroupPresentation::new(table).map_err(|_| {
        error(format!("{}: a plain table must be a group; give a DFBQ file (add, \"%\", sub) instead", path.display()))
    })?;
    Ok(group.subtraction_dfbq())
}

fn family_at(path: &Path, order: usize) -> Result<BlockFamily, Stop> {
    parse_family(&read(path)?, order).map_err(|e| in_file(path, e))
}

fn lines_of(text: &str) -> Vec<String> {
    text.lines().map(String::from).collect()
}

fn block_json(blocks: &[Block]) -> Value {
    blocks.iter().map(|b| b.elements().collect::<Vec<_>>()).collect()
}

fn design_outcome(v: usize, blocks: &[Block], k: usize, lambda: usize) -> Outcome {
    Outcome::ok(
        lines_of(&write_design(v, blocks, k, lambda)),
        json!({ "v": v, "b": blocks.len(), "k": k, "lambda": lambda, "blocks": block_json(blocks) }),
    )
}

/// A design check that failed: the witnesses plus the blocks that were checked.
fn failed_design(e: DesignError, v: usize, blocks: &[Block]) -> Stop {
    match stop(from_design_error(e)) {
        Stop::Violation(mut o) => {
            let mut sorted = blocks.to_vec();
            sorted.sort();
            let mut lines = vec![format!("v={v} b={}", sorted.len())];
            lines.extend(sorted.iter().map(ToString::to_string));
            o.payload["blocks"] = block_json(&sorted);
            Stop::Violation(o.with_lines(lines))
        }
        other => other,
    }
}

pub fn classify(path: &Path) -> CmdResult {
    run(|| {
        let table = table_at(path)?;
        let class = classify_table(&table);
        let mut lines = vec![format!("class={}", class.name())];
        if let Some(e) = class.identity() {
            lines.push(format!("identity={e}"));
        }
        let isotopic = if class.is_quasigroup() {
            let iso = isotopic_to_group(&table).map_err(|e| error(e.to_string()))?.is_some();
            lines.push(format!("isotopic_to_group={}", if iso { "yes" } else { "no" }));
            Some(iso)
        } else {
            None
        };
        let payload = json!({ "class": class.name(), "identity": class.identity(), "isotopic_to_group": isotopic });
        Ok(Outcome::ok(lines, payload))
    })
}

pub fn verify_dfbq(file: Option<&Path>, add: Option<&Path>, sub: Option<&Path>) -> CmdResult {
    run(|| {
        let (a, s) = match (file, add, sub) {
            (Some(f), _, _) => parse_table_pair(&read(f)?).map_err(|e| in_file(f, e))?,
            (None, Some(a), Some(s)) => (table_at(a)?, table_at(s)?),
            _ => return Err(error("give a DFBQ file or both --add and --sub")),
        };
        let d = dfbq::verify_dfbq(a, s).map_err(dfbq_stop)?;
        Ok(Outcome::ok(
            vec![format!("dfbq order={} o={} e={}", d.order(), d.o(), d.e())],
            json!({ "order": d.order(), "o": d.o(), "e": d.e() }),
        ))
    })
}

pub fn decompose(path: &Path, group_out: Option<&Path>) -> CmdResult {
    run(|| {
        let d = dfbq_at(path)?;
        let dec = general_decompose(&d).map_err(dfbq_stop)?;
        let group_text = write_table(dec.group.table());
        if let Some(out) = group_out {
            write(out, &group_text)?;
        }
        let mut lines = vec![
            format!("alpha={}", dec.alpha),
            format!("beta={}", dec.beta),
            format!("group identity={}", dec.group.identity()),
        ];
        lines.extend(lines_of(&group_text));
        let payload = json!({
            "identity": dec.group.identity(),
            "alpha": dec.alpha.images().collect::<Vec<_>>(),
            "beta": dec.beta.images().collect::<Vec<_>>(),
            "group": dec.group.table().rows(),
        });
        Ok(Outcome::ok(lines, payload))
    })
}

pub fn construct(group: &Path, alpha: &str, beta: &str, out: Option<&Path>) -> CmdResult {
    run(|| {
        let g = GroupPresentation::new(table_at(group)?).map_err(|e| error(format!("{}: {e}", group.display())))?;
        let alpha = parse_permutation(alpha).map_err(|e| error(format!("--alpha: {e}")))?;
        let beta = parse_permutation(beta).map_err(|e| error(format!("--beta: {e}")))?;
        let d = general_construct(&g, &alpha, &beta).map_err(dfbq_stop)?;
        let text = write_dfbq(&d);
        let lines = match out {
            Some(path) => {
                write(path, &text)?;
                vec![format!("dfbq order={} o={} e={}", d.order(), d.o(), d.e())]
            }
            None => lines_of(&text),
        };
        let payload = json!({
            "o": d.o(),
            "e": d.e(),
            "add": d.add_table().rows(),
            "sub": d.sub_table().rows(),
        });
        Ok(Outcome::ok(lines, payload))
    })
}

pub fn develop(input: &Path, blocks: &Path, translations: Option<&Path>) -> CmdResult {
    run(|| {
        let text = read(input)?;
        let (add, sub) = if looks_like_dfbq(&text) {
            let d = parse_dfbq(&text).map_err(|e| in_file(input, e))?;
            d.into_tables()
        } else {
            let t = parse_table(&text).map_err(|e| in_file(input, e))?;
            (t.clone(), t)
        };
        let n = add.order();
        let fam = family_at(blocks, n)?;
        match translations {
            Some(path) => {
                let perms = parse_permutation_list(&read(path)?).map_err(|e| in_file(path, e))?;
                let gd = design::generalized_develop(n, &perms, &sub, &fam).map_err(design_stop)?;
                Ok(design_outcome(n, &gd.design.block_vec(), gd.k, gd.lambda))
            }
            None => {
                let developed = design::develop(&fam, &add).map_err(design_stop)?.block_vec();
                let (k, lambda) = is_2design(n, &developed).map_err(|e| failed_design(e, n, &developed))?;
                Ok(design_outcome(n, &developed, k, lambda))
            }
        }
    })
}

pub fn check_design(v: usize, path: &Path) -> CmdResult {
    run(|| {
        let blocks = parse_block_list(&read(path)?, v).map_err(|e| in_file(path, e))?;
        let (k, lambda) = is_2design(v, &blocks).map_err(|e| failed_design(e, v, &blocks))?;
        Ok(design_outcome(v, &blocks, k, lambda))
    })
}

pub fn verify_qdf(input: &Path, blocks: &Path) -> CmdResult {
    run(|| {
        let d = structure_at(input)?;
        let fam = family_at(blocks, d.order())?;
        let cert = design::verify_qdf(&d, &fam).map_err(design_stop)?;
        Ok(Outcome::ok(
            vec![format!("k={} lambda={}", cert.k, cert.lambda), format!("blocks={}", fam.len())],
            json!({ "k": cert.k, "lambda": cert.lambda, "blocks": fam.len(), "per_difference": cert.per_difference }),
        ))
    })
}

pub fn dev_equality(
    input: Option<&Path>,
    blocks: Option<&Path>,
    order: Option<usize>,
    samples: u64,
    seed: u64,
) -> CmdResult {
    run(|| {
        let cases: Vec<(Dfbq, BlockFamily)> = match (input, order) {
            (Some(path), _) => {
                let d = structure_at(path)?;
                let n = d.order();
                let mut families = match blocks {
                    Some(b) => vec![family_at(b, n)?],
                    None => block_battery(n, seed, 0),
                };
                if n >= 2 {
                    for i in 0..samples {
                        let k = 2 + (i as usize) % (n - 1);
                        let count = 1 + (i as usize) % 3;
                        families.push(sampling::random_family(n, k, count, &mut sampling::case_rng(seed, i + 1)));
                    }
                }
                families.into_iter().map(|f| (d.clone(), f)).collect()
            }
            (None, Some(n)) => {
                if samples == 0 {
                    return Err(error("--order needs --samples greater than 0"));
                }
                let groups = labeled_groups(n)?;
                (0..samples).map(|i| sampling::random_case(&groups, seed, i)).collect()
            }
            (None, None) => return Err(error("give a DFBQ or group file, or --order with --samples")),
        };
        let total = cases.len();
        for (i, (d, fam)) in cases.iter().enumerate() {
            match design::dev_equality(d, fam).map_err(design_stop)? {
                DevEquality::Equal => {}
                DevEquality::Mismatch(b) => {
                    let w = format!("case {i}: developments differ at block {{{b}}}");
                    return Err(Stop::Violation(
                        Outcome::violation(vec![w], json!({ "checked": i + 1, "equal": i, "total": total }))
                            .with_lines(vec![format!("{i}/{total} equal before the mismatch")]),
                    ));
                }
            }
        }
        Ok(Outcome::ok(vec![format!("{total}/{total} equal")], json!({ "checked": total, "equal": total })))
    })
}

pub fn enumerate(kind: Kind, order: usize, mode: ModeArg, emit: bool, no_timing: bool, jobs: usize) -> CmdResult {
    run(|| {
        let mode = match mode {
            ModeArg::Brute => Mode::Brute,
            ModeArg::Constructive => Mode::Constructive,
        };
        let emitted = Mutex::new(Vec::new());
        let record = |text: String| {
            if emit {
                emitted.lock().expect("no panics while locked").push(text);
            }
        };
        let mut report: EnumerationReport = match kind {
            Kind::Latin => {
                if mode != Mode::Brute {
                    return Err(error("latin enumeration supports only --mode brute"));
                }
                let consumer = |t: &CayleyTable| record(write_table(t));
                if jobs > 1 {
                    enumerate_latin_par(order, jobs, consumer)?
                } else {
                    enumerate_latin(order, consumer)?
                }
            }
            Kind::Dfbq => {
                let consumer = |d: &Dfbq| record(write_dfbq(d));
                if jobs > 1 {
                    enumerate_dfbq_par(order, mode, jobs, consumer)?
                } else {
                    enumerate_dfbq(order, mode, consumer)?
                }
            }
        };
        if no_timing {
            report.elapsed = Duration::ZERO;
        }
        let mut lines = vec![report.to_string()];
        if report.mode == Mode::Constructive {
            lines.push(format!("generated={} distinct={}", report.generated, report.count));
        }
        for text in emitted.into_inner().expect("no panics while locked") {
            lines.push(String::new());
            lines.extend(lines_of(&text));
        }
        let payload = json!({
            "order": report.order,
            "mode": report.mode.as_str(),
            "count": report.count,
            "generated": report.generated,
            "checksum": report.checksum.to_string(),
            "elapsed_ms": report.elapsed.as_millis() as u64,
        });
        Ok(Outcome::ok(lines, payload))
    })
}

pub fn structure_check(order: usize, seed: u64, jobs: usize) -> CmdResult {
    run(|| {
        let r = exhaustive_structure_check(order, seed, jobs)?;
        let summary = format!("{}/{} pass", r.passed, r.total);
        let payload = json!({
            "order": r.order,
            "total": r.total,
            "passed": r.passed,
            "families_checked": r.families_checked,
            "first_violation": r.first_violation,
        });
        Ok(match &r.first_violation {
            None => Outcome::ok(vec![summary], payload),
            Some(w) => Outcome::violation(vec![w.clone()], payload).with_lines(vec![summary]),
        })
    })
}

pub fn search_df(input: &Path, k: usize, lambda: usize, max_blocks: usize, dedup: bool) -> CmdResult {
    run(|| {
        let d = structure_at(input)?;
        let dedup = if dedup { Dedup::ByDevelopment } else { Dedup::None };
        let params = SearchParams::new(k, lambda, max_blocks, dedup)?;
        let out = find_difference_families(&d, &params);
        let families: Vec<Value> = out.families.iter().map(|f| block_json(f.blocks())).collect();
        let mut lines = Vec::new();
        match (&out.infeasible, out.family_size) {
            (Some(reason), _) => {
                lines.push(format!("infeasible: {reason}"));
                lines.push("families=0".to_string());
            }
            (None, size) => {
                lines.push(format!("families={} blocks_per_family={}", out.families.len(), size.unwrap_or(0)));
                for fam in &out.families {
                    let blocks: Vec<String> = fam.blocks().iter().map(|b| format!("{{{b}}}")).collect();
                    lines.push(blocks.join(" "));
                }
            }
        }
        let payload = json!({
            "k": k,
            "lambda": lambda,
            "blocks_per_family": out.family_size,
            "infeasible": out.infeasible,
            "families": families,
        });
        Ok(Outcome::ok(lines, payload))
    })
}
