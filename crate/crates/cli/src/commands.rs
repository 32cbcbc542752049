use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use ctk_core::analysis::{
    catalog_table, check_comparability, converges, default_params, lct_audit, standard_anchors,
    ComparabilityReport, ConvergenceReport, Witness,
};
use ctk_core::catalog::{dual_topology, neighborhood_family, Family, FamilyParam};
use ctk_core::geometry::{classify, q_form};
use ctk_core::regions::{sample_grid, sample_grid_parallel, Window};
use ctk_core::relations::{preserves, relates};
use ctk_core::sampling::random_pairs;
use ctk_core::{Point, RelationId, Scalar, TopologyId};

use crate::error::{CliError, CliResult};
use crate::input::{
    parse_map_spec, parse_resolution, parse_sequence_csv, parse_window, read_file, RegionSource,
};
use crate::{Command, OutputFormat, RasterFormat};

/// A report in both renderings; `refuted` selects exit status 3.
struct Report {
    json: serde_json::Value,
    text: String,
    refuted: bool,
}

impl Report {
    fn new<T: Serialize>(value: &T, text: String) -> CliResult<Report> {
        Ok(Report {
            json: to_json(value)?,
            text,
            refuted: false,
        })
    }

    fn refuted(mut self, refuted: bool) -> Report {
        self.refuted = refuted;
        self
    }
}

fn to_json<T: Serialize>(value: &T) -> CliResult<serde_json::Value> {
    serde_json::to_value(value)
        .map_err(|e| CliError::Core(ctk_core::Error::InternalConsistency(e.to_string())))
}

/// Runs one command; returns whether the checked property was refuted.
pub fn run(command: &Command, format: OutputFormat) -> CliResult<bool> {
    let report = match command {
        Command::Render {
            source,
            anchor,
            eps,
            window,
            res,
            format,
            out,
            parallel,
        } => {
            render(
                source,
                anchor,
                eps,
                window,
                res,
                *format,
                out.as_deref(),
                *parallel,
            )?;
            return Ok(false);
        }
        Command::Classify { x, y } => cmd_classify(x, y)?,
        Command::Relate { relation, x, y } => cmd_relate(relation, x, y)?,
        Command::Catalog => cmd_catalog()?,
        Command::Neighborhood { tid, x, eps } => cmd_neighborhood(tid, x, eps)?,
        Command::Member {
            source,
            p,
            anchor,
            eps,
        } => cmd_member(source, p, anchor, eps)?,
        Command::Compare { tid, anchor } => cmd_compare(tid, anchor)?,
        Command::Converge {
            family,
            limit,
            seq,
            eps,
        } => cmd_converge(family, limit, seq, eps)?,
        Command::LctAudit { anchor } => cmd_lct_audit(anchor)?,
        Command::Dual { tid } => cmd_dual(tid)?,
        Command::AutomorphismCheck {
            map,
            relation,
            samples,
            seed,
        } => cmd_automorphism(map, relation, *samples, *seed)?,
    };
    let mut stdout = std::io::stdout().lock();
    let written = match format {
        OutputFormat::Json => {
            let text = serde_json::to_string_pretty(&report.json)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(stdout, "{text}")
        }
        OutputFormat::Text => write!(stdout, "{}", report.text),
    };
    written.map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })?;
    Ok(report.refuted)
}

fn tid_arg(text: &str) -> CliResult<TopologyId> {
    Ok(text.parse()?)
}

fn anchors_arg(given: &[String]) -> CliResult<Vec<Point>> {
    if given.is_empty() {
        return Ok(standard_anchors());
    }
    given.iter().map(|a| Ok(a.parse()?)).collect()
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut out = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                out.push_str(cell);
            } else {
                out.push_str(cell);
                out.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        out.push('\n');
        out
    };
    let mut text = line(header.to_vec());
    for row in rows {
        text.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    text
}

fn cmd_classify(x: &str, y: &str) -> CliResult<Report> {
    let (x, y): (Point, Point) = (x.parse()?, y.parse()?);
    let class = classify(&x, &y);
    let q = q_form(&(&y - &x));
    Report::new(
        &json!({ "x": x, "y": y, "class": class, "q": q }),
        format!("{class} Q={q}\n"),
    )
}

fn cmd_relate(relation: &str, x: &str, y: &str) -> CliResult<Report> {
    let r: RelationId = relation.parse()?;
    let (x, y): (Point, Point) = (x.parse()?, y.parse()?);
    let holds = relates(r, &x, &y);
    Report::new(
        &json!({ "relation": r, "x": x, "y": y, "holds": holds }),
        format!("{x} {} {y}: {holds}\n", r.symbol()),
    )
}

fn cmd_catalog() -> CliResult<Report> {
    let rows = catalog_table()?;
    let opt = |v: Option<bool>| v.map_or("-".to_string(), |b| b.to_string());
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.index.to_string(),
                r.relation.clone(),
                r.kind.to_string(),
                r.formula.clone(),
                r.comparability.clone(),
                opt(r.comparability_verified),
                opt(r.contains_light_cone),
            ]
        })
        .collect();
    let header = [
        "tid",
        "relation",
        "kind",
        "formula",
        "vs-E",
        "verified",
        "light-cone",
    ];
    Report::new(&rows, table(&header, &cells))
}

fn cmd_neighborhood(tid: &str, x: &str, eps: &str) -> CliResult<Report> {
    let tid = tid_arg(tid)?;
    let x: Point = x.parse()?;
    let param = FamilyParam::Scale(eps.parse()?);
    let region = neighborhood_family(tid, &x).member(&param)?;
    let contains_anchor = region.contains(&x);
    Report::new(
        &json!({ "tid": tid, "anchor": x, "param": param, "region": region, "contains_anchor": contains_anchor }),
        format!("{region}\n"),
    )
}

fn cmd_member(source: &str, p: &str, anchor: &str, eps: &str) -> CliResult<Report> {
    let p: Point = p.parse()?;
    let anchor: Point = anchor.parse()?;
    let eps: Scalar = eps.parse()?;
    let region = RegionSource::parse(source)?.region(&anchor, &eps)?;
    let inside = region.contains(&p);
    Report::new(
        &json!({ "point": p, "region": region, "contains": inside }),
        format!("{inside}\n"),
    )
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Puncture { center, point, .. } => {
            format!("puncture: {center} inside, {point} excluded")
        }
        Witness::Escape {
            center,
            point,
            radius_sq,
            ..
        } => format!("escape: {point} inside, |{point} - {center}|^2 >= {radius_sq}"),
        Witness::Inclusion {
            ball,
            samples_checked,
            ..
        } => format!(
            "inclusion: region within ball at {} (radius^2 {}), {samples_checked} samples",
            ball.center, ball.radius_sq
        ),
    }
}

fn cmd_compare(tid: &str, anchors: &[String]) -> CliResult<Report> {
    let tid = tid_arg(tid)?;
    let report: ComparabilityReport = check_comparability(tid, &anchors_arg(anchors)?)?;
    let mut text = format!(
        "topology {tid}: {:?} verdict={}\n",
        report.claim, report.verdict
    );
    for w in report
        .finer_witnesses
        .iter()
        .chain(&report.coarser_witnesses)
    {
        text.push_str(&format!("  {}\n", describe_witness(w)));
    }
    for f in &report.failures {
        text.push_str(&format!("  missing: {f}\n"));
    }
    Ok(Report::new(&report, text)?.refuted(!report.verdict))
}

fn cmd_converge(family: &str, limit: &str, seq: &Path, eps: &[String]) -> CliResult<Report> {
    let family: Family = family.parse()?;
    let limit: Point = limit.parse()?;
    let seq = parse_sequence_csv(&read_file(seq)?)?;
    let params = if eps.is_empty() {
        default_params(family)
    } else {
        eps.iter()
            .map(|e| Ok(FamilyParam::Scale(e.parse()?)))
            .collect::<CliResult<Vec<_>>>()?
    };
    let report: ConvergenceReport = converges(&seq, &limit, family, &params)?;
    if !report.reverify(&seq) {
        return Err(CliError::Core(ctk_core::Error::InternalConsistency(
            "convergence witness failed to re-verify".into(),
        )));
    }
    let mut text = if report.converged {
        format!("converged to {limit} (relative to family {family})\n")
    } else {
        let term = report
            .witness_term
            .as_ref()
            .expect("refutation carries a term");
        format!(
            "refuted: member {} of family {family} excludes term {} = {} and every term after some index\n",
            report.witness_member.as_ref().expect("refutation carries a member"),
            term.index,
            term.point
        )
    };
    for m in &report.members {
        let param = match &m.param {
            FamilyParam::Scale(s) => s.to_string(),
            FamilyParam::Anchors(a) => format!("{} anchors", a.len()),
        };
        let line = match (&m.tail_index, &m.last_escape) {
            (Some(i), _) => format!("  {param}: tail from term {i}\n"),
            (None, Some(last)) => {
                format!("  {param}: term {} = {} escapes\n", last.index, last.point)
            }
            (None, None) => unreachable!("a member without a tail has an escaping term"),
        };
        text.push_str(&line);
    }
    Ok(Report::new(&report, text)?.refuted(!report.converged))
}

fn cmd_lct_audit(anchors: &[String]) -> CliResult<Report> {
    let rows = lct_audit(&anchors_arg(anchors)?)?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.tid.to_string(),
                r.formula.clone(),
                r.computed_contains_light_cone.to_string(),
                format!("{:?}", r.stated_lct_group),
                r.stated_contains_light_cone.to_string(),
                if r.discrepancy_flag {
                    "DISCREPANCY"
                } else {
                    ""
                }
                .to_string(),
            ]
        })
        .collect();
    let header = ["tid", "core", "contains", "group", "stated", "flag"];
    Report::new(&rows, table(&header, &cells))
}

fn cmd_dual(tid: &str) -> CliResult<Report> {
    let tid = tid_arg(tid)?;
    let dual = dual_topology(tid);
    Report::new(&json!({ "tid": tid, "dual": dual }), format!("{dual}\n"))
}

fn cmd_automorphism(map: &str, relation: &str, samples: usize, seed: u64) -> CliResult<Report> {
    let m = parse_map_spec(map)?;
    let r: RelationId = relation.parse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = random_pairs(&mut rng, samples);
    let report = preserves(&m, r, &pairs)?;
    let text = match &report.counterexample {
        None => format!("{map} preserves {r} on {} pairs\n", report.samples_checked),
        Some(c) => format!(
            "{map} breaks {r}: x={} y={} ({:?} check)\n",
            c.x, c.y, c.check
        ),
    };
    Ok(Report::new(&report, text)?.refuted(!report.holds))
}

#[allow(clippy::too_many_arguments)]
fn render(
    source: &str,
    anchor: &str,
    eps: &str,
    window: &str,
    res: &str,
    format: RasterFormat,
    out: Option<&Path>,
    parallel: bool,
) -> CliResult<()> {
    let anchor: Point = anchor.parse()?;
    let eps: Scalar = eps.parse()?;
    let region = RegionSource::parse(source)?.region(&anchor, &eps)?;
    let (lo, hi) = parse_window(window)?;
    let window = Window::new(lo, hi, parse_resolution(res)?)?;
    let bitmap = if parallel {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        sample_grid_parallel(&region, &window, threads)
    } else {
        sample_grid(&region, &window)
    };
    let bytes = match format {
        RasterFormat::Pgm => bitmap.to_pgm(),
        RasterFormat::Csv => bitmap.to_csv().into_bytes(),
    };
    let (result, path) = match out {
        Some(path) => (std::fs::write(path, &bytes), path.display().to_string()),
        None => (
            std::io::stdout().lock().write_all(&bytes),
            "<stdout>".into(),
        ),
    };
    result.map_err(|source| CliError::Io { path, source })
}
