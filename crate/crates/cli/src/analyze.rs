//! Post-hoc analysis of campaign result CSVs.
//!
//! Everything here recomputes from the persisted rows alone. For each
//! design x problem cell the report carries three summaries of the
//! run-level fitness samples:
//!
//! * **Mean** — the pairwise superiority confidence against each rival
//!   design, averaged over rivals, then averaged over every stopping point.
//! * **Final** — the same rival-averaged confidence at the last stopping
//!   point only.
//! * **Correlation** — the Pearson correlation between the stopping point
//!   and the confidence of beating the SGA1 baseline at that point, i.e.
//!   whether a design's edge over the fixed-probability baseline grows
//!   with run length.
//!
//! Two significance tables accompany the summaries: a one-way ANOVA across
//! the five averaging-interpretation designs (groups = per-problem Mean or
//! Final values) and a paired one-sided t-test pooling the A5 and A6
//! outlier-versus-average pairs across problems.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::campaign::{write_text, RESULTS_HEADER};
use crate::design::ALL_DESIGNS;
use opadapt_core::objectives::ObjectiveId;
use opadapt_core::stats::{
    anova_f, mann_whitney_confidence, mean_confidence, paired_t, pearson_correlation,
    AnovaResult, PairedT,
};

pub const BASELINE_DESIGN: &str = "SGA1";

/// The designs entering the ANOVA: one per measurement, all with the
/// averaging interpretation.
pub const ANOVA_DESIGNS: [&str; 5] = ["A1-I1", "A2-I1", "A4-I1", "A5-I1", "A6-I1"];

/// The outlier-versus-average pairs pooled into the paired t-test.
pub const PAIRED_DESIGNS: [(&str, &str); 2] = [("A5-I3", "A5-I1"), ("A6-I3", "A6-I1")];

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub design: String,
    pub problem: String,
    pub run: usize,
    pub seed: u64,
    pub stopping_point: u64,
    pub best_fitness: f64,
    pub solved: Option<u64>,
}

/// Parse a results CSV produced by the `run` subcommand.
pub fn parse_results_csv(text: &str) -> Result<Vec<ResultRow>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty results file")?;
    if header != RESULTS_HEADER {
        return Err(format!(
            "unexpected header '{header}' (expected '{RESULTS_HEADER}')"
        ));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(format!("line {lineno}: expected 7 fields, got {}", fields.len()));
        }
        let parse_err = |field: &str, what: &str| format!("line {lineno}: bad {what} '{field}'");
        rows.push(ResultRow {
            design: fields[0].to_string(),
            problem: fields[1].to_string(),
            run: fields[2].parse().map_err(|_| parse_err(fields[2], "run"))?,
            seed: fields[3].parse().map_err(|_| parse_err(fields[3], "seed"))?,
            stopping_point: fields[4]
                .parse()
                .map_err(|_| parse_err(fields[4], "stopping_point"))?,
            best_fitness: fields[5]
                .parse()
                .map_err(|_| parse_err(fields[5], "best_fitness"))?,
            solved: if fields[6].is_empty() {
                None
            } else {
                Some(fields[6].parse().map_err(|_| parse_err(fields[6], "solved"))?)
            },
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct CellSummary {
    pub design: String,
    pub problem: String,
    pub mean: f64,
    pub final_confidence: f64,
    /// `None` when the baseline is absent or the confidence series is
    /// constant (as it is for the baseline against itself).
    pub correlation: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    /// Designs present, in catalog order (unknown names appended last).
    pub designs: Vec<String>,
    /// Problems present, in catalog order.
    pub problems: Vec<String>,
    pub stopping_points: Vec<u64>,
    /// One summary per design x problem cell, design-major.
    pub cells: Vec<CellSummary>,
    pub baseline_present: bool,
    pub anova_mean: Option<AnovaResult>,
    pub anova_final: Option<AnovaResult>,
    pub paired_mean: Option<PairedT>,
    pub paired_final: Option<PairedT>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn cell(&self, design: &str, problem: &str) -> Option<&CellSummary> {
        self.cells
            .iter()
            .find(|c| c.design == design && c.problem == problem)
    }
}

fn catalog_order(present: &[String], catalog: &[&str]) -> Vec<String> {
    let mut ordered: Vec<String> = catalog
        .iter()
        .filter(|name| present.iter().any(|p| p == *name))
        .map(|s| s.to_string())
        .collect();
    for name in present {
        if !ordered.contains(name) {
            ordered.push(name.clone());
        }
    }
    ordered
}

/// Compute the full report from parsed rows.
pub fn analyze(rows: &[ResultRow]) -> Result<AnalysisReport, String> {
    if rows.is_empty() {
        return Err("no result rows to analyze".into());
    }

    // samples[(design, problem)][stopping_point] = fitnesses ordered by run.
    let mut samples: BTreeMap<(String, String), BTreeMap<u64, Vec<(usize, f64)>>> =
        BTreeMap::new();
    for row in rows {
        samples
            .entry((row.design.clone(), row.problem.clone()))
            .or_default()
            .entry(row.stopping_point)
            .or_default()
            .push((row.run, row.best_fitness));
    }

    let mut design_names: Vec<String> = Vec::new();
    let mut problem_names: Vec<String> = Vec::new();
    for (design, problem) in samples.keys() {
        if !design_names.contains(design) {
            design_names.push(design.clone());
        }
        if !problem_names.contains(problem) {
            problem_names.push(problem.clone());
        }
    }
    let design_catalog: Vec<&str> = ALL_DESIGNS.iter().map(|d| d.name).collect();
    let problem_catalog: Vec<&str> = ObjectiveId::ALL.iter().map(|p| p.code()).collect();
    let designs = catalog_order(&design_names, &design_catalog);
    let problems = catalog_order(&problem_names, &problem_catalog);
    if designs.len() < 2 {
        return Err("analysis needs at least two designs".into());
    }

    // Every cell must share one grid of stopping points.
    let stopping_points: Vec<u64> = samples
        .values()
        .next()
        .expect("non-empty samples")
        .keys()
        .copied()
        .collect();
    for ((design, problem), cell) in &samples {
        let points: Vec<u64> = cell.keys().copied().collect();
        if points != stopping_points {
            return Err(format!(
                "{design} on {problem} has stopping points {points:?}, others have {stopping_points:?}"
            ));
        }
        for (sp, runs) in cell {
            let mut seen = std::collections::BTreeSet::new();
            for (run, _) in runs {
                if !seen.insert(*run) {
                    return Err(format!(
                        "duplicate row for {design} on {problem}, run {run}, stopping point {sp}"
                    ));
                }
            }
        }
    }
    // Order each sample by run index so downstream arithmetic is stable.
    let samples: BTreeMap<(String, String), BTreeMap<u64, Vec<f64>>> = samples
        .into_iter()
        .map(|(key, cell)| {
            let cell = cell
                .into_iter()
                .map(|(sp, mut runs)| {
                    runs.sort_by_key(|&(run, _)| run);
                    (sp, runs.into_iter().map(|(_, f)| f).collect())
                })
                .collect();
            (key, cell)
        })
        .collect();

    let sample = |design: &str, problem: &str, sp: u64| -> Option<&Vec<f64>> {
        samples
            .get(&(design.to_string(), problem.to_string()))
            .and_then(|cell| cell.get(&sp))
    };

    let mut warnings = Vec::new();
    let baseline_present = designs.iter().any(|d| d == BASELINE_DESIGN);
    if !baseline_present {
        warnings.push(format!(
            "{BASELINE_DESIGN} records missing; correlation-versus-baseline omitted"
        ));
    }

    let last_sp = *stopping_points.last().expect("at least one stopping point");
    let mut cells = Vec::new();
    for design in &designs {
        for problem in &problems {
            if sample(design, problem, last_sp).is_none() {
                return Err(format!("{design} has no records on {problem}"));
            }
            let rival_names: Vec<&String> = designs
                .iter()
                .filter(|d| *d != design && sample(d, problem, last_sp).is_some())
                .collect();
            if rival_names.is_empty() {
                return Err(format!("{problem} is covered by fewer than two designs"));
            }

            let mut per_point = Vec::with_capacity(stopping_points.len());
            let mut versus_baseline = Vec::with_capacity(stopping_points.len());
            for &sp in &stopping_points {
                let target = sample(design, problem, sp).expect("grid validated");
                let rivals: Vec<&[f64]> = rival_names
                    .iter()
                    .map(|d| sample(d, problem, sp).expect("grid validated").as_slice())
                    .collect();
                per_point.push(
                    mean_confidence(target, &rivals).expect("at least one rival"),
                );
                if baseline_present {
                    let base = sample(BASELINE_DESIGN, problem, sp).expect("grid validated");
                    versus_baseline.push(mann_whitney_confidence(target, base).confidence);
                }
            }
            let mean = per_point.iter().sum::<f64>() / per_point.len() as f64;
            let final_confidence = *per_point.last().expect("non-empty");
            let correlation = if baseline_present {
                let x: Vec<f64> = stopping_points.iter().map(|&sp| sp as f64).collect();
                pearson_correlation(&x, &versus_baseline)
            } else {
                None
            };
            cells.push(CellSummary {
                design: design.clone(),
                problem: problem.clone(),
                mean,
                final_confidence,
                correlation,
            });
        }
    }

    let cell_value = |design: &str, problem: &str, which: fn(&CellSummary) -> f64| -> f64 {
        which(
            cells
                .iter()
                .find(|c| c.design == design && c.problem == problem)
                .expect("cells cover the full grid"),
        )
    };

    // ANOVA across the averaging-interpretation designs.
    let anova_for = |which: fn(&CellSummary) -> f64| -> Option<AnovaResult> {
        let groups: Vec<Vec<f64>> = ANOVA_DESIGNS
            .iter()
            .filter(|d| designs.iter().any(|x| x == *d))
            .map(|d| problems.iter().map(|p| cell_value(d, p, which)).collect())
            .collect();
        let total: usize = groups.iter().map(Vec::len).sum();
        if groups.len() >= 2 && total > groups.len() {
            Some(anova_f(&groups))
        } else {
            None
        }
    };
    let anova_mean = anova_for(|c| c.mean);
    let anova_final = anova_for(|c| c.final_confidence);
    if anova_mean.is_none() {
        warnings.push(format!(
            "ANOVA skipped; needs at least two of {} with enough problems",
            ANOVA_DESIGNS.join(", ")
        ));
    }

    // Pooled paired t: outlier interpretation minus averaging interpretation.
    let paired_for = |which: fn(&CellSummary) -> f64| -> Option<PairedT> {
        let mut hi = Vec::new();
        let mut lo = Vec::new();
        for (a, b) in PAIRED_DESIGNS {
            if designs.iter().any(|x| x == a) && designs.iter().any(|x| x == b) {
                for p in &problems {
                    hi.push(cell_value(a, p, which));
                    lo.push(cell_value(b, p, which));
                }
            }
        }
        if hi.len() >= 2 {
            Some(paired_t(&hi, &lo))
        } else {
            None
        }
    };
    let paired_mean = paired_for(|c| c.mean);
    let paired_final = paired_for(|c| c.final_confidence);
    if paired_mean.is_none() {
        warnings.push(
            "paired t-test skipped; needs both designs of at least one outlier/average pair"
                .into(),
        );
    }

    Ok(AnalysisReport {
        designs,
        problems,
        stopping_points,
        cells,
        baseline_present,
        anova_mean,
        anova_final,
        paired_mean,
        paired_final,
        warnings,
    })
}

fn render_table(
    out: &mut String,
    report: &AnalysisReport,
    title: &str,
    value: impl Fn(&CellSummary) -> Option<f64>,
) {
    let _ = writeln!(out, "{title}");
    let _ = write!(out, "{:<8}", "design");
    for problem in &report.problems {
        let _ = write!(out, "{problem:>9}");
    }
    let _ = writeln!(out);
    for design in &report.designs {
        let _ = write!(out, "{design:<8}");
        for problem in &report.problems {
            let cell = report.cell(design, problem).expect("full grid");
            match value(cell) {
                Some(v) => {
                    let _ = write!(out, "{v:>9.4}");
                }
                None => {
                    let _ = write!(out, "{:>9}", "n/a");
                }
            }
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(out);
}

fn render_significance(report: &AnalysisReport) -> String {
    let mut out = String::from("Significance\n");
    let anova_line = |label: &str, r: &Option<AnovaResult>| match r {
        Some(a) => format!(
            "  ANOVA over {} ({label}): F({}, {}) = {:.4}, p = {:.4}\n",
            ANOVA_DESIGNS.join("/"),
            a.df_between,
            a.df_within,
            a.f,
            a.p
        ),
        None => format!("  ANOVA over measurement designs ({label}): skipped\n"),
    };
    out.push_str(&anova_line("Mean", &report.anova_mean));
    out.push_str(&anova_line("Final", &report.anova_final));
    let paired_line = |label: &str, r: &Option<PairedT>| match r {
        Some(t) => format!(
            "  paired t, outlier vs average on A5/A6 ({label}): t({}) = {:.4}, p = {:.4}\n",
            t.n - 1,
            t.t,
            t.p_one_sided
        ),
        None => format!("  paired t, outlier vs average ({label}): skipped\n"),
    };
    out.push_str(&paired_line("Mean", &report.paired_mean));
    out.push_str(&paired_line("Final", &report.paired_final));
    out
}

/// Render the human-readable report printed by the `analyze` subcommand.
pub fn render_report(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Designs: {}  Problems: {}  Stopping points: {}..{} (step {})",
        report.designs.join(" "),
        report.problems.join(" "),
        report.stopping_points.first().expect("non-empty"),
        report.stopping_points.last().expect("non-empty"),
        if report.stopping_points.len() > 1 {
            report.stopping_points[1] - report.stopping_points[0]
        } else {
            0
        },
    );
    let _ = writeln!(out);
    render_table(&mut out, report, "Mean confidence over all stopping points", |c| {
        Some(c.mean)
    });
    render_table(&mut out, report, "Final confidence at the last stopping point", |c| {
        Some(c.final_confidence)
    });
    if report.baseline_present {
        render_table(
            &mut out,
            report,
            "Correlation of confidence versus SGA1 with stopping point",
            |c| c.correlation,
        );
    }
    out.push_str(&render_significance(report));
    for warning in &report.warnings {
        let _ = writeln!(out, "warning: {warning}");
    }
    out
}

fn figure_csv(report: &AnalysisReport, value: impl Fn(&CellSummary) -> Option<f64>) -> String {
    let mut text = String::from("design,problem,value\n");
    for cell in &report.cells {
        match value(cell) {
            Some(v) => {
                let _ = writeln!(text, "{},{},{:.16e}", cell.design, cell.problem, v);
            }
            None => {
                let _ = writeln!(text, "{},{},", cell.design, cell.problem);
            }
        }
    }
    text
}

/// Write the machine-readable report files into `dir`:
/// `figure_mean.csv`, `figure_final.csv`, `figure_correlation.csv`
/// (boxplot-ready per-design value distributions over problems) and
/// `significance.txt`.
pub fn write_report_files(report: &AnalysisReport, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    write_text(&dir.join("figure_mean.csv"), &figure_csv(report, |c| Some(c.mean)))?;
    write_text(
        &dir.join("figure_final.csv"),
        &figure_csv(report, |c| Some(c.final_confidence)),
    )?;
    if report.baseline_present {
        write_text(
            &dir.join("figure_correlation.csv"),
            &figure_csv(report, |c| c.correlation),
        )?;
    }
    write_text(&dir.join("significance.txt"), &render_significance(report))?;
    Ok(())
}
