//! Report and chart emission.
//!
//! Every writer here is byte-deterministic: documents are assembled by
//! string formatting in a fixed field order, reals are printed with six
//! decimal places (negative zero normalized to zero), and SVG coordinates
//! with two. Rendering the same inputs twice yields identical files on any
//! platform.

use crate::analysis::RankComparison;
use crate::io::{IoError, IoResult};
use crate::model::{Error, RankMethod, Ranking};
use crate::weighting::{WeightDetail, WeightReport};
use crate::DecisionProblem;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// Fixed-point real for documents: 6 decimal places, no negative zero.
pub fn fmt_real(v: f64) -> String {
    let s = format!("{:.6}", v);
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Fixed-point coordinate for SVG: 2 decimal places, no negative zero.
fn fmt_coord(v: f64) -> String {
    let s = format!("{:.2}", v);
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn json_reals(vs: &[f64]) -> String {
    let items: Vec<String> = vs.iter().map(|&v| fmt_real(v)).collect();
    format!("[{}]", items.join(", "))
}

fn json_ints<T: std::fmt::Display>(vs: &[T]) -> String {
    let items: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn json_strs(vs: &[String]) -> String {
    let items: Vec<String> = vs.iter().map(|s| json_str(s)).collect();
    format!("[{}]", items.join(", "))
}

fn push_indented(out: &mut String, block: &str, indent: usize) {
    let pad = " ".repeat(indent);
    for (i, line) in block.lines().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&pad);
        out.push_str(line);
    }
}

/// The `weights` document: one weight vector and its per-criterion
/// intermediates.
pub fn weights_document(report: &WeightReport, criteria: &[String]) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"format_version\": \"1\",\n");
    out.push_str("  \"kind\": \"weights\",\n");
    let _ = writeln!(out, "  \"method\": {},", json_str(report.method.as_str()));
    let _ = writeln!(out, "  \"criteria\": {},", json_strs(criteria));
    let _ = writeln!(out, "  \"weights\": {},", json_reals(report.weights.as_slice()));
    let _ = writeln!(out, "  \"fallback_equal\": {},", report.fallback);
    match &report.detail {
        WeightDetail::Entropy { entropy, divergence } => {
            out.push_str("  \"detail\": {\n");
            let _ = writeln!(out, "    \"entropy\": {},", json_reals(entropy));
            let _ = writeln!(out, "    \"divergence\": {}", json_reals(divergence));
            out.push_str("  }\n");
        }
        WeightDetail::StdDev { sigma } => {
            out.push_str("  \"detail\": {\n");
            let _ = writeln!(out, "    \"sigma\": {}", json_reals(sigma));
            out.push_str("  }\n");
        }
        WeightDetail::None => out.push_str("  \"detail\": null\n"),
    }
    out.push('}');
    out.push('\n');
    out
}

/// The `ranking` document: scores, ranks, and TOPSIS separations when
/// present.
pub fn ranking_document(ranking: &Ranking, alternatives: &[String]) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"format_version\": \"1\",\n");
    out.push_str("  \"kind\": \"ranking\",\n");
    let _ = writeln!(out, "  \"method\": {},", json_str(ranking.method.as_str()));
    let _ = writeln!(out, "  \"alternatives\": {},", json_strs(alternatives));
    let _ = writeln!(out, "  \"scores\": {},", json_reals(&ranking.scores));
    let _ = writeln!(out, "  \"ranks\": {},", json_ints(&ranking.ranks));
    if let Some(d) = &ranking.diagnostics {
        let _ = writeln!(out, "  \"s_plus\": {},", json_reals(&d.s_plus));
        let _ = writeln!(out, "  \"s_minus\": {},", json_reals(&d.s_minus));
    }
    let _ = writeln!(out, "  \"degenerate\": {}", ranking.degenerate);
    out.push('}');
    out.push('\n');
    out
}

/// The `comparison` document for two rankings of the same alternatives.
pub fn comparison_document(
    comparison: &RankComparison,
    method_a: RankMethod,
    method_b: RankMethod,
    ranks_a: &[usize],
    ranks_b: &[usize],
    alternatives: &[String],
) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"format_version\": \"1\",\n");
    out.push_str("  \"kind\": \"comparison\",\n");
    let _ = writeln!(out, "  \"method_a\": {},", json_str(method_a.as_str()));
    let _ = writeln!(out, "  \"method_b\": {},", json_str(method_b.as_str()));
    let _ = writeln!(out, "  \"alternatives\": {},", json_strs(alternatives));
    let _ = writeln!(out, "  \"ranks_a\": {},", json_ints(ranks_a));
    let _ = writeln!(out, "  \"ranks_b\": {},", json_ints(ranks_b));
    let _ = writeln!(out, "  \"rank_diffs\": {},", json_ints(&comparison.rank_diffs));
    let _ = writeln!(out, "  \"spearman_rho\": {},", fmt_real(comparison.spearman_rho));
    let _ = writeln!(out, "  \"kendall_tau\": {},", fmt_real(comparison.kendall_tau));
    let _ = writeln!(out, "  \"agreed_top1\": {}", comparison.agreed_top1);
    out.push('}');
    out.push('\n');
    out
}

/// Precomputed comparison between the first two rankings in a bundle.
pub struct ComparisonInput<'a> {
    pub comparison: &'a RankComparison,
    pub method_a: RankMethod,
    pub method_b: RankMethod,
}

fn results_document(
    problem: &DecisionProblem,
    weight_reports: &[WeightReport],
    rankings: &[Ranking],
    comparison: Option<&ComparisonInput<'_>>,
) -> String {
    let criteria: Vec<String> = problem.criteria().iter().map(|c| c.name.clone()).collect();
    let directions: Vec<String> = problem
        .criteria()
        .iter()
        .map(|c| c.direction.as_str().to_string())
        .collect();
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str("  \"format_version\": \"1\",\n");
    out.push_str("  \"kind\": \"report\",\n");
    let _ = writeln!(out, "  \"alternatives\": {},", json_strs(problem.alternatives()));
    let _ = writeln!(out, "  \"criteria\": {},", json_strs(&criteria));
    let _ = writeln!(out, "  \"directions\": {},", json_strs(&directions));
    out.push_str("  \"weights\": [\n");
    for (i, report) in weight_reports.iter().enumerate() {
        push_indented(&mut out, &weights_document(report, &criteria), 4);
        out.push_str(if i + 1 < weight_reports.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ],\n");
    out.push_str("  \"rankings\": [\n");
    for (i, ranking) in rankings.iter().enumerate() {
        push_indented(&mut out, &ranking_document(ranking, problem.alternatives()), 4);
        out.push_str(if i + 1 < rankings.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ],\n");
    match comparison {
        Some(input) => {
            out.push_str("  \"comparison\": ");
            let doc = comparison_document(
                input.comparison,
                input.method_a,
                input.method_b,
                &rankings[0].ranks,
                &rankings[1].ranks,
                problem.alternatives(),
            );
            let mut block = String::new();
            push_indented(&mut block, &doc, 2);
            // first line of the block sits after the key, not indented
            out.push_str(block.trim_start());
            out.push('\n');
        }
        None => out.push_str("  \"comparison\": null\n"),
    }
    out.push('}');
    out.push('\n');
    out
}

fn ranks_csv(problem: &DecisionProblem, rankings: &[Ranking]) -> String {
    let mut out = String::from("alternative");
    for r in rankings {
        let _ = write!(out, ",{m}_score,{m}_rank", m = r.method.as_str());
    }
    out.push('\n');
    for i in 0..problem.alternatives_len() {
        out.push_str(&csv_field(&problem.alternatives()[i]));
        for r in rankings {
            let _ = write!(out, ",{},{}", fmt_real(r.scores[i]), r.ranks[i]);
        }
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const PALETTE: [&str; 4] = ["#4878a8", "#e49444", "#5ba053", "#b65c8e"];
const AXIS_COLOR: &str = "#444444";
const GRID_COLOR: &str = "#dddddd";

/// Grouped bar chart of one bar per weight vector within each criterion
/// group.
pub fn weights_chart_svg(criteria: &[String], reports: &[WeightReport]) -> String {
    let n = criteria.len();
    let k = reports.len().max(1);
    let (width, height) = (720.0, 440.0);
    let (left, right, top, bottom) = (60.0, 20.0, 40.0, 110.0);
    let plot_w = width - left - right;
    let plot_h = height - top - bottom;

    let mut max_w: f64 = 0.0;
    for r in reports {
        for &w in r.weights.as_slice() {
            max_w = max_w.max(w);
        }
    }
    let y_max = if max_w > 0.0 { max_w * 1.05 } else { 1.0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        s,
        "<title>Criterion weights by method</title>"
    );
    // horizontal gridlines and y tick labels
    for t in 0..=4 {
        let frac = t as f64 / 4.0;
        let y = top + plot_h * (1.0 - frac);
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"1\"/>",
            fmt_coord(left),
            fmt_coord(y),
            fmt_coord(left + plot_w),
            fmt_coord(y),
            if t == 0 { AXIS_COLOR } else { GRID_COLOR }
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\" fill=\"{}\">{}</text>",
            fmt_coord(left - 6.0),
            fmt_coord(y + 4.0),
            AXIS_COLOR,
            fmt_coord(y_max * frac)
        );
    }
    // bars
    let group_w = plot_w / n as f64;
    let bar_w = group_w * 0.8 / k as f64;
    for (series, report) in reports.iter().enumerate() {
        let color = PALETTE[series % PALETTE.len()];
        let _ = writeln!(s, "<g class=\"series\" data-method=\"{}\">", report.method.as_str());
        for (j, &w) in report.weights.as_slice().iter().enumerate() {
            let x = left + group_w * j as f64 + group_w * 0.1 + bar_w * series as f64;
            let h = plot_h * (w / y_max);
            let y = top + plot_h - h;
            let _ = writeln!(
                s,
                "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                fmt_coord(x),
                fmt_coord(y),
                fmt_coord(bar_w),
                fmt_coord(h),
                color
            );
        }
        let _ = writeln!(s, "</g>");
    }
    // criterion labels, rotated to fit long names
    for (j, name) in criteria.iter().enumerate() {
        let x = left + group_w * (j as f64 + 0.5);
        let y = top + plot_h + 14.0;
        let _ = writeln!(
            s,
            "<text x=\"{x}\" y=\"{y}\" font-size=\"11\" text-anchor=\"end\" fill=\"{c}\" transform=\"rotate(-35 {x} {y})\">{t}</text>",
            x = fmt_coord(x),
            y = fmt_coord(y),
            c = AXIS_COLOR,
            t = xml_escape(name)
        );
    }
    // legend
    for (series, report) in reports.iter().enumerate() {
        let color = PALETTE[series % PALETTE.len()];
        let x = left + 120.0 * series as f64;
        let y = height - 18.0;
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>",
            fmt_coord(x),
            fmt_coord(y - 10.0),
            color
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{}\">{}</text>",
            fmt_coord(x + 16.0),
            fmt_coord(y),
            AXIS_COLOR,
            xml_escape(report.method.as_str())
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Rank-vs-rank scatter for two methods.
///
/// Both axes use the same mapping (rank 1 at top/left), so a point lies on
/// the identity diagonal exactly when its cx and cy attributes are equal
/// as strings.
pub fn rank_scatter_svg(
    method_a: RankMethod,
    method_b: RankMethod,
    ranks_a: &[usize],
    ranks_b: &[usize],
    alternatives: &[String],
) -> String {
    let m = ranks_a.len();
    let size = 480.0;
    let margin = 50.0;
    let plot = size - 2.0 * margin;
    let step = if m > 1 { plot / (m - 1) as f64 } else { 0.0 };
    let pos = |rank: usize| margin + step * (rank - 1) as f64;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(
        s,
        "<title>{} rank vs {} rank</title>",
        xml_escape(method_a.as_str()),
        xml_escape(method_b.as_str())
    );
    // frame
    let _ = writeln!(
        s,
        "<rect x=\"{m0}\" y=\"{m0}\" width=\"{p}\" height=\"{p}\" fill=\"none\" stroke=\"{c}\" stroke-width=\"1\"/>",
        m0 = fmt_coord(margin),
        p = fmt_coord(plot),
        c = AXIS_COLOR
    );
    // identity diagonal
    let _ = writeln!(
        s,
        "<line class=\"diagonal\" x1=\"{a}\" y1=\"{a}\" x2=\"{b}\" y2=\"{b}\" stroke=\"{c}\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
        a = fmt_coord(margin),
        b = fmt_coord(margin + plot),
        c = GRID_COLOR
    );
    // axis labels
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" fill=\"{}\">{} rank (1 = best)</text>",
        fmt_coord(size / 2.0),
        fmt_coord(size - 12.0),
        AXIS_COLOR,
        xml_escape(method_a.as_str())
    );
    let _ = writeln!(
        s,
        "<text x=\"{x}\" y=\"{y}\" font-size=\"12\" text-anchor=\"middle\" fill=\"{c}\" transform=\"rotate(-90 {x} {y})\">{t} rank (1 = best)</text>",
        x = fmt_coord(14.0),
        y = fmt_coord(size / 2.0),
        c = AXIS_COLOR,
        t = xml_escape(method_b.as_str())
    );
    for i in 0..m {
        let cx = pos(ranks_a[i]);
        let cy = pos(ranks_b[i]);
        let _ = writeln!(
            s,
            "<circle class=\"pt\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\" fill-opacity=\"0.75\"><title>{}: {} {}, {} {}</title></circle>",
            fmt_coord(cx),
            fmt_coord(cy),
            PALETTE[0],
            xml_escape(&alternatives[i]),
            xml_escape(method_a.as_str()),
            ranks_a[i],
            xml_escape(method_b.as_str()),
            ranks_b[i]
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Paths of everything `emit_report` wrote.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub results_json: PathBuf,
    pub ranks_csv: PathBuf,
    pub weights_chart: PathBuf,
    pub rank_scatter: Option<PathBuf>,
}

fn write_file(path: &Path, text: &str) -> IoResult<()> {
    fs::write(path, text).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the full bundle into `out_dir`: results.json, ranks.csv,
/// weights_chart.svg, and, when a comparison over the first two rankings is
/// supplied, rank_scatter.svg.
pub fn emit_report(
    problem: &DecisionProblem,
    weight_reports: &[WeightReport],
    rankings: &[Ranking],
    comparison: Option<&ComparisonInput<'_>>,
    out_dir: &Path,
) -> IoResult<ReportBundle> {
    let n = problem.criteria_len();
    let m = problem.alternatives_len();
    for report in weight_reports {
        if report.weights.len() != n {
            return Err(IoError::Invalid {
                path: out_dir.to_path_buf(),
                source: Error::WeightDimensionMismatch {
                    expected: n,
                    got: report.weights.len(),
                },
            });
        }
    }
    for ranking in rankings {
        if ranking.ranks.len() != m {
            return Err(IoError::Invalid {
                path: out_dir.to_path_buf(),
                source: Error::LengthMismatch {
                    a: m,
                    b: ranking.ranks.len(),
                },
            });
        }
    }
    if comparison.is_some() && rankings.len() < 2 {
        return Err(IoError::Invalid {
            path: out_dir.to_path_buf(),
            source: Error::LengthMismatch {
                a: 2,
                b: rankings.len(),
            },
        });
    }
    fs::create_dir_all(out_dir).map_err(|source| IoError::Write {
        path: out_dir.to_path_buf(),
        source,
    })?;

    let criteria: Vec<String> = problem.criteria().iter().map(|c| c.name.clone()).collect();
    let results_json = out_dir.join("results.json");
    write_file(
        &results_json,
        &results_document(problem, weight_reports, rankings, comparison),
    )?;
    let ranks_path = out_dir.join("ranks.csv");
    write_file(&ranks_path, &ranks_csv(problem, rankings))?;
    let chart_path = out_dir.join("weights_chart.svg");
    write_file(&chart_path, &weights_chart_svg(&criteria, weight_reports))?;
    let rank_scatter = match comparison {
        Some(input) => {
            let path = out_dir.join("rank_scatter.svg");
            write_file(
                &path,
                &rank_scatter_svg(
                    input.method_a,
                    input.method_b,
                    &rankings[0].ranks,
                    &rankings[1].ranks,
                    problem.alternatives(),
                ),
            )?;
            Some(path)
        }
        None => None,
    };
    Ok(ReportBundle {
        results_json,
        ranks_csv: ranks_path,
        weights_chart: chart_path,
        rank_scatter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::compare_rankings;
    use crate::model::{Criterion, Direction, WeightVector};
    use crate::ranking::{moora, topsis};
    use crate::weighting::{entropy_weights, stddev_weights};
    use tempfile::TempDir;

    fn benefit_cost_3x2() -> DecisionProblem {
        DecisionProblem::new(
            vec![
                Criterion::new("gain", Direction::Benefit),
                Criterion::new("price", Direction::Cost),
            ],
            vec!["a1".into(), "a2".into(), "a3".into()],
            vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![3.0, 3.0]],
        )
        .unwrap()
    }

    #[test]
    fn reals_use_six_places_and_no_negative_zero() {
        assert_eq!(fmt_real(0.5), "0.500000");
        assert_eq!(fmt_real(-0.13661), "-0.136610");
        assert_eq!(fmt_real(-0.0000001), "0.000000");
        assert_eq!(fmt_real(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_coord(-0.001), "0.00");
    }

    #[test]
    fn weights_document_shape() {
        let p = benefit_cost_3x2();
        let report = entropy_weights(&p);
        let criteria = vec!["gain".to_string(), "price".to_string()];
        let doc = weights_document(&report, &criteria);
        assert!(doc.contains("\"format_version\": \"1\""));
        assert!(doc.contains("\"kind\": \"weights\""));
        assert!(doc.contains("\"method\": \"entropy\""));
        assert!(doc.contains("\"entropy\": ["));
        assert!(doc.contains("\"divergence\": ["));
        let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(parsed["criteria"][1], "price");
        assert_eq!(parsed["weights"].as_array().unwrap().len(), 2);

        let sd = stddev_weights(&p);
        let doc = weights_document(&sd, &criteria);
        assert!(doc.contains("\"sigma\": ["));
        serde_json::from_str::<serde_json::Value>(&doc).unwrap();
    }

    #[test]
    fn ranking_document_includes_separations_for_topsis_only() {
        let p = benefit_cost_3x2();
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let t = ranking_document(&topsis(&p, &w).unwrap(), p.alternatives());
        assert!(t.contains("\"s_plus\""));
        assert!(t.contains("\"s_minus\""));
        assert!(t.contains("\"scores\": [0.309017, 0.690983, 0.500000]"));
        assert!(t.contains("\"ranks\": [3, 1, 2]"));
        let m = ranking_document(&moora(&p, &w).unwrap(), p.alternatives());
        assert!(!m.contains("s_plus"));
        serde_json::from_str::<serde_json::Value>(&t).unwrap();
        serde_json::from_str::<serde_json::Value>(&m).unwrap();
    }

    #[test]
    fn string_escaping_is_json_safe() {
        let p = DecisionProblem::new(
            vec![Criterion::new("quote \" and \\ slash", Direction::Benefit)],
            vec!["alt\none".into(), "two".into()],
            vec![vec![1.0], vec![2.0]],
        )
        .unwrap();
        let w = WeightVector::new(vec![1.0]).unwrap();
        let doc = ranking_document(&topsis(&p, &w).unwrap(), p.alternatives());
        let parsed: serde_json::Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(parsed["alternatives"][0], "alt\none");
    }

    #[test]
    fn bundle_writes_all_files_and_is_valid() {
        let p = benefit_cost_3x2();
        let we = entropy_weights(&p);
        let ws = stddev_weights(&p);
        let t = topsis(&p, &we.weights).unwrap();
        let m = moora(&p, &we.weights).unwrap();
        let cmp = compare_rankings(&t, &m).unwrap();
        let dir = TempDir::new().unwrap();
        let bundle = emit_report(
            &p,
            &[we, ws],
            &[t.clone(), m.clone()],
            Some(&ComparisonInput {
                comparison: &cmp,
                method_a: t.method,
                method_b: m.method,
            }),
            dir.path(),
        )
        .unwrap();
        let results = fs::read_to_string(&bundle.results_json).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&results).unwrap();
        assert_eq!(parsed["kind"], "report");
        assert_eq!(parsed["weights"].as_array().unwrap().len(), 2);
        assert_eq!(parsed["rankings"].as_array().unwrap().len(), 2);
        assert_eq!(parsed["comparison"]["agreed_top1"], true);

        let ranks = fs::read_to_string(&bundle.ranks_csv).unwrap();
        let mut lines = ranks.lines();
        assert_eq!(
            lines.next().unwrap(),
            "alternative,topsis_score,topsis_rank,moora_score,moora_rank"
        );
        assert_eq!(ranks.lines().count(), 4);

        let chart = fs::read_to_string(&bundle.weights_chart).unwrap();
        assert_eq!(chart.matches("class=\"bar\"").count(), 4);
        let scatter = fs::read_to_string(bundle.rank_scatter.as_ref().unwrap()).unwrap();
        assert_eq!(scatter.matches("class=\"pt\"").count(), 3);
    }

    #[test]
    fn emission_is_byte_deterministic() {
        let p = benefit_cost_3x2();
        let we = entropy_weights(&p);
        let t = topsis(&p, &we.weights).unwrap();
        let m = moora(&p, &we.weights).unwrap();
        let cmp = compare_rankings(&t, &m).unwrap();
        let mut snapshots = Vec::new();
        for _ in 0..2 {
            let dir = TempDir::new().unwrap();
            emit_report(
                &p,
                std::slice::from_ref(&we),
                &[t.clone(), m.clone()],
                Some(&ComparisonInput {
                    comparison: &cmp,
                    method_a: t.method,
                    method_b: m.method,
                }),
                dir.path(),
            )
            .unwrap();
            let mut all = Vec::new();
            for name in ["results.json", "ranks.csv", "weights_chart.svg", "rank_scatter.svg"] {
                all.push(fs::read(dir.path().join(name)).unwrap());
            }
            snapshots.push(all);
        }
        assert_eq!(snapshots[0], snapshots[1]);
    }

    #[test]
    fn identical_rankings_scatter_on_diagonal() {
        let p = benefit_cost_3x2();
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let t = topsis(&p, &w).unwrap();
        let m = moora(&p, &w).unwrap();
        assert_eq!(t.ranks, m.ranks);
        let svg = rank_scatter_svg(t.method, m.method, &t.ranks, &m.ranks, p.alternatives());
        for line in svg.lines().filter(|l| l.contains("class=\"pt\"")) {
            let cx = attr(line, "cx");
            let cy = attr(line, "cy");
            assert_eq!(cx, cy, "off-diagonal point in {line}");
        }
    }

    fn attr(line: &str, name: &str) -> String {
        let key = format!("{name}=\"");
        let start = line.find(&key).unwrap() + key.len();
        let end = line[start..].find('"').unwrap() + start;
        line[start..end].to_string()
    }

    #[test]
    fn scatter_diagonal_detection_matches_rank_equality() {
        let ranks_a = vec![1, 2, 3, 4, 5];
        let ranks_b = vec![1, 3, 2, 4, 5];
        let labels: Vec<String> = (1..=5).map(|i| format!("x{i}")).collect();
        let svg = rank_scatter_svg(
            RankMethod::Topsis,
            RankMethod::Moora,
            &ranks_a,
            &ranks_b,
            &labels,
        );
        let on_diagonal = svg
            .lines()
            .filter(|l| l.contains("class=\"pt\""))
            .filter(|l| attr(l, "cx") == attr(l, "cy"))
            .count();
        assert_eq!(on_diagonal, 3);
    }

    #[test]
    fn chart_groups_match_criteria_and_methods() {
        let p = benefit_cost_3x2();
        let we = entropy_weights(&p);
        let ws = stddev_weights(&p);
        let criteria = vec!["gain".to_string(), "price".to_string()];
        let svg = weights_chart_svg(&criteria, &[we, ws]);
        // 2 criteria x 2 methods
        assert_eq!(svg.matches("class=\"bar\"").count(), 4);
        assert_eq!(svg.matches("data-method=").count(), 2);
        assert!(svg.contains("data-method=\"entropy\""));
        assert!(svg.contains("data-method=\"stddev\""));
    }

    #[test]
    fn xml_escaping_in_chart_labels() {
        let p = DecisionProblem::new(
            vec![Criterion::new("a<b & c", Direction::Benefit)],
            vec!["x".into(), "y".into()],
            vec![vec![1.0], vec![2.0]],
        )
        .unwrap();
        let report = entropy_weights(&p);
        let svg = weights_chart_svg(&["a<b & c".to_string()], &[report]);
        assert!(svg.contains("a&lt;b &amp; c"));
        assert!(!svg.contains("a<b"));
    }

    #[test]
    fn mismatched_inputs_rejected() {
        let p = benefit_cost_3x2();
        let w = WeightVector::new(vec![0.5, 0.5]).unwrap();
        let t = topsis(&p, &w).unwrap();
        let other = DecisionProblem::new(
            vec![Criterion::new("only", Direction::Benefit)],
            vec!["p".into(), "q".into()],
            vec![vec![1.0], vec![2.0]],
        )
        .unwrap();
        let dir = TempDir::new().unwrap();
        let err = emit_report(&other, &[], &[t], None, dir.path()).unwrap_err();
        assert!(matches!(err, IoError::Invalid { .. }));
    }
}
