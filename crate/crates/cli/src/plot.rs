//! Static SVG bar charts over experiment summaries: one horizontal grouped
//! chart per problem, one bar per algorithm, scaled to the group maximum.
//! Output is a pure function of the summaries, so identical inputs render
//! identical files.

use beecolony::error::{Error, Result};
use beecolony::harness::Summary;

use crate::sci;

/// Summary statistic selectable for charting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Sd,
    Me,
    Afe,
    Sr,
}

impl Measure {
    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "sd" => Ok(Measure::Sd),
            "me" => Ok(Measure::Me),
            "afe" => Ok(Measure::Afe),
            "sr" => Ok(Measure::Sr),
            _ => Err(Error::InvalidParameter(format!(
                "unknown measure {name:?} (valid: sd, me, afe, sr)"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Measure::Sd => "SD",
            Measure::Me => "ME",
            Measure::Afe => "AFE",
            Measure::Sr => "SR",
        }
    }

    pub fn value(self, summary: &Summary) -> f64 {
        match self {
            Measure::Sd => summary.sd,
            Measure::Me => summary.me,
            Measure::Afe => summary.afe,
            Measure::Sr => f64::from(summary.sr),
        }
    }

    fn value_text(self, value: f64) -> String {
        match self {
            Measure::Afe => format!("{value:.2}"),
            Measure::Sr => format!("{value:.0}"),
            Measure::Sd | Measure::Me => sci(value),
        }
    }
}

const LEFT_MARGIN: f64 = 110.0;
const BAR_SPAN: f64 = 420.0;
const BAR_HEIGHT: f64 = 18.0;
const BAR_GAP: f64 = 6.0;
const SECTION_HEADER: f64 = 34.0;
const SECTION_GAP: f64 = 22.0;
const TOP_MARGIN: f64 = 10.0;
const WIDTH: f64 = 680.0;

const PALETTE: [&str; 6] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders one grouped bar chart per problem (in first-appearance order),
/// bars colored per algorithm and scaled against the problem's maximum.
pub fn render_bar_charts(summaries: &[Summary], measure: Measure) -> String {
    let mut problems: Vec<&str> = Vec::new();
    let mut algorithms: Vec<&str> = Vec::new();
    for summary in summaries {
        if !problems.contains(&summary.problem.as_str()) {
            problems.push(&summary.problem);
        }
        if !algorithms.contains(&summary.algorithm.as_str()) {
            algorithms.push(&summary.algorithm);
        }
    }

    let color_of = |algorithm: &str| {
        let index = algorithms
            .iter()
            .position(|a| *a == algorithm)
            .expect("algorithm seen during grouping");
        PALETTE[index % PALETTE.len()]
    };

    let mut body = String::new();
    let mut y = TOP_MARGIN;
    for problem in &problems {
        let group: Vec<&Summary> = summaries.iter().filter(|s| s.problem == *problem).collect();
        let max = group
            .iter()
            .map(|s| measure.value(s))
            .fold(0.0_f64, f64::max);

        y += SECTION_HEADER;
        body.push_str(&format!(
            "  <text x=\"{LEFT_MARGIN}\" y=\"{:.2}\" class=\"title\">{} — {}</text>\n",
            y - 12.0,
            escape(problem),
            measure.label()
        ));
        for summary in group {
            let value = measure.value(summary);
            let width = if max > 0.0 { BAR_SPAN * value / max } else { 0.0 };
            body.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" class=\"name\">{}</text>\n",
                LEFT_MARGIN - 8.0,
                y + BAR_HEIGHT - 5.0,
                escape(&summary.algorithm)
            ));
            body.push_str(&format!(
                "  <rect x=\"{LEFT_MARGIN}\" y=\"{y:.2}\" width=\"{width:.2}\" \
                 height=\"{BAR_HEIGHT}\" fill=\"{}\" data-problem=\"{}\" data-algo=\"{}\" \
                 data-value=\"{value}\"/>\n",
                color_of(&summary.algorithm),
                escape(problem),
                escape(&summary.algorithm)
            ));
            body.push_str(&format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" class=\"value\">{}</text>\n",
                LEFT_MARGIN + width + 8.0,
                y + BAR_HEIGHT - 5.0,
                measure.value_text(value)
            ));
            y += BAR_HEIGHT + BAR_GAP;
        }
        y += SECTION_GAP;
    }

    let height = y + TOP_MARGIN;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height:.2}\" \
         viewBox=\"0 0 {WIDTH} {height:.2}\">\n\
         <style>\n\
         text {{ font-family: sans-serif; font-size: 12px; }}\n\
         .title {{ font-size: 14px; font-weight: bold; }}\n\
         .name {{ text-anchor: end; }}\n\
         </style>\n{body}</svg>\n"
    )
}
