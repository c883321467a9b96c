//! Sweep visualization: a self-contained SVG of error probability vs pulse
//! magnitude.
//!
//! The y-axis is log₁₀ with values clipped to [1e-6, 1] — converged optimal
//! errors at large |α| underflow any linear axis, and everything below a
//! part per million is visually "zero" for this experiment. The classical
//! baseline is drawn as one dashed line (it is temperature independent);
//! the optimal bound and the trained receiver appear as per-temperature
//! marker series so the shrinking quantum advantage window is visible at a
//! glance.
//!
//! The CSV schema does not carry temperature, so the caller passes the
//! temperature grid separately; rows are grouped by their (bit-exact) n̄
//! value and matched to the sorted temperatures. If the counts disagree the
//! series are labeled by n̄ instead.

use std::fs;
use std::path::Path;

use super::{RunnerError, SweepRow};

const WIDTH: f64 = 780.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 520.0;
const TOP: f64 = 48.0;
const BOTTOM: f64 = 440.0;
/// Smallest probability drawn distinctly; everything below clips here.
const Y_FLOOR: f64 = 1e-6;
const DECADES: f64 = 6.0;

const SERIES_COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#e377c2", "#8c564b",
];

/// Render rows to SVG text. `temperatures_kelvin` labels the per-n̄ series.
pub fn render_plot(rows: &[SweepRow], temperatures_kelvin: &[f64]) -> Result<String, RunnerError> {
    if rows.is_empty() {
        return Err(RunnerError::config("no rows to plot"));
    }

    // Group rows by bit-exact n̄; one group per temperature in practice.
    let mut groups: Vec<(u64, f64, Vec<&SweepRow>)> = Vec::new();
    for row in rows {
        let bits = row.nbar.to_bits();
        match groups.iter_mut().find(|g| g.0 == bits) {
            Some(group) => group.2.push(row),
            None => groups.push((bits, row.nbar, vec![row])),
        }
    }
    groups.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut temps: Vec<f64> = temperatures_kelvin.to_vec();
    temps.sort_by(f64::total_cmp);
    temps.dedup();
    let labels: Vec<String> = if temps.len() == groups.len() {
        temps.iter().map(|&t| format_temperature(t)).collect()
    } else {
        groups
            .iter()
            .map(|g| format!("n\u{304} = {:.3e}", g.1))
            .collect()
    };

    let (m_min, m_max) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |acc, r| {
        (acc.0.min(r.magnitude), acc.1.max(r.magnitude))
    });
    let (m_min, m_max) = if m_max > m_min {
        (m_min, m_max)
    } else {
        // Degenerate single-magnitude plot: pad so the point sits centered.
        (m_min - 0.05, m_max + 0.05)
    };
    let x = |m: f64| LEFT + (m - m_min) / (m_max - m_min) * (RIGHT - LEFT);
    let y = |p: f64| {
        let clipped = p.clamp(Y_FLOOR, 1.0);
        TOP + (-clipped.log10()) / DECADES * (BOTTOM - TOP)
    };

    let mut svg = String::with_capacity(8192 + rows.len() * 160);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n"
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">\
         Codeword error probability vs pulse magnitude</text>\n",
        (LEFT + RIGHT) / 2.0
    ));

    // Decade gridlines and y tick labels.
    for decade in 0..=DECADES as i32 {
        let p = 10f64.powi(-decade);
        let yy = y(p);
        svg.push_str(&format!(
            "  <line x1=\"{LEFT}\" y1=\"{yy:.2}\" x2=\"{RIGHT}\" y2=\"{yy:.2}\" \
             stroke=\"#dddddd\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">1e-{decade}</text>\n",
            LEFT - 8.0,
            yy + 4.0
        ));
    }
    // X ticks: five evenly spaced.
    for i in 0..=4 {
        let m = m_min + (m_max - m_min) * f64::from(i) / 4.0;
        let xx = x(m);
        svg.push_str(&format!(
            "  <line x1=\"{xx:.2}\" y1=\"{BOTTOM}\" x2=\"{xx:.2}\" y2=\"{}\" \
             stroke=\"#999999\"/>\n",
            BOTTOM + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{xx:.2}\" y=\"{}\" text-anchor=\"middle\">{m:.2}</text>\n",
            BOTTOM + 20.0
        ));
    }
    // Axes and labels.
    svg.push_str(&format!(
        "  <rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{}\" height=\"{}\" fill=\"none\" \
         stroke=\"#333333\"/>\n",
        RIGHT - LEFT,
        BOTTOM - TOP
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">pulse magnitude |\u{3b1}|</text>\n",
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 40.0
    ));
    svg.push_str(&format!(
        "  <text x=\"18\" y=\"{}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {})\">error probability</text>\n",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    ));

    // Classical baseline: one dashed line over distinct magnitudes.
    let mut baseline: Vec<(f64, f64)> = Vec::new();
    for row in rows {
        if !baseline.iter().any(|(m, _)| m.to_bits() == row.magnitude.to_bits()) {
            baseline.push((row.magnitude, row.p_err_classical));
        }
    }
    baseline.sort_by(|a, b| a.0.total_cmp(&b.0));
    let points: Vec<String> = baseline
        .iter()
        .map(|&(m, p)| format!("{:.2},{:.2}", x(m), y(p)))
        .collect();
    svg.push_str(&format!(
        "  <polyline class=\"classical\" points=\"{}\" fill=\"none\" stroke=\"#555555\" \
         stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n",
        points.join(" ")
    ));

    // Per-temperature series: optimal bound (filled circles) and trained
    // receiver (open squares).
    for (index, (_, nbar, group)) in groups.iter().enumerate() {
        let color = SERIES_COLORS[index % SERIES_COLORS.len()];
        svg.push_str(&format!(
            "  <g class=\"optimal\" data-nbar=\"{nbar:e}\" fill=\"{color}\">\n"
        ));
        for row in group {
            svg.push_str(&format!(
                "    <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\"/>\n",
                x(row.magnitude),
                y(row.p_err_optimal)
            ));
        }
        svg.push_str("  </g>\n");
        svg.push_str(&format!(
            "  <g class=\"vqc\" data-nbar=\"{nbar:e}\" fill=\"none\" stroke=\"{color}\" \
             stroke-width=\"1.5\">\n"
        ));
        for row in group {
            svg.push_str(&format!(
                "    <rect x=\"{:.2}\" y=\"{:.2}\" width=\"7\" height=\"7\"/>\n",
                x(row.magnitude) - 3.5,
                y(row.p_err_vqc) - 3.5
            ));
        }
        svg.push_str("  </g>\n");
    }

    // Legend.
    let lx = RIGHT + 18.0;
    let mut ly = TOP + 12.0;
    svg.push_str(&format!(
        "  <line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"#555555\" \
         stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n",
        lx + 22.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\">heterodyne baseline</text>\n",
        lx + 28.0,
        ly + 4.0
    ));
    ly += 24.0;
    for (index, label) in labels.iter().enumerate() {
        let color = SERIES_COLORS[index % SERIES_COLORS.len()];
        svg.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{ly}\" r=\"4\" fill=\"{color}\"/>\n",
            lx + 11.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\">optimal, T = {label}</text>\n",
            lx + 28.0,
            ly + 4.0
        ));
        ly += 22.0;
        svg.push_str(&format!(
            "  <rect x=\"{}\" y=\"{}\" width=\"7\" height=\"7\" fill=\"none\" \
             stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            lx + 7.5,
            ly - 3.5
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\">trained, T = {label}</text>\n",
            lx + 28.0,
            ly + 4.0
        ));
        ly += 24.0;
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Render rows and write the SVG to `path`.
pub fn emit_plot(
    rows: &[SweepRow],
    temperatures_kelvin: &[f64],
    path: &Path,
) -> Result<(), RunnerError> {
    let svg = render_plot(rows, temperatures_kelvin)?;
    fs::write(path, svg).map_err(|e| RunnerError::io(path, e))
}

/// Human-scale temperature label: sub-0.1 K values render in millikelvin.
fn format_temperature(temperature_kelvin: f64) -> String {
    if temperature_kelvin < 0.1 {
        format!("{} mK", temperature_kelvin * 1000.0)
    } else {
        format!("{} K", temperature_kelvin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(magnitude: f64, nbar: f64, p_opt: f64, p_vqc: f64) -> SweepRow {
        SweepRow {
            magnitude,
            alpha_sq: magnitude * magnitude,
            nbar,
            p_err_classical: 0.5,
            p_err_optimal: p_opt,
            p_err_pgm: p_opt,
            p_err_vqc: p_vqc,
            ykl_residual: 1e-9,
            train_iterations: 10,
            seed: 42,
        }
    }

    #[test]
    fn renders_expected_structure() {
        let rows = vec![
            row(0.1, 0.0, 0.4, 0.45),
            row(0.5, 0.0, 0.1, 0.12),
            row(0.1, 1.62, 0.45, 0.5),
            row(0.5, 1.62, 0.2, 0.25),
        ];
        let svg = render_plot(&rows, &[0.001, 1.0]).unwrap();
        assert!(svg.starts_with("<svg"), "must begin with the svg root");
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("class=\"classical\"").count(), 1);
        assert_eq!(svg.matches("class=\"optimal\"").count(), 2);
        assert_eq!(svg.matches("class=\"vqc\"").count(), 2);
        // Series markers are nested in their <g> (4-space indent); legend
        // markers sit at the top level and must not be counted here.
        assert_eq!(svg.matches("\n    <circle cx=").count(), 4);
        assert_eq!(svg.matches("\n    <rect x=").count(), 4);
        assert!(svg.contains("T = 1 mK"));
        assert!(svg.contains("T = 1 K"));
        assert!(svg.contains("error probability"));
    }

    #[test]
    fn sub_floor_values_clip_to_the_floor() {
        // 1e-9 and 1e-6 must land on the same pixel row.
        let rows = vec![row(0.1, 0.0, 1e-9, 0.5), row(0.5, 0.0, 1e-6, 0.5)];
        let svg = render_plot(&rows, &[0.001]).unwrap();
        let cys: Vec<&str> = svg
            .lines()
            .filter(|l| l.starts_with("    <circle cx="))
            .map(|l| {
                let start = l.find("cy=\"").unwrap() + 4;
                let end = l[start..].find('"').unwrap() + start;
                &l[start..end]
            })
            .collect();
        assert_eq!(cys.len(), 2);
        assert_eq!(cys[0], cys[1]);
        // And the floor is the bottom of the plot area.
        assert_eq!(cys[0], format!("{BOTTOM:.2}"));
    }

    #[test]
    fn mismatched_temperature_count_falls_back_to_nbar_labels() {
        let rows = vec![row(0.1, 0.0, 0.4, 0.45), row(0.1, 1.62, 0.45, 0.5)];
        let svg = render_plot(&rows, &[0.001]).unwrap();
        assert!(svg.contains("n\u{304} = "), "nbar fallback labels expected");
    }

    #[test]
    fn empty_rows_are_a_config_error() {
        let err = render_plot(&[], &[0.001]).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn emit_plot_writes_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.svg");
        emit_plot(&[row(0.1, 0.0, 0.4, 0.45)], &[0.001], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<svg"));
    }

    #[test]
    fn temperature_labels_use_millikelvin_below_a_tenth() {
        assert_eq!(format_temperature(0.001), "1 mK");
        assert_eq!(format_temperature(0.0015), "1.5 mK");
        assert_eq!(format_temperature(1.0), "1 K");
        assert_eq!(format_temperature(0.25), "0.25 K");
    }
}
