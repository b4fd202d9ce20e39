//! Gantt-chart rendering, plain text and SVG.
//!
//! The time axis starts at zero. Zero-length jobs run at time zero and are
//! listed in a footnote instead of being drawn. Both renderers are pure
//! functions of the schedule, and the SVG output is byte-identical across
//! runs and platforms (integer coordinates only).

use flowspan_core::Schedule;

const PALETTE: [&str; 7] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc949",
];

fn label_char(job: usize) -> char {
    match job {
        0..=25 => (b'A' + job as u8) as char,
        26..=51 => (b'a' + (job - 26) as u8) as char,
        52..=61 => (b'0' + (job - 52) as u8) as char,
        _ => '#',
    }
}

fn zero_jobs(sched: &Schedule) -> Vec<usize> {
    let mut zs = Vec::new();
    for machine in 0..sched.machines() {
        for rank in 1..=sched.ranks() {
            if sched.time_at(machine, rank) == 0 {
                zs.push(sched.job_at(machine, rank));
            }
        }
    }
    zs.sort_unstable();
    zs
}

/// One row per machine, one unit of time per character, jobs drawn in
/// execution order (rank k first) as runs of their legend letter.
pub fn render_ascii(sched: &Schedule) -> String {
    let makespan = sched.makespan() as usize;
    let mut out = String::new();
    for machine in 0..sched.machines() {
        let mut bars = String::new();
        for rank in (1..=sched.ranks()).rev() {
            let p = sched.time_at(machine, rank) as usize;
            let c = label_char(sched.job_at(machine, rank));
            bars.extend(std::iter::repeat_n(c, p));
        }
        bars.extend(std::iter::repeat_n(' ', makespan - bars.len()));
        out.push_str(&format!(
            "machine {} |{}| load {}\n",
            machine + 1,
            bars,
            sched.load(machine)
        ));
    }
    let legend: Vec<String> = (0..sched.machines() * sched.ranks())
        .filter(|&j| {
            let (m, r) = sched.position_of(j);
            sched.time_at(m, r) > 0
        })
        .map(|j| {
            let (m, r) = sched.position_of(j);
            format!("{}=j{}(p={})", label_char(j), j + 1, sched.time_at(m, r))
        })
        .collect();
    if !legend.is_empty() {
        out.push_str(&format!("legend: {}\n", legend.join(" ")));
    }
    let zs = zero_jobs(sched);
    if !zs.is_empty() {
        let names: Vec<String> = zs.iter().map(|j| format!("j{}", j + 1)).collect();
        out.push_str(&format!(
            "zero-time jobs (start and finish at time 0): {}\n",
            names.join(" ")
        ));
    }
    out
}

/// SVG 1.1 chart, one row per machine, bars positioned by start time and
/// labeled with the 1-based job number.
pub fn render_svg(sched: &Schedule) -> String {
    const UNIT: u64 = 28; // px per time unit
    const ROW: u64 = 34;
    const BAR: u64 = 24;
    const LEFT: u64 = 96;
    const TOP: u64 = 16;

    let m = sched.machines() as u64;
    let makespan = sched.makespan();
    let zs = zero_jobs(sched);
    let footnote_rows = if zs.is_empty() { 0 } else { 1 };
    let width = LEFT + makespan.max(1) * UNIT + 24;
    let height = TOP + m * ROW + 28 + footnote_rows as u64 * 18;

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str("<style>text{font-family:monospace;font-size:13px;fill:#222222}</style>\n");

    for machine in 0..sched.machines() {
        let y = TOP + machine as u64 * ROW;
        svg.push_str(&format!(
            "<text x=\"4\" y=\"{}\">machine {}</text>\n",
            y + BAR / 2 + 5,
            machine + 1
        ));
        for rank in (1..=sched.ranks()).rev() {
            let p = sched.time_at(machine, rank);
            if p == 0 {
                continue;
            }
            let start = sched.start_at(machine, rank);
            let x = LEFT + start * UNIT;
            let w = p * UNIT;
            let color = PALETTE[(rank - 1) % PALETTE.len()];
            svg.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{BAR}\" fill=\"{color}\" stroke=\"#333333\"/>\n"
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\">{}</text>\n",
                x + w / 2 - 4,
                y + BAR / 2 + 5,
                sched.job_at(machine, rank) + 1
            ));
        }
    }

    // axis with end ticks
    let axis_y = TOP + m * ROW + 8;
    svg.push_str(&format!(
        "<line x1=\"{LEFT}\" y1=\"{axis_y}\" x2=\"{}\" y2=\"{axis_y}\" stroke=\"#555555\"/>\n",
        LEFT + makespan.max(1) * UNIT
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\">0</text>\n",
        LEFT - 4,
        axis_y + 16
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\">{makespan}</text>\n",
        LEFT + makespan.max(1) * UNIT - 4,
        axis_y + 16
    ));

    if !zs.is_empty() {
        let names: Vec<String> = zs.iter().map(|j| (j + 1).to_string()).collect();
        svg.push_str(&format!(
            "<text x=\"4\" y=\"{}\">jobs {} have zero processing time (start and finish at time 0)</text>\n",
            axis_y + 34,
            names.join(", ")
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
