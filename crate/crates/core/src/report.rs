//! Fixed-format CSV and JSON emission. Column layouts follow the published
//! tables (phoneme rows sorted by descending frequency, two-decimal
//! percentages) so output files diff cleanly against golden copies.

use serde::Serialize;

use crate::convergence::{ConvergenceSeries, PowerFit};
use crate::inventory::Phoneme;
use crate::tabulator::{
    categories, ClassBreakdown, CountingMode, FrequencyTable, GeminationStats, MannerBreakdown,
};

/// Machine-readable inventory listing row.
#[derive(Debug, Clone, Serialize)]
pub struct InventoryRow {
    pub arpabet: &'static str,
    pub ipa: &'static str,
    pub class: &'static str,
    pub manner: Option<&'static str>,
    pub geminable: bool,
    pub geminate_code: Option<&'static str>,
    pub always_geminate_intervocalic: bool,
}

pub fn inventory_rows() -> Vec<InventoryRow> {
    Phoneme::ALL
        .iter()
        .map(|&p| InventoryRow {
            arpabet: p.arpabet(),
            ipa: p.ipa(),
            class: p.class().name(),
            manner: p.manner().map(|m| m.name()),
            geminable: p.can_geminate(),
            geminate_code: crate::inventory::arpabet_of(p, true).ok(),
            always_geminate_intervocalic: p.always_geminate_intervocalic(),
        })
        .collect()
}

pub fn inventory_csv() -> String {
    let mut out = String::from(
        "arpabet,ipa,class,manner,geminable,geminate_code,always_geminate_intervocalic\n",
    );
    for row in inventory_rows() {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.arpabet,
            row.ipa,
            row.class,
            row.manner.unwrap_or(""),
            row.geminable,
            row.geminate_code.unwrap_or(""),
            row.always_geminate_intervocalic
        ));
    }
    out
}

pub fn inventory_json() -> String {
    serde_json::to_string_pretty(&inventory_rows()).expect("serializable")
}

fn fmt_pct(v: f64) -> String {
    format!("{:.2}", v)
}

/// Row order for a set of tables: descending by the ordering column
/// (average when present, else the first table), ties broken by inventory
/// order.
fn sorted_category_indices(order_by: &FrequencyTable) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..order_by.frequencies.len()).collect();
    idx.sort_by(|&a, &b| {
        order_by.frequencies[b]
            .partial_cmp(&order_by.frequencies[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    idx
}

/// Frequency CSV in the published layout: one phoneme column, one percent
/// column per source, average column when several sources are given.
pub fn frequency_csv(
    names: &[String],
    tables: &[&FrequencyTable],
    average: Option<&FrequencyTable>,
) -> String {
    assert_eq!(names.len(), tables.len());
    let mode = tables.first().map(|t| t.mode).unwrap_or(CountingMode::Expanded);
    let cats = categories(mode);
    let order_by = average.unwrap_or(tables[0]);

    let mut out = String::from("phoneme");
    for name in names {
        out.push_str(&format!(",{name}"));
    }
    if average.is_some() {
        out.push_str(",average");
    }
    out.push('\n');

    for i in sorted_category_indices(order_by) {
        out.push_str(cats[i].label());
        for table in tables {
            out.push_str(&format!(",{}", fmt_pct(table.frequencies[i] * 100.0)));
        }
        if let Some(avg) = average {
            out.push_str(&format!(",{}", fmt_pct(avg.frequencies[i] * 100.0)));
        }
        out.push('\n');
    }
    out
}

/// Gemination CSV in the published layout: independent / geminated /
/// rate-of-gemination columns, rows by descending rate.
pub fn gemination_csv(stats: &GeminationStats) -> String {
    let mut entries = stats.entries.clone();
    entries.sort_by(|a, b| {
        let ra = a.rate.unwrap_or(-1.0);
        let rb = b.rate.unwrap_or(-1.0);
        rb.partial_cmp(&ra)
            .unwrap()
            .then((a.phoneme as usize).cmp(&(b.phoneme as usize)))
    });
    let mut out =
        String::from("phoneme,independent_percent,geminated_percent,gemination_rate_percent\n");
    for e in entries {
        out.push_str(&format!(
            "{},{},{},{}\n",
            e.phoneme.arpabet(),
            fmt_pct(e.independent_freq * 100.0),
            fmt_pct(e.geminated_freq * 100.0),
            e.rate.map(|r| fmt_pct(r * 100.0)).unwrap_or_default()
        ));
    }
    out
}

/// Class-breakdown CSV: Vowel/Glide/Consonant rows, one column per source
/// plus optional average. Values are percents.
pub fn class_csv(
    names: &[String],
    breakdowns: &[ClassBreakdown],
    average: Option<&ClassBreakdown>,
) -> String {
    let mut out = String::from("class");
    for name in names {
        out.push_str(&format!(",{name}"));
    }
    if average.is_some() {
        out.push_str(",average");
    }
    out.push('\n');
    type Getter = fn(&ClassBreakdown) -> f64;
    let rows: [(&str, Getter); 3] = [
        ("Vowel", |c| c.vowel),
        ("Glide", |c| c.glide),
        ("Consonant", |c| c.consonant),
    ];
    for (label, getter) in rows {
        out.push_str(label);
        for b in breakdowns {
            out.push_str(&format!(",{}", fmt_pct(getter(b))));
        }
        if let Some(avg) = average {
            out.push_str(&format!(",{}", fmt_pct(getter(avg))));
        }
        out.push('\n');
    }
    out
}

/// Manner-breakdown CSV: Stop/Fricative/Affricate/Nasal/Liquid rows.
pub fn manner_csv(
    names: &[String],
    breakdowns: &[MannerBreakdown],
    average: Option<&MannerBreakdown>,
) -> String {
    let mut out = String::from("manner");
    for name in names {
        out.push_str(&format!(",{name}"));
    }
    if average.is_some() {
        out.push_str(",average");
    }
    out.push('\n');
    type Getter = fn(&MannerBreakdown) -> f64;
    let rows: [(&str, Getter); 5] = [
        ("Stop", |m| m.stop),
        ("Fricative", |m| m.fricative),
        ("Affricate", |m| m.affricate),
        ("Nasal", |m| m.nasal),
        ("Liquid", |m| m.liquid),
    ];
    for (label, getter) in rows {
        out.push_str(label);
        for b in breakdowns {
            out.push_str(&format!(",{}", fmt_pct(getter(b))));
        }
        if let Some(avg) = average {
            out.push_str(&format!(",{}", fmt_pct(getter(avg))));
        }
        out.push('\n');
    }
    out
}

/// Long-format per-category delta plot data: x, category, delta (pp).
pub fn delta_plot_csv(series: &ConvergenceSeries) -> String {
    let cats = series.categories();
    let mut out = String::from("x,category,delta\n");
    for point in &series.points {
        for (i, d) in point.deltas.iter().enumerate() {
            out.push_str(&format!("{},{},{:.6}\n", point.x, cats[i].label(), d));
        }
    }
    out
}

/// Average-delta plot data with the fitted curve evaluated at each x.
pub fn average_plot_csv(series: &ConvergenceSeries, fit: Option<&PowerFit>) -> String {
    let mut out = String::from("x,average_delta,fitted_value\n");
    for p in &series.average_points {
        let fitted = fit
            .map(|f| format!("{:.6}", crate::convergence::evaluate_fit(f, p.x as f64)))
            .unwrap_or_default();
        out.push_str(&format!("{},{:.6},{}\n", p.x, p.delta, fitted));
    }
    out
}

/// Harmonized-comparison CSV: current column plus one column per dataset,
/// with per-entry deviation flags against a published column when one
/// exists.
pub fn comparison_csv(
    current: &crate::tabulator::PhonemePercents,
    datasets: &[(String, crate::tabulator::PhonemePercents)],
    display_order: &[Phoneme],
) -> String {
    let mut out = String::from("phoneme,current");
    for (name, _) in datasets {
        out.push_str(&format!(",{name}"));
    }
    out.push('\n');
    for &p in display_order {
        out.push_str(&format!("{},{}", p.arpabet(), fmt_pct(current.get(p))));
        for (_, col) in datasets {
            out.push_str(&format!(",{}", fmt_pct(col.get(p))));
        }
        out.push('\n');
    }
    out
}

/// Correlation matrix for JSON emission.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

pub fn correlation_json(matrix: &CorrelationMatrix) -> String {
    serde_json::to_string_pretty(matrix).expect("serializable")
}
