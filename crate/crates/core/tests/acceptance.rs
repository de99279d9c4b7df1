//! Acceptance suite. Each test checks one release criterion at its stated
//! tolerance and prints one PASS line; a failing criterion fails its test.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fonema::convergence::{delta_series, fit_power};
use fonema::harmonizer::{adjust_dataset, load_reference_tables, pearson};
use fonema::tabulator::{
    class_breakdown_of, gemination_stats, manner_breakdown_of, FrequencyTable, ZMannerPolicy,
};
use fonema::transcriber::PhonemeToken;
use fonema::{
    Budget, CountingMode, Phoneme, Transcriber, TranscriptionPolicy,
};

const DEMO_CORPUS: [&str; 2] = [
    include_str!("../data/corpora/promessi_sposi.txt"),
    include_str!("../data/corpora/pinocchio.txt"),
];

fn demo_transcription() -> Vec<PhonemeToken> {
    let transcriber = Transcriber::with_bundled_lexicon(TranscriptionPolicy::default());
    let text = DEMO_CORPUS.join("\n");
    let tr = transcriber
        .transcribe_corpus(&text, Budget::All)
        .expect("demo corpus transcribes");
    tr.tokens()
}

#[test]
fn acceptance_harmonization_fidelity() {
    let tables = load_reference_tables().unwrap();
    let adjusted = adjust_dataset(&tables.zipf_raw).unwrap();

    // Every entry of the published adjusted column within ±0.05 pp.
    for p in Phoneme::ALL {
        let computed = adjusted.percents.get(p);
        let published = tables.table8.zipf.get(p);
        assert!(
            (computed - published).abs() <= 0.05,
            "{}: computed {computed:.4} vs published {published:.2}",
            p.arpabet()
        );
    }
    // Spot anchors.
    for (code, expected) in [
        ("AA", 10.72),
        ("K", 5.07),
        ("W", 0.84),
        ("N", 7.85),
        ("T", 5.63),
        ("TS", 0.94),
        ("CH", 0.82),
    ] {
        let p = Phoneme::from_arpabet(code).unwrap();
        assert!(
            (adjusted.percents.get(p) - expected).abs() <= 0.05,
            "{code} anchor"
        );
    }
    // The documented renormalization mass of the corrected table.
    assert!(
        (adjusted.raw_total - 106.94).abs() <= 0.05,
        "raw mass {}",
        adjusted.raw_total
    );
    println!("ACCEPTANCE harmonization_fidelity: PASS");
}

/// Independent covariance-based oracle for the correlation criterion.
fn pearson_oracle(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov = x
        .iter()
        .zip(y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<f64>()
        / n;
    let vx = x.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>() / n;
    let vy = y.iter().map(|b| (b - my) * (b - my)).sum::<f64>() / n;
    cov / (vx.sqrt() * vy.sqrt())
}

#[test]
fn acceptance_correlation_fidelity() {
    let tables = load_reference_tables().unwrap();
    let current = tables.table8.current.values();
    let zipf = tables.table8.zipf.values();
    let busa = tables.table8.busa.values();

    let pairs = [
        (current.as_slice(), zipf.as_slice(), tables.table9[0][1]),
        (current.as_slice(), busa.as_slice(), tables.table9[0][2]),
        (zipf.as_slice(), busa.as_slice(), tables.table9[1][2]),
    ];
    for (x, y, published) in pairs {
        let r = pearson(x, y).unwrap();
        assert!(
            (r - published).abs() <= 0.005,
            "pearson {r:.4} vs published {published}"
        );
        let oracle = pearson_oracle(x, y);
        assert!((r - oracle).abs() <= 1e-12, "oracle disagrees: {r} vs {oracle}");
    }
    println!("ACCEPTANCE correlation_fidelity: PASS");
}

#[test]
fn acceptance_aggregation_fidelity() {
    let tables = load_reference_tables().unwrap();
    let avg = &tables.table2.average;

    let class = class_breakdown_of(|p| avg.get(p));
    for (got, published, label) in [
        (class.vowel, 43.58, "Vowel"),
        (class.glide, 2.83, "Glide"),
        (class.consonant, 53.59, "Consonant"),
    ] {
        assert!(
            (got - published).abs() <= 0.02,
            "{label}: {got:.4} vs {published}"
        );
    }

    let manner = manner_breakdown_of(|p| avg.get(p), ZMannerPolicy::IncludeInFricative);
    for (got, published, label) in [
        (manner.stop, 19.45, "Stop"),
        (manner.fricative, 8.02, "Fricative"),
        (manner.affricate, 2.99, "Affricate"),
        (manner.nasal, 10.19, "Nasal"),
        (manner.liquid, 12.94, "Liquid"),
    ] {
        assert!(
            (got - published).abs() <= 0.02,
            "{label}: {got:.4} vs {published}"
        );
    }
    println!("ACCEPTANCE aggregation_fidelity: PASS");
}

/// Independent log-log regression oracle using the raw-sums normal
/// equations (a different formulation than the implementation's centered
/// means).
fn power_fit_oracle(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .collect();
    let n = usable.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in &usable {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - b * sx) / n;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    let mean_ly = sy / n;
    for &(x, y) in &usable {
        let pred = intercept + b * x.ln();
        ss_res += (y.ln() - pred) * (y.ln() - pred);
        ss_tot += (y.ln() - mean_ly) * (y.ln() - mean_ly);
    }
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    (intercept.exp(), b, r2)
}

#[test]
fn acceptance_power_fit_correctness() {
    // Exact power law: parameters recovered to 1e-9 with r2 = 1.
    let exact: Vec<(f64, f64)> = (2..=24)
        .map(|k| {
            let x = (250 * k) as f64;
            (x, 3.7 * x.powf(-1.13))
        })
        .collect();
    let fit = fit_power(&exact).unwrap();
    assert!((fit.a - 3.7).abs() <= 1e-9, "a = {}", fit.a);
    assert!((fit.b + 1.13).abs() <= 1e-9, "b = {}", fit.b);
    assert!((fit.r2 - 1.0).abs() <= 1e-9, "r2 = {}", fit.r2);

    // 100 randomized noisy series against the independent oracle.
    let mut rng = StdRng::seed_from_u64(0xf17_ab1e);
    for trial in 0..100 {
        let a = rng.random_range(0.05..20.0);
        let b = rng.random_range(-2.0..-0.2);
        let n = rng.random_range(4..30);
        let points: Vec<(f64, f64)> = (2..2 + n)
            .map(|k| {
                let x = (250 * k) as f64;
                let noise = rng.random_range(0.5..1.5);
                (x, a * x.powf(b) * noise)
            })
            .collect();
        let fit = fit_power(&points).unwrap();
        let (oa, ob, or2) = power_fit_oracle(&points);
        assert!((fit.a - oa).abs() <= 1e-9 * oa.abs().max(1.0), "trial {trial}: a");
        assert!((fit.b - ob).abs() <= 1e-9, "trial {trial}: b");
        assert!((fit.r2 - or2).abs() <= 1e-9, "trial {trial}: r2");
    }
    println!("ACCEPTANCE power_fit_correctness: PASS");
}

#[test]
fn acceptance_convergence_behavior() {
    let tokens = demo_transcription();
    let expanded: u64 = tokens.iter().map(|t| t.expanded_units()).sum();
    assert!(
        expanded >= 6000,
        "demo transcription has only {expanded} expanded units"
    );

    let series = delta_series(&tokens, 250, CountingMode::TokenWise).unwrap();
    // (i) Every per-category delta beyond the 3,250 mark below 0.5 pp.
    for point in series.points.iter().filter(|p| p.x > 3250) {
        for (i, &d) in point.deltas.iter().enumerate() {
            assert!(
                d < 0.5,
                "delta {:.3} pp for {} at x={}",
                d,
                series.categories()[i].label(),
                point.x
            );
        }
    }
    // The average delta has settled well under 0.25 pp by the end.
    let last_avg = series.average_points.last().unwrap().delta;
    assert!(last_avg < 0.25, "final average delta {last_avg:.3} pp");
    // (ii) Negative exponent with a solid log-log fit.
    let fit = fit_power(&series.average_xy()).unwrap();
    assert!(fit.b < 0.0, "b = {}", fit.b);
    assert!(fit.r2 >= 0.8, "r2 = {}", fit.r2);
    println!(
        "ACCEPTANCE convergence_behavior: PASS (n={expanded}, b={:.3}, r2={:.3})",
        fit.b, fit.r2
    );
}

#[test]
fn acceptance_frequency_plausibility() {
    let tokens = demo_transcription();
    let table = FrequencyTable::from_tokens(&tokens, CountingMode::Expanded).unwrap();
    let reference = &load_reference_tables().unwrap().table2.average;

    let mut ranked: Vec<Phoneme> = Phoneme::ALL.to_vec();
    ranked.sort_by(|&a, &b| table.frequency(b).partial_cmp(&table.frequency(a)).unwrap());

    // The four most frequent phonemes are the vowels a, e, i, o.
    let top4: Vec<&str> = ranked[..4].iter().map(|p| p.arpabet()).collect();
    for code in ["AA", "EY", "IY", "OW"] {
        assert!(top4.contains(&code), "top-4 {top4:?} misses {code}");
    }
    // Each of the top-8 lies within ±2.5 pp of the published average.
    for &p in &ranked[..8] {
        let got = table.frequency(p) * 100.0;
        let expected = reference.get(p);
        assert!(
            (got - expected).abs() <= 2.5,
            "{}: {got:.2} vs published {expected:.2}",
            p.arpabet()
        );
    }
    println!("ACCEPTANCE frequency_plausibility: PASS (top4 = {top4:?})");
}

#[test]
fn acceptance_transcription_invariants() {
    let transcriber = Transcriber::with_bundled_lexicon(TranscriptionPolicy::default());

    // Demo corpora plus assorted stress inputs.
    let mut texts: Vec<String> = DEMO_CORPUS.iter().map(|s| s.to_string()).collect();
    texts.push("zanzara yogurt whisky all'alba l'ozio squillo figli ognuno".to_string());
    let mut rng = StdRng::seed_from_u64(42);
    let alphabet: Vec<char> = "abcdefghilmnopqrstuvz'àèéìòù ".chars().collect();
    for _ in 0..200 {
        let len = rng.random_range(1..60);
        let s: String = (0..len)
            .map(|_| alphabet[rng.random_range(0..alphabet.len())])
            .collect();
        texts.push(s);
    }

    for text in &texts {
        let tr = transcriber
            .transcribe_corpus(text, Budget::All)
            .expect("default policy transcribes anything alphabetic");
        for word in &tr.words {
            let tokens = &word.tokens;
            for i in 0..tokens.len() {
                let t = tokens[i];
                // Zero geminated Z/Y/W (or any non-geminable) tokens.
                assert!(
                    !t.geminate || t.phoneme.can_geminate(),
                    "geminated {} in {:?}",
                    t.phoneme.arpabet(),
                    word.text
                );
                // Intervocalic members of the always-geminate set.
                if t.phoneme.always_geminate_intervocalic()
                    && i > 0
                    && tokens[i - 1].phoneme.is_vowel()
                    && i + 1 < tokens.len()
                    && tokens[i + 1].phoneme.is_vowel()
                {
                    assert!(t.geminate, "single {} in {:?}", t.phoneme.arpabet(), word.text);
                }
                // No intervocalic /z/ under the default policy.
                if t.phoneme == Phoneme::Z {
                    let between = i > 0
                        && tokens[i - 1].phoneme.is_vowel()
                        && i + 1 < tokens.len()
                        && tokens[i + 1].phoneme.is_vowel();
                    assert!(!between, "intervocalic Z in {:?}", word.text);
                }
            }
        }
    }

    // Golden words, byte-exact.
    let golden = include_str!("data/golden_words.tsv");
    let mut checked = 0;
    for line in golden.lines() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (word, expected) = line.split_once('\t').unwrap();
        let tokens = transcriber.transcribe_word(word).unwrap();
        let actual: Vec<&str> = tokens.iter().map(|t| t.code()).collect();
        assert_eq!(actual.join(" "), expected, "golden mismatch for {word}");
        checked += 1;
    }
    assert!(checked >= 50, "only {checked} golden words");
    println!("ACCEPTANCE transcription_invariants: PASS ({checked} golden words)");
}

#[test]
fn acceptance_counting_identities() {
    let mut rng = StdRng::seed_from_u64(0xc0c0_u64);
    for _ in 0..10_000 {
        let len = rng.random_range(1..150);
        let tokens: Vec<PhonemeToken> = (0..len)
            .map(|_| {
                let p = Phoneme::ALL[rng.random_range(0..30)];
                let gem = p.can_geminate() && rng.random_bool(0.3);
                PhonemeToken::new(p, gem, fonema::transcriber::Span::new(0, 0))
            })
            .collect();
        let geminate_tokens = tokens.iter().filter(|t| t.geminate).count() as u64;
        let exp = FrequencyTable::from_tokens(&tokens, CountingMode::Expanded).unwrap();
        let tw = FrequencyTable::from_tokens(&tokens, CountingMode::TokenWise).unwrap();
        assert_eq!(exp.total.unwrap(), tw.total.unwrap() + geminate_tokens);

        let stats = gemination_stats(&tokens).unwrap();
        for e in &stats.entries {
            if let Some(rate) = e.rate {
                assert_eq!(
                    rate,
                    e.geminated_freq / (e.independent_freq + e.geminated_freq)
                );
            }
        }
    }
    println!("ACCEPTANCE counting_identities: PASS (10000 trials)");
}
