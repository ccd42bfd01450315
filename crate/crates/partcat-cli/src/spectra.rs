//! Verbs over the flat bases and their bilinear form: enumeration, Gram
//! matrices, determinant root scans, Moebius matrices, the Knop product, and
//! inclusion scalars.

use crate::output::{print_csv, print_json, Checks, Csv, Failure, Format};
use num::BigRational;
use partcat_core::lattice::{self, classify_roots, falling_range, RootReport, Verdict};
use partcat_core::{Category, IntPoly, LaurentPoly, Partition};
use serde::Serialize;

#[derive(Serialize)]
struct EnumerateReport {
    category: String,
    upper: usize,
    lower: usize,
    count: usize,
    partitions: Vec<Partition>,
}

pub fn enumerate(cat: &Category, k: usize, l: usize, fmt: Format) -> Result<(), Failure> {
    let parts: Vec<Partition> = cat.partitions(k, l).as_ref().clone();
    let report = EnumerateReport {
        category: cat.name(),
        upper: k,
        lower: l,
        count: parts.len(),
        partitions: parts,
    };
    match fmt {
        Format::Text => {
            for p in &report.partitions {
                println!("{p}");
            }
            println!("{} rows", report.count);
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let rows = report
                .partitions
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    vec![
                        i.to_string(),
                        p.to_string(),
                        p.block_count().to_string(),
                        p.through_blocks().to_string(),
                    ]
                })
                .collect();
            print_csv(&Csv {
                header: vec!["index", "partition", "blocks", "through_blocks"],
                rows,
            });
        }
    }
    let mut checks = Checks::new();
    // categories are closed under rotation, so every shape with the same
    // total point count has the same cardinality; bounded generated closures
    // may truncate rotation chains, so check named families only
    if cat.family().is_some() && k > 0 && k + l <= 8 {
        checks.require(
            report.count == cat.partitions(0, k + l).len(),
            format!("|C({k},{l})| differs from |C(0,{})|", k + l),
        );
    }
    checks.finish()
}

#[derive(Serialize)]
struct GramReport {
    category: String,
    k: usize,
    size: usize,
    basis: Vec<Partition>,
    entries: Vec<Vec<LaurentPoly>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    det: Option<LaurentPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    det_at_t: Option<String>,
}

pub fn gram(
    cat: &Category,
    k: usize,
    want_det: bool,
    t: Option<&BigRational>,
    fmt: Format,
) -> Result<(), Failure> {
    let g = lattice::gram_flat(cat, k)?;
    let n = g.size();
    let entries: Vec<Vec<LaurentPoly>> =
        (0..n).map(|i| (0..n).map(|j| g.entry(i, j)).collect()).collect();
    let mut checks = Checks::new();
    for i in 0..n {
        for j in 0..i {
            checks.require(g.exponent(i, j) == g.exponent(j, i), "Gram matrix symmetry");
        }
    }
    let det = if want_det || t.is_some() {
        let d = g.det();
        if n <= 8 {
            checks.require(
                d == g.det_via_elimination(),
                "interpolated determinant vs fraction-free elimination",
            );
        }
        Some(d)
    } else {
        None
    };
    let det_at_t = match (&det, t) {
        (Some(d), Some(t0)) => Some(d.to_laurent().eval(t0)?.to_string()),
        _ => None,
    };
    let report = GramReport {
        category: cat.name(),
        k,
        size: n,
        basis: g.basis().to_vec(),
        entries,
        det: det.as_ref().map(IntPoly::to_laurent),
        det_at_t,
    };
    match fmt {
        Format::Text => {
            if let Some(d) = &report.det {
                println!("{d}");
                if let Some(v) = &report.det_at_t {
                    println!("det({}) = {v}", t.unwrap());
                }
            } else {
                for row in &report.entries {
                    let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
                    println!("[{}]", cells.join("  "));
                }
            }
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = Vec::new();
            for (i, row) in report.entries.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    rows.push(vec![i.to_string(), j.to_string(), e.to_string()]);
                }
            }
            if let Some(d) = &report.det {
                rows.push(vec!["det".into(), String::new(), d.to_string()]);
            }
            print_csv(&Csv {
                header: vec!["row", "col", "entry"],
                rows,
            });
        }
    }
    checks.finish()
}

#[derive(Serialize)]
struct ScanRow {
    k: usize,
    size: usize,
    det_coeffs: Vec<String>,
    #[serde(flatten)]
    report: RootReport,
}

#[derive(Serialize)]
struct ScanReport {
    category: String,
    kmax: usize,
    rows: Vec<ScanRow>,
}

fn root_summary(r: &RootReport) -> String {
    let mut parts: Vec<String> = r
        .roots
        .iter()
        .map(|ri| {
            let value = if ri.value == ri.value.round() && ri.value.abs() < 1e9 {
                format!("{}", ri.value as i64)
            } else {
                format!("{:.6}", ri.value)
            };
            format!("{value}^{}", ri.multiplicity)
        })
        .collect();
    for a in &r.approx_residual_roots {
        parts.push(format!("~{a:.6}"));
    }
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" ")
    }
}

fn verdict_str(r: &RootReport) -> &'static str {
    match r.verdict {
        Verdict::NonnegativeIntegers => "N0",
        Verdict::TwoCos => "2cos",
        Verdict::FourCosSq => "4cos2",
        Verdict::Mixed => "mixed",
    }
}

pub fn scan(cat: &Category, kmax: usize, show_det: bool, fmt: Format) -> Result<(), Failure> {
    if kmax > 6 {
        eprintln!("partcat: note: scan beyond kmax=6 grows with the Bell numbers; expect long runtimes");
    }
    let mut checks = Checks::new();
    let mut rows = Vec::new();
    let mut dets = Vec::new();
    for k in 0..=kmax {
        let g = lattice::gram_flat(cat, k)?;
        let det = g.det();
        if g.size() <= 8 {
            checks.require(
                det == g.det_via_elimination(),
                format!("dual determinant routes at k={k}"),
            );
        }
        let hi = kmax as i64 + 2;
        let report = classify_roots(&det, -2 * hi, hi, 20);
        rows.push(ScanRow {
            k,
            size: g.size(),
            det_coeffs: det.coeffs().iter().map(|c| c.to_string()).collect(),
            report,
        });
        dets.push(det);
    }
    let report = ScanReport {
        category: cat.name(),
        kmax,
        rows,
    };
    match fmt {
        Format::Text => {
            for (row, det) in report.rows.iter().zip(&dets) {
                println!(
                    "k={}: size {}, degree {}, roots {}, all roots in {}{}",
                    row.k,
                    row.size,
                    row.report.degree,
                    root_summary(&row.report),
                    verdict_str(&row.report),
                    if row.report.certified { "" } else { " (uncertified residual)" },
                );
                if show_det {
                    println!("  det = {}", det.to_laurent());
                }
            }
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        r.size.to_string(),
                        r.report.degree.to_string(),
                        verdict_str(&r.report).to_string(),
                        r.report.certified.to_string(),
                        root_summary(&r.report).replace(' ', ";"),
                    ]
                })
                .collect();
            print_csv(&Csv {
                header: vec!["k", "size", "degree", "all_roots_in", "certified", "roots"],
                rows,
            });
        }
    }
    checks.finish()
}

#[derive(Serialize)]
struct MobiusReport {
    category: String,
    k: usize,
    basis: Vec<Partition>,
    mobius: Vec<Vec<i64>>,
}

pub fn mobius(cat: &Category, k: usize, fmt: Format) -> Result<(), Failure> {
    let basis: Vec<Partition> = cat.flat(k).as_ref().clone();
    let mu = lattice::mobius_matrix(&basis)?;
    let mut checks = Checks::new();
    // invert back: mu times the order (zeta) matrix must be the identity
    let n = basis.len();
    let mut ok = true;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0i64;
            for z in 0..n {
                if basis[z].refinement_leq(&basis[j])? {
                    s += mu[i][z];
                }
            }
            ok &= s == i64::from(i == j);
        }
    }
    checks.require(ok, "mobius * zeta = identity");
    let report = MobiusReport {
        category: cat.name(),
        k,
        basis,
        mobius: mu,
    };
    match fmt {
        Format::Text => {
            for (i, p) in report.basis.iter().enumerate() {
                println!("{i}: {p}");
            }
            for row in &report.mobius {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                println!("[{}]", cells.join(" "));
            }
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let mut rows = Vec::new();
            for (i, row) in report.mobius.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if *v != 0 {
                        rows.push(vec![i.to_string(), j.to_string(), v.to_string()]);
                    }
                }
            }
            print_csv(&Csv {
                header: vec!["row", "col", "mu"],
                rows,
            });
        }
    }
    checks.finish()
}

#[derive(Serialize)]
struct OmegaReport {
    category: String,
    k: usize,
    omega: LaurentPoly,
    det_matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_at_t: Option<String>,
}

pub fn omega(cat: &Category, k: usize, t: Option<&BigRational>, fmt: Format) -> Result<(), Failure> {
    let w = lattice::omega(cat, k)?;
    let det = lattice::gram_flat(cat, k)?.det();
    let det_matches = w == det;
    let omega_at_t = t.map(|t0| w.to_laurent().eval(t0)).transpose()?.map(|v| v.to_string());
    let report = OmegaReport {
        category: cat.name(),
        k,
        omega: w.to_laurent(),
        det_matches,
        omega_at_t,
    };
    match fmt {
        Format::Text => {
            println!("{}", report.omega);
            if let Some(v) = &report.omega_at_t {
                println!("omega({}) = {v}", t.unwrap());
            }
        }
        Format::Json => print_json(&report),
        Format::Csv => print_csv(&Csv {
            header: vec!["k", "omega", "det_matches"],
            rows: vec![vec![
                k.to_string(),
                report.omega.to_string(),
                det_matches.to_string(),
            ]],
        }),
    }
    let mut checks = Checks::new();
    checks.require(det_matches, "omega equals the Gram determinant");
    checks.finish()
}

#[derive(Serialize)]
struct WscalarReport {
    k: usize,
    l: usize,
    image: Vec<usize>,
    w: LaurentPoly,
}

pub fn wscalar(k: usize, l: usize, inj: Option<&str>, fmt: Format) -> Result<(), Failure> {
    if k > l {
        return Err(Failure::Usage(format!(
            "no injection of {k} points into {l} points"
        )));
    }
    let image: Vec<usize> = match inj {
        None => (1..=k).collect(),
        Some(s) => s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("bad image label {x:?}")))
            })
            .collect::<Result<_, _>>()?,
    };
    let w = lattice::inclusion_weight(&image, l)?;
    let mut checks = Checks::new();
    // the scalar depends only on the sizes: it must equal the falling product
    // (t-k)(t-k-1)...(t-l+1) for every image
    checks.require(
        w == falling_range(k, l),
        "Moebius-sum scalar vs falling-factorial product",
    );
    let report = WscalarReport {
        k,
        l,
        image,
        w: w.to_laurent(),
    };
    match fmt {
        Format::Text => println!("{}", report.w),
        Format::Json => print_json(&report),
        Format::Csv => print_csv(&Csv {
            header: vec!["k", "l", "image", "w"],
            rows: vec![vec![
                k.to_string(),
                l.to_string(),
                report
                    .image
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
                report.w.to_string(),
            ]],
        }),
    }
    checks.finish()
}
