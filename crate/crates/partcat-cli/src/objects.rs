//! Verbs over projective and surjective partitions: listing, the census of
//! new indecomposable objects, and the surjective-description cross-check.

use crate::output::{print_csv, print_json, Checks, Csv, Failure, Format};
use num::BigRational;
use num::Zero;
use partcat_core::projectives::{
    self, canonical_half, equivalence_classes, half_symmetry_group, symmetry_group, CensusRow,
};
use partcat_core::{Category, Partition};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Serialize)]
struct ProjectivesReport {
    category: String,
    k: usize,
    count: usize,
    projectives: Vec<ProjectiveRow>,
}

#[derive(Serialize)]
struct ProjectiveRow {
    partition: Partition,
    through_blocks: usize,
    indecomposable: bool,
}

pub fn projectives(cat: &Category, k: usize, fmt: Format) -> Result<(), Failure> {
    let all = projectives::projectives(cat, k);
    let indec: BTreeSet<Partition> = projectives::indecomposables(cat, k).into_iter().collect();
    let mut checks = Checks::new();
    for p in &all {
        // every projective must factor through its canonical half
        let half = canonical_half(p)?;
        let refactored = Partition::compose(&half.involution(), &half)?.partition;
        checks.require(refactored == *p, format!("half factorization of {p}"));
    }
    let rows: Vec<ProjectiveRow> = all
        .iter()
        .map(|p| ProjectiveRow {
            partition: p.clone(),
            through_blocks: p.through_blocks(),
            indecomposable: indec.contains(p),
        })
        .collect();
    let report = ProjectivesReport {
        category: cat.name(),
        k,
        count: rows.len(),
        projectives: rows,
    };
    match fmt {
        Format::Text => {
            for r in &report.projectives {
                println!(
                    "{}  through={} {}",
                    r.partition,
                    r.through_blocks,
                    if r.indecomposable { "new" } else { "from smaller degree" },
                );
            }
            println!("{} projective partitions", report.count);
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let rows = report
                .projectives
                .iter()
                .map(|r| {
                    vec![
                        r.partition.to_string(),
                        r.through_blocks.to_string(),
                        r.indecomposable.to_string(),
                    ]
                })
                .collect();
            print_csv(&Csv {
                header: vec!["partition", "through_blocks", "indecomposable"],
                rows,
            });
        }
    }
    checks.finish()
}

#[derive(Serialize)]
struct CensusDegree {
    degree: usize,
    rows: Vec<CensusRow>,
    new_count: usize,
}

#[derive(Serialize)]
struct CensusReport {
    category: String,
    kmax: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<String>,
    degrees: Vec<CensusDegree>,
}

pub fn census(
    cat: &Category,
    kmax: usize,
    t: Option<&BigRational>,
    group_cap: usize,
    fmt: Format,
) -> Result<(), Failure> {
    if let Some(t0) = t {
        if t0.is_zero() {
            return Err(Failure::Usage(
                "census requires t != 0: the classification of indecomposables assumes a nonzero loop parameter".into(),
            ));
        }
    }
    if kmax > 5 {
        eprintln!("partcat: note: census beyond kmax=5 grows with the Bell numbers; expect long runtimes");
    }
    let mut checks = Checks::new();
    let mut degrees = Vec::new();
    for k in 0..=kmax {
        let rows = projectives::census(cat, k, group_cap)?;
        let indec: BTreeSet<Partition> =
            projectives::indecomposables(cat, k).into_iter().collect();
        for row in &rows {
            checks.require(
                indec.contains(&row.representative),
                format!("census row at degree {k} is indecomposable"),
            );
        }
        let new_count = rows.iter().map(|r| r.conjugacy_classes).sum();
        degrees.push(CensusDegree {
            degree: k,
            rows,
            new_count,
        });
    }
    let report = CensusReport {
        category: cat.name(),
        kmax,
        t: t.map(|v| v.to_string()),
        degrees,
    };
    match fmt {
        Format::Text => {
            for d in &report.degrees {
                for r in &d.rows {
                    println!(
                        "degree {}: rep {}  class size {}, through {}, group order {}, classes {}",
                        d.degree,
                        r.representative,
                        r.class_size,
                        r.through,
                        r.group_order,
                        r.conjugacy_classes,
                    );
                }
            }
            let counts: Vec<String> =
                report.degrees.iter().map(|d| d.new_count.to_string()).collect();
            let degrees: Vec<String> =
                report.degrees.iter().map(|d| d.degree.to_string()).collect();
            println!(
                "{} new indecomposables at degrees {}",
                counts.join(","),
                degrees.join(",")
            );
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let mut rows = Vec::new();
            for d in &report.degrees {
                for r in &d.rows {
                    rows.push(vec![
                        d.degree.to_string(),
                        r.representative.to_string(),
                        r.class_size.to_string(),
                        r.through.to_string(),
                        r.group_order.to_string(),
                        r.conjugacy_classes.to_string(),
                    ]);
                }
            }
            print_csv(&Csv {
                header: vec![
                    "degree",
                    "representative",
                    "class_size",
                    "through_blocks",
                    "group_order",
                    "class_count",
                ],
                rows,
            });
        }
    }
    checks.finish()
}

#[derive(Serialize)]
struct SurjectiveDegree {
    degree: usize,
    surjective_classes: usize,
    projective_classes: usize,
    image_bijective: bool,
    groups_match: bool,
}

#[derive(Serialize)]
struct SurjectiveReport {
    category: String,
    kmax: usize,
    degrees: Vec<SurjectiveDegree>,
}

pub fn surjective_check(
    cat: &Category,
    kmax: usize,
    group_cap: usize,
    fmt: Format,
) -> Result<(), Failure> {
    let mut checks = Checks::new();
    let mut degrees = Vec::new();
    for k in 0..=kmax {
        let qclasses = projectives::surjective_classes(cat, k)?;
        let proj = projectives::projectives(cat, k);
        let indec: BTreeSet<Partition> =
            projectives::indecomposables(cat, k).into_iter().collect();
        let pclasses: Vec<Vec<Partition>> = equivalence_classes(cat, k, &proj)?
            .into_iter()
            .filter(|cl| indec.contains(&cl[0]))
            .collect();

        // map each surjective class through q* q and locate the projective class
        let mut hit: Vec<usize> = Vec::new();
        let mut groups_match = true;
        for qcl in &qclasses {
            let q = &qcl[0];
            let p = Partition::compose(&q.involution(), q)?.partition;
            let idx = pclasses.iter().position(|cl| cl.contains(&p));
            match idx {
                None => groups_match = false,
                Some(i) => {
                    hit.push(i);
                    let gh = half_symmetry_group(cat, q, group_cap)?;
                    let gp = symmetry_group(cat, &p, group_cap)?;
                    groups_match &= gh.order() == gp.order()
                        && gh.conjugacy_class_count() == gp.conjugacy_class_count();
                }
            }
        }
        hit.sort_unstable();
        hit.dedup();
        let image_bijective =
            hit.len() == qclasses.len() && qclasses.len() == pclasses.len();
        let row = SurjectiveDegree {
            degree: k,
            surjective_classes: qclasses.len(),
            projective_classes: pclasses.len(),
            image_bijective,
            groups_match,
        };
        checks.require(
            row.image_bijective,
            format!("surjective classes biject onto projective classes at degree {k}"),
        );
        checks.require(
            row.groups_match,
            format!("half symmetry groups match projective symmetry groups at degree {k}"),
        );
        degrees.push(row);
    }
    let report = SurjectiveReport {
        category: cat.name(),
        kmax,
        degrees,
    };
    match fmt {
        Format::Text => {
            for d in &report.degrees {
                println!(
                    "degree {}: surjective classes {}, projective classes {}, bijective {}, groups match {}",
                    d.degree,
                    d.surjective_classes,
                    d.projective_classes,
                    d.image_bijective,
                    d.groups_match,
                );
            }
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let rows = report
                .degrees
                .iter()
                .map(|d| {
                    vec![
                        d.degree.to_string(),
                        d.surjective_classes.to_string(),
                        d.projective_classes.to_string(),
                        d.image_bijective.to_string(),
                        d.groups_match.to_string(),
                    ]
                })
                .collect();
            print_csv(&Csv {
                header: vec![
                    "degree",
                    "surjective_classes",
                    "projective_classes",
                    "image_bijective",
                    "groups_match",
                ],
                rows,
            });
        }
    }
    checks.finish()
}
