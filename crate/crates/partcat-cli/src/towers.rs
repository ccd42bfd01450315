//! Verbs over the idempotent tower, the fattening map, and negligibility.

use crate::output::{print_csv, print_json, Checks, Csv, Failure, Format};
use num::BigRational;
use partcat_core::algebra::{is_negligible, x_basis};
use partcat_core::idempotents::{
    fatten_partition, fattening_exponent, is_negligible_modulo, unfatten_partition, JonesWenzl,
};
use partcat_core::{Category, Family, IntPoly, LaurentPoly, Morphism, Partition, RatFunc};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use std::str::FromStr;

#[derive(Serialize)]
struct JwLevel {
    k: usize,
    coefficient: RatFunc,
    term_count: usize,
    idempotent: Morphism<RatFunc>,
    trace: RatFunc,
}

#[derive(Serialize)]
struct JwReport {
    kmax: usize,
    levels: Vec<JwLevel>,
}

pub fn jw(kmax: usize, bound: usize, fmt: Format) -> Result<(), Failure> {
    if kmax > bound {
        return Err(Failure::Usage(format!(
            "jw --kmax {kmax} exceeds the cost bound {bound}; term counts grow like the Catalan numbers, raise --bound to confirm"
        )));
    }
    let tower = JonesWenzl::up_to(kmax)?;
    let w = RatFunc::t();
    let mut checks = Checks::new();
    let mut levels = Vec::new();
    for k in 0..=kmax {
        let e = tower.idempotent(k);
        let square = Morphism::compose(e, e, &w)?;
        checks.require(square == *e, format!("e_{k} is idempotent"));
        for i in 0..k.saturating_sub(1) {
            let cap = Partition::identity(i)
                .tensor(&Partition::cap())
                .tensor(&Partition::identity(k - 2 - i));
            let killed = Morphism::compose(&Morphism::from_partition(cap), e, &w)?;
            checks.require(killed.is_zero(), format!("cap at {i} kills e_{k}"));
        }
        let trace = e.trace(&w)?;
        checks.require(
            trace == RatFunc::from_int_poly(tower.chebyshev(k)),
            format!("tr(e_{k}) satisfies the Chebyshev recurrence"),
        );
        levels.push(JwLevel {
            k,
            coefficient: tower.coefficient(k).clone(),
            term_count: e.len(),
            idempotent: e.clone(),
            trace,
        });
    }
    let report = JwReport { kmax, levels };
    match fmt {
        Format::Text => {
            for lvl in &report.levels {
                println!(
                    "e_{}: recursion coefficient {}, {} terms, trace {}",
                    lvl.k, lvl.coefficient, lvl.term_count, lvl.trace
                );
                for (p, c) in lvl.idempotent.terms() {
                    println!("  {c} * [{p}]");
                }
            }
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let mut rows = Vec::new();
            for lvl in &report.levels {
                for (p, c) in lvl.idempotent.terms() {
                    rows.push(vec![lvl.k.to_string(), p.to_string(), c.to_string()]);
                }
            }
            print_csv(&Csv {
                header: vec!["k", "partition", "coeff"],
                rows,
            });
        }
    }
    checks.finish()
}

#[derive(Serialize)]
struct FattenOneReport {
    direction: &'static str,
    input: Partition,
    output: Partition,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponent: Option<i64>,
}

#[derive(Serialize)]
struct FattenShape {
    upper: usize,
    lower: usize,
    thin_count: usize,
    pair_count: usize,
}

#[derive(Serialize)]
struct FattenSweepReport {
    bound: usize,
    seed: u64,
    shapes: Vec<FattenShape>,
    pairs_checked: usize,
    counts_match: bool,
    roundtrips_ok: bool,
    exponent_identity_ok: bool,
}

pub fn fatten(
    partition: Option<&str>,
    unfatten: bool,
    bound: usize,
    seed: u64,
    fmt: Format,
) -> Result<(), Failure> {
    match partition {
        Some(text) => fatten_one(text, unfatten, fmt),
        None => fatten_sweep(bound, seed, fmt),
    }
}

fn fatten_one(text: &str, unfatten: bool, fmt: Format) -> Result<(), Failure> {
    let p = Partition::from_str(text)?;
    let mut checks = Checks::new();
    let report = if unfatten {
        let q = unfatten_partition(&p)?;
        checks.require(fatten_partition(&q)? == p, "fattening inverts the unfattening");
        FattenOneReport {
            direction: "unfatten",
            input: p,
            output: q,
            exponent: None,
        }
    } else {
        let q = fatten_partition(&p)?;
        checks.require(unfatten_partition(&q)? == p, "unfattening inverts the fattening");
        let e = fattening_exponent(&p)?;
        FattenOneReport {
            direction: "fatten",
            input: p,
            output: q,
            exponent: Some(e),
        }
    };
    match fmt {
        Format::Text => {
            println!("{}", report.output);
            if let Some(e) = report.exponent {
                println!("scalar exponent {e}");
            }
        }
        Format::Json => print_json(&report),
        Format::Csv => print_csv(&Csv {
            header: vec!["direction", "input", "output", "exponent"],
            rows: vec![vec![
                report.direction.to_string(),
                report.input.to_string(),
                report.output.to_string(),
                report.exponent.map(|e| e.to_string()).unwrap_or_default(),
            ]],
        }),
    }
    checks.finish()
}

fn fatten_sweep(bound: usize, seed: u64, fmt: Format) -> Result<(), Failure> {
    let nc = Category::named(Family::NC);
    let nc2 = Category::named(Family::NC2);
    let mut checks = Checks::new();

    // cardinalities and roundtrips on single shapes
    let mut shapes = Vec::new();
    let mut counts_match = true;
    let mut roundtrips_ok = true;
    for k in 0..=bound / 2 {
        for l in 0..=bound / 2 - k {
            let thin = nc.partitions(k, l);
            let fat = nc2.partitions(2 * k, 2 * l);
            counts_match &= thin.len() == fat.len();
            for p in fat.iter() {
                let q = fatten_partition(p)?;
                roundtrips_ok &= unfatten_partition(&q)? == *p;
            }
            for q in thin.iter() {
                let p = unfatten_partition(q)?;
                roundtrips_ok &= fatten_partition(&p)? == *q;
            }
            shapes.push(FattenShape {
                upper: k,
                lower: l,
                thin_count: thin.len(),
                pair_count: fat.len(),
            });
        }
    }
    checks.require(counts_match, "pair-partition counts match thin counts");
    checks.require(roundtrips_ok, "fattening and unfattening invert each other");

    // scalar exponents are functorial over composition; each factor stays
    // within bound/2 thin points so the sweep cost is a fixed polynomial
    let mut pairs: Vec<(Partition, Partition)> = Vec::new();
    let half = bound / 2;
    for k in 0..=half {
        for m in 0..=half.saturating_sub(k) {
            for l in 0..=half.saturating_sub(m) {
                for p in nc2.partitions(2 * k, 2 * m).iter() {
                    for q in nc2.partitions(2 * m, 2 * l).iter() {
                        pairs.push((q.clone(), p.clone()));
                    }
                }
            }
        }
    }
    let cap = 20_000;
    if pairs.len() > cap {
        let mut rng = StdRng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(cap);
        pairs.sort();
    }
    let mut exponent_identity_ok = true;
    for (q, p) in &pairs {
        let pair_side = Partition::compose(q, p)?;
        let thin_side = Partition::compose(&fatten_partition(q)?, &fatten_partition(p)?)?;
        exponent_identity_ok &= fatten_partition(&pair_side.partition)? == thin_side.partition;
        let lhs = 2 * pair_side.loops as i64 + fattening_exponent(&pair_side.partition)?;
        let rhs =
            4 * thin_side.loops as i64 + fattening_exponent(q)? + fattening_exponent(p)?;
        exponent_identity_ok &= lhs == rhs;
    }
    checks.require(
        exponent_identity_ok,
        "composition exponent identity on the sampled pairs",
    );

    let report = FattenSweepReport {
        bound,
        seed,
        shapes,
        pairs_checked: pairs.len(),
        counts_match,
        roundtrips_ok,
        exponent_identity_ok,
    };
    match fmt {
        Format::Text => {
            for s in &report.shapes {
                println!(
                    "pair({},{}) = {} diagrams, thin({},{}) = {} diagrams",
                    2 * s.upper,
                    2 * s.lower,
                    s.pair_count,
                    s.upper,
                    s.lower,
                    s.thin_count,
                );
            }
            println!(
                "checked {} composable pairs: counts {}, roundtrips {}, exponent identity {}",
                report.pairs_checked,
                report.counts_match,
                report.roundtrips_ok,
                report.exponent_identity_ok,
            );
        }
        Format::Json => print_json(&report),
        Format::Csv => {
            let rows = report
                .shapes
                .iter()
                .map(|s| {
                    vec![
                        s.upper.to_string(),
                        s.lower.to_string(),
                        s.thin_count.to_string(),
                        s.pair_count.to_string(),
                    ]
                })
                .collect();
            print_csv(&Csv {
                header: vec!["upper", "lower", "thin_count", "pair_count"],
                rows,
            });
        }
    }
    checks.finish()
}

#[derive(Serialize)]
struct NegligibleReport {
    category: String,
    k: usize,
    t: String,
    morphism: String,
    negligible: bool,
    symbolic_route_agrees: bool,
}

pub fn negligible(
    cat: &Category,
    k: usize,
    t0: &BigRational,
    partition: Option<&str>,
    morphism_file: Option<&str>,
    fmt: Format,
) -> Result<(), Failure> {
    if partition.is_some() && morphism_file.is_some() {
        return Err(Failure::Usage(
            "--partition and --morphism are mutually exclusive".into(),
        ));
    }
    let (name, numeric, symbolic): (String, Morphism<BigRational>, Morphism<RatFunc>) =
        match morphism_file {
            Some(path) => {
                let data = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {path:?}: {e}")))?;
                let m: Morphism<LaurentPoly> = serde_json::from_str(&data)
                    .map_err(|e| Failure::Usage(format!("bad morphism in {path:?}: {e}")))?;
                let numeric = m
                    .terms()
                    .map(|(p, c)| Ok((p.clone(), c.eval(t0)?)))
                    .collect::<Result<Vec<_>, partcat_core::Error>>()?
                    .into_iter()
                    .fold(Morphism::zero(m.source(), m.target()), |mut acc, (p, c)| {
                        acc.insert(p, c);
                        acc
                    });
                let symbolic = m.map_coeffs(RatFunc::from_laurent);
                (format!("file:{path}"), numeric, symbolic)
            }
            None => {
                let p = match partition {
                    Some(text) => Partition::from_str(text)?,
                    None => Partition::identity(k),
                };
                let x = x_basis(cat, &p)?;
                let symbolic = x.map_coeffs(|c| RatFunc::from_rational(c.clone()));
                (format!("x[{p}]"), x, symbolic)
            }
        };

    let negligible = is_negligible(cat, &numeric, t0)?;
    // independent symbolic route: trace polynomials divisible by the minimal
    // polynomial of t0
    let modulus = IntPoly::from_coeffs(vec![-t0.numer().clone(), t0.denom().clone()]);
    let symbolic_negligible = is_negligible_modulo(cat, &symbolic, &modulus)?;
    let agrees = negligible == symbolic_negligible;

    let report = NegligibleReport {
        category: cat.name(),
        k,
        t: t0.to_string(),
        morphism: name,
        negligible,
        symbolic_route_agrees: agrees,
    };
    match fmt {
        Format::Text => println!(
            "{} negligible at t = {}: {}",
            report.morphism, report.t, report.negligible
        ),
        Format::Json => print_json(&report),
        Format::Csv => print_csv(&Csv {
            header: vec!["category", "k", "t", "morphism", "negligible"],
            rows: vec![vec![
                report.category.clone(),
                k.to_string(),
                report.t.clone(),
                report.morphism.clone(),
                report.negligible.to_string(),
            ]],
        }),
    }
    let mut checks = Checks::new();
    checks.require(agrees, "evaluation route agrees with the symbolic route");
    checks.finish()
}
