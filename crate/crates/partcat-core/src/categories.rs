//! The thirteen named families of partitions closed under the diagram
//! calculus, membership predicates, pruned enumeration, generator sets, and
//! bounded closure of generated categories.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::diagram::{Partition, Point};
use crate::Error;

/// Named families, identified by their ASCII ids (`P`, `P_even`, `P2`,
/// `Pprime`, `P_b`, `Pprime_b`, `NC`, `NC_even`, `NC2`, `NCprime`, `NC_b`,
/// `NC_b_sharp`, `NCprime_b`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "P_even")]
    PEven,
    #[serde(rename = "P2")]
    P2,
    #[serde(rename = "Pprime")]
    PPrime,
    #[serde(rename = "P_b")]
    PB,
    #[serde(rename = "Pprime_b")]
    PPrimeB,
    #[serde(rename = "NC")]
    NC,
    #[serde(rename = "NC_even")]
    NCEven,
    #[serde(rename = "NC2")]
    NC2,
    #[serde(rename = "NCprime")]
    NCPrime,
    #[serde(rename = "NC_b")]
    NCB,
    #[serde(rename = "NC_b_sharp")]
    NCBSharp,
    #[serde(rename = "NCprime_b")]
    NCPrimeB,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::P,
        Family::PEven,
        Family::P2,
        Family::PPrime,
        Family::PB,
        Family::PPrimeB,
        Family::NC,
        Family::NCEven,
        Family::NC2,
        Family::NCPrime,
        Family::NCB,
        Family::NCBSharp,
        Family::NCPrimeB,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Family::P => "P",
            Family::PEven => "P_even",
            Family::P2 => "P2",
            Family::PPrime => "Pprime",
            Family::PB => "P_b",
            Family::PPrimeB => "Pprime_b",
            Family::NC => "NC",
            Family::NCEven => "NC_even",
            Family::NC2 => "NC2",
            Family::NCPrime => "NCprime",
            Family::NCB => "NC_b",
            Family::NCBSharp => "NC_b_sharp",
            Family::NCPrimeB => "NCprime_b",
        }
    }

    /// Membership predicate.
    pub fn contains(&self, p: &Partition) -> bool {
        match self {
            Family::P => true,
            Family::PEven => block_sizes(p, |s| s % 2 == 0),
            Family::P2 => block_sizes(p, |s| s == 2),
            Family::PPrime => odd_block_count(p) % 2 == 0,
            Family::PB => block_sizes(p, |s| s <= 2),
            Family::PPrimeB => block_sizes(p, |s| s <= 2) && singleton_count(p) % 2 == 0,
            Family::NC => p.is_noncrossing(),
            Family::NCEven => p.is_noncrossing() && Family::PEven.contains(p),
            Family::NC2 => p.is_noncrossing() && Family::P2.contains(p),
            Family::NCPrime => p.is_noncrossing() && Family::PPrime.contains(p),
            Family::NCB => p.is_noncrossing() && Family::PB.contains(p),
            Family::NCBSharp => {
                p.is_noncrossing() && Family::PPrimeB.contains(p) && circular_even_rule(p)
            }
            Family::NCPrimeB => p.is_noncrossing() && Family::PPrimeB.contains(p),
        }
    }

    /// Generating sets: closing these (together with the base diagrams id₁,
    /// cup, cap) under tensor, composition and involution recovers the family
    /// on any bounded point range.
    pub fn generators(&self) -> Vec<Partition> {
        let up = Partition::singleton();
        let upup = up.tensor(&up);
        let crossing = Partition::crossing();
        let four = Partition::four_block();
        // {{1},{2,1'},{2'}}: a through-string with stray singletons around it
        let offset_string = Partition::new(2, 2, vec![vec![1], vec![2, -1], vec![-2]]).unwrap();
        match self {
            Family::P => vec![crossing, four, up],
            Family::PEven => vec![crossing, four],
            Family::P2 => vec![crossing],
            Family::PPrime => vec![crossing, upup, four],
            Family::PB => vec![crossing, up],
            Family::PPrimeB => vec![crossing, upup],
            Family::NC => vec![four, up],
            Family::NCEven => vec![four],
            Family::NC2 => vec![],
            Family::NCPrime => vec![upup, four],
            Family::NCB => vec![up],
            Family::NCBSharp => vec![upup],
            Family::NCPrimeB => vec![offset_string],
        }
    }

    /// A category is group-theoretical iff it contains the fattened crossing;
    /// equivalently (checked in the test suites) iff it is closed under
    /// coarsening, iff it is closed under meets.
    pub fn is_group_theoretical(&self) -> bool {
        self.contains(&Partition::fattened_crossing())
    }

    /// Block-size cap used to prune enumeration, where the predicate implies
    /// one.
    fn max_block_size(&self) -> Option<usize> {
        match self {
            Family::P2 | Family::NC2 => Some(2),
            Family::PB | Family::PPrimeB | Family::NCB | Family::NCBSharp | Family::NCPrimeB => {
                Some(2)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::UnknownCategory(s.into()))
    }
}

fn block_sizes(p: &Partition, pred: impl Fn(usize) -> bool) -> bool {
    p.blocks().iter().all(|b| pred(b.len()))
}

fn singleton_count(p: &Partition) -> usize {
    p.blocks().iter().filter(|b| b.len() == 1).count()
}

fn odd_block_count(p: &Partition) -> usize {
    p.blocks().iter().filter(|b| b.len() % 2 == 1).count()
}

/// Every 2-block must have an even number of points strictly between its two
/// legs along the circular reading order.
fn circular_even_rule(p: &Partition) -> bool {
    let order = p.circular_order();
    let mut pos: BTreeMap<Point, usize> = BTreeMap::new();
    for (i, &x) in order.iter().enumerate() {
        pos.insert(x, i);
    }
    for b in p.blocks() {
        if b.len() == 2 {
            let (i, j) = (pos[&b[0]], pos[&b[1]]);
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            if (hi - lo - 1) % 2 != 0 {
                return false;
            }
        }
    }
    true
}

/// All set partitions of the (k,l)-rectangle, in canonical encoding order.
pub fn all_partitions(k: usize, l: usize) -> Vec<Partition> {
    enumerate_filtered(k, l, None, |_| true)
}

/// Enumerates partitions block-by-block in reading order, pruning blocks that
/// exceed `max_block`, keeping those satisfying `keep`. Output is sorted in
/// canonical encoding order.
fn enumerate_filtered(
    k: usize,
    l: usize,
    max_block: Option<usize>,
    keep: impl Fn(&Partition) -> bool,
) -> Vec<Partition> {
    let pts: Vec<Point> = (1..=k as Point)
        .chain((1..=l as Point).map(|j| -j))
        .collect();
    let cap = max_block.unwrap_or(usize::MAX);
    let mut blocks: Vec<Vec<Point>> = Vec::new();
    let mut out = Vec::new();
    fn rec(
        i: usize,
        pts: &[Point],
        cap: usize,
        k: usize,
        l: usize,
        blocks: &mut Vec<Vec<Point>>,
        keep: &impl Fn(&Partition) -> bool,
        out: &mut Vec<Partition>,
    ) {
        if i == pts.len() {
            let p = Partition::new(k, l, blocks.clone()).unwrap();
            if keep(&p) {
                out.push(p);
            }
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].len() < cap {
                blocks[b].push(pts[i]);
                rec(i + 1, pts, cap, k, l, blocks, keep, out);
                blocks[b].pop();
            }
        }
        blocks.push(vec![pts[i]]);
        rec(i + 1, pts, cap, k, l, blocks, keep, out);
        blocks.pop();
    }
    rec(0, &pts, cap, k, l, &mut blocks, &keep, &mut out);
    out
}

/// Bounded closure of `generators` together with the base diagrams id₁, cup
/// and cap, under tensor (both orders), composition (both orders, loops
/// discarded) and involution, keeping only partitions with at most `bound`
/// points. Elements close to the bound can be missed when every derivation
/// passes through a larger intermediate, so callers should certify agreement
/// with a predicate only up to `bound - 2` points.
pub fn closure(generators: &[Partition], bound: usize) -> BTreeSet<Partition> {
    let mut seen: BTreeSet<Partition> = BTreeSet::new();
    let mut work: Vec<Partition> = Vec::new();
    let add = |p: Partition, seen: &mut BTreeSet<Partition>, work: &mut Vec<Partition>| {
        if p.points() <= bound && !seen.contains(&p) {
            seen.insert(p.clone());
            work.push(p);
        }
    };
    for s in [Partition::identity(1), Partition::cup(), Partition::cap()]
        .iter()
        .chain(generators)
    {
        add(s.clone(), &mut seen, &mut work);
    }
    let mut elems: Vec<Partition> = Vec::new();
    while let Some(p) = work.pop() {
        elems.push(p.clone());
        for q in elems.clone() {
            if p.points() + q.points() <= bound {
                add(p.tensor(&q), &mut seen, &mut work);
                add(q.tensor(&p), &mut seen, &mut work);
            }
            if q.upper() == p.lower() && p.upper() + q.lower() <= bound {
                add(
                    Partition::compose(&q, &p).unwrap().partition,
                    &mut seen,
                    &mut work,
                );
            }
            if p.upper() == q.lower() && q.upper() + p.lower() <= bound {
                add(
                    Partition::compose(&p, &q).unwrap().partition,
                    &mut seen,
                    &mut work,
                );
            }
        }
        add(p.involution(), &mut seen, &mut work);
    }
    seen
}

/// Serializable description of a category: a named family or an explicit
/// generating set with a point bound.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CategorySpec {
    Named(Family),
    Generated {
        generators: Vec<Partition>,
        bound: usize,
    },
}

/// A category of partitions with memoized enumeration. Named categories test
/// membership by predicate; generated ones close their generators once, up to
/// the bound, at construction time.
pub struct Category {
    spec: CategorySpec,
    members: Option<BTreeSet<Partition>>,
    cache: Mutex<BTreeMap<(usize, usize), Arc<Vec<Partition>>>>,
}

impl Category {
    pub fn new(spec: CategorySpec) -> Category {
        let members = match &spec {
            CategorySpec::Named(_) => None,
            CategorySpec::Generated { generators, bound } => {
                Some(closure(generators, *bound))
            }
        };
        Category {
            spec,
            members,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn named(f: Family) -> Category {
        Category::new(CategorySpec::Named(f))
    }

    pub fn spec(&self) -> &CategorySpec {
        &self.spec
    }

    pub fn family(&self) -> Option<Family> {
        match self.spec {
            CategorySpec::Named(f) => Some(f),
            CategorySpec::Generated { .. } => None,
        }
    }

    /// Point bound for generated categories; named categories are unbounded.
    pub fn bound(&self) -> Option<usize> {
        match self.spec {
            CategorySpec::Named(_) => None,
            CategorySpec::Generated { bound, .. } => Some(bound),
        }
    }

    pub fn name(&self) -> String {
        match &self.spec {
            CategorySpec::Named(f) => f.id().to_string(),
            CategorySpec::Generated { generators, bound } => {
                format!("generated({} generators, bound {})", generators.len(), bound)
            }
        }
    }

    /// Membership. For generated categories this is membership of the bounded
    /// closure; partitions beyond the bound are reported absent.
    pub fn contains(&self, p: &Partition) -> bool {
        match &self.spec {
            CategorySpec::Named(f) => f.contains(p),
            CategorySpec::Generated { .. } => self.members.as_ref().unwrap().contains(p),
        }
    }

    /// All members of shape (k,l), sorted in canonical encoding order,
    /// memoized per shape.
    pub fn partitions(&self, k: usize, l: usize) -> Arc<Vec<Partition>> {
        if let Some(hit) = self.cache.lock().unwrap().get(&(k, l)) {
            return hit.clone();
        }
        let fresh: Vec<Partition> = match &self.spec {
            CategorySpec::Named(f) => {
                enumerate_filtered(k, l, f.max_block_size(), |p| f.contains(p))
            }
            CategorySpec::Generated { .. } => {
                // closure members are already canonically ordered in the set
                self.members
                    .as_ref()
                    .unwrap()
                    .iter()
                    .filter(|p| p.upper() == k && p.lower() == l)
                    .cloned()
                    .collect()
            }
        };
        let arc = Arc::new(fresh);
        self.cache
            .lock()
            .unwrap()
            .insert((k, l), arc.clone());
        arc
    }

    /// Members with no upper points, the Gram-matrix index sets.
    pub fn flat(&self, k: usize) -> Arc<Vec<Partition>> {
        self.partitions(0, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: [usize; 7] = [1, 1, 2, 5, 15, 52, 203];
    const CATALAN: [usize; 7] = [1, 1, 2, 5, 14, 42, 132];

    #[test]
    fn flat_counts_match_known_sequences() {
        for n in 0..7 {
            assert_eq!(all_partitions(0, n).len(), BELL[n], "Bell({n})");
            assert_eq!(Category::named(Family::NC).flat(n).len(), CATALAN[n]);
        }
        for n in 0..4 {
            assert_eq!(Category::named(Family::NC2).flat(2 * n).len(), CATALAN[n]);
        }
        // all-even-blocks partitions of 4 points: 1234, 12|34, 13|24, 14|23
        assert_eq!(Category::named(Family::PEven).flat(4).len(), 4);
        assert_eq!(Category::named(Family::PB).flat(4).len(), 10);
        assert_eq!(Category::named(Family::NCBSharp).flat(4).len(), 7);
    }

    #[test]
    fn parity_forced_families_are_empty_on_odd_point_counts() {
        for f in [
            Family::PEven,
            Family::P2,
            Family::PPrime,
            Family::PPrimeB,
            Family::NCEven,
            Family::NC2,
            Family::NCPrime,
            Family::NCPrimeB,
            Family::NCBSharp,
        ] {
            assert!(Category::named(f).flat(3).is_empty(), "{f}");
            assert!(Category::named(f).partitions(2, 1).is_empty(), "{f}");
        }
    }

    #[test]
    fn enumeration_is_sorted_and_consistent_across_shapes() {
        // same total points, different splits, same count
        assert_eq!(all_partitions(2, 2).len(), BELL[4]);
        assert_eq!(all_partitions(4, 0).len(), BELL[4]);
        let v = all_partitions(1, 2);
        let mut w = v.clone();
        w.sort();
        assert_eq!(v, w);
    }

    #[test]
    fn singleton_membership_separates_families() {
        let up = Partition::singleton();
        for f in Family::ALL {
            let has = f.contains(&up);
            let expect = matches!(f, Family::P | Family::NC | Family::PB | Family::NCB);
            assert_eq!(has, expect, "{f}");
        }
    }

    #[test]
    fn group_theoretical_families() {
        let gt: Vec<Family> = Family::ALL
            .into_iter()
            .filter(|f| f.is_group_theoretical())
            .collect();
        assert_eq!(gt, vec![Family::P, Family::PEven, Family::PPrime]);
    }

    #[test]
    fn circular_even_rule_examples() {
        // {{1',2'},{3',4'}} has adjacent legs: allowed
        let a: Partition = "1' 2' | 3' 4'".parse().unwrap();
        assert!(Family::NCBSharp.contains(&a));
        // {{1',4'},{2',3'}} nests: outer pair has two points between its legs
        let b: Partition = "1' 4' | 2' 3'".parse().unwrap();
        assert!(Family::NCBSharp.contains(&b));
        // a pair with one singleton between its legs is rejected
        let c: Partition = "1' 3' | 2'".parse().unwrap();
        assert!(!Family::NCBSharp.contains(&c));
        // but two singletons between the legs are fine
        let d: Partition = "1' 4' | 2' | 3'".parse().unwrap();
        assert!(Family::NCBSharp.contains(&d));
        // exactly 7 partitions of 4 flat points pass all three conditions
        assert_eq!(Category::named(Family::NCBSharp).flat(4).len(), 7);
    }

    #[test]
    fn generators_lie_in_their_family() {
        for f in Family::ALL {
            for g in f.generators() {
                assert!(f.contains(&g), "{f}: {g}");
            }
        }
        assert!(Family::NC2.generators().is_empty());
    }

    #[test]
    fn small_closure_matches_predicate() {
        // the singleton generates all noncrossing partitions into blocks of
        // size at most two; check exhaustively away from the bound
        let cl = closure(&Family::NCB.generators(), 6);
        let cat = Category::named(Family::NCB);
        for k in 0..=4usize {
            for l in 0..=(4 - k) {
                let want: BTreeSet<Partition> = cat.partitions(k, l).iter().cloned().collect();
                let got: BTreeSet<Partition> = cl
                    .iter()
                    .filter(|p| p.upper() == k && p.lower() == l)
                    .cloned()
                    .collect();
                assert_eq!(got, want, "shape ({k},{l})");
            }
        }
        // and the closure never leaves the family, all the way to the bound
        for p in &cl {
            assert!(Family::NCB.contains(p));
        }
    }

    #[test]
    fn generated_category_round_trips_through_json() {
        let spec = CategorySpec::Generated {
            generators: vec![Partition::singleton().tensor(&Partition::singleton())],
            bound: 6,
        };
        let js = serde_json::to_string(&spec).unwrap();
        assert!(js.starts_with(r#"{"generated""#));
        let back: CategorySpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, spec);
        let named: CategorySpec = serde_json::from_str(r#"{"named":"P_even"}"#).unwrap();
        assert_eq!(named, CategorySpec::Named(Family::PEven));
    }

    #[test]
    fn family_ids_round_trip() {
        for f in Family::ALL {
            let s = f.id();
            assert_eq!(s.parse::<Family>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("{s:?}"));
        }
        assert!("Q".parse::<Family>().is_err());
    }
}
