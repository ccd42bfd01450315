//! Partition diagrams: set partitions of k upper and l lower points, with the
//! graphical calculus of tensor product, involution, loop-removing
//! composition, refinement order, meets, rotation and trace closure.
//!
//! Points are encoded as signed integers: upper points are 1..=k, lower
//! points j' are -j. A diagram is stored in canonical form, so equality and
//! hashing are structural.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Signed point label: upper i is `i`, lower j' is `-j`.
pub type Point = i32;

/// A set partition of {1..k} ∪ {1'..l'} into disjoint non-empty blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    upper: usize,
    lower: usize,
    blocks: Vec<Vec<Point>>,
}

/// Result of vertical composition: the outer partition plus the number of
/// removed middle-only components (loops).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositionResult {
    pub partition: Partition,
    pub loops: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so component labels are deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl Partition {
    /// Builds a partition from arbitrary block lists, validating that the
    /// blocks cover {1..upper} ∪ {-1..-lower} exactly once, and canonicalizes.
    pub fn new(upper: usize, lower: usize, blocks: Vec<Vec<Point>>) -> Result<Self, Error> {
        let n = upper + lower;
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in b {
                let idx = match point_index(upper, lower, x) {
                    Some(i) => i,
                    None => {
                        return Err(Error::InvalidPartition(format!(
                            "point {x} out of range for shape ({upper},{lower})"
                        )))
                    }
                };
                if seen[idx] {
                    return Err(Error::InvalidPartition(format!("point {x} repeated")));
                }
                seen[idx] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidPartition("not all points covered".into()));
        }
        let mut p = Partition {
            upper,
            lower,
            blocks,
        };
        p.canonicalize();
        Ok(p)
    }

    fn canonicalize(&mut self) {
        let (k, l) = (self.upper, self.lower);
        for b in self.blocks.iter_mut() {
            b.sort_by_key(|&x| point_index(k, l, x).unwrap());
        }
        self.blocks
            .sort_by_key(|b| point_index(k, l, b[0]).unwrap());
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn points(&self) -> usize {
        self.upper + self.lower
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Restricted-growth encoding over the reading order (upper left to
    /// right, then lower left to right); the canonical total order key.
    pub fn rg_encoding(&self) -> Vec<usize> {
        let (k, l) = (self.upper, self.lower);
        let mut label = vec![usize::MAX; k + l];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                label[point_index(k, l, x).unwrap()] = i;
            }
        }
        // blocks are sorted by least point, so labels appear in first-use order
        label
    }

    /// The empty diagram in P(0,0).
    pub fn empty() -> Self {
        Partition {
            upper: 0,
            lower: 0,
            blocks: vec![],
        }
    }

    /// id_k = {{1,1'},...,{k,k'}}.
    pub fn identity(k: usize) -> Self {
        Partition {
            upper: k,
            lower: k,
            blocks: (1..=k as Point).map(|i| vec![i, -i]).collect(),
        }
    }

    /// The upper pair {{1,2}} in P(2,0).
    pub fn cap() -> Self {
        Partition {
            upper: 2,
            lower: 0,
            blocks: vec![vec![1, 2]],
        }
    }

    /// The lower pair {{1',2'}} in P(0,2).
    pub fn cup() -> Self {
        Partition {
            upper: 0,
            lower: 2,
            blocks: vec![vec![-1, -2]],
        }
    }

    /// The singleton {{1'}} in P(0,1).
    pub fn singleton() -> Self {
        Partition {
            upper: 0,
            lower: 1,
            blocks: vec![vec![-1]],
        }
    }

    /// The two-singletons diagram {{1},{1'}} in P(1,1).
    pub fn broken_string() -> Self {
        Partition {
            upper: 1,
            lower: 1,
            blocks: vec![vec![1], vec![-1]],
        }
    }

    /// The crossing {{1,2'},{2,1'}} in P(2,2).
    pub fn crossing() -> Self {
        Partition {
            upper: 2,
            lower: 2,
            blocks: vec![vec![1, -2], vec![2, -1]],
        }
    }

    /// The four-block {{1,2,1',2'}} in P(2,2).
    pub fn four_block() -> Self {
        Partition {
            upper: 2,
            lower: 2,
            blocks: vec![vec![1, 2, -1, -2]],
        }
    }

    /// cup over cap: {{1,2},{1',2'}} in P(2,2).
    pub fn pair_pair() -> Self {
        Partition {
            upper: 2,
            lower: 2,
            blocks: vec![vec![1, 2], vec![-1, -2]],
        }
    }

    /// The fattened crossing {{1,2,2',3'},{3,1'}} in P(3,3); membership
    /// characterizes group-theoretical categories.
    pub fn fattened_crossing() -> Self {
        Partition {
            upper: 3,
            lower: 3,
            blocks: vec![vec![1, 2, -2, -3], vec![3, -1]],
        }
    }

    /// Horizontal concatenation: shapes add, the blocks of q are shifted past
    /// those of self.
    pub fn tensor(&self, q: &Partition) -> Partition {
        let (k1, l1) = (self.upper as Point, self.lower as Point);
        let mut blocks = self.blocks.clone();
        for b in &q.blocks {
            blocks.push(
                b.iter()
                    .map(|&x| if x > 0 { x + k1 } else { x - l1 })
                    .collect(),
            );
        }
        let mut p = Partition {
            upper: self.upper + q.upper,
            lower: self.lower + q.lower,
            blocks,
        };
        p.canonicalize();
        p
    }

    /// Turns the diagram upside-down: upper and lower counts swap, primes
    /// toggle. An anti-homomorphism for composition.
    pub fn involution(&self) -> Partition {
        let mut p = Partition {
            upper: self.lower,
            lower: self.upper,
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|&x| -x).collect())
                .collect(),
        };
        p.canonicalize();
        p
    }

    /// Vertical composition q∘p for p ∈ P(k,m), q ∈ P(m,l): stacks q below p,
    /// merges along the m middle points, keeps components restricted to outer
    /// points and counts the removed middle-only components as loops.
    pub fn compose(q: &Partition, p: &Partition) -> Result<CompositionResult, Error> {
        if q.upper != p.lower {
            return Err(Error::ShapeMismatch(format!(
                "compose: interface mismatch, q has {} upper points but p has {} lower",
                q.upper, p.lower
            )));
        }
        let (k, m, l) = (p.upper, p.lower, q.lower);
        // node ids: p-upper 0..k, middle k..k+m, q-lower k+m..k+m+l
        let mut uf = UnionFind::new(k + m + l);
        for b in &p.blocks {
            let first = node_of(k, 0, b[0], false);
            for &x in &b[1..] {
                uf.union(first, node_of(k, 0, x, false));
            }
        }
        for b in &q.blocks {
            let first = node_of(k, m, b[0], true);
            for &x in &b[1..] {
                uf.union(first, node_of(k, m, x, true));
            }
        }
        let mut outer_blocks: std::collections::BTreeMap<usize, Vec<Point>> =
            std::collections::BTreeMap::new();
        for i in 0..k {
            outer_blocks
                .entry(uf.find(i))
                .or_default()
                .push((i + 1) as Point);
        }
        for j in 0..l {
            outer_blocks
                .entry(uf.find(k + m + j))
                .or_default()
                .push(-((j + 1) as Point));
        }
        let mut middle_roots = std::collections::BTreeSet::new();
        for x in k..k + m {
            middle_roots.insert(uf.find(x));
        }
        let loops = middle_roots
            .iter()
            .filter(|r| !outer_blocks.contains_key(*r))
            .count();
        let partition = Partition::new(k, l, outer_blocks.into_values().collect())?;
        Ok(CompositionResult { partition, loops })
    }

    /// Number of blocks containing both upper and lower points.
    pub fn through_blocks(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.iter().any(|&x| x > 0) && b.iter().any(|&x| x < 0))
            .count()
    }

    /// p ≤ q in refinement order: p is a coarsening of q, i.e. each block of
    /// q is contained in a block of p. Requires equal shapes.
    pub fn refinement_leq(&self, q: &Partition) -> Result<bool, Error> {
        if self.upper != q.upper || self.lower != q.lower {
            return Err(Error::ShapeMismatch(format!(
                "refinement: shapes ({},{}) vs ({},{})",
                self.upper, self.lower, q.upper, q.lower
            )));
        }
        let mine = self.block_index_map();
        Ok(q.blocks.iter().all(|b| {
            let first = mine[point_index(self.upper, self.lower, b[0]).unwrap()];
            b.iter()
                .all(|&x| mine[point_index(self.upper, self.lower, x).unwrap()] == first)
        }))
    }

    fn block_index_map(&self) -> Vec<usize> {
        let mut map = vec![usize::MAX; self.points()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                map[point_index(self.upper, self.lower, x).unwrap()] = i;
            }
        }
        map
    }

    /// The finest common coarsening: connected components of the union of the
    /// two block graphs. Requires equal shapes.
    pub fn meet(&self, q: &Partition) -> Result<Partition, Error> {
        if self.upper != q.upper || self.lower != q.lower {
            return Err(Error::ShapeMismatch(format!(
                "meet: shapes ({},{}) vs ({},{})",
                self.upper, self.lower, q.upper, q.lower
            )));
        }
        let (k, l) = (self.upper, self.lower);
        let mut uf = UnionFind::new(k + l);
        for p in [self, q] {
            for b in &p.blocks {
                let first = point_index(k, l, b[0]).unwrap();
                for &x in &b[1..] {
                    uf.union(first, point_index(k, l, x).unwrap());
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Point>> =
            std::collections::BTreeMap::new();
        for idx in 0..k + l {
            let x = if idx < k {
                (idx + 1) as Point
            } else {
                -((idx - k + 1) as Point)
            };
            groups.entry(uf.find(idx)).or_default().push(x);
        }
        Partition::new(k, l, groups.into_values().collect())
    }

    /// True iff no two blocks interleave in the circular reading order
    /// (upper left to right, then lower right to left).
    pub fn is_noncrossing(&self) -> bool {
        let order = self.circular_order();
        let map = self.block_index_map();
        let n = self.blocks.len();
        for a in 0..n {
            for b in a + 1..n {
                // count block switches along the circle restricted to a ∪ b;
                // more than two switches means the blocks interleave
                let seq: Vec<bool> = order
                    .iter()
                    .filter_map(|&x| {
                        let i = map[point_index(self.upper, self.lower, x).unwrap()];
                        if i == a {
                            Some(true)
                        } else if i == b {
                            Some(false)
                        } else {
                            None
                        }
                    })
                    .collect();
                let switches = (0..seq.len())
                    .filter(|&i| seq[i] != seq[(i + seq.len() - 1) % seq.len()])
                    .count();
                if switches > 2 {
                    return false;
                }
            }
        }
        true
    }

    /// Circle reading order: 1, …, k, l', …, 1'.
    pub(crate) fn circular_order(&self) -> Vec<Point> {
        let mut order: Vec<Point> = (1..=self.upper as Point).collect();
        order.extend((1..=self.lower as Point).rev().map(|j| -j));
        order
    }

    /// Rotates all upper points down on the left: P(k,l) → P(0,k+l) with
    /// upper i ↦ (k+1−i)' and lower j' ↦ (k+j)'. Bijective for each split.
    pub fn rotate_to_flat(&self) -> Partition {
        let k = self.upper as Point;
        let mut p = Partition {
            upper: 0,
            lower: self.upper + self.lower,
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&x| if x > 0 { -(k + 1 - x) } else { x - k })
                        .collect()
                })
                .collect(),
        };
        p.canonicalize();
        p
    }

    /// Connects upper i to lower i for all i and counts components; the trace
    /// of the bare diagram is t to this power. Requires a square shape.
    pub fn close_trace(&self) -> Result<usize, Error> {
        if self.upper != self.lower {
            return Err(Error::ShapeMismatch(format!(
                "close_trace: non-square shape ({},{})",
                self.upper, self.lower
            )));
        }
        let k = self.upper;
        let mut uf = UnionFind::new(2 * k);
        for b in &self.blocks {
            let first = point_index(k, k, b[0]).unwrap();
            for &x in &b[1..] {
                uf.union(first, point_index(k, k, x).unwrap());
            }
        }
        for i in 0..k {
            uf.union(i, k + i);
        }
        let roots: std::collections::BTreeSet<usize> = (0..2 * k).map(|x| uf.find(x)).collect();
        Ok(roots.len())
    }
}

fn point_index(upper: usize, lower: usize, x: Point) -> Option<usize> {
    if x > 0 && x as usize <= upper {
        Some(x as usize - 1)
    } else if x < 0 && (-x) as usize <= lower {
        Some(upper + (-x) as usize - 1)
    } else {
        None
    }
}

/// Node id inside the composition union-find; `shifted` selects q's indexing.
fn node_of(k: usize, m: usize, x: Point, shifted: bool) -> usize {
    if shifted {
        if x > 0 {
            k + x as usize - 1
        } else {
            k + m + (-x) as usize - 1
        }
    } else if x > 0 {
        x as usize - 1
    } else {
        k + (-x) as usize - 1
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.upper, self.lower, self.rg_encoding()).cmp(&(
            other.upper,
            other.lower,
            other.rg_encoding(),
        ))
    }
}

impl fmt::Display for Partition {
    /// Text notation: blocks separated by " | ", lower points primed,
    /// e.g. "1 3' | 2 | 1' 2'". The empty partition prints as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first_block = true;
        for b in &self.blocks {
            if !first_block {
                write!(f, " | ")?;
            }
            first_block = false;
            let mut first = true;
            for &x in b {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                if x > 0 {
                    write!(f, "{x}")?;
                } else {
                    write!(f, "{}'", -x)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the text notation; upper/lower counts are inferred from the
    /// largest labels (every point must be present exactly once).
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut blocks: Vec<Vec<Point>> = Vec::new();
        let mut upper = 0usize;
        let mut lower = 0usize;
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        for part in trimmed.split('|') {
            let mut block = Vec::new();
            for tok in part.split_whitespace() {
                let (digits, primed) = match tok.strip_suffix('\'') {
                    Some(d) => (d, true),
                    None => (tok, false),
                };
                let v: usize = digits
                    .parse()
                    .map_err(|_| Error::InvalidPartition(format!("bad point token {tok:?}")))?;
                if v == 0 {
                    return Err(Error::InvalidPartition("point labels start at 1".into()));
                }
                if primed {
                    lower = lower.max(v);
                    block.push(-(v as Point));
                } else {
                    upper = upper.max(v);
                    block.push(v as Point);
                }
            }
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block in text".into()));
            }
            blocks.push(block);
        }
        Partition::new(upper, lower, blocks)
    }
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    upper: usize,
    lower: usize,
    blocks: Vec<Vec<Point>>,
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawPartition {
            upper: self.upper,
            lower: self.lower,
            blocks: self.blocks.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawPartition::deserialize(d)?;
        Partition::new(raw.upper, raw.lower, raw.blocks).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_equality() {
        let a = Partition::new(2, 2, vec![vec![-1, 1], vec![2, -2]]).unwrap();
        assert_eq!(a, Partition::identity(2));
        let b = Partition::new(2, 2, vec![vec![2, -2], vec![1, -1]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_blocks() {
        assert!(Partition::new(1, 0, vec![]).is_err());
        assert!(Partition::new(1, 0, vec![vec![1], vec![1]]).is_err());
        assert!(Partition::new(1, 0, vec![vec![2]]).is_err());
        assert!(Partition::new(0, 0, vec![vec![]]).is_err());
    }

    #[test]
    fn tensor_shifts_blocks() {
        // cup ⊗ id₁ ⊗ cap = {{1,3'},{2,3},{1',2'}}
        let p = Partition::cup()
            .tensor(&Partition::identity(1))
            .tensor(&Partition::cap());
        assert_eq!(p, part("1 3' | 2 3 | 1' 2'"));
        assert_eq!(Partition::empty().tensor(&p), p);
        assert_eq!(
            Partition::identity(1).tensor(&Partition::identity(1)),
            Partition::identity(2)
        );
    }

    #[test]
    fn involution_flips() {
        assert_eq!(Partition::cup().involution(), Partition::cap());
        assert_eq!(Partition::identity(3).involution(), Partition::identity(3));
        assert_eq!(part("1 1' 2'| 2").involution(), part("1 2 1' | 2'"));
        let p = part("1 3' | 2 | 1' 2'");
        assert_eq!(p.involution().involution(), p);
    }

    #[test]
    fn compose_merges_and_counts_loops() {
        // cup ∘ cap ∈ P(2,2): pair over pair, no loop
        let r = Partition::compose(&Partition::cup(), &Partition::cap()).unwrap();
        assert_eq!(r.partition, Partition::pair_pair());
        assert_eq!(r.loops, 0);
        // cap ∘ cup ∈ P(0,0): closed circle, one loop
        let r = Partition::compose(&Partition::cap(), &Partition::cup()).unwrap();
        assert_eq!(r.partition, Partition::empty());
        assert_eq!(r.loops, 1);
        // four-block is idempotent with no loop
        let fb = Partition::four_block();
        let r = Partition::compose(&fb, &fb).unwrap();
        assert_eq!(r.partition, fb);
        assert_eq!(r.loops, 0);
        // crossing squares to the identity
        let c = Partition::crossing();
        let r = Partition::compose(&c, &c).unwrap();
        assert_eq!(r.partition, Partition::identity(2));
        assert_eq!(r.loops, 0);
        // pair_pair ∘ pair_pair has one middle loop
        let pp = Partition::pair_pair();
        let r = Partition::compose(&pp, &pp).unwrap();
        assert_eq!(r.partition, pp);
        assert_eq!(r.loops, 1);
    }

    #[test]
    fn compose_shape_mismatch() {
        assert!(Partition::compose(&Partition::cup(), &Partition::cup()).is_err());
    }

    #[test]
    fn through_block_counts() {
        assert_eq!(Partition::identity(4).through_blocks(), 4);
        assert_eq!(Partition::pair_pair().through_blocks(), 0);
        assert_eq!(Partition::four_block().through_blocks(), 1);
    }

    #[test]
    fn refinement_and_meet() {
        let pair = part("1' 2'");
        let singles = part("1' | 2'");
        assert!(pair.refinement_leq(&singles).unwrap());
        assert!(pair.refinement_leq(&pair).unwrap());
        assert!(!singles.refinement_leq(&pair).unwrap());
        assert_eq!(pair.meet(&singles).unwrap(), pair);
        // the meet of two noncrossing partitions can be crossing
        let u = part("1' 3' | 2' | 4'");
        let v = part("2' 4' | 1' | 3'");
        assert_eq!(u.meet(&v).unwrap(), part("1' 3' | 2' 4'"));
        assert!(u.refinement_leq(&part("1' 3' | 2' | 4'")).unwrap());
        // two distinct pairings of four points meet in the one-block partition
        let a = part("1' 2' | 3' 4'");
        let b = part("1' 4' | 2' 3'");
        assert_eq!(a.meet(&b).unwrap(), part("1' 2' 3' 4'"));
    }

    #[test]
    fn noncrossing_predicate() {
        assert!(!Partition::crossing().is_noncrossing());
        assert!(Partition::identity(5).is_noncrossing());
        assert!(part("1' 3' | 2' | 4'").is_noncrossing());
        assert!(!part("1' 3' | 2' 4'").is_noncrossing());
        // nesting across the two rows stays planar
        assert!(!part("1 2' | 2 1'").is_noncrossing());
        assert!(part("1 1' | 2 2'").is_noncrossing());
    }

    #[test]
    fn rotation_to_flat() {
        assert_eq!(Partition::identity(1).rotate_to_flat(), part("1' 2'"));
        assert_eq!(Partition::broken_string().rotate_to_flat(), part("1' | 2'"));
        assert_eq!(Partition::empty().rotate_to_flat(), Partition::empty());
        // four-block rotates to the one-block of P(0,4)
        assert_eq!(
            Partition::four_block().rotate_to_flat(),
            part("1' 2' 3' 4'")
        );
    }

    #[test]
    fn trace_closure_components() {
        assert_eq!(Partition::identity(3).close_trace().unwrap(), 3);
        assert_eq!(Partition::crossing().close_trace().unwrap(), 1);
        assert_eq!(Partition::pair_pair().close_trace().unwrap(), 1);
        assert!(Partition::cup().close_trace().is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["1 3' | 2 | 1' 2'", "1 1'", "1' 2'", ""] {
            let p = part(s);
            assert_eq!(p.to_string(), s);
            assert_eq!(part(&p.to_string()), p);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = part("1 3' | 2 | 1' 2'");
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"upper":2,"lower":3,"blocks":[[1,-3],[2],[-1,-2]]}"#);
        let q: Partition = serde_json::from_str(&js).unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Partition>(r#"{"upper":1,"lower":0,"blocks":[]}"#).is_err());
    }

    #[test]
    fn ordering_follows_rg_encoding() {
        let mut v = vec![
            Partition::broken_string(),
            Partition::identity(1),
        ];
        v.sort();
        // id₁ has rg [0,0], the broken string [0,1]
        assert_eq!(v[0], Partition::identity(1));
    }
}
