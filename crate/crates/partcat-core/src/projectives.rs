//! Projective partitions (self-adjoint idempotent diagrams), their symmetry
//! groups, indecomposability and equivalence, the census of new
//! indecomposable objects per degree, and the surjective-partition
//! description with its half-symmetry groups.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

use crate::categories::Category;
use crate::diagram::Partition;
use crate::Error;

/// A projective partition is square, fixed by the involution, and idempotent
/// as a bare diagram (loops are discarded, not weighted, by this test).
pub fn is_projective(p: &Partition) -> bool {
    p.upper() == p.lower()
        && p.involution() == *p
        && Partition::compose(p, p).map(|r| r.partition == *p).unwrap_or(false)
}

/// The canonical half of a projective p: the unique p₀ with p = p₀* ∘ p₀
/// whose through-blocks are attached to the lower points in order of their
/// least upper leg. Upper-restricted blocks are kept; lower-restricted blocks
/// are mirrors of those and are dropped.
pub fn canonical_half(p: &Partition) -> Result<Partition, Error> {
    let k = p.upper();
    let mut through: Vec<Vec<i32>> = Vec::new();
    let mut upper_only: Vec<Vec<i32>> = Vec::new();
    for b in p.blocks() {
        let ups: Vec<i32> = b.iter().copied().filter(|&x| x > 0).collect();
        let lows: Vec<i32> = b.iter().filter(|&&x| x < 0).map(|&x| -x).collect();
        if !ups.is_empty() && !lows.is_empty() {
            if ups != lows {
                return Err(Error::InvalidPartition(format!(
                    "canonical half of a non-symmetric diagram {p}"
                )));
            }
            through.push(ups);
        } else if !ups.is_empty() {
            upper_only.push(ups);
        }
    }
    through.sort_by_key(|u| u[0]);
    let t = through.len();
    let mut blocks = upper_only;
    for (i, mut u) in through.into_iter().enumerate() {
        u.push(-((i + 1) as i32));
        blocks.push(u);
    }
    Partition::new(k, t, blocks)
}

/// The diagram of a permutation: upper i joined to lower σ(i). `sigma` lists
/// 1-based images.
pub fn permutation_partition(sigma: &[usize]) -> Partition {
    let n = sigma.len();
    Partition::new(
        n,
        n,
        sigma
            .iter()
            .enumerate()
            .map(|(i, &im)| vec![(i + 1) as i32, -(im as i32)])
            .collect(),
    )
    .expect("permutation images must be a bijection")
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

/// A finite permutation group given by its element list.
#[derive(Clone, Debug, Serialize)]
pub struct PermGroup {
    pub degree: usize,
    pub elements: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Number of conjugacy classes, by sweeping orbits under conjugation.
    pub fn conjugacy_class_count(&self) -> usize {
        let set: BTreeSet<&Vec<usize>> = self.elements.iter().collect();
        debug_assert_eq!(set.len(), self.elements.len());
        let inv: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|g| {
                let mut v = vec![0usize; self.degree];
                for (i, &im) in g.iter().enumerate() {
                    v[im - 1] = i + 1;
                }
                v
            })
            .collect();
        let mul = |a: &[usize], b: &[usize]| -> Vec<usize> {
            // (a b)(i) = a(b(i))
            b.iter().map(|&bi| a[bi - 1]).collect()
        };
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut classes = 0usize;
        for h in &self.elements {
            if seen.contains(h) {
                continue;
            }
            classes += 1;
            for (g, gi) in self.elements.iter().zip(&inv) {
                seen.insert(mul(&mul(g, h), gi));
            }
        }
        classes
    }
}

/// The group S(p) of permutations σ of the through-blocks of a projective p
/// with p₀* σ p₀ still inside the category. Refuses through-ranks above
/// `cap`, since the search is over all of S_T.
pub fn symmetry_group(cat: &Category, p: &Partition, cap: usize) -> Result<PermGroup, Error> {
    let t = p.through_blocks();
    if t > cap {
        return Err(Error::GroupTooLarge(format!(
            "through-rank {t} exceeds the cap {cap}"
        )));
    }
    let p0 = canonical_half(p)?;
    let p0s = p0.involution();
    let mut elements = Vec::new();
    for sigma in all_permutations(t) {
        let m1 = Partition::compose(&permutation_partition(&sigma), &p0)?;
        let m2 = Partition::compose(&p0s, &m1.partition)?;
        if cat.contains(&m2.partition) {
            elements.push(sigma);
        }
    }
    Ok(PermGroup {
        degree: t,
        elements,
    })
}

/// All projective partitions of degree k in the category.
pub fn projectives(cat: &Category, k: usize) -> Vec<Partition> {
    cat.partitions(k, k)
        .iter()
        .filter(|p| is_projective(p))
        .cloned()
        .collect()
}

/// Projectives of degree k that do not factor through a smaller degree:
/// p ∉ { c* ∘ c : c ∈ C(k,l), l < k }.
pub fn indecomposables(cat: &Category, k: usize) -> Vec<Partition> {
    let bad = decomposable_set(cat, k);
    projectives(cat, k)
        .into_iter()
        .filter(|p| !bad.contains(p))
        .collect()
}

fn decomposable_set(cat: &Category, k: usize) -> BTreeSet<Partition> {
    let mut bad = BTreeSet::new();
    for l in 0..k {
        for c in cat.partitions(k, l).iter() {
            let cc = Partition::compose(&c.involution(), c).unwrap();
            bad.insert(cc.partition);
        }
    }
    bad
}

/// Equivalence classes of the given projectives of degree k: p ~ q when some
/// r in C(k,k) has r r* = p and r* r = q. Classes are sorted by their minimal
/// member, members sorted within each class.
pub fn equivalence_classes(
    cat: &Category,
    k: usize,
    items: &[Partition],
) -> Result<Vec<Vec<Partition>>, Error> {
    let index: BTreeMap<&Partition, usize> =
        items.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for r in cat.partitions(k, k).iter() {
        let rs = r.involution();
        let a = Partition::compose(r, &rs)?.partition;
        let b = Partition::compose(&rs, r)?.partition;
        if let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) {
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            if ra != rb {
                parent[ra] = rb;
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for i in 0..items.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(items[i].clone());
    }
    let mut classes: Vec<Vec<Partition>> = groups.into_values().collect();
    for cl in classes.iter_mut() {
        cl.sort();
    }
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(classes)
}

/// One equivalence class of indecomposable projectives at a degree, with the
/// symmetry group data of its minimal representative. The class contributes
/// `conjugacy_classes` new indecomposable objects.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub degree: usize,
    pub representative: Partition,
    pub class_size: usize,
    #[serde(rename = "through_blocks")]
    pub through: usize,
    pub group_order: usize,
    #[serde(rename = "class_count")]
    pub conjugacy_classes: usize,
}

/// Census of degree k: equivalence classes of indecomposable projectives and
/// their symmetry groups. The total of `conjugacy_classes` over the rows is
/// the number of new indecomposable objects appearing at this degree.
pub fn census(cat: &Category, k: usize, group_cap: usize) -> Result<Vec<CensusRow>, Error> {
    let proj = projectives(cat, k);
    let indec: BTreeSet<Partition> = indecomposables(cat, k).into_iter().collect();
    let classes = equivalence_classes(cat, k, &proj)?;
    classes
        .into_par_iter()
        .filter(|cl| indec.contains(&cl[0]))
        .map(|cl| {
            debug_assert!(
                cl.iter().all(|p| indec.contains(p)),
                "equivalence classes mix decomposable and indecomposable members"
            );
            let rep = cl[0].clone();
            let group = symmetry_group(cat, &rep, group_cap)?;
            Ok(CensusRow {
                degree: k,
                through: rep.through_blocks(),
                class_size: cl.len(),
                group_order: group.order(),
                conjugacy_classes: group.conjugacy_class_count(),
                representative: rep,
            })
        })
        .collect()
}

/// Number of new indecomposable objects at degree k.
pub fn new_indecomposable_count(cat: &Category, k: usize, group_cap: usize) -> Result<usize, Error> {
    Ok(census(cat, k, group_cap)?
        .iter()
        .map(|r| r.conjugacy_classes)
        .sum())
}

// ---------- surjective partitions ----------

/// Surjective partitions of degree k: q in P(k,l) for some l ≤ k, not
/// necessarily in C, with through-rank exactly l and q* q in C. Such q
/// satisfy q q* = id_l.
pub fn surjective_set(cat: &Category, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for l in 0..=k {
        for q in crate::categories::all_partitions(k, l) {
            if q.through_blocks() != l {
                continue;
            }
            let qq = Partition::compose(&q.involution(), &q).unwrap().partition;
            if cat.contains(&qq) {
                out.push(q);
            }
        }
    }
    out
}

/// Surjective partitions of degree k that admit no factorization q' ∘ b with
/// b in C(k,k') for a smaller degree k'.
pub fn surjective_indecomposables(cat: &Category, k: usize) -> Vec<Partition> {
    let mut bad = BTreeSet::new();
    for kp in 0..k {
        let sur_kp = surjective_set(cat, kp);
        for b in cat.partitions(k, kp).iter() {
            for qp in &sur_kp {
                bad.insert(Partition::compose(qp, b).unwrap().partition);
            }
        }
    }
    surjective_set(cat, k)
        .into_iter()
        .filter(|q| !bad.contains(q))
        .collect()
}

/// Equivalence classes of indecomposable surjective partitions: q ~ q' (same
/// target l) when there are r in C(k,k) and a permutation s of l with
/// q' = s* q r and q = s q' r*. Classes sorted by minimal member.
pub fn surjective_classes(cat: &Category, k: usize) -> Result<Vec<Vec<Partition>>, Error> {
    let q_all = surjective_indecomposables(cat, k);
    let mut by_l: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for q in q_all {
        by_l.entry(q.lower()).or_default().push(q);
    }
    let mut classes: Vec<Vec<Partition>> = Vec::new();
    for (l, qs) in by_l {
        let index: BTreeMap<&Partition, usize> =
            qs.iter().enumerate().map(|(i, q)| (q, i)).collect();
        let mut parent: Vec<usize> = (0..qs.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let perms: Vec<Partition> = all_permutations(l)
            .iter()
            .map(|s| permutation_partition(s))
            .collect();
        for r in cat.partitions(k, k).iter() {
            let rs = r.involution();
            for (qi, q) in qs.iter().enumerate() {
                let z = Partition::compose(q, r)?.partition;
                if z.through_blocks() != l {
                    continue;
                }
                for sp in &perms {
                    let qp = Partition::compose(&sp.involution(), &z)?.partition;
                    let Some(&qpi) = index.get(&qp) else { continue };
                    // verify the reverse identity q = s q' r*
                    let w = Partition::compose(sp, &qp)?.partition;
                    let w = Partition::compose(&w, &rs)?.partition;
                    if w == *q {
                        let (ra, rb) = (find(&mut parent, qi), find(&mut parent, qpi));
                        if ra != rb {
                            parent[ra] = rb;
                        }
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
        for i in 0..qs.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(qs[i].clone());
        }
        for mut cl in groups.into_values() {
            cl.sort();
            classes.push(cl);
        }
    }
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(classes)
}

/// The half-symmetry group of a surjective q in P(k,l): permutations σ of l
/// with q* σ q in C.
pub fn half_symmetry_group(cat: &Category, q: &Partition, cap: usize) -> Result<PermGroup, Error> {
    let l = q.lower();
    if l > cap {
        return Err(Error::GroupTooLarge(format!(
            "target degree {l} exceeds the cap {cap}"
        )));
    }
    let qs = q.involution();
    let mut elements = Vec::new();
    for sigma in all_permutations(l) {
        let m1 = Partition::compose(&permutation_partition(&sigma), q)?;
        let m2 = Partition::compose(&qs, &m1.partition)?;
        if cat.contains(&m2.partition) {
            elements.push(sigma);
        }
    }
    Ok(PermGroup {
        degree: l,
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::Family;

    #[test]
    fn projectivity_basics() {
        assert!(is_projective(&Partition::identity(3)));
        assert!(is_projective(&Partition::four_block()));
        assert!(is_projective(&Partition::pair_pair()));
        // the crossing is symmetric but squares to the identity, not itself
        assert!(!is_projective(&Partition::crossing()));
        assert!(!is_projective(&Partition::cup()));
        let p: Partition = "1 1' | 2 2' | 3 3'".parse().unwrap();
        assert!(is_projective(&p));
    }

    #[test]
    fn canonical_half_splits_projectives() {
        for p in [
            Partition::identity(3),
            Partition::four_block(),
            Partition::pair_pair(),
            "1 2 1' 2' | 3 3'".parse().unwrap(),
            "1 | 1' | 2 2'".parse().unwrap(),
        ] {
            assert!(is_projective(&p));
            let half = canonical_half(&p).unwrap();
            let back = Partition::compose(&half.involution(), &half).unwrap();
            assert_eq!(back.partition, p, "{p}");
            assert_eq!(half.lower(), p.through_blocks());
        }
        assert!(canonical_half(&Partition::crossing()).is_err());
    }

    #[test]
    fn symmetry_group_of_identity_is_symmetric_group() {
        let cat = Category::named(Family::P);
        let g = symmetry_group(&cat, &Partition::identity(4), 7).unwrap();
        assert_eq!(g.order(), 24);
        // number of conjugacy classes of S_4 = partitions of 4
        assert_eq!(g.conjugacy_class_count(), 5);
        // noncrossing categories only keep the identity permutation
        let nc = Category::named(Family::NC);
        let g = symmetry_group(&nc, &Partition::identity(4), 7).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_class_count(), 1);
        assert!(symmetry_group(&cat, &Partition::identity(8), 7).is_err());
    }

    #[test]
    fn conjugacy_classes_of_small_groups() {
        // S_3 built by hand
        let s3 = PermGroup {
            degree: 3,
            elements: all_permutations(3),
        };
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.conjugacy_class_count(), 3);
        // the cyclic group generated by a 3-cycle is abelian: 3 classes
        let c3 = PermGroup {
            degree: 3,
            elements: vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]],
        };
        assert_eq!(c3.conjugacy_class_count(), 3);
    }

    #[test]
    fn indecomposables_at_small_degrees() {
        let cat = Category::named(Family::P);
        // degree 0: the empty diagram is projective and indecomposable
        assert_eq!(indecomposables(&cat, 0), vec![Partition::empty()]);
        // degree 1: id₁ survives; the full block {1,1'} factors through 0? no:
        // c ∈ P(1,0) gives c*c ∈ {{1,1'}}, so only id₁ is new
        let ind1 = indecomposables(&cat, 1);
        assert_eq!(ind1, vec![Partition::identity(1)]);
        // in NC₂ degree 2: pair over pair factors through degree 0
        let nc2 = Category::named(Family::NC2);
        let ind2 = indecomposables(&nc2, 2);
        assert_eq!(ind2, vec![Partition::identity(2)]);
    }

    #[test]
    fn census_of_full_category_small_degrees() {
        let cat = Category::named(Family::P);
        // new indecomposable objects per degree follow the partition numbers
        for (k, want) in [(0, 1), (1, 1), (2, 2), (3, 3)] {
            assert_eq!(new_indecomposable_count(&cat, k, 7).unwrap(), want, "k={k}");
        }
        // at degree 2 a single class remains, with symmetry group S_2
        let rows = census(&cat, 2, 7).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].representative, Partition::identity(2));
        assert_eq!(rows[0].group_order, 2);
        assert_eq!(rows[0].conjugacy_classes, 2);
    }

    #[test]
    fn surjective_sets_and_classes() {
        let cat = Category::named(Family::P);
        // every surjective q has q q* = id as a diagram (loops may close:
        // the singleton in P(1,0) composes with its star to id_0 plus a loop)
        for k in 0..=3 {
            for q in surjective_set(&cat, k) {
                let qq = Partition::compose(&q, &q.involution()).unwrap();
                assert_eq!(qq.partition, Partition::identity(q.lower()));
            }
        }
        // the class count matches the projective class count, degree by degree
        for k in 0..=3 {
            let qcls = surjective_classes(&cat, k).unwrap();
            let proj = projectives(&cat, k);
            let indec: BTreeSet<Partition> = indecomposables(&cat, k).into_iter().collect();
            let pcls: Vec<_> = equivalence_classes(&cat, k, &proj)
                .unwrap()
                .into_iter()
                .filter(|cl| indec.contains(&cl[0]))
                .collect();
            assert_eq!(qcls.len(), pcls.len(), "k={k}");
            // the map q ↦ q* q sends classes into classes
            for cl in &qcls {
                let p = Partition::compose(&cl[0].involution(), &cl[0]).unwrap().partition;
                assert!(indec.contains(&p));
            }
        }
    }

    #[test]
    fn half_symmetry_matches_projective_symmetry() {
        let cat = Category::named(Family::PEven);
        for k in 0..=3 {
            for q in surjective_indecomposables(&cat, k) {
                let p = Partition::compose(&q.involution(), &q).unwrap().partition;
                let g1 = half_symmetry_group(&cat, &q, 7).unwrap();
                let g2 = symmetry_group(&cat, &p, 7).unwrap();
                assert_eq!(g1.order(), g2.order(), "{q}");
                assert_eq!(
                    g1.conjugacy_class_count(),
                    g2.conjugacy_class_count(),
                    "{q}"
                );
            }
        }
    }
}
