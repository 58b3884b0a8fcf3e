//! Finite groups given by Cayley tables, their subgroups and normalized Haar
//! measures.
//!
//! Elements are indexed `0..n` with the identity at index 0. Groups built from
//! permutation generators are enumerated breadth-first (identity first,
//! generators tried in the order given), so indexing is reproducible.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this order the associativity check is sampled rather than exhaustive.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 64;
pub const DEFAULT_MAX_ORDER: usize = 5040;
pub const DEFAULT_PSD_CAP: usize = 4096;

/// Size caps, overridable through `GP_MAX_ORDER` and `GP_PSD_CAP`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub psd_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
            psd_cap: DEFAULT_PSD_CAP,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let read = |key: &str, default: usize| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        };
        Limits {
            max_order: read("GP_MAX_ORDER", DEFAULT_MAX_ORDER),
            psd_cap: read("GP_PSD_CAP", DEFAULT_PSD_CAP),
        }
    }
}

/// A permutation in one-line notation: `p[i]` is the image of point `i`.
pub type Permutation = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<usize>,
    inv: Vec<usize>,
    order: usize,
    permutations: Option<Vec<Permutation>>,
}

/// Group description document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDocument {
    Table {
        name: String,
        order: usize,
        table: Vec<Vec<usize>>,
    },
    Generators {
        name: String,
        degree: usize,
        generators: Vec<Permutation>,
    },
}

/// Subgroup description document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupDocument {
    Members { members: Vec<usize> },
    Generators { generators: Vec<usize> },
}

pub fn load_group(doc: &GroupDocument, limits: &Limits) -> Result<FiniteGroup> {
    match doc {
        GroupDocument::Table { name, order, table } => {
            if table.len() != *order {
                return Err(Error::Malformed(format!(
                    "table has {} rows, order is {}",
                    table.len(),
                    order
                )));
            }
            FiniteGroup::from_table(name, table)
        }
        GroupDocument::Generators {
            name,
            degree,
            generators,
        } => FiniteGroup::from_permutations(name, *degree, generators, limits.max_order),
    }
}

pub fn load_group_json(text: &str, limits: &Limits) -> Result<FiniteGroup> {
    let doc: GroupDocument =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    load_group(&doc, limits)
}

pub fn load_subgroup(group: &Arc<FiniteGroup>, doc: &SubgroupDocument) -> Result<Subgroup> {
    match doc {
        SubgroupDocument::Members { members } => Subgroup::generated(group, members),
        SubgroupDocument::Generators { generators } => Subgroup::generated(group, generators),
    }
}

pub fn load_subgroup_json(group: &Arc<FiniteGroup>, text: &str) -> Result<Subgroup> {
    let doc: SubgroupDocument =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    load_subgroup(group, &doc)
}

impl FiniteGroup {
    pub fn from_table(name: &str, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, order: n });
                }
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(name, table, n, None)
    }

    fn from_flat(
        name: &str,
        table: Vec<usize>,
        n: usize,
        permutations: Option<Vec<Permutation>>,
    ) -> Result<Self> {
        check_latin(&table, n)?;
        for i in 0..n {
            if table[i] != i || table[i * n] != i {
                return Err(Error::IdentityNotFirst);
            }
        }
        check_associative(&table, n)?;
        let mut inv = vec![0; n];
        for (i, slot) in inv.iter_mut().enumerate() {
            // Latin rows guarantee exactly one solution.
            *slot = (0..n).find(|&j| table[i * n + j] == 0).unwrap();
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            table,
            inv,
            order: n,
            permutations,
        })
    }

    /// Closure of permutation generators on `degree` points.
    ///
    /// The product `p * q` is composition `i -> p[q[i]]`. Enumeration is a BFS
    /// where each dequeued element `x` is multiplied on the right by every
    /// generator in order.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        generators: &[Permutation],
        max_order: usize,
    ) -> Result<Self> {
        for (g, perm) in generators.iter().enumerate() {
            if perm.len() != degree {
                return Err(Error::Malformed(format!(
                    "generator {g} has {} images, degree is {degree}",
                    perm.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &p in perm {
                if p >= degree || seen[p] {
                    return Err(Error::Malformed(format!(
                        "generator {g} is not a permutation of 0..{degree}"
                    )));
                }
                seen[p] = true;
            }
        }
        let identity: Permutation = (0..degree).collect();
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let prod = compose(&elements[x], g);
                if !index.contains_key(&prod) {
                    if elements.len() >= max_order {
                        return Err(Error::OrderCapExceeded(max_order));
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)]);
            }
        }
        Self::from_flat(name, table, n, Some(elements))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    /// Row-major Cayley table.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Underlying permutations when the group was built from generators.
    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.permutations.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn compose(p: &[usize], q: &[usize]) -> Permutation {
    q.iter().map(|&i| p[i]).collect()
}

fn check_latin(table: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let v = table[i * n + j];
            if seen[v] == i {
                return Err(Error::NotLatinSquare(format!("row {i} repeats {v}")));
            }
            seen[v] = i;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..n {
        for i in 0..n {
            let v = table[i * n + j];
            if seen[v] == j {
                return Err(Error::NotLatinSquare(format!("column {j} repeats {v}")));
            }
            seen[v] = j;
        }
    }
    Ok(())
}

fn check_associative(table: &[usize], n: usize) -> Result<()> {
    let m = |a: usize, b: usize| table[a * n + b];
    let holds = |a, b, c| m(m(a, b), c) == m(a, m(b, c));
    if n <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !holds(a, b, c) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6173_736f_6369_6174);
        for _ in 0..10 * n * n {
            let (a, b, c) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            if !holds(a, b, c) {
                return Err(Error::NotAssociative(a, b, c));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Subgroup generated by the given elements; `[]` gives `{e}`.
    pub fn generated(parent: &Arc<FiniteGroup>, generators: &[usize]) -> Result<Self> {
        let n = parent.order();
        for &g in generators {
            if g >= n {
                return Err(Error::IndexOutOfRange { index: g, order: n });
            }
        }
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = parent.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_mask(parent, mask))
    }

    /// Subgroup of elements satisfying `pred`; fails unless the set is closed.
    pub fn from_predicate(
        parent: &Arc<FiniteGroup>,
        pred: impl Fn(usize) -> bool,
    ) -> Result<Self> {
        let mask: Vec<bool> = (0..parent.order()).map(pred).collect();
        let sub = Self::from_mask(parent, mask);
        if !sub.is_closed() {
            return Err(Error::BadParameter(
                "predicate does not select a subgroup".into(),
            ));
        }
        Ok(sub)
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::from_mask(parent, vec![true; parent.order()])
    }

    fn from_mask(parent: &Arc<FiniteGroup>, mask: Vec<bool>) -> Self {
        let members = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup {
            parent: Arc::clone(parent),
            members,
            mask,
        }
    }

    fn is_closed(&self) -> bool {
        let g = &self.parent;
        self.mask[0]
            && self.members.iter().all(|&a| {
                self.mask[g.inv(a)] && self.members.iter().all(|&b| self.mask[g.mul(a, b)])
            })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }
}

/// Normalized counting measure on a group or subgroup of `size` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarMeasure {
    size: usize,
}

impl HaarMeasure {
    pub fn on_group(g: &FiniteGroup) -> Self {
        HaarMeasure { size: g.order() }
    }

    pub fn on_subgroup(k: &Subgroup) -> Self {
        HaarMeasure { size: k.order() }
    }

    pub fn weight(&self) -> Ratio<u64> {
        Ratio::new(1, self.size as u64)
    }

    pub fn total_mass(&self) -> Ratio<u64> {
        self.weight() * Ratio::from_integer(self.size as u64)
    }

    pub fn weight_f64(&self) -> f64 {
        1.0 / self.size as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Arc::new(FiniteGroup::from_table(&format!("z{n}"), &rows).unwrap())
    }

    #[test]
    fn z2_from_table() {
        let g = FiniteGroup::from_table("z2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inverses(), &[0, 1]);
    }

    #[test]
    fn s3_from_generators() {
        let g = FiniteGroup::from_permutations("s3", 3, &[vec![1, 0, 2], vec![1, 2, 0]], 5040)
            .unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let perms = g.permutations().unwrap();
        assert_eq!(perms[0], vec![0, 1, 2]);
        // BFS order: e, e*(1 2), e*(1 2 3), ...
        assert_eq!(perms[1], vec![1, 0, 2]);
        assert_eq!(perms[2], vec![1, 2, 0]);
        let mut sorted = perms.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }

    #[test]
    fn repeated_row_entry_is_rejected() {
        let err = FiniteGroup::from_table("bad", &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotLatinSquare(_)));
        assert!(err.to_string().contains("not a Latin square"));
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // Latin square with identity 0 that is not a group (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", &rows).unwrap_err();
        assert!(matches!(err, Error::NotAssociative(..)));
    }

    #[test]
    fn identity_must_be_first() {
        let err = FiniteGroup::from_table("z2", &[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::IdentityNotFirst));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let gens = vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]];
        let err = FiniteGroup::from_permutations("s4", 4, &gens, 10).unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded(10)));
    }

    #[test]
    fn json_documents() {
        let g = load_group_json(
            r#"{"name":"z2","order":2,"table":[[0,1],[1,0]]}"#,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(g.order(), 2);
        let g = load_group_json(
            r#"{"name":"s3","degree":3,"generators":[[1,0,2],[1,2,0]]}"#,
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(matches!(
            load_group_json("{\"name\": 3}", &Limits::default()),
            Err(Error::Malformed(_))
        ));
        let g = Arc::new(g);
        let k = load_subgroup_json(&g, r#"{"generators":[1]}"#).unwrap();
        assert_eq!(k.members(), &[0, 1]);
        let k = load_subgroup_json(&g, r#"{"members":[]}"#).unwrap();
        assert_eq!(k.members(), &[0]);
    }

    #[test]
    fn subgroup_closure() {
        let g = z(4);
        assert_eq!(Subgroup::generated(&g, &[2]).unwrap().members(), &[0, 2]);
        assert_eq!(Subgroup::generated(&g, &[]).unwrap().members(), &[0]);
        assert_eq!(Subgroup::generated(&g, &[1]).unwrap().order(), 4);
        assert!(matches!(
            Subgroup::generated(&g, &[7]),
            Err(Error::IndexOutOfRange { index: 7, order: 4 })
        ));
        assert!(Subgroup::from_predicate(&g, |x| x < 2).is_err());
    }

    #[test]
    fn haar_is_normalized() {
        let g = z(8);
        let h = HaarMeasure::on_group(&g);
        assert_eq!(h.total_mass(), Ratio::from_integer(1));
        assert_eq!(h.weight(), Ratio::new(1, 8));
        let k = Subgroup::generated(&g, &[4]).unwrap();
        assert_eq!(HaarMeasure::on_subgroup(&k).total_mass(), Ratio::from_integer(1));
    }

    #[test]
    fn sampled_associativity_for_large_groups() {
        // S5 has order 120 > 64, so the sampled path runs.
        let gens = vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]];
        let g = FiniteGroup::from_permutations("s5", 5, &gens, 5040).unwrap();
        assert_eq!(g.order(), 120);
        for i in 0..120 {
            assert_eq!(g.mul(i, g.inv(i)), 0);
        }
    }
}
