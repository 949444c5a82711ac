//! Finite groups as multiplication tables, and their subgroups.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group with identity at index 0. `mul[a][b]` is the product `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<usize>,
}

/// On-disk group description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table {
        order: usize,
        mul: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    /// Each generator is a list of cycles on nonnegative points.
    Permutations { permutations: Vec<Vec<Vec<usize>>> },
}

impl FiniteGroup {
    /// Validates the table exhaustively: identity at 0, Latin square, associativity.
    pub fn from_table(mul: Vec<Vec<usize>>, labels: Option<Vec<String>>, order_cap: usize) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if n > order_cap {
            return Err(Error::CapExceeded { what: "group order", value: n, cap: order_cap });
        }
        if mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square with entries in range".into()));
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(Error::InvalidGroup("index 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[mul[a][b]] = true;
                col[mul[b][a]] = true;
            }
            if row.iter().chain(&col).any(|s| !s) {
                return Err(Error::InvalidGroup(format!("row or column {a} is not a permutation")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).unwrap() as u32).collect();
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(Error::InvalidGroup("label count does not match order".into())),
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        let mul: Vec<Vec<u32>> = mul.into_iter().map(|r| r.into_iter().map(|x| x as u32).collect()).collect();
        let mut g = FiniteGroup { mul, inv, labels, generators: Vec::new() };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Closure of permutation generators. Products compose right to left:
    /// `(ab)(x) = a(b(x))`. Elements are listed in breadth-first order from the
    /// identity, so the result is deterministic.
    pub fn from_permutations(gens: &[Vec<Vec<usize>>], order_cap: usize) -> Result<Self> {
        let degree = gens.iter().flatten().flatten().map(|&p| p + 1).max().unwrap_or(1);
        let mut perms = Vec::with_capacity(gens.len());
        for cycles in gens {
            let mut p: Vec<usize> = (0..degree).collect();
            let mut seen = BTreeSet::new();
            for c in cycles {
                for &x in c {
                    if !seen.insert(x) {
                        return Err(Error::InvalidGroup(format!("point {x} appears twice in a generator")));
                    }
                }
                for (i, &x) in c.iter().enumerate() {
                    p[x] = c[(i + 1) % c.len()];
                }
            }
            perms.push(p);
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for p in &perms {
                let q: Vec<usize> = (0..degree).map(|x| elems[i][p[x]]).collect();
                if !index.contains_key(&q) {
                    if elems.len() >= order_cap {
                        return Err(Error::CapExceeded { what: "group order", value: elems.len() + 1, cap: order_cap });
                    }
                    index.insert(q.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(q);
                }
            }
        }
        let n = elems.len();
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let ab: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                        index[&ab]
                    })
                    .collect()
            })
            .collect();
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        let mut g = Self::from_table(mul, Some(labels), order_cap)?;
        g.generators = perms
            .iter()
            .map(|p| index[p])
            .filter(|&i| i != 0)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(g)
    }

    pub fn from_file(file: &GroupFile, order_cap: usize) -> Result<Self> {
        match file {
            GroupFile::Table { order, mul, labels } => {
                if *order != mul.len() {
                    return Err(Error::Malformed(format!("order {order} does not match table size {}", mul.len())));
                }
                Self::from_table(mul.clone(), labels.clone(), order_cap)
            }
            GroupFile::Permutations { permutations } => Self::from_permutations(permutations, order_cap),
        }
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile::Table {
            order: self.order(),
            mul: self.mul.iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = BTreeSet::from([0]);
        for a in 0..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = closure(self, &gens);
            }
        }
        gens
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let cls: BTreeSet<usize> = (0..n).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls.into_iter().collect());
        }
        out
    }
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// A subgroup as a sorted set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

/// On-disk subgroup description: generators by index or by label.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupFile {
    pub generators: Vec<ElementRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

impl ElementRef {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<usize> {
        match self {
            ElementRef::Index(i) if *i < g.order() => Ok(*i),
            ElementRef::Index(i) => Err(Error::Malformed(format!("element index {i} out of range"))),
            ElementRef::Label(l) => g
                .labels()
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Malformed(format!("no element labelled {l:?}"))),
        }
    }
}

impl SubgroupFile {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<Subgroup> {
        let gens = self.generators.iter().map(|e| e.resolve(g)).collect::<Result<Vec<_>>>()?;
        Subgroup::generated(g, &gens)
    }
}

impl Subgroup {
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotSubgroup(format!("generator index {bad} out of range")));
        }
        Ok(Subgroup { elements: closure(g, gens).into_iter().collect() })
    }

    /// Checks closure under products and inverses.
    pub fn from_elements(g: &FiniteGroup, elems: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        if !set.contains(&0) || set.iter().any(|&x| x >= g.order()) {
            return Err(Error::NotSubgroup("missing identity or index out of range".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) || set.iter().any(|&b| !set.contains(&g.mul(a, b))) {
                return Err(Error::NotSubgroup("not closed under the group law".into()));
            }
        }
        Ok(Subgroup { elements: set.into_iter().collect() })
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elements: (0..g.order()).collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `|L ∩ y L y^-1|`.
    pub fn conjugate_intersection(&self, g: &FiniteGroup, y: usize) -> usize {
        let yi = g.inv(y);
        self.elements.iter().filter(|&&l| self.contains(g.mul(g.mul(yi, l), y))).count()
    }

    /// A minimal generating list, greedily by index.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([0usize]);
        for &a in &self.elements {
            if !span.contains(&a) {
                gens.push(a);
                span = closure(g, &gens);
            }
        }
        gens
    }
}

/// All subgroups, by joining cyclic subgroups until nothing new appears.
/// Sorted by order, then elements.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..g.order() {
        found.insert(closure(g, &[a]).into_iter().collect());
    }
    let cyclic: Vec<Vec<usize>> = found.iter().cloned().collect();
    let mut frontier: Vec<Vec<usize>> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.iter().all(|x| h.binary_search(x).is_ok()) {
                    continue;
                }
                let mut gens = h.clone();
                gens.extend(c);
                let j: Vec<usize> = closure(g, &gens).into_iter().collect();
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = found.into_iter().map(|elements| Subgroup { elements }).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// Small groups used throughout the tests and examples.
pub mod corpus {
    use super::*;

    const CAP: usize = 512;

    fn perms(gens: &[&[&[usize]]]) -> Arc<FiniteGroup> {
        let g: Vec<Vec<Vec<usize>>> = gens.iter().map(|c| c.iter().map(|x| x.to_vec()).collect()).collect();
        Arc::new(FiniteGroup::from_permutations(&g, CAP).expect("corpus group"))
    }

    pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
        let c: Vec<usize> = (0..n).collect();
        if n == 1 {
            return Arc::new(FiniteGroup::from_table(vec![vec![0]], Some(vec!["e".into()]), CAP).unwrap());
        }
        perms(&[&[&c]])
    }

    /// Symmetric group on `{0, .., n-1}`.
    pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
        let c: Vec<usize> = (0..n).collect();
        perms(&[&[&[0, 1]], &[&c]])
    }

    pub fn alternating4() -> Arc<FiniteGroup> {
        perms(&[&[&[0, 1, 2]], &[&[1, 2, 3]]])
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Arc<FiniteGroup> {
        let rot: Vec<usize> = (0..n).collect();
        let refl: Vec<Vec<usize>> = (1..n).filter(|&i| i < n - i).map(|i| vec![i, n - i]).collect();
        let r: Vec<&[usize]> = refl.iter().map(|v| v.as_slice()).collect();
        perms(&[&[&rot], &r])
    }

    /// Quaternion group as permutations of `{±1, ±i, ±j, ±k}` by left multiplication.
    pub fn quaternion() -> Arc<FiniteGroup> {
        // Points: 0=1 1=i 2=j 3=k 4=-1 5=-i 6=-j 7=-k
        perms(&[&[&[0, 1, 4, 5], &[2, 7, 6, 3]], &[&[0, 2, 4, 6], &[1, 3, 5, 7]]])
    }

    /// The named corpus, in a fixed order.
    pub fn named() -> Vec<(&'static str, Arc<FiniteGroup>)> {
        vec![
            ("S3", symmetric(3)),
            ("S4", symmetric(4)),
            ("D4", dihedral(4)),
            ("Q8", quaternion()),
            ("C6", cyclic(6)),
            ("A4", alternating4()),
        ]
    }
}
