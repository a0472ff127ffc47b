//! Root systems that are products of irreducible simply laced diagrams of
//! type A and D, with Bourbaki numbering inside each component.
//!
//! Simple roots get global indices `0..rank` in component order and names
//! `a1..aN`. For a D component of rank n the chain is `v1 - v2 - ... - v(n-2)`
//! with both `v(n-1)` and `vn` attached to the branch vertex `v(n-2)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Dynkin type of one irreducible component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompKind {
    A,
    D,
}

impl fmt::Display for CompKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompKind::A => write!(f, "A"),
            CompKind::D => write!(f, "D"),
        }
    }
}

/// One irreducible component occupying the global index block
/// `start..start + rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: CompKind,
    pub rank: usize,
    pub start: usize,
}

/// A product of A/D components with its Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<Component>,
    cartan: Vec<Vec<i64>>,
    names: Vec<String>,
    /// Normalization notes, e.g. a requested D3 realized as A3.
    notes: Vec<String>,
}

/// Builds the root system for the listed components, normalizing the
/// low-rank D aliases D2 = A1 x A1 and D3 = A3.
pub fn build_root_system(comps: &[(CompKind, usize)]) -> Result<RootSystem> {
    let mut normalized: Vec<(CompKind, usize)> = Vec::new();
    let mut notes = Vec::new();
    for &(kind, rank) in comps {
        match kind {
            CompKind::A => {
                if rank == 0 {
                    return Err(Error::InvalidGroupSpec("A0 has rank 0".into()));
                }
                normalized.push((CompKind::A, rank));
            }
            CompKind::D => match rank {
                0 | 1 => {
                    return Err(Error::InvalidGroupSpec(format!(
                        "D{rank} is not a root system here"
                    )))
                }
                2 => {
                    notes.push("D2 realized as A1xA1".to_string());
                    normalized.push((CompKind::A, 1));
                    normalized.push((CompKind::A, 1));
                }
                3 => {
                    notes.push("D3 realized as A3".to_string());
                    normalized.push((CompKind::A, 3));
                }
                _ => normalized.push((CompKind::D, rank)),
            },
        }
    }

    let total: usize = normalized.iter().map(|&(_, r)| r).sum();
    let mut cartan = vec![vec![0i64; total]; total];
    for i in 0..total {
        cartan[i][i] = 2;
    }
    let mut components = Vec::new();
    let mut start = 0;
    for &(kind, rank) in &normalized {
        let mut edge = |i: usize, j: usize| {
            cartan[start + i][start + j] = -1;
            cartan[start + j][start + i] = -1;
        };
        match kind {
            CompKind::A => {
                for k in 0..rank.saturating_sub(1) {
                    edge(k, k + 1);
                }
            }
            CompKind::D => {
                for k in 0..rank - 3 {
                    edge(k, k + 1);
                }
                edge(rank - 3, rank - 2);
                edge(rank - 3, rank - 1);
            }
        }
        components.push(Component { kind, rank, start });
        start += rank;
    }
    let names = (1..=total).map(|i| format!("a{i}")).collect();
    Ok(RootSystem {
        components,
        cartan,
        names,
        notes,
    })
}

/// Parses a specification such as `A3xD4`; `1` denotes the trivial group.
pub fn parse_group_spec(spec: &str) -> Result<RootSystem> {
    let spec = spec.trim();
    if spec == "1" {
        return build_root_system(&[]);
    }
    let mut comps = Vec::new();
    for part in spec.split(['x', 'X']) {
        let part = part.trim();
        let kind = match part.chars().next() {
            Some('A') | Some('a') => CompKind::A,
            Some('D') | Some('d') => CompKind::D,
            _ => {
                return Err(Error::InvalidGroupSpec(format!(
                    "component '{part}' must start with A or D"
                )))
            }
        };
        let rank: usize = part[1..]
            .parse()
            .map_err(|_| Error::InvalidGroupSpec(format!("bad rank in '{part}'")))?;
        comps.push((kind, rank));
    }
    build_root_system(&comps)
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// `A3xD4`-style specification; `1` for the trivial group.
    pub fn spec_string(&self) -> String {
        if self.components.is_empty() {
            return "1".to_string();
        }
        self.components
            .iter()
            .map(|c| format!("{}{}", c.kind, c.rank))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn root_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn root_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownRoot(name.to_string()))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] == 0
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.components
            .iter()
            .position(|c| (c.start..c.start + c.rank).contains(&i))
            .expect("root index in range")
    }

    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Pairing of the coroot of simple root `i` against `w`.
    pub fn pairing(&self, i: usize, w: &WeightVector) -> i64 {
        (0..self.rank()).map(|j| self.cartan[i][j] * w.0[j]).sum()
    }

    /// Number of positive roots of the sub-root-system generated by `subset`.
    pub fn positive_roots_of(&self, subset: &BTreeSet<usize>) -> u64 {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut count = 0u64;
        for &v in subset {
            if seen.contains(&v) {
                continue;
            }
            // BFS over the induced subdiagram; it is a tree, either a path
            // (type A) or a fork (type D).
            let mut piece = vec![v];
            let mut queue = vec![v];
            seen.insert(v);
            while let Some(u) = queue.pop() {
                for w in self.neighbours(u) {
                    if subset.contains(&w) && seen.insert(w) {
                        piece.push(w);
                        queue.push(w);
                    }
                }
            }
            let m = piece.len() as u64;
            let has_fork = piece.iter().any(|&u| {
                self.neighbours(u)
                    .iter()
                    .filter(|w| subset.contains(w))
                    .count()
                    == 3
            });
            count += if has_fork { m * (m - 1) } else { m * (m + 1) / 2 };
        }
        count
    }

    pub fn positive_roots_total(&self) -> u64 {
        self.positive_roots_of(&(0..self.rank()).collect())
    }

    /// Positive roots not lying in the span of `subset`.
    pub fn positive_roots_outside(&self, subset: &BTreeSet<usize>) -> u64 {
        self.positive_roots_total() - self.positive_roots_of(subset)
    }

    /// Unique path between `u` and `v` in the Dynkin forest, or None when the
    /// two vertices lie in different components.
    pub fn tree_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        if u == v {
            return Some(vec![u]);
        }
        let n = self.rank();
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(u);
        parent[u] = u;
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for y in self.neighbours(x) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[v] == usize::MAX {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// The sub-root-system generated by a subset of simple roots, with the
    /// map from new indices to old ones. Components come out ordered by
    /// their smallest original index; inside a component the numbering is
    /// fixed deterministically: chains start at the endpoint with the
    /// smaller original index, forks put the far tail tip first and list
    /// the two fork ends in ascending original order.
    pub fn induced_subsystem(&self, keep: &BTreeSet<usize>) -> Result<(RootSystem, Vec<usize>)> {
        if let Some(&bad) = keep.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::UnknownRoot(format!("index {bad}")));
        }
        let mut unvisited = keep.clone();
        let mut kinds: Vec<(CompKind, usize)> = Vec::new();
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        while let Some(&start) = unvisited.iter().next() {
            let mut comp = BTreeSet::from([start]);
            let mut queue = vec![start];
            unvisited.remove(&start);
            while let Some(v) = queue.pop() {
                for w in self.neighbours(v) {
                    if unvisited.remove(&w) {
                        comp.insert(w);
                        queue.push(w);
                    }
                }
            }
            let deg = |v: usize| {
                self.neighbours(v)
                    .into_iter()
                    .filter(|w| comp.contains(w))
                    .count()
            };
            let walk_from = |first: usize, from: usize| -> Vec<usize> {
                let mut arm = vec![first];
                let (mut prev, mut cur) = (from, first);
                while let Some(w) = self
                    .neighbours(cur)
                    .into_iter()
                    .find(|&w| comp.contains(&w) && w != prev)
                {
                    arm.push(w);
                    prev = cur;
                    cur = w;
                }
                arm
            };
            let branch = comp.iter().copied().find(|&v| deg(v) == 3);
            let order: Vec<usize> = if let Some(b) = branch {
                let mut arms: Vec<Vec<usize>> = self
                    .neighbours(b)
                    .into_iter()
                    .filter(|w| comp.contains(w))
                    .map(|first| walk_from(first, b))
                    .collect();
                // The tail is the unique arm of length > 1; a D4 star has
                // none, and its smallest-index arm plays the tail.
                let tail_at = arms
                    .iter()
                    .position(|a| a.len() > 1)
                    .or_else(|| {
                        arms.iter()
                            .enumerate()
                            .min_by_key(|(_, a)| a[0])
                            .map(|(i, _)| i)
                    })
                    .expect("a branch vertex has arms");
                let tail = arms.remove(tail_at);
                let mut ends: Vec<usize> = arms.into_iter().map(|a| a[0]).collect();
                ends.sort_unstable();
                let mut order: Vec<usize> = tail.into_iter().rev().collect();
                order.push(b);
                order.extend(ends);
                order
            } else if comp.len() == 1 {
                vec![start]
            } else {
                let end = comp
                    .iter()
                    .copied()
                    .filter(|&v| deg(v) == 1)
                    .min()
                    .expect("a chain has endpoints");
                walk_from(end, usize::MAX)
            };
            debug_assert_eq!(order.len(), comp.len());
            kinds.push((
                if branch.is_some() { CompKind::D } else { CompKind::A },
                order.len(),
            ));
            pieces.push(order);
        }
        let sub = build_root_system(&kinds)?;
        Ok((sub, pieces.into_iter().flatten().collect()))
    }

    /// All Cartan-preserving permutations of the simple roots.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let degree: Vec<usize> = (0..n).map(|i| self.neighbours(i).len()).collect();
        let mut result = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            rs: &RootSystem,
            degree: &[usize],
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            i: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = rs.rank();
            if i == n {
                out.push(perm.clone());
                return;
            }
            for j in 0..n {
                if used[j] || degree[j] != degree[i] {
                    continue;
                }
                let ok = (0..i).all(|k| rs.cartan[j][perm[k]] == rs.cartan[i][k]);
                if ok {
                    perm[i] = j;
                    used[j] = true;
                    go(rs, degree, perm, used, i + 1, out);
                    used[j] = false;
                    perm[i] = usize::MAX;
                }
            }
        }
        go(self, &degree, &mut perm, &mut used, 0, &mut result);
        result
    }
}

/// Integer coefficient vector over the simple roots of a fixed root system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        WeightVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Symbolic form such as `a1+2a2+a3`.
    pub fn symbol(&self, rs: &RootSystem) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(rs.root_name(i).to_string()),
                _ => parts.push(format!("{}{}", c, rs.root_name(i))),
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Parses the output of [`WeightVector::symbol`].
    pub fn parse(s: &str, rs: &RootSystem) -> Result<WeightVector> {
        let mut v = vec![0i64; rs.rank()];
        let s = s.trim();
        if s == "0" {
            return Ok(WeightVector(v));
        }
        for term in s.split('+') {
            let term = term.trim();
            let split = term
                .char_indices()
                .find(|(_, c)| c.is_ascii_alphabetic())
                .map(|(i, _)| i)
                .ok_or_else(|| Error::UnknownRoot(term.to_string()))?;
            let coeff: i64 = if split == 0 {
                1
            } else {
                term[..split]
                    .parse()
                    .map_err(|_| Error::UnknownRoot(term.to_string()))?
            };
            let idx = rs.root_index(&term[split..])?;
            v[idx] += coeff;
        }
        Ok(WeightVector(v))
    }
}
