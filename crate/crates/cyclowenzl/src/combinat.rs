//! Permutations, multipartitions, updown tableaux, contents, dominance and
//! the coset representatives `D_f`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rat::{q, Q};
use crate::{Error, Result};

/// A permutation of `{0..n}` stored by images.
///
/// Products are read left to right: `u.then(v)` applies `u` first.  The
/// symmetric group acts on tableaux from the right by replacing each entry
/// `x` by `w(x)`, which matches this product.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// The simple transposition `s_i = (i, i+1)`, 1-based `i`.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Domain(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// 1-based one-line notation.
    pub fn from_one_line(w: &[usize]) -> Result<Self> {
        if w.iter().any(|&x| x == 0) {
            return Err(Error::Domain(format!("one-line entries are 1-based: {w:?}")));
        }
        Self::from_images(w.iter().map(|&x| x - 1).collect())
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x + 1).collect()
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    /// The lexicographically least reduced word `[i1, …, ik]` (1-based) with
    /// `self = s_{i1}.then(s_{i2})…`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut out = Vec::new();
        'outer: loop {
            for i in 0..w.len().saturating_sub(1) {
                if w[i] > w[i + 1] {
                    w.swap(i, i + 1);
                    out.push(i + 1);
                    continue 'outer;
                }
            }
            return out;
        }
    }

    /// All permutations of `n` points in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == used.len() {
                out.push(Perm(cur.clone()));
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    go(cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

/// A box `(row, col, comp)`, all 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { row, col, comp }
    }

    /// `u_s + j - i`.
    pub fn content(&self, u: &[Q]) -> Q {
        &u[self.comp - 1] + q(self.col as i64 - self.row as i64)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Addable,
    Removable,
}

/// An `r`-tuple of partitions.  Serialized as an array of `r` part lists.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Multipartition {
    comps: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let comps = Vec::<Vec<usize>>::deserialize(d)?;
        Multipartition::new(comps).map_err(serde::de::Error::custom)
    }
}

impl Multipartition {
    pub fn empty(r: usize) -> Self {
        Multipartition { comps: vec![Vec::new(); r] }
    }

    /// Validates weakly decreasing parts and drops trailing zeros.
    pub fn new(mut comps: Vec<Vec<usize>>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::Domain("a multipartition needs r >= 1 components".into()));
        }
        for c in comps.iter_mut() {
            while c.last() == Some(&0) {
                c.pop();
            }
            if c.windows(2).any(|w| w[0] < w[1]) || c.contains(&0) {
                return Err(Error::Domain(format!("not a partition: {c:?}")));
            }
        }
        Ok(Multipartition { comps })
    }

    pub fn r(&self) -> usize {
        self.comps.len()
    }

    pub fn size(&self) -> usize {
        self.comps.iter().map(|c| c.iter().sum::<usize>()).sum()
    }

    pub fn comp(&self, s: usize) -> &[usize] {
        &self.comps[s - 1]
    }

    pub fn comps(&self) -> &[Vec<usize>] {
        &self.comps
    }

    pub fn contains(&self, node: &Node) -> bool {
        let c = &self.comps[node.comp - 1];
        node.row >= 1 && node.row <= c.len() && node.col >= 1 && node.col <= c[node.row - 1]
    }

    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (s, c) in self.comps.iter().enumerate() {
            for (i, &len) in c.iter().enumerate() {
                for j in 1..=len {
                    out.push(Node::new(i + 1, j, s + 1));
                }
            }
        }
        out
    }

    pub fn addable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (s, c) in self.comps.iter().enumerate() {
            for i in 0..=c.len() {
                let len = c.get(i).copied().unwrap_or(0);
                let above = if i == 0 { usize::MAX } else { c[i - 1] };
                if len < above {
                    out.push(Node::new(i + 1, len + 1, s + 1));
                }
            }
        }
        out
    }

    pub fn removable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (s, c) in self.comps.iter().enumerate() {
            for i in 0..c.len() {
                let below = c.get(i + 1).copied().unwrap_or(0);
                if c[i] > below {
                    out.push(Node::new(i + 1, c[i], s + 1));
                }
            }
        }
        out
    }

    pub fn add(&self, node: &Node) -> Option<Self> {
        if !self.addable().contains(node) {
            return None;
        }
        let mut out = self.clone();
        let c = &mut out.comps[node.comp - 1];
        if node.row > c.len() {
            c.push(1);
        } else {
            c[node.row - 1] += 1;
        }
        Some(out)
    }

    pub fn remove(&self, node: &Node) -> Option<Self> {
        if !self.removable().contains(node) {
            return None;
        }
        let mut out = self.clone();
        let c = &mut out.comps[node.comp - 1];
        c[node.row - 1] -= 1;
        if c[node.row - 1] == 0 {
            c.pop();
        }
        Some(out)
    }

    /// Boxes in exactly one of `self`, `other`.
    pub fn distance(&self, other: &Self) -> usize {
        let a: BTreeSet<Node> = self.nodes().into_iter().collect();
        let b: BTreeSet<Node> = other.nodes().into_iter().collect();
        a.symmetric_difference(&b).count()
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn count_standard(&self) -> BigUint {
        let mut num = factorial(self.size());
        let mut den = BigUint::one();
        for c in &self.comps {
            for (i, &len) in c.iter().enumerate() {
                for j in 0..len {
                    let arm = len - j - 1;
                    let leg = c[i + 1..].iter().filter(|&&l| l > j).count();
                    den *= BigUint::from(arm + leg + 1);
                }
            }
        }
        num /= den;
        num
    }

    /// The node `other ⊖ self` when the two differ by one box, with `true`
    /// when `other` is the larger one.
    pub fn step_to(&self, other: &Self) -> Option<(Node, bool)> {
        if other.size() == self.size() + 1 {
            self.addable().into_iter().find(|a| other.contains(a)).map(|a| (a, true))
        } else if other.size() + 1 == self.size() {
            self.removable().into_iter().find(|a| !other.contains(a)).map(|a| (a, false))
        } else {
            None
        }
        .filter(|(a, added)| {
            let next = if *added { self.add(a) } else { self.remove(a) };
            next.as_ref() == Some(other)
        })
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "∅".to_string()
                } else {
                    let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    format!("({})", s.join(","))
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `(2m-1)!!`, with `(-1)!! = 1`.
pub fn double_factorial_odd(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(2 * k - 1))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// All partitions of `m`, in decreasing lexicographic order.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=m.min(max)).rev() {
            cur.push(p);
            go(m - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// All `r`-multipartitions of `m`: component sizes in decreasing
/// lexicographic order, then partitions in decreasing lexicographic order.
pub fn multipartitions(r: usize, m: usize) -> Vec<Multipartition> {
    fn sizes(r: usize, m: usize) -> Vec<Vec<usize>> {
        if r == 1 {
            return vec![vec![m]];
        }
        let mut out = Vec::new();
        for first in (0..=m).rev() {
            for mut rest in sizes(r - 1, m - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for sz in sizes(r, m) {
        let mut acc: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for &k in &sz {
            let mut next = Vec::new();
            for pre in &acc {
                for p in partitions(k) {
                    let mut v = pre.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            acc = next;
        }
        out.extend(acc.into_iter().map(|comps| Multipartition { comps }));
    }
    out
}

/// Every label `λ ⊢ n - 2f` of a cell of the algebra, ordered by `f` then
/// by [`multipartitions`].
pub fn all_shapes(r: usize, n: usize) -> Vec<Multipartition> {
    (0..=n / 2).flat_map(|f| multipartitions(r, n - 2 * f)).collect()
}

/// `u_t = (-1)^(t+1) (n + 2n(r - t))`: decreasing magnitudes with gaps of
/// `2n`, smallest magnitude `n`, odd indices positive.
pub fn default_u(r: usize, n: usize) -> Vec<Q> {
    (1..=r)
        .map(|t| {
            let mag = (n + 2 * n * (r - t)) as i64;
            if t % 2 == 1 {
                q(mag)
            } else {
                q(-mag)
            }
        })
        .collect()
}

/// All addable nodes then all removable nodes with their contents.
pub fn addable_removable(lambda: &Multipartition, u: &[Q]) -> Vec<(Node, Q, NodeKind)> {
    let mut out: Vec<_> =
        lambda.addable().into_iter().map(|a| (a, a.content(u), NodeKind::Addable)).collect();
    out.extend(lambda.removable().into_iter().map(|a| (a, -a.content(u), NodeKind::Removable)));
    out
}

/// A walk `t_1, …, t_n` in the multipartition lattice from `t_0 = ∅`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct UpDownTableau {
    r: usize,
    steps: Vec<Multipartition>,
}

impl Serialize for UpDownTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UpDownTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let steps = Vec::<Multipartition>::deserialize(d)?;
        let r = steps.first().map(|s| s.r()).unwrap_or(1);
        UpDownTableau::new(r, steps).map_err(serde::de::Error::custom)
    }
}

impl UpDownTableau {
    pub fn new(r: usize, steps: Vec<Multipartition>) -> Result<Self> {
        let mut prev = Multipartition::empty(r);
        for s in &steps {
            if s.r() != r || prev.step_to(s).is_none() {
                return Err(Error::Domain(format!("{prev} -> {s} is not a single box step")));
            }
            prev = s.clone();
        }
        Ok(UpDownTableau { r, steps })
    }

    pub fn empty(r: usize) -> Self {
        UpDownTableau { r, steps: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn steps(&self) -> &[Multipartition] {
        &self.steps
    }

    /// `t_k`, with `t_0 = ∅`.
    pub fn at(&self, k: usize) -> Multipartition {
        if k == 0 {
            Multipartition::empty(self.r)
        } else {
            self.steps[k - 1].clone()
        }
    }

    fn at_ref(&self, k: usize) -> std::borrow::Cow<'_, Multipartition> {
        if k == 0 {
            std::borrow::Cow::Owned(Multipartition::empty(self.r))
        } else {
            std::borrow::Cow::Borrowed(&self.steps[k - 1])
        }
    }

    pub fn shape(&self) -> Multipartition {
        self.at(self.n())
    }

    /// The box changed at step `k` and whether it was added.
    pub fn step_node(&self, k: usize) -> (Node, bool) {
        self.at_ref(k - 1).step_to(self.at_ref(k).as_ref()).expect("valid tableau")
    }

    /// `c_t(k)`: `u_s + j - i` for an added box, its negative for a removed one.
    pub fn content(&self, k: usize, u: &[Q]) -> Q {
        let (node, added) = self.step_node(k);
        if added {
            node.content(u)
        } else {
            -node.content(u)
        }
    }

    pub fn contents(&self, u: &[Q]) -> Vec<Q> {
        (1..=self.n()).map(|k| self.content(k, u)).collect()
    }

    /// True when `t_{k-1} = t_{k+1}` (requires `1 <= k < n`).
    pub fn returns_at(&self, k: usize) -> bool {
        k < self.n() && self.at_ref(k - 1) == self.at_ref(k + 1)
    }

    fn with_step(&self, k: usize, mu: Multipartition) -> Self {
        let mut out = self.clone();
        out.steps[k - 1] = mu;
        out
    }

    /// For a standard tableau, the entry at each node.
    pub fn entries(&self) -> Vec<(Node, usize)> {
        (1..=self.n()).map(|k| (self.step_node(k).0, k)).collect()
    }

    pub fn is_standard(&self) -> bool {
        (1..=self.n()).all(|k| self.step_node(k).1)
    }
}

impl fmt::Display for UpDownTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn check_shape(n: usize, lambda: &Multipartition) -> Result<usize> {
    let size = lambda.size();
    if size > n || (n - size) % 2 != 0 {
        return Err(Error::Domain(format!("|λ| = {size} is not n - 2m for n = {n}")));
    }
    Ok((n - size) / 2)
}

/// All `n`-updown `λ`-tableaux, ordered lexicographically by their content
/// sequences under [`default_u`].
pub fn enumerate_updown(n: usize, lambda: &Multipartition) -> Result<Vec<UpDownTableau>> {
    check_shape(n, lambda)?;
    let r = lambda.r();
    let mut out = Vec::new();
    let mut path: Vec<Multipartition> = Vec::new();
    fn go(
        cur: &Multipartition,
        left: usize,
        lambda: &Multipartition,
        path: &mut Vec<Multipartition>,
        out: &mut Vec<Vec<Multipartition>>,
    ) {
        if left == 0 {
            if cur == lambda {
                out.push(path.clone());
            }
            return;
        }
        let nexts = cur
            .addable()
            .into_iter()
            .filter_map(|a| cur.add(&a))
            .chain(cur.removable().into_iter().filter_map(|a| cur.remove(&a)));
        for mu in nexts {
            if mu.distance(lambda) <= left - 1 {
                path.push(mu.clone());
                go(&mu, left - 1, lambda, path, out);
                path.pop();
            }
        }
    }
    let mut raw = Vec::new();
    go(&Multipartition::empty(r), n, lambda, &mut path, &mut raw);
    out.extend(raw.into_iter().map(|steps| UpDownTableau { r, steps }));
    let u = default_u(r, n.max(1));
    let mut keyed: Vec<(Vec<Q>, UpDownTableau)> =
        out.into_iter().map(|t| (t.contents(&u), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// `r^m · C(n, 2m) · (2m-1)!! · #T^std(λ)` where `|λ| = n - 2m`.
pub fn count_updown(r: usize, n: usize, lambda: &Multipartition) -> Result<BigUint> {
    let m = check_shape(n, lambda)?;
    Ok(BigUint::from(r).pow(m as u32)
        * binomial(n, 2 * m)
        * double_factorial_odd(m)
        * lambda.count_standard())
}

/// All `s` with `s_j = t_j` for every `j != k`, including `t`, in the
/// order of [`enumerate_updown`].
pub fn k_neighbors(t: &UpDownTableau, k: usize) -> Result<Vec<UpDownTableau>> {
    let n = t.n();
    if k == 0 || k > n {
        return Err(Error::Domain(format!("k = {k} out of range 1..={n}")));
    }
    let prev = t.at(k - 1);
    if k == n {
        return Ok(vec![t.clone()]);
    }
    let next = t.at(k + 1);
    let cands = prev
        .addable()
        .into_iter()
        .filter_map(|a| prev.add(&a))
        .chain(prev.removable().into_iter().filter_map(|a| prev.remove(&a)));
    let mut out: Vec<UpDownTableau> = cands
        .filter(|mu| mu.step_to(&next).is_some())
        .map(|mu| t.with_step(k, mu))
        .collect();
    let u = default_u(t.r(), n);
    out.sort_by_key(|s| s.contents(&u));
    Ok(out)
}

/// `S_k t`: swap the boxes changed at steps `k` and `k+1`.  `None` when they
/// lie in the same row or the same column.
pub fn sk_action(t: &UpDownTableau, k: usize) -> Result<Option<UpDownTableau>> {
    let n = t.n();
    if k == 0 || k >= n {
        return Err(Error::Domain(format!("k = {k} out of range 1..{n}")));
    }
    if t.returns_at(k) {
        return Err(Error::Domain(format!("t_{} = t_{}: S_k t is not defined here", k - 1, k + 1)));
    }
    let (alpha, add_a) = t.step_node(k);
    let (beta, add_b) = t.step_node(k + 1);
    if alpha.comp == beta.comp && (alpha.row == beta.row || alpha.col == beta.col) {
        return Ok(None);
    }
    let prev = t.at(k - 1);
    let mid = if add_b { prev.add(&beta) } else { prev.remove(&beta) };
    let Some(mid) = mid else { return Ok(None) };
    let end = if add_a { mid.add(&alpha) } else { mid.remove(&alpha) };
    if end.as_ref() != Some(&t.at(k + 1)) {
        return Ok(None);
    }
    Ok(Some(t.with_step(k, mid)))
}

/// Standard tableaux of `λ` (updown tableaux with `n = |λ|`).
pub fn standard_tableaux(lambda: &Multipartition) -> Vec<UpDownTableau> {
    enumerate_updown(lambda.size(), lambda).expect("|λ| = n")
}

/// `t^λ`: rows of the first component filled in order, then the second, …
pub fn top_tableau(lambda: &Multipartition) -> UpDownTableau {
    let r = lambda.r();
    let mut steps = Vec::new();
    let mut cur = Multipartition::empty(r);
    for node in lambda.nodes() {
        cur = cur.add(&node).expect("row reading order adds boxes");
        steps.push(cur.clone());
    }
    UpDownTableau { r, steps }
}

/// `d(t)` with `t = t^λ d(t)`: the entry of `t` in the box holding `x` in `t^λ`.
pub fn tableau_perm(t: &UpDownTableau) -> Perm {
    let lambda = t.shape();
    let top = top_tableau(&lambda);
    let pos: std::collections::BTreeMap<Node, usize> = t.entries().into_iter().collect();
    let images: Vec<usize> = top.entries().iter().map(|(node, _)| pos[node] - 1).collect();
    Perm::from_images(images).expect("bijection")
}

/// `λ ⊵ μ`: partial sums over earlier components plus leading rows dominate.
pub fn dominates(lambda: &Multipartition, mu: &Multipartition) -> bool {
    let r = lambda.r().max(mu.r());
    let rows = |m: &Multipartition, s: usize| -> Vec<usize> { m.comps.get(s).cloned().unwrap_or_default() };
    let (mut before_l, mut before_m) = (0usize, 0usize);
    for s in 0..r {
        let (lr, mr) = (rows(lambda, s), rows(mu, s));
        let len = lr.len().max(mr.len());
        let (mut acc_l, mut acc_m) = (before_l, before_m);
        if acc_l < acc_m {
            return false;
        }
        for k in 0..len {
            acc_l += lr.get(k).copied().unwrap_or(0);
            acc_m += mr.get(k).copied().unwrap_or(0);
            if acc_l < acc_m {
                return false;
            }
        }
        before_l += lr.iter().sum::<usize>();
        before_m += mr.iter().sum::<usize>();
    }
    true
}

/// `s ⊵ t` when `s_k ⊵ t_k` for every `k`.
pub fn tableau_dominates(s: &UpDownTableau, t: &UpDownTableau) -> bool {
    s.n() == t.n() && (1..=s.n()).all(|k| dominates(&s.at(k), &t.at(k)))
}

/// Right coset representatives of `S_{n-2f} × B_f` in `S_n`: `d` such that
/// `t^τ d` is row standard for `τ = ((n-2f), (2^f))` and the first column
/// of its second component increases.
pub fn coset_reps(n: usize, f: usize) -> Result<Vec<Perm>> {
    if 2 * f > n {
        return Err(Error::Domain(format!("f = {f} exceeds n/2 for n = {n}")));
    }
    let m = n - 2 * f;
    Ok(Perm::all(n)
        .into_iter()
        .filter(|d| {
            let row1 = (1..m).all(|i| d.apply(i - 1) < d.apply(i));
            let pairs = (0..f).all(|i| d.apply(m + 2 * i) < d.apply(m + 2 * i + 1));
            let col = (1..f).all(|i| d.apply(m + 2 * (i - 1)) < d.apply(m + 2 * i));
            row1 && pairs && col
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(c: Vec<Vec<usize>>) -> Multipartition {
        Multipartition::new(c).unwrap()
    }

    #[test]
    fn perm_basics() {
        let w = Perm::from_one_line(&[3, 1, 2]).unwrap();
        assert_eq!(w.inverse().then(&w), Perm::identity(3));
        let word = w.reduced_word();
        assert_eq!(word.len(), w.length());
        let rebuilt = word.iter().fold(Perm::identity(3), |acc, &i| acc.then(&Perm::transposition(3, i)));
        assert_eq!(rebuilt, w);
        assert_eq!(Perm::all(4).len(), 24);
    }

    #[test]
    fn addable_removable_examples() {
        let u = vec![q(5)];
        let e = addable_removable(&Multipartition::empty(1), &u);
        assert_eq!(e, vec![(Node::new(1, 1, 1), q(5), NodeKind::Addable)]);
        let one = addable_removable(&mp(vec![vec![1]]), &u);
        assert_eq!(
            one,
            vec![
                (Node::new(1, 2, 1), q(6), NodeKind::Addable),
                (Node::new(2, 1, 1), q(4), NodeKind::Addable),
                (Node::new(1, 1, 1), q(-5), NodeKind::Removable),
            ]
        );
        let two = addable_removable(&mp(vec![vec![1], vec![1]]), &[q(5), q(-3)]);
        let adds = two.iter().filter(|x| x.2 == NodeKind::Addable).count();
        assert_eq!((adds, two.len() - adds), (4, 2));
    }

    #[test]
    fn updown_examples() {
        assert_eq!(enumerate_updown(1, &mp(vec![vec![1]])).unwrap().len(), 1);
        assert_eq!(enumerate_updown(2, &Multipartition::empty(2)).unwrap().len(), 2);
        assert_eq!(enumerate_updown(2, &mp(vec![vec![1], vec![1]])).unwrap().len(), 2);
        assert!(enumerate_updown(3, &Multipartition::empty(1)).is_err());
        assert!(enumerate_updown(1, &mp(vec![vec![2]])).is_err());
        assert_eq!(count_updown(2, 2, &Multipartition::empty(2)).unwrap(), BigUint::from(2u32));
        assert_eq!(enumerate_updown(0, &Multipartition::empty(3)).unwrap().len(), 1);
    }

    #[test]
    fn contents_with_removal() {
        let u = vec![q(7)];
        let box1 = mp(vec![vec![1]]);
        let t = UpDownTableau::new(1, vec![box1, Multipartition::empty(1)]).unwrap();
        assert_eq!(t.contents(&u), vec![q(7), q(-7)]);
    }

    #[test]
    fn neighbors() {
        let t = UpDownTableau::new(2, vec![mp(vec![vec![1], vec![]]), Multipartition::empty(2)]).unwrap();
        assert_eq!(k_neighbors(&t, 1).unwrap().len(), 2);
        assert_eq!(k_neighbors(&t, 2).unwrap(), vec![t.clone()]);
        let s = enumerate_updown(2, &mp(vec![vec![1], vec![1]])).unwrap();
        assert_eq!(k_neighbors(&s[0], 1).unwrap().len(), 2);
        let row = standard_tableaux(&mp(vec![vec![2]]));
        assert_eq!(k_neighbors(&row[0], 1).unwrap().len(), 1);
    }

    #[test]
    fn sk_swaps_components() {
        let ts = enumerate_updown(2, &mp(vec![vec![1], vec![1]])).unwrap();
        let moved = sk_action(&ts[0], 1).unwrap().unwrap();
        assert_eq!(moved, ts[1]);
        assert_eq!(sk_action(&moved, 1).unwrap().unwrap(), ts[0]);
        let row = standard_tableaux(&mp(vec![vec![2]]));
        assert_eq!(sk_action(&row[0], 1).unwrap(), None);
        let back = UpDownTableau::new(1, vec![mp(vec![vec![1]]), Multipartition::empty(1)]).unwrap();
        assert!(sk_action(&back, 1).is_err());
    }

    #[test]
    fn dominance_chain() {
        let a = mp(vec![vec![2], vec![]]);
        let b = mp(vec![vec![1], vec![1]]);
        let c = mp(vec![vec![], vec![2]]);
        assert!(dominates(&a, &b) && dominates(&b, &c) && dominates(&a, &c));
        assert!(!dominates(&c, &b) && !dominates(&b, &a));
    }

    #[test]
    fn standard_counts() {
        assert_eq!(standard_tableaux(&mp(vec![vec![4]])).len(), 1);
        let total: usize = multipartitions(2, 2).iter().map(|l| standard_tableaux(l).len().pow(2)).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn top_tableau_dominates_everything() {
        for lambda in multipartitions(2, 3) {
            let top = top_tableau(&lambda);
            for t in standard_tableaux(&lambda) {
                assert!(tableau_dominates(&top, &t));
            }
            assert_eq!(tableau_perm(&top), Perm::identity(3));
        }
    }

    #[test]
    fn coset_counts() {
        assert_eq!(coset_reps(3, 0).unwrap(), vec![Perm::identity(3)]);
        assert_eq!(coset_reps(2, 1).unwrap().len(), 1);
        assert_eq!(coset_reps(4, 1).unwrap().len(), 6);
        assert!(coset_reps(3, 2).is_err());
    }
}
