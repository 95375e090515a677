//! Brauer diagrams, their composition with loop counting, and generator words.
//!
//! Vertices are numbered `1..=n` along the top row and `n+1..=2n` along the
//! bottom row, so bottom vertex `ī` is `n + i`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::Perm;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BrauerDiagram {
    n: usize,
    /// `partner[v]` is the other end of the edge at `v`, both 0-based.
    partner: Vec<usize>,
}

impl BrauerDiagram {
    /// Builds a diagram from 1-based vertex pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.len() != n {
            return Err(Error::Domain(format!("need {n} edges, got {}", edges.len())));
        }
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in edges {
            if a == b || a == 0 || b == 0 || a > 2 * n || b > 2 * n {
                return Err(Error::Domain(format!("bad edge ({a}, {b}) for n = {n}")));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::Domain("vertex used twice".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Ok(Self { n, partner })
    }

    fn from_partner(n: usize, partner: Vec<usize>) -> Self {
        debug_assert!(partner.iter().enumerate().all(|(v, &w)| partner[w] == v && v != w));
        Self { n, partner }
    }

    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0; 2 * n];
        for i in 0..n {
            partner[i] = n + i;
            partner[n + i] = i;
        }
        Self { n, partner }
    }

    /// The diagram of `s_i`: crossing strands at `i, i+1` (1-based).
    pub fn s(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} out of range for n = {n}");
        Self::permutation(&Perm::transposition(n, i))
    }

    /// The diagram of `e_i`: arcs `{i, i+1}` top and bottom.
    pub fn e(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "e_{i} out of range for n = {n}");
        let mut d = Self::identity(n);
        let (a, b) = (i - 1, i);
        d.partner[a] = b;
        d.partner[b] = a;
        d.partner[n + a] = n + b;
        d.partner[n + b] = n + a;
        d
    }

    /// Edges `{i, w(i)̄}` for a permutation `w`.
    pub fn permutation(w: &Perm) -> Self {
        let n = w.n();
        let mut partner = vec![0; 2 * n];
        for i in 0..n {
            let j = w.apply(i);
            partner[i] = n + j;
            partner[n + j] = i;
        }
        Self { n, partner }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based partner of 1-based vertex `v`.
    pub fn partner(&self, v: usize) -> usize {
        self.partner[v - 1] + 1
    }

    /// Sorted 1-based edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..2 * self.n)
            .filter(|&v| v < self.partner[v])
            .map(|v| (v + 1, self.partner[v] + 1))
            .collect();
        out.sort_unstable();
        out
    }

    /// Left endpoints (1-based column) of horizontal edges in the top row.
    pub fn top_arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter(|&v| self.partner[v] < self.n && v < self.partner[v])
            .map(|v| (v + 1, self.partner[v] + 1))
            .collect()
    }

    /// Horizontal edges of the bottom row as 1-based column pairs.
    pub fn bottom_arcs(&self) -> Vec<(usize, usize)> {
        (self.n..2 * self.n)
            .filter(|&v| self.partner[v] >= self.n && v < self.partner[v])
            .map(|v| (v - self.n + 1, self.partner[v] - self.n + 1))
            .collect()
    }

    /// Vertical edges as 1-based `(top column, bottom column)`.
    pub fn verticals(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .filter(|&v| self.partner[v] >= self.n)
            .map(|v| (v + 1, self.partner[v] - self.n + 1))
            .collect()
    }

    pub fn num_arcs(&self) -> usize {
        self.top_arcs().len()
    }

    pub fn is_permutation(&self) -> bool {
        self.num_arcs() == 0
    }

    /// Upside-down reflection; the diagram of the anti-involution.
    pub fn flip(&self) -> Self {
        let n = self.n;
        let sw = |v: usize| if v < n { v + n } else { v - n };
        let mut partner = vec![0; 2 * n];
        for v in 0..2 * n {
            partner[sw(v)] = sw(self.partner[v]);
        }
        Self { n, partner }
    }

    /// Stacks `self` above `other`, identifying bottom vertex `ī` of `self`
    /// with top vertex `i` of `other`, and counts closed loops.
    pub fn compose(&self, other: &Self) -> Result<(Self, usize)> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!("{} vs {}", self.n, other.n)));
        }
        let n = self.n;
        // Walk from an outer vertex through the middle row until we exit.
        // Outer vertices: self's top (0..n) and other's bottom (n..2n).
        let mut partner = vec![usize::MAX; 2 * n];
        let mut middle_seen = vec![false; n];
        for start in 0..2 * n {
            if partner[start] != usize::MAX {
                continue;
            }
            // (in_self, vertex) as a position in one of the two diagrams
            let (mut in_self, mut v) = if start < n { (true, start) } else { (false, start) };
            let end = loop {
                let w = if in_self { self.partner[v] } else { other.partner[v] };
                if in_self {
                    if w < n {
                        break w;
                    }
                    let m = w - n;
                    middle_seen[m] = true;
                    in_self = false;
                    v = m;
                } else {
                    if w >= n {
                        break w;
                    }
                    middle_seen[w] = true;
                    in_self = true;
                    v = n + w;
                }
            };
            partner[start] = end;
            partner[end] = start;
        }
        let mut loops = 0;
        for m0 in 0..n {
            if middle_seen[m0] {
                continue;
            }
            loops += 1;
            let mut m = m0;
            loop {
                middle_seen[m] = true;
                let a = self.partner[n + m] - n;
                middle_seen[a] = true;
                m = other.partner[a];
                if m == m0 {
                    break;
                }
            }
        }
        Ok((Self::from_partner(n, partner), loops))
    }
}

impl Ord for BrauerDiagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.edges().cmp(&other.edges()))
    }
}

impl PartialOrd for BrauerDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let name = |v: usize| if v <= n { v.to_string() } else { format!("{}'", v - n) };
        let parts: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(a, b)| format!("{{{},{}}}", name(a), name(b)))
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

impl Serialize for BrauerDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.edges().into_iter().map(|(a, b)| [a, b]))
    }
}

impl<'de> Deserialize<'de> for BrauerDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[usize; 2]>::deserialize(d)?;
        let edges: Vec<_> = pairs.iter().map(|p| (p[0], p[1])).collect();
        BrauerDiagram::from_edges(edges.len(), &edges).map_err(serde::de::Error::custom)
    }
}

/// All `(2n-1)!!` diagrams, sorted lexicographically by edge set.
pub fn enumerate_diagrams(n: usize) -> Vec<BrauerDiagram> {
    fn go(free: &mut Vec<usize>, partner: &mut Vec<usize>, n: usize, out: &mut Vec<BrauerDiagram>) {
        let Some(&a) = free.first() else {
            out.push(BrauerDiagram::from_partner(n, partner.clone()));
            return;
        };
        for idx in 1..free.len() {
            let b = free[idx];
            let rest: Vec<usize> = free.iter().copied().filter(|&v| v != a && v != b).collect();
            let saved = std::mem::replace(free, rest);
            partner[a] = b;
            partner[b] = a;
            go(free, partner, n, out);
            *free = saved;
        }
    }
    let mut out = Vec::new();
    let mut free: Vec<usize> = (0..2 * n).collect();
    let mut partner = vec![0; 2 * n];
    go(&mut free, &mut partner, n, &mut out);
    out.sort();
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Letter {
    S(usize),
    E(usize),
    /// `X_j^k` with `k >= 1`.
    X(usize, usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::S(i) => write!(f, "S_{i}"),
            Letter::E(i) => write!(f, "E_{i}"),
            Letter::X(j, 1) => write!(f, "X_{j}"),
            Letter::X(j, k) => write!(f, "X_{j}^{k}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LetterJson {
    S {
        #[serde(rename = "S")]
        s: usize,
    },
    E {
        #[serde(rename = "E")]
        e: usize,
    },
    X {
        #[serde(rename = "X")]
        x: usize,
        #[serde(default = "one")]
        pow: usize,
    },
}

fn one() -> usize {
    1
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Letter::S(i) => LetterJson::S { s: i },
            Letter::E(i) => LetterJson::E { e: i },
            Letter::X(j, k) => LetterJson::X { x: j, pow: k },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match LetterJson::deserialize(d)? {
            LetterJson::S { s } => Letter::S(s),
            LetterJson::E { e } => Letter::E(e),
            LetterJson::X { x, pow } => Letter::X(x, pow),
        })
    }
}

/// A word in `S_i`, `E_i` and powers of `X_j`, read left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorWord {
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Checks indices against `n` and exponents against zero.
    pub fn validate(&self, n: usize) -> Result<()> {
        for l in &self.letters {
            let ok = match *l {
                Letter::S(i) | Letter::E(i) => i >= 1 && i < n,
                Letter::X(j, k) => j >= 1 && j <= n && k >= 1,
            };
            if !ok {
                return Err(Error::Domain(format!("letter {l} invalid for n = {n}")));
            }
        }
        Ok(())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    /// The anti-involution fixes generators and reverses words.
    pub fn star(&self) -> Self {
        Self { letters: self.letters.iter().rev().copied().collect() }
    }

    pub fn x_degree(&self) -> usize {
        self.letters
            .iter()
            .map(|l| if let Letter::X(_, k) = l { *k } else { 0 })
            .sum()
    }

    /// The word `S_{i1} ... S_{ik}` for the reduced word of `w`.
    pub fn from_perm(w: &Perm) -> Self {
        Self { letters: w.reduced_word().into_iter().map(Letter::S).collect() }
    }

    /// Evaluates an `S`/`E` word in the Brauer monoid.
    pub fn to_diagram(&self, n: usize) -> Result<(BrauerDiagram, usize)> {
        self.validate(n)?;
        let mut d = BrauerDiagram::identity(n);
        let mut loops = 0;
        for l in &self.letters {
            let g = match *l {
                Letter::S(i) => BrauerDiagram::s(n, i),
                Letter::E(i) => BrauerDiagram::e(n, i),
                Letter::X(..) => {
                    return Err(Error::Domain("X letters have no diagram".into()));
                }
            };
            let (next, l) = d.compose(&g)?;
            d = next;
            loops += l;
        }
        Ok((d, loops))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A fixed word `B_g` with `B_g = σ₁ · E_1 E_3 ⋯ E_{2f-1} · σ₂`.
///
/// The top permutation sends the top arcs (sorted by left end) to the
/// columns `(1,2), (3,4), …` and the remaining top vertices, in order, to
/// `2f+1, …, n`; the bottom permutation does the same for the bottom row.
pub fn word_for_diagram(g: &BrauerDiagram) -> GeneratorWord {
    let n = g.n();
    let top = g.top_arcs();
    let bottom = g.bottom_arcs();
    let f = top.len();
    let mut vert = g.verticals();
    vert.sort_unstable();

    let mut up = vec![0; n];
    for (k, &(a, b)) in top.iter().enumerate() {
        up[a - 1] = 2 * k;
        up[b - 1] = 2 * k + 1;
    }
    for (j, &(x, _)) in vert.iter().enumerate() {
        up[x - 1] = 2 * f + j;
    }
    let mut down = vec![0; n];
    for (k, &(c, d)) in bottom.iter().enumerate() {
        down[2 * k] = c - 1;
        down[2 * k + 1] = d - 1;
    }
    for (j, &(_, y)) in vert.iter().enumerate() {
        down[2 * f + j] = y - 1;
    }
    let up = Perm::from_images(up).expect("top permutation");
    let down = Perm::from_images(down).expect("bottom permutation");

    let mut w = GeneratorWord::from_perm(&up);
    w.letters.extend((0..f).map(|k| Letter::E(2 * k + 1)));
    w.letters.extend(GeneratorWord::from_perm(&down).letters);
    w
}

/// One instance of a defining relation of the Brauer monoid.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub name: String,
    pub lhs: GeneratorWord,
    pub rhs: GeneratorWord,
    /// Loops expected on the left beyond those on the right.
    pub extra_loops: usize,
}

/// Every instance of the presentation of the Brauer algebra for a given `n`.
pub fn brauer_relations(n: usize) -> Vec<RelationInstance> {
    use Letter::{E, S};
    let w = |ls: &[Letter]| GeneratorWord::new(ls.to_vec());
    let mut out = Vec::new();
    let mut push = |name: &str, lhs: GeneratorWord, rhs: GeneratorWord, extra: usize| {
        out.push(RelationInstance { name: name.into(), lhs, rhs, extra_loops: extra })
    };
    for i in 1..n {
        push("s_i^2 = 1", w(&[S(i), S(i)]), w(&[]), 0);
        push("e_i^2 = w e_i", w(&[E(i), E(i)]), w(&[E(i)]), 1);
        push("s_i e_i = e_i", w(&[S(i), E(i)]), w(&[E(i)]), 0);
        push("e_i s_i = e_i", w(&[E(i), S(i)]), w(&[E(i)]), 0);
        for j in 1..n {
            if i.abs_diff(j) > 1 {
                push("s_i s_j = s_j s_i", w(&[S(i), S(j)]), w(&[S(j), S(i)]), 0);
                push("s_i e_j = e_j s_i", w(&[S(i), E(j)]), w(&[E(j), S(i)]), 0);
                push("e_i e_j = e_j e_i", w(&[E(i), E(j)]), w(&[E(j), E(i)]), 0);
            }
        }
        if i + 1 < n {
            let k = i + 1;
            push("s_i s_k s_i = s_k s_i s_k", w(&[S(i), S(k), S(i)]), w(&[S(k), S(i), S(k)]), 0);
            push("e_i e_k e_i = e_i", w(&[E(i), E(k), E(i)]), w(&[E(i)]), 0);
            push("e_k e_i e_k = e_k", w(&[E(k), E(i), E(k)]), w(&[E(k)]), 0);
            push("s_i e_k e_i = s_k e_i", w(&[S(i), E(k), E(i)]), w(&[S(k), E(i)]), 0);
            push("e_k e_i s_k = e_k s_i", w(&[E(k), E(i), S(k)]), w(&[E(k), S(i)]), 0);
            push("e_i e_k s_i = e_i s_k", w(&[E(i), E(k), S(i)]), w(&[E(i), S(k)]), 0);
            push("s_k e_i e_k = s_i e_k", w(&[S(k), E(i), E(k)]), w(&[S(i), E(k)]), 0);
        }
    }
    out
}

/// Evaluates both sides of a relation; true when diagrams and loop
/// surplus agree.
pub fn relation_holds(n: usize, rel: &RelationInstance) -> Result<bool> {
    let (l, ll) = rel.lhs.to_diagram(n)?;
    let (r, rl) = rel.rhs.to_diagram(n)?;
    Ok(l == r && ll == rl + rel.extra_loops)
}
