//! Rooted planar trees and their Cayley codes.
//!
//! A tree on `n + 1` vertices is described by a code `[c1, ..., cn]`: vertex
//! `i` (1-based) is attached to the earlier vertex `ci`, so every entry must
//! be smaller than its own 1-based position and the first entry is always 0.
//! Vertex 0 is the root and is required to be terminal (exactly one entry is
//! 0): the root is the point where the curve built from the tree meets the
//! boundary circle, and that construction needs a free end there.
//!
//! The order of the children lists is part of the data (the trees are planar);
//! a code always lists children in increasing vertex order. Among all codes of
//! an abstract tree a canonical one is singled out by breadth-first numbering
//! with siblings in decreasing subtree order, and the enumerator yields
//! exactly one canonical code per isomorphism class.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("empty code: a tree needs at least one edge")]
    Empty,
    #[error("could not parse `{text}` at position {pos} as a vertex number")]
    Parse { pos: usize, text: String },
    #[error("entry {entry} at position {pos} must be smaller than {pos}")]
    EntryOutOfRange { pos: usize, entry: usize },
    #[error("entry 0 at position {pos} would attach a second child to the root, which must stay terminal")]
    RootNotTerminal { pos: usize },
}

pub type TreeResult<T> = Result<T, TreeError>;

/// Validated attachment code of a rooted planar tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyCode {
    entries: Vec<usize>,
}

impl CayleyCode {
    /// Validates a raw entry list.
    pub fn new(entries: Vec<usize>) -> TreeResult<Self> {
        if entries.is_empty() {
            return Err(TreeError::Empty);
        }
        for (i, &e) in entries.iter().enumerate() {
            let pos = i + 1;
            if e >= pos {
                return Err(TreeError::EntryOutOfRange { pos, entry: e });
            }
            if e == 0 && pos > 1 {
                return Err(TreeError::RootNotTerminal { pos });
            }
        }
        Ok(CayleyCode { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of edges of the encoded tree.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a validated code has at least one entry
    }

    /// Number of vertices of the encoded tree.
    pub fn vertex_count(&self) -> usize {
        self.entries.len() + 1
    }
}

impl std::str::FromStr for CayleyCode {
    type Err = TreeError;

    /// Accepts `[0,1,1,2]` as well as bare `0 1 1 2` / `0,1,1,2` forms.
    fn from_str(s: &str) -> TreeResult<Self> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut entries = Vec::new();
        for (i, tok) in trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            let e: usize = tok.parse().map_err(|_| TreeError::Parse {
                pos: i + 1,
                text: tok.to_string(),
            })?;
            entries.push(e);
        }
        CayleyCode::new(entries)
    }
}

impl std::fmt::Display for CayleyCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Rooted planar tree; vertex 0 is the terminal root, children lists carry
/// the planar (left-to-right) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Tree {
    pub fn from_code(code: &CayleyCode) -> Tree {
        let n = code.vertex_count();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for (i, &p) in code.entries().iter().enumerate() {
            let v = i + 1;
            parent[v] = Some(p);
            children[p].push(v);
        }
        Tree { parent, children }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Number of tree edges at `v` (the root of a one-edge tree has 1).
    pub fn valency(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// Distance from the root.
    pub fn depth(&self, v: usize) -> usize {
        let mut d = 0;
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            d += 1;
            cur = p;
        }
        d
    }

    /// Edges as `(parent, child)` pairs, indexed by child: edge `v - 1`
    /// connects `parent(v)` to `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..self.vertex_count())
            .map(|v| (self.parent[v].unwrap(), v))
            .collect()
    }

    /// The code that rebuilds this tree with its current labels; valid only
    /// if every parent label is smaller than its child's (always true for
    /// trees built from a code).
    pub fn code(&self) -> CayleyCode {
        let entries: Vec<usize> = (1..self.vertex_count())
            .map(|v| self.parent[v].unwrap())
            .collect();
        CayleyCode::new(entries).expect("tree labels are code-ordered")
    }

    /// Subtree-shape key used to order siblings canonically: the classic
    /// balanced-parenthesis encoding, compared lexicographically. Children
    /// are folded in decreasing key order so the key itself is canonical.
    fn shape_key(&self, v: usize) -> Vec<u8> {
        let mut child_keys: Vec<Vec<u8>> = self
            .children[v]
            .iter()
            .map(|&c| self.shape_key(c))
            .collect();
        child_keys.sort_unstable_by(|a, b| b.cmp(a));
        let mut key = vec![b'1'];
        for k in child_keys {
            key.extend(k);
        }
        key.push(b'0');
        key
    }

    /// Canonical code of the underlying abstract tree: breadth-first
    /// numbering with siblings in decreasing subtree-key order.
    pub fn canonical_code(&self) -> CayleyCode {
        let n = self.vertex_count();
        let mut order = Vec::with_capacity(n);
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut new_label = vec![0usize; n];
        while let Some(v) = queue.pop_front() {
            new_label[v] = order.len();
            order.push(v);
            let mut kids: Vec<usize> = self.children[v].to_vec();
            let keys: std::collections::HashMap<usize, Vec<u8>> =
                kids.iter().map(|&c| (c, self.shape_key(c))).collect();
            kids.sort_by(|a, b| keys[b].cmp(&keys[a]));
            queue.extend(kids);
        }
        let entries: Vec<usize> = order[1..]
            .iter()
            .map(|&v| new_label[self.parent[v].unwrap()])
            .collect();
        CayleyCode::new(entries).expect("breadth-first relabeling is code-ordered")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_code() == self.code()
    }
}

/// All canonical codes with `2..=max_vertices` vertices, in increasing vertex
/// count and lexicographic code order.
///
/// Since the root is terminal, a tree on `n` vertices is the root plus an
/// arbitrary rooted tree on `n - 1` vertices; those are generated once per
/// isomorphism class from their level sequences (the standard successor walk
/// on lexicographically maximal level sequences) and then relabeled
/// canonically.
pub fn enumerate_trees(max_vertices: usize) -> Vec<CayleyCode> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let mut codes: Vec<CayleyCode> = level_sequences(n - 1)
            .into_iter()
            .map(|levels| tree_from_levels(&levels).canonical_code())
            .collect();
        codes.sort();
        debug_assert!(codes.windows(2).all(|w| w[0] != w[1]));
        out.extend(codes);
    }
    out
}

/// Level sequences of all rooted trees on `m` vertices (root at level 1),
/// each isomorphism class appearing exactly once.
fn level_sequences(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return Vec::new();
    }
    let mut seq: Vec<usize> = (1..=m).collect(); // the path, lexicographically largest
    let mut out = vec![seq.clone()];
    if m <= 2 {
        return out;
    }
    loop {
        // Last position deeper than level 2, if any; otherwise we are done.
        let p = match seq.iter().rposition(|&l| l > 2) {
            Some(p) => p,
            None => break,
        };
        // Its parent: the last earlier position one level up.
        let q = (0..p).rfind(|&i| seq[i] == seq[p] - 1).unwrap();
        // Repeat the block starting at the parent to fill out the tail.
        for i in p..m {
            seq[i] = seq[i - (p - q)];
        }
        out.push(seq.clone());
    }
    out
}

/// Builds the tree "terminal root plus subtree" from a level sequence of the
/// subtree: position `i` attaches to the closest earlier position one level
/// shallower, and everything hangs below the fresh root 0.
fn tree_from_levels(levels: &[usize]) -> Tree {
    let m = levels.len();
    let n = m + 1; // add the terminal root
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    for i in 0..m {
        let v = i + 1;
        let p = if levels[i] == 1 {
            0
        } else {
            (0..i).rfind(|&j| levels[j] == levels[i] - 1).unwrap() + 1
        };
        parent[v] = Some(p);
        children[p].push(v);
    }
    Tree { parent, children }
}
