//! Planar rooted trees: the faces of the associahedron `K_{n+1}`.
//!
//! Every internal node has at least two children; a tree with `n+1` leaves
//! and `i` internal nodes is a face of `K_{n+1}` of dimension `n - i`.
//! Binary trees are exactly the vertices.
//!
//! Grammar: `tree := "o" | "(" tree tree+ ")"`, whitespace insignificant.
//! The canonical form parenthesizes every internal node including the root
//! (the top cell of `K_4` prints `(ooo)`); input in the outer-parens-omitted
//! style `(oo)o` is accepted by wrapping a virtual root.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    pub fn corolla(leaves: u8) -> Tree {
        Tree::Node(vec![Tree::Leaf; leaves as usize])
    }

    pub fn leaf_count(&self) -> u8 {
        match self {
            Tree::Leaf => 1,
            Tree::Node(cs) => cs.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    pub fn internal_count(&self) -> u8 {
        match self {
            Tree::Leaf => 0,
            Tree::Node(cs) => 1 + cs.iter().map(|c| c.internal_count()).sum::<u8>(),
        }
    }

    /// Dimension as a face of `K_{n+1}` where `n + 1 = leaf_count`.
    pub fn dim(&self) -> u8 {
        self.leaf_count() - 1 - self.internal_count()
    }

    pub fn is_binary(&self) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(cs) => cs.len() == 2 && cs.iter().all(|c| c.is_binary()),
        }
    }

    fn check(&self) -> Result<()> {
        if let Tree::Node(cs) = self {
            if cs.len() < 2 {
                return Err(Error::Notation(
                    "internal node with fewer than 2 children".into(),
                ));
            }
            for c in cs {
                c.check()?;
            }
        }
        Ok(())
    }

    /// Leaf intervals `(first, last)` of the internal nodes, 1-based. A tree
    /// is a laminar family of intervals; `t'` is a face of `t` iff
    /// `spans(t) ⊆ spans(t')`.
    pub fn spans(&self) -> BTreeSet<(u8, u8)> {
        let mut out = BTreeSet::new();
        self.spans_from(1, &mut out);
        out
    }

    fn spans_from(&self, start: u8, out: &mut BTreeSet<(u8, u8)>) -> u8 {
        match self {
            Tree::Leaf => 1,
            Tree::Node(cs) => {
                let mut width = 0;
                for c in cs {
                    width += c.spans_from(start + width, out);
                }
                out.insert((start, start + width - 1));
                width
            }
        }
    }

    /// Is `self` a face of `other` (same leaf count, `other` obtained by
    /// contracting internal edges of `self`)?
    pub fn is_face_of(&self, other: &Tree) -> bool {
        self.leaf_count() == other.leaf_count() && other.spans().is_subset(&self.spans())
    }

    /// Mod-2 cellular boundary: expand one internal node by absorbing a
    /// contiguous run of 2..arity-1 children into a new child node.
    pub fn boundary(&self) -> Vec<Tree> {
        fn expansions(t: &Tree) -> Vec<Tree> {
            match t {
                Tree::Leaf => Vec::new(),
                Tree::Node(cs) => {
                    let mut out = Vec::new();
                    let r = cs.len();
                    // expand this node
                    for len in 2..r {
                        for start in 0..=(r - len) {
                            let mut children = Vec::with_capacity(r - len + 1);
                            children.extend_from_slice(&cs[..start]);
                            children.push(Tree::Node(cs[start..start + len].to_vec()));
                            children.extend_from_slice(&cs[start + len..]);
                            out.push(Tree::Node(children));
                        }
                    }
                    // or expand inside one child
                    for (i, c) in cs.iter().enumerate() {
                        for e in expansions(c) {
                            let mut children = cs.clone();
                            children[i] = e;
                            out.push(Tree::Node(children));
                        }
                    }
                    out
                }
            }
        }
        let mut out = expansions(self);
        out.sort();
        out.dedup();
        out
    }

    /// Binary refinement folding every node's children to the left:
    /// `[a, b, c] ↦ ((a b) c)`.
    pub fn binarize_left(&self) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(cs) => {
                let mut it = cs.iter().map(|c| c.binarize_left());
                let first = it.next().unwrap();
                it.fold(first, |acc, c| Tree::Node(vec![acc, c]))
            }
        }
    }

    /// Binary refinement folding to the right: `[a, b, c] ↦ (a (b c))`.
    pub fn binarize_right(&self) -> Tree {
        match self {
            Tree::Leaf => Tree::Leaf,
            Tree::Node(cs) => {
                let bs: Vec<Tree> = cs.iter().map(|c| c.binarize_right()).collect();
                let mut it = bs.into_iter().rev();
                let last = it.next().unwrap();
                it.fold(last, |acc, c| Tree::Node(vec![c, acc]))
            }
        }
    }

    /// All planar rooted trees with the given number of leaves.
    pub fn enumerate(leaves: u8) -> Vec<Tree> {
        let mut memo: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]; 2];
        for l in 2..=leaves as usize {
            let mut out = Vec::new();
            // compositions of l into m ≥ 2 parts
            fn go(remaining: usize, parts: &mut Vec<usize>, memo: &[Vec<Tree>], out: &mut Vec<Tree>) {
                if remaining == 0 {
                    if parts.len() >= 2 {
                        let mut choices: Vec<Tree> = Vec::new();
                        build(parts, 0, &mut choices, memo, out);
                    }
                    return;
                }
                for take in 1..=remaining {
                    parts.push(take);
                    go(remaining - take, parts, memo, out);
                    parts.pop();
                }
            }
            fn build(
                parts: &[usize],
                i: usize,
                acc: &mut Vec<Tree>,
                memo: &[Vec<Tree>],
                out: &mut Vec<Tree>,
            ) {
                if i == parts.len() {
                    out.push(Tree::Node(acc.clone()));
                    return;
                }
                for t in &memo[parts[i]] {
                    acc.push(t.clone());
                    build(parts, i + 1, acc, memo, out);
                    acc.pop();
                }
            }
            go(l, &mut Vec::new(), &memo, &mut out);
            memo.push(out);
        }
        let mut result = memo.swap_remove(leaves as usize);
        result.sort();
        result
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "o"),
            Tree::Node(cs) => {
                write!(f, "(")?;
                for c in cs {
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        struct P<'a> {
            chars: std::iter::Peekable<std::str::Chars<'a>>,
        }
        impl P<'_> {
            fn skip_ws(&mut self) {
                while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                    self.chars.next();
                }
            }
            fn tree(&mut self) -> Result<Tree> {
                self.skip_ws();
                match self.chars.next() {
                    Some('o') => Ok(Tree::Leaf),
                    Some('(') => {
                        let mut children = Vec::new();
                        loop {
                            self.skip_ws();
                            match self.chars.peek() {
                                Some(')') => {
                                    self.chars.next();
                                    break;
                                }
                                Some(_) => children.push(self.tree()?),
                                None => {
                                    return Err(Error::Notation("unbalanced parentheses".into()))
                                }
                            }
                        }
                        if children.len() < 2 {
                            return Err(Error::Notation(
                                "internal node needs at least 2 children".into(),
                            ));
                        }
                        Ok(Tree::Node(children))
                    }
                    other => Err(Error::Notation(format!("unexpected token {other:?}"))),
                }
            }
        }

        let mut p = P {
            chars: s.chars().peekable(),
        };
        let mut seq = Vec::new();
        loop {
            p.skip_ws();
            if p.chars.peek().is_none() {
                break;
            }
            seq.push(p.tree()?);
        }
        let t = match seq.len() {
            0 => return Err(Error::Notation("empty tree".into())),
            1 => seq.pop().unwrap(),
            _ => Tree::Node(seq), // outer parentheses omitted
        };
        t.check()?;
        Ok(t)
    }
}
