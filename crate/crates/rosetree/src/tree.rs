//! The immutable rose-tree value type.
//!
//! A [`Tree`] is a datum plus an ordered [`List`] of child trees, behind an
//! `Rc` handle. Values are never mutated: "changing" a tree means building a
//! new one that shares as much of the old one as possible. `datum` and
//! `children` are O(1); the child list is stored, not recomputed.

use std::collections::HashMap;
use std::error::Error;
use std::fmt;
use std::rc::Rc;

use crate::list::List;

struct NodeRepr<D> {
    datum: D,
    children: List<Tree<D>>,
}

/// An immutable rose tree. Clones are O(1) handle copies; child trees are
/// shared with every value they appear in.
pub struct Tree<D> {
    node: Rc<NodeRepr<D>>,
}

impl<D> Tree<D> {
    /// Builds a node from a datum and an ordered child sequence. The child
    /// trees are shared, not copied.
    pub fn new(datum: D, children: List<Tree<D>>) -> Self {
        Tree {
            node: Rc::new(NodeRepr { datum, children }),
        }
    }

    /// A node with no children.
    pub fn leaf(datum: D) -> Self {
        Tree::new(datum, List::new())
    }

    pub fn datum(&self) -> &D {
        &self.node.datum
    }

    pub fn children(&self) -> &List<Tree<D>> {
        &self.node.children
    }

    pub fn is_leaf(&self) -> bool {
        self.node.children.is_empty()
    }

    /// True when both handles point at the same physical node.
    pub fn ptr_eq(&self, other: &Self) -> bool {
        Rc::ptr_eq(&self.node, &other.node)
    }

    /// Logical node count: the number of nodes a full traversal visits,
    /// counting shared subtrees once per occurrence. Computed in time
    /// proportional to the number of *physical* nodes.
    pub fn size(&self) -> u64 {
        fn go<D>(t: &Tree<D>, memo: &mut HashMap<*const NodeRepr<D>, u64>) -> u64 {
            let key = Rc::as_ptr(&t.node);
            if let Some(&n) = memo.get(&key) {
                return n;
            }
            let n = 1 + t.children().iter().map(|c| go(c, memo)).sum::<u64>();
            memo.insert(key, n);
            n
        }
        go(self, &mut HashMap::new())
    }

    /// Subtrees in preorder, starting with `self`, produced on demand.
    pub fn preorder(&self) -> Preorder<D> {
        Preorder {
            first: Some(self.clone()),
            stack: Vec::new(),
        }
    }
}

impl<D: Clone> Tree<D> {
    /// A node with `self`'s datum and the given children; `self` is
    /// untouched. O(1) apart from cloning the datum.
    pub fn rebuild(&self, children: List<Tree<D>>) -> Self {
        Tree::new(self.node.datum.clone(), children)
    }

    /// Preorder sequence of all node data; its length equals [`size`].
    /// This direct recursion is the reference traversal the cursor-based
    /// ones are checked against.
    ///
    /// [`size`]: Tree::size
    pub fn labels(&self) -> Vec<D> {
        fn go<D: Clone>(t: &Tree<D>, out: &mut Vec<D>) {
            out.push(t.datum().clone());
            for child in t.children().iter() {
                go(child, out);
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Rebuilds the tree with every datum passed through `f`, visiting nodes
    /// in preorder. Shared subtrees are expanded: the result has one fresh
    /// physical node per logical node.
    pub fn map<E>(&self, f: &mut impl FnMut(&D) -> E) -> Tree<E> {
        let datum = f(self.datum());
        let children: List<Tree<E>> = self.children().iter().map(|c| c.map(f)).collect();
        Tree::new(datum, children)
    }

    /// A structurally equal tree with no physical sharing against `self`.
    pub fn deep_copy(&self) -> Tree<D> {
        self.map(&mut |d| d.clone())
    }
}

impl<D> Clone for Tree<D> {
    fn clone(&self) -> Self {
        Tree {
            node: self.node.clone(),
        }
    }
}

impl<D: PartialEq> PartialEq for Tree<D> {
    fn eq(&self, other: &Self) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        self.datum() == other.datum() && self.children() == other.children()
    }
}

impl<D: Eq> Eq for Tree<D> {}

impl<D: fmt::Debug> fmt::Debug for Tree<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.datum())?;
        if !self.is_leaf() {
            write!(f, "(")?;
            for (i, child) in self.children().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{:?}", child)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Demand-driven preorder walk; see [`Tree::preorder`].
pub struct Preorder<D> {
    first: Option<Tree<D>>,
    // Remaining subtrees per open level, nearest first.
    stack: Vec<List<Tree<D>>>,
}

impl<D> Iterator for Preorder<D> {
    type Item = Tree<D>;

    fn next(&mut self) -> Option<Tree<D>> {
        if let Some(t) = self.first.take() {
            self.stack.push(t.children().clone());
            return Some(t);
        }
        loop {
            let level = self.stack.last_mut()?;
            match level.head() {
                None => {
                    self.stack.pop();
                }
                Some(t) => {
                    let t = t.clone();
                    *level = level.tail();
                    self.stack.push(t.children().clone());
                    return Some(t);
                }
            }
        }
    }
}

/// Error from [`build_uniform`] when `branch` is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidBranch;

impl fmt::Display for InvalidBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("branch factor must be at least 1")
    }
}

impl Error for InvalidBranch {}

/// Benchmark tree: each node at remaining depth `d > 0` carries datum `d`
/// and has `branch` children, all the *same shared* subtree of remaining
/// depth `d - 1`; depth-0 nodes are leaves with datum 0. Physical memory is
/// O(depth * branch) while the logical node count is
/// `(branch^(depth+1) - 1) / (branch - 1)` for `branch > 1`.
pub fn build_uniform(depth: u32, branch: u32) -> Result<Tree<u32>, InvalidBranch> {
    if branch == 0 {
        return Err(InvalidBranch);
    }
    let mut t = Tree::leaf(0);
    for d in 1..=depth {
        let mut children = List::new();
        for _ in 0..branch {
            children = children.cons(t.clone());
        }
        t = Tree::new(d, children);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(d: &str) -> Tree<String> {
        Tree::leaf(d.to_string())
    }

    #[test]
    fn constructor_accessor_laws() {
        let cs: List<Tree<i32>> = [Tree::leaf(1), Tree::leaf(2)].into_iter().collect();
        let t = Tree::new(9, cs.clone());
        assert_eq!(*t.datum(), 9);
        assert!(t.children().ptr_eq(&cs));
    }

    #[test]
    fn leaf_construction() {
        let t = Tree::leaf(7);
        assert_eq!(*t.datum(), 7);
        assert!(t.is_leaf());
        assert_eq!(t.size(), 1);
        assert_eq!(t.labels(), vec![7]);
    }

    #[test]
    fn children_are_shared_not_copied() {
        let shared = Tree::leaf(1);
        let cs: List<Tree<i32>> = [shared.clone(), shared.clone()].into_iter().collect();
        let t = Tree::new(0, cs);
        let mut it = t.children().iter();
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        assert!(a.ptr_eq(&shared));
        assert!(b.ptr_eq(&shared));
    }

    #[test]
    fn rebuild_replaces_children_keeps_datum() {
        let t = Tree::new("a".to_string(), [leaf("b")].into_iter().collect());
        let r = t.rebuild(List::new());
        assert_eq!(r.datum(), "a");
        assert!(r.is_leaf());
        // the original is untouched
        assert_eq!(t.children().len(), 1);

        let same = t.rebuild(t.children().clone());
        assert_eq!(same, t);
        assert!(same.children().ptr_eq(t.children()));

        let z = Tree::leaf("z".to_string());
        let sub = leaf("a").rebuild([z.clone()].into_iter().collect());
        assert_eq!(sub.datum(), "a");
        assert!(sub.children().head().unwrap().ptr_eq(&z));
    }

    #[test]
    fn labels_preorder() {
        // a(b(d,e),c) visits node before children, children left to right
        let t = Tree::new(
            "a".to_string(),
            [
                Tree::new("b".to_string(), [leaf("d"), leaf("e")].into_iter().collect()),
                leaf("c"),
            ]
            .into_iter()
            .collect(),
        );
        assert_eq!(t.labels(), vec!["a", "b", "d", "e", "c"]);
        assert_eq!(t.size(), 3 + 2);
        assert_eq!(t.labels().len() as u64, t.size());
    }

    #[test]
    fn build_uniform_base_case() {
        let t = build_uniform(0, 4).unwrap();
        assert!(t.is_leaf());
        assert_eq!(*t.datum(), 0);
        assert_eq!(t.size(), 1);
    }

    #[test]
    fn build_uniform_small_sizes() {
        // brute-force traversal count, cross-checked against (4^3 - 1) / 3
        assert_eq!(build_uniform(2, 4).unwrap().size(), 21);
        assert_eq!((4u64.pow(3) - 1) / 3, 21);
        for depth in 0..=8 {
            let t = build_uniform(depth, 4).unwrap();
            assert_eq!(t.size(), (4u64.pow(depth + 1) - 1) / 3);
        }
    }

    #[test]
    fn build_uniform_paper_size() {
        let t = build_uniform(10, 4).unwrap();
        assert_eq!(t.size(), 1_398_101);
    }

    #[test]
    fn build_uniform_labels_depth_one() {
        let t = build_uniform(1, 4).unwrap();
        assert_eq!(t.labels(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn build_uniform_shares_one_subtree_per_level() {
        let t = build_uniform(3, 4).unwrap();
        let mut it = t.children().iter();
        let first = it.next().unwrap();
        for other in it {
            assert!(first.ptr_eq(other));
        }
    }

    #[test]
    fn build_uniform_rejects_zero_branch() {
        assert_eq!(build_uniform(3, 0), Err(InvalidBranch));
    }

    #[test]
    fn branch_one_is_a_path() {
        let t = build_uniform(5, 1).unwrap();
        assert_eq!(t.size(), 6);
        assert_eq!(t.labels(), vec![5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn preorder_stream_matches_labels() {
        let t = Tree::new(
            "a".to_string(),
            [
                Tree::new("b".to_string(), [leaf("d"), leaf("e")].into_iter().collect()),
                leaf("c"),
            ]
            .into_iter()
            .collect(),
        );
        let streamed: Vec<String> = t.preorder().map(|n| n.datum().clone()).collect();
        assert_eq!(streamed, t.labels());

        let single: Vec<Tree<i32>> = Tree::leaf(7).preorder().collect();
        assert_eq!(single.len(), 1);
        assert_eq!(*single[0].datum(), 7);

        assert_eq!(build_uniform(2, 4).unwrap().preorder().count(), 21);
    }

    #[test]
    fn preorder_is_lazy() {
        let t = build_uniform(10, 4).unwrap();
        // consuming k elements must not materialise 1.4M nodes
        let k: Vec<u32> = t.preorder().take(6).map(|n| *n.datum()).collect();
        assert_eq!(k, vec![10, 9, 8, 7, 6, 5]);
    }

    #[test]
    fn equality_and_sharing() {
        let t = build_uniform(6, 4).unwrap();
        let u = build_uniform(6, 4).unwrap();
        assert_eq!(t, u);
        assert!(!t.ptr_eq(&u));
        let v = t.clone();
        assert!(t.ptr_eq(&v));
        assert_eq!(t, v);
    }

    #[test]
    fn map_and_deep_copy() {
        let t = build_uniform(2, 3).unwrap();
        let doubled = t.map(&mut |d| d * 2);
        assert_eq!(
            doubled.labels(),
            t.labels().into_iter().map(|d| d * 2).collect::<Vec<_>>()
        );
        let copy = t.deep_copy();
        assert_eq!(copy, t);
        assert!(!copy.ptr_eq(&t));
        // sharing is expanded: children of the copy are distinct nodes
        let mut it = copy.children().iter();
        let a = it.next().unwrap();
        let b = it.next().unwrap();
        assert!(!a.ptr_eq(b));
    }

    #[test]
    fn debug_formats_compactly() {
        let t = Tree::new(1, [Tree::leaf(2), Tree::leaf(3)].into_iter().collect());
        assert_eq!(format!("{:?}", t), "1(2,3)");
    }
}
