//! Binary and plane trees: Rémy growth, the left/right leaf exchange `chi`,
//! and the dual dissections of a polygon.

use rand::Rng;

use crate::bipolar::BipolarMap;
use crate::error::{Error, Result};
use crate::map::{alpha, CombMap, Dart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left = 0,
    Right = 1,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A rooted binary tree (every node has 0 or 2 children). Nodes are stored
/// in preorder, so two trees are equal iff they have the same shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryTree {
    kids: Vec<Option<[usize; 2]>>,
}

type Parents = Vec<Option<(usize, Side)>>;

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree { kids: vec![None] }
    }

    /// Builds a tree from an arena with an arbitrary root, renumbering nodes
    /// in preorder. Returns the tree and the old-to-new map.
    fn normalized(kids: &[Option<[usize; 2]>], root: usize) -> (Self, Vec<Option<usize>>) {
        let mut relabel = vec![None; kids.len()];
        let mut order = Vec::new();
        let mut stack = vec![root];
        while let Some(n) = stack.pop() {
            relabel[n] = Some(order.len());
            order.push(n);
            if let Some([l, r]) = kids[n] {
                stack.push(r);
                stack.push(l);
            }
        }
        let kids = order
            .iter()
            .map(|&n| kids[n].map(|[l, r]| [relabel[l].unwrap(), relabel[r].unwrap()]))
            .collect();
        (BinaryTree { kids }, relabel)
    }

    pub fn root(&self) -> usize {
        0
    }
    pub fn n_nodes(&self) -> usize {
        self.kids.len()
    }
    pub fn n_leaves(&self) -> usize {
        self.kids.iter().filter(|k| k.is_none()).count()
    }
    pub fn is_leaf(&self, n: usize) -> bool {
        self.kids[n].is_none()
    }
    pub fn child(&self, n: usize, s: Side) -> Option<usize> {
        self.kids[n].map(|k| k[s as usize])
    }

    pub fn parents(&self) -> Parents {
        let mut p = vec![None; self.n_nodes()];
        for (n, k) in self.kids.iter().enumerate() {
            if let Some([l, r]) = *k {
                p[l] = Some((n, Side::Left));
                p[r] = Some((n, Side::Right));
            }
        }
        p
    }

    /// Leaves hanging on a `side` edge.
    pub fn leaves_of_type(&self, side: Side) -> Vec<usize> {
        let p = self.parents();
        (0..self.n_nodes())
            .filter(|&n| self.is_leaf(n) && matches!(p[n], Some((_, s)) if s == side))
            .collect()
    }

    /// Non-root inner nodes hanging on a `side` edge.
    pub fn inner_of_type(&self, side: Side) -> Vec<usize> {
        let p = self.parents();
        (0..self.n_nodes())
            .filter(|&n| !self.is_leaf(n) && matches!(p[n], Some((_, s)) if s == side))
            .collect()
    }

    /// Number of leaves on left edges and on right edges.
    pub fn leaf_types(&self) -> (usize, usize) {
        (self.leaves_of_type(Side::Left).len(), self.leaves_of_type(Side::Right).len())
    }

    fn is_under(&self, n: usize, top: usize, parents: &Parents) -> bool {
        let mut cur = Some(n);
        while let Some(c) = cur {
            if c == top {
                return true;
            }
            cur = parents[c].map(|(p, _)| p);
        }
        false
    }

    /// Rémy's growth step: inserts a new inner node on the edge above `node`
    /// (the planted edge for the root) with a new leaf on `side`. Returns
    /// the new tree and its new leaf.
    pub fn remy_grow(&self, node: usize, side: Side) -> Result<(BinaryTree, usize)> {
        if node >= self.n_nodes() {
            return Err(Error::MalformedTree(format!("no node {node}")));
        }
        let mut kids = self.kids.clone();
        let (inner, leaf) = (kids.len(), kids.len() + 1);
        let parent = self.parents()[node];
        kids.push(Some(match side {
            Side::Left => [leaf, node],
            Side::Right => [node, leaf],
        }));
        kids.push(None);
        let root = match parent {
            None => inner,
            Some((p, s)) => {
                kids[p].as_mut().unwrap()[s as usize] = inner;
                0
            }
        };
        let (t, relabel) = BinaryTree::normalized(&kids, root);
        Ok((t, relabel[leaf].unwrap()))
    }

    /// Inverse of [`remy_grow`]: removes `leaf` and its parent. Returns the
    /// smaller tree, the node below the removed edge and the leaf's side.
    pub fn remy_shrink(&self, leaf: usize) -> Result<(BinaryTree, usize, Side)> {
        let parents = self.parents();
        let Some((inner, side)) = parents.get(leaf).copied().flatten().filter(|_| self.is_leaf(leaf))
        else {
            return Err(Error::MalformedTree(format!("{leaf} is not a non-root leaf")));
        };
        let sibling = self.child(inner, side.other()).unwrap();
        let mut kids = self.kids.clone();
        let root = match parents[inner] {
            None => sibling,
            Some((p, s)) => {
                kids[p].as_mut().unwrap()[s as usize] = sibling;
                0
            }
        };
        let (t, relabel) = BinaryTree::normalized(&kids, root);
        Ok((t, relabel[sibling].unwrap(), side))
    }

    /// Exchange of a marked leaf and a marked inner edge of opposite types.
    /// The leaf takes the place of the inner edge's subtree, which is hung
    /// where the leaf was (or, when the leaf lies inside that subtree, the
    /// subtree becomes the whole tree and the rest is hung at the leaf's
    /// place). Returns the new tree, the marked leaf and the marked inner
    /// node; the types of both marks are swapped and the involution is its
    /// own inverse.
    pub fn chi(&self, leaf: usize, inner: usize) -> Result<(BinaryTree, usize, usize)> {
        let parents = self.parents();
        let bad = |m: &str| Err(Error::BadMarking(m.to_string()));
        if leaf >= self.n_nodes() || inner >= self.n_nodes() {
            return bad("node out of range");
        }
        if !self.is_leaf(leaf) || self.is_leaf(inner) {
            return bad("expected a leaf and an inner node");
        }
        let (Some((pl, sl)), Some((pc, sc))) = (parents[leaf], parents[inner]) else {
            return bad("marks must be edges below some node");
        };
        if sl == sc {
            return bad("marks must have opposite types");
        }
        let mut kids = self.kids.clone();
        let set = |kids: &mut Vec<Option<[usize; 2]>>, p: usize, s: Side, c: usize| {
            kids[p].as_mut().unwrap()[s as usize] = c;
        };
        let (root, mark) = if self.is_under(leaf, inner, &parents) {
            set(&mut kids, pc, sc, leaf);
            set(&mut kids, pl, sl, 0);
            (inner, 0)
        } else {
            set(&mut kids, pc, sc, leaf);
            set(&mut kids, pl, sl, inner);
            (0, inner)
        };
        let (t, relabel) = BinaryTree::normalized(&kids, root);
        Ok((t, relabel[leaf].unwrap(), relabel[mark].unwrap()))
    }

    /// Tree with `n` inner nodes along a rightward spine, each with a left
    /// leaf; the last one also has a right leaf.
    pub fn right_comb(n: usize) -> BinaryTree {
        let mut kids = Vec::new();
        // preorder: spine node, its left leaf, next spine node ...
        for i in 0..n {
            let base = 2 * i;
            kids.push(Some([base + 1, base + 2]));
            kids.push(None);
        }
        kids.push(None);
        BinaryTree { kids }
    }

    /// All binary trees with `n` leaves.
    pub fn all(n: usize) -> Vec<BinaryTree> {
        fn shapes(n: usize) -> Vec<Vec<bool>> {
            // preorder inner/leaf flags
            if n == 1 {
                return vec![vec![false]];
            }
            let mut out = Vec::new();
            for a in 1..n {
                for l in shapes(a) {
                    for r in shapes(n - a) {
                        let mut s = vec![true];
                        s.extend(&l);
                        s.extend(&r);
                        out.push(s);
                    }
                }
            }
            out
        }
        shapes(n).into_iter().map(|s| BinaryTree::from_preorder(&s)).collect()
    }

    fn from_preorder(flags: &[bool]) -> BinaryTree {
        fn build(flags: &[bool], pos: &mut usize, kids: &mut Vec<Option<[usize; 2]>>) -> usize {
            let me = kids.len();
            kids.push(None);
            let inner = flags[*pos];
            *pos += 1;
            if inner {
                let l = build(flags, pos, kids);
                let r = build(flags, pos, kids);
                kids[me] = Some([l, r]);
            }
            me
        }
        let mut kids = Vec::new();
        build(flags, &mut 0, &mut kids);
        BinaryTree { kids }
    }

    /// Preorder flags, `true` for inner nodes.
    pub fn preorder(&self) -> Vec<bool> {
        self.kids.iter().map(|k| k.is_some()).collect()
    }

    /// Reads every inner node as a plane node with two children.
    pub fn as_plane_tree(&self) -> PlaneTree {
        fn go(t: &BinaryTree, n: usize) -> PlaneTree {
            PlaneTree {
                children: match t.kids[n] {
                    None => Vec::new(),
                    Some([l, r]) => vec![go(t, l), go(t, r)],
                },
            }
        }
        go(self, 0)
    }

    /// Inverse of [`as_plane_tree`]; fails unless every node has 0 or 2
    /// children.
    pub fn from_plane_tree(p: &PlaneTree) -> Result<BinaryTree> {
        fn go(p: &PlaneTree, kids: &mut Vec<Option<[usize; 2]>>) -> Result<usize> {
            let me = kids.len();
            kids.push(None);
            match p.children.len() {
                0 => {}
                2 => {
                    let l = go(&p.children[0], kids)?;
                    let r = go(&p.children[1], kids)?;
                    kids[me] = Some([l, r]);
                }
                n => return Err(Error::MalformedTree(format!("node with {n} children"))),
            }
            Ok(me)
        }
        let mut kids = Vec::new();
        go(p, &mut kids)?;
        Ok(BinaryTree { kids })
    }

    /// The classical rotation correspondence read backwards: the left
    /// child continues the sibling list, the right child opens the children
    /// list. Left leaves become inner plane nodes, right leaves plane leaves.
    pub fn to_plane_by_rotation(&self) -> PlaneTree {
        fn forest(t: &BinaryTree, n: usize) -> Vec<PlaneTree> {
            match t.kids[n] {
                None => Vec::new(),
                Some([l, r]) => {
                    let mut out = vec![PlaneTree { children: forest(t, r) }];
                    out.extend(forest(t, l));
                    out
                }
            }
        }
        PlaneTree { children: forest(self, 0) }
    }

    /// Inverse of [`to_plane_by_rotation`].
    pub fn from_plane_by_rotation(p: &PlaneTree) -> BinaryTree {
        fn forest(f: &[PlaneTree], kids: &mut Vec<Option<[usize; 2]>>) -> usize {
            let me = kids.len();
            kids.push(None);
            if let Some((first, rest)) = f.split_first() {
                let l = forest(rest, kids);
                let r = forest(&first.children, kids);
                kids[me] = Some([l, r]);
            }
            me
        }
        let mut kids = Vec::new();
        let root = forest(&p.children, &mut kids);
        BinaryTree::normalized(&kids, root).0
    }
}

/// Uniform binary tree with `n` leaves by iterated Rémy growth.
pub fn sample_binary_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BinaryTree> {
    if n == 0 {
        return Err(Error::DomainError("a binary tree has at least one leaf".into()));
    }
    let mut t = BinaryTree::leaf();
    while t.n_leaves() < n {
        let node = rng.gen_range(0..t.n_nodes());
        let side = if rng.gen::<bool>() { Side::Right } else { Side::Left };
        t = t.remy_grow(node, side)?.0;
    }
    Ok(t)
}

/// A rooted plane tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PlaneTree {
    pub children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn n_nodes(&self) -> usize {
        1 + self.children.iter().map(|c| c.n_nodes()).sum::<usize>()
    }
    pub fn n_leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(|c| c.n_leaves()).sum()
        }
    }
    pub fn n_internal(&self) -> usize {
        self.n_nodes() - self.n_leaves()
    }
}

/// The polygon dissection dual to a plane tree: the tree's `n` leaves are
/// the sides of an `(n + 1)`-gon, inner nodes are faces, and a unary node
/// yields a face of degree 2. The root is the remaining side, oriented from
/// the first polygon vertex to the last; every edge points to the larger
/// vertex index, which is the unique bipolar orientation.
pub fn dissection_from_plane_tree(p: &PlaneTree) -> Result<BipolarMap> {
    if p.children.is_empty() {
        return Err(Error::MalformedTree("the tree needs an inner root".into()));
    }
    let j = p.n_leaves() + 1;
    // (lower, upper, depth) per edge, root first
    let mut edges: Vec<(usize, usize, usize)> = vec![(0, j - 1, 0)];
    fn walk(p: &PlaneTree, lo: usize, depth: usize, edges: &mut Vec<(usize, usize, usize)>) -> usize {
        let mut cur = lo;
        for c in &p.children {
            let next = if c.children.is_empty() {
                cur + 1
            } else {
                walk(c, cur, depth + 1, edges)
            };
            edges.push((cur, next, depth + 1));
            cur = next;
        }
        cur
    }
    walk(p, 0, 0, &mut edges);
    let n = 2 * edges.len();
    let mut at: Vec<Vec<(usize, i64, Dart)>> = vec![Vec::new(); j];
    for (e, &(a, b, depth)) in edges.iter().enumerate() {
        at[a].push((b - a, -(depth as i64), 2 * e));
        at[b].push((j + a - b, depth as i64, 2 * e + 1));
    }
    let mut sigma = vec![0; n];
    for list in &mut at {
        list.sort_unstable();
        for i in 0..list.len() {
            sigma[list[i].2] = list[(i + 1) % list.len()].2;
        }
    }
    let map = CombMap::from_sigma(sigma, 0)?;
    BipolarMap::check(map, vec![true; edges.len()])
}

/// Inverse of [`dissection_from_plane_tree`] on maps without internal
/// vertices.
pub fn plane_tree_from_dissection(x: &BipolarMap) -> Result<PlaneTree> {
    let m = x.map();
    let (k, _, _) = x.params();
    if k != 0 {
        return Err(Error::MalformedTree("the map has internal vertices".into()));
    }
    let ext = m.external_face();
    fn node(m: &CombMap, ext: usize, d: Dart) -> PlaneTree {
        let walk = m.face_walk(d);
        let children = walk[1..]
            .iter()
            .rev()
            .map(|&b| {
                if m.face_left(b) == ext {
                    PlaneTree::default()
                } else {
                    node(m, ext, alpha(b))
                }
            })
            .collect();
        PlaneTree { children }
    }
    // every face must have left length 1 for the walk to read children
    for f in 0..m.n_faces() {
        if f != ext && x.face_lengths(f).0 != 1 {
            return Err(Error::MalformedTree("a face has left length above 1".into()));
        }
    }
    Ok(node(m, ext, m.root()))
}

/// The triangulated polygon dual to a binary tree with `n` leaves.
pub fn triangulation_from_binary_tree(t: &BinaryTree) -> Result<BipolarMap> {
    dissection_from_plane_tree(&t.as_plane_tree())
}

pub fn binary_tree_from_triangulation(x: &BipolarMap) -> Result<BinaryTree> {
    BinaryTree::from_plane_tree(&plane_tree_from_dissection(x)?)
}

/// Uniform binary tree with `a` left leaves and `b` right leaves: a right
/// comb followed by `a0 - a` random exchanges with uniform marks.
pub fn sample_narayana_tree<R: Rng + ?Sized>(a: usize, b: usize, rng: &mut R) -> Result<BinaryTree> {
    if a < 1 || b < 1 {
        return Err(Error::DomainError("need a, b >= 1".into()));
    }
    let mut t = BinaryTree::right_comb(a + b - 1);
    for _ in 1..b {
        let leaves = t.leaves_of_type(Side::Left);
        let inner = t.inner_of_type(Side::Right);
        let l = leaves[rng.gen_range(0..leaves.len())];
        let c = inner[rng.gen_range(0..inner.len())];
        t = t.chi(l, c)?.0;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{catalan, narayana};
    use crate::enumerate::{ClassFilter, Enumerator};
    use num_bigint::BigUint;
    use std::collections::HashSet;

    #[test]
    fn catalan_counts() {
        for n in 1..9 {
            assert_eq!(BigUint::from(BinaryTree::all(n).len()), catalan(n - 1));
        }
    }

    #[test]
    fn remy_is_a_bijection() {
        for n in 1..6 {
            let mut seen = HashSet::new();
            for t in BinaryTree::all(n) {
                for node in 0..t.n_nodes() {
                    for side in [Side::Left, Side::Right] {
                        let (g, leaf) = t.remy_grow(node, side).unwrap();
                        assert_eq!(g.n_leaves(), n + 1);
                        assert!(seen.insert((g.clone(), leaf)));
                        assert_eq!(g.remy_shrink(leaf).unwrap(), (t.clone(), node, side));
                    }
                }
            }
            // every (tree with n+1 leaves, leaf) pair is hit
            let total: usize = BinaryTree::all(n + 1).iter().map(|t| t.n_leaves()).sum();
            assert_eq!(seen.len(), total);
        }
    }

    #[test]
    fn chi_is_an_involution() {
        for n in 2..9 {
            for t in BinaryTree::all(n) {
                for side in [Side::Left, Side::Right] {
                    for l in t.leaves_of_type(side) {
                        for c in t.inner_of_type(side.other()) {
                            let (u, l2, c2) = t.chi(l, c).unwrap();
                            let (a, b) = t.leaf_types();
                            let want = match side {
                                Side::Left => (a - 1, b + 1),
                                Side::Right => (a + 1, b - 1),
                            };
                            assert_eq!(u.leaf_types(), want);
                            assert_eq!(u.chi(l2, c2).unwrap(), (t.clone(), l, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chi_matches_narayana_marked_sets() {
        // F_{3,2}: trees with 3 left and 2 right leaves, marked left leaf and
        // right inner edge; G_{2,3}: 2 left, 3 right, marked right leaf and
        // left inner edge
        let mut f = 0usize;
        let mut images = HashSet::new();
        for t in BinaryTree::all(5) {
            if t.leaf_types() != (3, 2) {
                continue;
            }
            for l in t.leaves_of_type(Side::Left) {
                for c in t.inner_of_type(Side::Right) {
                    f += 1;
                    images.insert(t.chi(l, c).unwrap());
                }
            }
        }
        let g: usize = BinaryTree::all(5)
            .iter()
            .filter(|t| t.leaf_types() == (2, 3))
            .map(|t| t.leaves_of_type(Side::Right).len() * t.inner_of_type(Side::Left).len())
            .sum();
        assert_eq!(f, 36);
        assert_eq!(g, 36);
        assert_eq!(images.len(), 36);
        assert_eq!(BigUint::from(f), BigUint::from(6u32) * narayana(3, 2).unwrap());
    }

    #[test]
    fn rotation_correspondence() {
        for n in 1..8 {
            for t in BinaryTree::all(n) {
                let p = t.to_plane_by_rotation();
                let (a, b) = t.leaf_types();
                if n > 1 {
                    assert_eq!((p.n_internal(), p.n_leaves()), (a, b));
                }
                assert_eq!(BinaryTree::from_plane_by_rotation(&p), t);
            }
        }
    }

    #[test]
    fn dissections_match_enumeration() {
        let mut en = Enumerator::new(8);
        let t = BinaryTree::leaf().remy_grow(0, Side::Left).unwrap().0;
        let tri = triangulation_from_binary_tree(&t).unwrap();
        assert_eq!(tri.params(), (0, 1, 3));
        for j in 3..=5 {
            let mut codes = HashSet::new();
            for t in BinaryTree::all(j - 1) {
                let x = triangulation_from_binary_tree(&t).unwrap();
                assert!(ClassFilter::t(0, j).contains(&x));
                assert_eq!(binary_tree_from_triangulation(&x).unwrap(), t);
                codes.insert(x.canonical_code());
            }
            let want: HashSet<_> = en
                .class(ClassFilter::t(0, j))
                .unwrap()
                .iter()
                .map(|x| x.canonical_code())
                .collect();
            assert_eq!(codes, want);
        }
        for l in 1..=4 {
            for j in 2..=(8 - l) {
                let mut codes = HashSet::new();
                for b in BinaryTree::all(l + j - 1) {
                    if b.leaf_types() != (l, j - 1) {
                        continue;
                    }
                    let p = b.to_plane_by_rotation();
                    let x = dissection_from_plane_tree(&p).unwrap();
                    assert_eq!(x.params(), (0, l, j));
                    assert_eq!(plane_tree_from_dissection(&x).unwrap(), p);
                    codes.insert(x.canonical_code());
                }
                let want: HashSet<_> = en
                    .class(ClassFilter::b(0, l, j))
                    .unwrap()
                    .iter()
                    .map(|x| x.canonical_code())
                    .collect();
                assert_eq!(codes, want, "l={l} j={j}");
            }
        }
    }
}
