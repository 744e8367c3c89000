//! Ordered labeled trees with the structural indices required by the
//! path-decomposition distance engines.
//!
//! Trees are immutable arenas. Every node carries both traversal numbers
//! (left-to-right and right-to-left postorder, 1-based) plus the leaf and
//! size fields the dynamic programs index by. Node identity in tables and
//! edit scripts is the LR-postorder number.

use std::fmt::Write as _;

use thiserror::Error;

/// Arena index of a node.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Left-to-right postorder number, 1..=|T|.
    pub lr_post: u32,
    /// Right-to-left postorder number, 1..=|T|.
    pub rl_post: u32,
    pub leftmost_leaf: NodeId,
    pub rightmost_leaf: NodeId,
    pub subtree_size: u32,
    /// Root has depth 1.
    pub depth: u32,
}

impl Node {
    /// A node with only label and parent set; every derived field is
    /// filled in by [`Tree::from_arena`].
    pub fn bare(label: String, parent: Option<NodeId>) -> Node {
        Node {
            label,
            parent,
            children: Vec::new(),
            lr_post: 0,
            rl_post: 0,
            leftmost_leaf: 0,
            rightmost_leaf: 0,
            subtree_size: 1,
            depth: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    nodes: Vec<Node>,
    root: NodeId,
    /// `lr_order[k]` is the node with lr_post `k + 1`.
    lr_order: Vec<NodeId>,
    /// `rl_order[k]` is the node with rl_post `k + 1`.
    rl_order: Vec<NodeId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected '{{'")]
    ExpectedOpen,
    #[error("empty label")]
    EmptyLabel,
    #[error("unclosed subtree")]
    UnclosedSubtree,
    #[error("trailing garbage after tree")]
    TrailingGarbage,
    #[error("dangling escape")]
    DanglingEscape,
}

impl Tree {
    /// Parses bracket notation: `TREE := '{' LABEL TREE* '}'`. Labels are
    /// nonempty and may escape `{`, `}` and `\` with a backslash.
    pub fn parse(text: &str) -> Result<Tree, ParseError> {
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut nodes: Vec<Node> = Vec::new();
        let root = parse_node(bytes, &mut pos, None, &mut nodes)?;
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos != bytes.len() {
            return Err(ParseError {
                offset: pos,
                kind: ParseErrorKind::TrailingGarbage,
            });
        }
        Ok(Tree::from_arena(nodes, root))
    }

    /// Builds a tree from a raw parent/children arena and recomputes all
    /// derived fields. `nodes` only needs `label`, `parent` and `children`
    /// to be meaningful.
    pub fn from_arena(mut nodes: Vec<Node>, root: NodeId) -> Tree {
        compute_derived(&mut nodes, root);
        let n = nodes.len();
        let mut lr_order = vec![0; n];
        let mut rl_order = vec![0; n];
        for (id, node) in nodes.iter().enumerate() {
            lr_order[(node.lr_post - 1) as usize] = id;
            rl_order[(node.rl_post - 1) as usize] = id;
        }
        Tree {
            nodes,
            root,
            lr_order,
            rl_order,
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> {
        self.nodes.iter().enumerate()
    }

    /// Node with the given LR-postorder number (1-based).
    pub fn by_lr(&self, lr: u32) -> NodeId {
        self.lr_order[(lr - 1) as usize]
    }

    /// Node with the given RL-postorder number (1-based).
    pub fn by_rl(&self, rl: u32) -> NodeId {
        self.rl_order[(rl - 1) as usize]
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.nodes[id].label
    }

    /// True when `anc` is a strict ancestor of `node`.
    pub fn is_ancestor(&self, anc: NodeId, node: NodeId) -> bool {
        if anc == node {
            return false;
        }
        let a = &self.nodes[anc];
        let d = &self.nodes[node];
        // A subtree is a contiguous LR-postorder range ending at its root.
        d.lr_post < a.lr_post && d.lr_post > a.lr_post - a.subtree_size
    }

    /// Relative order of two distinct nodes.
    pub fn relation(&self, a: NodeId, b: NodeId) -> NodeRelation {
        if a == b {
            NodeRelation::Same
        } else if self.is_ancestor(a, b) {
            NodeRelation::Ancestor
        } else if self.is_ancestor(b, a) {
            NodeRelation::Descendant
        } else if self.nodes[a].lr_post < self.nodes[b].lr_post {
            NodeRelation::LeftOf
        } else {
            NodeRelation::RightOf
        }
    }

    pub fn depth_of_tree(&self) -> u32 {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.children.is_empty()).count()
    }

    /// Bracket-notation serialization; inverse of [`Tree::parse`].
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        self.write_node(self.root, &mut out);
        out
    }

    fn write_node(&self, id: NodeId, out: &mut String) {
        let node = &self.nodes[id];
        out.push('{');
        for ch in node.label.chars() {
            if ch == '{' || ch == '}' || ch == '\\' {
                out.push('\\');
            }
            out.push(ch);
        }
        for &c in &node.children {
            self.write_node(c, out);
        }
        out.push('}');
    }

    /// The same tree with every child list reversed. LR and RL numbers of
    /// corresponding nodes swap, which is how the rightmost-path engine is
    /// obtained from the leftmost-path one.
    pub fn mirror(&self) -> Tree {
        let mut nodes = self.nodes.clone();
        for node in &mut nodes {
            node.children.reverse();
        }
        Tree::from_arena(nodes, self.root)
    }

    /// Nodes of the subtree rooted at `id`, in LR-postorder.
    pub fn subtree_nodes(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let top = self.nodes[id].lr_post;
        let lo = top - self.nodes[id].subtree_size;
        (lo..top).map(move |k| self.lr_order[k as usize])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRelation {
    Same,
    Ancestor,
    Descendant,
    LeftOf,
    RightOf,
}

fn parse_node(
    bytes: &[u8],
    pos: &mut usize,
    parent: Option<NodeId>,
    nodes: &mut Vec<Node>,
) -> Result<NodeId, ParseError> {
    if *pos >= bytes.len() || bytes[*pos] != b'{' {
        return Err(ParseError {
            offset: *pos,
            kind: ParseErrorKind::ExpectedOpen,
        });
    }
    let open = *pos;
    *pos += 1;
    let mut label = String::new();
    loop {
        match bytes.get(*pos) {
            Some(b'\\') => {
                let Some(&escaped) = bytes.get(*pos + 1) else {
                    return Err(ParseError {
                        offset: *pos,
                        kind: ParseErrorKind::DanglingEscape,
                    });
                };
                label.push(escaped as char);
                *pos += 2;
            }
            Some(b'{') | Some(b'}') | None => break,
            Some(&b) => {
                label.push(b as char);
                *pos += 1;
            }
        }
    }
    if label.is_empty() {
        return Err(ParseError {
            offset: open + 1,
            kind: ParseErrorKind::EmptyLabel,
        });
    }
    let id = nodes.len();
    nodes.push(Node {
        label,
        parent,
        children: Vec::new(),
        lr_post: 0,
        rl_post: 0,
        leftmost_leaf: id,
        rightmost_leaf: id,
        subtree_size: 1,
        depth: 1,
    });
    loop {
        match bytes.get(*pos) {
            Some(b'{') => {
                let child = parse_node(bytes, pos, Some(id), nodes)?;
                nodes[id].children.push(child);
            }
            Some(b'}') => {
                *pos += 1;
                return Ok(id);
            }
            _ => {
                return Err(ParseError {
                    offset: *pos,
                    kind: ParseErrorKind::UnclosedSubtree,
                })
            }
        }
    }
}

fn compute_derived(nodes: &mut [Node], root: NodeId) {
    // Iterative DFS; trees in the test corpus reach a few thousand nodes
    // and path trees would overflow a recursive walk.
    let mut lr = 0u32;
    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    nodes[root].depth = 1;
    while let Some(&(id, child_idx)) = stack.last() {
        if child_idx == 0 {
            nodes[id].subtree_size = 1;
            let d = nodes[id].depth;
            for k in 0..nodes[id].children.len() {
                let c = nodes[id].children[k];
                nodes[c].depth = d + 1;
            }
        }
        if child_idx < nodes[id].children.len() {
            stack.last_mut().unwrap().1 += 1;
            let c = nodes[id].children[child_idx];
            stack.push((c, 0));
        } else {
            stack.pop();
            lr += 1;
            nodes[id].lr_post = lr;
            if let Some(&first) = nodes[id].children.first() {
                nodes[id].leftmost_leaf = nodes[first].leftmost_leaf;
                let last = *nodes[id].children.last().unwrap();
                nodes[id].rightmost_leaf = nodes[last].rightmost_leaf;
                nodes[id].subtree_size = 1 + nodes[id]
                    .children
                    .iter()
                    .map(|&c| nodes[c].subtree_size)
                    .sum::<u32>();
            } else {
                nodes[id].leftmost_leaf = id;
                nodes[id].rightmost_leaf = id;
            }
        }
    }
    // RL-postorder: same walk with child order reversed.
    let mut rl = 0u32;
    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    while let Some(&(id, child_idx)) = stack.last() {
        if child_idx < nodes[id].children.len() {
            stack.last_mut().unwrap().1 += 1;
            let c = nodes[id].children[nodes[id].children.len() - 1 - child_idx];
            stack.push((c, 0));
        } else {
            stack.pop();
            rl += 1;
            nodes[id].rl_post = rl;
        }
    }
}

/// Keyroot sets, heavy-path structure and collapsed depths for one tree.
///
/// Heavy-child ties are broken toward the leftmost maximal child so every
/// derived structure is deterministic.
#[derive(Debug, Clone)]
pub struct StructuralIndex {
    /// LR-keyroots (root plus nodes with a left sibling), ascending lr_post.
    pub lr_keyroots: Vec<NodeId>,
    /// RL-keyroots (root plus nodes with a right sibling), ascending rl_post.
    pub rl_keyroots: Vec<NodeId>,
    /// H-keyroots (root plus non-heavy children), ascending H-postorder.
    pub h_keyroots: Vec<NodeId>,
    pub heavy_child: Vec<Option<NodeId>>,
    /// Position of each node in the H-postorder of the whole tree, 1-based.
    pub h_post: Vec<u32>,
    /// Number of strict ancestors that are LR-keyroots.
    pub lr_collapsed_depth: Vec<u32>,
    /// Number of strict ancestors that are RL-keyroots.
    pub rl_collapsed_depth: Vec<u32>,
    /// Number of strict ancestors that are H-keyroots.
    pub h_collapsed_depth: Vec<u32>,
}

impl StructuralIndex {
    pub fn build(tree: &Tree) -> StructuralIndex {
        let n = tree.len();
        let mut heavy_child = vec![None; n];
        for (id, node) in tree.nodes() {
            let mut best: Option<NodeId> = None;
            for &c in &node.children {
                match best {
                    Some(b) if tree.node(c).subtree_size <= tree.node(b).subtree_size => {}
                    _ => best = Some(c),
                }
            }
            heavy_child[id] = best;
        }

        let mut lr_keyroots: Vec<NodeId> = Vec::new();
        let mut rl_keyroots: Vec<NodeId> = Vec::new();
        let mut h_keyroot_set = vec![false; n];
        for (id, node) in tree.nodes() {
            match node.parent {
                None => {
                    lr_keyroots.push(id);
                    rl_keyroots.push(id);
                    h_keyroot_set[id] = true;
                }
                Some(p) => {
                    let siblings = &tree.node(p).children;
                    let pos = siblings.iter().position(|&c| c == id).unwrap();
                    if pos > 0 {
                        lr_keyroots.push(id);
                    }
                    if pos + 1 < siblings.len() {
                        rl_keyroots.push(id);
                    }
                    if heavy_child[p] != Some(id) {
                        h_keyroot_set[id] = true;
                    }
                }
            }
        }
        lr_keyroots.sort_by_key(|&id| tree.node(id).lr_post);
        rl_keyroots.sort_by_key(|&id| tree.node(id).rl_post);

        let h_post = h_postorder(tree, &heavy_child);
        let mut h_keyroots: Vec<NodeId> =
            (0..n).filter(|&id| h_keyroot_set[id]).collect();
        h_keyroots.sort_by_key(|&id| h_post[id]);

        let lr_collapsed_depth =
            collapsed_depth(tree, |id| lr_keyroots.binary_search_by_key(
                &tree.node(id).lr_post, |&k| tree.node(k).lr_post).is_ok());
        let rl_collapsed_depth = collapsed_depth(tree, |id| {
            rl_keyroots
                .binary_search_by_key(&tree.node(id).rl_post, |&k| tree.node(k).rl_post)
                .is_ok()
        });
        let h_collapsed_depth = collapsed_depth(tree, |id| h_keyroot_set[id]);

        StructuralIndex {
            lr_keyroots,
            rl_keyroots,
            h_keyroots,
            heavy_child,
            h_post,
            lr_collapsed_depth,
            rl_collapsed_depth,
            h_collapsed_depth,
        }
    }

    /// Heavy path of the subtree rooted at `top`, from `top` down to a leaf.
    pub fn heavy_path(&self, top: NodeId) -> Vec<NodeId> {
        let mut path = vec![top];
        let mut cur = top;
        while let Some(h) = self.heavy_child[cur] {
            path.push(h);
            cur = h;
        }
        path
    }

    /// Leftmost path of the subtree rooted at `top`.
    pub fn leftmost_path(tree: &Tree, top: NodeId) -> Vec<NodeId> {
        let mut path = vec![top];
        let mut cur = top;
        while let Some(&c) = tree.node(cur).children.first() {
            path.push(c);
            cur = c;
        }
        path
    }

    /// Rightmost path of the subtree rooted at `top`.
    pub fn rightmost_path(tree: &Tree, top: NodeId) -> Vec<NodeId> {
        let mut path = vec![top];
        let mut cur = top;
        while let Some(&c) = tree.node(cur).children.last() {
            path.push(c);
            cur = c;
        }
        path
    }

    pub fn lr_collapsed_depth_of_tree(&self) -> u32 {
        self.lr_collapsed_depth.iter().copied().max().unwrap_or(0)
    }

    pub fn h_collapsed_depth_of_tree(&self) -> u32 {
        self.h_collapsed_depth.iter().copied().max().unwrap_or(0)
    }
}

fn collapsed_depth(tree: &Tree, is_keyroot: impl Fn(NodeId) -> bool) -> Vec<u32> {
    let mut out = vec![0u32; tree.len()];
    // Parents have larger lr_post, so a reverse-LR sweep sees parents first.
    let mut order: Vec<NodeId> = (0..tree.len()).collect();
    order.sort_by_key(|&id| std::cmp::Reverse(tree.node(id).lr_post));
    for id in order {
        if let Some(p) = tree.node(id).parent {
            out[id] = out[p] + if is_keyroot(p) { 1 } else { 0 };
        }
    }
    out
}

/// Numbers every node by the H-postorder walk: climb the heavy path from
/// its leaf, and at each path node first take the node itself, then its
/// right sibling subtrees in LR-postorder, then its left sibling subtrees
/// in RL-postorder. Off-path subtrees are numbered by the same walk around
/// their own position in the enclosing span.
fn h_postorder(tree: &Tree, heavy_child: &[Option<NodeId>]) -> Vec<u32> {
    let mut out = vec![0u32; tree.len()];
    let mut next = 1u32;
    let path = {
        let mut p = vec![tree.root()];
        let mut cur = tree.root();
        while let Some(h) = heavy_child[cur] {
            p.push(h);
            cur = h;
        }
        p
    };
    for (i, &w) in path.iter().enumerate().rev() {
        out[w] = next;
        next += 1;
        if i == 0 {
            break; // root of the walk has no siblings in scope
        }
        let parent = path[i - 1];
        let siblings = &tree.node(parent).children;
        let pos = siblings.iter().position(|&c| c == w).unwrap();
        for &s in &siblings[pos + 1..] {
            for u in tree.subtree_nodes(s) {
                out[u] = next;
                next += 1;
            }
        }
        for &s in siblings[..pos].iter().rev() {
            // RL-postorder of the sibling subtree.
            let mut ids: Vec<NodeId> = tree.subtree_nodes(s).collect();
            ids.sort_by_key(|&u| tree.node(u).rl_post);
            for u in ids {
                out[u] = next;
                next += 1;
            }
        }
    }
    out
}

impl std::fmt::Display for Tree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Renders a node as `label@lr` for edit scripts and diagnostics.
pub fn node_ref(tree: &Tree, id: NodeId) -> String {
    let mut s = String::new();
    let _ = write!(s, "{}@{}", tree.label(id), tree.node(id).lr_post);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        Tree::parse(s).unwrap()
    }

    #[test]
    fn parse_single_node() {
        let tree = t("{a}");
        assert_eq!(tree.len(), 1);
        assert_eq!(tree.label(tree.root()), "a");
    }

    #[test]
    fn parse_two_leaves() {
        let tree = t("{c{a}{b}}");
        assert_eq!(tree.len(), 3);
        let by_lr: Vec<&str> = (1..=3).map(|k| tree.label(tree.by_lr(k))).collect();
        assert_eq!(by_lr, ["a", "b", "c"]);
        let by_rl: Vec<&str> = (1..=3).map(|k| tree.label(tree.by_rl(k))).collect();
        assert_eq!(by_rl, ["b", "a", "c"]);
    }

    #[test]
    fn parse_three_leaves_postorder() {
        let tree = t("{g{d}{e}{f}}");
        let by_lr: Vec<&str> = (1..=4).map(|k| tree.label(tree.by_lr(k))).collect();
        assert_eq!(by_lr, ["d", "e", "f", "g"]);
    }

    #[test]
    fn path_tree_postorders_coincide() {
        let tree = t("{c{b{a}}}");
        for (_, node) in tree.nodes() {
            assert_eq!(node.lr_post, node.rl_post);
        }
        let by_lr: Vec<&str> = (1..=3).map(|k| tree.label(tree.by_lr(k))).collect();
        assert_eq!(by_lr, ["a", "b", "c"]);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            Tree::parse("a}").unwrap_err().kind,
            ParseErrorKind::ExpectedOpen
        );
        assert_eq!(Tree::parse("{}").unwrap_err().kind, ParseErrorKind::EmptyLabel);
        assert_eq!(
            Tree::parse("{a").unwrap_err().kind,
            ParseErrorKind::UnclosedSubtree
        );
        let err = Tree::parse("{a}{b}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::TrailingGarbage);
        assert_eq!(err.offset, 3);
        assert_eq!(
            Tree::parse("{a\\").unwrap_err().kind,
            ParseErrorKind::DanglingEscape
        );
    }

    #[test]
    fn escaped_labels_round_trip() {
        let tree = t("{a\\{b\\}c{x\\\\y}}");
        assert_eq!(tree.label(tree.root()), "a{b}c");
        let reparsed = Tree::parse(&tree.serialize()).unwrap();
        assert_eq!(reparsed, tree);
    }

    #[test]
    fn lr_keyroots_examples() {
        let tree = t("{c{a}{b}}");
        let idx = StructuralIndex::build(&tree);
        let labels: Vec<&str> = idx.lr_keyroots.iter().map(|&k| tree.label(k)).collect();
        assert_eq!(labels, ["b", "c"]);

        let path = t("{c{b{a}}}");
        let idx = StructuralIndex::build(&path);
        assert_eq!(idx.lr_keyroots, vec![path.root()]);

        let tree = t("{g{d}{e}{f}}");
        let idx = StructuralIndex::build(&tree);
        let labels: Vec<&str> = idx.lr_keyroots.iter().map(|&k| tree.label(k)).collect();
        assert_eq!(labels, ["e", "f", "g"]);
    }

    #[test]
    fn heavy_structure_examples() {
        let tree = t("{g{d}{e}{f}}");
        let idx = StructuralIndex::build(&tree);
        let root = tree.root();
        assert_eq!(tree.label(idx.heavy_child[root].unwrap()), "d");
        let mut hk: Vec<&str> = idx.h_keyroots.iter().map(|&k| tree.label(k)).collect();
        hk.sort();
        assert_eq!(hk, ["e", "f", "g"]);
        let hp: Vec<&str> = idx.heavy_path(root).iter().map(|&k| tree.label(k)).collect();
        assert_eq!(hp, ["g", "d"]);

        let tree = t("{r{a{x}{y}}{b}}");
        let idx = StructuralIndex::build(&tree);
        let root = tree.root();
        let a = tree.node(root).children[0];
        assert_eq!(tree.label(idx.heavy_child[root].unwrap()), "a");
        assert_eq!(tree.label(idx.heavy_child[a].unwrap()), "x");
        let mut hk: Vec<&str> = idx.h_keyroots.iter().map(|&k| tree.label(k)).collect();
        hk.sort();
        assert_eq!(hk, ["b", "r", "y"]);
    }

    #[test]
    fn collapsed_depth_examples() {
        let tree = t("{c{a}{b}}");
        let idx = StructuralIndex::build(&tree);
        assert_eq!(idx.lr_collapsed_depth_of_tree(), 1);

        // Path tree: only the root is an LR-keyroot.
        let mut s = String::from("{a}");
        for _ in 0..30 {
            s = format!("{{a{s}}}");
        }
        let path = t(&s);
        let idx = StructuralIndex::build(&path);
        assert_eq!(idx.lr_collapsed_depth_of_tree(), 1);

        // Complete binary tree on 7 nodes: H-collapsed depth <= log2(7).
        let bin = t("{a{b{c}{d}}{e{f}{g}}}");
        let idx = StructuralIndex::build(&bin);
        assert!(idx.h_collapsed_depth_of_tree() <= 2);
    }

    #[test]
    fn subtree_size_matches_lr_span() {
        let tree = t("{r{a{x}{y}}{b}{c{z}}}");
        for (_, node) in tree.nodes() {
            let ll = tree.node(node.leftmost_leaf);
            assert_eq!(node.lr_post - ll.lr_post + 1, node.subtree_size);
        }
    }

    #[test]
    fn mirror_swaps_postorders() {
        let tree = t("{r{a{x}{y}}{b}}");
        let m = tree.mirror();
        for (id, node) in tree.nodes() {
            assert_eq!(node.lr_post, m.node(id).rl_post);
            assert_eq!(node.rl_post, m.node(id).lr_post);
        }
    }
}
