// Uniform spanning trees on induced subgraphs and their balanced cuts.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::Geography;

pub(crate) const NO_PARENT: usize = usize::MAX;

/// Wilson's algorithm on the subgraph induced by `members`. Returns a parent
/// array indexed by node; the root and non-members hold [`NO_PARENT`].
pub(crate) fn random_spanning_tree(g: &Geography, members: &[usize], inside: &[bool], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let local: Vec<Vec<usize>> = (0..g.len())
        .map(|u| if inside[u] { g.neighbors(u).iter().copied().filter(|&v| inside[v]).collect() } else { Vec::new() })
        .collect();
    let mut in_tree = vec![false; g.len()];
    let mut next = vec![NO_PARENT; g.len()];
    let root = members[rng.random_range(0..members.len())];
    in_tree[root] = true;
    for &start in members {
        let mut u = start;
        while !in_tree[u] {
            let nb = &local[u];
            next[u] = nb[rng.random_range(0..nb.len())];
            u = next[u];
        }
        u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    next
}

// Members ordered so every node appears after its parent.
fn top_down(members: &[usize], parent: &[usize]) -> Vec<usize> {
    let mut children: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    let mut root = members[0];
    for &u in members {
        if parent[u] == NO_PARENT {
            root = u;
        } else {
            children.entry(parent[u]).or_default().push(u);
        }
    }
    let mut order = vec![root];
    let mut k = 0;
    while k < order.len() {
        if let Some(c) = children.get(&order[k]) {
            order.extend(c);
        }
        k += 1;
    }
    order
}

/// Non-root nodes whose subtree population satisfies `fits`. Cutting the
/// edge to such a node's parent splits the tree into two connected pieces.
pub(crate) fn balanced_cuts(g: &Geography, members: &[usize], parent: &[usize], fits: impl Fn(u64) -> bool) -> Vec<usize> {
    let order = top_down(members, parent);
    let mut sub = vec![0u64; g.len()];
    for &u in order.iter().rev() {
        sub[u] += g.nodes()[u].pop;
        if parent[u] != NO_PARENT {
            sub[parent[u]] += sub[u];
        }
    }
    let mut cuts: Vec<usize> = members.iter().copied().filter(|&u| parent[u] != NO_PARENT && fits(sub[u])).collect();
    cuts.sort_unstable();
    cuts
}

/// The subtree hanging from `cut`, sorted.
pub(crate) fn subtree_nodes(members: &[usize], parent: &[usize], cut: usize) -> Vec<usize> {
    let order = top_down(members, parent);
    let mut below = std::collections::HashSet::from([cut]);
    let mut out = vec![cut];
    for &u in &order {
        if u != cut && parent[u] != NO_PARENT && below.contains(&parent[u]) {
            below.insert(u);
            out.push(u);
        }
    }
    out.sort_unstable();
    out
}
