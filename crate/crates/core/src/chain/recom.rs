// One recombination move.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::partition::window;
use super::tree::{balanced_cuts, random_spanning_tree, subtree_nodes};
use super::{Geography, Partition};
use crate::rational::Rational;

/// Spanning trees drawn per move before the chain stays put.
pub const MAX_TREE_DRAWS: usize = 50;

/// Picks a cut edge uniformly, merges the two districts it joins, draws a
/// uniform spanning tree of the union and splits it at a uniformly chosen
/// balanced edge. After [`MAX_TREE_DRAWS`] trees without a balanced edge the
/// current plan is returned unchanged.
pub fn recom_step(p: &Partition, g: &Geography, deviation: &Rational, rng: &mut ChaCha8Rng) -> Partition {
    let assign = p.assignment();
    let cut: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(u, v)| assign[u] != assign[v]).collect();
    if cut.is_empty() {
        return p.clone();
    }
    let (u, v) = cut[rng.random_range(0..cut.len())];
    let (d1, d2) = (assign[u], assign[v]);
    let members: Vec<usize> = (0..g.len()).filter(|&i| assign[i] == d1 || assign[i] == d2).collect();
    let mut inside = vec![false; g.len()];
    for &i in &members {
        inside[i] = true;
    }
    let union_pop = p.population(d1) + p.population(d2);
    let (lo, hi) = window(g.total_population(), p.districts(), 1, deviation);
    let fits = |x: u64| {
        let (a, b) = (Rational::from_integer((x as i64).into()), Rational::from_integer(((union_pop - x) as i64).into()));
        lo <= a && a <= hi && lo <= b && b <= hi
    };
    for _ in 0..MAX_TREE_DRAWS {
        let parent = random_spanning_tree(g, &members, &inside, rng);
        let cuts = balanced_cuts(g, &members, &parent, fits);
        if cuts.is_empty() {
            continue;
        }
        let side = subtree_nodes(&members, &parent, cuts[rng.random_range(0..cuts.len())]);
        let mut in_side = vec![false; g.len()];
        for &i in &side {
            in_side[i] = true;
        }
        let rest: Vec<usize> = members.iter().copied().filter(|&i| !in_side[i]).collect();
        let mut next = p.clone();
        next.reassign(g, &side, d1);
        next.reassign(g, &rest, d2);
        return next;
    }
    p.clone()
}
