// District assignments with cached tallies, and balanced seed plans.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::tree::{balanced_cuts, random_spanning_tree, subtree_nodes};
use super::{ChainError, Geography, Party};
use crate::election::{DistrictResult, Election};
use crate::rational::{half, is_half, ratio, Rational};

/// Spanning trees tried per carved district, and full restarts.
const SEED_TREES: usize = 100;
const SEED_RESTARTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    districts: usize,
    pop: Vec<u64>,
    a: Vec<u64>,
    b: Vec<u64>,
}

impl Partition {
    pub fn new(g: &Geography, assignment: Vec<usize>, districts: usize) -> Result<Self, ChainError> {
        if assignment.len() != g.len() {
            return Err(ChainError::InvalidPlan(format!("{} assignments for {} nodes", assignment.len(), g.len())));
        }
        if let Some(i) = assignment.iter().position(|&d| d >= districts) {
            return Err(ChainError::InvalidPlan(format!("node {i} assigned to district {} of {districts}", assignment[i])));
        }
        let mut p = Self { assignment, districts, pop: vec![0; districts], a: vec![0; districts], b: vec![0; districts] };
        p.retally(g);
        if let Some(d) = p.pop.iter().position(|&x| x == 0) {
            return Err(ChainError::InvalidPlan(format!("district {d} is empty")));
        }
        Ok(p)
    }

    fn retally(&mut self, g: &Geography) {
        let (pop, a, b) = tally(g, &self.assignment, self.districts);
        self.pop = pop;
        self.a = a;
        self.b = b;
    }

    pub(crate) fn reassign(&mut self, g: &Geography, nodes: &[usize], district: usize) {
        for &i in nodes {
            let old = self.assignment[i];
            let n = g.nodes()[i];
            self.pop[old] -= n.pop;
            self.a[old] -= n.a;
            self.b[old] -= n.b;
            self.assignment[i] = district;
            self.pop[district] += n.pop;
            self.a[district] += n.a;
            self.b[district] += n.b;
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn districts(&self) -> usize {
        self.districts
    }

    pub fn population(&self, d: usize) -> u64 {
        self.pop[d]
    }

    /// (party A votes, party B votes) in district `d`.
    pub fn votes(&self, d: usize) -> (u64, u64) {
        (self.a[d], self.b[d])
    }

    /// Cached tallies equal a fresh count from the assignment.
    pub fn tallies_consistent(&self, g: &Geography) -> bool {
        tally(g, &self.assignment, self.districts) == (self.pop.clone(), self.a.clone(), self.b.clone())
    }

    pub fn is_connected(&self, g: &Geography) -> bool {
        (0..self.districts).all(|d| {
            let members: Vec<usize> = (0..g.len()).filter(|&i| self.assignment[i] == d).collect();
            connected_within(g, &members, |i| self.assignment[i] == d)
        })
    }

    /// Largest |population − ideal| / ideal over districts.
    pub fn max_deviation(&self, g: &Geography) -> Rational {
        let total = g.total_population() as i64;
        let k = self.districts as i64;
        self.pop
            .iter()
            .map(|&p| ratio((p as i64 * k - total).abs(), total))
            .max()
            .expect("at least one district")
    }

    pub fn check(&self, g: &Geography, deviation: &Rational) -> Result<(), ChainError> {
        if !self.tallies_consistent(g) {
            return Err(ChainError::InvalidPlan("cached tallies differ from the assignment".into()));
        }
        if !self.is_connected(g) {
            return Err(ChainError::InvalidPlan("a district is not connected".into()));
        }
        let dev = self.max_deviation(g);
        if dev > *deviation {
            return Err(ChainError::InvalidPlan(format!("population deviation {} exceeds the bound", crate::rational::Exact(&dev))));
        }
        Ok(())
    }

    /// District results from `party`'s side under equal turnout. A district
    /// with tied votes is won by party B.
    pub fn election(&self, party: Party) -> Election {
        let districts = (0..self.districts)
            .map(|d| {
                let (mine, theirs) = match party {
                    Party::A => (self.a[d] as i64, self.b[d] as i64),
                    Party::B => (self.b[d] as i64, self.a[d] as i64),
                };
                let share = if mine + theirs == 0 { half() } else { ratio(mine, mine + theirs) };
                let flag = is_half(&share).then_some(party == Party::B);
                DistrictResult::new(share, flag).expect("vote shares lie in [0, 1]")
            })
            .collect();
        Election::new(districts, None).expect("at least one district")
    }

    pub fn seats_won(&self, party: Party) -> usize {
        (0..self.districts)
            .filter(|&d| match party {
                Party::A => self.a[d] > self.b[d],
                Party::B => self.b[d] >= self.a[d],
            })
            .count()
    }
}

fn tally(g: &Geography, assignment: &[usize], districts: usize) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut pop = vec![0; districts];
    let mut a = vec![0; districts];
    let mut b = vec![0; districts];
    for (i, &d) in assignment.iter().enumerate() {
        let n = g.nodes()[i];
        pop[d] += n.pop;
        a[d] += n.a;
        b[d] += n.b;
    }
    (pop, a, b)
}

pub(crate) fn connected_within(g: &Geography, members: &[usize], inside: impl Fn(usize) -> bool) -> bool {
    let Some(&start) = members.first() else { return false };
    let mut seen = vec![false; g.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if !seen[v] && inside(v) {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == members.len()
}

/// Population window for a piece that will hold `k` districts.
pub(crate) fn window(total: u64, districts: usize, k: usize, deviation: &Rational) -> (Rational, Rational) {
    let ideal = ratio(total as i64, districts as i64);
    let k = Rational::from_integer((k as i64).into());
    let one = Rational::from_integer(1.into());
    (&ideal * &k * (&one - deviation), &ideal * &k * (one + deviation))
}

/// Balanced plan built by carving districts off spanning trees one at a
/// time: each cut leaves a district within the deviation bound and a
/// remainder within the bound scaled to the districts it will still hold.
/// A dead end restarts from scratch.
pub fn seed_partition(g: &Geography, districts: usize, deviation: &Rational, rng: &mut ChaCha8Rng) -> Result<Partition, ChainError> {
    if districts < 1 || districts > g.len() {
        return Err(ChainError::Setup(format!("cannot split {} nodes into {districts} districts", g.len())));
    }
    let total = g.total_population();
    for _ in 0..SEED_RESTARTS {
        if let Some(assignment) = carve(g, districts, total, deviation, rng) {
            let p = Partition::new(g, assignment, districts)?;
            p.check(g, deviation)?;
            return Ok(p);
        }
    }
    Err(ChainError::Setup(format!(
        "no plan with {districts} districts within the population bound after {SEED_RESTARTS} attempts"
    )))
}

fn carve(g: &Geography, districts: usize, total: u64, deviation: &Rational, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let mut assignment = vec![0; g.len()];
    let mut rest: Vec<usize> = (0..g.len()).collect();
    let (lo1, hi1) = window(total, districts, 1, deviation);
    for id in 0..districts - 1 {
        let left = districts - id - 1;
        let (lo2, hi2) = window(total, districts, left, deviation);
        let mut inside = vec![false; g.len()];
        for &i in &rest {
            inside[i] = true;
        }
        let piece_pop: u64 = rest.iter().map(|&i| g.nodes()[i].pop).sum();
        let fits = |p: u64| {
            let (p1, p2) = (Rational::from_integer((p as i64).into()), Rational::from_integer(((piece_pop - p) as i64).into()));
            lo1 <= p1 && p1 <= hi1 && lo2 <= p2 && p2 <= hi2
        };
        let mut carved = None;
        for _ in 0..SEED_TREES {
            let parent = random_spanning_tree(g, &rest, &inside, rng);
            let cuts = balanced_cuts(g, &rest, &parent, fits);
            if !cuts.is_empty() {
                carved = Some(subtree_nodes(&rest, &parent, cuts[rng.random_range(0..cuts.len())]));
                break;
            }
        }
        let side = carved?;
        for &i in &side {
            assignment[i] = id;
            inside[i] = false;
        }
        rest.retain(|&i| inside[i]);
    }
    for &i in &rest {
        assignment[i] = districts - 1;
    }
    Some(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{synth_geography, GeographyKind};
    use rand::SeedableRng;

    #[test]
    fn seed_plan_is_valid() {
        let g = synth_geography(GeographyKind::Uniform, 10, 10, &half(), 1).unwrap();
        let dev = ratio(1, 20);
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = seed_partition(&g, 5, &dev, &mut rng).unwrap();
            p.check(&g, &dev).unwrap();
            assert_eq!(p.election(Party::A).seats_won(), p.seats_won(Party::A));
            assert_eq!(p.election(Party::B).seats_won(), p.seats_won(Party::B));
        }
    }

    #[test]
    fn tied_district_goes_to_b() {
        let nodes = vec![super::super::Node { pop: 2, a: 1, b: 1 }, super::super::Node { pop: 2, a: 2, b: 0 }];
        let g = Geography::new(nodes, vec![(0, 1)], None).unwrap();
        let p = Partition::new(&g, vec![0, 1], 2).unwrap();
        assert_eq!(p.seats_won(Party::A), 1);
        assert_eq!(p.seats_won(Party::B), 1);
        assert_eq!(p.election(Party::A).seats_won(), 1);
        assert_eq!(p.election(Party::B).seats_won(), 1);
    }
}
