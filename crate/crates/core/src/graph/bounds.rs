use super::{complement, Graph, GraphError};

pub const DEFAULT_ALPHA_LIMIT: usize = 24;
pub const DEFAULT_CLIQUE_COVER_LIMIT: usize = 18;

/// A vertex coloring. `class_of[v]` is in `0..num_colors` and every color is
/// used at least once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    class_of: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    /// Relabels colors to `0..c` in order of first appearance.
    pub fn new(class_of: Vec<usize>) -> Self {
        let mut relabel = std::collections::HashMap::new();
        let class_of: Vec<usize> = class_of
            .into_iter()
            .map(|c| {
                let next = relabel.len();
                *relabel.entry(c).or_insert(next)
            })
            .collect();
        Coloring {
            num_colors: relabel.len(),
            class_of,
        }
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// `Ok` iff no edge of `g` joins two vertices of one class; otherwise the
    /// first offending edge.
    pub fn check_proper(&self, g: &Graph) -> Result<(), (usize, usize)> {
        match g
            .edges()
            .into_iter()
            .find(|&(i, j)| self.class_of[i] == self.class_of[j])
        {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Checks that every class is a clique of `g`, i.e. the coloring is
    /// proper on the complement.
    pub fn check_clique_cover(&self, g: &Graph) -> Result<(), GraphError> {
        if self.n() != g.n() {
            return Err(GraphError::Shape(format!(
                "coloring of {} vertices for a graph on {}",
                self.n(),
                g.n()
            )));
        }
        self.check_proper(&complement(g))
            .map_err(|(i, j)| GraphError::ImproperOnComplement(i, j))
    }
}

fn check_limit(n: usize, limit: usize) -> Result<(), GraphError> {
    if n > limit || n > 64 {
        Err(GraphError::InstanceTooLarge { n, limit })
    } else {
        Ok(())
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbor_mask(v)).collect()
}

/// Upper bound on the independence number of the vertices in `cand`: the
/// number of cliques in a greedy clique partition.
fn clique_partition_bound(adj: &[u64], mut cand: u64) -> usize {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        let mut common = adj[v] & cand;
        while common != 0 {
            let u = common.trailing_zeros() as usize;
            cand &= !(1 << u);
            common &= adj[u] & !(1 << u);
        }
        cliques += 1;
    }
    cliques
}

fn mis_search(adj: &[u64], cand: u64, chosen: u64, best: &mut u64) {
    let size = chosen.count_ones() as usize;
    if cand == 0 {
        if size > best.count_ones() as usize {
            *best = chosen;
        }
        return;
    }
    if size + clique_partition_bound(adj, cand) <= best.count_ones() as usize {
        return;
    }
    // isolated vertices (within cand) always join
    let mut isolated = 0u64;
    let mut pivot = 0usize;
    let mut pivot_deg = 0u32;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & cand).count_ones();
        if d == 0 {
            isolated |= 1 << v;
        } else if d > pivot_deg {
            pivot = v;
            pivot_deg = d;
        }
    }
    if isolated != 0 {
        mis_search(adj, cand & !isolated, chosen | isolated, best);
        return;
    }
    let bit = 1u64 << pivot;
    mis_search(adj, cand & !adj[pivot] & !bit, chosen | bit, best);
    mis_search(adj, cand & !bit, chosen, best);
}

/// A maximum independent set, by branch-and-bound pivoting on the
/// highest-degree remaining vertex.
pub fn maximum_independent_set(g: &Graph, limit: usize) -> Result<Vec<usize>, GraphError> {
    check_limit(g.n(), limit)?;
    let adj = masks(g);
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut best = 0u64;
    mis_search(&adj, all, 0, &mut best);
    Ok((0..g.n()).filter(|v| best >> v & 1 == 1).collect())
}

/// Size of a maximum independent set, for `n <= 24`.
pub fn independence_number(g: &Graph) -> Result<usize, GraphError> {
    maximum_independent_set(g, DEFAULT_ALPHA_LIMIT).map(|s| s.len())
}

/// Backtracking k-coloring with DSATUR vertex selection. `classes[c]` holds
/// the members of color `c`.
fn color_with(adj: &[u64], n: usize, k: usize, classes: &mut Vec<u64>, colored: u64) -> bool {
    if colored.count_ones() as usize == n {
        return true;
    }
    // most saturated uncolored vertex, ties by degree then index
    let mut pick = usize::MAX;
    let mut key = (0usize, 0u32);
    for (v, &nb) in adj.iter().enumerate().take(n) {
        if colored >> v & 1 == 1 {
            continue;
        }
        let sat = classes.iter().filter(|&&c| c & nb != 0).count();
        let k2 = (sat, nb.count_ones());
        if pick == usize::MAX || k2 > key {
            pick = v;
            key = k2;
        }
    }
    let v = pick;
    let used = classes.len();
    for c in 0..used {
        if classes[c] & adj[v] == 0 {
            classes[c] |= 1 << v;
            if color_with(adj, n, k, classes, colored | 1 << v) {
                return true;
            }
            classes[c] &= !(1 << v);
        }
    }
    if used < k {
        classes.push(1 << v);
        if color_with(adj, n, k, classes, colored | 1 << v) {
            return true;
        }
        classes.pop();
    }
    false
}

fn coloring_from_classes(n: usize, classes: &[u64]) -> Coloring {
    let mut class_of = vec![0; n];
    for (c, &members) in classes.iter().enumerate() {
        for (v, slot) in class_of.iter_mut().enumerate() {
            if members >> v & 1 == 1 {
                *slot = c;
            }
        }
    }
    Coloring::new(class_of)
}

/// Minimum clique cover of `g` (the chromatic number of its complement) with
/// a witnessing coloring of the complement, for `n <= 18`.
pub fn clique_cover_exact(g: &Graph) -> Result<(usize, Coloring), GraphError> {
    clique_cover_exact_with_limit(g, DEFAULT_CLIQUE_COVER_LIMIT)
}

pub fn clique_cover_exact_with_limit(g: &Graph, limit: usize) -> Result<(usize, Coloring), GraphError> {
    check_limit(g.n(), limit)?;
    let n = g.n();
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let (greedy_c, greedy) = greedy_clique_cover(g);
    // cliques of the complement are independent sets of g
    let lower = maximum_independent_set(g, limit.max(n))?.len();
    let adj = masks(&complement(g));
    for k in lower..greedy_c {
        let mut classes = Vec::new();
        if color_with(&adj, n, k, &mut classes, 0) {
            return Ok((k, coloring_from_classes(n, &classes)));
        }
    }
    Ok((greedy_c, greedy))
}

/// Greedy coloring of the complement: vertices in descending complement
/// degree (ties by index), each taking the smallest admissible color.
pub fn greedy_clique_cover(g: &Graph) -> (usize, Coloring) {
    let n = g.n();
    let co_degree = |v: usize| n - 1 - g.degree(v);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(co_degree(v)), v));
    let mut class_of = vec![usize::MAX; n];
    let mut class_members: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        // v may join a class only if it is adjacent in g to every member
        let c = class_members
            .iter()
            .position(|members| members.iter().all(|&u| g.has_edge(u, v)))
            .unwrap_or(class_members.len());
        if c == class_members.len() {
            class_members.push(Vec::new());
        }
        class_members[c].push(v);
        class_of[v] = c;
    }
    let coloring = Coloring::new(class_of);
    (coloring.num_colors(), coloring)
}
