//! Exhaustive reference values for small graphs.
//!
//! Deliberately shares nothing with the main search: plain boolean adjacency,
//! cliques found by scanning all vertex subsets, and every partition of the
//! edge set into cliques visited without pruning. Any valid clique multiset
//! is such a partition plus singletons, and for a fixed partition the fewest
//! singletons are `Σ_x max(0, 2 - c(x))`, so the minimum over partitions is
//! exactly v(G).

use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_ORACLE_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices; the exhaustive oracle is capped at {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Minima {
    full: usize,
    reduced: usize,
}

/// v(G) by exhaustive enumeration.
pub fn brute_force_v(g: &Graph, cap: usize) -> Result<usize, OracleError> {
    Ok(exhaust(g, cap)?.full)
}

/// v̄(G) by exhaustive enumeration.
pub fn brute_force_reduced_v(g: &Graph, cap: usize) -> Result<usize, OracleError> {
    Ok(exhaust(g, cap)?.reduced)
}

#[allow(clippy::needless_range_loop)]
fn exhaust(g: &Graph, cap: usize) -> Result<Minima, OracleError> {
    let n = g.n();
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                adj[a][b] = true;
                adj[b][a] = true;
                edges.push((a, b));
            }
        }
    }
    // Every clique with at least two members, as (members, edge indices).
    let mut cliques: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.len() < 2 {
            continue;
        }
        let ok = members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| adj[a][b]));
        if ok {
            let idx = edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| members.contains(&a) && members.contains(&b))
                .map(|(i, _)| i)
                .collect();
            cliques.push((members, idx));
        }
    }

    let mut covered = vec![false; edges.len()];
    let mut count = vec![0usize; n];
    let mut parts = 0usize;
    let mut best = Minima {
        full: usize::MAX,
        reduced: usize::MAX,
    };
    partitions(&cliques, &mut covered, &mut count, &mut parts, &mut best);
    Ok(best)
}

fn partitions(
    cliques: &[(Vec<usize>, Vec<usize>)],
    covered: &mut Vec<bool>,
    count: &mut Vec<usize>,
    parts: &mut usize,
    best: &mut Minima,
) {
    let Some(first) = covered.iter().position(|&c| !c) else {
        let singletons: usize = count.iter().map(|&c| 2usize.saturating_sub(c)).sum();
        best.full = best.full.min(*parts + singletons);
        best.reduced = best.reduced.min(*parts);
        return;
    };
    for (members, idx) in cliques {
        if !idx.contains(&first) || idx.iter().any(|&e| covered[e]) {
            continue;
        }
        for &e in idx {
            covered[e] = true;
        }
        for &x in members {
            count[x] += 1;
        }
        *parts += 1;
        partitions(cliques, covered, count, parts, best);
        *parts -= 1;
        for &x in members {
            count[x] -= 1;
        }
        for &e in idx {
            covered[e] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn reference_values() {
        assert_eq!(brute_force_v(&path(3), DEFAULT_ORACLE_CAP).unwrap(), 4);
        assert_eq!(brute_force_v(&paw(), DEFAULT_ORACLE_CAP).unwrap(), 5);
        assert_eq!(brute_force_v(&complete(4), DEFAULT_ORACLE_CAP).unwrap(), 4);
        assert_eq!(brute_force_v(&diamond(), DEFAULT_ORACLE_CAP).unwrap(), 4);
        assert_eq!(brute_force_v(&bowtie(), DEFAULT_ORACLE_CAP).unwrap(), 6);
        assert_eq!(brute_force_v(&complete(1), DEFAULT_ORACLE_CAP).unwrap(), 2);
        assert_eq!(brute_force_v(&empty(0), DEFAULT_ORACLE_CAP).unwrap(), 0);
        assert_eq!(
            brute_force_reduced_v(&diamond(), DEFAULT_ORACLE_CAP).unwrap(),
            3
        );
        assert_eq!(
            brute_force_reduced_v(&complete(5), DEFAULT_ORACLE_CAP).unwrap(),
            1
        );
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            brute_force_v(&cycle(8), DEFAULT_ORACLE_CAP),
            Err(OracleError::CapExceeded { n: 8, cap: 7 })
        );
    }
}
