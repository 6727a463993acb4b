//! Augmenting-path bipartite matching.

const FREE: usize = usize::MAX;

/// Maximum matching of the left side into the right side.
///
/// `adj[l]` lists the right vertices adjacent to left vertex `l`; they are
/// tried in the given order and left vertices are processed in index order,
/// so the result is deterministic. Returns `mate[l]` (`None` if unmatched).
pub fn max_matching(adj: &[Vec<usize>], right_len: usize) -> Vec<Option<usize>> {
    let mut owner = vec![FREE; right_len];
    let mut mate = vec![FREE; adj.len()];
    let mut seen = vec![0usize; right_len];
    for l in 0..adj.len() {
        augment(l, adj, &mut owner, &mut mate, &mut seen, l + 1);
    }
    mate.into_iter().map(|m| (m != FREE).then_some(m)).collect()
}

/// Matches every left vertex, or returns `None` if no such matching exists.
pub fn saturating_matching(adj: &[Vec<usize>], right_len: usize) -> Option<Vec<usize>> {
    let mut owner = vec![FREE; right_len];
    let mut mate = vec![FREE; adj.len()];
    let mut seen = vec![0usize; right_len];
    for l in 0..adj.len() {
        if !augment(l, adj, &mut owner, &mut mate, &mut seen, l + 1) {
            return None;
        }
    }
    Some(mate)
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    owner: &mut [usize],
    mate: &mut [usize],
    seen: &mut [usize],
    stamp: usize,
) -> bool {
    for &r in &adj[l] {
        if seen[r] == stamp {
            continue;
        }
        seen[r] = stamp;
        if owner[r] == FREE || augment(owner[r], adj, owner, mate, seen, stamp) {
            owner[r] = l;
            mate[l] = r;
            return true;
        }
    }
    false
}
