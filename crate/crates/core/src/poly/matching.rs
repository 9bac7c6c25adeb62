use serde::Serialize;

/// Maximum bipartite matching with, when the left side cannot be saturated,
/// a set of left vertices whose neighbourhood is strictly smaller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    /// Matched `(left, right)` pairs, sorted by left vertex.
    pub pairs: Vec<(usize, usize)>,
    pub saturating: bool,
    /// Sorted left vertices `A` with `|N(A)| < |A|`; present iff not saturating.
    pub violator: Option<Vec<usize>>,
}

/// Kuhn's augmenting-path matching on `adj` (left vertex to right neighbours,
/// right vertices numbered `0..right_count`).
pub fn matching_with_witness(adj: &[Vec<usize>], right_count: usize) -> MatchingResult {
    let mut match_left: Vec<Option<usize>> = vec![None; adj.len()];
    let mut match_right: Vec<Option<usize>> = vec![None; right_count];
    for x in 0..adj.len() {
        let mut seen = vec![false; right_count];
        augment(adj, x, &mut seen, &mut match_left, &mut match_right);
    }
    let pairs: Vec<(usize, usize)> = match_left
        .iter()
        .enumerate()
        .filter_map(|(x, m)| m.map(|y| (x, y)))
        .collect();
    let saturating = pairs.len() == adj.len();
    let violator = (!saturating).then(|| hall_violator(adj, &match_left, &match_right));
    MatchingResult { pairs, saturating, violator }
}

fn augment(
    adj: &[Vec<usize>],
    x: usize,
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &y in &adj[x] {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        let free = match match_right[y] {
            None => true,
            Some(z) => augment(adj, z, seen, match_left, match_right),
        };
        if free {
            match_left[x] = Some(y);
            match_right[y] = Some(x);
            return true;
        }
    }
    false
}

// Left vertices reachable from unmatched ones along alternating paths. With a
// maximum matching every right vertex reached is matched back into the set,
// so the set has exactly as many matched members as neighbours plus at least
// one unmatched member.
fn hall_violator(
    adj: &[Vec<usize>],
    match_left: &[Option<usize>],
    match_right: &[Option<usize>],
) -> Vec<usize> {
    let mut in_set = vec![false; adj.len()];
    let mut seen_right = vec![false; match_right.len()];
    let mut stack: Vec<usize> = (0..adj.len()).filter(|&x| match_left[x].is_none()).collect();
    for &x in &stack {
        in_set[x] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if seen_right[y] {
                continue;
            }
            seen_right[y] = true;
            let z = match_right[y].expect("maximum matching leaves no augmenting path");
            if !in_set[z] {
                in_set[z] = true;
                stack.push(z);
            }
        }
    }
    (0..adj.len()).filter(|&x| in_set[x]).collect()
}

/// Union of the neighbourhoods of `set`, sorted.
pub fn neighborhood(adj: &[Vec<usize>], set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().flat_map(|&x| adj[x].iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}
