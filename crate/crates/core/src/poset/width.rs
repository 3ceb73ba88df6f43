// Width by Dilworth duality: a maximum matching in the split graph
// (left copy of x joined to right copy of y whenever x < y) gives a minimum
// chain cover of n - |M| chains, and Koenig's vertex cover yields an
// antichain of the same size.

use std::collections::VecDeque;

use super::Poset;

const FREE: usize = usize::MAX;

/// Returns the width and a maximum antichain (ascending indices).
pub fn width_and_antichain(p: &Poset) -> (usize, Vec<usize>) {
    let n = p.len();
    if n == 0 {
        return (0, Vec::new());
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|x| p.above(x).collect()).collect();
    let (match_left, match_right) = hopcroft_karp(n, &adj);
    let matched = match_left.iter().filter(|&&m| m != FREE).count();

    // Alternating reachability from free left vertices.
    let mut left_seen = vec![false; n];
    let mut right_seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| match_left[x] == FREE).collect();
    for &x in &queue {
        left_seen[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !right_seen[y] {
                right_seen[y] = true;
                let back = match_right[y];
                if back != FREE && !left_seen[back] {
                    left_seen[back] = true;
                    queue.push_back(back);
                }
            }
        }
    }
    let antichain: Vec<usize> = (0..n).filter(|&x| left_seen[x] && !right_seen[x]).collect();
    assert_eq!(antichain.len(), n - matched, "Koenig antichain must match the chain cover");
    (antichain.len(), antichain)
}

fn hopcroft_karp(n: usize, adj: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let mut match_left = vec![FREE; n];
    let mut match_right = vec![FREE; n];
    let mut dist = vec![0usize; n];
    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for x in 0..n {
            if match_left[x] == FREE {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                let back = match_right[y];
                if back == FREE {
                    found = true;
                } else if dist[back] == usize::MAX {
                    dist[back] = dist[x] + 1;
                    queue.push_back(back);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n];
        for x in 0..n {
            if match_left[x] == FREE {
                augment(x, adj, &mut match_left, &mut match_right, &mut dist, &mut it);
            }
        }
    }
    (match_left, match_right)
}

fn augment(
    x: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    // Iterative DFS along the BFS layers.
    let mut stack = vec![x];
    while let Some(&u) = stack.last() {
        if it[u] == adj[u].len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let y = adj[u][it[u]];
        it[u] += 1;
        let back = match_right[y];
        if back == FREE {
            // Flip the path recorded on the stack.
            let mut y = y;
            while let Some(u) = stack.pop() {
                let prev = match_left[u];
                match_left[u] = y;
                match_right[y] = u;
                y = prev;
            }
            return true;
        }
        if dist[back] == dist[u].wrapping_add(1) {
            stack.push(back);
        }
    }
    false
}

/// Exhaustive maximum antichain size, for small posets only.
pub fn brute_force_width(p: &Poset) -> usize {
    let n = p.len();
    assert!(n <= 20, "brute force width is exponential");
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let ok = members
            .iter()
            .enumerate()
            .all(|(i, &x)| members[i + 1..].iter().all(|&y| p.incomparable(x, y)));
        if ok {
            best = size;
        }
    }
    best
}
