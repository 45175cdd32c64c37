//! Minimum hitting sets (vertex covers of hypergraphs) by branch and bound.

/// A smallest set of vertices meeting every edge. Edges must be nonempty.
pub fn min_hitting_set(n: usize, edges: &[Vec<usize>]) -> Vec<usize> {
    let masks: Vec<u128> = edges.iter().map(|e| e.iter().fold(0u128, |m, &v| m | 1 << v)).collect();
    assert!(n <= 128, "hitting set search supports at most 128 vertices");
    assert!(masks.iter().all(|&m| m != 0), "empty edge");
    let mut best: u128 = (0..n).fold(0, |m, v| m | 1 << v);
    let mut best_size = n + 1;
    search(&masks, 0, 0, &mut best, &mut best_size);
    (0..n).filter(|&v| best >> v & 1 == 1).collect()
}

fn lower_bound(masks: &[u128], chosen: u128) -> usize {
    let mut used = 0u128;
    let mut k = 0;
    for &m in masks {
        if m & chosen == 0 && m & used == 0 {
            used |= m;
            k += 1;
        }
    }
    k
}

fn search(masks: &[u128], chosen: u128, size: usize, best: &mut u128, best_size: &mut usize) {
    if size + lower_bound(masks, chosen) >= *best_size {
        return;
    }
    let open = masks.iter().filter(|&&m| m & chosen == 0).min_by_key(|m| m.count_ones());
    let Some(&edge) = open else {
        *best = chosen;
        *best_size = size;
        return;
    };
    let mut rest = edge;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        search(masks, chosen | 1 << v, size + 1, best, best_size);
    }
}
