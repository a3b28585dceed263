/// Greedy clique search on a symmetric distance matrix: the largest set of
/// indices found whose pairwise distances are all `≤ eps`.
///
/// Each index seeds one candidate; the remaining indices are offered in order
/// of increasing distance from the seed (ties by index) and kept when they are
/// within `eps` of every member. The largest candidate wins, earliest seed on
/// ties. The result is sorted ascending.
pub(crate) fn greedy_cluster(dist: &[Vec<f64>], eps: f64) -> Vec<usize> {
    let n = dist.len();
    let mut best: Vec<usize> = Vec::new();
    for seed in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&j| j != seed).collect();
        order.sort_by(|&a, &b| dist[seed][a].total_cmp(&dist[seed][b]).then(a.cmp(&b)));
        let mut chosen = vec![seed];
        for j in order {
            if dist[seed][j] > eps {
                break;
            }
            if chosen.iter().all(|&k| dist[k][j] <= eps) {
                chosen.push(j);
            }
        }
        if chosen.len() > best.len() {
            best = chosen;
        }
    }
    best.sort_unstable();
    best
}

/// Largest entry of `dist` over pairs drawn from `members`.
pub(crate) fn diameter(dist: &[Vec<f64>], members: &[usize]) -> f64 {
    let mut d = 0.0f64;
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            d = d.max(dist[a][b]);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_tight_group() {
        let pts = [0.0, 10.0, 0.3, 0.1, 10.2, 0.25];
        let d: Vec<Vec<f64>> = pts
            .iter()
            .map(|a| pts.iter().map(|b| f64::abs(a - b)).collect())
            .collect();
        assert_eq!(greedy_cluster(&d, 0.3), vec![0, 2, 3, 5]);
        assert!((diameter(&d, &[0, 2, 3, 5]) - 0.3).abs() < 1e-15);
        assert_eq!(greedy_cluster(&d, 0.01).len(), 1);
    }
}
