/// A group of positions and its running centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub centroid: Vec<f64>,
    pub members: Vec<usize>,
}

/// Greedy agglomeration in index order: each position joins the first cluster
/// whose centroid lies within `radius`, otherwise it founds a new cluster.
/// Centroids are updated incrementally.
pub fn cluster_final_positions(positions: &[Vec<f64>], radius: f64) -> Vec<Cluster> {
    assert!(radius > 0.0, "cluster radius must be positive");
    let r2 = radius * radius;
    let mut clusters: Vec<Cluster> = Vec::new();
    for (idx, p) in positions.iter().enumerate() {
        let hit = clusters
            .iter_mut()
            .find(|c| crate::firefly::distance_sq(&c.centroid, p) <= r2);
        match hit {
            Some(c) => {
                c.members.push(idx);
                let m = c.members.len() as f64;
                for (ci, pi) in c.centroid.iter_mut().zip(p) {
                    *ci += (pi - *ci) / m;
                }
            }
            None => clusters.push(Cluster {
                centroid: p.clone(),
                members: vec![idx],
            }),
        }
    }
    clusters
}
