use mdbo_core::clustering::{
    accuracy, cluster_optimize, kmeans_baseline, lloyd, write_metrics, CentroidSet, ClusterMetrics, Dataset,
};
use mdbo_core::stats::median;
use mdbo_core::{Algorithm, OptimizerSettings, RngStream, SeededRng};

/// Two 2-D blobs of 100 points around (0.1, 0.1) and (0.9, 0.9), sd 0.01.
fn two_blobs() -> Dataset {
    let mut rng = SeededRng::new(3);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (label, c) in [0.1, 0.9].into_iter().enumerate() {
        for _ in 0..100 {
            rows.push(vec![c + 0.01 * rng.gaussian(), c + 0.01 * rng.gaussian()]);
            labels.push(label);
        }
    }
    Dataset::new(rows, Some(labels)).unwrap()
}

fn true_centers() -> CentroidSet {
    CentroidSet::from_rows(&[vec![0.1, 0.1], vec![0.9, 0.9]]).unwrap()
}

#[test]
fn mdbo_matches_kmeans_from_true_centers() {
    let data = two_blobs();
    let (oracle, _) = lloyd(&data, true_centers(), 100).unwrap();
    let s = OptimizerSettings::default();
    let ratios: Vec<f64> = (0..5)
        .map(|seed| cluster_optimize(&data, 2, Algorithm::Mdbo, &s, seed).unwrap().0.fitness / oracle.fitness)
        .collect();
    let mid = median(&ratios).unwrap();
    assert!(mid <= 1.05, "median SSE ratio {mid} ({ratios:?})");
}

#[test]
fn single_cluster_lands_on_the_mean() {
    let data = two_blobs();
    let mean: Vec<f64> = (0..2).map(|j| data.points().map(|p| p[j]).sum::<f64>() / data.len() as f64).collect();
    for seed in 0..5 {
        let (r, _) = cluster_optimize(&data, 1, Algorithm::Mdbo, &OptimizerSettings::default(), seed).unwrap();
        for (j, (c, m)) in r.centroids.centroid(0).iter().zip(&mean).enumerate() {
            let err = (c - m).abs();
            assert!(err <= 1e-3, "seed {seed}, coordinate {j}: {err}");
        }
    }
}

#[test]
fn cluster_optimize_is_seeded() {
    let data = two_blobs();
    let s = OptimizerSettings::default();
    for alg in Algorithm::ALL {
        let a = cluster_optimize(&data, 2, alg, &s, 9).unwrap();
        let b = cluster_optimize(&data, 2, alg, &s, 9).unwrap();
        assert_eq!(a, b, "{alg}");
    }
}

#[test]
fn kmeans_recovers_blob_centers() {
    let data = two_blobs();
    let truth = true_centers();
    for seed in 0..10 {
        let r = kmeans_baseline(&data, 2, seed, 100).unwrap();
        for t in truth.rows() {
            let nearest = r.centroids.nearest(t).1.sqrt();
            assert!(nearest <= 0.05, "seed {seed}: center {t:?} missed by {nearest}");
        }
        assert_eq!(accuracy(&r.assignment, data.labels.as_deref()).unwrap(), 1.0);
        assert_eq!(r, kmeans_baseline(&data, 2, seed, 100).unwrap());
    }
}

#[test]
fn labeled_csv_reaches_metrics_with_accuracy() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("data.csv");
    let mut text = String::from("f1,f2,label\n");
    for i in 0..20 {
        let (v, label) = if i % 2 == 0 { (0.0, "genuine") } else { (10.0, "fake") };
        text.push_str(&format!("{},{},{label}\n", v + i as f64 * 0.01, v));
    }
    std::fs::write(&csv, text).unwrap();
    let data = Dataset::from_csv_path(&csv).unwrap();
    let r = kmeans_baseline(&data, 2, 1, 50).unwrap();
    let acc = accuracy(&r.assignment, data.labels.as_deref()).unwrap();
    let out = dir.path().join("metrics.csv");
    write_metrics(&[ClusterMetrics { method: "kmeans".into(), fitness: r.fitness, accuracy: Some(acc) }], &out)
        .unwrap();
    let written = std::fs::read_to_string(out).unwrap();
    assert!(written.starts_with("method,fitness,accuracy\n"), "{written}");
    assert!(written.contains("kmeans,"));
}
