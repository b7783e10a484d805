use std::collections::BTreeMap;

use super::{Result, StatsError};

/// Fleiss' kappa from an items × categories table of rating counts.
/// Every item must carry the same number of ratings.
pub fn fleiss_kappa_counts(counts: &[Vec<u64>]) -> Result<f64> {
    if counts.len() < 2 {
        return Err(StatsError::InvalidInput("need at least two items".into()));
    }
    let k = counts[0].len();
    if k == 0 || counts.iter().any(|row| row.len() != k) {
        return Err(StatsError::InvalidInput("ragged category table".into()));
    }
    let raters: u64 = counts[0].iter().sum();
    if raters < 2 {
        return Err(StatsError::InvalidInput("need at least two raters per item".into()));
    }
    if let Some(i) = counts.iter().position(|row| row.iter().sum::<u64>() != raters) {
        return Err(StatsError::InvalidInput(format!(
            "item {i} does not have {raters} ratings"
        )));
    }

    let n_items = counts.len() as f64;
    let n = raters as f64;
    let mut col = vec![0u64; k];
    let mut p_bar = 0.0;
    for row in counts {
        let sq: u64 = row.iter().map(|c| c * c).sum();
        p_bar += (sq as f64 - n) / (n * (n - 1.0));
        for (acc, c) in col.iter_mut().zip(row) {
            *acc += c;
        }
    }
    p_bar /= n_items;
    let p_e: f64 = col
        .iter()
        .map(|&c| {
            let p = c as f64 / (n_items * n);
            p * p
        })
        .sum();
    if (1.0 - p_e).abs() < 1e-12 {
        // every rating falls in one category
        return Ok(1.0);
    }
    Ok((p_bar - p_e) / (1.0 - p_e))
}

/// Fleiss' kappa from an items × raters table of category labels.
pub fn fleiss_kappa<T: Ord + Clone>(ratings: &[Vec<T>]) -> Result<f64> {
    let mut index = BTreeMap::new();
    for row in ratings {
        for v in row {
            let next = index.len();
            index.entry(v.clone()).or_insert(next);
        }
    }
    let counts: Vec<Vec<u64>> = ratings
        .iter()
        .map(|row| {
            let mut c = vec![0u64; index.len().max(1)];
            for v in row {
                c[index[v]] += 1;
            }
            c
        })
        .collect();
    fleiss_kappa_counts(&counts)
}

/// Krippendorff's alpha with the interval (squared difference) metric.
///
/// `scores` is items × raters; `None` marks a missing rating. Items with
/// fewer than two ratings are not pairable and are dropped.
pub fn krippendorff_alpha(scores: &[Vec<Option<f64>>]) -> Result<f64> {
    let units: Vec<Vec<f64>> = scores
        .iter()
        .map(|row| row.iter().flatten().copied().collect::<Vec<f64>>())
        .filter(|u| u.len() >= 2)
        .collect();
    if units.len() < 2 {
        return Err(StatsError::InvalidInput(
            "need at least two items with two or more ratings".into(),
        ));
    }
    if units.iter().flatten().any(|v| !v.is_finite()) {
        return Err(StatsError::InvalidInput("non-finite rating".into()));
    }

    let n: usize = units.iter().map(Vec::len).sum();
    let nf = n as f64;

    // Σ_{i≠j} (v_i − v_j)² = 2 m Σ (v − v̄)²
    let mut observed = 0.0;
    for u in &units {
        let m = u.len() as f64;
        observed += 2.0 * m * super::sum_sq_dev(u) / (m - 1.0);
    }
    observed /= nf;

    let all: Vec<f64> = units.iter().flatten().copied().collect();
    let expected = 2.0 * nf * super::sum_sq_dev(&all) / (nf * (nf - 1.0));
    if expected <= 0.0 {
        return Err(StatsError::DegenerateData("no variation among pairable ratings".into()));
    }
    Ok(1.0 - observed / expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Classic 10 subjects × 14 raters × 5 categories example; κ ≈ 0.210.
    const TEXTBOOK: [[u64; 5]; 10] = [
        [0, 0, 0, 0, 14],
        [0, 2, 6, 4, 2],
        [0, 0, 3, 5, 6],
        [0, 3, 9, 2, 0],
        [2, 2, 8, 1, 1],
        [7, 7, 0, 0, 0],
        [3, 2, 6, 3, 0],
        [2, 5, 3, 2, 2],
        [6, 5, 2, 1, 0],
        [0, 2, 2, 3, 7],
    ];

    #[test]
    fn textbook_fleiss() {
        let counts: Vec<Vec<u64>> = TEXTBOOK.iter().map(|r| r.to_vec()).collect();
        let k = fleiss_kappa_counts(&counts).unwrap();
        assert!((k - 0.210).abs() < 1e-2, "{k}");
        assert!((k - 0.20993).abs() < 1e-4, "{k}");
    }

    #[test]
    fn perfect_agreement() {
        let ratings = vec![vec![1, 1, 1], vec![2, 2, 2], vec![3, 3, 3]];
        assert_eq!(fleiss_kappa(&ratings).unwrap(), 1.0);
        let single = vec![vec!["a"; 3]; 4];
        assert_eq!(fleiss_kappa(&single).unwrap(), 1.0);
    }

    #[test]
    fn random_ratings_near_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ratings: Vec<Vec<u8>> = (0..500)
            .map(|_| (0..3).map(|_| rng.random_range(0..4u8)).collect())
            .collect();
        assert!(fleiss_kappa(&ratings).unwrap().abs() < 0.1);
    }

    #[test]
    fn ragged_rater_count_rejected() {
        assert!(fleiss_kappa(&[vec![1, 2], vec![1, 2, 2]]).is_err());
    }

    fn reliability_data() -> Vec<Vec<Option<f64>>> {
        // four coders × twelve units, transposed to units × coders
        let coders: [[Option<f64>; 12]; 4] = [
            [Some(1.), Some(2.), Some(3.), Some(3.), Some(2.), Some(1.), Some(4.), Some(1.), Some(2.), None, None, None],
            [Some(1.), Some(2.), Some(3.), Some(3.), Some(2.), Some(2.), Some(4.), Some(1.), Some(2.), Some(5.), None, Some(3.)],
            [None, Some(3.), Some(3.), Some(3.), Some(2.), Some(3.), Some(4.), Some(2.), Some(2.), Some(5.), Some(1.), None],
            [Some(1.), Some(2.), Some(3.), Some(3.), Some(2.), Some(4.), Some(4.), Some(1.), Some(2.), Some(5.), Some(1.), None],
        ];
        (0..12).map(|u| coders.iter().map(|c| c[u]).collect()).collect()
    }

    #[test]
    fn published_interval_alpha() {
        let a = krippendorff_alpha(&reliability_data()).unwrap();
        assert!((a - 0.849).abs() < 1e-2, "{a}");
    }

    #[test]
    fn duplicated_rater_is_perfect() {
        let col = [3.0, 7.0, 1.0, 9.0];
        let scores: Vec<Vec<Option<f64>>> = col.iter().map(|&v| vec![Some(v), Some(v)]).collect();
        assert_eq!(krippendorff_alpha(&scores).unwrap(), 1.0);
    }

    #[test]
    fn no_variation_is_degenerate() {
        let scores = vec![vec![Some(2.0), Some(2.0)]; 3];
        assert!(matches!(
            krippendorff_alpha(&scores),
            Err(StatsError::DegenerateData(_))
        ));
    }
}
