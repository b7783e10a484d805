use super::distributions::chi2_sf;
use super::{Result, StatsError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub chi2: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Pearson chi-square test of independence on an `r × c` table of counts.
pub fn chi_square_independence(table: &[Vec<u64>]) -> Result<ChiSquare> {
    let r = table.len();
    if r < 2 {
        return Err(StatsError::InvalidInput("need at least two rows".into()));
    }
    let c = table[0].len();
    if c < 2 || table.iter().any(|row| row.len() != c) {
        return Err(StatsError::InvalidInput(
            "rows must share a length of at least two".into(),
        ));
    }
    let row_sums: Vec<f64> = table.iter().map(|row| row.iter().sum::<u64>() as f64).collect();
    let col_sums: Vec<f64> = (0..c).map(|j| table.iter().map(|row| row[j]).sum::<u64>() as f64).collect();
    let total: f64 = row_sums.iter().sum();

    let mut chi2 = 0.0;
    for (i, row) in table.iter().enumerate() {
        for (j, &obs) in row.iter().enumerate() {
            let e = row_sums[i] * col_sums[j] / total;
            if !(e > 0.0) {
                return Err(StatsError::InvalidInput(format!(
                    "expected count in cell ({i}, {j}) is zero"
                )));
            }
            let d = obs as f64 - e;
            chi2 += d * d / e;
        }
    }
    let df = (r - 1) * (c - 1);
    Ok(ChiSquare { chi2, df, p_value: chi2_sf(chi2, df as f64) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_two_by_two() {
        // every expected count is 15, each cell contributes 25/15
        let t = chi_square_independence(&[vec![10, 20], vec![20, 10]]).unwrap();
        assert!((t.chi2 - 4.0 * 25.0 / 15.0).abs() < 1e-12);
        assert_eq!(t.df, 1);
        assert!((t.p_value - 0.009823).abs() < 1e-6);
    }

    #[test]
    fn proportional_rows() {
        let t = chi_square_independence(&[vec![5, 10, 15], vec![10, 20, 30]]).unwrap();
        assert!(t.chi2.abs() < 1e-12);
        assert!((t.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn df_for_four_by_five() {
        let table: Vec<Vec<u64>> = (0..4).map(|i| (0..5).map(|j| 1 + i + j).collect()).collect();
        assert_eq!(chi_square_independence(&table).unwrap().df, 12);
    }

    #[test]
    fn empty_column_rejected() {
        assert!(chi_square_independence(&[vec![1, 0], vec![2, 0]]).is_err());
    }
}
