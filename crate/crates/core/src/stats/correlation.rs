use super::{Result, Sample, StatsError};

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    /// Row-major, `labels.len()` square.
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn by_label(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(self.values[i][j])
    }
}

fn centered(xs: &[f64]) -> Vec<f64> {
    let m = super::mean(xs);
    xs.iter().map(|x| x - m).collect()
}

fn r_centered(dx: &[f64], dy: &[f64]) -> f64 {
    let sxy: f64 = dx.iter().zip(dy).map(|(a, b)| a * b).sum();
    let sxx: f64 = dx.iter().map(|a| a * a).sum();
    let syy: f64 = dy.iter().map(|b| b * b).sum();
    (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0)
}

/// Pearson correlation of two equal-length series.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let m = pearson_matrix(&[Sample::new("x", x.to_vec()), Sample::new("y", y.to_vec())])?;
    Ok(m.get(0, 1))
}

/// Pairwise Pearson correlations between named columns.
pub fn pearson_matrix(columns: &[Sample]) -> Result<CorrelationMatrix> {
    if columns.len() < 2 {
        return Err(StatsError::InvalidInput("need at least two columns".into()));
    }
    let n = columns[0].values.len();
    if n < 3 {
        return Err(StatsError::InvalidInput("columns need at least three values".into()));
    }
    let mut centred = Vec::with_capacity(columns.len());
    for c in columns {
        if c.values.len() != n {
            return Err(StatsError::InvalidInput(format!(
                "column {} has {} values, expected {n}",
                c.label,
                c.values.len()
            )));
        }
        if c.values.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::InvalidInput(format!("column {} is not finite", c.label)));
        }
        let d = centered(&c.values);
        if d.iter().all(|v| *v == 0.0) {
            return Err(StatsError::DegenerateData(format!("column {} has zero variance", c.label)));
        }
        centred.push(d);
    }

    let k = columns.len();
    let mut values = vec![vec![1.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let r = r_centered(&centred[i], &centred[j]);
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        labels: columns.iter().map(|c| c.label.clone()).collect(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_r() {
        // cov = 1.5, sx = 1, sy = sqrt(7/3)
        let expect = 1.5 / (7.0f64 / 3.0).sqrt();
        let r = pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 4.0]).unwrap();
        assert!((r - expect).abs() < 1e-12);
        assert!((r - 0.9820).abs() < 1e-4);
    }

    #[test]
    fn perfect_anticorrelation() {
        let x = [0.5, 1.0, 4.0, 7.0];
        let y: Vec<f64> = x.iter().map(|v| -2.0 * v + 3.0).collect();
        assert!((pearson(&x, &y).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_shape() {
        let m = pearson_matrix(&[
            Sample::new("a", vec![1.0, 2.0, 3.0, 5.0]),
            Sample::new("b", vec![2.0, 1.0, 4.0, 3.0]),
            Sample::new("c", vec![9.0, 7.0, 4.0, 1.0]),
        ])
        .unwrap();
        for i in 0..3 {
            assert_eq!(m.get(i, i), 1.0);
            for j in 0..3 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        assert_eq!(m.by_label("a", "c"), Some(m.get(0, 2)));
    }

    #[test]
    fn constant_column_named_in_error() {
        let e = pearson_matrix(&[
            Sample::new("a", vec![1.0, 2.0, 3.0]),
            Sample::new("flat", vec![2.0, 2.0, 2.0]),
        ]);
        match e {
            Err(StatsError::DegenerateData(msg)) => assert!(msg.contains("flat")),
            other => panic!("{other:?}"),
        }
    }
}
