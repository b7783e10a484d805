use super::distributions::f_sf;
use super::{check_groups, mean, sum_sq_dev, Result, Sample, StatsError};

#[derive(Debug, Clone, PartialEq)]
pub struct AnovaTable {
    pub ss_between: f64,
    pub ss_within: f64,
    pub ss_total: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub ms_between: f64,
    pub ms_within: f64,
    pub f_stat: f64,
    pub p_value: f64,
}

/// One-way analysis of variance across `groups`.
pub fn one_way_anova(groups: &[Sample]) -> Result<AnovaTable> {
    check_groups(groups)?;
    let all: Vec<f64> = groups.iter().flat_map(|g| g.values.iter().copied()).collect();
    let grand = mean(&all);
    let n = all.len();
    let k = groups.len();

    let ss_between: f64 = groups
        .iter()
        .map(|g| {
            let d = mean(&g.values) - grand;
            g.values.len() as f64 * d * d
        })
        .sum();
    let ss_within: f64 = groups.iter().map(|g| sum_sq_dev(&g.values)).sum();
    let ss_total = sum_sq_dev(&all);

    let tol = 1e-14 * (grand * grand * n as f64).max(1.0);
    if ss_within <= tol && ss_between <= tol {
        return Err(StatsError::DegenerateData(
            "no variance within or between groups".into(),
        ));
    }

    let df_between = k - 1;
    let df_within = n - k;
    let ms_between = ss_between / df_between as f64;
    let ms_within = ss_within / df_within as f64;
    let (f_stat, p_value) = if ms_within == 0.0 {
        (f64::INFINITY, 0.0)
    } else {
        let f = ms_between / ms_within;
        (f, f_sf(f, df_between as f64, df_within as f64))
    };

    Ok(AnovaTable {
        ss_between,
        ss_within,
        ss_total,
        df_between,
        df_within,
        ms_between,
        ms_within,
        f_stat,
        p_value,
    })
}
