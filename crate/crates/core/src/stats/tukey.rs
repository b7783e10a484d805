use super::anova::one_way_anova;
use super::distributions::ptukey_sf;
use super::{mean, Result, Sample};

pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct TukeyPair {
    pub group_a: String,
    pub group_b: String,
    /// `mean(a) - mean(b)`.
    pub mean_diff: f64,
    pub q_stat: f64,
    pub p_value: f64,
    pub significant: bool,
}

/// Tukey HSD over all unordered pairs, with the Tukey–Kramer standard
/// error for unequal group sizes. Pairs are emitted in input order
/// `(0,1), (0,2), …, (k-2,k-1)`.
pub fn tukey_hsd(groups: &[Sample], alpha: f64) -> Result<Vec<TukeyPair>> {
    let table = one_way_anova(groups)?;
    let k = groups.len();
    let df = table.df_within as f64;
    let means: Vec<f64> = groups.iter().map(|g| mean(&g.values)).collect();

    let mut out = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            let (na, nb) = (groups[i].values.len() as f64, groups[j].values.len() as f64);
            let diff = means[i] - means[j];
            let se = (table.ms_within / 2.0 * (1.0 / na + 1.0 / nb)).sqrt();
            let (q, p) = if se == 0.0 {
                if diff == 0.0 {
                    (0.0, 1.0)
                } else {
                    (f64::INFINITY, 0.0)
                }
            } else {
                let q = diff.abs() / se;
                (q, ptukey_sf(q, k, df))
            };
            out.push(TukeyPair {
                group_a: groups[i].label.clone(),
                group_b: groups[j].label.clone(),
                mean_diff: diff,
                q_stat: q,
                p_value: p,
                significant: p < alpha,
            });
        }
    }
    Ok(out)
}
