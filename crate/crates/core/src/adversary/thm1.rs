use crate::oracle::ForbidQueries;
use crate::solvers::{hungarian_max_weight, WeightMatrix};
use crate::{
    distortion_ratio, social_welfare, CountingOracle, Error, Matching, OrdinalProfile, QueryOracle,
    Result, ValuationClass, ValuationProfile,
};

#[derive(Debug, Clone)]
pub struct Thm1Certificate {
    pub ordinal: OrdinalProfile,
    pub profile: ValuationProfile,
    pub output: Matching,
    pub alg_welfare: f64,
    pub opt: Matching,
    pub opt_welfare: f64,
    pub ratio: f64,
}

/// Items are `a = 0`, `b_g = 1 + g` for `g < n/2`, and the `c` items after
/// them. Agents `g` and `g + n/2` share the ranking
/// `a, b_g, b_0, ..., (skipping b_g), ..., c_0, c_1, ...`.
pub fn thm1_ordinal_profile(n: usize) -> Result<OrdinalProfile> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("n = {n} must be even and at least 4")));
    }
    let half = n / 2;
    let rankings = (0..n)
        .map(|i| {
            let g = i % half;
            let mut r = vec![0, 1 + g];
            r.extend((1..=half).filter(|&b| b != 1 + g));
            r.extend(half + 1..n);
            r
        })
        .collect();
    OrdinalProfile::new(rankings)
}

/// Runs an ordinal algorithm on the shared-pairs instance, then picks the
/// unit-sum values that make its output worth `1/n`.
pub fn thm1_certify<F>(n: usize, alg: F) -> Result<Thm1Certificate>
where
    F: FnOnce(&OrdinalProfile, &mut dyn QueryOracle) -> Result<Matching>,
{
    let ordinal = thm1_ordinal_profile(n)?;
    let mut oracle = CountingOracle::new(ForbidQueries { n });
    let output = alg(&ordinal, &mut oracle)?;
    if !oracle.transcript().is_empty() || output.len() != n {
        return Err(Error::QueryForbidden);
    }

    let inv = 1.0 / n as f64;
    let rows = (0..n)
        .map(|i| {
            let second = ordinal.ranking(i)[1];
            let got = output.item_of(i);
            let mut row = vec![0.0; n];
            if got == 0 {
                row.fill(inv);
            } else if got == second {
                row[0] = 1.0;
            } else {
                row[0] = 0.5;
                row[second] = 0.5;
            }
            row
        })
        .collect();
    let profile = ValuationProfile::new(rows, ValuationClass::UnitSum)?;
    if !ordinal.is_consistent_with(&profile) {
        return Err(Error::Construction("values contradict the rankings".into()));
    }

    let alg_welfare = social_welfare(&output, &profile)?;
    let opt = hungarian_max_weight(&WeightMatrix::new(profile.rows().to_vec())?)?;
    let opt_welfare = social_welfare(&opt, &profile)?;
    let ratio = distortion_ratio(opt_welfare, alg_welfare)?;
    Ok(Thm1Certificate { ordinal, profile, output, alg_welfare, opt, opt_welfare, ratio })
}
