use super::WeightMatrix;
use crate::{Error, Matching, Result};

pub const BRUTE_FORCE_MAX_N: usize = 10;

/// Exhaustive maximum over all `n!` perfect matchings (Heap's algorithm).
/// The first permutation reaching the maximum wins.
pub fn brute_force_opt(w: &WeightMatrix) -> Result<Matching> {
    let n = w.require_square()?;
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let score = |p: &[usize]| p.iter().enumerate().map(|(i, &j)| w.get(i, j)).sum::<f64>();
    let mut best = perm.clone();
    let mut best_score = score(&perm);

    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let s = score(&perm);
            if s > best_score {
                best_score = s;
                best.copy_from_slice(&perm);
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Matching::new(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_sizes() {
        let w = WeightMatrix::new(vec![vec![0.7]]).unwrap();
        assert_eq!(brute_force_opt(&w).unwrap(), Matching::identity(1));
        let w = WeightMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let m = brute_force_opt(&w).unwrap();
        assert_eq!(m, Matching::identity(2));
        assert_eq!(m.welfare_on(w.data()), 2.0);
    }

    #[test]
    fn visits_every_permutation() {
        // a single heavy cell forces the search to find one specific permutation
        let n = 5;
        let mut data = vec![vec![0.0; n]; n];
        let target = [3, 0, 4, 1, 2];
        for (i, &j) in target.iter().enumerate() {
            data[i][j] = 1.0;
        }
        let w = WeightMatrix::new(data).unwrap();
        assert_eq!(brute_force_opt(&w).unwrap().assignment(), &target);
    }

    #[test]
    fn too_large() {
        let w = WeightMatrix::new(vec![vec![0.0; 11]; 11]).unwrap();
        assert!(matches!(brute_force_opt(&w), Err(Error::TooLarge { .. })));
    }
}
