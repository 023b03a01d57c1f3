use crate::{Matching, OrdinalProfile, Result};

/// Serial dictatorship in agent-index order: each agent takes her
/// highest-ranked remaining item. Uses no queries.
pub fn ordinal_baseline(ord: &OrdinalProfile) -> Result<Matching> {
    let n = ord.n();
    let mut taken = vec![false; n];
    let assignment = (0..n)
        .map(|agent| {
            let item = ord.ranking(agent).iter().copied().find(|&j| !taken[j]).expect("n items for n agents");
            taken[item] = true;
            item
        })
        .collect();
    Matching::new(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_ranking_gets_identity() {
        assert_eq!(ordinal_baseline(&OrdinalProfile::common(5)).unwrap(), Matching::identity(5));
    }

    #[test]
    fn no_conflict() {
        let ord = OrdinalProfile::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(ordinal_baseline(&ord).unwrap().assignment(), &[0, 1]);
    }

    #[test]
    fn later_agents_take_next_best() {
        let ord = OrdinalProfile::new(vec![vec![2, 0, 1], vec![2, 1, 0], vec![2, 1, 0]]).unwrap();
        assert_eq!(ordinal_baseline(&ord).unwrap().assignment(), &[2, 1, 0]);
    }
}
