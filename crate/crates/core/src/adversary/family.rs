use crate::{AnswerPolicy, Error, OrdinalProfile, Result, ValuationClass};

/// Items `0..n` split, in index order, into `A_1, ..., A_{k+1}` and `B`.
/// Every agent ranks items by index.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundFamily {
    n: usize,
    k: usize,
    class: ValuationClass,
    epsilon: f64,
    xi: f64,
    /// Start index of each `A_l`, plus the start of `B` at the end.
    starts: Vec<usize>,
}

impl LowerBoundFamily {
    pub const DEFAULT_EPSILON: f64 = 1.0 / 3.0;
    pub const DEFAULT_XI: f64 = 0.25;

    /// `|A_1| = 1`, `|A_l| = max(1, round(eps * n^{(l-1) delta}))`.
    ///
    /// Rejects `n <= 2 * sum |A_l|`, and for unit-sum also
    /// `k > (1 - xi) n^{1/(k+1)}` and any size choice that leaves no room for
    /// a unit-sum completion.
    pub fn new(n: usize, k: usize, class: ValuationClass, epsilon: f64, xi: f64) -> Result<Self> {
        let fam = Self::with_sizes(n, k, class, epsilon, xi, Self::default_sizes(n, k, class, epsilon)?)?;
        let total = fam.starts[k + 1];
        if n <= 2 * total {
            return Err(Error::InvalidParameters(format!(
                "n = {n} must exceed 2 * {total} (twice the items in A_1..A_{})",
                k + 1
            )));
        }
        if class == ValuationClass::UnitSum {
            let cap = (1.0 - xi) * (n as f64).powf(1.0 / (k as f64 + 1.0));
            if k as f64 > cap + 1e-12 {
                return Err(Error::InvalidParameters(format!(
                    "unit-sum needs k <= (1 - xi) n^(1/(k+1)) = {cap:.4}, got k = {k}"
                )));
            }
            let spare = 1.0 - fam.algorithm_welfare();
            if spare < 0.0 || fam.spread_b_value() > fam.revealed(k + 1) {
                return Err(Error::InvalidParameters(
                    "set sizes leave no consistent unit-sum completion".into(),
                ));
            }
        }
        Ok(fam)
    }

    /// Explicit sizes `|A_1|..|A_{k+1}|`, no size or precondition checks
    /// beyond fitting in `n`.
    pub fn with_sizes(
        n: usize,
        k: usize,
        class: ValuationClass,
        epsilon: f64,
        xi: f64,
        sizes: Vec<usize>,
    ) -> Result<Self> {
        if k == 0 || sizes.len() != k + 1 || sizes.contains(&0) {
            return Err(Error::InvalidParameters(format!("need k >= 1 and {} non-empty sets", k + 1)));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) || !(xi > 0.0 && xi <= 1.0) {
            return Err(Error::InvalidParameters(format!(
                "epsilon = {epsilon} must lie in (0,1) and xi = {xi} in (0,1]"
            )));
        }
        let mut starts = vec![0];
        for s in &sizes {
            starts.push(starts.last().unwrap() + s);
        }
        if *starts.last().unwrap() > n {
            return Err(Error::InvalidParameters(format!("sets {sizes:?} do not fit in n = {n}")));
        }
        Ok(Self { n, k, class, epsilon, xi, starts })
    }

    fn default_sizes(n: usize, k: usize, class: ValuationClass, epsilon: f64) -> Result<Vec<usize>> {
        if k == 0 {
            return Err(Error::InvalidParameters("k must be at least 1".into()));
        }
        let delta = Self::delta_for(k, class);
        let mut sizes = vec![1];
        for l in 2..=k + 1 {
            let s = (epsilon * (n as f64).powf((l - 1) as f64 * delta)).round().max(1.0);
            sizes.push(s as usize);
        }
        Ok(sizes)
    }

    fn delta_for(k: usize, class: ValuationClass) -> f64 {
        match class {
            ValuationClass::Unrestricted => 1.0 / k as f64,
            ValuationClass::UnitSum => 1.0 / (k as f64 + 1.0),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class(&self) -> ValuationClass {
        self.class
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn delta(&self) -> f64 {
        Self::delta_for(self.k, self.class)
    }

    /// `n^{-delta}`: the total revealed value of each set.
    pub fn scale(&self) -> f64 {
        (self.n as f64).powf(-self.delta())
    }

    /// Items of `A_l`, 1-based `l`.
    pub fn set(&self, l: usize) -> std::ops::Range<usize> {
        self.starts[l - 1]..self.starts[l]
    }

    pub fn set_size(&self, l: usize) -> usize {
        self.starts[l] - self.starts[l - 1]
    }

    pub fn sizes(&self) -> Vec<usize> {
        (1..=self.k + 1).map(|l| self.set_size(l)).collect()
    }

    pub fn b_items(&self) -> std::ops::Range<usize> {
        self.starts[self.k + 1]..self.n
    }

    /// 1-based set index of `item`, `None` for `B`.
    pub fn set_of(&self, item: usize) -> Option<usize> {
        (1..=self.k + 1).find(|&l| self.set(l).contains(&item))
    }

    /// Value revealed for any item of `A_l`: `n^{-delta} / |A_l|`.
    pub fn revealed(&self, l: usize) -> f64 {
        self.scale() / self.set_size(l) as f64
    }

    /// Uniform `B` value that completes a unit-sum row holding the revealed
    /// values on every set: `(1 - (k+1) n^{-delta}) / |B|`.
    pub fn spread_b_value(&self) -> f64 {
        let b = self.b_items().len();
        if b == 0 {
            0.0
        } else {
            (1.0 - self.algorithm_welfare()).max(0.0) / b as f64
        }
    }

    /// Answer to a query for `item`; items in `B` reveal `0`.
    pub fn answer(&self, item: usize) -> f64 {
        self.set_of(item).map_or(0.0, |l| self.revealed(l))
    }

    pub fn ordinal(&self) -> OrdinalProfile {
        OrdinalProfile::common(self.n)
    }

    /// `(k+1) n^{-delta}`: welfare of any matching in which every agent gets
    /// its revealed value.
    pub fn algorithm_welfare(&self) -> f64 {
        (self.k as f64 + 1.0) * self.scale()
    }

    /// `xi n^delta / (k+1)`.
    pub fn ratio_floor(&self) -> f64 {
        self.xi / self.algorithm_welfare()
    }

    pub fn policy(&self) -> AdversaryPolicy<'_> {
        AdversaryPolicy { family: self }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AdversaryPolicy<'a> {
    family: &'a LowerBoundFamily,
}

impl AnswerPolicy for AdversaryPolicy<'_> {
    fn n(&self) -> usize {
        self.family.n
    }

    fn answer(&mut self, _agent: usize, item: usize) -> Result<f64> {
        Ok(self.family.answer(item))
    }
}
