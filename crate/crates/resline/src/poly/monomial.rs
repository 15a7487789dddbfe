//! Monomials as trimmed exponent vectors with a graded lexicographic
//! order (x0 most significant), descending on serialization.

use std::cmp::Ordering;

/// Exponent vector indexed by variable; no trailing zeros stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { exps: vec![] }
    }

    pub fn var(index: usize) -> Self {
        Monomial::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::unit();
        }
        let mut exps = vec![0; index + 1];
        exps[index] = exp;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while matches!(self.exps.last(), Some(0)) {
            self.exps.pop();
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps.get(var).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    /// Largest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        if self.exps.is_empty() {
            None
        } else {
            Some(self.exps.len() - 1)
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Weight with variable x_i carrying weight i.
    pub fn weight(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| i as u64 * e as u64)
            .sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let n = self.exps.len().max(rhs.exps.len());
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            exps.push(self.exp(i) + rhs.exp(i));
        }
        Monomial { exps }
    }

    /// Exact division; None when some exponent would go negative.
    pub fn try_div(&self, rhs: &Monomial) -> Option<Monomial> {
        if rhs.exps.len() > self.exps.len() {
            return None;
        }
        let mut exps = self.exps.clone();
        for (i, &e) in rhs.exps.iter().enumerate() {
            if exps[i] < e {
                return None;
            }
            exps[i] -= e;
        }
        Some(Monomial::from_exps(exps))
    }

    /// Remap variable indices (must be injective on the used indices).
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Monomial {
        let mut exps = vec![];
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = f(i);
            if exps.len() <= j {
                exps.resize(j + 1, 0);
            }
            assert_eq!(exps[j], 0, "variable remap must be injective");
            exps[j] = e;
        }
        Monomial::from_exps(exps)
    }

    pub fn iter_vars(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Same degree: lexicographic with x0 most significant.
        let n = self.exps.len().max(other.exps.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}
