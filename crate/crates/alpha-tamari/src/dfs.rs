//! Lazy depth-first enumeration of integer vectors whose admissible range at
//! each slot is a function of the already-placed prefix. Trying the smallest
//! admissible value first yields lexicographic order.

pub(crate) struct RangeDfs<B> {
    n_slots: usize,
    /// Inclusive bounds for the next slot given the current prefix; a range
    /// with `lo > hi` marks a dead end.
    bounds: B,
    partial: Vec<usize>,
    at_leaf: bool,
    exhausted: bool,
}

impl<B> RangeDfs<B>
where
    B: Fn(&[usize]) -> (usize, usize),
{
    pub(crate) fn new(n_slots: usize, bounds: B) -> Self {
        RangeDfs {
            n_slots,
            bounds,
            partial: Vec::with_capacity(n_slots),
            at_leaf: false,
            exhausted: false,
        }
    }

    fn backtrack_and_advance(&mut self) -> bool {
        while let Some(v) = self.partial.pop() {
            let (_, hi) = (self.bounds)(&self.partial);
            if v < hi {
                self.partial.push(v + 1);
                return true;
            }
        }
        false
    }
}

impl<B> Iterator for RangeDfs<B>
where
    B: Fn(&[usize]) -> (usize, usize),
{
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.exhausted {
            return None;
        }
        if self.at_leaf {
            self.at_leaf = false;
            if !self.backtrack_and_advance() {
                self.exhausted = true;
                return None;
            }
        }
        loop {
            if self.partial.len() == self.n_slots {
                self.at_leaf = true;
                return Some(self.partial.clone());
            }
            let (lo, hi) = (self.bounds)(&self.partial);
            if lo <= hi {
                self.partial.push(lo);
            } else if !self.backtrack_and_advance() {
                self.exhausted = true;
                return None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_constrained_tuples_in_lex_order() {
        // weakly increasing 3-tuples over 0..=2
        let tuples: Vec<Vec<usize>> = RangeDfs::new(3, |prefix: &[usize]| {
            (prefix.last().copied().unwrap_or(0), 2)
        })
        .collect();
        assert_eq!(tuples.len(), 10); // C(5,3) multisets
        for pair in tuples.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        assert_eq!(tuples.first().unwrap(), &vec![0, 0, 0]);
        assert_eq!(tuples.last().unwrap(), &vec![2, 2, 2]);
    }

    #[test]
    fn dead_end_prefixes_are_skipped() {
        // second slot admits nothing when the first is 1
        let tuples: Vec<Vec<usize>> = RangeDfs::new(2, |prefix: &[usize]| {
            if prefix.is_empty() {
                (0, 2)
            } else if prefix[0] == 1 {
                (1, 0)
            } else {
                (0, 0)
            }
        })
        .collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![2, 0]]);
    }
}
