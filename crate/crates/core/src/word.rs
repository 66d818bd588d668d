//! Sorted exterior words and their signed normal forms.
//!
//! A [`Word`] labels a basis element `v_{w₁} ∧ … ∧ v_{w_p}` (or the covariant
//! `dx^{w₁} ∧ … ∧ dx^{w_p}`). Indices are 0-based and strictly increasing.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// ±1.
pub type Sign = i8;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(SmallVec<[u8; 4]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    /// `v₁ ∧ … ∧ v_n`.
    pub fn full(n: usize) -> Self {
        Word((0..n as u8).collect())
    }

    pub fn single(i: usize) -> Self {
        Word(smallvec::smallvec![i as u8])
    }

    /// Validates a strictly increasing list of 0-based indices below `n`.
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Argument(format!(
                    "word indices must be strictly increasing, got {indices:?}"
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(Error::Argument(format!(
                    "word index {last} out of range for n = {n}"
                )));
            }
        }
        Ok(Word(indices.iter().map(|&i| i as u8).collect()))
    }

    /// Sorts an arbitrary index list, returning the permutation sign, or `None`
    /// when an index repeats.
    pub fn from_unsorted(indices: &[usize]) -> Option<(Sign, Word)> {
        let mut v: SmallVec<[u8; 4]> = indices.iter().map(|&i| i as u8).collect();
        let mut sign: Sign = 1;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Word(v)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&(i as u8))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| usize::from(i))
    }

    /// `v_i ∧ self` in normal form: `None` if `i` already occurs.
    pub fn insert(&self, i: usize) -> Option<(Sign, Word)> {
        let i = i as u8;
        let mut before = 0usize;
        for &w in &self.0 {
            if w == i {
                return None;
            }
            if w < i {
                before += 1;
            }
        }
        let mut out = self.0.clone();
        out.insert(before, i);
        Some((parity(before), Word(out)))
    }

    /// Interior product with the dual basis vector `β^j`: `None` if `j` is absent.
    pub fn contract(&self, j: usize) -> Option<(Sign, Word)> {
        let j = j as u8;
        let pos = self.0.iter().position(|&w| w == j)?;
        let mut out = self.0.clone();
        out.remove(pos);
        Some((parity(pos), Word(out)))
    }

    /// Replaces the letter `from` by `to` in place, renormalizing.
    /// Returns `None` if `from` is absent or `to` already occurs elsewhere.
    pub fn substitute(&self, from: usize, to: usize) -> Option<(Sign, Word)> {
        if from == to {
            return self.contains(from).then(|| (1, self.clone()));
        }
        let (s1, rest) = self.contract(from)?;
        let (s2, out) = rest.insert(to)?;
        Some((s1 * s2, out))
    }

    /// All words of length `p` over `{0, …, n−1}`, lexicographically.
    pub fn all_of_length(n: usize, p: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = SmallVec::<[u8; 4]>::new();
        combos(n as u8, p, 0, &mut cur, &mut out);
        out
    }
}

fn parity(count: usize) -> Sign {
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

fn combos(n: u8, p: usize, start: u8, cur: &mut SmallVec<[u8; 4]>, out: &mut Vec<Word>) {
    if cur.len() == p {
        out.push(Word(cur.clone()));
        return;
    }
    for i in start..n {
        cur.push(i);
        combos(n, p, i + 1, cur, out);
        cur.pop();
    }
}

/// Checked `v_i ∧ w` for 0-based `i < n`.
pub fn wedge_insert(n: usize, i: usize, w: &Word) -> Result<Option<(Sign, Word)>> {
    check_index(n, i)?;
    Ok(w.insert(i))
}

/// Checked `i_{β^j} w` for 0-based `j < n`.
pub fn interior_contract(n: usize, j: usize, w: &Word) -> Result<Option<(Sign, Word)>> {
    check_index(n, j)?;
    Ok(w.contract(j))
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i < n {
        Ok(())
    } else {
        Err(Error::Argument(format!("index {i} out of range for n = {n}")))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(ix: &[usize]) -> Word {
        Word::new(4, ix).unwrap()
    }

    // The fixtures below are written 1-based in the comments, 0-based in code.
    #[test]
    fn wedge_examples() {
        // v1 ∧ (v2) = +(v1 v2)
        assert_eq!(wedge_insert(3, 0, &w(&[1])).unwrap(), Some((1, w(&[0, 1]))));
        // v2 ∧ (v1 v3) = −(v1 v2 v3)
        assert_eq!(
            wedge_insert(3, 1, &w(&[0, 2])).unwrap(),
            Some((-1, w(&[0, 1, 2])))
        );
        // v2 ∧ (v1 v2) = 0
        assert_eq!(wedge_insert(3, 1, &w(&[0, 1])).unwrap(), None);
        assert!(wedge_insert(3, 3, &w(&[0])).is_err());
    }

    #[test]
    fn contract_examples() {
        assert_eq!(
            interior_contract(2, 0, &w(&[0, 1])).unwrap(),
            Some((1, w(&[1])))
        );
        assert_eq!(
            interior_contract(2, 1, &w(&[0, 1])).unwrap(),
            Some((-1, w(&[0])))
        );
        assert_eq!(interior_contract(3, 2, &w(&[0, 1])).unwrap(), None);
        assert!(interior_contract(2, 5, &w(&[0, 1])).is_err());
    }

    #[test]
    fn validation() {
        assert!(Word::new(3, &[1, 0]).is_err());
        assert!(Word::new(3, &[1, 1]).is_err());
        assert!(Word::new(3, &[0, 3]).is_err());
        assert_eq!(Word::all_of_length(4, 2).len(), 6);
        assert_eq!(Word::all_of_length(3, 0), vec![Word::empty()]);
        assert_eq!(Word::from_unsorted(&[2, 0, 1]), Some((1, w(&[0, 1, 2]))));
        assert_eq!(Word::from_unsorted(&[1, 0]), Some((-1, w(&[0, 1]))));
        assert_eq!(Word::from_unsorted(&[1, 1]), None);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::btree_set(0usize..5, 0..=5)
            .prop_map(|s| Word::new(5, &s.into_iter().collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #[test]
        fn insert_then_contract_is_identity(word in arb_word(), i in 0usize..5) {
            if let Some((s1, inserted)) = word.insert(i) {
                let (s2, back) = inserted.contract(i).unwrap();
                prop_assert_eq!(back, word);
                prop_assert_eq!(s1 * s2, 1);
            } else {
                prop_assert!(word.contains(i));
            }
        }

        #[test]
        fn contractions_anticommute(word in arb_word(), i in 0usize..5, j in 0usize..5) {
            prop_assume!(i != j);
            let ij = word.contract(i).and_then(|(s, w)| w.contract(j).map(|(t, w)| (s * t, w)));
            let ji = word.contract(j).and_then(|(s, w)| w.contract(i).map(|(t, w)| (s * t, w)));
            match (ij, ji) {
                (Some((s, a)), Some((t, b))) => {
                    prop_assert_eq!(a, b);
                    prop_assert_eq!(s, -t);
                }
                (None, None) => {}
                _ => prop_assert!(false, "one order defined, the other not"),
            }
        }
    }
}
