//! Finite witness universes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{EndoMap, Predicate};
use crate::lists::Elem;

/// Upper bound on `A^A` when enumerating endo-maps of the alphabet.
pub const MAX_ENDO_MAPS: usize = 1 << 16;

/// All lists over `{0 .. alphabet-1}` of length at most `max_len`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scope {
    pub alphabet: usize,
    pub max_len: usize,
}

impl Default for Scope {
    fn default() -> Self {
        Scope {
            alphabet: 3,
            max_len: 5,
        }
    }
}

impl Scope {
    pub fn new(alphabet: usize, max_len: usize) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidScope(
                "alphabet size must be at least 1".into(),
            ));
        }
        if alphabet > 16 {
            return Err(Error::ScopeTooLarge(format!(
                "alphabet size {alphabet} exceeds 16 (predicate universe is 2^A)"
            )));
        }
        let lists = (0..=max_len as u32).try_fold(0usize, |acc, len| {
            alphabet.checked_pow(len).and_then(|n| acc.checked_add(n))
        });
        match lists {
            Some(n) if n <= 1 << 24 => Ok(Scope { alphabet, max_len }),
            _ => Err(Error::ScopeTooLarge(format!(
                "too many lists at alphabet {alphabet}, max length {max_len}"
            ))),
        }
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        (0..self.alphabet as u32).map(Elem)
    }

    /// True if `xs` lies in the test universe.
    pub fn contains(&self, xs: &[Elem]) -> bool {
        xs.len() <= self.max_len && xs.iter().all(|x| x.index() < self.alphabet)
    }

    /// Every list in the universe, shortest first and lexicographic within a
    /// length.
    pub fn lists(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<Elem>> = vec![Vec::new()];
        for _ in 0..self.max_len {
            let mut next = Vec::with_capacity(layer.len() * self.alphabet);
            for xs in &layer {
                for x in self.elems() {
                    let mut ys = xs.clone();
                    ys.push(x);
                    next.push(ys);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Every subset of the alphabet, in bitmask order.
    pub fn predicates(&self) -> Vec<Predicate> {
        (0u32..1 << self.alphabet)
            .map(|mask| Predicate::new(self.elems().filter(|x| mask & (1 << x.0) != 0)))
            .collect()
    }

    /// Every function from the alphabet to itself, in lexicographic order of
    /// their tables.
    pub fn endo_maps(&self) -> Result<Vec<EndoMap>> {
        let a = self.alphabet;
        match a.checked_pow(a as u32) {
            Some(n) if n <= MAX_ENDO_MAPS => {}
            _ => {
                return Err(Error::ScopeTooLarge(format!(
                    "{a}^{a} endo-maps exceeds the cap of {MAX_ENDO_MAPS}"
                )))
            }
        }
        let mut out = Vec::new();
        let mut table = vec![0u32; a];
        loop {
            out.push(EndoMap::new(table.iter().copied().map(Elem).collect()));
            // odometer increment, last position fastest
            let mut i = a;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                table[i] += 1;
                if (table[i] as usize) < a {
                    break;
                }
                table[i] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list;

    #[test]
    fn default_universe_sizes() {
        let scope = Scope::default();
        assert_eq!(scope.lists().len(), 1 + 3 + 9 + 27 + 81 + 243);
        assert_eq!(scope.predicates().len(), 8);
        assert_eq!(scope.endo_maps().unwrap().len(), 27);
    }

    #[test]
    fn lists_are_shortlex() {
        let lists = Scope::new(2, 2).unwrap().lists();
        let expected: Vec<Vec<Elem>> = [&[][..], &[0], &[1], &[0, 0], &[0, 1], &[1, 0], &[1, 1]]
            .iter()
            .map(|xs| list(xs))
            .collect();
        assert_eq!(lists, expected);
    }

    #[test]
    fn endo_maps_are_lexicographic() {
        let maps = Scope::new(2, 0).unwrap().endo_maps().unwrap();
        let tables: Vec<_> = maps.iter().map(|m| m.table().to_vec()).collect();
        assert_eq!(
            tables,
            vec![list(&[0, 0]), list(&[0, 1]), list(&[1, 0]), list(&[1, 1])]
        );
    }

    #[test]
    fn rejects_bad_scopes() {
        assert!(matches!(Scope::new(0, 3), Err(Error::InvalidScope(_))));
        assert!(matches!(Scope::new(17, 1), Err(Error::ScopeTooLarge(_))));
        assert!(matches!(Scope::new(4, 20), Err(Error::ScopeTooLarge(_))));
        assert!(matches!(
            Scope::new(9, 1).unwrap().endo_maps(),
            Err(Error::ScopeTooLarge(_))
        ));
    }

    #[test]
    fn contains_checks_alphabet_and_length() {
        let scope = Scope::new(2, 2).unwrap();
        assert!(scope.contains(&list(&[1, 0])));
        assert!(!scope.contains(&list(&[2])));
        assert!(!scope.contains(&list(&[0, 0, 0])));
    }
}
