//! Permutation families coherent under deletion.
//!
//! A 1-NFE is determined by the permutations `t_n` it applies to inputs of
//! length `n`; a k-NFE by permutations of the `n*k` inflated points. Deleting
//! input elements must act on these permutations by restriction. Only finite
//! prefixes `t_0 .. t_N` are represented.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::ListFunction;
use crate::lists::Elem;

/// A bijection on `{0 .. n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<usize>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || seen[v] {
                return Err(Error::InvalidPermutation(image));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Permutation {
            image: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }
}

/// A strictly increasing map `{0 .. n-1} -> {0 .. m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inclusion {
    target: usize,
    map: Vec<usize>,
}

impl Inclusion {
    pub fn new(map: Vec<usize>, target: usize) -> Result<Self> {
        if map.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInclusion(format!(
                "{map:?} is not strictly increasing"
            )));
        }
        if map.last().is_some_and(|&last| last >= target) {
            return Err(Error::InvalidInclusion(format!(
                "{map:?} leaves {{0..{target}}}"
            )));
        }
        Ok(Inclusion { target, map })
    }

    pub fn source(&self) -> usize {
        self.map.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self . inner`, where `inner` maps into this inclusion's source.
    pub fn compose(&self, inner: &Inclusion) -> Result<Inclusion> {
        if inner.target != self.source() {
            return Err(Error::InvalidInclusion(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source(),
                self.target,
                inner.source(),
                inner.target
            )));
        }
        Ok(Inclusion {
            target: self.target,
            map: inner.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    /// Sends point `i` to the block `i*k .. i*k + k - 1`.
    pub fn expand(&self, k: usize) -> Inclusion {
        Inclusion {
            target: self.target * k,
            map: self.map.iter().flat_map(|&i| i * k..i * k + k).collect(),
        }
    }
}

/// Every inclusion `n -> m`, lexicographic.
pub fn inclusions(n: usize, m: usize) -> Vec<Inclusion> {
    (0..m)
        .combinations(n)
        .map(|map| Inclusion { target: m, map })
        .collect()
}

/// Deletes the points of `p` outside the inclusion's image and relabels the
/// survivors order-isomorphically.
pub fn restrict_perm(p: &Permutation, inclusion: &Inclusion) -> Result<Permutation> {
    if p.len() != inclusion.target {
        return Err(Error::InvalidInclusion(format!(
            "inclusion targets {} points but the permutation has {}",
            inclusion.target,
            p.len()
        )));
    }
    let mut relabel = vec![None; p.len()];
    for (new, &old) in inclusion.map.iter().enumerate() {
        relabel[old] = Some(new);
    }
    let image = p.image.iter().filter_map(|&v| relabel[v]).collect();
    Ok(Permutation { image })
}

/// Restriction of a permutation of `m*k` points along an inclusion `n -> m`.
pub fn restrict_perm_k(p: &Permutation, inclusion: &Inclusion, k: usize) -> Result<Permutation> {
    restrict_perm(p, &inclusion.expand(k))
}

/// `t_0 .. t_N`, where `t_n` permutes `n*k` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct PermFamily {
    k: usize,
    members: Vec<Permutation>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    k: usize,
    members: Vec<Permutation>,
}

impl TryFrom<FamilyRepr> for PermFamily {
    type Error = Error;

    fn try_from(r: FamilyRepr) -> Result<Self> {
        PermFamily::new(r.k, r.members)
    }
}

impl From<PermFamily> for FamilyRepr {
    fn from(f: PermFamily) -> Self {
        FamilyRepr {
            k: f.k,
            members: f.members,
        }
    }
}

impl PermFamily {
    pub fn new(k: usize, members: Vec<Permutation>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidFamily("k must be at least 1".into()));
        }
        if members.is_empty() {
            return Err(Error::InvalidFamily("a family needs at least t_0".into()));
        }
        for (n, t) in members.iter().enumerate() {
            if t.len() != n * k {
                return Err(Error::InvalidFamily(format!(
                    "t_{n} permutes {} points, expected {}",
                    t.len(),
                    n * k
                )));
            }
        }
        Ok(PermFamily { k, members })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bound(&self) -> usize {
        self.members.len() - 1
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn member(&self, n: usize) -> Option<&Permutation> {
        self.members.get(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeViolation {
    pub n: usize,
    pub m: usize,
    pub inclusion: Vec<usize>,
    /// `t_n`
    pub expected: Permutation,
    /// `t_m` restricted along the inclusion
    pub restricted: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub k: usize,
    pub bound: usize,
    pub inclusions_checked: usize,
    pub violations: Vec<ConeViolation>,
}

impl ConeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `t_n = restrict(t_m)` for every `n < m <= N` and every inclusion
/// `n -> m`.
pub fn check_cone(family: &PermFamily) -> ConeReport {
    let mut violations = Vec::new();
    let mut checked = 0;
    for m in 0..=family.bound() {
        for n in 0..m {
            for inc in inclusions(n, m) {
                checked += 1;
                let restricted = restrict_perm_k(&family.members[m], &inc, family.k)
                    .expect("family members have n*k points");
                if restricted != family.members[n] {
                    violations.push(ConeViolation {
                        n,
                        m,
                        inclusion: inc.map,
                        expected: family.members[n].clone(),
                        restricted,
                    });
                }
            }
        }
    }
    ConeReport {
        k: family.k,
        bound: family.bound(),
        inclusions_checked: checked,
        violations,
    }
}

/// Reads off `t_n` from `f [0, 1, .., n-1]` for `n <= bound`.
///
/// The copies of input `i` are the points `i*k .. i*k + k - 1`, assigned to
/// the output slots holding `i` in order of appearance.
pub fn family_of_function(f: &ListFunction, k: usize, bound: usize) -> Result<PermFamily> {
    if k == 0 {
        return Err(Error::InvalidFamily("k must be at least 1".into()));
    }
    let mut members = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let input: Vec<Elem> = (0..n as u32).map(Elem).collect();
        let output = f.apply(&input)?;
        if output.len() != n * k {
            return Err(Error::NotAnNfe(format!(
                "{f} maps a list of {n} distinct values to {} values, expected {}",
                output.len(),
                n * k
            )));
        }
        let mut copies = vec![0usize; n];
        let mut image = Vec::with_capacity(n * k);
        for y in &output {
            let i = y.index();
            if i >= n || copies[i] == k {
                return Err(Error::NotAnNfe(format!(
                    "{f} on {input:?} gives {output:?}, not a {k}-fold inflation"
                )));
            }
            image.push(i * k + copies[i]);
            copies[i] += 1;
        }
        members.push(Permutation::new(image)?);
    }
    PermFamily::new(k, members)
}
