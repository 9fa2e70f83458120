//! The Boolean ring `F_2^n`, where localizations and quotients can be
//! enumerated outright. Elements are bitmasks; bit `i` is coordinate `i`.

use std::collections::{BTreeMap, BTreeSet};

/// `F_2^n` for `n <= 16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BooleanRing {
    n: u32,
}

impl BooleanRing {
    pub fn new(n: u32) -> Self {
        assert!(n <= 16, "F_2^{n} is too large to enumerate");
        BooleanRing { n }
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn one(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.n)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a & b
    }

    /// Classes of fractions `a/s` with `s` in `denominators`, under
    /// `a/s ~ b/t` iff `u(at - bs) = 0` for some `u` in `denominators`.
    /// Each class is reported by its least `(a, s)` pair.
    pub fn fraction_classes(&self, denominators: &BTreeSet<u32>) -> Vec<(u32, u32)> {
        let pairs: Vec<(u32, u32)> = self
            .elements()
            .flat_map(|a| denominators.iter().map(move |&s| (a, s)))
            .collect();
        let mut reps: Vec<(u32, u32)> = Vec::new();
        for &(a, s) in &pairs {
            let known = reps.iter().any(|&(b, t)| {
                let diff = self.add(self.mul(a, t), self.mul(b, s));
                denominators.iter().any(|&u| self.mul(u, diff) == 0)
            });
            if !known {
                reps.push((a, s));
            }
        }
        reps
    }

    /// The multiplicative set `{1, f, f^2, ...}`.
    pub fn powers(&self, f: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::from([self.one()]);
        let mut x = f;
        while out.insert(x) {
            x = self.mul(x, f);
        }
        out
    }

    /// Cosets of the principal ideal `(g)`, each named by its least member.
    pub fn quotient_classes(&self, g: u32) -> Vec<u32> {
        let ideal: BTreeSet<u32> = self.elements().map(|x| self.mul(x, g)).collect();
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for a in self.elements() {
            if seen.contains(&a) {
                continue;
            }
            for i in &ideal {
                seen.insert(self.add(a, *i));
            }
            reps.push(a);
        }
        reps
    }
}

/// The outcome of comparing `R_f`, `R/(1 - f)` and `F_2^{⟦f ≠ 0⟧}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanLocalization {
    pub support: u32,
    pub localization_size: usize,
    pub quotient_size: usize,
    /// Restriction to the support is a bijective ring map on both sides.
    pub isomorphic: bool,
}

/// Enumerates `R_f` and `R/(1 - f)` in `F_2^n` and checks both against
/// the restriction `a ↦ a|_{⟦f ≠ 0⟧}`.
pub fn boolean_localization(ring: BooleanRing, f: u32) -> BooleanLocalization {
    let target_size = 1usize << f.count_ones();
    let restrict = |a: u32| a & f;

    let classes = ring.fraction_classes(&ring.powers(f));
    // In F_2^n every power of f is f or 1, and a/s restricts to a|_f on
    // the support because s is 1 there.
    let loc_images: BTreeMap<u32, (u32, u32)> = classes.iter().map(|&(a, s)| (restrict(a), (a, s))).collect();
    let loc_bijective = classes.len() == target_size && loc_images.len() == target_size;

    let cosets = ring.quotient_classes(ring.add(ring.one(), f));
    let quo_images: BTreeSet<u32> = cosets.iter().map(|&a| restrict(a)).collect();
    let quo_bijective = cosets.len() == target_size && quo_images.len() == target_size;

    let homomorphic = cosets.iter().all(|&a| {
        cosets.iter().all(|&b| {
            restrict(ring.add(a, b)) == ring.add(restrict(a), restrict(b))
                && restrict(ring.mul(a, b)) == ring.mul(restrict(a), restrict(b))
        })
    });

    BooleanLocalization {
        support: f,
        localization_size: classes.len(),
        quotient_size: cosets.len(),
        isomorphic: loc_bijective && quo_bijective && homomorphic,
    }
}

/// Size of the stalk of `Spec F_2^n` at the prime `{x : x_i = 0}`.
pub fn boolean_stalk_size(ring: BooleanRing, i: u32) -> usize {
    let denominators: BTreeSet<u32> = ring.elements().filter(|s| s >> i & 1 == 1).collect();
    ring.fraction_classes(&denominators).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localizations_match_quotients_exhaustively() {
        for n in 1..=4 {
            let ring = BooleanRing::new(n);
            for f in ring.elements() {
                let r = boolean_localization(ring, f);
                assert!(r.isomorphic, "n={n} f={f:b}");
                assert_eq!(r.localization_size, 1 << f.count_ones());
                assert_eq!(r.quotient_size, r.localization_size);
            }
        }
    }

    #[test]
    fn stalks_are_f2() {
        for n in 1..=4 {
            for i in 0..n {
                assert_eq!(boolean_stalk_size(BooleanRing::new(n), i), 2);
            }
        }
    }
}
