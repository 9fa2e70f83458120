//! Sections as an inverse limit over the basic opens inside an open set,
//! computed by brute force.
//!
//! Every basic open is `D(f)` for some `f` whose components are each `0`,
//! `p` or `1`, and `R_f` is read off those components directly: a zero kills
//! the factor, a unit leaves `Z_p`, and `p` inverts into `Q_p`.

use crate::error::{Error, Result};
use crate::product::{ProductElement, RingContext};
use crate::sheaf::{basic_open, OpenSet, SectionKind};

/// The `3^|S|` elements with components in `{0, p, 1}`.
pub fn basic_open_representatives(context: &RingContext) -> Vec<ProductElement> {
    let n = context.len() as u32;
    (0..3usize.pow(n))
        .map(|code| {
            let mut c = code;
            context.from_fn(|zp| {
                let v = match c % 3 {
                    0 => zp.zero(),
                    1 => zp.element(zp.prime()),
                    _ => zp.one(),
                };
                c /= 3;
                v
            })
        })
        .collect()
}

/// Classification of `R_f`, component by component.
pub fn localization_kinds(f: &ProductElement) -> Vec<SectionKind> {
    f.components()
        .iter()
        .map(|a| {
            if a.is_zero() {
                SectionKind::Absent
            } else if a.is_unit() {
                SectionKind::Integral
            } else {
                SectionKind::Field
            }
        })
        .collect()
}

/// The limit of a diagram of component rings.
///
/// `nodes[i][c]` is the kind of component `c` at node `i`; an edge `(i, j)`
/// is a ring map from node `i` to node `j`, which on each component is an
/// identity, the inclusion `Z_p -> Q_p`, or the map to the zero ring. A
/// compatible family on one component is one value shared by a connected
/// group of non-absent nodes; the value 1 always qualifies and `1/p` does
/// exactly when no node of the group is integral.
pub fn limit_kinds(nodes: &[Vec<SectionKind>], edges: &[(usize, usize)]) -> Result<Vec<SectionKind>> {
    let width = nodes.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(width);
    for c in 0..width {
        let mut parent: Vec<usize> = (0..nodes.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in edges {
            match (nodes[i][c], nodes[j][c]) {
                (_, SectionKind::Absent) => {}
                (SectionKind::Absent, _) => {
                    return Err(Error::Unrepresentable(format!("zero ring maps onto component {c}")))
                }
                (SectionKind::Field, SectionKind::Integral) => {
                    return Err(Error::Unrepresentable(format!("Q_p maps into Z_p at component {c}")))
                }
                _ => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: Vec<usize> = (0..nodes.len())
            .filter(|&i| nodes[i][c] != SectionKind::Absent)
            .map(|i| find(&mut parent, i))
            .collect();
        groups.sort_unstable();
        groups.dedup();
        let kind = match groups.as_slice() {
            [] => SectionKind::Absent,
            [g] => {
                let g = *g;
                let members: Vec<usize> = (0..nodes.len())
                    .filter(|&i| nodes[i][c] != SectionKind::Absent && find(&mut parent, i) == g)
                    .collect();
                let inverse_p_fits = members.iter().all(|&i| nodes[i][c] == SectionKind::Field);
                if inverse_p_fits {
                    SectionKind::Field
                } else {
                    SectionKind::Integral
                }
            }
            _ => {
                return Err(Error::Unrepresentable(format!(
                    "component {c} splits into {} independent factors",
                    groups.len()
                )))
            }
        };
        out.push(kind);
    }
    Ok(out)
}

/// `lim R_f` over the basic opens `D(f) ⊆ U`.
pub fn inverse_limit_sections(u: &OpenSet) -> Result<Vec<SectionKind>> {
    let mut opens = Vec::new();
    let mut nodes = Vec::new();
    for f in basic_open_representatives(u.context()) {
        let d = basic_open(&f)?;
        if d.is_subset(u) {
            nodes.push(localization_kinds(&f));
            opens.push(d);
        }
    }
    let mut edges = Vec::new();
    for (i, a) in opens.iter().enumerate() {
        for (j, b) in opens.iter().enumerate() {
            if i != j && b.is_subset(a) {
                edges.push((i, j));
            }
        }
    }
    if nodes.is_empty() {
        return Ok(vec![SectionKind::Absent; u.context().len()]);
    }
    limit_kinds(&nodes, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaf::{enumerate_opens, sections};
    use crate::spectrum::PrimeIdeal;

    #[test]
    fn limit_examples() {
        let ctx = RingContext::new(&[2, 3], 24).unwrap();
        let u = OpenSet::new(
            &ctx,
            [PrimeIdeal::minimal(2), PrimeIdeal::minimal(3), PrimeIdeal::maximal(3)],
        )
        .unwrap();
        assert_eq!(
            inverse_limit_sections(&u).unwrap(),
            vec![SectionKind::Field, SectionKind::Integral]
        );
        let f = ctx.element([2, 0]).unwrap();
        assert_eq!(localization_kinds(&f), vec![SectionKind::Field, SectionKind::Absent]);
    }

    #[test]
    fn closed_form_matches_limit_for_small_contexts() {
        for primes in [&[2][..], &[2, 3], &[2, 3, 5]] {
            let ctx = RingContext::new(primes, 8).unwrap();
            for u in enumerate_opens(&ctx) {
                assert_eq!(inverse_limit_sections(&u).unwrap(), sections(&u).kinds(), "{u:?}");
            }
        }
    }

    #[test]
    fn disconnected_diagrams_are_rejected() {
        let nodes = vec![vec![SectionKind::Field], vec![SectionKind::Field]];
        assert!(matches!(limit_kinds(&nodes, &[]), Err(Error::Unrepresentable(_))));
    }
}
