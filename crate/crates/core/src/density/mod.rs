//! Intersecting sets and intersection density.
//!
//! Two elements intersect when they agree on some point. The density of an
//! intersecting set `F` is `|F| / max_v |G_v|`, and `rho(G)` is the largest
//! such value. Two routes compute it:
//!
//! * [`exact_density_bruteforce`] runs a maximum-clique search on the
//!   intersection graph of a small explicit group.
//! * [`certify_density`] pairs an intersecting witness with a semiregular
//!   cyclic subgroup `H`. Every coset of `H` is a clique of the derangement
//!   graph, so no intersecting set exceeds `|G|/|H|`. A witness of exactly that
//!   size makes the value exact.

pub mod clique;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm_group::{GeneratedGroup, GroupRef, Permutation, PermutationGroup};
use clique::{max_clique_size, BitSet, Graph};

/// Default cap on `|G|` for the clique search.
pub const DEFAULT_BRUTEFORCE_BUDGET: usize = 5000;

/// `g(v) = h(v)` for some point `v`.
pub fn are_intersecting(g: &Permutation, h: &Permutation) -> Result<bool> {
    if g.degree() != h.degree() {
        return Err(Error::invalid(format!(
            "degrees {} and {} differ",
            g.degree(),
            h.degree()
        )));
    }
    Ok(g.images().iter().zip(h.images()).any(|(a, b)| a == b))
}

/// A subset of a group, with a flag recording whether pairwise intersection
/// has been checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectingSet<E> {
    members: Vec<E>,
    verified: bool,
}

impl<E> IntersectingSet<E> {
    pub fn unverified(members: Vec<E>) -> Self {
        IntersectingSet {
            members,
            verified: false,
        }
    }

    pub fn members(&self) -> &[E] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

fn all_pairs_intersect<G: PermutationGroup + ?Sized>(group: &G, members: &[G::Element]) -> bool {
    members
        .iter()
        .enumerate()
        .all(|(i, a)| members[i + 1..].iter().all(|b| group.are_intersecting(a, b)))
}

/// Checks every pair (or uses the representation's exact fast path) and
/// returns the set with its verification flag set accordingly.
pub fn verify_intersecting_set<G: PermutationGroup + ?Sized>(
    group: &G,
    members: Vec<G::Element>,
) -> IntersectingSet<G::Element> {
    let verified = group
        .intersecting_fast_path(&members)
        .unwrap_or_else(|| all_pairs_intersect(group, &members));
    IntersectingSet { members, verified }
}

/// The coset `g G_v`.
pub fn canonical_coset(group: &GeneratedGroup, g: &Permutation, point: u32) -> Vec<Permutation> {
    group
        .point_stabilizer(point)
        .iter()
        .map(|s| g.compose(s))
        .collect()
}

/// `|F| / max_v |G_v|`.
pub fn rho_of_set<G: PermutationGroup + ?Sized>(group: &G, set: &IntersectingSet<G::Element>) -> Result<Ratio<u64>> {
    if !set.verified {
        return Err(Error::precondition("set has not been verified as intersecting"));
    }
    Ok(Ratio::new(set.len() as u64, group.max_stabilizer_order()))
}

/// Order of the largest cyclic subgroup whose nonidentity elements are all
/// derangements.
fn largest_semiregular_cyclic(group: &GeneratedGroup) -> u64 {
    let mut best = 1;
    for g in group.elements() {
        let mut power = g.clone();
        let mut order = 1u64;
        let mut ok = true;
        while !power.is_identity() {
            if !power.is_derangement() {
                ok = false;
                break;
            }
            power = power.compose(g);
            order += 1;
        }
        if ok {
            best = best.max(order);
        }
    }
    best
}

/// Largest intersecting set of an explicit group, by maximum clique.
///
/// Left multiplication preserves intersection, so some maximum set contains
/// the identity; the search runs on the elements that intersect it.
pub fn max_intersecting_set_size(group: &GeneratedGroup) -> usize {
    let order = group.order();
    let lower = group.max_stabilizer_order() as usize;
    let upper = (order / largest_semiregular_cyclic(group)) as usize;
    if lower >= upper {
        return lower;
    }

    let cands: Vec<&Permutation> = group
        .elements()
        .iter()
        .filter(|g| !g.is_identity() && !g.is_derangement())
        .collect();
    let n = cands.len();
    let degree = group.degree();
    // buckets[v * degree + w]: candidates mapping v to w
    let mut buckets = vec![BitSet::new(n); degree * degree];
    for (idx, g) in cands.iter().enumerate() {
        for (v, &w) in g.images().iter().enumerate() {
            buckets[v * degree + w as usize].insert(idx);
        }
    }
    let rows = cands
        .iter()
        .enumerate()
        .map(|(idx, g)| {
            let mut row = BitSet::new(n);
            for (v, &w) in g.images().iter().enumerate() {
                row.union_with(&buckets[v * degree + w as usize]);
            }
            row.remove(idx);
            row
        })
        .collect();
    let graph = Graph::from_rows(rows);
    1 + max_clique_size(&graph, lower - 1, upper - 1)
}

/// Exact `rho(G)` for a small explicit group.
pub fn exact_density_bruteforce(group: &GeneratedGroup, budget: usize) -> Result<Ratio<u64>> {
    let order = group.order();
    if order > budget as u64 {
        return Err(Error::Capacity {
            what: "brute-force density",
            needed: order as u128,
            budget: budget as u128,
        });
    }
    Ok(Ratio::new(
        max_intersecting_set_size(group) as u64,
        group.max_stabilizer_order(),
    ))
}

/// A named soundness check and its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub name: String,
    pub holds: bool,
}

pub mod obligation {
    pub const GENERATOR_IN_GROUP: &str = "generator_in_group";
    pub const GENERATOR_SEMIREGULAR: &str = "generator_powers_are_derangements";
    pub const COVER_DIVIDES_ORDER: &str = "cover_order_divides_group_order";
    pub const WITNESS_IN_GROUP: &str = "witness_in_group";
    pub const WITNESS_INTERSECTING: &str = "witness_intersecting";
    pub const WITNESS_ATTAINS_BOUND: &str = "witness_attains_cover_bound";
}

/// Matching lower and upper bounds on the largest intersecting set.
#[derive(Debug, Clone)]
pub struct DensityCertificate<E> {
    pub group: GroupRef,
    pub order: u64,
    pub degree: usize,
    pub max_stabilizer_order: u64,
    pub lower_witness: IntersectingSet<E>,
    /// The semiregular generator whose cyclic subgroup's cosets cover `G`.
    pub cover_generator: E,
    pub cover_clique_size: u64,
    pub rho: Ratio<u64>,
    pub obligations: Vec<Obligation>,
}

impl<E> DensityCertificate<E> {
    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            group: self.group.clone(),
            order: self.order,
            degree: self.degree,
            stabilizer_order: self.max_stabilizer_order,
            witness_size: self.lower_witness.len() as u64,
            cover_subgroup_order: self.cover_clique_size,
            rho_numerator: *self.rho.numer(),
            rho_denominator: *self.rho.denom(),
            obligations: self.obligations.clone(),
        }
    }
}

/// The machine-readable certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub group: GroupRef,
    pub order: u64,
    pub degree: usize,
    pub stabilizer_order: u64,
    pub witness_size: u64,
    pub cover_subgroup_order: u64,
    pub rho_numerator: u64,
    pub rho_denominator: u64,
    pub obligations: Vec<Obligation>,
}

/// Certifies `rho(G) = |witness| / max_v |G_v|`.
///
/// Obligations, checked in order, failing with the first that does not hold:
/// the generator lies in `G`; each of its nonidentity powers is a
/// derangement; `|<generator>|` divides `|G|`; every witness member lies in
/// `G`; the witness is intersecting; and `|witness| = |G| / |<generator>|`.
pub fn certify_density<G: PermutationGroup + ?Sized>(
    group: &G,
    semiregular_generator: &G::Element,
    witness: Vec<G::Element>,
) -> Result<DensityCertificate<G::Element>> {
    use obligation::*;
    let mut obligations = Vec::new();
    let mut check = |name: &str, holds: bool| -> Result<()> {
        obligations.push(Obligation {
            name: name.to_string(),
            holds,
        });
        if holds {
            Ok(())
        } else {
            Err(Error::CertificationFailure {
                obligation: name.to_string(),
            })
        }
    };

    check(GENERATOR_IN_GROUP, group.contains(semiregular_generator))?;

    let order = group.order();
    let mut cover = 1u64;
    let mut power = semiregular_generator.clone();
    let mut semiregular = true;
    while !group.is_identity(&power) {
        if group.fixed_point_count(&power) != 0 || cover >= order {
            semiregular = false;
            break;
        }
        power = group.compose(&power, semiregular_generator);
        cover += 1;
    }
    check(GENERATOR_SEMIREGULAR, semiregular)?;
    check(COVER_DIVIDES_ORDER, order.is_multiple_of(cover))?;

    check(WITNESS_IN_GROUP, witness.iter().all(|w| group.contains(w)))?;
    let witness = verify_intersecting_set(group, witness);
    check(WITNESS_INTERSECTING, witness.is_verified())?;
    check(WITNESS_ATTAINS_BOUND, witness.len() as u64 == order / cover)?;

    let stab = group.max_stabilizer_order();
    Ok(DensityCertificate {
        group: group.group_ref(),
        order,
        degree: group.degree(),
        max_stabilizer_order: stab,
        rho: Ratio::new(witness.len() as u64, stab),
        lower_witness: witness,
        cover_generator: semiregular_generator.clone(),
        cover_clique_size: cover,
        obligations,
    })
}
