#pragma once

#include <map>
#include <vector>

#include "eqalg/group.hpp"

namespace eqalg {

/// Finite G-set stored by orbit labels: for each subgroup conjugacy class
/// (H) a non-negative multiplicity of copies of G/H. Raw action tables only
/// appear at the orbit_decompose boundary.
struct GSet {
    LatticePtr lat;
    std::map<int, long long> orbits; // class index -> multiplicity

    long long total_size() const;
    void add_orbit(int cls, long long mult = 1);
    bool operator==(const GSet& o) const { return orbits == o.orbits; }
};

GSet empty_gset(LatticePtr lat);
GSet orbit_gset(LatticePtr lat, int cls, long long mult = 1);

/// Decomposes an explicit action table act[g][x] into orbits with
/// stabilizer classes. Throws InvalidAction when an axiom fails.
GSet orbit_decompose(LatticePtr lat, const std::vector<std::vector<int>>& act);

/// G/K x G/L as a disjoint union of orbits G/(K ∩ xLx^-1) over double
/// cosets KxL; extended bilinearly to whole G-sets.
GSet gset_product(const GSet& x, const GSet& y);

/// The pullback of G/H -> G/J <- G/K for H, K <= J, decomposed into orbits
/// G/(H ∩ xKx^-1) over x in [H\J/K].
GSet pullback_orbits(const LatticePtr& lat, int H, int K, int J);

/// |X^K|.
long long fixed_count(const GSet& x, int K);
/// |(G/H)^K| for single orbits.
long long orbit_fixed_count(const SubgroupLattice& lat, int H, int K);

/// --- Spans -----------------------------------------------------------
///
/// An equivariant map G/L -> G/H is stored as a subconjugation datum g
/// with g L g^-1 <= H; the map is  xL |-> x g^-1 H.  Two data give the
/// same map exactly when the right cosets Hg agree, so the canonical
/// datum is the least element of Hg.

/// A G-set presented as an ordered list of orbit instances (stabilizers
/// are lattice subgroup indices; class representatives for canonical
/// source/target lists).
struct OrbitList {
    LatticePtr lat;
    std::vector<int> stabs;

    bool operator==(const OrbitList& o) const { return stabs == o.stabs; }
};

OrbitList to_orbit_list(const GSet& x);
GSet to_gset(const OrbitList& x);

struct OrbitMap {
    int g = 0;      // subconjugation datum
    int target = 0; // orbit index in the target list
    bool operator==(const OrbitMap& o) const = default;
};

struct SpanOrbit {
    int stab = 0; // lattice subgroup index of the apex orbit stabilizer
    OrbitMap left, right;
    bool operator==(const SpanOrbit& o) const = default;
};

/// A span source <- apex -> target with per-orbit equivariant legs.
struct Span {
    OrbitList source, target;
    std::vector<SpanOrbit> apex;
};

Span identity_span(const OrbitList& x);
/// Basis span [G/H <- G/L -> G/K] with canonical projection-style legs
/// (data e); requires L <= H and L <= K.
Span basis_span(LatticePtr lat, int H, int L, int K);

/// Checks leg validity: g stab g^-1 <= target stabilizer for every orbit.
void validate_span(const Span& s);

/// Composition via orbit-wise pullbacks. s1: X -> Y, s2: Y -> V.
Span span_compose(const Span& s2, const Span& s1);

/// Equivalence of spans: an apex isomorphism commuting with both legs.
/// Decided through canonical forms (orbit-wise canonicalization).
bool span_equivalent(const Span& a, const Span& b);

/// Canonical form: sorted multiset of canonicalized apex components.
/// Each component key lists (stab members, src orbit, canonical left
/// coset, tgt orbit, canonical right coset) minimized over apex
/// reparametrizations.
std::vector<std::vector<int>> span_canonical_form(const Span& s);

/// Integer combination of canonical single-orbit spans: the Hom groups of
/// the span category after group completion.
struct SpanHom {
    OrbitList source, target;
    std::map<std::vector<int>, long long> terms; // canonical component -> coefficient
};

SpanHom span_hom(const Span& s);
SpanHom hom_add(const SpanHom& a, const SpanHom& b);
SpanHom hom_negate(const SpanHom& a);
/// Bilinear extension of span composition.
SpanHom hom_compose(const SpanHom& s2, const SpanHom& s1);

} // namespace eqalg
