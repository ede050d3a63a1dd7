#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eqalg/rational.hpp"

namespace eqalg {

/// A finite group given by its full multiplication table. Elements are the
/// indices 0..order-1. Immutable after construction; all functions taking a
/// FiniteGroup are pure, so values can be shared freely between threads.
class FiniteGroup {
public:
    /// Builds from an explicit Cayley table. Validates the group axioms
    /// unless `validate` is false (used for tables correct by construction).
    static std::shared_ptr<const FiniteGroup> from_table(std::vector<std::vector<int>> table,
                                                         std::string name, bool validate = true);

    /// Builds the subgroup of Sym(k) generated by permutations
    /// (each a vector image map on 0..k-1). The Cayley table is
    /// materialized immediately.
    static std::shared_ptr<const FiniteGroup> from_permutations(
        const std::vector<std::vector<int>>& gens, std::string name);

    static std::shared_ptr<const FiniteGroup> cyclic(int n);
    static std::shared_ptr<const FiniteGroup> symmetric(int n);
    static std::shared_ptr<const FiniteGroup> product(const std::shared_ptr<const FiniteGroup>& a,
                                                      const std::shared_ptr<const FiniteGroup>& b);

    /// Resolves built-in names: C<n>, S<n> (n <= 5), Z/<p>^<k>, Z/<n>.
    static std::shared_ptr<const FiniteGroup> builtin(const std::string& name);

    /// Parses the group file format: `cayley` header + n rows of n 0-based
    /// indices, or `perm` header + one generator per line in disjoint-cycle
    /// notation on {1..k}.
    static std::shared_ptr<const FiniteGroup> parse(const std::string& text);

    int order() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); } // g x g^-1
    const std::string& name() const { return name_; }

    const std::vector<int>& generators() const { return gens_; }
    /// Word for g over generators(), multiplying left to right.
    const std::vector<int>& word(int g) const { return words_[g]; }

    /// Pair-product group: element indices of this must decompose as
    /// a*|B|+b. Only set for products; used by tower builtins.
    std::pair<std::shared_ptr<const FiniteGroup>, std::shared_ptr<const FiniteGroup>> factors() const {
        return {factor_a_, factor_b_};
    }

private:
    FiniteGroup() = default;
    void finalize();

    int n_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::string name_;
    std::vector<int> gens_;
    std::vector<std::vector<int>> words_;
    std::shared_ptr<const FiniteGroup> factor_a_, factor_b_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Subgroup of a fixed parent group: a sorted set of element indices,
/// closed under product and inverse and containing the identity.
struct Subgroup {
    std::vector<int> members;

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    bool operator==(const Subgroup& o) const = default;
    bool operator<(const Subgroup& o) const; // size, then lexicographic members
};

Subgroup closure(const FiniteGroup& G, std::vector<int> seed);
Subgroup conjugate(const FiniteGroup& G, int g, const Subgroup& H);
bool is_subgroup_of(const Subgroup& inner, const Subgroup& outer);

/// The full lattice of subgroups of G with containment order and
/// conjugacy classes. Canonical representatives are the lexicographically
/// least member sets, so everything downstream is deterministic.
class SubgroupLattice {
public:
    explicit SubgroupLattice(GroupPtr G, int max_order = kDefaultMaxOrder);

    static constexpr int kDefaultMaxOrder = 512;

    const FiniteGroup& group() const { return *G_; }
    GroupPtr group_ptr() const { return G_; }

    int size() const { return static_cast<int>(subs_.size()); }
    const Subgroup& subgroup(int i) const { return subs_[i]; }
    int index_of(const Subgroup& s) const; // -1 when absent
    int index_of_members(std::vector<int> members) const;

    bool leq(int inner, int outer) const { return leq_[inner][outer]; }

    int trivial_subgroup() const { return trivial_; }
    int full_subgroup() const { return full_; }

    int class_count() const { return static_cast<int>(classes_.size()); }
    int class_of(int sub) const { return cls_of_[sub]; }
    const std::vector<int>& class_members(int cls) const { return classes_[cls]; }
    int class_rep(int cls) const { return classes_[cls].front(); }
    /// Least g with  g * rep * g^-1 == sub  for sub's class representative.
    int conjugator_from_rep(int sub) const { return conj_from_rep_[sub]; }

    int conjugate_index(int g, int sub) const { return conj_table_[sub][g]; }

    /// Stable identity used by caches.
    std::uint64_t id() const { return id_; }

    /// Deterministic class label, e.g. "1:C1" (index:order tag).
    std::string class_label(int cls) const;

    /// Minimal generating-ish set of a subgroup (greedy, deterministic).
    const std::vector<int>& subgroup_generators(int sub) const { return sub_gens_[sub]; }

private:
    GroupPtr G_;
    std::vector<Subgroup> subs_;
    std::map<std::vector<int>, int> by_members_;
    std::vector<std::vector<char>> leq_;
    std::vector<int> cls_of_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> conj_from_rep_;
    std::vector<std::vector<int>> sub_gens_;
    std::vector<std::vector<int>> conj_table_; // [sub][g] -> index of g sub g^-1
    int trivial_ = -1, full_ = -1;
    std::uint64_t id_ = 0;
};

using LatticePtr = std::shared_ptr<const SubgroupLattice>;

LatticePtr make_lattice(GroupPtr G, int max_order = SubgroupLattice::kDefaultMaxOrder);

// Subgroup-level operations. Subgroups are lattice indices.
int normalizer(const SubgroupLattice& lat, int H);
int core(const SubgroupLattice& lat, int H);

/// N_G(H)/H together with the coset data needed to act through it.
struct WeylGroup {
    GroupPtr W;
    int normalizer_sub = -1;            // lattice index of N_G(H)
    std::vector<int> coset_rep;         // W element -> least representative in N_G(H)
    std::map<int, int> coset_of;        // element of N_G(H) -> W element
};
WeylGroup weyl_group(const SubgroupLattice& lat, int H);

/// Representatives x_1..x_m of the double cosets H x K in G, deterministic
/// (least element index per coset), pairwise disjoint and covering G.
std::vector<int> double_cosets(const FiniteGroup& G, const Subgroup& H, const Subgroup& K);
std::vector<int> double_cosets(const SubgroupLattice& lat, int H, int K);

/// Double cosets A x B inside the subgroup `ambient` (A, B <= ambient),
/// least representative per coset, ascending.
std::vector<int> double_cosets_in(const FiniteGroup& G, const Subgroup& ambient, const Subgroup& A,
                                  const Subgroup& B);

/// Lattice index of the intersection of two subgroups.
int intersection(const SubgroupLattice& lat, int a, int b);

/// Poset Moebius function via the alternating count of strictly
/// increasing subgroup chains from D to K. Requires D <= K.
Integer mobius(const SubgroupLattice& lat, int D, int K);

/// Left transversal of K in H (K <= H): least representative per coset hK,
/// ascending.
std::vector<int> transversal(const SubgroupLattice& lat, int H, int K);

/// Quotient N/K for K normal in the subgroup N; elements are cosets
/// ordered by least representative.
struct QuotientData {
    GroupPtr Q;
    std::vector<int> coset_rep;  // Q element -> least representative in N
    std::map<int, int> coset_of; // element of N -> Q element
};
QuotientData quotient(const FiniteGroup& G, const Subgroup& N, const Subgroup& K);

} // namespace eqalg
