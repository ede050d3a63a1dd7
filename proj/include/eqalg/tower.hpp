#pragma once

#include "eqalg/mackey.hpp"

namespace eqalg {

/// A profinite group presented as a finite tower of finite quotients
/// G_0 <- G_1 <- ... <- G_d with surjective connecting homomorphisms.
/// All computation is level-wise; nothing infinite is materialized.
struct Tower {
    std::string name;
    std::vector<GroupPtr> groups;       // G_0 .. G_d
    std::vector<std::vector<int>> proj; // proj[i]: G_{i+1} -> G_i
    std::vector<LatticePtr> lats;

    int depth() const { return static_cast<int>(groups.size()) - 1; }
};

/// Validates surjectivity and the homomorphism law of each level map.
Tower make_tower(std::string name, std::vector<GroupPtr> groups,
                 std::vector<std::vector<int>> proj);

/// G_i = Z/p^i with reduction maps.
Tower zp_tower(int p, int depth);
/// Level-wise direct product of two towers of equal depth.
Tower product_tower(const Tower& a, const Tower& b);
/// The same finite group at every level with identity maps; quotients by
/// the trivial subgroup, so any Mackey functor gives compatible levels.
Tower constant_tower(GroupPtr g, int depth);
/// Depth-0 tower on the trivial group.
Tower trivial_tower();

/// The space of subgroups at one level with its connecting map.
struct LevelSpace {
    int level = 0;
    LatticePtr lat;
    std::vector<int> to_prev; // subgroup of G_i -> lattice index at level i-1 (empty at level 0)
};
LevelSpace level_space(const Tower& t, int i);

/// Lattice index at level i+1 of the full preimage of a level-i subgroup.
int preimage_subgroup(const Tower& t, int i, int sub);

/// Checks that each connecting-map fiber over a point K equals the set of
/// subgroups whose product with the kernel is the preimage of K.
struct FiberLawReport {
    bool ok = true;
    std::vector<std::string> issues;
};
FiberLawReport fiber_law_check(const Tower& t, int i);

/// Level-wise verification that inflation embeds each Burnside ring into
/// the next: marks precompose with the connecting map, products and
/// idempotents are preserved, and the coefficient map is injective.
struct ColimitLevel {
    bool marks_ok = false, ring_hom_ok = false, injective_ok = false, idempotents_ok = false;
    bool ok() const { return marks_ok && ring_hom_ok && injective_ok && idempotents_ok; }
};
struct ColimitReport {
    std::vector<ColimitLevel> levels;
    bool ok() const;
};
ColimitReport burnside_colimit_check(const Tower& t, int depth);

/// A compatible family of Mackey functors over the tower levels: the
/// level-i functor must equal the level-(i+1) functor on preimages.
struct TowerMackey {
    std::string name;
    std::vector<MackeyFunctor> levels;
};

/// Throws IncompatibleTower when values or maps disagree across levels.
void validate_tower_mackey(const Tower& t, const TowerMackey& tm);

/// The multiplication tower functor: every value Q, restriction and
/// conjugation the identity, induction multiplication by the index.
TowerMackey index_multiplication_mackey(const Tower& t);
/// The same functor at every level of a constant tower.
TowerMackey constant_tower_mackey(const Tower& t, const MackeyFunctor& m);
/// Level-wise zero functor.
TowerMackey zero_tower_mackey(const Tower& t);
/// Level-wise product.
TowerMackey tower_mackey_product(const Tower& t, const TowerMackey& a, const TowerMackey& b);

/// A closed-subgroup truncation: a compatible sequence of level subgroups.
struct Thread {
    std::vector<int> subs; // per level, lattice indices
};
/// Thread determined by its deepest component.
Thread thread_from_top(const Tower& t, int depth, int top_sub);
std::vector<Thread> all_threads(const Tower& t, int depth);
void validate_thread(const Tower& t, const Thread& k, int depth);

/// Truncated stalk of the Weyl sheaf of a TowerMackey at a thread: the
/// image of the class idempotent of the thread point at each level, with
/// the idempotent cut-down of restriction as transition maps.
struct StalkReport {
    std::vector<int> dims;          // per level 0..depth
    std::vector<Matrix> transitions; // dims[i] -> dims[i+1]
    bool stabilizes = false;        // an isomorphism tail exists
    int stable_from = 0;            // first level of the isomorphism tail
    int stalk_dim = 0;              // dimension at the truncation depth
};
StalkReport weyl_stalk(const Tower& t, const TowerMackey& tm, const Thread& k, int depth);

/// Per-level round trip between a Mackey functor and its Weyl sheaf:
/// sections of the stalkwise sheaf rebuild the functor (explicit natural
/// isomorphism), and the sheaf of the rebuilt functor has the original
/// stalks equivariantly.
struct RoundtripLevel {
    int level = 0;
    std::vector<int> stalk_dims;  // per subgroup of G_i
    std::vector<int> value_dims;  // per subgroup: dim M_i(H)
    bool mackey_of_weyl_ok = false; // Mackey(Weyl(M)) ~ M
    bool weyl_of_mackey_ok = false; // Weyl(Mackey(F)) ~ F
};
struct RoundtripReport {
    std::vector<RoundtripLevel> levels;
    std::vector<char> thread_stabilized; // per thread of the deepest level
    bool ok() const;
};
RoundtripReport roundtrip_certificate(const Tower& t, const TowerMackey& tm, int depth);

} // namespace eqalg
