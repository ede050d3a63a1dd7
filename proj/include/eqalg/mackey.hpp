#pragma once

#include <optional>
#include <random>
#include <string>

#include "eqalg/burnside.hpp"

namespace eqalg {

/// Read access to Mackey-functor data, possibly on a sub-poset of the
/// subgroup lattice. Implemented by MackeyFunctor (full lattice) and by
/// InflatedMackey (subgroups containing a fixed normal subgroup).
class MackeyView {
public:
    virtual ~MackeyView() = default;
    virtual const SubgroupLattice& lattice() const = 0;
    virtual bool in_domain(int sub) const = 0;
    virtual int dim(int sub) const = 0;
    virtual Matrix res(int H, int K) const = 0; // M(H) -> M(K), K <= H
    virtual Matrix ind(int H, int K) const = 0; // M(K) -> M(H), K <= H
    virtual Matrix conj(int g, int H) const = 0; // M(H) -> M(gHg^-1)
};

/// Rational Mackey functor for a finite group: per-subgroup values with
/// restriction and induction matrices for comparable pairs. Conjugation
/// matrices are stored for group generators only and composed on demand
/// through the group's word table; independence of the word is one of the
/// checked axioms rather than an assumption.
class MackeyFunctor final : public MackeyView {
public:
    LatticePtr lat;
    std::vector<int> dims;                          // per subgroup index
    std::map<std::pair<int, int>, Matrix> res_map;  // (H, K), K <= H
    std::map<std::pair<int, int>, Matrix> ind_map;  // (H, K), K <= H
    std::map<std::pair<int, int>, Matrix> conj_map; // (generator g, H)

    const SubgroupLattice& lattice() const override { return *lat; }
    bool in_domain(int) const override { return true; }
    int dim(int sub) const override { return dims[sub]; }
    Matrix res(int H, int K) const override;
    Matrix ind(int H, int K) const override;
    Matrix conj(int g, int H) const override;
};

MackeyFunctor mackey_zero(LatticePtr lat);
/// The Burnside Mackey functor H -> A(H) (x) Q with the restriction,
/// induction and conjugation of finite G-sets.
MackeyFunctor mackey_burnside(LatticePtr lat);

/// --- Axiom verification ----------------------------------------------

struct AxiomViolation {
    std::string axiom;        // identity | transitivity | conj-mult | equivariance | mackey
    std::vector<int> witness; // subgroup/element indices locating the instance
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    int instances_checked = 0;
    bool ok() const { return violations.empty(); }
};

/// Verifies the identity, transitivity, conjugation multiplicativity,
/// equivariance and double-coset axioms on every instance of the view's
/// domain; lists every violation with its witness.
AxiomReport axiom_check(const MackeyView& m);

/// --- Burnside action ---------------------------------------------------

/// The action matrix of x in A(H) on M(H): the linear extension of
/// [H/K] -> ind(H,K) res(H,K).
Matrix burnside_action(const MackeyView& m, const LocalBurnside& x);

struct SheafPiece {
    int local_cls; // H-conjugacy class of subgroups of H
    Matrix basis;  // dim M(H) x piece dimension
};

/// The images of the idempotent actions e_K on M(H), one per H-class of
/// subgroups of H; together they decompose M(H).
std::vector<SheafPiece> idempotent_sheaf_pieces(const MackeyView& m, int H);

struct CommutationReport {
    bool holds = false;
    Matrix lhs, rhs;              // matrices M(G) -> M(H)
    std::vector<int> index_set;   // the subgroups x K x^-1 indexing the right side
    std::optional<std::vector<Rational>> applied_lhs, applied_rhs; // when an element was supplied
};

/// Verifies R^G_H(e_(K) s) = sum over the index set of e_(xKx^-1) R^G_H(s)
/// as matrices, optionally applied to a supplied element of M(G).
CommutationReport restriction_commutation_check(const MackeyView& m, int H, int K,
                                                const std::optional<std::vector<Rational>>& s = {});

/// --- Classification: Weyl-module families ------------------------------

struct WeylPiece {
    int cls = -1; // conjugacy class (of the full lattice)
    WeylGroup W;
    int dim = 0;
    std::vector<Matrix> action; // per W element
    Matrix embed;               // basis of the piece inside M(rep) when split from a functor
};

struct WeylModuleFamily {
    LatticePtr lat;
    std::vector<WeylPiece> pieces; // one per conjugacy class, in class order
};

/// Checks that each piece's action matrices satisfy the Weyl group
/// relations (unit and full multiplication table).
void validate_family(const WeylModuleFamily& fam);

/// class (H) -> e_(H) M(H) with its Weyl action through conjugation.
WeylModuleFamily split(const MackeyFunctor& m);

/// --- Equivariant sheaves on the discrete space of subgroups ------------

/// A G-equivariant sheaf on the finite discrete space S(G): a stalk for
/// every subgroup with transport maps along conjugation. Transport is
/// stored on group generators and word-composed, like conjugation above.
struct EquivariantSheaf {
    LatticePtr lat;
    std::vector<int> stalk_dim;
    std::map<std::pair<int, int>, Matrix> gen_transport; // (generator g, L): F_L -> F_{gLg^-1}

    Matrix transport(int g, int L) const;
};

/// Cocycle and shape validation; throws NotEquivariant.
void validate_sheaf(const EquivariantSheaf& f);
/// Weyl condition: every L acts trivially on its own stalk.
bool is_weyl_sheaf(const EquivariantSheaf& f);

EquivariantSheaf sheaf_from_family(const WeylModuleFamily& fam);

struct MackeySheafData {
    EquivariantSheaf sheaf;
    std::vector<Matrix> stalk_basis; // per subgroup L: dim M(L) x stalk_dim[L]
};

/// The Weyl sheaf of a Mackey functor at one finite level: stalk at L is
/// the image of the class idempotent e_(L) acting on M(L).
MackeySheafData sheaf_of_mackey(const MackeyFunctor& m);

struct SectionsData {
    MackeyFunctor functor;
    std::vector<Matrix> section_basis;        // per H: big-space x dim M(H)
    std::vector<std::vector<int>> sub_list;   // per H: subgroups L <= H, ascending
    std::vector<std::vector<int>> sub_offset; // per H: block offset per entry of sub_list
};

/// H-fixed continuous sections over SH of an equivariant sheaf, with
/// restriction = section restriction, induction = summed translated
/// zero-extensions over a transversal, conjugation = translation.
SectionsData mackey_from_sheaf(const EquivariantSheaf& f);

/// Value space of the sections functor at one subgroup (dimension of
/// F(SH)^H); convenience for level computations.
int sections_dim(const EquivariantSheaf& f, int H);

/// Rebuild a Mackey functor from a Weyl-module family (the inverse of
/// split up to natural isomorphism).
MackeyFunctor rebuild(const WeylModuleFamily& fam);

/// --- Morphisms and natural isomorphisms --------------------------------

struct MackeyMorphism {
    std::vector<Matrix> at; // per subgroup H: dim N(H) x dim M(H), for M -> N
};

/// Checks commutation with res/ind/conj on the full domain.
bool is_mackey_morphism(const MackeyView& src, const MackeyView& dst, const MackeyMorphism& f,
                        std::string* why = nullptr);

/// The natural isomorphism M -> sections(sheaf_of_mackey(M)) given by
/// s -> (e_(L) R^H_L s)_L, verified invertible.
MackeyMorphism theta_iso(const MackeyFunctor& m, const MackeySheafData& sh, const SectionsData& sec);

/// --- Products -----------------------------------------------------------

MackeyFunctor mackey_product(const std::vector<const MackeyFunctor*>& factors);
/// Projection onto one factor of the product.
MackeyMorphism product_projection(const std::vector<const MackeyFunctor*>& factors, int which);
/// Universal property: the unique factorization of a cone through the
/// product; checked to be a Mackey morphism satisfying p_i f = psi_i.
MackeyMorphism product_factorize(const std::vector<const MackeyFunctor*>& factors,
                                 const MackeyFunctor& cone_source,
                                 const std::vector<MackeyMorphism>& cone);

/// --- Inflation along a quotient ----------------------------------------

/// A Mackey functor over G/N viewed on the subgroups of G containing N,
/// with maps transported along the double-coset bijection. axiom_check on
/// this view exercises G-level double cosets against quotient-level data.
class InflatedMackey final : public MackeyView {
public:
    LatticePtr lat; // of G
    int N = -1;
    QuotientData q;
    MackeyFunctor base;        // over G/N
    std::vector<int> quot_sub; // per G-subgroup: base-lattice index, or -1

    const SubgroupLattice& lattice() const override { return *lat; }
    bool in_domain(int sub) const override { return quot_sub[sub] >= 0; }
    int dim(int sub) const override { return base.dim(quot_sub[sub]); }
    Matrix res(int H, int K) const override { return base.res(quot_sub[H], quot_sub[K]); }
    Matrix ind(int H, int K) const override { return base.ind(quot_sub[H], quot_sub[K]); }
    Matrix conj(int g, int H) const override;
};

/// pre: N normal in G and base's group equal to the quotient G/N (same
/// multiplication table).
InflatedMackey inflate(MackeyFunctor base, LatticePtr big_lat, int N);

/// --- Test-data generation ----------------------------------------------

/// Random valid Weyl-module family: per class a direct sum of coset
/// permutation representations of the Weyl group, conjugated by a random
/// invertible change of basis. Dimensions bounded by max_dim.
WeylModuleFamily random_weyl_family(LatticePtr lat, int max_dim, std::mt19937_64& rng);

/// A catalogued single-entry mutation for checker tests.
struct Mutation {
    enum Kind { Res, Ind, Conj } kind;
    int H = -1, K = -1, g = -1;
    std::size_t row = 0, col = 0;
    Rational delta = 1;
};

MackeyFunctor mutate(const MackeyFunctor& m, const Mutation& mu);

} // namespace eqalg
