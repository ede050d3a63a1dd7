#pragma once

#include <map>
#include <vector>

#include "eqalg/gset.hpp"
#include "eqalg/matrix.hpp"

namespace eqalg {

/// Table of marks of G: M[(K),(H)] = |(G/H)^K| with classes ordered by
/// increasing subgroup size then canonical representative (the lattice
/// class order). Lower triangular under that order and invertible.
struct MarksMatrix {
    Matrix marks;
    Matrix inverse;
};

/// Marks matrix for a lattice, computed once and cached behind an
/// internally synchronized, observably pure memo keyed by lattice id.
const MarksMatrix& marks_matrix(const SubgroupLattice& lat);

/// Element of the rational Burnside ring A(G): exact-rational coefficients
/// in the orbit basis [G/H] together with the mark vector, kept in sync.
struct BurnsideElement {
    LatticePtr lat;
    std::vector<Rational> coeffs; // by conjugacy class
    std::vector<Rational> marks;  // by conjugacy class

    bool operator==(const BurnsideElement& o) const {
        return coeffs == o.coeffs && marks == o.marks;
    }
    bool is_idempotent() const;
};

BurnsideElement from_coeffs(LatticePtr lat, std::vector<Rational> coeffs);
BurnsideElement from_marks(LatticePtr lat, std::vector<Rational> marks);
BurnsideElement basis_element(LatticePtr lat, int cls);
BurnsideElement burnside_unit(LatticePtr lat);
BurnsideElement burnside_zero(LatticePtr lat);
BurnsideElement from_gset(const GSet& x);

BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement sub(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement scale(const BurnsideElement& a, const Rational& q);
/// Componentwise mark product; coefficients recovered through the inverse
/// marks matrix. Agrees with gset_product on basis elements.
BurnsideElement multiply(const BurnsideElement& a, const BurnsideElement& b);

/// e_H = sum over D <= H of |D|/|N_G(H)| mu(D,H) [G/D]. The mark vector is
/// the indicator of the class of H.
BurnsideElement idempotent_finite(const LatticePtr& lat, int H);

/// All class idempotents, one per conjugacy class in class order; they sum
/// to 1 and are pairwise orthogonal.
std::vector<BurnsideElement> decompose_unit(const LatticePtr& lat);

/// --- Burnside rings of subgroups -------------------------------------
///
/// Elements of A(H) for a subgroup H of G, as exact-rational combinations
/// of the basis [H/D] indexed by lattice subgroup indices D <= H.
/// Coefficients on H-conjugate subgroups describe the same basis vector,
/// so values are accumulated per H-class canonical representative.
struct LocalBurnside {
    int H = -1;
    std::map<int, Rational> coeff; // D (H-class canonical rep, D <= H) -> coefficient
};

/// H-conjugacy classes of subgroups of H.
struct LocalClasses {
    std::vector<std::vector<int>> classes; // each sorted, ordered by canonical rep
    std::map<int, int> class_of;           // subgroup index -> local class
    int rep(int local_cls) const { return classes[local_cls].front(); }
};
LocalClasses local_classes(const SubgroupLattice& lat, int H);

/// The idempotent e_K of A(H) for K <= H (indicator of the H-class of K on
/// marks of A(H)); coefficient of [H/D] is |D|/|N_H(K)| mu(D,K).
LocalBurnside local_idempotent(const SubgroupLattice& lat, int H, int K);

/// |(H/D)^L| for D, L <= H.
long long local_mark(const SubgroupLattice& lat, int H, int D, int L);

} // namespace eqalg
