#pragma once

#include <memory>
#include <string>
#include <vector>

#include "eqalg/error.hpp"

namespace eqalg::cb {

/// Symbolic scattered space expression. P is the convergent-sequence
/// space {1/n : n in N} together with its limit point; Named constants
/// carry rank metadata for spaces outside the scattered grammar.
struct SpaceExpr;
using SpacePtr = std::shared_ptr<const SpaceExpr>;

struct SpaceExpr {
    enum class Kind { Empty, Discrete, P, Sum, Prod, Named };
    Kind kind = Kind::Empty;
    int n = 0; // Discrete size
    std::string name;
    int named_rank = 0;
    bool named_scattered = true;
    SpacePtr a, b;
};

SpacePtr space_empty();
SpacePtr space_discrete(int n);
SpacePtr space_p();
SpacePtr space_sum(SpacePtr a, SpacePtr b);
SpacePtr space_prod(SpacePtr a, SpacePtr b);
/// Cantor-like middle-thirds set with reinserted midpoints: rank 1 with a
/// perfect hull, so not scattered.
SpacePtr space_pel_b();
/// The Cantor set itself: perfect, rank 0.
SpacePtr space_pel_f();

std::string to_string(const SpaceExpr& x);

/// Cantor-Bendixson rank by the structural rules: Empty 0, Discrete 1,
/// P 2, Sum max, nonzero Prod sum of ranks minus one.
int rank(const SpaceExpr& x);
bool is_scattered(const SpaceExpr& x);
bool is_empty_space(const SpaceExpr& x);

/// A point of a space expression, mirroring the tree shape.
/// P-coordinates take values in N together with infinity for the limit.
constexpr int kInfinity = -1;

struct SpacePoint;
using PointPtr = std::shared_ptr<const SpacePoint>;

struct SpacePoint {
    enum class Kind { Discrete, P, Sum, Prod };
    Kind kind = Kind::P;
    int value = 0; // Discrete index, or P value (kInfinity for the limit)
    int side = 0;  // Sum: 0 = left, 1 = right
    PointPtr a, b; // Sum child in a; Prod children in a, b
};

PointPtr point_discrete(int index);
PointPtr point_p(int value);
PointPtr point_sum(int side, PointPtr child);
PointPtr point_prod(PointPtr a, PointPtr b);

/// Throws PointNotInSpace when shapes or ranges do not match.
void validate_point(const SpaceExpr& x, const SpacePoint& p);

/// Cantor-Bendixson height: the last derivative stage containing the
/// point. Additive over products.
int height(const SpaceExpr& x, const SpacePoint& p);

/// Membership in the k-th derivative X^(k).
bool in_derivative(const SpaceExpr& x, const SpacePoint& p, int k);

struct DerivativeDescription {
    int k = 0;
    bool empty = false;
    std::string predicate;
};
DerivativeDescription derivative(const SpaceExpr& x, int k);

struct IdReport {
    int rank = 0;
    bool scattered = true;
    int injective_dimension = 0;
};
/// rank - 1 for nonempty scattered expressions; EmptySpace on Empty and
/// NotScattered on named non-scattered constants.
IdReport injective_dimension(const SpaceExpr& x);

/// ---- Independent derivative oracle for powers of P --------------------
///
/// Points of P^n are classified by the set of coordinates sitting at the
/// limit; with finite coordinates pinned by small neighborhoods, a subset
/// family of 2^[n] describes each derived set exactly. One derivative step
/// keeps the patterns that strictly contain another pattern of the set.
class SubsetFamilyOracle {
public:
    static SubsetFamilyOracle p_power(int n);

    SubsetFamilyOracle derived() const;
    bool empty() const { return family_.empty(); }
    bool member(unsigned mask) const;
    int n() const { return n_; }

    /// Steps of the derivative process until the empty set.
    int rank() const;
    /// Height of a point with the given infinity pattern.
    int height(unsigned mask) const;

private:
    int n_ = 0;
    std::vector<unsigned> family_; // sorted masks
};

} // namespace eqalg::cb
