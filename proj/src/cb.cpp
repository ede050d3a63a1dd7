#include "eqalg/cb.hpp"

#include <algorithm>

namespace eqalg::cb {

namespace {

SpacePtr make(SpaceExpr e) { return std::make_shared<const SpaceExpr>(std::move(e)); }

} // namespace

SpacePtr space_empty() { return make({}); }

SpacePtr space_discrete(int n) {
    require(n >= 1, "BadSpace", "disc(n) needs n >= 1");
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::Discrete;
    e.n = n;
    return make(std::move(e));
}

SpacePtr space_p() {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::P;
    return make(std::move(e));
}

SpacePtr space_sum(SpacePtr a, SpacePtr b) {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::Sum;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

SpacePtr space_prod(SpacePtr a, SpacePtr b) {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::Prod;
    e.a = std::move(a);
    e.b = std::move(b);
    return make(std::move(e));
}

SpacePtr space_pel_b() {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::Named;
    e.name = "B";
    e.named_rank = 1;
    e.named_scattered = false;
    return make(std::move(e));
}

SpacePtr space_pel_f() {
    SpaceExpr e;
    e.kind = SpaceExpr::Kind::Named;
    e.name = "F";
    e.named_rank = 0;
    e.named_scattered = false;
    return make(std::move(e));
}

std::string to_string(const SpaceExpr& x) {
    switch (x.kind) {
    case SpaceExpr::Kind::Empty:
        return "empty";
    case SpaceExpr::Kind::Discrete:
        return "disc(" + std::to_string(x.n) + ")";
    case SpaceExpr::Kind::P:
        return "P";
    case SpaceExpr::Kind::Sum:
        return "(" + to_string(*x.a) + " + " + to_string(*x.b) + ")";
    case SpaceExpr::Kind::Prod:
        return "(" + to_string(*x.a) + " * " + to_string(*x.b) + ")";
    case SpaceExpr::Kind::Named:
        return x.name;
    }
    return "?";
}

bool is_empty_space(const SpaceExpr& x) {
    switch (x.kind) {
    case SpaceExpr::Kind::Empty:
        return true;
    case SpaceExpr::Kind::Sum:
        return is_empty_space(*x.a) && is_empty_space(*x.b);
    case SpaceExpr::Kind::Prod:
        return is_empty_space(*x.a) || is_empty_space(*x.b);
    default:
        return false;
    }
}

int rank(const SpaceExpr& x) {
    switch (x.kind) {
    case SpaceExpr::Kind::Empty:
        return 0;
    case SpaceExpr::Kind::Discrete:
        return 1;
    case SpaceExpr::Kind::P:
        return 2;
    case SpaceExpr::Kind::Sum: {
        // Clopen summands derive independently.
        return std::max(rank(*x.a), rank(*x.b));
    }
    case SpaceExpr::Kind::Prod: {
        int ra = rank(*x.a), rb = rank(*x.b);
        if (ra == 0 || rb == 0) return is_empty_space(x) ? 0 : std::min(ra, rb);
        return ra + rb - 1;
    }
    case SpaceExpr::Kind::Named:
        return x.named_rank;
    }
    return 0;
}

bool is_scattered(const SpaceExpr& x) {
    switch (x.kind) {
    case SpaceExpr::Kind::Sum:
        return is_scattered(*x.a) && is_scattered(*x.b);
    case SpaceExpr::Kind::Prod:
        return is_scattered(*x.a) && is_scattered(*x.b);
    case SpaceExpr::Kind::Named:
        return x.named_scattered;
    default:
        return true;
    }
}

PointPtr point_discrete(int index) {
    SpacePoint p;
    p.kind = SpacePoint::Kind::Discrete;
    p.value = index;
    return std::make_shared<const SpacePoint>(std::move(p));
}

PointPtr point_p(int value) {
    SpacePoint p;
    p.kind = SpacePoint::Kind::P;
    p.value = value;
    return std::make_shared<const SpacePoint>(std::move(p));
}

PointPtr point_sum(int side, PointPtr child) {
    SpacePoint p;
    p.kind = SpacePoint::Kind::Sum;
    p.side = side;
    p.a = std::move(child);
    return std::make_shared<const SpacePoint>(std::move(p));
}

PointPtr point_prod(PointPtr a, PointPtr b) {
    SpacePoint p;
    p.kind = SpacePoint::Kind::Prod;
    p.a = std::move(a);
    p.b = std::move(b);
    return std::make_shared<const SpacePoint>(std::move(p));
}

void validate_point(const SpaceExpr& x, const SpacePoint& p) {
    switch (x.kind) {
    case SpaceExpr::Kind::Empty:
        fail("PointNotInSpace", "the empty space has no points");
    case SpaceExpr::Kind::Discrete:
        require(p.kind == SpacePoint::Kind::Discrete && p.value >= 0 && p.value < x.n,
                "PointNotInSpace", "discrete point out of range");
        return;
    case SpaceExpr::Kind::P:
        require(p.kind == SpacePoint::Kind::P && (p.value == kInfinity || p.value >= 0),
                "PointNotInSpace", "P point must be a natural number or the limit");
        return;
    case SpaceExpr::Kind::Sum:
        require(p.kind == SpacePoint::Kind::Sum && (p.side == 0 || p.side == 1) && p.a,
                "PointNotInSpace", "sum point needs a side and a member");
        validate_point(p.side == 0 ? *x.a : *x.b, *p.a);
        return;
    case SpaceExpr::Kind::Prod:
        require(p.kind == SpacePoint::Kind::Prod && p.a && p.b, "PointNotInSpace",
                "product point needs two coordinates");
        validate_point(*x.a, *p.a);
        validate_point(*x.b, *p.b);
        return;
    case SpaceExpr::Kind::Named:
        fail("PointNotInSpace", "points of named constants are not represented");
    }
}

namespace {

int height_unchecked(const SpaceExpr& x, const SpacePoint& p) {
    switch (x.kind) {
    case SpaceExpr::Kind::Discrete:
        return 0;
    case SpaceExpr::Kind::P:
        return p.value == kInfinity ? 1 : 0;
    case SpaceExpr::Kind::Sum:
        return height_unchecked(p.side == 0 ? *x.a : *x.b, *p.a);
    case SpaceExpr::Kind::Prod:
        return height_unchecked(*x.a, *p.a) + height_unchecked(*x.b, *p.b);
    default:
        return 0;
    }
}

} // namespace

int height(const SpaceExpr& x, const SpacePoint& p) {
    validate_point(x, p);
    return height_unchecked(x, p);
}

bool in_derivative(const SpaceExpr& x, const SpacePoint& p, int k) {
    require(k >= 0, "BadSpace", "derivative stage must be non-negative");
    return height(x, p) >= k;
}

namespace {

bool is_p_power(const SpaceExpr& x, int& n) {
    if (x.kind == SpaceExpr::Kind::P) {
        n += 1;
        return true;
    }
    if (x.kind == SpaceExpr::Kind::Prod) return is_p_power(*x.a, n) && is_p_power(*x.b, n);
    return false;
}

} // namespace

DerivativeDescription derivative(const SpaceExpr& x, int k) {
    require(k >= 0, "BadSpace", "derivative stage must be non-negative");
    DerivativeDescription d;
    d.k = k;
    d.empty = k >= rank(x) || is_empty_space(x);
    int n = 0;
    if (is_p_power(x, n))
        d.predicate = "points with at least " + std::to_string(k) + " coordinates at the limit";
    else
        d.predicate = "points of height at least " + std::to_string(k);
    return d;
}

IdReport injective_dimension(const SpaceExpr& x) {
    require(!is_empty_space(x), "EmptySpace", "the empty space has no injective dimension report");
    require(is_scattered(x), "NotScattered",
            "injective dimension is only reported for scattered expressions");
    IdReport rep;
    rep.rank = rank(x);
    rep.scattered = true;
    rep.injective_dimension = rep.rank - 1;
    return rep;
}

SubsetFamilyOracle SubsetFamilyOracle::p_power(int n) {
    require(n >= 0 && n <= 20, "BadSpace", "oracle supports small powers only");
    SubsetFamilyOracle o;
    o.n_ = n;
    for (unsigned m = 0; m < (1u << n); ++m) o.family_.push_back(m);
    return o;
}

bool SubsetFamilyOracle::member(unsigned mask) const {
    return std::binary_search(family_.begin(), family_.end(), mask);
}

SubsetFamilyOracle SubsetFamilyOracle::derived() const {
    SubsetFamilyOracle o;
    o.n_ = n_;
    for (unsigned m : family_) {
        // Isolated patterns are the minimal ones: a point accumulates
        // others exactly when some strictly smaller pattern is present.
        bool has_smaller = false;
        for (unsigned sub = (m - 1) & m; !has_smaller; sub = (sub - 1) & m) {
            if (m != 0 && sub != m && member(sub)) has_smaller = true;
            if (sub == 0) break;
        }
        if (m != 0 && has_smaller) o.family_.push_back(m);
    }
    return o;
}

int SubsetFamilyOracle::rank() const {
    SubsetFamilyOracle cur = *this;
    int steps = 0;
    while (!cur.empty()) {
        cur = cur.derived();
        ++steps;
        require(steps <= 64, "Internal", "oracle derivative did not terminate");
    }
    return steps;
}

int SubsetFamilyOracle::height(unsigned mask) const {
    SubsetFamilyOracle cur = *this;
    int h = -1;
    while (cur.member(mask)) {
        ++h;
        cur = cur.derived();
    }
    require(h >= 0, "PointNotInSpace", "pattern not in the oracle space");
    return h;
}

} // namespace eqalg::cb
