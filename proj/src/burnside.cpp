#include "eqalg/burnside.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "eqalg/error.hpp"

namespace eqalg {

const MarksMatrix& marks_matrix(const SubgroupLattice& lat) {
    static std::mutex mu;
    static std::unordered_map<std::uint64_t, std::unique_ptr<MarksMatrix>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(lat.id());
        if (it != memo.end()) return *it->second;
    }
    auto built = std::make_unique<MarksMatrix>();
    int c = lat.class_count();
    built->marks = Matrix(c, c);
    for (int k = 0; k < c; ++k)
        for (int h = 0; h < c; ++h)
            built->marks.at(k, h) = orbit_fixed_count(lat, lat.class_rep(h), lat.class_rep(k));
    built->inverse = built->marks.inverse();
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = memo.emplace(lat.id(), std::move(built));
    return *it->second;
}

bool BurnsideElement::is_idempotent() const {
    return std::all_of(marks.begin(), marks.end(),
                       [](const Rational& m) { return m == 0 || m == 1; });
}

BurnsideElement from_coeffs(LatticePtr lat, std::vector<Rational> coeffs) {
    const auto& mm = marks_matrix(*lat);
    require(coeffs.size() == mm.marks.rows(), "BadElement", "coefficient vector has wrong length");
    std::vector<Rational> marks = apply(mm.marks, coeffs);
    return BurnsideElement{std::move(lat), std::move(coeffs), std::move(marks)};
}

BurnsideElement from_marks(LatticePtr lat, std::vector<Rational> marks) {
    const auto& mm = marks_matrix(*lat);
    require(marks.size() == mm.marks.rows(), "BadElement", "mark vector has wrong length");
    std::vector<Rational> coeffs = apply(mm.inverse, marks);
    return BurnsideElement{std::move(lat), std::move(coeffs), std::move(marks)};
}

BurnsideElement basis_element(LatticePtr lat, int cls) {
    std::vector<Rational> coeffs(lat->class_count());
    coeffs[cls] = 1;
    return from_coeffs(std::move(lat), std::move(coeffs));
}

BurnsideElement burnside_unit(LatticePtr lat) {
    int cls = lat->class_of(lat->full_subgroup());
    return basis_element(std::move(lat), cls);
}

BurnsideElement burnside_zero(LatticePtr lat) {
    std::vector<Rational> coeffs(lat->class_count());
    return from_coeffs(std::move(lat), std::move(coeffs));
}

BurnsideElement from_gset(const GSet& x) {
    std::vector<Rational> coeffs(x.lat->class_count());
    for (const auto& [cls, mult] : x.orbits) coeffs[cls] = mult;
    return from_coeffs(x.lat, std::move(coeffs));
}

namespace {

void check_same(const BurnsideElement& a, const BurnsideElement& b) {
    require(a.lat->id() == b.lat->id(), "GroupMismatch", "Burnside arithmetic needs one group");
}

} // namespace

BurnsideElement add(const BurnsideElement& a, const BurnsideElement& b) {
    check_same(a, b);
    BurnsideElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        out.coeffs[i] += b.coeffs[i];
        out.marks[i] += b.marks[i];
    }
    return out;
}

BurnsideElement sub(const BurnsideElement& a, const BurnsideElement& b) {
    check_same(a, b);
    BurnsideElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        out.coeffs[i] -= b.coeffs[i];
        out.marks[i] -= b.marks[i];
    }
    return out;
}

BurnsideElement scale(const BurnsideElement& a, const Rational& q) {
    BurnsideElement out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        out.coeffs[i] *= q;
        out.marks[i] *= q;
    }
    return out;
}

BurnsideElement multiply(const BurnsideElement& a, const BurnsideElement& b) {
    check_same(a, b);
    std::vector<Rational> marks(a.marks.size());
    for (std::size_t i = 0; i < marks.size(); ++i) marks[i] = a.marks[i] * b.marks[i];
    return from_marks(a.lat, std::move(marks));
}

BurnsideElement idempotent_finite(const LatticePtr& lat, int H) {
    Rational norm = Rational(1) / lat->subgroup(normalizer(*lat, H)).order();
    std::vector<Rational> coeffs(lat->class_count());
    for (int D = 0; D < lat->size(); ++D) {
        if (!lat->leq(D, H)) continue;
        Rational c = Rational(lat->subgroup(D).order()) * norm * Rational(mobius(*lat, D, H));
        coeffs[lat->class_of(D)] += c;
    }
    return from_coeffs(lat, std::move(coeffs));
}

std::vector<BurnsideElement> decompose_unit(const LatticePtr& lat) {
    std::vector<BurnsideElement> out;
    out.reserve(lat->class_count());
    for (int c = 0; c < lat->class_count(); ++c) out.push_back(idempotent_finite(lat, lat->class_rep(c)));
    return out;
}

LocalClasses local_classes(const SubgroupLattice& lat, int H) {
    LocalClasses out;
    for (int s = 0; s < lat.size(); ++s) {
        if (!lat.leq(s, H) || out.class_of.count(s)) continue;
        std::vector<int> orbit;
        for (int h : lat.subgroup(H).members) orbit.push_back(lat.conjugate_index(h, s));
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        int cls = static_cast<int>(out.classes.size());
        for (int m : orbit) out.class_of[m] = cls;
        out.classes.push_back(std::move(orbit));
    }
    return out;
}

long long local_mark(const SubgroupLattice& lat, int H, int D, int L) {
    const FiniteGroup& g = lat.group();
    const Subgroup& sh = lat.subgroup(H);
    const Subgroup& sd = lat.subgroup(D);
    const Subgroup& sl = lat.subgroup(L);
    std::vector<char> seen(g.order(), 0);
    long long count = 0;
    for (int t : sh.members) {
        if (seen[t]) continue;
        for (int d : sd.members) seen[g.mul(t, d)] = 1;
        bool fixed = true;
        for (int l : sl.members)
            if (!sd.contains(g.mul(g.mul(g.inv(t), l), t))) {
                fixed = false;
                break;
            }
        if (fixed) ++count;
    }
    return count;
}

LocalBurnside local_idempotent(const SubgroupLattice& lat, int H, int K) {
    require(lat.leq(K, H), "NotSubgroup", "local idempotent needs K <= H");
    const Subgroup& sh = lat.subgroup(H);
    const Subgroup& nk = lat.subgroup(normalizer(lat, K));
    long long nh_order = 0; // |N_H(K)|
    for (int m : nk.members)
        if (sh.contains(m)) ++nh_order;
    LocalClasses lc = local_classes(lat, H);
    LocalBurnside out{H, {}};
    for (int D = 0; D < lat.size(); ++D) {
        if (!lat.leq(D, K)) continue;
        Rational c = Rational(lat.subgroup(D).order(), nh_order) * Rational(mobius(lat, D, K));
        if (c == 0) continue;
        int rep = lc.rep(lc.class_of.at(D));
        auto [it, inserted] = out.coeff.emplace(rep, c);
        if (!inserted) it->second += c;
    }
    for (auto it = out.coeff.begin(); it != out.coeff.end();)
        it = it->second == 0 ? out.coeff.erase(it) : std::next(it);
    return out;
}

} // namespace eqalg
