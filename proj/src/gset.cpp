#include "eqalg/gset.hpp"

#include <algorithm>

#include "eqalg/error.hpp"

namespace eqalg {

long long GSet::total_size() const {
    long long total = 0;
    int n = lat->group().order();
    for (const auto& [cls, mult] : orbits)
        total += mult * (n / lat->subgroup(lat->class_rep(cls)).order());
    return total;
}

void GSet::add_orbit(int cls, long long mult) {
    if (mult == 0) return;
    auto it = orbits.find(cls);
    if (it == orbits.end())
        orbits[cls] = mult;
    else if ((it->second += mult) == 0)
        orbits.erase(it);
}

GSet empty_gset(LatticePtr lat) { return GSet{std::move(lat), {}}; }

GSet orbit_gset(LatticePtr lat, int cls, long long mult) {
    GSet x{std::move(lat), {}};
    x.add_orbit(cls, mult);
    return x;
}

GSet orbit_decompose(LatticePtr lat, const std::vector<std::vector<int>>& act) {
    const FiniteGroup& g = lat->group();
    int n = g.order();
    require(static_cast<int>(act.size()) == n, "InvalidAction", "action table needs one row per group element");
    std::size_t npts = act.empty() ? 0 : act.front().size();
    for (const auto& row : act)
        require(row.size() == npts, "InvalidAction", "ragged action table");
    for (std::size_t x = 0; x < npts; ++x)
        require(act[g.identity()][x] == static_cast<int>(x), "InvalidAction", "identity must act trivially");
    for (int a = 0; a < n; ++a)
        for (std::size_t x = 0; x < npts; ++x) {
            int ax = act[a][x];
            require(ax >= 0 && ax < static_cast<int>(npts), "InvalidAction", "action image out of range");
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (std::size_t x = 0; x < npts; ++x)
                require(act[a][act[b][x]] == act[g.mul(a, b)][x], "InvalidAction",
                        "action is not compatible with multiplication");

    GSet out = empty_gset(lat);
    std::vector<char> seen(npts, 0);
    for (std::size_t x = 0; x < npts; ++x) {
        if (seen[x]) continue;
        std::vector<int> stab;
        for (int a = 0; a < n; ++a) {
            seen[act[a][x]] = 1;
            if (act[a][x] == static_cast<int>(x)) stab.push_back(a);
        }
        int sub = lat->index_of_members(std::move(stab));
        require(sub >= 0, "Internal", "stabilizer not found in lattice");
        out.add_orbit(lat->class_of(sub));
    }
    return out;
}

namespace {

std::vector<int> intersect_members(const Subgroup& a, const Subgroup& b) {
    std::vector<int> out;
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                          std::back_inserter(out));
    return out;
}

} // namespace

GSet gset_product(const GSet& x, const GSet& y) {
    require(x.lat->id() == y.lat->id(), "GroupMismatch", "G-set product needs a common group");
    const SubgroupLattice& lat = *x.lat;
    const FiniteGroup& g = lat.group();
    GSet out = empty_gset(x.lat);
    for (const auto& [cx, mx] : x.orbits)
        for (const auto& [cy, my] : y.orbits) {
            const Subgroup& K = lat.subgroup(lat.class_rep(cx));
            const Subgroup& L = lat.subgroup(lat.class_rep(cy));
            for (int t : double_cosets(g, K, L)) {
                auto members = intersect_members(K, conjugate(g, t, L));
                int sub = lat.index_of_members(std::move(members));
                out.add_orbit(lat.class_of(sub), mx * my);
            }
        }
    return out;
}

GSet pullback_orbits(const LatticePtr& lat, int H, int K, int J) {
    require(lat->leq(H, J) && lat->leq(K, J), "NotSubgroup", "pullback needs H, K <= J");
    const FiniteGroup& g = lat->group();
    const Subgroup& sh = lat->subgroup(H);
    const Subgroup& sk = lat->subgroup(K);
    const Subgroup& sj = lat->subgroup(J);
    GSet out = empty_gset(lat);
    for (int x : double_cosets_in(g, sj, sh, sk)) {
        auto members = intersect_members(sh, conjugate(g, x, sk));
        int sub = lat->index_of_members(std::move(members));
        out.add_orbit(lat->class_of(sub));
    }
    return out;
}

long long orbit_fixed_count(const SubgroupLattice& lat, int H, int K) {
    const FiniteGroup& g = lat.group();
    const Subgroup& sh = lat.subgroup(H);
    const Subgroup& sk = lat.subgroup(K);
    std::vector<char> seen(g.order(), 0);
    long long count = 0;
    for (int t = 0; t < g.order(); ++t) {
        if (seen[t]) continue;
        for (int h : sh.members) seen[g.mul(t, h)] = 1;
        bool fixed = true;
        for (int k : sk.members) {
            if (!sh.contains(g.mul(g.mul(g.inv(t), k), t))) {
                fixed = false;
                break;
            }
        }
        if (fixed) ++count;
    }
    return count;
}

long long fixed_count(const GSet& x, int K) {
    long long total = 0;
    for (const auto& [cls, mult] : x.orbits)
        total += mult * orbit_fixed_count(*x.lat, x.lat->class_rep(cls), K);
    return total;
}

OrbitList to_orbit_list(const GSet& x) {
    OrbitList out{x.lat, {}};
    for (const auto& [cls, mult] : x.orbits) {
        require(mult >= 0, "InvalidGSet", "orbit lists need non-negative multiplicities");
        for (long long i = 0; i < mult; ++i) out.stabs.push_back(x.lat->class_rep(cls));
    }
    return out;
}

GSet to_gset(const OrbitList& x) {
    GSet out = empty_gset(x.lat);
    for (int s : x.stabs) out.add_orbit(x.lat->class_of(s));
    return out;
}

Span identity_span(const OrbitList& x) {
    Span s{x, x, {}};
    int e = x.lat->group().identity();
    for (std::size_t i = 0; i < x.stabs.size(); ++i)
        s.apex.push_back(SpanOrbit{x.stabs[i], {e, static_cast<int>(i)}, {e, static_cast<int>(i)}});
    return s;
}

Span basis_span(LatticePtr lat, int H, int L, int K) {
    require(lat->leq(L, H) && lat->leq(L, K), "NotSubgroup", "basis span needs L <= H and L <= K");
    int e = lat->group().identity();
    Span s{OrbitList{lat, {H}}, OrbitList{lat, {K}}, {SpanOrbit{L, {e, 0}, {e, 0}}}};
    return s;
}

void validate_span(const Span& s) {
    const SubgroupLattice& lat = *s.source.lat;
    const FiniteGroup& g = lat.group();
    for (const auto& orb : s.apex) {
        require(orb.left.target >= 0 && orb.left.target < static_cast<int>(s.source.stabs.size()),
                "InvalidSpan", "left leg target out of range");
        require(orb.right.target >= 0 && orb.right.target < static_cast<int>(s.target.stabs.size()),
                "InvalidSpan", "right leg target out of range");
        Subgroup conj_l = conjugate(g, orb.left.g, lat.subgroup(orb.stab));
        Subgroup conj_r = conjugate(g, orb.right.g, lat.subgroup(orb.stab));
        require(is_subgroup_of(conj_l, lat.subgroup(s.source.stabs[orb.left.target])), "InvalidSpan",
                "left leg is not equivariant");
        require(is_subgroup_of(conj_r, lat.subgroup(s.target.stabs[orb.right.target])), "InvalidSpan",
                "right leg is not equivariant");
    }
}

Span span_compose(const Span& s2, const Span& s1) {
    require(s1.target == s2.source, "CompositionMismatch", "span composition needs matching middle");
    const SubgroupLattice& lat = *s1.source.lat;
    const FiniteGroup& g = lat.group();
    Span out{s1.source, s2.target, {}};
    for (const auto& A : s1.apex)
        for (const auto& B : s2.apex) {
            if (A.right.target != B.left.target) continue;
            int mid = s1.target.stabs[A.right.target];
            const Subgroup& S = lat.subgroup(mid);
            int b = A.right.g, c = B.left.g;
            Subgroup Ap = conjugate(g, b, lat.subgroup(A.stab));
            Subgroup Bp = conjugate(g, c, lat.subgroup(B.stab));
            for (int x : double_cosets_in(g, S, Ap, Bp)) {
                auto members = intersect_members(Ap, conjugate(g, x, Bp));
                int stab = lat.index_of_members(std::move(members));
                int left_g = g.mul(A.left.g, g.inv(b));
                int right_g = g.mul(B.right.g, g.mul(g.inv(c), g.inv(x)));
                out.apex.push_back(SpanOrbit{stab, {left_g, A.left.target}, {right_g, B.right.target}});
            }
        }
    validate_span(out);
    return out;
}

namespace {

// Least element of S * d: canonical datum for a fixed map.
int canonical_coset(const FiniteGroup& g, const Subgroup& S, int d) {
    int best = g.order();
    for (int s : S.members) best = std::min(best, g.mul(s, d));
    return best;
}

std::vector<int> component_key(const SubgroupLattice& lat, const Span& s, const SpanOrbit& orb) {
    const FiniteGroup& g = lat.group();
    const Subgroup& src_stab = lat.subgroup(s.source.stabs[orb.left.target]);
    const Subgroup& tgt_stab = lat.subgroup(s.target.stabs[orb.right.target]);
    std::vector<int> best;
    for (int c = 0; c < g.order(); ++c) {
        // Reparametrization by c: (L, a, b) -> (c L c^-1, a c^-1, b c^-1).
        Subgroup L = conjugate(g, c, lat.subgroup(orb.stab));
        std::vector<int> key;
        key.push_back(L.order());
        key.insert(key.end(), L.members.begin(), L.members.end());
        key.push_back(orb.left.target);
        key.push_back(canonical_coset(g, src_stab, g.mul(orb.left.g, g.inv(c))));
        key.push_back(orb.right.target);
        key.push_back(canonical_coset(g, tgt_stab, g.mul(orb.right.g, g.inv(c))));
        if (best.empty() || key < best) best = std::move(key);
    }
    return best;
}

} // namespace

std::vector<std::vector<int>> span_canonical_form(const Span& s) {
    std::vector<std::vector<int>> keys;
    for (const auto& orb : s.apex) keys.push_back(component_key(*s.source.lat, s, orb));
    std::sort(keys.begin(), keys.end());
    return keys;
}

bool span_equivalent(const Span& a, const Span& b) {
    if (!(a.source == b.source) || !(a.target == b.target)) return false;
    return span_canonical_form(a) == span_canonical_form(b);
}

SpanHom span_hom(const Span& s) {
    SpanHom h{s.source, s.target, {}};
    for (const auto& key : span_canonical_form(s)) h.terms[key] += 1;
    return h;
}

SpanHom hom_add(const SpanHom& a, const SpanHom& b) {
    require(a.source == b.source && a.target == b.target, "CompositionMismatch",
            "Hom addition needs matching objects");
    SpanHom out = a;
    for (const auto& [k, v] : b.terms) {
        if ((out.terms[k] += v) == 0) out.terms.erase(k);
    }
    return out;
}

SpanHom hom_negate(const SpanHom& a) {
    SpanHom out = a;
    for (auto& [k, v] : out.terms) v = -v;
    return out;
}

namespace {

Span component_span(const SpanHom& h, const std::vector<int>& key) {
    const SubgroupLattice& lat = *h.source.lat;
    int sz = key[0];
    std::vector<int> members(key.begin() + 1, key.begin() + 1 + sz);
    int stab = lat.index_of_members(std::move(members));
    Span s{h.source, h.target, {}};
    s.apex.push_back(SpanOrbit{stab, {key[sz + 2], key[sz + 1]}, {key[sz + 4], key[sz + 3]}});
    validate_span(s);
    return s;
}

} // namespace

SpanHom hom_compose(const SpanHom& s2, const SpanHom& s1) {
    require(s1.target == s2.source, "CompositionMismatch", "Hom composition needs matching middle");
    SpanHom out{s1.source, s2.target, {}};
    for (const auto& [k1, v1] : s1.terms)
        for (const auto& [k2, v2] : s2.terms) {
            Span comp = span_compose(component_span(s2, k2), component_span(s1, k1));
            for (const auto& key : span_canonical_form(comp)) {
                if ((out.terms[key] += v1 * v2) == 0) out.terms.erase(key);
            }
        }
    return out;
}

} // namespace eqalg
