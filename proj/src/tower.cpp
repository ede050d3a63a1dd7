#include "eqalg/tower.hpp"

#include <algorithm>
#include <numeric>

#include "eqalg/error.hpp"

namespace eqalg {

Tower make_tower(std::string name, std::vector<GroupPtr> groups, std::vector<std::vector<int>> proj) {
    require(!groups.empty(), "InvalidTower", "tower needs at least one level");
    require(proj.size() + 1 == groups.size(), "InvalidTower", "tower needs one map per level step");
    for (std::size_t i = 0; i < proj.size(); ++i) {
        const FiniteGroup& up = *groups[i + 1];
        const FiniteGroup& down = *groups[i];
        require(static_cast<int>(proj[i].size()) == up.order(), "InvalidTower",
                "level map has wrong domain size");
        std::vector<char> hit(down.order(), 0);
        for (int x = 0; x < up.order(); ++x) {
            require(proj[i][x] >= 0 && proj[i][x] < down.order(), "InvalidTower",
                    "level map image out of range");
            hit[proj[i][x]] = 1;
        }
        require(std::all_of(hit.begin(), hit.end(), [](char c) { return c; }), "InvalidTower",
                "level map is not surjective");
        for (int x = 0; x < up.order(); ++x)
            for (int y = 0; y < up.order(); ++y)
                require(proj[i][up.mul(x, y)] == down.mul(proj[i][x], proj[i][y]), "InvalidTower",
                        "level map is not a homomorphism");
    }
    Tower t;
    t.name = std::move(name);
    t.groups = std::move(groups);
    t.proj = std::move(proj);
    for (const auto& g : t.groups) t.lats.push_back(make_lattice(g));
    return t;
}

Tower zp_tower(int p, int depth) {
    require(p >= 2 && depth >= 0, "InvalidTower", "Zp tower needs p >= 2, depth >= 0");
    std::vector<GroupPtr> groups;
    std::vector<std::vector<int>> proj;
    long long order = 1;
    for (int i = 0; i <= depth; ++i) {
        require(order <= SubgroupLattice::kDefaultMaxOrder, "GroupTooLarge",
                "tower level exceeds the order bound");
        groups.push_back(FiniteGroup::cyclic(static_cast<int>(order)));
        if (i > 0) {
            std::vector<int> map(static_cast<std::size_t>(order));
            for (long long x = 0; x < order; ++x) map[x] = static_cast<int>(x % (order / p));
            proj.push_back(std::move(map));
        }
        order *= p;
    }
    return make_tower("Z" + std::to_string(p), std::move(groups), std::move(proj));
}

Tower product_tower(const Tower& a, const Tower& b) {
    require(a.depth() == b.depth(), "InvalidTower", "product tower needs equal depths");
    std::vector<GroupPtr> groups;
    std::vector<std::vector<int>> proj;
    for (int i = 0; i <= a.depth(); ++i) {
        groups.push_back(FiniteGroup::product(a.groups[i], b.groups[i]));
        if (i > 0) {
            int nb_up = b.groups[i]->order();
            int nb_down = b.groups[i - 1]->order();
            std::vector<int> map(static_cast<std::size_t>(groups[i]->order()));
            for (int x = 0; x < groups[i]->order(); ++x) {
                int xa = x / nb_up, xb = x % nb_up;
                map[x] = a.proj[i - 1][xa] * nb_down + b.proj[i - 1][xb];
            }
            proj.push_back(std::move(map));
        }
    }
    return make_tower(a.name + "x" + b.name, std::move(groups), std::move(proj));
}

Tower constant_tower(GroupPtr g, int depth) {
    std::vector<GroupPtr> groups(depth + 1, g);
    std::vector<std::vector<int>> proj;
    std::vector<int> id(g->order());
    std::iota(id.begin(), id.end(), 0);
    for (int i = 0; i < depth; ++i) proj.push_back(id);
    return make_tower("const:" + g->name(), std::move(groups), std::move(proj));
}

Tower trivial_tower() { return make_tower("trivial", {FiniteGroup::cyclic(1)}, {}); }

LevelSpace level_space(const Tower& t, int i) {
    require(i >= 0 && i <= t.depth(), "DepthExceeded", "level exceeds tower depth");
    LevelSpace out;
    out.level = i;
    out.lat = t.lats[i];
    if (i > 0) {
        const auto& map = t.proj[i - 1];
        for (int s = 0; s < out.lat->size(); ++s) {
            std::vector<int> img;
            for (int m : out.lat->subgroup(s).members) img.push_back(map[m]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            int idx = t.lats[i - 1]->index_of_members(std::move(img));
            require(idx >= 0, "Internal", "image subgroup missing at the previous level");
            out.to_prev.push_back(idx);
        }
    }
    return out;
}

int preimage_subgroup(const Tower& t, int i, int sub) {
    require(i >= 0 && i < t.depth(), "DepthExceeded", "preimage needs a level below the top");
    const auto& map = t.proj[i];
    const Subgroup& target = t.lats[i]->subgroup(sub);
    std::vector<int> members;
    for (int x = 0; x < t.groups[i + 1]->order(); ++x)
        if (target.contains(map[x])) members.push_back(x);
    int idx = t.lats[i + 1]->index_of_members(std::move(members));
    require(idx >= 0, "Internal", "preimage subgroup missing from lattice");
    return idx;
}

FiberLawReport fiber_law_check(const Tower& t, int i) {
    FiberLawReport rep;
    if (i == 0) return rep;
    LevelSpace space = level_space(t, i);
    const SubgroupLattice& up = *t.lats[i];
    const FiniteGroup& G = *t.groups[i];
    // Kernel of the connecting map.
    std::vector<int> ker;
    for (int x = 0; x < G.order(); ++x)
        if (t.proj[i - 1][x] == t.groups[i - 1]->identity()) ker.push_back(x);
    int ker_idx = up.index_of_members(ker);
    for (int K = 0; K < t.lats[i - 1]->size(); ++K) {
        int pre = preimage_subgroup(t, i - 1, K);
        for (int L = 0; L < up.size(); ++L) {
            // L N as a set (a subgroup since the kernel is normal).
            std::vector<int> prod;
            for (int l : up.subgroup(L).members)
                for (int n : up.subgroup(ker_idx).members) prod.push_back(G.mul(l, n));
            std::sort(prod.begin(), prod.end());
            prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
            bool in_fiber = space.to_prev[L] == K;
            bool in_open = up.index_of_members(std::move(prod)) == pre;
            if (in_fiber != in_open)
                rep.issues.push_back("level " + std::to_string(i) + ": fiber/basic-open mismatch at L=" +
                                     std::to_string(L) + ", K=" + std::to_string(K));
        }
    }
    rep.ok = rep.issues.empty();
    return rep;
}

namespace {

// Inflation matrix on basis coefficients: class c at level i -> class of
// the preimage subgroup at level i+1.
Matrix inflation_matrix(const Tower& t, int i) {
    const SubgroupLattice& down = *t.lats[i];
    const SubgroupLattice& up = *t.lats[i + 1];
    Matrix inf(up.class_count(), down.class_count());
    for (int c = 0; c < down.class_count(); ++c) {
        int pre = preimage_subgroup(t, i, down.class_rep(c));
        inf.at(up.class_of(pre), c) = 1;
    }
    return inf;
}

BurnsideElement inflate_element(const Tower& t, int i, const BurnsideElement& a) {
    Matrix inf = inflation_matrix(t, i);
    return from_coeffs(t.lats[i + 1], apply(inf, a.coeffs));
}

} // namespace

ColimitReport burnside_colimit_check(const Tower& t, int depth) {
    require(depth <= t.depth(), "DepthExceeded", "depth exceeds tower depth");
    ColimitReport rep;
    for (int i = 0; i < depth; ++i) {
        ColimitLevel lvl;
        const SubgroupLattice& down = *t.lats[i];
        const SubgroupLattice& up = *t.lats[i + 1];
        LevelSpace space = level_space(t, i + 1);

        // Marks precompose with the connecting map.
        lvl.marks_ok = true;
        for (int c = 0; c < down.class_count(); ++c) {
            int pre = preimage_subgroup(t, i, down.class_rep(c));
            for (int L = 0; L < up.size(); ++L)
                if (orbit_fixed_count(up, pre, L) !=
                    orbit_fixed_count(down, down.class_rep(c), space.to_prev[L]))
                    lvl.marks_ok = false;
        }

        // Ring homomorphism on all basis pairs.
        lvl.ring_hom_ok = true;
        for (int c1 = 0; c1 < down.class_count() && lvl.ring_hom_ok; ++c1)
            for (int c2 = 0; c2 < down.class_count() && lvl.ring_hom_ok; ++c2) {
                BurnsideElement prod_below =
                    multiply(basis_element(t.lats[i], c1), basis_element(t.lats[i], c2));
                BurnsideElement lifted = multiply(inflate_element(t, i, basis_element(t.lats[i], c1)),
                                                  inflate_element(t, i, basis_element(t.lats[i], c2)));
                if (!(inflate_element(t, i, prod_below) == lifted)) lvl.ring_hom_ok = false;
            }

        lvl.injective_ok = inflation_matrix(t, i).rank() == static_cast<std::size_t>(down.class_count());

        lvl.idempotents_ok = true;
        for (const auto& e : decompose_unit(t.lats[i])) {
            BurnsideElement lifted = inflate_element(t, i, e);
            if (!lifted.is_idempotent()) lvl.idempotents_ok = false;
        }
        rep.levels.push_back(lvl);
    }
    return rep;
}

bool ColimitReport::ok() const {
    return std::all_of(levels.begin(), levels.end(), [](const ColimitLevel& l) { return l.ok(); });
}

void validate_tower_mackey(const Tower& t, const TowerMackey& tm) {
    require(tm.levels.size() == t.groups.size(), "IncompatibleTower",
            "tower functor needs one level per tower level");
    for (std::size_t i = 0; i < tm.levels.size(); ++i)
        require(tm.levels[i].lat->id() == t.lats[i]->id(), "IncompatibleTower",
                "tower functor levels must use the tower lattices");
    for (int i = 0; i + 1 <= t.depth(); ++i) {
        const SubgroupLattice& down = *t.lats[i];
        const MackeyFunctor& mlow = tm.levels[i];
        const MackeyFunctor& mhigh = tm.levels[i + 1];
        std::vector<int> pre(down.size());
        for (int s = 0; s < down.size(); ++s) pre[s] = preimage_subgroup(t, i, s);
        for (int H = 0; H < down.size(); ++H) {
            require(mlow.dim(H) == mhigh.dim(pre[H]), "IncompatibleTower",
                    "value dimensions disagree across levels");
            for (int K = 0; K < down.size(); ++K) {
                if (!down.leq(K, H)) continue;
                require(mlow.res(H, K) == mhigh.res(pre[H], pre[K]), "IncompatibleTower",
                        "restriction disagrees across levels");
                require(mlow.ind(H, K) == mhigh.ind(pre[H], pre[K]), "IncompatibleTower",
                        "induction disagrees across levels");
            }
        }
        for (int s : t.groups[i + 1]->generators())
            for (int H = 0; H < down.size(); ++H)
                require(mhigh.conj(s, pre[H]) == mlow.conj(t.proj[i][s], H), "IncompatibleTower",
                        "conjugation disagrees across levels");
    }
}

namespace {

MackeyFunctor index_multiplication_level(LatticePtr lat) {
    MackeyFunctor m;
    m.lat = std::move(lat);
    const SubgroupLattice& L = *m.lat;
    m.dims.assign(L.size(), 1);
    for (int H = 0; H < L.size(); ++H)
        for (int K = 0; K < L.size(); ++K) {
            if (!L.leq(K, H)) continue;
            m.res_map[{H, K}] = Matrix{{Rational(1)}};
            m.ind_map[{H, K}] =
                Matrix{{Rational(L.subgroup(H).order(), L.subgroup(K).order())}};
        }
    for (int s : L.group().generators())
        for (int H = 0; H < L.size(); ++H) m.conj_map[{s, H}] = Matrix{{Rational(1)}};
    return m;
}

} // namespace

TowerMackey index_multiplication_mackey(const Tower& t) {
    TowerMackey tm;
    tm.name = "index-multiplication";
    for (const auto& lat : t.lats) tm.levels.push_back(index_multiplication_level(lat));
    validate_tower_mackey(t, tm);
    return tm;
}

TowerMackey constant_tower_mackey(const Tower& t, const MackeyFunctor& m) {
    TowerMackey tm;
    tm.name = "const:" + std::to_string(m.lat->id());
    for (int i = 0; i <= t.depth(); ++i) {
        require(t.lats[i]->id() == m.lat->id(), "IncompatibleTower",
                "constant tower functor needs a constant tower built on the functor's lattice");
        tm.levels.push_back(m);
    }
    validate_tower_mackey(t, tm);
    return tm;
}

TowerMackey zero_tower_mackey(const Tower& t) {
    TowerMackey tm;
    tm.name = "zero";
    for (const auto& lat : t.lats) tm.levels.push_back(mackey_zero(lat));
    validate_tower_mackey(t, tm);
    return tm;
}

TowerMackey tower_mackey_product(const Tower& t, const TowerMackey& a, const TowerMackey& b) {
    TowerMackey tm;
    tm.name = "(" + a.name + ")x(" + b.name + ")";
    for (std::size_t i = 0; i < t.groups.size(); ++i)
        tm.levels.push_back(mackey_product({&a.levels[i], &b.levels[i]}));
    validate_tower_mackey(t, tm);
    return tm;
}

Thread thread_from_top(const Tower& t, int depth, int top_sub) {
    require(depth <= t.depth(), "DepthExceeded", "depth exceeds tower depth");
    Thread k;
    k.subs.assign(depth + 1, -1);
    k.subs[depth] = top_sub;
    for (int i = depth; i > 0; --i) k.subs[i - 1] = level_space(t, i).to_prev[k.subs[i]];
    return k;
}

std::vector<Thread> all_threads(const Tower& t, int depth) {
    std::vector<Thread> out;
    for (int s = 0; s < t.lats[depth]->size(); ++s) out.push_back(thread_from_top(t, depth, s));
    return out;
}

void validate_thread(const Tower& t, const Thread& k, int depth) {
    require(static_cast<int>(k.subs.size()) == depth + 1, "IncompatibleThread",
            "thread needs one subgroup per level");
    for (int i = 1; i <= depth; ++i) {
        require(k.subs[i] >= 0 && k.subs[i] < t.lats[i]->size(), "IncompatibleThread",
                "thread subgroup out of range");
        require(level_space(t, i).to_prev[k.subs[i]] == k.subs[i - 1], "IncompatibleThread",
                "thread is not compatible with the connecting maps");
    }
}

StalkReport weyl_stalk(const Tower& t, const TowerMackey& tm, const Thread& k, int depth) {
    require(depth <= t.depth(), "DepthExceeded", "depth exceeds tower depth");
    validate_thread(t, k, depth);
    StalkReport rep;
    std::vector<Matrix> bases;
    for (int i = 0; i <= depth; ++i) {
        const MackeyFunctor& m = tm.levels[i];
        Matrix P = burnside_action(m, local_idempotent(*t.lats[i], k.subs[i], k.subs[i]));
        bases.push_back(P.column_space_basis());
        rep.dims.push_back(static_cast<int>(bases.back().cols()));
    }
    for (int i = 0; i < depth; ++i) {
        const MackeyFunctor& up = tm.levels[i + 1];
        int pre = preimage_subgroup(t, i, k.subs[i]);
        Matrix P = burnside_action(up, local_idempotent(*t.lats[i + 1], k.subs[i + 1], k.subs[i + 1]));
        Matrix big = P * up.res(pre, k.subs[i + 1]) * bases[i];
        auto coords = bases[i + 1].solve(big);
        require(coords.has_value(), "Internal", "stalk transition left the idempotent piece");
        rep.transitions.push_back(*coords);
    }
    rep.stalk_dim = rep.dims.back();
    int stable = depth;
    for (int i = depth - 1; i >= 0; --i) {
        const Matrix& tr = rep.transitions[i];
        bool iso = tr.is_square() && tr.rank() == tr.rows();
        if (!iso) break;
        stable = i;
    }
    rep.stable_from = stable;
    rep.stabilizes = stable < depth || depth == 0;
    return rep;
}

RoundtripReport roundtrip_certificate(const Tower& t, const TowerMackey& tm, int depth) {
    require(depth <= t.depth(), "DepthExceeded", "depth exceeds tower depth");
    validate_tower_mackey(t, tm);
    RoundtripReport rep;
    for (int i = 0; i <= depth; ++i) {
        const MackeyFunctor& m = tm.levels[i];
        RoundtripLevel lvl;
        lvl.level = i;
        MackeySheafData sh = sheaf_of_mackey(m);
        lvl.stalk_dims = sh.sheaf.stalk_dim;
        for (int H = 0; H < t.lats[i]->size(); ++H) lvl.value_dims.push_back(m.dim(H));
        SectionsData sec = mackey_from_sheaf(sh.sheaf);
        try {
            MackeyMorphism theta = theta_iso(m, sh, sec);
            lvl.mackey_of_weyl_ok = is_mackey_morphism(m, sec.functor, theta);
        } catch (const Error&) {
            lvl.mackey_of_weyl_ok = false;
        }
        // Stalks of the rebuilt functor match the original stalks through
        // evaluation at the point, equivariantly.
        try {
            MackeySheafData sh2 = sheaf_of_mackey(sec.functor);
            const SubgroupLattice& L = *t.lats[i];
            bool ok = true;
            std::vector<Matrix> ev(L.size());
            for (int l = 0; l < L.size() && ok; ++l) {
                // Rows of the section basis at the block of the point itself.
                Matrix cols = sec.section_basis[l] * sh2.stalk_basis[l];
                int off = -1;
                for (std::size_t j = 0; j < sec.sub_list[l].size(); ++j)
                    if (sec.sub_list[l][j] == l) off = sec.sub_offset[l][j];
                Matrix block(sh.sheaf.stalk_dim[l], cols.cols());
                for (std::size_t r = 0; r < block.rows(); ++r)
                    for (std::size_t c = 0; c < block.cols(); ++c)
                        block.at(r, c) = cols.at(off + r, c);
                ev[l] = std::move(block);
                ok = ev[l].is_square() && ev[l].rank() == ev[l].rows();
            }
            if (ok)
                for (int s : t.groups[i]->generators())
                    for (int l = 0; l < L.size() && ok; ++l) {
                        int lp = L.conjugate_index(s, l);
                        if (ev[lp] * sh2.sheaf.transport(s, l) != sh.sheaf.transport(s, l) * ev[l])
                            ok = false;
                    }
            lvl.weyl_of_mackey_ok = ok;
        } catch (const Error&) {
            lvl.weyl_of_mackey_ok = false;
        }
        rep.levels.push_back(std::move(lvl));
    }
    for (const auto& k : all_threads(t, depth))
        rep.thread_stabilized.push_back(weyl_stalk(t, tm, k, depth).stabilizes ? 1 : 0);
    return rep;
}

bool RoundtripReport::ok() const {
    return std::all_of(levels.begin(), levels.end(),
                       [](const RoundtripLevel& l) {
                           return l.mackey_of_weyl_ok && l.weyl_of_mackey_ok;
                       }) &&
           std::all_of(thread_stabilized.begin(), thread_stabilized.end(), [](char c) { return c; });
}

} // namespace eqalg
