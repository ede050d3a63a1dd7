#include "eqalg/mackey.hpp"

#include <algorithm>
#include <numeric>

#include "eqalg/error.hpp"

namespace eqalg {

namespace {

Matrix solved(const Matrix& basis, const Matrix& rhs, const char* what) {
    auto x = basis.solve(rhs);
    require(x.has_value(), "Internal", std::string("inconsistent linear system in ") + what);
    return *x;
}

} // namespace

Matrix MackeyFunctor::res(int H, int K) const {
    require(lat->leq(K, H), "NotSubgroup", "restriction needs K <= H");
    return res_map.at({H, K});
}

Matrix MackeyFunctor::ind(int H, int K) const {
    require(lat->leq(K, H), "NotSubgroup", "induction needs K <= H");
    return ind_map.at({H, K});
}

Matrix MackeyFunctor::conj(int g, int H) const {
    Matrix m = Matrix::identity(dims[H]);
    int cur = H;
    const auto& w = lat->group().word(g);
    // g = s_1 ... s_k acts as C_{s_1} after ... after C_{s_k}.
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        m = conj_map.at({*it, cur}) * m;
        cur = lat->conjugate_index(*it, cur);
    }
    return m;
}

MackeyFunctor mackey_zero(LatticePtr lat) {
    MackeyFunctor m;
    m.lat = std::move(lat);
    m.dims.assign(m.lat->size(), 0);
    for (int H = 0; H < m.lat->size(); ++H)
        for (int K = 0; K < m.lat->size(); ++K)
            if (m.lat->leq(K, H)) {
                m.res_map[{H, K}] = Matrix(0, 0);
                m.ind_map[{H, K}] = Matrix(0, 0);
            }
    for (int s : m.lat->group().generators())
        for (int H = 0; H < m.lat->size(); ++H) m.conj_map[{s, H}] = Matrix(0, 0);
    return m;
}

MackeyFunctor mackey_burnside(LatticePtr lat) {
    MackeyFunctor m;
    m.lat = std::move(lat);
    const SubgroupLattice& L = *m.lat;
    const FiniteGroup& G = L.group();
    std::vector<LocalClasses> lc;
    lc.reserve(L.size());
    for (int H = 0; H < L.size(); ++H) lc.push_back(local_classes(L, H));
    m.dims.resize(L.size());
    for (int H = 0; H < L.size(); ++H) m.dims[H] = static_cast<int>(lc[H].classes.size());

    for (int H = 0; H < L.size(); ++H)
        for (int K = 0; K < L.size(); ++K) {
            if (!L.leq(K, H)) continue;
            Matrix r(m.dims[K], m.dims[H]);
            Matrix i(m.dims[H], m.dims[K]);
            // Restriction: H/D as a K-set via double cosets K x D in H.
            for (std::size_t col = 0; col < lc[H].classes.size(); ++col) {
                int D = lc[H].rep(static_cast<int>(col));
                for (int x : double_cosets_in(G, L.subgroup(H), L.subgroup(K), L.subgroup(D))) {
                    int inter = intersection(L, K, L.conjugate_index(x, D));
                    r.at(lc[K].class_of.at(inter), col) += 1;
                }
            }
            // Induction: [K/D] -> [H/D].
            for (std::size_t col = 0; col < lc[K].classes.size(); ++col) {
                int D = lc[K].rep(static_cast<int>(col));
                i.at(lc[H].class_of.at(D), col) += 1;
            }
            m.res_map[{H, K}] = std::move(r);
            m.ind_map[{H, K}] = std::move(i);
        }

    for (int s : G.generators())
        for (int H = 0; H < L.size(); ++H) {
            int Hs = L.conjugate_index(s, H);
            Matrix c(m.dims[Hs], m.dims[H]);
            for (std::size_t col = 0; col < lc[H].classes.size(); ++col) {
                int D = lc[H].rep(static_cast<int>(col));
                c.at(lc[Hs].class_of.at(L.conjugate_index(s, D)), col) += 1;
            }
            m.conj_map[{s, H}] = std::move(c);
        }
    return m;
}

namespace {

std::vector<int> domain_of(const MackeyView& m) {
    std::vector<int> out;
    for (int s = 0; s < m.lattice().size(); ++s)
        if (m.in_domain(s)) out.push_back(s);
    return out;
}

void check_shapes(const MackeyView& m, const std::vector<int>& dom) {
    const SubgroupLattice& L = m.lattice();
    for (int H : dom)
        for (int K : dom) {
            if (!L.leq(K, H)) continue;
            Matrix r = m.res(H, K), i = m.ind(H, K);
            require(static_cast<int>(r.rows()) == m.dim(K) && static_cast<int>(r.cols()) == m.dim(H),
                    "DimensionMismatch", "restriction matrix has wrong shape");
            require(static_cast<int>(i.rows()) == m.dim(H) && static_cast<int>(i.cols()) == m.dim(K),
                    "DimensionMismatch", "induction matrix has wrong shape");
        }
    for (int s : L.group().generators())
        for (int H : dom) {
            Matrix c = m.conj(s, H);
            require(static_cast<int>(c.rows()) == m.dim(L.conjugate_index(s, H)) &&
                        static_cast<int>(c.cols()) == m.dim(H),
                    "DimensionMismatch", "conjugation matrix has wrong shape");
        }
}

} // namespace

AxiomReport axiom_check(const MackeyView& m) {
    const SubgroupLattice& L = m.lattice();
    const FiniteGroup& G = L.group();
    std::vector<int> dom = domain_of(m);
    check_shapes(m, dom);
    AxiomReport rep;
    auto flag = [&](const std::string& axiom, std::vector<int> witness, const std::string& detail) {
        rep.violations.push_back(AxiomViolation{axiom, std::move(witness), detail});
    };

    // (1) identities
    for (int H : dom) {
        ++rep.instances_checked;
        if (!m.res(H, H).is_identity()) flag("identity", {H}, "R^H_H is not the identity");
        if (!m.ind(H, H).is_identity()) flag("identity", {H}, "I^H_H is not the identity");
        for (int h : L.subgroup(H).members) {
            ++rep.instances_checked;
            if (!m.conj(h, H).is_identity()) flag("identity", {H, h}, "C_h not the identity for h in H");
        }
    }

    // (2) transitivity of restriction/induction, multiplicativity of conjugation
    for (int H : dom)
        for (int K : dom) {
            if (!L.leq(K, H)) continue;
            for (int Lw : dom) {
                if (!L.leq(Lw, K)) continue;
                ++rep.instances_checked;
                if (m.res(K, Lw) * m.res(H, K) != m.res(H, Lw))
                    flag("transitivity", {H, K, Lw}, "R^K_L R^H_K != R^H_L");
                if (m.ind(H, K) * m.ind(K, Lw) != m.ind(H, Lw))
                    flag("transitivity", {H, K, Lw}, "I^H_K I^K_L != I^H_L");
            }
        }
    for (int g = 0; g < G.order(); ++g)
        for (int s : G.generators()) {
            int gs = G.mul(g, s);
            for (int H : dom) {
                ++rep.instances_checked;
                Matrix lhs = m.conj(gs, H);
                Matrix rhs = m.conj(g, L.conjugate_index(s, H)) * m.conj(s, H);
                if (lhs != rhs) flag("conj-mult", {H, g, s}, "C_{gs} != C_g C_s");
            }
        }

    // (3) equivariance on generators (multiplicativity extends it to all g)
    for (int s : G.generators())
        for (int H : dom)
            for (int K : dom) {
                if (!L.leq(K, H)) continue;
                ++rep.instances_checked;
                int Hs = L.conjugate_index(s, H), Ks = L.conjugate_index(s, K);
                if (m.conj(s, K) * m.res(H, K) != m.res(Hs, Ks) * m.conj(s, H))
                    flag("equivariance", {H, K, s}, "restriction does not commute with conjugation");
                if (m.conj(s, H) * m.ind(H, K) != m.ind(Hs, Ks) * m.conj(s, K))
                    flag("equivariance", {H, K, s}, "induction does not commute with conjugation");
            }

    // (4) double-coset Mackey axiom
    for (int H : dom)
        for (int K : dom) {
            if (!L.leq(K, H)) continue;
            for (int Lw : dom) {
                if (!L.leq(Lw, H)) continue;
                ++rep.instances_checked;
                Matrix lhs = m.res(H, K) * m.ind(H, Lw);
                Matrix rhs(m.dim(K), m.dim(Lw));
                for (int x : double_cosets_in(G, L.subgroup(H), L.subgroup(K), L.subgroup(Lw))) {
                    int A = intersection(L, K, L.conjugate_index(x, Lw)); // K ∩ xLx^-1
                    int B = intersection(L, Lw, L.conjugate_index(G.inv(x), K)); // L ∩ x^-1Kx
                    rhs = rhs + m.ind(K, A) * m.conj(x, B) * m.res(Lw, B);
                }
                if (lhs != rhs) flag("mackey", {H, K, Lw}, "double-coset axiom fails");
            }
        }
    return rep;
}

Matrix burnside_action(const MackeyView& m, const LocalBurnside& x) {
    Matrix out(m.dim(x.H), m.dim(x.H));
    for (const auto& [D, c] : x.coeff) out = out + (m.ind(x.H, D) * m.res(x.H, D)) * c;
    return out;
}

std::vector<SheafPiece> idempotent_sheaf_pieces(const MackeyView& m, int H) {
    const SubgroupLattice& L = m.lattice();
    LocalClasses lc = local_classes(L, H);
    std::vector<SheafPiece> out;
    for (std::size_t c = 0; c < lc.classes.size(); ++c) {
        Matrix P = burnside_action(m, local_idempotent(L, H, lc.rep(static_cast<int>(c))));
        out.push_back(SheafPiece{static_cast<int>(c), P.column_space_basis()});
    }
    return out;
}

CommutationReport restriction_commutation_check(const MackeyView& m, int H, int K,
                                                const std::optional<std::vector<Rational>>& s) {
    const SubgroupLattice& L = m.lattice();
    const FiniteGroup& G = L.group();
    int top = L.full_subgroup();
    CommutationReport rep;
    rep.lhs = m.res(top, H) * burnside_action(m, local_idempotent(L, top, K));
    Matrix sum(m.dim(H), m.dim(H));
    int NK = normalizer(L, K);
    for (int x : double_cosets(L, H, NK)) {
        int KxH = L.conjugate_index(x, K);
        if (!L.leq(KxH, H)) continue;
        rep.index_set.push_back(KxH);
        sum = sum + burnside_action(m, local_idempotent(L, H, KxH));
    }
    rep.rhs = sum * m.res(top, H);
    rep.holds = rep.lhs == rep.rhs;
    if (s.has_value()) {
        rep.applied_lhs = apply(rep.lhs, *s);
        rep.applied_rhs = apply(rep.rhs, *s);
    }
    return rep;
}

void validate_family(const WeylModuleFamily& fam) {
    require(static_cast<int>(fam.pieces.size()) == fam.lat->class_count(), "BadFamily",
            "family needs one piece per conjugacy class");
    for (const auto& p : fam.pieces) {
        int order = p.W.W->order();
        require(static_cast<int>(p.action.size()) == order, "BadFamily",
                "piece needs one action matrix per Weyl element");
        for (const auto& a : p.action)
            require(static_cast<int>(a.rows()) == p.dim && static_cast<int>(a.cols()) == p.dim,
                    "DimensionMismatch", "Weyl action matrix has wrong shape");
        require(p.action[p.W.W->identity()].is_identity(), "BadFamily", "Weyl unit must act as identity");
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                require(p.action[p.W.W->mul(a, b)] == p.action[a] * p.action[b], "BadFamily",
                        "Weyl action does not satisfy the group relations");
    }
}

WeylModuleFamily split(const MackeyFunctor& m) {
    const SubgroupLattice& L = *m.lat;
    WeylModuleFamily fam{m.lat, {}};
    for (int c = 0; c < L.class_count(); ++c) {
        int rep = L.class_rep(c);
        WeylPiece piece;
        piece.cls = c;
        piece.W = weyl_group(L, rep);
        Matrix P = burnside_action(m, local_idempotent(L, rep, rep));
        piece.embed = P.column_space_basis();
        piece.dim = static_cast<int>(piece.embed.cols());
        for (std::size_t w = 0; w < piece.W.coset_rep.size(); ++w) {
            Matrix c_mat = m.conj(piece.W.coset_rep[w], rep);
            piece.action.push_back(solved(piece.embed, c_mat * piece.embed, "split Weyl action"));
        }
        fam.pieces.push_back(std::move(piece));
    }
    return fam;
}

Matrix EquivariantSheaf::transport(int g, int L) const {
    Matrix m = Matrix::identity(stalk_dim[L]);
    int cur = L;
    const auto& w = lat->group().word(g);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        m = gen_transport.at({*it, cur}) * m;
        cur = lat->conjugate_index(*it, cur);
    }
    return m;
}

void validate_sheaf(const EquivariantSheaf& f) {
    const SubgroupLattice& L = *f.lat;
    const FiniteGroup& G = L.group();
    require(static_cast<int>(f.stalk_dim.size()) == L.size(), "NotEquivariant",
            "stalk dimensions missing");
    for (int s : G.generators())
        for (int l = 0; l < L.size(); ++l) {
            auto it = f.gen_transport.find({s, l});
            require(it != f.gen_transport.end(), "NotEquivariant", "missing transport matrix");
            require(static_cast<int>(it->second.rows()) == f.stalk_dim[L.conjugate_index(s, l)] &&
                        static_cast<int>(it->second.cols()) == f.stalk_dim[l],
                    "NotEquivariant", "transport matrix has wrong shape");
        }
    for (int g = 0; g < G.order(); ++g)
        for (int s : G.generators())
            for (int l = 0; l < L.size(); ++l) {
                Matrix lhs = f.transport(G.mul(g, s), l);
                Matrix rhs = f.transport(g, L.conjugate_index(s, l)) * f.transport(s, l);
                require(lhs == rhs, "NotEquivariant", "transport is not multiplicative");
            }
}

bool is_weyl_sheaf(const EquivariantSheaf& f) {
    const SubgroupLattice& L = *f.lat;
    for (int l = 0; l < L.size(); ++l)
        for (int s : L.subgroup_generators(l))
            if (!f.transport(s, l).is_identity()) return false;
    return true;
}

EquivariantSheaf sheaf_from_family(const WeylModuleFamily& fam) {
    const SubgroupLattice& L = *fam.lat;
    EquivariantSheaf f;
    f.lat = fam.lat;
    f.stalk_dim.resize(L.size());
    for (int l = 0; l < L.size(); ++l) f.stalk_dim[l] = fam.pieces[L.class_of(l)].dim;
    const FiniteGroup& G = L.group();
    for (int s : G.generators())
        for (int l = 0; l < L.size(); ++l) {
            const WeylPiece& p = fam.pieces[L.class_of(l)];
            int rep = L.class_rep(L.class_of(l));
            int a = L.conjugator_from_rep(l);              // a rep a^-1 = l
            int lp = L.conjugate_index(s, l);              // s l s^-1
            int ap = L.conjugator_from_rep(lp);            // ap rep ap^-1 = lp
            int n = G.mul(G.inv(ap), G.mul(s, a));         // normalizes rep
            auto it = p.W.coset_of.find(n);
            require(it != p.W.coset_of.end(), "Internal", "transport conjugator does not normalize");
            f.gen_transport[{s, l}] = p.action[it->second];
        }
    return f;
}

MackeySheafData sheaf_of_mackey(const MackeyFunctor& m) {
    const SubgroupLattice& L = *m.lat;
    const FiniteGroup& G = L.group();
    MackeySheafData out;
    out.sheaf.lat = m.lat;
    out.sheaf.stalk_dim.resize(L.size());
    out.stalk_basis.resize(L.size());
    for (int l = 0; l < L.size(); ++l) {
        Matrix P = burnside_action(m, local_idempotent(L, l, l));
        out.stalk_basis[l] = P.column_space_basis();
        out.sheaf.stalk_dim[l] = static_cast<int>(out.stalk_basis[l].cols());
    }
    for (int s : G.generators())
        for (int l = 0; l < L.size(); ++l) {
            int lp = L.conjugate_index(s, l);
            out.sheaf.gen_transport[{s, l}] =
                solved(out.stalk_basis[lp], m.conj(s, l) * out.stalk_basis[l], "stalk transport");
        }
    return out;
}

namespace {

struct BigSpace {
    std::vector<int> subs;    // L <= H ascending
    std::vector<int> offsets; // per entry
    int total = 0;
};

BigSpace big_space(const SubgroupLattice& L, const std::vector<int>& stalk_dim, int H) {
    BigSpace b;
    for (int l = 0; l < L.size(); ++l)
        if (L.leq(l, H)) {
            b.subs.push_back(l);
            b.offsets.push_back(b.total);
            b.total += stalk_dim[l];
        }
    return b;
}

int offset_of(const BigSpace& b, int sub) {
    auto it = std::lower_bound(b.subs.begin(), b.subs.end(), sub);
    return b.offsets[static_cast<std::size_t>(it - b.subs.begin())];
}

void add_block(Matrix& m, int row0, int col0, const Matrix& blk, bool subtract = false) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
        for (std::size_t j = 0; j < blk.cols(); ++j) {
            if (subtract)
                m.at(row0 + i, col0 + j) -= blk.at(i, j);
            else
                m.at(row0 + i, col0 + j) += blk.at(i, j);
        }
}

} // namespace

SectionsData mackey_from_sheaf(const EquivariantSheaf& f) {
    validate_sheaf(f);
    const SubgroupLattice& L = *f.lat;
    const FiniteGroup& G = L.group();
    SectionsData out;
    out.functor.lat = f.lat;
    out.functor.dims.resize(L.size());
    out.section_basis.resize(L.size());
    out.sub_list.resize(L.size());
    out.sub_offset.resize(L.size());
    std::vector<BigSpace> bigs;
    bigs.reserve(L.size());

    for (int H = 0; H < L.size(); ++H) {
        BigSpace b = big_space(L, f.stalk_dim, H);
        const auto& gens = L.subgroup_generators(H);
        // H-fixed sections: x(sLs^-1) = transport(s, L) x(L) for subgroup generators s.
        Matrix eqs(static_cast<std::size_t>(b.total) * std::max<std::size_t>(gens.size(), 1), b.total);
        int row0 = 0;
        for (int s : gens) {
            for (std::size_t i = 0; i < b.subs.size(); ++i) {
                int l = b.subs[i];
                int lp = L.conjugate_index(s, l);
                Matrix tr = f.transport(s, l);
                add_block(eqs, row0 + offset_of(b, lp), b.offsets[i], tr, true);
                add_block(eqs, row0 + offset_of(b, lp), offset_of(b, lp),
                          Matrix::identity(f.stalk_dim[lp]));
            }
            row0 += b.total;
        }
        out.section_basis[H] = eqs.kernel_basis();
        out.functor.dims[H] = static_cast<int>(out.section_basis[H].cols());
        out.sub_list[H] = b.subs;
        out.sub_offset[H] = b.offsets;
        bigs.push_back(std::move(b));
    }

    for (int H = 0; H < L.size(); ++H)
        for (int K = 0; K < L.size(); ++K) {
            if (!L.leq(K, H)) continue;
            const BigSpace& bh = bigs[H];
            const BigSpace& bk = bigs[K];
            // Restriction: project onto the blocks of subgroups of K.
            Matrix proj(bk.total, bh.total);
            for (std::size_t i = 0; i < bk.subs.size(); ++i)
                add_block(proj, bk.offsets[i], offset_of(bh, bk.subs[i]),
                          Matrix::identity(f.stalk_dim[bk.subs[i]]));
            out.functor.res_map[{H, K}] =
                solved(out.section_basis[K], proj * out.section_basis[H], "section restriction");
            // Induction: sum of translated zero-extensions over a transversal.
            Matrix tr_sum(bh.total, bk.total);
            for (int h : transversal(L, H, K))
                for (std::size_t i = 0; i < bk.subs.size(); ++i) {
                    int l = bk.subs[i];
                    add_block(tr_sum, offset_of(bh, L.conjugate_index(h, l)), bk.offsets[i],
                              f.transport(h, l));
                }
            out.functor.ind_map[{H, K}] =
                solved(out.section_basis[H], tr_sum * out.section_basis[K], "section induction");
        }

    for (int s : G.generators())
        for (int H = 0; H < L.size(); ++H) {
            int Hp = L.conjugate_index(s, H);
            const BigSpace& bh = bigs[H];
            const BigSpace& bp = bigs[Hp];
            Matrix tr(bp.total, bh.total);
            for (std::size_t i = 0; i < bh.subs.size(); ++i) {
                int l = bh.subs[i];
                add_block(tr, offset_of(bp, L.conjugate_index(s, l)), bh.offsets[i], f.transport(s, l));
            }
            out.functor.conj_map[{s, H}] =
                solved(out.section_basis[Hp], tr * out.section_basis[H], "section conjugation");
        }
    return out;
}

int sections_dim(const EquivariantSheaf& f, int H) {
    const SubgroupLattice& L = *f.lat;
    BigSpace b = big_space(L, f.stalk_dim, H);
    const auto& gens = L.subgroup_generators(H);
    if (gens.empty()) return b.total;
    Matrix eqs(static_cast<std::size_t>(b.total) * gens.size(), b.total);
    int row0 = 0;
    for (int s : gens) {
        for (std::size_t i = 0; i < b.subs.size(); ++i) {
            int l = b.subs[i];
            int lp = L.conjugate_index(s, l);
            add_block(eqs, row0 + offset_of(b, lp), b.offsets[i], f.transport(s, l), true);
            add_block(eqs, row0 + offset_of(b, lp), offset_of(b, lp), Matrix::identity(f.stalk_dim[lp]));
        }
        row0 += b.total;
    }
    return static_cast<int>(eqs.kernel_basis().cols());
}

MackeyFunctor rebuild(const WeylModuleFamily& fam) {
    validate_family(fam);
    return mackey_from_sheaf(sheaf_from_family(fam)).functor;
}

bool is_mackey_morphism(const MackeyView& src, const MackeyView& dst, const MackeyMorphism& f,
                        std::string* why) {
    const SubgroupLattice& L = src.lattice();
    auto fail_with = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (int H = 0; H < L.size(); ++H) {
        if (!src.in_domain(H)) continue;
        const Matrix& fh = f.at[H];
        if (static_cast<int>(fh.rows()) != dst.dim(H) || static_cast<int>(fh.cols()) != src.dim(H))
            return fail_with("component has wrong shape at subgroup " + std::to_string(H));
    }
    for (int H = 0; H < L.size(); ++H)
        for (int K = 0; K < L.size(); ++K) {
            if (!src.in_domain(H) || !src.in_domain(K) || !L.leq(K, H)) continue;
            if (f.at[K] * src.res(H, K) != dst.res(H, K) * f.at[H])
                return fail_with("restriction square fails at (" + std::to_string(H) + "," +
                                 std::to_string(K) + ")");
            if (f.at[H] * src.ind(H, K) != dst.ind(H, K) * f.at[K])
                return fail_with("induction square fails at (" + std::to_string(H) + "," +
                                 std::to_string(K) + ")");
        }
    for (int s : L.group().generators())
        for (int H = 0; H < L.size(); ++H) {
            if (!src.in_domain(H)) continue;
            int Hp = L.conjugate_index(s, H);
            if (f.at[Hp] * src.conj(s, H) != dst.conj(s, H) * f.at[H])
                return fail_with("conjugation square fails at (" + std::to_string(H) + "," +
                                 std::to_string(s) + ")");
        }
    return true;
}

MackeyMorphism theta_iso(const MackeyFunctor& m, const MackeySheafData& sh, const SectionsData& sec) {
    const SubgroupLattice& L = *m.lat;
    MackeyMorphism theta;
    theta.at.resize(L.size());
    for (int H = 0; H < L.size(); ++H) {
        int total = 0;
        for (int l : sec.sub_list[H]) total += sh.sheaf.stalk_dim[l];
        Matrix big(total, m.dim(H));
        for (std::size_t i = 0; i < sec.sub_list[H].size(); ++i) {
            int l = sec.sub_list[H][i];
            Matrix P = burnside_action(m, local_idempotent(L, l, l));
            Matrix comp = solved(sh.stalk_basis[l], P * m.res(H, l), "theta component");
            add_block(big, sec.sub_offset[H][i], 0, comp);
        }
        theta.at[H] = solved(sec.section_basis[H], big, "theta into sections");
        require(theta.at[H].is_square() && theta.at[H].rank() == theta.at[H].rows(), "Internal",
                "theta is not an isomorphism");
    }
    return theta;
}

MackeyFunctor mackey_product(const std::vector<const MackeyFunctor*>& factors) {
    require(!factors.empty(), "BadProduct", "product needs at least one factor");
    LatticePtr lat = factors.front()->lat;
    for (auto* f : factors)
        require(f->lat->id() == lat->id(), "GroupMismatch", "product factors need one group");
    MackeyFunctor out;
    out.lat = lat;
    out.dims.assign(lat->size(), 0);
    for (int H = 0; H < lat->size(); ++H)
        for (auto* f : factors) out.dims[H] += f->dim(H);
    auto assemble = [&](auto&& get) {
        Matrix m = get(*factors.front());
        for (std::size_t i = 1; i < factors.size(); ++i)
            m = Matrix::direct_sum(m, get(*factors[i]));
        return m;
    };
    for (int H = 0; H < lat->size(); ++H)
        for (int K = 0; K < lat->size(); ++K) {
            if (!lat->leq(K, H)) continue;
            out.res_map[{H, K}] = assemble([&](const MackeyFunctor& f) { return f.res(H, K); });
            out.ind_map[{H, K}] = assemble([&](const MackeyFunctor& f) { return f.ind(H, K); });
        }
    for (int s : lat->group().generators())
        for (int H = 0; H < lat->size(); ++H)
            out.conj_map[{s, H}] = assemble([&](const MackeyFunctor& f) { return f.conj(s, H); });
    return out;
}

MackeyMorphism product_projection(const std::vector<const MackeyFunctor*>& factors, int which) {
    LatticePtr lat = factors.front()->lat;
    MackeyMorphism p;
    p.at.resize(lat->size());
    for (int H = 0; H < lat->size(); ++H) {
        int total = 0, before = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (static_cast<int>(i) < which) before += factors[i]->dim(H);
            total += factors[i]->dim(H);
        }
        Matrix m(factors[which]->dim(H), total);
        for (int i = 0; i < factors[which]->dim(H); ++i) m.at(i, before + i) = 1;
        p.at[H] = std::move(m);
    }
    return p;
}

MackeyMorphism product_factorize(const std::vector<const MackeyFunctor*>& factors,
                                 const MackeyFunctor& cone_source,
                                 const std::vector<MackeyMorphism>& cone) {
    require(cone.size() == factors.size(), "BadProduct", "cone needs one leg per factor");
    LatticePtr lat = factors.front()->lat;
    MackeyMorphism f;
    f.at.resize(lat->size());
    for (int H = 0; H < lat->size(); ++H) {
        Matrix stacked(0, cone_source.dim(H));
        bool first = true;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (first) {
                stacked = cone[i].at[H];
                first = false;
            } else {
                Matrix next(stacked.rows() + cone[i].at[H].rows(), stacked.cols());
                add_block(next, 0, 0, stacked);
                add_block(next, static_cast<int>(stacked.rows()), 0, cone[i].at[H]);
                stacked = std::move(next);
            }
        }
        f.at[H] = std::move(stacked);
    }
    return f;
}

Matrix InflatedMackey::conj(int g, int H) const {
    return base.conj(q.coset_of.at(g), quot_sub[H]);
}

InflatedMackey inflate(MackeyFunctor base, LatticePtr big_lat, int N) {
    const SubgroupLattice& L = *big_lat;
    require(static_cast<int>(L.class_members(L.class_of(N)).size()) == 1, "NotNormal",
            "inflation needs a normal subgroup");
    InflatedMackey out;
    out.lat = std::move(big_lat);
    out.N = N;
    out.q = quotient(out.lat->group(), out.lat->subgroup(out.lat->full_subgroup()),
                     out.lat->subgroup(N));
    const FiniteGroup& Q = *out.q.Q;
    const FiniteGroup& B = base.lat->group();
    require(B.order() == Q.order(), "GroupMismatch", "base functor group does not match the quotient");
    for (int a = 0; a < Q.order(); ++a)
        for (int b = 0; b < Q.order(); ++b)
            require(B.mul(a, b) == Q.mul(a, b), "GroupMismatch",
                    "base functor group does not match the quotient");
    out.quot_sub.assign(out.lat->size(), -1);
    for (int s = 0; s < out.lat->size(); ++s) {
        if (!out.lat->leq(N, s)) continue;
        std::vector<int> members;
        for (int m : out.lat->subgroup(s).members) members.push_back(out.q.coset_of.at(m));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        int idx = base.lat->index_of_members(std::move(members));
        require(idx >= 0, "Internal", "quotient subgroup missing from base lattice");
        out.quot_sub[s] = idx;
    }
    out.base = std::move(base);
    return out;
}

WeylModuleFamily random_weyl_family(LatticePtr lat, int max_dim, std::mt19937_64& rng) {
    WeylModuleFamily fam{lat, {}};
    for (int c = 0; c < lat->class_count(); ++c) {
        WeylPiece piece;
        piece.cls = c;
        piece.W = weyl_group(*lat, lat->class_rep(c));
        const FiniteGroup& W = *piece.W.W;
        auto wlat = make_lattice(piece.W.W);

        // Direct sum of coset permutation representations of W.
        std::vector<int> summands;
        int total = 0;
        std::vector<int> candidates;
        for (int u = 0; u < wlat->size(); ++u)
            if (W.order() / wlat->subgroup(u).order() <= max_dim) candidates.push_back(u);
        while (total < max_dim && !candidates.empty()) {
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) break; // allow small/zero pieces
            int u = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
            int d = W.order() / wlat->subgroup(u).order();
            if (total + d > max_dim) break;
            summands.push_back(u);
            total += d;
        }
        piece.dim = total;

        std::vector<Matrix> perm(W.order(), Matrix(total, total));
        {
            int base_off = 0;
            for (int u : summands) {
                auto reps = transversal(*wlat, wlat->full_subgroup(), u);
                const Subgroup& U = wlat->subgroup(u);
                auto coset_of = [&](int w) {
                    for (std::size_t i = 0; i < reps.size(); ++i)
                        for (int x : U.members)
                            if (W.mul(reps[i], x) == w) return static_cast<int>(i);
                    return -1;
                };
                for (int w = 0; w < W.order(); ++w)
                    for (std::size_t i = 0; i < reps.size(); ++i)
                        perm[w].at(base_off + coset_of(W.mul(w, reps[i])), base_off + i) = 1;
                base_off += static_cast<int>(reps.size());
            }
        }

        // Random invertible change of basis with small integer entries.
        Matrix T = Matrix::identity(total);
        if (total > 0) {
            std::uniform_int_distribution<int> entry(-2, 2);
            for (int tries = 0; tries < 64; ++tries) {
                Matrix cand(total, total);
                for (int i = 0; i < total; ++i)
                    for (int j = 0; j < total; ++j) cand.at(i, j) = entry(rng);
                if (cand.rank() == static_cast<std::size_t>(total)) {
                    T = std::move(cand);
                    break;
                }
            }
        }
        Matrix Tinv = T.inverse();
        for (int w = 0; w < W.order(); ++w) piece.action.push_back(T * perm[w] * Tinv);
        fam.pieces.push_back(std::move(piece));
    }
    validate_family(fam);
    return fam;
}

MackeyFunctor mutate(const MackeyFunctor& m, const Mutation& mu) {
    MackeyFunctor out = m;
    switch (mu.kind) {
    case Mutation::Res:
        out.res_map.at({mu.H, mu.K}).at(mu.row, mu.col) += mu.delta;
        break;
    case Mutation::Ind:
        out.ind_map.at({mu.H, mu.K}).at(mu.row, mu.col) += mu.delta;
        break;
    case Mutation::Conj:
        out.conj_map.at({mu.g, mu.H}).at(mu.row, mu.col) += mu.delta;
        break;
    }
    return out;
}

} // namespace eqalg
