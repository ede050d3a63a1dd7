#include "eqalg/group.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "eqalg/error.hpp"

namespace eqalg {

namespace {

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

void FiniteGroup::finalize() {
    // Identity and inverses.
    identity_ = -1;
    for (int e = 0; e < n_; ++e) {
        bool ok = true;
        for (int a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) {
            identity_ = e;
            break;
        }
    }
    require(identity_ >= 0, "InvalidGroup", "no identity element");
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inv_[a] = b;
                break;
            }
        require(inv_[a] >= 0, "InvalidGroup", "element without two-sided inverse");
    }

    // Greedy deterministic generating set.
    std::vector<char> covered(n_, 0);
    covered[identity_] = 1;
    int covered_count = 1;
    for (int g = 0; g < n_ && covered_count < n_; ++g) {
        if (covered[g]) continue;
        gens_.push_back(g);
        // Close the covered set under right multiplication by g.
        std::queue<int> work;
        for (int x = 0; x < n_; ++x)
            if (covered[x]) work.push(x);
        while (!work.empty()) {
            int x = work.front();
            work.pop();
            for (int s : gens_) {
                int y = mul(x, s);
                if (!covered[y]) {
                    covered[y] = 1;
                    ++covered_count;
                    work.push(y);
                }
            }
        }
    }

    // BFS word table over the generating set, multiplying left to right.
    words_.assign(n_, {});
    std::vector<char> seen(n_, 0);
    seen[identity_] = 1;
    std::queue<int> bfs;
    bfs.push(identity_);
    while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop();
        for (int s : gens_) {
            int y = mul(x, s);
            if (!seen[y]) {
                seen[y] = 1;
                words_[y] = words_[x];
                words_[y].push_back(s);
                bfs.push(y);
            }
        }
    }
    require(std::all_of(seen.begin(), seen.end(), [](char c) { return c; }), "InvalidGroup",
            "generating set does not generate");
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::vector<std::vector<int>> table,
                                                           std::string name, bool validate) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    int n = static_cast<int>(table.size());
    require(n > 0, "InvalidGroup", "empty multiplication table");
    g->n_ = n;
    g->name_ = std::move(name);
    g->table_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        require(static_cast<int>(table[i].size()) == n, "InvalidGroup", "ragged multiplication table");
        for (int j = 0; j < n; ++j) {
            require(table[i][j] >= 0 && table[i][j] < n, "InvalidGroup", "table entry out of range");
            g->table_[static_cast<std::size_t>(i) * n + j] = table[i][j];
        }
    }
    if (validate) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    require(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)), "InvalidGroup",
                            "associativity fails");
    }
    g->finalize();
    return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_permutations(
    const std::vector<std::vector<int>>& gens, std::string name) {
    require(!gens.empty(), "InvalidGroup", "no permutation generators");
    std::size_t k = gens.front().size();
    for (const auto& p : gens) {
        require(p.size() == k, "InvalidGroup", "generators act on different sets");
        std::vector<int> check = sorted(p);
        require(check.size() == k && check.front() == 0 && check.back() == static_cast<int>(k) - 1,
                "InvalidGroup", "generator is not a permutation");
    }
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);

    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems;
    index[id] = 0;
    elems.push_back(id);
    std::queue<int> bfs;
    bfs.push(0);
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(k);
        for (std::size_t i = 0; i < k; ++i) r[i] = p[q[i]];
        return r;
    };
    while (!bfs.empty()) {
        int x = bfs.front();
        bfs.pop();
        for (const auto& s : gens) {
            auto y = compose(elems[x], s);
            if (!index.count(y)) {
                int yi = static_cast<int>(elems.size());
                index[y] = yi;
                elems.push_back(y);
                bfs.push(yi);
                require(elems.size() <= 100000, "GroupTooLarge", "permutation closure too large");
            }
        }
    }
    int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
    return from_table(std::move(table), std::move(name), false);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::cyclic(int n) {
    require(n >= 1, "InvalidGroup", "cyclic group order must be positive");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    return from_table(std::move(table), "C" + std::to_string(n), false);
}

std::shared_ptr<const FiniteGroup> FiniteGroup::symmetric(int n) {
    require(n >= 1 && n <= 5, "InvalidGroup", "S<n> supported for 1 <= n <= 5");
    std::vector<std::vector<int>> gens;
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    if (n == 1) {
        gens.push_back(id);
    } else {
        auto t = id;
        std::swap(t[0], t[1]);
        gens.push_back(t);
        auto c = id;
        std::rotate(c.begin(), c.begin() + 1, c.end());
        gens.push_back(c);
    }
    return from_permutations(gens, "S" + std::to_string(n));
}

std::shared_ptr<const FiniteGroup> FiniteGroup::product(const GroupPtr& a, const GroupPtr& b) {
    int na = a->order(), nb = b->order();
    int n = na * nb;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
            table[x][y] = a->mul(xa, ya) * nb + b->mul(xb, yb);
        }
    auto g = from_table(std::move(table), a->name() + "x" + b->name(), false);
    const_cast<FiniteGroup&>(*g).factor_a_ = a;
    const_cast<FiniteGroup&>(*g).factor_b_ = b;
    return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::builtin(const std::string& name) {
    auto parse_int = [&](const std::string& s) {
        require(!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); }),
                "UnknownGroup", "unknown built-in group '" + name + "'");
        return std::stoi(s);
    };
    if (name.size() >= 2 && name[0] == 'C') return cyclic(parse_int(name.substr(1)));
    if (name.size() >= 2 && name[0] == 'S') return symmetric(parse_int(name.substr(1)));
    if (name.rfind("Z/", 0) == 0) {
        std::string rest = name.substr(2);
        auto caret = rest.find('^');
        if (caret == std::string::npos) return cyclic(parse_int(rest));
        int p = parse_int(rest.substr(0, caret));
        int k = parse_int(rest.substr(caret + 1));
        require(k >= 0 && k <= 20, "UnknownGroup", "exponent out of range in '" + name + "'");
        long long order = 1;
        for (int i = 0; i < k; ++i) {
            order *= p;
            require(order <= 100000, "GroupTooLarge", "built-in order too large");
        }
        return cyclic(static_cast<int>(order));
    }
    fail("UnknownGroup", "unknown built-in group '" + name + "'");
}

namespace {

std::vector<std::vector<int>> parse_cycles(const std::string& line, int k) {
    // Returns the image map of a product of disjoint cycles on {1..k}.
    std::vector<std::vector<int>> cycles;
    std::vector<int> current;
    bool in_cycle = false;
    std::string num;
    auto flush_num = [&]() {
        if (!num.empty()) {
            current.push_back(std::stoi(num) - 1);
            num.clear();
        }
    };
    for (char c : line) {
        if (c == '(') {
            require(!in_cycle, "ParseError", "nested '(' in cycle notation");
            in_cycle = true;
            current.clear();
        } else if (c == ')') {
            require(in_cycle, "ParseError", "unmatched ')' in cycle notation");
            flush_num();
            in_cycle = false;
            if (!current.empty()) cycles.push_back(current);
        } else if (std::isdigit(c)) {
            require(in_cycle, "ParseError", "digit outside cycle");
            num.push_back(c);
        } else if (c == ' ' || c == ',' || c == '\t') {
            flush_num();
        } else {
            fail("ParseError", std::string("unexpected character '") + c + "' in cycle notation");
        }
    }
    require(!in_cycle, "ParseError", "unterminated cycle");
    for (const auto& cyc : cycles)
        for (int pt : cyc)
            require(pt >= 0 && pt < k, "ParseError", "cycle point out of range");
    return cycles;
}

} // namespace

std::shared_ptr<const FiniteGroup> FiniteGroup::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line = line.substr(start);
        if (line[0] == '#') continue;
        lines.push_back(line);
    }
    require(!lines.empty(), "ParseError", "empty group file");
    const std::string& header = lines.front();
    if (header == "cayley") {
        std::vector<std::vector<int>> table;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            std::istringstream row(lines[i]);
            std::vector<int> r;
            int v;
            while (row >> v) r.push_back(v);
            if (!r.empty()) table.push_back(std::move(r));
        }
        require(!table.empty() && table.size() == table.front().size(), "ParseError",
                "cayley table must be square");
        require(static_cast<int>(table.size()) <= SubgroupLattice::kDefaultMaxOrder, "GroupTooLarge",
                "group exceeds the configured order bound");
        return from_table(std::move(table), "file", true);
    }
    if (header == "perm") {
        int k = 0;
        for (std::size_t i = 1; i < lines.size(); ++i)
            for (std::size_t p = 0; p < lines[i].size(); ++p)
                if (std::isdigit(lines[i][p])) {
                    std::size_t q = p;
                    while (q < lines[i].size() && std::isdigit(lines[i][q])) ++q;
                    k = std::max(k, std::stoi(lines[i].substr(p, q - p)));
                    p = q;
                }
        require(k >= 1, "ParseError", "no points in permutation generators");
        std::vector<std::vector<int>> gens;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            auto cycles = parse_cycles(lines[i], k);
            std::vector<int> img(k);
            std::iota(img.begin(), img.end(), 0);
            for (const auto& cyc : cycles)
                for (std::size_t j = 0; j < cyc.size(); ++j) img[cyc[j]] = cyc[(j + 1) % cyc.size()];
            gens.push_back(std::move(img));
        }
        require(!gens.empty(), "ParseError", "perm file has no generators");
        return from_permutations(gens, "file");
    }
    return builtin(header);
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (members.size() != o.members.size()) return members.size() < o.members.size();
    return members < o.members;
}

Subgroup closure(const FiniteGroup& G, std::vector<int> seed) {
    std::vector<char> in(G.order(), 0);
    std::vector<int> elems;
    auto add = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            elems.push_back(x);
            return true;
        }
        return false;
    };
    add(G.identity());
    for (int s : seed) add(s);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            add(G.mul(elems[i], elems[j]));
            add(G.mul(elems[j], elems[i]));
        }
    return Subgroup{sorted(std::move(elems))};
}

Subgroup conjugate(const FiniteGroup& G, int g, const Subgroup& H) {
    std::vector<int> out;
    out.reserve(H.members.size());
    for (int h : H.members) out.push_back(G.conj(g, h));
    return Subgroup{sorted(std::move(out))};
}

bool is_subgroup_of(const Subgroup& inner, const Subgroup& outer) {
    return std::includes(outer.members.begin(), outer.members.end(), inner.members.begin(),
                         inner.members.end());
}

namespace {
std::atomic<std::uint64_t> lattice_counter{1};
}

SubgroupLattice::SubgroupLattice(GroupPtr G, int max_order) : G_(std::move(G)) {
    require(G_->order() <= max_order, "GroupTooLarge",
            "group order " + std::to_string(G_->order()) + " exceeds bound " +
                std::to_string(max_order));
    id_ = lattice_counter.fetch_add(1);
    const FiniteGroup& g = *G_;

    // Exhaustive enumeration: grow every subgroup by one generator at a time.
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> frontier{closure(g, {})};
    seen.insert(frontier.front().members);
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const auto& H : frontier) {
            for (int x = 0; x < g.order(); ++x) {
                if (H.contains(x)) continue;
                auto members = H.members;
                members.push_back(x);
                Subgroup S = closure(g, std::move(members));
                if (seen.insert(S.members).second) next.push_back(std::move(S));
            }
        }
        frontier = std::move(next);
    }
    for (auto& m : seen) subs_.push_back(Subgroup{m});
    std::sort(subs_.begin(), subs_.end());
    for (int i = 0; i < size(); ++i) by_members_[subs_[i].members] = i;

    leq_.assign(subs_.size(), std::vector<char>(subs_.size(), 0));
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j) leq_[i][j] = is_subgroup_of(subs_[i], subs_[j]);

    trivial_ = by_members_.at(std::vector<int>{g.identity()});
    full_ = size() - 1;

    conj_table_.assign(subs_.size(), std::vector<int>(g.order(), -1));
    for (int i = 0; i < size(); ++i)
        for (int x = 0; x < g.order(); ++x)
            conj_table_[i][x] = by_members_.at(conjugate(g, x, subs_[i]).members);

    // Conjugacy classes; class order follows the least member subgroup.
    cls_of_.assign(subs_.size(), -1);
    conj_from_rep_.assign(subs_.size(), -1);
    for (int i = 0; i < size(); ++i) {
        if (cls_of_[i] >= 0) continue;
        int cls = static_cast<int>(classes_.size());
        std::set<int> orbit(conj_table_[i].begin(), conj_table_[i].end());
        std::vector<int> members(orbit.begin(), orbit.end());
        for (int m : members) cls_of_[m] = cls;
        classes_.push_back(std::move(members));
    }
    for (int i = 0; i < size(); ++i) {
        int rep = class_rep(cls_of_[i]);
        for (int x = 0; x < g.order(); ++x)
            if (conj_table_[rep][x] == i) {
                conj_from_rep_[i] = x;
                break;
            }
    }

    sub_gens_.resize(subs_.size());
    for (int i = 0; i < size(); ++i) {
        Subgroup span = closure(g, {});
        for (int x : subs_[i].members) {
            if (span.contains(x)) continue;
            auto m = span.members;
            m.push_back(x);
            span = closure(g, std::move(m));
            sub_gens_[i].push_back(x);
            if (span.order() == subs_[i].order()) break;
        }
    }
}

int SubgroupLattice::index_of(const Subgroup& s) const {
    auto it = by_members_.find(s.members);
    return it == by_members_.end() ? -1 : it->second;
}

int SubgroupLattice::index_of_members(std::vector<int> members) const {
    std::sort(members.begin(), members.end());
    auto it = by_members_.find(members);
    return it == by_members_.end() ? -1 : it->second;
}

std::string SubgroupLattice::class_label(int cls) const {
    return std::to_string(cls) + ":o" + std::to_string(subs_[class_rep(cls)].order());
}

LatticePtr make_lattice(GroupPtr G, int max_order) {
    return std::make_shared<const SubgroupLattice>(std::move(G), max_order);
}

int normalizer(const SubgroupLattice& lat, int H) {
    const FiniteGroup& g = lat.group();
    std::vector<int> members;
    for (int x = 0; x < g.order(); ++x)
        if (conjugate(g, x, lat.subgroup(H)) == lat.subgroup(H)) members.push_back(x);
    int idx = lat.index_of_members(std::move(members));
    require(idx >= 0, "Internal", "normalizer not found in lattice");
    return idx;
}

int core(const SubgroupLattice& lat, int H) {
    const FiniteGroup& g = lat.group();
    std::vector<int> members;
    for (int x : lat.subgroup(H).members) {
        bool in_all = true;
        for (int y = 0; y < g.order() && in_all; ++y) in_all = lat.subgroup(H).contains(g.conj(y, x));
        if (in_all) members.push_back(x);
    }
    int idx = lat.index_of_members(std::move(members));
    require(idx >= 0, "Internal", "core not found in lattice");
    return idx;
}

WeylGroup weyl_group(const SubgroupLattice& lat, int H) {
    int N = normalizer(lat, H);
    auto q = quotient(lat.group(), lat.subgroup(N), lat.subgroup(H));
    WeylGroup w;
    w.W = q.Q;
    w.normalizer_sub = N;
    w.coset_rep = q.coset_rep;
    w.coset_of = q.coset_of;
    return w;
}

std::vector<int> double_cosets(const FiniteGroup& G, const Subgroup& H, const Subgroup& K) {
    std::vector<char> seen(G.order(), 0);
    std::vector<int> reps;
    for (int g = 0; g < G.order(); ++g) {
        if (seen[g]) continue;
        reps.push_back(g);
        for (int h : H.members)
            for (int k : K.members) seen[G.mul(G.mul(h, g), k)] = 1;
    }
    return reps;
}

std::vector<int> double_cosets(const SubgroupLattice& lat, int H, int K) {
    return double_cosets(lat.group(), lat.subgroup(H), lat.subgroup(K));
}

std::vector<int> double_cosets_in(const FiniteGroup& G, const Subgroup& ambient, const Subgroup& A,
                                  const Subgroup& B) {
    std::vector<char> seen(G.order(), 0);
    std::vector<int> reps;
    for (int x : ambient.members) {
        if (seen[x]) continue;
        reps.push_back(x);
        for (int a : A.members)
            for (int b : B.members) seen[G.mul(G.mul(a, x), b)] = 1;
    }
    return reps;
}

int intersection(const SubgroupLattice& lat, int a, int b) {
    std::vector<int> members;
    const auto& ma = lat.subgroup(a).members;
    const auto& mb = lat.subgroup(b).members;
    std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(members));
    int idx = lat.index_of_members(std::move(members));
    require(idx >= 0, "Internal", "intersection not found in lattice");
    return idx;
}

Integer mobius(const SubgroupLattice& lat, int D, int K) {
    require(lat.leq(D, K), "NotComparable", "Moebius function needs D <= K");
    // mu(A,K) = [A=K] - sum over A < B <= K of mu(B,K), an equivalent form of
    // the alternating chain count.
    std::map<int, Integer> memo;
    auto rec = [&](auto&& self, int A) -> Integer {
        if (A == K) return 1;
        auto it = memo.find(A);
        if (it != memo.end()) return it->second;
        Integer total = 0;
        for (int B = 0; B < lat.size(); ++B)
            if (B != A && lat.leq(A, B) && lat.leq(B, K)) total += self(self, B);
        return memo[A] = -total;
    };
    return rec(rec, D);
}

std::vector<int> transversal(const SubgroupLattice& lat, int H, int K) {
    require(lat.leq(K, H), "NotSubgroup", "transversal needs K <= H");
    const FiniteGroup& g = lat.group();
    std::vector<char> seen(g.order(), 0);
    std::vector<int> reps;
    for (int h : lat.subgroup(H).members) {
        if (seen[h]) continue;
        reps.push_back(h);
        for (int k : lat.subgroup(K).members) seen[g.mul(h, k)] = 1;
    }
    return reps;
}

QuotientData quotient(const FiniteGroup& G, const Subgroup& N, const Subgroup& K) {
    require(is_subgroup_of(K, N), "NotSubgroup", "quotient needs K <= N");
    for (int n : N.members)
        require(conjugate(G, n, K) == K, "NotNormal", "quotient needs K normal in N");
    QuotientData out;
    std::map<int, int> coset_min; // least element of each coset, keyed by itself
    std::map<int, int> elem_coset_min;
    for (int n : N.members) {
        if (elem_coset_min.count(n)) continue;
        int least = n;
        std::vector<int> coset;
        for (int k : K.members) coset.push_back(G.mul(n, k));
        std::sort(coset.begin(), coset.end());
        least = coset.front();
        for (int c : coset) elem_coset_min[c] = least;
        coset_min[least] = least;
    }
    for (auto& [least, _] : coset_min) {
        out.coset_rep.push_back(least);
    }
    for (std::size_t i = 0; i < out.coset_rep.size(); ++i)
        for (int n : N.members)
            if (elem_coset_min.at(n) == out.coset_rep[i]) out.coset_of[n] = static_cast<int>(i);
    int q = static_cast<int>(out.coset_rep.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[a][b] = out.coset_of.at(elem_coset_min.at(G.mul(out.coset_rep[a], out.coset_rep[b])));
    out.Q = FiniteGroup::from_table(std::move(table), "quot", false);
    return out;
}

} // namespace eqalg
