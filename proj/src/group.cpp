#include "ncup/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ncup/errors.hpp"

namespace ncup {

namespace {

std::string triple(int a, int b, int c) {
    std::ostringstream os;
    os << "(" << a << "," << b << "," << c << ")";
    return os.str();
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

}  // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                    std::vector<std::string> labels) {
    const int n = static_cast<int>(table.size());
    if (n == 0) fail("NotLatinSquare", "empty table");
    FiniteGroup g;
    g.n_ = n;
    g.table_.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[i].size()) != n)
            fail("NotLatinSquare", "row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            int v = table[i][j];
            if (v < 0 || v >= n)
                fail("NotLatinSquare",
                     "entry " + triple(i, j, v) + " outside 0.." + std::to_string(n - 1));
            g.table_[static_cast<size_t>(i) * n + j] = v;
        }
    }

    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int j = 0; j < n; ++j) {
            int r = g.mul(i, j), c = g.mul(j, i);
            if (seen_row[r])
                fail("NotLatinSquare", "row " + std::to_string(i) + " repeats " +
                                           std::to_string(r) + " at column " + std::to_string(j));
            if (seen_col[c])
                fail("NotLatinSquare", "column " + std::to_string(i) + " repeats " +
                                           std::to_string(c) + " at row " + std::to_string(j));
            seen_row[r] = seen_col[c] = true;
        }
    }

    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) fail("NoIdentity", "no two-sided identity element");
    g.identity_ = identity;

    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.mul(a, b) == identity && g.mul(b, a) == identity) {
                g.inverse_[a] = b;
                break;
            }
        }
        if (g.inverse_[a] < 0)
            fail("NoInverse", "element " + std::to_string(a) + " has no two-sided inverse");
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    fail("NotAssociative", "witness " + triple(a, b, c));

    if (labels.empty()) {
        labels.resize(n);
        for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
    }
    if (static_cast<int>(labels.size()) != n) fail("NotLatinSquare", "label count mismatch");
    g.labels_ = std::move(labels);
    return g;
}

int FiniteGroup::element_order(int a) const {
    int x = a, k = 1;
    while (x != identity_) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

FiniteGroup cyclic_group(int n) {
    if (n < 1) fail("UnsupportedSize", "cyclic order must be >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup::from_table(t);
}

FiniteGroup dihedral_group(int n) {
    if (n < 1) fail("UnsupportedSize", "dihedral parameter must be >= 1");
    // Index i < n is r^i, index n+i is r^i s, with s r s = r^{-1}.
    const int m = 2 * n;
    auto idx = [n](bool refl, int rot) { return (refl ? n : 0) + ((rot % n) + n) % n; };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a) {
        bool ra = a >= n;
        int ka = ra ? a - n : a;
        for (int b = 0; b < m; ++b) {
            bool rb = b >= n;
            int kb = rb ? b - n : b;
            // (r^ka s^ra)(r^kb s^rb) = r^(ka + kb or ka - kb) s^(ra xor rb)
            int rot = ra ? ka - kb : ka + kb;
            t[a][b] = idx(ra != rb, rot);
        }
    }
    std::vector<std::string> labels(m);
    for (int i = 0; i < n; ++i) labels[i] = "r" + std::to_string(i);
    for (int i = 0; i < n; ++i) labels[n + i] = "r" + std::to_string(i) + "s";
    return FiniteGroup::from_table(t, labels);
}

FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 5) fail("UnsupportedSize", "symmetric group supported for 1 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    const int m = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> comp(n);
            for (int i = 0; i < n; ++i) comp[i] = perms[a][perms[b][i]];
            t[a][b] = index.at(comp);
        }
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        std::string s;
        for (int v : perms[i]) s += std::to_string(v);
        labels[i] = s;
    }
    return FiniteGroup::from_table(t, labels);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const int ng = g.order(), nh = h.order(), m = ng * nh;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int ga = a / nh, ha = a % nh, gb = b / nh, hb = b % nh;
            t[a][b] = g.mul(ga, gb) * nh + h.mul(ha, hb);
        }
    std::vector<std::string> labels(m);
    for (int a = 0; a < m; ++a)
        labels[a] = "(" + g.label(a / nh) + "," + h.label(a % nh) + ")";
    return FiniteGroup::from_table(t, labels);
}

FiniteGroup builtin_group(const std::string& spec) {
    auto parse_one = [](const std::string& s) -> FiniteGroup {
        auto colon = s.find(':');
        if (colon == std::string::npos) fail("UnsupportedSize", "bad group spec '" + s + "'");
        std::string family = s.substr(0, colon);
        int n = 0;
        try {
            n = std::stoi(s.substr(colon + 1));
        } catch (...) {
            fail("UnsupportedSize", "bad group parameter in '" + s + "'");
        }
        if (family == "cyclic") return cyclic_group(n);
        if (family == "dihedral") return dihedral_group(n);
        if (family == "symmetric") return symmetric_group(n);
        fail("UnsupportedSize", "unknown group family '" + family + "'");
    };
    if (spec.rfind("product:", 0) == 0) {
        std::string rest = spec.substr(8);
        auto comma = rest.find(',');
        if (comma == std::string::npos) fail("UnsupportedSize", "product spec needs two factors");
        return direct_product(parse_one(rest.substr(0, comma)), parse_one(rest.substr(comma + 1)));
    }
    return parse_one(spec);
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

Subgroup subgroup_closure(GroupPtr g, std::vector<int> generators) {
    std::set<int> s{g->identity()};
    for (int x : generators) s.insert(x);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(s.begin(), s.end());
        for (int a : cur)
            for (int b : cur)
                if (s.insert(g->mul(a, b)).second) grew = true;
    }
    Subgroup h;
    h.parent = std::move(g);
    h.members.assign(s.begin(), s.end());
    return h;
}

std::vector<Subgroup> enumerate_subgroups(GroupPtr g, int bound) {
    if (g->order() > bound)
        fail("GroupTooLarge", "order " + std::to_string(g->order()) + " exceeds bound " +
                                  std::to_string(bound));
    std::set<std::vector<int>> known;
    std::vector<std::vector<int>> queue;
    auto push = [&](const Subgroup& s) {
        if (known.insert(s.members).second) queue.push_back(s.members);
    };
    push(subgroup_closure(g, {}));
    for (size_t q = 0; q < queue.size(); ++q) {
        std::vector<int> base = queue[q];
        for (int x = 0; x < g->order(); ++x) {
            if (std::binary_search(base.begin(), base.end(), x)) continue;
            std::vector<int> gens = base;
            gens.push_back(x);
            push(subgroup_closure(g, gens));
        }
    }
    std::vector<Subgroup> out;
    out.reserve(known.size());
    for (const auto& m : known) out.push_back(Subgroup{g, m});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return out;
}

Subgroup commutator_subgroup(const Subgroup& h) {
    const auto& g = *h.parent;
    std::vector<int> gens;
    for (int a : h.members)
        for (int b : h.members)
            gens.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    return subgroup_closure(h.parent, gens);
}

namespace {

std::vector<std::vector<int>> cosets_impl(const Subgroup& h, bool right) {
    const auto& g = *h.parent;
    std::vector<bool> used(g.order(), false);
    std::vector<std::vector<int>> out;
    // Identity coset first, then by minimal element.
    std::vector<int> reps;
    reps.push_back(g.identity());
    for (int x = 0; x < g.order(); ++x) reps.push_back(x);
    for (int rep : reps) {
        if (used[rep]) continue;
        std::vector<int> coset;
        for (int m : h.members) coset.push_back(right ? g.mul(m, rep) : g.mul(rep, m));
        std::sort(coset.begin(), coset.end());
        for (int x : coset) used[x] = true;
        out.push_back(std::move(coset));
    }
    return out;
}

}  // namespace

std::vector<std::vector<int>> right_cosets(const Subgroup& h) { return cosets_impl(h, true); }
std::vector<std::vector<int>> left_cosets(const Subgroup& h) { return cosets_impl(h, false); }

cplx Character::value(int element) const {
    auto it = std::lower_bound(subgroup.members.begin(), subgroup.members.end(), element);
    if (it == subgroup.members.end() || *it != element)
        fail("InvalidCharacter", "element " + std::to_string(element) + " not in subgroup");
    long k = num[static_cast<size_t>(it - subgroup.members.begin())];
    double angle = 6.283185307179586476925287 * static_cast<double>(k) / static_cast<double>(den);
    return cplx(std::cos(angle), std::sin(angle));
}

bool Character::is_trivial() const {
    for (long k : num)
        if (k % den != 0) return false;
    return true;
}

namespace {

// Quotient of a subgroup by a normal subgroup, presented as a FiniteGroup on
// coset indices plus the member -> coset map.
struct Quotient {
    FiniteGroup group;
    std::vector<int> coset_of;  // indexed by position in h.members
};

Quotient quotient_group(const Subgroup& h, const Subgroup& k) {
    const auto& g = *h.parent;
    std::map<int, int> pos;  // parent element -> position in h.members
    for (size_t i = 0; i < h.members.size(); ++i) pos[h.members[i]] = static_cast<int>(i);

    std::vector<int> coset_of(h.members.size(), -1);
    std::vector<int> reps;
    for (size_t i = 0; i < h.members.size(); ++i) {
        if (coset_of[i] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(h.members[i]);
        for (int m : k.members) coset_of[pos.at(g.mul(m, h.members[i]))] = c;
    }
    const int q = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) table[a][b] = coset_of[pos.at(g.mul(reps[a], reps[b]))];
    return Quotient{FiniteGroup::from_table(table), coset_of};
}

struct AbelianDecomp {
    std::vector<int> gens;    // element indices of the group
    std::vector<int> orders;  // matching orders; all divide orders[0]
};

AbelianDecomp decompose_abelian(const FiniteGroup& q) {
    AbelianDecomp out;
    if (q.order() == 1) return out;

    int best = -1, best_ord = 0;
    for (int x = 0; x < q.order(); ++x) {
        int o = q.element_order(x);
        if (o > best_ord) {
            best_ord = o;
            best = x;
        }
    }
    std::set<int> cyc;
    {
        int x = q.identity();
        do {
            cyc.insert(x);
            x = q.mul(x, best);
        } while (x != q.identity());
    }
    out.gens.push_back(best);
    out.orders.push_back(best_ord);
    if (best_ord == q.order()) return out;

    // A maximal-order cyclic subgroup of a finite abelian group is a direct
    // summand; locate a complement among the subgroups.
    auto qp = std::make_shared<const FiniteGroup>(q);
    for (const auto& b : enumerate_subgroups(qp, qp->order())) {
        if (b.order() * best_ord != q.order()) continue;
        bool trivial_meet = true;
        for (int m : b.members)
            if (m != q.identity() && cyc.count(m)) {
                trivial_meet = false;
                break;
            }
        if (!trivial_meet) continue;

        // Recurse inside the complement.
        std::map<int, int> pos;
        for (size_t i = 0; i < b.members.size(); ++i) pos[b.members[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> table(b.members.size(), std::vector<int>(b.members.size()));
        for (size_t i = 0; i < b.members.size(); ++i)
            for (size_t j = 0; j < b.members.size(); ++j)
                table[i][j] = pos.at(q.mul(b.members[i], b.members[j]));
        AbelianDecomp inner = decompose_abelian(FiniteGroup::from_table(table));
        for (size_t i = 0; i < inner.gens.size(); ++i) {
            out.gens.push_back(b.members[inner.gens[i]]);
            out.orders.push_back(inner.orders[i]);
        }
        return out;
    }
    fail("InvalidCharacter", "no cyclic complement found (group not abelian?)");
}

std::vector<Character> characters_by_decomposition(const Subgroup& h) {
    Subgroup comm = commutator_subgroup(h);
    Quotient quo = quotient_group(h, comm);
    AbelianDecomp dec = decompose_abelian(quo.group);

    const int nq = quo.group.order();
    const int m = static_cast<int>(dec.gens.size());
    // Exponent tuples for every quotient element via full enumeration; the
    // decomposition is direct, so tuple -> element is a bijection.
    std::vector<std::vector<int>> expo(nq);
    std::vector<bool> have(nq, false);
    std::vector<int> tuple(m, 0);
    int filled = 0;
    for (;;) {
        int x = quo.group.identity();
        for (int i = 0; i < m; ++i)
            for (int e = 0; e < tuple[i]; ++e) x = quo.group.mul(x, dec.gens[i]);
        if (have[x]) fail("InvalidCharacter", "cyclic decomposition is not direct");
        have[x] = true;
        expo[x] = tuple;
        ++filled;
        int i = m - 1;
        while (i >= 0 && ++tuple[i] == dec.orders[i]) tuple[i--] = 0;
        if (i < 0) break;
    }
    if (filled != nq) fail("InvalidCharacter", "cyclic decomposition does not cover quotient");

    long den = dec.orders.empty() ? 1 : dec.orders[0];  // exponent of the quotient
    std::vector<Character> out;
    std::vector<int> k(m, 0);
    for (;;) {
        Character chi;
        chi.subgroup = h;
        chi.den = den;
        chi.num.resize(h.members.size());
        for (size_t i = 0; i < h.members.size(); ++i) {
            const auto& e = expo[quo.coset_of[i]];
            long acc = 0;
            for (int t = 0; t < m; ++t)
                acc = (acc + static_cast<long>(k[t]) * e[t] * (den / dec.orders[t])) % den;
            chi.num[i] = acc;
        }
        out.push_back(std::move(chi));
        int i = m - 1;
        while (i >= 0 && ++k[i] == dec.orders[i]) k[i--] = 0;
        if (i < 0) break;
        if (m == 0) break;
    }
    std::sort(out.begin(), out.end(), [](const Character& a, const Character& b) {
        return a.num < b.num;
    });
    return out;
}

}  // namespace

std::vector<Character> one_dim_characters(const Subgroup& h) {
    try {
        return characters_by_decomposition(h);
    } catch (const Error&) {
        if (h.order() <= 16) return one_dim_characters_bruteforce(h);
        throw;
    }
}

std::vector<Character> one_dim_characters_bruteforce(const Subgroup& h) {
    const auto& g = *h.parent;
    const int m = h.order();
    std::map<int, int> pos;
    for (int i = 0; i < m; ++i) pos[h.members[i]] = i;

    long den = 1;
    for (int x : h.members) den = den / gcd_l(den, g.element_order(x)) * g.element_order(x);

    std::vector<std::vector<long>> solutions;
    std::vector<long> val(m, -1);
    val[pos.at(g.identity())] = 0;

    auto propagate = [&](std::vector<long>& v) -> bool {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < m; ++i) {
                if (v[i] < 0) continue;
                for (int j = 0; j < m; ++j) {
                    if (v[j] < 0) continue;
                    int k = pos.at(g.mul(h.members[i], h.members[j]));
                    long expect = (v[i] + v[j]) % den;
                    if (v[k] < 0) {
                        v[k] = expect;
                        changed = true;
                    } else if (v[k] != expect) {
                        return false;
                    }
                }
            }
        }
        return true;
    };

    std::vector<std::vector<long>> stack{val};
    while (!stack.empty()) {
        std::vector<long> cur = std::move(stack.back());
        stack.pop_back();
        if (!propagate(cur)) continue;
        int unset = -1;
        for (int i = 0; i < m; ++i)
            if (cur[i] < 0) {
                unset = i;
                break;
            }
        if (unset < 0) {
            solutions.push_back(cur);
            continue;
        }
        int o = g.element_order(h.members[unset]);
        for (int j = o - 1; j >= 0; --j) {
            std::vector<long> branch = cur;
            branch[unset] = static_cast<long>(j) * (den / o);
            stack.push_back(std::move(branch));
        }
    }

    std::sort(solutions.begin(), solutions.end());
    solutions.erase(std::unique(solutions.begin(), solutions.end()), solutions.end());
    std::vector<Character> out;
    for (auto& s : solutions) out.push_back(Character{h, std::move(s), den});
    return out;
}

}  // namespace ncup
