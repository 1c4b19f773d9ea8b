#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "grigrow/grig.hpp"
#include "grigrow/rational.hpp"
#include "grigrow/schreier.hpp"

// Restricted permutational wreath product elements B wr_X G for the ray
// orbit X, with a pluggable base group.  A base group is an instance object
// exposing:
//   using Elem = ...;
//   Elem identity() const; Elem mul(a,b) const; Elem inv(a) const;
//   bool eq(a,b) const; std::string key(a) const;       // canonical
//   std::vector<Elem> generators() const;
//   std::optional<std::uint64_t> order(a) const;        // nullopt = infinite
//   std::string name() const;

namespace grigrow::wreath {

// --- base group instances ---------------------------------------------------

struct ZGroup {
    using Elem = std::int64_t;
    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const { return a + b; }
    Elem inv(Elem a) const { return -a; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string key(Elem a) const { return std::to_string(a); }
    std::vector<Elem> generators() const { return {1, -1}; }
    std::optional<std::uint64_t> order(Elem a) const {
        if (a == 0) return 1;
        return std::nullopt;
    }
    std::string name() const { return "Z"; }
};

struct ZModGroup {
    unsigned n;
    using Elem = std::uint32_t;
    explicit ZModGroup(unsigned mod) : n(mod) {}
    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const { return (a + b) % n; }
    Elem inv(Elem a) const { return a == 0 ? 0 : n - a; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string key(Elem a) const { return std::to_string(a); }
    std::vector<Elem> generators() const { return {1 % n}; }
    std::optional<std::uint64_t> order(Elem a) const { return n / std::gcd<std::uint64_t>(n, a); }
    std::string name() const { return "Z/" + std::to_string(n); }
};

struct RationalGroup {  // (Q, +)
    using Elem = Rational;
    Elem identity() const { return Rational(0); }
    Elem mul(const Elem& a, const Elem& b) const { return a + b; }
    Elem inv(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string key(const Elem& a) const { return a.str(); }
    std::vector<Elem> generators() const { return {}; }  // not finitely generated
    std::optional<std::uint64_t> order(const Elem& a) const {
        if (a == Rational(0)) return 1;
        return std::nullopt;
    }
    std::string name() const { return "Q"; }
};

struct Sym3Group {  // symmetric group on 3 symbols, right action composition
    using Elem = std::array<std::uint8_t, 3>;  // images of 0,1,2
    Elem identity() const { return {0, 1, 2}; }
    Elem mul(const Elem& a, const Elem& b) const {  // (a then b)
        return {b[a[0]], b[a[1]], b[a[2]]};
    }
    Elem inv(const Elem& a) const {
        Elem r{};
        for (std::uint8_t i = 0; i < 3; ++i) r[a[i]] = i;
        return r;
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string key(const Elem& a) const {
        return {char('0' + a[0]), char('0' + a[1]), char('0' + a[2])};
    }
    std::vector<Elem> generators() const { return {{1, 0, 2}, {1, 2, 0}}; }  // (01), (012)
    std::optional<std::uint64_t> order(const Elem& a) const {
        Elem x = a;
        std::uint64_t k = 1;
        while (!eq(x, identity())) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }
    std::string name() const { return "Sym3"; }
};

template <class A, class B>
struct ProductGroup {
    A a;
    B b;
    using Elem = std::pair<typename A::Elem, typename B::Elem>;
    ProductGroup(A ga, B gb) : a(std::move(ga)), b(std::move(gb)) {}
    Elem identity() const { return {a.identity(), b.identity()}; }
    Elem mul(const Elem& x, const Elem& y) const {
        return {a.mul(x.first, y.first), b.mul(x.second, y.second)};
    }
    Elem inv(const Elem& x) const { return {a.inv(x.first), b.inv(x.second)}; }
    bool eq(const Elem& x, const Elem& y) const {
        return a.eq(x.first, y.first) && b.eq(x.second, y.second);
    }
    std::string key(const Elem& x) const { return a.key(x.first) + "," + b.key(x.second); }
    std::vector<Elem> generators() const {
        std::vector<Elem> gens;
        for (const auto& g : a.generators()) gens.push_back({g, b.identity()});
        for (const auto& g : b.generators()) gens.push_back({a.identity(), g});
        return gens;
    }
    std::optional<std::uint64_t> order(const Elem& x) const {
        auto oa = a.order(x.first), ob = b.order(x.second);
        if (!oa || !ob) return std::nullopt;
        return std::lcm(*oa, *ob);
    }
    std::string name() const { return a.name() + "x" + b.name(); }
};

// The acting group itself as a base group.  Canonical keys use the bounded
// shortlex minimization, so this instance is meant for small elements.
struct GrigAsBase {
    using Elem = grig::Element;
    Elem identity() const { return grig::Element(); }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const { return a.inverse(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string key(const Elem& a) const {
        auto canon = grig::shortlex_canonical(a);
        return canon ? canon->word() : a.word();
    }
    std::vector<Elem> generators() const {
        return {grig::Element::generator('a'), grig::Element::generator('b'),
                grig::Element::generator('c'), grig::Element::generator('d')};
    }
    std::optional<std::uint64_t> order(const Elem& a) const {
        Elem x = a;
        for (std::uint64_t k = 1; k <= 64; ++k) {
            if (grig::is_identity(x)) return k;
            x = mul(x, a);
        }
        return std::nullopt;  // undetermined within the probe bound
    }
    std::string name() const { return "Grig"; }
};

// --- wreath elements ---------------------------------------------------------

template <class B>
struct WreathElement {
    // finitely supported function X -> B, sorted by point prefix, no identity
    // values; plus the acting part.
    std::vector<std::pair<schreier::OrbitPoint, typename B::Elem>> support;
    grig::Element g;
};

template <class B>
WreathElement<B> w_identity(const B&) {
    return {};
}

template <class B>
typename B::Elem value_at(const B& base, const WreathElement<B>& u, const schreier::OrbitPoint& p) {
    for (const auto& [q, v] : u.support)
        if (q == p) return v;
    return base.identity();
}

template <class B>
void prune_support(const B& base, WreathElement<B>& u) {
    std::sort(u.support.begin(), u.support.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<schreier::OrbitPoint, typename B::Elem>> out;
    for (auto& s : u.support)
        if (!base.eq(s.second, base.identity())) out.push_back(std::move(s));
    u.support = std::move(out);
}

// (f1,g1)(f2,g2) = (x -> f1(x) f2(x g1), g1 g2)
template <class B>
WreathElement<B> w_mul(const B& base, const WreathElement<B>& u, const WreathElement<B>& v) {
    WreathElement<B> r;
    r.g = u.g * v.g;
    std::vector<schreier::OrbitPoint> pts;
    for (const auto& [p, val] : u.support) pts.push_back(p);
    grig::Element g1inv = u.g.inverse();
    for (const auto& [q, val] : v.support) pts.push_back(schreier::act_point(g1inv, q));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const auto& p : pts) {
        auto val = base.mul(value_at(base, u, p), value_at(base, v, schreier::act_point(u.g, p)));
        if (!base.eq(val, base.identity())) r.support.emplace_back(p, val);
    }
    return r;
}

template <class B>
WreathElement<B> w_inv(const B& base, const WreathElement<B>& u) {
    WreathElement<B> r;
    r.g = u.g.inverse();
    for (const auto& [p, val] : u.support)
        r.support.emplace_back(schreier::act_point(u.g, p), base.inv(val));
    prune_support(base, r);
    return r;
}

template <class B>
bool w_eq(const B& base, const WreathElement<B>& u, const WreathElement<B>& v) {
    if (u.support.size() != v.support.size()) return false;
    for (std::size_t i = 0; i < u.support.size(); ++i) {
        if (!(u.support[i].first == v.support[i].first)) return false;
        if (!base.eq(u.support[i].second, v.support[i].second)) return false;
    }
    return u.g == v.g;
}

// canonical key; the g-part is keyed by its action signature at a depth
// sufficient for words of length <= g_len_bound.
template <class B>
std::string w_key(const B& base, const WreathElement<B>& u, std::size_t g_len_bound) {
    std::ostringstream os;
    for (const auto& [p, val] : u.support)
        os << (p.prefix().empty() ? "e" : p.prefix()) << ':' << base.key(val) << ';';
    os << '|'
       << grig::action_signature(u.g, grig::signature_depth_for_length(2 * g_len_bound));
    return os.str();
}

// imbedding of B as functions supported at x_0
template <class B>
WreathElement<B> iota(const B& base, typename B::Elem b) {
    WreathElement<B> r;
    if (!base.eq(b, base.identity())) r.support.emplace_back(schreier::OrbitPoint(), std::move(b));
    return r;
}

template <class B>
WreathElement<B> pure(const grig::Element& g) {
    WreathElement<B> r;
    r.g = g;
    return r;
}

template <class B>
WreathElement<B> w_commutator(const B& base, const WreathElement<B>& u, const WreathElement<B>& v) {
    return w_mul(base, w_mul(base, w_inv(base, u), w_inv(base, v)), w_mul(base, u, v));
}

template <class B>
std::string w_str(const B& base, const WreathElement<B>& u) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [p, val] : u.support) {
        if (!first) os << ", ";
        first = false;
        os << (p.prefix().empty() ? "e" : p.prefix()) << ':' << base.key(val);
    }
    os << " | " << (u.g.trivial_word() ? "1" : u.g.word()) << '}';
    return os.str();
}

}  // namespace grigrow::wreath
