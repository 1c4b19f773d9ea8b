#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "grigrow/grig.hpp"
#include "grigrow/rational.hpp"
#include "grigrow/schreier.hpp"
#include "grigrow/wreath.hpp"

// Ball enumeration with deduplication by canonical key, inverted-orbit
// growth, discrete concave majorants and the wreath growth bound
//   v_G(R) * binom(CR, rho(R)) * vbar_H(R/rho(R))^rho(R).

namespace grigrow::growth {

struct GrowthRow {
    unsigned radius;
    std::uint64_t ball, sphere;
};

struct GrowthTable {
    std::string generating_set;
    std::vector<GrowthRow> rows;
    bool truncated = false;  // element budget was exhausted
    std::uint64_t ball(unsigned r) const;  // throws std::out_of_range if missing
};

// Breadth-first closure over an enumerable-group oracle:
//   using Elem = ...; Elem identity() const;
//   std::vector<Elem> generators() const; Elem mul(a,b) const;
//   std::string key(a) const;            // canonical within the enumeration
// Deterministic for any thread count: each layer is expanded in frontier
// order and merged chunk by chunk.
template <class O>
GrowthTable enumerate_balls(const O& oracle, unsigned r_max, std::size_t budget,
                            unsigned threads = 1) {
    GrowthTable table;
    table.generating_set = std::to_string(oracle.generators().size()) + " generators";
    using Elem = typename O::Elem;
    std::unordered_set<std::string> seen;
    std::vector<Elem> frontier{oracle.identity()};
    seen.insert(oracle.key(frontier.front()));
    table.rows.push_back({0, 1, 1});
    const auto gens = oracle.generators();
    for (unsigned r = 1; r <= r_max && !frontier.empty(); ++r) {
        std::vector<std::pair<std::string, Elem>> products(frontier.size() * gens.size());
        auto expand = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                    Elem p = oracle.mul(frontier[i], gens[gi]);
                    products[i * gens.size() + gi] = {oracle.key(p), std::move(p)};
                }
        };
        unsigned nthreads = std::max(1u, threads);
        if (nthreads <= 1 || frontier.size() < 64) {
            expand(0, frontier.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (frontier.size() + nthreads - 1) / nthreads;
            for (unsigned t = 0; t < nthreads; ++t) {
                std::size_t lo = t * chunk, hi = std::min(frontier.size(), lo + chunk);
                if (lo < hi) pool.emplace_back(expand, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
        std::vector<Elem> next;
        for (auto& [key, elem] : products)
            if (seen.insert(key).second) next.push_back(std::move(elem));
        frontier = std::move(next);
        table.rows.push_back({r, seen.size(), frontier.size()});
        if (seen.size() > budget) {
            table.truncated = true;
            break;
        }
    }
    if (!table.truncated)  // exhausted groups keep a constant ball
        for (unsigned r = static_cast<unsigned>(table.rows.size()); r <= r_max; ++r)
            table.rows.push_back({r, table.rows.back().ball, 0});
    return table;
}

// --- group oracles -----------------------------------------------------------

struct TrivialOracle {
    using Elem = int;
    Elem identity() const { return 0; }
    std::vector<Elem> generators() const { return {0}; }
    Elem mul(Elem, Elem) const { return 0; }
    std::string key(Elem) const { return "e"; }
};

struct ZOracle {
    using Elem = std::int64_t;
    Elem identity() const { return 0; }
    std::vector<Elem> generators() const { return {1, -1}; }
    Elem mul(Elem a, Elem b) const { return a + b; }
    std::string key(Elem a) const { return std::to_string(a); }
};

struct GrigOracle {
    unsigned word_bound;  // enumeration goes at most this deep
    using Elem = grig::Element;
    explicit GrigOracle(unsigned r_max) : word_bound(r_max) {}
    Elem identity() const { return grig::Element(); }
    std::vector<Elem> generators() const {
        return {grig::Element::generator('a'), grig::Element::generator('b'),
                grig::Element::generator('c'), grig::Element::generator('d')};
    }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    std::string key(const Elem& a) const {
        return grig::action_signature(a, grig::signature_depth_for_length(2 * word_bound));
    }
};

// a base group instance together with a choice of generators
template <class B>
struct BaseGroupOracle {
    B base;
    std::vector<typename B::Elem> gens;
    using Elem = typename B::Elem;
    Elem identity() const { return base.identity(); }
    std::vector<Elem> generators() const { return gens; }
    Elem mul(const Elem& a, const Elem& b) const { return base.mul(a, b); }
    std::string key(const Elem& a) const { return base.key(a); }
};

template <class B>
struct WreathGroupOracle {
    B base;
    std::vector<wreath::WreathElement<B>> gens;
    unsigned word_bound;
    using Elem = wreath::WreathElement<B>;
    Elem identity() const { return wreath::w_identity(base); }
    std::vector<Elem> generators() const { return gens; }
    Elem mul(const Elem& a, const Elem& b) const { return wreath::w_mul(base, a, b); }
    std::string key(const Elem& a) const { return wreath::w_key(base, a, word_bound); }
};

// Independent route for the Grigorchuk table: enumerate reduced words by
// length and deduplicate by pairwise group equality (no signatures).
GrowthTable grig_table_naive(unsigned r_max);

// --- inverted orbits ----------------------------------------------------------

std::set<schreier::OrbitPoint> inverted_orbit(const std::vector<grig::Element>& word,
                                              const schreier::OrbitPoint& x);

struct InvertedOrbitStats {
    unsigned n = 0;
    std::optional<std::uint64_t> exact_max;
    std::optional<std::uint64_t> sampled_max;
    std::uint64_t samples = 0;
};

// Exact mode: maximum of |inverted orbit| over all 4^n generator words,
// computed by depth-first search over orbit-set states with memoization and
// incumbent pruning.  Throws std::invalid_argument past the cap.
InvertedOrbitStats inverted_orbit_growth_exact(unsigned n, const schreier::OrbitPoint& x,
                                               unsigned cap = 14);
InvertedOrbitStats inverted_orbit_growth_sampled(unsigned n, const schreier::OrbitPoint& x,
                                                 std::uint64_t trials, std::uint64_t seed);

// --- concave majorant ----------------------------------------------------------

struct PiecewiseLinear {
    std::vector<std::pair<Rational, Rational>> knots;  // increasing x
    Rational eval(const Rational& x) const;            // throws outside the span
    bool concave() const;
};

// Discrete upper concave hull of the point set; majorizes the table and
// touches it at every hull vertex.
PiecewiseLinear concave_majorant(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& f);

// --- wreath growth bound --------------------------------------------------------

struct BoundValue {
    bool overflow = false;         // true: bound exceeds the representable range
    unsigned long long value = 0;  // floor of the bound otherwise
    bool at_least(std::uint64_t measured) const { return overflow || measured <= value; }
};

// v_G(R) * binom(ceil(C R), rho(R)) * vbar_H(R / rho(R))^rho(R), evaluated
// exactly (saturating only the final magnitude).  rho is indexed by radius.
BoundValue wreath_growth_bound(const GrowthTable& vG, const PiecewiseLinear& vH_bar,
                               const Rational& C, const std::vector<std::uint64_t>& rho,
                               unsigned R);

std::string to_csv(const GrowthTable& t);
std::string stats_csv(const std::vector<InvertedOrbitStats>& stats);

}  // namespace grigrow::growth
