#include "grigrow/growth.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace grigrow::growth {

std::uint64_t GrowthTable::ball(unsigned r) const {
    for (const auto& row : rows)
        if (row.radius == r) return row.ball;
    throw std::out_of_range("growth table: radius not enumerated");
}

namespace {
void reduced_words_of_length(std::string& w, unsigned len, std::vector<grig::Element>& out) {
    if (w.size() == len) {
        out.push_back(grig::Element::parse(w));
        return;
    }
    for (char g : {'a', 'b', 'c', 'd'}) {
        if (!w.empty() && ((w.back() == 'a') == (g == 'a'))) continue;
        w.push_back(g);
        reduced_words_of_length(w, len, out);
        w.pop_back();
    }
}
}  // namespace

GrowthTable grig_table_naive(unsigned r_max) {
    // every element is represented by a reduced word of its geodesic length,
    // so scanning all reduced words of length <= r and deduplicating by
    // pairwise group equality yields the exact ball sizes
    GrowthTable table;
    table.generating_set = "a,b,c,d (naive pairwise equality)";
    std::vector<grig::Element> reps{grig::Element()};
    table.rows.push_back({0, 1, 1});
    for (unsigned r = 1; r <= r_max; ++r) {
        std::vector<grig::Element> words;
        std::string w;
        reduced_words_of_length(w, r, words);
        std::uint64_t fresh = 0;
        for (const auto& cand : words) {
            bool known = false;
            for (const auto& rep : reps)
                if (cand == rep) {
                    known = true;
                    break;
                }
            if (!known) {
                reps.push_back(cand);
                ++fresh;
            }
        }
        table.rows.push_back({r, reps.size(), fresh});
    }
    return table;
}

std::set<schreier::OrbitPoint> inverted_orbit(const std::vector<grig::Element>& word,
                                              const schreier::OrbitPoint& x) {
    // O(w g) = O(w).g  union  {x}
    std::set<schreier::OrbitPoint> orbit{x};
    for (const auto& g : word) {
        std::set<schreier::OrbitPoint> next;
        for (const auto& p : orbit) next.insert(schreier::act_point(g, p));
        next.insert(x);
        orbit = std::move(next);
    }
    return orbit;
}

namespace {

using PointSet = std::vector<std::string>;  // sorted prefixes

std::string set_key(const PointSet& s) {
    std::string k;
    for (const auto& p : s) {
        k += p;
        k += ',';
    }
    return k;
}

struct OrbitSearch {
    std::string base;
    std::uint64_t best = 0;
    std::unordered_map<std::string, unsigned> visited;  // state -> max remaining seen

    void run(const PointSet& state, unsigned rem) {
        if (state.size() + rem <= best) return;
        if (rem == 0) {
            best = std::max<std::uint64_t>(best, state.size());
            return;
        }
        auto [it, fresh] = visited.try_emplace(set_key(state), rem);
        if (!fresh) {
            if (it->second >= rem) return;
            it->second = rem;
        }
        for (char g : {'a', 'b', 'c', 'd'}) {
            grig::Element e = grig::Element::generator(g);
            PointSet next;
            next.reserve(state.size() + 1);
            for (const auto& p : state)
                next.push_back(grig::act_ray(e, p));
            next.push_back(base);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            run(next, rem - 1);
        }
    }
};

}  // namespace

InvertedOrbitStats inverted_orbit_growth_exact(unsigned n, const schreier::OrbitPoint& x,
                                               unsigned cap) {
    if (n > cap) throw std::invalid_argument("inverted_orbit_growth_exact: n exceeds the cap");
    OrbitSearch search;
    search.base = x.prefix();
    search.run({x.prefix()}, n);
    InvertedOrbitStats s;
    s.n = n;
    s.exact_max = search.best;
    return s;
}

InvertedOrbitStats inverted_orbit_growth_sampled(unsigned n, const schreier::OrbitPoint& x,
                                                 std::uint64_t trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uint64_t best = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<grig::Element> word;
        word.reserve(n);
        for (unsigned i = 0; i < n; ++i)
            word.push_back(grig::Element::generator("abcd"[rng() % 4]));
        best = std::max<std::uint64_t>(best, inverted_orbit(word, x).size());
    }
    InvertedOrbitStats s;
    s.n = n;
    s.sampled_max = best;
    s.samples = trials;
    return s;
}

Rational PiecewiseLinear::eval(const Rational& x) const {
    if (knots.empty() || x < knots.front().first || knots.back().first < x)
        throw std::out_of_range("piecewise linear: point outside the table span");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (x < knots[i].first || knots[i + 1].first < x) continue;
        const auto& [x0, y0] = knots[i];
        const auto& [x1, y1] = knots[i + 1];
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
    return knots.back().second;
}

bool PiecewiseLinear::concave() const {
    for (std::size_t i = 0; i + 2 < knots.size(); ++i) {
        Rational s1 = (knots[i + 1].second - knots[i].second) /
                      (knots[i + 1].first - knots[i].first);
        Rational s2 = (knots[i + 2].second - knots[i + 1].second) /
                      (knots[i + 2].first - knots[i + 1].first);
        if (s1 < s2) return false;
    }
    return true;
}

PiecewiseLinear concave_majorant(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& f) {
    if (f.empty()) throw std::invalid_argument("concave_majorant: empty table");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pts = f;
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            // pop while the middle point is below the chord (upper hull)
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            auto dx1 = static_cast<__int128>(b.first) - static_cast<__int128>(a.first);
            auto dy1 = static_cast<__int128>(b.second) - static_cast<__int128>(a.second);
            auto dx2 = static_cast<__int128>(p.first) - static_cast<__int128>(a.first);
            auto dy2 = static_cast<__int128>(p.second) - static_cast<__int128>(a.second);
            __int128 cross = dx1 * dy2 - dy1 * dx2;
            if (cross >= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    PiecewiseLinear pl;
    for (const auto& [x, y] : hull)
        pl.knots.emplace_back(Rational(static_cast<std::int64_t>(x)),
                              Rational(static_cast<std::int64_t>(y)));
    return pl;
}

namespace {

bool sat_mul(unsigned long long a, unsigned long long b, unsigned long long& out) {
    if (a != 0 && b > ~0ull / a) return false;
    out = a * b;
    return true;
}

}  // namespace

BoundValue wreath_growth_bound(const GrowthTable& vG, const PiecewiseLinear& vH_bar,
                               const Rational& C, const std::vector<std::uint64_t>& rho,
                               unsigned R) {
    if (R >= rho.size()) throw std::out_of_range("wreath_growth_bound: rho table too short");
    std::uint64_t vg = vG.ball(R);
    std::uint64_t k = rho[R];
    BoundValue out;
    if (k == 0) {
        out.value = vg;
        return out;
    }
    // binom(ceil(C R), k), exact
    Rational cr = C * Rational(R);
    std::uint64_t n = static_cast<std::uint64_t>(cr.floor());
    if (Rational(static_cast<std::int64_t>(n)) < cr) ++n;
    if (k > n)
        throw std::invalid_argument("wreath_growth_bound: rho exceeds the C-linear ball size");
    unsigned long long binom = 1;
    for (std::uint64_t t = 1; t <= k; ++t) {
        // multiply by (n - k + t) / t; keep exact by dividing the running
        // product, which is always an integer binomial
        if (!sat_mul(binom, n - k + t, binom)) {
            out.overflow = true;
            return out;
        }
        binom /= t;
    }
    Rational vh = vH_bar.eval(Rational(static_cast<std::int64_t>(R)) /
                              Rational(static_cast<std::int64_t>(k)));
    // bound = vg * binom * vh^k = vg * binom * p^k / q^k
    unsigned long long p = static_cast<unsigned long long>(vh.num() < 0 ? 0 : vh.num());
    unsigned long long q = static_cast<unsigned long long>(vh.den());
    unsigned long long num = 1, den = 1;
    if (!sat_mul(num, vg, num) || !sat_mul(num, binom, num)) {
        out.overflow = true;
        return out;
    }
    for (std::uint64_t t = 0; t < k; ++t) {
        if (!sat_mul(num, p, num)) {
            out.overflow = true;
            return out;
        }
        if (!sat_mul(den, q, den)) {
            out.overflow = true;
            return out;
        }
    }
    out.value = num / den;
    return out;
}

std::string to_csv(const GrowthTable& t) {
    std::ostringstream os;
    os << "# schema=1 columns=radius,ball,sphere generating_set=" << t.generating_set
       << (t.truncated ? " truncated=1" : "") << "\n";
    os << "radius,ball,sphere\n";
    for (const auto& row : t.rows) os << row.radius << ',' << row.ball << ',' << row.sphere << '\n';
    return os.str();
}

std::string stats_csv(const std::vector<InvertedOrbitStats>& stats) {
    std::ostringstream os;
    os << "# schema=1 columns=n,exact,sampled,samples\n";
    os << "n,exact,sampled,samples\n";
    for (const auto& s : stats) {
        os << s.n << ',';
        if (s.exact_max) os << *s.exact_max;
        os << ',';
        if (s.sampled_max) os << *s.sampled_max;
        os << ',' << s.samples << '\n';
    }
    return os.str();
}

}  // namespace grigrow::growth
