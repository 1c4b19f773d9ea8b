#include "grigrow/seqprop.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace grigrow::seqprop {

using grig::Element;
using schreier::OrbitPoint;

PointSequence PointSequence::designated(unsigned count) {
    PointSequence s;
    s.designated_tail = true;
    for (unsigned i = 0; i < count; ++i) {
        s.points.push_back(OrbitPoint::designated(i));
        s.indices.push_back(i);
    }
    return s;
}

PointSequence PointSequence::designated_subsequence(std::vector<unsigned> indices) {
    PointSequence s;
    s.designated_tail = true;
    s.indices = std::move(indices);
    for (unsigned i : s.indices) s.points.push_back(OrbitPoint::designated(i));
    return s;
}

PointSequence PointSequence::from_points(std::vector<OrbitPoint> pts) {
    PointSequence s;
    s.points = std::move(pts);
    return s;
}

SpreadingResult check_spreading(const PointSequence& seq, unsigned R, unsigned r_max_budget) {
    const auto& pts = seq.points;
    if (R == 0) return {SpreadingResult::Status::Found, 0};
    // a pair violates iff d < R, decidable with a BFS capped at R-1; a cap
    // below that leaves unresolved pairs, which is a budget failure rather
    // than a verdict
    unsigned cap = std::min(R - 1, r_max_budget);
    unsigned needed = 0;  // N must exceed min(i,j) of every violating pair
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            auto d = schreier::distance(pts[i], pts[j], cap);
            if (d) {
                if (*d < R) needed = std::max<unsigned>(needed, static_cast<unsigned>(i) + 1);
            } else if (cap < R - 1) {
                return {SpreadingResult::Status::Budget, 0};
            }
        }
    if (needed + 2 > pts.size()) return {SpreadingResult::Status::Fail, needed};
    return {SpreadingResult::Status::Found, needed};
}

std::optional<unsigned> check_locally_stabilizing(const PointSequence& seq, unsigned R) {
    const auto& pts = seq.points;
    if (pts.size() < 2) return std::nullopt;
    std::vector<std::string> forms;
    forms.reserve(pts.size());
    for (const auto& p : pts) forms.push_back(schreier::canonical_form(schreier::ball(p, R)));
    std::size_t n = pts.size() - 1;
    while (n > 0 && forms[n - 1] == forms.back()) --n;
    if (n + 2 > pts.size()) return std::nullopt;  // not even the last two agree
    return static_cast<unsigned>(n);
}

namespace {

// Violation scan shared by certify_witness.  Returns false and fills `bad`
// on the first forbidden cross coincidence.
bool scan_designated(const Element& g, unsigned i, unsigned j, unsigned upto,
                     const std::set<unsigned>* restrict_to,
                     std::pair<unsigned, unsigned>* bad) {
    for (unsigned k = 0; k <= upto; ++k) {
        if (restrict_to && !restrict_to->count(k)) continue;
        std::string img = grig::act_ray(g, std::string(k, '0'));
        if (img.find('1') != std::string::npos) continue;  // off the designated sequence
        unsigned l = static_cast<unsigned>(img.size());
        if (restrict_to && !restrict_to->count(l)) continue;
        if (l != k && !(k == i && l == j)) {
            if (bad) *bad = {k, l};
            return false;
        }
    }
    return true;
}

}  // namespace

bool certify_witness(const PointSequence& seq, unsigned i, unsigned j, const Element& g,
                     RectifiabilityWitness* out) {
    if (i == j) throw std::invalid_argument("certify_witness: i == j");
    if (seq.designated_tail) {
        unsigned xi = seq.indices.at(i), xj = seq.indices.at(j);
        if (!(schreier::act_point(g, OrbitPoint::designated(xi)) == OrbitPoint::designated(xj)))
            return false;
        grig::TailBehavior tb = grig::tail_class(g, grig::default_probe_depth(g));
        unsigned upto = std::max({tb.level, xi, xj});
        std::optional<std::set<unsigned>> restrict_set;
        const std::set<unsigned>* restrict_to = nullptr;
        // A full prefix 0..count-1 means the conceptual sequence is all of the
        // designated points; a proper subsequence restricts the quantifier.
        bool full = true;
        for (std::size_t t = 0; t < seq.indices.size(); ++t)
            full = full && seq.indices[t] == t;
        if (!full) {
            restrict_set.emplace(seq.indices.begin(), seq.indices.end());
            upto = std::max(upto, *std::max_element(seq.indices.begin(), seq.indices.end()));
            restrict_to = &*restrict_set;
        }
        if (!scan_designated(g, xi, xj, upto, restrict_to, nullptr)) return false;
        if (out) {
            out->i = i;
            out->j = j;
            out->g = g;
            out->verified_to = upto;
            out->tail = std::move(tb);
        }
        return true;
    }
    // finite list: exact pointwise check over the listed points only
    const auto& pts = seq.points;
    if (!(schreier::act_point(g, pts.at(i)) == pts.at(j))) return false;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        OrbitPoint img = schreier::act_point(g, pts[k]);
        for (std::size_t l = 0; l < pts.size(); ++l) {
            if (!(img == pts[l])) continue;
            if (l != k && !(k == i && l == j)) return false;
        }
    }
    if (out) {
        out->i = i;
        out->j = j;
        out->g = g;
        out->verified_to = static_cast<unsigned>(pts.size() - 1);
        out->tail = grig::tail_class(g, grig::default_probe_depth(g));
    }
    return true;
}

std::optional<Element> transport_word(const OrbitPoint& p, const OrbitPoint& q, unsigned r_max) {
    if (p == q) return Element();
    std::map<OrbitPoint, std::pair<OrbitPoint, char>> parent;
    std::deque<std::pair<OrbitPoint, unsigned>> queue{{p, 0}};
    parent.emplace(p, std::make_pair(p, ' '));
    while (!queue.empty()) {
        auto [u, d] = queue.front();
        queue.pop_front();
        if (d >= r_max) continue;
        for (char g : {'a', 'b', 'c', 'd'}) {
            OrbitPoint v = schreier::act_point(Element::generator(g), u);
            if (!parent.emplace(v, std::make_pair(u, g)).second) continue;
            if (v == q) {
                std::string letters;
                OrbitPoint cur = q;
                while (!(cur == p)) {
                    auto& [pr, letter] = parent.at(cur);
                    letters.push_back(letter);
                    cur = pr;
                }
                std::reverse(letters.begin(), letters.end());
                return Element::parse(letters);
            }
            queue.emplace_back(v, d + 1);
        }
    }
    return std::nullopt;
}

namespace {

// Depth-first enumeration of reduced words of exactly `len` in lex order
// ('a' < 'b' < 'c' < 'd'), carrying the image of a start point.  `visit`
// returns true to stop the whole search.
template <class Visit>
bool dfs_words(std::string& word, const OrbitPoint& img, unsigned len, const Visit& visit) {
    if (word.size() == len) return visit(word, img);
    for (char g : {'a', 'b', 'c', 'd'}) {
        if (!word.empty() && ((word.back() == 'a') == (g == 'a'))) continue;
        word.push_back(g);
        OrbitPoint next = schreier::act_point(Element::generator(g), img);
        if (dfs_words(word, next, len, visit)) return true;
        word.pop_back();
    }
    return false;
}

template <class Visit>
bool shortlex_scan(const OrbitPoint& start, unsigned max_len, const Visit& visit) {
    for (unsigned len = 1; len <= max_len; ++len) {
        std::string word;
        if (dfs_words(word, start, len, visit)) return true;
    }
    return false;
}

}  // namespace

bool certify_h(const Element& h, std::string_view u, unsigned inner_depth) {
    if (u.empty()) throw std::invalid_argument("certify_h: u must be nonempty");
    if (grig::act_prefix(h, u) != u) return false;  // path to u fixed
    for (std::size_t t = 0; t < u.size(); ++t) {
        std::string sibling(u.substr(0, t));
        sibling.push_back(u[t] == '0' ? '1' : '0');
        if (!grig::is_identity(grig::section_at(h, sibling))) return false;
    }
    Element s = grig::section_at(h, std::string(u));
    // no fixed vertex at relative depth inner_depth (monotone in depth)
    std::string v(inner_depth, '0');
    for (;;) {
        if (grig::act_prefix(s, v) == v) return false;
        // next binary string
        std::size_t t = inner_depth;
        while (t > 0 && v[t - 1] == '1') v[--t] = '0';
        if (t == 0) break;
        v[t - 1] = '1';
    }
    return true;
}

namespace {

// Up to `want` certified candidates in shortlex order.  For u = 0u' the
// candidates are sigma-lifts of the level-below candidates: h' fixing
// outside the u'-subtree yields sigma(h') whose section at 0 is h' and whose
// section at 1 is a stray element that must come out trivial; for u = 1u'
// the a-conjugate of the lift grows into the other subtree.  Certification
// re-checks the whole contract, so bad lifts are simply discarded.
std::vector<Element> find_h_candidates(std::string_view u, unsigned inner_depth,
                                       unsigned search_radius, std::size_t want) {
    std::vector<Element> out;
    if (u.size() > 1) {
        Element a = Element::generator('a');
        for (const Element& inner :
             find_h_candidates(u.substr(1), inner_depth, search_radius, 4 * want)) {
            Element lifted = grig::sigma_endo(inner);
            if (u[0] == '1') lifted = a * lifted * a;
            if (certify_h(lifted, u, inner_depth)) out.push_back(lifted);
            if (out.size() >= want) break;
        }
        return out;
    }
    std::string us(u);
    shortlex_scan(OrbitPoint(), search_radius, [&](const std::string& w, const OrbitPoint&) {
        Element h = Element::parse(w);
        if (!certify_h(h, us, inner_depth)) return false;
        out.push_back(h);
        return out.size() >= want;
    });
    return out;
}

}  // namespace

std::optional<Element> find_h(std::string_view u, unsigned inner_depth, unsigned search_radius) {
    if (u.empty()) throw std::invalid_argument("find_h: u must be nonempty");
    for (char c : u)
        if (c != '0' && c != '1') throw std::invalid_argument("find_h: u must be binary");
    auto cands = find_h_candidates(u, inner_depth, search_radius, 1);
    if (cands.empty()) return std::nullopt;
    return cands.front();
}

std::optional<RectifiabilityWitness> check_rectifiable_pair(const PointSequence& seq, unsigned i,
                                                            unsigned j, unsigned search_radius) {
    if (i == j) throw std::invalid_argument("check_rectifiable_pair: i == j");
    if (i >= seq.points.size() || j >= seq.points.size())
        throw std::invalid_argument("check_rectifiable_pair: index out of range");
    const OrbitPoint& from = seq.points[i];
    const OrbitPoint& to = seq.points[j];
    RectifiabilityWitness w;
    bool ok = shortlex_scan(from, search_radius, [&](const std::string& word, const OrbitPoint& img) {
        if (!(img == to)) return false;
        return certify_witness(seq, i, j, Element::parse(word), &w);
    });
    if (ok) return w;

    // constructive fallback: transport along the Schreier graph, then destroy
    // spurious coincidences by h_u multiplications.
    auto path = transport_word(from, to, 4096);
    if (!path) return std::nullopt;
    Element g = *path;
    for (unsigned round = 0; round < 24; ++round) {
        if (certify_witness(seq, i, j, g, &w)) return w;
        grig::TailBehavior tb = grig::tail_class(g, grig::default_probe_depth(g));
        unsigned xi = seq.designated_tail ? seq.indices[i] : i;
        unsigned xj = seq.designated_tail ? seq.indices[j] : j;
        if (tb.kind == grig::TailKind::FixesTail) {
            unsigned m = std::max({tb.level, xi, xj}) + 1;
            auto h = find_h(std::string(m, '0'), 2, 20);
            if (!h) return std::nullopt;
            g = g * *h;
            continue;
        }
        std::pair<unsigned, unsigned> bad{0, 0};
        unsigned upto = std::max({tb.level, xi, xj});
        if (scan_designated(g, xi, xj, upto, nullptr, &bad)) return std::nullopt;  // unexpected
        std::string u(bad.second, '0');
        u.push_back('1');
        auto h = find_h(u, 2, 20);
        if (!h) return std::nullopt;
        g = g * *h;
    }
    return std::nullopt;
}

bool is_parallelogram_free(const OrbitPoint& z, const std::vector<Element>& gs) {
    const std::size_t n = gs.size();
    std::vector<Element> inv(n);
    for (std::size_t t = 0; t < n; ++t) inv[t] = gs[t].inverse();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            OrbitPoint zij = schreier::act_point(inv[i] * gs[j], z);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                for (std::size_t l = 0; l < n; ++l) {
                    if (l == k || l == i) continue;
                    if (schreier::act_point(inv[k] * gs[l], zij) == z) return false;
                }
            }
        }
    return true;
}

namespace {
char ray_letter(const OrbitPoint& p, std::size_t t) {
    return t < p.prefix().size() ? p.prefix()[t] : '1';
}
}  // namespace

std::optional<std::vector<Element>> build_pf_sequence(const OrbitPoint& z, unsigned count,
                                                      unsigned search_radius) {
    std::vector<Element> gs;
    for (unsigned round = 0; round < count; ++round) {
        // X^3 = {z g_{j1}...g_{js} : s <= 3} \ {z}
        std::set<OrbitPoint> frontier{z}, x3;
        for (int s = 0; s < 3; ++s) {
            std::set<OrbitPoint> next;
            for (const auto& p : frontier)
                for (const auto& g : gs) next.insert(schreier::act_point(g, p));
            x3.insert(next.begin(), next.end());
            frontier = std::move(next);
        }
        x3.erase(z);
        // shortlex search first; fixators of large X^3 sets lie beyond any
        // feasible radius, so fall back to an h_u whose subtree separates z
        // from X^3: it fixes X^3 pointwise and moves z by construction.
        Element found;
        bool ok = shortlex_scan(z, std::min(search_radius, 12u),
                                [&](const std::string& w, const OrbitPoint& img) {
                                    if (img == z) return false;  // must move z
                                    Element h = Element::parse(w);
                                    for (const auto& p : x3)
                                        if (!(schreier::act_point(h, p) == p)) return false;
                                    found = h;
                                    return true;
                                });
        if (!ok) {
            std::string u;
            for (std::size_t k = 1;; ++k) {
                u.push_back(ray_letter(z, k - 1));
                bool separated = true;
                for (const auto& p : x3) {
                    bool inside = true;
                    for (std::size_t t = 0; t < k && inside; ++t)
                        inside = ray_letter(p, t) == u[t];
                    if (inside) {
                        separated = false;
                        break;
                    }
                }
                if (separated) break;
                if (k > 256) return std::nullopt;
            }
            auto h = find_h(u, 2, std::max(search_radius, 18u));
            if (!h || !(schreier::act_point(*h, z) != z)) return std::nullopt;
            found = *h;
        }
        gs.push_back(found);
    }
    return gs;
}

bool check_z_powers_rectifiable(unsigned k_max) {
    for (unsigned i = 0; i < k_max; ++i)
        for (unsigned j = 0; j < k_max; ++j)
            for (unsigned k = 0; k < k_max; ++k)
                for (unsigned l = 0; l < k_max; ++l) {
                    long long lhs = (1ll << j) - (1ll << i);
                    long long rhs = (1ll << l) - (1ll << k);
                    if (lhs != rhs) continue;
                    if (i == k && j == l) continue;
                    if (i == j && k == l) continue;
                    return false;
                }
    return true;
}

std::string witness_json(const RectifiabilityWitness& w) {
    std::ostringstream os;
    os << "{\"schema_version\":1,\"i\":" << w.i << ",\"j\":" << w.j << ",\"word\":\""
       << w.g.word() << "\",\"tail_level\":" << w.tail.level << ",\"tail_kind\":\""
       << (w.tail.kind == grig::TailKind::FixesTail ? "fixes_tail" : "moves_off_sequence")
       << "\",\"exceptions_checked\":" << w.verified_to << "}";
    return os.str();
}

}  // namespace grigrow::seqprop
