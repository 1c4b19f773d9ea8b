#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <string>
#include <vector>

#include "grigrow/growth.hpp"
#include "grigrow/rational.hpp"
#include "grigrow/schreier.hpp"
#include "grigrow/seqprop.hpp"
#include "grigrow/wreath.hpp"

// The W-limit construction: a sparse function f with f(x_n(j)) = b_j along a
// schedule, the approximating groups W_i = <f_i, a,b,c,d>, exact equality in
// W = <f, a,b,c,d> via tail classification of the conjugating elements, the
// schedule chooser, Cayley-ball agreement between the W_i, and the
// commutator imbedding of the base group's derived subgroup.

namespace grigrow::wlimit {

struct Schedule {
    std::vector<unsigned> n;         // support indices, strictly increasing, n[0] is n(1)
    std::vector<unsigned> m;         // agreement radii, strictly increasing
    std::vector<Rational> epsilon;   // rationals > 1, nonincreasing
    std::vector<std::string> certificates;
    bool complete = true;            // false when a budget ran out
};

std::string schedule_json(const Schedule& s);

struct CannotCertify : std::runtime_error {
    explicit CannotCertify(const std::string& why) : std::runtime_error(why) {}
};

// The sparse function f: X -> B with f(x_n(j)) = b_j; truncation = i means
// f_i (supports only j <= i), no truncation means the full infinite f.
template <class B>
struct SparseF {
    std::vector<unsigned> n;                 // n(1), n(2), ...
    std::vector<typename B::Elem> values;    // b_1, b_2, ...
    std::optional<unsigned> truncation;      // number of live supports
    // certified claims about the infinite f hold for every schedule
    // extension whose further support indices exceed this bound
    unsigned future_min = 0;

    unsigned live() const {
        return truncation ? std::min<unsigned>(*truncation, values.size())
                          : static_cast<unsigned>(values.size());
    }
    // designated index -> value slot (0-based), if supported
    std::optional<std::size_t> slot_of(unsigned designated) const {
        for (std::size_t j = 0; j < live(); ++j)
            if (n.at(j) == designated) return j;
        return std::nullopt;
    }
};

template <class B>
SparseF<B> make_sparse(const Schedule& s, const std::vector<typename B::Elem>& values,
                       std::optional<unsigned> truncation,
                       std::optional<unsigned> future_min = std::nullopt) {
    if (s.n.size() < values.size()) throw std::invalid_argument("make_sparse: schedule too short");
    SparseF<B> f;
    f.n.assign(s.n.begin(), s.n.begin() + values.size());
    f.values = values;
    f.truncation = truncation;
    unsigned n_last = f.n.empty() ? 0 : f.n.back();
    f.future_min = std::max(future_min ? *future_min : n_last, n_last);
    return f;
}

// f_i as a finitely supported wreath element
template <class B>
wreath::WreathElement<B> make_fi(const B& base, const Schedule& s,
                                 const std::vector<typename B::Elem>& values, unsigned i) {
    if (i > values.size() || i > s.n.size())
        throw std::invalid_argument("make_fi: schedule or value list too short");
    wreath::WreathElement<B> f;
    for (unsigned j = 0; j < i; ++j)
        if (!base.eq(values[j], base.identity()))
            f.support.emplace_back(schreier::OrbitPoint::designated(s.n[j]), values[j]);
    wreath::prune_support(base, f);
    return f;
}

// generators of W_i: f_i together with the acting group's generators
template <class B>
std::vector<wreath::WreathElement<B>> make_Wi_generators(const B& base, const Schedule& s,
                                                         const std::vector<typename B::Elem>& values,
                                                         unsigned i) {
    std::vector<wreath::WreathElement<B>> gens{make_fi(base, s, values, i)};
    for (char g : {'a', 'b', 'c', 'd'}) gens.push_back(wreath::pure<B>(grig::Element::generator(g)));
    return gens;
}

// --- lazy elements of W --------------------------------------------------------

// product over slots of (f^{(1,h_k)})^{e_k}, followed by (1, g); the value of
// the function part at x is the ordered product of f(x h_k^-1)^{e_k}.
template <class B>
struct LazyW {
    std::vector<std::pair<grig::Element, int>> slots;
    grig::Element g;
};

template <class B>
LazyW<B> lw_identity() {
    return {};
}

template <class B>
LazyW<B> lw_f(int exponent) {
    LazyW<B> u;
    if (exponent != 0) u.slots.emplace_back(grig::Element(), exponent);
    return u;
}

template <class B>
LazyW<B> lw_pure(const grig::Element& g) {
    LazyW<B> u;
    u.g = g;
    return u;
}

template <class B>
void lw_merge_adjacent(LazyW<B>& u) {
    std::vector<std::pair<grig::Element, int>> out;
    for (auto& [h, e] : u.slots) {
        if (!out.empty() && out.back().first == h) {
            out.back().second += e;
            if (out.back().second == 0) out.pop_back();
        } else if (e != 0) {
            out.emplace_back(std::move(h), e);
        }
    }
    u.slots = std::move(out);
}

template <class B>
LazyW<B> lw_mul(const LazyW<B>& u, const LazyW<B>& v) {
    LazyW<B> r;
    r.slots = u.slots;
    grig::Element ginv = u.g.inverse();
    for (const auto& [h, e] : v.slots) r.slots.emplace_back(h * ginv, e);
    r.g = u.g * v.g;
    lw_merge_adjacent(r);
    return r;
}

template <class B>
LazyW<B> lw_inv(const LazyW<B>& u) {
    LazyW<B> r;
    r.g = u.g.inverse();
    for (auto it = u.slots.rbegin(); it != u.slots.rend(); ++it)
        r.slots.emplace_back(it->first * u.g, -it->second);
    lw_merge_adjacent(r);
    return r;
}

template <class B>
LazyW<B> lw_conj(const LazyW<B>& u, const LazyW<B>& by) {
    return lw_mul(lw_mul(lw_inv(by), u), by);
}

template <class B>
LazyW<B> lw_commutator(const LazyW<B>& u, const LazyW<B>& v) {
    return lw_mul(lw_mul(lw_inv(u), lw_inv(v)), lw_mul(u, v));
}

template <class B>
typename B::Elem base_pow(const B& base, const typename B::Elem& b, long long e) {
    typename B::Elem x = e < 0 ? base.inv(b) : b;
    unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : e;
    typename B::Elem acc = base.identity();
    for (unsigned long long t = 0; t < k; ++t) acc = base.mul(acc, x);
    return acc;
}

// value of the function part at p; throws CannotCertify when the value would
// depend on a support index beyond the provided schedule prefix.
template <class B>
typename B::Elem lazy_value(const B& base, const SparseF<B>& f, const LazyW<B>& u,
                            const schreier::OrbitPoint& p) {
    typename B::Elem acc = base.identity();
    for (const auto& [h, e] : u.slots) {
        schreier::OrbitPoint q = schreier::act_point(h.inverse(), p);
        auto idx = q.designated_index();
        if (!idx) continue;
        auto slot = f.slot_of(*idx);
        if (slot) {
            acc = base.mul(acc, base_pow(base, f.values[*slot], e));
        } else if (!f.truncation && !f.n.empty() && *idx > f.future_min) {
            // the point may or may not be a support of an extension
            throw CannotCertify("lazy value depends on a support beyond the declared bound");
        }
    }
    return acc;
}

namespace detail {

struct SlotTail {
    grig::TailBehavior tb;
    std::string moved_vertex;  // image of 0^level when the kind moves off
};

inline std::uint64_t common_order_or_throw(const std::vector<std::uint64_t>& orders) {
    for (std::size_t i = 1; i < orders.size(); ++i)
        if (orders[i] != orders[0])
            throw CannotCertify("values must share one order for the tail argument");
    return orders.empty() ? 1 : orders[0];
}

}  // namespace detail

// Exact triviality of u (optionally times a finite correction), decided by
// per-slot tail classification plus a finite pointwise window.  Throws
// CannotCertify when the schedule prefix is too short to carry the argument.
template <class B>
bool lazy_is_trivial(const B& base, const SparseF<B>& f, const LazyW<B>& u,
                     const wreath::WreathElement<B>* correction = nullptr) {
    if (!grig::is_identity(u.g)) return false;

    // truncated f: finite support, fully pointwise
    if (f.truncation) {
        std::vector<schreier::OrbitPoint> pts;
        for (unsigned j = 0; j < f.live(); ++j) {
            auto src = schreier::OrbitPoint::designated(f.n[j]);
            pts.push_back(src);
            for (const auto& [h, e] : u.slots) pts.push_back(schreier::act_point(h, src));
        }
        if (correction)
            for (const auto& [q, val] : correction->support) pts.push_back(q);
        for (const auto& p : pts) {
            auto val = lazy_value(base, f, u, p);
            if (correction) val = base.mul(val, base.inv(wreath::value_at(base, *correction, p)));
            if (!base.eq(val, base.identity())) return false;
        }
        return true;
    }

    // infinite f: tails must be certified.  With one common finite order the
    // tail sums may vanish modulo it; otherwise they must vanish exactly.
    std::optional<std::uint64_t> ord;
    {
        bool uniform = true;
        std::optional<std::uint64_t> first;
        for (const auto& v : f.values) {
            auto o = base.order(v);
            if (!o) {
                uniform = false;
                break;
            }
            if (!first)
                first = o;
            else
                uniform = uniform && *first == *o;
        }
        if (uniform) ord = first;
    }

    std::vector<detail::SlotTail> tails;
    unsigned max_level = 0;
    for (const auto& [h, e] : u.slots) {
        detail::SlotTail st;
        st.tb = grig::tail_class(h, grig::default_probe_depth(h));
        if (st.tb.kind == grig::TailKind::MovesOffSequence) {
            // image of x_m (m past the level) is v 0^(m-level) 1^inf, a
            // prefix of length exactly m; two slots hit the same image point
            // for the same source iff their padded vertices agree as rays
            st.moved_vertex = grig::act_prefix(h, std::string(st.tb.level, '0'));
            while (!st.moved_vertex.empty() && st.moved_vertex.back() == '0')
                st.moved_vertex.pop_back();
        }
        max_level = std::max(max_level, st.tb.level);
        for (const auto& [k, l] : st.tb.exceptions) max_level = std::max({max_level, k, l});
        tails.push_back(std::move(st));
    }
    if (correction)
        for (const auto& [q, val] : correction->support) {
            auto idx = q.designated_index();
            if (idx) max_level = std::max(max_level, *idx);
        }

    // finite window: all prefix sources, their slot images, and the
    // correction's support
    std::vector<schreier::OrbitPoint> pts;
    for (unsigned j = 0; j < f.live(); ++j) {
        auto src = schreier::OrbitPoint::designated(f.n[j]);
        pts.push_back(src);
        for (const auto& [h, e] : u.slots) pts.push_back(schreier::act_point(h, src));
    }
    if (correction)
        for (const auto& [q, val] : correction->support) pts.push_back(q);

    // any extension support lies past future_min, so its tail images (of
    // prefix length equal to the support index) can touch neither the window
    // points nor each other across distinct sources
    unsigned window_reach = max_level;
    for (const auto& p : pts)
        window_reach = std::max<unsigned>(window_reach, p.prefix().size());
    if (f.future_min < window_reach)
        throw CannotCertify("certification window exceeds the declared future support bound");

    // symbolic tail sums: beyond the window, fixed-tail slots all act at the
    // support point itself and each moved-vertex class acts alone at its
    // image point, so triviality is one exponent-sum condition per class
    long long fixes_sum = 0;
    std::vector<std::pair<std::string, long long>> move_sums;
    for (std::size_t k = 0; k < tails.size(); ++k) {
        if (tails[k].tb.kind == grig::TailKind::FixesTail) {
            fixes_sum += u.slots[k].second;
        } else {
            bool found = false;
            for (auto& [v, sum] : move_sums)
                if (v == tails[k].moved_vertex) {
                    sum += u.slots[k].second;
                    found = true;
                }
            if (!found) move_sums.emplace_back(tails[k].moved_vertex, u.slots[k].second);
        }
    }
    auto vanishes = [&](long long sum) {
        if (sum == 0) return true;
        return ord.has_value() && sum % static_cast<long long>(*ord) == 0;
    };
    if (!vanishes(fixes_sum)) return false;
    for (const auto& [v, sum] : move_sums)
        if (!vanishes(sum)) return false;

    for (const auto& p : pts) {
        auto val = lazy_value(base, f, u, p);
        if (correction) val = base.mul(val, base.inv(wreath::value_at(base, *correction, p)));
        if (!base.eq(val, base.identity())) return false;
    }
    return true;
}

template <class B>
bool lazy_eq(const B& base, const SparseF<B>& f, const LazyW<B>& u, const LazyW<B>& v) {
    return lazy_is_trivial(base, f, lw_mul(u, lw_inv(v)));
}

template <class B>
bool lazy_matches_finite(const B& base, const SparseF<B>& f, const LazyW<B>& u,
                         const wreath::WreathElement<B>& fin) {
    LazyW<B> w = lw_mul(u, lw_pure<B>(fin.g.inverse()));
    return lazy_is_trivial(base, f, w, &fin);
}

// evaluate a word over the W_i generator labels {f=0, a=1, b=2, c=3, d=4}
template <class B>
LazyW<B> lw_word(const std::vector<int>& word) {
    LazyW<B> u = lw_identity<B>();
    for (int label : word) {
        if (label == 0)
            u = lw_mul(u, lw_f<B>(1));
        else
            u = lw_mul(u, lw_pure<B>(grig::Element::generator("abcd"[label - 1])));
    }
    return u;
}

// --- schedule construction -------------------------------------------------------

struct ScheduleBudget {
    unsigned max_radius = 12;        // growth enumeration horizon per W_i
    std::size_t max_elements = 200000;
    unsigned stabilization_window = 3;  // how many later points are ball-checked
    unsigned threads = 1;
};

// Epsilon-driven schedule.  At stage i the agreement radius m(i) is the
// least radius with v_i(m) <= eps_i^m, and the support index n(i) must have
// line gap >= m(i) with its radius-m(i) marked ball stable along the later
// designated points.  The two feed each other (the growth of W_i depends on
// where the supports sit), so each stage iterates to a fixpoint.
template <class B>
Schedule choose_schedule(const B& base, const std::vector<typename B::Elem>& values,
                         std::vector<Rational> epsilon, unsigned i_max,
                         const ScheduleBudget& budget = {}) {
    if (epsilon.size() < i_max) throw std::invalid_argument("choose_schedule: epsilon too short");
    for (const auto& e : epsilon)
        if (!(Rational(1) < e)) throw std::invalid_argument("choose_schedule: epsilon must be > 1");
    for (std::size_t t = 1; t < epsilon.size(); ++t)
        if (epsilon[t - 1] < epsilon[t])
            throw std::invalid_argument("choose_schedule: epsilon must be nonincreasing");
    {
        std::vector<std::uint64_t> orders;
        for (const auto& v : values) {
            auto o = base.order(v);
            if (!o) throw std::invalid_argument("choose_schedule: values must have finite order");
            orders.push_back(*o);
        }
        detail::common_order_or_throw(orders);
    }
    Schedule s;
    s.epsilon = std::move(epsilon);

    auto eps_holds = [&](std::uint64_t ball, const Rational& eps, unsigned m) {
        unsigned __int128 lhs = ball, rhs = 1;
        for (unsigned t = 0; t < m; ++t) {
            if (rhs > (~static_cast<unsigned __int128>(0)) / eps.num() ||
                lhs > (~static_cast<unsigned __int128>(0)) / eps.den())
                throw std::overflow_error("choose_schedule: epsilon power overflow");
            rhs *= eps.num();
            lhs *= eps.den();
        }
        return lhs <= rhs;
    };
    auto admissible_index = [&](unsigned from, unsigned m) -> std::optional<unsigned> {
        for (unsigned cand = from;; ++cand) {
            if (cand > 64) return std::nullopt;
            auto pos_prev =
                cand == 0 ? std::optional<schreier::Position>(schreier::Position{0, {}})
                          : schreier::position(schreier::OrbitPoint::designated(cand - 1), 1u << 20);
            auto pos_cand = schreier::position(schreier::OrbitPoint::designated(cand), 1u << 20);
            if (!pos_prev || !pos_cand) continue;
            if (cand > 0 && pos_cand->value - pos_prev->value < m) continue;
            if (pos_cand->value < m) continue;  // the ball would reach the endpoint
            auto b0 = schreier::ball(schreier::OrbitPoint::designated(cand), m);
            bool stable = true;
            for (unsigned k = 1; k <= budget.stabilization_window && stable; ++k)
                stable = schreier::balls_equal(
                    b0, schreier::ball(schreier::OrbitPoint::designated(cand + k), m));
            if (stable) return cand;
        }
    };

    for (unsigned i = 1; i <= i_max; ++i) {
        unsigned n_i = s.n.empty() ? 0 : s.n.back() + 1;
        std::optional<unsigned> m_i;
        bool settled = false;
        for (unsigned round = 0; round < 16 && !settled; ++round) {
            std::vector<unsigned> n_trial(s.n);
            n_trial.push_back(n_i);
            Schedule trial;
            trial.n = n_trial;
            auto gens = make_Wi_generators(base, trial, values, i);
            growth::WreathGroupOracle<B> oracle{base, gens, budget.max_radius};
            auto table = growth::enumerate_balls(oracle, budget.max_radius, budget.max_elements,
                                                 budget.threads);
            m_i.reset();
            for (unsigned m = s.m.empty() ? 1 : s.m.back() + 1; m < table.rows.size(); ++m)
                if (eps_holds(table.ball(m), s.epsilon[i - 1], m)) {
                    m_i = m;
                    break;
                }
            if (!m_i) {
                s.complete = false;
                std::ostringstream diag;
                diag << "budget exhausted before v_" << i << "(m) <= eps^m (radius "
                     << budget.max_radius << (table.truncated ? ", truncated table" : "") << ")";
                s.certificates.push_back(diag.str());
                return s;
            }
            auto cand = admissible_index(n_i, *m_i);
            if (!cand) {
                s.complete = false;
                s.certificates.push_back("no admissible support index within the bound");
                return s;
            }
            settled = *cand == n_i;
            n_i = *cand;
        }
        if (!settled) {
            s.complete = false;
            s.certificates.push_back("support/radius fixpoint did not settle");
            return s;
        }
        s.n.push_back(n_i);
        s.m.push_back(*m_i);
        std::ostringstream cert;
        cert << "i=" << i << ": n(" << i << ")=" << n_i << ", m(" << i << ")=" << *m_i
             << ", v_" << i << "(m) <= " << s.epsilon[i - 1].str() << "^m exactly; gap and "
             << "radius-" << *m_i << " ball stability verified for the next "
             << budget.stabilization_window << " indices";
        s.certificates.push_back(cert.str());
    }
    return s;
}

// --- Cayley-ball agreement ---------------------------------------------------------

// canonical table of the radius-m ball of the marked group generated by the
// oracle's generators: per vertex and label, the target vertex id or 'x'
// when the edge leaves the ball
template <class O>
std::string cayley_ball_table(const O& oracle, unsigned m, std::size_t budget) {
    using Elem = typename O::Elem;
    std::vector<Elem> order{oracle.identity()};
    std::vector<unsigned> dist{0};
    std::unordered_map<std::string, std::size_t> index{{oracle.key(order[0]), 0}};
    const auto gens = oracle.generators();
    std::vector<std::vector<long long>> table;
    for (std::size_t head = 0; head < order.size(); ++head) {
        if (order.size() > budget) throw std::runtime_error("cayley_ball_table: budget exhausted");
        table.emplace_back();
        for (const auto& g : gens) {
            Elem t = oracle.mul(order[head], g);
            std::string key = oracle.key(t);
            auto it = index.find(key);
            if (it != index.end()) {
                table.back().push_back(static_cast<long long>(it->second));
                continue;
            }
            if (dist[head] == m) {
                table.back().push_back(-1);  // leaves the ball
                continue;
            }
            index.emplace(std::move(key), order.size());
            table.back().push_back(static_cast<long long>(order.size()));
            order.push_back(std::move(t));
            dist.push_back(dist[head] + 1);
        }
    }
    std::ostringstream os;
    for (const auto& row : table) {
        for (long long v : row) os << v << ',';
        os << '|';
    }
    return os.str();
}

// Prop-6.2 style agreement: the radius-m marked balls of W_i and W_{i+k}
// coincide under the identification f_i <-> f_{i+k}.
template <class B>
bool ball_agreement(const B& base, const Schedule& s, const std::vector<typename B::Elem>& values,
                    unsigned i, unsigned m, unsigned k = 1,
                    std::size_t budget = 500000) {
    growth::WreathGroupOracle<B> a{base, make_Wi_generators(base, s, values, i), m};
    growth::WreathGroupOracle<B> b{base, make_Wi_generators(base, s, values, i + k), m};
    return cayley_ball_table(a, m, budget) == cayley_ball_table(b, m, budget);
}

// --- commutator imbedding -----------------------------------------------------------

// [f^{g_i}, f^{g_j}] equals iota([b_i, b_j]) exactly, given witnesses
// transporting x_n(i), x_n(j) to x_0.  Witness validity (including the joint
// no-coincidence requirement on g_i g_j^-1) is certified first; invalid
// witnesses are rejected with std::invalid_argument.
template <class B>
bool commutator_in_W(const B& base, const Schedule& s, const std::vector<typename B::Elem>& values,
                     unsigned i, unsigned j, const grig::Element& gi, const grig::Element& gj) {
    if (i < 1 || j < 1 || i > values.size() || j > values.size())
        throw std::invalid_argument("commutator_in_W: index out of range");
    auto x0 = schreier::OrbitPoint();
    if (!(schreier::act_point(gi, schreier::OrbitPoint::designated(s.n.at(i - 1))) == x0) ||
        !(schreier::act_point(gj, schreier::OrbitPoint::designated(s.n.at(j - 1))) == x0))
        throw std::invalid_argument("commutator_in_W: witness does not transport to x_0");
    if (i != j) {
        auto designated = seqprop::PointSequence::designated(
            std::max({s.n.at(i - 1), s.n.at(j - 1), 1u}) + 1);
        grig::Element joint = gi * gj.inverse();
        if (!seqprop::certify_witness(designated, s.n.at(i - 1), s.n.at(j - 1), joint))
            throw std::invalid_argument("commutator_in_W: joint witness condition fails");
    }

    SparseF<B> f = make_sparse<B>(s, values, std::nullopt,
                                  (s.n.empty() ? 0u : s.n.back()) + 64u);
    LazyW<B> u = lw_conj(lw_f<B>(1), lw_pure<B>(gi));
    LazyW<B> v = lw_conj(lw_f<B>(1), lw_pure<B>(gj));
    LazyW<B> comm = lw_commutator(u, v);
    typename B::Elem expected = base.mul(
        base.mul(base.inv(values[i - 1]), base.inv(values[j - 1])),
        base.mul(values[i - 1], values[j - 1]));
    return lazy_matches_finite(base, f, comm, wreath::iota(base, expected));
}

// Cor-6.3 order equalization: replace B by B x Z/lcm and b_i by (b_i, 1).
template <class B>
struct Equalized {
    wreath::ProductGroup<B, wreath::ZModGroup> group;
    std::vector<typename wreath::ProductGroup<B, wreath::ZModGroup>::Elem> values;
};

template <class B>
Equalized<B> order_equalize(const B& base, const std::vector<typename B::Elem>& values) {
    std::uint64_t l = 1;
    for (const auto& v : values) {
        auto o = base.order(v);
        if (!o) throw std::invalid_argument("order_equalize: infinite-order value");
        l = std::lcm(l, *o);
    }
    Equalized<B> out{wreath::ProductGroup<B, wreath::ZModGroup>(base, wreath::ZModGroup(
                         static_cast<unsigned>(l))),
                     {}};
    for (const auto& v : values) out.values.push_back({v, 1u % static_cast<unsigned>(l)});
    return out;
}

}  // namespace grigrow::wlimit
