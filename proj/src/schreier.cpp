#include "grigrow/schreier.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace grigrow::schreier {

namespace {
constexpr char kGen[4] = {'a', 'b', 'c', 'd'};

OrbitPoint act_letter(char g, const OrbitPoint& p) {
    return OrbitPoint::from_prefix(grig::act_ray(grig::Element::generator(g), p.prefix()));
}
}  // namespace

OrbitPoint OrbitPoint::from_prefix(std::string_view prefix) {
    for (char c : prefix)
        if (c != '0' && c != '1') throw std::invalid_argument("orbit point prefix must be binary");
    OrbitPoint p;
    p.prefix_.assign(prefix);
    while (!p.prefix_.empty() && p.prefix_.back() == '1') p.prefix_.pop_back();
    return p;
}

OrbitPoint OrbitPoint::designated(unsigned i) {
    OrbitPoint p;
    p.prefix_.assign(i, '0');
    return p;
}

std::optional<unsigned> OrbitPoint::designated_index() const {
    if (prefix_.find('1') != std::string::npos) return std::nullopt;
    return static_cast<unsigned>(prefix_.size());
}

OrbitPoint act_point(const grig::Element& x, const OrbitPoint& p) {
    return OrbitPoint::from_prefix(grig::act_ray(x, p.prefix()));
}

std::optional<unsigned> distance(const OrbitPoint& p, const OrbitPoint& q, unsigned r_max) {
    if (p == q) return 0u;
    // bidirectional BFS, expanding the smaller frontier; a candidate meeting
    // is only final once the frontier depths cannot be beaten
    std::map<OrbitPoint, unsigned> side_p{{p, 0}}, side_q{{q, 0}};
    std::deque<OrbitPoint> fp{p}, fq{q};
    unsigned dp = 0, dq = 0;
    std::optional<unsigned> best;
    while (dp + dq < r_max && (!fp.empty() || !fq.empty())) {
        if (best && *best <= dp + dq + 1) break;
        bool expand_p = !fp.empty() && (fq.empty() || fp.size() <= fq.size());
        auto& frontier = expand_p ? fp : fq;
        auto& mine = expand_p ? side_p : side_q;
        auto& theirs = expand_p ? side_q : side_p;
        unsigned& depth = expand_p ? dp : dq;
        ++depth;
        std::deque<OrbitPoint> next;
        for (const OrbitPoint& u : frontier) {
            for (char g : kGen) {
                OrbitPoint v = act_letter(g, u);
                if (!mine.emplace(v, depth).second) continue;
                auto hit = theirs.find(v);
                if (hit != theirs.end()) {
                    unsigned d = depth + hit->second;
                    if (!best || d < *best) best = d;
                }
                next.push_back(v);
            }
        }
        frontier = std::move(next);
    }
    if (best && *best <= r_max) return best;
    return std::nullopt;
}

MarkedBall ball(const OrbitPoint& center, unsigned radius) {
    std::map<OrbitPoint, unsigned> dist{{center, 0}};
    std::deque<OrbitPoint> frontier{center};
    unsigned d = 0;
    while (d < radius && !frontier.empty()) {
        ++d;
        std::deque<OrbitPoint> next;
        for (const OrbitPoint& u : frontier)
            for (char g : kGen) {
                OrbitPoint v = act_letter(g, u);
                if (dist.emplace(v, d).second) next.push_back(v);
            }
        frontier = std::move(next);
    }
    MarkedBall b;
    b.center = center;
    b.radius = radius;
    std::vector<std::pair<unsigned, OrbitPoint>> order;
    order.reserve(dist.size());
    for (const auto& [p, dd] : dist) order.emplace_back(dd, p);
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : x.second.prefix() < y.second.prefix();
    });
    std::map<OrbitPoint, int> index;
    for (const auto& [dd, p] : order) {
        index.emplace(p, static_cast<int>(b.vertices.size()));
        b.vertices.push_back(p);
        b.dist.push_back(dd);
    }
    b.adj.resize(b.vertices.size());
    for (std::size_t v = 0; v < b.vertices.size(); ++v)
        for (int gi = 0; gi < 4; ++gi) {
            OrbitPoint img = act_letter(kGen[gi], b.vertices[v]);
            auto it = index.find(img);
            b.adj[v][gi] = it == index.end() ? -1 : it->second;
        }
    return b;
}

std::string canonical_form(const MarkedBall& b) {
    // BFS from the center following edges in label order; vertices renumbered
    // in discovery order; serialize per-vertex neighbor slots.
    std::vector<int> number(b.vertices.size(), -1);
    std::vector<int> order;
    int root = 0;
    for (std::size_t v = 0; v < b.vertices.size(); ++v)
        if (b.vertices[v] == b.center) root = static_cast<int>(v);
    number[root] = 0;
    order.push_back(root);
    std::ostringstream os;
    for (std::size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        for (int gi = 0; gi < 4; ++gi) {
            int w = b.adj[v][gi];
            if (w < 0) {
                os << 'x';
                continue;
            }
            if (number[w] < 0) {
                number[w] = static_cast<int>(order.size());
                order.push_back(w);
            }
            os << number[w] << ';';
        }
        os << '|';
    }
    return os.str();
}

bool balls_equal(const MarkedBall& b1, const MarkedBall& b2) {
    if (b1.radius != b2.radius) throw std::invalid_argument("balls_equal: radius mismatch");
    return canonical_form(b1) == canonical_form(b2);
}

std::optional<Position> position(const OrbitPoint& p, unsigned r_max) {
    // endpoint = vertex whose b,c,d edges are all loops
    auto is_endpoint = [](const OrbitPoint& u) {
        for (char g : {'b', 'c', 'd'})
            if (!(act_letter(g, u) == u)) return false;
        return true;
    };
    std::map<OrbitPoint, unsigned> dist{{p, 0}};
    std::deque<OrbitPoint> queue{p};
    while (!queue.empty()) {
        OrbitPoint u = queue.front();
        queue.pop_front();
        if (is_endpoint(u)) return Position{dist[u], u};
        if (dist[u] >= r_max) continue;
        for (char g : kGen) {
            OrbitPoint v = act_letter(g, u);
            if (dist.emplace(v, dist[u] + 1).second) queue.push_back(v);
        }
    }
    return std::nullopt;
}

OrbitPoint sigma_point(const OrbitPoint& p) {
    return OrbitPoint::from_prefix("0" + p.prefix());
}

std::string to_dot(const MarkedBall& b) {
    std::ostringstream os;
    os << "graph schreier_ball {\n";
    os << "  // center " << (b.center.prefix().empty() ? "e" : b.center.prefix())
       << " radius " << b.radius << "\n";
    for (std::size_t v = 0; v < b.vertices.size(); ++v) {
        const std::string& pr = b.vertices[v].prefix();
        os << "  v" << v << " [label=\"" << (pr.empty() ? "1^inf" : pr + "1^inf") << "\"";
        if (b.vertices[v] == b.center) os << " shape=doublecircle";
        os << "];\n";
    }
    for (std::size_t v = 0; v < b.vertices.size(); ++v)
        for (int gi = 0; gi < 4; ++gi) {
            int w = b.adj[v][gi];
            if (w < 0) continue;
            if (static_cast<std::size_t>(w) < v) continue;  // one record per edge
            if (static_cast<std::size_t>(w) == v)
                os << "  v" << v << " -- v" << v << " [label=\"" << kGen[gi] << "\"];\n";
            else
                os << "  v" << v << " -- v" << w << " [label=\"" << kGen[gi] << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

std::string distance_table_csv(unsigned max_i, unsigned r_max) {
    std::ostringstream os;
    os << "# schema=1 columns=i,j,d\n";
    os << "i,j,d\n";
    for (unsigned i = 0; i <= max_i; ++i)
        for (unsigned j = i + 1; j <= max_i; ++j) {
            auto d = distance(OrbitPoint::designated(i), OrbitPoint::designated(j), r_max);
            os << i << ',' << j << ',';
            if (d)
                os << *d;
            else
                os << "unreached";
            os << '\n';
        }
    return os.str();
}

}  // namespace grigrow::schreier
