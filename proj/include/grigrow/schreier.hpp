#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grigrow/grig.hpp"

// The orbit X = 1^inf . G as a labeled Schreier graph: one edge labeled s
// from x to xs for each generator s in {a,b,c,d}.  Vertices are the
// eventually-1 rays, encoded canonically by the finite prefix before the
// all-ones tail.  The graph is a half-line whose endpoint is 1^inf (the only
// vertex fixed by b, c and d).

namespace grigrow::schreier {

class OrbitPoint {
public:
    OrbitPoint() = default;  // 1^inf
    // prefix.1^inf; trailing '1's are stripped to canonical form.
    static OrbitPoint from_prefix(std::string_view prefix);
    static OrbitPoint designated(unsigned i);  // x_i = 0^i 1^inf

    const std::string& prefix() const { return prefix_; }
    // x_i detection: returns i if this is 0^i 1^inf.
    std::optional<unsigned> designated_index() const;

    bool operator==(const OrbitPoint& o) const { return prefix_ == o.prefix_; }
    bool operator!=(const OrbitPoint& o) const { return prefix_ != o.prefix_; }
    bool operator<(const OrbitPoint& o) const { return prefix_ < o.prefix_; }

private:
    std::string prefix_;
};

OrbitPoint act_point(const grig::Element& x, const OrbitPoint& p);

// Exact path-metric distance if <= r_max, nullopt otherwise.  Bidirectional
// BFS over the four generator edges.
std::optional<unsigned> distance(const OrbitPoint& p, const OrbitPoint& q, unsigned r_max);

struct MarkedBall {
    OrbitPoint center;
    unsigned radius = 0;
    std::vector<OrbitPoint> vertices;    // ordered by (distance, prefix)
    std::vector<unsigned> dist;          // distance from center per vertex
    // adj[v][g]: index of the g-neighbor of vertex v inside the ball, or -1
    // if that edge leaves the ball; g indexes a,b,c,d.
    std::vector<std::array<int, 4>> adj;
};

MarkedBall ball(const OrbitPoint& center, unsigned radius);

// Rooted label-ordered BFS normal form; two balls are isomorphic as rooted
// edge-labeled graphs iff their forms coincide (out-edges are deterministic
// per label, so the traversal is canonical).
std::string canonical_form(const MarkedBall& b);

// Throws std::invalid_argument on radius mismatch.
bool balls_equal(const MarkedBall& b1, const MarkedBall& b2);

// Coordinate of p along the half-line, measured as BFS distance from the
// degree-1 endpoint (the vertex whose b,c,d edges are all loops).
struct Position {
    unsigned value;
    OrbitPoint endpoint;
};
std::optional<Position> position(const OrbitPoint& p, unsigned r_max);

// Prepends 0 to the ray; image of p under the doubling self-map of X.
OrbitPoint sigma_point(const OrbitPoint& p);

std::string to_dot(const MarkedBall& b);

// CSV table "i,j,d" of pairwise distances of x_0..x_max_i (header comment
// carries the schema version).
std::string distance_table_csv(unsigned max_i, unsigned r_max);

}  // namespace grigrow::schreier
