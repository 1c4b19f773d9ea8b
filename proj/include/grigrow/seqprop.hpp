#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grigrow/grig.hpp"
#include "grigrow/schreier.hpp"

// Checkers and constructors for the four sequence properties (spreading,
// locally stabilising, rectifiable, parallelogram-free) on the ray orbit.

namespace grigrow::seqprop {

struct PointSequence {
    std::vector<schreier::OrbitPoint> points;
    // True when `points` is a prefix of the designated sequence x_i = 0^i 1^inf
    // (possibly along a subsequence of indices) -- then witness certificates
    // may use the tail classification to cover the whole infinite sequence.
    bool designated_tail = false;
    std::vector<unsigned> indices;  // designated indices, when designated_tail

    static PointSequence designated(unsigned count);
    static PointSequence designated_subsequence(std::vector<unsigned> indices);
    static PointSequence from_points(std::vector<schreier::OrbitPoint> pts);
};

struct SpreadingResult {
    enum class Status { Found, Fail, Budget };
    Status status = Status::Fail;
    unsigned n = 0;
};

// Smallest N such that d(x_i,x_j) >= R for all i != j >= N within the prefix;
// Fail when no pair certifies the bound, Budget when a distance query
// exhausted r_max_budget.
SpreadingResult check_spreading(const PointSequence& seq, unsigned R, unsigned r_max_budget);

// Smallest N such that the radius-R marked balls around all points i >= N
// coincide; nullopt when not even the last two agree.
std::optional<unsigned> check_locally_stabilizing(const PointSequence& seq, unsigned R);

// A certified transport element: x_i g = x_j and no other cross coincidence
// x_k g = x_l (k != l) among the sequence.  Fixed points are allowed.  For
// designated sequences the certificate is exact for the infinite sequence:
// cross pairs with k <= verified_to are checked pointwise and the tail
// classification covers all larger k.
struct RectifiabilityWitness {
    unsigned i = 0, j = 0;
    grig::Element g;
    unsigned verified_to = 0;
    grig::TailBehavior tail;
};

// Exact validity check of g as a witness for (i,j) over seq.
bool certify_witness(const PointSequence& seq, unsigned i, unsigned j, const grig::Element& g,
                     RectifiabilityWitness* out = nullptr);

// Shortlex-first search for a certified witness among reduced words of
// length <= search_radius; falls back to the constructive route (Schreier
// path transport followed by h_u fix-ups) when the search is exhausted.
std::optional<RectifiabilityWitness> check_rectifiable_pair(const PointSequence& seq, unsigned i,
                                                            unsigned j, unsigned search_radius);

// Word reading the edge labels of a geodesic from p to q (acts p |-> q).
std::optional<grig::Element> transport_word(const schreier::OrbitPoint& p,
                                            const schreier::OrbitPoint& q, unsigned r_max);

// An element whose fixed rays are exactly those not starting with u,
// certified at finite depth: it fixes the path to u and has trivial sections
// at all off-path siblings (exact), and acts freely on the vertices at
// relative depth inner_depth below u (which certifies it has no fixed ray
// inside the subtree).  Found by shortlex search for |u| = 1 and lifted
// through the sigma endomorphism for each leading '0' of u.
std::optional<grig::Element> find_h(std::string_view u, unsigned inner_depth,
                                    unsigned search_radius);
bool certify_h(const grig::Element& h, std::string_view u, unsigned inner_depth);

// Brute force over all quadruples (i,j,k,l), i!=j, j!=k, k!=l, l!=i:
// z g_i^-1 g_j g_k^-1 g_l != z.
bool is_parallelogram_free(const schreier::OrbitPoint& z, const std::vector<grig::Element>& gs);

// Iteratively picks g_i fixing X_i^3 = {z g_{j_1}...g_{j_s} : s<=3, j_t<i}\{z}
// pointwise and moving z, by shortlex search; the result is parallelogram-free
// at z by construction.
std::optional<std::vector<grig::Element>> build_pf_sequence(const schreier::OrbitPoint& z,
                                                            unsigned count,
                                                            unsigned search_radius);

// 2^j - 2^i = 2^l - 2^k has only the trivial solutions (i=k, j=l) or
// (i=j, k=l), checked for all exponents < k_max.
bool check_z_powers_rectifiable(unsigned k_max);

std::string witness_json(const RectifiabilityWitness& w);

}  // namespace grigrow::seqprop
