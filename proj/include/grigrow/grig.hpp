#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Exact arithmetic, word problem and boundary action for the first
// Grigorchuk group G = <a,b,c,d>.
//
// Elements are stored as reduced words over 'a','b','c','d'.  Reduced means:
// no two adjacent equal letters (all generators are involutions) and no two
// adjacent letters from {b,c,d} (any such pair merges, bc=cb=d etc.), so a
// reduced word strictly alternates between 'a' and {b,c,d}.  Reduced words
// are canonical for the free product C2 * (C2 x C2) but *not* for the group
// itself; group equality is decided by the contraction algorithm below.
//
// Wreath recursion (sections indexed by the original first letter of the
// ray, which is also flipped by the root permutation):
//   a = swap, b = (a,c), c = (a,d), d = (1,b).

namespace grigrow::grig {

bool is_letter(char c);

// Unique reduced form of a word over "abcd"; throws std::invalid_argument
// on other characters.  Idempotent.
std::string reduce(std::string_view letters);

class Element {
public:
    Element() = default;                       // identity
    static Element parse(std::string_view w);  // validates and reduces
    static Element generator(char c);

    const std::string& word() const { return word_; }
    std::size_t length() const { return word_.size(); }
    bool trivial_word() const { return word_.empty(); }  // syntactic only

    Element operator*(const Element& rhs) const;
    Element inverse() const;  // reversed word: every generator is an involution
    Element conj(const Element& by) const;  // by^-1 * this * by

    bool operator==(const Element& rhs) const;  // group equality (word problem)
    bool operator!=(const Element& rhs) const { return !(*this == rhs); }

private:
    explicit Element(std::string reduced) : word_(std::move(reduced)) {}
    std::string word_;
};

struct Sections {
    bool root_swap;
    Element left;   // section at subtree 0
    Element right;  // section at subtree 1
};

Sections sections(const Element& x);
Element section_at(const Element& x, std::string_view path);  // iterated sections
bool root_swap(const Element& x);

// True iff x acts trivially on every finite prefix.  Decided by recursion on
// sections, memoized on reduced words; terminates because sections of a
// length-n word have length <= ceil(n/2).
bool is_identity(const Element& x);

// Image of a finite binary string under the right action of x.
// act_prefix(x*y, w) == act_prefix(y, act_prefix(x, w)).
std::string act_prefix(const Element& x, std::string_view w);

// Image of the eventually-1 ray prefix.1^inf, returned as the canonical
// prefix of the image ray (canonical = does not end in '1').
std::string act_ray(const Element& x, std::string_view prefix);

// The substitution a->c, b->d^a, c->b^a, d->c^a, extended to words and
// reduced.  Group endomorphism; intertwines the boundary action with the
// prepend-0 self-map of the ray orbit.
Element sigma_endo(const Element& x);

// --- tail classification -------------------------------------------------
//
// Describes how x acts on the designated points x_m = 0^m 1^inf for all
// m > level.  Descend sections along the 0-path until the section lies in
// {1, d}; both fix every ray starting with '0', so for m > level the image
// of x_m is (0^level . x) 0^(m-level) 1^inf.  If x fixes the vertex 0^level
// that image is x_m itself (FixesTail); otherwise it is never of the form
// 0^k 1^inf (MovesOffSequence).  Exceptions list the cross pairs k -> l
// (k != l) with x_k . x = x_l for k <= level; fixed points are not listed.

enum class TailKind { FixesTail, MovesOffSequence };

struct TailBehavior {
    unsigned level = 0;
    TailKind kind = TailKind::FixesTail;
    std::vector<std::pair<unsigned, unsigned>> exceptions;
};

// Throws std::runtime_error if the 0-path sections do not reach {1,d} within
// probe_depth levels (never happens for probe_depth >= 2*length + 8).
TailBehavior tail_class(const Element& x, unsigned probe_depth);
unsigned default_probe_depth(const Element& x);

// --- canonical keys -------------------------------------------------------

// Depth at which any nontrivial element of word length <= len acts
// nontrivially on some vertex: ceil(log2(len)) + 3.
unsigned signature_depth_for_length(std::size_t len);

// Truncated portrait of the action down to `depth` levels: one root-swap bit
// per visited vertex, breadth-first.  Elements x, y of length <= L are equal
// iff their signatures at signature_depth_for_length(2L) agree.
std::string action_signature(const Element& x, unsigned depth);

// Shortlex-least reduced word equal to x, found by bounded enumeration of
// all reduced words of length <= |x|; nullopt once `budget` candidates were
// tried.  Intended for small elements only.
std::optional<Element> shortlex_canonical(const Element& x, std::size_t budget = 1u << 22);

// Memo cache used by is_identity (thread-local, LRU).  Initial capacity is
// 1<<20 entries or the value of the GRIGROW_CACHE environment variable.
void set_identity_cache_capacity(std::size_t entries);
std::size_t identity_cache_capacity();

}  // namespace grigrow::grig
