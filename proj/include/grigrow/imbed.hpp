#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "grigrow/rational.hpp"
#include "grigrow/stepfn.hpp"

// Exact realization of the derived-subgroup imbedding machinery for B = Q
// (which contains the B = Z instance): the finitely-many-values wreath
// products G0 = Q wrfv (Q/Z x Z/2) and G = G0 wrfv (Q/Z), the imbedding
// Phi0 : Q -> G0, its commutator witnesses, and the two-generator imbedding
// of balanced words over a finite group.
//
// Splitting data for B = Q: C = Z.1 with basis X = {1}, T = B/C = Q/Z with
// section sigma(t) = the representative in [0,1), theta(m) = -m, and
// F = Z/2 = {0,1} with the basis element imbedded as 1.

namespace grigrow::imbed {

// element of G0 = Q wrfv (Q/Z x Z/2): the function part is stored as its two
// F-slices, each an exact step function on Q/Z.
struct G0Element {
    StepFunction<Rational> phi_id;  // phi(. , 1)
    StepFunction<Rational> phi_x;   // phi(. , x)
    Rational t_shift;               // in [0,1)
    int f_shift = 0;                // 0 or 1

    bool operator==(const G0Element& o) const {
        return phi_id == o.phi_id && phi_x == o.phi_x && t_shift == o.t_shift &&
               f_shift == o.f_shift;
    }
    bool operator!=(const G0Element& o) const { return !(*this == o); }
};

G0Element g0_identity();
G0Element g0_mul(const G0Element& a, const G0Element& b);
G0Element g0_inv(const G0Element& a);
G0Element g0_pow(const G0Element& a, long long k);
// value of the function part at (t, f)
Rational g0_value(const G0Element& a, const Rational& t, int f);

// Phi0(b) = (phi, frac(b), 0) with phi(t,1) = b and phi(t,x) = -floor(t+b).
G0Element phi0(const Rational& b);

bool phi0_is_homomorphism(const Rational& b1, const Rational& b2);

// witness for Phi0(b) being a commutator when b lies in C = Z:
// Phi0(b) = [(1,1,x), g] with g carrying the constant b on the f=1 slice.
struct CWitness {
    G0Element u, g;
};
CWitness commutator_witness_C(const Rational& b_integer);  // throws unless b in Z
bool verify_commutator_witness_C(const Rational& b_integer);

// element of G = G0 wrfv (Q/Z)
struct GElement {
    StepFunction<G0Element> psi;
    Rational r_shift;

    bool operator==(const GElement& o) const { return psi == o.psi && r_shift == o.r_shift; }
    bool operator!=(const GElement& o) const { return !(*this == o); }
};

GElement g_identity();
GElement g_mul(const GElement& a, const GElement& b);
GElement g_inv(const GElement& a);
GElement g_commutator(const GElement& a, const GElement& b);

GElement Phi(const Rational& b);                      // constant Phi0(b), shift 0
GElement psi_n(const Rational& b, unsigned n);        // Phi0(b) on [0,1/n), 1 elsewhere

// witness for Phi(b) in [G,G]: with n such that n.b is an integer,
//   Phi(b) = [(1, 1/n), g] . Psi_n(n.b),  g(r) = Phi0(b)^floor(rn).
struct BWitness {
    unsigned n;
    GElement shift_elem;  // (1, 1/n)
    GElement g;
    GElement psi_term;    // Psi_n(n.b)
};
BWitness commutator_witness_B(const Rational& b);              // picks n = den(b)
bool verify_commutator_witness_B(const Rational& b, unsigned n);  // throws unless n.b in Z

// --- splitting data for supported base groups -------------------------------

struct BDescriptor {
    unsigned z_rank = 0;
    std::vector<unsigned> torsion;  // cyclic orders
    unsigned q_rank = 0;
};

struct SplitBasis {
    std::vector<std::string> c_generators;
    std::vector<std::string> x_basis;
    std::string torsion_quotient;
    std::string section;
};

SplitBasis split_basis(const BDescriptor& b);

// --- two-generator imbedding -------------------------------------------------

// W wr C for a cyclic group C = Z/order acting on itself.
template <class W>
struct CyclicWreath {
    std::vector<typename W::Elem> fn;  // index k = the point t^k
    unsigned shift = 0;
};

template <class W>
CyclicWreath<W> cw_identity(const W& base, unsigned order) {
    CyclicWreath<W> e;
    e.fn.assign(order, base.identity());
    return e;
}

template <class W>
CyclicWreath<W> cw_mul(const W& base, const CyclicWreath<W>& a, const CyclicWreath<W>& b) {
    unsigned n = static_cast<unsigned>(a.fn.size());
    CyclicWreath<W> r;
    r.fn.resize(n);
    for (unsigned c = 0; c < n; ++c) r.fn[c] = base.mul(a.fn[c], b.fn[(c + a.shift) % n]);
    r.shift = (a.shift + b.shift) % n;
    return r;
}

template <class W>
CyclicWreath<W> cw_inv(const W& base, const CyclicWreath<W>& a) {
    unsigned n = static_cast<unsigned>(a.fn.size());
    CyclicWreath<W> r;
    r.fn.resize(n);
    r.shift = (n - a.shift) % n;
    for (unsigned c = 0; c < n; ++c) r.fn[c] = base.inv(a.fn[(c + r.shift) % n]);
    return r;
}

struct TwoGenReport {
    bool supported_only_at_t = false;
    bool value_matches = false;
    unsigned cyclic_order = 0;
    bool ok() const { return supported_only_at_t && value_matches; }
};

// Substitutes s_i -> x^(t^(1-2^(i-1))) in a balanced word (zero exponent sum
// in each generator is required) and checks that the result is supported
// only at t with value w.  Throws std::invalid_argument on unbalanced words.
template <class W>
TwoGenReport two_gen_imbed(const W& base, const std::vector<typename W::Elem>& gens,
                           const std::vector<std::pair<unsigned, int>>& word) {
    const unsigned n = static_cast<unsigned>(gens.size());
    if (n == 0 || n > 16) throw std::invalid_argument("two_gen_imbed: need 1..16 generators");
    std::vector<long long> expsum(n, 0);
    for (const auto& [idx, sign] : word) {
        if (idx < 1 || idx > n || (sign != 1 && sign != -1))
            throw std::invalid_argument("two_gen_imbed: bad word entry");
        expsum[idx - 1] += sign;
    }
    for (long long s : expsum)
        if (s != 0) throw std::invalid_argument("two_gen_imbed: word is not balanced");

    const unsigned order = 1u << n;
    // x(t^(2^(i-1))) = s_i, all other values trivial
    CyclicWreath<W> x = cw_identity(base, order);
    for (unsigned i = 1; i <= n; ++i) x.fn[(1u << (i - 1)) % order] = gens[i - 1];
    auto shift_elem = [&](long long e) {
        CyclicWreath<W> t = cw_identity(base, order);
        t.shift = static_cast<unsigned>(((e % order) + order) % order);
        return t;
    };
    std::vector<CyclicWreath<W>> sbar, sbar_inv;
    for (unsigned i = 1; i <= n; ++i) {
        long long e = 1 - (1ll << (i - 1));
        auto te = shift_elem(e);
        auto conj = cw_mul(base, cw_mul(base, cw_inv(base, te), x), te);
        sbar.push_back(conj);
        sbar_inv.push_back(cw_inv(base, conj));
    }
    CyclicWreath<W> wbar = cw_identity(base, order);
    typename W::Elem wval = base.identity();
    for (const auto& [idx, sign] : word) {
        wbar = cw_mul(base, wbar, sign > 0 ? sbar[idx - 1] : sbar_inv[idx - 1]);
        auto g = gens[idx - 1];
        wval = base.mul(wval, sign > 0 ? g : base.inv(g));
    }
    TwoGenReport rep;
    rep.cyclic_order = order;
    rep.supported_only_at_t = wbar.shift == 0;
    for (unsigned c = 0; c < order; ++c)
        if (c != 1 && !base.eq(wbar.fn[c], base.identity())) rep.supported_only_at_t = false;
    rep.value_matches = base.eq(wbar.fn[1], wval);
    return rep;
}

// --- JSON dumps ---------------------------------------------------------------

std::string to_json(const G0Element& a);
std::string to_json(const GElement& a);

}  // namespace grigrow::imbed
