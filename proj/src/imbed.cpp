#include "grigrow/imbed.hpp"

#include <sstream>

namespace grigrow::imbed {

G0Element g0_identity() {
    G0Element e;
    e.phi_id = StepFunction<Rational>::constant(Rational(0));
    e.phi_x = StepFunction<Rational>::constant(Rational(0));
    e.t_shift = Rational(0);
    e.f_shift = 0;
    return e;
}

Rational g0_value(const G0Element& a, const Rational& t, int f) {
    return f == 0 ? a.phi_id.eval(t) : a.phi_x.eval(t);
}

// (phi, t1, f1)(psi, t2, f2) = (chi, t1+t2, f1+f2),
// chi(t,f) = phi(t,f) + psi(t+t1, f+f1)
G0Element g0_mul(const G0Element& a, const G0Element& b) {
    G0Element r;
    auto add = [](const Rational& x, const Rational& y) { return x + y; };
    const auto& b_for_id = a.f_shift == 0 ? b.phi_id : b.phi_x;
    const auto& b_for_x = a.f_shift == 0 ? b.phi_x : b.phi_id;
    r.phi_id = a.phi_id.combine(b_for_id.shifted(a.t_shift), add);
    r.phi_x = a.phi_x.combine(b_for_x.shifted(a.t_shift), add);
    r.t_shift = (a.t_shift + b.t_shift).mod1();
    r.f_shift = a.f_shift ^ b.f_shift;
    return r;
}

G0Element g0_inv(const G0Element& a) {
    // (phi,u)^-1 = (v -> phi(v u^-1)^-1, u^-1)
    G0Element r;
    Rational tinv = (-a.t_shift).mod1();
    auto neg = [](const Rational& x) { return -x; };
    const auto& from_id = a.f_shift == 0 ? a.phi_id : a.phi_x;
    const auto& from_x = a.f_shift == 0 ? a.phi_x : a.phi_id;
    r.phi_id = from_id.shifted(tinv).map(neg);
    r.phi_x = from_x.shifted(tinv).map(neg);
    r.t_shift = tinv;
    r.f_shift = a.f_shift;
    return r;
}

G0Element g0_pow(const G0Element& a, long long k) {
    G0Element base = k < 0 ? g0_inv(a) : a;
    unsigned long long m = k < 0 ? -static_cast<unsigned long long>(k) : k;
    G0Element r = g0_identity();
    for (unsigned long long t = 0; t < m; ++t) r = g0_mul(r, base);
    return r;
}

G0Element phi0(const Rational& b) {
    G0Element r;
    r.phi_id = StepFunction<Rational>::constant(b);
    Rational fl(b.floor());
    if (b.is_integer()) {
        r.phi_x = StepFunction<Rational>::constant(-fl);
    } else {
        // -floor(t+b): floor(b) on [0, 1-frac(b)), floor(b)+1 on [1-frac(b), 1)
        r.phi_x = StepFunction<Rational>::indicator(Rational(1) - b.frac(), Rational(1),
                                                    -(fl + Rational(1)), -fl);
    }
    r.t_shift = b.frac();
    r.f_shift = 0;
    return r;
}

bool phi0_is_homomorphism(const Rational& b1, const Rational& b2) {
    return g0_mul(phi0(b1), phi0(b2)) == phi0(b1 + b2);
}

CWitness commutator_witness_C(const Rational& b_integer) {
    if (!b_integer.is_integer())
        throw std::invalid_argument("commutator_witness_C: b must lie in C = Z");
    CWitness w;
    w.u = g0_identity();
    w.u.f_shift = 1;  // (1, 1, x)
    w.g = g0_identity();
    w.g.phi_id = StepFunction<Rational>::constant(b_integer);
    return w;
}

bool verify_commutator_witness_C(const Rational& b_integer) {
    CWitness w = commutator_witness_C(b_integer);
    G0Element comm = g0_mul(g0_mul(g0_inv(w.u), g0_inv(w.g)), g0_mul(w.u, w.g));
    return comm == phi0(b_integer);
}

GElement g_identity() {
    GElement e;
    e.psi = StepFunction<G0Element>::constant(g0_identity());
    e.r_shift = Rational(0);
    return e;
}

GElement g_mul(const GElement& a, const GElement& b) {
    GElement r;
    r.psi = a.psi.combine(b.psi.shifted(a.r_shift), g0_mul);
    r.r_shift = (a.r_shift + b.r_shift).mod1();
    return r;
}

GElement g_inv(const GElement& a) {
    GElement r;
    r.r_shift = (-a.r_shift).mod1();
    r.psi = a.psi.shifted(r.r_shift).map(g0_inv);
    return r;
}

GElement g_commutator(const GElement& a, const GElement& b) {
    return g_mul(g_mul(g_inv(a), g_inv(b)), g_mul(a, b));
}

GElement Phi(const Rational& b) {
    GElement r;
    r.psi = StepFunction<G0Element>::constant(phi0(b));
    r.r_shift = Rational(0);
    return r;
}

GElement psi_n(const Rational& b, unsigned n) {
    if (n == 0) throw std::invalid_argument("psi_n: n must be positive");
    GElement r;
    r.r_shift = Rational(0);
    if (n == 1) {
        r.psi = StepFunction<G0Element>::constant(phi0(b));
        return r;
    }
    r.psi = StepFunction<G0Element>::indicator(Rational(0), Rational(1, n), phi0(b),
                                               g0_identity());
    return r;
}

BWitness commutator_witness_B(const Rational& b) {
    unsigned n = static_cast<unsigned>(b.den());
    BWitness w;
    w.n = n;
    w.shift_elem = g_identity();
    w.shift_elem.r_shift = Rational(1, n).mod1();
    // g(r) = Phi0(b)^floor(rn): n pieces with cuts k/n
    std::vector<Rational> cuts;
    std::vector<G0Element> vals;
    G0Element h = phi0(b);
    for (unsigned k = 0; k < n; ++k) {
        cuts.push_back(Rational(k, n));
        vals.push_back(g0_pow(h, k));
    }
    w.g.psi = StepFunction<G0Element>::from_pieces(std::move(cuts), std::move(vals));
    w.g.r_shift = Rational(0);
    w.psi_term = psi_n(b * Rational(n), n);
    return w;
}

bool verify_commutator_witness_B(const Rational& b, unsigned n) {
    if (!(b * Rational(n)).is_integer())
        throw std::invalid_argument("verify_commutator_witness_B: n b must lie in C = Z");
    BWitness w = commutator_witness_B(b);
    if (w.n != n) {
        // allow any valid multiplier: rebuild with the requested n
        w.n = n;
        w.shift_elem.r_shift = Rational(1, n).mod1();
        std::vector<Rational> cuts;
        std::vector<G0Element> vals;
        G0Element h = phi0(b);
        for (unsigned k = 0; k < n; ++k) {
            cuts.push_back(Rational(k, n));
            vals.push_back(g0_pow(h, k));
        }
        if (n == 1) {
            cuts = {Rational(0)};
            vals = {g0_identity()};
        }
        w.g.psi = StepFunction<G0Element>::from_pieces(std::move(cuts), std::move(vals));
        w.psi_term = psi_n(b * Rational(n), n);
    }
    GElement lhs = g_mul(g_commutator(w.shift_elem, w.g), w.psi_term);
    return lhs == Phi(b);
}

SplitBasis split_basis(const BDescriptor& b) {
    SplitBasis s;
    for (unsigned i = 0; i < b.z_rank; ++i) s.c_generators.push_back("z" + std::to_string(i));
    for (unsigned i = 0; i < b.q_rank; ++i) s.c_generators.push_back("q" + std::to_string(i));
    s.x_basis = s.c_generators;  // abelian B: C is free abelian on these
    std::ostringstream t;
    bool first = true;
    for (unsigned i = 0; i < b.q_rank; ++i) {
        if (!first) t << " x ";
        t << "Q/Z";
        first = false;
    }
    for (unsigned m : b.torsion) {
        if (!first) t << " x ";
        t << "Z/" << m;
        first = false;
    }
    if (first) t << "0";
    s.torsion_quotient = t.str();
    s.section = b.q_rank > 0 ? "representative in [0,1) per Q factor" : "identity section";
    return s;
}

namespace {
void json_step_rational(std::ostringstream& os, const StepFunction<Rational>& f) {
    os << '[';
    for (std::size_t i = 0; i < f.cuts().size(); ++i) {
        if (i) os << ',';
        os << "{\"from\":\"" << f.cuts()[i].str() << "\",\"value\":\"" << f.values()[i].str()
           << "\"}";
    }
    os << ']';
}
}  // namespace

std::string to_json(const G0Element& a) {
    std::ostringstream os;
    os << "{\"phi_id\":";
    json_step_rational(os, a.phi_id);
    os << ",\"phi_x\":";
    json_step_rational(os, a.phi_x);
    os << ",\"t_shift\":\"" << a.t_shift.str() << "\",\"f_shift\":" << a.f_shift << "}";
    return os.str();
}

std::string to_json(const GElement& a) {
    std::ostringstream os;
    os << "{\"psi\":[";
    for (std::size_t i = 0; i < a.psi.cuts().size(); ++i) {
        if (i) os << ',';
        os << "{\"from\":\"" << a.psi.cuts()[i].str()
           << "\",\"value\":" << to_json(a.psi.values()[i]) << "}";
    }
    os << "],\"r_shift\":\"" << a.r_shift.str() << "\"}";
    return os.str();
}

}  // namespace grigrow::imbed
