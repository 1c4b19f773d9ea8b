#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grigrow/wlimit.hpp"

using namespace grigrow;
using grig::Element;
using schreier::OrbitPoint;
using wreath::ZModGroup;

namespace {

wlimit::Schedule simple_schedule(std::vector<unsigned> n) {
    wlimit::Schedule s;
    s.n = std::move(n);
    return s;
}

}  // namespace

TEST_CASE("make_fi and W_i generators") {
    ZModGroup z2(2);
    auto s = simple_schedule({0, 4, 6});
    std::vector<ZModGroup::Elem> vals{1u, 1u, 1u};
    auto f0 = wlimit::make_fi(z2, s, vals, 0);
    CHECK(f0.support.empty());
    auto f1 = wlimit::make_fi(z2, s, vals, 1);
    REQUIRE(f1.support.size() == 1);
    CHECK(f1.support[0].first == OrbitPoint());
    auto f2 = wlimit::make_fi(z2, s, vals, 2);
    CHECK(f2.support.size() == 2);
    CHECK(wlimit::make_Wi_generators(z2, s, vals, 1).size() == 5);
    CHECK_THROWS_AS(wlimit::make_fi(z2, s, vals, 7), std::invalid_argument);
}

TEST_CASE("lazy arithmetic: word evaluation matches the finite wreath product") {
    ZModGroup z2(2);
    auto s = simple_schedule({0, 4});
    std::vector<ZModGroup::Elem> vals{1u, 1u};
    auto f_fin = wlimit::make_fi(z2, s, vals, 2);
    auto gens_fin = wlimit::make_Wi_generators(z2, s, vals, 2);
    auto f_truncated = wlimit::make_sparse<ZModGroup>(s, vals, 2);

    std::mt19937_64 rng(61);
    for (int t = 0; t < 100; ++t) {
        std::vector<int> word;
        unsigned len = rng() % 10;
        for (unsigned k = 0; k < len; ++k) word.push_back(static_cast<int>(rng() % 5));
        // finite route
        auto fin = wreath::w_identity(z2);
        for (int label : word) fin = wreath::w_mul(z2, fin, gens_fin[label]);
        // lazy route against the truncation
        auto lazy = wlimit::lw_word<ZModGroup>(word);
        CHECK(wlimit::lazy_matches_finite(z2, f_truncated, lazy, fin));
    }
}

TEST_CASE("lazy_eq distinguishes translates of the infinite f") {
    ZModGroup z2(2);
    auto s = simple_schedule({0, 4, 6});
    std::vector<ZModGroup::Elem> vals{1u, 1u, 1u};
    auto f = wlimit::make_sparse<ZModGroup>(s, vals, std::nullopt, 40);

    auto fl = wlimit::lw_f<ZModGroup>(1);
    CHECK(wlimit::lazy_eq(z2, f, fl, fl));
    CHECK(wlimit::lazy_is_trivial(z2, f, wlimit::lw_mul(fl, wlimit::lw_inv(fl))));
    CHECK(wlimit::lazy_is_trivial(z2, f, wlimit::lw_mul(fl, fl)));  // order-2 values

    // f conjugated by the witness moving x_0 to x_1 differs from f
    auto w01 = Element::parse("badaba");
    auto conj = wlimit::lw_conj(fl, wlimit::lw_pure<ZModGroup>(w01));
    CHECK_FALSE(wlimit::lazy_eq(z2, f, conj, fl));
    // but conjugation by an element fixing every designated point is invisible
    auto fixer = Element::parse("aba");  // moves x_0? no: aba fixes x_1; check via certificates
    // use d, which fixes the whole 0-subtree and x_0
    auto conj_d = wlimit::lw_conj(fl, wlimit::lw_pure<ZModGroup>(Element::generator('d')));
    CHECK(wlimit::lazy_eq(z2, f, conj_d, fl));
    (void)fixer;
}

TEST_CASE("lazy_eq is an equivalence relation on sampled words") {
    ZModGroup z2(2);
    auto s = simple_schedule({0, 4, 6});
    std::vector<ZModGroup::Elem> vals{1u, 1u, 1u};
    auto f = wlimit::make_sparse<ZModGroup>(s, vals, std::nullopt, 40);
    std::mt19937_64 rng(62);
    std::vector<wlimit::LazyW<ZModGroup>> elems;
    for (int t = 0; t < 8; ++t) {
        std::vector<int> word;
        for (unsigned k = 0; k < 6; ++k) word.push_back(static_cast<int>(rng() % 5));
        elems.push_back(wlimit::lw_word<ZModGroup>(word));
    }
    for (const auto& u : elems) CHECK(wlimit::lazy_eq(z2, f, u, u));
    for (const auto& u : elems)
        for (const auto& v : elems) {
            bool uv = wlimit::lazy_eq(z2, f, u, v);
            CHECK(uv == wlimit::lazy_eq(z2, f, v, u));
            if (!uv) continue;
            for (const auto& w : elems)
                if (wlimit::lazy_eq(z2, f, v, w)) CHECK(wlimit::lazy_eq(z2, f, u, w));
        }
}

TEST_CASE("lazy certification fails loudly when the window is undeclarable") {
    ZModGroup z2(2);
    auto s = simple_schedule({0, 1});
    std::vector<ZModGroup::Elem> vals{1u, 1u};
    // future supports may appear right past n_last = 1, but the witness tail
    // touches much deeper indices
    auto f = wlimit::make_sparse<ZModGroup>(s, vals, std::nullopt);
    auto conj = wlimit::lw_conj(wlimit::lw_f<ZModGroup>(1),
                                wlimit::lw_pure<ZModGroup>(Element::parse("badaba")));
    CHECK_THROWS_AS(static_cast<void>(wlimit::lazy_eq(z2, f, conj, wlimit::lw_f<ZModGroup>(1))),
                    wlimit::CannotCertify);
}

TEST_CASE("choose_schedule over Z/2 values") {
    ZModGroup z2(2);
    std::vector<ZModGroup::Elem> vals{1u, 1u};
    wlimit::ScheduleBudget budget;
    budget.max_radius = 9;
    budget.max_elements = 300000;
    auto s = wlimit::choose_schedule(z2, vals, {Rational(4), Rational(3)}, 2, budget);
    REQUIRE(s.complete);
    REQUIRE(s.n.size() == 2);
    REQUIRE(s.m.size() == 2);
    CHECK(s.n[0] >= 1);  // the endpoint ball never stabilizes
    CHECK(s.n[0] < s.n[1]);
    CHECK(s.m[0] < s.m[1]);
    CHECK(s.certificates.size() >= 2);
    // the recorded epsilon inequality is exact
    auto gens = wlimit::make_Wi_generators(z2, s, vals, 1);
    growth::WreathGroupOracle<ZModGroup> oracle{z2, gens, budget.max_radius};
    auto table = growth::enumerate_balls(oracle, s.m[0], 1u << 20);
    unsigned __int128 rhs = 1;
    for (unsigned t = 0; t < s.m[0]; ++t) rhs *= 4;
    CHECK(static_cast<unsigned __int128>(table.ball(s.m[0])) <= rhs);
    // the chosen radius is minimal
    if (s.m[0] > 1) {
        unsigned __int128 prev = 1;
        for (unsigned t = 0; t + 1 < s.m[0]; ++t) prev *= 4;
        CHECK(static_cast<unsigned __int128>(table.ball(s.m[0] - 1)) > prev);
    }
    auto json = wlimit::schedule_json(s);
    CHECK(json.find("\"complete\":true") != std::string::npos);
}

TEST_CASE("ball agreement holds for stabilized schedules and fails for broken ones") {
    ZModGroup z2(2);
    std::vector<ZModGroup::Elem> vals{1u, 1u, 1u};
    auto good = simple_schedule({4, 6, 8});
    CHECK(wlimit::ball_agreement(z2, good, vals, 1, 0));
    CHECK(wlimit::ball_agreement(z2, good, vals, 1, 4));
    CHECK(wlimit::ball_agreement(z2, good, vals, 1, 4, 2));
    CHECK(wlimit::ball_agreement(z2, good, vals, 2, 4, 1));
    // a support at the endpoint is visible at small radius: b fixes x_0 but
    // moves every later designated point
    auto broken = simple_schedule({0, 1, 2});
    CHECK_FALSE(wlimit::ball_agreement(z2, broken, vals, 1, 4));
}

TEST_CASE("commutator imbedding over Sym3") {
    wreath::Sym3Group s3;
    auto gens = s3.generators();
    std::vector<wreath::Sym3Group::Elem> vals{gens[0], gens[1],
                                              s3.mul(gens[0], gens[1])};
    auto s = simple_schedule({0, 1, 2});
    auto seq = seqprop::PointSequence::designated(8);
    // transports x_n(j) -> x_0, and pair witnesses used to satisfy the joint
    // condition: g_i := w_ij g_j makes g_i g_j^-1 = w_ij, certified strict
    std::vector<Element> to0(3);
    to0[0] = Element();
    auto w01 = seqprop::check_rectifiable_pair(seq, 0, 1, 8);
    auto w02 = seqprop::check_rectifiable_pair(seq, 0, 2, 8);
    REQUIRE(w01.has_value());
    REQUIRE(w02.has_value());
    to0[1] = w01->g.inverse();
    to0[2] = w02->g.inverse();
    auto pair_witness = [&](unsigned a, unsigned b) -> Element {
        if (a == 0 && b == 1) return w01->g;
        if (a == 0 && b == 2) return w02->g;
        if (a == 1 && b == 0) return w01->g.inverse();
        if (a == 2 && b == 0) return w02->g.inverse();
        auto w = seqprop::check_rectifiable_pair(seq, a, b, 13);
        REQUIRE(w.has_value());
        return w->g;
    };
    for (unsigned i = 1; i <= 3; ++i)
        for (unsigned j = 1; j <= 3; ++j) {
            Element gj = to0[j - 1];
            Element gi = i == j ? gj : pair_witness(i - 1, j - 1) * gj;
            CHECK(wlimit::commutator_in_W(s3, s, vals, i, j, gi, gj));
        }
    // invalid witness rejected: the identity does not transport x_1 to x_0
    CHECK_THROWS_AS(static_cast<void>(wlimit::commutator_in_W(s3, s, vals, 2, 1, Element(),
                                                              Element())),
                    std::invalid_argument);
}

TEST_CASE("order equalization") {
    wreath::Sym3Group s3;
    auto gens = s3.generators();
    std::vector<wreath::Sym3Group::Elem> vals{gens[0], gens[1]};  // orders 2 and 3
    auto eq = wlimit::order_equalize(s3, vals);
    CHECK(eq.group.b.n == 6);
    for (const auto& v : eq.values) CHECK(eq.group.order(v) == 6u);
}
