#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "grigrow/imbed.hpp"
#include "grigrow/wreath.hpp"

using namespace grigrow;
using imbed::G0Element;
using imbed::GElement;

namespace {

Rational randq(std::mt19937_64& rng, int maxden = 12, int span = 6) {
    std::uniform_int_distribution<int> den(1, maxden);
    int d = den(rng);
    std::uniform_int_distribution<int> num(-span * d, span * d);
    return Rational(num(rng), d);
}

std::vector<Rational> sample_points(const std::vector<Rational>& cuts, std::mt19937_64& rng,
                                    int extra) {
    std::vector<Rational> pts;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        Rational next = i + 1 < cuts.size() ? cuts[i + 1] : Rational(1);
        pts.push_back(((cuts[i] + next) * Rational(1, 2)).mod1());  // midpoints
        pts.push_back(cuts[i]);
    }
    for (int t = 0; t < extra; ++t) pts.push_back(randq(rng, 64, 1).mod1());
    return pts;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(-7, 3)).floor() == -3);
    CHECK((Rational(-7, 3)).frac() == Rational(2, 3));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational(5, 3).pow(2) == Rational(25, 9));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(INT64_MAX, 1) * Rational(3), std::overflow_error);
}

TEST_CASE("step functions: shift, combine, canonical form") {
    using SF = StepFunction<Rational>;
    auto c = SF::constant(Rational(7));
    CHECK(c.shifted(Rational(1, 3)) == c);
    CHECK(c.eval(Rational(99, 100)) == Rational(7));

    auto ind = SF::indicator(Rational(0), Rational(1, 2), Rational(1), Rational(0));
    auto shifted = ind.shifted(Rational(1, 2));
    CHECK(shifted == SF::indicator(Rational(1, 2), Rational(1), Rational(1), Rational(0)));

    // shift identity: zero shift is the identity map
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        auto f = SF::indicator(Rational(1, 4), Rational(2, 3), randq(rng), randq(rng));
        CHECK(f.shifted(Rational(0)) == f);
        Rational d1 = randq(rng).mod1(), d2 = randq(rng).mod1();
        CHECK(f.shifted(d1).shifted(d2) == f.shifted((d1 + d2).mod1()));
        // pointwise law at sampled rationals
        for (const auto& r : sample_points(f.cuts(), rng, 8))
            CHECK(f.shifted(d1).eval(r) == f.eval((r + d1).mod1()));
    }
}

TEST_CASE("g0 arithmetic: axioms and pointwise evaluation oracle") {
    std::mt19937_64 rng(42);
    auto rand_g0 = [&]() {
        G0Element e = imbed::g0_identity();
        if (rng() % 2)
            e.phi_id = StepFunction<Rational>::indicator(Rational(1, 3), Rational(3, 4),
                                                         randq(rng), randq(rng));
        else
            e.phi_id = StepFunction<Rational>::constant(randq(rng));
        if (rng() % 2)
            e.phi_x = StepFunction<Rational>::indicator(Rational(1, 5), Rational(1, 2),
                                                        randq(rng), randq(rng));
        e.t_shift = randq(rng).mod1();
        e.f_shift = static_cast<int>(rng() % 2);
        return e;
    };
    for (int t = 0; t < 60; ++t) {
        G0Element a = rand_g0(), b = rand_g0(), c = rand_g0();
        CHECK(imbed::g0_mul(imbed::g0_mul(a, b), c) == imbed::g0_mul(a, imbed::g0_mul(b, c)));
        CHECK(imbed::g0_mul(a, imbed::g0_identity()) == a);
        CHECK(imbed::g0_mul(a, imbed::g0_inv(a)) == imbed::g0_identity());
        // product of two one-step functions has at most the union of cuts
        auto prod = imbed::g0_mul(a, b);
        CHECK(prod.phi_id.piece_count() <= a.phi_id.piece_count() + b.phi_id.piece_count() + 2);
        // pointwise oracle: value of product = phi(t,f) + psi((t,f)(t1,f1))
        for (const auto& r : sample_points(prod.phi_id.cuts(), rng, 6))
            for (int f : {0, 1}) {
                Rational direct = imbed::g0_value(prod, r, f);
                Rational expect = imbed::g0_value(a, r, f) +
                                  imbed::g0_value(b, (r + a.t_shift).mod1(), f ^ a.f_shift);
                CHECK(direct == expect);
            }
    }
}

TEST_CASE("phi0: exact images") {
    auto p1 = imbed::phi0(Rational(1));
    CHECK(p1.phi_id == StepFunction<Rational>::constant(Rational(1)));
    CHECK(p1.phi_x == StepFunction<Rational>::constant(Rational(-1)));
    CHECK(p1.t_shift == Rational(0));
    CHECK(p1.f_shift == 0);

    CHECK(imbed::phi0(Rational(0)) == imbed::g0_identity());

    auto ph = imbed::phi0(Rational(1, 2));
    CHECK(ph.t_shift == Rational(1, 2));
    CHECK(ph.phi_x.eval(Rational(0)) == Rational(0));
    CHECK(ph.phi_x.eval(Rational(1, 4)) == Rational(0));
    CHECK(ph.phi_x.eval(Rational(1, 2)) == Rational(-1));
    CHECK(ph.phi_x.eval(Rational(3, 4)) == Rational(-1));
    // phi(t,x) = -floor(t+b) at sampled rationals
    std::mt19937_64 rng(43);
    for (int t = 0; t < 64; ++t) {
        Rational b = randq(rng);
        Rational r = randq(rng, 32, 1).mod1();
        CHECK(imbed::g0_value(imbed::phi0(b), r, 1) == Rational(-(r + b).floor()));
        CHECK(imbed::g0_value(imbed::phi0(b), r, 0) == b);
    }
}

TEST_CASE("phi0 is an injective homomorphism") {
    CHECK(imbed::phi0_is_homomorphism(Rational(1), Rational(1)));
    CHECK(imbed::phi0_is_homomorphism(Rational(0), Rational(17, 5)));
    CHECK(imbed::phi0_is_homomorphism(Rational(1, 3), Rational(5, 6)));
    std::mt19937_64 rng(44);
    for (int t = 0; t < 100; ++t) {
        Rational b1 = randq(rng), b2 = randq(rng);
        CHECK(imbed::phi0_is_homomorphism(b1, b2));
        if (b1 != b2) CHECK(imbed::phi0(b1) != imbed::phi0(b2));
    }
}

TEST_CASE("commutator witness for C = Z") {
    for (long long b : {1, 0, -1, 2, -2, 7}) CHECK(imbed::verify_commutator_witness_C(Rational(b)));
    CHECK_THROWS_AS(imbed::commutator_witness_C(Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("G-level arithmetic and Lemma-3.7 witnesses") {
    // group axioms on small samples
    std::mt19937_64 rng(45);
    auto rand_g = [&]() {
        GElement e = imbed::g_identity();
        if (rng() % 2)
            e.psi = StepFunction<G0Element>::indicator(Rational(0), Rational(1, 2),
                                                       imbed::phi0(randq(rng)),
                                                       imbed::g0_identity());
        else
            e.psi = StepFunction<G0Element>::constant(imbed::phi0(randq(rng)));
        e.r_shift = randq(rng).mod1();
        return e;
    };
    for (int t = 0; t < 30; ++t) {
        GElement a = rand_g(), b = rand_g(), c = rand_g();
        CHECK(imbed::g_mul(imbed::g_mul(a, b), c) == imbed::g_mul(a, imbed::g_mul(b, c)));
        CHECK(imbed::g_mul(a, imbed::g_inv(a)) == imbed::g_identity());
    }

    CHECK(imbed::verify_commutator_witness_B(Rational(1, 2), 2));
    CHECK(imbed::verify_commutator_witness_B(Rational(1), 1));  // Psi_1 = Phi degenerates
    CHECK(imbed::verify_commutator_witness_B(Rational(1, 3), 3));
    CHECK(imbed::verify_commutator_witness_B(Rational(2, 3), 3));
    CHECK(imbed::verify_commutator_witness_B(Rational(5, 6), 6));
    CHECK_THROWS_AS(imbed::verify_commutator_witness_B(Rational(1, 2), 3),
                    std::invalid_argument);

    auto w = imbed::commutator_witness_B(Rational(2, 3));
    CHECK(w.n == 3);
    CHECK(w.g.psi.piece_count() == 3);
}

TEST_CASE("finitely-many-values closure under products") {
    std::mt19937_64 rng(46);
    for (int t = 0; t < 20; ++t) {
        G0Element prod = imbed::g0_identity();
        std::size_t bound = 1;
        for (int k = 0; k < 6; ++k) {
            Rational b = randq(rng);
            prod = imbed::g0_mul(prod, imbed::phi0(b));
            bound += imbed::phi0(b).phi_x.piece_count();
            CHECK(prod.phi_x.value_count() <= bound + 1);
            CHECK(prod.phi_id.value_count() <= bound + 1);
        }
    }
}

TEST_CASE("split_basis for the supported descriptors") {
    imbed::BDescriptor q;
    q.q_rank = 1;
    auto sq = imbed::split_basis(q);
    CHECK(sq.c_generators.size() == 1);
    CHECK(sq.x_basis.size() == 1);
    CHECK(sq.torsion_quotient == "Q/Z");

    imbed::BDescriptor z;
    z.z_rank = 1;
    auto sz = imbed::split_basis(z);
    CHECK(sz.c_generators.size() == 1);
    CHECK(sz.torsion_quotient == "0");

    imbed::BDescriptor z5;
    z5.torsion = {5};
    auto s5 = imbed::split_basis(z5);
    CHECK(s5.c_generators.empty());
    CHECK(s5.x_basis.empty());
    CHECK(s5.torsion_quotient == "Z/5");
}

TEST_CASE("two-generator imbedding over Sym3") {
    wreath::Sym3Group s3;
    auto gens = s3.generators();
    // commutator word [s1, s2]
    std::vector<std::pair<unsigned, int>> comm{{1, -1}, {2, -1}, {1, 1}, {2, 1}};
    auto rep = imbed::two_gen_imbed(s3, gens, comm);
    CHECK(rep.cyclic_order == 4);
    CHECK(rep.ok());

    // empty word
    CHECK(imbed::two_gen_imbed(s3, gens, {}).ok());

    // s1 s2 s1^-1 s2^-1 s1 s2 s1^-1 s2^-1
    std::vector<std::pair<unsigned, int>> sq;
    for (int r = 0; r < 2; ++r) {
        sq.push_back({1, 1});
        sq.push_back({2, 1});
        sq.push_back({1, -1});
        sq.push_back({2, -1});
    }
    CHECK(imbed::two_gen_imbed(s3, gens, sq).ok());

    // unbalanced word rejected
    CHECK_THROWS_AS(imbed::two_gen_imbed(s3, gens, {{1, 1}}), std::invalid_argument);

    // random balanced words
    std::mt19937_64 rng(47);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::pair<unsigned, int>> w;
        for (unsigned idx : {1u, 2u}) {
            int reps = 1 + static_cast<int>(rng() % 3);
            for (int r = 0; r < reps; ++r) {
                w.push_back({idx, 1});
                w.push_back({idx, -1});
            }
        }
        std::shuffle(w.begin(), w.end(), rng);
        CHECK(imbed::two_gen_imbed(s3, gens, w).ok());
    }
}

TEST_CASE("json dumps") {
    auto j = imbed::to_json(imbed::phi0(Rational(1, 2)));
    CHECK(j.find("\"t_shift\":\"1/2\"") != std::string::npos);
    CHECK(j.find("\"value\":\"-1\"") != std::string::npos);
    auto jg = imbed::to_json(imbed::Phi(Rational(1, 3)));
    CHECK(jg.find("\"r_shift\":\"0\"") != std::string::npos);
}
