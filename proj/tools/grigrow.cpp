// Command-line driver: reproducible experiments over the library, one
// subcommand per study.  Every subcommand writes its tables next to a short
// human summary and exits nonzero as soon as a verification fails, printing
// the first counterexample.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <cmath>
#include <random>
#include <sstream>

#include "grigrow/growth.hpp"
#include "grigrow/imbed.hpp"
#include "grigrow/schreier.hpp"
#include "grigrow/seqprop.hpp"
#include "grigrow/wlimit.hpp"
#include "grigrow/wreath.hpp"

using namespace grigrow;

namespace {

struct Common {
    std::string out = ".";
    std::string format = "csv";
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::uint64_t budget = 500000;
    unsigned max_radius = 10;
};

void write_file(const Common& c, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(c.out);
    std::ofstream f(std::filesystem::path(c.out) / name);
    f << content;
    std::cout << "wrote " << (std::filesystem::path(c.out) / name).string() << "\n";
}

int cmd_schreier(const Common& c, unsigned max_i, unsigned dot_radius) {
    std::string csv = schreier::distance_table_csv(max_i, c.max_radius * 1024);
    write_file(c, "schreier_distances.csv", csv);
    if (c.format == "dot" || dot_radius > 0)
        write_file(c, "schreier_ball.dot",
                   schreier::to_dot(schreier::ball(schreier::OrbitPoint(), dot_radius)));
    // verify the idealized distance law d(x_i,x_j) = |2^i - 2^j|
    for (unsigned i = 0; i <= max_i; ++i)
        for (unsigned j = i + 1; j <= max_i; ++j) {
            auto d = schreier::distance(schreier::OrbitPoint::designated(i),
                                        schreier::OrbitPoint::designated(j), c.max_radius * 1024);
            if (!d) {
                std::cout << "FAIL: distance (" << i << "," << j << ") unreached\n";
                return 1;
            }
            unsigned long long ideal = (1ull << j) - (1ull << i);
            if (*d != ideal) {
                std::cout << "FAIL: d(x_" << i << ",x_" << j << ") = " << *d
                          << " but the idealized law gives " << ideal
                          << " (measured positions follow floor(2^(k+1)/3))\n";
                return 1;
            }
        }
    std::cout << "distance law verified for i<j<=" << max_i << "\n";
    return 0;
}

int cmd_growth(const Common& c, const std::string& group, unsigned verify_naive) {
    growth::GrowthTable t;
    if (group == "trivial") {
        t = growth::enumerate_balls(growth::TrivialOracle{}, c.max_radius, c.budget, c.threads);
    } else if (group == "z") {
        t = growth::enumerate_balls(growth::ZOracle{}, c.max_radius, c.budget, c.threads);
    } else if (group == "grig") {
        t = growth::enumerate_balls(growth::GrigOracle(c.max_radius), c.max_radius, c.budget,
                                    c.threads);
    } else if (group == "w1") {
        wreath::ZModGroup z2(2);
        growth::WreathGroupOracle<wreath::ZModGroup> oracle{
            z2,
            {wreath::iota(z2, 1u),
             wreath::pure<wreath::ZModGroup>(grig::Element::generator('a')),
             wreath::pure<wreath::ZModGroup>(grig::Element::generator('b')),
             wreath::pure<wreath::ZModGroup>(grig::Element::generator('c')),
             wreath::pure<wreath::ZModGroup>(grig::Element::generator('d'))},
            c.max_radius};
        t = growth::enumerate_balls(oracle, c.max_radius, c.budget, c.threads);
    } else {
        std::cout << "unknown group " << group << "\n";
        return 2;
    }
    write_file(c, "growth_" + group + ".csv", growth::to_csv(t));
    if (group == "grig" && verify_naive > 0) {
        auto naive = growth::grig_table_naive(std::min(verify_naive, c.max_radius));
        for (const auto& row : naive.rows)
            if (row.ball != t.ball(row.radius)) {
                std::cout << "FAIL: ball(" << row.radius << ") " << t.ball(row.radius)
                          << " != naive " << row.ball << "\n";
                return 1;
            }
        std::cout << "naive-equality oracle agrees to radius " << naive.rows.back().radius
                  << "\n";
    }
    std::cout << "ball(" << t.rows.back().radius << ") = " << t.rows.back().ball
              << (t.truncated ? " (truncated)" : "") << "\n";
    return 0;
}

int cmd_inverted_orbit(const Common& c, unsigned n_max, unsigned exact_cap,
                       std::uint64_t trials) {
    std::vector<growth::InvertedOrbitStats> stats;
    schreier::OrbitPoint x0;
    for (unsigned n = 0; n <= n_max; ++n) {
        growth::InvertedOrbitStats s;
        s.n = n;
        if (n <= exact_cap) s.exact_max = *growth::inverted_orbit_growth_exact(n, x0).exact_max;
        if (trials > 0) {
            auto ss = growth::inverted_orbit_growth_sampled(n, x0, trials, c.seed + n);
            s.sampled_max = ss.sampled_max;
            s.samples = ss.samples;
        }
        if (s.exact_max && s.sampled_max && *s.sampled_max > *s.exact_max) {
            std::cout << "FAIL: sampled " << *s.sampled_max << " exceeds exact " << *s.exact_max
                      << " at n=" << n << "\n";
            return 1;
        }
        stats.push_back(s);
    }
    write_file(c, "inverted_orbit.csv", growth::stats_csv(stats));
    std::cout << "inverted orbit stats for n<=" << n_max << " (exact through "
              << std::min(n_max, exact_cap) << ")\n";
    // descriptive exponent fit rho(n) ~ n^alpha at the largest exact length
    for (auto it = stats.rbegin(); it != stats.rend(); ++it)
        if (it->exact_max && it->n >= 2) {
            double alpha = std::log(double(*it->exact_max)) / std::log(double(it->n));
            std::cout << "empirical alpha at n=" << it->n << ": " << alpha << "\n";
            break;
        }
    return 0;
}

int cmd_rectify(const Common& c, unsigned max_i, unsigned search_radius) {
    auto seq = seqprop::PointSequence::designated(max_i + 3);
    std::ostringstream report;
    for (unsigned i = 0; i <= max_i; ++i)
        for (unsigned j = 0; j <= max_i; ++j) {
            if (i == j) continue;
            auto w = seqprop::check_rectifiable_pair(seq, i, j, search_radius);
            if (!w) {
                std::cout << "FAIL: no certified witness for (" << i << "," << j
                          << ") within radius " << search_radius << "\n";
                return 1;
            }
            report << seqprop::witness_json(*w) << "\n";
        }
    write_file(c, "rectify_witnesses.jsonl", report.str());
    std::cout << "certified witnesses for all ordered pairs with i,j <= " << max_i << "\n";
    return 0;
}

int cmd_imbed(const Common& c, unsigned samples) {
    std::mt19937_64 rng(c.seed);
    auto randq = [&]() {
        std::uniform_int_distribution<int> den(1, 12);
        int d = den(rng);
        std::uniform_int_distribution<int> num(-6 * d, 6 * d);
        return Rational(num(rng), d);
    };
    std::ostringstream report;
    report << "{\"schema_version\":1,\"homomorphism_pairs\":" << samples;
    for (unsigned t = 0; t < samples; ++t) {
        Rational b1 = randq(), b2 = randq();
        if (!imbed::phi0_is_homomorphism(b1, b2)) {
            std::cout << "FAIL: phi0(" << b1.str() << ")*phi0(" << b2.str()
                      << ") != phi0(sum)\n";
            return 1;
        }
        if (b1 != b2 && imbed::phi0(b1) == imbed::phi0(b2)) {
            std::cout << "FAIL: phi0 not injective at " << b1.str() << ", " << b2.str() << "\n";
            return 1;
        }
    }
    for (long long b : {1, -1, 2, -2})
        if (!imbed::verify_commutator_witness_C(Rational(b))) {
            std::cout << "FAIL: commutator witness for b=" << b << "\n";
            return 1;
        }
    report << ",\"witness_C\":[1,-1,2,-2]";
    const std::pair<Rational, unsigned> cases[] = {
        {Rational(1, 2), 2}, {Rational(1, 3), 3}, {Rational(2, 3), 3}, {Rational(5, 6), 6}};
    for (const auto& [b, n] : cases)
        if (!imbed::verify_commutator_witness_B(b, n)) {
            std::cout << "FAIL: Phi(" << b.str() << ") witness with n=" << n << "\n";
            return 1;
        }
    report << ",\"witness_B\":[\"1/2\",\"1/3\",\"2/3\",\"5/6\"]";
    report << ",\"example\":" << imbed::to_json(imbed::phi0(Rational(1, 2))) << "}";
    write_file(c, "imbed_report.json", report.str());
    std::cout << "exact imbedding checks passed (" << samples << " random pairs)\n";
    return 0;
}

int cmd_two_gen(const Common& c, unsigned words) {
    wreath::Sym3Group s3;
    auto gens = s3.generators();
    std::mt19937_64 rng(c.seed);
    for (unsigned t = 0; t < words; ++t) {
        std::vector<std::pair<unsigned, int>> w;
        for (unsigned idx : {1u, 2u}) {
            unsigned reps = 1 + rng() % 3;
            for (unsigned r = 0; r < reps; ++r) {
                w.push_back({idx, 1});
                w.push_back({idx, -1});
            }
        }
        std::shuffle(w.begin(), w.end(), rng);
        auto rep = imbed::two_gen_imbed(s3, gens, w);
        if (!rep.ok()) {
            std::cout << "FAIL: balanced word #" << t << " not supported only at t\n";
            return 1;
        }
    }
    std::ostringstream os;
    os << "{\"schema_version\":1,\"words\":" << words << ",\"cyclic_order\":4,\"ok\":true}";
    write_file(c, "two_gen_report.json", os.str());
    std::cout << words << " balanced words verified in Sym3 wr Z/4\n";
    return 0;
}

int cmd_wlimit(const Common& c, const std::string& base_name, unsigned levels) {
    wreath::ZModGroup z2(2);
    wlimit::ScheduleBudget budget;
    budget.max_radius = c.max_radius;
    budget.max_elements = c.budget;
    budget.threads = c.threads;
    if (base_name == "z2") {
        std::vector<wreath::ZModGroup::Elem> vals(levels + 1, 1u);
        std::vector<Rational> eps;
        for (unsigned i = 0; i <= levels; ++i) eps.push_back(Rational(8 - std::min(i * 1u, 4u), 2));
        auto s = wlimit::choose_schedule(z2, vals, eps, levels + 1, budget);
        write_file(c, "wlimit_schedule.json", wlimit::schedule_json(s));
        if (!s.n.empty()) {
            growth::WreathGroupOracle<wreath::ZModGroup> o{
                z2, wlimit::make_Wi_generators(z2, s, vals, 1), c.max_radius};
            write_file(c, "wlimit_w1_growth.csv",
                       growth::to_csv(growth::enumerate_balls(o, c.max_radius, c.budget,
                                                              c.threads)));
        }
        if (!s.complete) {
            std::cout << "FAIL: schedule incomplete: " << s.certificates.back() << "\n";
            return 1;
        }
        for (unsigned i = 1; i <= levels; ++i) {
            unsigned m = std::min(s.m[i - 1], c.max_radius);
            if (!wlimit::ball_agreement(z2, s, vals, i, m, 1, c.budget)) {
                std::cout << "FAIL: ball agreement at stage " << i << " radius " << m << "\n";
                return 1;
            }
            std::cout << "agreement(" << i << ", " << m << ") holds\n";
        }
        return 0;
    }
    if (base_name == "sym3") {
        wreath::Sym3Group s3;
        auto gens = s3.generators();
        std::vector<wreath::Sym3Group::Elem> vals{gens[0], gens[1], s3.mul(gens[0], gens[1])};
        // order equalization, then the schedule pipeline over the augmented base
        auto eq = wlimit::order_equalize(s3, vals);
        std::vector<Rational> eps;
        for (unsigned i = 0; i <= levels; ++i) eps.push_back(Rational(8 - std::min(i, 2u)));
        auto sched = wlimit::choose_schedule(eq.group, eq.values, eps,
                                             std::min(levels + 1, 2u), budget);
        write_file(c, "wlimit_sym3_schedule.json", wlimit::schedule_json(sched));
        if (!sched.complete) {
            std::cout << "FAIL: equalized schedule incomplete: " << sched.certificates.back()
                      << "\n";
            return 1;
        }
        if (!wlimit::ball_agreement(eq.group, sched, eq.values, 1, sched.m[0], 1, c.budget)) {
            std::cout << "FAIL: equalized agreement at stage 1\n";
            return 1;
        }
        std::cout << "equalized base " << eq.group.name() << ": agreement(1, " << sched.m[0]
                  << ") holds\n";
        wlimit::Schedule s;
        s.n = {0, 1, 2};
        auto seq = seqprop::PointSequence::designated(8);
        auto w01 = seqprop::check_rectifiable_pair(seq, 0, 1, 10);
        auto w02 = seqprop::check_rectifiable_pair(seq, 0, 2, 10);
        auto w12 = seqprop::check_rectifiable_pair(seq, 1, 2, 13);
        if (!w01 || !w02 || !w12) {
            std::cout << "FAIL: transport witnesses not found\n";
            return 1;
        }
        std::vector<grig::Element> to0{grig::Element(), w01->g.inverse(), w02->g.inverse()};
        auto pairw = [&](unsigned a, unsigned b) {
            if (a == 0 && b == 1) return w01->g;
            if (a == 0 && b == 2) return w02->g;
            if (a == 1 && b == 2) return w12->g;
            if (a == 1 && b == 0) return w01->g.inverse();
            if (a == 2 && b == 0) return w02->g.inverse();
            return w12->g.inverse();
        };
        for (unsigned i = 1; i <= 3; ++i)
            for (unsigned j = 1; j <= 3; ++j) {
                grig::Element gj = to0[j - 1];
                grig::Element gi = i == j ? gj : pairw(i - 1, j - 1) * gj;
                if (!wlimit::commutator_in_W(s3, s, vals, i, j, gi, gj)) {
                    std::cout << "FAIL: commutator (" << i << "," << j << ")\n";
                    return 1;
                }
            }
        std::cout << "all 9 commutators land on iota([b_i,b_j]) exactly\n";
        return 0;
    }
    std::cout << "unknown base " << base_name << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grigrow: exact workbench for the ray orbit of the first Grigorchuk group"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    app.add_option("--out", c.out, "output directory");
    app.add_option("--format", c.format, "csv|json|dot");
    app.add_option("--threads", c.threads, "worker threads for ball enumeration");
    app.add_option("--seed", c.seed, "seed for sampled modes");
    app.add_option("--budget", c.budget, "element budget for enumerations");
    app.add_option("--max-radius", c.max_radius, "radius cap");

    unsigned max_i = 8, dot_radius = 6;
    auto* sc = app.add_subcommand("schreier", "distance tables, ball DOT, distance-law check");
    sc->add_option("--max-i", max_i, "largest designated index");
    sc->add_option("--dot-radius", dot_radius, "radius of the DOT ball around x_0");

    std::string group = "grig";
    unsigned verify_naive = 6;
    auto* gr = app.add_subcommand("growth", "ball tables with an independent equality oracle");
    gr->add_option("--group", group, "trivial|z|grig|w1");
    gr->add_option("--verify-naive", verify_naive, "cross-check radius for grig (0 = skip)");

    unsigned n_max = 12, exact_cap = 12;
    std::uint64_t trials = 2000;
    auto* io = app.add_subcommand("inverted-orbit", "exact and sampled inverted-orbit growth");
    io->add_option("--n-max", n_max, "longest words");
    io->add_option("--exact-cap", exact_cap, "exact search cap");
    io->add_option("--trials", trials, "samples per length");

    unsigned rect_max_i = 3, search_radius = 14;
    auto* re = app.add_subcommand("rectify", "certified transport witness search");
    re->add_option("--max-i", rect_max_i, "largest designated index");
    re->add_option("--search-radius", search_radius, "word length cap");

    unsigned samples = 100;
    auto* im = app.add_subcommand("imbed", "exact derived-subgroup imbedding checks over Q");
    im->add_option("--samples", samples, "random rational pairs");

    unsigned words = 20;
    auto* tg = app.add_subcommand("two-gen", "balanced words in the two-generator imbedding");
    tg->add_option("--words", words, "random balanced words");

    std::string base_name = "z2";
    unsigned levels = 2;
    auto* wl = app.add_subcommand("wlimit", "schedule construction, agreement, commutators");
    wl->add_option("--base", base_name, "z2|sym3");
    wl->add_option("--levels", levels, "stages to certify");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc->parsed()) return cmd_schreier(c, max_i, dot_radius);
        if (gr->parsed()) return cmd_growth(c, group, verify_naive);
        if (io->parsed()) return cmd_inverted_orbit(c, n_max, exact_cap, trials);
        if (re->parsed()) return cmd_rectify(c, rect_max_i, search_radius);
        if (im->parsed()) return cmd_imbed(c, samples);
        if (tg->parsed()) return cmd_two_gen(c, words);
        if (wl->parsed()) return cmd_wlimit(c, base_name, levels);
    } catch (const std::exception& e) {
        std::cout << "FAIL: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
