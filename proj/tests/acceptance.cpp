// Acceptance runner: prints one PASS/FAIL line per criterion and exits nonzero on any FAIL.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "fixtures.hpp"
#include "plumb/invariants.hpp"
#include "plumb/lattice.hpp"
#include "plumb/rationality.hpp"
#include "plumb/spin.hpp"
#include "properties.hpp"

using namespace plumb;

namespace {

const std::string kData = PLUMB_TEST_DATA_DIR;
const std::string kGolden = PLUMB_TEST_GOLDEN_DIR;

/// Collects failed expectations for one criterion.
struct Criterion {
    std::vector<std::string> problems;
    std::string summary;

    void expect(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Rational> sorted(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Integer> sorted(std::vector<Integer> v) {
    std::sort(v.begin(), v.end());
    return v;
}

bool is_spin_class(const PlumbedManifold& m, const std::vector<WuSet>& sets, const CharVector& rep) {
    for (const auto& s : sets)
        if (m.classifier().same(s.c, rep)) return true;
    return false;
}

void main_theorem(Criterion& c) {
    const auto corpus = testing::rational_corpus(1, 200, 8, -9);
    c.expect(corpus.size() == 200, "corpus has 200 graphs");
    std::size_t rows = 0;
    std::size_t largest = 0;
    std::int64_t most_negative = 0;
    for (const auto& g : corpus) {
        largest = std::max(largest, g.size());
        for (std::size_t i = 0; i < g.size(); ++i) most_negative = std::min(most_negative, g.weight(i));
        c.expect(is_negative_definite(build_intersection_form(g)), "negative definite: " + serialize_graph(g));
        const TheoremReport r = verify_theorem(g);
        c.expect(r.pass, "theorem fails on " + serialize_graph(g));
        for (const auto& row : r.rows) {
            ++rows;
            c.expect(row.mubar == -4 * row.d_oracle && row.mubar == -4 * row.d_path,
                     "mubar = -4d on " + serialize_graph(g));
            c.expect(row.d_oracle == row.d_path, "oracle = path on " + serialize_graph(g));
        }
    }
    std::ostringstream out, err;
    cli::VerifyArgs args;
    args.random = 200;
    args.max_vertices = 8;
    args.weight_min = -9;
    args.seed = 1;
    const int code = cli::run_verify(args, out, err);
    c.expect(code == cli::kOk, "plumb verify exit code 0");
    c.expect(out.str().find("\n200/200 verified\n") != std::string::npos, "plumb verify prints 200/200 verified");
    c.summary = std::to_string(corpus.size()) + " graphs (up to " + std::to_string(largest) + " vertices, weights down to " +
                std::to_string(most_negative) + "), " + std::to_string(rows) + " spin structures, mubar = -4d exact";
}

void minus_four(Criterion& c) {
    const PlumbingGraph g = testing::single(-4);
    const PlumbedManifold m(g);
    const auto sets = enumerate_wu_sets(g);
    c.expect(sets.size() == 2, "two spin structures");
    std::vector<Integer> mu;
    std::vector<Rational> spin_d;
    for (const auto& s : sets) {
        mu.push_back(mubar(g, s).mubar);
        spin_d.push_back(d_path(m, s.c).d);
        c.expect(d_oracle(m, s.c).d == spin_d.back(), "oracle = path on spin class");
        c.expect(testing::brute_d(g, s.c.values, 12) == spin_d.back(), "box oracle on spin class");
    }
    c.expect(sorted(mu) == std::vector<Integer>{-1, 3}, "mubar values {3, -1}");
    c.expect(sorted(spin_d) == std::vector<Rational>{Rational(-3, 4), Rational(1, 4)}, "spin d values {-3/4, 1/4}");

    const auto reps = enumerate_spinc_classes(m.form());
    c.expect(reps.size() == 4, "four spin^c classes");
    std::size_t non_spin = 0;
    for (const auto& rep : reps) {
        if (is_spin_class(m, sets, rep)) continue;
        ++non_spin;
        c.expect(d_path(m, rep).d == 0 && d_oracle(m, rep).d == 0 && testing::brute_d(g, rep.values, 12) == 0,
                 "non-spin class has d = 0");
    }
    c.expect(non_spin == 2, "two non-spin classes");

    const ObstructionVerdict v = obstruction_report(g);
    c.expect(v.spin_ball_obstructed, "spin-ball obstruction fires");
    c.expect(v.mubar_product == -3, "mubar product -3");
    c.expect(v.det_parity == DetParity::even && !v.any_ball_obstructed.has_value(),
             "det-odd obstruction not applicable");

    // The opposite-sign values belong to the orientation reversal, the (-2)-(-2)-(-2) chain.
    std::vector<Integer> reversed;
    for (const auto& s : enumerate_wu_sets(testing::a3_chain())) reversed.push_back(mubar(testing::a3_chain(), s).mubar);
    c.expect(sorted(reversed) == std::vector<Integer>{-3, 1}, "reversed orientation gives {-3, +1}");
    c.summary = "spin mubar {-1, 3}, spin d {1/4, -3/4}, non-spin d {0, 0}; spin ball obstructed, det-odd test n/a";
}

void e8(Criterion& c) {
    const PlumbingGraph g = testing::e8();
    const PlumbedManifold m(g);
    const auto summary = lattice_summary(m.form());
    c.expect(summary.det == 1, "det 1");
    c.expect(testing::cofactor_det(testing::to_small(g)) == 1, "cofactor det 1");
    c.expect(laufer_rationality(g).verdict == Rationality::rational, "Laufer-rational");
    const auto sets = enumerate_wu_sets(g);
    c.expect(sets.size() == 1 && sets[0].members.empty(), "unique spin structure S = {}");
    if (sets.size() == 1) {
        c.expect(mubar(g, sets[0]).mubar == -8, "mubar -8");
        c.expect(d_path(m, sets[0].c).d == 2 && d_oracle(m, sets[0].c).d == 2, "d = 2 by both methods");
    }
    const ObstructionVerdict v = obstruction_report(g);
    c.expect(v.det_parity == DetParity::odd && v.any_ball_obstructed == std::optional<bool>(true),
             "det-odd obstruction fires");
    c.summary = "det 1, rational, one spin structure, mubar -8, d 2, any rational ball obstructed";
}

void lens(Criterion& c) {
    const PlumbingGraph two = testing::single(-2);
    std::vector<Rational> d2;
    for (const auto& s : enumerate_wu_sets(two)) {
        const Rational d = d_path(two, s.c).d;
        c.expect(d == d_oracle(two, s.c).d && d == testing::brute_d(two, s.c.values, 12), "(-2): methods agree");
        d2.push_back(d);
    }
    c.expect(sorted(d2) == std::vector<Rational>{Rational(-1, 4), Rational(1, 4)}, "(-2): spin d {1/4, -1/4}");
    c.expect(sorted(d2) == testing::lens_d_values(2, 1), "(-2): lens-space formula");

    const PlumbingGraph three = testing::single(-3);
    const auto sets = enumerate_wu_sets(three);
    c.expect(sets.size() == 1, "(-3): one spin structure");
    if (sets.size() == 1) {
        const Rational d = d_path(three, sets[0].c).d;
        c.expect(d == Rational(-1, 2), "(-3): spin d -1/2");
        c.expect(d == d_oracle(three, sets[0].c).d && d == testing::brute_d(three, sets[0].c.values, 12),
                 "(-3): methods agree");
        c.expect(mubar(three, sets[0]).mubar == 2, "(-3): mubar 2");
    }
    std::vector<Rational> all3;
    const PlumbedManifold m3(three);
    for (const auto& rep : enumerate_spinc_classes(m3.form())) all3.push_back(d_oracle(m3, rep).d);
    c.expect(sorted(all3) == testing::lens_d_values(3, 1), "(-3): lens-space formula on all classes");
    const ObstructionVerdict v = obstruction_report(three);
    c.expect(v.any_ball_obstructed == std::optional<bool>(true), "(-3): any rational ball obstructed");
    c.summary = "(-2) spin d {1/4, -1/4}; (-3) spin d -1/2, mubar 2, any ball obstructed; box oracle and lens formula agree";
}

void laufer(Criterion& c) {
    std::size_t graphs = 0;
    auto rational = [&](const PlumbingGraph& g, const std::string& name) {
        ++graphs;
        c.expect(laufer_rationality(g).verdict == Rationality::rational, name + " rational");
    };
    for (std::size_t n = 1; n <= 9; ++n) rational(testing::a_n(n), "A" + std::to_string(n));
    for (std::size_t n = 4; n <= 8; ++n) rational(testing::d_n(n), "D" + std::to_string(n));
    for (std::size_t n = 6; n <= 8; ++n) rational(testing::e_n(n), "E" + std::to_string(n));
    const LauferTrace star = laufer_rationality(testing::star_237());
    c.expect(star.verdict == Rationality::not_rational, "star not rational");
    c.expect(!star.steps.empty() && star.steps.back().vertex == 0 && star.steps.back().product == 2 &&
                 star.steps.back().action == LauferAction::halt_not_rational,
             "star halts at the centre with product 2");
    c.summary = std::to_string(graphs) + " ADE graphs rational; (-1; -2, -3, -7) star halts at the centre with product 2";
}

void structural(Criterion& c) {
    testing::Tally t;
    std::mt19937_64 rng(6);
    const auto corpus = testing::rational_corpus(6, 500, 6, -6);
    for (const auto& g : corpus) {
        testing::check_wu_sets(g, t);
        testing::check_spinc_count(g, t);
        testing::check_discharge(g, t, rng, 4, 20);
        testing::check_blow_down(g, t, rng);
        testing::check_constructions(g, t);
    }
    // Stars whose centre is reducible by framing: a (-k) centre with k (-2) leaves in S.
    for (std::int64_t k = 2; k <= 5; ++k) {
        const std::vector<std::vector<std::int64_t>> arms(static_cast<std::size_t>(k), std::vector<std::int64_t>{-2});
        testing::check_constructions(make_star(-k, arms), t);
    }
    for (const auto& f : t.failures) c.problems.push_back(f);
    c.expect(corpus.size() >= 500, "at least 500 graphs");
    c.expect(t.count("framing reduction preserves (mubar, d)") > 0, "framing reduction exercised");
    std::ostringstream os;
    os << corpus.size() << " graphs; checks:";
    for (const auto& [name, n] : t.checks) os << " [" << name << "] " << n << ";";
    c.summary = os.str();
}

void determinism(Criterion& c) {
    auto run = [](std::size_t jobs) {
        std::ostringstream out, err;
        cli::VerifyArgs args;
        args.random = 200;
        args.seed = 1;
        args.jobs = jobs;
        cli::run_verify(args, out, err);
        return out.str();
    };
    const std::string first = run(0);
    c.expect(first == run(0), "verify output identical across runs");
    c.expect(first == run(1), "verify output identical across job counts");
    std::size_t goldens = 0;
    for (const char* name : {"minus1", "minus2", "minus3", "minus4", "a3", "e8", "sigma237"}) {
        std::ostringstream a, b, err;
        cli::AnalyzeArgs args;
        args.file = kData + "/" + name + ".plumb";
        args.json = true;
        cli::run_analyze(args, a, err);
        cli::run_analyze(args, b, err);
        c.expect(a.str() == b.str(), std::string(name) + ": repeated analyze identical");
        c.expect(a.str() == slurp(kGolden + "/" + name + ".json"), std::string(name) + ": matches golden report");
        ++goldens;
    }
    c.summary = "verify output byte-identical; " + std::to_string(goldens) + " golden reports stable";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
        {"1 main theorem suite", main_theorem},  {"2 (-4)-vertex fixture", minus_four},
        {"3 E8 fixture", e8},                    {"4 lens-space cross-check", lens},
        {"5 Laufer classification", laufer},     {"6 structural invariant suite", structural},
        {"7 determinism", determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Criterion c;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(c);
        } catch (const std::exception& e) {
            c.problems.push_back(std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream time;
        time.precision(2);
        time << std::fixed << seconds << "s";
        if (c.problems.empty()) {
            std::cout << "PASS criterion " << name << ": " << c.summary << " (" << time.str() << ")\n";
        } else {
            ++failures;
            std::cout << "FAIL criterion " << name << ": " << c.problems.size() << " problem(s) (" << time.str()
                      << ")\n";
            for (std::size_t i = 0; i < std::min<std::size_t>(c.problems.size(), 10); ++i)
                std::cout << "    " << c.problems[i] << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
