#pragma once

// Structural property checks shared by the unit tests and the acceptance runner. Each
// check records failures in a Tally instead of asserting, so callers decide how to report.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "plumb/constructions.hpp"
#include "plumb/generator.hpp"
#include "plumb/invariants.hpp"
#include "plumb/lattice.hpp"
#include "plumb/plumb_format.hpp"
#include "plumb/spin.hpp"

namespace plumb::testing {

struct Tally {
    std::map<std::string, std::size_t> checks;
    std::vector<std::string> failures;

    void expect(const std::string& property, bool ok, const PlumbingGraph& g, const std::string& detail = {}) {
        ++checks[property];
        if (ok) return;
        std::ostringstream os;
        os << property << " failed on " << serialize_graph(g);
        if (!detail.empty()) os << "  " << detail << "\n";
        failures.push_back(os.str());
    }
    std::size_t count(const std::string& property) const {
        auto it = checks.find(property);
        return it == checks.end() ? 0 : it->second;
    }
    bool ok() const { return failures.empty(); }
};

inline std::vector<PlumbingGraph> rational_corpus(std::uint64_t seed, std::size_t count, std::size_t max_vertices,
                                                  std::int64_t weight_min) {
    GeneratorParams p;
    p.seed = seed;
    p.count = count;
    p.max_vertices = max_vertices;
    p.weight_min = weight_min;
    p.require_rational = true;
    return generate_candidates(p);
}

inline std::string show(const CharVector& k) {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

/// #Wu sets = 2^q = 2^(even invariant factors) = subset count; GF(2) = move lifting;
/// every c_S characteristic.
inline void check_wu_sets(const PlumbingGraph& g, Tally& t) {
    const auto form = build_intersection_form(g);
    const auto summary = lattice_summary(form);
    std::size_t even = 0;
    for (const auto& f : summary.invariant_factors)
        if (mpz_even_p(f.get_mpz_t())) ++even;
    const auto gf2 = wu_sets_gf2(g);
    const auto moves = wu_sets_by_moves(g);
    const std::size_t q = reduce_mod2(g).q();
    t.expect("wu count = 2^q", gf2.size() == (std::size_t{1} << q), g);
    t.expect("wu count = 2^(even factors)", gf2.size() == (std::size_t{1} << even), g);
    t.expect("wu count = subset enumeration", gf2.size() == brute_wu_sets(g).size(), g);
    bool characteristic = true;
    for (const auto& s : gf2) characteristic = characteristic && is_characteristic(form, s.c);
    t.expect("c_S characteristic", characteristic, g);
    std::vector<std::vector<std::size_t>> a, b;
    for (const auto& s : gf2) a.push_back(s.members);
    for (const auto& s : moves) b.push_back(s.members);
    t.expect("gf2 = move lifting", a == b, g);
}

inline void check_spinc_count(const PlumbingGraph& g, Tally& t) {
    const auto form = build_intersection_form(g);
    const auto classes = enumerate_spinc_classes(form);
    t.expect("|det| = #spin^c classes", Integer(classes.size()) == abs(cofactor_det(to_small(g))), g);
}

/// A random characteristic vector in the initial box n_i + 2 <= K_i <= -n_i.
inline CharVector random_initial(const PlumbingGraph& g, std::mt19937_64& rng) {
    CharVector k;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const std::int64_t n = g.weight(i);
        const auto steps = static_cast<std::uint64_t>(-n);  // values n+2, n+4, ..., -n
        k.values.push_back(n + 2 + 2 * static_cast<std::int64_t>(rng() % steps));
    }
    return k;
}

/// K^2 is unchanged by each step of the default discharge, and the outcome and final
/// vector do not depend on the pivot order.
inline void check_discharge(const PlumbingGraph& g, Tally& t, std::mt19937_64& rng, int starts, int orders) {
    const auto form = build_intersection_form(g);
    const InverseForm inverse(form);
    for (int s = 0; s < starts; ++s) {
        const CharVector start = random_initial(g, rng);
        const DischargeResult base = discharge(form, start);
        CharVector k = start;
        const Rational sq = inverse.square(k);
        bool preserved = true;
        for (std::size_t pivot : base.pivots) {
            preserved = preserved && k[pivot] == -g.weight(pivot);
            k = add_dual(form, k, pivot);
            preserved = preserved && inverse.square(k) == sq;
        }
        t.expect("K^2 preserved by discharge", preserved && k == base.final_vector, g, "start " + show(start));

        if (orders == 0) continue;
        bool same = true;
        for (int o = 0; o < orders; ++o) {
            const DischargeResult other = discharge(form, start, [&](const std::vector<std::size_t>& c) {
                return c[rng() % c.size()];
            });
            same = same && other.outcome == base.outcome &&
                   (base.outcome == DischargeOutcome::dead || other.final_vector == base.final_vector);
        }
        t.expect("discharge pivot-order independent", same, g, "start " + show(start));
    }
}

struct SpinInvariants {
    Integer mubar;
    Rational d;
    friend bool operator==(const SpinInvariants&, const SpinInvariants&) = default;
};

/// (mubar, d) of one Wu set; d by the oracle (the max formula, uncertified if need be).
inline SpinInvariants spin_invariants(const PlumbingGraph& g, const WuSet& s) {
    CorrectionOptions opts;
    opts.allow_uncertified = true;
    return {mubar(g, s).mubar, d_oracle(g, s.c, opts).d};
}

/// Sorted multisets of mubar over spin structures and of d over spin^c classes (max
/// formula; the value is a lattice invariant either way).
inline std::pair<std::vector<Integer>, std::vector<Rational>> invariant_multisets(const PlumbingGraph& g) {
    std::vector<Integer> mu;
    std::vector<Rational> ds;
    if (g.empty()) return {{Integer(0)}, {Rational(0)}};
    CorrectionOptions opts;
    opts.allow_uncertified = true;
    const PlumbedManifold m(g);
    for (const auto& s : enumerate_wu_sets(g)) mu.push_back(mubar(g, s).mubar);
    for (const auto& k : enumerate_spinc_classes(m.form())) ds.push_back(d_oracle(m, k, opts).d);
    std::sort(mu.begin(), mu.end());
    std::sort(ds.begin(), ds.end());
    return {mu, ds};
}

/// One random blow-up: an isolated (-1), a (-1) leaf at v (n_v -= 1), or a (-1) on the
/// edge x-y (n_x -= 1, n_y -= 1).
inline PlumbingGraph blow_up(const PlumbingGraph& g, std::mt19937_64& rng) {
    PlumbingGraph out;
    const auto edges = g.edges();
    const int kind = g.empty() ? 0 : static_cast<int>(rng() % (edges.empty() ? 2 : 3));
    std::vector<std::int64_t> delta(g.size(), 0);
    std::size_t v = 0;
    Edge split{};
    if (kind == 1) {
        v = rng() % g.size();
        delta[v] = -1;
    } else if (kind == 2) {
        split = edges[rng() % edges.size()];
        delta[split.first] = -1;
        delta[split.second] = -1;
    }
    for (std::size_t i = 0; i < g.size(); ++i) out.add_vertex(g.id(i), g.weight(i) + delta[i]);
    const std::size_t e = out.add_vertex(g.fresh_id("e"), -1);
    for (const auto& edge : edges)
        if (kind != 2 || !(edge == split)) out.add_edge(edge.first, edge.second);
    if (kind == 1) out.add_edge(v, e);
    if (kind == 2) {
        out.add_edge(split.first, e);
        out.add_edge(e, split.second);
    }
    return out;
}

/// Blowing up and then down returns the graph, and the invariant multisets agree.
inline void check_blow_down(const PlumbingGraph& g, Tally& t, std::mt19937_64& rng) {
    PlumbingGraph up = g;
    const int times = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < times; ++i) up = blow_up(up, rng);
    const PlumbingGraph down = blow_down_normalize(up);
    t.expect("blow-down inverts blow-up", serialize_graph(down) == serialize_graph(g), up);
    t.expect("blow-down preserves mubar and d multisets", invariant_multisets(up) == invariant_multisets(down), up);
}

/// Every applicable framing reduction keeps (mubar, d); every disjoint union with the
/// (-2)-vertex shifts (mubar, d) by (+1, -1/4).
inline void check_constructions(const PlumbingGraph& g, Tally& t) {
    for (const auto& s : enumerate_wu_sets(g)) {
        const SpinInvariants before = spin_invariants(g, s);
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (s.contains(v)) continue;
            std::int64_t in_s = 0;
            for (std::size_t u : g.neighbours(v))
                if (s.contains(u)) ++in_s;
            if (in_s != -g.weight(v)) continue;
            const auto [g2, s2] = framing_reduction_step(g, s, v);
            t.expect("framing reduction preserves (mubar, d)", spin_invariants(g2, s2) == before, g,
                     "at " + g.id(v));
        }
        const auto [g1, s1] = disjoint_union_with_rp3(g, s);
        const SpinInvariants after = spin_invariants(g1, s1);
        t.expect("disjoint union shifts (mubar, d) by (+1, -1/4)",
                 after.mubar == before.mubar + 1 && after.d == before.d - Rational(1, 4), g);
    }
}

}  // namespace plumb::testing
