#pragma once

// Fixture graphs and independent brute-force oracles. Nothing here calls the algorithms it
// is used to check: determinants come from cofactor expansion, inverses from the adjugate
// of cofactors, Wu sets from subset enumeration, d from box enumeration with a brute-force
// class test, and lens-space correction terms from the standard recursion.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "plumb/core.hpp"
#include "plumb/graph.hpp"

namespace plumb::testing {

inline PlumbingGraph single(std::int64_t w) { return make_graph({{"v", w}}); }

inline PlumbingGraph a3_chain() {
    return make_graph({{"a", -2}, {"c", -2}, {"b", -2}}, {{"a", "c"}, {"c", "b"}});
}

inline PlumbingGraph a_n(std::size_t n) { return make_chain(std::vector<std::int64_t>(n, -2)); }

/// D_n: a centre with arms of length 1, 1, n - 3.
inline PlumbingGraph d_n(std::size_t n) {
    return make_star(-2, {{-2}, {-2}, std::vector<std::int64_t>(n - 3, -2)});
}

inline PlumbingGraph e_n(std::size_t n) {
    return make_star(-2, {{-2}, {-2, -2}, std::vector<std::int64_t>(n - 4, -2)});
}

inline PlumbingGraph e8() { return e_n(8); }

/// Centre (-1) with legs (-2), (-3), (-7): resolution graph of the Brieskorn sphere Sigma(2,3,7).
inline PlumbingGraph star_237() { return make_star(-1, {{-2}, {-3}, {-7}}); }

// ---- exact integer oracles ------------------------------------------------------------

using SmallMatrix = std::vector<std::vector<Integer>>;

inline SmallMatrix to_small(const PlumbingGraph& g) {
    const std::size_t n = g.size();
    SmallMatrix m(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = static_cast<long>(g.weight(i));
        for (std::size_t j : g.neighbours(i)) m[i][j] = 1;
    }
    return m;
}

inline SmallMatrix minor_of(const SmallMatrix& m, std::size_t row, std::size_t col) {
    SmallMatrix out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == row) continue;
        std::vector<Integer> r;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != col) r.push_back(m[i][j]);
        out.push_back(r);
    }
    return out;
}

/// Laplace expansion along the first row.
inline Integer cofactor_det(const SmallMatrix& m) {
    if (m.empty()) return 1;
    Integer sum = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[0][j] == 0) continue;
        Integer term = m[0][j] * cofactor_det(minor_of(m, 0, j));
        sum += (j % 2 == 0) ? term : Integer(-term);
    }
    return sum;
}

inline SmallMatrix cofactor_adjugate(const SmallMatrix& m) {
    const std::size_t n = m.size();
    SmallMatrix adj(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer c = cofactor_det(minor_of(m, j, i));
            adj[i][j] = ((i + j) % 2 == 0) ? c : Integer(-c);
        }
    return adj;
}

/// K^T Q^{-1} K via the cofactor adjugate.
inline Rational brute_square(const SmallMatrix& m, const std::vector<std::int64_t>& k);

/// Precomputed adjugate and determinant for repeated class and square queries.
struct BruteForm {
    explicit BruteForm(const SmallMatrix& m) : adj(cofactor_adjugate(m)), det(cofactor_det(m)) {}

    Rational square(const std::vector<std::int64_t>& k) const {
        Integer num = 0;
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = 0; j < k.size(); ++j) num += adj[i][j] * static_cast<long>(k[i] * k[j]);
        Rational r(num, det);
        r.canonicalize();
        return r;
    }

    /// Whether Q x = h has an integer solution: x = adj h / det must be integral.
    bool solvable(const std::vector<std::int64_t>& h) const {
        for (std::size_t i = 0; i < h.size(); ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < h.size(); ++j) s += adj[i][j] * static_cast<long>(h[j]);
            if (!mpz_divisible_p(s.get_mpz_t(), det.get_mpz_t())) return false;
        }
        return true;
    }

    bool same_class(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
        std::vector<std::int64_t> h(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if ((b[i] - a[i]) % 2 != 0) return false;
            h[i] = (b[i] - a[i]) / 2;
        }
        return solvable(h);
    }

    SmallMatrix adj;
    Integer det;
};

inline Rational brute_square(const SmallMatrix& m, const std::vector<std::int64_t>& k) {
    return BruteForm(m).square(k);
}

inline bool brute_same_class(const SmallMatrix& m, const std::vector<std::int64_t>& a,
                             const std::vector<std::int64_t>& b) {
    return BruteForm(m).same_class(a, b);
}

/// Every subset S with Q 1_S characteristic, as sorted index lists, in lexicographic order.
inline std::vector<std::vector<std::size_t>> brute_wu_sets(const PlumbingGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            std::int64_t c = ((mask >> i) & 1U) ? g.weight(i) : 0;
            for (std::size_t j : g.neighbours(i)) c += static_cast<std::int64_t>((mask >> j) & 1U);
            ok = ((c - g.weight(i)) % 2) == 0;
        }
        if (!ok) continue;
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1U) s.push_back(i);
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// max (K^2 + n)/4 over characteristic K with |K_i| <= radius in the class of `rep`.
inline Rational brute_d(const PlumbingGraph& g, const std::vector<std::int64_t>& rep, std::int64_t radius) {
    const BruteForm form(to_small(g));
    const std::size_t n = g.size();
    std::vector<std::int64_t> k(n);
    std::vector<std::int64_t> lo(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = -radius;
        if (((lo[i] - g.weight(i)) % 2) != 0) ++lo[i];
        k[i] = lo[i];
    }
    bool have = false;
    Rational best;
    while (true) {
        if (form.same_class(rep, k)) {
            Rational v = (form.square(k) + static_cast<long>(n)) / 4;
            if (!have || v > best) {
                best = v;
                have = true;
            }
        }
        std::size_t i = n;
        bool advanced = false;
        while (i-- > 0) {
            if (k[i] + 2 <= radius) {
                k[i] += 2;
                advanced = true;
                break;
            }
            k[i] = lo[i];
        }
        if (!advanced) break;
    }
    best.canonicalize();
    return best;
}

// ---- lens spaces ----------------------------------------------------------------------

/// d(-L(p, q), i) by the recursion
///   d(-L(p,q), i) = ((2i + 1 - p - q)^2 - pq) / (4pq) - d(-L(q, r), j),  r = p mod q, j = i mod q.
inline Rational lens_d_minus(long p, long q, long i) {
    if (p == 1) return 0;
    Rational first(Integer((2 * i + 1 - p - q) * (2 * i + 1 - p - q) - p * q), Integer(4 * p * q));
    first.canonicalize();
    return first - lens_d_minus(q, p % q, i % q);
}

/// p / q from the negative continued fraction [a_1, ..., a_k] = a_1 - 1/(a_2 - ...), a_i >= 2.
inline std::pair<long, long> continued_fraction(const std::vector<long>& a) {
    long p = 1, q = 0;  // value of the empty tail is "infinity"
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        const long np = *it * p - q;
        q = p;
        p = np;
    }
    return {p, q};
}

/// Sorted multiset of d(L(p, q), i) = -d(-L(p, q), i) over all i.
inline std::vector<Rational> lens_d_values(long p, long q) {
    std::vector<Rational> out;
    for (long i = 0; i < p; ++i) out.push_back(-lens_d_minus(p, q, i));
    std::sort(out.begin(), out.end());
    return out;
}

// ---- random inputs --------------------------------------------------------------------

inline std::vector<std::int64_t> random_characteristic(const PlumbingGraph& g, std::mt19937_64& rng, int radius) {
    std::vector<std::int64_t> k(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::int64_t v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * radius + 1)) - radius;
        if (((v - g.weight(i)) % 2) != 0) v += 1;
        k[i] = v;
    }
    return k;
}

}  // namespace plumb::testing
