#include "plumb/lattice.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace plumb {

IntersectionForm build_intersection_form(const PlumbingGraph& g) {
    const std::size_t n = g.size();
    IntersectionForm form{IntMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) form.q(i, i) = g.weight(i);
    for (const Edge& e : g.edges()) {
        form.q(e.first, e.second) = 1;
        form.q(e.second, e.first) = 1;
    }
    return form;
}

Integer determinant(const BigMatrix& input) {
    const std::size_t n = input.rows();
    if (n != input.cols()) throw InputError("determinant of a non-square matrix");
    if (n == 0) return 1;
    BigMatrix m = input;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            m.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

Integer determinant(const IntersectionForm& form) { return determinant(form.q.cast<Integer>()); }

std::vector<Integer> leading_principal_minors(const BigMatrix& input) {
    // Bareiss without pivoting: after step k the pivot m(k, k) is the k+1 leading minor.
    const std::size_t n = input.rows();
    BigMatrix m = input;
    std::vector<Integer> minors;
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        minors.push_back(m(k, k));
        if (m(k, k) == 0) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return minors;
}

Signature signature(const IntersectionForm& form) {
    const std::size_t n = form.size();
    RationalMatrix a = form.q.cast<Rational>();
    Signature sig;
    std::size_t k = 0;
    while (k < n) {
        // Pick a nonzero diagonal pivot in the trailing block.
        std::size_t p = k;
        while (p < n && a(p, p) == 0) ++p;
        if (p == n) {
            // All diagonal entries vanish. An off-diagonal a_ij != 0 gives the congruence
            // e_i -> e_i + e_j with new diagonal 2 a_ij.
            std::size_t i = n, j = n;
            for (std::size_t r = k; r < n && i == n; ++r)
                for (std::size_t c = r + 1; c < n; ++c)
                    if (a(r, c) != 0) {
                        i = r;
                        j = c;
                        break;
                    }
            if (i == n) {
                sig.zero += n - k;
                break;
            }
            for (std::size_t c = 0; c < n; ++c) a(i, c) += a(j, c);
            for (std::size_t r = 0; r < n; ++r) a(r, i) += a(r, j);
            p = i;
        }
        a.swap_rows(k, p);
        a.swap_cols(k, p);
        const Rational pivot = a(k, k);
        (pivot > 0 ? sig.positive : sig.negative) += 1;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rational f = a(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
        for (std::size_t j = k + 1; j < n; ++j) a(k, j) = 0;
        for (std::size_t i = k + 1; i < n; ++i) a(i, k) = 0;
        ++k;
    }
    return sig;
}

bool is_negative_definite(const IntersectionForm& form) {
    const auto minors = leading_principal_minors(form.q.cast<Integer>());
    if (minors.size() != form.size()) return false;
    for (std::size_t k = 0; k < minors.size(); ++k) {
        // det of the leading (k+1)x(k+1) block must have sign (-1)^(k+1).
        const int expected = (k % 2 == 0) ? -1 : 1;
        if (sgn(minors[k]) != expected) return false;
    }
    return true;
}

namespace {

// Row operation: row[dst] += f * row[src]
void add_row(BigMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
void add_col(BigMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}
void negate_row(BigMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

// Lexicographic successor in the box lo <= k <= hi (steps of 2); false once exhausted.
bool advance_box(CharVector& k, const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) {
    for (std::size_t i = k.size(); i-- > 0;) {
        if (k[i] + 2 <= hi[i]) {
            k[i] += 2;
            return true;
        }
        k[i] = lo[i];
    }
    return false;
}

}  // namespace

SmithForm smith_normal_form(const BigMatrix& input) {
    BigMatrix a = input;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    BigMatrix p = BigMatrix::identity(rows);
    BigMatrix r = BigMatrix::identity(cols);
    const std::size_t steps = std::min(rows, cols);

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) break;  // trailing block is zero
            a.swap_rows(t, pi);
            p.swap_rows(t, pi);
            a.swap_cols(t, pj);
            r.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                add_row(a, i, t, -q);
                add_row(p, i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                add_col(a, j, t, -q);
                add_col(r, j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;  // a smaller remainder exists; re-pivot

            // Divisibility: the pivot must divide the whole trailing block.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            add_row(a, t, bad, 1);
            add_row(p, t, bad, 1);
        }
        if (a(t, t) < 0) {
            negate_row(a, t);
            negate_row(p, t);
        }
    }

    SmithForm out;
    out.diagonal.reserve(steps);
    for (std::size_t t = 0; t < steps; ++t) out.diagonal.push_back(a(t, t));
    out.row_transform = std::move(p);
    out.col_transform = std::move(r);
    return out;
}

LatticeSummary lattice_summary(const IntersectionForm& form) {
    LatticeSummary s;
    s.det = determinant(form);
    s.signature = signature(form);
    s.invariant_factors = smith_normal_form(form.q.cast<Integer>()).diagonal;
    if (s.det != 0) s.h1_order = abs(s.det);
    for (const Integer& f : s.invariant_factors)
        if (mpz_even_p(f.get_mpz_t())) ++s.dim_h1_mod2;
    return s;
}

std::vector<Rational> solve(const IntersectionForm& form, const std::vector<Rational>& b) {
    const std::size_t n = form.size();
    if (b.size() != n) throw InputError("right-hand side has the wrong length");
    RationalMatrix a(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = form.q(i, j);
        a(i, n) = b[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) throw PreconditionError("intersection form is singular");
        a.swap_rows(k, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j <= n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a(i, n) / a(i, i);
    return x;
}

bool is_characteristic(const IntersectionForm& form, const CharVector& k) {
    if (k.size() != form.size()) return false;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (((k[i] - form.weight(i)) % 2) != 0) return false;
    return true;
}

Rational char_square(const IntersectionForm& form, const CharVector& k) {
    if (k.size() != form.size()) throw InputError("vector length does not match the form");
    std::vector<Rational> b(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) b[i] = k[i];
    const auto x = solve(form, b);
    Rational sum = 0;
    for (std::size_t i = 0; i < k.size(); ++i) sum += b[i] * x[i];
    return sum;
}

InverseForm::InverseForm(const IntersectionForm& form) : det_(determinant(form)) {
    const std::size_t n = form.size();
    adjugate_ = BigMatrix(n, n);
    if (det_ == 0) throw PreconditionError("intersection form is singular");
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Rational> e(n, Rational(0));
        e[c] = 1;
        const auto col = solve(form, e);
        for (std::size_t r = 0; r < n; ++r) {
            Rational v = col[r] * det_;
            if (v.get_den() != 1) throw InternalError("adjugate entry is not integral");
            adjugate_(r, c) = v.get_num();
        }
    }
}

Integer InverseForm::square_numerator(const CharVector& k) const {
    const std::size_t n = k.size();
    Integer sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (k[i] == 0) continue;
        Integer row = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (k[j] != 0) row += adjugate_(i, j) * static_cast<long>(k[j]);
        sum += row * static_cast<long>(k[i]);
    }
    return sum;
}

Rational InverseForm::square(const CharVector& k) const {
    if (k.size() != adjugate_.rows()) throw InputError("vector length does not match the form");
    Rational r(square_numerator(k), det_);
    r.canonicalize();
    return r;
}

SpincClassifier::SpincClassifier(const IntersectionForm& form) {
    const std::size_t n = form.size();
    parity_.resize(n);
    for (std::size_t i = 0; i < n; ++i) parity_[i] = ((form.weight(i) % 2) + 2) % 2;
    const SmithForm snf = smith_normal_form(form.q.cast<Integer>());
    std::vector<std::size_t> kept;
    class_count_ = 1;
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
        if (snf.diagonal[i] == 1) continue;
        kept.push_back(i);
        moduli_.push_back(snf.diagonal[i]);
        class_count_ *= snf.diagonal[i];
    }
    rows_ = BigMatrix(kept.size(), n);
    for (std::size_t r = 0; r < kept.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) rows_(r, j) = snf.row_transform(kept[r], j);
}

std::vector<Integer> SpincClassifier::key(const CharVector& k) const {
    if (k.size() != parity_.size()) throw InputError("vector length does not match the form");
    std::vector<Integer> half(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        const std::int64_t d = k[i] - parity_[i];
        if (d % 2 != 0) throw InputError("vector is not characteristic");
        half[i] = d / 2;
    }
    std::vector<Integer> out(moduli_.size());
    for (std::size_t r = 0; r < moduli_.size(); ++r) {
        Integer s = 0;
        for (std::size_t j = 0; j < half.size(); ++j) s += rows_(r, j) * half[j];
        if (moduli_[r] != 0) mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), moduli_[r].get_mpz_t());
        out[r] = s;
    }
    return out;
}

bool SpincClassifier::same(const CharVector& a, const CharVector& b) const { return key(a) == key(b); }

bool same_spinc(const IntersectionForm& form, const CharVector& k, const CharVector& k_prime) {
    const std::size_t n = form.size();
    if (k.size() != n || k_prime.size() != n) throw InputError("vector length does not match the form");
    std::vector<Integer> half(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t d = k_prime[i] - k[i];
        if (d % 2 != 0) throw InputError("vectors differ by an odd entry at index " + std::to_string(i));
        half[i] = d / 2;
    }
    const SmithForm snf = smith_normal_form(form.q.cast<Integer>());
    // Q x = h solvable over Z  <=>  (P h)_i divisible by d_i (and zero where d_i = 0).
    bool singular = false;
    for (const Integer& d : snf.diagonal)
        if (d == 0) singular = true;
    if (singular) throw PreconditionError("intersection form is singular");
    for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) s += snf.row_transform(i, j) * half[j];
        if (!mpz_divisible_p(s.get_mpz_t(), snf.diagonal[i].get_mpz_t())) return false;
    }
    return true;
}

std::vector<CharVector> enumerate_spinc_classes(const IntersectionForm& form) {
    const std::size_t n = form.size();
    if (!is_negative_definite(form)) throw PreconditionError("intersection form is not negative definite");
    const SpincClassifier classifier(form);
    const Integer& wanted = classifier.class_count();
    if (n == 0) return {CharVector{}};

    std::map<std::vector<Integer>, CharVector> found;
    for (std::int64_t widen = 0;; widen += 2) {
        found.clear();
        // Odometer over n_i - widen <= K_i <= -n_i + widen in steps of 2, lexicographic order,
        // so the first hit of each class is its lexicographically smallest member.
        CharVector k;
        k.values.resize(n);
        std::vector<std::int64_t> lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = form.weight(i) - widen;
            hi[i] = -form.weight(i) + widen;
            k[i] = lo[i];
        }
        do {
            found.try_emplace(classifier.key(k), k);
            if (Integer(static_cast<unsigned long>(found.size())) == wanted) break;
        } while (advance_box(k, lo, hi));
        if (Integer(static_cast<unsigned long>(found.size())) == wanted) break;
    }
    std::vector<CharVector> reps;
    reps.reserve(found.size());
    for (auto& [key, rep] : found) reps.push_back(rep);
    std::sort(reps.begin(), reps.end());
    return reps;
}

CharVector add_dual(const IntersectionForm& form, const CharVector& k, std::size_t i,
                    std::int64_t multiple) {
    CharVector out = k;
    for (std::size_t j = 0; j < form.size(); ++j) out[j] += 2 * multiple * form.q(i, j);
    return out;
}

}  // namespace plumb
