#pragma once

// Exact linear algebra on the plumbing intersection lattice.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "plumb/core.hpp"
#include "plumb/graph.hpp"

namespace plumb {

/// Intersection form of a plumbing: Q_ii = n_i, Q_ij = 1 exactly when v_i, v_j are adjacent.
struct IntersectionForm {
    IntMatrix q;

    std::size_t size() const { return q.rows(); }
    std::int64_t weight(std::size_t i) const { return q(i, i); }
};

IntersectionForm build_intersection_form(const PlumbingGraph& g);

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;

    /// n+ - n-
    std::int64_t value() const {
        return static_cast<std::int64_t>(positive) - static_cast<std::int64_t>(negative);
    }
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct LatticeSummary {
    Integer det;
    Signature signature;
    std::vector<Integer> invariant_factors;  // positive, each divides the next; 0 allowed at the tail
    std::optional<Integer> h1_order;         // empty when det = 0 (H_1 infinite)
    std::size_t dim_h1_mod2 = 0;
};

/// Fraction-free (Bareiss) determinant with row pivoting.
Integer determinant(const BigMatrix& m);
Integer determinant(const IntersectionForm& form);

/// Leading principal minors det_1, ..., det_n (stops early after the first zero minor).
std::vector<Integer> leading_principal_minors(const BigMatrix& m);

/// Signature by exact rational symmetric elimination (congruence diagonalisation).
Signature signature(const IntersectionForm& form);

/// (-1)^k det_k > 0 for every leading principal minor. The empty form counts as negative definite.
bool is_negative_definite(const IntersectionForm& form);

/// Smith normal form D = P * A * R with P, R unimodular.
struct SmithForm {
    std::vector<Integer> diagonal;  // length min(rows, cols)
    BigMatrix row_transform;        // P
    BigMatrix col_transform;        // R
};

SmithForm smith_normal_form(const BigMatrix& a);

LatticeSummary lattice_summary(const IntersectionForm& form);

/// Exact solution of Q x = b; throws PreconditionError when Q is singular.
std::vector<Rational> solve(const IntersectionForm& form, const std::vector<Rational>& b);

bool is_characteristic(const IntersectionForm& form, const CharVector& k);

/// K^T Q^{-1} K. Throws PreconditionError on singular Q.
Rational char_square(const IntersectionForm& form, const CharVector& k);

/// Q^{-1} stored as adj(Q) / det(Q); evaluates K^2 with integer arithmetic only.
class InverseForm {
public:
    explicit InverseForm(const IntersectionForm& form);

    const Integer& det() const { return det_; }
    const BigMatrix& adjugate() const { return adjugate_; }

    /// K^T adj(Q) K (so that K^2 = numerator / det).
    Integer square_numerator(const CharVector& k) const;
    Rational square(const CharVector& k) const;

private:
    Integer det_;
    BigMatrix adjugate_;
};

/// Decides whether two characteristic vectors define the same spin^c structure on the
/// boundary, i.e. whether (K' - K)/2 lies in Q Z^n. Built once from the Smith form of Q.
class SpincClassifier {
public:
    explicit SpincClassifier(const IntersectionForm& form);

    /// Residues of P * (K - r) / 2 modulo the nontrivial invariant factors, where r is the
    /// parity vector of the weights. Equal keys <=> same class. K must be characteristic.
    std::vector<Integer> key(const CharVector& k) const;
    bool same(const CharVector& a, const CharVector& b) const;

    /// Number of classes; zero when det Q = 0 (infinitely many).
    const Integer& class_count() const { return class_count_; }
    /// Invariant factors > 1 and the matching rows of P.
    const std::vector<Integer>& moduli() const { return moduli_; }
    const BigMatrix& reduced_rows() const { return rows_; }
    const std::vector<std::int64_t>& parity() const { return parity_; }

private:
    std::vector<std::int64_t> parity_;
    std::vector<Integer> moduli_;  // 0 means "must vanish" (free part)
    BigMatrix rows_;
    Integer class_count_;
};

/// True iff Q x = (K' - K)/2 has an integer solution. Throws InputError when K' - K has an
/// odd entry and PreconditionError when det Q = 0.
bool same_spinc(const IntersectionForm& form, const CharVector& k, const CharVector& k_prime);

/// One characteristic representative per spin^c class (exactly |det Q| of them), each the
/// lexicographically smallest member found in the box n_i <= K_i <= -n_i, the box being
/// widened by 2 per coordinate until every class has been met. Sorted by representative.
std::vector<CharVector> enumerate_spinc_classes(const IntersectionForm& form);

/// K + 2 Q e_i.
CharVector add_dual(const IntersectionForm& form, const CharVector& k, std::size_t i,
                    std::int64_t multiple = 1);

}  // namespace plumb
