#pragma once

#include <Eigen/Core>

#include "mpg/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<mpg::Rat> : GenericNumTraits<mpg::Rat> {
    using Real = mpg::Rat;
    using NonInteger = mpg::Rat;
    using Literal = mpg::Rat;
    using Nested = mpg::Rat;

    static inline Real epsilon() { return mpg::Rat(0); }
    static inline Real dummy_precision() { return mpg::Rat(0); }
    static inline int digits10() { return 0; }

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60,
    };
};

}  // namespace Eigen

namespace mpg {

using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

inline RatVector constant_vector(Eigen::Index n, const Rat& c) {
    return RatVector::Constant(n, c);
}

inline RatVector zero_vector(Eigen::Index n) { return RatVector::Constant(n, Rat(0)); }

inline RatVector unit_vector(Eigen::Index n) { return RatVector::Constant(n, Rat(1)); }

template <typename A, typename B>
bool exact_eq(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

/*
 * Fraction-free (Bareiss) elimination on an augmented matrix, with partial
 * pivoting on exact magnitude. Works on any exact scalar whose division is
 * exact; with integer rows the recurrence keeps every intermediate entry an
 * integer dividing a minor of the input, which bounds coefficient growth.
 *
 * Returns false when the system is singular.
 */
template <typename MatrixType>
bool bareiss_eliminate(MatrixType& m) {
    using Scalar = typename MatrixType::Scalar;
    const Eigen::Index n = m.rows();
    Scalar div_prev(1);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index best = k;
        Scalar best_abs = abs(m(k, k));
        for (Eigen::Index i = k + 1; i < n; ++i) {
            Scalar a = abs(m(i, k));
            if (best_abs < a) {
                best_abs = a;
                best = i;
            }
        }
        if (best_abs == Scalar(0)) return false;
        if (best != k) m.row(k).swap(m.row(best));

        const Scalar pivot = m(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            for (Eigen::Index j = k + 1; j < m.cols(); ++j)
                m(i, j) = (m(i, j) * pivot - m(i, k) * m(k, j)) / div_prev;
            m(i, k) = Scalar(0);
        }
        div_prev = pivot;
    }
    return true;
}

// Exact solution of A x = b for square nonsingular A. Rows are scaled to
// integers first so the Bareiss recurrence stays division-exact, and the
// result is verified by substitution before it is returned.
// Throws SingularMatrix when A is singular.
RatVector solve_linear(const RatMatrix& A, const RatVector& b);

}  // namespace mpg
