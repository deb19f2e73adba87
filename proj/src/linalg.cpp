#include "mpg/linalg.hpp"

namespace mpg {

RatVector solve_linear(const RatMatrix& A, const RatVector& b) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || b.size() != n)
        throw InvariantViolation("solve_linear: shape mismatch");
    if (n == 0) return RatVector(0);

    RatMatrix m(n, n + 1);
    m.block(0, 0, n, n) = A;
    m.col(n) = b;

    // Clear denominators row by row; scaling a row leaves the solution set
    // unchanged and makes every entry an integer.
    for (Eigen::Index i = 0; i < n; ++i) {
        BigInt l(1);
        for (Eigen::Index j = 0; j <= n; ++j)
            l = boost::multiprecision::lcm(l, m(i, j).den());
        if (l != 1) {
            const Rat scale{Rat(l)};
            for (Eigen::Index j = 0; j <= n; ++j) m(i, j) *= scale;
        }
    }

    if (!bareiss_eliminate(m)) throw SingularMatrix();

    RatVector x(n);
    for (Eigen::Index i = n; i-- > 0;) {
        Rat sum = m(i, n);
        for (Eigen::Index j = i + 1; j < n; ++j) sum -= m(i, j) * x(j);
        x(i) = sum / m(i, i);
    }

    if (!exact_eq(RatVector(A * x), b))
        throw InternalError("solve_linear: substitution check failed");
    return x;
}

}  // namespace mpg
