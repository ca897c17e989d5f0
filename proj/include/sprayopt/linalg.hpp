#ifndef SPRAYOPT_LINALG_HPP
#define SPRAYOPT_LINALG_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace sprayopt {

inline constexpr std::size_t kNumParams = 5;

using Vec5 = std::array<double, kNumParams>;
using Mat5 = std::array<std::array<double, kNumParams>, kNumParams>;

inline Vec5 zero_vec5() { return Vec5{0.0, 0.0, 0.0, 0.0, 0.0}; }

inline Mat5 zero_mat5() {
    Mat5 m{};
    for (auto& row : m) row.fill(0.0);
    return m;
}

inline Mat5 identity_mat5() {
    Mat5 m = zero_mat5();
    for (std::size_t i = 0; i < kNumParams; ++i) m[i][i] = 1.0;
    return m;
}

inline double dot(const Vec5& a, const Vec5& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < kNumParams; ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec5& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec5& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline Vec5 mat_vec(const Mat5& m, const Vec5& v) {
    Vec5 r = zero_vec5();
    for (std::size_t i = 0; i < kNumParams; ++i)
        for (std::size_t j = 0; j < kNumParams; ++j) r[i] += m[i][j] * v[j];
    return r;
}

inline bool all_finite(const Vec5& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

/// Cholesky factorization of the leading m-by-m symmetric block packed in
/// row-major `a` (a[i*m+j]). In-place, lower triangle. Returns false if the
/// matrix is not numerically positive definite.
bool cholesky_factor(double* a, std::size_t m);

/// Solves A x = b given the Cholesky factor from cholesky_factor().
void cholesky_solve(const double* l, std::size_t m, const double* b, double* x);

/// Eigenvalues of a symmetric 5x5 matrix via cyclic Jacobi rotations,
/// ascending order.
std::array<double, kNumParams> symmetric_eigenvalues(const Mat5& m);

inline double min_eigenvalue(const Mat5& m) { return symmetric_eigenvalues(m)[0]; }

}  // namespace sprayopt

#endif  // SPRAYOPT_LINALG_HPP
