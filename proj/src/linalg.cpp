#include "sprayopt/linalg.hpp"

#include <algorithm>

namespace sprayopt {

bool cholesky_factor(double* a, std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) {
        double d = a[j * m + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * m + k] * a[j * m + k];
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a[j * m + j] = ljj;
        for (std::size_t i = j + 1; i < m; ++i) {
            double s = a[i * m + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
            a[i * m + j] = s / ljj;
        }
    }
    return true;
}

void cholesky_solve(const double* l, std::size_t m, const double* b, double* x) {
    // forward: L y = b
    for (std::size_t i = 0; i < m; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l[i * m + k] * x[k];
        x[i] = s / l[i * m + i];
    }
    // backward: L^T x = y
    for (std::size_t ii = m; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t k = ii + 1; k < m; ++k) s -= l[k * m + ii] * x[k];
        x[ii] = s / l[ii * m + ii];
    }
}

std::array<double, kNumParams> symmetric_eigenvalues(const Mat5& m) {
    Mat5 a = m;
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < kNumParams; ++p)
            for (std::size_t q = p + 1; q < kNumParams; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < kNumParams; ++p) {
            for (std::size_t q = p + 1; q < kNumParams; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < kNumParams; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < kNumParams; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, kNumParams> ev{};
    for (std::size_t i = 0; i < kNumParams; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace sprayopt
