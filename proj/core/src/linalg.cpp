#include "qnspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnspace/errors.hpp"

namespace qns {

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const int n = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != n) {
        throw std::invalid_argument("solve_linear: size mismatch");
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-14) {
            throw Error(Errc::singular_jacobian, "pivot vanished during elimination");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            if (factor == 0.0) continue;
            for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

std::vector<double> characteristic_polynomial(const Matrix& a) {
    const int n = static_cast<int>(a.size());
    // M_{k+1} = A·(M_k + c_k·I), c_{k+1} = −tr(M_{k+1})/(k+1), starting from
    // M_0 = 0, c_0 = 1; the c_k are the coefficients of det(λI − A).
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
    coeffs[0] = 1.0;
    Matrix m(n, std::vector<double>(n, 0.0));
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < n; ++i) m[i][i] += coeffs[k - 1];
        Matrix next(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l) acc += a[i][l] * m[l][j];
                next[i][j] = acc;
            }
        }
        m = std::move(next);
        double trace = 0.0;
        for (int i = 0; i < n; ++i) trace += m[i][i];
        coeffs[k] = -trace / k;
    }
    return coeffs;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    using C = std::complex<double>;
    if (coeffs.empty() || coeffs[0] == 0.0) {
        throw std::invalid_argument("polynomial_roots: leading coefficient must be nonzero");
    }
    const int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<C> c(coeffs.begin(), coeffs.end());
    for (auto& v : c) v /= coeffs[0];

    auto eval = [&](C z) {
        C acc = c[0];
        for (int i = 1; i <= deg; ++i) acc = acc * z + c[i];
        return acc;
    };

    // Distinct non-real starting points on a spiral; standard for this scheme.
    std::vector<C> z(deg);
    const C base(0.4, 0.9);
    C p(1.0, 0.0);
    for (int i = 0; i < deg; ++i) {
        p *= base;
        z[i] = p;
    }

    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < deg; ++i) {
            C denom(1.0, 0.0);
            for (int j = 0; j < deg; ++j) {
                if (j != i) denom *= z[i] - z[j];
            }
            if (denom == C(0.0, 0.0)) continue;
            const C delta = eval(z[i]) / denom;
            z[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-13) break;
    }
    return z;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
    using C = std::complex<double>;
    const int n = static_cast<int>(a.size());
    std::vector<C> out;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(C(a[0][0], 0.0));
    } else if (n == 2) {
        const double tr = a[0][0] + a[1][1];
        const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        const double disc = tr * tr - 4.0 * det;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            out.push_back(C((tr - s) / 2.0, 0.0));
            out.push_back(C((tr + s) / 2.0, 0.0));
        } else {
            const double s = std::sqrt(-disc);
            out.push_back(C(tr / 2.0, -s / 2.0));
            out.push_back(C(tr / 2.0, s / 2.0));
        }
    } else {
        out = polynomial_roots(characteristic_polynomial(a));
        // Real matrices have conjugate-paired spectra; snap stray imaginary
        // dust from the iteration so classification sees clean real parts.
        for (auto& v : out) {
            if (std::abs(v.imag()) < 1e-10) v = C(v.real(), 0.0);
        }
    }
    std::sort(out.begin(), out.end(), [](C lhs, C rhs) {
        if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
        return lhs.imag() < rhs.imag();
    });
    return out;
}

}  // namespace qns
