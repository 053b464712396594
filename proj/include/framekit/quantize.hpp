#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "frames.hpp"
#include "numlin.hpp"

namespace framekit {

/// Real function on the ordered point set X = {a_1, ..., a_M}.
using Observable = std::vector<double>;

template <Scalar T>
struct QuantizationResult {
    Matrix<T> op;                      ///< A_f in the orthonormal basis of H
    std::vector<double> lower_symbol;  ///< <u_k|A_f|u_k>
    std::vector<double> spectrum;      ///< eigenvalues of A_f, ascending
    double classical_avg = 0.0;        ///< sum kappa_i f(a_i) / N
};

namespace detail {

template <Scalar T>
void check_observable(const NormalizedFrame<T>& nf, const Observable& f) {
    if (f.size() != nf.size()) {
        throw Error(ErrorCode::DimMismatch, "observable length differs from the number of frame vectors");
    }
}

inline std::size_t mod_index(long long i, std::size_t n) {
    const long long m = static_cast<long long>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

inline cplx unit_root(double numerator, double denominator) {
    const double a = 2.0 * std::numbers::pi * numerator / denominator;
    return {std::cos(a), std::sin(a)};
}

} // namespace detail

/// A_f = sum_i kappa_i f(a_i) |u_i><u_i|
template <Scalar T>
Matrix<T> quantized_operator(const NormalizedFrame<T>& nf, const Observable& f) {
    detail::check_observable(nf, f);
    const std::size_t n = nf.dim();
    Matrix<T> a(n, n);
    for (std::size_t i = 0; i < nf.size(); ++i) {
        const double c = nf.weights()[i] * f[i];
        const auto& u = nf[i];
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t s = 0; s < n; ++s) {
                a(r, s) += c * u[r] * conj(u[s]);
            }
        }
    }
    return a;
}

template <Scalar T>
double expectation(const Matrix<T>& a, const Vector<T>& u) {
    return std::real(dot(u, a * u));
}

/// Lower symbol computed from the operator: f_check(a_k) = <u_k|A_f|u_k>.
template <Scalar T>
std::vector<double> lower_symbol(const NormalizedFrame<T>& nf, const Observable& f) {
    const auto a = quantized_operator(nf, f);
    std::vector<double> out(nf.size());
    for (std::size_t k = 0; k < nf.size(); ++k) {
        out[k] = expectation(a, nf[k]);
    }
    return out;
}

template <Scalar T>
double classical_average(const NormalizedFrame<T>& nf, const Observable& f) {
    detail::check_observable(nf, f);
    double s = 0.0;
    for (std::size_t i = 0; i < nf.size(); ++i) {
        s += nf.weights()[i] * f[i];
    }
    return s / static_cast<double>(nf.dim());
}

template <Scalar T>
QuantizationResult<T> quantize(const NormalizedFrame<T>& nf, const Observable& f) {
    QuantizationResult<T> r;
    r.op = quantized_operator(nf, f);
    r.lower_symbol.resize(nf.size());
    for (std::size_t k = 0; k < nf.size(); ++k) {
        r.lower_symbol[k] = expectation(r.op, nf[k]);
    }
    r.spectrum = hermitian_eig(r.op).values;
    r.classical_avg = classical_average(nf, f);
    return r;
}

/// ||f_check - P f||_inf, with f_check taken from the operator and P from the overlaps.
template <Scalar T>
double lower_symbol_matrix_identity_check(const NormalizedFrame<T>& nf, const Observable& f) {
    const auto direct = lower_symbol(nf, f);
    const auto sp = stochastic_profile(nf);
    const auto pf = sp.transition * f;
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        worst = std::max(worst, std::abs(direct[k] - pf[k]));
    }
    return worst;
}

/// P^k f, the k-th iterated lower symbol.
template <Scalar T>
Observable iterate_lower_symbol(const NormalizedFrame<T>& nf, const Observable& f, unsigned k) {
    detail::check_observable(nf, f);
    return mat_apply_pow(stochastic_profile(nf).transition, f, k);
}

/// Rows P^1 f, ..., P^k f.
template <Scalar T>
std::vector<Observable> iterate_trace(const NormalizedFrame<T>& nf, const Observable& f, unsigned k) {
    detail::check_observable(nf, f);
    const auto p = stochastic_profile(nf).transition;
    std::vector<Observable> rows;
    rows.reserve(k);
    Observable cur = f;
    for (unsigned i = 0; i < k; ++i) {
        cur = p * cur;
        rows.push_back(cur);
    }
    return rows;
}

struct ClassicalDistance {
    double zeta = 0.0;               ///< 1 - min kappa
    double bound_stochastic = 0.0;   ///< 2 zeta ||f||_inf
    double bound_oscillation = 0.0;  ///< max_{i,k} |f(a_k) - f(a_i)|
    double actual = 0.0;             ///< ||f_check - f||_inf
    double identity_minus_p = 0.0;   ///< ||I - P||_inf computed from the matrix
};

template <Scalar T>
ClassicalDistance classical_distance_bounds(const NormalizedFrame<T>& nf, const Observable& f) {
    detail::check_observable(nf, f);
    const auto sp = stochastic_profile(nf);
    ClassicalDistance d;
    d.zeta = sp.zeta;
    const double fmax = max_abs(f);
    d.bound_stochastic = 2.0 * sp.zeta * fmax;
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    d.bound_oscillation = *hi - *lo;
    const auto check = lower_symbol(nf, f);
    for (std::size_t k = 0; k < f.size(); ++k) {
        d.actual = std::max(d.actual, std::abs(check[k] - f[k]));
    }
    d.identity_minus_p = inf_norm(Matrix<double>::identity(f.size()) - sp.transition);
    return d;
}

/// <u_j|[A_f, A_g]|u_j> for every j, from the operators.
template <Scalar T>
std::vector<cplx> commutator_lower_symbol(const NormalizedFrame<T>& nf, const Observable& f, const Observable& g) {
    const auto af = quantized_operator(nf, f);
    const auto ag = quantized_operator(nf, g);
    const auto c = af * ag - ag * af;
    std::vector<cplx> out(nf.size());
    for (std::size_t j = 0; j < nf.size(); ++j) {
        out[j] = cplx(dot(nf[j], c * nf[j]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frames from the discrete Fourier basis of l^2(Z_M).

/// u_j = N^{-1/2} sum_{k<N} exp(2 pi i j k / M) phi_k, written in the phi-basis; weights N/M.
inline NormalizedFrame<cplx> dft_frame(std::size_t m, std::size_t n) {
    if (n < 1 || n > m) {
        throw Error(ErrorCode::BadDims, "DFT frame needs 1 <= N <= M");
    }
    std::vector<Vector<cplx>> u(m, Vector<cplx>(n));
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            u[j][k] = s * detail::unit_root(static_cast<double>((j * k) % m), static_cast<double>(m));
        }
    }
    return NormalizedFrame<cplx>(n, std::move(u), std::vector<double>(m, double(n) / double(m)));
}

/// Closed-form overlap <u_j|u_k> of the DFT frame.
inline cplx dft_overlap(std::size_t m, std::size_t n, long long j, long long k) {
    const long long d = k - j;
    if (d % static_cast<long long>(m) == 0) {
        return 1.0;
    }
    const double pi = std::numbers::pi;
    const double x = static_cast<double>(d);
    const cplx phase = std::polar(1.0, pi * x * (static_cast<double>(n) - 1.0) / static_cast<double>(m));
    return phase * std::sin(static_cast<double>(n) * pi * x / static_cast<double>(m)) /
           (static_cast<double>(n) * std::sin(pi * x / static_cast<double>(m)));
}

/// <phi_p|A_f|phi_q> = (1/M) sum_k exp(2 pi i k (p-q)/M) f(k), by direct summation.
template <typename V>
cplx dft_matrix_element(const std::vector<V>& f, long long p, long long q) {
    const std::size_t m = f.size();
    if (m == 0) {
        throw Error(ErrorCode::EmptyInput, "empty observable");
    }
    if (p < 0 || q < 0 || static_cast<std::size_t>(p) >= m || static_cast<std::size_t>(q) >= m) {
        throw Error(ErrorCode::IndexRange, "matrix element index out of range");
    }
    cplx acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        acc += detail::unit_root(static_cast<double>(detail::mod_index(static_cast<long long>(k) * (p - q), m)),
                                 static_cast<double>(m)) *
               cplx(f[k]);
    }
    return acc / static_cast<double>(m);
}

/// Closed form of the matrix element for f(k) = a^k.
inline cplx dft_element_power(double a, std::size_t m, long long d) {
    const cplx w = detail::unit_root(static_cast<double>(d), static_cast<double>(m));
    return (1.0 - std::pow(a, static_cast<double>(m))) / (static_cast<double>(m) * (1.0 - a * w));
}

/// Closed form of the matrix element for f(k) = binom(M-1, k).
inline cplx dft_element_binomial(std::size_t m, long long d) {
    const cplx w = detail::unit_root(static_cast<double>(d), static_cast<double>(m));
    return std::pow(1.0 + w, static_cast<double>(m - 1)) / static_cast<double>(m);
}

/// Closed form of the matrix element for f(k) = k.
inline cplx dft_element_linear(std::size_t m, long long d) {
    if (d % static_cast<long long>(m) == 0) {
        return (static_cast<double>(m) - 1.0) / 2.0;
    }
    return 1.0 / (detail::unit_root(static_cast<double>(d), static_cast<double>(m)) - 1.0);
}

/// Physicists' Hermite polynomial H_j(x) by the three-term recurrence.
inline double hermite(unsigned j, double x) {
    double h0 = 1.0;
    if (j == 0) {
        return h0;
    }
    double h1 = 2.0 * x;
    for (unsigned k = 1; k < j; ++k) {
        const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

/// f_j(k) = sum_{|l| <= L} exp(-pi (lM+k)^2 / M) H_j(sqrt(2 pi / M) (lM+k)).
/// An eigenvector of the unitary DFT with eigenvalue i^j.
inline std::vector<double> hermite_dft_eigenfunction(std::size_t m, unsigned j, int truncation = 10) {
    if (truncation < 1) {
        throw Error(ErrorCode::OutOfRange, "truncation must be at least 1");
    }
    if (j > 8) {
        throw Error(ErrorCode::OutOfRange, "Hermite degree limited to 8");
    }
    if (m == 0) {
        throw Error(ErrorCode::BadDims, "M must be positive");
    }
    const double md = static_cast<double>(m);
    const double scale = std::sqrt(2.0 * std::numbers::pi / md);
    std::vector<double> out(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        for (int l = -truncation; l <= truncation; ++l) {
            const double x = l * md + static_cast<double>(k);
            out[k] += std::exp(-std::numbers::pi * x * x / md) * hermite(j, scale * x);
        }
    }
    return out;
}

/// (1/sqrt(M)) sum_p exp(2 pi i p k / M) f(p)
template <typename V>
std::vector<cplx> unitary_dft(const std::vector<V>& f) {
    const std::size_t m = f.size();
    std::vector<cplx> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        cplx acc = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            acc += detail::unit_root(static_cast<double>((p * k) % m), static_cast<double>(m)) * cplx(f[p]);
        }
        out[k] = acc / std::sqrt(static_cast<double>(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weyl-Heisenberg coherent frames on Z_n x Z_n. Point (alpha, beta) has index alpha*n + beta.

inline std::size_t phase_space_index(long long alpha, long long beta, std::size_t n) {
    return detail::mod_index(alpha, n) * n + detail::mod_index(beta, n);
}

/// Shift A|j> = |j-1>.
inline Matrix<cplx> weyl_shift(std::size_t n) {
    Matrix<cplx> a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        a(detail::mod_index(static_cast<long long>(j) - 1, n), j) = 1.0;
    }
    return a;
}

/// Clock B|j> = exp(2 pi i j / n)|j>.
inline Matrix<cplx> weyl_clock(std::size_t n) {
    Matrix<cplx> b(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        b(j, j) = detail::unit_root(static_cast<double>(j), static_cast<double>(n));
    }
    return b;
}

struct WeylFrame {
    NormalizedFrame<cplx> frame;
    bool degenerate_fiducial = false; ///< some nontrivial translate equals the fiducial up to phase
    double resolution_residual = 0.0;
};

/// |alpha,beta> = sum_k exp(2 pi i beta k / n) mu_{k+alpha} |k>, weights 1/n.
inline WeylFrame weyl_frame(std::size_t n, const Vector<cplx>& fiducial) {
    if (n < 1 || fiducial.size() != n) {
        throw Error(ErrorCode::BadDims, "fiducial must have n entries");
    }
    if (std::abs(norm(fiducial) - 1.0) > 1e-12) {
        throw Error(ErrorCode::NotUnit, "fiducial vector must be a unit vector");
    }
    std::vector<Vector<cplx>> v(n * n, Vector<cplx>(n));
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
        for (std::size_t beta = 0; beta < n; ++beta) {
            auto& u = v[alpha * n + beta];
            for (std::size_t k = 0; k < n; ++k) {
                u[k] = detail::unit_root(static_cast<double>((beta * k) % n), static_cast<double>(n)) *
                       fiducial[(k + alpha) % n];
            }
        }
    }
    bool degenerate = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(std::abs(dot(v[0], v[i])) - 1.0) <= 1e-12) {
            degenerate = true;
        }
    }
    const std::vector<double> weights(n * n, 1.0 / static_cast<double>(n));
    const auto s = detail::sum_of_outer_products(n, v, &weights);
    const double residual = frobenius_norm(s - Matrix<cplx>::identity(n));
    return WeylFrame{NormalizedFrame<cplx>(n, std::move(v), weights), degenerate, residual};
}

/// Example fiducials: (3/5, 4/5) for n = 2, (1,1,0)/sqrt(2) for n = 3.
inline Vector<cplx> weyl_example_fiducial(std::size_t n) {
    if (n == 2) {
        return {0.6, 0.8};
    }
    if (n == 3) {
        const double s = 1.0 / std::sqrt(2.0);
        return {s, s, 0.0};
    }
    throw Error(ErrorCode::BadDims, "worked-example fiducials exist for n = 2 and n = 3 only");
}

/// Lower symbols of the n = 2 frame with fiducial (3/5, 4/5), written out in
/// closed form. Input and output are ordered (0,0), (0,1), (1,0), (1,1).
inline std::array<double, 4> weyl2_lower_symbols(const std::array<double, 4>& f) {
    constexpr double a = (7.0 / 25.0) * (7.0 / 25.0);
    constexpr double b = (24.0 / 25.0) * (24.0 / 25.0);
    const double f00 = f[0], f01 = f[1], f10 = f[2], f11 = f[3];
    return {0.5 * (f00 + f01 * a + f10 * b), 0.5 * (f00 * a + f01 + f11 * b), 0.5 * (f00 * b + f10 + f11 * a),
            0.5 * (f01 * b + f10 * a + f11)};
}

// ---------------------------------------------------------------------------
// Tight-binding crystal Z_N x Z_N and the nearest-neighbour cluster frame.
// Lattice site / wave vector (a, b) has index a*N + b.

inline constexpr std::array<std::array<int, 2>, 4> kCluster{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

/// |k1,k2> = (1/2) sum_{c in cluster} exp(2 pi i (k1 c1 + k2 c2)/N) |delta_c>, in C^4; weights 4/N^2.
inline NormalizedFrame<cplx> cluster_frame(std::size_t n) {
    if (n < 3) {
        throw Error(ErrorCode::BadDims, "cluster frame needs N >= 3");
    }
    const long long nn = static_cast<long long>(n);
    std::vector<Vector<cplx>> v(n * n, Vector<cplx>(4));
    for (long long k1 = 0; k1 < nn; ++k1) {
        for (long long k2 = 0; k2 < nn; ++k2) {
            auto& u = v[k1 * n + k2];
            for (std::size_t c = 0; c < 4; ++c) {
                const long long e = k1 * kCluster[c][0] + k2 * kCluster[c][1];
                u[c] = 0.5 * detail::unit_root(static_cast<double>(detail::mod_index(e, n)), static_cast<double>(n));
            }
        }
    }
    const double w = 4.0 / static_cast<double>(n * n);
    return NormalizedFrame<cplx>(4, std::move(v), std::vector<double>(n * n, w));
}

/// Closed-form overlap (1/2)[cos(2 pi (k1'-k1)/N) + cos(2 pi (k2'-k2)/N)].
inline double cluster_overlap(std::size_t n, long long k1, long long k2, long long k1p, long long k2p) {
    const double c = 2.0 * std::numbers::pi / static_cast<double>(n);
    return 0.5 * (std::cos(c * static_cast<double>(k1p - k1)) + std::cos(c * static_cast<double>(k2p - k2)));
}

/// Nearest-neighbour sum operator on l^2(Z_N x Z_N) with periodic boundary.
inline Matrix<double> tight_binding_hamiltonian(std::size_t n) {
    Matrix<double> h(n * n, n * n);
    const long long nn = static_cast<long long>(n);
    for (long long a = 0; a < nn; ++a) {
        for (long long b = 0; b < nn; ++b) {
            const std::size_t row = a * n + b;
            for (const auto& c : kCluster) {
                h(row, detail::mod_index(a + c[0], n) * n + detail::mod_index(b + c[1], n)) += 1.0;
            }
        }
    }
    return h;
}

/// psi_k(n1,n2) = exp(2 pi i (k1 n1 + k2 n2)/N)
inline Vector<cplx> bloch_wave(std::size_t n, long long k1, long long k2) {
    Vector<cplx> psi(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const long long e = k1 * static_cast<long long>(a) + k2 * static_cast<long long>(b);
            psi[a * n + b] = detail::unit_root(static_cast<double>(detail::mod_index(e, n)), static_cast<double>(n));
        }
    }
    return psi;
}

/// E_k = 2 cos(2 pi k1/N) + 2 cos(2 pi k2/N)
inline double band_energy(std::size_t n, long long k1, long long k2) {
    const double c = 2.0 * std::numbers::pi / static_cast<double>(n);
    return 2.0 * std::cos(c * static_cast<double>(k1)) + 2.0 * std::cos(c * static_cast<double>(k2));
}

/// (1/N^2) sum_{k'} f(k') [cos(2 pi (k1'-k1)/N) + cos(2 pi (k2'-k2)/N)]^2
inline Observable cluster_lower_symbol(std::size_t n, const Observable& f) {
    if (f.size() != n * n) {
        throw Error(ErrorCode::DimMismatch, "observable must have N^2 entries");
    }
    const long long nn = static_cast<long long>(n);
    Observable out(n * n, 0.0);
    for (long long k1 = 0; k1 < nn; ++k1) {
        for (long long k2 = 0; k2 < nn; ++k2) {
            double acc = 0.0;
            for (long long q1 = 0; q1 < nn; ++q1) {
                for (long long q2 = 0; q2 < nn; ++q2) {
                    const double c = 2.0 * cluster_overlap(n, k1, k2, q1, q2);
                    acc += f[q1 * n + q2] * c * c;
                }
            }
            out[k1 * n + k2] = acc / static_cast<double>(n * n);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simplex frame: n+1 unit vectors in the hyperplane x_0 + ... + x_n = 0.

/// Normalized projections of the canonical basis of R^{n+1}, written in the
/// orthonormal hyperplane basis b_m = (1,...,1,-m,0,...,0)/sqrt(m(m+1)), m = 1..n.
inline NormalizedFrame<double> simplex_frame(std::size_t n) {
    if (n < 1) {
        throw Error(ErrorCode::BadDims, "simplex frame needs n >= 1");
    }
    const double nd = static_cast<double>(n);
    const double inv_norm = 1.0 / std::sqrt(nd / (nd + 1.0));
    std::vector<Vector<double>> u(n + 1, Vector<double>(n, 0.0));
    for (std::size_t m = 1; m <= n; ++m) {
        const double md = static_cast<double>(m);
        const double s = 1.0 / std::sqrt(md * (md + 1.0));
        // <b_m|pi e_k> = <b_m|e_k> since b_m is orthogonal to (1,...,1).
        for (std::size_t k = 0; k < m; ++k) {
            u[k][m - 1] = s * inv_norm;
        }
        u[m][m - 1] = -md * s * inv_norm;
    }
    return NormalizedFrame<double>(n, std::move(u), std::vector<double>(n + 1, nd / (nd + 1.0)));
}

/// ((n-1)/n) f(j) + (1/(n(n+1))) sum_k f(k)
inline Observable simplex_lower_symbol(std::size_t n, const Observable& f) {
    if (f.size() != n + 1) {
        throw Error(ErrorCode::DimMismatch, "observable must have n+1 entries");
    }
    const double nd = static_cast<double>(n);
    double total = 0.0;
    for (double x : f) {
        total += x;
    }
    Observable out(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        out[j] = (nd - 1.0) / nd * f[j] + total / (nd * (nd + 1.0));
    }
    return out;
}

/// Closed form of the commutator lower symbol,
/// -(1/(n(n+1)^2)) sum_{k != j} sum_{l != j} (f(k) g(l) - f(l) g(k)).
inline Observable simplex_commutator_symbol(std::size_t n, const Observable& f, const Observable& g) {
    if (f.size() != n + 1 || g.size() != n + 1) {
        throw Error(ErrorCode::DimMismatch, "observables must have n+1 entries");
    }
    const double nd = static_cast<double>(n);
    Observable out(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t l = 0; l <= n; ++l) {
                if (k != j && l != j) {
                    acc += f[k] * g[l] - f[l] * g[k];
                }
            }
        }
        out[j] = -acc / (nd * (nd + 1.0) * (nd + 1.0));
    }
    return out;
}

} // namespace framekit
