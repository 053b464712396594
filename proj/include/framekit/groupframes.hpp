#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <deque>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "frames.hpp"
#include "numlin.hpp"

namespace framekit {

inline const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

/// Finite group given by orthogonal (or unitary) generator matrices.
template <Scalar T>
struct OrthogonalRep {
    std::vector<Matrix<T>> generators;
    bool relations_checked = false;

    std::size_t dim() const { return generators.empty() ? 0 : generators.front().rows(); }
};

/// Orbit of a seed vector; the frame is tight with constant M |seed|^2 / N.
template <Scalar T>
struct OrbitFrame {
    Frame<T> frame;
    Vector<T> seed;
    std::size_t group_order_traversed = 0; ///< size of the full orbit before any quotient
    bool quotient_by_scalar = false;
};

namespace detail {

template <Scalar T>
void check_unitary(const Matrix<T>& g) {
    if (!g.is_square()) {
        throw Error(ErrorCode::NotSquare, "generator must be square");
    }
    if (frobenius_norm(g.adjoint() * g - Matrix<T>::identity(g.rows())) > 1e-12) {
        throw Error(ErrorCode::NotOrthonormal, "generator is not orthogonal/unitary");
    }
}

template <Scalar T>
double word_defect(const Matrix<T>& m, unsigned power) {
    return frobenius_norm(matrix_power(m, power) - Matrix<T>::identity(m.rows()));
}

template <Scalar T>
bool contains_close(const std::vector<Vector<T>>& set, const Vector<T>& v, double tol) {
    for (const auto& u : set) {
        if (norm(u - v) <= tol) {
            return true;
        }
    }
    return false;
}

} // namespace detail

template <Scalar T>
OrthogonalRep<T> make_rep(std::vector<Matrix<T>> generators) {
    if (generators.empty()) {
        throw Error(ErrorCode::BadDims, "representation needs at least one generator");
    }
    for (const auto& g : generators) {
        detail::check_unitary(g);
        if (g.rows() != generators.front().rows()) {
            throw Error(ErrorCode::DimMismatch, "generators of different sizes");
        }
    }
    return OrthogonalRep<T>{std::move(generators), false};
}

/// Rotation of the plane by 2 pi / n; generates the cyclic group C_n.
inline OrthogonalRep<double> cyclic_rep(int n) {
    if (n < 3) {
        throw Error(ErrorCode::BadOrder, "cyclic group order must be at least 3");
    }
    const double a = 2.0 * std::numbers::pi / n;
    auto rep = make_rep<double>({Matrix<double>{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}}});
    rep.relations_checked = detail::word_defect(rep.generators[0], static_cast<unsigned>(n)) <= 1e-12;
    return rep;
}

/// Rotations g(a1,a2,a3) = (-a1,-a2,a3) and h(a1,a2,a3) = (a2,a3,a1).
inline OrthogonalRep<double> tetrahedral_rep() {
    Matrix<double> g{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
    Matrix<double> h{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    auto rep = make_rep<double>({g, h});
    rep.relations_checked = detail::word_defect(g, 2) <= 1e-12 && detail::word_defect(h, 3) <= 1e-12 &&
                            detail::word_defect(Matrix<double>(g * h), 3) <= 1e-12;
    return rep;
}

/// Five-fold rotation r and half-turn s leaving the icosahedron with
/// vertices +-(1,tau,0) and its cyclic relatives invariant.
inline OrthogonalRep<double> icosahedral_rep() {
    const double t = kGolden;
    Matrix<double> r{{(t - 1) / 2, -t / 2, 0.5},
                     {t / 2, 0.5, (t - 1) / 2},
                     {-0.5, (t - 1) / 2, t / 2}};
    Matrix<double> s{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
    auto rep = make_rep<double>({r, s});
    rep.relations_checked = detail::word_defect(r, 5) <= 1e-12 && detail::word_defect(s, 2) <= 1e-12 &&
                            detail::word_defect(Matrix<double>(r * s), 3) <= 1e-12;
    return rep;
}

/// Breadth-first closure of {g seed} under the generators.
///
/// Vectors closer than `dedup_tol` are identified. With `quotient_by_scalar`
/// only one vector per scalar-multiple class is kept, rotated so that its
/// first nonzero coordinate is real and positive; classes appear in the order
/// in which the traversal first reaches them.
template <Scalar T>
OrbitFrame<T> orbit_frame(const OrthogonalRep<T>& rep, const Vector<T>& seed, bool quotient_by_scalar = false,
                          double dedup_tol = 1e-9, std::size_t cap = 10000) {
    if (seed.size() != rep.dim()) {
        throw Error(ErrorCode::DimMismatch, "seed dimension differs from the representation");
    }
    if (norm(seed) <= dedup_tol) {
        throw Error(ErrorCode::ZeroSeed, "orbit seed must be nonzero");
    }

    std::vector<Vector<T>> orbit{seed};
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t idx = queue.front();
        queue.pop_front();
        for (const auto& g : rep.generators) {
            Vector<T> next = g * orbit[idx];
            if (!detail::contains_close(orbit, next, dedup_tol)) {
                if (orbit.size() >= cap) {
                    throw Error(ErrorCode::OrbitOverflow, "orbit exceeds the traversal cap");
                }
                orbit.push_back(std::move(next));
                queue.push_back(orbit.size() - 1);
            }
        }
    }

    const std::size_t full = orbit.size();
    std::vector<Vector<T>> vectors;
    if (quotient_by_scalar) {
        for (const auto& v : orbit) {
            auto rep_v = canonical_phase(v, dedup_tol);
            if (!detail::contains_close(vectors, rep_v, dedup_tol)) {
                vectors.push_back(std::move(rep_v));
            }
        }
    } else {
        vectors = std::move(orbit);
    }
    const std::size_t n = seed.size();
    return OrbitFrame<T>{Frame<T>(n, std::move(vectors)), seed, full, quotient_by_scalar};
}

// Frames written out literally.

inline Frame<double> honeycomb_frame() {
    const double a = std::sqrt(2.0 / 3.0);
    const double b = 1.0 / std::sqrt(6.0);
    const double c = 1.0 / std::sqrt(2.0);
    return Frame<double>(2, {{a, 0.0}, {-b, c}, {-b, -c}});
}

inline Frame<double> diamond_frame() {
    return Frame<double>(3, {{-0.5, 0.5, 0.5}, {0.5, -0.5, 0.5}, {0.5, 0.5, -0.5}, {-0.5, -0.5, -0.5}});
}

inline Frame<double> icosahedral6_frame() {
    const double t = kGolden;
    const double s = 1.0 / std::sqrt(2.0 * (t + 2.0));
    std::vector<Vector<double>> v{{1, t, 0}, {-1, t, 0}, {-t, 0, 1}, {0, -1, t}, {t, 0, 1}, {0, 1, t}};
    for (auto& x : v) {
        x = scaled(x, s);
    }
    return Frame<double>(3, std::move(v));
}

/// C_n(1,0): n unit vectors at angles 2 pi k / n. Tight with constant n/2.
inline Frame<double> cn_frame(int n) {
    if (n < 3) {
        throw Error(ErrorCode::BadOrder, "C_n frame requires n >= 3");
    }
    std::vector<Vector<double>> v;
    v.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        v.push_back({std::cos(a), std::sin(a)});
    }
    return Frame<double>(2, std::move(v));
}

/// Orthonormal basis of R^n.
inline Frame<double> orthonormal_frame(std::size_t n) {
    std::vector<Vector<double>> v(n, Vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        v[i][i] = 1.0;
    }
    return Frame<double>(n, std::move(v));
}

namespace detail {

/// Splits "cn8", "cn:8" or "cn(8)" into ("cn", "8").
inline std::pair<std::string_view, std::string_view> split_name(std::string_view name) {
    if (auto p = name.find_first_of(":("); p != std::string_view::npos) {
        auto arg = name.substr(p + 1);
        if (name[p] == '(') {
            if (arg.empty() || arg.back() != ')') {
                throw Error(ErrorCode::BadName, "unbalanced parenthesis in frame name");
            }
            arg.remove_suffix(1);
        }
        return {name.substr(0, p), arg};
    }
    std::size_t p = name.size();
    while (p > 0 && std::isdigit(static_cast<unsigned char>(name[p - 1]))) {
        --p;
    }
    return {name.substr(0, p), name.substr(p)};
}

inline int parse_int(std::string_view s) {
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::BadName, "expected an integer parameter, got '" + std::string(s) + "'");
    }
    return v;
}

} // namespace detail

/// Literal frames by name: honeycomb, diamond, icosahedral6, cn<n> (also cn:<n>, cn(<n>)).
inline Frame<double> named_frame(std::string_view name) {
    if (name == "honeycomb") {
        return honeycomb_frame();
    }
    if (name == "diamond") {
        return diamond_frame();
    }
    if (name == "icosahedral6") {
        return icosahedral6_frame();
    }
    const auto [base, arg] = detail::split_name(name);
    if (base == "cn" && !arg.empty()) {
        return cn_frame(detail::parse_int(arg));
    }
    throw Error(ErrorCode::BadName, "unknown frame name '" + std::string(name) + "'");
}

/// tau_n = f_{n+1} / f_n with f_0 = f_1 = 1.
inline double fibonacci_ratio(int n) {
    if (n < 1) {
        throw Error(ErrorCode::OutOfRange, "Fibonacci index must be >= 1");
    }
    double prev = 1.0;
    double cur = 1.0;
    for (int k = 1; k <= n; ++k) {
        const double next = prev + cur;
        prev = cur;
        cur = next;
    }
    return cur / prev;
}

/// Tetrahedral orbit T(1, tau_n, 0): a periodic approximant of the icosahedral frame.
inline Frame<double> fibonacci_frame(int n) {
    return orbit_frame(tetrahedral_rep(), Vector<double>{1.0, fibonacci_ratio(n), 0.0}).frame;
}

/// Tetrahedral orbit of (1-t)(1,2,0) + t(1,tau,0), t in [0,1].
inline Frame<double> deform_frame(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "deformation parameter must lie in [0,1]");
    }
    const Vector<double> seed{1.0, (1.0 - t) * 2.0 + t * kGolden, 0.0};
    return orbit_frame(tetrahedral_rep(), seed).frame;
}

} // namespace framekit
