#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <framekit/framekit.hpp>

namespace fktest {

using framekit::cplx;
using framekit::Matrix;
using framekit::Vector;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }

    template <framekit::Scalar T>
    T scalar() {
        if constexpr (framekit::is_complex_v<T>) {
            return {normal(), normal()};
        } else {
            return normal();
        }
    }

    template <framekit::Scalar T>
    Vector<T> vector(std::size_t n) {
        Vector<T> v(n);
        for (auto& x : v) {
            x = scalar<T>();
        }
        return v;
    }

    std::vector<double> observable(std::size_t n, double lo = -1.0, double hi = 1.0) {
        std::vector<double> f(n);
        for (auto& x : f) {
            x = uniform(lo, hi);
        }
        return f;
    }

    template <framekit::Scalar T>
    Matrix<T> hermitian(std::size_t n) {
        Matrix<T> a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = scalar<T>();
            }
        }
        return a + a.adjoint();
    }

    /// Orthonormal columns phi_1..phi_n in K^m via Gram-Schmidt on Gaussian vectors.
    template <framekit::Scalar T>
    std::vector<Vector<T>> orthonormal_system(std::size_t m, std::size_t n) {
        std::vector<Vector<T>> phi;
        while (phi.size() < n) {
            auto v = vector<T>(m);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : phi) {
                    const T c = framekit::dot(q, v);
                    v = framekit::axpy(-c, q, std::move(v));
                }
            }
            const double len = framekit::norm(v);
            if (len > 1e-6) {
                phi.push_back(framekit::scaled(v, T(1.0 / len)));
            }
        }
        return phi;
    }

    /// Random Parseval frame of m vectors in K^n, by projecting the canonical basis.
    template <framekit::Scalar T>
    framekit::Frame<T> parseval_frame(std::size_t m, std::size_t n) {
        return framekit::from_projection(orthonormal_system<T>(m, n));
    }

private:
    std::mt19937_64 gen_;
};

template <framekit::Scalar T>
double max_diff(const Matrix<T>& a, const Matrix<T>& b) {
    return framekit::max_abs(a - b);
}

template <typename A, typename B>
double max_diff(const std::vector<A>& a, const std::vector<B>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return a.size() == b.size() ? worst : INFINITY;
}

inline double parseval_residual(const framekit::NormalizedFrame<cplx>& nf) {
    return framekit::is_parseval(framekit::to_frame(nf)).residual;
}

} // namespace fktest
