#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numlin.hpp"

namespace framekit {

/// Minimum frame-operator eigenvalue below which a family is declared non-spanning.
inline constexpr double kSpanTolerance = 1e-10;
/// Default residual tolerance for Parseval checks.
inline constexpr double kParsevalTolerance = 1e-9;

namespace detail {

template <Scalar T>
Matrix<T> sum_of_outer_products(std::size_t dim, const std::vector<Vector<T>>& vectors,
                                const std::vector<double>* weights = nullptr) {
    Matrix<T> s(dim, dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto& w = vectors[i];
        const double k = weights ? (*weights)[i] : 1.0;
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) {
                s(a, b) += k * w[a] * conj(w[b]);
            }
        }
    }
    return s;
}

template <Scalar T>
void check_vectors(std::size_t dim, const std::vector<Vector<T>>& vectors) {
    if (dim == 0) {
        throw Error(ErrorCode::BadDims, "frame dimension must be positive");
    }
    if (vectors.size() < dim) {
        throw Error(ErrorCode::NotAFrame, "fewer vectors than the ambient dimension");
    }
    for (const auto& v : vectors) {
        if (v.size() != dim) {
            throw Error(ErrorCode::DimMismatch, "frame vector has the wrong dimension");
        }
        for (const auto& x : v) {
            if (!is_finite(x)) {
                throw Error(ErrorCode::ParseError, "frame vector has a non-finite entry");
            }
        }
    }
}

} // namespace detail

/// Ordered family of M >= N vectors spanning K^N.
template <Scalar T>
class Frame {
public:
    Frame(std::size_t dim, std::vector<Vector<T>> vectors)
        : dim_(dim), vectors_(std::move(vectors)) {
        detail::check_vectors(dim_, vectors_);
        const auto eig = hermitian_eig(detail::sum_of_outer_products(dim_, vectors_));
        if (eig.values.front() <= kSpanTolerance) {
            throw Error(ErrorCode::NotAFrame, "vectors do not span the ambient space");
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    const std::vector<Vector<T>>& vectors() const noexcept { return vectors_; }
    const Vector<T>& operator[](std::size_t i) const { return vectors_[i]; }

private:
    std::size_t dim_;
    std::vector<Vector<T>> vectors_;
};

/// Unit vectors u_i with positive weights kappa_i such that sum kappa_i |u_i><u_i| = I.
template <Scalar T>
class NormalizedFrame {
public:
    NormalizedFrame(std::size_t dim, std::vector<Vector<T>> unit_vectors, std::vector<double> weights)
        : dim_(dim), vectors_(std::move(unit_vectors)), weights_(std::move(weights)) {
        detail::check_vectors(dim_, vectors_);
        if (weights_.size() != vectors_.size()) {
            throw Error(ErrorCode::DimMismatch, "one weight per vector is required");
        }
        for (std::size_t i = 0; i < vectors_.size(); ++i) {
            if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
                throw Error(ErrorCode::NotParseval, "weights must be positive");
            }
            if (std::abs(norm(vectors_[i]) - 1.0) > 1e-12) {
                throw Error(ErrorCode::NotUnit, "normalized frame vector is not a unit vector");
            }
        }
        const auto s = detail::sum_of_outer_products(dim_, vectors_, &weights_);
        if (frobenius_norm(s - Matrix<T>::identity(dim_)) > kParsevalTolerance) {
            throw Error(ErrorCode::NotParseval, "weighted vectors do not resolve the identity");
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    const std::vector<Vector<T>>& vectors() const noexcept { return vectors_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const Vector<T>& operator[](std::size_t i) const { return vectors_[i]; }

    double weight_sum() const {
        double s = 0.0;
        for (double k : weights_) {
            s += k;
        }
        return s;
    }

private:
    std::size_t dim_;
    std::vector<Vector<T>> vectors_;
    std::vector<double> weights_;
};

struct FrameBounds {
    double lower;
    double upper;
};

struct ParsevalCheck {
    bool parseval;
    double residual; ///< ||S - I||_F
};

/// Stochastic data attached to a normalized Parseval frame.
struct StochasticProfile {
    Matrix<double> overlap;     ///< U_ij = |<u_i|u_j>|^2
    Matrix<double> weights;     ///< K = diag(kappa)
    Matrix<double> transition;  ///< P = U K, row-stochastic
    double perron_radius = 1.0; ///< r = spectral radius of U
    double eta = 0.0;           ///< r - 1
    double zeta = 0.0;          ///< 1 - min kappa
    std::vector<double> stationary;     ///< kappa / N
    std::vector<double> perron_vector;  ///< unit, nonnegative eigenvector of U for r
    double transition_radius = 1.0;     ///< spectral radius of P via K^{1/2} U K^{1/2}
    bool has_orthogonal_pair = false;   ///< some U_ij == 0 (Perron simplicity not guaranteed)
};

template <Scalar T>
Matrix<T> frame_operator(const Frame<T>& f) {
    return detail::sum_of_outer_products(f.dim(), f.vectors());
}

template <Scalar T>
FrameBounds frame_bounds(const Frame<T>& f) {
    const auto eig = hermitian_eig(frame_operator(f));
    if (eig.values.front() <= kSpanTolerance) {
        throw Error(ErrorCode::NotAFrame, "vectors do not span the ambient space");
    }
    return {eig.values.front(), eig.values.back()};
}

template <Scalar T>
ParsevalCheck is_parseval(const Frame<T>& f, double tol = kParsevalTolerance) {
    const double residual = frobenius_norm(frame_operator(f) - Matrix<T>::identity(f.dim()));
    return {residual <= tol, residual};
}

/// Multiplies every vector by `factor`.
template <Scalar T>
Frame<T> rescaled(const Frame<T>& f, double factor) {
    std::vector<Vector<T>> out;
    out.reserve(f.size());
    for (const auto& w : f.vectors()) {
        out.push_back(scaled(w, T(factor)));
    }
    return Frame<T>(f.dim(), std::move(out));
}

/// A-tight frame rescaled by 1/sqrt(A). Throws NotParseval if the frame is not tight.
template <Scalar T>
Frame<T> parseval_rescale(const Frame<T>& f, double tol = 1e-9) {
    const auto b = frame_bounds(f);
    if (b.upper - b.lower > tol * b.upper) {
        throw Error(ErrorCode::NotParseval, "frame is not tight");
    }
    return rescaled(f, 1.0 / std::sqrt(0.5 * (b.lower + b.upper)));
}

template <Scalar T>
NormalizedFrame<T> normalize(const Frame<T>& f, double tol = kParsevalTolerance) {
    if (!is_parseval(f, tol).parseval) {
        throw Error(ErrorCode::NotParseval, "normalization requires a Parseval frame");
    }
    std::vector<Vector<T>> units;
    std::vector<double> kappa;
    units.reserve(f.size());
    kappa.reserve(f.size());
    for (const auto& w : f.vectors()) {
        const double k = norm2(w);
        if (std::sqrt(k) <= tol) {
            throw Error(ErrorCode::ZeroVector, "Parseval frame contains a zero vector");
        }
        units.push_back(scaled(w, T(1.0 / std::sqrt(k))));
        kappa.push_back(k);
    }
    return NormalizedFrame<T>(f.dim(), std::move(units), std::move(kappa));
}

/// w_i = sqrt(kappa_i) u_i.
template <Scalar T>
Frame<T> to_frame(const NormalizedFrame<T>& nf) {
    std::vector<Vector<T>> out;
    out.reserve(nf.size());
    for (std::size_t i = 0; i < nf.size(); ++i) {
        out.push_back(scaled(nf[i], T(std::sqrt(nf.weights()[i]))));
    }
    return Frame<T>(nf.dim(), std::move(out));
}

/// Parseval frame obtained by projecting the canonical basis of K^M onto
/// span{phi_j}, written in phi-coordinates: the j-th coordinate of w_i is <phi_j|e_i>.
template <Scalar T>
Frame<T> from_projection(const std::vector<Vector<T>>& phi, double tol = 1e-10) {
    if (phi.empty()) {
        throw Error(ErrorCode::BadDims, "empty orthonormal system");
    }
    const std::size_t m = phi.front().size();
    for (std::size_t j = 0; j < phi.size(); ++j) {
        if (phi[j].size() != m) {
            throw Error(ErrorCode::DimMismatch, "orthonormal system of mixed lengths");
        }
        for (std::size_t k = 0; k < phi.size(); ++k) {
            const T expected = (j == k) ? T(1.0) : T{};
            if (std::abs(dot(phi[j], phi[k]) - expected) > tol) {
                throw Error(ErrorCode::NotOrthonormal, "projection basis is not orthonormal");
            }
        }
    }
    std::vector<Vector<T>> w(m, Vector<T>(phi.size()));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < phi.size(); ++j) {
            w[i][j] = conj(phi[j][i]);
        }
    }
    return Frame<T>(phi.size(), std::move(w));
}

/// Coefficients (<w_1|v>, ..., <w_M|v>).
template <Scalar T>
Vector<T> analysis(const Frame<T>& f, const Vector<T>& v) {
    if (v.size() != f.dim()) {
        throw Error(ErrorCode::DimMismatch, "analysis input has the wrong dimension");
    }
    Vector<T> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = dot(f[i], v);
    }
    return out;
}

/// sum_i x_i w_i.
template <Scalar T>
Vector<T> synthesis(const Frame<T>& f, const Vector<T>& x) {
    if (x.size() != f.size()) {
        throw Error(ErrorCode::DimMismatch, "synthesis input has the wrong length");
    }
    Vector<T> out(f.dim());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out = axpy(x[i], f[i], std::move(out));
    }
    return out;
}

/// Identification of K^N with an N-dimensional subspace of the superspace K^M.
template <Scalar T>
struct NaimarkEmbedding {
    std::vector<Vector<T>> phi; ///< phi_j = (<w_1|j>, ..., <w_M|j>), orthonormal in K^M
    Matrix<T> projector;        ///< pi = sum_j |phi_j><phi_j|, entries <w_i|w_k>
    Frame<T> frame;

    /// v -> v~ = (<w_1|v>, ..., <w_M|v>)
    Vector<T> lift(const Vector<T>& v) const { return analysis(frame, v); }

    /// w~_i = pi e_i
    Vector<T> image(std::size_t i) const { return projector.column(i); }
};

template <Scalar T>
Matrix<T> gram_matrix(const Frame<T>& f) {
    Matrix<T> g(f.size(), f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t k = 0; k < f.size(); ++k) {
            g(i, k) = dot(f[i], f[k]);
        }
    }
    return g;
}

template <Scalar T>
NaimarkEmbedding<T> naimark_embed(const Frame<T>& f, double tol = kParsevalTolerance) {
    if (!is_parseval(f, tol).parseval) {
        throw Error(ErrorCode::NotParseval, "superspace embedding requires a Parseval frame");
    }
    std::vector<Vector<T>> phi(f.dim(), Vector<T>(f.size()));
    for (std::size_t j = 0; j < f.dim(); ++j) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            phi[j][i] = conj(f[i][j]);
        }
    }
    return NaimarkEmbedding<T>{std::move(phi), gram_matrix(f), f};
}

/// Orthonormal basis (as columns) of the kernel of pi, i.e. of the
/// orthocomplement of the embedded space. Each column is phase-normalized.
template <Scalar T>
Matrix<T> complement_basis(const Frame<T>& f, double tol = kParsevalTolerance) {
    if (!is_parseval(f, tol).parseval) {
        throw Error(ErrorCode::NotParseval, "complementary frame requires a Parseval frame");
    }
    if (f.size() == f.dim()) {
        throw Error(ErrorCode::NoComplement, "frame is a basis; the complement is trivial");
    }
    const auto eig = hermitian_eig(gram_matrix(f));
    const std::size_t k = f.size() - f.dim();
    std::vector<Vector<T>> cols;
    cols.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        cols.push_back(canonical_phase(eig.vectors.column(c), 1e-9));
    }
    return Matrix<T>::from_columns(cols);
}

/// Projections of the canonical basis onto the orthocomplement, expressed in
/// the basis returned by complement_basis().
template <Scalar T>
Frame<T> complementary_frame(const Frame<T>& f, double tol = kParsevalTolerance) {
    const Matrix<T> basis = complement_basis(f, tol);
    std::vector<Vector<T>> out(f.size(), Vector<T>(basis.cols()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t k = 0; k < basis.cols(); ++k) {
            out[i][k] = conj(basis(i, k));
        }
    }
    return Frame<T>(basis.cols(), std::move(out));
}

/// L_ji = sqrt(kappa_i) <j|u_i>; satisfies L L^dagger = I.
template <Scalar T>
Matrix<T> synthesis_matrix(const NormalizedFrame<T>& nf) {
    Matrix<T> l(nf.dim(), nf.size());
    for (std::size_t i = 0; i < nf.size(); ++i) {
        const double s = std::sqrt(nf.weights()[i]);
        for (std::size_t j = 0; j < nf.dim(); ++j) {
            l(j, i) = s * nf[i][j];
        }
    }
    return l;
}

/// U_ij = |<u_i|u_j>|^2
template <Scalar T>
Matrix<double> overlap_matrix(const NormalizedFrame<T>& nf) {
    const std::size_t m = nf.size();
    Matrix<double> u(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        u(i, i) = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            const double x = abs2(dot(nf[i], nf[j]));
            u(i, j) = x;
            u(j, i) = x;
        }
    }
    return u;
}

template <Scalar T>
StochasticProfile stochastic_profile(const NormalizedFrame<T>& nf) {
    const std::size_t m = nf.size();
    const auto& kappa = nf.weights();

    StochasticProfile sp;
    sp.overlap = overlap_matrix(nf);
    sp.weights = Matrix<double>::diagonal(kappa);
    sp.transition = sp.overlap * sp.weights;

    for (std::size_t i = 0; i < m && !sp.has_orthogonal_pair; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (sp.overlap(i, j) <= 1e-14) {
                sp.has_orthogonal_pair = true;
                break;
            }
        }
    }

    const auto eig = hermitian_eig(sp.overlap);
    sp.perron_radius = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    sp.eta = sp.perron_radius - 1.0;
    sp.perron_vector = canonical_phase(eig.vectors.column(m - 1));

    sp.zeta = 1.0 - *std::min_element(kappa.begin(), kappa.end());
    const double n = static_cast<double>(nf.dim());
    sp.stationary.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        sp.stationary[i] = kappa[i] / n;
    }

    // P = U K is similar to K^{1/2} U K^{1/2}, which is symmetric.
    Matrix<double> sym(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            sym(i, j) = std::sqrt(kappa[i]) * sp.overlap(i, j) * std::sqrt(kappa[j]);
        }
    }
    sp.transition_radius = spectral_radius_hermitian(sym);
    return sp;
}

} // namespace framekit
