#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <type_traits>
#include <vector>

#include "error.hpp"

namespace framekit {

using cplx = std::complex<double>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

/// Field of scalars a frame lives over: R (double) or C (complex<double>).
template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, cplx>;

template <Scalar T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <Scalar T>
inline T conj(T x) {
    if constexpr (is_complex_v<T>) {
        return std::conj(x);
    } else {
        return x;
    }
}

template <Scalar T>
inline double abs2(T x) {
    if constexpr (is_complex_v<T>) {
        return std::norm(x);
    } else {
        return x * x;
    }
}

template <Scalar T>
inline bool is_finite(T x) {
    if constexpr (is_complex_v<T>) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    } else {
        return std::isfinite(x);
    }
}

template <Scalar T>
using Vector = std::vector<T>;

/// <a|b> with the first argument conjugated.
template <Scalar T>
T dot(std::span<const T> a, std::span<const T> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::DimMismatch, "dot of vectors with different lengths");
    }
    T acc{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += conj(a[i]) * b[i];
    }
    return acc;
}

template <Scalar T>
T dot(const Vector<T>& a, const Vector<T>& b) {
    return dot<T>(std::span<const T>(a), std::span<const T>(b));
}

template <Scalar T>
double norm2(const Vector<T>& v) {
    double acc = 0.0;
    for (const auto& x : v) {
        acc += abs2(x);
    }
    return acc;
}

template <Scalar T>
double norm(const Vector<T>& v) {
    return std::sqrt(norm2(v));
}

template <Scalar T>
double max_abs(const Vector<T>& v) {
    double m = 0.0;
    for (const auto& x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

template <Scalar T>
Vector<T> axpy(T alpha, const Vector<T>& x, Vector<T> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::DimMismatch, "axpy of vectors with different lengths");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] += alpha * x[i];
    }
    return y;
}

template <Scalar T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b) {
    return axpy(T(-1.0), b, a);
}

template <Scalar T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b) {
    return axpy(T(1.0), b, a);
}

template <Scalar T>
Vector<T> scaled(const Vector<T>& v, T s) {
    Vector<T> out(v);
    for (auto& x : out) {
        x *= s;
    }
    return out;
}

template <Scalar T>
Vector<cplx> to_complex(const Vector<T>& v) {
    return Vector<cplx>(v.begin(), v.end());
}

/// Dense row-major matrix.
template <Scalar T>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::DimMismatch, "ragged matrix initializer");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1.0);
        }
        return m;
    }

    static Matrix diagonal(const Vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    /// Matrix whose columns are the given vectors.
    static Matrix from_columns(const std::vector<Vector<T>>& cols) {
        if (cols.empty()) {
            return {};
        }
        Matrix m(cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows()) {
                throw Error(ErrorCode::DimMismatch, "columns of different lengths");
            }
            for (std::size_t i = 0; i < m.rows(); ++i) {
                m(i, j) = cols[j][i];
            }
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const T> row(std::size_t i) const {
        return std::span<const T>(data_).subspan(i * cols_, cols_);
    }

    Vector<T> column(std::size_t j) const {
        Vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            c[i] = (*this)(i, j);
        }
        return c;
    }

    const std::vector<T>& data() const noexcept { return data_; }

    Matrix adjoint() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = conj((*this)(i, j));
            }
        }
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }

    Matrix& operator*=(T s) {
        for (auto& x : data_) {
            x *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, T s) { return a *= s; }
    friend Matrix operator*(T s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorCode::DimMismatch, "matrix product shape mismatch");
        }
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
        if (a.cols_ != v.size()) {
            throw Error(ErrorCode::DimMismatch, "matrix-vector shape mismatch");
        }
        Vector<T> out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T acc{};
            for (std::size_t j = 0; j < a.cols_; ++j) {
                acc += a(i, j) * v[j];
            }
            out[i] = acc;
        }
        return out;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorCode::DimMismatch, "matrix shapes differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Row vector times matrix: (v^T m).
template <Scalar T>
Vector<T> left_multiply(const Vector<T>& v, const Matrix<T>& m) {
    if (v.size() != m.rows()) {
        throw Error(ErrorCode::DimMismatch, "row-vector/matrix shape mismatch");
    }
    Vector<T> out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j] += v[i] * m(i, j);
        }
    }
    return out;
}

/// |a><b|
template <Scalar T>
Matrix<T> outer(const Vector<T>& a, const Vector<T>& b) {
    Matrix<T> m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            m(i, j) = a[i] * conj(b[j]);
        }
    }
    return m;
}

template <Scalar T>
double frobenius_norm(const Matrix<T>& m) {
    double acc = 0.0;
    for (const auto& x : m.data()) {
        acc += abs2(x);
    }
    return std::sqrt(acc);
}

template <Scalar T>
double max_abs(const Matrix<T>& m) {
    double r = 0.0;
    for (const auto& x : m.data()) {
        r = std::max(r, std::abs(x));
    }
    return r;
}

/// Induced infinity norm: maximum absolute row sum.
template <Scalar T>
double inf_norm(const Matrix<T>& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (const auto& x : m.row(i)) {
            s += std::abs(x);
        }
        best = std::max(best, s);
    }
    return best;
}

template <Scalar T>
T trace(const Matrix<T>& m) {
    T acc{};
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
        acc += m(i, i);
    }
    return acc;
}

template <Scalar T>
Matrix<cplx> to_complex(const Matrix<T>& m) {
    Matrix<cplx> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(i, j) = m(i, j);
        }
    }
    return out;
}

template <Scalar T>
Matrix<T> matrix_power(const Matrix<T>& m, unsigned k) {
    if (!m.is_square()) {
        throw Error(ErrorCode::NotSquare, "power of a non-square matrix");
    }
    Matrix<T> result = Matrix<T>::identity(m.rows());
    for (unsigned i = 0; i < k; ++i) {
        result = result * m;
    }
    return result;
}

/// m^k v by repeated application; the power matrix is never formed.
template <Scalar T>
Vector<T> mat_apply_pow(const Matrix<T>& m, Vector<T> v, unsigned k) {
    if (!m.is_square()) {
        throw Error(ErrorCode::NotSquare, "power of a non-square matrix");
    }
    if (m.cols() != v.size()) {
        throw Error(ErrorCode::DimMismatch, "matrix-vector shape mismatch");
    }
    for (unsigned i = 0; i < k; ++i) {
        v = m * v;
    }
    return v;
}

/// ||m - m^dagger||_F.
template <Scalar T>
double hermitian_defect(const Matrix<T>& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            acc += abs2(m(i, j) - conj(m(j, i)));
        }
    }
    return std::sqrt(acc);
}

template <Scalar T>
struct EigenDecomposition {
    std::vector<double> values; ///< ascending
    Matrix<T> vectors;          ///< orthonormal eigenvectors as columns, same order as values
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot with a diagonal unitary
/// and then applies the real symmetric 2x2 rotation, so the real and complex
/// cases share one code path. Sweeps stop once the off-diagonal mass drops
/// below machine precision relative to the matrix norm.
template <Scalar T>
EigenDecomposition<T> hermitian_eig(const Matrix<T>& input, double tol = 1e-10) {
    if (!input.is_square()) {
        throw Error(ErrorCode::NotSquare, "eigendecomposition of a non-square matrix");
    }
    const std::size_t n = input.rows();
    const double scale = frobenius_norm(input);
    if (hermitian_defect(input) > tol * std::max(scale, 1e-300)) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
    }

    // Symmetrize exactly so rounding noise in the input cannot accumulate.
    Matrix<T> a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = 0.5 * (input(i, j) + conj(input(j, i)));
        }
        if constexpr (is_complex_v<T>) {
            a(i, i) = T(a(i, i).real(), 0.0);
        }
    }
    Matrix<T> v = Matrix<T>::identity(n);

    auto off_norm = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                acc += abs2(a(i, j));
            }
        }
        return std::sqrt(2.0 * acc);
    };

    const double target = 1e-16 * std::max(scale, 1e-300);
    constexpr int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) {
                    continue;
                }
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const T phase = apq / mag;       // e^{i phi}
                const T phase_c = conj(phase);   // e^{-i phi}

                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G restricted to (p,q) = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const T gpp = c;
                const T gpq = s;
                const T gqp = -s * phase_c;
                const T gqq = c * phase_c;

                for (std::size_t k = 0; k < n; ++k) {
                    const T akp = a(k, p);
                    const T akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T apk = a(p, k);
                    const T aqk = a(q, k);
                    a(p, k) = conj(gpp) * apk + conj(gqp) * aqk;
                    a(q, k) = conj(gpq) * apk + conj(gqq) * aqk;
                }
                a(p, q) = T{};
                a(q, p) = T{};
                if constexpr (is_complex_v<T>) {
                    a(p, p) = T(a(p, p).real(), 0.0);
                    a(q, q) = T(a(q, q).real(), 0.0);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T vkp = v(k, p);
                    const T vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    if (sweep == max_sweeps && off_norm() > 1e-12 * std::max(scale, 1e-300)) {
        throw Error(ErrorCode::NoConvergence, "Jacobi sweeps did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::real(a(i, i)) < std::real(a(j, j));
    });

    EigenDecomposition<T> out;
    out.values.resize(n);
    out.vectors = Matrix<T>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = std::real(a(order[k], order[k]));
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

/// Largest eigenvalue magnitude of a Hermitian matrix.
template <Scalar T>
double spectral_radius_hermitian(const Matrix<T>& m) {
    const auto eig = hermitian_eig(m);
    double r = 0.0;
    for (double x : eig.values) {
        r = std::max(r, std::abs(x));
    }
    return r;
}

/// Flip (or rotate, in the complex case) v so its first entry with magnitude
/// above `tol` is real and positive.
template <Scalar T>
Vector<T> canonical_phase(Vector<T> v, double tol = 1e-12) {
    for (const auto& x : v) {
        const double mag = std::abs(x);
        if (mag > tol) {
            const T fix = conj(x) / mag;
            for (auto& y : v) {
                y *= fix;
            }
            break;
        }
    }
    return v;
}

} // namespace framekit
