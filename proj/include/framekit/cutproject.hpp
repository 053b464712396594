#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "error.hpp"
#include "frames.hpp"
#include "numlin.hpp"

namespace framekit::cutproject {

using IntTuple = std::vector<std::int64_t>;

/// Superspace R^M split by a Parseval frame into the physical space (range of
/// pi, dimension N) and the internal space (range of pi_perp, dimension M-N).
///
/// Physical coordinates are taken in the orthonormal system
/// phi_j = (<w_1|j>, ..., <w_M|j>), so the physical coordinates of an integer
/// tuple n are exactly sum_i n_i w_i. Internal coordinates use the
/// eigenvectors of pi with eigenvalue 0, each with its first nonzero entry positive.
struct CutProjectScheme {
    Frame<double> frame;
    Matrix<double> pi;
    Matrix<double> pi_perp;
    std::vector<Vector<double>> physical_basis;
    std::vector<Vector<double>> internal_basis;
    std::vector<Vector<double>> star_images; ///< internal coordinates of each e_i

    std::size_t superspace_dim() const { return frame.size(); }
    std::size_t physical_dim() const { return frame.dim(); }
    std::size_t internal_dim() const { return internal_basis.size(); }
};

struct ProjectedPoint {
    IntTuple preimage;
    Vector<double> physical;
    Vector<double> internal;
    std::size_t multiplicity = 1; ///< preimages sharing this physical point
};

/// Closed convex polytope {x : normal . x <= offset for every halfspace}.
struct Window {
    struct Halfspace {
        Vector<double> normal; ///< unit length
        double offset;
    };

    std::vector<Halfspace> halfspaces;
    std::vector<Vector<double>> vertices; ///< projected cube vertices the hull was built from

    /// Largest halfspace violation; <= 0 inside.
    double violation(const Vector<double>& x) const {
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& h : halfspaces) {
            worst = std::max(worst, dot(h.normal, x) - h.offset);
        }
        return worst;
    }

    bool contains(const Vector<double>& x, double tol = 1e-10) const { return violation(x) <= tol; }
};

struct EnumerationOptions {
    std::size_t threads = 1;
    std::uint64_t cap = 100'000'000;
    double boundary_tol = 1e-10; ///< membership tolerance, toward inclusion
    double near_miss = 1e-6;     ///< rejected points closer than this are reported
};

struct QuasicrystalPatch {
    std::vector<ProjectedPoint> points;  ///< deduplicated by physical position
    std::vector<IntTuple> accepted;      ///< every accepted preimage, lexicographic
    std::vector<IntTuple> near_boundary; ///< rejected preimages within near_miss of the window
};

inline CutProjectScheme build_scheme(const Frame<double>& f, double tol = kParsevalTolerance) {
    if (!is_parseval(f, tol).parseval) {
        throw Error(ErrorCode::NotParseval, "cut-and-project requires a Parseval frame");
    }
    const std::size_t m = f.size();
    const std::size_t n = f.dim();
    if (m == n) {
        throw Error(ErrorCode::NoComplement, "frame is a basis; internal space is trivial");
    }
    CutProjectScheme s{f, gram_matrix(f), {}, {}, {}, {}};
    s.pi_perp = Matrix<double>::identity(m) - s.pi;

    for (std::size_t j = 0; j < n; ++j) {
        Vector<double> phi(m);
        for (std::size_t i = 0; i < m; ++i) {
            phi[i] = f[i][j];
        }
        s.physical_basis.push_back(std::move(phi));
    }
    const auto eig = hermitian_eig(s.pi);
    for (std::size_t k = 0; k < m - n; ++k) {
        s.internal_basis.push_back(canonical_phase(eig.vectors.column(k), 1e-9));
    }
    for (std::size_t i = 0; i < m; ++i) {
        Vector<double> star(m - n);
        for (std::size_t k = 0; k < m - n; ++k) {
            star[k] = s.internal_basis[k][i];
        }
        s.star_images.push_back(std::move(star));
    }
    return s;
}

inline Vector<double> physical_coords(const CutProjectScheme& s, const IntTuple& n) {
    Vector<double> x(s.physical_dim(), 0.0);
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] != 0) {
            x = axpy(static_cast<double>(n[i]), s.frame[i], std::move(x));
        }
    }
    return x;
}

/// Star map evaluated on the integer preimage.
inline Vector<double> internal_coords(const CutProjectScheme& s, const IntTuple& n) {
    Vector<double> x(s.internal_dim(), 0.0);
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] != 0) {
            x = axpy(static_cast<double>(n[i]), s.star_images[i], std::move(x));
        }
    }
    return x;
}

inline ProjectedPoint project_integer(const CutProjectScheme& s, const IntTuple& n) {
    if (n.size() != s.superspace_dim()) {
        throw Error(ErrorCode::DimMismatch, "integer tuple has the wrong length");
    }
    return ProjectedPoint{n, physical_coords(s, n), internal_coords(s, n), 1};
}

namespace detail {

inline Vector<double> cross(const Vector<double>& a, const Vector<double>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline void add_halfspace(Window& w, Vector<double> normal, double offset) {
    const double len = norm(normal);
    normal = scaled(normal, 1.0 / len);
    offset /= len;
    for (const auto& h : w.halfspaces) {
        if (norm(h.normal - normal) <= 1e-9 && std::abs(h.offset - offset) <= 1e-9) {
            return;
        }
    }
    w.halfspaces.push_back({std::move(normal), offset});
}

inline void hull_1d(Window& w) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : w.vertices) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[0]);
    }
    add_halfspace(w, {1.0}, hi);
    add_halfspace(w, {-1.0}, -lo);
}

/// Andrew's monotone chain; emits one halfspace per counter-clockwise hull edge.
inline void hull_2d(Window& w) {
    std::vector<Vector<double>> pts = w.vertices;
    std::sort(pts.begin(), pts.end());
    auto turn = [](const Vector<double>& o, const Vector<double>& a, const Vector<double>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Vector<double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 1e-12) {
            --k;
        }
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && turn(hull[k - 2], hull[k - 1], pts[i]) <= 1e-12) {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        Vector<double> normal{b[1] - a[1], a[0] - b[0]};
        add_halfspace(w, normal, normal[0] * a[0] + normal[1] * a[1]);
    }
}

/// Every plane through three vertices with all vertices on one side is a facet.
inline void hull_3d(Window& w) {
    const auto& p = w.vertices;
    double scale = 0.0;
    for (const auto& v : p) {
        scale = std::max(scale, norm(v));
    }
    const double eps = 1e-9 * std::max(scale, 1.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            for (std::size_t l = j + 1; l < p.size(); ++l) {
                Vector<double> normal = cross(p[j] - p[i], p[l] - p[i]);
                const double len = norm(normal);
                if (len <= eps * std::max(scale, 1.0)) {
                    continue;
                }
                normal = scaled(normal, 1.0 / len);
                const double offset = dot(normal, p[i]);
                bool below = true;
                bool above = true;
                for (const auto& q : p) {
                    const double d = dot(normal, q) - offset;
                    below = below && d <= eps;
                    above = above && d >= -eps;
                    if (!below && !above) {
                        break;
                    }
                }
                if (below) {
                    add_halfspace(w, normal, offset);
                } else if (above) {
                    add_halfspace(w, scaled(normal, -1.0), -offset);
                }
            }
        }
    }
}

inline std::uint64_t box_count(std::size_t m, std::int64_t radius, std::uint64_t cap) {
    const std::uint64_t side = static_cast<std::uint64_t>(2 * radius + 1);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (total > cap / side) {
            throw Error(ErrorCode::BoxTooLarge, "integer box exceeds the enumeration cap");
        }
        total *= side;
    }
    if (total > cap) {
        throw Error(ErrorCode::BoxTooLarge, "integer box exceeds the enumeration cap");
    }
    return total;
}

/// Calls visit(n) for every n in [-radius, radius]^m with n[0] in [first_lo, first_hi],
/// in lexicographic order.
template <typename Visit>
void for_each_in_box(std::size_t m, std::int64_t radius, std::int64_t first_lo, std::int64_t first_hi,
                     Visit&& visit) {
    if (first_lo > first_hi) {
        return;
    }
    IntTuple n(m, -radius);
    n[0] = first_lo;
    while (true) {
        visit(static_cast<const IntTuple&>(n));
        std::size_t k = m;
        while (true) {
            --k;
            const std::int64_t hi = (k == 0) ? first_hi : radius;
            if (n[k] < hi) {
                ++n[k];
                break;
            }
            if (k == 0) {
                return;
            }
            n[k] = -radius;
        }
    }
}

inline std::int64_t max_norm(const IntTuple& n) {
    std::int64_t m = 0;
    for (auto x : n) {
        m = std::max<std::int64_t>(m, std::llabs(x));
    }
    return m;
}

/// Flip sign so the first nonzero entry is positive.
inline IntTuple canonical_sign(IntTuple n) {
    for (auto x : n) {
        if (x != 0) {
            if (x < 0) {
                for (auto& y : n) {
                    y = -y;
                }
            }
            break;
        }
    }
    return n;
}

} // namespace detail

/// Halfspace description of pi_perp([0,1]^M) in internal coordinates.
inline Window build_window(const CutProjectScheme& s) {
    const std::size_t k = s.internal_dim();
    if (k < 1 || k > 3) {
        throw Error(ErrorCode::DimUnsupported, "window construction supports internal dimension 1..3");
    }
    const std::size_t m = s.superspace_dim();
    if (m > 20) {
        throw Error(ErrorCode::DimUnsupported, "too many cube vertices");
    }
    Window w;
    w.vertices.reserve(std::size_t{1} << m);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        Vector<double> v(k, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            if (mask & (std::size_t{1} << i)) {
                v = v + s.star_images[i];
            }
        }
        w.vertices.push_back(std::move(v));
    }
    switch (k) {
    case 1: detail::hull_1d(w); break;
    case 2: detail::hull_2d(w); break;
    default: detail::hull_3d(w); break;
    }
    return w;
}

/// Projected integer points of [-B,B]^M whose star image lies in the window.
inline QuasicrystalPatch generate_quasicrystal(const CutProjectScheme& s, const Window& window,
                                               std::int64_t box_radius,
                                               const EnumerationOptions& opt = {}) {
    if (box_radius < 0) {
        throw Error(ErrorCode::OutOfRange, "box radius must be nonnegative");
    }
    const std::size_t m = s.superspace_dim();
    detail::box_count(m, box_radius, opt.cap);

    struct Chunk {
        std::vector<IntTuple> accepted;
        std::vector<IntTuple> near;
    };
    const std::int64_t side = 2 * box_radius + 1;
    const std::size_t threads = std::clamp<std::size_t>(opt.threads, 1, static_cast<std::size_t>(side));
    std::vector<Chunk> chunks(threads);

    auto work = [&](std::size_t t) {
        const std::int64_t lo = -box_radius + static_cast<std::int64_t>(t) * side / static_cast<std::int64_t>(threads);
        const std::int64_t hi =
            -box_radius + static_cast<std::int64_t>(t + 1) * side / static_cast<std::int64_t>(threads) - 1;
        Chunk& out = chunks[t];
        detail::for_each_in_box(m, box_radius, lo, hi, [&](const IntTuple& n) {
            const double v = window.violation(internal_coords(s, n));
            if (v <= opt.boundary_tol) {
                out.accepted.push_back(n);
            } else if (v <= opt.near_miss) {
                out.near.push_back(n);
            }
        });
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    QuasicrystalPatch patch;
    for (auto& c : chunks) {
        patch.accepted.insert(patch.accepted.end(), c.accepted.begin(), c.accepted.end());
        patch.near_boundary.insert(patch.near_boundary.end(), c.near.begin(), c.near.end());
    }

    // Merge preimages with coincident physical positions into the
    // lexicographically first one.
    std::vector<ProjectedPoint> all;
    all.reserve(patch.accepted.size());
    for (const auto& n : patch.accepted) {
        all.push_back(project_integer(s, n));
    }
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return all[a].physical[0] < all[b].physical[0]; });
    std::vector<std::size_t> owner(all.size());
    std::iota(owner.begin(), owner.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (owner[i] != i) {
            owner[i] = owner[owner[i]];
            i = owner[i];
        }
        return i;
    };
    constexpr double kSame = 1e-9;
    for (std::size_t a = 0; a < order.size(); ++a) {
        const std::size_t ia = order[a];
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const std::size_t ib = order[b];
            if (all[ib].physical[0] - all[ia].physical[0] > kSame) {
                break;
            }
            if (norm(all[ib].physical - all[ia].physical) <= kSame) {
                const std::size_t ra = find(ia);
                const std::size_t rb = find(ib);
                owner[std::max(ra, rb)] = std::min(ra, rb);
            }
        }
    }
    for (std::size_t i = 0; i < owner.size(); ++i) {
        owner[i] = find(i);
    }
    std::vector<std::size_t> count(all.size(), 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
        ++count[owner[i]];
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (owner[i] == i) {
            all[i].multiplicity = count[i];
            patch.points.push_back(std::move(all[i]));
        }
    }
    return patch;
}

/// Nonzero integer tuple killed by pi, searched in [-B,B]^M. Tuples are
/// ranked by max-norm, then lexicographically; the result has its first
/// nonzero entry positive. std::nullopt means no witness up to radius B.
inline std::optional<IntTuple> injectivity_witness(const CutProjectScheme& s, std::int64_t search_radius,
                                                   std::uint64_t cap = 100'000'000) {
    const std::size_t m = s.superspace_dim();
    detail::box_count(m, search_radius, cap);
    std::optional<IntTuple> best;
    std::int64_t best_shell = search_radius + 1;
    detail::for_each_in_box(m, search_radius, -search_radius, search_radius, [&](const IntTuple& n) {
        const auto shell = detail::max_norm(n);
        if (shell == 0 || shell >= best_shell) {
            return;
        }
        if (norm(physical_coords(s, n)) <= 1e-9) {
            best = n;
            best_shell = shell;
        }
    });
    if (best) {
        best = detail::canonical_sign(*best);
    }
    return best;
}

struct PeriodicityResult {
    bool periodic = false;
    std::vector<IntTuple> witnesses; ///< linearly independent tuples in Z^M inside the physical subspace
    std::int64_t search_radius = 0;
};

/// Integer tuples fixed by pi (killed by pi_perp); periodic once N independent ones are found.
inline PeriodicityResult periodicity_witness(const CutProjectScheme& s, std::int64_t search_radius,
                                             std::uint64_t cap = 100'000'000) {
    const std::size_t m = s.superspace_dim();
    const std::size_t n_target = s.physical_dim();
    detail::box_count(m, search_radius, cap);

    PeriodicityResult res;
    res.search_radius = search_radius;
    std::vector<Vector<double>> ortho; // Gram-Schmidt of accepted witnesses
    for (std::int64_t shell = 1; shell <= search_radius && res.witnesses.size() < n_target; ++shell) {
        detail::for_each_in_box(m, search_radius, -search_radius, search_radius, [&](const IntTuple& n) {
            if (res.witnesses.size() >= n_target || detail::max_norm(n) != shell) {
                return;
            }
            if (norm(internal_coords(s, n)) > 1e-9) {
                return;
            }
            const IntTuple c = detail::canonical_sign(n);
            Vector<double> v(c.begin(), c.end());
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : ortho) {
                    const double c = dot(q, v);
                    v = axpy(-c, q, std::move(v));
                }
            }
            if (norm(v) > 1e-9) {
                ortho.push_back(scaled(v, 1.0 / norm(v)));
                res.witnesses.push_back(c);
            }
        });
    }
    res.periodic = res.witnesses.size() == n_target;
    return res;
}

/// I(q) = |sum_x exp(-i q.x)|^2 / count^2 for every q in the grid.
inline std::vector<double> diffraction(const std::vector<Vector<double>>& points,
                                       const std::vector<Vector<double>>& q_grid) {
    if (points.empty()) {
        throw Error(ErrorCode::EmptyInput, "diffraction of an empty point set");
    }
    const double count = static_cast<double>(points.size());
    std::vector<double> out;
    out.reserve(q_grid.size());
    for (const auto& q : q_grid) {
        double re = 0.0;
        double im = 0.0;
        for (const auto& x : points) {
            const double phase = dot(q, x);
            re += std::cos(phase);
            im -= std::sin(phase);
        }
        out.push_back((re * re + im * im) / (count * count));
    }
    return out;
}

} // namespace framekit::cutproject
