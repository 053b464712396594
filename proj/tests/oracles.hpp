#pragma once

#include <algorithm>

#include "support.hpp"

namespace fktest {

using framekit::Vector;
using framekit::dot;
using framekit::norm;
using framekit::scaled;
using framekit::cutproject::CutProjectScheme;
using framekit::cutproject::IntTuple;

/// Window oracle: pi_perp([0,1]^M) is the zonotope sum_i [0,1] s_i, whose
/// facet normals are perpendicular to spanning subsets of the generators and
/// whose support function is h(u) = sum_i max(0, <u, s_i>).
struct ZonotopeOracle {
    std::vector<Vector<double>> normals;
    std::vector<double> support;

    explicit ZonotopeOracle(const std::vector<Vector<double>>& gens) {
        const std::size_t k = gens.front().size();
        auto add = [&](Vector<double> u) {
            const double len = norm(u);
            if (len < 1e-9) {
                return;
            }
            u = scaled(u, 1.0 / len);
            for (const auto& sign : {1.0, -1.0}) {
                const auto v = scaled(u, sign);
                double h = 0.0;
                for (const auto& g : gens) {
                    h += std::max(0.0, dot(v, g));
                }
                normals.push_back(v);
                support.push_back(h);
            }
        };
        if (k == 1) {
            add({1.0});
        } else if (k == 2) {
            for (const auto& g : gens) {
                add({-g[1], g[0]});
            }
        } else {
            for (std::size_t i = 0; i < gens.size(); ++i) {
                for (std::size_t j = i + 1; j < gens.size(); ++j) {
                    const auto& a = gens[i];
                    const auto& b = gens[j];
                    add({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
                }
            }
        }
    }

    bool contains(const Vector<double>& x, double tol) const {
        for (std::size_t i = 0; i < normals.size(); ++i) {
            if (dot(normals[i], x) > support[i] + tol) {
                return false;
            }
        }
        return true;
    }
};

/// Naive filter loop: enumerate the box with nested counters, project with
/// pi_perp as a matrix, and express the result in the internal basis.
inline std::vector<IntTuple> naive_accepted(const CutProjectScheme& s, std::int64_t radius) {
    const std::size_t m = s.superspace_dim();
    const ZonotopeOracle oracle(s.star_images);
    std::vector<IntTuple> out;
    IntTuple n(m, -radius);
    std::int64_t total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        total *= 2 * radius + 1;
    }
    for (std::int64_t idx = 0; idx < total; ++idx) {
        std::int64_t rest = idx;
        for (std::size_t i = m; i-- > 0;) {
            n[i] = rest % (2 * radius + 1) - radius;
            rest /= 2 * radius + 1;
        }
        const Vector<double> nd(n.begin(), n.end());
        const auto perp = s.pi_perp * nd;
        Vector<double> coords;
        for (const auto& b : s.internal_basis) {
            coords.push_back(dot(b, perp));
        }
        if (oracle.contains(coords, 1e-10)) {
            out.push_back(n);
        }
    }
    return out;
}

} // namespace fktest
