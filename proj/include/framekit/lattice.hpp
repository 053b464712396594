#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "frames.hpp"
#include "groupframes.hpp"

namespace framekit::lattice {

/// Integer model of the honeycomb lattice (D = 3) or the diamond structure
/// (D = 4): integer tuples whose coordinate sum is 0 or 1. Neighbor indices
/// are 1-based throughout.
template <std::size_t D>
class Node {
    static_assert(D == 3 || D == 4, "only the honeycomb (3) and diamond (4) models exist");

public:
    using Coords = std::array<std::int64_t, D>;

    Node() = default;

    explicit Node(const Coords& n) : n_(n) {
        const auto s = coordinate_sum();
        if (s != 0 && s != 1) {
            throw Error(ErrorCode::InvalidNode, "coordinate sum must be 0 or 1");
        }
    }

    const Coords& coords() const noexcept { return n_; }
    std::int64_t operator[](std::size_t i) const { return n_[i]; }

    std::int64_t coordinate_sum() const {
        std::int64_t s = 0;
        for (auto x : n_) {
            s += x;
        }
        return s;
    }

    friend bool operator==(const Node&, const Node&) = default;
    friend auto operator<=>(const Node&, const Node&) = default;

private:
    Coords n_{};
};

using HoneycombNode = Node<3>;
using DiamondNode = Node<4>;

template <std::size_t D>
int parity(const Node<D>& n) {
    return n.coordinate_sum() == 0 ? 1 : -1;
}

/// n^i = n + parity(n) e_i, for i = 1..D.
template <std::size_t D>
Node<D> neighbor(const Node<D>& n, std::size_t i) {
    if (i < 1 || i > D) {
        throw Error(ErrorCode::IndexRange, "neighbor index out of range");
    }
    auto c = n.coords();
    c[i - 1] += parity(n);
    return Node<D>(c);
}

template <std::size_t D>
std::vector<Node<D>> neighbors(const Node<D>& n) {
    std::vector<Node<D>> out;
    out.reserve(D);
    for (std::size_t i = 1; i <= D; ++i) {
        out.push_back(neighbor(n, i));
    }
    return out;
}

/// l1 distance.
template <std::size_t D>
std::int64_t dist(const Node<D>& a, const Node<D>& b) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < D; ++i) {
        d += std::llabs(a[i] - b[i]);
    }
    return d;
}

/// n^{i1 i2 ... ik}
template <std::size_t D>
Node<D> compose_neighbor(Node<D> n, std::span<const std::size_t> path) {
    for (auto i : path) {
        n = neighbor(n, i);
    }
    return n;
}

template <std::size_t D>
Node<D> compose_neighbor(const Node<D>& n, std::initializer_list<std::size_t> path) {
    return compose_neighbor(n, std::span<const std::size_t>(path.begin(), path.size()));
}

inline constexpr std::size_t kGeneratorCount = 3;

/// Generators of the isometry group of (L, d) and (D, d).
///
/// Honeycomb: 0 cyclic shift (n2,n3,n1), 1 transposition (n1,n3,n2),
/// 2 flip (1-n1,-n2,-n3).
/// Diamond: 0 (n3,n4,n2,n1), 1 (n4,n2,n3,n1), 2 (1-n1,-n2,-n3,-n4).
template <std::size_t D>
Node<D> symmetry_apply(std::size_t which, const Node<D>& node) {
    const auto& n = node.coords();
    typename Node<D>::Coords c{};
    if constexpr (D == 3) {
        switch (which) {
        case 0: c = {n[1], n[2], n[0]}; break;
        case 1: c = {n[0], n[2], n[1]}; break;
        case 2: c = {1 - n[0], -n[1], -n[2]}; break;
        default: throw Error(ErrorCode::BadGenerator, "honeycomb has generators 0..2");
        }
    } else {
        switch (which) {
        case 0: c = {n[2], n[3], n[1], n[0]}; break;
        case 1: c = {n[3], n[1], n[2], n[0]}; break;
        case 2: c = {1 - n[0], -n[1], -n[2], -n[3]}; break;
        default: throw Error(ErrorCode::BadGenerator, "diamond has generators 0..2");
        }
    }
    return Node<D>(c);
}

/// The Parseval frame whose integer combinations realize the model.
template <std::size_t D>
const Frame<double>& model_frame() {
    if constexpr (D == 3) {
        static const Frame<double> f = honeycomb_frame();
        return f;
    } else {
        static const Frame<double> f = diamond_frame();
        return f;
    }
}

/// sum_i n_i w_i in R^2 (honeycomb) or R^3 (diamond).
template <std::size_t D>
Vector<double> embed(const Node<D>& n) {
    const auto& f = model_frame<D>();
    Vector<double> x(f.dim(), 0.0);
    for (std::size_t i = 0; i < D; ++i) {
        x = axpy(static_cast<double>(n[i]), f[i], std::move(x));
    }
    return x;
}

inline constexpr std::int64_t kMaxPatchRadius = 50;

/// All nodes within l1 distance `radius` of the origin, lexicographically ordered.
template <std::size_t D>
std::vector<Node<D>> generate_patch(std::int64_t radius) {
    if (radius < 0 || radius > kMaxPatchRadius) {
        throw Error(ErrorCode::OutOfRange, "patch radius must lie in [0, 50]");
    }
    std::vector<Node<D>> out;
    typename Node<D>::Coords c;
    c.fill(-radius);
    while (true) {
        std::int64_t s = 0;
        std::int64_t l1 = 0;
        for (auto x : c) {
            s += x;
            l1 += std::llabs(x);
        }
        if ((s == 0 || s == 1) && l1 <= radius) {
            out.emplace_back(c);
        }
        std::size_t k = D;
        while (k > 0) {
            --k;
            if (c[k] < radius) {
                ++c[k];
                break;
            }
            c[k] = -radius;
            if (k == 0) {
                return out;
            }
        }
    }
}

} // namespace framekit::lattice
