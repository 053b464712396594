#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace framekit;
using namespace framekit::lattice;

namespace {

template <std::size_t D>
std::size_t count_ball(std::int64_t r) {
    // Counts tuples by coordinate sum directly rather than filtering a box.
    std::size_t count = 0;
    std::array<std::int64_t, D> c{};
    const auto rec = [&](auto&& self, std::size_t k, std::int64_t budget, std::int64_t sum) -> void {
        if (k == D) {
            count += (sum == 0 || sum == 1) ? 1 : 0;
            return;
        }
        for (std::int64_t x = -budget; x <= budget; ++x) {
            c[k] = x;
            self(self, k + 1, budget - std::llabs(x), sum + x);
        }
    };
    rec(rec, 0, r, 0);
    return count;
}

template <std::size_t D>
void neighbor_identities(std::int64_t radius) {
    const auto patch = generate_patch<D>(radius);
    for (const auto& n : patch) {
        for (std::size_t i = 1; i <= D; ++i) {
            EXPECT_EQ(compose_neighbor(n, {i, i}), n);
            EXPECT_EQ(dist(n, neighbor(n, i)), 1);
            for (std::size_t j = 1; j <= D; ++j) {
                for (std::size_t l = 1; l <= D; ++l) {
                    EXPECT_EQ(compose_neighbor(n, {i, j, l}), compose_neighbor(n, {l, j, i}));
                }
            }
        }
    }
}

template <std::size_t D>
void generators_are_isometries(std::int64_t radius) {
    const auto patch = generate_patch<D>(radius);
    for (std::size_t g = 0; g < kGeneratorCount; ++g) {
        for (const auto& a : patch) {
            const auto ga = symmetry_apply(g, a);
            EXPECT_TRUE(ga.coordinate_sum() == 0 || ga.coordinate_sum() == 1);
            for (const auto& b : patch) {
                ASSERT_EQ(dist(ga, symmetry_apply(g, b)), dist(a, b));
            }
        }
    }
}

template <std::size_t D>
void neighbor_geometry(std::int64_t radius, double expected_length) {
    for (const auto& n : generate_patch<D>(radius)) {
        const auto x = embed(n);
        Vector<double> sum(x.size(), 0.0);
        for (const auto& m : neighbors(n)) {
            const auto d = embed(m) - x;
            EXPECT_NEAR(norm(d), expected_length, 1e-12);
            sum = sum + d;
        }
        EXPECT_LE(max_abs(sum), 1e-12);
    }
}

} // namespace

TEST(Node, Validation) {
    EXPECT_NO_THROW(HoneycombNode({1, 0, 0}));
    EXPECT_NO_THROW(DiamondNode({2, -1, 0, 0}));
    try {
        HoneycombNode({1, 1, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidNode);
    }
    EXPECT_THROW(neighbor(HoneycombNode({0, 0, 0}), 0), Error);
    EXPECT_THROW(neighbor(HoneycombNode({0, 0, 0}), 4), Error);
    EXPECT_THROW(symmetry_apply(3, HoneycombNode({0, 0, 0})), Error);
}

TEST(Node, ParityAndNeighbors) {
    const HoneycombNode o({0, 0, 0});
    EXPECT_EQ(parity(o), 1);
    EXPECT_EQ(neighbor(o, 2), HoneycombNode({0, 1, 0}));
    const HoneycombNode a({1, 0, 0});
    EXPECT_EQ(parity(a), -1);
    EXPECT_EQ(neighbor(a, 1), o);
    EXPECT_EQ(neighbor(a, 3), HoneycombNode({1, 0, -1}));
    EXPECT_EQ(compose_neighbor(o, {1, 2, 1}), HoneycombNode({2, -1, 0}));
}

TEST(Patch, CountsAndOrder) {
    for (std::int64_t r = 0; r <= 5; ++r) {
        const auto p3 = generate_patch<3>(r);
        EXPECT_EQ(p3.size(), count_ball<3>(r)) << r;
        EXPECT_TRUE(std::is_sorted(p3.begin(), p3.end()));
        EXPECT_EQ(generate_patch<4>(r).size(), count_ball<4>(r)) << r;
    }
    EXPECT_EQ(generate_patch<3>(0).size(), 1u);
    EXPECT_EQ(generate_patch<3>(1).size(), 4u);
    EXPECT_THROW(generate_patch<3>(-1), Error);
    EXPECT_THROW(generate_patch<3>(51), Error);
}

TEST(Honeycomb, NeighborIdentities) { neighbor_identities<3>(3); }
TEST(Diamond, NeighborIdentities) { neighbor_identities<4>(3); }
TEST(Honeycomb, GeneratorsAreIsometries) { generators_are_isometries<3>(3); }
TEST(Diamond, GeneratorsAreIsometries) { generators_are_isometries<4>(3); }
TEST(Honeycomb, EmbeddedTriangles) { neighbor_geometry<3>(4, std::sqrt(2.0 / 3.0)); }
TEST(Diamond, EmbeddedTetrahedra) { neighbor_geometry<4>(4, std::sqrt(3.0) / 2.0); }

TEST(Embedding, InjectiveOnPatches) {
    std::set<std::pair<long long, long long>> seen;
    const auto patch = generate_patch<3>(6);
    for (const auto& n : patch) {
        const auto x = embed(n);
        seen.insert({std::llround(x[0] * 1e8), std::llround(x[1] * 1e8)});
    }
    EXPECT_EQ(seen.size(), patch.size());
}

TEST(Embedding, GeneratorsActAsEuclideanIsometries) {
    const auto patch = generate_patch<4>(3);
    for (std::size_t g = 0; g < kGeneratorCount; ++g) {
        for (std::size_t i = 0; i < patch.size(); i += 7) {
            for (std::size_t j = 0; j < patch.size(); j += 5) {
                const double before = norm(embed(patch[i]) - embed(patch[j]));
                const double after = norm(embed(symmetry_apply(g, patch[i])) - embed(symmetry_apply(g, patch[j])));
                EXPECT_NEAR(before, after, 1e-12);
            }
        }
    }
}
