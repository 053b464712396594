#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"

using namespace framekit;
using namespace framekit::cutproject;
using fktest::max_diff;
using fktest::naive_accepted;
using fktest::ZonotopeOracle;

namespace {

CutProjectScheme scheme_for(const std::string& name) { return build_scheme(named_frame(name)); }

} // namespace

TEST(Scheme, ProjectorAlgebra) {
    for (const char* name : {"honeycomb", "diamond", "icosahedral6"}) {
        const auto s = scheme_for(name);
        const auto m = s.superspace_dim();
        EXPECT_LE(max_abs(s.pi * s.pi - s.pi), 1e-12) << name;
        EXPECT_LE(max_abs(s.pi + s.pi_perp - Matrix<double>::identity(m)), 1e-15) << name;
        EXPECT_LE(max_abs(s.pi * s.pi_perp), 1e-12) << name;
        for (const auto& b : s.internal_basis) {
            EXPECT_LE(max_abs(s.pi * b), 1e-12);
        }
    }
    EXPECT_THROW(build_scheme(cn_frame(5)), Error);
    EXPECT_THROW(build_scheme(orthonormal_frame(3)), Error);
}

TEST(Scheme, StarMapRecomposes) {
    fktest::Rng rng(41);
    for (const char* name : {"honeycomb", "diamond", "icosahedral6"}) {
        const auto s = scheme_for(name);
        for (int t = 0; t < 50; ++t) {
            IntTuple n(s.superspace_dim());
            for (auto& x : n) {
                x = rng.integer(-4, 4);
            }
            const auto p = project_integer(s, n);
            Vector<double> rebuilt(n.size(), 0.0);
            for (std::size_t j = 0; j < s.physical_dim(); ++j) {
                rebuilt = axpy(p.physical[j], s.physical_basis[j], std::move(rebuilt));
            }
            for (std::size_t k = 0; k < s.internal_dim(); ++k) {
                rebuilt = axpy(p.internal[k], s.internal_basis[k], std::move(rebuilt));
            }
            for (std::size_t i = 0; i < n.size(); ++i) {
                EXPECT_NEAR(rebuilt[i], static_cast<double>(n[i]), 1e-10);
            }
        }
    }
}

TEST(Window, IcosahedralIsTriacontahedron) {
    const auto s = scheme_for("icosahedral6");
    const auto w = build_window(s);
    EXPECT_EQ(w.halfspaces.size(), 30u);
    for (const auto& v : w.vertices) {
        EXPECT_TRUE(w.contains(v));
    }
    // The centre of the cube projects to the centre of the window.
    Vector<double> c(3, 0.0);
    for (const auto& x : s.star_images) {
        c = axpy(0.5, x, std::move(c));
    }
    EXPECT_LT(w.violation(c), -0.1);
}

TEST(Window, HoneycombIsInterval) {
    const auto w = build_window(scheme_for("honeycomb"));
    ASSERT_EQ(w.halfspaces.size(), 2u);
    EXPECT_NEAR(w.halfspaces[0].offset + w.halfspaces[1].offset, std::sqrt(3.0), 1e-12);
}

TEST(Window, PlanarWindowFromFourVectorsInPlane) {
    // 4 vectors in R^2: internal space is 2-dim, exercising the monotone chain.
    fktest::Rng rng(42);
    const auto f = rng.parseval_frame<double>(4, 2);
    const auto s = build_scheme(f);
    const auto w = build_window(s);
    const ZonotopeOracle oracle(s.star_images);
    for (int t = 0; t < 2000; ++t) {
        const Vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (std::abs(w.violation(x)) > 1e-9) {
            EXPECT_EQ(w.contains(x), oracle.contains(x, 1e-10));
        }
    }
}

TEST(Window, UnsupportedInternalDimension) {
    fktest::Rng rng(43);
    EXPECT_THROW(build_window(build_scheme(rng.parseval_frame<double>(6, 2))), Error);
}

TEST(Quasicrystal, MatchesNaiveOracle) {
    for (const char* name : {"honeycomb", "diamond", "icosahedral6"}) {
        const auto s = scheme_for(name);
        const auto w = build_window(s);
        for (std::int64_t b = 0; b <= 3; ++b) {
            const auto patch = generate_quasicrystal(s, w, b);
            EXPECT_EQ(patch.accepted, naive_accepted(s, b)) << name << " B=" << b;
        }
    }
}

TEST(Quasicrystal, ThreadsDoNotChangeOutput) {
    const auto s = scheme_for("icosahedral6");
    const auto w = build_window(s);
    const auto one = generate_quasicrystal(s, w, 2);
    for (std::size_t t : {2u, 3u, 5u, 16u}) {
        EnumerationOptions opt;
        opt.threads = t;
        const auto many = generate_quasicrystal(s, w, 2, opt);
        EXPECT_EQ(many.accepted, one.accepted);
        ASSERT_EQ(many.points.size(), one.points.size());
        for (std::size_t i = 0; i < one.points.size(); ++i) {
            EXPECT_EQ(many.points[i].preimage, one.points[i].preimage);
        }
    }
}

TEST(Quasicrystal, MonotoneInRadius) {
    for (const char* name : {"honeycomb", "icosahedral6"}) {
        const auto s = scheme_for(name);
        const auto w = build_window(s);
        std::set<IntTuple> prev;
        for (std::int64_t b = 0; b <= 3; ++b) {
            const auto p = generate_quasicrystal(s, w, b);
            const std::set<IntTuple> cur(p.accepted.begin(), p.accepted.end());
            EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            prev = cur;
        }
    }
}

TEST(Quasicrystal, AcceptedPointsInsideWindow) {
    const auto s = scheme_for("icosahedral6");
    const auto w = build_window(s);
    const auto p = generate_quasicrystal(s, w, 2);
    for (const auto& n : p.accepted) {
        EXPECT_LE(w.violation(internal_coords(s, n)), 1e-10);
    }
    for (const auto& n : p.near_boundary) {
        const double v = w.violation(internal_coords(s, n));
        EXPECT_GT(v, 1e-10);
        EXPECT_LE(v, 1e-6);
    }
}

TEST(Quasicrystal, HoneycombMergesPeriodicPreimages) {
    const auto s = scheme_for("honeycomb");
    const auto w = build_window(s);
    const auto p = generate_quasicrystal(s, w, 2);
    std::size_t total = 0;
    for (const auto& pt : p.points) {
        total += pt.multiplicity;
        // The kept preimage is the lexicographically smallest of its class.
        for (const auto& n : p.accepted) {
            if (norm(physical_coords(s, n) - pt.physical) <= 1e-9) {
                EXPECT_FALSE(n < pt.preimage);
            }
        }
    }
    EXPECT_EQ(total, p.accepted.size());
    EXPECT_LT(p.points.size(), p.accepted.size());
}

TEST(Quasicrystal, IcosahedralOriginOnly) {
    const auto s = scheme_for("icosahedral6");
    const auto p = generate_quasicrystal(s, build_window(s), 0);
    ASSERT_EQ(p.points.size(), 1u);
    EXPECT_EQ(p.points[0].preimage, IntTuple(6, 0));
}

TEST(Quasicrystal, BoxCap) {
    const auto s = scheme_for("icosahedral6");
    EnumerationOptions opt;
    opt.cap = 1000;
    EXPECT_THROW(generate_quasicrystal(s, build_window(s), 3, opt), Error);
    EXPECT_THROW(generate_quasicrystal(s, build_window(s), -1), Error);
}

TEST(Witness, Honeycomb) {
    const auto s = scheme_for("honeycomb");
    const auto inj = injectivity_witness(s, 2);
    ASSERT_TRUE(inj.has_value());
    EXPECT_EQ(*inj, (IntTuple{1, 1, 1}));
    const auto per = periodicity_witness(s, 2);
    EXPECT_TRUE(per.periodic);
    ASSERT_EQ(per.witnesses.size(), 2u);
    for (const auto& n : per.witnesses) {
        EXPECT_LE(norm(internal_coords(s, n)), 1e-12);
    }
}

TEST(Witness, Diamond) {
    const auto s = scheme_for("diamond");
    EXPECT_EQ(injectivity_witness(s, 2), (IntTuple{1, 1, 1, 1}));
    const auto per = periodicity_witness(s, 2);
    EXPECT_TRUE(per.periodic);
    EXPECT_EQ(per.witnesses.size(), 3u);
}

TEST(Witness, IcosahedralHasNone) {
    const auto s = scheme_for("icosahedral6");
    EXPECT_FALSE(injectivity_witness(s, 3).has_value());
    const auto per = periodicity_witness(s, 3);
    EXPECT_FALSE(per.periodic);
    EXPECT_TRUE(per.witnesses.empty());
    EXPECT_EQ(per.search_radius, 3);
}

TEST(Diffraction, TrivialCases) {
    const std::vector<Vector<double>> one{{0.3, -1.2}};
    const std::vector<Vector<double>> qs{{0, 0}, {1, 2}, {-3.5, 0.25}};
    for (double v : diffraction(one, qs)) {
        EXPECT_NEAR(v, 1.0, 1e-15);
    }
    const std::vector<Vector<double>> many{{0, 0}, {1, 0}, {0.3, 2}};
    EXPECT_NEAR(diffraction(many, {{0, 0}})[0], 1.0, 1e-15);
    // Two points at distance 1 along x: I = cos^2(q/2).
    const std::vector<Vector<double>> pair{{0, 0}, {1, 0}};
    EXPECT_NEAR(diffraction(pair, {{1.3, 0.0}})[0], std::pow(std::cos(0.65), 2), 1e-15);
    EXPECT_THROW(diffraction({}, qs), Error);
}

TEST(Diffraction, IcosahedralFiveFoldPeak) {
    const auto s = scheme_for("icosahedral6");
    const auto patch = generate_quasicrystal(s, build_window(s), 3);
    std::vector<Vector<double>> pts;
    for (const auto& p : patch.points) {
        pts.push_back(p.physical);
    }
    // Candidate peaks 2 pi pi(k) for small integer k; take the strongest nonzero one.
    const auto r = icosahedral_rep().generators[0];
    Vector<double> best;
    double best_i = -1.0;
    IntTuple k(6, -1);
    while (true) {
        const auto q = scaled(physical_coords(s, k), 2.0 * std::numbers::pi);
        if (norm(q) > 1e-6) {
            const double i = diffraction(pts, {q})[0];
            if (i > best_i) {
                best_i = i;
                best = q;
            }
        }
        std::size_t d = 6;
        while (d > 0 && k[d - 1] == 1) {
            k[--d] = -1;
        }
        if (d == 0) {
            break;
        }
        ++k[d - 1];
    }
    ASSERT_GT(best_i, 0.1);
    auto q = best;
    for (int turn = 1; turn < 5; ++turn) {
        q = r * q;
        const double i = diffraction(pts, {q})[0];
        EXPECT_NEAR(i, best_i, 0.1 * best_i) << "rotation " << turn;
    }
}
