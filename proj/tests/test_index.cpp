#include "test_util.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace hd;
using hdtest::corpus;
using hdtest::dom;
using hdtest::gen;

namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

// Region of the mirror containing dart t corresponds to the region of the
// original on the other side of t.
std::vector<int> mirror_region_map(const Diagram& d, const Diagram& m) {
    std::vector<int> map(m.region_count(), -1);
    for (int t = 0; t < d.dart_count(); ++t) {
        int rm = m.face_of(t), rd = d.face_of(d.rev(t));
        if (map[rm] == -1) map[rm] = rd;
        EXPECT_EQ(map[rm], rd);
    }
    return map;
}

template <class F>
void for_each_connecting(const Diagram& d, int bound, bool positive, F&& f) {
    auto gens = enumerate_generators(d);
    for (const auto& x : gens)
        for (const auto& y : gens)
            for (const auto& a : find_domains(d, x, y, bound, positive)) f(x, y, a);
}

}  // namespace

TEST(EulerMeasure, RegionShapes) {
    Diagram t2 = corpus("torus2");
    EXPECT_EQ(euler_measure(t2, dom(t2, "r0:1")), R(0));
    Diagram t3 = corpus("torus3");
    EXPECT_EQ(euler_measure(t3, dom(t3, "r0:1")), R(1, 2));
    EXPECT_EQ(euler_measure(t3, dom(t3, "r1:1")), R(-1));
    Diagram s = corpus("s1xs2");
    EXPECT_EQ(s.region(0).cornerCount, 6);
    EXPECT_EQ(euler_measure(s, dom(s, "r0:1")), R(-1, 2));
    EXPECT_EQ(euler_measure(s, dom(s, "r0:2,r1:-3")), R(-1) - R(3, 2));
}

TEST(EulerMeasure, SigmaIsEulerCharacteristic) {
    for (const auto& n : hdtest::corpus_names()) {
        Diagram d = corpus(n);
        EXPECT_EQ(euler_measure(d, sigma_class(d)), R(2 - 2 * d.genus())) << n;
        EXPECT_EQ(euler_measure(d, sigma_class(d)), R(d.region_count() - d.vertex_count())) << n;
    }
}

TEST(Multiplicity, PointAndGenerator) {
    Diagram d = corpus("torus3");
    Domain b = dom(d, "r0:1");
    EXPECT_EQ(point_multiplicity(d, b, d.vertex_id("x")), R(1, 4));
    EXPECT_EQ(point_multiplicity(d, b, d.vertex_id("z")), R(0));
    EXPECT_EQ(generator_multiplicity(d, b, gen(d, "x")), R(1, 4));
    EXPECT_EQ(generator_multiplicity(d, zero_domain(d), gen(d, "x")), R(0));
    for (const auto& n : hdtest::corpus_names()) {
        Diagram e = corpus(n);
        for (int v = 0; v < e.vertex_count(); ++v) EXPECT_EQ(point_multiplicity(e, sigma_class(e), v), R(1));
        for (const auto& x : enumerate_generators(e))
            EXPECT_EQ(generator_multiplicity(e, sigma_class(e), x), R(e.genus()));
    }
}

TEST(Maslov, SigmaDecomposition) {
    for (const auto& n : hdtest::corpus_names()) {
        Diagram d = corpus(n);
        int g = d.genus();
        for (const auto& x : enumerate_generators(d)) {
            auto r = index_report(d, sigma_class(d), x, x);
            EXPECT_EQ(r.e, R(2 - 2 * g));
            EXPECT_EQ(r.nX, R(g));
            EXPECT_EQ(r.nY, R(g));
            EXPECT_EQ(r.mu, R(2)) << n;
        }
    }
}

TEST(Maslov, TorusBigon) {
    Diagram d = corpus("torus3");
    auto r = index_report(d, dom(d, "r0:1"), gen(d, "x"), gen(d, "y"));
    EXPECT_EQ(r.e, R(1, 2));
    EXPECT_EQ(r.nX, R(1, 4));
    EXPECT_EQ(r.nY, R(1, 4));
    EXPECT_EQ(r.mu, R(1));
    EXPECT_EQ(r.chiEmb, R(1));
    EXPECT_EQ(r.g, 1);
    EXPECT_TRUE(r.connecting);
    EXPECT_EQ(analytic_index(1, r.chiEmb, r.e), R(1));
}

TEST(Maslov, NonConnectingIsSoftError) {
    Diagram d = corpus("torus3");
    Domain b = dom(d, "r0:1");
    EXPECT_THROW(maslov_index(d, b, gen(d, "y"), gen(d, "x")), PreconditionError);
    EXPECT_THROW(embedded_euler_char(d, b, gen(d, "y"), gen(d, "x")), PreconditionError);
    EXPECT_THROW(index_report(d, b, gen(d, "y"), gen(d, "x")), PreconditionError);
    EXPECT_EQ(maslov_index(d, b, gen(d, "y"), gen(d, "x"), true), R(1));
    auto r = index_report(d, b, gen(d, "y"), gen(d, "x"), true);
    EXPECT_FALSE(r.connecting);
}

TEST(Example1, WorkedExampleNumbers) {
    Diagram d = corpus("example1");
    Generator x = gen(d, "x1,x2"), y = gen(d, "y1,y2");
    Domain a = dom(d, "r0:1,r2:1,r4:1,r5:1,r6:2");
    ASSERT_TRUE(connects(d, a, x, y));
    auto r = index_report(d, a, x, y);
    EXPECT_EQ(r.g, 2);
    EXPECT_EQ(r.e, R(1));
    EXPECT_EQ(r.nX, R(3, 2));
    EXPECT_EQ(r.nY, R(3, 2));
    EXPECT_EQ(r.chiEmb, R(2) - R(6, 4) - R(6, 4) + R(1));
    EXPECT_EQ(r.chiEmb, R(0));
    EXPECT_EQ(r.mu, R(4));
    // one positive double point: two bigons
    EXPECT_EQ(chi_with_double_points(d, a, x, y, 1, 0), R(2));
    EXPECT_EQ(analytic_index(2, R(2), r.e), R(2));
}

TEST(DoublePoints, Formula) {
    Diagram d = corpus("torus3");
    Domain b = dom(d, "r0:1");
    Generator x = gen(d, "x"), y = gen(d, "y");
    EXPECT_EQ(chi_with_double_points(d, b, x, y, 0, 0), embedded_euler_char(d, b, x, y));
    EXPECT_EQ(chi_with_double_points(d, b, x, y, 0, 1), embedded_euler_char(d, b, x, y) - 2);
    EXPECT_THROW(chi_with_double_points(d, b, x, y, -1, 0), PreconditionError);
    EXPECT_THROW(chi_with_double_points(d, b, x, y, 0, -2), PreconditionError);
}

TEST(BranchBudget, RiemannHurwitz) {
    EXPECT_EQ(branch_budget(1, R(1)), R(0));
    EXPECT_EQ(branch_budget(2, R(0)), R(2));
    Diagram d = corpus("example1");
    for_each_connecting(d, 1, true, [&](const Generator& x, const Generator& y, const Domain& a) {
        auto r = index_report(d, a, x, y);
        for (int dp = 0; dp <= 2; ++dp)
            for (int dm = 0; dm <= 2; ++dm) {
                Rational chi = chi_with_double_points(d, a, x, y, dp, dm);
                EXPECT_EQ(branch_budget(r.g, chi), r.nX + r.nY - r.e - 2 * (dp - dm));
            }
    });
}

TEST(Identities, OverEnumeratedDomains) {
    for (const auto& n : hdtest::corpus_names()) {
        Diagram d = corpus(n);
        int count = 0;
        for_each_connecting(d, 2, false, [&](const Generator& x, const Generator& y, const Domain& a) {
            auto r = index_report(d, a, x, y);
            EXPECT_TRUE(is_integer(r.mu)) << n << " " << format_domain(a);
            EXPECT_TRUE(is_integer(r.chiEmb)) << n << " " << format_domain(a);
            EXPECT_EQ(r.mu, r.e + r.nX + r.nY);
            EXPECT_EQ(r.chiEmb, R(r.g) - r.nX - r.nY + r.e);
            EXPECT_EQ(analytic_index(r.g, r.chiEmb, r.e), r.mu);
            ++count;
        });
        EXPECT_GT(count, 0) << n;
    }
}

TEST(Identities, Stabilization) {
    for (const auto& n : hdtest::corpus_names()) {
        Diagram d = corpus(n);
        int g = d.genus();
        for_each_connecting(d, 1, false, [&](const Generator& x, const Generator& y, const Domain& a) {
            Rational mu = maslov_index(d, a, x, y), chi = embedded_euler_char(d, a, x, y);
            for (int k = 0; k <= 3; ++k) {
                Domain b = a + k * sigma_class(d);
                EXPECT_EQ(maslov_index(d, b, x, y), mu + 2 * k);
            }
            EXPECT_EQ(embedded_euler_char(d, a + sigma_class(d), x, y), chi + 2 - 4 * g);
        });
    }
    Diagram t = corpus("torus3");
    Domain b = dom(t, "r0:1") + sigma_class(t);
    EXPECT_EQ(maslov_index(t, b, gen(t, "x"), gen(t, "y")), R(3));
    EXPECT_EQ(embedded_euler_char(t, b, gen(t, "x"), gen(t, "y")), R(1) - 2);
}

TEST(Identities, Additivity) {
    for (const auto& n : {"torus3", "s1xs2", "genus3"}) {
        Diagram d = corpus(n);
        auto gens = enumerate_generators(d);
        for (const auto& x : gens)
            for (const auto& y : gens)
                for (const auto& a : find_domains(d, x, y, 1))
                    for (const auto& z : gens)
                        for (const auto& b : find_domains(d, y, z, 1)) {
                            Domain c = compose(d, a, x, y, b, z);
                            EXPECT_EQ(maslov_index(d, c, x, z), maslov_index(d, a, x, y) + maslov_index(d, b, y, z));
                            EXPECT_EQ(euler_measure(d, c), euler_measure(d, a) + euler_measure(d, b));
                        }
    }
}

TEST(Identities, MirrorInvariance) {
    for (const auto& n : hdtest::corpus_names()) {
        Diagram d = corpus(n);
        Diagram m = mirror(d);
        auto map = mirror_region_map(d, m);
        auto carry = [&](const Domain& a) {
            Domain b = zero_domain(m);
            for (int r = 0; r < m.region_count(); ++r) b[r] = a[map[r]];
            return b;
        };
        for_each_connecting(d, 1, false, [&](const Generator& x, const Generator& y, const Domain& a) {
            Domain b = carry(a);
            EXPECT_EQ(euler_measure(m, b), euler_measure(d, a));
            EXPECT_EQ(generator_multiplicity(m, b, x), generator_multiplicity(d, a, x));
            EXPECT_EQ(generator_multiplicity(m, b, y), generator_multiplicity(d, a, y));
            ASSERT_TRUE(connects(m, b, y, x)) << n << " " << format_domain(a);
            EXPECT_EQ(maslov_index(m, b, y, x), maslov_index(d, a, x, y));
        });
    }
}
