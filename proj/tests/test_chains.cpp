#include "test_util.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace hd;

namespace {

using Coeffs = std::array<std::int64_t, 4>;
using Shape = std::multiset<std::pair<int, int>>;  // (open?, length)

// Sheets of neighbouring sectors glued as a graph: alpha half-edges align the
// tops of the two stacks, beta half-edges align the bottoms.
Shape oracle_shape(const Coeffs& a) {
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> adj;
    for (int p = 0; p < 4; ++p)
        for (int k = 1; k <= a[p]; ++k) adj[{p, k}];
    for (int h = 0; h < 4; ++h) {
        int lo = (h + 3) % 4, hi = h;  // half-edge h separates sector h-1 from sector h
        std::int64_t m = std::min(a[lo], a[hi]);
        for (std::int64_t i = 0; i < m; ++i) {
            int kl, kh;
            if (h % 2 == 0) {
                kl = static_cast<int>(a[lo] - i);
                kh = static_cast<int>(a[hi] - i);
            } else {
                kl = static_cast<int>(i + 1);
                kh = static_cast<int>(i + 1);
            }
            adj[{lo, kl}].push_back({hi, kh});
            adj[{hi, kh}].push_back({lo, kl});
        }
    }
    Shape out;
    std::set<std::pair<int, int>> seen;
    for (const auto& [c, _] : adj) {
        if (seen.count(c)) continue;
        std::vector<std::pair<int, int>> stack{c};
        int size = 0;
        bool open = false;
        seen.insert(c);
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            ++size;
            if (adj[u].size() < 2) open = true;
            for (auto w : adj[u])
                if (seen.insert(w).second) stack.push_back(w);
        }
        out.insert({open ? 1 : 0, size});
    }
    return out;
}

Shape model_shape(const Coeffs& a) {
    Shape out;
    for (const auto& ch : local_chains(a)) out.insert({ch.kind == ChainKind::Open ? 1 : 0, ch.length()});
    return out;
}

}  // namespace

TEST(Chains, EmptyVertex) { EXPECT_TRUE(local_chains({0, 0, 0, 0}).empty()); }

TEST(Chains, SectorTypesAndFamilies) {
    EXPECT_TRUE(sector_is_x_type(0));
    EXPECT_FALSE(sector_is_x_type(1));
    EXPECT_TRUE(sector_is_x_type(2));
    EXPECT_FALSE(sector_is_x_type(3));
    EXPECT_EQ(half_edge_family(0), Family::Alpha);
    EXPECT_EQ(half_edge_family(1), Family::Beta);
    EXPECT_EQ(half_edge_family(4), Family::Alpha);
}

TEST(Chains, GluingOffsets) {
    // alpha: top-aligned, beta: bottom-aligned
    EXPECT_EQ(glue_across(Family::Alpha, 1, 3, 1), 3);
    EXPECT_EQ(glue_across(Family::Alpha, 3, 1, 3), 1);
    EXPECT_EQ(glue_across(Family::Alpha, 3, 1, 2), 0);
    EXPECT_EQ(glue_across(Family::Beta, 1, 3, 1), 1);
    EXPECT_EQ(glue_across(Family::Beta, 3, 1, 2), 0);
    EXPECT_EQ(glue_across(Family::Beta, 2, 2, 2), 2);
}

TEST(Chains, InteriorPatternsAreFoursAndTwos) {
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k)
            for (int l = 0; l <= 3; ++l)
                for (int rot = 0; rot < 4; ++rot) {
                    Coeffs base{n, n + k, n + k + l, n + l};
                    Coeffs a{};
                    for (int p = 0; p < 4; ++p) a[p] = base[(p + rot) % 4];
                    for (const auto& ch : local_chains(a)) {
                        if (ch.kind == ChainKind::Closed)
                            EXPECT_EQ(ch.length(), 4);
                        else
                            EXPECT_EQ(ch.length(), 2);
                    }
                }
}

TEST(Chains, CornerPatternHasOneOddChain) {
    // coefficients a+1, a+k, a+l, a+k+l with the extra quadrant in each placement
    for (int a0 = 0; a0 <= 3; ++a0)
        for (int k = 0; k <= 3; ++k)
            for (int l = 0; l <= 3; ++l)
                for (int rot = 0; rot < 4; ++rot) {
                    Coeffs base{a0 + 1, a0 + k, a0 + k + l, a0 + l};
                    Coeffs a{};
                    for (int p = 0; p < 4; ++p) a[p] = base[(p + rot) % 4];
                    int odd = 0;
                    for (const auto& ch : local_chains(a)) odd += ch.odd_open();
                    EXPECT_EQ(odd, 1);
                }
}

TEST(Chains, CornerExampleLength) {
    // (a,k,l) = (1,1,0): coefficients 2,2,1,2
    auto chs = local_chains({2, 2, 1, 2});
    int oddLen = -1, odd = 0;
    for (const auto& ch : chs)
        if (ch.odd_open()) {
            ++odd;
            oddLen = ch.length();
        }
    EXPECT_EQ(odd, 1);
    EXPECT_EQ(oddLen, 7);
}

TEST(Chains, MatchGluingGraphExhaustively) {
    for (int a0 = 0; a0 <= 4; ++a0)
        for (int a1 = 0; a1 <= 4; ++a1)
            for (int a2 = 0; a2 <= 4; ++a2)
                for (int a3 = 0; a3 <= 4; ++a3) {
                    Coeffs a{a0, a1, a2, a3};
                    EXPECT_EQ(model_shape(a), oracle_shape(a)) << a0 << a1 << a2 << a3;
                    int cells = 0;
                    for (const auto& ch : local_chains(a)) cells += ch.length();
                    EXPECT_EQ(cells, a0 + a1 + a2 + a3);
                }
}

TEST(Chains, CellsAreConsecutive) {
    for (const auto& ch : local_chains({3, 1, 2, 2}))
        for (std::size_t i = 0; i + 1 < ch.cells.size(); ++i)
            EXPECT_EQ(ch.cells[i + 1].position, (ch.cells[i].position + 1) % 4);
}

TEST(Chains, ClassifyOnDiagram) {
    Diagram d = hdtest::corpus("example1");
    Domain a = hdtest::dom(d, "r0:1,r2:1,r4:1,r5:1,r6:2");
    Generator x = hdtest::gen(d, "x1,x2"), y = hdtest::gen(d, "y1,y2");
    for (int v = 0; v < d.vertex_count(); ++v) {
        auto chs = classify_vertex_chains(d, a, v);
        int odd = 0;
        for (const auto& ch : chs) {
            odd += ch.odd_open();
            for (const auto& c : ch.cells) {
                EXPECT_EQ(c.vertex, v);
                EXPECT_EQ(c.region, d.region_at(v, c.position));
                EXPECT_GE(c.sheet, 1);
                EXPECT_LE(c.sheet, a[c.region]);
            }
        }
        bool corner = x.contains(v) != y.contains(v);
        EXPECT_EQ(odd, corner ? 1 : 0) << d.name(v);
    }
    EXPECT_THROW(classify_vertex_chains(d, hdtest::dom(d, "r0:-1"), 0), PreconditionError);
}
