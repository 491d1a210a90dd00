#pragma once

#include "domain.hpp"

#include <array>

namespace hd {

struct QuadrantSheet {
    int vertex = 0;
    int position = 0;  // sector index in the vertex rotation
    int region = 0;
    int sheet = 0;     // 1-based
    auto operator<=>(const QuadrantSheet&) const = default;
};

enum class ChainKind { Closed, Open };

struct PreimageChain {
    int vertex = 0;
    std::vector<QuadrantSheet> cells;  // counterclockwise
    ChainKind kind = ChainKind::Open;
    int length() const { return static_cast<int>(cells.size()); }
    bool odd_open() const { return kind == ChainKind::Open && length() % 2 == 1; }
    bool operator==(const PreimageChain&) const = default;
};

// Family of the half-edge at rotation position p.
inline Family half_edge_family(int p) { return ((p % 4) + 4) % 2 == 0 ? Family::Alpha : Family::Beta; }

// Sheet of the counterclockwise neighbour across half-edge p: a sheet of
// sector p-1 maps into sector p. Returns 0 when that side is free.
inline int glue_across(Family f, std::int64_t below, std::int64_t above, int sheet) {
    std::int64_t m = std::min(below, above);
    if (f == Family::Alpha) {
        // top-aligned: k on the smaller side meets k + |difference| on the larger
        if (below <= above) return static_cast<int>(sheet + (above - below));
        std::int64_t k = sheet - (below - above);
        return k >= 1 ? static_cast<int>(k) : 0;
    }
    return sheet <= m ? sheet : 0;
}

// Preimage chains of one vertex from its four quadrant coefficients alone.
// Sector p sits between half-edges p and p+1; half-edges 0 and 2 are alpha.
inline std::vector<PreimageChain> local_chains(const std::array<std::int64_t, 4>& a, int vertex = 0,
                                               const std::array<int, 4>& regions = {0, 1, 2, 3}) {
    // succ[(p,k)] = sheet in sector p+1 across half-edge p+1
    auto succ = [&](int p, int k) { return glue_across(half_edge_family(p + 1), a[p], a[(p + 1) % 4], k); };
    auto pred = [&](int p, int k) {
        // inverse of succ from sector p-1
        int q = (p + 3) % 4;
        for (int j = 1; j <= a[q]; ++j)
            if (succ(q, j) == k) return j;
        return 0;
    };
    std::vector<std::vector<char>> seen(4);
    for (int p = 0; p < 4; ++p) seen[p].assign(static_cast<std::size_t>(a[p]) + 1, 0);
    std::vector<PreimageChain> out;
    auto cell = [&](int p, int k) { return QuadrantSheet{vertex, p, regions[p], k}; };
    // open chains first, from their clockwise-free end
    for (int p = 0; p < 4; ++p)
        for (int k = 1; k <= a[p]; ++k) {
            if (seen[p][k] || pred(p, k) != 0) continue;
            PreimageChain ch{vertex, {}, ChainKind::Open};
            int q = p, j = k;
            while (j != 0) {
                seen[q][j] = 1;
                ch.cells.push_back(cell(q, j));
                j = succ(q, j);
                q = (q + 1) % 4;
            }
            out.push_back(std::move(ch));
        }
    for (int p = 0; p < 4; ++p)
        for (int k = 1; k <= a[p]; ++k) {
            if (seen[p][k]) continue;
            PreimageChain ch{vertex, {}, ChainKind::Closed};
            int q = p, j = k;
            while (!seen[q][j]) {
                seen[q][j] = 1;
                ch.cells.push_back(cell(q, j));
                j = succ(q, j);
                q = (q + 1) % 4;
            }
            out.push_back(std::move(ch));
        }
    return out;
}

inline std::array<std::int64_t, 4> quadrant_coefficients(const Diagram& d, const Domain& a, int v) {
    std::array<std::int64_t, 4> c{};
    for (const auto& q : d.quadrants_at(v)) c[q.position] = a[q.region];
    return c;
}

inline std::vector<PreimageChain> classify_vertex_chains(const Diagram& d, const Domain& a, int v) {
    check_domain(d, a);
    if (!is_positive(a)) throw PreconditionError("chain classification needs a positive domain");
    std::array<int, 4> regions{};
    for (const auto& q : d.quadrants_at(v)) regions[q.position] = q.region;
    return local_chains(quadrant_coefficients(d, a, v), v, regions);
}

// x-type sector: the region leaves the vertex along alpha and arrives along
// beta. Rotations start with alpha-forward, so these are the even sectors.
inline bool sector_is_x_type(int p) { return ((p % 4) + 4) % 2 == 0; }

}  // namespace hd
