#pragma once

#include "chains.hpp"
#include "index.hpp"
#include "rational.hpp"

#include <set>

namespace hd {

enum class Stage { S0 = 0, S1, S2, S3, S4 };
inline const char* stage_name(Stage s) {
    static const char* n[] = {"S0", "S1", "S2", "S3", "S4"};
    return n[static_cast<int>(s)];
}

enum class FaceKind { DomainCopy, SigmaCopy };

// A side runs along Sigma-dart `dart` over the interval [t0, t1] measured from
// the dart's origin; the face lies on its left.
struct Side {
    int face = -1;
    int next = -1, prev = -1;
    int twin = -1;  // -1: boundary
    int dart = -1;
    Rational t0{0}, t1{1};
};

struct Face {
    int region = 0;
    int sheet = 0;
    FaceKind kind = FaceKind::DomainCopy;
    int firstSide = 0;
};

struct SurfacePoint {
    std::vector<int> corners;  // sides leaving the point, clockwise
    bool boundary = false;
    int theta = 0;             // total angle in units of pi/2
    int inSide = -1, outSide = -1;
    int vertex = -1;           // Sigma vertex, or -1 for a point inside an edge
    int edgeDart = -1;         // forward dart of the edge for edge points
    Rational position{0};      // along edgeDart
};

struct CornerInfo {
    int vertex = 0;
    bool xType = true;
    int face = -1;             // -1 for a degenerate disk
    bool degenerate = false;
    bool operator==(const CornerInfo&) const = default;
};

struct BranchPoint {
    bool boundary = false;
    int order = 0;             // m - 1 where the total angle is 4m (interior) or 2m (boundary)
    int vertex = -1;
    int edgeDart = -1;
    Rational position{0};
};

struct BoundaryArc {
    Family family;
    int curve;
    bool circle;
    int sides;
};

struct SurfaceCensus {
    std::int64_t V = 0, F = 0;
    Rational E{0};
    std::int64_t chi = 0;
    std::vector<CornerInfo> corners;
    std::vector<BranchPoint> branchPoints;
    int badCorners = 0;     // odd boundary angle > 1 with a family change
    int badPoints = 0;      // any other impossible angle
    // [family][curve] -> number of arcs / circles mapped there
    std::array<std::vector<int>, 2> arcs, circles;
    std::vector<BoundaryArc> arcList;
    int boundaryComponents = 0;
    std::vector<int> cornersPerBoundary;
    int components = 0;
    int closedComponents = 0;
    Domain pushforward;
    Rational branchSigma{0};  // sum_int (m-1) + sum_bdy (m-1)/2
    Rational curvature{0};    // sum of vertex curvatures, nondegenerate part
};

class BuiltSurface {
public:
    Stage stage = Stage::S0;
    const Diagram* diagram = nullptr;
    Domain domain;
    Generator x, y;
    std::vector<Face> faces;
    std::vector<Side> sides;
    std::vector<int> degenerateDisks;  // vertices

    const Diagram& dia() const { return *diagram; }

    // --- construction primitives ---------------------------------------

    int add_face(int region, int sheet, FaceKind kind) {
        const auto& r = dia().region(region);
        int f = static_cast<int>(faces.size());
        int base = static_cast<int>(sides.size());
        faces.push_back({region, sheet, kind, base});
        const int n = static_cast<int>(r.boundary.size());
        for (int i = 0; i < n; ++i) {
            Side s;
            s.face = f;
            s.dart = r.boundary[i];
            s.next = base + (i + 1) % n;
            s.prev = base + (i + n - 1) % n;
            sides.push_back(s);
        }
        return f;
    }

    // Side of face f leaving the Sigma vertex along dart d. Stable under splits.
    int corner_side(int f, int d) const {
        const auto& b = dia().region(faces[f].region).boundary;
        auto it = std::find(b.begin(), b.end(), d);
        if (it == b.end()) throw std::logic_error("dart not on face boundary");
        return faces[f].firstSide + static_cast<int>(it - b.begin());
    }

    void glue(int a, int b) {
        if (sides[a].twin != -1 || sides[b].twin != -1) throw std::logic_error("gluing a glued side");
        if (sides[b].dart != dia().rev(sides[a].dart) || sides[a].t0 != Rational(1) - sides[b].t1 ||
            sides[a].t1 != Rational(1) - sides[b].t0)
            throw std::logic_error("gluing sides over different segments");
        sides[a].twin = b;
        sides[b].twin = a;
    }

    void unglue(int a) {
        int b = sides[a].twin;
        if (b < 0) throw std::logic_error("ungluing a boundary side");
        sides[a].twin = sides[b].twin = -1;
    }

    // Split side s at parameter tm; s keeps [t0,tm], the new side takes
    // [tm,t1]. A twin is split correspondingly. Returns the new side.
    int split(int s, const Rational& tm) {
        if (!(sides[s].t0 < tm && tm < sides[s].t1)) throw std::logic_error("split outside side");
        int s2 = split_one(s, tm);
        int t = sides[s].twin;
        if (t >= 0) {
            int t2 = split_one(t, Rational(1) - tm);
            // s=[t0,tm] faces t2, s2=[tm,t1] faces t
            sides[s].twin = t2;
            sides[t2].twin = s;
            sides[s2].twin = t;
            sides[t].twin = s2;
        }
        return s2;
    }

    // Piece of the outgoing side s (which starts at a Sigma vertex) covering
    // exactly the first len of its edge.
    int near_out(int s, const Rational& len = Rational(1, 2)) {
        if (sides[s].t0 != Rational(0)) throw std::logic_error("near_out on a side not starting at a vertex");
        if (sides[s].t1 > len) split(s, len);
        if (sides[s].t1 != len) throw std::logic_error("near_out piece too short");
        return s;
    }

    // Piece of the side ending at the origin of corner side c, covering
    // exactly the last len of its edge.
    int near_in(int c, const Rational& len = Rational(1, 2)) {
        int s = sides[c].prev;
        if (sides[s].t1 != Rational(1)) throw std::logic_error("near_in on a side not ending at a vertex");
        Rational m = Rational(1) - len;
        if (sides[s].t0 < m) s = split(s, m);
        if (sides[s].t0 != m) throw std::logic_error("near_in piece too short");
        return s;
    }

    // Half-edge slit: unglue the piece of s of length len next to its
    // starting vertex.
    void slit_out(int s, const Rational& len = Rational(1, 2)) { unglue(near_out(s, len)); }

    // --- analysis -------------------------------------------------------

    Family side_family(int s) const { return dart_of(sides[s].dart).family; }
    int side_curve(int s) const {
        Dart d = dart_of(sides[s].dart);
        return dia().curve_of(d.family, d.vertex);
    }
    int angle(int s) const { return sides[s].t0 == Rational(0) ? 1 : 2; }

    int next_boundary(int b) const {
        int c = sides[b].next;
        while (sides[c].twin != -1) c = sides[sides[c].twin].next;
        return c;
    }

    std::vector<SurfacePoint> points() const {
        std::vector<SurfacePoint> out;
        std::vector<char> seen(sides.size(), 0);
        for (int s0 = 0; s0 < static_cast<int>(sides.size()); ++s0) {
            if (seen[s0]) continue;
            int start = s0;
            bool closed = false;
            for (int b = s0;;) {
                int p = sides[b].prev;
                if (sides[p].twin == -1) {
                    start = b;
                    break;
                }
                b = sides[p].twin;
                if (b == s0) {
                    closed = true;
                    start = s0;
                    break;
                }
            }
            SurfacePoint pt;
            pt.boundary = !closed;
            int c = start;
            while (true) {
                seen[c] = 1;
                pt.corners.push_back(c);
                pt.theta += angle(c);
                if (sides[c].twin == -1) {
                    pt.outSide = c;
                    break;
                }
                c = sides[sides[c].twin].next;
                if (c == start) break;
            }
            if (pt.boundary) pt.inSide = sides[start].prev;
            const Side& sd = sides[start];
            if (sd.t0 == Rational(0)) {
                pt.vertex = dart_of(sd.dart).vertex;
            } else {
                Dart dd = dart_of(sd.dart);
                if (dd.sense == Sense::Forward) {
                    pt.edgeDart = sd.dart;
                    pt.position = sd.t0;
                } else {
                    pt.edgeDart = dia().rev(sd.dart);
                    pt.position = Rational(1) - sd.t0;
                }
            }
            out.push_back(std::move(pt));
        }
        return out;
    }

    SurfaceCensus census() const {
        const Diagram& d = dia();
        SurfaceCensus c;
        auto pts = points();
        c.V = static_cast<std::int64_t>(pts.size());
        c.F = static_cast<std::int64_t>(faces.size());
        for (const auto& s : sides) c.E += s.twin < 0 ? Rational(1) : Rational(1, 2);
        if (!is_integer(c.E)) throw std::logic_error("unpaired twin");
        c.chi = c.V - c.E.numerator() + c.F + static_cast<std::int64_t>(degenerateDisks.size());

        for (const auto& pt : pts) {
            if (!pt.boundary) {
                c.curvature += Rational(1) - Rational(pt.theta, 4);
                if (pt.theta % 4 != 0) {
                    ++c.badPoints;
                } else if (pt.theta > 4) {
                    c.branchPoints.push_back({false, pt.theta / 4 - 1, pt.vertex, pt.edgeDart, pt.position});
                    c.branchSigma += pt.theta / 4 - 1;
                }
                continue;
            }
            c.curvature += Rational(1, 2) - Rational(pt.theta, 4);
            Family fi = side_family(pt.inSide), fo = side_family(pt.outSide);
            if (fi != fo) {
                if (pt.theta % 2 == 0) ++c.badPoints;
                else if (pt.theta > 1) ++c.badCorners;
                else c.corners.push_back({pt.vertex, fi == Family::Beta, sides[pt.outSide].face, false});
            } else if (pt.theta % 2 != 0) {
                ++c.badPoints;
            } else if (pt.theta > 2) {
                c.branchPoints.push_back({true, pt.theta / 2 - 1, pt.vertex, pt.edgeDart, pt.position});
                c.branchSigma += Rational(pt.theta / 2 - 1, 2);
            }
        }
        for (int v : degenerateDisks) {
            c.corners.push_back({v, true, -1, true});
            c.corners.push_back({v, false, -1, true});
        }
        std::sort(c.corners.begin(), c.corners.end(), [](const CornerInfo& a, const CornerInfo& b) {
            return std::tie(a.vertex, a.xType, a.degenerate, a.face) < std::tie(b.vertex, b.xType, b.degenerate, b.face);
        });

        // boundary components and arcs
        for (int f = 0; f < 2; ++f) {
            c.arcs[f].assign(d.curves(static_cast<Family>(f)).size(), 0);
            c.circles[f].assign(d.curves(static_cast<Family>(f)).size(), 0);
        }
        std::vector<char> seen(sides.size(), 0);
        for (int s0 = 0; s0 < static_cast<int>(sides.size()); ++s0) {
            if (sides[s0].twin != -1 || seen[s0]) continue;
            std::vector<int> cyc;
            for (int b = s0; !seen[b]; b = next_boundary(b)) {
                seen[b] = 1;
                cyc.push_back(b);
            }
            ++c.boundaryComponents;
            const int n = static_cast<int>(cyc.size());
            int changes = 0, firstChange = -1;
            for (int i = 0; i < n; ++i)
                if (side_family(cyc[i]) != side_family(cyc[(i + 1) % n])) {
                    ++changes;
                    if (firstChange < 0) firstChange = i;
                }
            c.cornersPerBoundary.push_back(changes);
            if (changes == 0) {
                Family fam = side_family(cyc[0]);
                int cur = side_curve(cyc[0]);
                ++c.circles[static_cast<int>(fam)][cur];
                c.arcList.push_back({fam, cur, true, n});
                continue;
            }
            // runs start after each family change
            for (int i = 0; i < n; ++i) {
                int a = cyc[(firstChange + 1 + i) % n];
                int prev = cyc[(firstChange + i) % n];
                if (side_family(a) == side_family(prev)) {
                    ++c.arcList.back().sides;
                    continue;
                }
                c.arcList.push_back({side_family(a), side_curve(a), false, 1});
                ++c.arcs[static_cast<int>(side_family(a))][side_curve(a)];
            }
        }
        for (int v : degenerateDisks) {
            ++c.arcs[0][d.curve_of(Family::Alpha, v)];
            ++c.arcs[1][d.curve_of(Family::Beta, v)];
            c.arcList.push_back({Family::Alpha, d.curve_of(Family::Alpha, v), false, 0});
            c.arcList.push_back({Family::Beta, d.curve_of(Family::Beta, v), false, 0});
            c.cornersPerBoundary.push_back(2);
            ++c.boundaryComponents;
        }

        // connected components over faces
        std::vector<int> par(faces.size());
        std::iota(par.begin(), par.end(), 0);
        auto find = [&](int a) {
            while (par[a] != a) a = par[a] = par[par[a]];
            return a;
        };
        for (const auto& s : sides)
            if (s.twin >= 0) par[find(s.face)] = find(sides[s.twin].face);
        std::vector<char> hasBoundary(faces.size(), 0);
        for (const auto& s : sides)
            if (s.twin < 0) hasBoundary[find(s.face)] = 1;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (find(f) == f) {
                ++c.components;
                if (!hasBoundary[f]) ++c.closedComponents;
            }
        c.components += static_cast<int>(degenerateDisks.size());

        c.pushforward = zero_domain(d);
        for (const auto& f : faces) c.pushforward[f.region] += 1;
        return c;
    }

    // Faces of each closed (boundaryless) component, by lowest face index.
    std::vector<std::vector<int>> closed_components() const {
        std::vector<int> par(faces.size());
        std::iota(par.begin(), par.end(), 0);
        auto find = [&](int a) {
            while (par[a] != a) a = par[a] = par[par[a]];
            return a;
        };
        for (const auto& s : sides)
            if (s.twin >= 0) par[find(s.face)] = find(sides[s.twin].face);
        std::vector<char> hasBoundary(faces.size(), 0);
        for (const auto& s : sides)
            if (s.twin < 0) hasBoundary[find(s.face)] = 1;
        std::map<int, std::vector<int>> comps;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f)
            if (!hasBoundary[find(f)]) comps[find(f)].push_back(f);
        std::vector<std::vector<int>> out;
        for (auto& [k, v] : comps) out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    int split_one(int s, const Rational& tm) {
        Side n = sides[s];
        n.t0 = tm;
        n.prev = s;
        n.twin = -1;
        int id = static_cast<int>(sides.size());
        sides[s].t1 = tm;
        sides[sides[s].next].prev = id;
        sides[s].next = id;
        sides.push_back(n);
        return id;
    }
};

// --- stage transformers ------------------------------------------------

inline BuiltSurface glue_copies(const Diagram& d, const Domain& a) {
    check_domain(d, a);
    if (!is_positive(a)) throw PreconditionError("surface construction needs a positive domain");
    BuiltSurface s;
    s.stage = Stage::S0;
    s.diagram = &d;
    s.domain = a;
    std::vector<std::vector<int>> copy(d.region_count());
    for (int r = 0; r < d.region_count(); ++r)
        for (int k = 1; k <= a[r]; ++k) copy[r].push_back(s.add_face(r, k, FaceKind::DomainCopy));
    for (int v = 0; v < d.vertex_count(); ++v)
        for (Family f : {Family::Alpha, Family::Beta}) {
            int dd = dart_id(v, f, Sense::Forward), rd = d.rev(dd);
            int L = d.face_of(dd), R = d.face_of(rd);
            std::int64_t nl = a[L], nr = a[R];
            for (int k = 1; k <= nl; ++k) {
                std::int64_t j;
                if (f == Family::Alpha) {
                    j = nl <= nr ? k + (nr - nl) : k - (nl - nr);
                } else {
                    j = k;
                }
                if (j < 1 || j > nr) continue;
                int sl = s.corner_side(copy[L][k - 1], dd);
                int sr = s.corner_side(copy[R][j - 1], rd);
                s.glue(sl, sr);
            }
        }
    return s;
}

inline BuiltSurface cut_bad_corners(const BuiltSurface& s0) {
    BuiltSurface s = s0;
    s.stage = Stage::S1;
    std::vector<int> cuts;
    for (const auto& pt : s.points()) {
        if (!pt.boundary || pt.vertex < 0) continue;
        if (s.side_family(pt.inSide) == s.side_family(pt.outSide)) continue;
        if (pt.theta == 1) continue;
        if (pt.theta % 2 == 0) throw std::logic_error("even chain with a family change");
        for (std::size_t k = 0; k + 1 < pt.corners.size(); ++k)
            if (s.side_family(pt.corners[k]) == Family::Beta) cuts.push_back(pt.corners[k]);
    }
    for (int c : cuts) s.slit_out(c);
    return s;
}

inline BuiltSurface add_degenerate_corners(const BuiltSurface& s1, const Generator& x, const Generator& y) {
    BuiltSurface s = s1;
    s.stage = Stage::S2;
    s.x = x;
    s.y = y;
    for (int v : x.points) {
        if (!y.contains(v)) continue;
        const SurfacePoint* open = nullptr;
        auto pts = s.points();
        for (const auto& pt : pts)
            if (pt.vertex == v && pt.boundary) {
                open = &pt;
                break;
            }
        if (!open) {
            s.degenerateDisks.push_back(v);
            continue;
        }
        if (open->corners.size() != 2) throw std::logic_error("open chain at a shared point is not of length 2");
        s.slit_out(open->corners[0]);
    }
    return s;
}

namespace detail {

inline int x_point_on(const BuiltSurface& s, Family f, int curve) {
    for (int v : s.x.points)
        if (s.dia().curve_of(f, v) == curve) return v;
    throw std::logic_error("no generator point on curve");
}

// The x-type corner cell sitting at Sigma vertex v.
inline int x_corner_at(const BuiltSurface& s, const std::vector<SurfacePoint>& pts, int v) {
    int found = -1;
    for (const auto& pt : pts) {
        if (pt.vertex != v || !pt.boundary || pt.theta != 1) continue;
        if (s.side_family(pt.inSide) == Family::Beta && s.side_family(pt.outSide) == Family::Alpha) {
            if (found >= 0) throw std::logic_error("two x-corners at one vertex");
            found = pt.corners[0];
        }
    }
    return found;
}

}  // namespace detail

// Slits and regluings at generator points stay within a quarter edge, so
// they never reach a half-edge cut made from the other end.
inline const Rational kSpliceLength(1, 4);

inline BuiltSurface splice_boundary_circles(const BuiltSurface& s2) {
    BuiltSurface s = s2;
    s.stage = Stage::S3;
    const Diagram& d = s.dia();
    int guard = 0;
    {
        auto c = s.census();
        for (int f = 0; f < 2; ++f)
            for (int n : c.circles[f]) guard += n;
    }
    for (int iter = 0;; ++iter) {
        // first circle in (family, curve, discovery) order
        std::vector<char> seen(s.sides.size(), 0);
        int best = -1;
        std::pair<int, int> bestKey{3, 0};
        for (int s0 = 0; s0 < static_cast<int>(s.sides.size()); ++s0) {
            if (s.sides[s0].twin != -1 || seen[s0]) continue;
            bool circle = true;
            for (int b = s0; !seen[b]; b = s.next_boundary(b)) {
                seen[b] = 1;
                if (s.side_family(b) != s.side_family(s0)) circle = false;
            }
            if (!circle) continue;
            std::pair<int, int> key{static_cast<int>(s.side_family(s0)), s.side_curve(s0)};
            if (key < bestKey) {
                bestKey = key;
                best = s0;
            }
        }
        if (best < 0) break;
        if (iter >= guard) throw std::logic_error("splicing did not terminate");
        Family fam = s.side_family(best);
        int P = detail::x_point_on(s, fam, s.side_curve(best));
        std::set<int> onCircle;
        for (int b = best; onCircle.insert(b).second; b = s.next_boundary(b)) {}
        auto pts = s.points();
        const SurfacePoint* q = nullptr;
        for (const auto& pt : pts)
            if (pt.vertex == P && pt.boundary && onCircle.count(pt.inSide)) {
                q = &pt;
                break;
            }
        if (!q || q->corners.size() != 2) throw std::logic_error("circle does not pass its generator point simply");
        int cp = detail::x_corner_at(s, pts, P);
        if (cp < 0) throw std::logic_error("no x-corner at generator point");
        int c1 = q->corners[0], c2 = q->corners[1];
        int p = d.rot_position(s.sides[cp].dart);
        auto sector = [&](int side) { return d.rot_position(s.sides[side].dart); };
        s.slit_out(c1, kSpliceLength);
        int across = -1;
        bool below = false;
        for (int c : {c1, c2}) {
            if (sector(c) == (p + 3) % 4) {
                across = c;
                below = true;
            } else if (sector(c) == (p + 1) % 4) {
                across = c;
            }
        }
        if (across < 0) throw std::logic_error("circle point not adjacent to the x-corner");
        if (below) {
            // across the corner's outgoing alpha side
            s.glue(s.near_out(cp, kSpliceLength), s.near_in(across, kSpliceLength));
        } else {
            s.glue(s.near_out(across, kSpliceLength), s.near_in(cp, kSpliceLength));
        }
    }
    return s;
}

inline void require_surface_input(const Diagram& d, const Domain& a, const Generator& x, const Generator& y) {
    check_domain(d, a);
    check_generator(d, x);
    check_generator(d, y);
    if (!is_positive(a)) throw PreconditionError("surface construction needs a positive domain");
    if (!connects(d, a, x, y))
        throw PreconditionError("domain " + format_domain(a) + " does not connect " + format_generator(d, x) + " to " +
                                format_generator(d, y));
}

inline BuiltSurface build_surface(const Diagram& d, const Domain& a, const Generator& x, const Generator& y) {
    require_surface_input(d, a, x, y);
    return splice_boundary_circles(add_degenerate_corners(cut_bad_corners(glue_copies(d, a)), x, y));
}

inline BuiltSurface stabilized_surface(const Diagram& d, const Domain& a, const Generator& x, const Generator& y) {
    if (d.genus() <= 1) throw PreconditionError("stabilized surface needs genus > 1");
    require_surface_input(d, a, x, y);
    BuiltSurface s = build_surface(d, a, x, y);
    s.stage = Stage::S4;

    // cut half-edges of the Sigma copy, and the x-corner of S3 at each x_i
    std::map<int, std::array<int, 3>> cutsAt;
    std::map<int, int> cornerAt;
    std::set<int> degenerate(s.degenerateDisks.begin(), s.degenerateDisks.end());
    {
        auto pts = s.points();
        for (int v : x.points) {
            const auto& rot = d.rotation(v);
            if (degenerate.count(v)) {
                cutsAt[v] = {rot[0], rot[2], dart_id(v, Family::Beta, Sense::Forward)};
                continue;
            }
            int cp = detail::x_corner_at(s, pts, v);
            if (cp < 0) throw std::logic_error("no x-corner at generator point");
            cornerAt[v] = cp;
            int p = d.rot_position(s.sides[cp].dart);
            cutsAt[v] = {rot[0], rot[2], rot[(p + 1) % 4]};
        }
    }
    auto isCut = [&](int dd) {
        auto it = cutsAt.find(dart_of(dd).vertex);
        return it != cutsAt.end() && std::find(it->second.begin(), it->second.end(), dd) != it->second.end();
    };

    auto closed = s.closed_components();
    std::vector<int> sigma(d.region_count());
    for (int r = 0; r < d.region_count(); ++r)
        sigma[r] = s.add_face(r, static_cast<int>(a[r]) + 1, FaceKind::SigmaCopy);
    for (int v = 0; v < d.vertex_count(); ++v)
        for (Family f : {Family::Alpha, Family::Beta}) {
            int dd = dart_id(v, f, Sense::Forward), rd = d.rev(dd);
            s.glue(s.corner_side(sigma[d.face_of(dd)], dd), s.corner_side(sigma[d.face_of(rd)], rd));
        }

    // join each closed component to the Sigma copy by a crosswise reglued
    // segment inside an edge half that no cut touches
    std::set<int> usedEdges;
    for (const auto& comp : closed) {
        bool done = false;
        for (int f : comp) {
            const auto& b = d.region(s.faces[f].region).boundary;
            for (std::size_t i = 0; i < b.size() && !done; ++i) {
                int dd = b[i];
                int u = s.corner_side(f, dd);
                if (s.sides[u].twin < 0 || s.sides[u].t1 != Rational(1)) continue;
                int rd = d.rev(dd);
                if (usedEdges.count(std::min(dd, rd))) continue;
                Rational lo, hi;
                if (!isCut(dd)) {
                    lo = Rational(1, 8);
                    hi = Rational(3, 8);
                } else if (!isCut(rd)) {
                    lo = Rational(5, 8);
                    hi = Rational(7, 8);
                } else {
                    continue;
                }
                usedEdges.insert(std::min(dd, rd));
                int sg = s.corner_side(sigma[s.faces[f].region], dd);
                int uMid = s.split(u, lo);
                s.split(uMid, hi);
                int sMid = s.split(sg, lo);
                s.split(sMid, hi);
                int uTw = s.sides[uMid].twin, sTw = s.sides[sMid].twin;
                s.unglue(uMid);
                s.unglue(sMid);
                s.glue(uMid, sTw);
                s.glue(sMid, uTw);
                done = true;
            }
            if (done) break;
        }
        if (!done) throw std::logic_error("no free edge to join a closed component");
    }

    for (int v : x.points) {
        auto it = cutsAt.find(v);
        for (int dd : it->second) s.slit_out(s.corner_side(sigma[d.face_of(dd)], dd), kSpliceLength);
        if (degenerate.count(v)) {
            s.degenerateDisks.erase(std::find(s.degenerateDisks.begin(), s.degenerateDisks.end(), v));
            continue;
        }
        int cp = cornerAt[v];
        int h = it->second[2];
        s.glue(s.near_out(s.corner_side(sigma[d.face_of(h)], h), kSpliceLength), s.near_in(cp, kSpliceLength));
    }
    return s;
}

struct CoverCheck {
    bool ok = true;
    std::vector<std::string> violations;
    int cornerHalves = 0;
    Rational branchBudget{0};
    Rational branchSigma{0};
    Rational eulerMeasure{0};
    std::int64_t chi = 0;
    int g = 0;
};

inline CoverCheck branched_cover_check(const BuiltSurface& s) {
    CoverCheck r;
    if (s.stage != Stage::S4) throw PreconditionError("branched cover check needs a stage S4 surface");
    const Diagram& d = s.dia();
    auto c = s.census();
    r.g = d.genus();
    r.chi = c.chi;
    auto fail = [&](const std::string& m) {
        r.ok = false;
        r.violations.push_back(m);
    };
    int halves2 = 0;
    for (int n : c.cornersPerBoundary) {
        halves2 += n;
        if (n % 2 != 0) fail("boundary component with an odd number of corners");
        if (n < 2) fail("boundary component without corners");
    }
    r.cornerHalves = halves2 / 2;
    if (r.cornerHalves != r.g) fail("corner halves sum to " + std::to_string(r.cornerHalves) + ", expected g");
    r.branchBudget = branch_budget(r.g, Rational(c.chi));
    if (!is_integer(r.branchBudget) || r.branchBudget < Rational(0)) fail("branch budget is not a nonnegative integer");
    if (c.components != 1) fail("stabilized surface has " + std::to_string(c.components) + " components");
    if (c.pushforward != s.domain + sigma_class(d)) fail("pushforward differs from A + [Sigma]");
    if (static_cast<int>(c.corners.size()) != 2 * r.g) fail("corner count is not 2g");
    if (c.badCorners || c.badPoints) fail("surface has bad corners or impossible angles");
    r.eulerMeasure = euler_measure(d, c.pushforward);
    r.branchSigma = c.branchSigma;
    if (Rational(c.chi) != r.eulerMeasure + Rational(r.g, 2) - r.branchSigma)
        fail("Riemann-Hurwitz ledger does not balance");
    return r;
}

}  // namespace hd
