#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hd {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Family : int { Alpha = 0, Beta = 1 };
enum class Sense : int { Forward = 0, Backward = 1 };

inline Family other(Family f) { return f == Family::Alpha ? Family::Beta : Family::Alpha; }
inline const char* family_name(Family f) { return f == Family::Alpha ? "alpha" : "beta"; }

// Dart ids: 4*v + 2*family + sense.
struct Dart {
    int vertex;
    Family family;
    Sense sense;
};

inline int dart_id(int v, Family f, Sense s) { return 4 * v + 2 * static_cast<int>(f) + static_cast<int>(s); }
inline Dart dart_of(int id) {
    return {id / 4, static_cast<Family>((id / 2) % 2), static_cast<Sense>(id % 2)};
}

struct Curve {
    std::string name;
    std::vector<int> vertices;
    bool operator==(const Curve&) const = default;
};

struct Region {
    int id = 0;
    std::vector<int> boundary;  // darts, counterclockwise
    int cornerCount = 0;
};

struct Quadrant {
    int vertex;
    int region;
    int position;  // sector between rotation[position] and rotation[position+1]
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

class Diagram {
public:
    Diagram() = default;

    // Structural preconditions (each vertex exactly once per family, one sign
    // each) are the caller's job; parse_diagram enforces them with line numbers.
    Diagram(std::vector<std::string> names, std::vector<Curve> alpha, std::vector<Curve> beta,
            std::vector<int> sign)
        : names_(std::move(names)), sign_(std::move(sign)) {
        curves_[0] = std::move(alpha);
        curves_[1] = std::move(beta);
        derive();
    }

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int dart_count() const { return 4 * vertex_count(); }
    int region_count() const { return static_cast<int>(regions_.size()); }
    int genus() const { return genus_; }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_.at(v); }
    int sign(int v) const { return sign_.at(v); }
    const std::vector<int>& signs() const { return sign_; }
    const std::vector<Curve>& curves(Family f) const { return curves_[static_cast<int>(f)]; }
    const std::vector<Curve>& alpha() const { return curves_[0]; }
    const std::vector<Curve>& beta() const { return curves_[1]; }
    const std::vector<Region>& regions() const { return regions_; }
    const Region& region(int r) const { return regions_.at(r); }

    int vertex_id(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) throw PreconditionError("unknown vertex '" + n + "'");
        return it->second;
    }
    std::optional<int> find_vertex(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int curve_of(Family f, int v) const { return curveOf_[static_cast<int>(f)][v]; }
    int position_on_curve(Family f, int v) const { return posOf_[static_cast<int>(f)][v]; }
    int next_on_curve(Family f, int v) const {
        const auto& c = curves(f)[curve_of(f, v)].vertices;
        return c[(position_on_curve(f, v) + 1) % c.size()];
    }
    int prev_on_curve(Family f, int v) const {
        const auto& c = curves(f)[curve_of(f, v)].vertices;
        return c[(position_on_curve(f, v) + c.size() - 1) % c.size()];
    }

    // Edge-reversal involution.
    int rev(int d) const {
        Dart x = dart_of(d);
        if (x.sense == Sense::Forward) return dart_id(next_on_curve(x.family, x.vertex), x.family, Sense::Backward);
        return dart_id(prev_on_curve(x.family, x.vertex), x.family, Sense::Forward);
    }
    const std::array<int, 4>& rotation(int v) const { return rotation_.at(v); }
    int rot(int d) const { return rotNext_[d]; }
    int rot_inv(int d) const { return rotPrev_[d]; }
    int rot_position(int d) const { return rotPos_[d]; }
    int face_step(int d) const { return rot_inv(rev(d)); }
    int face_of(int d) const { return faceOf_[d]; }

    // Region of the sector at rotation position p of v.
    int region_at(int v, int p) const { return faceOf_[rotation_[v][((p % 4) + 4) % 4]]; }

    std::array<Quadrant, 4> quadrants_at(int v) const {
        if (v < 0 || v >= vertex_count()) throw PreconditionError("unknown vertex id " + std::to_string(v));
        std::array<Quadrant, 4> q{};
        for (int p = 0; p < 4; ++p) q[p] = {v, region_at(v, p), p};
        return q;
    }

    bool operator==(const Diagram& o) const {
        return names_ == o.names_ && sign_ == o.sign_ && curves_[0] == o.curves_[0] && curves_[1] == o.curves_[1];
    }

private:
    void derive();

    std::vector<std::string> names_;
    std::map<std::string, int> index_;
    std::vector<int> sign_;
    std::array<std::vector<Curve>, 2> curves_;
    std::array<std::vector<int>, 2> curveOf_, posOf_;
    std::vector<std::array<int, 4>> rotation_;
    std::vector<int> rotNext_, rotPrev_, rotPos_;
    std::vector<int> faceOf_;
    std::vector<Region> regions_;
    int genus_ = 0;
};

// Faces are orbits of rot^-1 o rev, discovered in canonical dart order:
// alpha curves then beta curves, by curve position, then vertex position,
// forward before backward.
inline std::vector<Region> trace_faces(const Diagram& d) {
    std::vector<int> label(d.dart_count(), -1);
    std::vector<Region> out;
    for (int f = 0; f < 2; ++f) {
        Family fam = static_cast<Family>(f);
        for (const auto& c : d.curves(fam)) {
            for (int v : c.vertices) {
                for (int s = 0; s < 2; ++s) {
                    int start = dart_id(v, fam, static_cast<Sense>(s));
                    if (label[start] >= 0) continue;
                    Region r;
                    r.id = static_cast<int>(out.size());
                    int e = start;
                    while (label[e] < 0) {
                        label[e] = r.id;
                        r.boundary.push_back(e);
                        e = d.face_step(e);
                    }
                    r.cornerCount = static_cast<int>(r.boundary.size());
                    out.push_back(std::move(r));
                }
            }
        }
    }
    return out;
}

inline void Diagram::derive() {
    const int V = vertex_count();
    index_.clear();
    for (int v = 0; v < V; ++v) index_[names_[v]] = v;
    for (int f = 0; f < 2; ++f) {
        curveOf_[f].assign(V, -1);
        posOf_[f].assign(V, -1);
        for (std::size_t ci = 0; ci < curves_[f].size(); ++ci) {
            const auto& c = curves_[f][ci].vertices;
            for (std::size_t i = 0; i < c.size(); ++i) {
                curveOf_[f][c[i]] = static_cast<int>(ci);
                posOf_[f][c[i]] = static_cast<int>(i);
            }
        }
    }
    rotation_.assign(V, {});
    rotNext_.assign(4 * V, -1);
    rotPrev_.assign(4 * V, -1);
    rotPos_.assign(4 * V, -1);
    for (int v = 0; v < V; ++v) {
        int af = dart_id(v, Family::Alpha, Sense::Forward), ab = dart_id(v, Family::Alpha, Sense::Backward);
        int bf = dart_id(v, Family::Beta, Sense::Forward), bb = dart_id(v, Family::Beta, Sense::Backward);
        rotation_[v] = sign_[v] > 0 ? std::array<int, 4>{af, bf, ab, bb} : std::array<int, 4>{af, bb, ab, bf};
        for (int i = 0; i < 4; ++i) {
            rotNext_[rotation_[v][i]] = rotation_[v][(i + 1) % 4];
            rotPrev_[rotation_[v][(i + 1) % 4]] = rotation_[v][i];
            rotPos_[rotation_[v][i]] = i;
        }
    }
    regions_ = trace_faces(*this);
    faceOf_.assign(4 * V, -1);
    for (const auto& r : regions_)
        for (int dd : r.boundary) faceOf_[dd] = r.id;
    // V - E + F with E = 2V
    genus_ = (2 - (region_count() - V)) / 2;
}

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '.' || c == '\'';
    });
}

}  // namespace detail

inline Diagram parse_diagram(const std::string& text) {
    struct RawCurve {
        std::string name;
        std::vector<std::string> verts;
        int line;
    };
    std::vector<RawCurve> raw[2];
    std::map<std::string, std::pair<int, int>> signs;  // name -> (sign, line)

    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        auto head = detail::split_ws(colon == std::string::npos ? line : line.substr(0, colon));
        if (head.empty()) throw ParseError(ln, "unknown token ':'");
        const std::string& kw = head[0];
        if (kw != "alpha" && kw != "beta" && kw != "sign")
            throw ParseError(ln, "unknown token '" + kw + "'");
        if (colon == std::string::npos) throw ParseError(ln, "expected ':' after " + kw + " name");
        if (head.size() != 2 || !detail::valid_name(head[1]))
            throw ParseError(ln, "expected exactly one name before ':'");
        auto body = detail::split_ws(line.substr(colon + 1));
        if (kw == "sign") {
            if (body.size() != 1) throw ParseError(ln, "expected a single sign after ':'");
            int s = 0;
            if (body[0] == "+") s = 1;
            else if (body[0] == "-" || body[0] == "−") s = -1;
            else throw ParseError(ln, "unknown token '" + body[0] + "'");
            if (signs.count(head[1])) throw ParseError(ln, "duplicate sign for vertex '" + head[1] + "'");
            signs[head[1]] = {s, ln};
            continue;
        }
        int fam = kw == "alpha" ? 0 : 1;
        if (body.empty()) throw ParseError(ln, "empty " + kw + " curve '" + head[1] + "'");
        for (const auto& t : body)
            if (!detail::valid_name(t)) throw ParseError(ln, "unknown token '" + t + "'");
        for (const auto& c : raw[fam])
            if (c.name == head[1]) throw ParseError(ln, "duplicate " + kw + " curve name '" + head[1] + "'");
        raw[fam].push_back({head[1], body, ln});
    }
    if (raw[0].empty()) throw ParseError(ln, "no alpha curves");
    if (raw[1].empty()) throw ParseError(ln, "no beta curves");

    std::vector<std::string> names;
    std::map<std::string, int> id;
    std::map<std::string, int> firstLine;
    std::map<std::string, int> seen[2];
    for (int fam = 0; fam < 2; ++fam) {
        for (const auto& c : raw[fam]) {
            for (const auto& v : c.verts) {
                if (seen[fam].count(v))
                    throw ParseError(c.line, "duplicate vertex '" + v + "' in " +
                                                 family_name(static_cast<Family>(fam)) + " curves");
                seen[fam][v] = c.line;
                if (fam == 0) {
                    id[v] = static_cast<int>(names.size());
                    names.push_back(v);
                }
            }
        }
    }
    for (const auto& [v, l] : seen[1])
        if (!seen[0].count(v)) throw ParseError(l, "vertex '" + v + "' missing from alpha curves");
    for (const auto& [v, l] : seen[0])
        if (!seen[1].count(v)) throw ParseError(l, "vertex '" + v + "' missing from beta curves");
    for (const auto& [v, sl] : signs)
        if (!id.count(v)) throw ParseError(sl.second, "sign for unknown vertex '" + v + "'");
    std::vector<int> sign(names.size(), 0);
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto it = signs.find(names[i]);
        if (it == signs.end()) throw ParseError(seen[0][names[i]], "missing sign for vertex '" + names[i] + "'");
        sign[i] = it->second.first;
    }
    std::vector<Curve> curves[2];
    for (int fam = 0; fam < 2; ++fam)
        for (const auto& c : raw[fam]) {
            Curve k{c.name, {}};
            for (const auto& v : c.verts) k.vertices.push_back(id[v]);
            curves[fam].push_back(std::move(k));
        }
    return Diagram(std::move(names), std::move(curves[0]), std::move(curves[1]), std::move(sign));
}

// Canonical form: each curve starts at its least vertex name, curves of a
// family sorted by that name, vertex ids renumbered by first alpha appearance.
inline Diagram canonicalize(const Diagram& d) {
    std::vector<std::vector<std::string>> cs[2];
    std::vector<std::string> cn[2];
    for (int f = 0; f < 2; ++f) {
        std::vector<std::pair<std::vector<std::string>, std::string>> tmp;
        for (const auto& c : d.curves(static_cast<Family>(f))) {
            std::vector<std::string> vs;
            for (int v : c.vertices) vs.push_back(d.name(v));
            auto m = std::min_element(vs.begin(), vs.end());
            std::rotate(vs.begin(), m, vs.end());
            tmp.emplace_back(std::move(vs), c.name);
        }
        std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first[0] < b.first[0]; });
        for (auto& [vs, n] : tmp) {
            cs[f].push_back(std::move(vs));
            cn[f].push_back(n);
        }
    }
    std::vector<std::string> names;
    std::map<std::string, int> id;
    for (const auto& c : cs[0])
        for (const auto& v : c) {
            id[v] = static_cast<int>(names.size());
            names.push_back(v);
        }
    std::vector<int> sign(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) sign[i] = d.sign(d.vertex_id(names[i]));
    std::vector<Curve> curves[2];
    for (int f = 0; f < 2; ++f)
        for (std::size_t i = 0; i < cs[f].size(); ++i) {
            Curve k{cn[f][i], {}};
            for (const auto& v : cs[f][i]) k.vertices.push_back(id.at(v));
            curves[f].push_back(std::move(k));
        }
    return Diagram(std::move(names), std::move(curves[0]), std::move(curves[1]), std::move(sign));
}

inline std::string serialize_diagram(const Diagram& input) {
    Diagram d = canonicalize(input);
    std::ostringstream out;
    for (int f = 0; f < 2; ++f)
        for (const auto& c : d.curves(static_cast<Family>(f))) {
            out << family_name(static_cast<Family>(f)) << ' ' << c.name << ':';
            for (int v : c.vertices) out << ' ' << d.name(v);
            out << '\n';
        }
    for (int v = 0; v < d.vertex_count(); ++v) out << "sign " << d.name(v) << ": " << (d.sign(v) > 0 ? '+' : '-') << '\n';
    return out.str();
}

// Mirror image: every crossing sign flipped.
inline Diagram mirror(const Diagram& d) {
    std::vector<int> s = d.signs();
    for (int& x : s) x = -x;
    return Diagram(d.names(), d.alpha(), d.beta(), s);
}

namespace detail {

// Components of the face set when faces may be joined across edges of the
// given families.
inline int face_components(const Diagram& d, bool acrossAlpha, bool acrossBeta) {
    std::vector<int> par(d.region_count());
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int a) {
        while (par[a] != a) a = par[a] = par[par[a]];
        return a;
    };
    for (int dd = 0; dd < d.dart_count(); ++dd) {
        Family f = dart_of(dd).family;
        if ((f == Family::Alpha && !acrossAlpha) || (f == Family::Beta && !acrossBeta)) continue;
        par[find(d.face_of(dd))] = find(d.face_of(d.rev(dd)));
    }
    int n = 0;
    for (int r = 0; r < d.region_count(); ++r) n += find(r) == r;
    return n;
}

}  // namespace detail

inline ValidationReport validate_diagram(const Diagram& d) {
    ValidationReport rep;
    const int na = static_cast<int>(d.alpha().size()), nb = static_cast<int>(d.beta().size());
    if (na == 0) rep.violations.push_back("no alpha curves");
    if (nb == 0) rep.violations.push_back("no beta curves");
    for (int v = 0; v < d.vertex_count(); ++v) {
        if (d.curve_of(Family::Alpha, v) < 0 || d.curve_of(Family::Beta, v) < 0)
            rep.violations.push_back("vertex '" + d.name(v) + "' not on one alpha and one beta curve");
        if (d.sign(v) != 1 && d.sign(v) != -1) rep.violations.push_back("missing sign for vertex '" + d.name(v) + "'");
    }
    if (!rep.ok()) return rep;
    if (na != nb)
        rep.violations.push_back("curve count mismatch: " + std::to_string(na) + " alpha, " + std::to_string(nb) +
                                 " beta");
    if (detail::face_components(d, true, true) != 1) rep.violations.push_back("surface disconnected");
    if (d.genus() != na)
        rep.violations.push_back("genus mismatch: traced genus " + std::to_string(d.genus()) + ", " +
                                 std::to_string(na) + " alpha curves");
    if (detail::face_components(d, false, true) != 1) rep.violations.push_back("complement of alpha curves disconnected");
    if (detail::face_components(d, true, false) != 1) rep.violations.push_back("complement of beta curves disconnected");
    return rep;
}

inline int genus(const Diagram& d) { return d.genus(); }

inline std::array<Quadrant, 4> quadrants_at(const Diagram& d, int v) { return d.quadrants_at(v); }

}  // namespace hd
