#pragma once

#include "diagram.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <set>

namespace hd {

struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Generator {
    std::vector<int> points;  // indexed by alpha curve
    bool contains(int v) const { return std::find(points.begin(), points.end(), v) != points.end(); }
    auto operator<=>(const Generator&) const = default;
};

struct Domain {
    std::vector<std::int64_t> coeffs;

    Domain() = default;
    explicit Domain(std::size_t n) : coeffs(n, 0) {}
    explicit Domain(std::vector<std::int64_t> c) : coeffs(std::move(c)) {}

    std::size_t size() const { return coeffs.size(); }
    std::int64_t operator[](std::size_t r) const { return coeffs[r]; }
    std::int64_t& operator[](std::size_t r) { return coeffs[r]; }
    bool is_zero() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
    }

    Domain& operator+=(const Domain& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
        return *this;
    }
    Domain& operator-=(const Domain& o) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
        return *this;
    }
    friend Domain operator+(Domain a, const Domain& b) { return a += b; }
    friend Domain operator-(Domain a, const Domain& b) { return a -= b; }
    friend Domain operator*(std::int64_t k, Domain a) {
        for (auto& c : a.coeffs) c *= k;
        return a;
    }
    auto operator<=>(const Domain&) const = default;
};

// Edge coefficients indexed by tail vertex: edge f(v) runs from v to the next
// vertex on v's curve of family f.
struct BoundaryChain {
    std::vector<std::int64_t> alphaPart;
    std::vector<std::int64_t> betaPart;
    const std::vector<std::int64_t>& part(Family f) const { return f == Family::Alpha ? alphaPart : betaPart; }
    bool operator==(const BoundaryChain&) const = default;
};

inline Domain zero_domain(const Diagram& d) { return Domain(static_cast<std::size_t>(d.region_count())); }

inline Domain sigma_class(const Diagram& d) {
    return Domain(std::vector<std::int64_t>(static_cast<std::size_t>(d.region_count()), 1));
}

inline bool is_positive(const Domain& a) {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](std::int64_t c) { return c >= 0; });
}

inline void check_domain(const Diagram& d, const Domain& a) {
    if (static_cast<int>(a.size()) != d.region_count())
        throw PreconditionError("domain has " + std::to_string(a.size()) + " coefficients, diagram has " +
                                std::to_string(d.region_count()) + " regions");
}

inline BoundaryChain boundary_chain(const Diagram& d, const Domain& a) {
    check_domain(d, a);
    BoundaryChain ch;
    for (int f = 0; f < 2; ++f) {
        auto& part = f == 0 ? ch.alphaPart : ch.betaPart;
        part.assign(d.vertex_count(), 0);
        for (int v = 0; v < d.vertex_count(); ++v) {
            int dd = dart_id(v, static_cast<Family>(f), Sense::Forward);
            part[v] = a[d.face_of(dd)] - a[d.face_of(d.rev(dd))];
        }
    }
    return ch;
}

inline std::vector<std::int64_t> vertex_boundary(const Diagram& d, const BoundaryChain& ch, Family f) {
    std::vector<std::int64_t> out(d.vertex_count(), 0);
    const auto& part = ch.part(f);
    for (int v = 0; v < d.vertex_count(); ++v) {
        out[d.next_on_curve(f, v)] += part[v];
        out[v] -= part[v];
    }
    return out;
}

inline void check_generator(const Diagram& d, const Generator& x) {
    if (x.points.size() != d.alpha().size())
        throw PreconditionError("generator needs " + std::to_string(d.alpha().size()) + " points");
    std::set<int> betas;
    for (std::size_t i = 0; i < x.points.size(); ++i) {
        int v = x.points[i];
        if (v < 0 || v >= d.vertex_count()) throw PreconditionError("generator point out of range");
        if (d.curve_of(Family::Alpha, v) != static_cast<int>(i))
            throw PreconditionError("generator point '" + d.name(v) + "' is not on alpha curve " +
                                    d.alpha()[i].name);
        if (!betas.insert(d.curve_of(Family::Beta, v)).second)
            throw PreconditionError("generator points share beta curve " +
                                    d.beta()[d.curve_of(Family::Beta, v)].name);
    }
}

inline bool connects(const Diagram& d, const Domain& a, const Generator& x, const Generator& y) {
    auto ch = boundary_chain(d, a);
    auto da = vertex_boundary(d, ch, Family::Alpha);
    auto db = vertex_boundary(d, ch, Family::Beta);
    for (int v = 0; v < d.vertex_count(); ++v) {
        std::int64_t t = static_cast<int>(y.contains(v)) - static_cast<int>(x.contains(v));
        if (da[v] != t || db[v] != -t) return false;
    }
    return true;
}

inline Domain compose(const Diagram& d, const Domain& a, const Generator& x, const Generator& y, const Domain& b,
                      const Generator& z) {
    if (!connects(d, a, x, y)) throw PreconditionError("first domain does not connect its endpoints");
    if (!connects(d, b, y, z)) throw PreconditionError("second domain does not start at the middle generator");
    return a + b;
}

inline std::vector<Generator> enumerate_generators(const Diagram& d) {
    std::vector<Generator> out;
    const int g = static_cast<int>(d.alpha().size());
    std::vector<int> cur;
    std::vector<char> used(d.beta().size(), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == g) {
            out.push_back({cur});
            return;
        }
        for (int v : d.alpha()[i].vertices) {
            int b = d.curve_of(Family::Beta, v);
            if (used[b]) continue;
            used[b] = 1;
            cur.push_back(v);
            rec(i + 1);
            cur.pop_back();
            used[b] = 0;
        }
    };
    if (d.alpha().size() == d.beta().size()) rec(0);
    return out;
}

namespace detail {

// Alpha-family vertex boundary as a sparse V x F integer matrix; the beta
// rows are its negative.
inline std::vector<std::vector<std::pair<int, std::int64_t>>> alpha_rows(const Diagram& d) {
    std::vector<std::map<int, std::int64_t>> acc(d.vertex_count());
    for (int v = 0; v < d.vertex_count(); ++v) {
        int dd = dart_id(v, Family::Alpha, Sense::Forward);
        int left = d.face_of(dd), right = d.face_of(d.rev(dd));
        int w = d.next_on_curve(Family::Alpha, v);
        acc[w][left] += 1;
        acc[w][right] -= 1;
        acc[v][left] -= 1;
        acc[v][right] += 1;
    }
    std::vector<std::vector<std::pair<int, std::int64_t>>> rows(d.vertex_count());
    for (int v = 0; v < d.vertex_count(); ++v)
        for (auto [r, c] : acc[v])
            if (c != 0) rows[v].push_back({r, c});
    return rows;
}

}  // namespace detail

// Depth-first search over coefficients in canonical region order with
// single-unknown row propagation and interval pruning.
inline std::vector<Domain> find_domains(const Diagram& d, const Generator& x, const Generator& y, int maxCoeff = 4,
                                        bool positiveOnly = false) {
    if (maxCoeff < 0) throw PreconditionError("maxCoeff must be nonnegative");
    check_generator(d, x);
    check_generator(d, y);
    const int F = d.region_count(), V = d.vertex_count();
    const std::int64_t lo = positiveOnly ? 0 : -maxCoeff, hi = maxCoeff;
    auto rows = detail::alpha_rows(d);
    std::vector<std::int64_t> target(V);
    for (int v = 0; v < V; ++v) target[v] = static_cast<int>(y.contains(v)) - static_cast<int>(x.contains(v));
    std::vector<std::vector<std::pair<int, std::int64_t>>> varRows(F);
    for (int v = 0; v < V; ++v)
        for (auto [r, c] : rows[v]) varRows[r].push_back({v, c});

    constexpr std::int64_t unset = std::numeric_limits<std::int64_t>::min();
    std::vector<std::int64_t> val(F, unset);
    std::vector<int> trail;

    auto rowFeasible = [&](int v, std::vector<int>& forced) {
        std::int64_t sum = 0, mn = 0, mx = 0;
        int freeVar = -1, nfree = 0;
        std::int64_t freeC = 0;
        for (auto [r, c] : rows[v]) {
            if (val[r] != unset) {
                sum += c * val[r];
            } else {
                ++nfree;
                freeVar = r;
                freeC = c;
                mn += c > 0 ? c * lo : c * hi;
                mx += c > 0 ? c * hi : c * lo;
            }
        }
        std::int64_t need = target[v] - sum;
        if (nfree == 0) return need == 0;
        if (need < mn || need > mx) return false;
        if (nfree == 1) {
            if (need % freeC != 0) return false;
            std::int64_t w = need / freeC;
            if (w < lo || w > hi) return false;
            val[freeVar] = w;
            trail.push_back(freeVar);
            forced.push_back(freeVar);
        }
        return true;
    };
    auto propagate = [&](int start) {
        std::vector<int> queue{start};
        while (!queue.empty()) {
            int r = queue.back();
            queue.pop_back();
            for (auto [v, c] : varRows[r]) {
                (void)c;
                if (!rowFeasible(v, queue)) return false;
            }
        }
        return true;
    };
    auto undo = [&](std::size_t mark) {
        while (trail.size() > mark) {
            val[trail.back()] = unset;
            trail.pop_back();
        }
    };

    std::vector<Domain> out;
    std::function<void(int)> rec = [&](int i) {
        while (i < F && val[i] != unset) ++i;
        if (i == F) {
            Domain a(std::vector<std::int64_t>(val.begin(), val.end()));
            if (connects(d, a, x, y)) out.push_back(std::move(a));
            return;
        }
        for (std::int64_t w = lo; w <= hi; ++w) {
            std::size_t mark = trail.size();
            val[i] = w;
            trail.push_back(i);
            if (propagate(i)) rec(i + 1);
            undo(mark);
        }
    };
    bool ok = true;
    for (int v = 0; v < V && ok; ++v)
        if (rows[v].empty() && target[v] != 0) ok = false;
    if (ok) rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// Integer kernel of the vertex-boundary map by unimodular column reduction.
inline std::vector<Domain> periodic_domain_basis(const Diagram& d) {
    const int F = d.region_count(), V = d.vertex_count();
    auto rows = detail::alpha_rows(d);
    // cols[j] = (M column j ; identity column j)
    std::vector<std::vector<std::int64_t>> m(F, std::vector<std::int64_t>(V, 0)), u(F, std::vector<std::int64_t>(F, 0));
    for (int v = 0; v < V; ++v)
        for (auto [r, c] : rows[v]) m[r][v] = c;
    for (int j = 0; j < F; ++j) u[j][j] = 1;
    auto axpy = [&](int dst, int src, std::int64_t k) {
        for (int v = 0; v < V; ++v) m[dst][v] -= k * m[src][v];
        for (int j = 0; j < F; ++j) u[dst][j] -= k * u[src][j];
    };
    int pivotCol = 0;
    for (int row = 0; row < V && pivotCol < F; ++row) {
        while (true) {
            int best = -1;
            for (int j = pivotCol; j < F; ++j)
                if (m[j][row] != 0 && (best < 0 || std::llabs(m[j][row]) < std::llabs(m[best][row]))) best = j;
            if (best < 0) break;
            std::swap(m[best], m[pivotCol]);
            std::swap(u[best], u[pivotCol]);
            bool done = true;
            for (int j = pivotCol + 1; j < F; ++j) {
                if (m[j][row] == 0) continue;
                axpy(j, pivotCol, m[j][row] / m[pivotCol][row]);
                if (m[j][row] != 0) done = false;
            }
            if (done) {
                ++pivotCol;
                break;
            }
        }
    }
    std::vector<Domain> basis;
    for (int j = pivotCol; j < F; ++j) {
        Domain k(u[j]);
        auto firstNz = std::find_if(k.coeffs.begin(), k.coeffs.end(), [](std::int64_t c) { return c != 0; });
        if (firstNz != k.coeffs.end() && *firstNz < 0) k = -1 * k;
        basis.push_back(std::move(k));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

// --- text syntax -------------------------------------------------------

inline Generator parse_generator(const Diagram& d, const std::string& text) {
    Generator g;
    std::string t;
    std::istringstream in(text);
    while (std::getline(in, t, ',')) {
        t = detail::trim(t);
        auto v = d.find_vertex(t);
        if (!v) throw ArgumentError("unknown vertex '" + t + "' in generator '" + text + "'");
        g.points.push_back(*v);
    }
    try {
        check_generator(d, g);
    } catch (const PreconditionError& e) {
        throw ArgumentError("invalid generator '" + text + "': " + e.what());
    }
    return g;
}

inline std::string format_generator(const Diagram& d, const Generator& g) {
    std::string s;
    for (std::size_t i = 0; i < g.points.size(); ++i) s += (i ? "," : "") + d.name(g.points[i]);
    return s;
}

inline Domain parse_domain(const Diagram& d, const std::string& text) {
    Domain a = zero_domain(d);
    std::string t = detail::trim(text);
    if (t.empty() || t == "0") return a;
    std::istringstream in(t);
    std::set<int> seen;
    while (std::getline(in, t, ',')) {
        t = detail::trim(t);
        auto colon = t.find(':');
        if (t.size() < 2 || t[0] != 'r' || colon == std::string::npos)
            throw ArgumentError("bad domain term '" + t + "', expected r<k>:<int>");
        int r = 0;
        std::int64_t c = 0;
        try {
            std::size_t pos = 0;
            r = std::stoi(t.substr(1, colon - 1), &pos);
            if (pos != colon - 1) throw std::invalid_argument("");
            std::string cs = t.substr(colon + 1);
            c = std::stoll(cs, &pos);
            if (pos != cs.size()) throw std::invalid_argument("");
        } catch (const std::logic_error&) {
            throw ArgumentError("bad domain term '" + t + "', expected r<k>:<int>");
        }
        if (r < 0 || r >= d.region_count()) throw ArgumentError("region r" + std::to_string(r) + " does not exist");
        if (!seen.insert(r).second) throw ArgumentError("region r" + std::to_string(r) + " given twice");
        a[r] = c;
    }
    return a;
}

inline std::string format_domain(const Domain& a) {
    std::string s;
    for (std::size_t r = 0; r < a.size(); ++r)
        if (a[r] != 0) s += (s.empty() ? "" : ",") + ("r" + std::to_string(r) + ":" + std::to_string(a[r]));
    return s.empty() ? "0" : s;
}

}  // namespace hd
