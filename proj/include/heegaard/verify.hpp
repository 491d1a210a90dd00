#pragma once

#include "surface.hpp"

#include <chrono>

namespace hd {

struct CaseFailure {
    std::string caseId;
    std::string message;
    std::string replay;  // CLI invocation reproducing the case
};

struct SuiteResult {
    std::string name;
    std::string target;
    std::int64_t cases = 0;
    std::vector<CaseFailure> failures;
    double elapsedMs = 0;
    bool ok() const { return failures.empty(); }
};

// A diagram with the path it was loaded from, for replay strings.
struct DiagramSource {
    std::string path;
    Diagram diagram;
};

namespace detail {

class Timer {
public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline std::string replay_index(const DiagramSource& src, const Generator& x, const Generator& y, const Domain& a) {
    const Diagram& d = src.diagram;
    return "hdtool index " + src.path + " --from " + format_generator(d, x) + " --to " + format_generator(d, y) +
           " --domain " + format_domain(a) + " --allow-nonconnecting";
}

inline std::string replay_build(const DiagramSource& src, const Generator& x, const Generator& y, const Domain& a,
                                const char* verb = "build-surface") {
    const Diagram& d = src.diagram;
    return std::string("hdtool ") + verb + " " + src.path + " --from " + format_generator(d, x) + " --to " +
           format_generator(d, y) + " --domain " + format_domain(a);
}

inline std::string case_id(const Diagram& d, const Generator& x, const Generator& y, const Domain& a) {
    return format_generator(d, x) + "->" + format_generator(d, y) + " [" + format_domain(a) + "]";
}

// Domains from x to y for every ordered generator pair.
struct DomainTable {
    std::vector<Generator> gens;
    std::vector<std::vector<std::vector<Domain>>> at;  // at[i][j]
};

inline DomainTable domain_table(const Diagram& d, int maxCoeff, bool positiveOnly) {
    DomainTable t;
    t.gens = enumerate_generators(d);
    const std::size_t n = t.gens.size();
    t.at.assign(n, std::vector<std::vector<Domain>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.at[i][j] = find_domains(d, t.gens[i], t.gens[j], maxCoeff, positiveOnly);
    return t;
}

// Interior placement: i1 at sector p, i2 across alpha, i3 across beta,
// i4 opposite.
inline std::array<int, 4> placement(int p) {
    int acrossA = p % 2 == 0 ? (p + 3) % 4 : (p + 1) % 4;
    int acrossB = p % 2 == 0 ? (p + 1) % 4 : (p + 3) % 4;
    return {p, acrossA, acrossB, (p + 2) % 4};
}

inline std::string pattern_name(const std::array<std::int64_t, 4>& a) {
    return "(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + "," +
           std::to_string(a[3]) + ")";
}

// Chain-shape verdict for one coefficient tuple; empty when fine.
inline std::string chain_shape_problem(const std::vector<PreimageChain>& chains, bool corner) {
    int odd = 0;
    for (const auto& c : chains) {
        if (c.kind == ChainKind::Closed) {
            if (c.length() != 4) return "closed chain of length " + std::to_string(c.length());
        } else if (c.length() % 2 == 1) {
            ++odd;
        } else if (c.length() != 2) {
            return "open chain of length " + std::to_string(c.length());
        }
    }
    if (corner && odd != 1) return std::to_string(odd) + " odd chains at a corner";
    if (!corner && odd != 0) return std::to_string(odd) + " odd chains at an interior vertex";
    return "";
}

}  // namespace detail

inline SuiteResult local_pattern_oracle(int bound = 3) {
    if (bound < 1) throw PreconditionError("pattern bound must be at least 1");
    detail::Timer timer;
    SuiteResult r;
    r.name = "local_pattern_oracle";
    r.target = "bound " + std::to_string(bound);
    auto fail = [&](const std::array<std::int64_t, 4>& a, const std::string& m) {
        r.failures.push_back({detail::pattern_name(a), m, "hdtool check --pattern-bound " + std::to_string(bound)});
    };
    for (int p = 0; p < 4; ++p) {
        auto pl = detail::placement(p);
        for (int n = 0; n <= bound; ++n)
            for (int k = 0; k <= bound; ++k)
                for (int l = 0; l <= bound; ++l) {
                    std::array<std::int64_t, 4> a{};
                    a[pl[0]] = n;
                    a[pl[1]] = n + k;
                    a[pl[2]] = n + l;
                    a[pl[3]] = n + k + l;
                    ++r.cases;
                    auto ch = local_chains(a);
                    auto prob = detail::chain_shape_problem(ch, false);
                    int closed = 0, open = 0;
                    for (const auto& c : ch) (c.kind == ChainKind::Closed ? closed : open) += 1;
                    if (prob.empty() && (closed != n || open != k + l))
                        prob = "expected " + std::to_string(n) + " closed and " + std::to_string(k + l) + " open chains";
                    if (!prob.empty()) fail(a, prob);
                    // the four corner patterns: one extra sheet in one slot
                    for (int slot = 0; slot < 4; ++slot) {
                        auto b = a;
                        b[pl[slot]] += 1;
                        ++r.cases;
                        auto pc = detail::chain_shape_problem(local_chains(b), true);
                        if (!pc.empty()) fail(b, pc);
                    }
                }
    }
    // every tuple up to bound+1, classified by the alternating sum alone
    const int top = bound + 1;
    for (int a0 = 0; a0 <= top; ++a0)
        for (int a1 = 0; a1 <= top; ++a1)
            for (int a2 = 0; a2 <= top; ++a2)
                for (int a3 = 0; a3 <= top; ++a3) {
                    int alt = a0 - a1 + a2 - a3;
                    if (alt < -1 || alt > 1) continue;
                    std::array<std::int64_t, 4> a{a0, a1, a2, a3};
                    ++r.cases;
                    auto prob = detail::chain_shape_problem(local_chains(a), alt != 0);
                    if (!prob.empty()) fail(a, prob);
                }
    r.elapsedMs = timer.ms();
    return r;
}

inline SuiteResult sigma_suite(const DiagramSource& src) {
    detail::Timer timer;
    const Diagram& d = src.diagram;
    SuiteResult r;
    r.name = "sigma_class";
    r.target = src.path;
    Domain s = sigma_class(d);
    const int g = d.genus();
    for (const auto& x : enumerate_generators(d)) {
        ++r.cases;
        auto rep = index_report(d, s, x, x);
        std::string m;
        if (rep.e != Rational(2 - 2 * g)) m = "e([Sigma]) = " + to_string(rep.e);
        else if (rep.nX != Rational(g) || rep.nY != Rational(g)) m = "n([Sigma]) differs from g";
        else if (rep.mu != Rational(2)) m = "mu([Sigma]) = " + to_string(rep.mu);
        if (!m.empty()) r.failures.push_back({detail::case_id(d, x, x, s), m, detail::replay_index(src, x, x, s)});
    }
    r.elapsedMs = timer.ms();
    return r;
}

inline SuiteResult additivity_suite(const DiagramSource& src, int maxCoeff = 3) {
    detail::Timer timer;
    const Diagram& d = src.diagram;
    SuiteResult r;
    r.name = "additivity";
    r.target = src.path + " maxCoeff " + std::to_string(maxCoeff);
    auto t = detail::domain_table(d, maxCoeff, false);
    const std::size_t n = t.gens.size();
    // mu and e of each table entry, evaluated once
    std::vector<std::vector<std::vector<std::pair<Rational, Rational>>>> val(n, std::vector<std::vector<std::pair<Rational, Rational>>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& a : t.at[i][j])
                val[i][j].push_back({maslov_index(d, a, t.gens[i], t.gens[j]), euler_measure(d, a)});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t ia = 0; ia < t.at[i][j].size(); ++ia)
                    for (std::size_t ib = 0; ib < t.at[j][k].size(); ++ib) {
                        ++r.cases;
                        const Domain& a = t.at[i][j][ia];
                        const Domain& b = t.at[j][k][ib];
                        Domain c = a + b;
                        std::string m;
                        if (!connects(d, c, t.gens[i], t.gens[k])) {
                            m = "sum does not connect the outer generators";
                        } else {
                            Rational mu = maslov_index(d, c, t.gens[i], t.gens[k]);
                            if (mu != val[i][j][ia].first + val[j][k][ib].first)
                                m = "mu(A+B) = " + to_string(mu) + " but mu(A)+mu(B) = " +
                                    to_string(val[i][j][ia].first + val[j][k][ib].first);
                            else if (euler_measure(d, c) != val[i][j][ia].second + val[j][k][ib].second)
                                m = "e is not additive";
                        }
                        if (!m.empty())
                            r.failures.push_back({detail::case_id(d, t.gens[i], t.gens[j], a) + " * " +
                                                      detail::case_id(d, t.gens[j], t.gens[k], b),
                                                  m, detail::replay_index(src, t.gens[i], t.gens[k], c)});
                    }
    r.elapsedMs = timer.ms();
    return r;
}

inline SuiteResult stabilization_suite(const DiagramSource& src, int kMax = 3, int maxCoeff = 3) {
    detail::Timer timer;
    const Diagram& d = src.diagram;
    SuiteResult r;
    r.name = "stabilization";
    r.target = src.path + " kMax " + std::to_string(kMax);
    const int g = d.genus();
    Domain s = sigma_class(d);
    auto t = detail::domain_table(d, maxCoeff, false);
    for (std::size_t i = 0; i < t.gens.size(); ++i)
        for (std::size_t j = 0; j < t.gens.size(); ++j)
            for (const auto& a : t.at[i][j]) {
                const auto& x = t.gens[i];
                const auto& y = t.gens[j];
                auto base = index_report(d, a, x, y);
                Domain ak = a;
                for (int k = 1; k <= kMax; ++k) {
                    ak += s;
                    ++r.cases;
                    std::string m;
                    if (!connects(d, ak, x, y)) {
                        m = "adding [Sigma] broke the endpoints";
                    } else {
                        auto rep = index_report(d, ak, x, y);
                        if (rep.mu != base.mu + 2 * k) m = "mu shifted by " + to_string(rep.mu - base.mu);
                        else if (rep.chiEmb != base.chiEmb + Rational(k * (2 - 4 * g)))
                            m = "chi_emb shifted by " + to_string(rep.chiEmb - base.chiEmb);
                    }
                    if (!m.empty())
                        r.failures.push_back(
                            {detail::case_id(d, x, y, a) + " + " + std::to_string(k) + "[Sigma]", m,
                             detail::replay_index(src, x, y, ak)});
                }
            }
    r.elapsedMs = timer.ms();
    return r;
}

inline SuiteResult index_identity_suite(const DiagramSource& src, int maxCoeff = 3) {
    detail::Timer timer;
    const Diagram& d = src.diagram;
    SuiteResult r;
    r.name = "index_identity";
    r.target = src.path + " maxCoeff " + std::to_string(maxCoeff);
    auto t = detail::domain_table(d, maxCoeff, false);
    for (std::size_t i = 0; i < t.gens.size(); ++i)
        for (std::size_t j = 0; j < t.gens.size(); ++j)
            for (const auto& a : t.at[i][j]) {
                ++r.cases;
                auto rep = index_report(d, a, t.gens[i], t.gens[j]);
                std::string m;
                if (analytic_index(rep.g, rep.chiEmb, rep.e) != rep.mu) m = "analytic index differs from mu";
                else if (!is_integer(rep.mu)) m = "mu = " + to_string(rep.mu) + " is not an integer";
                else if (!is_integer(rep.chiEmb)) m = "chi_emb = " + to_string(rep.chiEmb) + " is not an integer";
                if (!m.empty())
                    r.failures.push_back({detail::case_id(d, t.gens[i], t.gens[j], a), m,
                                          detail::replay_index(src, t.gens[i], t.gens[j], a)});
            }
    r.elapsedMs = timer.ms();
    return r;
}

namespace detail {

inline bool embedded_class(const Diagram& d, const Domain& a) {
    std::set<int> used;
    for (int r = 0; r < d.region_count(); ++r) {
        if (a[r] == 0) continue;
        if (a[r] != 1) return false;
        const auto& reg = d.region(r);
        if (reg.cornerCount != 2 && reg.cornerCount != 4) return false;
        std::set<int> vs;
        for (int dd : reg.boundary) vs.insert(dart_of(dd).vertex);
        if (vs.size() != reg.boundary.size()) return false;  // region touches itself
        for (int v : vs)
            if (!used.insert(v).second) return false;
    }
    return true;
}

// Chains at v read off the glued complex, as sorted cell lists.
inline std::vector<std::pair<ChainKind, std::vector<std::pair<int, int>>>> complex_chains(const BuiltSurface& s, int v) {
    std::vector<std::pair<ChainKind, std::vector<std::pair<int, int>>>> out;
    for (const auto& pt : s.points()) {
        if (pt.vertex != v) continue;
        std::vector<std::pair<int, int>> cells;
        for (int c : pt.corners)
            cells.push_back({s.dia().rot_position(s.sides[c].dart), s.faces[s.sides[c].face].sheet});
        std::sort(cells.begin(), cells.end());
        out.push_back({pt.boundary ? ChainKind::Open : ChainKind::Closed, cells});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::pair<ChainKind, std::vector<std::pair<int, int>>>> model_chains(
    const std::vector<PreimageChain>& chains) {
    std::vector<std::pair<ChainKind, std::vector<std::pair<int, int>>>> out;
    for (const auto& ch : chains) {
        std::vector<std::pair<int, int>> cells;
        for (const auto& c : ch.cells) cells.push_back({c.position, c.sheet});
        std::sort(cells.begin(), cells.end());
        out.push_back({ch.kind, cells});
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool same_cells(const BuiltSurface& a, const BuiltSurface& b) {
    if (a.faces.size() != b.faces.size() || a.sides.size() != b.sides.size() ||
        a.degenerateDisks != b.degenerateDisks)
        return false;
    for (std::size_t i = 0; i < a.sides.size(); ++i) {
        const auto &p = a.sides[i], &q = b.sides[i];
        if (p.face != q.face || p.next != q.next || p.prev != q.prev || p.twin != q.twin || p.dart != q.dart ||
            p.t0 != q.t0 || p.t1 != q.t1)
            return false;
    }
    return true;
}

// Stage-S3 invariants; empty when all hold.
inline std::string s3_problem(const BuiltSurface& s, const Rational& chiEmb) {
    const Diagram& d = s.dia();
    auto c = s.census();
    const int g = d.genus();
    if (c.badCorners || c.badPoints) return "bad corners remain";
    if (static_cast<int>(c.corners.size()) != 2 * g)
        return std::to_string(c.corners.size()) + " corners, expected " + std::to_string(2 * g);
    for (const auto& k : c.corners) {
        if (k.xType && !s.x.contains(k.vertex)) return "x-type corner off x at " + d.name(k.vertex);
        if (!k.xType && !s.y.contains(k.vertex)) return "y-type corner off y at " + d.name(k.vertex);
    }
    for (int f = 0; f < 2; ++f)
        for (std::size_t i = 0; i < c.arcs[f].size(); ++i)
            if (c.arcs[f][i] != 1 || c.circles[f][i] != 0)
                return std::string(family_name(static_cast<Family>(f))) + " curve " +
                       d.curves(static_cast<Family>(f))[i].name + " has " + std::to_string(c.arcs[f][i]) +
                       " arcs and " + std::to_string(c.circles[f][i]) + " circles";
    if (c.pushforward != s.domain) return "pushforward differs from the domain";
    Rational diff = Rational(c.chi) - chiEmb;
    if (!is_integer(diff) || diff.numerator() % 2 != 0) return "chi(S3) - chi_emb = " + to_string(diff) + " is not even";
    return "";
}

}  // namespace detail

inline SuiteResult builder_consistency_suite(const DiagramSource& src, int maxCoeff = 3) {
    detail::Timer timer;
    const Diagram& d = src.diagram;
    SuiteResult r;
    r.name = "builder_consistency";
    r.target = src.path + " maxCoeff " + std::to_string(maxCoeff);
    auto t = detail::domain_table(d, maxCoeff, true);
    for (std::size_t i = 0; i < t.gens.size(); ++i)
        for (std::size_t j = 0; j < t.gens.size(); ++j)
            for (const auto& a : t.at[i][j]) {
                const auto& x = t.gens[i];
                const auto& y = t.gens[j];
                ++r.cases;
                std::string m;
                try {
                    auto s0 = glue_copies(d, a);
                    for (int v = 0; v < d.vertex_count() && m.empty(); ++v)
                        if (detail::complex_chains(s0, v) != detail::model_chains(classify_vertex_chains(d, a, v)))
                            m = "glued chains at " + d.name(v) + " differ from the local model";
                    auto s1 = cut_bad_corners(s0);
                    auto s2 = add_degenerate_corners(s1, x, y);
                    auto s3 = splice_boundary_circles(s2);
                    Rational chiEmb = embedded_euler_char(d, a, x, y);
                    for (const BuiltSurface* st : {&s0, &s1, &s2, &s3}) {
                        if (!m.empty()) break;
                        auto c = st->census();
                        Rational gb = euler_measure(d, c.pushforward) + c.curvature +
                                      Rational(static_cast<std::int64_t>(st->degenerateDisks.size()));
                        if (gb != Rational(c.chi))
                            m = std::string("Gauss-Bonnet fails at ") + stage_name(st->stage);
                    }
                    if (m.empty()) {
                        auto c1 = s1.census(), c2 = s2.census();
                        if (c1.badCorners) m = "bad corners survive the cuts";
                        else if (static_cast<int>(c2.corners.size()) != 2 * d.genus()) m = "S2 corner count is not 2g";
                    }
                    if (m.empty()) m = detail::s3_problem(s3, chiEmb);
                    if (m.empty() && detail::embedded_class(d, a) && Rational(s3.census().chi) != chiEmb)
                        m = "embedded domain has chi(S3) != chi_emb";
                    if (m.empty() && !detail::same_cells(s3, build_surface(d, a, x, y)))
                        m = "construction is not deterministic";
                } catch (const std::exception& e) {
                    m = std::string("construction failed: ") + e.what();
                }
                if (!m.empty()) r.failures.push_back({detail::case_id(d, x, y, a), m, detail::replay_build(src, x, y, a)});
            }
    r.elapsedMs = timer.ms();
    return r;
}

inline SuiteResult stabilized_suite(const DiagramSource& src, int maxCoeff = 2) {
    detail::Timer timer;
    const Diagram& d = src.diagram;
    SuiteResult r;
    r.name = "stabilized_construction";
    r.target = src.path + " maxCoeff " + std::to_string(maxCoeff);
    auto t = detail::domain_table(d, 0, true);
    if (d.genus() <= 1) {
        ++r.cases;
        bool rejected = false;
        if (!t.gens.empty()) {
            try {
                stabilized_surface(d, zero_domain(d), t.gens[0], t.gens[0]);
            } catch (const PreconditionError&) {
                rejected = true;
            }
        }
        if (!rejected && !t.gens.empty())
            r.failures.push_back({"genus 1", "genus-1 input was not rejected",
                                  detail::replay_build(src, t.gens[0], t.gens[0], zero_domain(d), "stabilize")});
        r.elapsedMs = timer.ms();
        return r;
    }
    t = detail::domain_table(d, maxCoeff, true);
    for (std::size_t i = 0; i < t.gens.size(); ++i)
        for (std::size_t j = 0; j < t.gens.size(); ++j)
            for (const auto& a : t.at[i][j]) {
                const auto& x = t.gens[i];
                const auto& y = t.gens[j];
                ++r.cases;
                std::string m;
                try {
                    auto s4 = stabilized_surface(d, a, x, y);
                    auto chk = branched_cover_check(s4);
                    if (!chk.ok) m = chk.violations.front();
                    auto c = s4.census();
                    Rational gb = euler_measure(d, c.pushforward) + c.curvature;
                    if (m.empty() && gb != Rational(c.chi)) m = "Gauss-Bonnet fails at S4";
                } catch (const std::exception& e) {
                    m = std::string("construction failed: ") + e.what();
                }
                if (!m.empty()) r.failures.push_back({detail::case_id(d, x, y, a), m, detail::replay_build(src, x, y, a, "stabilize")});
            }
    r.elapsedMs = timer.ms();
    return r;
}

struct SuiteOptions {
    int maxCoeff = 3;
    int additivityCoeff = 2;
    int kMax = 3;
    int patternBound = 3;
    int stabilizedCoeff = 2;
};

inline std::vector<SuiteResult> run_all_suites(const std::vector<DiagramSource>& corpus, const SuiteOptions& o = {}) {
    std::vector<SuiteResult> out;
    out.push_back(local_pattern_oracle(o.patternBound));
    for (const auto& src : corpus) {
        out.push_back(sigma_suite(src));
        out.push_back(additivity_suite(src, o.additivityCoeff));
        out.push_back(stabilization_suite(src, o.kMax, o.maxCoeff));
        out.push_back(index_identity_suite(src, o.maxCoeff));
        out.push_back(builder_consistency_suite(src, o.maxCoeff));
        out.push_back(stabilized_suite(src, o.stabilizedCoeff));
    }
    return out;
}

}  // namespace hd
