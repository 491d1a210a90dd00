#pragma once

#include "index.hpp"
#include "verify.hpp"

#include <json.hpp>

#include <iomanip>
#include <ostream>

namespace hd {

using Json = nlohmann::ordered_json;

inline std::string dart_label(const Diagram& d, int dart) {
    Dart x = dart_of(dart);
    return d.name(x.vertex) + (x.family == Family::Alpha ? "a" : "b") + (x.sense == Sense::Forward ? "+" : "-");
}

inline Json coefficients_json(const Domain& a) {
    Json j = Json::array();
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) j.push_back(a.coeffs[i]);
    return j;
}

// --- diagram ------------------------------------------------------------

inline Json validation_json(const ValidationReport& r) {
    Json j;
    j["valid"] = r.ok();
    j["violations"] = r.violations;
    return j;
}

inline void write_validation_text(std::ostream& out, const ValidationReport& r) {
    if (r.ok()) {
        out << "valid\n";
        return;
    }
    for (const auto& v : r.violations) out << "violation: " << v << '\n';
}

inline Json info_json(const Diagram& d) {
    Json j;
    j["genus"] = d.genus();
    j["vertices"] = d.vertex_count();
    j["regions"] = d.region_count();
    Json curves;
    for (Family f : {Family::Alpha, Family::Beta}) {
        Json list = Json::array();
        for (const auto& c : d.curves(f)) {
            Json e;
            e["name"] = c.name;
            Json vs = Json::array();
            for (int v : c.vertices) vs.push_back(d.name(v));
            e["vertices"] = vs;
            list.push_back(e);
        }
        curves[family_name(f)] = list;
    }
    j["curves"] = curves;
    Json regs = Json::array();
    for (const auto& r : d.regions()) {
        Json e;
        e["id"] = "r" + std::to_string(r.id);
        e["corners"] = r.cornerCount;
        Json b = Json::array();
        for (int dd : r.boundary) b.push_back(dart_label(d, dd));
        e["boundary"] = b;
        regs.push_back(e);
    }
    j["region_list"] = regs;
    Domain s = sigma_class(d);
    j["e_sigma"] = to_string(euler_measure(d, s));
    j["periodic_rank"] = periodic_domain_basis(d).size();
    return j;
}

inline void write_info_text(std::ostream& out, const Diagram& d) {
    out << "genus: " << d.genus() << '\n';
    out << "vertices: " << d.vertex_count() << '\n';
    out << "regions: " << d.region_count() << '\n';
    for (const auto& r : d.regions()) {
        out << "  r" << r.id << " corners " << r.cornerCount << ":";
        for (int dd : r.boundary) out << ' ' << dart_label(d, dd);
        out << '\n';
    }
    out << "e_sigma: " << to_string(euler_measure(d, sigma_class(d))) << '\n';
    out << "periodic_rank: " << periodic_domain_basis(d).size() << '\n';
}

// --- generators and domains --------------------------------------------

inline Json generators_json(const Diagram& d, const std::vector<Generator>& gens) {
    Json j = Json::array();
    for (const auto& g : gens) j.push_back(format_generator(d, g));
    return j;
}

inline Json domains_json(const Diagram& d, const Generator& x, const Generator& y, const std::vector<Domain>& ds) {
    Json j;
    j["from"] = format_generator(d, x);
    j["to"] = format_generator(d, y);
    Json list = Json::array();
    for (const auto& a : ds) {
        Json e;
        e["domain"] = format_domain(a);
        e["positive"] = is_positive(a);
        e["mu"] = to_string(maslov_index(d, a, x, y));
        list.push_back(e);
    }
    j["domains"] = list;
    return j;
}

inline void write_domains_text(std::ostream& out, const Diagram& d, const Generator& x, const Generator& y,
                               const std::vector<Domain>& ds) {
    for (const auto& a : ds)
        out << format_domain(a) << "  mu=" << to_string(maslov_index(d, a, x, y)) << (is_positive(a) ? "" : "  (signed)")
            << '\n';
}

// --- index --------------------------------------------------------------

inline Json index_json(const Diagram& d, const Generator& x, const Generator& y, const Domain& a,
                       const IndexReport& r) {
    Json j;
    j["from"] = format_generator(d, x);
    j["to"] = format_generator(d, y);
    j["domain"] = format_domain(a);
    j["connecting"] = r.connecting;
    j["g"] = r.g;
    j["e"] = to_string(r.e);
    j["n_x"] = to_string(r.nX);
    j["n_y"] = to_string(r.nY);
    j["mu"] = to_string(r.mu);
    j["chi_emb"] = to_string(r.chiEmb);
    return j;
}

inline void write_index_text(std::ostream& out, const IndexReport& r) {
    out << "connecting: " << (r.connecting ? "yes" : "no") << '\n';
    out << "g: " << r.g << '\n';
    out << "e: " << to_string(r.e) << '\n';
    out << "n_x: " << to_string(r.nX) << '\n';
    out << "n_y: " << to_string(r.nY) << '\n';
    out << "mu: " << to_string(r.mu) << '\n';
    out << "chi_emb: " << to_string(r.chiEmb) << '\n';
}

// --- surfaces -----------------------------------------------------------

inline std::string point_location(const Diagram& d, int vertex, int edgeDart, const Rational& position) {
    if (vertex >= 0) return d.name(vertex);
    return dart_label(d, edgeDart) + "@" + to_string(position);
}

inline Json surface_json(const BuiltSurface& s) {
    const Diagram& d = s.dia();
    auto c = s.census();
    Json j;
    j["stage"] = stage_name(s.stage);
    j["from"] = format_generator(d, s.x);
    j["to"] = format_generator(d, s.y);
    j["domain"] = format_domain(s.domain);
    j["chi"] = c.chi;
    // chi_emb and the excess refer to A, so only the unstabilized surface has them
    if (s.stage != Stage::S4) {
        Rational chiEmb = embedded_euler_char(d, s.domain, s.x, s.y);
        j["chi_emb"] = to_string(chiEmb);
        j["delta"] = to_string((Rational(c.chi) - chiEmb) / 2);
    }
    j["branch_budget"] = to_string(branch_budget(d.genus(), Rational(c.chi)));
    j["components"] = c.components;
    j["boundary_components"] = c.boundaryComponents;
    j["degenerate_disks"] = s.degenerateDisks.size();
    Json corners = Json::array();
    for (const auto& k : c.corners) {
        Json e;
        e["vertex"] = d.name(k.vertex);
        e["type"] = k.xType ? "x" : "y";
        e["degenerate"] = k.degenerate;
        corners.push_back(e);
    }
    j["corners"] = corners;
    Json arcs;
    for (Family f : {Family::Alpha, Family::Beta}) {
        Json list = Json::array();
        const auto& cs = d.curves(f);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            Json e;
            e["curve"] = cs[i].name;
            e["arcs"] = c.arcs[static_cast<int>(f)][i];
            e["circles"] = c.circles[static_cast<int>(f)][i];
            list.push_back(e);
        }
        arcs[family_name(f)] = list;
    }
    j["boundary_arcs"] = arcs;
    Json bps = Json::array();
    for (const auto& b : c.branchPoints) {
        Json e;
        e["location"] = point_location(d, b.vertex, b.edgeDart, b.position);
        e["boundary"] = b.boundary;
        e["order"] = b.order;
        bps.push_back(e);
    }
    j["branch_points"] = bps;
    j["pushforward"] = coefficients_json(c.pushforward);
    return j;
}

inline Json cover_check_json(const CoverCheck& r) {
    Json j;
    j["ok"] = r.ok;
    j["g"] = r.g;
    j["chi"] = r.chi;
    j["corner_halves"] = r.cornerHalves;
    j["branch_budget"] = to_string(r.branchBudget);
    j["branch_sigma"] = to_string(r.branchSigma);
    j["euler_measure"] = to_string(r.eulerMeasure);
    j["violations"] = r.violations;
    return j;
}

inline void write_surface_text(std::ostream& out, const BuiltSurface& s) {
    Json j = surface_json(s);
    out << "stage: " << j["stage"].get<std::string>() << '\n';
    out << "chi: " << j["chi"].get<std::int64_t>() << '\n';
    if (j.contains("delta")) {
        out << "chi_emb: " << j["chi_emb"].get<std::string>() << '\n';
        out << "delta: " << j["delta"].get<std::string>() << '\n';
    }
    out << "branch_budget: " << j["branch_budget"].get<std::string>() << '\n';
    out << "components: " << j["components"].get<int>() << '\n';
    out << "boundary_components: " << j["boundary_components"].get<int>() << '\n';
    out << "degenerate_disks: " << s.degenerateDisks.size() << '\n';
    out << "corners:";
    for (const auto& k : j["corners"])
        out << ' ' << k["vertex"].get<std::string>() << '(' << k["type"].get<std::string>()
            << (k["degenerate"].get<bool>() ? ",degenerate" : "") << ')';
    out << '\n';
    for (Family f : {Family::Alpha, Family::Beta})
        for (const auto& e : j["boundary_arcs"][family_name(f)])
            out << "arcs " << e["curve"].get<std::string>() << ": " << e["arcs"].get<int>() << " arc(s), "
                << e["circles"].get<int>() << " circle(s)\n";
    out << "branch_points:";
    if (j["branch_points"].empty()) out << " none";
    for (const auto& b : j["branch_points"])
        out << ' ' << b["location"].get<std::string>() << (b["boundary"].get<bool>() ? "(boundary" : "(interior")
            << ",order " << b["order"].get<int>() << ')';
    out << '\n';
    out << "pushforward: " << format_domain(s.census().pushforward) << '\n';
}

inline void write_cover_check_text(std::ostream& out, const CoverCheck& r) {
    out << "cover_check: " << (r.ok ? "ok" : "failed") << '\n';
    out << "corner_halves: " << r.cornerHalves << '\n';
    out << "branch_sigma: " << to_string(r.branchSigma) << '\n';
    for (const auto& v : r.violations) out << "violation: " << v << '\n';
}

// --- suites -------------------------------------------------------------

// Elapsed times are left out so that identical runs give identical JSON.
inline Json suites_json(const std::vector<SuiteResult>& rs) {
    Json list = Json::array();
    bool ok = true;
    for (const auto& r : rs) {
        Json e;
        e["suite"] = r.name;
        e["target"] = r.target;
        e["cases"] = r.cases;
        e["ok"] = r.ok();
        Json fs = Json::array();
        for (const auto& f : r.failures) {
            Json x;
            x["case"] = f.caseId;
            x["message"] = f.message;
            x["replay"] = f.replay;
            fs.push_back(x);
        }
        e["failures"] = fs;
        list.push_back(e);
        ok = ok && r.ok();
    }
    Json j;
    j["ok"] = ok;
    j["suites"] = list;
    return j;
}

inline void write_suites_text(std::ostream& out, const std::vector<SuiteResult>& rs, std::size_t maxFailures = 5) {
    out << std::left << std::setw(26) << "suite" << std::setw(32) << "target" << std::right << std::setw(8)
        << "cases" << std::setw(10) << "failures" << std::setw(10) << "ms" << '\n';
    for (const auto& r : rs) {
        std::ostringstream ms;
        ms << std::fixed << std::setprecision(1) << r.elapsedMs;
        out << std::left << std::setw(26) << r.name << std::setw(32) << r.target << std::right << std::setw(8)
            << r.cases << std::setw(10) << r.failures.size() << std::setw(10) << ms.str() << '\n';
        for (std::size_t i = 0; i < r.failures.size() && i < maxFailures; ++i) {
            const auto& f = r.failures[i];
            out << "    " << f.caseId << ": " << f.message << '\n';
            if (!f.replay.empty()) out << "      replay: " << f.replay << '\n';
        }
        if (r.failures.size() > maxFailures) out << "    ... " << r.failures.size() - maxFailures << " more\n";
    }
}

}  // namespace hd
