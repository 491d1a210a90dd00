#include "heegaard/heegaard.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace hd;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kPrecondition = 2;
constexpr int kSuiteFailure = 3;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Diagram load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_diagram(ss.str());
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

Diagram load_valid(const std::string& path) {
    Diagram d = load(path);
    auto r = validate_diagram(d);
    if (!r.ok()) throw InputError(path + ": invalid diagram: " + r.violations.front());
    return d;
}

std::vector<std::string> collect(const std::vector<std::string>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> files;
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ".hd") files.push_back(e.path().string());
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial engine for Heegaard diagram domains"};
    app.require_subcommand(1);

    bool json = false;
    std::string file, from, to, domain;
    int maxCoeff = 3;
    bool positive = false, allowNonConnecting = false;
    std::string stage = "S3";
    std::vector<std::string> paths;
    SuiteOptions opts;

    auto addFile = [&](CLI::App* c) { c->add_option("file", file, "diagram file (.hd)")->required(); };
    auto addJson = [&](CLI::App* c) { c->add_flag("--json", json, "emit JSON"); };
    auto addPair = [&](CLI::App* c) {
        c->add_option("--from", from, "source generator, e.g. x1,x2")->required();
        c->add_option("--to", to, "target generator")->required();
    };
    auto addDomain = [&](CLI::App* c) {
        c->add_option("--domain", domain, "domain, e.g. r0:1,r2:-1")->required();
    };

    auto* validate = app.add_subcommand("validate", "check diagram invariants");
    addFile(validate);
    addJson(validate);

    auto* info = app.add_subcommand("info", "genus, regions and e of the full surface class");
    addFile(info);
    addJson(info);

    auto* generators = app.add_subcommand("generators", "list generators");
    addFile(generators);
    addJson(generators);

    auto* domains = app.add_subcommand("domains", "domains connecting two generators");
    addFile(domains);
    addPair(domains);
    domains->add_option("--max-coeff", maxCoeff, "coefficient bound")->check(CLI::NonNegativeNumber);
    domains->add_flag("--positive", positive, "only domains with nonnegative coefficients");
    addJson(domains);

    auto* index = app.add_subcommand("index", "Maslov index report for a domain");
    addFile(index);
    addPair(index);
    addDomain(index);
    index->add_flag("--allow-nonconnecting", allowNonConnecting, "evaluate formulas off the connecting classes");
    addJson(index);

    auto* build = app.add_subcommand("build-surface", "build the source surface of a positive domain");
    addFile(build);
    addPair(build);
    addDomain(build);
    build->add_option("--stage", stage, "stop after stage S0..S3")->check(CLI::IsMember({"S0", "S1", "S2", "S3"}));
    addJson(build);

    auto* stabilize = app.add_subcommand("stabilize", "build the stabilized surface and check it covers the disk");
    addFile(stabilize);
    addPair(stabilize);
    addDomain(stabilize);
    addJson(stabilize);

    auto* check = app.add_subcommand("check", "run all verification suites over diagrams");
    check->add_option("paths", paths, "diagram files or directories")->required();
    check->add_option("--max-coeff", opts.maxCoeff, "coefficient bound for index and builder suites")
        ->check(CLI::NonNegativeNumber);
    check->add_option("--additivity-coeff", opts.additivityCoeff, "coefficient bound for additivity")
        ->check(CLI::NonNegativeNumber);
    check->add_option("--k-max", opts.kMax, "largest multiple of the surface class")->check(CLI::NonNegativeNumber);
    check->add_option("--pattern-bound", opts.patternBound, "bound for local vertex patterns")
        ->check(CLI::PositiveNumber);
    check->add_option("--stabilized-coeff", opts.stabilizedCoeff, "coefficient bound for stabilized surfaces")
        ->check(CLI::NonNegativeNumber);
    addJson(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (validate->parsed()) {
            Diagram d = load(file);
            auto r = validate_diagram(d);
            if (json)
                emit(validation_json(r));
            else
                write_validation_text(std::cout, r);
            return r.ok() ? kOk : kInputError;
        }
        if (info->parsed()) {
            Diagram d = load_valid(file);
            if (json)
                emit(info_json(d));
            else
                write_info_text(std::cout, d);
            return kOk;
        }
        if (generators->parsed()) {
            Diagram d = load_valid(file);
            auto gs = enumerate_generators(d);
            if (json) {
                emit(generators_json(d, gs));
            } else {
                for (const auto& g : gs) std::cout << format_generator(d, g) << '\n';
            }
            return kOk;
        }
        if (check->parsed()) {
            std::vector<DiagramSource> corpus;
            for (const auto& p : collect(paths)) corpus.push_back({p, load_valid(p)});
            auto rs = run_all_suites(corpus, opts);
            if (json)
                emit(suites_json(rs));
            else
                write_suites_text(std::cout, rs);
            bool ok = std::all_of(rs.begin(), rs.end(), [](const SuiteResult& r) { return r.ok(); });
            return ok ? kOk : kSuiteFailure;
        }

        Diagram d = load_valid(file);
        Generator x = parse_generator(d, from), y = parse_generator(d, to);
        if (domains->parsed()) {
            auto ds = find_domains(d, x, y, maxCoeff, positive);
            if (json)
                emit(domains_json(d, x, y, ds));
            else
                write_domains_text(std::cout, d, x, y, ds);
            return kOk;
        }
        Domain a = parse_domain(d, domain);
        if (index->parsed()) {
            auto r = index_report(d, a, x, y, allowNonConnecting);
            if (json)
                emit(index_json(d, x, y, a, r));
            else
                write_index_text(std::cout, r);
            return kOk;
        }
        if (build->parsed()) {
            require_surface_input(d, a, x, y);
            BuiltSurface s = glue_copies(d, a);
            if (stage != "S0") s = cut_bad_corners(s);
            if (stage == "S2" || stage == "S3") s = add_degenerate_corners(s, x, y);
            if (stage == "S3") s = splice_boundary_circles(s);
            s.x = x;
            s.y = y;
            if (json)
                emit(surface_json(s));
            else
                write_surface_text(std::cout, s);
            return kOk;
        }
        if (stabilize->parsed()) {
            BuiltSurface s = stabilized_surface(d, a, x, y);
            auto r = branched_cover_check(s);
            if (json) {
                Json j = surface_json(s);
                j["cover_check"] = cover_check_json(r);
                emit(j);
            } else {
                write_surface_text(std::cout, s);
                write_cover_check_text(std::cout, r);
            }
            return r.ok ? kOk : kSuiteFailure;
        }
    } catch (const InputError& e) {
        std::cerr << "hdtool: " << e.what() << '\n';
        return kInputError;
    } catch (const ParseError& e) {
        std::cerr << "hdtool: " << e.what() << '\n';
        return kInputError;
    } catch (const ArgumentError& e) {
        std::cerr << "hdtool: " << e.what() << '\n';
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "hdtool: precondition: " << e.what() << '\n';
        return kPrecondition;
    }
    return kOk;
}
