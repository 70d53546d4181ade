#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "fermat/verify/suites.hpp"

using namespace fermat;
using io::Json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Run {
    Json report = Json::object();
    Json checks = Json::array();
    bool failed = false;

    void check(const std::string& name, verify::Status st, const std::string& detail = {}) {
        checks.push_back({{"name", name}, {"status", verify::to_string(st)}, {"detail", detail}});
        failed = failed || st == verify::Status::fail;
    }
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw io::ParseError("'" + path + "' is not JSON: " + e.what());
    }
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw io::ParseError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

Json lattice_command(int d, int n, bool milnor, bool with_actions, Run& run) {
    Json res;
    if (milnor) {
        const MilnorModule m = build_milnor(d, n);
        res["lattice"] = io::lattice(m.lattice);
        res["invariants"] = io::invariants(m.lattice);
    } else {
        const PrimitiveFermatLattice p = build_primitive(d, n);
        res["lattice"] = io::lattice(p.lattice);
        res["invariants"] = io::invariants(p.lattice);
        if (with_actions) res["actions"] = io::actions(p);
        run.check("rank matches the closed formula", Integer(p.lattice.rank()) == rank_formula(d, n) ? verify::Status::pass
                                                                                                   : verify::Status::fail);
    }
    return res;
}

Json git_check(const HomogeneousForm& f, Run& run) {
    const auto semi = is_semistable_diagonal(f);
    const auto st = is_stable_diagonal(f);
    run.check("certificate re-verifies", certificate_holds(f, semi) ? verify::Status::pass : verify::Status::fail);
    std::cerr << "semistable (diagonal): " << std::boolalpha << semi.semistable << ", stable (diagonal): " << st.stable
              << '\n';
    return {{"form", io::form(f)},
            {"semistability", io::semistability(semi)},
            {"stability", io::stability(st)},
            {"scope", "diagonal one-parameter subgroups in the given coordinates; false is not a proof of instability"}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice computations for Fermat hypersurfaces"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "Add elapsed milliseconds to the report");

    int d = 0, n = 0;
    bool milnor = false, primitive = false, with_actions = false;
    std::string out;
    auto* lat = app.add_subcommand("lattice", "Build a Milnor or primitive lattice");
    lat->add_option("--d", d, "Degree")->required();
    lat->add_option("--n", n, "Dimension")->required();
    auto* mflag = lat->add_flag("--milnor", milnor, "Milnor lattice (with radical)");
    lat->add_flag("--primitive", primitive, "Primitive lattice (default)")->excludes(mflag);
    lat->add_flag("--actions", with_actions, "Include the group action matrices");
    lat->add_option("--out", out, "Also write the lattice JSON here");

    std::string suite;
    long bound = 0;
    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    ver->add_option("--suite", suite, "One of ranks, resolution, hermitian, hodge, cubic, git")->required();
    auto* bopt = ver->add_option("--bound", bound, "Box bound for searches (required by cubic)");

    std::string form_file;
    auto* git = app.add_subcommand("git", "Diagonal Hilbert-Mumford checks on a form file");
    git->require_subcommand(1);
    auto* gcheck = git->add_subcommand("check", "Semistability and stability with certificates");
    gcheck->add_option("FILE", form_file, "Form JSON")->required();
    auto* gcone = git->add_subcommand("cone", "Append X_{m+1}^d");
    gcone->add_option("FILE", form_file, "Form JSON")->required();
    gcone->add_option("--out", out, "Write the extended form here");

    auto* hod = app.add_subcommand("hodge", "Characters and primitive Hodge numbers");
    hod->add_option("--d", d, "Degree")->required();
    hod->add_option("--n", n, "Dimension")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    Run run;
    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
    run.report["command"] = command;
    const auto t0 = std::chrono::steady_clock::now();
    int status = kOk;
    try {
        Json params, results;
        if (*lat) {
            params = {{"d", d}, {"n", n}, {"kind", milnor ? "milnor" : "primitive"}};
            results = lattice_command(d, n, milnor, with_actions, run);
            if (!out.empty()) write_json(out, results);
            const Json& inv = results["invariants"];
            std::cerr << (milnor ? "milnor" : "primitive") << " d=" << d << " n=" << n << ": rank " << inv["rank"]
                      << ", " << inv["symmetry"].get<std::string>() << ", det " << inv["determinant"] << '\n';
        } else if (*ver) {
            if (suite == "cubic" && !*bopt) throw PreconditionError("--suite cubic needs an explicit --bound");
            params = {{"suite", suite}};
            if (*bopt) params["bound"] = bound;
            Json sections = Json::array();
            for (const auto& s : verify::run_suite(suite, *bopt ? bound : 2)) {
                for (const auto& c : s.checks) run.check(c.name, c.status, c.detail);
                sections.push_back(verify::to_json(s, timing));
                std::cerr << (s.ok() ? "PASS " : "FAIL ") << s.title << '\n';
            }
            results["sections"] = sections;
        } else if (*git) {
            params = {{"file", form_file}};
            const HomogeneousForm f = io::parse_form(read_json(form_file));
            if (*gcheck) {
                params["action"] = "check";
                results = git_check(f, run);
            } else {
                params["action"] = "cone";
                const HomogeneousForm g = cone_extend(f);
                results["form"] = io::form(g);
                if (!out.empty()) write_json(out, io::form(g));
                std::cerr << "cone: " << g.terms().size() << " terms in " << g.m() << " variables\n";
            }
        } else if (*hod) {
            params = {{"d", d}, {"n", n}};
            results = io::hodge_report(d, n);
            std::cerr << "hodge d=" << d << " n=" << n << ": " << results["hodge_numbers"].dump() << '\n';
        }
        if (timing)
            results["elapsed_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        run.report["parameters"] = params;
        run.report["results"] = results;
        status = run.failed ? kFailed : kOk;
    } catch (const PreconditionError& e) {
        run.report["error"] = e.what();
        status = kUsage;
    } catch (const ResourceError& e) {
        run.report["error"] = e.what();
        status = kUsage;
    } catch (const VerificationError& e) {
        run.report["error"] = e.what();
        status = kFailed;
    }
    if (run.report.contains("error")) std::cerr << "error: " << run.report["error"].get<std::string>() << '\n';
    run.report["checks"] = run.checks;
    run.report["exit_status"] = status;
    std::cout << run.report.dump(2) << '\n';
    return status;
}
