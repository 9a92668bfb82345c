#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "s2xs2/catalog.hpp"
#include "s2xs2/parallel.hpp"
#include "s2xs2/report.hpp"
#include "s2xs2/sinh_gordon.hpp"
#include "s2xs2/spectral.hpp"
#include "s2xs2/verify.hpp"
#include "s2xs2/version.hpp"

namespace {

using namespace s2xs2;

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << content;
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> kv;
    if (path.empty()) return kv;
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read config file " + path);
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification harness for Lagrangian surface geometry in S^2 x S^2"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    std::string config_path;
    int threads = 0;
    app.add_option("--config", config_path, "key=value config file (flags take precedence)");
    app.add_option("--threads", threads, "worker pool size (default: logical processors)");

    // catalog
    auto* cat = app.add_subcommand("catalog", "list surface identifiers");
    bool cat_json = false;
    cat->add_flag("--json", cat_json, "machine-readable listing");

    // analyze
    auto* an = app.add_subcommand("analyze", "run every applicable analyzer on one surface");
    std::string an_surface, an_out;
    int an_nt = 64, an_ns = 64;
    double an_tol_scale = 1.0;
    an->add_option("--surface", an_surface, "surface id")->required();
    auto* an_nt_opt = an->add_option("--nt", an_nt, "grid nodes in t");
    auto* an_ns_opt = an->add_option("--ns", an_ns, "grid nodes in s");
    auto* an_ts_opt = an->add_option("--tol-scale", an_tol_scale, "tolerance multiplier");
    an->add_option("--out", an_out, "write the JSON report here");

    // verify
    auto* ve = app.add_subcommand("verify", "run the verification suites");
    std::string ve_suites, ve_surface, ve_out;
    int ve_nt = 64, ve_ns = 64;
    double ve_tol_scale = 1.0;
    ve->add_option("--suite", ve_suites,
                   "comma list of: lagrangian,minimal,identities,gaussmap,sinh-gordon,spectral");
    ve->add_option("--surface", ve_surface, "restrict surface-keyed checks to one id");
    auto* ve_nt_opt = ve->add_option("--nt", ve_nt, "grid nodes in t");
    auto* ve_ns_opt = ve->add_option("--ns", ve_ns, "grid nodes in s");
    auto* ve_ts_opt = ve->add_option("--tol-scale", ve_tol_scale, "tolerance multiplier");
    ve->add_option("--out", ve_out, "write the JSON report here");

    // export
    auto* ex = app.add_subcommand("export", "export grid fields");
    std::string ex_surface, ex_fields, ex_format = "csv", ex_out;
    int ex_nt = 64, ex_ns = 64;
    ex->add_option("--surface", ex_surface, "surface id")->required();
    ex->add_option("--fields", ex_fields, "comma list of C,K,u,H,sigma2,position")->required();
    ex->add_option("--format", ex_format, "csv or json");
    auto* ex_nt_opt = ex->add_option("--nt", ex_nt, "grid nodes in t");
    auto* ex_ns_opt = ex->add_option("--ns", ex_ns, "grid nodes in s");
    ex->add_option("--out", ex_out, "output file (stdout when omitted)");

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "Laplace spectrum and index report");
    std::string sp_surface, sp_out;
    int sp_nt = 64, sp_ns = 64;
    auto* sp_nt_opt = sp->add_option("--nt", sp_nt, "grid nodes in t");
    auto* sp_ns_opt = sp->add_option("--ns", sp_ns, "grid nodes in s");
    sp->add_option("--surface", sp_surface, "surface id")->required();
    sp->add_option("--out", sp_out, "write the JSON report here");

    // sg
    auto* sg = app.add_subcommand("sg", "reduced sinh-Gordon trajectory as CSV (t,v,u,C)");
    double sg_v0 = std::atanh(0.5), sg_dv0 = 0.0, sg_T = 0.0, sg_h = 1e-3;
    std::string sg_out;
    sg->add_option("--v0", sg_v0, "initial value");
    sg->add_option("--dv0", sg_dv0, "initial derivative");
    sg->add_option("--T", sg_T, "integration time (default: one closed-form period)");
    sg->add_option("--step", sg_h, "step size");
    sg->add_option("--out", sg_out, "output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const auto config = read_config(config_path);
        const auto cfg_int = [&](const char* key, const CLI::Option* opt, int& target) {
            if (opt->count() == 0 && config.count(key)) target = std::stoi(config.at(key));
        };
        const auto cfg_real = [&](const char* key, const CLI::Option* opt, double& target) {
            if (opt->count() == 0 && config.count(key)) target = std::stod(config.at(key));
        };
        if (config.count("threads") && threads == 0) threads = std::stoi(config.at("threads"));
        worker_count() = threads;

        if (cat->parsed()) {
            const auto entries = s2xs2::catalog();
            if (cat_json) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& e : entries)
                    j.push_back({{"id", e.id}, {"kind", e.kind}, {"summary", e.summary}});
                std::cout << j.dump(2) << '\n';
            } else {
                for (const auto& e : entries)
                    std::cout << e.id << "  [" << e.kind << "]  " << e.summary << '\n';
            }
            return 0;
        }

        if (an->parsed()) {
            cfg_int("nt", an_nt_opt, an_nt);
            cfg_int("ns", an_ns_opt, an_ns);
            cfg_real("tol_scale", an_ts_opt, an_tol_scale);
            const SurfaceReport rep = analyze_by_id(an_surface, an_nt, an_ns, an_tol_scale);
            write_out(an_out, rep.to_json());
            for (const auto& c : rep.invariants)
                std::cerr << (c.pass ? "pass " : "FAIL ") << c.name << "  " << c.max_residual
                          << " <= " << c.tolerance << '\n';
            return rep.all_pass ? 0 : 1;
        }

        if (ve->parsed()) {
            cfg_int("nt", ve_nt_opt, ve_nt);
            cfg_int("ns", ve_ns_opt, ve_ns);
            cfg_real("tol_scale", ve_ts_opt, ve_tol_scale);
            VerifyOptions opt;
            opt.tol_scale = ve_tol_scale;
            opt.surface = ve_surface;
            opt.nt = ve_nt;
            opt.ns = ve_ns;
            opt.suites = split_csv(ve_suites);
            for (const auto& s : opt.suites)
                if (std::find(known_suites().begin(), known_suites().end(), s) ==
                    known_suites().end())
                    throw DomainError("unknown suite '" + s + "'");
            const auto results = run_verify(opt);
            for (const auto& c : results)
                std::cout << (c.pass ? "pass " : "FAIL ") << c.suite << ":" << c.name << "  "
                          << c.value << " <= " << c.threshold
                          << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
            if (!ve_out.empty()) write_out(ve_out, verify_report_json(results, ve_tol_scale));
            return all_pass(results) ? 0 : 1;
        }

        if (ex->parsed()) {
            cfg_int("nt", ex_nt_opt, ex_nt);
            cfg_int("ns", ex_ns_opt, ex_ns);
            const SurfaceSpec s = surface_by_id(ex_surface);
            const auto fields = split_csv(ex_fields);
            if (ex_format == "csv")
                write_out(ex_out, export_fields_csv(s, fields, ex_nt, ex_ns));
            else if (ex_format == "json")
                write_out(ex_out, export_fields_json(s, fields, ex_nt, ex_ns));
            else
                throw DomainError("unknown export format '" + ex_format + "'");
            return 0;
        }

        if (sp->parsed()) {
            cfg_int("nt", sp_nt_opt, sp_nt);
            cfg_int("ns", sp_ns_opt, sp_ns);
            const SurfaceSpec s = surface_by_id(sp_surface);
            const SpectralResult res = index_report(s, sp_nt, sp_ns);
            nlohmann::json j;
            j["schema"] = kReportSchema;
            j["surface"] = s.name;
            j["grid"] = {{"nt", sp_nt}, {"ns", sp_ns}};
            j["eigenvalues"] = res.eigenvalues;
            std::string par(res.parity.begin(), res.parity.end());
            j["parities"] = par;
            j["lambda1"] = res.lambda1;
            j["ind0"] = res.ind0;
            j["ind1"] = res.ind1;
            j["betti1"] = res.betti1;
            j["index"] = res.index;
            j["margins"] = res.margin;
            write_out(sp_out, j.dump(2));
            return 0;
        }

        if (sg->parsed()) {
            if (sg_T <= 0.0) {
                const EllipticModulus p(2.0 * std::sqrt(2.0) / 3.0);
                sg_T = 2.0 * complete_K(p) / std::sqrt(3.0);
            }
            const ReducedSolution sol = integrate_reduced(sg_v0, sg_dv0, sg_T, sg_h);
            const Reconstruction rec = reconstruct(sol.as_field());
            std::ostringstream out;
            out << "t,v,u,C\n";
            char buf[160];
            for (size_t i = 0; i < sol.v.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", i * sol.h, sol.v[i],
                              rec.u[i], rec.C[i]);
                out << buf;
            }
            write_out(sg_out, out.str());
            return 0;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
