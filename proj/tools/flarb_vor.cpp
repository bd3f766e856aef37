// flarb-vor: generate inputs, run experiments, verify reports, query diagrams.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "flarb/cli_bench.hpp"

using namespace flarb;

namespace {

bool summary_passes(const ExperimentSummary& s) {
    return s.sandwich_violations == 0 && s.tree_sandwich_violations == 0 && s.growth_violations == 0 &&
           s.shrinkage_violations == 0 && s.shadow_mismatches == 0 && s.structure_failures == 0 &&
           s.oracle_mismatches == 0 && s.all_isomorphic;
}

std::pair<long long, long long> parse_pair(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw Error(Errc::BadConfig, "expected two comma-separated integers: " + s);
    try {
        return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(Errc::BadConfig, "expected two comma-separated integers: " + s);
    }
}

int do_run(const ExperimentConfig& cfg, const std::string& out) {
    std::string csv_path = out + ".csv";
    std::ofstream csv(csv_path);
    if (!csv) throw Error(Errc::BadConfig, "cannot write " + csv_path);
    ExperimentSummary s = run_experiment(cfg, &csv);
    csv.close();
    std::string js = s.to_json();
    std::ofstream(out + ".summary.json") << js << '\n';
    std::cout << js << '\n';
    std::ifstream back(csv_path);
    VerifyResult v = verify_report(back);
    for (const auto& f : v.failures) std::cerr << f << '\n';
    return summary_passes(s) && v.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flarb-vor: incremental farthest-point Voronoi diagrams via flarbs"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string backend = "scan";
    std::string out, run_out = "report", lb_out = "lowerbound";
    std::string report;
    std::string nearest, adjacent;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--gen", cfg.generator, "random-convex | clockwise-convex | lowerbound");
        sub->add_option("--n", cfg.n, "number of sites");
        sub->add_option("--k", cfg.k, "lower-bound family parameter");
        sub->add_option("--rounds", cfg.rounds, "lower-bound rounds");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--backend", backend, "circle store backend: scan | sublinear");
    };

    auto* gen = app.add_subcommand("gen", "write a generated input to --out (default stdout)");
    add_common(gen);
    gen->add_option("--out", out, "output file");

    auto* run = app.add_subcommand("run", "run an experiment, writing <out>.csv and <out>.summary.json");
    add_common(run);
    run->add_option("--out", run_out, "output prefix (default report)");
    run->add_flag("--audit", cfg.audit, "compare against the reference after every insertion");
    run->add_option("--in", cfg.input, "site file (x,y per line) instead of a generator");

    auto* verify = app.add_subcommand("verify", "check every row of a CSV report");
    verify->add_option("report", report, "report CSV")->required();

    auto* lb = app.add_subcommand("lowerbound", "run the lower-bound cycle");
    lb->add_option("--k", cfg.k, "family parameter");
    lb->add_option("--rounds", cfg.rounds, "rounds");
    lb->add_option("--out", lb_out, "output prefix (default lowerbound)");

    auto* query = app.add_subcommand("query", "answer queries on the diagram of a site file");
    query->add_option("--in", cfg.input, "site file")->required();
    query->add_option("--backend", backend, "circle store backend");
    query->add_option("--nearest", nearest, "x,y");
    query->add_option("--adjacent", adjacent, "site ids a,b");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.backend = parse_backend(backend);
        if (*gen) {
            if (out.empty()) {
                generate(cfg, std::cout);
            } else {
                std::ofstream f(out);
                if (!f) throw Error(Errc::BadConfig, "cannot write " + out);
                generate(cfg, f);
            }
            return 0;
        }
        if (*run) return do_run(cfg, run_out);
        if (*lb) {
            cfg.generator = "lowerbound";
            return do_run(cfg, lb_out);
        }
        if (*verify) {
            std::ifstream in(report);
            if (!in) throw Error(Errc::BadConfig, "cannot open " + report);
            VerifyResult v = verify_report(in);
            for (const auto& f : v.failures) std::cout << f << '\n';
            std::cout << (v.ok ? "OK" : "FAIL") << " rows=" << v.rows << " total_cost=" << v.total_cost
                      << " c_fit=" << v.c_fit << '\n';
            return v.ok ? 0 : 1;
        }
        if (*query) {
            std::ifstream in(cfg.input);
            if (!in) throw Error(Errc::BadConfig, "cannot open " + cfg.input);
            VoronoiDiagram d = VoronoiDiagram::init(read_sites_csv(in), cfg.backend);
            if (nearest.empty() && adjacent.empty()) throw Error(Errc::BadConfig, "give --nearest or --adjacent");
            if (!nearest.empty()) {
                auto [x, y] = parse_pair(nearest);
                std::cout << "nearest " << d.nearest_site(Site(x, y)) << '\n';
            }
            if (!adjacent.empty()) {
                auto [a, b] = parse_pair(adjacent);
                std::cout << "adjacent " << (d.delaunay_adjacent(static_cast<int>(a), static_cast<int>(b)) ? 1 : 0)
                          << '\n';
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 0;
}
