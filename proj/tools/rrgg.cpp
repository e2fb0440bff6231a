// Command-line front end: simulate, hitting, build, oracle, experiment, lawcheck.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rrgg/builder.hpp"
#include "rrgg/harness.hpp"
#include "rrgg/io.hpp"
#include "rrgg/oracle.hpp"

namespace {

struct Instance {
    std::size_t n = 100;
    int d = 2;
    std::string p = "2";
    double K = 20.0;
    std::string points_file;
};

void add_instance_options(CLI::App* cmd, Instance& inst) {
    cmd->add_option("-n,--n", inst.n, "number of points")->capture_default_str();
    cmd->add_option("-d,--dim", inst.d, "dimension")->capture_default_str();
    cmd->add_option("-p,--norm", inst.p, "l_p exponent (number or inf)")->capture_default_str();
    cmd->add_option("-K,--colour-factor", inst.K, "colours = ceil(K n)")->capture_default_str();
    cmd->add_option("--points", inst.points_file, "read points from a file instead of sampling");
}

rrgg::PointSet load_points(const Instance& inst, rrgg::Seed seed) {
    if (inst.points_file.empty()) {
        return rrgg::sample_points(inst.n, inst.d, seed, rrgg::NormParam::parse(inst.p));
    }
    std::ifstream in(inst.points_file);
    if (!in) throw std::runtime_error("cannot open " + inst.points_file);
    return rrgg::read_points(in);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to `path`, or stdout when empty.
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rainbow Hamilton cycles and perfect matchings in random geometric graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    rrgg::Seed seed = 1;
    unsigned threads = 1;
    std::string out_path;
    bool seed_given = false;
    app.add_option_function<rrgg::Seed>(
           "--seed", [&](const rrgg::Seed& s) { seed = s, seed_given = true; }, "master seed")
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads")->capture_default_str();
    app.add_option("--out", out_path, "output file (default: stdout)");

    Instance inst;
    double cutoff = 0.0;
    std::string points_out;
    auto* simulate = app.add_subcommand("simulate", "emit the coloured edge process as CSV");
    add_instance_options(simulate, inst);
    simulate->add_option("--cutoff", cutoff, "largest edge length (default: corner distance)");
    simulate->add_option("--points-out", points_out, "also write the points");

    auto* hitting = app.add_subcommand("hitting", "hitting radii of one instance as JSON");
    add_instance_options(hitting, inst);

    std::string mode = "HC";
    rrgg::BuildOptions build_opt;
    double omega = 0.0;
    auto* build = app.add_subcommand("build", "one rainbow build; certificate or failure as JSON");
    add_instance_options(build, inst);
    build->add_option("--mode", mode, "HC or PM")->capture_default_str();
    build->add_option("--epsilon", build_opt.epsilon, "tessellation parameter")->capture_default_str();
    build->add_option("--A", build_opt.A, "ugly path separation factor")->capture_default_str();
    build->add_option("--omega", omega, "omega in the reference radii (default: sqrt(ln ln n))");
    build->add_option("--retries", build_opt.retries, "fresh colour seeds after a failure")->capture_default_str();
    build->add_option("--oracle-limit", build_opt.oracle_fallback_limit, "exact fallback up to this n")
        ->capture_default_str();
    build->add_flag("--diagnostics", build_opt.run_diagnostics, "include tessellation diagnostics");

    std::string instance_file, events_file, kind = "HC";
    std::size_t oracle_n = 0, oracle_limit = 0;
    auto* oracle = app.add_subcommand("oracle", "exact rainbow check on an instance file");
    oracle->add_option("--instance", instance_file, "instance file (header 'n m', lines 'i j colour [length]')");
    oracle->add_option("--events", events_file, "events CSV from 'simulate'");
    oracle->add_option("--n", oracle_n, "vertex count for --events");
    oracle->add_option("--kind", kind, "HC or PM")->capture_default_str();
    oracle->add_option("--limit", oracle_limit, "override the hard size limit");

    std::string config_file;
    auto* experiment = app.add_subcommand("experiment", "batch of trials from a JSON config");
    experiment->add_option("config", config_file, "config JSON")->required();

    auto* lawcheck = app.add_subcommand("lawcheck", "empirical minimum-degree law against the limiting distribution");
    lawcheck->add_option("config", config_file, "config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            auto points = load_points(inst, seed);
            const double c = cutoff > 0.0 ? cutoff : rrgg::corner_distance(points.dim(), points.norm());
            if (!points_out.empty()) emit(points_out, [&](std::ostream& o) { rrgg::write_points(o, points); });
            const auto process = rrgg::build_process(std::move(points), c, inst.K, rrgg::mix_seed(seed, 2));
            emit(out_path, [&](std::ostream& o) { rrgg::write_events_csv(o, process); });
        } else if (hitting->parsed()) {
            const auto points = load_points(inst, seed);
            const auto process =
                rrgg::build_process_reaching(points, rrgg::corner_distance(points.dim(), points.norm()),
                                             rrgg::colour_count_for(inst.K, points.size()), rrgg::mix_seed(seed, 2), 2,
                                             true);
            emit(out_path, [&](std::ostream& o) { o << rrgg::to_json(rrgg::compute_hitting_radii(process)) << '\n'; });
        } else if (build->parsed()) {
            if (omega > 0.0) build_opt.omega = omega;
            const auto points = load_points(inst, seed);
            const auto report =
                rrgg::build_rainbow(points, inst.K, rrgg::mix_seed(seed, 2), rrgg::parse_structure(mode), build_opt);
            emit(out_path, [&](std::ostream& o) { o << rrgg::to_json(report) << '\n'; });
            return report.success() ? 0 : 3;
        } else if (oracle->parsed()) {
            rrgg::ColouredGraphInstance g;
            if (!instance_file.empty()) {
                std::ifstream in(instance_file);
                if (!in) throw std::runtime_error("cannot open " + instance_file);
                g = rrgg::read_instance(in);
            } else if (!events_file.empty()) {
                std::ifstream in(events_file);
                if (!in) throw std::runtime_error("cannot open " + events_file);
                g = rrgg::read_events_csv(in, oracle_n);
            } else {
                throw std::runtime_error("oracle: give --instance or --events");
            }
            const auto k = rrgg::parse_structure(kind);
            const auto witness =
                k == rrgg::Structure::HamiltonCycle
                    ? rrgg::exact_rainbow_hc(g, oracle_limit ? oracle_limit : rrgg::kOracleHamiltonLimit)
                    : rrgg::exact_rainbow_pm(g, oracle_limit ? oracle_limit : rrgg::kOracleMatchingLimit);
            emit(out_path, [&](std::ostream& o) {
                o << "{\n  \"kind\": \"" << rrgg::to_string(k) << "\",\n  \"exists\": " << (witness ? "true" : "false")
                  << ",\n  \"witness\": [";
                if (witness) {
                    for (std::size_t t = 0; t < witness->size(); ++t) {
                        const auto& e = (*witness)[t];
                        o << (t ? ", " : "") << "[" << e.i << ", " << e.j << ", " << e.colour << "]";
                    }
                }
                o << "]\n}\n";
            });
        } else if (experiment->parsed()) {
            auto config = rrgg::config_from_json(slurp(config_file));
            if (seed_given) config.seed = seed;
            const auto records = rrgg::run_trials(config, threads);
            const auto summary = rrgg::summarize(config, records);
            if (!config.records_csv.empty()) {
                emit(config.records_csv, [&](std::ostream& o) { rrgg::write_records_csv(o, records); });
            }
            if (!config.timing_csv.empty()) {
                emit(config.timing_csv, [&](std::ostream& o) { rrgg::write_timing_csv(o, records); });
            }
            const std::string summary_path = !out_path.empty() ? out_path : config.summary_json;
            emit(summary_path, [&](std::ostream& o) { o << rrgg::to_json(config, summary) << '\n'; });
        } else if (lawcheck->parsed()) {
            auto config = rrgg::config_from_json(slurp(config_file));
            if (seed_given) config.seed = seed;
            const auto points = rrgg::min_degree_law_experiment(config, threads);
            if (!config.records_csv.empty()) {
                emit(config.records_csv, [&](std::ostream& o) { rrgg::write_law_csv(o, points); });
            }
            const std::string summary_path = !out_path.empty() ? out_path : config.summary_json;
            emit(summary_path, [&](std::ostream& o) { o << rrgg::to_json(points) << '\n'; });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
