#include "rrgg/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rrgg {

namespace {

using nlohmann::json;

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json jnum(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

template <class T>
json jopt(const std::optional<T>& x) {
    if (!x) return nullptr;
    if constexpr (std::is_floating_point_v<T>) {
        return jnum(*x);
    } else {
        return json(*x);
    }
}

std::string opt_num(const std::optional<double>& x) {
    return x ? num(*x) : "";
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

json radii_json(const HittingRadii& r) {
    json j;
    j["r_min_deg"] = json::object();
    for (const auto& [k, v] : r.r_min_deg) j["r_min_deg"][std::to_string(k)] = jnum(v);
    j["r_kconn"] = json::object();
    for (const auto& [k, v] : r.r_kconn) j["r_kconn"][std::to_string(k)] = jnum(v);
    j["r_rhc"] = jopt(r.r_rhc);
    j["r_rpm"] = jopt(r.r_rpm);
    return j;
}

json certificate_json(const RainbowCertificate& c) {
    json edges = json::array();
    for (const auto& e : c.edges) edges.push_back({{"i", e.i}, {"j", e.j}, {"colour", e.colour}, {"length", e.length}});
    return {{"kind", to_string(c.kind)}, {"radius", jnum(c.radius)}, {"edges", edges}};
}

json failure_json(const BuildFailure& f) {
    return {{"stage", f.stage}, {"piece", f.piece}, {"detail", f.detail}};
}

json diagnostics_json(const DiagnosticsReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed ? json(*c.passed) : json(nullptr)},
                          {"statistic", jnum(c.statistic)},
                          {"bound", jnum(c.bound)},
                          {"note", c.note}});
    }
    return {{"checks", checks}, {"all_judged_passed", r.all_judged_passed()}};
}

json config_json(const ExperimentConfig& c) {
    json j;
    j["d"] = c.d;
    j["p"] = c.p.is_infinite() ? json("inf") : json(c.p.value());
    j["n_list"] = c.n_list;
    j["K"] = c.K;
    j["epsilon"] = c.epsilon;
    j["A"] = c.A;
    j["omega"] = c.omega ? json(*c.omega) : json("default");
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["mode"] = to_string(c.mode);
    j["oracle_limit"] = c.oracle_limit;
    j["retries"] = c.retries;
    j["diagnostics"] = c.diagnostics;
    j["alphas"] = c.alphas;
    j["records_csv"] = c.records_csv;
    j["summary_json"] = c.summary_json;
    j["timing_csv"] = c.timing_csv;
    return j;
}

json structure_summary_json(const StructureSummary& s) {
    return {{"attempted", s.attempted},
            {"success", s.success},
            {"frequency", s.frequency},
            {"std_error", s.std_error},
            {"oracle_fallbacks", s.oracle_fallbacks},
            {"invalid_certificates", s.invalid_certificates},
            {"ledger_failures", s.ledger_failures},
            {"failures_by_stage", s.failures_by_stage}};
}

std::string header_field(std::istringstream& ss, const char* what) {
    std::string tok;
    if (!(ss >> tok)) throw std::invalid_argument(std::string("missing ") + what);
    return tok;
}

}  // namespace

void write_points(std::ostream& out, const PointSet& points) {
    out << points.size() << ' ' << points.dim() << ' ' << points.norm().to_string() << ' ' << points.seed() << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto x = points[i];
        for (int k = 0; k < points.dim(); ++k) out << (k ? " " : "") << num(x[k]);
        out << '\n';
    }
}

PointSet read_points(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("points: empty input");
    std::istringstream hs(line);
    const auto n = std::stoull(header_field(hs, "n"));
    const int d = std::stoi(header_field(hs, "d"));
    const auto p = NormParam::parse(header_field(hs, "p"));
    Seed seed = 0;
    hs >> seed;
    std::vector<double> coords;
    coords.reserve(n * static_cast<std::size_t>(std::max(d, 0)));
    for (std::size_t i = 0; i < n * static_cast<std::size_t>(d); ++i) {
        std::string tok;
        if (!(in >> tok)) throw std::invalid_argument("points: fewer coordinates than announced");
        coords.push_back(std::stod(tok));
    }
    return PointSet(d, p, std::move(coords), seed);
}

void write_events_csv(std::ostream& out, const ColouredProcess& process) {
    out << "i,j,length,colour\n";
    for (const auto& e : process.events()) out << e.i << ',' << e.j << ',' << num(e.length) << ',' << e.colour << '\n';
}

void write_instance(std::ostream& out, const ColouredGraphInstance& g) {
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& e : g.edges) {
        out << e.i << ' ' << e.j << ' ' << e.colour;
        if (e.length) out << ' ' << num(*e.length);
        out << '\n';
    }
}

ColouredGraphInstance read_instance(std::istream& in) {
    ColouredGraphInstance g;
    std::size_t m = 0;
    if (!(in >> g.n >> m)) throw std::invalid_argument("instance: missing header 'n m'");
    std::string line;
    std::getline(in, line);
    while (g.edges.size() < m && std::getline(in, line)) {
        std::istringstream ls(line);
        ColouredEdge e{};
        if (!(ls >> e.i >> e.j >> e.colour)) continue;
        double len = 0.0;
        if (ls >> len) e.length = len;
        g.edges.push_back(e);
    }
    if (g.edges.size() != m) throw std::invalid_argument("instance: fewer edge lines than announced");
    g.check();
    return g;
}

ColouredGraphInstance read_events_csv(std::istream& in, std::size_t n) {
    ColouredGraphInstance g;
    g.n = n;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        for (auto& c : line) c = c == ',' ? ' ' : c;
        std::istringstream ls(line);
        ColouredEdge e{};
        double len = 0.0;
        if (!(ls >> e.i >> e.j >> len >> e.colour)) throw std::invalid_argument("events: malformed line");
        e.length = len;
        g.edges.push_back(e);
    }
    g.check();
    return g;
}

std::string to_json(const HittingRadii& radii) {
    return radii_json(radii).dump(2);
}

std::string to_json(const RainbowCertificate& cert) {
    return certificate_json(cert).dump(2);
}

std::string to_json(const BuildFailure& failure) {
    return failure_json(failure).dump(2);
}

std::string to_json(const BuildReport& r) {
    json j;
    j["success"] = r.success();
    j["radius_kind"] = to_string(r.radius_kind);
    j["radius"] = jopt(r.radius);
    j["r0"] = jopt(r.r0);
    j["colour_seed"] = r.colour_seed;
    j["attempts"] = r.attempts;
    j["used_oracle"] = r.used_oracle;
    j["ledger_ok"] = r.ledger_ok;
    j["ugly_paths"] = r.ugly_paths;
    j["bad_paths"] = r.bad_paths;
    j["good_cells"] = r.good_cells;
    j["oversized_forests"] = r.forest_stats.oversized_cells;
    j["certificate"] = r.certificate ? certificate_json(*r.certificate) : json(nullptr);
    j["failure"] = r.failure ? failure_json(*r.failure) : json(nullptr);
    j["certificate_violations"] = r.certificate_violations;
    if (r.diagnostics) j["diagnostics"] = diagnostics_json(*r.diagnostics);
    return j.dump(2);
}

std::string to_json(const DiagnosticsReport& report) {
    return diagnostics_json(report).dump(2);
}

std::string to_json(const ExperimentConfig& config, const ExperimentSummary& summary) {
    json sizes = json::array();
    for (const auto& s : summary.sizes) {
        json js;
        js["n"] = s.n;
        js["trials"] = s.trials;
        js["errors"] = s.errors;
        js["hc"] = s.hc ? structure_summary_json(*s.hc) : json(nullptr);
        js["pm"] = s.pm ? structure_summary_json(*s.pm) : json(nullptr);
        json diag = json::object();
        for (const auto& [name, pj] : s.diagnostics) {
            diag[name] = {{"passed", pj.first},
                          {"judged", pj.second},
                          {"pass_rate", pj.second ? static_cast<double>(pj.first) / pj.second : 0.0}};
        }
        js["diagnostics"] = diag;
        js["oracle_runs"] = s.oracle_runs;
        js["oracle_agreements"] = s.oracle_agreements;
        js["necessity_violations"] = s.necessity_violations;
        sizes.push_back(js);
    }
    json j;
    j["config"] = config_json(config);
    j["sizes"] = sizes;
    j["hc_trend_ok"] = summary.hc_trend_ok;
    j["pm_trend_ok"] = summary.pm_trend_ok;
    return j.dump(2);
}

std::string to_json(const std::vector<LawPoint>& points) {
    json arr = json::array();
    for (const auto& p : points) {
        arr.push_back({{"kind", to_string(p.kind)},
                       {"n", p.n},
                       {"alpha", p.alpha},
                       {"radius", p.radius},
                       {"trials", p.trials},
                       {"hits", p.hits},
                       {"empirical", p.empirical},
                       {"limit", p.limit}});
    }
    return arr.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    ExperimentConfig c;
    try {
        if (j.contains("d")) c.d = j.at("d").get<int>();
        if (j.contains("p")) {
            const auto& p = j.at("p");
            c.p = p.is_string() ? NormParam::parse(p.get<std::string>()) : NormParam(p.get<double>());
        }
        if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<std::size_t>>();
        if (j.contains("K")) c.K = j.at("K").get<double>();
        if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
        if (j.contains("A")) c.A = j.at("A").get<double>();
        if (j.contains("omega")) {
            const auto& o = j.at("omega");
            if (o.is_number()) {
                c.omega = o.get<double>();
            } else if (!(o.is_string() && o.get<std::string>() == "default") && !o.is_null()) {
                throw std::invalid_argument("config: omega must be a number or \"default\"");
            }
        }
        if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<Seed>();
        if (j.contains("mode")) c.mode = parse_experiment_mode(j.at("mode").get<std::string>());
        if (j.contains("oracle_limit")) c.oracle_limit = j.at("oracle_limit").get<std::size_t>();
        if (j.contains("retries")) c.retries = j.at("retries").get<int>();
        if (j.contains("diagnostics")) c.diagnostics = j.at("diagnostics").get<bool>();
        if (j.contains("alphas")) c.alphas = j.at("alphas").get<std::vector<double>>();
        if (j.contains("records_csv")) c.records_csv = j.at("records_csv").get<std::string>();
        if (j.contains("summary_json")) c.summary_json = j.at("summary_json").get<std::string>();
        if (j.contains("timing_csv")) c.timing_csv = j.at("timing_csv").get<std::string>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

std::string config_to_json(const ExperimentConfig& config) {
    return config_json(config).dump(2);
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "n,trial,seed,r_mindeg1,r_mindeg2,r_1conn,r_2conn,r_rhc,r_rpm";
    for (const char* s : {"hc", "pm"}) {
        out << ',' << s << "_success," << s << "_stage," << s << "_radius," << s << "_oracle," << s << "_ledger_ok,"
            << s << "_ugly_paths," << s << "_bad_paths," << s << "_good_cells";
    }
    out << ",oracle_run,oracle_necessity_ok,oracle_agrees,diag_passed,diag_judged,diag_failed,error\n";
    auto get = [](const std::map<int, double>& m, int k) -> std::optional<double> {
        const auto it = m.find(k);
        if (it == m.end()) return std::nullopt;
        return it->second;
    };
    for (const auto& r : records) {
        out << r.n << ',' << r.trial << ',' << r.seed << ',' << opt_num(get(r.radii.r_min_deg, 1)) << ','
            << opt_num(get(r.radii.r_min_deg, 2)) << ',' << opt_num(get(r.radii.r_kconn, 1)) << ','
            << opt_num(get(r.radii.r_kconn, 2)) << ',' << opt_num(r.radii.r_rhc) << ',' << opt_num(r.radii.r_rpm);
        for (const auto* o : {&r.hc, &r.pm}) {
            if (*o) {
                const auto& s = **o;
                out << ',' << s.success << ',' << csv_quote(s.stage) << ',' << opt_num(s.radius) << ','
                    << s.used_oracle << ',' << s.ledger_ok << ',' << s.ugly_paths << ',' << s.bad_paths << ','
                    << s.good_cells;
            } else {
                out << ",,,,,,,,";
            }
        }
        std::size_t passed = 0, judged = 0;
        std::string failed;
        for (const auto& c : r.diagnostics) {
            if (!c.passed) continue;
            ++judged;
            if (*c.passed) {
                ++passed;
            } else {
                failed += (failed.empty() ? "" : ";") + c.name;
            }
        }
        out << ',' << r.oracle.run << ',' << r.oracle.necessity_ok << ',' << r.oracle.agrees << ',' << passed << ','
            << judged << ',' << csv_quote(failed) << ',' << csv_quote(r.error) << '\n';
    }
}

void write_timing_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << "n,trial,wall_seconds\n";
    for (const auto& r : records) out << r.n << ',' << r.trial << ',' << num(r.wall_seconds) << '\n';
}

void write_law_csv(std::ostream& out, const std::vector<LawPoint>& points) {
    out << "kind,n,alpha,radius,trials,hits,empirical,limit\n";
    for (const auto& p : points) {
        out << to_string(p.kind) << ',' << p.n << ',' << num(p.alpha) << ',' << num(p.radius) << ',' << p.trials
            << ',' << p.hits << ',' << num(p.empirical) << ',' << num(p.limit) << '\n';
    }
}

}  // namespace rrgg
