#include "cpdmd/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "cpdmd/baseline.hpp"
#include "cpdmd/io.hpp"
#include "cpdmd/metrics.hpp"
#include "cpdmd/pipeline.hpp"
#include "cpdmd/synth.hpp"
#include "cpdmd/theory.hpp"

namespace cpdmd {

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::uint64_t env_base_seed() {
    const char* v = std::getenv("CPDMD_SEED");
    if (v == nullptr || *v == '\0') return 0;
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(v, &end, 10);
    if (*end != '\0') throw CLI::ValidationError("CPDMD_SEED", "not a nonnegative integer");
    return parsed;
}

std::string basename_of(const std::string& path) {
    const auto pos = path.find_last_of('/');
    return pos == std::string::npos ? path : path.substr(pos + 1);
}

// Scenario names carry pi glyphs, slashes, and parentheses; file names
// flatten them.
std::string sanitize(const std::string& name) {
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(name[i]);
        if (c == 0xCF && i + 1 < name.size() &&
            static_cast<unsigned char>(name[i + 1]) == 0x80) {
            out += "pi";
            ++i;
        } else if (c == '/' || c == '(' || c == ')' || c == ',') {
            out += '_';
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<double> parse_fraction_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw CLI::ValidationError("--grid", what + ": bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("--grid", what + " is empty");
    return out;
}

// --grid WINDOW_FRACS:ORDER_FRACS:RANK_MULT, e.g. 0.4,0.6,0.8:0.05,0.1:2
GridSpec parse_grid(const std::string& text) {
    GridSpec gs;
    if (text.empty()) return gs;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
        throw CLI::ValidationError("--grid", "expected WINDOW_FRACS:ORDER_FRACS:RANK_MULT");
    gs.window_fractions = parse_fraction_list(parts[0], "window fractions");
    gs.order_fractions = parse_fraction_list(parts[1], "order fractions");
    char* end = nullptr;
    const long mult = std::strtol(parts[2].c_str(), &end, 10);
    if (end == parts[2].c_str() || *end != '\0' || mult < 1)
        throw CLI::ValidationError("--grid", "rank multiplier must be a positive integer");
    gs.rank_multiplier = mult;
    return gs;
}

MarginSpec parse_margins(const std::string& text) {
    MarginSpec m;
    if (text.empty()) return m;
    long l = 0, r = 0;
    if (std::sscanf(text.c_str(), "%ld,%ld", &l, &r) != 2 || l < 0 || r < 0)
        throw CLI::ValidationError("--margins", "expected LEFT,RIGHT nonnegative integers");
    m.mu_l = l;
    m.mu_r = r;
    return m;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

ordered_json params_json(const SignalParams& sp) {
    ordered_json j;
    j["omegas"] = sp.omegas;
    j["alphas"] = sp.alphas;
    j["beta"] = sp.beta;
    j["gamma"] = sp.gamma;
    j["sigma"] = sp.sigma;
    return j;
}

ordered_json report_json(const ChangepointReport& rep, const std::string& input_name) {
    ordered_json j;
    j["input"] = input_name;
    j["changepoints"] = rep.changepoints;
    j["segments"] = ordered_json::array();
    for (const SegmentInfo& seg : rep.segments)
        j["segments"].push_back({{"start", seg.start},
                                 {"end", seg.end},
                                 {"w", seg.params.w},
                                 {"d", seg.params.d},
                                 {"r", seg.params.r}});
    j["warnings"] = rep.warnings;
    return j;
}

std::optional<Index> first_detection_at_or_after(const std::vector<Index>& cps, Index tau) {
    for (Index cp : cps)
        if (cp >= tau) return cp;
    return std::nullopt;
}

void machine_error(const char* type, const std::string& message) {
    ordered_json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << '\n';
}

// ----------------------------------------------------------------------
// detect

struct DetectOpts {
    std::string input;
    std::string output;
    Index T0 = 100;
    double lambda = 0.05;
    double L = 4.5;
    std::string grid;
    std::string format = "json";
    unsigned jobs = 1;
};

int cmd_detect(const DetectOpts& o) {
    const RealMatrix x = io::read_stream_csv(o.input);
    const GridSpec gs = parse_grid(o.grid);
    const bool want_trace = o.format == "csv";
    const ChangepointReport rep = detect_all(x, o.T0, o.lambda, o.L, gs, want_trace, o.jobs);

    const ordered_json j = report_json(rep, basename_of(o.input));
    if (o.output.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        io::write_text(o.output, j.dump(2) + "\n");
    }

    if (want_trace) {
        std::ostringstream csv;
        csv << "t,epsilon,delta,z,mu,sigma_z,alarm\n";
        for (const SegmentInfo& seg : rep.segments)
            for (const TraceRow& row : seg.trace)
                csv << row.t << ',' << io::format_double(row.epsilon) << ','
                    << io::format_double(row.delta) << ',' << io::format_double(row.z) << ','
                    << io::format_double(row.mu) << ',' << io::format_double(row.sigma_z) << ','
                    << (row.alarm ? 1 : 0) << '\n';
        const std::string trace_path =
            o.output.empty() ? "detect_trace.csv" : o.output + "_trace.csv";
        io::write_text(trace_path, csv.str());
    }
    return 0;
}

// ----------------------------------------------------------------------
// simulate

struct SimulateOpts {
    std::string scenario;
    std::string output;
    Index seeds = 1;
    Index length = 600;
    bool null_variant = false;
};

int cmd_simulate(const SimulateOpts& o) {
    std::string name = o.scenario;
    if (o.null_variant && name.rfind("null/", 0) != 0)
        name = "null/" + name.substr(0, name.find('/'));

    ChangeScenario sc;
    try {
        sc = find_scenario(name, o.length);
    } catch (const UnknownScenario&) {
        std::ostringstream msg;
        msg << "unknown scenario '" << name << "'; valid names:";
        for (const auto& s : scenario_catalog()) msg << ' ' << s.name;
        throw UnknownScenario(msg.str());
    }

    const std::uint64_t base = env_base_seed();
    const std::string prefix = o.output.empty() ? sanitize(name) : o.output;

    ordered_json manifest;
    manifest["scenario"] = sc.name;
    manifest["tau"] = sc.tau;
    manifest["T"] = sc.T;
    manifest["changepoints"] =
        sc.tau > 1 ? std::vector<Index>{sc.tau} : std::vector<Index>{};
    manifest["pre"] = params_json(sc.pre);
    manifest["post"] = params_json(sc.post);
    manifest["base_seed"] = base;
    manifest["files"] = ordered_json::array();

    for (Index k = 0; k < o.seeds; ++k) {
        const std::uint64_t seed = base + static_cast<std::uint64_t>(k);
        const RealMatrix x = generate(sc, seed);
        std::ostringstream path;
        path << prefix << "_seed" << seed << ".csv";
        io::write_stream_csv(path.str(), x, {"x"});
        manifest["files"].push_back({{"seed", seed}, {"path", basename_of(path.str())}});
    }
    manifest["created"] = timestamp_utc();
    io::write_text(prefix + "_manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << o.seeds << " stream(s) with prefix '" << prefix << "'\n";
    return 0;
}

// ----------------------------------------------------------------------
// evaluate

struct EvaluateOpts {
    std::string manifest;
    std::vector<std::string> reports;
    std::string margins;
    std::string output;
    Index T0 = 100;
};

int cmd_evaluate(const EvaluateOpts& o) {
    const MarginSpec margins = parse_margins(o.margins);
    const ordered_json manifest = ordered_json::parse(io::read_text(o.manifest));
    const std::vector<Index> truth = manifest.at("changepoints").get<std::vector<Index>>();
    const Index T = manifest.at("T").get<Index>();

    std::vector<std::string> known_inputs;
    if (manifest.contains("files"))
        for (const auto& f : manifest.at("files")) {
            // detect reports name their input CSV; manifest paths are the
            // same CSVs, so stems must line up
            known_inputs.push_back(f.at("path").get<std::string>());
        }

    Index tp = 0, det = 0, truths = 0;
    double covering_sum = 0.0;
    std::vector<Arl1Run> change_runs;
    std::vector<Index> null_lengths;

    for (const std::string& path : o.reports) {
        const ordered_json rep = ordered_json::parse(io::read_text(path));
        const std::vector<Index> cps = rep.at("changepoints").get<std::vector<Index>>();
        if (rep.contains("input") && !known_inputs.empty()) {
            const std::string input = rep.at("input").get<std::string>();
            bool found = false;
            for (const auto& k : known_inputs) found = found || k == input;
            if (!found)
                throw ParseError("report " + path + ": input '" + input +
                                 "' is not in the truth manifest");
        }

        const EvalResult e = prf1(truth, cps, margins);
        tp += e.tp_count;
        det += e.detection_count;
        truths += e.truth_count;
        covering_sum += covering(truth, cps, T);

        if (truth.empty()) {
            const auto first = cps.empty() ? std::nullopt : std::optional<Index>(cps.front());
            null_lengths.push_back(first ? *first - o.T0 : T - o.T0);
        } else {
            const auto hit = first_detection_at_or_after(cps, truth.front());
            change_runs.push_back({truth.front(), hit.has_value(), hit.value_or(0)});
        }
    }

    double precision = 0.0, recall = 0.0;
    if (truths == 0) {
        recall = 1.0;
        precision = det == 0 ? 1.0 : 0.0;
    } else {
        recall = static_cast<double>(tp) / static_cast<double>(truths);
        precision = det == 0 ? 0.0
                             : std::min(1.0, static_cast<double>(tp) / static_cast<double>(det));
    }
    const double pr = precision + recall;
    const double f1 = pr > 0.0 ? 2.0 * precision * recall / pr : 0.0;
    const double cov = covering_sum / static_cast<double>(o.reports.size());

    std::ostringstream lines;
    lines << "precision " << fmt("%.3f", precision) << '\n'
          << "recall " << fmt("%.3f", recall) << '\n'
          << "f1 " << fmt("%.3f", f1) << '\n'
          << "covering " << fmt("%.3f", cov) << '\n';
    if (!null_lengths.empty()) {
        const RunLength rl = arl0(null_lengths);
        lines << "arl0 " << fmt("%.2f", rl.mean) << " (" << fmt("%.2f", rl.sd) << ")\n";
    } else {
        bool any_valid = false;
        for (const Arl1Run& run : change_runs)
            any_valid = any_valid || (run.detected && run.t_detect >= run.tau);
        if (any_valid) {
            const RunLength rl = arl1(change_runs);
            lines << "arl1 " << fmt("%.2f", rl.mean) << " (" << fmt("%.2f", rl.sd) << ")\n";
        }
    }

    std::cout << lines.str();
    if (!o.output.empty()) {
        std::ostringstream csv;
        csv << "metric,value\n";
        std::istringstream in(lines.str());
        std::string metric, value, sd;
        while (in >> metric >> value) {
            csv << metric << ',' << value << '\n';
            if (metric == "arl0" || metric == "arl1") {
                in >> sd;  // "(sd)"
                csv << "sd" << metric.substr(1) << ',' << sd.substr(1, sd.size() - 2) << '\n';
            }
        }
        io::write_text(o.output, csv.str());
    }
    return 0;
}

// ----------------------------------------------------------------------
// benchmark

struct BenchmarkOpts {
    std::vector<std::string> scenarios;
    std::string output;
    Index seeds = 100;
    Index T0 = 100;
    Index null_length = 2000;
    std::string margins;
    std::string grid;
    std::vector<double> lambdas = {0.05, 0.10};
    std::vector<double> limits = {1.5, 2.5, 3.5, 4.5, 5.5};
    unsigned jobs = 1;
};

struct PreparedRun {
    Index tau = 0;  // 0 for null runs
    Index T = 0;
    ErrorSeries series;   // for the detector scan
    RealVector raw;       // for the baseline scan
    bool failed = false;  // selection failed; run skipped with a warning
};

// Per-config aggregation over every prepared run of a stream set.
struct AggRow {
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    bool has_arl1 = false;
    RunLength a1;
    bool has_arl0 = false;
    RunLength a0;
};

template <typename DetectFn>
AggRow aggregate_runs(const std::vector<PreparedRun>& runs, const MarginSpec& margins, Index T0,
                      DetectFn&& detect) {
    Index tp = 0, det = 0, truths = 0;
    std::vector<Arl1Run> change_runs;
    std::vector<Index> null_lengths;
    for (const PreparedRun& run : runs) {
        if (run.failed) continue;
        const std::optional<Index> hit = detect(run);
        if (run.tau > 0) {
            ++truths;
            if (hit) {
                ++det;
                if (*hit >= run.tau - margins.mu_l && *hit <= run.tau + margins.mu_r) ++tp;
            }
            change_runs.push_back({run.tau, hit.has_value(), hit.value_or(0)});
        } else {
            null_lengths.push_back(hit ? *hit - T0 : run.T - T0);
        }
    }

    AggRow row;
    if (truths > 0) {
        row.recall = static_cast<double>(tp) / static_cast<double>(truths);
        row.precision =
            det == 0 ? 0.0 : std::min(1.0, static_cast<double>(tp) / static_cast<double>(det));
        const double pr = row.precision + row.recall;
        row.f1 = pr > 0.0 ? 2.0 * row.precision * row.recall / pr : 0.0;
        bool any_valid = false;
        for (const Arl1Run& r : change_runs) any_valid = any_valid || (r.detected && r.t_detect >= r.tau);
        if (any_valid) {
            row.a1 = arl1(change_runs);
            row.has_arl1 = true;
        }
    }
    if (!null_lengths.empty()) {
        row.a0 = arl0(null_lengths);
        row.has_arl0 = true;
    }
    return row;
}

void run_parallel(Index count, unsigned jobs, const std::function<void(Index)>& work) {
    if (jobs <= 1 || count < 2) {
        for (Index i = 0; i < count; ++i) work(i);
        return;
    }
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(n);
    std::exception_ptr first_error;
    std::mutex mu;
    for (unsigned k = 0; k < n; ++k)
        pool.emplace_back([&, k] {
            for (Index i = k; i < count; i += n) {
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

int cmd_benchmark(const BenchmarkOpts& o) {
    const MarginSpec margins = parse_margins(o.margins);
    const GridSpec gs = parse_grid(o.grid);
    const std::uint64_t base = env_base_seed();

    std::vector<ChangeScenario> change_scenarios;
    for (const auto& sc : scenario_catalog(o.null_length)) {
        const bool is_null = sc.name.rfind("null/", 0) == 0;
        if (is_null) continue;
        if (o.scenarios.empty()) {
            change_scenarios.push_back(sc);
        } else {
            for (const auto& want : o.scenarios)
                if (sc.name == want || sc.name.rfind(want + "/", 0) == 0)
                    change_scenarios.push_back(sc);
        }
    }
    if (change_scenarios.empty()) throw UnknownScenario("benchmark: no scenario matched");

    std::vector<ChangeScenario> null_scenarios;
    for (const auto& sc : scenario_catalog(o.null_length))
        if (sc.name.rfind("null/", 0) == 0) null_scenarios.push_back(sc);
    const Index null_seeds = std::min<Index>(o.seeds, 10);

    // The error series of a stream does not depend on lambda or L, so each
    // stream is embedded once and every config scans the shared series.
    std::vector<PreparedRun> runs(
        change_scenarios.size() * static_cast<std::size_t>(o.seeds) +
        null_scenarios.size() * static_cast<std::size_t>(null_seeds));
    std::vector<std::string> warnings;
    std::mutex warn_mu;

    auto prepare = [&](Index flat) {
        const std::size_t idx = static_cast<std::size_t>(flat);
        const std::size_t n_change = change_scenarios.size() * static_cast<std::size_t>(o.seeds);
        const ChangeScenario& sc =
            idx < n_change ? change_scenarios[idx / static_cast<std::size_t>(o.seeds)]
                           : null_scenarios[(idx - n_change) / static_cast<std::size_t>(null_seeds)];
        const std::uint64_t seed =
            base + (idx < n_change ? idx % static_cast<std::size_t>(o.seeds)
                                   : (idx - n_change) % static_cast<std::size_t>(null_seeds));
        PreparedRun& run = runs[idx];
        run.tau = sc.tau > 1 ? sc.tau : 0;
        run.T = sc.T;
        const RealMatrix x = generate(sc, seed);
        run.raw = x.row(0).transpose();
        try {
            const SelectionResult sel = select_hyperparams(x.leftCols(o.T0), gs, 1);
            run.series = error_series(x, sel.best.w, sel.best.d, sel.best.r);
        } catch (const Error& e) {
            run.failed = true;
            std::lock_guard<std::mutex> lock(warn_mu);
            warnings.push_back(sc.name + " seed " + std::to_string(seed) + ": " + e.what());
        }
    };
    run_parallel(static_cast<Index>(runs.size()), o.jobs, prepare);

    std::ostringstream csv;
    csv << "algorithm,params,precision,recall,f1,arl1,sdrl1,arl0,sdrl0\n";
    auto emit = [&csv](const std::string& algo, const std::string& tag, const AggRow& row) {
        csv << algo << ',' << tag << ',' << fmt("%.3f", row.precision) << ','
            << fmt("%.3f", row.recall) << ',' << fmt("%.3f", row.f1) << ',';
        if (row.has_arl1) csv << fmt("%.2f", row.a1.mean) << ',' << fmt("%.2f", row.a1.sd);
        else csv << ',';
        csv << ',';
        if (row.has_arl0) csv << fmt("%.2f", row.a0.mean) << ',' << fmt("%.2f", row.a0.sd);
        else csv << ',';
        csv << '\n';
    };

    int exit_code = 0;
    try {
        for (double lambda : o.lambdas)
            for (double L : o.limits) {
                std::ostringstream tag;
                tag << "T0=" << o.T0 << " lambda=" << io::format_double(lambda)
                    << " L=" << io::format_double(L);
                const AggRow dmd_row = aggregate_runs(
                    runs, margins, o.T0, [&](const PreparedRun& run) -> std::optional<Index> {
                        const DetectionResult det = ewma_scan(run.series, o.T0, lambda, L);
                        if (det.detected) return det.t_detect;
                        return std::nullopt;
                    });
                emit("cpdmd", tag.str(), dmd_row);

                EwmaBaselineParams bp{o.T0, lambda, L};
                const AggRow base_row = aggregate_runs(
                    runs, margins, o.T0, [&](const PreparedRun& run) -> std::optional<Index> {
                        const BaselineResult det = ewma_detect(run.raw, bp);
                        if (det.detected) return det.t_detect;
                        return std::nullopt;
                    });
                emit("ewma", tag.str(), base_row);
            }
    } catch (...) {
        // flush partial results before the error propagates
        if (!o.output.empty()) io::write_text(o.output, csv.str());
        throw;
    }

    if (o.output.empty()) std::cout << csv.str();
    else io::write_text(o.output, csv.str());
    for (const auto& wmsg : warnings) std::cerr << "warning: " << wmsg << '\n';
    return exit_code;
}

// ----------------------------------------------------------------------
// theory_check

struct TheoryOpts {
    std::string output = "theory";
    Index windows = 120;
    Index w = 40;
    Index d = 10;
};

int cmd_theory_check(const TheoryOpts& o) {
    const std::uint64_t seed = env_base_seed() + 7;
    ChangeScenario sine;
    sine.name = "noisy-sine";
    sine.pre = SignalParams{{6.0 * 3.14159265358979323846 / 75.0}, {1.0}, 0.0, 0.0, 0.01};
    sine.post = sine.pre;
    sine.tau = 1;
    sine.T = o.w + o.windows + 1;
    const RealMatrix x = generate(sine, seed);

    std::ostringstream bounds;
    bounds << "t,e_norm,cond_phi,eig_gap,max_drift,bound_ok\n";
    Index violations = 0, skipped = 0, checked = 0;
    double worst_ratio = 0.0;
    for (Index t = o.w; t < o.w + o.windows; ++t) {
        try {
            const PerturbationRecord rec = check_bauer_fike(x, t, o.w, o.d);
            ++checked;
            if (!rec.bound_ok) ++violations;
            worst_ratio = std::max(worst_ratio, eigenvector_ratio(x, t, o.w, o.d));
            bounds << rec.t << ',' << io::format_double(rec.e_norm) << ','
                   << io::format_double(rec.cond_phi) << ',' << io::format_double(rec.eig_gap)
                   << ',' << io::format_double(rec.max_eig_drift) << ',' << (rec.bound_ok ? 1 : 0)
                   << '\n';
        } catch (const NonDiagonalisable&) {
            ++skipped;
        }
    }
    io::write_text(o.output + "_bounds.csv", bounds.str());

    const std::vector<ComplexityRow> rows =
        complexity_bench({1, 2}, {20, 40, 60, 80, 100}, {5, 10, 25});
    std::ostringstream comp;
    comp << "p,w,d,seconds_per_step,theoretical_cost\n";
    std::vector<double> secs, costs;
    for (const ComplexityRow& row : rows) {
        comp << row.p << ',' << row.w << ',' << row.d << ','
             << io::format_double(row.seconds_per_step) << ',' << fmt("%.1f", row.theoretical_cost)
             << '\n';
        secs.push_back(row.seconds_per_step);
        costs.push_back(row.theoretical_cost);
    }
    io::write_text(o.output + "_complexity.csv", comp.str());

    std::cout << "bauer_fike windows=" << checked << " violations=" << violations
              << " skipped=" << skipped << '\n';
    std::cout << "eigenvector_ratio_max " << fmt("%.4f", worst_ratio) << '\n';
    std::cout << "complexity_rank_correlation " << fmt("%.4f", rank_correlation(secs, costs))
              << '\n';
    return violations > 0 ? kExitNumerical : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Streaming changepoint detection via windowed dynamic mode decomposition"};
    app.require_subcommand(1);

    DetectOpts det;
    CLI::App* cdet = app.add_subcommand("detect", "Detect changepoints in a CSV stream");
    cdet->add_option("--input", det.input, "input CSV (header + one observation per row)")
        ->required();
    cdet->add_option("--output", det.output, "report JSON path (stdout if omitted)");
    cdet->add_option("--burn-in", det.T0, "burn-in length T0");
    cdet->add_option("--lambda", det.lambda, "EWMA weight");
    cdet->add_option("--limit", det.L, "control-limit width L");
    cdet->add_option("--grid", det.grid, "W_FRACS:D_FRACS:RANK_MULT hyperparameter grid");
    cdet->add_option("--jobs", det.jobs, "worker threads for selection");
    cdet->add_option("--format", det.format, "json | csv (csv adds a monitor trace file)")
        ->check(CLI::IsMember({"json", "csv"}));

    SimulateOpts sim;
    CLI::App* csim = app.add_subcommand("simulate", "Generate synthetic scenario streams");
    csim->add_option("--scenario", sim.scenario, "catalog scenario name, e.g. mean/3")->required();
    csim->add_option("--output", sim.output, "output path prefix (default: sanitized name)");
    csim->add_option("--seeds", sim.seeds, "number of seeded streams")->check(CLI::PositiveNumber);
    csim->add_option("--length", sim.length, "length of null (no-change) streams");
    csim->add_flag("--null", sim.null_variant, "use the scenario type's no-change variant");

    EvaluateOpts ev;
    CLI::App* cev = app.add_subcommand("evaluate", "Score detection reports against a manifest");
    cev->add_option("manifest", ev.manifest, "truth manifest JSON from simulate")->required();
    cev->add_option("reports", ev.reports, "detection report JSON(s)")->required();
    cev->add_option("--margins", ev.margins, "LEFT,RIGHT acceptance margins (default 0,30)");
    cev->add_option("--burn-in", ev.T0, "burn-in length used in the runs");
    cev->add_option("--output", ev.output, "also write metrics CSV here");

    BenchmarkOpts bm;
    CLI::App* cbm = app.add_subcommand("benchmark", "Sweep the detector grid over the catalog");
    cbm->add_option("--scenario", bm.scenarios,
                    "scenario names or type prefixes (default: all change scenarios)");
    cbm->add_option("--output", bm.output, "results CSV path (stdout if omitted)");
    cbm->add_option("--seeds", bm.seeds, "seeded streams per scenario (null runs capped at 10)")
        ->check(CLI::PositiveNumber);
    cbm->add_option("--burn-in", bm.T0, "burn-in length T0");
    cbm->add_option("--length", bm.null_length, "length of the no-change ARL0 streams");
    cbm->add_option("--margins", bm.margins, "LEFT,RIGHT acceptance margins (default 0,30)");
    cbm->add_option("--grid", bm.grid, "hyperparameter grid override");
    cbm->add_option("--lambda", bm.lambdas, "EWMA weights to sweep");
    cbm->add_option("--limit", bm.limits, "control-limit widths to sweep");
    cbm->add_option("--jobs", bm.jobs, "worker threads for stream preparation");

    TheoryOpts th;
    CLI::App* cth = app.add_subcommand(
        "theory_check", "Verify spectral-drift bounds and cost scaling empirically");
    cth->add_option("--output", th.output, "output CSV prefix (default: theory)");

    std::vector<std::string> argv_store;
    argv_store.push_back("cpdmd");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_store.size());
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (cdet->parsed()) return cmd_detect(det);
        if (csim->parsed()) return cmd_simulate(sim);
        if (cev->parsed()) return cmd_evaluate(ev);
        if (cbm->parsed()) return cmd_benchmark(bm);
        if (cth->parsed()) return cmd_theory_check(th);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    } catch (const ParseError& e) {
        machine_error("parse", e.what());
        return kExitData;
    } catch (const UnknownScenario& e) {
        machine_error("unknown-scenario", e.what());
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        machine_error("json", e.what());
        return kExitData;
    } catch (const Error& e) {
        machine_error("numerical", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        machine_error("internal", e.what());
        return kExitNumerical;
    }
}

}  // namespace cpdmd
