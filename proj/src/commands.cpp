#include "preho/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "preho/errors.hpp"

namespace preho {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int log_level() {
    static const int level = [] {
        const char* v = std::getenv("PREHO_LOG");
        if (!v) return 1;
        const std::string s(v);
        if (s == "quiet" || s == "0") return 0;
        if (s == "debug" || s == "2") return 2;
        return 1;
    }();
    return level;
}

void log(int level, const std::string& msg) {
    if (level <= log_level()) std::cerr << "[preho] " << msg << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Scenario load_with_override(const fs::path& path, const std::optional<std::uint64_t>& seed) {
    Scenario s = load_scenario(path);
    if (seed) apply_seed_override(s, *seed);
    return s;
}

int exit_code_for(const Error& e) {
    const std::string kind = e.kind();
    if (kind == "parse" || kind == "validation") return 2;
    if (kind == "infeasible") return 3;
    if (kind == "certificate") return 4;
    return 1;
}

template <class F>
int guarded(const fs::path& out_dir, F&& body) {
    json err;
    int code = 0;
    try {
        return body();
    } catch (const Error& e) {
        code = exit_code_for(e);
        err = {{"error", e.kind()}, {"message", e.what()}};
        if (auto* v = dynamic_cast<const ValidationError*>(&e)) err["field"] = v->field();
        if (auto* v = dynamic_cast<const InfeasibleError*>(&e)) err["ue"] = v->ue(), err["slot"] = v->slot();
    } catch (const std::exception& e) {
        code = 1;
        err = {{"error", "internal"}, {"message", e.what()}};
    }
    err["exit_code"] = code;
    std::cerr << err.dump() << '\n';
    if (!out_dir.empty()) {
        try {
            fs::create_directories(out_dir);
            write_file_atomic(out_dir / "error.json", err.dump(2) + "\n");
        } catch (const std::exception&) {
            // stderr already carries the error
        }
    }
    return code;
}

std::string plan_csv(const AssociationPlan& plan) {
    std::ostringstream ss;
    write_plan_csv(plan, ss);
    return ss.str();
}

}  // namespace

Pipeline Pipeline::build(const Scenario& scenario) {
    validate(scenario);
    Pipeline p;
    p.scenario = scenario;
    p.sats = propagate(scenario.constellation, scenario.time_grid);
    auto vis = build_visibility(scenario, p.sats);
    auto rates = compute_rates(scenario, p.sats, vis);
    p.problem = Problem::from(scenario, std::move(vis), std::move(rates));
    return p;
}

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::preho: return "preho";
        case Algorithm::lss: return "lss";
        case Algorithm::lst: return "lst";
        case Algorithm::greedy: return "greedy";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (auto a : kAllAlgorithms)
        if (to_string(a) == name) return a;
    throw ValidationError("algorithm", "unknown algorithm '" + std::string(name) + "'");
}

AlgorithmRun run_algorithm(const Pipeline& pipeline, Algorithm algorithm, int passes) {
    const auto t0 = std::chrono::steady_clock::now();
    AlgorithmRun run;
    run.algorithm = algorithm;
    const Problem& pr = pipeline.problem;
    switch (algorithm) {
        case Algorithm::preho: {
            auto r = plan(pr, initial_plan(pr), passes);
            run.plan = std::move(r.plan);
            run.objective = std::move(r.objective);
            run.trace = std::move(r.trace);
            break;
        }
        case Algorithm::lss: run.plan = run_lss(pr); break;
        case Algorithm::lst: run.plan = run_lst(pr); break;
        case Algorithm::greedy: run.plan = run_greedy(pr); break;
    }
    if (algorithm != Algorithm::preho) run.objective = evaluate_plan(pr, run.plan);
    run.seconds = seconds_since(t0);
    return run;
}

json objective_json(const AlgorithmRun& run) {
    return {{"algorithm", to_string(run.algorithm)},
            {"n_ho", run.objective.n_ho},
            {"u_ue", run.objective.u_ue},
            {"objective", run.objective.objective},
            {"trace", run.trace},
            {"per_ue_handovers", run.objective.per_ue_handovers},
            {"per_slot_utility", run.objective.per_slot_utility}};
}

json latency_summary_json(const LatencyDistribution& d) {
    return {{"mechanism", to_string(d.mechanism)},
            {"count", d.totals.size()},
            {"empty", d.empty},
            {"mean_ms", number_or_null(d.mean)},
            {"median_ms", number_or_null(d.quantile(0.5))},
            {"p95_ms", number_or_null(d.quantile(0.95))},
            {"mean_hit_ms", number_or_null(d.mean_hit())},
            {"mean_dst_ms", number_or_null(d.mean_dst())}};
}

void apply_seed_override(Scenario& s, std::uint64_t seed) {
    s.channel.seed = seed;
    if (s.ues.bbox) s.ues = synthesize_ues(static_cast<int>(s.ues.size()), *s.ues.bbox, seed, s.ues.alt_m);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

int cmd_plan(const PlanCommand& cmd) {
    return guarded(cmd.out_dir, [&] {
        if (cmd.passes < 0) throw ValidationError("passes", "must be >= 0");
        const Scenario s = load_with_override(cmd.scenario, cmd.seed_override);
        const auto pipeline = Pipeline::build(s);
        fs::create_directories(cmd.out_dir);

        json report = {{"version", kVersion}, {"scenario", s.name}, {"scenario_digest", scenario_digest(s)},
                       {"num_ues", s.num_ues()}, {"num_slots", s.num_slots()},
                       {"candidate_satellites", pipeline.problem.vis.candidate_satellites().size()}};
        json timings = json::object();
        const AlgorithmRun* preho_run = nullptr;
        std::vector<AlgorithmRun> runs;
        runs.reserve(cmd.algorithms.size());
        for (auto a : cmd.algorithms) {
            runs.push_back(run_algorithm(pipeline, a, cmd.passes));
            const auto& r = runs.back();
            const std::string name(to_string(a));
            log(1, name + ": n_ho=" + std::to_string(r.objective.n_ho) + " objective=" + std::to_string(r.objective.objective));
            write_file_atomic(cmd.out_dir / ("plan_" + name + ".csv"), plan_csv(r.plan));
            write_file_atomic(cmd.out_dir / ("objective_" + name + ".json"), objective_json(r).dump(2) + "\n");
            report["objectives"][name] = {{"n_ho", r.objective.n_ho},
                                          {"u_ue", r.objective.u_ue},
                                          {"objective", r.objective.objective}};
            timings[name] = r.seconds;
            if (a == Algorithm::preho) preho_run = &r;
        }
        if (!cmd.mechanisms.empty() && preho_run) {
            const auto ctx = LatencyContext::from(s, pipeline.sats);
            for (auto m : cmd.mechanisms)
                report["latency"][std::string(to_string(m))] = latency_summary_json(latency_cdf(preho_run->plan, m, ctx));
        }
        write_file_atomic(cmd.out_dir / "report.json", report.dump(2) + "\n");
        // Wall-clock numbers live apart from report.json so reruns stay byte-identical.
        write_file_atomic(cmd.out_dir / "timings.json", json{{"seconds", timings}}.dump(2) + "\n");
        return 0;
    });
}

int cmd_latency(const LatencyCommand& cmd) {
    return guarded(cmd.out_dir, [&] {
        const Scenario s = load_with_override(cmd.scenario, cmd.seed_override);
        const auto pipeline = Pipeline::build(s);
        AssociationPlan plan_used;
        if (cmd.plan) {
            std::ifstream in(*cmd.plan);
            if (!in) throw ParseError("cannot open plan " + cmd.plan->string());
            plan_used = read_plan_csv(in, s.num_ues(), s.num_slots());
            check_feasible(pipeline.problem, plan_used);
        } else {
            plan_used = run_algorithm(pipeline, Algorithm::preho, cmd.passes).plan;
        }
        fs::create_directories(cmd.out_dir);
        const auto ctx = LatencyContext::from(s, pipeline.sats);
        json summary = {{"version", kVersion}, {"scenario_digest", scenario_digest(s)},
                        {"handovers", plan_used.total_handovers()}, {"mechanisms", json::object()}};
        for (auto m : cmd.mechanisms) {
            const auto dist = latency_cdf(plan_used, m, ctx);
            const std::string name(to_string(m));
            std::ostringstream csv;
            write_latency_csv(dist, csv);
            write_file_atomic(cmd.out_dir / ("latency_" + name + ".csv"), csv.str());
            summary["mechanisms"][name] = latency_summary_json(dist);
            if (dist.empty) log(1, name + ": plan has no handovers; empty distribution");
        }
        write_file_atomic(cmd.out_dir / "latency_summary.json", summary.dump(2) + "\n");
        return 0;
    });
}

int cmd_sweep(const SweepCommand& cmd) {
    return guarded(cmd.out_dir, [&] {
        if (cmd.n_values.empty()) throw ValidationError("n_values", "must list at least one UE count");
        const Scenario base = load_with_override(cmd.scenario, cmd.seed_override);
        if (!base.ues.bbox) throw ValidationError("ues", "sweep needs a template with synthesized UEs (a bbox)");
        fs::create_directories(cmd.out_dir);
        std::ostringstream csv;
        csv << "n,algorithm,n_ho,u_ue,objective,seconds\n";
        csv.precision(17);
        for (int n : cmd.n_values) {
            if (n < 1) throw ValidationError("n_values", "UE counts must be >= 1");
            Scenario s = base;
            s.ues = synthesize_ues(n, *base.ues.bbox, base.ues.seed, base.ues.alt_m);
            const auto t0 = std::chrono::steady_clock::now();
            const auto pipeline = Pipeline::build(s);
            const double setup = seconds_since(t0);
            for (auto a : cmd.algorithms) {
                const auto r = run_algorithm(pipeline, a, cmd.passes);
                csv << n << ',' << to_string(a) << ',' << r.objective.n_ho << ',' << r.objective.u_ue << ','
                    << r.objective.objective << ',' << (r.seconds + setup) << '\n';
                log(2, "n=" + std::to_string(n) + " " + std::string(to_string(a)) + " done");
            }
        }
        write_file_atomic(cmd.out_dir / "sweep.csv", csv.str());
        return 0;
    });
}

int cmd_oracle_check(const OracleCommand& cmd) {
    return guarded(cmd.out_dir, [&] {
        const Scenario s = load_with_override(cmd.scenario, cmd.seed_override);
        const auto pipeline = Pipeline::build(s);
        OracleOptions opt;
        opt.optimizer = cmd.optimizer;
        const auto report = run_oracle_check(pipeline.problem, opt);
        json j = {{"passed", report.passed()}, {"ue_checks", report.ue_checks},
                  {"alloc_checks", report.alloc_checks}, {"failures", report.failures}};
        if (!cmd.out_dir.empty()) {
            fs::create_directories(cmd.out_dir);
            write_file_atomic(cmd.out_dir / "oracle_report.json", j.dump(2) + "\n");
        }
        if (!report.passed()) {
            std::string msg = std::to_string(report.failures.size()) + " certificate(s) failed; first: " +
                              report.failures.front();
            throw CertificateError(msg);
        }
        log(1, "oracle-check passed: " + std::to_string(report.ue_checks) + " UE and " +
                   std::to_string(report.alloc_checks) + " allocation certificates");
        return 0;
    });
}

}  // namespace preho
