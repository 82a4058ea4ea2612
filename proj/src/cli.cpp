#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "preho/commands.hpp"
#include "preho/errors.hpp"

namespace preho {

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) out.push_back(part);
    }
    return out;
}

std::vector<Algorithm> algorithms_from(const std::vector<std::string>& names) {
    std::vector<Algorithm> out;
    for (const auto& n : split_list(names)) {
        if (n == "all") {
            out.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
            return out;
        }
        out.push_back(parse_algorithm(n));
    }
    return out;
}

std::vector<Mechanism> mechanisms_from(const std::vector<std::string>& names) {
    std::vector<Mechanism> out;
    for (const auto& n : split_list(names)) {
        if (n == "all") {
            out.assign(std::begin(kAllMechanisms), std::end(kAllMechanisms));
            return out;
        }
        out.push_back(parse_mechanism(n));
    }
    return out;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"LEO handover planning and latency simulation"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string scenario, out = ".", plan_path;
    std::vector<std::string> algorithms{"preho"}, mechanisms;
    std::vector<int> n_values;
    int passes = 1;
    std::optional<std::uint64_t> seed;

    auto common = [&](CLI::App* sub, bool with_out = true) {
        sub->add_option("--scenario", scenario, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
        if (with_out) sub->add_option("--out", out, "Output directory");
        sub->add_option("--seed-override", seed, "Replace the channel seed and re-synthesize UEs");
    };

    auto* plan_cmd = app.add_subcommand("plan", "Compute association plans");
    common(plan_cmd);
    plan_cmd->add_option("--algorithm", algorithms, "preho|lss|lst|greedy|all (comma list allowed)");
    plan_cmd->add_option("--passes", passes, "Alternating-optimization sweeps")->check(CLI::NonNegativeNumber);
    plan_cmd->add_option("--mechanisms", mechanisms, "Latency summaries for the preho plan in report.json");

    auto* lat_cmd = app.add_subcommand("latency", "Handover latency distributions");
    common(lat_cmd);
    lat_cmd->add_option("--plan", plan_path, "Plan CSV (default: plan with preho)");
    lat_cmd->add_option("--mechanisms", mechanisms, "bho|bho_gs|bho_a|preho|all");
    lat_cmd->add_option("--passes", passes)->check(CLI::NonNegativeNumber);

    auto* sweep_cmd = app.add_subcommand("sweep", "Rerun planning across UE counts");
    common(sweep_cmd);
    sweep_cmd->add_option("--n-values", n_values, "UE counts")->required()->delimiter(',');
    sweep_cmd->add_option("--algorithm", algorithms);
    sweep_cmd->add_option("--passes", passes)->check(CLI::NonNegativeNumber);

    auto* oracle_cmd = app.add_subcommand("oracle-check", "Certify planner and allocators by brute force");
    common(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (plan_cmd->parsed()) {
            PlanCommand c{scenario, algorithms_from(algorithms), out, passes, seed, mechanisms_from(mechanisms)};
            return cmd_plan(c);
        }
        if (lat_cmd->parsed()) {
            LatencyCommand c;
            c.scenario = scenario;
            if (!plan_path.empty()) c.plan = plan_path;
            if (!mechanisms.empty()) c.mechanisms = mechanisms_from(mechanisms);
            c.out_dir = out;
            c.passes = passes;
            c.seed_override = seed;
            return cmd_latency(c);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep({scenario, n_values, algorithms_from(algorithms), out, passes, seed});
        }
        if (oracle_cmd->parsed()) {
            OracleCommand c;
            c.scenario = scenario;
            if (oracle_cmd->get_option("--out")->count() > 0) c.out_dir = out;
            c.seed_override = seed;
            return cmd_oracle_check(c);
        }
    } catch (const ValidationError& e) {
        std::cerr << nlohmann::json{{"error", "validation"}, {"field", e.field()}, {"message", e.what()}, {"exit_code", 2}}.dump()
                  << '\n';
        return 2;
    }
    return 1;
}

}  // namespace preho
