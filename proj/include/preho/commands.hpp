#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "preho/baselines.hpp"
#include "preho/oracle.hpp"
#include "preho/planner.hpp"
#include "preho/protosim.hpp"

namespace preho {

inline constexpr const char* kVersion = "0.1.0";

// Everything derived from a scenario before any algorithm runs.
struct Pipeline {
    Scenario scenario;
    SatelliteTable sats;
    Problem problem;

    static Pipeline build(const Scenario& scenario);
};

enum class Algorithm { preho, lss, lst, greedy };
inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::preho, Algorithm::lss, Algorithm::lst, Algorithm::greedy};
std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct AlgorithmRun {
    Algorithm algorithm = Algorithm::preho;
    AssociationPlan plan;
    PlanObjective objective;
    std::vector<double> trace;  // empty for baselines
    double seconds = 0.0;
};

AlgorithmRun run_algorithm(const Pipeline& pipeline, Algorithm algorithm, int passes = 1);

nlohmann::json objective_json(const AlgorithmRun& run);
nlohmann::json latency_summary_json(const LatencyDistribution& dist);

/// Applies --seed-override: new channel seed, and UEs re-synthesized when
/// they came from a bounding box.
void apply_seed_override(Scenario& scenario, std::uint64_t seed);

/// Writes via a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

struct PlanCommand {
    std::filesystem::path scenario;
    std::vector<Algorithm> algorithms{Algorithm::preho};
    std::filesystem::path out_dir;
    int passes = 1;
    std::optional<std::uint64_t> seed_override;
    std::vector<Mechanism> mechanisms;  // latency summaries of the preho plan go into report.json
};

struct LatencyCommand {
    std::filesystem::path scenario;
    std::optional<std::filesystem::path> plan;  // planned with preho when absent
    std::vector<Mechanism> mechanisms{std::begin(kAllMechanisms), std::end(kAllMechanisms)};
    std::filesystem::path out_dir;
    int passes = 1;
    std::optional<std::uint64_t> seed_override;
};

struct SweepCommand {
    std::filesystem::path scenario;
    std::vector<int> n_values;
    std::vector<Algorithm> algorithms{Algorithm::preho};
    std::filesystem::path out_dir;
    int passes = 1;
    std::optional<std::uint64_t> seed_override;
};

struct OracleCommand {
    std::filesystem::path scenario;
    std::filesystem::path out_dir;  // optional; report written when set
    std::optional<std::uint64_t> seed_override;
    UeOptimizer optimizer;          // test hook
};

// Each returns the process exit status: 0 ok, 2 parse/validation,
// 3 infeasible, 4 certificate failure, 1 anything else. Failures also
// write error.json into out_dir (when given) and a message to stderr.
int cmd_plan(const PlanCommand& cmd);
int cmd_latency(const LatencyCommand& cmd);
int cmd_sweep(const SweepCommand& cmd);
int cmd_oracle_check(const OracleCommand& cmd);

/// Command-line entry point.
int cli_main(int argc, char** argv);

}  // namespace preho
