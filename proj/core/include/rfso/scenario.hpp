#ifndef RFSO_SCENARIO_HPP
#define RFSO_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rfso/types.hpp"

namespace rfso::cli {

enum class EngineChoice { clt, clt_exactq, minkowski, montecarlo, all };
enum class PowerMode { peak, expected_energy };
enum class SweepVar { power, rate, budget };

std::string engine_choice_name(EngineChoice e);

/// Parsed and validated experiment description. Scenario files are strict
/// sectioned key=value text; unknown sections or keys are errors so a file
/// fully determines the run.
struct ScenarioFile {
    // [channel]
    GammaGammaParams channel{4.3939, 2.5636};
    RfChannelModel rf_model = RfChannelModel::make_rayleigh();

    // [link]
    int n_fso = 1;
    double rate = 0.0; // unused when the rate is swept
    int max_rounds = 1;

    // [power]
    PowerMode power_mode = PowerMode::peak;
    double power_value = 0.0; // unused when power or budget is swept
    double rf_split = 0.5;    // fraction of a round's total power on the RF link

    // [engine]
    EngineChoice engine = EngineChoice::clt;
    long long trials = 100000;
    std::uint64_t seed = 1;
    int batch_count = 32;
    int max_n = 5;
    int grid_resolution = 64; // optimal-search grid (alloc runs)

    // [output]
    std::string csv_path;
    SweepVar sweep = SweepVar::power;
    std::vector<double> grid;
};

/// Parse scenario text; `source_name` only labels error messages.
/// Throws config_error with line/field diagnostics.
ScenarioFile parse_scenario_text(const std::string& text, const std::string& source_name);

/// Parse a scenario file from disk.
ScenarioFile parse_scenario_file(const std::string& path);

} // namespace rfso::cli

#endif
