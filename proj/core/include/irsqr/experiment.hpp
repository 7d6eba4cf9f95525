#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "irsqr/abep.hpp"
#include "irsqr/qr.hpp"

namespace irsqr {

enum class Scenario { abep_snr, abep_ntx, abep_kappa, qr_snr, qr_obstruction };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

/// Full description of one experiment run (one scenario, one sweep).
struct SweepConfig {
    Scenario scenario = Scenario::abep_snr;

    ChannelDims dims{64, 64, 64};
    std::vector<int> modulations{2};
    double kappa = 0.1;
    double gamma_db = 15.0;
    RicianParams distances{};  // kappa field overridden by `kappa`
    PathLossModel path_loss{};
    NoiseModel::Mode noise_mode = NoiseModel::Mode::target_snr;
    double temperature_k = 300.0;
    double bandwidth_hz = 1e6;
    double tx_power_dbm = 30.0;

    std::vector<double> snr_sweep_db{0, 5, 10, 15, 20};
    std::vector<int> ntx_sweep{8, 16, 32, 64, 128};
    std::vector<double> kappa_sweep{0.0, 0.1, 1.0, 10.0};
    std::vector<int> obstruction_sweep{0, 5, 10, 15, 20};
    int obstruction = 0;

    int trials = 0;                 // 0: scenario default (100 ABEP, 1e4 QR)
    uint64_t min_bits = 1'000'000;  // per ABEP sweep point
    uint64_t seed = 1;
    int threads = 0;

    // QR scenarios
    QrSpec qr{};
    std::string payload = "MW-QR";
    int groups = 1;       // independent frequency-group sub-runs
    int block_count = 0;  // 0: auto (N_r when N_r < L)

    std::string out_path;         // results file; empty = stdout only
    std::string bitmap_dir;       // where sample PBM pairs go; empty = next to out_path
    std::string format = "csv";   // csv | jsonl

    void validate() const;  // throws std::invalid_argument with the field name
};

struct ResultRow {
    std::string scenario;
    double x = 0.0;  // swept variable value
    int modulation = 0;
    std::string metric;  // abep_theory | abep_sim | stderr | recovery_prob | recognition_prob
    double value = 0.0;
    uint64_t trials = 0;
    uint64_t seed = 0;

    bool operator==(const ResultRow&) const = default;
};

/// Parses a JSON object mirroring SweepConfig; unknown keys are rejected.
SweepConfig sweep_config_from_json(const std::string& text);

std::vector<ResultRow> run_abep_sweep(const SweepConfig& cfg);

/// QR pipeline per trial: encode -> frames -> transmit (with obstruction) ->
/// detect -> reassemble -> decode. Emits recovery_prob (bit-exact module
/// grid) and recognition_prob (successful decode) per sweep point, plus one
/// original/recovered PBM pair per point from the first trial.
std::vector<ResultRow> run_qr_experiment(const SweepConfig& cfg);

void emit_results(std::span<const ResultRow> rows, const std::string& format, std::ostream& out);
void emit_results_file(std::span<const ResultRow> rows, const std::string& format,
                       const std::string& path);

}  // namespace irsqr
