// Command-line front end: ABEP sweeps, QR experiments and codec passthrough.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "irsqr/experiment.hpp"
#include "irsqr/pbm.hpp"

namespace {

using namespace irsqr;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// "a:b:step" ranges or "v1,v2,..." lists
std::vector<double> parse_sweep(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream ss(text);
        if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw CLI::ValidationError("sweep", "expected a:b:step with step > 0");
        for (double v = a; v <= b + 1e-9 * std::abs(step); v += step) out.push_back(v);
    } else {
        std::istringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw CLI::ValidationError("sweep", "no values");
    return out;
}

EcLevel ec_from_string(const std::string& s) {
    if (s == "L") return EcLevel::L;
    if (s == "M") return EcLevel::M;
    if (s == "Q") return EcLevel::Q;
    if (s == "H") return EcLevel::H;
    throw CLI::ValidationError("--ec", "must be one of L, M, Q, H");
}

struct CommonFlags {
    std::string config_path;
    std::string scenario;
    int elements = 0, ntx = 0, nrx = 0;
    std::vector<int> mods;
    double kappa = 0.0;
    std::string snr_db;
    std::string ntx_sweep, kappa_sweep;
    int trials = 0;
    uint64_t min_bits = 0;
    uint64_t seed = 0;
    int threads = 0;
    std::string noise_mode;
    double temperature_k = 0.0, bandwidth_hz = 0.0, tx_power_dbm = 0.0;
    double tx_distance_m = 0.0, rx_distance_m = 0.0;
    std::string out, format;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
    cmd->add_option("--scenario", f.scenario, "sweep scenario");
    cmd->add_option("--elements", f.elements, "IRS element count L");
    cmd->add_option("--ntx", f.ntx, "transmit antennas");
    cmd->add_option("--nrx", f.nrx, "receive antennas");
    cmd->add_option("--mod", f.mods, "PSK orders (2 4 8 16 ...)")->delimiter(',');
    cmd->add_option("--kappa", f.kappa, "Rician factor");
    cmd->add_option("--snr-db", f.snr_db, "average SNR sweep, a:b:step or list (or one value)");
    cmd->add_option("--ntx-sweep", f.ntx_sweep, "TX-count sweep, a:b:step or list");
    cmd->add_option("--kappa-sweep", f.kappa_sweep, "Rician-factor sweep, a:b:step or list");
    cmd->add_option("--trials", f.trials, "channel realizations per point");
    cmd->add_option("--min-bits", f.min_bits, "minimum bits per ABEP point");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--threads", f.threads, "worker threads (IRSQR_THREADS caps this)");
    cmd->add_option("--noise", f.noise_mode, "noise model: target_snr or physical");
    cmd->add_option("--temperature-k", f.temperature_k, "noise temperature (physical mode)");
    cmd->add_option("--bandwidth-hz", f.bandwidth_hz, "noise bandwidth (physical mode)");
    cmd->add_option("--tx-power-dbm", f.tx_power_dbm, "transmit power (physical mode)");
    cmd->add_option("--tx-distance-m", f.tx_distance_m, "TX-to-surface distance");
    cmd->add_option("--rx-distance-m", f.rx_distance_m, "surface-to-RX distance");
    cmd->add_option("--out", f.out, "results file (stdout when omitted)");
    cmd->add_option("--format", f.format, "csv or jsonl");
}

void apply_common_flags(const CLI::App* cmd, const CommonFlags& f, SweepConfig& cfg) {
    if (cmd->count("--scenario")) cfg.scenario = scenario_from_string(f.scenario);
    if (cmd->count("--elements")) cfg.dims.elements = f.elements;
    if (cmd->count("--ntx")) cfg.dims.ntx = f.ntx;
    if (cmd->count("--nrx")) cfg.dims.nrx = f.nrx;
    if (cmd->count("--mod")) cfg.modulations = f.mods;
    if (cmd->count("--kappa")) cfg.kappa = f.kappa;
    if (cmd->count("--snr-db")) {
        const auto v = parse_sweep(f.snr_db);
        if (v.size() == 1) cfg.gamma_db = v[0];
        cfg.snr_sweep_db = v;
    }
    if (cmd->count("--ntx-sweep")) {
        cfg.ntx_sweep.clear();
        for (double v : parse_sweep(f.ntx_sweep)) cfg.ntx_sweep.push_back(static_cast<int>(v));
    }
    if (cmd->count("--kappa-sweep")) cfg.kappa_sweep = parse_sweep(f.kappa_sweep);
    if (cmd->count("--trials")) cfg.trials = f.trials;
    if (cmd->count("--min-bits")) cfg.min_bits = f.min_bits;
    if (cmd->count("--seed")) cfg.seed = f.seed;
    if (cmd->count("--threads")) cfg.threads = f.threads;
    if (cmd->count("--noise")) {
        if (f.noise_mode == "physical") cfg.noise_mode = NoiseModel::Mode::physical;
        else if (f.noise_mode == "target_snr") cfg.noise_mode = NoiseModel::Mode::target_snr;
        else throw CLI::ValidationError("--noise", "must be target_snr or physical");
    }
    if (cmd->count("--temperature-k")) cfg.temperature_k = f.temperature_k;
    if (cmd->count("--bandwidth-hz")) cfg.bandwidth_hz = f.bandwidth_hz;
    if (cmd->count("--tx-power-dbm")) cfg.tx_power_dbm = f.tx_power_dbm;
    if (cmd->count("--tx-distance-m")) cfg.distances.tx_distance_m = f.tx_distance_m;
    if (cmd->count("--rx-distance-m")) cfg.distances.rx_distance_m = f.rx_distance_m;
    if (cmd->count("--out")) cfg.out_path = f.out;
    if (cmd->count("--format")) cfg.format = f.format;
}

SweepConfig base_config(const CommonFlags& f, Scenario fallback) {
    SweepConfig cfg;
    if (!f.config_path.empty()) cfg = sweep_config_from_json(slurp(f.config_path));
    else cfg.scenario = fallback;
    return cfg;
}

void write_results(const SweepConfig& cfg, const std::vector<ResultRow>& rows) {
    if (cfg.out_path.empty()) {
        emit_results(rows, cfg.format, std::cout);
    } else {
        emit_results_file(rows, cfg.format, cfg.out_path);
        std::cerr << rows.size() << " rows -> " << cfg.out_path << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator for surface-displayed microwave QR codes"};
    app.require_subcommand(1);

    CommonFlags abep_flags, qr_flags;

    CLI::App* abep = app.add_subcommand("abep", "Monte-Carlo ABEP sweeps with theory overlay");
    add_common_flags(abep, abep_flags);

    CLI::App* qr = app.add_subcommand("qr", "QR recovery/recognition experiments");
    add_common_flags(qr, qr_flags);
    int qr_version = 0, qr_mask = -2, qr_border = -1, qr_obstruction = -1;
    int qr_groups = 0, qr_blocks = -1;
    std::string qr_ec, qr_payload, qr_obstruction_sweep, qr_bitmap_dir;
    qr->add_option("--version", qr_version, "QR version 1-6");
    qr->add_option("--ec", qr_ec, "error correction level L|M|Q|H");
    qr->add_option("--mask", qr_mask, "data mask 0-7 or -1 for auto");
    qr->add_option("--border", qr_border, "light padding on the bottom/right, in modules");
    qr->add_option("--payload", qr_payload, "payload text");
    qr->add_option("--obstruction", qr_obstruction_sweep,
                   "obstruction side sweep, a:b:step or list");
    qr->add_option("--d", qr_obstruction, "fixed obstruction side (qr_snr scenario)");
    qr->add_option("--groups", qr_groups, "independent frequency-group sub-runs");
    qr->add_option("--block-count", qr_blocks, "share one symbol per block (0 = auto)");
    qr->add_option("--bitmap-dir", qr_bitmap_dir, "where sample PBM pairs are written");

    CLI::App* enc = app.add_subcommand("encode", "encode a payload into a PBM module grid");
    std::string enc_payload, enc_payload_file, enc_out;
    int enc_version = 1, enc_mask = -1, enc_border = 0;
    std::string enc_ec = "M";
    enc->add_option("--payload", enc_payload, "payload text");
    enc->add_option("--payload-file", enc_payload_file, "read payload bytes from a file");
    enc->add_option("--version", enc_version, "QR version 1-6");
    enc->add_option("--ec", enc_ec, "error correction level L|M|Q|H");
    enc->add_option("--mask", enc_mask, "data mask 0-7 or -1 for auto");
    enc->add_option("--border", enc_border, "light padding on the bottom/right");
    enc->add_option("--out", enc_out, "output PBM path (stdout when omitted)");

    CLI::App* dec = app.add_subcommand("decode", "decode a PBM module grid");
    std::string dec_in, dec_out;
    int dec_border = 0;
    dec->add_option("input", dec_in, "PBM file")->required();
    dec->add_option("--border", dec_border, "padding to strip");
    dec->add_option("--out", dec_out, "write payload bytes here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (abep->parsed()) {
            SweepConfig cfg = base_config(abep_flags, Scenario::abep_snr);
            apply_common_flags(abep, abep_flags, cfg);
            write_results(cfg, run_abep_sweep(cfg));
        } else if (qr->parsed()) {
            SweepConfig cfg = base_config(qr_flags, Scenario::qr_snr);
            apply_common_flags(qr, qr_flags, cfg);
            if (qr->count("--version")) cfg.qr.version = qr_version;
            if (qr->count("--ec")) cfg.qr.ec = ec_from_string(qr_ec);
            if (qr->count("--mask")) cfg.qr.mask = qr_mask;
            if (qr->count("--border")) cfg.qr.border = qr_border;
            if (qr->count("--payload")) cfg.payload = qr_payload;
            if (qr->count("--obstruction")) {
                cfg.obstruction_sweep.clear();
                for (double v : parse_sweep(qr_obstruction_sweep))
                    cfg.obstruction_sweep.push_back(static_cast<int>(v));
            }
            if (qr->count("--d")) cfg.obstruction = qr_obstruction;
            if (qr->count("--groups")) cfg.groups = qr_groups;
            if (qr->count("--block-count")) cfg.block_count = qr_blocks;
            if (qr->count("--bitmap-dir")) cfg.bitmap_dir = qr_bitmap_dir;
            write_results(cfg, run_qr_experiment(cfg));
        } else if (enc->parsed()) {
            std::vector<uint8_t> payload;
            if (!enc_payload_file.empty()) {
                const std::string raw = slurp(enc_payload_file);
                payload.assign(raw.begin(), raw.end());
            } else {
                payload.assign(enc_payload.begin(), enc_payload.end());
            }
            const QrSpec spec{.version = enc_version, .ec = ec_from_string(enc_ec),
                              .mask = enc_mask, .border = enc_border};
            const ModuleMatrix m = qr_encode(payload, spec);
            if (enc_out.empty()) write_pbm(m, std::cout);
            else write_pbm_file(m, enc_out);
        } else if (dec->parsed()) {
            const ModuleMatrix m = read_pbm_file(dec_in);
            const auto payload = qr_decode(m, dec_border);
            if (!payload) {
                std::cerr << "decode failed: symbol is not recognizable\n";
                return 1;
            }
            if (dec_out.empty()) {
                std::cout.write(reinterpret_cast<const char*>(payload->data()),
                                static_cast<std::streamsize>(payload->size()));
            } else {
                std::ofstream f(dec_out, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + dec_out);
                f.write(reinterpret_cast<const char*>(payload->data()),
                        static_cast<std::streamsize>(payload->size()));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
