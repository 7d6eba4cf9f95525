#include "irsqr/experiment.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "irsqr/parallel.hpp"
#include "irsqr/pbm.hpp"

namespace irsqr {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

NoiseModel noise_model_for(const SweepConfig& cfg, double gamma_db) {
    NoiseModel n;
    n.mode = cfg.noise_mode;
    n.temperature_k = cfg.temperature_k;
    n.bandwidth_hz = cfg.bandwidth_hz;
    n.gamma_db = gamma_db;
    return n;
}

uint64_t default_trials(const SweepConfig& cfg) {
    if (cfg.trials > 0) return static_cast<uint64_t>(cfg.trials);
    const bool qr = cfg.scenario == Scenario::qr_snr || cfg.scenario == Scenario::qr_obstruction;
    return qr ? 10'000 : 100;
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::abep_snr: return "abep_snr";
        case Scenario::abep_ntx: return "abep_ntx";
        case Scenario::abep_kappa: return "abep_kappa";
        case Scenario::qr_snr: return "qr_snr";
        case Scenario::qr_obstruction: return "qr_obstruction";
    }
    throw std::invalid_argument("scenario: bad enum value");
}

Scenario scenario_from_string(const std::string& name) {
    if (name == "abep_snr") return Scenario::abep_snr;
    if (name == "abep_ntx") return Scenario::abep_ntx;
    if (name == "abep_kappa") return Scenario::abep_kappa;
    if (name == "qr_snr") return Scenario::qr_snr;
    if (name == "qr_obstruction") return Scenario::qr_obstruction;
    throw std::invalid_argument("scenario: unknown name '" + name + "'");
}

void SweepConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument("config." + field + ": " + why);
    };
    if (dims.elements < 1) fail("elements", "must be >= 1");
    if (dims.ntx < 1) fail("ntx", "must be >= 1");
    if (dims.nrx < 1) fail("nrx", "must be >= 1");
    if (modulations.empty()) fail("modulations", "must not be empty");
    for (int m : modulations)
        if (m < 2 || (m & (m - 1)) != 0) fail("modulations", "entries must be powers of 2, >= 2");
    if (kappa < 0) fail("kappa", "must be >= 0");
    if (trials < 0) fail("trials", "must be >= 0 (0 = scenario default)");
    if (groups < 1) fail("groups", "must be >= 1");
    if (block_count < 0) fail("block_count", "must be >= 0");
    if (groups > 1 && block_count > 0)
        fail("groups", "block reduction and frequency groups cannot be combined");
    if (format != "csv" && format != "jsonl") fail("format", "must be 'csv' or 'jsonl'");
    if (qr.version < 1 || qr.version > 6) fail("qr.version", "must be in [1, 6]");
    if (qr.border < 0) fail("qr.border", "must be >= 0");
    if (qr.mask < -1 || qr.mask > 7) fail("qr.mask", "must be -1 or in [0, 7]");

    auto check_sweep = [&](const auto& v, const std::string& field) {
        if (v.empty()) fail(field, "sweep must not be empty");
        for (size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) fail(field, "sweep must be strictly increasing");
    };
    switch (scenario) {
        case Scenario::abep_snr:
        case Scenario::qr_snr: check_sweep(snr_sweep_db, "snr_sweep_db"); break;
        case Scenario::abep_ntx: check_sweep(ntx_sweep, "ntx_sweep"); break;
        case Scenario::abep_kappa: check_sweep(kappa_sweep, "kappa_sweep"); break;
        case Scenario::qr_obstruction:
            check_sweep(obstruction_sweep, "obstruction_sweep");
            break;
    }
}

SweepConfig sweep_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");

    SweepConfig cfg;
    auto take = [&](const char* key) -> std::optional<nlohmann::json> {
        if (!j.contains(key)) return std::nullopt;
        nlohmann::json v = j.at(key);
        j.erase(key);
        return v;
    };

    try {
        if (auto v = take("scenario")) cfg.scenario = scenario_from_string(v->get<std::string>());
        if (auto v = take("elements")) cfg.dims.elements = v->get<int>();
        if (auto v = take("ntx")) cfg.dims.ntx = v->get<int>();
        if (auto v = take("nrx")) cfg.dims.nrx = v->get<int>();
        if (auto v = take("modulations")) cfg.modulations = v->get<std::vector<int>>();
        if (auto v = take("kappa")) cfg.kappa = v->get<double>();
        if (auto v = take("snr_db")) cfg.gamma_db = v->get<double>();
        if (auto v = take("snr_sweep_db")) cfg.snr_sweep_db = v->get<std::vector<double>>();
        if (auto v = take("ntx_sweep")) cfg.ntx_sweep = v->get<std::vector<int>>();
        if (auto v = take("kappa_sweep")) cfg.kappa_sweep = v->get<std::vector<double>>();
        if (auto v = take("obstruction")) cfg.obstruction = v->get<int>();
        if (auto v = take("obstruction_sweep"))
            cfg.obstruction_sweep = v->get<std::vector<int>>();
        if (auto v = take("tx_distance_m")) cfg.distances.tx_distance_m = v->get<double>();
        if (auto v = take("rx_distance_m")) cfg.distances.rx_distance_m = v->get<double>();
        if (auto v = take("path_loss_db")) cfg.path_loss.pl0_db = v->get<double>();
        if (auto v = take("path_loss_slope")) cfg.path_loss.slope = v->get<double>();
        if (auto v = take("noise_mode")) {
            const std::string mode = v->get<std::string>();
            if (mode == "physical") cfg.noise_mode = NoiseModel::Mode::physical;
            else if (mode == "target_snr") cfg.noise_mode = NoiseModel::Mode::target_snr;
            else throw std::invalid_argument("config.noise_mode: must be 'physical' or 'target_snr'");
        }
        if (auto v = take("temperature_k")) cfg.temperature_k = v->get<double>();
        if (auto v = take("bandwidth_hz")) cfg.bandwidth_hz = v->get<double>();
        if (auto v = take("tx_power_dbm")) cfg.tx_power_dbm = v->get<double>();
        if (auto v = take("trials")) cfg.trials = v->get<int>();
        if (auto v = take("min_bits")) cfg.min_bits = v->get<uint64_t>();
        if (auto v = take("seed")) cfg.seed = v->get<uint64_t>();
        if (auto v = take("threads")) cfg.threads = v->get<int>();
        if (auto v = take("qr_version")) cfg.qr.version = v->get<int>();
        if (auto v = take("qr_ec")) {
            const std::string e = v->get<std::string>();
            if (e == "L") cfg.qr.ec = EcLevel::L;
            else if (e == "M") cfg.qr.ec = EcLevel::M;
            else if (e == "Q") cfg.qr.ec = EcLevel::Q;
            else if (e == "H") cfg.qr.ec = EcLevel::H;
            else throw std::invalid_argument("config.qr_ec: must be one of L, M, Q, H");
        }
        if (auto v = take("qr_mask")) cfg.qr.mask = v->get<int>();
        if (auto v = take("qr_border")) cfg.qr.border = v->get<int>();
        if (auto v = take("payload")) cfg.payload = v->get<std::string>();
        if (auto v = take("groups")) cfg.groups = v->get<int>();
        if (auto v = take("block_count")) cfg.block_count = v->get<int>();
        if (auto v = take("out")) cfg.out_path = v->get<std::string>();
        if (auto v = take("bitmap_dir")) cfg.bitmap_dir = v->get<std::string>();
        if (auto v = take("format")) cfg.format = v->get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: bad field type: ") + e.what());
    }
    if (!j.empty())
        throw std::invalid_argument("config: unknown field '" + j.begin().key() + "'");
    cfg.validate();
    return cfg;
}

std::vector<ResultRow> run_abep_sweep(const SweepConfig& cfg) {
    cfg.validate();
    if (cfg.scenario != Scenario::abep_snr && cfg.scenario != Scenario::abep_ntx &&
        cfg.scenario != Scenario::abep_kappa)
        throw std::invalid_argument("run_abep_sweep: scenario is not an ABEP sweep");

    const RandomStream scenario_root =
        RandomStream(cfg.seed).substream(static_cast<uint64_t>(cfg.scenario));
    const uint64_t trials = default_trials(cfg);

    std::vector<double> xs;
    switch (cfg.scenario) {
        case Scenario::abep_snr:
            xs = cfg.snr_sweep_db;
            break;
        case Scenario::abep_ntx:
            for (int v : cfg.ntx_sweep) xs.push_back(v);
            break;
        default:
            xs = cfg.kappa_sweep;
            break;
    }

    std::vector<ResultRow> rows;
    for (size_t pi = 0; pi < xs.size(); ++pi) {
        const RandomStream point_root = scenario_root.substream(pi);
        for (size_t mi = 0; mi < cfg.modulations.size(); ++mi) {
            AbepSimulation sim;
            sim.dims = cfg.dims;
            sim.rician = cfg.distances;
            sim.rician.kappa = cfg.kappa;
            sim.path_loss = cfg.path_loss;
            sim.noise = noise_model_for(cfg, cfg.gamma_db);
            sim.order = cfg.modulations[mi];
            sim.trials = static_cast<int>(trials);
            sim.min_bits = cfg.min_bits;
            sim.threads = cfg.threads;
            sim.tx_power_w = std::pow(10.0, (cfg.tx_power_dbm - 30.0) / 10.0);
            switch (cfg.scenario) {
                case Scenario::abep_snr: sim.noise.gamma_db = xs[pi]; break;
                case Scenario::abep_ntx: sim.dims.ntx = static_cast<int>(xs[pi]); break;
                default: sim.rician.kappa = xs[pi]; break;
            }

            const AbepResult r = simulate_abep(sim, point_root.substream(mi));
            for (const auto& [metric, value] :
                 {std::pair<const char*, double>{"abep_theory", r.abep_theory},
                  {"abep_sim", r.abep_sim},
                  {"stderr", r.std_error}})
                rows.push_back({to_string(cfg.scenario), xs[pi], sim.order, metric, value,
                                trials, cfg.seed});
        }
    }
    return rows;
}

namespace {

struct QrTrialOutcome {
    uint8_t recovered = 0;
    uint8_t recognized = 0;
};

}  // namespace

std::vector<ResultRow> run_qr_experiment(const SweepConfig& cfg) {
    cfg.validate();
    if (cfg.scenario != Scenario::qr_snr && cfg.scenario != Scenario::qr_obstruction)
        throw std::invalid_argument("run_qr_experiment: scenario is not a QR experiment");

    const RandomStream scenario_root =
        RandomStream(cfg.seed).substream(static_cast<uint64_t>(cfg.scenario));
    const uint64_t trials = default_trials(cfg);

    const std::vector<uint8_t> payload(cfg.payload.begin(), cfg.payload.end());
    const ModuleMatrix original = qr_encode(payload, cfg.qr);

    std::vector<double> xs;
    if (cfg.scenario == Scenario::qr_snr) {
        xs = cfg.snr_sweep_db;
    } else {
        for (int d : cfg.obstruction_sweep) xs.push_back(d);
    }

    std::filesystem::path bitmap_dir = cfg.bitmap_dir;
    if (bitmap_dir.empty())
        bitmap_dir = cfg.out_path.empty()
                         ? std::filesystem::path(".")
                         : std::filesystem::path(cfg.out_path).parent_path();
    if (bitmap_dir.empty()) bitmap_dir = ".";
    std::filesystem::create_directories(bitmap_dir);

    std::vector<ResultRow> rows;
    for (size_t pi = 0; pi < xs.size(); ++pi) {
        const RandomStream point_root = scenario_root.substream(pi);
        const double gamma_db = cfg.scenario == Scenario::qr_snr ? xs[pi] : cfg.gamma_db;
        const int obstruction =
            cfg.scenario == Scenario::qr_obstruction ? static_cast<int>(xs[pi]) : cfg.obstruction;

        for (size_t mi = 0; mi < cfg.modulations.size(); ++mi) {
            const int order = cfg.modulations[mi];
            const Constellation constellation(order);

            int block_count = cfg.block_count;
            if (cfg.groups == 1 && block_count == 0 && cfg.dims.nrx < cfg.dims.elements)
                block_count = cfg.dims.nrx;  // few receive antennas: reduce to N_r blocks

            MappingPlan plan{.elements = cfg.dims.elements,
                             .order = order,
                             .block_count = block_count,
                             .obstruction_side = obstruction};
            plan.validate();
            if (original.side % plan.page_rows() != 0 || original.side % plan.page_cols() != 0)
                throw std::invalid_argument(
                    "run_qr_experiment: module grid of side " + std::to_string(original.side) +
                    " does not tile the " + std::to_string(plan.page_rows()) + "x" +
                    std::to_string(plan.page_cols()) +
                    " frame page; adjust qr.border, elements or block_count");
            const auto frames = modules_to_frames(original, plan, constellation);
            const std::vector<uint8_t> mask = obstruction_mask(plan);

            const int symbols_per_frame = plan.symbols_per_frame();
            if (symbols_per_frame % cfg.groups != 0 || plan.elements % cfg.groups != 0)
                throw std::invalid_argument(
                    "run_qr_experiment: groups must divide the per-frame symbol count");
            const int group_symbols = symbols_per_frame / cfg.groups;
            const int group_elements = plan.elements / cfg.groups;
            if (cfg.groups > 1 && cfg.dims.nrx < group_symbols)
                throw std::invalid_argument("run_qr_experiment: N_r below per-group streams");

            const NoiseModel noise = noise_model_for(cfg, gamma_db);
            const double tx_power_w = std::pow(10.0, (cfg.tx_power_dbm - 30.0) / 10.0);
            const RandomStream mod_root = point_root.substream(mi);

            std::vector<QrTrialOutcome> outcomes(trials);
            ModuleMatrix sample_recovered;

            parallel_for(static_cast<int>(trials), cfg.threads, [&](int t) {
                const RandomStream trial = mod_root.substream(static_cast<uint64_t>(t));
                std::vector<std::vector<int>> detected(frames.size());

                for (int g = 0; g < cfg.groups; ++g) {
                    RandomStream gstream = trial.substream(static_cast<uint64_t>(g));
                    RandomStream ch_stream = gstream.substream(0);
                    RandomStream noise_stream = gstream.substream(2);

                    ChannelDims gdims{group_elements, cfg.dims.ntx, cfg.dims.nrx};
                    RicianParams ric = cfg.distances;
                    ric.kappa = cfg.kappa;
                    const ChannelPair ch =
                        draw_channel_pair(ch_stream, gdims, ric, cfg.path_loss);
                    const std::vector<cxd> w = design_beamformer(ch);
                    const LinkState link =
                        build_link(ch, w, noise, cfg.groups == 1 ? block_count : 0, tx_power_w);

                    for (size_t f = 0; f < frames.size(); ++f) {
                        ThetaFrame sub;
                        sub.theta.assign(
                            frames[f].theta.begin() + static_cast<size_t>(g) * group_elements,
                            frames[f].theta.begin() +
                                static_cast<size_t>(g + 1) * group_elements);
                        sub.symbol_indices.assign(
                            frames[f].symbol_indices.begin() +
                                static_cast<size_t>(g) * group_symbols,
                            frames[f].symbol_indices.begin() +
                                static_cast<size_t>(g + 1) * group_symbols);
                        std::span<const uint8_t> gmask(
                            mask.data() + static_cast<size_t>(g) * group_elements,
                            static_cast<size_t>(group_elements));
                        const RxObservation obs = transmit(link, sub, gmask, noise_stream);
                        const DetectionReport rep = detect(link, obs, constellation);
                        detected[f].insert(detected[f].end(), rep.symbol_indices.begin(),
                                           rep.symbol_indices.end());
                    }
                }

                const ModuleMatrix recovered =
                    frames_to_modules(detected, plan, constellation, original.side);
                outcomes[t].recovered = (recovered == original) ? 1 : 0;
                outcomes[t].recognized = qr_decode(recovered, cfg.qr.border).has_value() ? 1 : 0;
                if (t == 0) sample_recovered = recovered;
            });

            uint64_t recovered = 0, recognized = 0;
            for (const auto& o : outcomes) {
                recovered += o.recovered;
                recognized += o.recognized;
            }
            const double n = static_cast<double>(trials);
            rows.push_back({to_string(cfg.scenario), xs[pi], order, "recovery_prob",
                            recovered / n, trials, cfg.seed});
            rows.push_back({to_string(cfg.scenario), xs[pi], order, "recognition_prob",
                            recognized / n, trials, cfg.seed});

            const std::string stem = to_string(cfg.scenario) + "_M" + std::to_string(order) +
                                     "_x" + fmt_double(xs[pi]);
            write_pbm_file(original, (bitmap_dir / (stem + "_original.pbm")).string());
            write_pbm_file(sample_recovered, (bitmap_dir / (stem + "_recovered.pbm")).string());
        }
    }
    return rows;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void emit_results(std::span<const ResultRow> rows, const std::string& format, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit_results: no rows to write");
    if (format == "csv") {
        out << "scenario,x,M,metric,value,trials,seed\n";
        for (const auto& r : rows)
            out << csv_quote(r.scenario) << ',' << fmt_double(r.x) << ',' << r.modulation << ','
                << csv_quote(r.metric) << ',' << fmt_double(r.value) << ',' << r.trials << ','
                << r.seed << '\n';
    } else if (format == "jsonl") {
        for (const auto& r : rows) {
            nlohmann::json j{{"scenario", r.scenario}, {"x", r.x},
                             {"M", r.modulation},      {"metric", r.metric},
                             {"value", r.value},       {"trials", r.trials},
                             {"seed", r.seed}};
            out << j.dump() << '\n';
        }
    } else {
        throw std::invalid_argument("emit_results: format must be 'csv' or 'jsonl'");
    }
}

void emit_results_file(std::span<const ResultRow> rows, const std::string& format,
                       const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("emit_results: no rows to write");
    std::ostringstream buffer;
    emit_results(rows, format, buffer);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_results: cannot open " + path);
    f << buffer.str();
    if (!f.good()) throw std::runtime_error("emit_results: write failed for " + path);
}

}  // namespace irsqr
