#include "irsqr/abep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irsqr/parallel.hpp"

namespace irsqr {

double abep_theoretical(double c_ll, int order) {
    if (!(c_ll > 0.0)) throw std::invalid_argument("abep_theoretical: C_ll must be > 0");
    if (order < 2 || (order & (order - 1)) != 0)
        throw std::invalid_argument("abep_theoretical: order must be a power of 2, >= 2");
    if (order == 2) return q_function(std::sqrt(2.0 / c_ll));
    if (order == 4) return q_function(std::sqrt(1.0 / c_ll));  // 1 - cos(pi/2)
    const double pi = std::numbers::pi;
    const int bits = static_cast<int>(std::lround(std::log2(order)));
    const double t1 = q_function(std::sqrt((1.0 - std::cos(2.0 * pi / order)) / c_ll));
    const double t2 = q_function(std::sqrt((1.0 - std::cos(4.0 * pi / order)) / c_ll));
    return 2.0 / bits * (t1 + t2);
}

double asep_theoretical(double c_ll, int order) {
    if (!(c_ll > 0.0)) throw std::invalid_argument("asep_theoretical: C_ll must be > 0");
    return mpsk_sep_exact(1.0 / c_ll, order);
}

AbepResult simulate_abep(const AbepSimulation& sim, const RandomStream& trial_root) {
    if (sim.trials < 1) throw std::invalid_argument("simulate_abep: trials must be >= 1");
    const Constellation c(sim.order);
    const int l = sim.dims.elements;
    const int bits_per_frame = l * c.bits_per_symbol();
    const uint64_t frames_per_trial = std::max<uint64_t>(
        1, (sim.min_bits + static_cast<uint64_t>(sim.trials) * bits_per_frame - 1) /
               (static_cast<uint64_t>(sim.trials) * bits_per_frame));

    std::vector<uint64_t> errors(sim.trials, 0);
    std::vector<double> theory(sim.trials, 0.0);

    parallel_for(sim.trials, sim.threads, [&](int t) {
        RandomStream trial = trial_root.substream(static_cast<uint64_t>(t));
        RandomStream ch_stream = trial.substream(0);
        RandomStream data_stream = trial.substream(1);
        RandomStream noise_stream = trial.substream(2);

        const ChannelPair ch = draw_channel_pair(ch_stream, sim.dims, sim.rician, sim.path_loss);
        const std::vector<cxd> w = design_beamformer(ch);
        const LinkState link = build_link(ch, w, sim.noise, 0, sim.tx_power_w);

        double th = 0.0;
        for (double cll : link.noise_diag) th += abep_theoretical(cll, sim.order);
        theory[t] = th / static_cast<double>(link.noise_diag.size());

        ThetaFrame frame;
        frame.theta.resize(l);
        frame.symbol_indices.resize(l);
        uint64_t errs = 0;
        for (uint64_t f = 0; f < frames_per_trial; ++f) {
            for (int i = 0; i < l; ++i) {
                const int m = static_cast<int>(data_stream.next_u64() & (sim.order - 1));
                frame.symbol_indices[i] = m;
                frame.theta[i] = c.point(m);
            }
            const RxObservation obs = transmit(link, frame, {}, noise_stream);
            errs += static_cast<uint64_t>(detect(link, obs, c).bit_errors);
        }
        errors[t] = errs;
    });

    AbepResult res;
    res.bits = static_cast<uint64_t>(sim.trials) * frames_per_trial * bits_per_frame;
    for (uint64_t e : errors) res.bit_errors += e;
    double th_sum = 0.0;
    for (double th : theory) th_sum += th;
    res.abep_theory = th_sum / sim.trials;
    res.abep_sim = static_cast<double>(res.bit_errors) / static_cast<double>(res.bits);
    res.std_error = std::sqrt(res.abep_sim * (1.0 - res.abep_sim) / static_cast<double>(res.bits));
    return res;
}

}  // namespace irsqr
