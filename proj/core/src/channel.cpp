#include "irsqr/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsqr {

namespace {

constexpr double kBoltzmann = 1.380649e-23;  // J/K

// Half-wavelength ULA steering vector, unit-modulus entries.
std::vector<cxd> steering_vector(int n, double angle) {
    std::vector<cxd> a(n);
    const double step = std::numbers::pi * std::cos(angle);
    for (int i = 0; i < n; ++i) a[i] = std::polar(1.0, step * i);
    return a;
}

ComplexMatrix draw_rician(RandomStream& stream, int rows, int cols, double kappa, double gain) {
    const double amp = std::sqrt(gain);
    const double los_w = std::sqrt(kappa / (1.0 + kappa));
    const double nlos_w = std::sqrt(1.0 / (1.0 + kappa));

    const double phi = stream.next_uniform() * std::numbers::pi;
    const double psi = stream.next_uniform() * std::numbers::pi;
    const auto a_out = steering_vector(rows, phi);
    const auto a_in = steering_vector(cols, psi);

    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        cxd* row = m.row(r);
        for (int c = 0; c < cols; ++c) {
            const cxd los = a_out[r] * std::conj(a_in[c]);
            const cxd nlos = stream.next_complex_gaussian(1.0);
            row[c] = amp * (los_w * los + nlos_w * nlos);
        }
    }
    return m;
}

}  // namespace

double path_loss_linear(const PathLossModel& model, double d_m) {
    if (!(model.d0_m > 0.0)) throw std::invalid_argument("path_loss_linear: d0 must be > 0");
    if (d_m < model.d0_m)
        throw std::invalid_argument("path_loss_linear: distance below reference distance");
    const double loss_db = model.pl0_db - model.slope * std::log10(d_m / model.d0_m);
    return std::pow(10.0, loss_db / 10.0);
}

ChannelPair draw_channel_pair(RandomStream& stream, const ChannelDims& dims,
                              const RicianParams& ric, const PathLossModel& pl) {
    if (dims.elements < 1 || dims.ntx < 1 || dims.nrx < 1)
        throw std::invalid_argument("draw_channel_pair: all dimensions must be >= 1");
    if (!(ric.kappa >= 0.0)) throw std::invalid_argument("draw_channel_pair: kappa must be >= 0");

    const double g_tx = path_loss_linear(pl, ric.tx_distance_m);
    const double g_rx = path_loss_linear(pl, ric.rx_distance_m);
    ChannelPair ch{
        draw_rician(stream, dims.elements, dims.ntx, ric.kappa, g_tx),
        draw_rician(stream, dims.nrx, dims.elements, ric.kappa, g_rx),
    };
    return ch;
}

double noise_variance(const NoiseModel& model, std::span<const double> equalizer_gain) {
    if (model.mode == NoiseModel::Mode::physical) {
        if (!(model.temperature_k > 0.0) || !(model.bandwidth_hz > 0.0))
            throw std::invalid_argument("noise_variance: physical mode needs T > 0 and B > 0");
        return kBoltzmann * model.temperature_k * model.bandwidth_hz;
    }
    if (equalizer_gain.empty())
        throw std::invalid_argument("noise_variance: target mode needs equalizer gains");
    const double gamma_lin = std::pow(10.0, model.gamma_db / 10.0);
    double inv_sum = 0.0;
    for (double g : equalizer_gain) {
        if (!(g > 0.0)) throw std::invalid_argument("noise_variance: equalizer gains must be > 0");
        inv_sum += 1.0 / g;
    }
    return inv_sum / (gamma_lin * static_cast<double>(equalizer_gain.size()));
}

}  // namespace irsqr
