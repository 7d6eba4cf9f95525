#pragma once

#include <span>

#include "irsqr/matrix.hpp"
#include "irsqr/random.hpp"

namespace irsqr {

struct ChannelDims {
    int elements = 0;  // L, reflecting elements
    int ntx = 0;       // transmit antennas
    int nrx = 0;       // receive antennas
};

/// Log-distance path loss, PL(d) = pl0_db - slope * log10(d / d0) in dB.
struct PathLossModel {
    double pl0_db = -30.0;
    double slope = 25.0;
    double d0_m = 1.0;
};

/// Linear power gain at distance d_m. Throws for d_m < d0.
double path_loss_linear(const PathLossModel& model, double d_m);

struct RicianParams {
    double kappa = 0.0;          // LOS-to-scatter power ratio
    double tx_distance_m = 50.0; // transmitter -> surface
    double rx_distance_m = 50.0; // surface -> receiver
};

/// The two-hop channel: h (L x N_t, towards the surface) and f (N_r x L,
/// away from it).
struct ChannelPair {
    ComplexMatrix h;
    ComplexMatrix f;

    int elements() const { return h.rows(); }
    int ntx() const { return h.cols(); }
    int nrx() const { return f.rows(); }
};

/// Draws both hops independently. Each matrix is
///   sqrt(PL(d)) * ( sqrt(k/(1+k)) * a_rx(phi) a_tx(psi)^H + sqrt(1/(1+k)) * W )
/// with W i.i.d. CN(0,1), and a(.) half-wavelength uniform-linear-array
/// steering vectors at angles drawn uniformly from [0, pi). Per-entry mean
/// power is exactly PL(d).
ChannelPair draw_channel_pair(RandomStream& stream, const ChannelDims& dims,
                              const RicianParams& ric, const PathLossModel& pl);

struct NoiseModel {
    enum class Mode { physical, target_snr };
    Mode mode = Mode::target_snr;
    double temperature_k = 300.0;  // physical mode
    double bandwidth_hz = 1e6;     // physical mode
    double gamma_db = 15.0;        // target mode: average post-equalization SNR
};

/// Noise power sigma^2. Physical mode returns k_B * T * B. Target mode
/// calibrates sigma^2 so that the arithmetic mean over streams of the
/// post-equalization SNR 1/C_ll equals gamma (linear); it needs the
/// equalizer row powers g_l = [U U^H]_{ll}, which do not depend on sigma.
double noise_variance(const NoiseModel& model, std::span<const double> equalizer_gain = {});

}  // namespace irsqr
