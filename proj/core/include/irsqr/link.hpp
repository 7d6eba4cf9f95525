#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "irsqr/channel.hpp"
#include "irsqr/constellation.hpp"
#include "irsqr/mapping.hpp"
#include "irsqr/numerics.hpp"

namespace irsqr {

/// One realized link: beamformer, effective channel, zero-forcing equalizer
/// (kept in factored form) and per-stream noise figures.
///
/// In block mode the equalizer runs on the block-summed effective channel,
/// giving block_count streams; the element-level v is still kept because
/// transmission (and obstruction) acts per element.
struct LinkState {
    std::vector<cxd> beamformer;              // w, unit norm
    ComplexMatrix v;                          // N_r x L, F diag(H w), element level
    ComplexMatrix v_effective;                // N_r x streams (== v in full mode)
    std::shared_ptr<const LeastSquaresFactor> zf;
    std::vector<double> equalizer_gain;       // g_l = [U U^H]_{ll}
    double sigma2 = 0.0;
    std::vector<double> noise_diag;           // C_ll = sigma2 * g_l
    std::vector<int> element_to_stream;       // length L
    double amplitude = 1.0;                   // sqrt of transmit power

    int streams() const { return static_cast<int>(equalizer_gain.size()); }

    /// Materialized equalizer U (streams x N_r).
    ComplexMatrix equalizer() const { return zf->pseudo_inverse(); }
};

struct RxObservation {
    std::vector<cxd> y;
    std::vector<int> true_symbol_indices;
};

struct DetectionReport {
    std::vector<cxd> y_eq;
    std::vector<int> symbol_indices;
    int symbol_errors = 0;
    int bit_errors = 0;
};

/// Transmit beamformer: principal eigenvector of H^H F^H F H, unit norm.
std::vector<cxd> design_beamformer(const ChannelPair& ch);

/// Builds the zero-forcing link. block_count = 0 keeps one stream per
/// element and requires N_r >= L; otherwise columns of V are summed per
/// block before inversion and N_r >= block_count is required (few receive
/// antennas, many elements). tx_power_w scales the transmitted signal and
/// matters only for the physical noise mode; target-SNR calibration absorbs
/// it.
LinkState build_link(const ChannelPair& ch, std::span<const cxd> w, const NoiseModel& noise,
                     int block_count = 0, double tx_power_w = 1.0);

/// y = V_masked theta + z, z ~ CN(0, sigma^2 I). Masked elements contribute
/// nothing; the receiver's equalizer stays built from the unmasked channel.
RxObservation transmit(const LinkState& link, const ThetaFrame& frame,
                       std::span<const uint8_t> mask, RandomStream& stream);

/// Equalize and make per-stream ML decisions, scoring symbol and Gray-bit
/// errors against the ground truth carried in the observation.
DetectionReport detect(const LinkState& link, const RxObservation& obs, const Constellation& c);

}  // namespace irsqr
