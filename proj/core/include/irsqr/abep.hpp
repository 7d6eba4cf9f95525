#pragma once

#include <cstdint>

#include "irsqr/link.hpp"

namespace irsqr {

/// Closed-form average bit error probability per stream for Gray M-PSK at
/// post-equalization noise variance C_ll. Exact for BPSK and QPSK, the
/// standard two-term nearest-neighbor approximation for M > 4.
double abep_theoretical(double c_ll, int order);

/// Exact average symbol error probability per stream (quadrature form, at
/// per-stream SNR 1/C_ll).
double asep_theoretical(double c_ll, int order);

struct AbepSimulation {
    ChannelDims dims;
    RicianParams rician;
    PathLossModel path_loss;
    NoiseModel noise;
    int order = 2;
    int trials = 100;               // channel realizations
    uint64_t min_bits = 1'000'000;  // total across all trials
    int threads = 0;                // 0: decide from hardware / IRSQR_THREADS
    double tx_power_w = 1.0;        // matters in physical noise mode only
};

struct AbepResult {
    double abep_sim = 0.0;
    double abep_theory = 0.0;  // mean of per-realization closed forms
    double std_error = 0.0;    // binomial, sqrt(p(1-p)/bits)
    uint64_t bits = 0;
    uint64_t bit_errors = 0;
};

/// Monte-Carlo ABEP with the matching theory mean. Per trial: draw channels,
/// design the beamformer, build the link, send uniformly random frames,
/// detect, count Gray-bit errors. Deterministic for a given stream seed and
/// independent of the worker thread count.
AbepResult simulate_abep(const AbepSimulation& sim, const RandomStream& trial_root);

}  // namespace irsqr
