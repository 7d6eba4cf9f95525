#include "irsqr/link.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace irsqr {

std::vector<cxd> design_beamformer(const ChannelPair& ch) {
    if (ch.ntx() == 1) return {cxd(1.0)};
    const ComplexMatrix g = multiply(ch.f, ch.h);  // N_r x N_t
    EigenPair p = principal_eigenvector(gram(g));  // H^H F^H F H
    return std::move(p.vector);
}

LinkState build_link(const ChannelPair& ch, std::span<const cxd> w, const NoiseModel& noise,
                     int block_count, double tx_power_w) {
    const int l = ch.elements();
    const int nr = ch.nrx();
    if (static_cast<int>(w.size()) != ch.ntx())
        throw std::invalid_argument("build_link: beamformer length does not match N_t");
    if (!(tx_power_w > 0.0)) throw std::invalid_argument("build_link: tx power must be > 0");

    LinkState link;
    link.beamformer.assign(w.begin(), w.end());
    link.amplitude = std::sqrt(tx_power_w);

    // V = F diag(H w)
    const std::vector<cxd> hw = multiply(ch.h, w);
    link.v = ComplexMatrix(nr, l);
    for (int r = 0; r < nr; ++r) {
        const cxd* frow = ch.f.row(r);
        cxd* vrow = link.v.row(r);
        for (int c = 0; c < l; ++c) vrow[c] = frow[c] * hw[c];
    }

    if (block_count > 0 && block_count < l) {
        MappingPlan geom{.elements = l, .order = 2, .block_count = block_count};
        geom.validate();
        const int side = geom.irs_side();
        const int sgrid = geom.symbol_grid_side();
        const int bsz = side / sgrid;
        link.element_to_stream.resize(l);
        for (int er = 0; er < side; ++er)
            for (int ec = 0; ec < side; ++ec)
                link.element_to_stream[static_cast<size_t>(er) * side + ec] =
                    (er / bsz) * sgrid + (ec / bsz);
        link.v_effective = ComplexMatrix(nr, block_count);
        for (int r = 0; r < nr; ++r) {
            const cxd* vrow = link.v.row(r);
            cxd* erow = link.v_effective.row(r);
            for (int c = 0; c < l; ++c) erow[link.element_to_stream[c]] += vrow[c];
        }
    } else {
        if (nr < l)
            throw std::invalid_argument(
                "build_link: N_r < L needs block reduction (pass block_count)");
        link.element_to_stream.resize(l);
        for (int c = 0; c < l; ++c) link.element_to_stream[c] = c;
        link.v_effective = link.v;
    }

    if (link.v_effective.rows() < link.v_effective.cols())
        throw std::invalid_argument("build_link: N_r below the number of block streams");

    link.zf = std::make_shared<const LeastSquaresFactor>(link.v_effective);
    link.equalizer_gain = link.zf->equalizer_row_power();
    link.sigma2 = noise_variance(noise, link.equalizer_gain);

    // Post-equalization noise on stream l has variance sigma2 * g_l; the
    // transmit amplitude rescales the signal, so fold it into C as well.
    const double p = link.amplitude * link.amplitude;
    link.noise_diag.resize(link.equalizer_gain.size());
    for (size_t i = 0; i < link.equalizer_gain.size(); ++i)
        link.noise_diag[i] = link.sigma2 * link.equalizer_gain[i] / p;
    return link;
}

RxObservation transmit(const LinkState& link, const ThetaFrame& frame,
                       std::span<const uint8_t> mask, RandomStream& stream) {
    const int l = link.v.cols();
    const int nr = link.v.rows();
    if (static_cast<int>(frame.theta.size()) != l)
        throw std::invalid_argument("transmit: frame length does not match element count");
    if (!mask.empty() && static_cast<int>(mask.size()) != l)
        throw std::invalid_argument("transmit: mask length does not match element count");

    std::vector<cxd> theta(frame.theta);
    if (!mask.empty())
        for (int c = 0; c < l; ++c)
            if (mask[c]) theta[c] = cxd{};

    RxObservation obs;
    obs.true_symbol_indices = frame.symbol_indices;
    obs.y.resize(nr);
    for (int r = 0; r < nr; ++r) {
        const cxd* vrow = link.v.row(r);
        cxd acc{};
        for (int c = 0; c < l; ++c) acc += vrow[c] * theta[c];
        obs.y[r] = link.amplitude * acc + stream.next_complex_gaussian(link.sigma2);
    }
    return obs;
}

DetectionReport detect(const LinkState& link, const RxObservation& obs, const Constellation& c) {
    if (static_cast<int>(obs.y.size()) != link.v.rows())
        throw std::invalid_argument("detect: observation length does not match N_r");

    DetectionReport rep;
    rep.y_eq = link.zf->solve(obs.y);
    if (link.amplitude != 1.0)
        for (auto& e : rep.y_eq) e /= link.amplitude;

    const int n = static_cast<int>(rep.y_eq.size());
    rep.symbol_indices.resize(n);
    const bool score = static_cast<int>(obs.true_symbol_indices.size()) == n;
    for (int i = 0; i < n; ++i) {
        const int hat = c.nearest_index(rep.y_eq[i]);
        rep.symbol_indices[i] = hat;
        if (score && hat != obs.true_symbol_indices[i]) {
            ++rep.symbol_errors;
            rep.bit_errors +=
                std::popcount(static_cast<unsigned>(c.label(hat) ^ c.label(obs.true_symbol_indices[i])));
        }
    }
    return rep;
}

}  // namespace irsqr
