#include "irsqr/mapping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace irsqr {

namespace {

int exact_sqrt(int n) {
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return (r > 0 && r * r == n) ? r : -1;
}

int log2_of(int order) {
    int b = 0;
    while ((1 << b) < order) ++b;
    return b;
}

}  // namespace

int MappingPlan::irs_side() const {
    const int s = exact_sqrt(elements);
    if (s < 0) throw std::invalid_argument("MappingPlan: element count must be a perfect square");
    return s;
}

int MappingPlan::symbol_grid_side() const {
    if (!block_mode()) return irs_side();
    const int s = exact_sqrt(block_count);
    if (s < 0) throw std::invalid_argument("MappingPlan: block count must be a perfect square");
    return s;
}

int MappingPlan::symbols_per_frame() const { return block_mode() ? block_count : elements; }

int MappingPlan::sub_rows() const {
    const int bits = log2_of(order);
    int best = 1;
    for (int d = 1; d * d <= bits; ++d)
        if (bits % d == 0) best = d;
    return best;
}

int MappingPlan::sub_cols() const { return log2_of(order) / sub_rows(); }

void MappingPlan::validate() const {
    if (elements < 1) throw std::invalid_argument("MappingPlan: elements must be >= 1");
    if (order < 2 || (order & (order - 1)) != 0)
        throw std::invalid_argument("MappingPlan: order must be a power of 2, >= 2");
    const int side = irs_side();
    if (block_mode()) {
        const int bs = symbol_grid_side();
        if (side % bs != 0)
            throw std::invalid_argument(
                "MappingPlan: block grid does not divide the element grid into square blocks");
    }
    if (obstruction_side < 0 || obstruction_side > side)
        throw std::invalid_argument("MappingPlan: obstruction side out of range");
}

namespace {

// Per-element symbol assignment for one page worth of symbols.
void expand_symbols_to_theta(const std::vector<int>& symbols, const MappingPlan& plan,
                             const Constellation& c, ThetaFrame& frame) {
    const int side = plan.irs_side();
    const int sgrid = plan.symbol_grid_side();
    const int bsz = side / sgrid;  // elements per block side (1 in full mode)
    frame.theta.resize(plan.elements);
    for (int er = 0; er < side; ++er)
        for (int ec = 0; ec < side; ++ec) {
            const int sym = symbols[(er / bsz) * sgrid + (ec / bsz)];
            frame.theta[static_cast<size_t>(er) * side + ec] = c.point(sym);
        }
    frame.symbol_indices = symbols;
}

}  // namespace

std::vector<ThetaFrame> modules_to_frames(const ModuleMatrix& m, const MappingPlan& plan,
                                          const Constellation& c) {
    plan.validate();
    if (c.order() != plan.order)
        throw std::invalid_argument("modules_to_frames: constellation order differs from plan");
    const int pr = plan.page_rows();
    const int pc = plan.page_cols();
    if (m.side <= 0 || m.side % pr != 0 || m.side % pc != 0)
        throw std::invalid_argument("modules_to_frames: grid side " + std::to_string(m.side) +
                                    " is not tileable by the " + std::to_string(pr) + "x" +
                                    std::to_string(pc) + " frame page");
    const int tiles_r = m.side / pr;
    const int tiles_c = m.side / pc;
    const int sgrid = plan.symbol_grid_side();
    const int br = plan.sub_rows();
    const int bc = plan.sub_cols();

    std::vector<ThetaFrame> frames;
    frames.reserve(static_cast<size_t>(tiles_r) * tiles_c);
    std::vector<int> symbols(static_cast<size_t>(sgrid) * sgrid);
    for (int tr = 0; tr < tiles_r; ++tr)
        for (int tc = 0; tc < tiles_c; ++tc) {
            for (int i = 0; i < sgrid; ++i)
                for (int j = 0; j < sgrid; ++j) {
                    int label = 0;
                    for (int u = 0; u < br; ++u)
                        for (int v = 0; v < bc; ++v)
                            label = (label << 1) |
                                    m.at(tr * pr + i * br + u, tc * pc + j * bc + v);
                    symbols[static_cast<size_t>(i) * sgrid + j] = c.index_of_label(label);
                }
            ThetaFrame f;
            expand_symbols_to_theta(symbols, plan, c, f);
            frames.push_back(std::move(f));
        }
    return frames;
}

ThetaFrame modules_to_frame(const ModuleMatrix& m, const MappingPlan& plan,
                            const Constellation& c) {
    auto frames = modules_to_frames(m, plan, c);
    if (frames.size() != 1)
        throw std::invalid_argument("modules_to_frame: grid needs " +
                                    std::to_string(frames.size()) + " frames");
    return std::move(frames.front());
}

ModuleMatrix frames_to_modules(std::span<const std::vector<int>> frame_indices,
                               const MappingPlan& plan, const Constellation& c, int module_side) {
    plan.validate();
    const int pr = plan.page_rows();
    const int pc = plan.page_cols();
    if (module_side <= 0 || module_side % pr != 0 || module_side % pc != 0)
        throw std::invalid_argument("frames_to_modules: grid side not tileable by the frame page");
    const int tiles_r = module_side / pr;
    const int tiles_c = module_side / pc;
    if (frame_indices.size() != static_cast<size_t>(tiles_r) * tiles_c)
        throw std::invalid_argument("frames_to_modules: frame count does not match grid");
    const int sgrid = plan.symbol_grid_side();
    const int br = plan.sub_rows();
    const int bc = plan.sub_cols();

    ModuleMatrix m(module_side);
    size_t fi = 0;
    for (int tr = 0; tr < tiles_r; ++tr)
        for (int tc = 0; tc < tiles_c; ++tc, ++fi) {
            const auto& symbols = frame_indices[fi];
            if (symbols.size() != static_cast<size_t>(sgrid) * sgrid)
                throw std::invalid_argument("frames_to_modules: symbol count mismatch in frame");
            for (int i = 0; i < sgrid; ++i)
                for (int j = 0; j < sgrid; ++j) {
                    const int sym = symbols[static_cast<size_t>(i) * sgrid + j];
                    if (sym < 0 || sym >= c.order())
                        throw std::invalid_argument("frames_to_modules: symbol index out of range");
                    const int label = c.label(sym);
                    const int bits = br * bc;
                    for (int u = 0; u < br; ++u)
                        for (int v = 0; v < bc; ++v) {
                            const int pos = bits - 1 - (u * bc + v);
                            m.at(tr * pr + i * br + u, tc * pc + j * bc + v) =
                                static_cast<uint8_t>((label >> pos) & 1);
                        }
                }
        }
    return m;
}

ModuleMatrix frame_to_modules(std::span<const int> symbol_indices, const MappingPlan& plan,
                              const Constellation& c) {
    if (plan.page_rows() != plan.page_cols())
        throw std::invalid_argument("frame_to_modules: frame page is not square; "
                                    "use frames_to_modules with an explicit grid side");
    std::vector<int> one(symbol_indices.begin(), symbol_indices.end());
    std::vector<std::vector<int>> frames{std::move(one)};
    return frames_to_modules(frames, plan, c, plan.page_rows());
}

ThetaFrame apply_block_reduction(const ModuleMatrix& block_modules, const MappingPlan& plan,
                                 const Constellation& c) {
    if (plan.block_count <= 0)
        throw std::invalid_argument("apply_block_reduction: plan has no block count");
    return modules_to_frame(block_modules, plan, c);
}

std::vector<uint8_t> obstruction_mask(const MappingPlan& plan) {
    plan.validate();
    const int side = plan.irs_side();
    const int d = plan.obstruction_side;
    std::vector<uint8_t> mask(plan.elements, 0);
    for (int r = side - d; r < side; ++r)
        for (int c = side - d; c < side; ++c) mask[static_cast<size_t>(r) * side + c] = 1;
    return mask;
}

}  // namespace irsqr
