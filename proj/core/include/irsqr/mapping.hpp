#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "irsqr/constellation.hpp"

namespace irsqr {

/// Square binary module grid (0 = light, 1 = dark), row-major.
struct ModuleMatrix {
    int side = 0;
    std::vector<uint8_t> cells;

    ModuleMatrix() = default;
    explicit ModuleMatrix(int n) : side(n), cells(static_cast<size_t>(n) * n, 0) {}

    uint8_t& at(int r, int c) { return cells[static_cast<size_t>(r) * side + c]; }
    uint8_t at(int r, int c) const { return cells[static_cast<size_t>(r) * side + c]; }

    bool operator==(const ModuleMatrix&) const = default;
};

/// How a module grid maps onto the element grid of the surface.
///
/// The surface is a square of irs_side() x irs_side() elements. In full mode
/// every element carries its own symbol; in block mode the surface is split
/// into block_count equal square blocks and all elements of a block share one
/// symbol. Each symbol carries log2(M) modules, arranged as an aligned
/// sub_rows() x sub_cols() sub-block of the module grid (2x2 for 16-PSK,
/// a row-major 1xk run when log2(M) has no square factorization). One frame
/// therefore shows a page of page_rows() x page_cols() modules; larger module
/// grids are cut into page-sized tiles emitted in row-major order.
struct MappingPlan {
    int elements = 0;         // L, a perfect square
    int order = 2;            // constellation size M
    int block_count = 0;      // 0 or L: full mode; otherwise a perfect square
    int obstruction_side = 0; // D, in elements

    int irs_side() const;
    bool block_mode() const { return block_count > 0 && block_count < elements; }
    int symbol_grid_side() const;
    int symbols_per_frame() const;
    int sub_rows() const;
    int sub_cols() const;
    int page_rows() const { return symbol_grid_side() * sub_rows(); }
    int page_cols() const { return symbol_grid_side() * sub_cols(); }

    void validate() const;
};

/// One displayed frame: the per-element reflection vector plus the symbol
/// indices it encodes (one per element, or one per block in block mode).
/// Every theta entry is a unit-modulus constellation point.
struct ThetaFrame {
    std::vector<std::complex<double>> theta;
    std::vector<int> symbol_indices;
};

/// Splits a module grid into the minimal sequence of frames. The grid side
/// must be divisible by the plan's page shape.
std::vector<ThetaFrame> modules_to_frames(const ModuleMatrix& m, const MappingPlan& plan,
                                          const Constellation& c);

/// Single-frame convenience; throws when the grid needs more than one frame.
ThetaFrame modules_to_frame(const ModuleMatrix& m, const MappingPlan& plan,
                            const Constellation& c);

/// Reassembles the module grid of side `module_side` from detected symbol
/// indices, one vector per frame, in the same order modules_to_frames
/// produced them. Exact inverse on noiseless indices.
ModuleMatrix frames_to_modules(std::span<const std::vector<int>> frame_indices,
                               const MappingPlan& plan, const Constellation& c, int module_side);

/// Single-frame inverse; requires a square page.
ModuleMatrix frame_to_modules(std::span<const int> symbol_indices, const MappingPlan& plan,
                              const Constellation& c);

/// Block-reduction mapping: the grid is one page at block granularity and
/// every element of a block gets the block's constellation point.
ThetaFrame apply_block_reduction(const ModuleMatrix& block_modules, const MappingPlan& plan,
                                 const Constellation& c);

/// Per-element mask, true for elements inside the D x D square at the
/// bottom-right corner of the element grid (row-major element order).
std::vector<uint8_t> obstruction_mask(const MappingPlan& plan);

}  // namespace irsqr
