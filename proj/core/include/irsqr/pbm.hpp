#pragma once

#include <iosfwd>
#include <string>

#include "irsqr/mapping.hpp"

namespace irsqr {

/// Plain-text portable bitmap (P1), one module per pixel, 1 = dark.
void write_pbm(const ModuleMatrix& m, std::ostream& out);
void write_pbm_file(const ModuleMatrix& m, const std::string& path);

ModuleMatrix read_pbm(std::istream& in);
ModuleMatrix read_pbm_file(const std::string& path);

}  // namespace irsqr
