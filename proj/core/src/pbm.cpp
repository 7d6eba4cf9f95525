#include "irsqr/pbm.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irsqr {

void write_pbm(const ModuleMatrix& m, std::ostream& out) {
    out << "P1\n" << m.side << ' ' << m.side << '\n';
    for (int r = 0; r < m.side; ++r) {
        for (int c = 0; c < m.side; ++c) {
            if (c) out << ' ';
            out << static_cast<int>(m.at(r, c));
        }
        out << '\n';
    }
}

void write_pbm_file(const ModuleMatrix& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_pbm_file: cannot open " + path);
    write_pbm(m, f);
    if (!f.good()) throw std::runtime_error("write_pbm_file: write failed for " + path);
}

namespace {

// Next token with PBM comment handling.
bool next_token(std::istream& in, std::string& tok) {
    tok.clear();
    char ch;
    while (in.get(ch)) {
        if (ch == '#') {
            while (in.get(ch) && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            if (!tok.empty()) return true;
            continue;
        }
        tok.push_back(ch);
    }
    return !tok.empty();
}

}  // namespace

ModuleMatrix read_pbm(std::istream& in) {
    std::string tok;
    if (!next_token(in, tok) || tok != "P1")
        throw std::runtime_error("read_pbm: not a plain PBM (P1) file");
    int w = 0, h = 0;
    if (!next_token(in, tok)) throw std::runtime_error("read_pbm: missing width");
    w = std::stoi(tok);
    if (!next_token(in, tok)) throw std::runtime_error("read_pbm: missing height");
    h = std::stoi(tok);
    if (w <= 0 || h <= 0 || w != h)
        throw std::runtime_error("read_pbm: expected a square bitmap");

    ModuleMatrix m(w);
    size_t i = 0;
    while (i < m.cells.size()) {
        if (!next_token(in, tok)) throw std::runtime_error("read_pbm: truncated pixel data");
        // P1 allows digits to be packed without separators
        for (char c : tok) {
            if (c != '0' && c != '1') throw std::runtime_error("read_pbm: bad pixel value");
            if (i >= m.cells.size()) throw std::runtime_error("read_pbm: too many pixels");
            m.cells[i++] = static_cast<uint8_t>(c - '0');
        }
    }
    return m;
}

ModuleMatrix read_pbm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_pbm_file: cannot open " + path);
    return read_pbm(f);
}

}  // namespace irsqr
