#include "nematiq/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nematiq {

namespace {

static_assert(sizeof(double) == 8, "snapshot format needs 64-bit doubles");

void put_le64(std::ostream& os, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    if constexpr (std::endian::native == std::endian::big) {
        uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r |= ((bits >> (8 * i)) & 0xffu) << (8 * (7 - i));
        bits = r;
    }
    char buf[8];
    std::memcpy(buf, &bits, 8);
    os.write(buf, 8);
}

double get_le64(std::istream& is) {
    char buf[8];
    is.read(buf, 8);
    if (!is) throw std::runtime_error("snapshot: truncated sample data");
    uint64_t bits;
    std::memcpy(&bits, buf, 8);
    if constexpr (std::endian::native == std::endian::big) {
        uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r |= ((bits >> (8 * i)) & 0xffu) << (8 * (7 - i));
        bits = r;
    }
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

FieldTag tag_for(int c) {
    switch (c) {
        case 1: return FieldTag::scalar;
        case 2: return FieldTag::velocity;
        case 3: return FieldTag::director;
    }
    throw std::runtime_error("snapshot: component count must be 1, 2 or 3");
}

}  // namespace

void write_snapshot(std::ostream& os, const SpectralField& f, double t) {
    const RealField r = to_real(f);
    char header[128];
    std::snprintf(header, sizeof(header), "NEMATIQ1 %d %d %d %.17g\n", f.grid().nx(),
                  f.grid().ny(), f.ncomp(), t);
    os << header;
    for (int c = 0; c < r.ncomp(); ++c)
        for (double v : r.comp[c]) put_le64(os, v);
}

void write_snapshot(const std::string& path, const SpectralField& f, double t) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
    write_snapshot(os, f, t);
}

Snapshot read_snapshot(std::istream& is, double dealias_fraction) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("snapshot: missing header");
    std::istringstream hs(line);
    std::string magic;
    int nx = 0, ny = 0, c = 0;
    double t = 0.0;
    hs >> magic >> nx >> ny >> c >> t;
    if (!hs || magic != "NEMATIQ1") throw std::runtime_error("snapshot: bad header: " + line);
    Grid g = make_grid(nx, ny, dealias_fraction);
    RealField r(g, tag_for(c));
    for (int ci = 0; ci < c; ++ci)
        for (int m = 0; m < g.size(); ++m) r.comp[ci][m] = get_le64(is);
    Snapshot snap;
    snap.field = to_spectral(r, r.tag);
    snap.t = t;
    return snap;
}

Snapshot read_snapshot(const std::string& path, double dealias_fraction) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("snapshot: cannot open " + path);
    return read_snapshot(is, dealias_fraction);
}

}  // namespace nematiq
