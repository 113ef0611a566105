// Snapshot file format:
//   header line  "NEMATIQ1 nx ny c t\n"
// followed by little-endian 64-bit float real-space samples, row-major
// within a component (index jy*nx + jx), component-major.

#pragma once

#include "nematiq/field.hpp"

#include <iosfwd>
#include <string>

namespace nematiq {

void write_snapshot(std::ostream& os, const SpectralField& f, double t);
void write_snapshot(const std::string& path, const SpectralField& f, double t);

struct Snapshot {
    SpectralField field;
    double t = 0.0;
};

Snapshot read_snapshot(std::istream& is, double dealias_fraction = 2.0 / 3.0);
Snapshot read_snapshot(const std::string& path, double dealias_fraction = 2.0 / 3.0);

}  // namespace nematiq
