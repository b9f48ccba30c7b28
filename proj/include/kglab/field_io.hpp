#pragma once

#include <iosfwd>
#include <string>

#include "kglab/field.hpp"

namespace kglab {

// Binary layout, little-endian, no padding:
//   int32 d, int32 N, float64 L, int32 representation (0 physical, 1 frequency),
//   then N^d pairs of float64 (re, im) in row-major order.
void write_field_binary(std::ostream& os, const SpectralField& field);
SpectralField read_field_binary(std::istream& is);
void save_field(const std::string& path, const SpectralField& field);
SpectralField load_field(const std::string& path);

/// CSV with columns x0[,x1[,x2]],re,im (physical) or xi0[,...],re,im (frequency).
/// Refused above 65536 points.
void write_field_csv(std::ostream& os, const SpectralField& field);

}  // namespace kglab
