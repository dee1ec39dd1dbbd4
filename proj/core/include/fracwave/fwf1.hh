#pragma once

#include <iosfwd>
#include <string>

#include "fracwave/field.hh"

namespace fracwave {

// Binary field format FWF1: magic bytes "FWF1", little-endian u32 d,
// u32 K, then (2K+1)^d coefficients as little-endian f64 (re, im) pairs
// in lexicographic mode order.
void write_fwf1(const SpectralField& f, std::ostream& out);
void write_fwf1(const SpectralField& f, const std::string& path);
SpectralField read_fwf1(std::istream& in);
SpectralField read_fwf1(const std::string& path);

}  // namespace fracwave
