#include "fracwave/fwf1.hh"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace fracwave {

static_assert(std::endian::native == std::endian::little,
              "FWF1 writer assumes a little-endian host");

namespace {
constexpr char kMagic[4] = {'F', 'W', 'F', '1'};

void put_u32(std::ostream& out, uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
uint32_t get_u32(std::istream& in) {
  uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}
}  // namespace

void write_fwf1(const SpectralField& f, std::ostream& out) {
  out.write(kMagic, 4);
  put_u32(out, static_cast<uint32_t>(f.dim));
  put_u32(out, static_cast<uint32_t>(f.maxmode));
  for (const cplx& c : f.coeffs) {
    const double re = c.real(), im = c.imag();
    out.write(reinterpret_cast<const char*>(&re), sizeof re);
    out.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
  if (!out) throw Error("FWF1 write failed");
}

void write_fwf1(const SpectralField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_fwf1(f, out);
}

SpectralField read_fwf1(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw Error("not an FWF1 stream");
  const uint32_t d = get_u32(in);
  const uint32_t K = get_u32(in);
  if (d != 1 && d != 2) throw Error("FWF1: bad dimension " + std::to_string(d));
  SpectralField f(static_cast<int>(d), static_cast<int>(K));
  for (cplx& c : f.coeffs) {
    double re = 0, im = 0;
    in.read(reinterpret_cast<char*>(&re), sizeof re);
    in.read(reinterpret_cast<char*>(&im), sizeof im);
    c = cplx{re, im};
  }
  if (!in) throw Error("FWF1: truncated stream");
  return f;
}

SpectralField read_fwf1(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return read_fwf1(in);
}

}  // namespace fracwave
