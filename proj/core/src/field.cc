#include "fracwave/field.hh"

#include <algorithm>

namespace fracwave {

static void check_same_shape(const SpectralField& a, const SpectralField& b) {
  if (a.dim != b.dim || a.maxmode != b.maxmode)
    throw Error("field shape mismatch: (d=" + std::to_string(a.dim) + ",K=" +
                std::to_string(a.maxmode) + ") vs (d=" + std::to_string(b.dim) +
                ",K=" + std::to_string(b.maxmode) + ")");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  check_same_shape(*this, o);
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  check_same_shape(*this, o);
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs) c *= a;
  return *this;
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::hermitian_defect() const {
  const ModeBox b = box();
  double worst = 0.0;
  for (long long i = 0; i < b.size(); ++i) {
    const LatticeMode m = b.mode(i);
    const cplx d = coeffs[i] - std::conj(coeffs[b.index(m.negated())]);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

void SpectralField::symmetrize() {
  const ModeBox b = box();
  for (long long i = 0; i < b.size(); ++i) {
    const LatticeMode m = b.mode(i);
    if (m.is_zero()) {
      coeffs[i] = cplx{coeffs[i].real(), 0.0};
    } else if (m.canonical()) {
      const long long j = b.index(m.negated());
      const cplx avg = 0.5 * (coeffs[i] + std::conj(coeffs[j]));
      coeffs[i] = avg;
      coeffs[j] = std::conj(avg);
    }
  }
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

}  // namespace fracwave
