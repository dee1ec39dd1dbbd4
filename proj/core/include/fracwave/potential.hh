#pragma once

#include <cmath>
#include <string>

#include "fracwave/errors.hh"

namespace fracwave {

// Nonlinearity selector: f(u) = e^u (Exp) or u^{2k+1} (Power).
// Antiderivative F with F' = f enters the Hamiltonian and the Gibbs
// density; both choices are bounded below by 0.
struct Potential {
  enum class Kind { Exp, Power };
  Kind kind = Kind::Exp;
  int k = 1;  // Power exponent parameter, f = u^{2k+1}

  bool operator==(const Potential&) const = default;

  void validate() const {
    if (kind == Kind::Power && k < 1) throw Error("Power potential needs k >= 1");
  }

  double f(double u) const {
    if (kind == Kind::Exp) return std::exp(u);
    double p = u;
    for (int i = 0; i < k; ++i) p *= u * u;  // u^{2k+1}
    return p;
  }
  double F(double u) const {
    if (kind == Kind::Exp) return std::exp(u);
    double p = u * u;
    for (int i = 0; i < k; ++i) p *= u * u;  // u^{2k+2}
    return p / (2 * k + 2);
  }

  std::string name() const { return kind == Kind::Exp ? "exp" : "power"; }
};

}  // namespace fracwave
