#pragma once

#include "wcl/chaos.hpp"
#include "wcl/direction.hpp"
#include "wcl/report.hpp"

namespace wcl {

/// Directional derivative: on the basis, D_{e_i} H_a = a_i H_{a - delta_i},
/// extended linearly in both arguments.
ChaosElement derive(const ChaosElement& f, const Direction& theta);
ChaosElement derive_coord(const ChaosElement& f, int coord);

/// The Wiener integral of theta as a chaos element: sum_i theta_i H_{delta_i}.
ChaosElement wiener_integral(const Direction& theta);

/// Adjoint (creation): D*_theta F = -D_theta F + [theta] * F.
ChaosElement skorokhod(const ChaosElement& f, const Direction& theta);

/// e^{D_theta} F = sum_{n<=deg F} D_theta^n F / n!  (finite on polynomials).
ChaosElement exp_derive(const ChaosElement& f, const Direction& theta);

/// (D*_theta)^n applied to 1, by iterating the raw definition.
ChaosElement skorokhod_power_one(const Direction& theta, int n);

/// Degree-N partial sum of e^{D*_theta} 1.
struct TruncatedExponential {
  ChaosElement element;
  int order = 0;
  Direction direction;
};
TruncatedExponential exp_skorokhod_one(const Direction& theta, int order);

/// E[D_theta F * G] vs E[F * D*_theta G], both exact.
VerificationReport verify_adjoint(const ChaosElement& f, const ChaosElement& g,
                                  const Direction& theta);

/// Cameron-Martin: E[e^{D_theta} F] vs <F, e^{D*_theta} 1 truncated at deg F>.
VerificationReport verify_cm(const ChaosElement& f, const Direction& theta);

}  // namespace wcl
