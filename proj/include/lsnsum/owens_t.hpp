#pragma once

namespace lsnsum {

/// Owen's T function
///
///   T(h, a) = 1/(2 pi) * integral_0^a exp(-h^2 (1 + t^2) / 2) / (1 + t^2) dt
///
/// Absolute error below 1e-12 for all finite (h, a); the factor exp(-h^2/2)
/// is pulled out of the integral, so the result also carries full relative
/// accuracy until it underflows. T(-h, a) = T(h, a) and T(h, -a) = -T(h, a)
/// hold exactly.
double owens_t(double h, double a);

namespace detail {

/// J(g, a) = integral_0^a exp(-g^2 t^2 / 2) / (1 + t^2) dt for g >= 0 and
/// a in [0, +inf]. T(g, a) = exp(-g^2/2) / (2 pi) * J(g, a).
double owens_integral(double g, double a);

/// exp(g^2 a^2 / 2) * integral_a^inf exp(-g^2 t^2 / 2) / (1 + t^2) dt, for
/// g >= 0 and a >= 0. Used for far lower tails of the skew normal.
double owens_upper_integral_scaled(double g, double a);

}  // namespace detail

}  // namespace lsnsum
