#pragma once

#include "lsnsum/corrstruct.hpp"
#include "lsnsum/skew_normal.hpp"

namespace lsnsum {

/// Log skew normal L = exp(Y), Y ~ SN(lambda, eps, omega). Parameters are
/// stored in natural-log units; dB views divide by kXi.
struct LsnParams {
  double lambda = 0.0;
  double eps = 0.0;
  double omega = 1.0;

  double eps_db() const { return natural_to_db(eps); }
  double omega_db() const { return natural_to_db(omega); }
  double beta() const { return as_sn().beta(); }
  SnParams as_sn() const { return {lambda, eps, omega}; }

  static LsnParams from_db(double lambda, double eps_db, double omega_db) {
    return {lambda, db_to_natural(eps_db), db_to_natural(omega_db)};
  }
};

void validate(const LsnParams& p);

// Arguments are in the linear domain; l <= 0 has zero density and mass.
double lsn_pdf(double l, const LsnParams& p);
double lsn_cdf(double l, const LsnParams& p);
double lsn_ccdf(double l, const LsnParams& p);
double lsn_log_cdf(double l, const LsnParams& p);
double lsn_log_ccdf(double l, const LsnParams& p);

struct LsnMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and variance of L from the skew normal moment generating function.
/// Throws Overflow when either is not representable.
LsnMoments lsn_moments(const LsnParams& p);

}  // namespace lsnsum
