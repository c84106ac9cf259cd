#pragma once

#include <string>

#include <gmpxx.h>

#include "dyncert/core/dyadic.hpp"
#include "dyncert/core/interval.hpp"

namespace dyncert {

/// Directed-rounding transcendental bounds backed by MPFR. `bits` is the
/// binary precision of the intermediate float; results are exact dyadics with
/// lower <= true value <= upper.
Dyadic log_lower(const mpq_class& x, long bits = 96);
Dyadic log_upper(const mpq_class& x, long bits = 96);
Interval log_enclosure(const mpq_class& x, long bits = 96);

Dyadic sqrt_lower(const mpq_class& x, long bits = 96);
Dyadic sqrt_upper(const mpq_class& x, long bits = 96);

Interval pi_enclosure(long bits = 96);

/// cos(2 pi k / n), sin(2 pi k / n) rounded to nearest at `bits` precision.
Dyadic cos_turn_nearest(long k, long n, long bits);
Dyadic sin_turn_nearest(long k, long n, long bits);

/// Directed conversions of a rational to double.
double to_double_down(const mpq_class& q);
double to_double_up(const mpq_class& q);
double to_double_nearest(const mpq_class& q);

/// Parses "p/q", "p", or a decimal like "-0.25" into an exact rational.
mpq_class parse_rational(const std::string& text);
std::string rational_string(const mpq_class& q);

}  // namespace dyncert
