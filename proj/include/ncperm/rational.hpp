#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncperm {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator after each arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "num", "num/den" or "-num/den". Throws std::invalid_argument on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always renders as "num/den", including integers ("3/1").
std::string format_rational(const Rational& q);

}  // namespace ncperm
