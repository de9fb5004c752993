// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace angleopt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Exact text form: "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "num", "num/den" or "-num/den" (surrounding whitespace allowed) and
/// canonicalizes. Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

Rational make_rational(long num, long den = 1);

}  // namespace angleopt
