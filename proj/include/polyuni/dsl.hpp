#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polyuni/automorphism.hpp"
#include "polyuni/holo.hpp"

namespace polyuni {

/// Function expression language (whitespace-insensitive):
///
///   expr     := factor { "*" factor }
///   factor   := primary { "^" INT }
///   primary  := "const" COMPLEX | "z" "[" INT "]"
///             | "blaschke" "(" COMPLEX "," REAL ")" "[" INT "]"
///             | "compose" "(" expr "," autospec ")" | "(" expr ")"
///   autospec := "auto" "{" "p=" INTLIST "," "a=" COMPLEXLIST "," "t=" REALLIST "}"
///   COMPLEX  := REAL ("+"|"-") REAL "i"
///
/// Coordinates and permutation entries are 1-based.
HoloFunction parse_function(std::string_view text, std::size_t n);

PolydiskAutomorphism parse_automorphism(std::string_view text, std::size_t n);

/// Bracketed lists used by the config file.
std::vector<Complex> parse_complex_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);
std::vector<std::size_t> parse_index_list(std::string_view text);  // 1-based in, 0-based out
std::vector<std::int64_t> parse_integer_list(std::string_view text);
Complex parse_complex(std::string_view text);

/// 17 significant digits; exact for binary64.
std::string format_real(double v);
std::string format_complex(Complex z);

std::string to_dsl(const HoloFunction& f);
std::string to_dsl(const PolydiskAutomorphism& phi);

}  // namespace polyuni
