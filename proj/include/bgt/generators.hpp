#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bgt/instance.hpp"
#include "bgt/rational.hpp"

namespace bgt {

// Instance families. Random ones draw raw 64-bit words from mt19937_64 and
// reduce them by modulo, so a seed yields the same rates on every platform.
//
//   dyadic-random       powers of 1/2 summing to 1 (random halvings), shuffled
//   uniform-normalized  integer weights uniform in [1, 1000], divided by their sum
//   two-bamboo(eps)     (1 - eps, eps); eps defaults to 2^-10
//   regular(k)          1/2, 1/4, ..., 2^-(k-1), 2^-(k-1); k defaults to n
//   figure4             1/2, 1/8, 1/8, 1/8, 1/16, 1/16
struct GeneratorSpec {
    std::string name;
    std::optional<Rational> param;
};

// Accepts "name", "name(arg)" and "name:arg"; arg is a rational or "2^-k".
// Throws std::invalid_argument for unknown names or malformed arguments.
GeneratorSpec parse_generator(std::string_view spec);

// Rates in generation (input) order.
std::vector<Rational> generate_rates(const GeneratorSpec& spec, std::size_t n, std::uint64_t seed);
Instance generate(const GeneratorSpec& spec, std::size_t n, std::uint64_t seed);

std::vector<Rational> dyadic_random(std::size_t n, std::uint64_t seed, std::int64_t max_exponent = 40);
std::vector<Rational> uniform_normalized(std::size_t n, std::uint64_t seed);
std::vector<Rational> two_bamboo(const Rational& eps);
std::vector<Rational> regular(std::size_t k);
std::vector<Rational> figure4();

// "p/q", "p", "2^k" or "2^-k".
Rational parse_rational_arg(std::string_view text);

}  // namespace bgt
