#include "bgt/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace bgt {

Rational parse_rational_arg(std::string_view text) {
    if (text.rfind("2^", 0) == 0) {
        std::string_view e = text.substr(2);
        if (e.empty()) throw std::invalid_argument("bad power of two '" + std::string(text) + "'");
        std::size_t pos = 0;
        long long k = 0;
        try {
            k = std::stoll(std::string(e), &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad power of two '" + std::string(text) + "'");
        }
        if (pos != e.size() || k < -100000 || k > 100000)
            throw std::invalid_argument("bad power of two '" + std::string(text) + "'");
        return Rational::pow2(k);
    }
    return Rational::parse(text);
}

GeneratorSpec parse_generator(std::string_view spec) {
    GeneratorSpec g;
    std::string_view arg;
    if (auto p = spec.find('('); p != std::string_view::npos) {
        if (spec.back() != ')') throw std::invalid_argument("generator '" + std::string(spec) + "': missing ')'");
        g.name = spec.substr(0, p);
        arg = spec.substr(p + 1, spec.size() - p - 2);
    } else if (auto c = spec.find(':'); c != std::string_view::npos) {
        g.name = spec.substr(0, c);
        arg = spec.substr(c + 1);
    } else {
        g.name = spec;
    }
    static const std::vector<std::string> known{"dyadic-random", "uniform-normalized", "two-bamboo", "regular",
                                                "figure4"};
    if (std::find(known.begin(), known.end(), g.name) == known.end())
        throw std::invalid_argument("unknown generator '" + g.name + "'");
    if (!arg.empty()) {
        if (g.name != "two-bamboo" && g.name != "regular")
            throw std::invalid_argument("generator '" + g.name + "' takes no argument");
        g.param = parse_rational_arg(arg);
    }
    return g;
}

namespace {

void shuffle(std::vector<Rational>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

std::vector<Rational> dyadic_random(std::size_t n, std::uint64_t seed, std::int64_t max_exponent) {
    if (n == 0) throw std::invalid_argument("dyadic-random: n must be at least 1");
    if (max_exponent < 64 && n > (std::uint64_t{1} << max_exponent))
        throw std::invalid_argument("dyadic-random: n exceeds 2^max_exponent");
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> e{0};
    e.reserve(n);
    while (e.size() < n) {
        std::size_t i = rng() % e.size();
        if (e[i] >= max_exponent) continue;
        ++e[i];
        e.push_back(e[i]);
    }
    std::vector<Rational> out;
    out.reserve(n);
    for (auto x : e) out.push_back(Rational::pow2(-x));
    shuffle(out, rng);
    return out;
}

std::vector<Rational> uniform_normalized(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("uniform-normalized: n must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> w(n);
    std::int64_t total = 0;
    for (auto& x : w) total += (x = 1 + static_cast<std::int64_t>(rng() % 1000));
    std::vector<Rational> out;
    out.reserve(n);
    for (auto x : w) out.emplace_back(x, total);
    return out;
}

std::vector<Rational> two_bamboo(const Rational& eps) {
    if (eps.sign() <= 0 || eps >= Rational(1)) throw std::invalid_argument("two-bamboo: eps must lie in (0, 1)");
    return {Rational(1) - eps, eps};
}

std::vector<Rational> regular(std::size_t k) {
    if (k == 0) throw std::invalid_argument("regular: k must be at least 1");
    if (k == 1) return {Rational(1)};
    std::vector<Rational> out;
    for (std::size_t j = 1; j < k; ++j) out.push_back(Rational::pow2(-static_cast<std::int64_t>(j)));
    out.push_back(out.back());
    return out;
}

std::vector<Rational> figure4() {
    return {Rational(1, 2), Rational(1, 8), Rational(1, 8), Rational(1, 8), Rational(1, 16), Rational(1, 16)};
}

std::vector<Rational> generate_rates(const GeneratorSpec& spec, std::size_t n, std::uint64_t seed) {
    if (spec.name == "dyadic-random") return dyadic_random(n, seed);
    if (spec.name == "uniform-normalized") return uniform_normalized(n, seed);
    if (spec.name == "two-bamboo") return two_bamboo(spec.param ? *spec.param : Rational::pow2(-10));
    if (spec.name == "regular") {
        if (!spec.param) return regular(n);
        if (!spec.param->is_integer() || spec.param->sign() <= 0)
            throw std::invalid_argument("regular: k must be a positive integer");
        return regular(static_cast<std::size_t>(floor_int(*spec.param)));
    }
    if (spec.name == "figure4") return figure4();
    throw std::invalid_argument("unknown generator '" + spec.name + "'");
}

Instance generate(const GeneratorSpec& spec, std::size_t n, std::uint64_t seed) {
    auto r = generate_rates(spec, n, seed);
    return Instance::canonicalize(r);
}

}  // namespace bgt
