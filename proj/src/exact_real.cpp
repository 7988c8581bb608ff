#include "hhk/exact_real.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hhk/errors.hpp"

namespace hhk {

namespace {

long long parse_integer(const std::string& s, const std::string& whole) {
    long long v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw InvalidArgument("cannot parse number '" + whole + "'");
    }
    return v;
}

}  // namespace

ExactReal ExactReal::rational(long long num, long long den) {
    if (den == 0) throw InvalidArgument("ExactReal: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr long long kExactLimit = 1LL << 53;
    if (num >= kExactLimit || -num >= kExactLimit || den >= kExactLimit) {
        throw InvalidArgument("ExactReal: numerator/denominator too large");
    }
    ExactReal r;
    r.value_ = static_cast<double>(num) / static_cast<double>(den);
    r.enclosure_ = den == 1 ? Interval(static_cast<double>(num)) : hhk::rational(num, den);
    std::ostringstream os;
    os << num;
    if (den != 1) os << '/' << den;
    r.text_ = os.str();
    return r;
}

ExactReal ExactReal::from_double(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("ExactReal: non-finite value");
    ExactReal r;
    r.value_ = v;
    r.enclosure_ = Interval(v);
    std::ostringstream os;
    os.precision(17);
    os << v;
    r.text_ = os.str();
    return r;
}

ExactReal ExactReal::parse(const std::string& raw) {
    std::string text;
    for (char c : raw) {
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    }
    if (text.empty()) throw InvalidArgument("empty number");

    if (const auto slash = text.find('/'); slash != std::string::npos) {
        return rational(parse_integer(text.substr(0, slash), raw),
                        parse_integer(text.substr(slash + 1), raw));
    }

    // Decimal with optional exponent: [sign] digits [. digits] [e [sign] digits]
    std::string mantissa = text;
    long long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
        mantissa = text.substr(0, e);
        exponent = parse_integer(text.substr(e + 1), raw);
    }
    std::string digits;
    bool negative = false;
    std::size_t i = 0;
    if (i < mantissa.size() && (mantissa[i] == '-' || mantissa[i] == '+')) {
        negative = mantissa[i] == '-';
        ++i;
    }
    long long frac_digits = 0;
    bool seen_point = false;
    for (; i < mantissa.size(); ++i) {
        const char c = mantissa[i];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            throw InvalidArgument("cannot parse number '" + raw + "'");
        }
    }
    if (digits.empty()) throw InvalidArgument("cannot parse number '" + raw + "'");
    while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
    const long long scale_pow = frac_digits - exponent;
    if (digits.size() > 15 || scale_pow > 15 || scale_pow < -15) {
        // Out of exact range: fall back to the nearest double.
        return from_double(std::stod(text));
    }
    long long num = parse_integer(digits, raw);
    long long den = 1;
    for (long long k = 0; k < scale_pow; ++k) den *= 10;
    for (long long k = 0; k < -scale_pow; ++k) num *= 10;
    if (negative) num = -num;
    ExactReal r = rational(num, den);
    r.text_ = raw;
    return r;
}

}  // namespace hhk
