#pragma once

#include <string>

#include "hhk/interval.hpp"

namespace hhk {

/// A real parameter known exactly as a rational p/q, kept both as the nearest
/// double and as an outward-rounded enclosure. Decimal input such as
/// "0.083333" is read as 83333/1000000, not through binary rounding.
class ExactReal {
public:
    ExactReal() = default;
    static ExactReal rational(long long num, long long den);
    static ExactReal from_double(double v);
    /// Accepts "p/q", decimal and scientific notation; throws InvalidArgument.
    static ExactReal parse(const std::string& text);

    double value() const { return value_; }
    const Interval& enclosure() const { return enclosure_; }
    const std::string& text() const { return text_; }
    bool is_zero() const { return value_ == 0.0 && enclosure_.lo() == 0.0 && enclosure_.hi() == 0.0; }

private:
    double value_ = 0.0;
    Interval enclosure_{0.0};
    std::string text_ = "0";
};

}  // namespace hhk
