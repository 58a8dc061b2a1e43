#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace hauslab {

/// Nonnegative real or +infinity. Infinity only comes out of an inf over the
/// empty set, e.g. d(x, X \ X).
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double value) : value_(value) {}

    static constexpr ExtendedReal infinity() {
        return ExtendedReal(std::numeric_limits<double>::infinity());
    }

    constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
    constexpr bool is_finite() const { return !is_infinite(); }

    /// The raw value; +inf when infinite.
    constexpr double value() const { return value_; }

    friend constexpr auto operator<=>(ExtendedReal, ExtendedReal) = default;
    friend constexpr bool operator==(ExtendedReal, ExtendedReal) = default;

    friend constexpr bool operator==(ExtendedReal a, double b) { return a.value_ == b; }
    friend constexpr auto operator<=>(ExtendedReal a, double b) { return a.value_ <=> b; }

private:
    double value_ = 0.0;
};

inline ExtendedReal max(ExtendedReal a, ExtendedReal b) { return a < b ? b : a; }
inline ExtendedReal min(ExtendedReal a, ExtendedReal b) { return b < a ? b : a; }

/// "inf" for infinity, otherwise the shortest round-trip decimal form.
std::string to_string(ExtendedReal v);

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

}  // namespace hauslab
