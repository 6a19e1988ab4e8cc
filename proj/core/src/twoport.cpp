// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/twoport.hpp"

#include "brhbc/text_io.hpp"

#include <cmath>
#include <stdexcept>

namespace brhbc {

namespace {

bool same_frequency(double lhs, double rhs)
{
    return lhs == rhs || std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs));
}

} // namespace

TwoPort TwoPort::identity(double frequency_hz)
{
    return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, frequency_hz};
}

TwoPort TwoPort::series_impedance(std::complex<double> z, double frequency_hz)
{
    return {{1.0, 0.0}, z, {0.0, 0.0}, {1.0, 0.0}, frequency_hz};
}

TwoPort TwoPort::shunt_admittance(std::complex<double> y, double frequency_hz)
{
    return {{1.0, 0.0}, {0.0, 0.0}, y, {1.0, 0.0}, frequency_hz};
}

TwoPort cascade(const TwoPort& first, const TwoPort& second)
{
    if (!same_frequency(first.frequency_hz, second.frequency_hz))
        throw std::invalid_argument("cascade: frequency mismatch (" + format_double(first.frequency_hz) +
                                    " Hz vs " + format_double(second.frequency_hz) + " Hz)");
    return {first.a * second.a + first.b * second.c,
            first.a * second.b + first.b * second.d,
            first.c * second.a + first.d * second.c,
            first.c * second.b + first.d * second.d,
            first.frequency_hz};
}

TwoPort cascade(std::span<const TwoPort> chain)
{
    if (chain.empty())
        throw std::invalid_argument("cascade: empty chain");
    TwoPort product = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i)
        product = cascade(product, chain[i]);
    return product;
}

} // namespace brhbc
