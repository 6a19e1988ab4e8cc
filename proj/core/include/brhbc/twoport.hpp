// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_TWOPORT_HPP
#define BRHBC_TWOPORT_HPP

#include <complex>
#include <span>
#include <vector>

namespace brhbc {

/// Voltage-current chain (ABCD) two-port:
///   V1 = A V2 + B I2,  I1 = C V2 + D I2
/// with I2 flowing out of port 2 into the load. Chains multiply left to
/// right in signal-flow order. Every reciprocal network built here keeps
/// A*D - B*C = 1.
struct TwoPort {
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 0.0};
    std::complex<double> c{0.0, 0.0};
    std::complex<double> d{1.0, 0.0};
    double frequency_hz = 0.0;

    std::complex<double> determinant() const { return a * d - b * c; }

    static TwoPort identity(double frequency_hz);
    static TwoPort series_impedance(std::complex<double> z, double frequency_hz);
    static TwoPort shunt_admittance(std::complex<double> y, double frequency_hz);
};

/// Product of two sections. Throws std::invalid_argument when the sections
/// are tagged with different frequencies.
TwoPort cascade(const TwoPort& first, const TwoPort& second);

/// Ordered product of a chain. Throws on an empty chain or on a frequency
/// mismatch between members.
TwoPort cascade(std::span<const TwoPort> chain);

} // namespace brhbc

#endif
