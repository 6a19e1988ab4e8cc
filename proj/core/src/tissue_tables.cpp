// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/dielectric.hpp"

#include "brhbc/constants.hpp"

namespace brhbc {
namespace {

// Dispersion tables for dry skin and muscle, 41 log-spaced points over
// 100 kHz - 1 GHz. Generated by scripts/gen_tissue_tables.py from the
// four-term Cole-Cole parameterization of Gabriel, Lau & Gabriel (1996).
// Regenerate with the script rather than editing by hand.
constexpr DispersionSample kMuscleTable[] = {
    {1.00000000e+05, 8.089149e+03, 3.618485e-01},
    {1.25892541e+05, 7.533165e+03, 3.673400e-01},
    {1.58489319e+05, 6.973378e+03, 3.745676e-01},
    {1.99526231e+05, 6.383983e+03, 3.839742e-01},
    {2.51188643e+05, 5.749119e+03, 3.959117e-01},
    {3.16227766e+05, 5.067289e+03, 4.104920e-01},
    {3.98107171e+05, 4.354087e+03, 4.274499e-01},
    {5.01187234e+05, 3.640024e+03, 4.461073e-01},
    {6.30957344e+05, 2.962395e+03, 4.654989e-01},
    {7.94328235e+05, 2.354318e+03, 4.846229e-01},
    {1.00000000e+06, 1.836413e+03, 5.026866e-01},
    {1.25892541e+06, 1.414521e+03, 5.192343e-01},
    {1.58489319e+06, 1.082681e+03, 5.341353e-01},
    {1.99526231e+06, 8.282430e+02, 5.474895e-01},
    {2.51188643e+06, 6.364228e+02, 5.595189e-01},
    {3.16227766e+06, 4.932136e+02, 5.704840e-01},
    {3.98107171e+06, 3.867348e+02, 5.806343e-01},
    {5.01187234e+06, 3.075539e+02, 5.901858e-01},
    {6.30957344e+06, 2.484828e+02, 5.993152e-01},
    {7.94328235e+06, 2.041794e+02, 6.081623e-01},
    {1.00000000e+07, 1.707312e+02, 6.168365e-01},
    {1.25892541e+07, 1.452932e+02, 6.254229e-01},
    {1.58489319e+07, 1.258014e+02, 6.339884e-01},
    {1.99526231e+07, 1.107553e+02, 6.425870e-01},
    {2.51188643e+07, 9.905935e+01, 6.512645e-01},
    {3.16227766e+07, 8.990874e+01, 6.600623e-01},
    {3.98107171e+07, 8.270745e+01, 6.690215e-01},
    {5.01187234e+07, 7.701039e+01, 6.781880e-01},
    {6.30957344e+07, 7.248225e+01, 6.876183e-01},
    {7.94328235e+07, 6.886811e+01, 6.973878e-01},
    {1.00000000e+08, 6.597244e+01, 7.076039e-01},
    {1.25892541e+08, 6.364403e+01, 7.184239e-01},
    {1.58489319e+08, 6.176486e+01, 7.300843e-01},
    {1.99526231e+08, 6.024211e+01, 7.429441e-01},
    {2.51188643e+08, 5.900206e+01, 7.575519e-01},
    {3.16227766e+08, 5.798555e+01, 7.747494e-01},
    {3.98107171e+08, 5.714443e+01, 7.958290e-01},
    {5.01187234e+08, 5.643878e+01, 8.227759e-01},
    {6.30957344e+08, 5.583453e+01, 8.586355e-01},
    {7.94328235e+08, 5.530143e+01, 9.080712e-01},
    {1.00000000e+09, 5.481107e+01, 9.782012e-01},
};

constexpr DispersionSample kDrySkinTable[] = {
    {1.00000000e+05, 1.119213e+03, 4.512827e-04},
    {1.25892541e+05, 1.115433e+03, 5.779688e-04},
    {1.58489319e+05, 1.110730e+03, 7.677210e-04},
    {1.99526231e+05, 1.104855e+03, 1.051232e-03},
    {2.51188643e+05, 1.097491e+03, 1.473511e-03},
    {3.16227766e+05, 1.088231e+03, 2.100001e-03},
    {3.98107171e+05, 1.076558e+03, 3.024813e-03},
    {5.01187234e+05, 1.061829e+03, 4.381325e-03},
    {6.30957344e+05, 1.043256e+03, 6.354981e-03},
    {7.94328235e+05, 1.019913e+03, 9.197112e-03},
    {1.00000000e+06, 9.907595e+02, 1.323691e-02},
    {1.25892541e+06, 9.547274e+02, 1.888608e-02},
    {1.58489319e+06, 9.108624e+02, 2.662781e-02},
    {1.99526231e+06, 8.585494e+02, 3.698018e-02},
    {2.51188643e+06, 7.977870e+02, 5.042711e-02},
    {3.16227766e+06, 7.294471e+02, 6.732077e-02},
    {3.98107171e+06, 6.554032e+02, 8.777742e-02},
    {5.01187234e+06, 5.784188e+02, 1.116054e-01},
    {6.30957344e+06, 5.017616e+02, 1.383041e-01},
    {7.94328235e+06, 4.286416e+02, 1.671469e-01},
    {1.00000000e+07, 3.616703e+02, 1.973228e-01},
    {1.25892541e+07, 3.025251e+02, 2.280826e-01},
    {1.58489319e+07, 2.518906e+02, 2.588436e-01},
    {1.99526231e+07, 2.096230e+02, 2.892322e-01},
    {2.51188643e+07, 1.750201e+02, 3.190730e-01},
    {3.16227766e+07, 1.470901e+02, 3.483486e-01},
    {3.98107171e+07, 1.247604e+02, 3.771507e-01},
    {5.01187234e+07, 1.070096e+02, 4.056380e-01},
    {6.30957344e+07, 9.293644e+01, 4.340053e-01},
    {7.94328235e+07, 8.178257e+01, 4.624653e-01},
    {1.00000000e+08, 7.293031e+01, 4.912419e-01},
    {1.25892541e+08, 6.588673e+01, 5.205722e-01},
    {1.58489319e+08, 6.026368e+01, 5.507186e-01},
    {1.99526231e+08, 5.575784e+01, 5.819907e-01},
    {2.51188643e+08, 5.213296e+01, 6.147812e-01},
    {3.16227766e+08, 4.920511e+01, 6.496233e-01},
    {3.98107171e+08, 4.683072e+01, 6.872798e-01},
    {5.01187234e+08, 4.489720e+01, 7.288830e-01},
    {6.30957344e+08, 4.331556e+01, 7.761549e-01},
    {7.94328235e+08, 4.201459e+01, 8.317528e-01},
    {1.00000000e+09, 4.093626e+01, 8.998112e-01},
};

} // namespace

DielectricSpectrum builtin_muscle_spectrum()
{
    std::vector<DispersionSample> rows(std::begin(kMuscleTable), std::end(kMuscleTable));
    return DielectricSpectrum("muscle", std::move(rows));
}

DielectricSpectrum builtin_dry_skin_spectrum()
{
    std::vector<DispersionSample> rows(std::begin(kDrySkinTable), std::end(kDrySkinTable));
    return DielectricSpectrum("skin_dry", std::move(rows));
}

DielectricSpectrum builtin_copper_spectrum()
{
    // Conducting reference: no dispersion, so two samples bracketing any
    // frequency of interest are enough.
    std::vector<DispersionSample> rows = {
        {1.0, 1.0, constants::copper_conductivity_s_per_m},
        {1e12, 1.0, constants::copper_conductivity_s_per_m},
    };
    return DielectricSpectrum("copper", std::move(rows));
}

} // namespace brhbc
