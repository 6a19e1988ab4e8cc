// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/dielectric.hpp"

#include "brhbc/constants.hpp"
#include "brhbc/errors.hpp"
#include "brhbc/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brhbc {

std::complex<double> DielectricPoint::complex_eps_r(double frequency_hz) const
{
    const double omega = 2.0 * constants::pi * frequency_hz;
    return {eps_r, -sigma_s_per_m / (omega * constants::eps0_f_per_m)};
}

DielectricSpectrum::DielectricSpectrum(std::string tissue_name, std::vector<DispersionSample> samples)
    : name_(std::move(tissue_name)), samples_(std::move(samples))
{
    if (samples_.size() < 2)
        throw std::invalid_argument("dielectric spectrum '" + name_ + "': needs at least 2 samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!(s.frequency_hz > 0.0))
            throw std::invalid_argument("dielectric spectrum '" + name_ + "': non-positive frequency");
        if (!(s.eps_r >= 1.0))
            throw std::invalid_argument("dielectric spectrum '" + name_ + "': eps_r < 1 at " +
                                        format_double(s.frequency_hz) + " Hz");
        if (!(s.sigma_s_per_m >= 0.0))
            throw std::invalid_argument("dielectric spectrum '" + name_ + "': sigma < 0 at " +
                                        format_double(s.frequency_hz) + " Hz");
        if (i > 0 && !(s.frequency_hz > samples_[i - 1].frequency_hz))
            throw std::invalid_argument("dielectric spectrum '" + name_ +
                                        "': frequencies must be strictly increasing");
    }
}

DielectricPoint DielectricSpectrum::at(double frequency_hz) const
{
    if (frequency_hz < min_frequency_hz() || frequency_hz > max_frequency_hz())
        throw std::domain_error("dielectric spectrum '" + name_ + "': frequency " +
                                format_double(frequency_hz) + " Hz outside tabulated range [" +
                                format_double(min_frequency_hz()) + ", " +
                                format_double(max_frequency_hz()) + "]");

    const auto it = std::lower_bound(samples_.begin(), samples_.end(), frequency_hz,
                                     [](const DispersionSample& s, double f) { return s.frequency_hz < f; });
    // Exact hits return the tabulated pair untouched.
    if (it != samples_.end() && it->frequency_hz == frequency_hz)
        return {it->eps_r, it->sigma_s_per_m};

    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (std::log10(frequency_hz) - std::log10(lo.frequency_hz)) /
                     (std::log10(hi.frequency_hz) - std::log10(lo.frequency_hz));
    return {lo.eps_r + t * (hi.eps_r - lo.eps_r),
            lo.sigma_s_per_m + t * (hi.sigma_s_per_m - lo.sigma_s_per_m)};
}

void RelaxationParams::validate() const
{
    if (!(eps_inf >= 1.0))
        throw std::invalid_argument("relaxation params: eps_inf must be >= 1");
    if (!(sigma_ionic_s_per_m >= 0.0))
        throw std::invalid_argument("relaxation params: sigma_ionic must be >= 0");
    for (const auto& term : terms) {
        if (!(term.tau_s > 0.0))
            throw std::invalid_argument("relaxation params: tau must be > 0");
        if (!(term.alpha >= 0.0 && term.alpha < 1.0))
            throw std::invalid_argument("relaxation params: alpha must lie in [0, 1)");
    }
}

DielectricPoint complex_permittivity(const DielectricSpectrum& spectrum, double frequency_hz)
{
    return spectrum.at(frequency_hz);
}

DielectricPoint complex_permittivity(const RelaxationParams& params, double frequency_hz)
{
    params.validate();
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("complex_permittivity: frequency must be > 0");

    const double omega = 2.0 * constants::pi * frequency_hz;
    std::complex<double> eps_hat(params.eps_inf, 0.0);
    for (const auto& term : params.terms) {
        const std::complex<double> jwt(0.0, omega * term.tau_s);
        eps_hat += term.delta_eps / (1.0 + std::pow(jwt, 1.0 - term.alpha));
    }
    eps_hat -= std::complex<double>(0.0, params.sigma_ionic_s_per_m / (omega * constants::eps0_f_per_m));
    return {eps_hat.real(), -eps_hat.imag() * omega * constants::eps0_f_per_m};
}

DielectricSpectrum load_dispersion_table(std::istream& source, std::string tissue_name)
{
    const CsvTable table = read_csv(source, {"frequency_hz", "eps_r", "sigma_s_per_m"});
    std::vector<DispersionSample> rows;
    rows.reserve(table.rows.size());
    for (const auto& r : table.rows)
        rows.push_back({r[0], r[1], r[2]});
    return DielectricSpectrum(std::move(tissue_name), std::move(rows));
}

TissueLibrary TissueLibrary::with_builtins()
{
    TissueLibrary lib;
    lib.add(builtin_dry_skin_spectrum());
    lib.add(builtin_muscle_spectrum());
    lib.add(builtin_copper_spectrum());
    return lib;
}

void TissueLibrary::add(DielectricSpectrum spectrum)
{
    const std::string name = spectrum.tissue_name();
    spectra_.insert_or_assign(name, std::move(spectrum));
}

bool TissueLibrary::contains(const std::string& name) const
{
    return spectra_.count(name) != 0;
}

const DielectricSpectrum& TissueLibrary::at(const std::string& name) const
{
    const auto it = spectra_.find(name);
    if (it == spectra_.end())
        throw std::invalid_argument("unknown tissue '" + name + "'");
    return it->second;
}

std::vector<std::string> TissueLibrary::names() const
{
    std::vector<std::string> out;
    out.reserve(spectra_.size());
    for (const auto& [name, spectrum] : spectra_)
        out.push_back(name);
    return out;
}

} // namespace brhbc
