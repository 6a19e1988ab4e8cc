// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#ifndef BRHBC_DIELECTRIC_HPP
#define BRHBC_DIELECTRIC_HPP

#include <complex>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace brhbc {

/// One tabulated dispersion point: relative permittivity and conductivity
/// of a tissue at a single frequency.
struct DielectricPoint {
    double eps_r = 1.0;
    double sigma_s_per_m = 0.0;

    /// Complex relative permittivity eps_r - j*sigma/(omega*eps0).
    std::complex<double> complex_eps_r(double frequency_hz) const;
};

struct DispersionSample {
    double frequency_hz = 0.0;
    double eps_r = 1.0;
    double sigma_s_per_m = 0.0;
};

/// Frequency-dependent dielectric properties of one material, backed by an
/// ordered sample table. Queries between samples interpolate both eps_r and
/// sigma linearly in log10(frequency); tissue dispersion is smooth on log
/// axes, so this is the documented approximation. Queries at a tabulated
/// frequency return the stored pair unchanged.
class DielectricSpectrum {
public:
    DielectricSpectrum(std::string tissue_name, std::vector<DispersionSample> samples);

    const std::string& tissue_name() const { return name_; }
    const std::vector<DispersionSample>& samples() const { return samples_; }
    double min_frequency_hz() const { return samples_.front().frequency_hz; }
    double max_frequency_hz() const { return samples_.back().frequency_hz; }

    /// Throws std::domain_error outside the tabulated range.
    DielectricPoint at(double frequency_hz) const;

private:
    std::string name_;
    std::vector<DispersionSample> samples_;
};

/// One relaxation term of a multi-term Cole-Cole parameterization.
/// alpha = 0 reduces the term to a Debye pole.
struct RelaxationTerm {
    double delta_eps = 0.0;
    double tau_s = 0.0;
    double alpha = 0.0;
};

struct RelaxationParams {
    double eps_inf = 1.0;
    std::vector<RelaxationTerm> terms;
    double sigma_ionic_s_per_m = 0.0;

    /// Throws std::invalid_argument if any invariant is violated
    /// (eps_inf >= 1, tau > 0, 0 <= alpha < 1, sigma_ionic >= 0).
    void validate() const;
};

/// Interpolated table lookup. Precondition: frequency inside the table span.
DielectricPoint complex_permittivity(const DielectricSpectrum& spectrum, double frequency_hz);

/// Analytic Cole-Cole evaluation. Precondition: frequency > 0.
DielectricPoint complex_permittivity(const RelaxationParams& params, double frequency_hz);

/// Parses the dispersion CSV schema
///   frequency_hz,eps_r,sigma_s_per_m
/// with '#' comment lines ignored. Throws parse_error naming the offending
/// line, or std::invalid_argument when a spectrum invariant is violated.
DielectricSpectrum load_dispersion_table(std::istream& source, std::string tissue_name = "custom");

/// Registry resolving tissue labels to spectra. `with_builtins()` registers
/// "skin_dry", "muscle" (bundled Cole-Cole tables over 100 kHz - 1 GHz) and
/// "copper" (eps_r = 1, sigma = 5.8e7 S/m, frequency independent).
class TissueLibrary {
public:
    static TissueLibrary with_builtins();

    void add(DielectricSpectrum spectrum);
    bool contains(const std::string& name) const;
    /// Throws std::invalid_argument for an unregistered label.
    const DielectricSpectrum& at(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, DielectricSpectrum> spectra_;
};

/// Bundled tables. Values generated offline with scripts/gen_tissue_tables.py
/// from the four-term Cole-Cole tissue parameterization of Gabriel, Lau &
/// Gabriel (1996); see data/ for the same tables in CSV form.
DielectricSpectrum builtin_muscle_spectrum();
DielectricSpectrum builtin_dry_skin_spectrum();
DielectricSpectrum builtin_copper_spectrum();

} // namespace brhbc

#endif
