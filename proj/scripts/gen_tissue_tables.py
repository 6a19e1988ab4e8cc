#!/usr/bin/env python3
"""Regenerates the bundled tissue dispersion tables.

Evaluates the four-term Cole-Cole parameterization of Gabriel, Lau &
Gabriel (1996), "The dielectric properties of biological tissues: III",
for dry skin and muscle on 41 log-spaced points over 100 kHz - 1 GHz, and
emits either the CSV files under data/ or the C++ arrays embedded in
core/src/tissue_tables.cpp.

Usage:
    scripts/gen_tissue_tables.py csv  > data/<name>_dispersion.csv
    scripts/gen_tissue_tables.py cpp  > tables.inc
"""

import sys

import numpy as np

EPS0 = 8.8541878128e-12

# (eps_inf, [(delta_eps, tau_s, alpha), ...], sigma_ionic)
TISSUES = {
    "muscle": (4.0, [(50.0, 7.234e-12, 0.10),
                     (7000.0, 353.68e-9, 0.10),
                     (1.2e6, 318.31e-6, 0.10),
                     (2.5e7, 2.274e-3, 0.00)], 0.20),
    "skin_dry": (4.0, [(32.0, 7.234e-12, 0.00),
                       (1100.0, 32.48e-9, 0.20)], 0.0002),
}


def cole_cole(params, f):
    eps_inf, terms, sigma_ionic = params
    omega = 2 * np.pi * f
    eps = np.complex128(eps_inf)
    for delta_eps, tau, alpha in terms:
        eps += delta_eps / (1.0 + (1j * omega * tau) ** (1.0 - alpha))
    eps -= 1j * sigma_ionic / (omega * EPS0)
    return eps.real, -eps.imag * omega * EPS0


def main():
    mode = sys.argv[1] if len(sys.argv) > 1 else "csv"
    freqs = np.logspace(5, 9, 41)
    for name, params in TISSUES.items():
        rows = [cole_cole(params, f) for f in freqs]
        if mode == "cpp":
            cname = "kMuscleTable" if name == "muscle" else "kDrySkinTable"
            print(f"constexpr DispersionSample {cname}[] = {{")
            for f, (er, sig) in zip(freqs, rows):
                print(f"    {{{f:.8e}, {er:.6e}, {sig:.6e}}},")
            print("};\n")
        else:
            print(f"# {name}: Gabriel et al. (1996) four-term Cole-Cole evaluation")
            print("frequency_hz,eps_r,sigma_s_per_m")
            for f, (er, sig) in zip(freqs, rows):
                print(f"{f:.8e},{er:.6e},{sig:.6e}")
            print()


if __name__ == "__main__":
    main()
