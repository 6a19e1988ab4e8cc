// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the brhbc authors

#include "brhbc/body_line.hpp"

#include "brhbc/constants.hpp"
#include "brhbc/errors.hpp"
#include "brhbc/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brhbc {

using std::complex;
namespace k = constants;

namespace {

const complex<double> kJ(0.0, 1.0);

complex<double> series_capacitance(complex<double> c1, complex<double> c2)
{
    return c1 * c2 / (c1 + c2);
}

struct SubSegment {
    double dl_m = 0.0;
    double radius_m = 0.0;
    double cross_section_m2 = 0.0;
    double r_cond_ohm_per_m = 0.0;
    TwoPort step;        // shunt-split C_B share around the exact segment matrix
    double shunt_cb_f = 0.0;
};

// A wearable device seen from (body port, earth). The signal plate couples
// to the body surface at the full port potential; the floating ground
// plate is a capacitive probe whose return capacitance splits between the
// body's local field (view factor w, equipotential phi * V_port) and
// distant earth (1 - w).
struct DeviceCoupling {
    complex<double> y_couple;   // signal plate to body
    complex<double> y_near;     // ground plate to the local-field anchor
    complex<double> y_far;      // ground plate to earth
    double phi = 1.0;           // local-field potential fraction
};

struct TxReduction {
    DeviceCoupling dev;
    complex<double> v_thevenin; // for V_in = 1
    complex<double> z_thevenin;
    double r_source = 0.0;
};

struct RxReduction {
    complex<double> y_load;       // admittance terminating the line
    complex<double> pickoff;      // V_Rx = pickoff * V(line end)
    complex<double> v_sig, v_gnd; // per unit line-end voltage
};

// Potential fraction of the body-surface voltage at radial distance
// `separation` from the surface, from the image-line potential of a wire
// over ground: V(r)/V(a) = 1 - ln(r/a)/acosh(h/a). The floating ground
// plate of a device rides at this equipotential rather than at earth.
double local_field_fraction(const BodySegment& segment, double separation_m)
{
    const double a = segment.outer_radius_m;
    const double geometry = std::acosh(segment.axis_height_m() / a);
    const double phi = 1.0 - std::log((a + separation_m) / a) / geometry;
    return std::clamp(phi, 0.0, 1.0);
}

DeviceCoupling couple_device(const DeviceGeometry& device, const BodySegment& end_segment,
                             double f)
{
    const double omega = 2.0 * k::pi * f;
    const double c_return = return_path_capacitance_f(device, device.ground_distance_m);
    const double view =
        end_segment.outer_radius_m / (end_segment.outer_radius_m + device.plate_separation_m);

    DeviceCoupling dev;
    dev.y_couple = kJ * omega * device.coupling_capacitance_f();
    dev.y_near = kJ * omega * (view * c_return);
    dev.y_far = kJ * omega * ((1.0 - view) * c_return);
    dev.phi = local_field_fraction(end_segment, device.plate_separation_m);
    return dev;
}

// Solves the transmitter-side three-unknown network for given (V_in, V_P):
// returns (V_sig, V_gnd, I_src).
struct TxState {
    complex<double> v_sig, v_gnd, i_src;
};

TxState solve_tx_network(const TxReduction& tx, complex<double> v_in, complex<double> v_port)
{
    // KCL signal plate:  Yc (Vs - Vp) = I_src
    // KCL ground plate:  Ynear (Vg - phi Vp) + Yfar Vg + I_src = 0
    // Source branch:     Vs - Vg + I_src Rs = V_in
    // Substituting I_src leaves a 2x2 in (Vs, Vg).
    const DeviceCoupling& dev = tx.dev;
    const complex<double> m11 = dev.y_couple;
    const complex<double> m12 = dev.y_near + dev.y_far;
    const complex<double> b1 = dev.y_couple * v_port + dev.y_near * dev.phi * v_port;
    const complex<double> m21 = 1.0 + tx.r_source * dev.y_couple;
    const complex<double> m22 = complex<double>(-1.0, 0.0);
    const complex<double> b2 = v_in + tx.r_source * dev.y_couple * v_port;
    const complex<double> det = m11 * m22 - m12 * m21;

    TxState state;
    state.v_sig = (b1 * m22 - m12 * b2) / det;
    state.v_gnd = (m11 * b2 - b1 * m21) / det;
    state.i_src = dev.y_couple * (state.v_sig - v_port);
    return state;
}

// Current delivered into the body feed node for a given port voltage.
complex<double> tx_port_current(const TxReduction& tx, const TxState& state, complex<double> v_port)
{
    return tx.dev.y_couple * (state.v_sig - v_port) +
           tx.dev.y_near * (state.v_gnd - tx.dev.phi * v_port);
}

} // namespace

void BodySegment::validate() const
{
    if (!(length_m > 0.0))
        throw std::invalid_argument("body segment: length must be > 0");
    if (!(outer_radius_m > 0.0))
        throw std::invalid_argument("body segment: outer_radius must be > 0");
    if (!(skin_thickness_m > 0.0 && skin_thickness_m < outer_radius_m))
        throw std::invalid_argument("body segment: skin_thickness must lie in (0, outer_radius)");
    if (!(height_above_ground_m > 0.0))
        throw std::invalid_argument("body segment: height_above_ground must be > 0");
}

double PerUnitLengthParams::phase_velocity_m_per_s() const
{
    return 1.0 / std::sqrt(l_h_per_m * c_f_per_m);
}

complex<double> PerUnitLengthParams::series_impedance_per_m(double frequency_hz) const
{
    return {r_ohm_per_m, 2.0 * k::pi * frequency_hz * l_h_per_m};
}

complex<double> PerUnitLengthParams::shunt_admittance_per_m(double frequency_hz) const
{
    return {g_s_per_m, 2.0 * k::pi * frequency_hz * c_f_per_m};
}

complex<double> PerUnitLengthParams::propagation_constant_per_m(double frequency_hz) const
{
    return std::sqrt(series_impedance_per_m(frequency_hz) * shunt_admittance_per_m(frequency_hz));
}

complex<double> PerUnitLengthParams::characteristic_impedance_ohm(double frequency_hz) const
{
    return std::sqrt(series_impedance_per_m(frequency_hz) / shunt_admittance_per_m(frequency_hz));
}

PerUnitLengthParams pul_params(const BodySegment& segment, double frequency_hz,
                               const TissueLibrary& tissues)
{
    segment.validate();
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("pul_params: frequency must be > 0");

    const double a = segment.outer_radius_m;
    const double h_axis = segment.axis_height_m();
    if (!(h_axis > a))
        throw std::invalid_argument("pul_params: axis height must exceed the radius");

    const double geometry = std::acosh(h_axis / a);
    const double omega = 2.0 * k::pi * frequency_hz;

    PerUnitLengthParams pul;
    pul.l_h_per_m = k::mu0_h_per_m / (2.0 * k::pi) * geometry;
    const double c_air = 2.0 * k::pi * k::eps0_f_per_m / geometry;

    const DielectricPoint outer = tissues.at(segment.tissue_outer).at(frequency_hz);
    const DielectricPoint inner = tissues.at(segment.tissue_inner).at(frequency_hz);

    // Axial conduction: outer shell annulus in parallel with the interior.
    const double a_in = a - segment.skin_thickness_m;
    const double shell_area = k::pi * (a * a - a_in * a_in);
    const double core_area = k::pi * a_in * a_in;
    const double conductance_area = outer.sigma_s_per_m * shell_area + inner.sigma_s_per_m * core_area;
    if (!(conductance_area > 0.0))
        throw model_error("pul_params: segment cross-section is non-conductive");
    const double r_dc = 1.0 / conductance_area;

    // Skin-depth limited resistance, current crowding into the outer layer.
    // The smooth 2-norm blend keeps R' differentiable through the crossover.
    double r_hf = 0.0;
    if (outer.sigma_s_per_m > 0.0) {
        const double delta = std::sqrt(2.0 / (omega * k::mu0_h_per_m * outer.sigma_s_per_m));
        r_hf = 1.0 / (outer.sigma_s_per_m * 2.0 * k::pi * a * delta);
    }
    pul.r_ohm_per_m = std::hypot(r_dc, r_hf);

    // Shunt branch: air gap capacitance in series with the lossy outer
    // shell (cylindrical capacitor across the shell thickness).
    const complex<double> eps_shell = outer.complex_eps_r(frequency_hz);
    const complex<double> c_shell =
        2.0 * k::pi * k::eps0_f_per_m * eps_shell / std::log(a / a_in);
    const complex<double> c_series = series_capacitance(complex<double>(c_air, 0.0), c_shell);

    pul.c_f_per_m = c_series.real();
    pul.g_s_per_m = std::max(0.0, -omega * c_series.imag());
    return pul;
}

TwoPort segment_twoport(const PerUnitLengthParams& pul, double dl_m, double frequency_hz)
{
    if (!(dl_m > 0.0))
        throw std::invalid_argument("segment_twoport: dl must be > 0");

    const complex<double> gamma_dl = pul.propagation_constant_per_m(frequency_hz) * dl_m;
    const complex<double> z0 = pul.characteristic_impedance_ohm(frequency_hz);
    const complex<double> ch = std::cosh(gamma_dl);
    const complex<double> sh = std::sinh(gamma_dl);
    return {ch, z0 * sh, sh / z0, ch, frequency_hz};
}

void TerminationNetwork::validate() const
{
    if (!r_l_ohm && !c_l_f)
        throw std::invalid_argument("termination: at least one of R_L, C_L must be present");
    if (r_l_ohm && !(*r_l_ohm > 0.0))
        throw std::invalid_argument("termination: R_L must be > 0");
    if (c_l_f && !(*c_l_f > 0.0))
        throw std::invalid_argument("termination: C_L must be > 0");
}

complex<double> TerminationNetwork::admittance_s(double frequency_hz) const
{
    complex<double> y(0.0, 0.0);
    if (r_l_ohm)
        y += 1.0 / *r_l_ohm;
    if (c_l_f)
        y += kJ * 2.0 * k::pi * frequency_hz * *c_l_f;
    return y;
}

void DeviceGeometry::validate() const
{
    if (!(signal_plate_radius_m > 0.0) || !(plate_separation_m > 0.0) ||
        !(ground_plate_area_m2 > 0.0) || !(ground_plate_thickness_m > 0.0))
        throw std::invalid_argument("device geometry: all dimensions must be > 0");
    if (!(ground_distance_m > 0.0))
        throw std::invalid_argument("device geometry: ground_distance must be > 0");
    if (!(skin_gap_m > 0.0))
        throw std::invalid_argument("device geometry: skin_gap must be > 0");
}

double DeviceGeometry::coupling_capacitance_f() const
{
    const double area = k::pi * signal_plate_radius_m * signal_plate_radius_m;
    return k::eps0_f_per_m * area / skin_gap_m;
}

double return_path_capacitance_f(const DeviceGeometry& device, double ground_distance_m)
{
    if (!(ground_distance_m > 0.0))
        throw std::invalid_argument("return_path_capacitance: ground_distance must be > 0");
    const double a_eq = std::sqrt(device.ground_plate_area_m2 / k::pi);
    const double self_floor = 8.0 * k::eps0_f_per_m * a_eq;
    const double plate_term = k::eps0_f_per_m * device.ground_plate_area_m2 / ground_distance_m;
    return self_floor + plate_term;
}

void BodyGroundCoupling::validate() const
{
    if (!(c_b_f > 0.0))
        throw std::invalid_argument("ground coupling: C_B must be > 0");
}

void LineOptions::validate() const
{
    if (n_segments < 1)
        throw std::invalid_argument("line options: n_segments must be >= 1");
    if (!(radiation_factor >= 0.0))
        throw std::invalid_argument("line options: radiation_factor must be >= 0");
    if (!(source_resistance_ohm >= 0.0))
        throw std::invalid_argument("line options: source_resistance must be >= 0");
}

complex<double> LineSolution::axial_current_moment_a_m() const
{
    complex<double> moment(0.0, 0.0);
    for (std::size_t s = 0; s < dz_m.size(); ++s)
        moment += 0.5 * (i_node[s] + i_node[s + 1]) * dz_m[s];
    return moment;
}

void BodyChannel::validate() const
{
    if (segments.empty())
        throw std::invalid_argument("body channel: needs at least one segment");
    for (const auto& seg : segments) {
        seg.validate();
        tissues.at(seg.tissue_outer);
        tissues.at(seg.tissue_inner);
    }
    tx_device.validate();
    rx_device.validate();
    termination.validate();
    ground.validate();
    options.validate();
}

double BodyChannel::total_length_m() const
{
    double total = 0.0;
    for (const auto& seg : segments)
        total += seg.length_m;
    return total;
}

double BodyChannel::radiation_resistance_ohm_per_m(double frequency_hz) const
{
    if (options.radiation_factor == 0.0)
        return 0.0;
    const double length = total_length_m();
    // Electric-dipole radiation resistance 20 pi^2 (l/lambda)^2 carried by
    // the antenna mode of the body; the leakage model treats the same axial
    // current as the radiator, which keeps the two views consistent. Spread
    // uniformly along a resonant line with a sinusoidal current profile the
    // antinode-referred value doubles (sin^2 averages to 1/2). The
    // quadratic growth also encodes the increasingly radiative behavior
    // above the body-resonance band.
    const double l_over_lambda = length * frequency_hz / k::speed_of_light_m_per_s;
    const double r_total = 40.0 * k::pi * k::pi * l_over_lambda * l_over_lambda;
    return options.radiation_factor * r_total / length;
}

namespace {

std::vector<SubSegment> build_sub_segments(const BodyChannel& channel, double f)
{
    const double total_length = channel.total_length_m();
    const double omega = 2.0 * k::pi * f;
    const double r_rad = channel.radiation_resistance_ohm_per_m(f);

    std::vector<SubSegment> subs;
    subs.reserve(static_cast<std::size_t>(channel.options.n_segments) + channel.segments.size());

    for (const auto& seg : channel.segments) {
        const int count = std::max(
            1, static_cast<int>(std::lround(channel.options.n_segments * seg.length_m / total_length)));
        PerUnitLengthParams pul = pul_params(seg, f, channel.tissues);
        const double r_cond = pul.r_ohm_per_m;
        pul.r_ohm_per_m += r_rad;

        const double dl = seg.length_m / count;
        const TwoPort body = segment_twoport(pul, dl, f);

        SubSegment sub;
        sub.dl_m = dl;
        sub.radius_m = seg.outer_radius_m;
        sub.cross_section_m2 = k::pi * (seg.outer_radius_m * seg.outer_radius_m);
        sub.r_cond_ohm_per_m = r_cond;
        sub.shunt_cb_f = channel.ground.distributed ? channel.ground.c_b_f * dl / total_length : 0.0;

        if (sub.shunt_cb_f > 0.0) {
            const TwoPort half_shunt =
                TwoPort::shunt_admittance(kJ * omega * sub.shunt_cb_f * 0.5, f);
            sub.step = cascade(cascade(half_shunt, body), half_shunt);
        } else {
            sub.step = body;
        }

        for (int i = 0; i < count; ++i)
            subs.push_back(sub);
    }
    return subs;
}

TxReduction reduce_tx(const BodyChannel& channel, double f)
{
    TxReduction tx;
    tx.r_source = channel.options.source_resistance_ohm;
    tx.dev = couple_device(channel.tx_device, channel.segments.front(), f);

    // Thevenin equivalent at (feed node, earth) from two linear probes.
    const TxState at_zero = solve_tx_network(tx, 1.0, 0.0);
    const TxState at_one = solve_tx_network(tx, 1.0, 1.0);
    const complex<double> alpha = tx_port_current(tx, at_zero, 0.0);
    const complex<double> beta = tx_port_current(tx, at_one, 1.0) - alpha;
    tx.z_thevenin = -1.0 / beta;
    tx.v_thevenin = alpha * tx.z_thevenin;
    return tx;
}

RxReduction reduce_rx(const BodyChannel& channel, double f)
{
    const DeviceCoupling dev = couple_device(channel.rx_device, channel.segments.back(), f);
    const complex<double> y_term = channel.termination.admittance_s(f);

    // Nodes: signal plate (s) and floating ground plate (g), line end at 1 V;
    // the ground plate anchors to the local field equipotential phi and to
    // earth through the split return capacitance.
    const complex<double> a11 = dev.y_couple + y_term;
    const complex<double> a12 = -y_term;
    const complex<double> a21 = -y_term;
    const complex<double> a22 = y_term + dev.y_near + dev.y_far;
    const complex<double> b1 = dev.y_couple;
    const complex<double> b2 = dev.y_near * dev.phi;
    const complex<double> det = a11 * a22 - a12 * a21;
    if (std::abs(det) == 0.0)
        throw model_error("rx network is singular (all-zero termination)");

    RxReduction rx;
    rx.v_sig = (b1 * a22 - a12 * b2) / det;
    rx.v_gnd = (a11 * b2 - b1 * a21) / det;
    rx.pickoff = rx.v_sig - rx.v_gnd;
    rx.y_load = dev.y_couple * (1.0 - rx.v_sig) + dev.y_near * (dev.phi - rx.v_gnd);
    return rx;
}

} // namespace

TwoPort BodyChannel::line_twoport(double frequency_hz) const
{
    validate();
    const auto subs = build_sub_segments(*this, frequency_hz);
    TwoPort product = TwoPort::identity(frequency_hz);
    if (!ground.distributed) {
        product = cascade(product,
                          TwoPort::shunt_admittance(
                              kJ * 2.0 * k::pi * frequency_hz * ground.c_b_f, frequency_hz));
    }
    for (const auto& sub : subs)
        product = cascade(product, sub.step);
    return product;
}

complex<double> BodyChannel::transfer(double frequency_hz) const
{
    return solve(frequency_hz, false).gain;
}

LineSolution BodyChannel::solve(double frequency_hz, bool profile) const
{
    validate();
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("body channel: frequency must be > 0");

    const auto subs = build_sub_segments(*this, frequency_hz);
    const double omega = 2.0 * k::pi * frequency_hz;

    TwoPort line = TwoPort::identity(frequency_hz);
    if (!ground.distributed)
        line = cascade(line, TwoPort::shunt_admittance(kJ * omega * ground.c_b_f, frequency_hz));
    for (const auto& sub : subs)
        line = cascade(line, sub.step);

    const TxReduction tx = reduce_tx(*this, frequency_hz);
    const RxReduction rx = reduce_rx(*this, frequency_hz);

    const complex<double> denom =
        (line.a + line.b * rx.y_load) + tx.z_thevenin * (line.c + line.d * rx.y_load);
    if (std::abs(denom) == 0.0)
        throw model_error("body channel network is singular at " + format_double(frequency_hz) + " Hz");

    LineSolution sol;
    sol.frequency_hz = frequency_hz;
    sol.v_line_out = tx.v_thevenin / denom;
    sol.i_line_out = rx.y_load * sol.v_line_out;
    sol.v_line_in = line.a * sol.v_line_out + line.b * sol.i_line_out;
    sol.i_line_in = line.c * sol.v_line_out + line.d * sol.i_line_out;
    sol.gain = rx.pickoff * sol.v_line_out;

    // Back out the source current from the transmitter-side network.
    {
        const TxState state = solve_tx_network(tx, 1.0, sol.v_line_in);
        sol.i_source = state.i_src;
        sol.p_source_w = 0.5 * sol.i_source.real(); // V_in = 1 + j0
    }
    sol.p_load_w = 0.5 * std::norm(sol.gain) * termination.conductance_s();

    if (profile) {
        const std::size_t count = subs.size();
        sol.z_m.resize(count + 1);
        sol.v_node.resize(count + 1);
        sol.i_node.resize(count + 1);
        sol.dz_m.resize(count);
        sol.radius_m.resize(count);
        sol.r_cond_ohm_per_m.resize(count);
        sol.cross_section_m2.resize(count);

        // Walk the chain backwards from the load so each node state is the
        // exact (V, I) at the junction between steps.
        sol.v_node[count] = sol.v_line_out;
        sol.i_node[count] = sol.i_line_out;
        double z = total_length_m();
        sol.z_m[count] = z;
        for (std::size_t idx = count; idx-- > 0;) {
            const SubSegment& sub = subs[idx];
            const TwoPort& t = sub.step;
            sol.v_node[idx] = t.a * sol.v_node[idx + 1] + t.b * sol.i_node[idx + 1];
            sol.i_node[idx] = t.c * sol.v_node[idx + 1] + t.d * sol.i_node[idx + 1];
            z -= sub.dl_m;
            sol.z_m[idx] = z;
            sol.dz_m[idx] = sub.dl_m;
            sol.radius_m[idx] = sub.radius_m;
            sol.r_cond_ohm_per_m[idx] = sub.r_cond_ohm_per_m;
            sol.cross_section_m2[idx] = sub.cross_section_m2;
        }
    }
    return sol;
}

std::complex<double> transfer_function(const std::vector<BodySegment>& body,
                                       const DeviceGeometry& dev_tx, const DeviceGeometry& dev_rx,
                                       const TerminationNetwork& term, const BodyGroundCoupling& bg,
                                       double frequency_hz, int n_segments)
{
    BodyChannel channel;
    channel.segments = body;
    channel.tx_device = dev_tx;
    channel.rx_device = dev_rx;
    channel.termination = term;
    channel.ground = bg;
    channel.options.n_segments = n_segments;
    return channel.transfer(frequency_hz);
}

} // namespace brhbc
