#pragma once

#include "wpl/core.hpp"
#include "wpl/harness.hpp"
#include "wpl/partition.hpp"
#include "wpl/wavepacket.hpp"

#include <string>

namespace wpl {

// .fld: one JSON header line {R, nx, nt, x_range, t_range} followed by
// nx * nt little-endian complex pairs of 64-bit floats, row-major in x.
void write_field(const SpaceTimeField& field, const std::string& path);
SpaceTimeField read_field(const std::string& path);

// profile JSON: {label, M, samples: [re, im, re, im, ...]}
void write_profile(const FrequencyProfile& profile, const std::string& path);
FrequencyProfile read_profile(const std::string& path);

// decomposition JSON: {R, f_l2, S, M, packets: [{theta, v, c_re, c_im, support}]}
void write_decomposition(const Decomposition& d, const std::string& path);

// points.csv with columns x,t,w (header optional)
WeightedPoints read_points_csv(const std::string& path);

void write_text(const std::string& text, const std::string& path);

// minimal log-log scatter + fitted line, for sweep reports
std::string sweep_svg(const SweepReport& report);

} // namespace wpl
