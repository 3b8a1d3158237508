#pragma once

#include <vector>

#include "liespline/group.hpp"

namespace liespline {

/// Control points h_0..h_n; the curve passes through h_0 and h_n only.
using ControlNet = std::vector<GroupElement>;

/// Lie-group De Casteljau value h_0^n(tau) built from one-parameter subgroup arcs.
/// O(n^2) log/exp pairs per call.
GroupElement decasteljau_eval(const ControlNet& net, double tau);

/// decasteljau_eval at `samples` uniform tau values in [0, 1].
std::vector<GroupElement> decasteljau_curve(const ControlNet& net, int samples);

}  // namespace liespline
