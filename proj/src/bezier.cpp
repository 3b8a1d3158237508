#include "liespline/bezier.hpp"

#include <cmath>
#include <string>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"

namespace liespline {

GroupElement decasteljau_eval(const ControlNet& net, double tau) {
  if (net.empty()) throw Error(ErrorCode::InvalidArgument, "control net is empty");
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::OutOfDomain, "tau = " + std::to_string(tau) + " outside [0, 1]");
  }
  for (const GroupElement& h : net) require_same_group(net.front().group(), h.group(), "control net");
  if (tau == 0.0) return net.front();
  if (tau == 1.0) return net.back();
  ControlNet level = net;
  for (std::size_t k = 1; k < net.size(); ++k) {
    for (std::size_t i = 0; i + k < net.size(); ++i) {
      AlgebraVector xi;
      try {
        xi = log(level[i].inverse() * level[i + 1]);
      } catch (const Error& e) {
        throw e.with_context("level " + std::to_string(k) + ", index " + std::to_string(i));
      }
      level[i] = level[i] * exp(tau * xi);
    }
  }
  return level.front();
}

std::vector<GroupElement> decasteljau_curve(const ControlNet& net, int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples, got " + std::to_string(samples));
  std::vector<GroupElement> out;
  out.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    out.push_back(decasteljau_eval(net, s == samples - 1 ? 1.0 : static_cast<double>(s) / (samples - 1)));
  }
  return out;
}

}  // namespace liespline
