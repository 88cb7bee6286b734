#include "walkoff/geometry.hpp"

#include <cmath>
#include <sstream>

#include "walkoff/errors.hpp"

namespace walkoff {

PumpBeam::PumpBeam(double lambda_m, double fwhm_m)
    : lambda_(lambda_m), fwhm_(fwhm_m), sigma_(fwhm_m / (2.0 * std::sqrt(std::log(2.0)))) {
  if (!(lambda_m > 0.0) || !std::isfinite(lambda_m)) {
    throw DomainError("pump wavelength must be positive");
  }
  if (!(fwhm_m > 0.0) || !std::isfinite(fwhm_m)) throw DomainError("pump FWHM must be positive");
}

CrystalStack::CrystalStack(std::string name, std::vector<CrystalSlab> slabs, double theta)
    : name_(std::move(name)), slabs_(std::move(slabs)), theta_(theta), total_length_(0.0) {
  if (slabs_.empty()) throw DomainError("crystal stack needs at least one slab");
  if (!(std::abs(theta_) < 1.5) || !std::isfinite(theta_)) {
    throw DomainError("walk-off angle out of range");
  }
  for (const auto& s : slabs_) {
    if (!(s.length > 0.0) || !std::isfinite(s.length)) {
      throw DomainError("slab length must be positive");
    }
    if (s.walkoff_sign != 1 && s.walkoff_sign != -1) {
      throw DomainError("slab walk-off sign must be +1 or -1");
    }
    total_length_ += s.length;
  }
}

std::vector<PathPoint> CrystalStack::breakpoints() const {
  std::vector<PathPoint> pts;
  pts.reserve(slabs_.size() + 1);
  const double t = std::tan(theta_);
  PathPoint p;
  pts.push_back(p);
  for (const auto& s : slabs_) {
    p.z += s.length;
    p.x += s.walkoff_sign * t * s.length;
    pts.push_back(p);
  }
  return pts;
}

CrystalStack CrystalStack::mirrored() const {
  auto flipped = slabs_;
  for (auto& s : flipped) s.walkoff_sign = -s.walkoff_sign;
  return CrystalStack(name_ + "_mirrored", std::move(flipped), theta_);
}

double pump_centroid(const CrystalStack& stack, double z) {
  const double length = stack.total_length();
  if (!(z >= 0.0 && z <= length)) {
    std::ostringstream msg;
    msg << "z = " << z << " m outside crystal stack [0, " << length << "] m";
    throw DomainError(msg.str());
  }
  const double t = std::tan(stack.theta());
  double z0 = 0.0, x0 = 0.0;
  const auto& slabs = stack.slabs();
  for (std::size_t j = 0; j < slabs.size(); ++j) {
    const double z1 = z0 + slabs[j].length;
    if (z <= z1 || j + 1 == slabs.size()) {
      return x0 + slabs[j].walkoff_sign * t * (z - z0);
    }
    x0 += slabs[j].walkoff_sign * t * slabs[j].length;
    z0 = z1;
  }
  return x0;  // unreachable
}

const CrystalStack& StandardStacks::by_name(const std::string& name) const {
  if (name == "single_iso") return single_iso;
  if (name == "single_aniso") return single_aniso;
  if (name == "noncomp") return noncomp;
  if (name == "comp") return comp;
  throw DomainError("unknown stack preset '" + name + "'");
}

StandardStacks make_standard_stacks(double total_length, double theta) {
  if (!(total_length > 0.0)) throw DomainError("total crystal length must be positive");
  const double half = 0.5 * total_length;
  return StandardStacks{
      CrystalStack("single_iso", {{total_length, +1}}, 0.0),
      CrystalStack("single_aniso", {{total_length, +1}}, theta),
      CrystalStack("noncomp", {{half, +1}, {half, +1}}, theta),
      CrystalStack("comp", {{half, +1}, {half, -1}}, theta),
  };
}

}  // namespace walkoff
