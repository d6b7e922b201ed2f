#pragma once

#include <cstdint>
#include <string>

#include "sos/params.hpp"

namespace sos {

struct CheckReport {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  ModelParams params;
};

inline CheckReport make_report(std::string name, double residual, double tol,
                               ModelParams params = {}) {
  CheckReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tol = tol;
  r.passed = residual <= tol;
  r.params = std::move(params);
  return r;
}

}  // namespace sos
