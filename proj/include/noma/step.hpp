#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

namespace noma {

enum class StepKind { harmonic, constant, custom };

/// Subgradient step size per slot. harmonic: zeta0 / t (square-summable,
/// not summable); constant: zeta0; custom: user callback.
struct StepSchedule {
  StepKind kind = StepKind::harmonic;
  double zeta0 = 1.0;
  std::function<double(std::int64_t)> custom;

  double at(std::int64_t t) const {
    switch (kind) {
      case StepKind::harmonic:
        return zeta0 / static_cast<double>(t);
      case StepKind::constant:
        return zeta0;
      case StepKind::custom:
        if (!custom) throw std::logic_error("custom step schedule has no callback");
        return custom(t);
    }
    return zeta0;
  }
};

}  // namespace noma
