#include "qspa/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace qspa {

namespace {

Tolerances& mutable_tolerances() {
  static Tolerances tol;
  return tol;
}

double env_or(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    return std::stod(raw);
  } catch (...) {
    return fallback;
  }
}

}  // namespace

const Tolerances& tolerances() { return mutable_tolerances(); }

void set_tolerances(const Tolerances& tol) { mutable_tolerances() = tol; }

Tolerances tolerances_from_env() {
  Tolerances tol;
  tol.hermiticity = env_or("QSPA_TOL_HERMITICITY", tol.hermiticity);
  tol.psd_clip = env_or("QSPA_TOL_PSD_CLIP", tol.psd_clip);
  tol.reconstruction = env_or("QSPA_TOL_RECONSTRUCTION", tol.reconstruction);
  return tol;
}

}  // namespace qspa
