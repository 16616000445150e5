#pragma once

namespace qspa {

/// Central numeric tolerance set. One knob for the whole library:
/// hermiticity checks, PSD eigenvalue clipping and reconstruction bounds
/// all read from here.
struct Tolerances {
  double hermiticity = 1e-10;
  double psd_clip = 1e-10;
  double reconstruction = 1e-9;
};

/// Process-wide tolerance set (defaults above). Mutating it is intended
/// for program startup only; library calls read it concurrently.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& tol);

/// Reads QSPA_TOL_HERMITICITY, QSPA_TOL_PSD_CLIP, QSPA_TOL_RECONSTRUCTION
/// from the environment, falling back to defaults for unset variables.
Tolerances tolerances_from_env();

}  // namespace qspa
