#pragma once

namespace qent {

// Single validation-tolerance record shared by every constructor and check.
// Callers may pass a modified copy; there is no mutable global state.
struct Tolerances {
  double herm = 1e-9;     // max |A - A^dagger| entry
  double psd = 1e-9;      // most negative admissible eigenvalue
  double unitary = 1e-9;  // max |B^dagger B - I| entry
  double norm = 1e-10;    // |trace - 1| or |sum - 1|
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace qent
