#pragma once

#include <string_view>

namespace tubeband {

struct Tolerances {
  double degeneracy = 1e-10;  // |mu2| below this marks a quartic edge
  double edge = 1e-8;         // multiplicity queries closer than this to an edge are rejected
  double pole = 1e-10;        // |sin(sqrt(z) l)| below this is a pole of M
  double regime_bound = 10.0; // admissible delta / eps^2 for delta > 0
  double k_sigma = 0.5;       // minimal |Im z| for the rational approximant
};

// Parses "key=value,key=value" (keys: degeneracy, edge, pole, regime, sigma).
// A bare number sets the degeneracy threshold. Throws invalid_argument.
Tolerances parse_tolerances(std::string_view text, Tolerances base = {});

// Process-wide tolerances: defaults overridden once by TUBEBAND_TOL.
const Tolerances& tolerances();

}  // namespace tubeband
