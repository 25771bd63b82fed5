#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tubeband/band_structure.hpp"
#include "tubeband/convergence.hpp"
#include "tubeband/criticality.hpp"
#include "tubeband/fiber_fd.hpp"

namespace tubeband {

// Shortest text that reads back to the same double.
std::string format_number(double v);

std::string bands_csv(const BandTable& table);
std::string dispersion_csv(const std::vector<DispersionSample>& samples);
std::string fig2_csv(const RangeProfile& profile);
std::string mu_scan_csv(const std::vector<MuScanRow>& rows);
std::string convergence_csv(const ConvergenceReport& report);
std::string convergence_summary_json(const ConvergenceReport& report);
std::string criticality_json(const CriticalityReport& report, const std::vector<MuScanRow>& scan);

// Parses a CSV report and writes it back with canonical number formatting.
std::string reemit_csv(std::string_view text);
std::string reemit_json(std::string_view text);

}  // namespace tubeband
