#pragma once

#include <string>
#include <vector>

#include "zaremba/scenario.hpp"

namespace zaremba {

/// JSON texts use schema version 1 with stable key order; the isolated
/// "timestamp" field is the only non-deterministic content.
std::string to_json_text(const ComparisonReport& report);
std::string to_json_text(const InclusionReport& report);
std::string to_json_text(const SolveReport& report);
std::string to_json_text(const IdentityReport& report);
std::string hypothesis_json_text(const HypothesisReport& report, const std::string& name);
std::string sweep_json_text(const std::vector<SweepPoint>& points, const std::string& name);

/// RFC-4180 CSV, one row per grid point.
std::string sweep_csv_text(const std::vector<SweepPoint>& points);
std::string levels_csv_text(const ComparisonReport& report);

std::string lambda_plot_svg(const ComparisonReport& report);
std::string profile_plot_svg(const MonotonicityProfile& profile, const std::string& title);
std::string sweep_margin_svg(const std::vector<SweepPoint>& points, const std::string& title);

/// Writes the report in the requested format ("json", "csv" or "svg") into
/// out_dir and returns the created file paths. Throws on unwritable paths.
std::vector<std::string> emit_report(const ComparisonReport& report, const std::string& out_dir,
                                     const std::string& format);
std::vector<std::string> emit_report(const std::vector<SweepPoint>& points,
                                     const std::string& name, const std::string& out_dir,
                                     const std::string& format);
std::vector<std::string> emit_report(const InclusionReport& report, const std::string& out_dir,
                                     const std::string& format);
std::vector<std::string> emit_report(const SolveReport& report, const std::string& out_dir,
                                     const std::string& format);
std::vector<std::string> emit_report(const IdentityReport& report, const std::string& out_dir,
                                     const std::string& format);
std::vector<std::string> emit_hypothesis_report(const HypothesisReport& report,
                                                const std::string& name,
                                                const std::string& out_dir,
                                                const std::string& format);

}  // namespace zaremba
