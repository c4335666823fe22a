#ifndef KERNELWALK_REPORT_HPP
#define KERNELWALK_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "kernelwalk/classify.hpp"
#include "kernelwalk/continuation.hpp"
#include "kernelwalk/series.hpp"

namespace kw::report {

inline constexpr int kReportVersion = 1;
inline constexpr const char* kToolName = "kernelwalk";
inline constexpr const char* kToolVersion = "1.0.0";

using nlohmann::json;

json value_with_error(Real value, Real error);

json model_section(const WeightedModel& model, const Rational& scale);
json series_section(const SeriesTable& table, int feq_order, const WeightedModel& model);
json kernel_section(const KernelPolynomial& kernel);
json curve_section(const CurveAnalytics& ca, int residual_samples, std::uint64_t seed);
json group_section(const GroupReport& rep);
json continuation_section(const Continuator& cont, int samples, std::uint64_t seed);
json classification_section(const NatureReport& rep);

// Skeleton with tool/version/config fields filled in.
json make_document(std::uint64_t seed, int precision_bits);

// Structural validation mirroring schema/report.schema.json; returns the
// list of violations (empty means valid).
std::vector<std::string> validate_report(const json& doc);

// Deterministic human-readable rendering.
std::string render_text(const json& doc);

} // namespace kw::report

#endif
