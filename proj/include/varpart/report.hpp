#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "varpart/decomposition.hpp"
#include "varpart/ols.hpp"

namespace varpart {

inline constexpr const char* kSchemaVersion = "1";

/// What the `orderings` command shows for one ordering: the Type I table and
/// the matching orthogonal-function fit.
struct OrderingPanel {
  Ordering ordering;
  AnovaTable type1;
  OlsFit orthogonal;
};

std::vector<OrderingPanel> ordering_panels(const CenteredData& c,
                                           const std::vector<Ordering>& orderings);

// JSON documents carry full precision; text rounds every number to two
// decimals; CSV is long-format `section,item,statistic,value` at full
// precision (venn uses `region,ss,fraction`).

nlohmann::json fit_json(const CenteredData& c, const OlsFit& fit);
std::string fit_text(const CenteredData& c, const OlsFit& fit);
std::string fit_csv(const OlsFit& fit);

nlohmann::json decompose_json(const CenteredData& c, const DecompositionReport& r);
std::string decompose_text(const CenteredData& c, const DecompositionReport& r);
std::string decompose_csv(const DecompositionReport& r);

nlohmann::json orderings_json(const CenteredData& c, const std::vector<std::string>& model,
                              const std::vector<OrderingPanel>& panels);
std::string orderings_text(const CenteredData& c,
                           const std::vector<OrderingPanel>& panels);
std::string orderings_csv(const std::vector<OrderingPanel>& panels);

nlohmann::json venn_json(const CenteredData& c, const VennRegions& v);
std::string venn_text(const CenteredData& c, const VennRegions& v);
std::string venn_csv(const VennRegions& v);

/// Regions whose common SS is negligible relative to the total.
bool decompositions_coincide(const VennRegions& v);

}  // namespace varpart
