#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "varpart/ols.hpp"

namespace varpart {

/// A permutation of predictor names giving the order in which they enter a
/// sequential (Type I) chain.
class Ordering {
 public:
  /// Throws InvalidOrdering unless `names` is a permutation of `model`.
  Ordering(std::vector<std::string> names, std::span<const std::string> model);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  /// Comma-joined names, used as a stable key.
  std::string key() const;

  auto operator<=>(const Ordering&) const = default;

 private:
  std::vector<std::string> names_;
};

/// A predictor with its linear dependence on `conditioned_on` removed.
struct ResidualizedPredictor {
  std::string target;
  std::vector<std::string> conditioned_on;
  Eigen::VectorXd values;

  /// Display label: `X1|X2,X3`, or just the target when unconditioned.
  std::string label() const;
};

using NamedSs = std::vector<std::pair<std::string, double>>;

struct VennRegions {
  NamedSs unique;
  double common_total = 0.0;
  double residual = 0.0;
  double ss_total = 0.0;
  double accounted_total = 0.0;
  double missing = 0.0;
  double missing_fraction = 0.0;

  /// Unique contributions exceed the regression SS.
  bool suppression() const { return common_total < 0.0; }
};

struct TypeOneTable {
  Ordering ordering;
  NamedSs sequential;
};

struct PredictorSummary {
  std::string name;
  double type3_ss = 0.0;
  std::map<std::string, double> type1_by_ordering;
};

struct DecompositionReport {
  OlsFit traditional;
  std::vector<PredictorSummary> per_predictor;
  std::vector<TypeOneTable> orderings;
  double actual_model_ss = 0.0;
  double corrected_r2 = 0.0;
  double corrected_r2_from_z = 0.0;
  double corrected_f = 0.0;
  double corrected_f_from_t = 0.0;
  double ss_via_crossproducts = 0.0;
  VennRegions venn;
  std::vector<OlsFit> residualized_fits;
  std::vector<double> residualized_crossproducts;
};

/// Orderings beyond this many predictors are never enumerated exhaustively.
inline constexpr std::size_t kMaxExhaustivePredictors = 8;

ResidualizedPredictor residualize(const CenteredData& c, const std::string& target,
                                  std::span<const std::string> against);

NamedSs sequential_ss(const CenteredData& c, const Ordering& ord);

double partial_ss(const CenteredData& c, const std::string& predictor,
                  std::span<const std::string> model);

double actual_model_ss(const CenteredData& c, std::span<const std::string> model);

double corrected_r2(const CenteredData& c, std::span<const std::string> model);

/// Sum of squared standardized coefficients of the residualized predictors.
double corrected_r2_from_z(const CenteredData& c, std::span<const std::string> model);

double corrected_f(const CenteredData& c, std::span<const std::string> model);

/// Mean squared t statistic of the full fit.
double corrected_f_from_t(const CenteredData& c, std::span<const std::string> model);

/// Regression of y on the first predictor of `ord`, then each following
/// predictor residualized on all that precede it.
OlsFit orthogonal_regression(const CenteredData& c, const Ordering& ord);

/// Simple regression of y on each predictor residualized on the rest of the
/// model; returned in model order.
std::vector<OlsFit> residualized_simple_fits(const CenteredData& c,
                                             std::span<const std::string> model);

double ss_via_residualized_crossproducts(const CenteredData& c,
                                         std::span<const std::string> model);

VennRegions venn_regions(const CenteredData& c, std::span<const std::string> model);

/// Every permutation of `model` in lexicographic order of names. Throws
/// TooManyOrderings above kMaxExhaustivePredictors.
std::vector<Ordering> all_orderings(std::span<const std::string> model);

struct CompareOptions {
  /// Enumerate all p! orderings. Otherwise only `orderings` are tabulated.
  bool exhaustive = true;
  std::vector<Ordering> orderings;
};

DecompositionReport compare_report(const CenteredData& c,
                                   std::span<const std::string> model,
                                   const CompareOptions& options = {});

/// ANOVA tables with one row per predictor. Type I rows add up to the
/// regression SS; Type III rows do not, and the table says so.
AnovaTable type1_anova(const CenteredData& c, const Ordering& ord);
AnovaTable type3_anova(const CenteredData& c, std::span<const std::string> model);

}  // namespace varpart
