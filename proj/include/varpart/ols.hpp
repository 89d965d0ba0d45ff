#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace varpart {

struct Column {
  std::string name;
  std::vector<double> values;

  bool operator==(const Column&) const = default;
};

/// Raw observations: one response column and an ordered list of predictors.
/// Construct through Dataset::create, which enforces the invariants
/// (equal lengths, finite values, distinct names, n >= p + 2).
class Dataset {
 public:
  static Dataset create(std::vector<Column> columns, std::string response_name,
                        std::vector<std::string> predictor_names);

  const std::vector<Column>& columns() const { return columns_; }
  const std::string& response_name() const { return response_name_; }
  const std::vector<std::string>& predictor_names() const {
    return predictor_names_;
  }
  std::size_t n() const { return n_; }
  std::size_t p() const { return predictor_names_.size(); }

  /// Throws UnknownName when no such column exists.
  const Column& column(const std::string& name) const;

  bool operator==(const Dataset&) const = default;

 private:
  Dataset() = default;

  std::vector<Column> columns_;
  std::string response_name_;
  std::vector<std::string> predictor_names_;
  std::size_t n_ = 0;
};

/// Mean-centered response and predictors. Index 0 of means/sds is the
/// response; index j + 1 is predictor j.
struct CenteredData {
  std::string response_name;
  std::vector<std::string> predictor_names;
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
  Eigen::VectorXd means;
  Eigen::VectorXd sds;

  std::size_t n() const { return static_cast<std::size_t>(y.size()); }
  std::size_t p() const { return predictor_names.size(); }

  /// Column index of a predictor; throws UnknownName.
  std::size_t predictor_index(const std::string& name) const;

  /// Centered values for the response or any predictor; throws UnknownName.
  Eigen::VectorXd column(const std::string& name) const;

  double mean_of(const std::string& name) const;
  double sd_of(const std::string& name) const;

  double ss_total() const { return y.squaredNorm(); }
};

struct SscpMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd m;

  /// Entry by label pair; throws UnknownName.
  double at(const std::string& row, const std::string& col) const;
};

struct OlsFit {
  std::vector<std::string> predictor_subset;
  Eigen::VectorXd b;
  double intercept = 0.0;
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
  double ss_total = 0.0;
  double ss_regression = 0.0;
  double ss_residual = 0.0;
  int df_model = 0;
  int df_residual = 0;
  double r2 = 0.0;
  double f = 0.0;
  Eigen::VectorXd se;
  Eigen::VectorXd t;
  Eigen::VectorXd z;

  double ms_regression() const { return ss_regression / df_model; }
  double ms_residual() const { return ss_residual / df_residual; }
};

struct AnovaRow {
  std::string source;
  double ss = 0.0;
  int df = 0;
  std::optional<double> ms;
  std::optional<double> f;
};

struct AnovaTable {
  std::vector<AnovaRow> rows;
  double r2 = 0.0;
  /// True when the total row equals the sum of the component rows.
  bool additive = true;
};

/// Reciprocal condition number below which a cross-product matrix (scaled to
/// unit diagonal) is rejected as singular.
inline constexpr double kSingularRcond = 1e-12;

CenteredData mean_center(const Dataset& d);

/// Cross-products of centered columns. Labels may name the response and/or
/// any predictor.
SscpMatrix sscp(const CenteredData& c, std::span<const std::string> labels);

OlsFit fit_ols(const CenteredData& c, std::span<const std::string> subset);

/// Fits y on an arbitrary centered design. `labels` names the design columns
/// and `column_means` restores the intercept (pass zeros for constructed
/// predictors). Standardized coefficients use the sample SD of each design
/// column and of y.
OlsFit fit_centered_design(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           std::vector<std::string> labels,
                           const Eigen::VectorXd& column_means,
                           double y_mean);

AnovaTable anova_table(const OlsFit& fit);

}  // namespace varpart
