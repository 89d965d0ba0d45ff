#include "varpart/ols.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "varpart/error.hpp"

namespace varpart {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDataset: return "InvalidDataset";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::ConstantColumn: return "ConstantColumn";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::InvalidOrdering: return "InvalidOrdering";
    case ErrorKind::TooManyOrderings: return "TooManyOrderings";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::EmptyData: return "EmptyData";
    case ErrorKind::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
  }
  return "Unknown";
}

namespace {

std::string join(std::span<const std::string> names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

double sample_sd(const Eigen::VectorXd& centered) {
  return std::sqrt(centered.squaredNorm() /
                   static_cast<double>(centered.size() - 1));
}

// Core solver shared by every fit: the centered SSCP is scaled to unit
// diagonal, checked for conditioning, Cholesky-factored and solved.
OlsFit solve_centered(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                      std::vector<std::string> labels,
                      const Eigen::VectorXd& column_means, double y_mean,
                      const Eigen::VectorXd& column_sds, double y_sd) {
  const auto n = static_cast<int>(y.size());
  const auto k = static_cast<int>(x.cols());
  if (k == 0) throw Error(ErrorKind::EmptySubset, "predictor subset is empty");
  if (n - k - 1 < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "need at least " + std::to_string(k + 2) +
                    " observations to fit " + std::to_string(k) +
                    " predictors, have " + std::to_string(n));
  }

  const Eigen::MatrixXd xtx = x.transpose() * x;
  const Eigen::VectorXd xty = x.transpose() * y;
  const Eigen::VectorXd diag = xtx.diagonal();
  for (int j = 0; j < k; ++j) {
    if (!(diag(j) > 0.0)) {
      throw Error(ErrorKind::SingularDesign,
                  "singular design: column '" + labels[j] +
                      "' has no variation in model {" + join(labels) + "}");
    }
  }
  const Eigen::VectorXd scale = diag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd normalized = scale.asDiagonal() * xtx * scale.asDiagonal();
  const Eigen::LLT<Eigen::MatrixXd> llt(normalized);
  if (llt.info() != Eigen::Success || !(llt.rcond() >= kSingularRcond)) {
    throw Error(ErrorKind::SingularDesign,
                "singular design: predictors {" + join(labels) +
                    "} are (near) perfectly collinear");
  }

  OlsFit fit;
  fit.predictor_subset = std::move(labels);
  fit.b = scale.asDiagonal() * llt.solve(scale.asDiagonal() * xty);
  fit.intercept = y_mean - fit.b.dot(column_means);
  fit.fitted = x * fit.b;
  fit.residuals = y - fit.fitted;
  fit.ss_total = y.squaredNorm();
  fit.ss_regression = fit.b.dot(xty);
  fit.ss_residual = fit.residuals.squaredNorm();
  fit.df_model = k;
  fit.df_residual = n - k - 1;
  fit.r2 = fit.ss_regression / fit.ss_total;
  fit.f = fit.ms_regression() / fit.ms_residual();

  const Eigen::MatrixXd inv_normalized =
      llt.solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::VectorXd inv_diag =
      inv_normalized.diagonal().cwiseProduct(scale.cwiseAbs2());
  fit.se = (inv_diag * fit.ms_residual()).cwiseSqrt();
  fit.t = fit.b.cwiseQuotient(fit.se);
  fit.z = fit.b.cwiseProduct(column_sds) / y_sd;
  return fit;
}

}  // namespace

Dataset Dataset::create(std::vector<Column> columns, std::string response_name,
                        std::vector<std::string> predictor_names) {
  if (columns.empty()) throw Error(ErrorKind::EmptyData, "dataset has no columns");
  const std::size_t n = columns.front().values.size();
  std::set<std::string> seen;
  for (const auto& col : columns) {
    if (!seen.insert(col.name).second) {
      throw Error(ErrorKind::InvalidDataset, "duplicate column '" + col.name + "'");
    }
    if (col.values.size() != n) {
      throw Error(ErrorKind::InvalidDataset,
                  "column '" + col.name + "' has " +
                      std::to_string(col.values.size()) + " values, expected " +
                      std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(col.values[i])) {
        throw Error(ErrorKind::NonFiniteValue,
                    "non-finite value in column '" + col.name + "' at row " +
                        std::to_string(i + 1));
      }
    }
  }
  if (predictor_names.empty()) {
    throw Error(ErrorKind::EmptySubset, "no predictors given");
  }
  std::set<std::string> roles{response_name};
  for (const auto& name : predictor_names) {
    if (!roles.insert(name).second) {
      throw Error(ErrorKind::InvalidDataset,
                  "predictor '" + name +
                      "' is repeated or coincides with the response");
    }
  }
  for (const auto& name : roles) {
    if (!seen.contains(name)) {
      throw Error(ErrorKind::MissingColumn, "no column named '" + name + "'");
    }
  }
  if (n == 0) throw Error(ErrorKind::EmptyData, "dataset has no observations");
  if (n < predictor_names.size() + 2) {
    throw Error(ErrorKind::InvalidDataset,
                "need n >= p + 2 observations (n = " + std::to_string(n) +
                    ", p = " + std::to_string(predictor_names.size()) + ")");
  }

  Dataset d;
  d.columns_ = std::move(columns);
  d.response_name_ = std::move(response_name);
  d.predictor_names_ = std::move(predictor_names);
  d.n_ = n;
  return d;
}

const Column& Dataset::column(const std::string& name) const {
  auto it = std::find_if(columns_.begin(), columns_.end(),
                         [&](const Column& c) { return c.name == name; });
  if (it == columns_.end()) {
    throw Error(ErrorKind::UnknownName, "no column named '" + name + "'");
  }
  return *it;
}

std::size_t CenteredData::predictor_index(const std::string& name) const {
  auto it = std::find(predictor_names.begin(), predictor_names.end(), name);
  if (it == predictor_names.end()) {
    throw Error(ErrorKind::UnknownName, "unknown predictor '" + name + "'");
  }
  return static_cast<std::size_t>(it - predictor_names.begin());
}

Eigen::VectorXd CenteredData::column(const std::string& name) const {
  if (name == response_name) return y;
  return x.col(static_cast<Eigen::Index>(predictor_index(name)));
}

double CenteredData::mean_of(const std::string& name) const {
  if (name == response_name) return means(0);
  return means(static_cast<Eigen::Index>(predictor_index(name) + 1));
}

double CenteredData::sd_of(const std::string& name) const {
  if (name == response_name) return sds(0);
  return sds(static_cast<Eigen::Index>(predictor_index(name) + 1));
}

double SscpMatrix::at(const std::string& row, const std::string& col) const {
  auto index = [&](const std::string& name) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) {
      throw Error(ErrorKind::UnknownName, "label '" + name + "' not in SSCP");
    }
    return static_cast<Eigen::Index>(it - labels.begin());
  };
  return m(index(row), index(col));
}

CenteredData mean_center(const Dataset& d) {
  const auto n = static_cast<Eigen::Index>(d.n());
  const auto p = static_cast<Eigen::Index>(d.p());

  auto center = [&](const std::string& name, Eigen::Ref<Eigen::VectorXd> out,
                    double& mean, double& sd) {
    const auto& values = d.column(name).values;
    for (const double v : values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::NonFiniteValue,
                    "non-finite value in column '" + name + "'");
      }
    }
    const Eigen::Map<const Eigen::VectorXd> raw(values.data(), n);
    mean = raw.mean();
    out = raw.array() - mean;
    sd = sample_sd(out);
    if (!(sd > 0.0)) {
      throw Error(ErrorKind::ConstantColumn,
                  "column '" + name + "' is constant (sd = 0)");
    }
  };

  CenteredData c;
  c.response_name = d.response_name();
  c.predictor_names = d.predictor_names();
  c.y.resize(n);
  c.x.resize(n, p);
  c.means.resize(p + 1);
  c.sds.resize(p + 1);
  center(d.response_name(), c.y, c.means(0), c.sds(0));
  for (Eigen::Index j = 0; j < p; ++j) {
    center(d.predictor_names()[static_cast<std::size_t>(j)], c.x.col(j),
           c.means(j + 1), c.sds(j + 1));
  }
  return c;
}

SscpMatrix sscp(const CenteredData& c, std::span<const std::string> labels) {
  const auto k = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd cols(static_cast<Eigen::Index>(c.n()), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    cols.col(i) = c.column(labels[static_cast<std::size_t>(i)]);
  }
  SscpMatrix out;
  out.labels.assign(labels.begin(), labels.end());
  out.m.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = cols.col(i).dot(cols.col(j));
      out.m(i, j) = v;
      out.m(j, i) = v;
    }
  }
  return out;
}

OlsFit fit_ols(const CenteredData& c, std::span<const std::string> subset) {
  if (subset.empty()) throw Error(ErrorKind::EmptySubset, "predictor subset is empty");
  const auto k = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd x(static_cast<Eigen::Index>(c.n()), k);
  Eigen::VectorXd means(k);
  Eigen::VectorXd sds(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto idx = static_cast<Eigen::Index>(
        c.predictor_index(subset[static_cast<std::size_t>(j)]));
    x.col(j) = c.x.col(idx);
    means(j) = c.means(idx + 1);
    sds(j) = c.sds(idx + 1);
  }
  return solve_centered(x, c.y, {subset.begin(), subset.end()}, means,
                        c.means(0), sds, c.sds(0));
}

OlsFit fit_centered_design(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           std::vector<std::string> labels,
                           const Eigen::VectorXd& column_means, double y_mean) {
  if (labels.size() != static_cast<std::size_t>(x.cols()) ||
      column_means.size() != x.cols() || x.rows() != y.size()) {
    throw Error(ErrorKind::InvalidArgument, "design dimensions do not agree");
  }
  Eigen::VectorXd sds(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) sds(j) = sample_sd(x.col(j));
  return solve_centered(x, y, std::move(labels), column_means, y_mean, sds,
                        sample_sd(y));
}

AnovaTable anova_table(const OlsFit& fit) {
  AnovaTable table;
  table.rows.push_back({"Regression", fit.ss_regression, fit.df_model,
                        fit.ms_regression(), fit.f});
  table.rows.push_back({"Residual", fit.ss_residual, fit.df_residual,
                        fit.ms_residual(), std::nullopt});
  const int df_total = fit.df_model + fit.df_residual;
  table.rows.push_back({"Total", fit.ss_total, df_total,
                        fit.ss_total / df_total, std::nullopt});
  table.r2 = fit.r2;
  table.additive = true;
  return table;
}

}  // namespace varpart
