#include "varpart/data_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "varpart/error.hpp"

namespace varpart {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

// One record; double quotes group a field and "" is a literal quote.
std::vector<std::string> split_record(const std::string& line, char delimiter,
                                      const std::string& source, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && std::string(trim(field)).empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (ch == delimiter) {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) {
    throw Error(ErrorKind::ParseError, source + ": line " + std::to_string(line_no) +
                                           ": unterminated quoted field");
  }
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

// Transcribed from Kutner et al., Applied Linear Statistical Models (5th ed.),
// Table 6.1. Columns: TARGTPOP, DISPOINC, SALES.
constexpr std::array<std::array<double, 3>, 21> kDwaine{{
    {68.5, 16.7, 174.4}, {45.2, 16.8, 164.4}, {91.3, 18.2, 244.2},
    {47.8, 16.3, 154.6}, {46.9, 17.3, 181.6}, {66.1, 18.2, 207.5},
    {49.5, 15.9, 152.8}, {52.0, 17.2, 163.2}, {48.9, 16.6, 145.4},
    {38.4, 16.0, 137.2}, {87.9, 18.3, 241.9}, {72.8, 17.1, 191.1},
    {88.4, 17.4, 232.0}, {42.9, 15.8, 145.3}, {52.5, 17.8, 161.1},
    {85.7, 18.4, 209.7}, {41.3, 16.5, 146.4}, {51.7, 16.3, 144.0},
    {89.6, 18.1, 232.6}, {82.7, 19.1, 224.1}, {52.3, 16.0, 166.5},
}};

}  // namespace

Dataset read_csv(std::istream& in, const CsvSpec& spec, const std::string& source) {
  if (spec.predictors.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no predictors selected");
  }
  if (std::find(spec.predictors.begin(), spec.predictors.end(), spec.response) !=
      spec.predictors.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "response '" + spec.response + "' is also listed as a predictor");
  }

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    header = split_record(line, spec.delimiter, source, line_no);
    break;
  }
  if (header.empty()) throw Error(ErrorKind::EmptyData, source + ": file is empty");

  std::vector<std::string> wanted{spec.response};
  wanted.insert(wanted.end(), spec.predictors.begin(), spec.predictors.end());
  std::vector<std::size_t> positions;
  for (const auto& name : wanted) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorKind::MissingColumn,
                  source + ": no column named '" + name + "' in header");
    }
    positions.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  std::vector<Column> columns;
  for (const auto& name : wanted) columns.push_back({name, {}});
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_record(line, spec.delimiter, source, line_no);
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::ParseError,
                  source + ": line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    for (std::size_t k = 0; k < wanted.size(); ++k) {
      double v = 0.0;
      if (!parse_double(fields[positions[k]], v)) {
        throw Error(ErrorKind::NonNumericCell,
                    source + ": line " + std::to_string(line_no) + ", column '" +
                        wanted[k] + "': '" + fields[positions[k]] +
                        "' is not a number");
      }
      columns[k].values.push_back(v);
    }
  }
  if (columns.front().values.empty()) {
    throw Error(ErrorKind::EmptyData, source + ": no data rows");
  }
  return Dataset::create(std::move(columns), spec.response, spec.predictors);
}

Dataset load_csv(const CsvSpec& spec) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(spec.path, ec)) {
    throw Error(ErrorKind::FileNotFound, "cannot open '" + spec.path + "'");
  }
  std::ifstream in(spec.path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open '" + spec.path + "'");
  return read_csv(in, spec, spec.path);
}

void write_csv(std::ostream& out, const Dataset& d, char delimiter) {
  std::vector<const Column*> cols{&d.column(d.response_name())};
  for (const auto& name : d.predictor_names()) cols.push_back(&d.column(name));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k) out << delimiter;
    out << cols[k]->name;
  }
  out << '\n';
  for (std::size_t i = 0; i < d.n(); ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k) out << delimiter;
      out << format_double(cols[k]->values[i]);
    }
    out << '\n';
  }
}

Dataset dwaine_fixture() {
  std::vector<Column> cols{{"SALES", {}}, {"TARGTPOP", {}}, {"DISPOINC", {}}};
  for (const auto& row : kDwaine) {
    cols[0].values.push_back(row[2]);
    cols[1].values.push_back(row[0]);
    cols[2].values.push_back(row[1]);
  }
  return Dataset::create(std::move(cols), "SALES", {"TARGTPOP", "DISPOINC"});
}

NormalStream::NormalStream(std::uint64_t seed) : engine_(seed) {}

double NormalStream::uniform() {
  // 53 high bits -> (0, 1); never returns 0 so log() below is finite.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

SyntheticSpec equicorrelated_spec(std::size_t n, std::size_t p, double rho,
                                  std::uint64_t seed, double noise_sd) {
  SyntheticSpec spec;
  spec.n = n;
  spec.p = p;
  const auto pp = static_cast<Eigen::Index>(p);
  spec.correlation = Eigen::MatrixXd::Constant(pp, pp, rho);
  spec.correlation.diagonal().setOnes();
  spec.signal_coefficients = Eigen::VectorXd::Ones(pp);
  spec.noise_sd = noise_sd;
  spec.seed = seed;
  return spec;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  const auto p = static_cast<Eigen::Index>(spec.p);
  if (spec.p == 0 || spec.n < spec.p + 2) {
    throw Error(ErrorKind::InvalidArgument, "synthetic spec needs p >= 1 and n >= p + 2");
  }
  if (spec.correlation.rows() != p || spec.correlation.cols() != p ||
      spec.signal_coefficients.size() != p) {
    throw Error(ErrorKind::InvalidArgument, "synthetic spec dimensions disagree with p");
  }
  if (!(spec.noise_sd > 0.0) || !std::isfinite(spec.noise_sd)) {
    throw Error(ErrorKind::InvalidArgument, "noise_sd must be positive");
  }
  const Eigen::MatrixXd& r = spec.correlation;
  if (!r.allFinite() || (r - r.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      (r.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::NotPositiveSemidefinite,
                "correlation must be symmetric with unit diagonal");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
  if (eig.info() != Eigen::Success ||
      eig.eigenvalues().minCoeff() < -1e-10 * static_cast<double>(p)) {
    throw Error(ErrorKind::NotPositiveSemidefinite,
                "correlation matrix is not positive semidefinite");
  }
  // Factor loading L with L L' = R; tolerates singular (rank-deficient) R.
  const Eigen::MatrixXd loading =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  NormalStream normal(spec.seed);
  std::vector<Column> cols(spec.p + 1);
  cols[0].name = "Y";
  std::vector<std::string> names;
  for (std::size_t j = 0; j < spec.p; ++j) {
    names.push_back("X" + std::to_string(j + 1));
    cols[j + 1].name = names.back();
  }
  Eigen::VectorXd factors(p);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) factors(j) = normal.next();
    const Eigen::VectorXd x = loading * factors;
    const double y = spec.signal_coefficients.dot(x) + spec.noise_sd * normal.next();
    cols[0].values.push_back(y);
    for (Eigen::Index j = 0; j < p; ++j) {
      cols[static_cast<std::size_t>(j) + 1].values.push_back(x(j));
    }
  }
  return Dataset::create(std::move(cols), "Y", std::move(names));
}

Dataset orthogonalize_predictors(const Dataset& d) {
  const auto n = static_cast<Eigen::Index>(d.n());
  std::vector<Eigen::VectorXd> basis;
  std::vector<Column> cols{d.column(d.response_name())};
  for (const auto& name : d.predictor_names()) {
    const auto& values = d.column(name).values;
    const Eigen::Map<const Eigen::VectorXd> raw(values.data(), n);
    const double mean = raw.mean();
    Eigen::VectorXd v = raw.array() - mean;
    // Two passes of modified Gram-Schmidt keep the residual dot products at
    // rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) v -= (q.dot(v) / q.squaredNorm()) * q;
    }
    if (!(v.squaredNorm() > 0.0)) {
      throw Error(ErrorKind::SingularDesign,
                  "singular design: '" + name + "' lies in the span of earlier predictors");
    }
    basis.push_back(v);
    Column c{name, std::vector<double>(values.size())};
    for (Eigen::Index i = 0; i < n; ++i) c.values[static_cast<std::size_t>(i)] = v(i) + mean;
    cols.push_back(std::move(c));
  }
  return Dataset::create(std::move(cols), d.response_name(), d.predictor_names());
}

}  // namespace varpart
