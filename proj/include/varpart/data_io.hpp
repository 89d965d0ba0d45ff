#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "varpart/ols.hpp"

namespace varpart {

struct CsvSpec {
  std::string path;
  std::string response;
  std::vector<std::string> predictors;
  char delimiter = ',';
};

/// Parameters for a reproducible correlated dataset. Predictors are named
/// X1..Xp and the response Y.
struct SyntheticSpec {
  std::size_t n = 0;
  std::size_t p = 0;
  Eigen::MatrixXd correlation;
  Eigen::VectorXd signal_coefficients;
  double noise_sd = 1.0;
  std::uint64_t seed = 0;
};

Dataset load_csv(const CsvSpec& spec);

/// Same parsing rules as load_csv, reading from an already-open stream.
/// `source` names the input in error messages.
Dataset read_csv(std::istream& in, const CsvSpec& spec,
                 const std::string& source = "<stream>");

/// Writes the response then the predictors, shortest round-trip decimal form.
void write_csv(std::ostream& out, const Dataset& d, char delimiter = ',');

/// The 21-store Dwaine Studios sales data: SALES on TARGTPOP and DISPOINC.
Dataset dwaine_fixture();

/// Equicorrelated spec with unit signal coefficients; handy for tests and the
/// CLI's `synth` command.
SyntheticSpec equicorrelated_spec(std::size_t n, std::size_t p, double rho,
                                  std::uint64_t seed, double noise_sd = 1.0);

Dataset generate_synthetic(const SyntheticSpec& spec);

/// Replaces the predictors by Gram-Schmidt orthogonalized versions (in
/// predictor order, each keeping its original mean) so their centered
/// cross-products vanish. The response is untouched.
Dataset orthogonalize_predictors(const Dataset& d);

/// Standard normal variates from a seeded mt19937_64 via Box-Muller. The
/// transform is written out here rather than taken from <random>, whose
/// distributions differ between standard libraries.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed);
  double next();
  double uniform();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace varpart
