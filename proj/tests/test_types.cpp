#include <doctest.h>

#include "mssv/types.hpp"

using namespace mssv;

namespace {

ModelConfig benchmark_config() {
  ModelConfig config;
  config.N = 6;
  config.p = 6;
  config.d = 1;
  config.M = 2;
  config.K = 4;
  config.tvi_equation = 2;
  config.pattern_masks = {"***000", "****00", "***0*0", "00*0*0"};
  return config;
}

}  // namespace

TEST_CASE("config validation catches broken settings") {
  ModelConfig config = benchmark_config();
  CHECK_NOTHROW(config.validate());

  ModelConfig bad = config;
  bad.N = 1;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.tvi_equation = 6;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.pattern_masks.pop_back();
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.pattern_masks[0] = "**x000";
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.mcmc.iterations = bad.mcmc.burnin;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.prior.s_sB = 0.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("pattern construction mirrors the policy-rule masks") {
  const ModelConfig config = benchmark_config();
  const RestrictionPatternSet patterns = build_patterns(config);

  // interest-rate rule: three free coefficients on the first three columns
  const RestrictionPattern& tr = patterns.pattern(2, 0, 0);
  CHECK(tr.r() == 3);
  CHECK(tr.free_columns == std::vector<int>{0, 1, 2});
  CHECK(tr.V.rows() == 3);
  CHECK(tr.V.cols() == 6);
  for (int i = 0; i < 3; ++i) CHECK(tr.V(i, i) == 1.0);
  CHECK(tr.V.sum() == 3.0);

  // spread-augmented rule: four free coefficients on the first four columns
  const RestrictionPattern& tr_ts = patterns.pattern(2, 0, 1);
  CHECK(tr_ts.r() == 4);
  CHECK(tr_ts.free_columns == std::vector<int>{0, 1, 2, 3});

  // first equation is triangular with a single free coefficient
  const RestrictionPattern& eq1 = patterns.pattern(0, 0, 0);
  CHECK(patterns.pattern_count(0) == 1);
  CHECK(eq1.r() == 1);
  CHECK(eq1.free_columns == std::vector<int>{0});

  CHECK(patterns.pattern_count(2) == 4);

  // row expansion places free values and zeros elsewhere
  Eigen::VectorXd b(3);
  b << 1.5, -0.7, 2.0;
  const Eigen::RowVectorXd row = tr.expand(b);
  CHECK(row(0) == 1.5);
  CHECK(row(2) == 2.0);
  CHECK(row(3) == 0.0);
  CHECK((tr.compress(row) - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degenerate all-zero mask is rejected") {
  ModelConfig config = benchmark_config();
  config.pattern_masks[3] = "000000";
  CHECK_THROWS(build_patterns(config));
}

TEST_CASE("dataset preparation builds lagged regressors") {
  Eigen::MatrixXd raw(3, 2);
  raw << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
  // N=2, p=1, T0=3 -> T=2, X has 3 columns
  const Dataset data = prepare_dataset(raw, 1, 1);
  CHECK(data.T() == 2);
  CHECK(data.X.cols() == 3);
  CHECK(data.Y(0, 0) == 3.0);
  CHECK(data.X(0, 0) == 1.0);  // first lag of variable 1
  CHECK(data.X(0, 1) == 2.0);
  CHECK(data.X(0, 2) == 1.0);  // constant
  CHECK(data.X(1, 0) == 3.0);
  CHECK(data.X.col(2).minCoeff() == 1.0);
}

TEST_CASE("dataset dimensions for the six-variable monthly design") {
  // N=6, p=6, d=1 -> 37 regressor columns
  Eigen::MatrixXd raw = Eigen::MatrixXd::Random(80, 6);
  const Dataset data = prepare_dataset(raw, 6, 1);
  CHECK(data.X.cols() == 37);
  CHECK(data.T() == 74);
}

TEST_CASE("dataset rejects missing values naming the cell") {
  Eigen::MatrixXd raw = Eigen::MatrixXd::Ones(10, 2);
  raw(3, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    prepare_dataset(raw, 1, 1);
    FAIL("expected throw");
  } catch (const std::invalid_argument& err) {
    const std::string msg = err.what();
    CHECK(msg.find("row 4") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }
}


TEST_CASE("state validation flags off-pattern and non-simplex values") {
  ModelConfig config;
  config.N = 2;
  config.p = 1;
  config.M = 1;
  config.K = 1;
  config.tvi_equation = 1;
  config.pattern_masks = {"**"};
  const RestrictionPatternSet patterns = build_patterns(config);

  ParameterState state;
  state.A = Eigen::MatrixXd::Zero(2, 3);
  state.B = {Eigen::MatrixXd::Identity(2, 2)};
  state.kappa = {0};
  state.P = Eigen::MatrixXd::Ones(1, 1);
  state.pi0 = Eigen::VectorXd::Ones(1);
  state.s = Eigen::VectorXi::Zero(5);
  state.h = Eigen::MatrixXd::Zero(2, 5);
  state.rho = Eigen::VectorXd::Constant(2, 0.5);
  state.omega = Eigen::MatrixXd::Constant(2, 1, 0.1);
  state.sigma2_omega = Eigen::VectorXd::Ones(2);
  state.q = Eigen::MatrixXi::Zero(2, 5);
  state.gamma_A = Eigen::VectorXd::Ones(2);
  state.gamma_B = Eigen::VectorXd::Ones(2);
  state.s_A = Eigen::VectorXd::Ones(2);
  state.s_B = Eigen::VectorXd::Ones(2);

  CHECK_NOTHROW(validate_state(state, patterns));

  ParameterState bad = state;
  bad.B[0](0, 1) = 0.5;  // upper-triangular entry banned for equation 1
  CHECK_THROWS(validate_state(bad, patterns));

  bad = state;
  bad.rho(0) = 1.0;
  CHECK_THROWS(validate_state(bad, patterns));

  bad = state;
  bad.P(0, 0) = 0.9;
  CHECK_THROWS(validate_state(bad, patterns));

  bad = state;
  bad.B[0](1, 1) = 0.0;  // singular
  CHECK_THROWS(validate_state(bad, patterns));
}

TEST_CASE("config hash tracks content") {
  const ModelConfig config = benchmark_config();
  ModelConfig other = config;
  CHECK(config_hash(config) == config_hash(other));
  other.mcmc.seed = 2;  // seed is not part of the model identity
  CHECK(config_hash(config) == config_hash(other));
  other.p = 5;
  CHECK(config_hash(config) != config_hash(other));
}
