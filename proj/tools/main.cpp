#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "mssv/analysis.hpp"
#include "mssv/gibbs.hpp"
#include "mssv/io.hpp"
#include "mssv/simulation.hpp"
#include "mssv/types.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string default_out() {
  const char* env = std::getenv("MSSV_OUTPUT_DIR");
  return env ? env : ".";
}

mssv::Dataset dataset_for_archive(const mssv::PosteriorArchive& archive, const std::string& data_path) {
  const mssv::CsvTable table = mssv::load_csv(data_path);
  mssv::Dataset data =
      mssv::prepare_dataset(table.values, archive.manifest.p, archive.manifest.d, table.names, table.time);
  if (data.T() != archive.manifest.T || data.N() != archive.manifest.N)
    throw std::runtime_error("data file does not match the archive dimensions (T=" +
                             std::to_string(data.T()) + ", N=" + std::to_string(data.N()) +
                             " vs manifest T=" + std::to_string(archive.manifest.T) +
                             ", N=" + std::to_string(archive.manifest.N) + ")");
  return data;
}

std::vector<std::string> variable_names(const mssv::PosteriorArchive& archive) {
  std::vector<std::string> names;
  if (!archive.manifest.config_json.empty()) {
    // archive config carries no names; fall back to generic labels
  }
  for (int i = 0; i < archive.manifest.N; ++i) names.push_back("var" + std::to_string(i + 1));
  return names;
}

std::vector<std::string> pattern_names(const mssv::PosteriorArchive& archive) {
  std::vector<std::string> names;
  if (!archive.manifest.config_json.empty()) {
    const json cfg = json::parse(archive.manifest.config_json);
    if (cfg.contains("patterns"))
      for (const auto& mask : cfg.at("patterns")) names.push_back(mask.get<std::string>());
  }
  while (static_cast<int>(names.size()) < archive.manifest.K)
    names.push_back("pattern" + std::to_string(names.size() + 1));
  return names;
}

int archive_tvi_equation(const mssv::PosteriorArchive& archive) {
  if (!archive.manifest.config_json.empty()) {
    const json cfg = json::parse(archive.manifest.config_json);
    if (cfg.contains("tvi_equation")) return cfg.at("tvi_equation").get<int>() - 1;
  }
  return 0;
}

void run_estimate(const std::string& config_path, const std::string& data_override,
                  std::uint64_t seed_override, bool has_seed, int chains, const std::string& out,
                  bool quiet) {
  mssv::RunConfig run = mssv::load_config(config_path);
  if (!data_override.empty()) run.data_path = data_override;
  if (run.data_path.empty())
    throw std::runtime_error("no data file: set \"data\" in the config or pass --data");
  if (has_seed) run.model.mcmc.seed = seed_override;

  const mssv::CsvTable table = mssv::load_csv(run.data_path);
  mssv::Dataset data =
      mssv::prepare_dataset(table.values, run.model.p, run.model.d, table.names, table.time);
  if (data.N() != run.model.N)
    throw std::runtime_error("config declares " + std::to_string(run.model.N) +
                             " variables but the data has " + std::to_string(data.N()));
  const mssv::RestrictionPatternSet patterns = mssv::build_patterns(run.model);

  for (int chain = 0; chain < chains; ++chain) {
    const std::uint64_t seed =
        (chain == 0) ? run.model.mcmc.seed : mssv::RngStream(run.model.mcmc.seed).split(chain).seed();
    std::function<void(int, int)> progress;
    if (!quiet) {
      progress = [&](int done, int total) {
        if (done % std::max(total / 20, 1) == 0)
          std::cerr << "chain " << (chain + 1) << ": " << done << "/" << total << " iterations\r"
                    << std::flush;
      };
    }
    mssv::PosteriorArchive archive = mssv::run_gibbs(run.model, patterns, data, seed, progress);
    archive.manifest.config_json = [&] {
      // embed the effective configuration for self-contained analysis
      return std::string(mssv::config_to_json(run.model, run.data_path));
    }();
    const std::string dir =
        (chains == 1) ? out : (fs::path(out) / ("chain-" + std::to_string(chain + 1))).string();
    mssv::write_archive(archive, dir);
    if (!quiet)
      std::cerr << "\nchain " << (chain + 1) << ": stored " << archive.size() << " draws in " << dir
                << "\n";
  }
}

void run_simulate(const std::string& dgp_path, const std::string& out) {
  const mssv::DgpFile dgp = mssv::load_dgp(dgp_path);
  mssv::RngStream rng(dgp.spec.seed);
  const mssv::SimulationOutput sim = mssv::simulate(dgp.spec, rng);
  fs::create_directories(out);

  std::vector<std::string> names;
  for (int i = 0; i < dgp.spec.N; ++i) names.push_back("var" + std::to_string(i + 1));
  mssv::write_matrix_csv((fs::path(out) / "data.csv").string(), names, sim.raw);

  Eigen::MatrixXd latents(sim.s.size(), 1 + 2 * dgp.spec.N);
  std::vector<std::string> latent_names{"regime"};
  for (int i = 0; i < dgp.spec.N; ++i) latent_names.push_back("h" + std::to_string(i + 1));
  for (int i = 0; i < dgp.spec.N; ++i) latent_names.push_back("shock" + std::to_string(i + 1));
  for (int t = 0; t < sim.s.size(); ++t) {
    latents(t, 0) = sim.s(t) + 1;
    for (int i = 0; i < dgp.spec.N; ++i) latents(t, 1 + i) = sim.h(i, t);
    for (int i = 0; i < dgp.spec.N; ++i) latents(t, 1 + dgp.spec.N + i) = sim.u(i, t);
  }
  mssv::write_matrix_csv((fs::path(out) / "latents.csv").string(), latent_names, latents);
  std::cerr << "simulated " << dgp.spec.T << " observations into " << out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian Markov-switching structural VAR with stochastic volatility and "
               "regime-specific identification-pattern selection"};
  app.require_subcommand(1);

  std::string config_path, data_path, archive_dir, out = default_out(), dgp_path;
  std::uint64_t seed = 0;
  bool quiet = false;
  int chains = 1;

  auto* estimate = app.add_subcommand("estimate", "run the Gibbs sampler and store the archive");
  estimate->add_option("--config", config_path, "model configuration file")->required();
  estimate->add_option("--data", data_path, "CSV data file (overrides the config entry)");
  auto* seed_opt = estimate->add_option("--seed", seed, "seed override");
  estimate->add_option("--chains", chains, "number of independent chains")->default_val(1);
  estimate->add_option("--out", out, "output directory");
  estimate->add_flag("--quiet", quiet, "suppress progress output");

  auto* simulate = app.add_subcommand("simulate", "generate data from a ground-truth process");
  simulate->add_option("--dgp", dgp_path, "process description file")->required();
  simulate->add_option("--out", out, "output directory");

  int shock = 1, horizon = 60, instrument = 0, pattern_filter = 0, donor = 1, window = 12,
      equation = 0, policy = 0;
  double size = -0.25, mass = 0.95, epsilon = 0.05;
  bool impact_dist = false;
  std::string diff_list;

  auto* irf = app.add_subcommand("irf", "regime-specific impulse responses");
  irf->add_option("--archive", archive_dir, "archive directory")->required();
  irf->add_option("--shock", shock, "structural shock (1-based)")->default_val(3);
  irf->add_option("--horizon", horizon, "horizons beyond impact")->default_val(60);
  irf->add_option("--size", size, "impact size of the instrument variable")->default_val(-0.25);
  irf->add_option("--instrument", instrument, "instrument variable (1-based; default = shock)");
  irf->add_option("--hdi", mass, "highest-density mass")->default_val(0.95);
  irf->add_flag("--impact-distribution", impact_dist, "write horizon-zero response draws instead");
  irf->add_option("--variable", equation, "variable for --impact-distribution (1-based)");
  irf->add_option("--condition-pattern", pattern_filter,
                  "keep only draws with this pattern selected (1-based; 0 = all)");
  irf->add_option("--out", out, "output directory");

  auto* tvi = app.add_subcommand("tvi-probs", "posterior pattern probabilities per regime");
  tvi->add_option("--archive", archive_dir)->required();
  tvi->add_option("--out", out);

  auto* rp = app.add_subcommand("regime-probs", "posterior regime probabilities per period");
  rp->add_option("--archive", archive_dir)->required();
  rp->add_option("--data", data_path, "CSV data file (for the time index)");
  rp->add_option("--out", out);

  auto* het = app.add_subcommand("verify-het", "within-regime heteroskedasticity check");
  het->add_option("--archive", archive_dir)->required();
  het->add_option("--equation", equation, "equation (1-based; default = selected equation)");
  het->add_option("--epsilon", epsilon, "closeness threshold")->default_val(0.05);
  het->add_option("--out", out);

  auto* cf = app.add_subcommand("counterfactual", "paths with the policy row from a donor regime");
  cf->add_option("--archive", archive_dir)->required();
  cf->add_option("--data", data_path, "CSV data file")->required();
  cf->add_option("--donor-regime", donor, "donor regime (1-based)")->required();
  cf->add_option("--policy-equation", policy, "policy equation (1-based; default = selected equation)");
  cf->add_option("--hdi", mass, "highest-density mass")->default_val(0.68);
  cf->add_option("--out", out);

  auto* cum = app.add_subcommand("cumulative", "trailing-window cumulative shock effects");
  cum->add_option("--archive", archive_dir)->required();
  cum->add_option("--data", data_path, "CSV data file")->required();
  cum->add_option("--shock", shock, "structural shock (1-based)")->default_val(3);
  cum->add_option("--window", window, "window length")->default_val(12);
  cum->add_option("--hdi", mass, "highest-density mass")->default_val(0.68);
  cum->add_option("--out", out);

  auto* mom = app.add_subcommand("moments", "regime-specific data and shock moments");
  mom->add_option("--archive", archive_dir)->required();
  mom->add_option("--data", data_path, "CSV data file")->required();
  mom->add_option("--diff", diff_list, "comma-separated 1-based variables taken in first differences");
  mom->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*estimate) {
      run_estimate(config_path, data_path, seed, seed_opt->count() > 0, chains, out, quiet);
    } else if (*simulate) {
      run_simulate(dgp_path, out);
    } else if (*irf) {
      const mssv::PosteriorArchive archive = mssv::read_archive(archive_dir);
      fs::create_directories(out);
      if (impact_dist) {
        if (equation < 1) throw std::runtime_error("--variable is required with --impact-distribution");
        const int n_regimes = archive.manifest.M;
        for (int m = 0; m < n_regimes; ++m) {
          const std::vector<double> draws = mssv::impact_response_distribution(
              archive, shock - 1, equation - 1, size, m, instrument - 1, pattern_filter - 1);
          Eigen::MatrixXd col(draws.size(), 1);
          for (std::size_t i = 0; i < draws.size(); ++i) col(i, 0) = draws[i];
          mssv::write_matrix_csv(
              (fs::path(out) / ("impact_distribution_regime" + std::to_string(m + 1) + ".csv")).string(),
              {"impact"}, col);
        }
        std::cerr << "wrote impact_distribution_regime*.csv to " << out << "\n";
      } else {
        const mssv::IrfResult result =
            mssv::impulse_responses(archive, shock - 1, horizon, size, instrument - 1, mass);
        const std::vector<std::string> vars = variable_names(archive);
        Eigen::MatrixXd table(archive.manifest.M * archive.manifest.N * (horizon + 1), 6);
        int row = 0;
        for (int m = 0; m < archive.manifest.M; ++m)
          for (int var = 0; var < archive.manifest.N; ++var)
            for (int h = 0; h <= horizon; ++h) {
              table(row, 0) = m + 1;
              table(row, 1) = var + 1;
              table(row, 2) = h;
              table(row, 3) = result.median[m][var](h);
              table(row, 4) = result.lower[m][var](h);
              table(row, 5) = result.upper[m][var](h);
              ++row;
            }
        mssv::write_matrix_csv((fs::path(out) / "irf.csv").string(),
                               {"regime", "variable", "horizon", "median", "lower", "upper"}, table);
        if (result.skipped_draws > 0)
          std::cerr << "skipped " << result.skipped_draws << " singular or zero-impact draws\n";
        std::cerr << "wrote irf.csv to " << out << "\n";
      }
    } else if (*tvi) {
      const mssv::PosteriorArchive archive = mssv::read_archive(archive_dir);
      const Eigen::MatrixXd probs = mssv::tvi_probabilities(archive);
      fs::create_directories(out);
      std::vector<std::string> regimes;
      for (int m = 0; m < probs.rows(); ++m) regimes.push_back("regime" + std::to_string(m + 1));
      mssv::write_matrix_csv((fs::path(out) / "tvi_probabilities.csv").string(),
                             pattern_names(archive), probs, regimes, "regime");
      std::cerr << "wrote tvi_probabilities.csv to " << out << "\n";
    } else if (*rp) {
      const mssv::PosteriorArchive archive = mssv::read_archive(archive_dir);
      const Eigen::MatrixXd probs = mssv::regime_probabilities(archive);
      fs::create_directories(out);
      std::vector<std::string> cols;
      for (int m = 0; m < probs.cols(); ++m) cols.push_back("regime" + std::to_string(m + 1));
      std::vector<std::string> time;
      if (!data_path.empty()) {
        const mssv::Dataset data = dataset_for_archive(archive, data_path);
        time = data.time;
      }
      mssv::write_matrix_csv((fs::path(out) / "regime_probabilities.csv").string(), cols, probs, time);
      std::cerr << "wrote regime_probabilities.csv to " << out << "\n";
    } else if (*het) {
      const mssv::PosteriorArchive archive = mssv::read_archive(archive_dir);
      const int eq = (equation >= 1) ? equation - 1 : archive_tvi_equation(archive);
      const auto reports = mssv::verify_heteroskedasticity(archive, eq, epsilon);
      fs::create_directories(out);
      json j = json::array();
      Eigen::MatrixXd draws(archive.size(), reports.size());
      for (std::size_t m = 0; m < reports.size(); ++m) {
        const auto& rep = reports[m];
        j.push_back({{"regime", rep.regime + 1},
                     {"fraction_near_zero", rep.fraction_near_zero},
                     {"abs_omega_median", rep.abs_omega.median},
                     {"abs_omega_hdi90", {rep.abs_omega.lower, rep.abs_omega.upper}},
                     {"identified", rep.identified},
                     {"epsilon", epsilon}});
        for (int i = 0; i < archive.size(); ++i) draws(i, m) = rep.draws[i];
      }
      std::ofstream file(fs::path(out) / "heteroskedasticity.json");
      file << j.dump(2) << "\n";
      std::vector<std::string> cols;
      for (std::size_t m = 0; m < reports.size(); ++m) cols.push_back("regime" + std::to_string(m + 1));
      mssv::write_matrix_csv((fs::path(out) / "omega_draws.csv").string(), cols, draws);
      std::cerr << "wrote heteroskedasticity.json and omega_draws.csv to " << out << "\n";
    } else if (*cf) {
      const mssv::PosteriorArchive archive = mssv::read_archive(archive_dir);
      const mssv::Dataset data = dataset_for_archive(archive, data_path);
      const int eq = (policy >= 1) ? policy - 1 : archive_tvi_equation(archive);
      const mssv::CounterfactualResult result =
          mssv::counterfactual(archive, data, eq, donor - 1, mass);
      fs::create_directories(out);
      const int n = archive.manifest.N, t_len = archive.manifest.T;
      Eigen::MatrixXd table(n * t_len, 8);
      int row = 0;
      for (int var = 0; var < n; ++var)
        for (int t = 0; t < t_len; ++t) {
          table(row, 0) = var + 1;
          table(row, 1) = t + 1;
          table(row, 2) = result.counterfactual[var][t].median;
          table(row, 3) = result.counterfactual[var][t].lower;
          table(row, 4) = result.counterfactual[var][t].upper;
          table(row, 5) = result.model_implied[var][t].median;
          table(row, 6) = result.model_implied[var][t].lower;
          table(row, 7) = result.model_implied[var][t].upper;
          ++row;
        }
      mssv::write_matrix_csv(
          (fs::path(out) / "counterfactual.csv").string(),
          {"variable", "t", "cf_median", "cf_lower", "cf_upper", "actual_median", "actual_lower",
           "actual_upper"},
          table);
      std::cerr << "wrote counterfactual.csv to " << out << "\n";
    } else if (*cum) {
      const mssv::PosteriorArchive archive = mssv::read_archive(archive_dir);
      const mssv::Dataset data = dataset_for_archive(archive, data_path);
      const mssv::CumulativeEffects result =
          mssv::cumulative_effects(archive, data, window, shock - 1, mass);
      fs::create_directories(out);
      const int n = archive.manifest.N, t_len = archive.manifest.T;
      Eigen::MatrixXd table(n * t_len, 6);
      int row = 0;
      for (int var = 0; var < n; ++var)
        for (int t = 0; t < t_len; ++t) {
          table(row, 0) = var + 1;
          table(row, 1) = t + 1;
          table(row, 2) = result.series[var][t].median;
          table(row, 3) = result.series[var][t].lower;
          table(row, 4) = result.series[var][t].upper;
          table(row, 5) = result.truncated[t] ? 1 : 0;
          ++row;
        }
      mssv::write_matrix_csv((fs::path(out) / "cumulative_effects.csv").string(),
                             {"variable", "t", "median", "lower", "upper", "truncated"}, table);
      std::cerr << "wrote cumulative_effects.csv to " << out << "\n";
    } else if (*mom) {
      const mssv::PosteriorArchive archive = mssv::read_archive(archive_dir);
      const mssv::Dataset data = dataset_for_archive(archive, data_path);
      std::vector<bool> diff(archive.manifest.N, false);
      if (!diff_list.empty()) {
        std::istringstream ss(diff_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const int idx = std::stoi(item);
          if (idx < 1 || idx > archive.manifest.N)
            throw std::runtime_error("--diff index out of range: " + item);
          diff[idx - 1] = true;
        }
      }
      const mssv::RegimeMoments result = mssv::regime_moments(archive, data, diff);
      fs::create_directories(out);
      const int n = archive.manifest.N, m_count = archive.manifest.M;
      Eigen::MatrixXd table(n * m_count, 6);
      int row = 0;
      for (int var = 0; var < n; ++var)
        for (int m = 0; m < m_count; ++m) {
          table(row, 0) = var + 1;
          table(row, 1) = m + 1;
          table(row, 2) = result.data_mean(var, m);
          table(row, 3) = result.data_sd(var, m);
          table(row, 4) = result.shock_mean(var, m);
          table(row, 5) = result.shock_sd(var, m);
          ++row;
        }
      mssv::write_matrix_csv((fs::path(out) / "regime_moments.csv").string(),
                             {"variable", "regime", "data_mean", "data_sd", "shock_mean", "shock_sd"},
                             table);
      std::cerr << "wrote regime_moments.csv to " << out << "\n";
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
