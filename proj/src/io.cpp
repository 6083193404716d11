#include "mssv/io.hpp"

#include <json.hpp>

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mssv {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

static_assert(std::endian::native == std::endian::little,
              "archive format requires a little-endian host");

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& text, double* out) {
  if (text.empty()) return false;
  try {
    std::size_t pos = 0;
    *out = std::stod(text, &pos);
    return pos == text.size();
  } catch (...) {
    return false;
  }
}

}  // namespace

CsvTable load_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("load_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(file, line)) throw std::runtime_error("load_csv: '" + path + "' is empty");
  std::vector<std::string> header = split_csv_line(line);
  if (header.empty()) throw std::runtime_error("load_csv: missing header row in '" + path + "'");

  std::vector<std::vector<std::string>> rows;
  int line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error("load_csv: ragged row at line " + std::to_string(line_no) + " of '" +
                               path + "' (" + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(header.size()) + ")");
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::runtime_error("load_csv: no data rows in '" + path + "'");

  // leading label column detected by a non-numeric first cell
  double probe;
  const bool has_time = !parse_double(rows.front().front(), &probe);
  const int first_col = has_time ? 1 : 0;
  const int n = static_cast<int>(header.size()) - first_col;
  if (n < 1) throw std::runtime_error("load_csv: no numeric columns in '" + path + "'");

  CsvTable table;
  table.names.assign(header.begin() + first_col, header.end());
  std::set<std::string> seen;
  for (const std::string& name : table.names)
    if (!seen.insert(name).second)
      throw std::runtime_error("load_csv: duplicate column name '" + name + "' in '" + path + "'");

  table.values.resize(static_cast<int>(rows.size()), n);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    if (has_time) table.time.push_back(rows[i][0]);
    for (int j = 0; j < n; ++j) {
      double value;
      if (!parse_double(rows[i][j + first_col], &value))
        throw std::runtime_error("load_csv: non-numeric cell '" + rows[i][j + first_col] +
                                 "' at line " + std::to_string(i + 2) + ", column " +
                                 std::to_string(j + first_col + 1) + " of '" + path + "'");
      table.values(i, j) = value;
    }
  }
  return table;
}

void write_matrix_csv(const std::string& path, const std::vector<std::string>& columns,
                      const Eigen::MatrixXd& values, const std::vector<std::string>& time,
                      const std::string& time_column) {
  if (static_cast<int>(columns.size()) != values.cols())
    throw std::invalid_argument("write_matrix_csv: header/column mismatch");
  std::ofstream file(path);
  if (!file) throw std::runtime_error("write_matrix_csv: cannot open '" + path + "'");
  file.precision(17);
  const bool with_time = !time.empty();
  if (with_time && static_cast<int>(time.size()) != values.rows())
    throw std::invalid_argument("write_matrix_csv: time index length mismatch");

  if (with_time) file << time_column << ",";
  for (std::size_t j = 0; j < columns.size(); ++j)
    file << columns[j] << (j + 1 < columns.size() ? "," : "\n");
  for (int i = 0; i < values.rows(); ++i) {
    if (with_time) file << time[i] << ",";
    for (int j = 0; j < values.cols(); ++j)
      file << values(i, j) << (j + 1 < values.cols() ? "," : "\n");
  }
}

namespace {

json priors_to_json(const PriorSettings& prior) {
  return json{{"nu_B", prior.nu_B},
              {"nu_gamma_B", prior.nu_gamma_B},
              {"s_sB", prior.s_sB},
              {"nu_sB", prior.nu_sB},
              {"nu_A", prior.nu_A},
              {"nu_gamma_A", prior.nu_gamma_A},
              {"s_sA", prior.s_sA},
              {"nu_sA", prior.nu_sA},
              {"dirichlet_boost", prior.dirichlet_boost},
              {"sigma2_omega_shape", prior.sigma2_omega_shape},
              {"sigma2_omega_scale", prior.sigma2_omega_scale}};
}

void priors_from_json(const json& j, PriorSettings* prior) {
  static const std::set<std::string> known{
      "nu_B", "nu_gamma_B", "s_sB", "nu_sB", "nu_A", "nu_gamma_A", "s_sA", "nu_sA",
      "dirichlet_boost", "sigma2_omega_shape", "sigma2_omega_scale"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::runtime_error("config: unknown prior key '" + it.key() + "'");
  prior->nu_B = j.value("nu_B", prior->nu_B);
  prior->nu_gamma_B = j.value("nu_gamma_B", prior->nu_gamma_B);
  prior->s_sB = j.value("s_sB", prior->s_sB);
  prior->nu_sB = j.value("nu_sB", prior->nu_sB);
  prior->nu_A = j.value("nu_A", prior->nu_A);
  prior->nu_gamma_A = j.value("nu_gamma_A", prior->nu_gamma_A);
  prior->s_sA = j.value("s_sA", prior->s_sA);
  prior->nu_sA = j.value("nu_sA", prior->nu_sA);
  prior->dirichlet_boost = j.value("dirichlet_boost", prior->dirichlet_boost);
  prior->sigma2_omega_shape = j.value("sigma2_omega_shape", prior->sigma2_omega_shape);
  prior->sigma2_omega_scale = j.value("sigma2_omega_scale", prior->sigma2_omega_scale);
}

ModelConfig config_from_json_obj(const json& j) {
  static const std::set<std::string> known{"data",     "variables", "lags",   "deterministic",
                                           "regimes",  "tvi_equation", "patterns", "priors",
                                           "mcmc",     "truth"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::runtime_error("config: unknown key '" + it.key() + "'");

  ModelConfig config;
  config.N = j.at("variables").get<int>();
  config.p = j.at("lags").get<int>();
  config.d = j.value("deterministic", 1);
  config.M = j.value("regimes", 1);
  config.tvi_equation = j.at("tvi_equation").get<int>() - 1;  // file uses 1-based
  config.pattern_masks = j.at("patterns").get<std::vector<std::string>>();
  config.K = static_cast<int>(config.pattern_masks.size());
  if (j.contains("priors")) priors_from_json(j.at("priors"), &config.prior);
  if (j.contains("mcmc")) {
    const json& m = j.at("mcmc");
    static const std::set<std::string> mk{"iterations", "burnin", "thin", "seed"};
    for (auto it = m.begin(); it != m.end(); ++it)
      if (!mk.count(it.key())) throw std::runtime_error("config: unknown mcmc key '" + it.key() + "'");
    config.mcmc.iterations = m.value("iterations", config.mcmc.iterations);
    config.mcmc.burnin = m.value("burnin", config.mcmc.burnin);
    config.mcmc.thin = m.value("thin", config.mcmc.thin);
    config.mcmc.seed = m.value("seed", config.mcmc.seed);
  }
  config.validate();
  return config;
}

}  // namespace

std::string config_to_json(const ModelConfig& config, const std::string& data_path) {
  json j{{"variables", config.N},
         {"lags", config.p},
         {"deterministic", config.d},
         {"regimes", config.M},
         {"tvi_equation", config.tvi_equation + 1},
         {"patterns", config.pattern_masks},
         {"priors", priors_to_json(config.prior)},
         {"mcmc",
          {{"iterations", config.mcmc.iterations},
           {"burnin", config.mcmc.burnin},
           {"thin", config.mcmc.thin},
           {"seed", config.mcmc.seed}}}};
  if (!data_path.empty()) j["data"] = data_path;
  return j.dump(2);
}

RunConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("load_config: cannot open '" + path + "'");
  json j;
  try {
    file >> j;
  } catch (const std::exception& err) {
    throw std::runtime_error("load_config: '" + path + "' is not valid JSON: " + err.what());
  }
  RunConfig run;
  try {
    run.model = config_from_json_obj(j);
  } catch (const std::exception& err) {
    throw std::runtime_error("load_config: '" + path + "': " + err.what());
  }
  run.data_path = j.value("data", "");
  return run;
}

namespace {

Eigen::MatrixXd matrix_from_json(const json& j, int rows, int cols, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw std::runtime_error("dgp: field '" + name + "' must have " + std::to_string(rows) + " rows");
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::runtime_error("dgp: row " + std::to_string(i + 1) + " of '" + name + "' must have " +
                               std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) out(i, c) = row.at(c).get<double>();
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

DgpFile load_dgp(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("load_dgp: cannot open '" + path + "'");
  json j;
  try {
    file >> j;
  } catch (const std::exception& err) {
    throw std::runtime_error("load_dgp: '" + path + "' is not valid JSON: " + err.what());
  }
  if (!j.contains("truth")) throw std::runtime_error("load_dgp: '" + path + "' has no 'truth' block");

  DgpFile out;
  const int n = j.at("variables").get<int>();
  const int p = j.at("lags").get<int>();
  const int d = j.value("deterministic", 1);
  const int m_count = j.value("regimes", 1);
  out.tvi_equation = j.at("tvi_equation").get<int>() - 1;
  out.pattern_masks = j.at("patterns").get<std::vector<std::string>>();

  const json& truth = j.at("truth");
  DgpSpec& spec = out.spec;
  spec.N = n;
  spec.p = p;
  spec.d = d;
  spec.M = m_count;
  spec.T = truth.at("T").get<int>();
  spec.seed = truth.value("seed", 0);
  spec.A = matrix_from_json(truth.at("A"), n, n * p + d, "A");
  const json& bs = truth.at("B");
  if (static_cast<int>(bs.size()) != m_count) throw std::runtime_error("dgp: 'B' must have one matrix per regime");
  for (int m = 0; m < m_count; ++m)
    spec.B.push_back(matrix_from_json(bs.at(m), n, n, "B[" + std::to_string(m + 1) + "]"));
  for (int k : truth.at("kappa").get<std::vector<int>>()) spec.kappa.push_back(k - 1);
  spec.P = matrix_from_json(truth.at("P"), m_count, m_count, "P");
  const auto pi0 = truth.at("pi0").get<std::vector<double>>();
  spec.pi0 = Eigen::Map<const Eigen::VectorXd>(pi0.data(), pi0.size());
  const auto rho = truth.at("rho").get<std::vector<double>>();
  spec.rho = Eigen::Map<const Eigen::VectorXd>(rho.data(), rho.size());
  spec.omega = matrix_from_json(truth.at("omega"), n, m_count, "omega");
  spec.validate();
  return out;
}

void write_dgp(const DgpFile& dgp, const std::string& path) {
  const DgpSpec& spec = dgp.spec;
  json truth{{"T", spec.T},       {"seed", spec.seed},
             {"A", matrix_to_json(spec.A)}, {"P", matrix_to_json(spec.P)},
             {"omega", matrix_to_json(spec.omega)}};
  json bs = json::array();
  for (const auto& b : spec.B) bs.push_back(matrix_to_json(b));
  truth["B"] = bs;
  json kappa = json::array();
  for (int k : spec.kappa) kappa.push_back(k + 1);
  truth["kappa"] = kappa;
  truth["pi0"] = std::vector<double>(spec.pi0.data(), spec.pi0.data() + spec.pi0.size());
  truth["rho"] = std::vector<double>(spec.rho.data(), spec.rho.data() + spec.rho.size());

  json j{{"variables", spec.N},
         {"lags", spec.p},
         {"deterministic", spec.d},
         {"regimes", spec.M},
         {"tvi_equation", dgp.tvi_equation + 1},
         {"patterns", dgp.pattern_masks},
         {"truth", truth}};
  std::ofstream file(path);
  if (!file) throw std::runtime_error("write_dgp: cannot open '" + path + "'");
  file << j.dump(2) << "\n";
}

namespace {

void write_doubles(const fs::path& path, const std::vector<double>& values) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("write_archive: cannot open '" + path.string() + "'");
  file.write(reinterpret_cast<const char*>(values.data()),
             static_cast<std::streamsize>(values.size() * sizeof(double)));
}

void write_ints(const fs::path& path, const std::vector<std::int32_t>& values) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("write_archive: cannot open '" + path.string() + "'");
  file.write(reinterpret_cast<const char*>(values.data()),
             static_cast<std::streamsize>(values.size() * sizeof(std::int32_t)));
}

std::vector<double> read_doubles(const fs::path& path, std::size_t expected) {
  std::ifstream file(path, std::ios::binary | std::ios::ate);
  if (!file) throw std::runtime_error("read_archive: missing block file '" + path.string() + "'");
  const std::size_t bytes = static_cast<std::size_t>(file.tellg());
  if (bytes != expected * sizeof(double))
    throw std::runtime_error("read_archive: '" + path.string() + "' truncated or oversized (" +
                             std::to_string(bytes) + " bytes, expected " +
                             std::to_string(expected * sizeof(double)) + ")");
  std::vector<double> values(expected);
  file.seekg(0);
  file.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  return values;
}

std::vector<std::int32_t> read_ints(const fs::path& path, std::size_t expected) {
  std::ifstream file(path, std::ios::binary | std::ios::ate);
  if (!file) throw std::runtime_error("read_archive: missing block file '" + path.string() + "'");
  const std::size_t bytes = static_cast<std::size_t>(file.tellg());
  if (bytes != expected * sizeof(std::int32_t))
    throw std::runtime_error("read_archive: '" + path.string() + "' truncated or oversized");
  std::vector<std::int32_t> values(expected);
  file.seekg(0);
  file.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  return values;
}

}  // namespace

void write_archive(const PosteriorArchive& archive, const std::string& dir) {
  const ArchiveManifest& man = archive.manifest;
  fs::create_directories(dir);
  const fs::path base(dir);

  json j{{"format_version", man.format_version},
         {"endianness", "little"},
         {"config_hash", man.config_hash},
         {"seed", man.seed},
         {"iterations", man.iterations},
         {"burnin", man.burnin},
         {"thin", man.thin},
         {"stored", archive.size()},
         {"dims", {{"N", man.N}, {"p", man.p}, {"d", man.d}, {"M", man.M}, {"K", man.K}, {"T", man.T}}},
         {"created", man.created}};
  if (!man.config_json.empty()) j["config"] = json::parse(man.config_json);
  {
    std::ofstream file(base / "manifest.json");
    if (!file) throw std::runtime_error("write_archive: cannot open manifest in '" + dir + "'");
    file << j.dump(2) << "\n";
  }

  const int s_count = archive.size();
  const int n = man.N, m_count = man.M, t_len = man.T;
  const int k = n * man.p + man.d;

  std::vector<double> a_block, b_block, p_block, pi_block, h_block, rho_block, omega_block,
      so_block, hyper_block;
  std::vector<std::int32_t> kappa_block, s_block, q_block;
  a_block.reserve(static_cast<std::size_t>(s_count) * n * k);
  for (const ParameterState& st : archive.draws) {
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < k; ++c) a_block.push_back(st.A(i, c));
    for (int m = 0; m < m_count; ++m)
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) b_block.push_back(st.B[m](i, c));
    for (int m = 0; m < m_count; ++m) kappa_block.push_back(st.kappa[m]);
    for (int i = 0; i < m_count; ++i)
      for (int c = 0; c < m_count; ++c) p_block.push_back(st.P(i, c));
    for (int i = 0; i < m_count; ++i) pi_block.push_back(st.pi0(i));
    for (int t = 0; t < t_len; ++t) s_block.push_back(st.s(t));
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < t_len; ++t) h_block.push_back(st.h(i, t));
    for (int i = 0; i < n; ++i) rho_block.push_back(st.rho(i));
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < m_count; ++m) omega_block.push_back(st.omega(i, m));
    for (int i = 0; i < n; ++i) so_block.push_back(st.sigma2_omega(i));
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < t_len; ++t) q_block.push_back(st.q(i, t));
    for (int i = 0; i < n; ++i) hyper_block.push_back(st.gamma_A(i));
    for (int i = 0; i < n; ++i) hyper_block.push_back(st.gamma_B(i));
    for (int i = 0; i < n; ++i) hyper_block.push_back(st.s_A(i));
    for (int i = 0; i < n; ++i) hyper_block.push_back(st.s_B(i));
    hyper_block.push_back(st.s_gamma_A);
    hyper_block.push_back(st.s_gamma_B);
  }

  write_doubles(base / "A.f64", a_block);
  write_doubles(base / "B.f64", b_block);
  write_ints(base / "kappa.i32", kappa_block);
  write_doubles(base / "P.f64", p_block);
  write_doubles(base / "pi0.f64", pi_block);
  write_ints(base / "s.i32", s_block);
  write_doubles(base / "h.f64", h_block);
  write_doubles(base / "rho.f64", rho_block);
  write_doubles(base / "omega.f64", omega_block);
  write_doubles(base / "sigma2_omega.f64", so_block);
  write_ints(base / "q.i32", q_block);
  write_doubles(base / "hyper.f64", hyper_block);
}

PosteriorArchive read_archive(const std::string& dir) {
  const fs::path base(dir);
  std::ifstream mf(base / "manifest.json");
  if (!mf) throw std::runtime_error("read_archive: missing manifest.json in '" + dir + "'");
  json j;
  try {
    mf >> j;
  } catch (const std::exception& err) {
    throw std::runtime_error("read_archive: corrupt manifest in '" + dir + "': " + err.what());
  }

  PosteriorArchive archive;
  ArchiveManifest& man = archive.manifest;
  man.format_version = j.value("format_version", -1);
  if (man.format_version != 1)
    throw std::runtime_error("read_archive: unsupported format version " +
                             std::to_string(man.format_version));
  if (j.value("endianness", "little") != "little")
    throw std::runtime_error("read_archive: unsupported byte order");
  man.config_hash = j.value("config_hash", "");
  man.seed = j.value("seed", 0ULL);
  man.iterations = j.value("iterations", 0);
  man.burnin = j.value("burnin", 0);
  man.thin = j.value("thin", 1);
  man.stored = j.at("stored").get<int>();
  const json& dims = j.at("dims");
  man.N = dims.at("N").get<int>();
  man.p = dims.at("p").get<int>();
  man.d = dims.at("d").get<int>();
  man.M = dims.at("M").get<int>();
  man.K = dims.at("K").get<int>();
  man.T = dims.at("T").get<int>();
  man.created = j.value("created", "");
  if (j.contains("config")) man.config_json = j.at("config").dump();

  const std::size_t s_count = static_cast<std::size_t>(man.stored);
  const int n = man.N, m_count = man.M, t_len = man.T;
  const int k = n * man.p + man.d;

  const auto a_block = read_doubles(base / "A.f64", s_count * n * k);
  const auto b_block = read_doubles(base / "B.f64", s_count * m_count * n * n);
  const auto kappa_block = read_ints(base / "kappa.i32", s_count * m_count);
  const auto p_block = read_doubles(base / "P.f64", s_count * m_count * m_count);
  const auto pi_block = read_doubles(base / "pi0.f64", s_count * m_count);
  const auto s_block = read_ints(base / "s.i32", s_count * t_len);
  const auto h_block = read_doubles(base / "h.f64", s_count * n * t_len);
  const auto rho_block = read_doubles(base / "rho.f64", s_count * n);
  const auto omega_block = read_doubles(base / "omega.f64", s_count * n * m_count);
  const auto so_block = read_doubles(base / "sigma2_omega.f64", s_count * n);
  const auto q_block = read_ints(base / "q.i32", s_count * n * t_len);
  const auto hyper_block = read_doubles(base / "hyper.f64", s_count * (4 * n + 2));

  archive.draws.resize(s_count);
  for (std::size_t idx = 0; idx < s_count; ++idx) {
    ParameterState& st = archive.draws[idx];
    st.A.resize(n, k);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < k; ++c) st.A(i, c) = a_block[(idx * n + i) * k + c];
    st.B.assign(m_count, Eigen::MatrixXd(n, n));
    for (int m = 0; m < m_count; ++m)
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c)
          st.B[m](i, c) = b_block[((idx * m_count + m) * n + i) * n + c];
    st.kappa.resize(m_count);
    for (int m = 0; m < m_count; ++m) st.kappa[m] = kappa_block[idx * m_count + m];
    st.P.resize(m_count, m_count);
    for (int i = 0; i < m_count; ++i)
      for (int c = 0; c < m_count; ++c) st.P(i, c) = p_block[(idx * m_count + i) * m_count + c];
    st.pi0.resize(m_count);
    for (int i = 0; i < m_count; ++i) st.pi0(i) = pi_block[idx * m_count + i];
    st.s.resize(t_len);
    for (int t = 0; t < t_len; ++t) st.s(t) = s_block[idx * t_len + t];
    st.h.resize(n, t_len);
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < t_len; ++t) st.h(i, t) = h_block[(idx * n + i) * t_len + t];
    st.rho.resize(n);
    for (int i = 0; i < n; ++i) st.rho(i) = rho_block[idx * n + i];
    st.omega.resize(n, m_count);
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < m_count; ++m) st.omega(i, m) = omega_block[(idx * n + i) * m_count + m];
    st.sigma2_omega.resize(n);
    for (int i = 0; i < n; ++i) st.sigma2_omega(i) = so_block[idx * n + i];
    st.q.resize(n, t_len);
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < t_len; ++t) st.q(i, t) = q_block[(idx * n + i) * t_len + t];
    const double* hp = hyper_block.data() + idx * (4 * n + 2);
    st.gamma_A = Eigen::Map<const Eigen::VectorXd>(hp, n);
    st.gamma_B = Eigen::Map<const Eigen::VectorXd>(hp + n, n);
    st.s_A = Eigen::Map<const Eigen::VectorXd>(hp + 2 * n, n);
    st.s_B = Eigen::Map<const Eigen::VectorXd>(hp + 3 * n, n);
    st.s_gamma_A = hp[4 * n];
    st.s_gamma_B = hp[4 * n + 1];
  }
  return archive;
}

}  // namespace mssv
