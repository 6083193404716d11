#ifndef MSSV_IO_HPP
#define MSSV_IO_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mssv/simulation.hpp"
#include "mssv/types.hpp"

namespace mssv {

struct CsvTable {
  Eigen::MatrixXd values;
  std::vector<std::string> names;
  std::vector<std::string> time;  // filled when the first column is non-numeric
};

// Header row required; a leading date/label column is detected by its first
// data cell being non-numeric. Ragged rows, non-numeric cells and duplicate
// names are rejected with the offending line.
CsvTable load_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const std::vector<std::string>& columns,
                      const Eigen::MatrixXd& values, const std::vector<std::string>& time = {},
                      const std::string& time_column = "t");

// Estimation run description: the model configuration plus the data location.
struct RunConfig {
  ModelConfig model;
  std::string data_path;
};

RunConfig load_config(const std::string& path);
std::string config_to_json(const ModelConfig& config, const std::string& data_path = "");

// Ground-truth process description sharing the config file layout, with a
// "truth" block holding the parameter values.
struct DgpFile {
  DgpSpec spec;
  int tvi_equation = 0;
  std::vector<std::string> pattern_masks;
};

DgpFile load_dgp(const std::string& path);
void write_dgp(const DgpFile& dgp, const std::string& path);

// Columnar archive persistence: little-endian 64-bit floats (32-bit ints for
// index blocks), one file per parameter block plus manifest.json. Round trips
// are lossless; version or size mismatches are rejected.
void write_archive(const PosteriorArchive& archive, const std::string& dir);
PosteriorArchive read_archive(const std::string& dir);

}  // namespace mssv

#endif
