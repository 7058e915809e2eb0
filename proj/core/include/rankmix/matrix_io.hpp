#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankmix/matrix_estimation.hpp"

namespace rankmix {

// Matrix file: first line "N d", then N rows of d space-separated entries.
// The literal NA marks a missing entry.

struct MaskedMatrix {
  Eigen::MatrixXd values;  // NA read as 0
  MaskMatrix mask;         // 1 = present
};

MaskedMatrix read_masked_matrix(std::istream& in, const std::string& source = "<stream>");
MaskedMatrix read_masked_matrix_file(const std::string& path);

/// Reads a pairwise-comparison matrix; entries must be 0.5, -0.5 or NA.
ObservationMatrix read_observation_matrix_file(const std::string& path);
/// Reads a real matrix with no NA entries.
Eigen::MatrixXd read_dense_matrix_file(const std::string& path);

void write_observation_matrix(std::ostream& out, const ObservationMatrix& obs);
void write_observation_matrix_file(const std::string& path, const ObservationMatrix& obs);
/// Writes each entry in its shortest round-trip form.
void write_dense_matrix(std::ostream& out, const Eigen::MatrixXd& m);
void write_dense_matrix_file(const std::string& path, const Eigen::MatrixXd& m);

// Labels file: one nonnegative integer per line.
std::vector<std::size_t> read_labels_file(const std::string& path);
void write_labels_file(const std::string& path, std::span<const std::size_t> labels);

/// Sidecar metadata as key=value lines, in the given order.
using MetaEntries = std::vector<std::pair<std::string, std::string>>;
void write_meta_file(const std::string& path, const MetaEntries& entries);

/// Shortest decimal form that reads back to the same double.
std::string format_real(double v);
/// format_real of each value, joined by `sep`.
std::string join_reals(std::span<const double> values, char sep = ',');

}  // namespace rankmix
