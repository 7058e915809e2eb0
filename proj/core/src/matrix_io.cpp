#include "rankmix/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rankmix/config.hpp"
#include "rankmix/error.hpp"

namespace rankmix {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string join_reals(std::span<const double> values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_real(values[i]);
  }
  return out;
}

MaskedMatrix read_masked_matrix(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source + ": missing 'N d' header");
  std::size_t rows = 0, cols = 0;
  {
    std::istringstream header(line);
    if (!(header >> rows >> cols) || rows == 0 || cols == 0) {
      throw ParseError(source + ": header must be 'N d' with positive sizes");
    }
  }
  MaskedMatrix out{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)),
                   MaskMatrix::Ones(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols))};
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError(source + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(i));
    }
    std::istringstream fields(line);
    std::string token;
    std::size_t j = 0;
    while (fields >> token) {
      if (j >= cols) throw ParseError(source + ": row " + std::to_string(i) + " has too many entries");
      const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
      if (token == "NA") {
        out.mask(r, c) = 0;
      } else {
        out.values(r, c) = parse_double(token, source + ": row " + std::to_string(i));
      }
      ++j;
    }
    if (j != cols) {
      throw ParseError(source + ": row " + std::to_string(i) + " has " + std::to_string(j) +
                       " entries, expected " + std::to_string(cols));
    }
  }
  return out;
}

MaskedMatrix read_masked_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return read_masked_matrix(in, path);
}

ObservationMatrix read_observation_matrix_file(const std::string& path) {
  MaskedMatrix m = read_masked_matrix_file(path);
  try {
    return ObservationMatrix(std::move(m.values), std::move(m.mask));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Eigen::MatrixXd read_dense_matrix_file(const std::string& path) {
  MaskedMatrix m = read_masked_matrix_file(path);
  if ((m.mask.array() == 0).any()) throw ParseError(path + ": NA entries are not allowed here");
  return std::move(m.values);
}

void write_observation_matrix(std::ostream& out, const ObservationMatrix& obs) {
  out << obs.rows() << ' ' << obs.cols() << '\n';
  for (Eigen::Index i = 0; i < obs.rows(); ++i) {
    for (Eigen::Index j = 0; j < obs.cols(); ++j) {
      if (j) out << ' ';
      if (!obs.observed(i, j)) {
        out << "NA";
      } else {
        out << (obs.values()(i, j) > 0 ? "0.5" : "-0.5");
      }
    }
    out << '\n';
  }
}

void write_observation_matrix_file(const std::string& path, const ObservationMatrix& obs) {
  auto out = open_out(path);
  write_observation_matrix(out, obs);
  finish(out, path);
}

void write_dense_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  const auto old = out.precision(17);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
  out.precision(old);
}

void write_dense_matrix_file(const std::string& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  write_dense_matrix(out, m);
  finish(out, path);
}

std::vector<std::size_t> read_labels_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  std::vector<std::size_t> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    labels.push_back(static_cast<std::size_t>(parse_uint(line, path + ":" + std::to_string(lineno))));
  }
  return labels;
}

void write_labels_file(const std::string& path, std::span<const std::size_t> labels) {
  auto out = open_out(path);
  for (std::size_t label : labels) out << label << '\n';
  finish(out, path);
}

void write_meta_file(const std::string& path, const MetaEntries& entries) {
  auto out = open_out(path);
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  finish(out, path);
}

}  // namespace rankmix
