#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rankmix/config.hpp"
#include "rankmix/error.hpp"
#include "rankmix/matrix_io.hpp"
#include "rankmix/mixture_io.hpp"

namespace rankmix {
namespace {

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "rankmix_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

KeyValueFile parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueFile::parse(in, "test");
}

TEST(KeyValueFile, ParsesTrimmedPairsAndComments) {
  const auto kv = parse("# comment\n  a = 1.5 \n\nb=2,3, 4\nname = x y\n");
  EXPECT_DOUBLE_EQ(kv.get_double("a"), 1.5);
  EXPECT_EQ(kv.get_doubles("b"), (std::vector<double>{2, 3, 4}));
  EXPECT_EQ(kv.get_sizes("b"), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(kv.get("name"), "x y");
  EXPECT_EQ(kv.get_uint("missing", 7), 7u);
  EXPECT_FALSE(kv.find("missing"));
}

TEST(KeyValueFile, Errors) {
  EXPECT_THROW(parse("a=1\na=2\n"), ParseError);
  EXPECT_THROW(parse("no equals sign\n"), ParseError);
  EXPECT_THROW(parse("a=x\n").get_double("a"), ParseError);
  EXPECT_THROW(parse("a=-3\n").get_uint("a"), ParseError);
  EXPECT_THROW(parse("a=1\n").get("b"), ParseError);
  EXPECT_THROW(KeyValueFile::load("/nonexistent/config.txt"), IoError);
}

TEST(MixtureIo, ReadsAllFamilies) {
  std::istringstream in(
      "n=3\nk=3\nweights=0.2,0.3,0.5\n"
                              "component.0.family=mnl\ncomponent.0.beta=0.5\ncomponent.0.utilities=1,0,-1\n"
                              "component.1.family=gaussian\ncomponent.1.sigma=2\ncomponent.1.utilities=0,0,1\n"
                              "component.2.family=mallows\ncomponent.2.phi=0.3\ncomponent.2.center=2 0 1\n");
  const auto spec = read_mixture(in);
  ASSERT_EQ(spec.size(), 3u);
  EXPECT_EQ(spec.components[0].family, Family::kMnl);
  EXPECT_DOUBLE_EQ(spec.components[0].noise, 0.5);
  EXPECT_EQ(spec.components[1].utilities, (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(*spec.components[2].center, Permutation::from_order({2, 0, 1}));
  EXPECT_EQ(spec.weights, (std::vector<double>{0.2, 0.3, 0.5}));
}

TEST(MixtureIo, RoundTrip) {
  MixtureSpec spec = MixtureSpec::uniform({ComponentSpec::gaussian({0.1, -2.5, 1.0 / 3.0}, 0.3),
                                           ComponentSpec::mallows(Permutation::from_order({1, 2, 0}), 0.7)});
  std::stringstream ss;
  write_mixture(ss, spec);
  const auto back = read_mixture(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.components[0].utilities, spec.components[0].utilities);
  EXPECT_EQ(back.components[0].noise, spec.components[0].noise);
  EXPECT_EQ(*back.components[1].center, *spec.components[1].center);
  EXPECT_EQ(back.weights, spec.weights);
}

TEST(MixtureIo, RejectsInconsistentSpecs) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_mixture(in);
  };
  EXPECT_THROW(read("n=3\nk=1\ncomponent.0.family=mnl\ncomponent.0.beta=1\ncomponent.0.utilities=1,0\n"),
               ParseError);
  EXPECT_THROW(read("n=2\nk=1\ncomponent.0.family=mnl\ncomponent.0.sigma=1\ncomponent.0.utilities=1,0\n"),
               ParseError);
  EXPECT_THROW(read("n=2\nk=1\ncomponent.0.family=probit\ncomponent.0.beta=1\ncomponent.0.utilities=1,0\n"),
               ParseError);
  EXPECT_THROW(read("n=2\nk=2\ncomponent.0.family=mnl\ncomponent.0.beta=1\ncomponent.0.utilities=1,0\n"),
               ParseError);
}

TEST(MatrixIo, ObservationRoundTrip) {
  Eigen::MatrixXd values(2, 3);
  values << 0.5, 0.0, -0.5, -0.5, 0.5, 0.0;
  MaskMatrix mask(2, 3);
  mask << 1, 0, 1, 1, 1, 0;
  const ObservationMatrix obs(values, mask);
  std::stringstream ss;
  write_observation_matrix(ss, obs);
  EXPECT_EQ(ss.str(), "2 3\n0.5 NA -0.5\n-0.5 0.5 NA\n");
  const auto back = read_masked_matrix(ss);
  EXPECT_EQ(back.values, values);
  EXPECT_EQ(back.mask, mask);
}

TEST(MatrixIo, DenseRoundTripIsExact) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0 / 3.0, -2e-17, 12345.678901234567, 0.1;
  const auto path = temp_path("dense.txt").string();
  write_dense_matrix_file(path, m);
  EXPECT_EQ(read_dense_matrix_file(path), m);
}

TEST(MatrixIo, Errors) {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return read_masked_matrix(in);
  };
  EXPECT_THROW(read("2 2\n0.5 0.5\n"), ParseError);
  EXPECT_THROW(read("1 2\n0.5 x\n"), ParseError);
  EXPECT_THROW(read("1 2\n0.5 0.5 0.5\n"), ParseError);
  EXPECT_THROW(read(""), ParseError);

  const auto path = temp_path("bad_obs.txt").string();
  std::ofstream(path) << "1 2\n0.25 NA\n";
  EXPECT_THROW(read_observation_matrix_file(path), ParseError);
  std::ofstream(path) << "1 2\n0.25 NA\n";
  EXPECT_THROW(read_dense_matrix_file(path), ParseError);
  EXPECT_THROW(read_masked_matrix_file("/nonexistent/m.txt"), IoError);
}

TEST(LabelsIo, RoundTrip) {
  const auto path = temp_path("labels.txt").string();
  const std::vector<std::size_t> labels{0, 2, 1, 1, 0};
  write_labels_file(path, labels);
  EXPECT_EQ(read_labels_file(path), labels);
  std::ofstream(path) << "0\n-1\n";
  EXPECT_THROW(read_labels_file(path), ParseError);
}

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
  const std::vector<double> xs{1.5, 0.25};
  EXPECT_EQ(join_reals(xs), "1.5,0.25");
}

}  // namespace
}  // namespace rankmix
