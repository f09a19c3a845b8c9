#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "fixtures.hpp"
#include "relchan/io.hpp"

using namespace relchan;
using relchan::testing::random_basis;

TEST(DensityJson, BitExactRoundTrip) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const AtomBasis b = random_basis(rng, 1 + k % 5, rng.uniform(0.5, 2.0), 2.0);
    const Operator rho = random_density(rng, b.dim());
    const json j = json::parse(density_to_json(b, rho).dump());
    const BasisState back = density_from_json(j);
    ASSERT_EQ(back.basis.size(), b.size());
    EXPECT_EQ(back.basis.mass(), b.mass());
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_TRUE((back.basis[i].spatial().array() == b[i].spatial().array()).all());
    EXPECT_TRUE((back.rho.array() == rho.array()).all());
  }
}

TEST(DensityJson, Layout) {
  const AtomBasis b = AtomBasis::from_spatial(1.0, {{0.1, 0.2, 0.3}});
  Operator rho = Operator::Zero(2, 2);
  rho(0, 1) = cplx(0.25, -0.5);
  const json j = density_to_json(b, rho);
  EXPECT_EQ(j.at("matrix").size(), 4u);
  EXPECT_EQ(j.at("matrix")[1][0].get<double>(), 0.25);
  EXPECT_EQ(j.at("matrix")[1][1].get<double>(), -0.5);
  EXPECT_EQ(j.at("basis")[0][2].get<double>(), 0.3);
}

TEST(DensityJson, MalformedInputs) {
  const json good = density_to_json(AtomBasis::from_spatial(1.0, {{0.1, 0, 0}}), Operator::Identity(2, 2) / 2.0);
  json missing = good;
  missing.erase("matrix");
  EXPECT_THROW(density_from_json(missing), FormatError);
  json short_matrix = good;
  short_matrix["matrix"].erase(0);
  EXPECT_THROW(density_from_json(short_matrix), FormatError);
  json bad_entry = good;
  bad_entry["matrix"][0] = json::array({1.0});
  EXPECT_THROW(density_from_json(bad_entry), FormatError);
  json bad_atom = good;
  bad_atom["basis"][0] = json::array({0.1, 0.2});
  EXPECT_THROW(density_from_json(bad_atom), FormatError);
  json wrong_type = good;
  wrong_type["mass"] = "heavy";
  EXPECT_THROW(density_from_json(wrong_type), FormatError);
}

TEST(Csv, HeaderOnly) {
  const CsvTable t({"id", "residual"});
  EXPECT_EQ(t.str(), "id,residual\n");
  EXPECT_TRUE(t.to_json().at("rows").empty());
}

TEST(Csv, SeventeenDigitsAndLf) {
  CsvTable t({"id", "value"});
  t.add_row({std::size_t{0}, 0.1});
  t.add_row({std::size_t{1}, 1.0 / 3.0});
  const std::string s = t.str();
  EXPECT_EQ(s, "id,value\n0,0.10000000000000001\n1,0.33333333333333331\n");
  EXPECT_EQ(s.find('\r'), std::string::npos);
  EXPECT_EQ(std::strtod(format_double(1.0 / 3.0).c_str(), nullptr), 1.0 / 3.0);
}

TEST(Csv, RowWidthChecked) {
  CsvTable t({"a", "b"});
  EXPECT_THROW(t.add_row({1.0}), Error);
}

TEST(Csv, JsonMirrorsTable) {
  CsvTable t({"name", "x"});
  t.add_row({"max", 1e-13});
  const json j = json::parse(t.to_json().dump());
  EXPECT_EQ(j.at("columns")[1], "x");
  EXPECT_EQ(j.at("rows")[0].at("name"), "max");
  EXPECT_EQ(j.at("rows")[0].at("x").get<double>(), 1e-13);
}

TEST(Files, WriteReadAndErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "relchan_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "t.csv").string();
  write_file(path, "a\nb\n");
  EXPECT_EQ(read_file(path), "a\nb\n");
  EXPECT_THROW(read_file((dir / "missing.json").string()), IoError);
  EXPECT_THROW(write_file((dir / "no" / "such" / "dir.csv").string(), "x"), IoError);
  std::filesystem::remove_all(dir);
}
