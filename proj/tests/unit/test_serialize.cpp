#include <gtest/gtest.h>

#include "gcreg/error.hpp"
#include "gcreg/serialize.hpp"

using namespace gcreg;

TEST(Serialize, FieldRoundTrip) {
  const LinearField f({0.1, -2.5, 3e-7, 4.0}, SymmetricDomain::disk(1.5));
  const std::string text = to_json(f);
  EXPECT_EQ(field_from_json(text), f);
  EXPECT_EQ(to_json(field_from_json(text)), text);
}

TEST(Serialize, FieldDefaultsToUnitSquare) {
  const LinearField f = field_from_json(R"({"a11":1,"a12":2,"a21":3,"a22":4})");
  EXPECT_EQ(f.domain(), SymmetricDomain::square(1.0));
}

TEST(Serialize, BadInput) {
  EXPECT_THROW(field_from_json("not json"), Error);
  EXPECT_THROW(field_from_json(R"({"a11":1})"), Error);
  EXPECT_THROW(field_from_json(R"({"a11":1,"a12":2,"a21":3,"a22":4,"domain":{"kind":"hex","l":1}})"), Error);
}

TEST(Serialize, DecompositionRoundTrip) {
  const Decomposition d{0.1, 0.2, -0.3, 1e-300};
  EXPECT_EQ(decomposition_from_json(to_json(d)), d);
}

TEST(Serialize, SampledCsv) {
  const std::string csv = to_csv(sample(source_c(SymmetricDomain::square(1.0)), 2));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x1,x2,v1,v2,inside");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Serialize, ReportCsvHeader) {
  EXPECT_EQ(report_csv_header(), "eps,average_error,maximal_error,average_iterations,converged_fraction,trials,seed");
}
