#pragma once

#include <string>
#include <string_view>

#include "gcreg/clifford2.hpp"
#include "gcreg/experiments.hpp"
#include "gcreg/fields.hpp"
#include "gcreg/registration.hpp"

namespace gcreg {

/// {"s":..,"e1":..,"e2":..,"e12":..}
std::string to_json(const Multivector2& m);

/// {"a11":..,"a12":..,"a21":..,"a22":..,"domain":{"kind":"square","l":..}}
std::string to_json(const LinearField& field);
/// Accepts the object above; a missing domain means the unit square. Disks
/// use {"kind":"disk","r":..}. Throws InvalidArgument on malformed input.
LinearField field_from_json(std::string_view text);

std::string to_json(const Decomposition& d);
Decomposition decomposition_from_json(std::string_view text);

std::string to_json(const DetectionResult& result, bool include_trace);

std::string to_json(const ExperimentReport& report);
/// Header line for report CSV output.
std::string report_csv_header();
std::string to_csv_row(const ExperimentReport& report);

/// Header `x1,x2,v1,v2,inside`, one row per cell, row-major.
std::string to_csv(const SampledField& field);

}  // namespace gcreg
