#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "xmo/approximation.hpp"
#include "xmo/compactness.hpp"
#include "xmo/kernels.hpp"
#include "xmo/operators.hpp"
#include "xmo/oscillation.hpp"
#include "xmo/weights.hpp"

namespace xmo {

using Json = nlohmann::json;  // std::map backed, so keys come out sorted

Json to_json(const Cube& q);
Cube cube_from_json(const Json& j);
Json to_json(const OscillationProfile& p);
Json to_json(const ScanConfig& c);
Json to_json(const Diagnosis& d);
Json to_json(const Certificate& c);
Json to_json(const ThresholdSchedule& s);
ThresholdSchedule schedule_from_json(const Json& j);
/// Schedule, generations and cube averages; cells in a generation's hole
/// are written as null.
Json to_json(const DyadicApproximation& a);
DyadicApproximation approximation_from_json(const Json& j);
Json to_json(const JumpReport& r);
Json to_json(const SupEstimate& s);
Json to_json(const DecayEntry& e);
Json to_json(const BoundMeasurement& b);
Json to_json(const KernelVerification& v);
Json to_json(const OperatorOutput& o);
Json to_json(const TruncationGapReport& r);
Json to_json(const WeightConstant& w);
Json to_json(const CompactnessReport& r);
Json to_json(const TailProfiles& t);
Json to_json(const TranslationProfiles& t);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

/// Comma-separated table with a header row and LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> row);
  std::string str() const;
};

/// parameter, value, argmax_center, argmax_side, cube_count. Centres are
/// written with coordinates separated by spaces.
CsvTable profile_csv(const OscillationProfile& p);
/// x, value (x coordinates separated by spaces for n >= 2).
CsvTable output_csv(const OperatorOutput& o);

/// Writes `text` byte for byte; throws Error on I/O failure.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace xmo
