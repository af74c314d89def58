#pragma once

// JSON instance files. Every number is a rational string ("a/b", an integer,
// or a terminating decimal) so files round-trip exactly.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "lpbdd/norm.hpp"
#include "lpbdd/rational.hpp"
#include "lpbdd/reductions.hpp"

namespace lpbdd {

enum class InstanceKind { kGapCvp, kStBdd, kBdd };

std::string to_string(InstanceKind kind);

struct InstanceFile {
  InstanceKind kind;
  NormOrder p;
  RatMatrix basis;
  Vector target;
  std::optional<Magnitude> r;
  std::optional<Rat> alpha;
  nlohmann::json meta = nlohmann::json::object();

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// Raised for malformed documents; the CLI maps it to exit code 2.
class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

InstanceFile parse_instance(const nlohmann::json& doc);
nlohmann::json emit_instance(const InstanceFile& inst);

InstanceFile read_instance_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

/// "r" as a rational string, {"pth_power": ...}, or
/// {"weighted_powers": [[w, b], ...]} meaning r^p = sum w b^p.
nlohmann::json emit_magnitude(const Magnitude& m);
Magnitude parse_magnitude(const nlohmann::json& j, const NormOrder& p);

GapCvpInstance to_gapcvp(const InstanceFile& file);
InstanceFile from_gapcvp(const GapCvpInstance& inst);
InstanceFile from_stbdd(const StBddInstance& inst);
InstanceFile from_bdd(const BddInstance& inst);

}  // namespace lpbdd
