#include "lpbdd/instance_io.hpp"

#include <cerrno>
#include <fstream>
#include <system_error>

namespace lpbdd {

namespace {

using nlohmann::json;

Rat parse_number(const json& j, const char* what) {
  if (!j.is_string()) throw InstanceFormatError(std::string(what) + " must be a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InstanceFormatError(std::string(what) + ": " + e.what());
  }
}

json emit_vector(std::span<const Rat> v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(format_rational(x));
  return arr;
}

Vector parse_vector(const json& j, const char* what) {
  if (!j.is_array()) throw InstanceFormatError(std::string(what) + " must be an array");
  Vector v;
  for (const auto& x : j) v.push_back(parse_number(x, what));
  return v;
}

}  // namespace

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kGapCvp:
      return "gapcvp";
    case InstanceKind::kStBdd:
      return "stbdd";
    case InstanceKind::kBdd:
      return "bdd";
  }
  return "?";
}

json emit_magnitude(const Magnitude& m) {
  if (auto v = m.exact_value()) return format_rational(*v);
  if (auto pp = m.exact_pth_power()) return {{"pth_power", format_rational(*pp)}};
  json terms = json::array();
  for (const auto& t : m.terms()) terms.push_back({format_rational(t.weight), format_rational(t.base)});
  return {{"weighted_powers", terms}};
}

Magnitude parse_magnitude(const json& j, const NormOrder& p) {
  if (j.is_string()) return Magnitude::from_value(p, parse_number(j, "r"));
  if (!j.is_object()) throw InstanceFormatError("r must be a string or an object");
  if (p.is_infinite()) throw InstanceFormatError("r for p = inf must be a rational string");
  if (j.contains("pth_power")) return Magnitude::from_pth_power(p, parse_number(j.at("pth_power"), "r.pth_power"));
  if (j.contains("weighted_powers")) {
    std::vector<Magnitude::Term> terms;
    for (const auto& t : j.at("weighted_powers")) {
      if (!t.is_array() || t.size() != 2) throw InstanceFormatError("r.weighted_powers entries are [weight, base]");
      terms.push_back({parse_number(t[0], "r weight"), parse_number(t[1], "r base")});
    }
    return Magnitude::from_terms(p, std::move(terms));
  }
  throw InstanceFormatError("r object needs pth_power or weighted_powers");
}

InstanceFile parse_instance(const json& doc) {
  if (!doc.is_object()) throw InstanceFormatError("instance must be a JSON object");
  for (const char* key : {"kind", "p", "basis", "target"})
    if (!doc.contains(key)) throw InstanceFormatError(std::string("missing field '") + key + "'");
  const std::string kind = doc.at("kind").is_string() ? doc.at("kind").get<std::string>() : "";
  InstanceKind k;
  if (kind == "gapcvp")
    k = InstanceKind::kGapCvp;
  else if (kind == "stbdd")
    k = InstanceKind::kStBdd;
  else if (kind == "bdd")
    k = InstanceKind::kBdd;
  else
    throw InstanceFormatError("unknown kind '" + kind + "'");

  if (!doc.at("p").is_string()) throw InstanceFormatError("p must be a string");
  NormOrder p = NormOrder::infinity();
  try {
    p = NormOrder::parse(doc.at("p").get<std::string>());
  } catch (const std::exception& e) {
    throw InstanceFormatError(std::string("p: ") + e.what());
  }

  const json& rows = doc.at("basis");
  if (!rows.is_array() || rows.empty()) throw InstanceFormatError("basis must be a non-empty array of rows");
  std::vector<Vector> parsed;
  for (const auto& row : rows) parsed.push_back(parse_vector(row, "basis"));
  RatMatrix basis;
  try {
    basis = RatMatrix::from_rows(parsed);
  } catch (const std::invalid_argument&) {
    throw InstanceFormatError("basis is not rectangular");
  }
  if (basis.cols() == 0 || rank(basis) != basis.cols()) throw InstanceFormatError("basis must have full column rank");

  InstanceFile out{k, p, std::move(basis), parse_vector(doc.at("target"), "target"), std::nullopt, std::nullopt,
                   json::object()};
  if (out.target.size() != out.basis.rows()) throw InstanceFormatError("target length differs from the row count");
  if (doc.contains("r")) out.r = parse_magnitude(doc.at("r"), p);
  if (doc.contains("alpha")) out.alpha = parse_number(doc.at("alpha"), "alpha");
  if (doc.contains("meta")) out.meta = doc.at("meta");
  return out;
}

json emit_instance(const InstanceFile& inst) {
  json rows = json::array();
  for (std::size_t i = 0; i < inst.basis.rows(); ++i) rows.push_back(emit_vector(inst.basis.row(i)));
  json doc = {{"kind", to_string(inst.kind)}, {"p", inst.p.to_string()}, {"basis", rows},
              {"target", emit_vector(inst.target)}};
  if (inst.r) doc["r"] = emit_magnitude(*inst.r);
  if (inst.alpha) doc["alpha"] = format_decimal_or_rational(*inst.alpha);
  if (!inst.meta.empty()) doc["meta"] = inst.meta;
  return doc;
}

InstanceFile read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError(path.string() + ": " + e.what());
  }
  return parse_instance(doc);
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
}

GapCvpInstance to_gapcvp(const InstanceFile& file) {
  if (file.kind != InstanceKind::kGapCvp) throw InstanceFormatError("expected an instance of kind gapcvp");
  return {file.p, Basis(file.basis), file.target};
}

InstanceFile from_gapcvp(const GapCvpInstance& inst) {
  return {InstanceKind::kGapCvp, inst.p, inst.basis.matrix(), inst.target, std::nullopt, std::nullopt, json::object()};
}

InstanceFile from_stbdd(const StBddInstance& inst) {
  json meta = {{"T", inst.meta.t}, {"n_prime", inst.meta.n_prime}, {"C", inst.meta.rank_ratio}};
  if (inst.meta.s_bound) {
    meta["S_bound"] = *inst.meta.s_bound;
    meta["S_exact"] = inst.meta.s_exact;
  }
  return {InstanceKind::kStBdd, inst.order(), inst.basis.matrix(), inst.target, inst.radius, inst.alpha, meta};
}

InstanceFile from_bdd(const BddInstance& inst) {
  return {InstanceKind::kBdd, inst.p, inst.basis.matrix(), inst.target, std::nullopt, inst.alpha, json::object()};
}

}  // namespace lpbdd
