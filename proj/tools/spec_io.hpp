#pragma once

#include <string>

#include "ddim/dimension.hpp"
#include "ddim/errors.hpp"
#include "json.hpp"

namespace ddim::cli {

using nlohmann::json;

/// Malformed spec document; the message starts with the offending field path.
class SpecError : public ArgumentError {
 public:
  SpecError(const std::string& path, const std::string& what)
      : ArgumentError(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct SpecDocument {
  ExtensionSpec extension;
  DimensionOptions options;
};

SpecDocument parse_spec(const json& doc);
SpecDocument load_spec(const std::string& file);

json to_json(const NumericalPolynomial& f);
NumericalPolynomial polynomial_from_json(const json& j);
json to_json(const DeltaSigmaPolynomial& a);
json to_json(const InvariantReport& rep);
json to_json(const DimensionReport& report);
json to_json(const CoherenceReport& rep);

std::string coherence_name(Coherence c);

}  // namespace ddim::cli
