#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "circlech/convergence.hpp"
#include "circlech/error.hpp"
#include "circlech/genfamily.hpp"
#include "circlech/loewner.hpp"
#include "circlech/measures.hpp"

namespace circlech {

/// Input that is not valid JSON or does not match the expected schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A well-formed generating family that fails validate().
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Measures: {"atoms":[{"theta":0.0,"weight":0.5}]} and/or
// {"moments":{"mass":1.0,"values":[[re,im],...]}}.
nlohmann::json to_json(const CircleMeasure& m);
CircleMeasure measure_from_json(const nlohmann::json& j);

// Families: {"knots":[{"t":0.0,"alpha":0.0},...],"interval_measures":[...]}.
nlohmann::json to_json(const GeneratingFamily& f);
/// Throws ParseError on schema problems and ValidationError when invalid.
GeneratingFamily family_from_json(const nlohmann::json& j);

/// {"times":[...],"series":[[[re,im],...],...]} with every double written
/// as a 17-significant-digit decimal.
std::string chain_to_json_string(const ChainSample& c);
ChainSample chain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const ExtractionDiagnostics& d);

/// Parses text, rethrowing nlohmann errors as ParseError.
nlohmann::json parse_json(const std::string& text);
nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// "%.17g" formatting used by every numeric text output.
std::string format_double(double v);

}  // namespace circlech
