#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace digitop {

enum class Outcome { yes, no, inconclusive };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::yes: return "yes";
    case Outcome::no: return "no";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

// Process exit code for an outcome. Usage and format errors exit with 2.
inline int exit_code(Outcome o) {
  switch (o) {
    case Outcome::yes: return 0;
    case Outcome::no: return 1;
    case Outcome::inconclusive: return 3;
  }
  return 2;
}

inline constexpr int kUsageExitCode = 2;

// Only bounded searches may report inconclusive; verifiers answer yes or no.
struct Verdict {
  Verdict(Outcome o, nlohmann::json d = nlohmann::json::object()) : outcome(o), detail(std::move(d)) {}

  Outcome outcome;
  nlohmann::json detail;
  std::optional<std::int64_t> elapsed_ms;

  nlohmann::json to_json() const {
    nlohmann::json j{{"outcome", to_string(outcome)}, {"detail", detail}};
    if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
    return j;
  }
};

// Structural check of an emitted verdict document (the same rules as
// schema/verdict.schema.json). Returns a description of the first problem.
inline std::optional<std::string> validate_verdict(const nlohmann::json& j) {
  if (!j.is_object()) return "verdict must be an object";
  for (const auto& [key, value] : j.items()) {
    if (key != "outcome" && key != "detail" && key != "elapsed_ms") {
      return "unexpected key \"" + key + "\"";
    }
  }
  auto o = j.find("outcome");
  if (o == j.end() || !o->is_string()) return "missing string \"outcome\"";
  const auto s = o->get<std::string>();
  if (s != "yes" && s != "no" && s != "inconclusive") return "bad outcome \"" + s + "\"";
  auto d = j.find("detail");
  if (d == j.end() || !d->is_object()) return "missing object \"detail\"";
  if (auto e = j.find("elapsed_ms"); e != j.end()) {
    if (!e->is_number_integer() || e->get<std::int64_t>() < 0) {
      return "\"elapsed_ms\" must be a non-negative integer";
    }
  }
  return std::nullopt;
}

}  // namespace digitop
