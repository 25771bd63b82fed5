#include "tubeband/settings.hpp"

#include <cstdlib>
#include <string>

#include "tubeband/error.hpp"

namespace tubeband {

namespace {

double parse_positive(std::string_view key, std::string_view value) {
  std::string s(value);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !(v > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "tolerance '" + std::string(key) + "' needs a positive number, got '" + s + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Tolerances parse_tolerances(std::string_view text, Tolerances base) {
  text = trim(text);
  if (text.empty()) return base;
  if (text.find('=') == std::string_view::npos) {
    base.degeneracy = parse_positive("degeneracy", text);
    return base;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::invalid_argument, "malformed tolerance entry '" + std::string(item) + "'");
    const auto key = trim(item.substr(0, eq));
    const double v = parse_positive(key, trim(item.substr(eq + 1)));
    if (key == "degeneracy") base.degeneracy = v;
    else if (key == "edge") base.edge = v;
    else if (key == "pole") base.pole = v;
    else if (key == "regime") base.regime_bound = v;
    else if (key == "sigma") base.k_sigma = v;
    else throw Error(ErrorCode::invalid_argument, "unknown tolerance key '" + std::string(key) + "'");
  }
  return base;
}

const Tolerances& tolerances() {
  static const Tolerances tol = [] {
    const char* env = std::getenv("TUBEBAND_TOL");
    return env ? parse_tolerances(env) : Tolerances{};
  }();
  return tol;
}

}  // namespace tubeband
